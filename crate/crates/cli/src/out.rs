//! Output plumbing: formats, destinations, JSON schema types, and the SVG
//! figure writer. Identical inputs produce byte-identical output in every
//! format.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use dragon_hull::dragon::LabeledPoint;
use dragon_hull::geometry::{HullReport, Polygon};
use dragon_hull::hull::PartitionCell;
use dragon_hull::ComplexScalar;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// 17 significant digits, locale-independent; enough to round-trip f64.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex(z: ComplexScalar) -> String {
    if z.im >= 0.0 {
        format!("{} + {}i", z.re, z.im)
    } else {
        format!("{} - {}i", z.re, -z.im)
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct VertexJson {
    pub label: String,
    pub re: f64,
    pub im: f64,
}

impl VertexJson {
    pub fn from_labeled(lp: &LabeledPoint) -> Self {
        Self {
            label: lp.label.to_string(),
            re: lp.point.re,
            im: lp.point.im,
        }
    }

    pub fn from_point(label: String, z: ComplexScalar) -> Self {
        Self {
            label,
            re: z.re,
            im: z.im,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CellJson {
    Named(String),
    Cell {
        k: u32,
        eta_lower: f64,
        eta_upper: f64,
    },
    Boundary {
        boundary_k: u32,
        root: f64,
    },
}

impl CellJson {
    pub fn from_cell(cell: &PartitionCell) -> Self {
        CellJson::Cell {
            k: cell.k,
            eta_lower: cell.lower,
            eta_upper: cell.upper,
        }
    }

    pub fn upper_region() -> Self {
        CellJson::Named("upper_region".into())
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportJson {
    pub predicted_vertices: usize,
    pub empirical_vertices: usize,
    pub max_vertex_distance: f64,
    pub max_outward_distance: f64,
    pub vertex_tol: f64,
    pub pass: bool,
}

impl ReportJson {
    pub fn from_report(r: &HullReport) -> Self {
        Self {
            predicted_vertices: r.predicted_vertices,
            empirical_vertices: r.empirical_vertices,
            max_vertex_distance: r.max_vertex_distance,
            max_outward_distance: r.max_outward_distance,
            vertex_tol: r.vertex_tol,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct HullJson {
    pub eta: f64,
    pub cell: CellJson,
    pub open_region: bool,
    pub vertices: Vec<VertexJson>,
    pub empirical_vertices: Vec<VertexJson>,
    pub report: Option<ReportJson>,
}

/// CSV with one vertex per line; the header names the columns.
pub fn vertices_csv(vertices: &[VertexJson]) -> String {
    let mut s = String::from("label,re,im\n");
    for v in vertices {
        s.push_str(&format!("{},{},{}\n", v.label, sig17(v.re), sig17(v.im)));
    }
    s
}

/// Cap on sample dots in a figure; clouds beyond it are strided evenly.
const MAX_SVG_SAMPLES: usize = 20_000;

/// Sample cloud plus polygon overlay with labeled vertices. The view box is
/// the hull bounding box with a 10% margin, scaled to an 800px width.
pub fn hull_svg(
    samples: &[ComplexScalar],
    polygon: &Polygon,
    labels: &[String],
) -> String {
    let verts = polygon.vertices();
    let (mut min_re, mut max_re) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_im, mut max_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for z in verts.iter().chain(samples.iter()) {
        min_re = min_re.min(z.re);
        max_re = max_re.max(z.re);
        min_im = min_im.min(z.im);
        max_im = max_im.max(z.im);
    }
    let pad = 0.1 * (max_re - min_re).max(max_im - min_im).max(1e-9);
    min_re -= pad;
    max_re += pad;
    min_im -= pad;
    max_im += pad;
    let width = 800.0;
    let scale = width / (max_re - min_re);
    let height = (max_im - min_im) * scale;
    let x = |z: ComplexScalar| (z.re - min_re) * scale;
    let y = |z: ComplexScalar| (max_im - z.im) * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width:.2}\" height=\"{height:.2}\" fill=\"#ffffff\"/>\n"
    ));

    let stride = samples.len().div_ceil(MAX_SVG_SAMPLES).max(1);
    for z in samples.iter().step_by(stride) {
        svg.push_str(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"0.5\" fill=\"#35618f\"/>\n",
            x(*z),
            y(*z)
        ));
    }

    let pts: Vec<String> = verts
        .iter()
        .map(|z| format!("{:.3},{:.3}", x(*z), y(*z)))
        .collect();
    svg.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\"/>\n",
        pts.join(" ")
    ));

    let centroid = verts.iter().sum::<ComplexScalar>() / verts.len() as f64;
    for (z, label) in verts.iter().zip(labels) {
        let dir = z - centroid;
        let n = dir.norm().max(1e-12);
        let lx = x(*z) + 14.0 * dir.re / n;
        let ly = y(*z) - 14.0 * dir.im / n;
        svg.push_str(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.4\" fill=\"#c03030\"/>\n",
            x(*z),
            y(*z)
        ));
        svg.push_str(&format!(
            "<text x=\"{lx:.3}\" y=\"{ly:.3}\" font-family=\"monospace\" font-size=\"12\" \
             text-anchor=\"middle\" dominant-baseline=\"middle\">{label}</text>\n"
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
