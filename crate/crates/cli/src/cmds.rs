//! Implementations of the non-suite subcommands.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use dragon_hull::codings::{AffineMap, SimilitudeIfs};
use dragon_hull::dragon::{Coding, DragonParams};
use dragon_hull::geometry::hull_match;
use dragon_hull::hull::{
    eta_root, partition_cell, predicted_hull, CellResolution, PredictedHull,
};
use dragon_hull::oracle::{empirical_hull_from, sample_attractor};
use dragon_hull::{ComplexScalar, Error};
use serde::Deserialize;

use crate::out::{
    emit, fmt_complex, hull_svg, sig17, vertices_csv, CellJson, Format, HullJson, ReportJson,
    VertexJson,
};

/// Stderr note near the upper end of the parameter range, where coordinates
/// grow like `1 / (1 - |a|)` and double precision thins out.
pub fn warn_if_near_upper_end(p: &DragonParams) {
    if p.mod_a() > 0.95 {
        eprintln!(
            "warning: |a| = {:.6} exceeds 0.95; hull coordinates scale like 1/(1-|a|) and \
             double-precision results degrade this close to the upper end",
            p.mod_a()
        );
    }
}

fn cell_json(resolution: &CellResolution) -> CellJson {
    match resolution {
        CellResolution::Cell(cell) => CellJson::from_cell(cell),
        CellResolution::UpperRegion => CellJson::upper_region(),
        CellResolution::BoundaryAmbiguous { k, root } => CellJson::Boundary {
            boundary_k: *k,
            root: *root,
        },
    }
}

fn cell_text(resolution: &CellResolution) -> String {
    match resolution {
        CellResolution::Cell(cell) => format!(
            "cell k = {}: [{}, {})",
            cell.k, cell.lower, cell.upper
        ),
        CellResolution::UpperRegion => {
            "upper region: no closed-form vertex prediction; empirical hull only".into()
        }
        CellResolution::BoundaryAmbiguous { k, root } => format!(
            "within tolerance of the k = {k} partition root {root}; cell ambiguous"
        ),
    }
}

pub fn cmd_params(eta: f64, tol: f64, format: Format, out: &Option<PathBuf>) -> Result<u8> {
    let p = DragonParams::new(eta)?;
    warn_if_near_upper_end(&p);
    let resolution = partition_cell(eta, tol)?;
    let points = [
        ("z0", p.point_z(0)),
        ("w1", p.point_w(1)),
        ("b0", p.point_b(0)),
        ("w0", p.point_w(0)),
    ];
    match format {
        Format::Text => {
            let mut s = String::new();
            s.push_str(&format!("eta  = {} ({})\n", p.eta(), cell_text(&resolution)));
            s.push_str(&format!("a    = {}\n", fmt_complex(p.a())));
            s.push_str(&format!("|a|  = {}\n", p.mod_a()));
            s.push_str(&format!("c    = {}\n", p.c()));
            for (label, z) in points {
                s.push_str(&format!("{label:<4} = {}\n", fmt_complex(z)));
            }
            emit(out, &s)?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "eta": p.eta(),
                "a": { "re": p.a().re, "im": p.a().im },
                "mod_a": p.mod_a(),
                "c": p.c(),
                "cell": cell_json(&resolution),
                "points": points
                    .iter()
                    .map(|(label, z)| (label.to_string(), serde_json::json!({"re": z.re, "im": z.im})))
                    .collect::<serde_json::Map<_, _>>(),
            });
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        _ => bail!("params supports --format text or json"),
    }
    Ok(0)
}

pub fn cmd_eta_table(k_max: u32, tol: f64, format: Format, out: &Option<PathBuf>) -> Result<u8> {
    if k_max < 4 {
        bail!("--k-max must be at least 4 (partition roots start at k = 4)");
    }
    let rows: Vec<(u32, f64)> = (4..=k_max)
        .map(|k| eta_root(k, tol).map(|r| (k, r)))
        .collect::<dragon_hull::Result<_>>()?;
    match format {
        Format::Text => {
            let mut s = String::from("  k  eta_k\n");
            for (k, root) in &rows {
                s.push_str(&format!("{k:>3}  {root}\n"));
            }
            emit(out, &s)?;
        }
        Format::Csv => {
            let mut s = String::from("k,eta_k\n");
            for (k, root) in &rows {
                s.push_str(&format!("{k},{}\n", sig17(*root)));
            }
            emit(out, &s)?;
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> = rows
                .iter()
                .map(|(k, root)| serde_json::json!({"k": k, "eta": root}))
                .collect();
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Format::Svg => bail!("eta-table supports --format text, csv, or json"),
    }
    Ok(0)
}

fn try_predicted(p: &DragonParams, tol: f64) -> Result<Option<PredictedHull>> {
    match predicted_hull(p, tol) {
        Ok(h) => Ok(Some(h)),
        Err(Error::OpenVertexRegion { .. }) | Err(Error::AmbiguousBoundary { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_hull(
    eta: f64,
    depth: u32,
    tol: f64,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let p = DragonParams::new(eta)?;
    warn_if_near_upper_end(&p);
    let resolution = partition_cell(eta, tol)?;
    let predicted = try_predicted(&p, tol)?;
    let cloud = sample_attractor(&p, depth)?;
    let empirical = empirical_hull_from(&p, &cloud)?;
    let report = predicted
        .as_ref()
        .map(|ph| hull_match(ph.polygon(), &empirical, tol));
    let code = match &report {
        Some(r) if !r.pass => 1,
        _ => 0,
    };

    let predicted_json: Vec<VertexJson> = match &predicted {
        Some(ph) => ph.vertices().iter().map(VertexJson::from_labeled).collect(),
        None => empirical
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, z)| VertexJson::from_point(format!("e{i}"), *z))
            .collect(),
    };
    let empirical_json: Vec<VertexJson> = empirical
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, z)| VertexJson::from_point(format!("e{i}"), *z))
        .collect();

    match format {
        Format::Text => {
            let mut s = String::new();
            s.push_str(&format!("eta = {} ({})\n", p.eta(), cell_text(&resolution)));
            match &predicted {
                Some(ph) => {
                    s.push_str(&format!(
                        "predicted hull: {} vertices in clockwise order\n",
                        ph.vertices().len()
                    ));
                    for v in ph.vertices() {
                        s.push_str(&format!(
                            "  {:<4} {:>22}  {:>22}\n",
                            v.label.to_string(),
                            v.point.re,
                            v.point.im
                        ));
                    }
                }
                None => s.push_str("predicted hull: none (open region)\n"),
            }
            s.push_str(&format!(
                "empirical hull: {} vertices at depth {} (sampling error bound {})\n",
                empirical.vertices().len(),
                depth,
                cloud.error_bound()
            ));
            match &report {
                Some(r) => s.push_str(&format!(
                    "match: {} (max vertex distance {:.3e}, max outward {:.3e}, tol {:.1e})\n",
                    if r.pass { "pass" } else { "FAIL" },
                    r.max_vertex_distance,
                    r.max_outward_distance,
                    r.vertex_tol
                )),
                None => s.push_str("match: n/a (no prediction)\n"),
            }
            emit(out, &s)?;
        }
        Format::Json => {
            let doc = HullJson {
                eta: p.eta(),
                cell: cell_json(&resolution),
                open_region: predicted.is_none(),
                vertices: predicted_json,
                empirical_vertices: empirical_json,
                report: report.as_ref().map(ReportJson::from_report),
            };
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Format::Csv => emit(out, &vertices_csv(&predicted_json))?,
        Format::Svg => {
            let (polygon, labels) = match &predicted {
                Some(ph) => (
                    ph.polygon().clone(),
                    ph.vertices().iter().map(|v| v.label.to_string()).collect(),
                ),
                None => (
                    empirical.clone(),
                    (0..empirical.vertices().len()).map(|i| format!("e{i}")).collect::<Vec<_>>(),
                ),
            };
            emit(out, &hull_svg(cloud.points(), &polygon, &labels))?;
        }
    }
    Ok(code)
}

#[derive(Debug, Deserialize)]
struct IfsMapSpec {
    a: [f64; 2],
    b: [f64; 2],
}

pub fn load_ifs(path: &PathBuf) -> Result<SimilitudeIfs> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let specs: Vec<IfsMapSpec> = serde_json::from_str(&text)
        .context("ifs file must be a JSON array of {\"a\": [re, im], \"b\": [re, im]} maps")?;
    let maps = specs
        .iter()
        .map(|m| {
            AffineMap::new(
                ComplexScalar::new(m.a[0], m.a[1]),
                ComplexScalar::new(m.b[0], m.b[1]),
            )
        })
        .collect();
    Ok(SimilitudeIfs::new(maps)?)
}

pub fn parse_symbol_word(s: &str, what: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d >= 1 => Ok(d as u8),
            _ => bail!("{what} must consist of symbol digits 1-9, got {c:?}"),
        })
        .collect()
}

pub fn cmd_coding_check(
    ifs: SimilitudeIfs,
    prefix: Vec<u8>,
    period: Vec<u8>,
    tol: f64,
) -> Result<u8> {
    if !ifs.check_not_singleton() {
        eprintln!("warning: the attractor is a singleton; the extreme-coding criterion is vacuous");
    }
    let coding = Coding::new(prefix, period)?;
    let verdict = ifs.extreme_necessary_check(&coding, tol)?;
    match verdict {
        dragon_hull::codings::CodingVerdict::Passes { product } => {
            println!(
                "PASSES: linear-part product of the period is {} (positive real)",
                fmt_complex(product)
            );
            println!("note: the condition is necessary for extremality, not sufficient");
            Ok(0)
        }
        dragon_hull::codings::CodingVerdict::Fails { product, alpha } => {
            println!(
                "FAILS: linear-part product of the period is {}, argument alpha = {}",
                fmt_complex(product),
                alpha
            );
            println!("no point with this coding period can be an extreme point of the hull");
            Ok(1)
        }
    }
}

pub struct SweepRow {
    pub eta: f64,
    pub resolution: CellResolution,
    pub predicted_vertices: Option<usize>,
    pub empirical_vertices: usize,
    pub pass: Option<bool>,
    pub max_vertex_distance: Option<f64>,
}

pub fn cmd_sweep(
    etas: &[f64],
    depth: u32,
    tol: f64,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let mut rows = Vec::with_capacity(etas.len());
    for &eta in etas {
        let p = DragonParams::new(eta)?;
        let resolution = partition_cell(eta, tol)?;
        let predicted = try_predicted(&p, tol)?;
        let empirical = dragon_hull::oracle::empirical_hull(&p, depth)?;
        let report = predicted
            .as_ref()
            .map(|ph| hull_match(ph.polygon(), &empirical, tol));
        rows.push(SweepRow {
            eta,
            resolution,
            predicted_vertices: predicted.as_ref().map(|ph| ph.vertices().len()),
            empirical_vertices: empirical.vertices().len(),
            pass: report.as_ref().map(|r| r.pass),
            max_vertex_distance: report.as_ref().map(|r| r.max_vertex_distance),
        });
    }
    let failed = rows.iter().any(|r| r.pass == Some(false));

    match format {
        Format::Text => {
            let mut s = String::from("eta                  cell        pred  emp   match\n");
            for r in &rows {
                let cell = match &r.resolution {
                    CellResolution::Cell(c) => format!("k={}", c.k),
                    CellResolution::UpperRegion => "upper".into(),
                    CellResolution::BoundaryAmbiguous { k, .. } => format!("~k={k}"),
                };
                s.push_str(&format!(
                    "{:<20} {:<11} {:<5} {:<5} {}\n",
                    r.eta,
                    cell,
                    r.predicted_vertices.map_or("-".into(), |n| n.to_string()),
                    r.empirical_vertices,
                    match r.pass {
                        Some(true) => "pass",
                        Some(false) => "FAIL",
                        None => "n/a",
                    }
                ));
            }
            emit(out, &s)?;
        }
        Format::Csv => {
            let mut s =
                String::from("eta,cell,predicted_vertices,empirical_vertices,pass,max_vertex_distance\n");
            for r in &rows {
                let cell = match &r.resolution {
                    CellResolution::Cell(c) => c.k.to_string(),
                    CellResolution::UpperRegion => "upper_region".into(),
                    CellResolution::BoundaryAmbiguous { k, .. } => format!("boundary_{k}"),
                };
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    sig17(r.eta),
                    cell,
                    r.predicted_vertices.map_or(String::new(), |n| n.to_string()),
                    r.empirical_vertices,
                    r.pass.map_or(String::new(), |p| p.to_string()),
                    r.max_vertex_distance.map_or(String::new(), sig17),
                ));
            }
            emit(out, &s)?;
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "eta": r.eta,
                        "cell": cell_json(&r.resolution),
                        "predicted_vertices": r.predicted_vertices,
                        "empirical_vertices": r.empirical_vertices,
                        "pass": r.pass,
                        "max_vertex_distance": r.max_vertex_distance,
                    })
                })
                .collect();
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Format::Svg => bail!("sweep supports --format text, csv, or json"),
    }
    Ok(u8::from(failed))
}
