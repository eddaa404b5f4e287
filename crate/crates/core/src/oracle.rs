//! Independent ground truth: exhaustive attractor sampling, empirical
//! hulls, and executable versions of the containment properties the hull
//! theory relies on.
//!
//! Sampling expands every composition word of a fixed depth and applies it
//! to the two map fixed points 0 and 1, both of which belong to the
//! attractor; every sample is therefore an exact attractor point and the
//! whole attractor is within `|a|^depth / (1 - |a|)` of some sample. No
//! randomness is involved, so results are deterministic and error-bounded.

use std::fmt;

use crate::dragon::DragonParams;
use crate::error::Error;
use crate::geometry::{
    convex_hull, in_convex_polygon, in_triangle, segment_distance, Containment, Polygon,
};
use crate::hull::{partition_cell, CellResolution};
use crate::{arg_2pi, ComplexScalar, Result};

/// Containment tolerance used by the lemma-style checks.
const MEMBERSHIP_TOL: f64 = 1e-9;

/// How far past `j` the tail inequality of the disk property is sampled.
const DISK_TAIL_SPAN: u32 = 50;

/// Parameter samples per segment for the brute-force side of the disk
/// property.
const SEGMENT_SAMPLES: u32 = 1000;

/// Deterministic attractor sample: the images of the seed set {0, 1} under
/// every composition word of length `depth`.
#[derive(Debug, Clone)]
pub struct SampleCloud {
    points: Vec<ComplexScalar>,
    depth: u32,
    error_bound: f64,
}

impl SampleCloud {
    pub fn points(&self) -> &[ComplexScalar] {
        &self.points
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Every attractor point is within this distance of some sample.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }
}

/// Expands all `2^depth` composition words and applies each to both seeds,
/// producing exactly `2^(depth+1)` attractor points in a deterministic
/// depth-first order.
pub fn sample_attractor(p: &DragonParams, depth: u32) -> Result<SampleCloud> {
    if !(1..=26).contains(&depth) {
        return Err(Error::DepthOutOfRange { depth });
    }
    let maps = [
        (p.a(), ComplexScalar::new(0.0, 0.0)),
        (-p.a().conj(), ComplexScalar::new(1.0, 0.0)),
    ];
    let mut points = Vec::with_capacity(1usize << (depth + 1));
    // iterative DFS over composite affine maps (lin, off), appending the
    // next symbol on the inside
    let mut stack: Vec<(ComplexScalar, ComplexScalar, u32)> = vec![(
        ComplexScalar::new(1.0, 0.0),
        ComplexScalar::new(0.0, 0.0),
        0,
    )];
    while let Some((lin, off, level)) = stack.pop() {
        if level == depth {
            points.push(off);
            points.push(lin + off);
            continue;
        }
        // push map 2 first so map 1 is expanded first
        for &(ml, mo) in maps.iter().rev() {
            stack.push((lin * ml, lin * mo + off, level + 1));
        }
    }
    let error_bound = p.mod_a().powi(depth as i32) / (1.0 - p.mod_a());
    Ok(SampleCloud {
        points,
        depth,
        error_bound,
    })
}

/// Convex hull of the sample cloud augmented with the closed-form candidate
/// points.
///
/// The candidates are exact attractor members and pin the hull's sharp
/// vertices, which finite-depth sampling alone approaches only to within
/// the error bound. The augmentation reach is `2 k + 5` where `k` is the
/// resolved cell parameter (4 when no cell applies).
pub fn empirical_hull(p: &DragonParams, depth: u32) -> Result<Polygon> {
    let cloud = sample_attractor(p, depth)?;
    empirical_hull_from(p, &cloud)
}

/// Same as [`empirical_hull`] but reuses an already computed cloud.
pub fn empirical_hull_from(p: &DragonParams, cloud: &SampleCloud) -> Result<Polygon> {
    let k_eff = match partition_cell(p.eta(), MEMBERSHIP_TOL)? {
        CellResolution::Cell(cell) => cell.k,
        CellResolution::BoundaryAmbiguous { k, .. } => k,
        CellResolution::UpperRegion => 4,
    };
    let mut pts = cloud.points.clone();
    pts.extend(p.candidate_set(2 * k_eff + 5).iter().map(|lp| lp.point));
    convex_hull(&pts)
}

/// True when the images of every hull vertex under both maps stay inside
/// (or on the boundary of) the hull. Both maps are affine and the hull is
/// convex, so vertex containment is equivalent to image containment.
pub fn check_invariance(p: &DragonParams, hull: &Polygon, tol: f64) -> bool {
    hull.vertices().iter().all(|&v| {
        in_convex_polygon(p.f1(v), hull, tol) != Containment::Outside
            && in_convex_polygon(p.f2(v), hull, tol) != Containment::Outside
    })
}

/// The disk property at index `j >= 1`, valid for parameters below the
/// first partition root: the tail `{z_k : k >= j}` stays inside the disk of
/// radius `|z_j|` while the initial broken segment `z_0 z_1 ... z_{j-1}`
/// stays strictly outside it.
///
/// The segment side is checked twice: by the closed-form point-segment
/// distance and by brute-force parameter sampling.
pub fn check_disk_property(p: &DragonParams, j: u32) -> Result<bool> {
    assert!(j >= 1, "disk property is stated for j >= 1");
    let root4 = crate::hull::eta_root(4, MEMBERSHIP_TOL)?;
    if !(p.eta() > 0.0 && p.eta() < root4) {
        return Err(Error::EtaOutOfRange {
            eta: p.eta(),
            min: 0.0,
            max: root4,
        });
    }
    let radius = p.point_z(j).norm();
    for k in j..=j + DISK_TAIL_SPAN {
        if p.point_z(k).norm() > radius * (1.0 + 1e-12) {
            return Ok(false);
        }
    }
    // broken segment z_0 .. z_{j-1}: each constituent segment must clear
    // the disk; vacuous for j = 1
    let origin = ComplexScalar::new(0.0, 0.0);
    for i in 0..j.saturating_sub(1) {
        let u = p.point_z(i);
        let v = p.point_z(i + 1);
        if segment_distance(origin, u, v) <= radius {
            return Ok(false);
        }
        let mut sampled = f64::INFINITY;
        for s in 0..=SEGMENT_SAMPLES {
            let t = f64::from(s) / f64::from(SEGMENT_SAMPLES);
            sampled = sampled.min((u + t * (v - u)).norm());
        }
        if sampled <= radius {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of one lemma-style sub-check.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckStatus {
    Passed,
    /// The hypothesis of the property does not apply at this parameter.
    Skipped(String),
    /// First failing instance.
    Failed(String),
}

impl CheckStatus {
    pub fn failed(&self) -> bool {
        matches!(self, CheckStatus::Failed(_))
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Passed => write!(f, "passed"),
            CheckStatus::Skipped(why) => write!(f, "skipped ({why})"),
            CheckStatus::Failed(what) => write!(f, "FAILED ({what})"),
        }
    }
}

/// Per-property report of the membership checks at one parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub eta: f64,
    /// Resolved cell parameter, when the parameter falls inside a cell.
    pub cell_k: Option<u32>,
    /// `w_0` inside both mirror triangles `(0, z_2, z_3)` when `w_0 < 0`.
    pub w0_triangles: CheckStatus,
    /// `z_j` in the hull of `{0, z_{j-1}, w_1, 1}` and `w_j` in the hull of
    /// `{1, w_{j-1}, b_0, a}` over the case-dependent index range.
    pub chain_containment: CheckStatus,
    /// 0 and 1 interior to the candidate hull.
    pub endpoints_in_hull: CheckStatus,
    /// The four tail points land in their case-selected seed triangles.
    pub tail_triangles: CheckStatus,
    /// Boundary-case annotations (an argument falling on a case split).
    pub notes: Vec<String>,
}

impl MembershipReport {
    pub fn all_pass(&self) -> bool {
        !(self.w0_triangles.failed()
            || self.chain_containment.failed()
            || self.endpoints_in_hull.failed()
            || self.tail_triangles.failed())
    }

    pub fn statuses(&self) -> [(&'static str, &CheckStatus); 4] {
        [
            ("w0-triangles", &self.w0_triangles),
            ("chain-containment", &self.chain_containment),
            ("endpoints-in-hull", &self.endpoints_in_hull),
            ("tail-triangles", &self.tail_triangles),
        ]
    }
}

fn triangle_status(
    what: String,
    p: ComplexScalar,
    u: ComplexScalar,
    v: ComplexScalar,
    w: ComplexScalar,
) -> CheckStatus {
    match in_triangle(p, u, v, w, MEMBERSHIP_TOL) {
        Ok(true) => CheckStatus::Passed,
        Ok(false) => CheckStatus::Failed(format!("{what} lies outside its triangle")),
        Err(e) => CheckStatus::Failed(format!("{what}: {e}")),
    }
}

fn merge(a: CheckStatus, b: CheckStatus) -> CheckStatus {
    match (a, b) {
        (CheckStatus::Failed(x), _) | (_, CheckStatus::Failed(x)) => CheckStatus::Failed(x),
        (CheckStatus::Passed, other) | (other, CheckStatus::Passed) => other,
        (CheckStatus::Skipped(x), CheckStatus::Skipped(_)) => CheckStatus::Skipped(x),
    }
}

/// Runs the membership properties at one parameter value. Sub-checks whose
/// hypotheses do not hold are reported as skipped, never failed; each
/// failing check carries its first offending instance.
pub fn check_membership_lemmas(p: &DragonParams) -> Result<MembershipReport> {
    let eta = p.eta();
    let mut notes = Vec::new();

    let cell = match partition_cell(eta, MEMBERSHIP_TOL)? {
        CellResolution::Cell(cell) => Some(cell),
        CellResolution::UpperRegion => None,
        CellResolution::BoundaryAmbiguous { k, root } => {
            notes.push(format!(
                "eta within tolerance of the k = {k} partition root {root}; cell checks skipped"
            ));
            None
        }
    };

    // w_0 in both mirror triangles, hypothesis w_0 < 0
    let w0 = p.point_w(0);
    let w0_triangles = if w0.re >= 0.0 {
        CheckStatus::Skipped(format!("w0 = {} is nonnegative", w0.re))
    } else {
        let z2 = p.point_z(2);
        let z3 = p.point_z(3);
        merge(
            triangle_status("w0 vs (0, z2, z3)".into(), w0, ComplexScalar::new(0.0, 0.0), z2, z3),
            triangle_status(
                "w0 vs (0, conj z2, conj z3)".into(),
                w0,
                ComplexScalar::new(0.0, 0.0),
                z2.conj(),
                z3.conj(),
            ),
        )
    };

    let no_cell = CheckStatus::Skipped("no partition cell applies".into());
    let (chain_containment, endpoints_in_hull, tail_triangles) = match cell {
        None => (no_cell.clone(), no_cell.clone(), no_cell),
        Some(cell) => {
            let k = cell.k;
            let case_upper = eta >= std::f64::consts::PI / f64::from(k);
            (
                chain_containment_check(p, k, case_upper),
                endpoints_check(p, k),
                tail_triangles_check(p, k, case_upper, &mut notes),
            )
        }
    };

    Ok(MembershipReport {
        eta,
        cell_k: cell.map(|c| c.k),
        w0_triangles,
        chain_containment,
        endpoints_in_hull,
        tail_triangles,
        notes,
    })
}

fn quad_contains(corners: [ComplexScalar; 4], point: ComplexScalar) -> Result<bool> {
    let hull = convex_hull(&corners)?;
    Ok(in_convex_polygon(point, &hull, MEMBERSHIP_TOL) != Containment::Outside)
}

fn chain_containment_check(p: &DragonParams, k: u32, case_upper: bool) -> CheckStatus {
    let j_max = if case_upper { 2 * k - 3 } else { 2 * k - 1 };
    let one = ComplexScalar::new(1.0, 0.0);
    let zero = ComplexScalar::new(0.0, 0.0);
    for j in (k + 1)..=j_max {
        match quad_contains([zero, p.point_z(j - 1), p.point_w(1), one], p.point_z(j)) {
            Ok(true) => {}
            Ok(false) => {
                return CheckStatus::Failed(format!("z_{j} outside co(0, z_{}, w1, 1)", j - 1))
            }
            Err(e) => return CheckStatus::Failed(format!("z_{j} containment: {e}")),
        }
        match quad_contains([one, p.point_w(j - 1), p.point_b(0), p.a()], p.point_w(j)) {
            Ok(true) => {}
            Ok(false) => {
                return CheckStatus::Failed(format!("w_{j} outside co(1, w_{}, b0, a)", j - 1))
            }
            Err(e) => return CheckStatus::Failed(format!("w_{j} containment: {e}")),
        }
    }
    CheckStatus::Passed
}

fn endpoints_check(p: &DragonParams, k: u32) -> CheckStatus {
    let pts: Vec<ComplexScalar> = p.candidate_set(k).iter().map(|lp| lp.point).collect();
    let hull = match convex_hull(&pts) {
        Ok(h) => h,
        Err(e) => return CheckStatus::Failed(format!("candidate hull: {e}")),
    };
    for (name, point) in [
        ("0", ComplexScalar::new(0.0, 0.0)),
        ("1", ComplexScalar::new(1.0, 0.0)),
    ] {
        if in_convex_polygon(point, &hull, MEMBERSHIP_TOL) == Containment::Outside {
            return CheckStatus::Failed(format!("{name} outside the candidate hull"));
        }
    }
    CheckStatus::Passed
}

/// Case-split tail memberships. The pivot argument is compared against the
/// half-open split `(0, eta]` vs `(eta, 2 eta]`; values within 1e-12 of the
/// split are assigned to the closed side and logged.
fn tail_triangles_check(
    p: &DragonParams,
    k: u32,
    case_upper: bool,
    notes: &mut Vec<String>,
) -> CheckStatus {
    let eta = p.eta();
    let one = ComplexScalar::new(1.0, 0.0);
    let zero = ComplexScalar::new(0.0, 0.0);
    let w0 = p.point_w(0);
    let a = p.a();

    // pivot index: 2k-3 in the upper case, 2k-1 in the lower; memberships
    // advance correspondingly
    let pivot_idx = if case_upper { 2 * k - 3 } else { 2 * k - 1 };
    let base = pivot_idx + 1;
    let pivot = p.point_z(pivot_idx);
    let g = match arg_2pi(pivot) {
        Ok(g) => g,
        Err(e) => return CheckStatus::Failed(format!("arg z_{pivot_idx}: {e}")),
    };
    if (g - eta).abs() <= 1e-12 {
        notes.push(format!(
            "arg z_{pivot_idx} falls on the case split at eta; assigned to the closed side"
        ));
    }
    let first_case = g <= eta + 1e-12;

    let checks: [(String, ComplexScalar, [ComplexScalar; 3]); 4] = if first_case {
        [
            (format!("z_{base}"), p.point_z(base), [zero, p.point_z(0), one]),
            (
                format!("z_{}", base + 1),
                p.point_z(base + 1),
                [zero, p.point_z(1), p.point_z(0)],
            ),
            (format!("w_{base}"), p.point_w(base), [one, w0, a]),
            (
                format!("w_{}", base + 1),
                p.point_w(base + 1),
                [one, p.point_w(1), w0],
            ),
        ]
    } else {
        [
            (format!("z_{base}"), p.point_z(base), [zero, one, pivot]),
            (
                format!("z_{}", base + 1),
                p.point_z(base + 1),
                [zero, p.point_z(0), one],
            ),
            (
                format!("w_{base}"),
                p.point_w(base),
                [one, a, p.point_w(pivot_idx)],
            ),
            (format!("w_{}", base + 1), p.point_w(base + 1), [one, w0, a]),
        ]
    };

    for (what, point, [u, v, w]) in checks {
        let status = triangle_status(what, point, u, v, w);
        if status.failed() {
            return status;
        }
    }
    CheckStatus::Passed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::predicted_hull;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn depth_one_expansion() {
        let p = DragonParams::new(0.7).unwrap();
        let cloud = sample_attractor(&p, 1).unwrap();
        assert_eq!(cloud.points().len(), 4);
        let expect = [
            ComplexScalar::new(0.0, 0.0),
            p.a(),
            ComplexScalar::new(1.0, 0.0),
            ComplexScalar::new(1.0, 0.0) - p.a().conj(),
        ];
        for e in expect {
            assert!(
                cloud.points().iter().any(|q| (q - e).norm() < 1e-15),
                "missing {e}"
            );
        }
    }

    #[test]
    fn cloud_size_and_bound() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        for depth in [1u32, 2, 5, 10] {
            let cloud = sample_attractor(&p, depth).unwrap();
            assert_eq!(cloud.points().len(), 1 << (depth + 1));
        }
        let cloud = sample_attractor(&p, 20).unwrap();
        // |a| = 2^(-1/2): bound is 2^(-10) / (1 - 2^(-1/2))
        let expect = 0.5_f64.sqrt().powi(20) / (1.0 - 0.5_f64.sqrt());
        assert!((cloud.error_bound() - expect).abs() < 1e-15);
        assert!((expect - 3.334192932001226e-3).abs() < 1e-12);
    }

    #[test]
    fn depth_bounds_are_enforced() {
        let p = DragonParams::new(0.5).unwrap();
        assert!(matches!(
            sample_attractor(&p, 0),
            Err(Error::DepthOutOfRange { depth: 0 })
        ));
        assert!(matches!(
            sample_attractor(&p, 27),
            Err(Error::DepthOutOfRange { depth: 27 })
        ));
    }

    #[test]
    fn shallow_samples_sit_inside_the_predicted_hull() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let hull = predicted_hull(&p, 1e-9).unwrap();
        let cloud = sample_attractor(&p, 2).unwrap();
        assert_eq!(cloud.points().len(), 8);
        for &q in cloud.points() {
            assert_ne!(
                in_convex_polygon(q, hull.polygon(), 1e-9),
                Containment::Outside,
                "sample {q} escaped"
            );
        }
    }

    #[test]
    fn empirical_hull_matches_prediction_at_quarter_pi() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let hull = empirical_hull(&p, 12).unwrap();
        assert_eq!(hull.vertices().len(), 10);
        let predicted = predicted_hull(&p, 1e-9).unwrap();
        let report = crate::geometry::hull_match(predicted.polygon(), &hull, 1e-6);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn empirical_hull_exists_in_the_open_region() {
        let p = DragonParams::new(1.0).unwrap();
        let hull = empirical_hull(&p, 10).unwrap();
        assert!(hull.vertices().len() >= 3);
        assert!(hull.is_convex_clockwise());
    }

    #[test]
    fn predicted_hull_is_map_invariant() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let hull = predicted_hull(&p, 1e-9).unwrap();
        assert!(check_invariance(&p, hull.polygon(), 1e-9));
    }

    #[test]
    fn unit_square_is_not_invariant() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let square = convex_hull(&[
            ComplexScalar::new(0.0, 0.0),
            ComplexScalar::new(1.0, 0.0),
            ComplexScalar::new(1.0, 1.0),
            ComplexScalar::new(0.0, 1.0),
        ])
        .unwrap();
        // f2(i) = 1.5 - 0.5i leaves the square
        assert!(!check_invariance(&p, &square, 1e-9));
    }

    #[test]
    fn disk_property_examples() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        assert!(check_disk_property(&p, 3).unwrap());
        assert!(check_disk_property(&p, 1).unwrap());
        // moduli contract by exactly |a| per index
        for k in 0..10u32 {
            let ratio = p.point_z(k + 1).norm() / p.point_z(k).norm();
            assert!((ratio - p.mod_a()).abs() < 1e-12);
        }
        let above = DragonParams::new(1.0).unwrap();
        assert!(matches!(
            check_disk_property(&above, 3),
            Err(Error::EtaOutOfRange { .. })
        ));
    }

    #[test]
    fn membership_at_zero_nine() {
        let p = DragonParams::new(0.9).unwrap();
        let report = check_membership_lemmas(&p).unwrap();
        assert_eq!(report.w0_triangles, CheckStatus::Passed);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn membership_skips_w0_at_quarter_pi() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let report = check_membership_lemmas(&p).unwrap();
        assert!(matches!(report.w0_triangles, CheckStatus::Skipped(_)));
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.cell_k, Some(4));
    }

    #[test]
    fn membership_endpoints_at_fifth_pi() {
        let p = DragonParams::new(std::f64::consts::PI / 5.0).unwrap();
        let report = check_membership_lemmas(&p).unwrap();
        assert_eq!(report.endpoints_in_hull, CheckStatus::Passed);
        assert!(report.all_pass(), "{report:?}");
    }
}
