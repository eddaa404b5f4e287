//! Sign functions, partition roots, and the predicted hull polygon.
//!
//! Three trigonometric functions of `eta` govern which candidate points are
//! hull vertices (`m` abbreviates `|a| = 1 / (2 cos eta)`):
//!
//! ```text
//! phi_k(eta)   = (1 - m^4) sin((k-1) eta) - m^3 sin((k-2) eta) + m^k sin(eta)
//! theta_k(eta) = (1 - m^4) sin(eta) + m^(k+1) sin(k eta)
//! psi_k(eta)   = sin(eta) + m^(k-2) sin((k+1) eta)
//! ```
//!
//! For every `k >= 4`, `phi_k` has a unique zero `eta_k` in
//! `(pi/k, pi/(k-1))`; the decreasing sequence `eta_k` partitions the
//! parameter interval into cells `[eta_{k+1}, eta_k)` on which the hull has
//! exactly `2k + 2` vertices, listed clockwise as
//! `b_0, z_0, ..., z_k, w_1, ..., w_k`. Above `eta_4` no closed-form vertex
//! list is available and callers must fall back to the sampling oracle.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use crate::dragon::{DragonParams, LabeledPoint};
use crate::error::Error;
use crate::geometry::{convex_hull, in_convex_polygon, Containment, Polygon};
use crate::{ComplexScalar, Result};

/// Bisection runs until the bracket is at most this wide (double precision
/// floor with margin) or 200 iterations, whichever comes first.
const ROOT_BRACKET_WIDTH: f64 = 1e-13;
const MAX_BISECTION_STEPS: u32 = 200;

fn mod_a_at(eta: f64) -> f64 {
    1.0 / (2.0 * eta.cos())
}

/// `phi_k` evaluated directly from `eta`. Defined for any `eta` in
/// `(0, pi/2)`; bracket endpoints may sit on the closure of the parameter
/// interval.
pub fn phi_at(eta: f64, k: u32) -> f64 {
    let m = mod_a_at(eta);
    let kf = f64::from(k);
    (1.0 - m.powi(4)) * ((kf - 1.0) * eta).sin() - m.powi(3) * ((kf - 2.0) * eta).sin()
        + m.powi(k as i32) * eta.sin()
}

/// `theta_k` evaluated directly from `eta`.
pub fn theta_at(eta: f64, k: u32) -> f64 {
    let m = mod_a_at(eta);
    let kf = f64::from(k);
    (1.0 - m.powi(4)) * eta.sin() + m.powi(k as i32 + 1) * (kf * eta).sin()
}

/// `psi_k` evaluated directly from `eta`.
pub fn psi_at(eta: f64, k: u32) -> f64 {
    let m = mod_a_at(eta);
    let kf = f64::from(k);
    eta.sin() + m.powi(k as i32 - 2) * ((kf + 1.0) * eta).sin()
}

pub fn phi(p: &DragonParams, k: u32) -> f64 {
    phi_at(p.eta(), k)
}

pub fn theta(p: &DragonParams, k: u32) -> f64 {
    theta_at(p.eta(), k)
}

pub fn psi(p: &DragonParams, k: u32) -> f64 {
    psi_at(p.eta(), k)
}

fn root_cache() -> &'static Mutex<HashMap<u32, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The unique zero `eta_k` of `phi_k` in `(pi/k, pi/(k-1))`, located by
/// bisection.
///
/// The bracket signs `phi_k(pi/k) > 0` and `phi_k(pi/(k-1)) < 0` are
/// verified before iterating; a violation signals a formula bug rather than
/// a caller error. Roots are eta-independent constants, so each is computed
/// once (always to the design floor, which satisfies any admissible `tol`)
/// and memoized.
pub fn eta_root(k: u32, tol: f64) -> Result<f64> {
    if k < 4 {
        return Err(Error::KTooSmall { k });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    if let Some(&root) = root_cache().lock().unwrap().get(&k) {
        return Ok(root);
    }
    let root = bisect_root(k)?;
    root_cache().lock().unwrap().insert(k, root);
    Ok(root)
}

fn bisect_root(k: u32) -> Result<f64> {
    let kf = f64::from(k);
    let mut lo = PI / kf;
    let mut hi = PI / (kf - 1.0);
    let f_lo = phi_at(lo, k);
    if f_lo <= 0.0 {
        return Err(Error::BracketSign {
            k,
            eta: lo,
            value: f_lo,
        });
    }
    let f_hi = phi_at(hi, k);
    if f_hi >= 0.0 {
        return Err(Error::BracketSign {
            k,
            eta: hi,
            value: f_hi,
        });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= ROOT_BRACKET_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi_at(mid, k) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One cell `[eta_{k+1}, eta_k)` of the parameter partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionCell {
    pub k: u32,
    /// `eta_{k+1}`, the inclusive lower end.
    pub lower: f64,
    /// `eta_k`, the exclusive upper end.
    pub upper: f64,
}

impl PartitionCell {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Where a parameter value falls in the partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellResolution {
    Cell(PartitionCell),
    /// `eta >= eta_4`: the region where the vertex list has no closed form.
    UpperRegion,
    /// `eta` is within tolerance of a computed root; the half-open cells
    /// make the membership numerically undecidable, so the caller decides.
    BoundaryAmbiguous { k: u32, root: f64 },
}

/// Resolves the partition cell of `eta`, surfacing near-root values as
/// ambiguous rather than silently picking a side.
pub fn partition_cell(eta: f64, tol: f64) -> Result<CellResolution> {
    if !eta.is_finite() {
        return Err(Error::NonFinite { what: "eta" });
    }
    if !(eta > 0.0 && eta < crate::dragon::ETA_SUP) {
        return Err(Error::EtaOutOfRange {
            eta,
            min: 0.0,
            max: crate::dragon::ETA_SUP,
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    let root4 = eta_root(4, tol)?;
    if (eta - root4).abs() <= tol {
        return Ok(CellResolution::BoundaryAmbiguous { k: 4, root: root4 });
    }
    if eta > root4 {
        return Ok(CellResolution::UpperRegion);
    }
    // eta_k > pi/k, so only k near pi/eta can match; start the upward scan
    // a little below that instead of at 4.
    let mut k = ((PI / eta).floor() as i64 - 2).max(4) as u32;
    let mut upper = eta_root(k, tol)?;
    if (eta - upper).abs() <= tol {
        return Ok(CellResolution::BoundaryAmbiguous { k, root: upper });
    }
    debug_assert!(eta < upper);
    loop {
        let lower = eta_root(k + 1, tol)?;
        if (eta - lower).abs() <= tol {
            return Ok(CellResolution::BoundaryAmbiguous {
                k: k + 1,
                root: lower,
            });
        }
        if eta >= lower {
            return Ok(CellResolution::Cell(PartitionCell { k, lower, upper }));
        }
        k += 1;
        upper = lower;
    }
}

/// The predicted hull: `2k + 2` labeled vertices in clockwise order
/// `b_0, z_0, ..., z_k, w_1, ..., w_k`, validated convex.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictedHull {
    eta: f64,
    k: u32,
    vertices: Vec<LabeledPoint>,
    polygon: Polygon,
}

impl PredictedHull {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The listing parameter: vertices run `z_0..z_k` and `w_1..w_k`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertices(&self) -> &[LabeledPoint] {
        &self.vertices
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }
}

/// Constructs the predicted hull polygon for parameters inside a partition
/// cell.
///
/// At `eta_4` itself (within `tol`) the prediction degenerates to the
/// 8-vertex listing `b_0, z_0..z_3, w_1..w_3`; above it the vertex set has
/// no closed form and an error is returned so callers fall back to the
/// sampling oracle. Near any other computed root the cell is ambiguous and
/// also refused.
pub fn predicted_hull(p: &DragonParams, tol: f64) -> Result<PredictedHull> {
    let eta = p.eta();
    let root4 = eta_root(4, tol)?;
    let k = if (eta - root4).abs() <= tol {
        3
    } else {
        match partition_cell(eta, tol)? {
            CellResolution::Cell(cell) => cell.k,
            CellResolution::UpperRegion => return Err(Error::OpenVertexRegion { eta }),
            CellResolution::BoundaryAmbiguous { k, root } => {
                return Err(Error::AmbiguousBoundary { eta, k, root })
            }
        }
    };
    let vertices = p.candidate_set(k);
    let polygon = Polygon::new(vertices.iter().map(|lp| lp.point).collect())
        .map_err(|_| Error::InvalidPredictedHull { eta })?;
    if !polygon.is_convex_clockwise() {
        return Err(Error::InvalidPredictedHull { eta });
    }
    Ok(PredictedHull {
        eta,
        k,
        vertices,
        polygon,
    })
}

/// The advisory quartic `6 - 9x - 6x^2 + 16x^3 - 7x^4` evaluated at
/// `x = |a|^2`; its sign tracks the orientation quantity of
/// [`z6_escape_check`] but the authoritative value is the directly computed
/// one.
pub fn z6_escape_polynomial(x: f64) -> f64 {
    6.0 - 9.0 * x - 6.0 * x.powi(2) + 16.0 * x.powi(3) - 7.0 * x.powi(4)
}

/// Answer record for the question whether `z_6` escapes the 8-vertex
/// polygon `b_0, z_0..z_3, w_1..w_3` near the upper end of the parameter
/// range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Z6EscapeReport {
    pub eta: f64,
    /// `Im((conj(b_0) - conj(z_6)) (w_3 - z_6))`, computed directly. This
    /// is the ground truth: negative would place `z_6` outside.
    pub orient_value: f64,
    /// Advisory polynomial value at `|a|^2`.
    pub poly_value: f64,
    /// Containment of `z_6` in the hull of the 8 candidate points.
    pub z6_containment: Containment,
}

impl Z6EscapeReport {
    /// True when `z_6` lies strictly outside the 8-vertex polygon.
    pub fn z6_outside(&self) -> bool {
        self.z6_containment == Containment::Outside
    }
}

/// Computes the orientation quantity `Im((conj(b_0) - conj(z_6))(w_3 - z_6))`
/// directly, together with the advisory polynomial and an explicit
/// containment test of `z_6` against the 8-vertex polygon.
pub fn z6_escape_check(p: &DragonParams) -> Result<Z6EscapeReport> {
    let b0 = p.point_b(0);
    let z6 = p.point_z(6);
    let w3 = p.point_w(3);
    let orient_value = crate::geometry::orient_im(b0, z6, w3);
    let poly_value = z6_escape_polynomial(p.mod_a().powi(2));
    let mut pts: Vec<ComplexScalar> = vec![b0];
    pts.extend((0..=3).map(|j| p.point_z(j)));
    pts.extend((1..=3).map(|j| p.point_w(j)));
    let octagon = convex_hull(&pts)?;
    Ok(Z6EscapeReport {
        eta: p.eta(),
        orient_value,
        poly_value,
        z6_containment: in_convex_polygon(z6, &octagon, 1e-9),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn phi_examples_at_quarter_pi() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        // (1 - 1/4) sin(3pi/4) - 2^(-3/2) sin(pi/2) + (1/4) sin(pi/4) = sqrt(2)/4
        assert!((phi(&p, 4) - 2.0_f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((phi(&p, 5) - (-0.125)).abs() < 1e-14);
    }

    #[test]
    fn phi_example_low_index() {
        let p = DragonParams::new(FRAC_PI_6).unwrap();
        let m = p.mod_a();
        // independent re-evaluation: the (k-2) term has a negative angle
        let expect = -m.powi(3) * (-FRAC_PI_6).sin() + m * FRAC_PI_6.sin();
        assert!((phi(&p, 1) - expect).abs() < 1e-15);
        assert!((phi(&p, 1) - 0.38490017945975053).abs() < 1e-12);
    }

    #[test]
    fn theta_psi_examples_at_quarter_pi() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        assert!((theta(&p, 4) - 0.75 * FRAC_PI_4.sin()).abs() < 1e-14);
        let psi_expect = FRAC_PI_4.sin() + 0.5 * (5.0 * FRAC_PI_4).sin();
        assert!((psi(&p, 4) - psi_expect).abs() < 1e-15);
        assert!((psi(&p, 4) - 0.35355339059327384).abs() < 1e-12);
    }

    #[test]
    fn theta_reduces_when_sine_term_vanishes() {
        // k eta = pi kills the second term
        let k = 5u32;
        let eta = PI / f64::from(k);
        let p = DragonParams::new(eta).unwrap();
        let expect = (1.0 - p.mod_a().powi(4)) * eta.sin();
        assert!((theta(&p, k) - expect).abs() < 1e-14);
        assert!(theta(&p, k) > 0.0);
    }

    #[test]
    fn phi_matches_its_rearranged_form() {
        // (1 - m^2 - m^4) sin((k-1)e) + m^3 sin(k e) + m^k sin(e)
        for eta in [0.2, 0.45, FRAC_PI_4, 0.9, 1.03] {
            let m = mod_a_at(eta);
            for k in 1..=24u32 {
                let kf = f64::from(k);
                let alt = (1.0 - m.powi(2) - m.powi(4)) * ((kf - 1.0) * eta).sin()
                    + m.powi(3) * (kf * eta).sin()
                    + m.powi(k as i32) * eta.sin();
                assert!((phi_at(eta, k) - alt).abs() < 1e-12, "eta={eta} k={k}");
            }
        }
    }

    #[test]
    fn first_root_matches_its_closed_form() {
        let root = eta_root(4, 1e-12).unwrap();
        let closed = 2.0_f64.powf(-0.75).acos();
        assert!((root - closed).abs() < 1e-10, "root {root} vs {closed}");
    }

    #[test]
    fn fifth_root_lies_in_its_bracket() {
        let root = eta_root(5, 1e-12).unwrap();
        assert!(root > PI / 5.0 && root < PI / 4.0);
        assert!(phi_at(root, 5).abs() < 1e-12);
    }

    #[test]
    fn small_k_is_rejected() {
        assert_eq!(eta_root(3, 1e-9), Err(Error::KTooSmall { k: 3 }));
        assert_eq!(
            eta_root(5, 0.0),
            Err(Error::InvalidTolerance { tol: 0.0 })
        );
    }

    #[test]
    fn roots_decrease() {
        let mut prev = eta_root(4, 1e-12).unwrap();
        for k in 5..=20 {
            let r = eta_root(k, 1e-12).unwrap();
            assert!(r < prev, "eta_{k} not below eta_{}", k - 1);
            prev = r;
        }
    }

    #[test]
    fn cell_of_quarter_pi() {
        match partition_cell(FRAC_PI_4, 1e-9).unwrap() {
            CellResolution::Cell(cell) => {
                assert_eq!(cell.k, 4);
                assert!(cell.lower <= FRAC_PI_4 && FRAC_PI_4 < cell.upper);
            }
            other => panic!("expected cell, got {other:?}"),
        }
    }

    #[test]
    fn cell_of_sixth_pi() {
        match partition_cell(FRAC_PI_6, 1e-9).unwrap() {
            CellResolution::Cell(cell) => assert_eq!(cell.k, 6),
            other => panic!("expected cell, got {other:?}"),
        }
    }

    #[test]
    fn upper_region_and_boundaries() {
        assert_eq!(
            partition_cell(1.0, 1e-9).unwrap(),
            CellResolution::UpperRegion
        );
        let root5 = eta_root(5, 1e-12).unwrap();
        match partition_cell(root5 + 1e-12, 1e-9).unwrap() {
            CellResolution::BoundaryAmbiguous { k: 5, .. } => {}
            other => panic!("expected ambiguity near eta_5, got {other:?}"),
        }
        assert!(matches!(
            partition_cell(0.0, 1e-9),
            Err(Error::EtaOutOfRange { .. })
        ));
    }

    #[test]
    fn small_eta_cells_terminate_fast() {
        match partition_cell(0.01, 1e-9).unwrap() {
            CellResolution::Cell(cell) => {
                assert!(cell.lower <= 0.01 && 0.01 < cell.upper);
                assert!(cell.k >= 4);
                // bracket containment pins k near pi/eta
                assert!(cell.upper < PI / (f64::from(cell.k) - 1.0));
                assert!(cell.lower > PI / f64::from(cell.k + 1));
            }
            other => panic!("expected cell, got {other:?}"),
        }
    }

    #[test]
    fn predicted_hull_at_quarter_pi() {
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let hull = predicted_hull(&p, 1e-9).unwrap();
        assert_eq!(hull.k(), 4);
        assert_eq!(hull.vertices().len(), 10);
        let labels: Vec<String> = hull.vertices().iter().map(|v| v.label.to_string()).collect();
        assert_eq!(
            labels,
            ["b0", "z0", "z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4"]
        );
        let expect = [
            (5.0 / 6.0, -0.5),
            (2.0 / 3.0, -2.0 / 3.0),
            (0.0, -2.0 / 3.0),
            (-1.0 / 3.0, -1.0 / 3.0),
            (-1.0 / 3.0, 0.0),
            (-1.0 / 6.0, 1.0 / 6.0),
            (2.0 / 3.0, 1.0 / 3.0),
            (1.0, 1.0 / 3.0),
            (7.0 / 6.0, 1.0 / 6.0),
            (7.0 / 6.0, 0.0),
        ];
        for (v, (re, im)) in hull.vertices().iter().zip(expect) {
            assert!((v.point - ComplexScalar::new(re, im)).norm() < 1e-14);
        }
        assert!(hull.polygon().is_convex_clockwise());
    }

    #[test]
    fn predicted_hull_errors_above_the_first_root() {
        let p = DragonParams::new(1.0).unwrap();
        assert!(matches!(
            predicted_hull(&p, 1e-9),
            Err(Error::OpenVertexRegion { .. })
        ));
    }

    #[test]
    fn predicted_hull_at_sixth_pi_has_fourteen_vertices() {
        let p = DragonParams::new(FRAC_PI_6).unwrap();
        let hull = predicted_hull(&p, 1e-9).unwrap();
        assert_eq!(hull.k(), 6);
        assert_eq!(hull.vertices().len(), 14);
    }

    #[test]
    fn predicted_hull_exactly_at_the_first_root() {
        let root4 = eta_root(4, 1e-12).unwrap();
        let p = DragonParams::new(root4).unwrap();
        let hull = predicted_hull(&p, 1e-9).unwrap();
        assert_eq!(hull.k(), 3);
        assert_eq!(hull.vertices().len(), 8);
        assert!(hull.polygon().is_convex_clockwise());
    }

    #[test]
    fn escape_polynomial_vanishes_at_one() {
        assert_eq!(z6_escape_polynomial(1.0), 0.0);
        // derivative of the printed quartic at 1 is -9 - 12 + 48 - 28 = -1,
        // so the quartic is positive just below 1
        assert!(z6_escape_polynomial(1.0 - 1e-3) > 0.0);
    }

    #[test]
    fn z6_stays_inside_near_the_upper_end() {
        // ground truth by direct evaluation: at eta = pi/3 - 0.01 the
        // orientation quantity is positive and z_6 is interior
        let p = DragonParams::new(PI / 3.0 - 0.01).unwrap();
        let report = z6_escape_check(&p).unwrap();
        assert!(report.orient_value > 0.0);
        assert!(!report.z6_outside());
        assert_eq!(report.z6_containment, Containment::Inside);
        // sign agreement with the advisory polynomial
        assert!(report.poly_value > 0.0);
    }
}
