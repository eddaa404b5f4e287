//! The necessary condition satisfied by eventually periodic codings of
//! extreme points of a complex-similitude attractor, and the
//! surrounding-orbit construction that witnesses its failure.
//!
//! For an IFS of maps `z -> a_i z + b_i` with `0 < |a_i| < 1` and a
//! non-singleton attractor, a coding `prefix (j_1 ... j_k)^inf` of an
//! extreme point of the hull forces the linear-part product
//! `a_{j_1} ... a_{j_k}` to be a positive real. When the product has a
//! nonzero argument, iterating the periodic composition from any other
//! attractor point produces an orbit spiraling around the period's fixed
//! point; after finitely many steps the fixed point falls strictly inside
//! the orbit's convex hull, which is the geometric content of the
//! criterion. The check here is necessary only: a passing verdict does not
//! assert that the coded point is extreme.

use crate::dragon::{Coding, DragonParams};
use crate::error::Error;
use crate::geometry::{convex_hull, in_convex_polygon, Containment};
use crate::{arg_2pi, ComplexScalar, Result};

/// One affine similitude `z -> linear * z + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub linear: ComplexScalar,
    pub offset: ComplexScalar,
}

impl AffineMap {
    pub fn new(linear: ComplexScalar, offset: ComplexScalar) -> Self {
        Self { linear, offset }
    }

    pub fn apply(&self, z: ComplexScalar) -> ComplexScalar {
        self.linear * z + self.offset
    }

    /// The unique fixed point `offset / (1 - linear)`.
    pub fn fixed_point(&self) -> ComplexScalar {
        self.offset / (ComplexScalar::new(1.0, 0.0) - self.linear)
    }
}

/// An ordered family of contractive similitudes, addressed by 1-based
/// symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilitudeIfs {
    maps: Vec<AffineMap>,
}

impl SimilitudeIfs {
    pub fn new(maps: Vec<AffineMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::NoMaps);
        }
        for (index, m) in maps.iter().enumerate() {
            for z in [m.linear, m.offset] {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { what: "map coefficient" });
                }
            }
            let modulus = m.linear.norm();
            if !(modulus > 0.0 && modulus < 1.0) {
                return Err(Error::ContractionOutOfRange { index, modulus });
            }
        }
        Ok(Self { maps })
    }

    /// The two-map dragon system for the given parameters.
    pub fn dragon(p: &DragonParams) -> Self {
        Self {
            maps: vec![
                AffineMap::new(p.a(), ComplexScalar::new(0.0, 0.0)),
                AffineMap::new(-p.a().conj(), ComplexScalar::new(1.0, 0.0)),
            ],
        }
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    fn map_for(&self, symbol: u8) -> Result<&AffineMap> {
        if symbol >= 1 && (symbol as usize) <= self.maps.len() {
            Ok(&self.maps[symbol as usize - 1])
        } else {
            Err(Error::InvalidSymbol {
                symbol,
                map_count: self.maps.len(),
            })
        }
    }

    /// Product of the linear parts along `word`; modulus in (0, 1).
    pub fn linear_part_product(&self, word: &[u8]) -> Result<ComplexScalar> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut acc = ComplexScalar::new(1.0, 0.0);
        for &s in word {
            acc *= self.map_for(s)?.linear;
        }
        Ok(acc)
    }

    /// Composite affine map of `word`, with the last symbol acting first.
    fn compose_word(&self, word: &[u8]) -> Result<(ComplexScalar, ComplexScalar)> {
        let mut lin = ComplexScalar::new(1.0, 0.0);
        let mut off = ComplexScalar::new(0.0, 0.0);
        for &s in word {
            let m = self.map_for(s)?;
            off = lin * m.offset + off;
            lin *= m.linear;
        }
        Ok((lin, off))
    }

    /// Fixed point of the composition named by `word` (analytically; the
    /// composite is a contraction, so the fixed point is `B / (1 - A)`).
    pub fn periodic_fixed_point(&self, word: &[u8]) -> Result<ComplexScalar> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let (lin, off) = self.compose_word(word)?;
        Ok(off / (ComplexScalar::new(1.0, 0.0) - lin))
    }

    /// The extreme-point necessary condition on a coding's period.
    ///
    /// Passes exactly when the period's linear-part product is a positive
    /// real within tolerance: `|Im| <= tol * max(|product|, 1e-300)` and
    /// `Re > 0`. A failing verdict carries the offending argument in
    /// `[0, 2pi)`. Passing is necessary for the coded point to be extreme,
    /// never sufficient.
    pub fn extreme_necessary_check(&self, coding: &Coding, tol: f64) -> Result<CodingVerdict> {
        let product = self.linear_part_product(coding.period())?;
        if product.norm() == 0.0 {
            return Err(Error::NonFinite {
                what: "linear-part product (underflowed to zero)",
            });
        }
        if product.im.abs() <= tol * product.norm().max(1e-300) && product.re > 0.0 {
            Ok(CodingVerdict::Passes { product })
        } else {
            Ok(CodingVerdict::Fails {
                product,
                alpha: arg_2pi(product)?,
            })
        }
    }

    /// Orbit `v_p = A^p (v - w) + w`, `p = 1..=p_max`, of `v` under the
    /// periodic composition with linear-part product `A` and fixed point
    /// `w`. Errors when `v` coincides with `w` (the orbit degenerates).
    pub fn surrounding_orbit(
        &self,
        period: &[u8],
        v: ComplexScalar,
        p_max: u32,
    ) -> Result<Vec<ComplexScalar>> {
        let w = self.periodic_fixed_point(period)?;
        let ratio = self.linear_part_product(period)?;
        if (v - w).norm() <= 1e-12 * (1.0 + w.norm()) {
            return Err(Error::DegenerateOrbit);
        }
        let mut out = Vec::with_capacity(p_max as usize);
        let mut pow = ComplexScalar::new(1.0, 0.0);
        for _ in 0..p_max {
            pow *= ratio;
            out.push(pow * (v - w) + w);
        }
        Ok(out)
    }

    /// True unless the fixed points of all individual maps coincide, which
    /// for affine similitudes happens exactly when the attractor is a
    /// single point.
    pub fn check_not_singleton(&self) -> bool {
        let first = self.maps[0].fixed_point();
        let scale = 1.0 + first.norm();
        self.maps
            .iter()
            .any(|m| (m.fixed_point() - first).norm() > 1e-12 * scale)
    }
}

/// Outcome of the extreme-coding necessary check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CodingVerdict {
    Passes {
        product: ComplexScalar,
    },
    Fails {
        product: ComplexScalar,
        /// Argument of the product in `[0, 2pi)`.
        alpha: f64,
    },
}

impl CodingVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, CodingVerdict::Passes { .. })
    }

    pub fn product(&self) -> ComplexScalar {
        match *self {
            CodingVerdict::Passes { product } | CodingVerdict::Fails { product, .. } => product,
        }
    }
}

/// Suggested orbit length for the enclosure search: the smallest count
/// whose accumulated turning spans more than a full revolution, plus slack.
pub fn suggested_orbit_count(alpha: f64) -> u32 {
    use std::f64::consts::TAU;
    let gap = alpha.min(TAU - alpha).abs().max(1e-3);
    (TAU / gap).ceil() as u32 + 2
}

/// Smallest `p <= cap` such that the fixed point `w` lies strictly inside
/// the convex hull of the orbit `{A^q (v - w) + w : q = 1..=p}`, if any.
///
/// This is the engine behind the failure direction of the extreme-coding
/// criterion: for `A = r exp(i alpha)` with `alpha != 0` such a `p` exists.
pub fn enclosing_orbit_length(
    ratio: ComplexScalar,
    v: ComplexScalar,
    w: ComplexScalar,
    cap: u32,
) -> Option<u32> {
    let mut pts: Vec<ComplexScalar> = Vec::new();
    let mut pow = ComplexScalar::new(1.0, 0.0);
    for p in 1..=cap {
        pow *= ratio;
        pts.push(pow * (v - w) + w);
        if p < 3 {
            continue;
        }
        if let Ok(hull) = convex_hull(&pts) {
            if in_convex_polygon(w, &hull, 1e-12) == Containment::Inside {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn dragon(eta: f64) -> SimilitudeIfs {
        SimilitudeIfs::dragon(&DragonParams::new(eta).unwrap())
    }

    #[test]
    fn product_of_2211_is_fourth_power_of_modulus() {
        let ifs = dragon(FRAC_PI_4);
        let prod = ifs.linear_part_product(&[2, 2, 1, 1]).unwrap();
        assert!((prod - ComplexScalar::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn single_symbol_products() {
        let ifs = dragon(FRAC_PI_4);
        let p1 = ifs.linear_part_product(&[1]).unwrap();
        assert!((p1 - ComplexScalar::new(0.5, -0.5)).norm() < 1e-15);
        let p2 = ifs.linear_part_product(&[2]).unwrap();
        assert!((p2 - ComplexScalar::new(-0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn empty_word_is_rejected() {
        let ifs = dragon(0.5);
        assert_eq!(ifs.linear_part_product(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn check_passes_for_2211_at_any_parameter() {
        for eta in [0.1, 0.4, FRAC_PI_4, 0.9, 1.0] {
            let ifs = dragon(eta);
            let coding = Coding::periodic(vec![2, 2, 1, 1]).unwrap();
            let verdict = ifs.extreme_necessary_check(&coding, 1e-9).unwrap();
            assert!(verdict.passes(), "eta = {eta}");
            assert!(verdict.product().re > 0.0);
        }
    }

    #[test]
    fn check_fails_for_period_one_with_alpha() {
        let ifs = dragon(FRAC_PI_4);
        let coding = Coding::periodic(vec![1]).unwrap();
        match ifs.extreme_necessary_check(&coding, 1e-9).unwrap() {
            CodingVerdict::Fails { alpha, .. } => {
                assert!((alpha - 7.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-12);
            }
            CodingVerdict::Passes { .. } => panic!("period [1] must fail"),
        }
    }

    #[test]
    fn check_fails_for_mixed_period_at_any_parameter() {
        for eta in [0.2, FRAC_PI_4, 0.8, 1.02] {
            let ifs = dragon(eta);
            for period in [vec![2u8], vec![2, 1]] {
                let coding = Coding::periodic(period.clone()).unwrap();
                let verdict = ifs.extreme_necessary_check(&coding, 1e-9).unwrap();
                assert!(!verdict.passes(), "eta = {eta}, period = {period:?}");
            }
        }
    }

    #[test]
    fn orbit_follows_the_closed_form() {
        let ifs = dragon(FRAC_PI_4);
        // period [1]: fixed point 0, ratio a; orbit is a^p
        let p = DragonParams::new(FRAC_PI_4).unwrap();
        let orbit = ifs
            .surrounding_orbit(&[1], ComplexScalar::new(1.0, 0.0), 10)
            .unwrap();
        for (i, v) in orbit.iter().enumerate() {
            assert!((v - p.a_pow(i as u32 + 1)).norm() < 1e-14);
        }
        // moduli contract geometrically: |v_p - w| = r^p |v - w|
        let w = ifs.periodic_fixed_point(&[1]).unwrap();
        let r = p.mod_a();
        for (i, v) in orbit.iter().enumerate() {
            assert!(((v - w).norm() - r.powi(i as i32 + 1)).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_real_ratio_keeps_the_orbit_on_one_ray() {
        let ifs = dragon(0.6);
        let w = ifs.periodic_fixed_point(&[2, 2, 1, 1]).unwrap();
        let v = ComplexScalar::new(2.0, 1.0);
        let orbit = ifs.surrounding_orbit(&[2, 2, 1, 1], v, 8).unwrap();
        let dir0 = (orbit[0] - w) / (orbit[0] - w).norm();
        let mut last = (orbit[0] - w).norm();
        for q in &orbit[1..] {
            let d = q - w;
            assert!((d / d.norm() - dir0).norm() < 1e-10, "direction drifts");
            assert!(d.norm() < last, "not monotone toward the fixed point");
            last = d.norm();
        }
    }

    #[test]
    fn degenerate_orbit_is_rejected() {
        let ifs = dragon(FRAC_PI_4);
        let w = ifs.periodic_fixed_point(&[2, 2, 1, 1]).unwrap();
        assert_eq!(
            ifs.surrounding_orbit(&[2, 2, 1, 1], w, 5),
            Err(Error::DegenerateOrbit)
        );
    }

    #[test]
    fn singleton_detection() {
        assert!(dragon(FRAC_PI_4).check_not_singleton());
        let single = SimilitudeIfs::new(vec![AffineMap::new(
            ComplexScalar::new(0.5, 0.0),
            ComplexScalar::new(1.0, 0.0),
        )])
        .unwrap();
        assert!(!single.check_not_singleton());
        let same_fixed = SimilitudeIfs::new(vec![
            AffineMap::new(ComplexScalar::new(0.5, 0.0), ComplexScalar::new(0.0, 0.0)),
            AffineMap::new(ComplexScalar::new(0.0, 0.3), ComplexScalar::new(0.0, 0.0)),
        ])
        .unwrap();
        assert!(!same_fixed.check_not_singleton());
    }

    #[test]
    fn ifs_validation() {
        assert_eq!(SimilitudeIfs::new(vec![]), Err(Error::NoMaps));
        let bad = SimilitudeIfs::new(vec![AffineMap::new(
            ComplexScalar::new(1.0, 0.0),
            ComplexScalar::new(0.0, 0.0),
        )]);
        assert!(matches!(bad, Err(Error::ContractionOutOfRange { .. })));
    }

    #[test]
    fn enclosure_found_for_rotating_ratios() {
        let w = ComplexScalar::new(0.25, 0.1);
        let v = ComplexScalar::new(1.0, 0.5);
        for alpha in [2.0 * std::f64::consts::FRAC_PI_3, 1.0] {
            for r in [0.5, 0.9] {
                let ratio = ComplexScalar::from_polar(r, alpha);
                let p = enclosing_orbit_length(ratio, v, w, 1000);
                assert!(p.is_some(), "alpha = {alpha}, r = {r}");
            }
        }
    }
}
