//! The eta-parameterized dragon IFS: derived scalars, closed-form point
//! families, and coding-to-point evaluation.
//!
//! For `eta` in the open interval `(0, pi/3)` the two maps are
//! `f1(z) = a z` and `f2(z) = 1 - conj(a) z` with
//! `a = exp(-i eta) / (2 cos eta)`. The derived scalars satisfy
//! `a + conj(a) = 1`, `2 |a| cos eta = 1`, `1/2 < |a| < 1`, and
//! `c = 1 / (1 - |a|^4)`.

use std::f64::consts::FRAC_PI_3;
use std::fmt;

use crate::error::Error;
use crate::{ComplexScalar, Result};

/// Upper end of the admissible parameter interval.
pub const ETA_SUP: f64 = FRAC_PI_3;

/// All eta-derived scalars of one dragon curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DragonParams {
    eta: f64,
    a: ComplexScalar,
    mod_a: f64,
    c: f64,
}

impl DragonParams {
    /// Builds the parameter bundle for `eta` in the open interval `(0, pi/3)`.
    ///
    /// Both boundary values are rejected: at 0 the maps stop contracting
    /// toward a curve and at pi/3 the contraction modulus reaches 1.
    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::NonFinite { what: "eta" });
        }
        if !(eta > 0.0 && eta < ETA_SUP) {
            return Err(Error::EtaOutOfRange {
                eta,
                min: 0.0,
                max: ETA_SUP,
            });
        }
        let mod_a = 1.0 / (2.0 * eta.cos());
        let a = ComplexScalar::from_polar(mod_a, -eta);
        let c = 1.0 / (1.0 - mod_a.powi(4));
        Ok(Self { eta, a, mod_a, c })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The common linear-part modulus source `a`.
    pub fn a(&self) -> ComplexScalar {
        self.a
    }

    /// `|a| = 1 / (2 cos eta)`, strictly between 1/2 and 1.
    pub fn mod_a(&self) -> f64 {
        self.mod_a
    }

    /// `c = 1 / (1 - |a|^4)`.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// First map `f1(z) = a z`.
    pub fn f1(&self, z: ComplexScalar) -> ComplexScalar {
        self.a * z
    }

    /// Second map `f2(z) = 1 - conj(a) z`.
    pub fn f2(&self, z: ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(1.0, 0.0) - self.a.conj() * z
    }

    /// `a^k` by repeated multiplication, so that closed-form and recursive
    /// evaluations face identical rounding.
    pub fn a_pow(&self, k: u32) -> ComplexScalar {
        let mut acc = ComplexScalar::new(1.0, 0.0);
        for _ in 0..k {
            acc *= self.a;
        }
        acc
    }

    /// `z_k = c a^(k+1)`, the spiral family accumulating at the origin.
    pub fn point_z(&self, k: u32) -> ComplexScalar {
        self.c * self.a_pow(k + 1)
    }

    /// `w_k = 1 - c |a|^2 a^k`, the image family accumulating at 1.
    ///
    /// `w_0` is real and may take either sign; it is never itself a hull
    /// vertex but participates in several containment properties.
    pub fn point_w(&self, k: u32) -> ComplexScalar {
        ComplexScalar::new(1.0, 0.0) - self.c * self.mod_a.powi(2) * self.a_pow(k)
    }

    /// `b_k = a + c |a|^4 a^k`; only `b_0` can be a hull vertex.
    pub fn point_b(&self, k: u32) -> ComplexScalar {
        self.a + self.c * self.mod_a.powi(4) * self.a_pow(k)
    }

    /// Point for a structured label.
    pub fn point(&self, label: PointLabel) -> ComplexScalar {
        match label.family {
            PointFamily::B => self.point_b(label.index),
            PointFamily::Z => self.point_z(label.index),
            PointFamily::W => self.point_w(label.index),
        }
    }

    /// The vertex candidate set for cell parameter `k >= 1`: exactly the
    /// `2k + 2` labeled points `b_0, z_0, ..., z_k, w_1, ..., w_k`, in that
    /// order.
    pub fn candidate_set(&self, k: u32) -> Vec<LabeledPoint> {
        assert!(k >= 1, "candidate set is defined for k >= 1");
        let mut out = Vec::with_capacity(2 * k as usize + 2);
        out.push(self.labeled(PointFamily::B, 0));
        for j in 0..=k {
            out.push(self.labeled(PointFamily::Z, j));
        }
        for j in 1..=k {
            out.push(self.labeled(PointFamily::W, j));
        }
        out
    }

    fn labeled(&self, family: PointFamily, index: u32) -> LabeledPoint {
        let label = PointLabel { family, index };
        LabeledPoint {
            label,
            point: self.point(label),
        }
    }

    /// Applies the composition named by `word` to `z`; the last symbol acts
    /// first, so `word = [2, 2, 1, 1]` computes `f2(f2(f1(f1(z))))`.
    pub fn apply_word(&self, word: &[u8], z: ComplexScalar) -> Result<ComplexScalar> {
        let mut acc = z;
        for &s in word.iter().rev() {
            acc = match s {
                1 => self.f1(acc),
                2 => self.f2(acc),
                _ => {
                    return Err(Error::InvalidSymbol {
                        symbol: s,
                        map_count: 2,
                    })
                }
            };
        }
        Ok(acc)
    }

    /// Evaluates an eventually periodic coding to its point of the attractor.
    ///
    /// The periodic part composes to an affine contraction `z -> A z + B`
    /// with `|A| < 1`; its fixed point `B / (1 - A)` is computed analytically
    /// and the prefix is then applied on the outside.
    pub fn coded_point(&self, coding: &Coding) -> Result<ComplexScalar> {
        let mut lin = ComplexScalar::new(1.0, 0.0);
        let mut off = ComplexScalar::new(0.0, 0.0);
        for &s in coding.period() {
            let (ms, mo) = match s {
                1 => (self.a, ComplexScalar::new(0.0, 0.0)),
                2 => (-self.a.conj(), ComplexScalar::new(1.0, 0.0)),
                _ => {
                    return Err(Error::InvalidSymbol {
                        symbol: s,
                        map_count: 2,
                    })
                }
            };
            off = lin * mo + off;
            lin *= ms;
        }
        let fixed = off / (ComplexScalar::new(1.0, 0.0) - lin);
        self.apply_word(coding.prefix(), fixed)
    }
}

/// The three candidate-point families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointFamily {
    B,
    Z,
    W,
}

impl PointFamily {
    fn letter(self) -> char {
        match self {
            PointFamily::B => 'b',
            PointFamily::Z => 'z',
            PointFamily::W => 'w',
        }
    }
}

/// Structured tag of a candidate point (family plus index), ordered so that
/// canonical report order is `b`, then `z`, then `w`, by index within each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointLabel {
    pub family: PointFamily,
    pub index: u32,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// A candidate point together with its label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPoint {
    pub label: PointLabel,
    pub point: ComplexScalar,
}

/// An eventually periodic symbol word `prefix (period)^infinity` over a
/// 1-based alphabet. The period must be nonempty; symbol range is checked
/// against the map count at the point of use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coding {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl Coding {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { prefix, period })
    }

    /// Purely periodic coding with an empty prefix.
    pub fn periodic(period: Vec<u8>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.prefix {
            write!(f, "{s}")?;
        }
        write!(f, "(")?;
        for s in &self.period {
            write!(f, "{s}")?;
        }
        write!(f, ")*")
    }
}
