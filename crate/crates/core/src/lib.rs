//! Convex hulls of the one-parameter dragon curve family.
//!
//! A dragon curve is the attractor of the planar iterated function system
//! `f1(z) = a z`, `f2(z) = 1 - conj(a) z` with `a = exp(-i eta) / (2 cos eta)`
//! and `eta` in `(0, pi/3)`. Every such attractor has a polygonal convex
//! hull, and away from the upper end of the parameter range the hull's
//! vertices have closed forms. This crate implements:
//!
//! - [`dragon`]: the parameterized IFS, its closed-form candidate points,
//!   and the evaluation of eventually periodic symbol codings;
//! - [`codings`]: the necessary positivity condition satisfied by codings
//!   of extreme points of any complex-similitude attractor, plus the
//!   surrounding-orbit construction that witnesses failures;
//! - [`hull`]: the trigonometric sign functions governing which candidates
//!   are vertices, the partition roots `eta_k` located by bisection, and
//!   the predicted hull polygon;
//! - [`geometry`]: planar primitives (directed angles, orientation
//!   predicates, convex hulls, containment tests);
//! - [`oracle`]: an independent ground truth built from exhaustive
//!   attractor sampling, with executable versions of the containment
//!   properties the theory relies on.

pub mod codings;
pub mod dragon;
pub mod geometry;
pub mod hull;
pub mod oracle;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// The ambient plane. Public operations reject non-finite components.
pub type ComplexScalar = num_complex::Complex64;

/// Argument of `z` taken in `[0, 2pi)`.
///
/// The argument of zero is a domain error rather than an arbitrary value.
pub fn arg_2pi(z: ComplexScalar) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "argument input" });
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    Ok(normalize_angle(z.im.atan2(z.re)))
}

/// Fold an angle in radians into `[0, 2pi)`.
pub(crate) fn normalize_angle(mut x: f64) -> f64 {
    use std::f64::consts::TAU;
    if x < 0.0 {
        x += TAU;
    }
    if x >= TAU {
        x -= TAU;
    }
    // a tiny negative input can land exactly on TAU after the first shift
    if x >= TAU || x < 0.0 {
        x = 0.0;
    }
    x
}
