use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eta = {eta} is outside the open interval ({min}, {max})")]
    EtaOutOfRange { eta: f64, min: f64, max: f64 },

    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    #[error("symbol {symbol} does not index any of the {map_count} maps")]
    InvalidSymbol { symbol: u8, map_count: usize },

    #[error("word must be nonempty")]
    EmptyWord,

    #[error("coding period must be nonempty")]
    EmptyPeriod,

    #[error("argument of zero is undefined")]
    ZeroArgument,

    #[error("angle vertex coincides with an endpoint")]
    CoincidentPoints,

    #[error("map {index} has contraction modulus {modulus}, not in (0, 1)")]
    ContractionOutOfRange { index: usize, modulus: f64 },

    #[error("an iterated function system needs at least one map")]
    NoMaps,

    #[error("orbit seed coincides with the fixed point of the periodic word")]
    DegenerateOrbit,

    #[error("partition roots are defined for k >= 4, got k = {k}")]
    KTooSmall { k: u32 },

    #[error("tolerance must be positive, got {tol}")]
    InvalidTolerance { tol: f64 },

    #[error("sign bracket violated for k = {k}: value {value} at eta = {eta}")]
    BracketSign { k: u32, eta: f64, value: f64 },

    #[error("convex hull needs at least 3 distinct points, got {distinct}")]
    TooFewHullPoints { distinct: usize },

    #[error("all points are collinear; the hull is degenerate")]
    CollinearPoints,

    #[error("triangle is degenerate")]
    DegenerateTriangle,

    #[error("polygon needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },

    #[error("consecutive polygon vertices coincide at index {index}")]
    DuplicateVertex { index: usize },

    #[error("polygon has zero signed area")]
    ZeroArea,

    #[error("eta = {eta} lies in the region with no closed-form vertex prediction")]
    OpenVertexRegion { eta: f64 },

    #[error("eta = {eta} is within tolerance of the partition root for k = {k} ({root}); the cell is ambiguous")]
    AmbiguousBoundary { eta: f64, k: u32, root: f64 },

    #[error("predicted vertex cycle at eta = {eta} failed convexity/orientation validation")]
    InvalidPredictedHull { eta: f64 },

    #[error("sampling depth {depth} outside 1..=26")]
    DepthOutOfRange { depth: u32 },
}
