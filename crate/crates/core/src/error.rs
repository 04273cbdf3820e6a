use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lambda {lambda} exceeds the certified window {window}")]
    WindowExceeded { lambda: String, window: String },
    #[error("spectrum carries no certified window")]
    NoWindow,
    #[error("spectrum has no volume; the Weyl constant needs one")]
    MissingVolume,
    #[error("spectra are not comparable: {0}")]
    IncompatibleWindow(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("basis must be a nonempty square matrix, got {rows} rows with lengths {lengths:?}")]
    NotSquare { rows: usize, lengths: Vec<usize> },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("spin twist entries must be 0 or 1, found {0}")]
    InvalidDelta(i64),
    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("group element {0} fixes a point (det(1 - g) = 0)")]
    FixedPoint(usize),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("invalid spin lift: {0}")]
    InvalidLift(String),
    #[error("Poincare coefficient {sign}{k} is not an integer (residual {residual:e})")]
    NonIntegerCoefficient { k: usize, sign: char, residual: f64 },
    #[error("Poincare coefficient {sign}{k} is negative ({value})")]
    NegativeMultiplicity { k: usize, sign: char, value: i64 },
    #[error("eta value has a nonzero imaginary part ({0:e})")]
    NonRealEta(f64),

    #[error("collapse input: {0}")]
    InvalidCollapseInput(String),
    #[error("projectable collapse needs a base spectrum")]
    MissingBaseSpectrum,
    #[error("need at least 3 samples, got {0}")]
    InsufficientSamples(usize),
    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("linking parity of components {0} and {1} is not symmetric")]
    ParitySymmetry(usize, usize),
    #[error("unsupported dimension {0}; only 2 and 3 are tabulated")]
    UnsupportedDimension(u32),
    #[error("unknown Bieberbach group {0:?}")]
    UnknownGroup(String),
}
