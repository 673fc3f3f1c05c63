use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is numerically singular (|det| = {0:e})")]
    SingularMatrix(f64),
    #[error("operation requires a non-identity map")]
    IdentityInput,
    #[error("operation requires a loxodromic map, got {0}")]
    NotLoxodromic(&'static str),
    #[error("operation requires a parabolic map, got {0}")]
    NotParabolic(&'static str),
    #[error("fixed points coincide")]
    CoincidentFixedPoints,
    #[error("translation length must be positive (got {0})")]
    NonPositiveLength(f64),
    #[error("triple contains a repeated point")]
    RepeatedTriplePoint,
    #[error("circle is degenerate (discriminant {0:e})")]
    DegenerateCircle(f64),
    #[error("seed coincides with a fixed point")]
    SeedAtFixedPoint,
    #[error("strip of half-width {halfwidth} does not fit inside the ambient disk (margin {margin:e})")]
    StripMargin { halfwidth: f64, margin: f64 },
    #[error("word depth {0} exceeds the enumeration budget (max {1})")]
    DepthBudget(usize, usize),
    #[error("generator names must be unique and non-empty: {0:?}")]
    BadGeneratorName(String),
    #[error("generator {0:?} is the identity")]
    IdentityGenerator(String),
    #[error("word refers to generator index {0} out of range")]
    WordIndexOutOfRange(usize),
    #[error("domain pairing is malformed: {0}")]
    MalformedPairing(String),
    #[error("could not sample {wanted} interior points (found {found})")]
    DomainSampling { wanted: usize, found: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invariant data violated: {0}")]
    DataInvariant(String),
    #[error("disk chain invariant failed: {0}")]
    ChainInvariant(String),
    #[error("base point lies inside a deleted disk (margin {0:e})")]
    BasePointInDeletedDisk(f64),
    #[error("no admissible translation length <= {0}")]
    NoAdmissibleLength(f64),
    #[error("the ambient disk is not invariant under the map")]
    AmbientNotInvariant,
    #[error("collar target {target} unreachable; best estimate {best} after {tries} shrink steps")]
    CollarTargetUnreachable { target: f64, best: f64, tries: usize },
    #[error("at least two children per region are required (got {0})")]
    TooFewChildren(usize),
    #[error("cannot pack {children} disjoint sub-disks in the region")]
    PackingFailure { children: usize },
    #[error("nesting tree is malformed: {0}")]
    MalformedTree(String),
    #[error("word evaluates to a map that does not fix the cusp point (distance {0:e})")]
    CuspNotFixed(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
