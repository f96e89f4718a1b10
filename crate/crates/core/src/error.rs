use crate::graph::GraphFamily;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{family} graph needs at least {min} vertices, got {n}")]
    TooFewVertices {
        family: GraphFamily,
        n: usize,
        min: usize,
    },

    #[error("custom graphs are built from an explicit edge list, not a family constructor")]
    CustomNeedsEdgeList,

    #[error("edge ({i}, {j}) is out of range for {n} vertices")]
    EdgeOutOfRange { i: usize, j: usize, n: usize },

    #[error("self-loop at vertex {v} is not allowed")]
    SelfLoop { v: usize },

    #[error("graph file, line {line}: {reason}")]
    GraphParse { line: usize, reason: String },

    #[error("coupling strength must be positive, got {theta}")]
    ThetaNotPositive { theta: f64 },

    #[error("Curie-Weiss coupling is only defined on the complete graph")]
    CurieWeissNeedsComplete,

    #[error("spin vector has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {index} is {value}, spins must be +1 or -1")]
    NotASpin { index: usize, value: i8 },

    #[error("n = {n} exceeds the enumeration limit of {max}")]
    TooManyStates { n: usize, max: usize },

    #[error("flip probability must satisfy 0 < p < 1/2, got {p}")]
    NoiseOutOfRange { p: f64 },

    #[error("majority vote needs an odd number of entries, got {n}")]
    EvenLength { n: usize },

    #[error("theta = {theta} is not subcritical (requires 0 < theta < 1/2)")]
    NotSubcritical { theta: f64 },

    #[error("theta = {theta} is not supercritical (requires theta > 1/2)")]
    NotSupercritical { theta: f64 },

    #[error("confidence level must lie strictly between 0 and 1, got {confidence}")]
    BadConfidence { confidence: f64 },

    #[error("sigma must be positive, got {sigma}")]
    SigmaNotPositive { sigma: f64 },

    #[error("threshold must be positive, got {b}")]
    ThresholdNotPositive { b: f64 },

    #[error("at least one trial is required")]
    NoTrials,

    #[error("no samples supplied")]
    NoSamples,

    #[error("sweep value {value} is not a valid {axis} setting: {reason}")]
    BadSweepValue {
        axis: &'static str,
        value: f64,
        reason: String,
    },

    #[error("quadrature tail residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    QuadratureResidual { residual: f64, tolerance: f64 },

    #[error("could not read graph file: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
