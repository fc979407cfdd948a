use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("circulant graphs need at least 3 vertices, got n = {0}")]
    TooFewVertices(usize),

    #[error("generator list is empty")]
    NoGenerators,

    #[error("generator {generator} is outside [1, {max}] for n = {n}")]
    GeneratorOutOfRange {
        n: usize,
        generator: usize,
        max: usize,
    },

    #[error("generators must be distinct, {0} appears twice")]
    DuplicateGenerator(usize),

    #[error("C({n};{generators}) is disconnected")]
    Disconnected { n: usize, generators: String },

    #[error("expected {expected} broadcast values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} has value {value} above its eccentricity {eccentricity}")]
    ValueAboveEccentricity {
        vertex: usize,
        value: u32,
        eccentricity: u32,
    },

    #[error("broadcast is not independent: v{u} and v{v} are at distance {distance}")]
    NotIndependent { u: usize, v: usize, distance: u32 },

    #[error("vertex set is not independent: v{0} and v{1} are adjacent")]
    NotIndependentSet(usize, usize),

    #[error("vertex index {index} is out of range for n = {n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("v{0} is not a broadcast vertex")]
    NotBroadcastVertex(usize),

    #[error("operation needs a graph of the form C(n;1,a), got C({n};{generators})")]
    NotTwoGenerator { n: usize, generators: String },

    #[error("broadcast is not {0}-bounded")]
    NotBounded(u32),

    #[error("value {value} at v{vertex}: no 1-run anchor, every 1-vertex on its orbit alternates")]
    NoAnchor { vertex: usize, value: u32 },

    #[error("instance n = {n} exceeds the exact limit {limit} for {what}")]
    ExceedsExactLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("no construction known for C({n};1,{a})")]
    NoConstruction { n: usize, a: usize },

    #[error("construction for C({n};1,{a}) is defective: {reason}")]
    ConstructionDefect { n: usize, a: usize, reason: String },

    #[error("reduction to 2-bounded broadcasts does not apply to C({n};1,{a})")]
    ReductionNotApplicable { n: usize, a: usize },

    #[error("reduction of v{vertex} (value {value}) on C({n};1,{a}) failed: {reason}")]
    ReductionDefect {
        n: usize,
        a: usize,
        vertex: usize,
        value: u32,
        reason: String,
    },

    #[error("witness format: {0}")]
    Witness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn gens_label(generators: &[usize]) -> String {
    generators
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
