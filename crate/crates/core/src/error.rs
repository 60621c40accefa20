use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { n: usize, k: usize },
    #[error("malformed root notation `{0}`")]
    Malformed(String),
    #[error("`{notation}` denotes {vector}, which is not a root of {system}")]
    NotARoot { notation: String, vector: String, system: String },
    #[error("no common entry size for roots with {0} nonzero entries")]
    AmbiguousScale(usize),
    #[error("root has entries of unequal size and no slash notation")]
    NoNotation,
    #[error("the given roots are not a base of the system")]
    NotABase,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("zero root")]
    ZeroRoot,
    #[error("ambient dimensions differ")]
    Ambient,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("class {class} is not available for type {ty}")]
    InvalidClass { ty: String, class: String },
    #[error("the diagram has a cycle")]
    NotATree,
    #[error("ordering does not linearize the orientation")]
    BadOrdering,
    #[error("vertex {0} is neither a source nor a sink")]
    NotSourceOrSink(usize),
    #[error("window {0} is too small (need at least 1)")]
    WindowInsufficient(usize),
    #[error("not a reflection of this group")]
    NotAReflection,
    #[error("construction check failed: {0}")]
    Check(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("empty generator set")]
    NoGenerators,
    #[error("position {0} out of range")]
    Position(usize),
    #[error("conjugate is not among the generators")]
    NotClosed,
    #[error("orbit exceeded the budget of {0} states")]
    Budget(usize),
    #[error("bowtie check failed: {0}")]
    Certificate(String),
    #[error("criterion not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}
