use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure `{structure}` lacks the {capability} capability")]
    CapabilityMissing {
        structure: String,
        capability: &'static str,
    },
    #[error("division by zero")]
    DivisionByZero,

    #[error("events belong to different sample spaces")]
    SpaceMismatch,
    #[error("unknown outcome label `{0}`")]
    UnknownOutcome(String),
    #[error("outcome index {index} out of range for a space of {size} outcomes")]
    OutcomeOutOfRange { index: usize, size: usize },
    #[error("invalid sample space: {0}")]
    InvalidSpace(String),
    #[error("atoms do not partition the sample space: {0}")]
    InvalidPartition(String),
    #[error("event {0} is not measurable")]
    NotMeasurable(String),

    #[error("expected {expected} atom weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weight {value} of atom {atom} is below zero (ACMA1/ACPA1)")]
    NegativeWeight { atom: String, value: String },
    #[error("total weight {total} is not one (ACPA2)")]
    NotNormalized { total: String },

    #[error("expected {expected} values (one per atom), got {got}")]
    ValueCount { expected: usize, got: usize },

    #[error("events have an empty intersection")]
    EmptyIntersection,
    #[error("conditioning event has zero probability")]
    ZeroCondition,
    #[error("hypotheses do not form a partition: {0}")]
    NotAPartition(String),
    #[error("conditional for partition cell {cell} cannot be resolved: {reason}")]
    UnresolvableTerm { cell: usize, reason: String },

    #[error("simple function terms {0} and {1} overlap")]
    OverlappingTerms(usize, usize),
    #[error("function value {value} at atom {atom} is below zero")]
    NegativeValue { atom: String, value: String },
}

impl Error {
    /// Name of the module whose contract the error belongs to.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            CapabilityMissing { .. } | DivisionByZero => "algebra",
            SpaceMismatch
            | UnknownOutcome(_)
            | OutcomeOutOfRange { .. }
            | InvalidSpace(_)
            | InvalidPartition(_)
            | NotMeasurable(_) => "space",
            WeightCount { .. } | NegativeWeight { .. } | NotNormalized { .. } => "measure",
            EmptyIntersection | ZeroCondition | NotAPartition(_) | UnresolvableTerm { .. } => {
                "inference"
            }
            ValueCount { .. } => "randvar",
            OverlappingTerms(..) | NegativeValue { .. } => "integral",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
