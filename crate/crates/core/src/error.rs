use thiserror::Error;

use crate::classify::InfiniteWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("compositions have unequal weights {0:?}")]
    UnequalWeights(Vec<u64>),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("empty tuple of compositions")]
    EmptyTuple,

    #[error("dimension vector has weight zero")]
    ZeroWeight,

    #[error("ambient dimension mismatch ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("objects live over different fields")]
    FieldMismatch,

    #[error("{0} is not a supported prime modulus (primes up to 251)")]
    InvalidModulus(u32),

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("dimension vector is of infinite type")]
    InfiniteType(Box<InfiniteWitness>),

    #[error("estimated cost {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("weight {weight} exceeds the cap {cap}")]
    CapExceeded { weight: u64, cap: u64 },

    #[error("not in the indecomposable catalog: {0}")]
    NotInCatalog(String),

    #[error("standard form has overlap set of size {0}; at most 2 is allowed")]
    OverlapTooLarge(usize),

    #[error("criterion not applicable: {0}")]
    Inapplicable(String),

    #[error("invalid flag object: {0}")]
    InvalidObject(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Domain refusals (as opposed to malformed input or internal bugs).
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::InfiniteType(_) | Error::BudgetExceeded { .. } | Error::CapExceeded { .. }
        )
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnequalWeights(_) => "unequal_weights",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::EmptyTuple => "empty_tuple",
            Error::ZeroWeight => "zero_weight",
            Error::AmbientMismatch(..) => "ambient_mismatch",
            Error::FieldMismatch => "field_mismatch",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::Overflow(_) => "overflow",
            Error::InfiniteType(_) => "infinite_type",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NotInCatalog(_) => "not_in_catalog",
            Error::OverlapTooLarge(_) => "overlap_too_large",
            Error::Inapplicable(_) => "inapplicable",
            Error::InvalidObject(_) => "invalid_object",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::Invariant(_) => "invariant_violation",
            Error::Parse(_) => "parse",
        }
    }
}
