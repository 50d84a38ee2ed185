use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("element not invertible")]
    NotInvertible,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("point set must be nonempty")]
    EmptyLabels,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("exp requires zero constant term")]
    ExpConstantTerm,
    #[error("log requires the unit as constant term")]
    LogConstantTerm,
    #[error("Berezinian undefined by available methods: {0}")]
    BerezinianUndefined(String),
    #[error("character is not an integer multiple of the unit")]
    NonIntegralCharacter,
    #[error("series not polynomial of degree {0} at this order")]
    NotPolynomial(usize),
    #[error("Frobenius map needs at least one argument")]
    EmptyArguments,
    #[error("symmetry check on {0} arguments exceeds the guard of {1}; pass an override to force it")]
    SymmetryGuard(usize, usize),
    #[error("not a p|q rational series (p={p}, q={q})")]
    NotRationalSeries { p: usize, q: usize },
    #[error("rational form inconsistent with tail at coefficient {index}")]
    TailInconsistent { index: usize },
    #[error("rational reconstruction needs a split coefficient algebra")]
    NotSplit,
    #[error("bound {bound} too small: {reason}")]
    BoundTooSmall { bound: usize, reason: String },
    #[error("map is not a {0}-homomorphism")]
    NotNHomomorphism(usize),
    #[error("map is not an algebra homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("tensor lies outside the symmetric power")]
    OutsideEmbedding,
    #[error("enumeration needs budget {required}, cap is {cap}")]
    BudgetExceeded { required: u128, cap: u128 },
    #[error("{0}")]
    Input(String),
}
