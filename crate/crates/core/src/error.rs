use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid ring spec `{0}` (expected Z, Z<n> or GF(<q>))")]
    InvalidRingSpec(String),
    #[error("Z{modulus} is decomposable: {idempotent} is an idempotent other than 0 and 1")]
    DecomposableRing { modulus: u64, idempotent: u64 },
    #[error("{value} is not a canonical element of {ring}")]
    ForeignElement { value: i64, ring: String },
    #[error("{value} is not a unit of {ring}")]
    NotAUnit { value: i64, ring: String },
    #[error("{0} has no finite element set; use a finite ring")]
    NotEnumerable(String),
    #[error("unsupported ring {ring}: {reason}")]
    UnsupportedRing { ring: String, reason: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{0}` and `{1}` are not comparable (need {0} <= {1})")]
    NotComparable(String, String),
    #[error("{what} has size {size}, above the limit {limit}; raise the limit explicitly or shrink the input")]
    SizeGuard { what: &'static str, size: u64, limit: u64 },
    #[error("operands do not match: {0}")]
    Mismatch(&'static str),
    #[error("not a unit: diagonal coefficient at `{element}` is {value}")]
    NonUnitDiagonal { element: String, value: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid Schur coefficients: {0}")]
    InvalidSchur(String),
    #[error("not an order automorphism: {0}")]
    NotOrderAutomorphism(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("family is not disjoint: `{element}` lies in the sets of `{first}` and `{second}`")]
    OverlappingFamily { element: String, first: String, second: String },
    #[error("not an algebra endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("decomposition failed at step {step}: {detail}")]
    Decomposition { step: u8, detail: String },
    #[error("verification discrepancy: {0}")]
    Discrepancy(String),
}
