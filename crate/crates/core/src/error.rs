use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element cap exceeded: closure has more than {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("enumeration bound exceeded: {what} (order {order} > bound {bound})")]
    EnumerationBoundExceeded {
        what: String,
        order: usize,
        bound: usize,
    },

    #[error("element does not belong to the group: {0}")]
    NotAnElement(String),

    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not a {p}-group (order {order})")]
    NotPGroup { p: u64, order: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("chief-series anchors are not normal")]
    AnchorsNotNormal,

    #[error("chief-series anchors are not totally ordered by inclusion")]
    AnchorsNotChain,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("supplement witness fails: {0}")]
    WitnessFails(String),

    #[error("subgroup is not fully normalized in the fusion system")]
    NotFullyNormalized,

    #[error("subgroup is not strongly closed in the fusion system")]
    NotStronglyClosed,

    #[error("subgroup is not contained in the Sylow subgroup")]
    NotInSylow,

    #[error("malformed fixture: {0}")]
    MalformedFixture(String),

    #[error("malformed manifest: {0}")]
    MalformedManifest(String),

    #[error("unknown builder or source: {0}")]
    UnknownSource(String),

    #[error("parameter outside the admitted range: {0}")]
    ParameterOutOfRange(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
