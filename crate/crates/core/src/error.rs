use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image {value} at point {point} is outside [0, {degree})")]
    ImageOutOfRange {
        point: usize,
        value: usize,
        degree: usize,
    },

    #[error("point {point} is outside [0, {degree})")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("point {point} of the subset is sent to {image}, outside the subset")]
    NotInvariant { point: usize, image: usize },

    #[error("transformation is not idempotent")]
    NotIdempotent,

    #[error("generating set is empty")]
    EmptyGenerators,

    #[error("{what} with n = {n} exceeds the safety cap {cap} (use force to override)")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("set is not closed under composition")]
    NotClosed,

    #[error("semigroup is not commutative")]
    NotCommutative,

    #[error("semigroup is commutative, so its commuting graph has an empty vertex set")]
    Commutative,

    #[error("semigroup has {0} idempotents, expected exactly one")]
    NotUniqueIdempotent(usize),

    #[error("input is a group; nothing to nullify")]
    IdentityIdempotent,

    #[error("semigroup is contained in the symmetric group")]
    ContainedInSym,

    #[error("no nonempty proper subset has an invariant complement")]
    EmptyInvariantClass,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
