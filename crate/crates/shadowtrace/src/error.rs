use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Each variant has a stable machine-readable code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring elements or matrices live over different groups: {0}")]
    BaseMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("rings do not match: {0}")]
    ObjectMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("shadow not supported: {0}")]
    UnsupportedShadow(String),
    #[error("not dualizable: {0}")]
    NotDualizable(String),
    #[error("no free right basis: {0}")]
    NoFreeBasis(String),
    #[error("square does not commute: {0}")]
    SquareNotCommuting(String),
    #[error("ringoid has no rank one object")]
    MissingBaseObject,
    #[error("boundary does not square to zero: {0}")]
    BoundaryNotZero(String),
    #[error("no lift found: {0}")]
    LiftNotFound(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::BaseMismatch(_) => "BaseMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::NotAHomomorphism(_) => "NotAHomomorphism",
            Error::UnsupportedGroup(_) => "UnsupportedGroup",
            Error::UnknownElement(_) => "UnknownElement",
            Error::InvalidAction(_) => "InvalidAction",
            Error::ObjectMismatch(_) => "ObjectMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotEquivariant(_) => "NotEquivariant",
            Error::UnsupportedShadow(_) => "UnsupportedShadow",
            Error::NotDualizable(_) => "NotDualizable",
            Error::NoFreeBasis(_) => "NoFreeBasis",
            Error::SquareNotCommuting(_) => "SquareNotCommuting",
            Error::MissingBaseObject => "MissingBaseObject",
            Error::BoundaryNotZero(_) => "BoundaryNotZero",
            Error::LiftNotFound(_) => "LiftNotFound",
            Error::InvalidChainMap(_) => "InvalidChainMap",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::NotInvertible(_) => "NotInvertible",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
