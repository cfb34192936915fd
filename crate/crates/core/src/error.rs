use thiserror::Error;

/// Errors raised by the workbench. Verification failures are not errors: they
/// are reported as failed records by the code that performs the check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not in the poset of normal subgroups with elementary abelian quotient")]
    NotInPosetC,
    #[error("subgroups are not transverse")]
    NotTransverse,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Budget(msg.into()))
}
