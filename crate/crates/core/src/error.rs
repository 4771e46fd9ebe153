use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{p} is not prime: {factor} divides it")]
    Composite { p: u64, factor: u64 },
    #[error("modulus {0} outside supported range 3..=2^22")]
    ModulusRange(u64),
    #[error("signals live over different fields (p = {0} vs p = {1})")]
    FieldMismatch(u64, u64),
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
