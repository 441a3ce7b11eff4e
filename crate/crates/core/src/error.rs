use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} length: expected {expected} bytes, got {actual}")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("secret key holds a coefficient outside the sampler range")]
    SecretCoefficient,
    #[error("unknown scheme `{0}` (expected florete, espada or sable)")]
    UnknownScheme(String),
    #[error("unknown level `{0}` (expected low, medium or high)")]
    UnknownLevel(String),
    #[error("entropy source unavailable: {0}")]
    Entropy(String),
}

impl Error {
    pub(crate) fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<(), Error> {
        if expected == actual {
            Ok(())
        } else {
            Err(Error::Length {
                what,
                expected,
                actual,
            })
        }
    }
}
