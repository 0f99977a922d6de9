use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational from {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A closed-form expression divides by a factor that vanishes at the
    /// requested point. `factor` is the symbolic name, e.g. `u_1 - u_2`.
    #[error("pole: {factor} = 0 in {context}")]
    Pole { factor: String, context: &'static str },

    /// A normalization or boundary pairing vanishes.
    #[error("degenerate input: {factor} = 0 ({context})")]
    Degenerate { factor: String, context: &'static str },

    #[error("unsupported range: {0}")]
    Unsupported(String),

    #[error("site index {site} out of range for {num_sites} sites")]
    SiteIndex { site: usize, num_sites: usize },
}

impl Error {
    /// True for poles, degeneracies and raw division by zero: the parameter
    /// point is singular for the requested formula, as opposed to a usage error.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::Degenerate { .. } | Error::DivisionByZero
        )
    }

    pub(crate) fn pole(factor: impl Into<String>, context: &'static str) -> Self {
        Error::Pole {
            factor: factor.into(),
            context,
        }
    }

    pub(crate) fn degenerate(factor: impl Into<String>, context: &'static str) -> Self {
        Error::Degenerate {
            factor: factor.into(),
            context,
        }
    }
}
