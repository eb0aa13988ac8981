use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: expected n={expected_n}, r_max={expected_r}; got n={got_n}, r_max={got_r}")]
    GridMismatch {
        expected_n: usize,
        expected_r: f64,
        got_n: usize,
        got_r: f64,
    },

    #[error("non-finite value at node {index} (r = {r})")]
    NonFinite { index: usize, r: f64 },

    #[error("invalid norm parameter: {0}")]
    InvalidNorm(String),

    #[error("frequency grid does not cover rho = 1 (rho range [{lo}, {hi}])")]
    ShellNotCovered { lo: f64, hi: f64 },

    #[error("coupling does not vanish on the shell around rho = {center}: min |G^| = {min_abs_on_shell:e} exceeds {tol:e}")]
    ShellNotVanishing {
        center: f64,
        min_abs_on_shell: f64,
        tol: f64,
    },

    #[error("fixed-point iteration does not contract (|d omega| = {last_delta:e} after {iterations} iterations)")]
    NoContraction { iterations: usize, last_delta: f64 },

    #[error("integration aborted at t = {t}: {reason} (last good checkpoint t = {last_good})")]
    Aborted {
        t: f64,
        last_good: f64,
        reason: String,
    },

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
