use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: malformed input (`Parse`, `InvalidMap`,
/// ...) and detected mathematical inconsistency (`RelatorViolated`,
/// `OracleInconsistency`, ...). The CLI maps them onto distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid PL map: {0}")]
    InvalidMap(String),

    #[error("empty window [{left}, {right}]")]
    EmptyWindow { left: String, right: String },

    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),

    #[error("relator {relator} does not evaluate to the identity")]
    RelatorViolated { relator: String },

    #[error("representations are over different marked groups")]
    GroupMismatch,

    #[error("trivial preorder: every generator fixes the basepoint")]
    TrivialPreorder,

    #[error("preorder oracle inconsistency: {0}")]
    OracleInconsistency(String),

    #[error("comparison of {0} and {1} is not recorded in the transcript")]
    MissingComparison(String, String),

    #[error("no minimal model at this truncation: the supplied subgroup contains the whole prefix")]
    NoMinimalModel,

    #[error("supplied subgroup is not convex: {0}")]
    NotConvex(String),

    #[error("insufficient data to realize generator {generator}: {pairs} tabled pair(s)")]
    InsufficientData { generator: String, pairs: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("measure is not invariant under generator {generator} on ({left}, {right})")]
    NotInvariant {
        generator: String,
        left: String,
        right: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("point lies on the excluded orbit: {0}")]
    ExcludedOrbit(String),
}

impl Error {
    /// True for errors that certify a mathematical inconsistency rather than
    /// bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::RelatorViolated { .. }
                | Error::OracleInconsistency(_)
                | Error::NotConvex(_)
                | Error::NotInvariant { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
