use thiserror::Error;

use crate::picard_lattice::{LineLabel, SurfaceClass};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse curve type {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("line {0} compared with itself")]
    SameLine(LineLabel),

    #[error("Cremona indices must be distinct and in 1..=6, got ({0}, {1}, {2})")]
    CremonaIndices(usize, usize, usize),

    #[error("{class} has degree {degree}, a positive degree is required")]
    NonPositiveDegree { class: SurfaceClass, degree: i64 },

    #[error("standardization of {0} did not finish within {1} moves")]
    IterationCap(SurfaceClass, usize),

    #[error("classes live on different Hirzebruch surfaces F_{0} and F_{1}")]
    HirzebruchMismatch(u32, u32),

    #[error("the contracted surface needs n >= 1")]
    ZeroHirzebruchIndex,

    #[error("normal bundle formula needs an m-secant line with m >= 3, got m = {0}")]
    SecancyTooSmall(i64),

    #[error("flipped normal bundle is undetermined when 2*alpha - beta = {0} >= 2")]
    FlipUndetermined(i64),

    #[error("lines {0} and {1} meet, only disjoint lines can be contracted")]
    MeetingLines(LineLabel, LineLabel),

    #[error("lattice search failed: {0}")]
    LatticeSearch(String),

    #[error("{class} is not a link candidate: {reason}")]
    NotCandidate { class: SurfaceClass, reason: String },

    #[error("{0} passes the link checks but is not the class of a smooth irreducible curve")]
    NotCurveClass(SurfaceClass),

    #[error("q * discrepancy = {0} is not an integer")]
    NonIntegral(String),

    #[error("contraction {0} has no index computation")]
    UnsupportedContraction(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Parse failures map to exit code 2, everything else to 3.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
