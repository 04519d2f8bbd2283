use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("residue {value} is outside Z_{modulus}")]
    ResidueOutOfRange { value: u32, modulus: u32 },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("modulus {got} does not match {family} radius {t} (expected {expected})")]
    BadModulus {
        family: &'static str,
        t: u32,
        got: u32,
        expected: u32,
    },
    #[error("generator matrix index {index} out of range 0..={t}")]
    MatrixIndex { index: u32, t: u32 },
    #[error("anticode core points are not adjacent (distance {distance})")]
    NonAdjacentCore { distance: u32 },
    #[error("a code needs at least two codewords, got {0}")]
    TooFewCodewords(usize),
    #[error("code does not tile the torus: {0}")]
    TilingFailure(String),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("invalid palette: {0}")]
    InvalidPalette(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("group element {motion} maps census grid #{index} outside the census")]
    ClosureViolation { motion: String, index: usize },
    #[error("group closure exceeded {limit} elements")]
    GroupTooLarge { limit: usize },
    #[error("census format: {0}")]
    CensusFormat(String),
    #[error("puzzle format: {0}")]
    PuzzleFormat(String),
    #[error("sampled minimal puzzle has {k} hints, outside {lo}..={hi}")]
    HintRange { k: usize, lo: usize, hi: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
