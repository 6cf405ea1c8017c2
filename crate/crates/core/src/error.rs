use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by the zero function")]
    DivisionByZero,

    #[error("pole at p = {0}")]
    Pole(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid residue {0}: expected one of 0, 1, 2, 3")]
    InvalidAlpha(i64),

    #[error("cell ({0}, {1}) is not inside the order-{2} diamond")]
    OutsideDiamond(i64, i64, u32),

    #[error("cells ({0}, {1}) and ({2}, {3}) are not adjacent")]
    NotAdjacent(i64, i64, i64, i64),

    #[error("duplicate removed cell ({0}, {1})")]
    DuplicateCell(i64, i64),

    #[error("region too large for oracle: order {order} exceeds cap {cap}")]
    OracleTooLarge { order: u32, cap: u32 },

    #[error("too many tilings to enumerate (limit {0})")]
    TooManyTilings(usize),

    #[error("cells do not form a 2x2 block listed in cyclic order")]
    NotABlock,

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("hole centred at ({0}, {1}) is not inside the order-{2} diamond")]
    HoleOutside(i64, i64, u32),

    #[error("order {0} not covered by Ciucu's theorem (needs n = 2 or 3 mod 4)")]
    NotCiucu(u32),

    #[error("degenerate hole: {0}")]
    DegenerateHole(String),

    #[error("{0}")]
    Invalid(String),
}
