use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p must be an odd prime, got {0}")]
    EvenPrime(u32),
    #[error("GF({p}^{f}) is too large to tabulate")]
    FieldTooLarge { p: u32, f: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero is not a unit")]
    NotAUnit,

    #[error("invalid Serre weight ({a1}, {a2}) for p = {p}: need 0 <= a1 - a2 <= p - 1")]
    InvalidWeight { a1: i64, a2: i64, p: u32 },

    #[error("element is not in the filtration")]
    NotInFil,
    #[error("weight not in inertial range: no (J, delta) decomposition exists")]
    InertiallyIncompatible,
    #[error("weight/determinant mismatch: chi1*chi2 has inertial exponent {product}, expected {expected} mod {modulus}")]
    WeightDeterminantMismatch { product: u32, expected: u32, modulus: u32 },
    #[error("no valid pairs (x, y)")]
    NoValidPairs,
    #[error("extremal pair inconsistent: X = {x}, Y = {y}, e = {e}")]
    ExtremalInconsistent { x: u32, y: u32, e: u32 },
    #[error("invalid pair (x, y) = ({x}, {y}): {reason}")]
    InvalidPair { x: u32, y: u32, reason: String },
    #[error("inadmissible lambda: term of degree {degree} {reason}")]
    InadmissibleLambda { degree: usize, reason: String },
    #[error("shift target ({x}, {y}) does not give the same descent data")]
    ShiftNotValid { x: u32, y: u32 },
    #[error("shift target has x + y = {sum} > e = {e}")]
    ShiftExceedsE { sum: u32, e: u32 },
    #[error("shift exponent p(x' - x) + (y - y') = {exponent} is negative")]
    ShiftNegative { exponent: i64 },
    #[error("normal-form monomials do not span a complement of the coboundaries")]
    NoComplement,
    #[error("invalid Breuil module: {0}")]
    InvalidModule(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}
