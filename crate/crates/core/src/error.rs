use thiserror::Error;

/// Errors surfaced by the torsion pipeline.
///
/// Variants map onto CLI exit codes: input/syntax problems exit 2,
/// `NotAlgebraicallySplit` exits 3, `BettiOutOfScope` exits 4, and internal
/// consistency alarms (`NonUnitMismatch`, `NoDualityWitness`, ...) exit 5.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("operands belong to different groups")]
    GroupMismatch,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid link diagram: {0}")]
    Topology(String),

    #[error("signed crossing count between components {0} and {1} is odd")]
    OddCrossingParity(usize, usize),

    #[error("deleting every component leaves nothing to compute")]
    EmptyResult,

    #[error("deleted-column cross-check failed: minors disagree beyond a unit")]
    NonUnitMismatch,

    #[error("link is not algebraically split: lk(L{0}, L{1}) = {2} != 0")]
    NotAlgebraicallySplit(usize, usize, i64),

    #[error(
        "b1 = {0}: the surgery formula needs at least two zero framings \
         (first Betti number >= 2); b1 <= 1 inputs are out of scope"
    )]
    BettiOutOfScope(usize),

    #[error("charge parity violated at component {0}: k_i must equal 1 + sum of linking numbers (mod 2)")]
    BadParity(usize),

    #[error("no integer lift exists for the requested group element")]
    LiftFailure,

    #[error("torsion is identically zero")]
    ZeroTorsion,

    #[error("no duality witness: no h satisfies bar(tau) = h^-1 * tau")]
    NoDualityWitness,

    #[error("duality witness is not unique; translation stabilizer of tau is nontrivial")]
    AmbiguousDuality,

    #[error("operation requires b1 = {expected}, got b1 = {actual}")]
    BettiMismatch { expected: usize, actual: usize },

    #[error("sum of torsion values is negative under the pinned sign")]
    NegativeSquare,

    #[error("genus must be >= 1, got {0}")]
    BadGenus(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
