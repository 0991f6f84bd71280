use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Paired strings must have equal length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A bit string or attack pattern must contain at least one symbol.
    #[error("empty input string")]
    EmptyString,

    /// A bit string may only contain '0' and '1'.
    #[error("invalid bit character {found:?} at position {position}")]
    InvalidBit { found: char, position: usize },

    /// An attack pattern may only contain 'u' and 's' (case-insensitive).
    #[error("invalid attack character {found:?} at position {position}")]
    InvalidAttack { found: char, position: usize },

    /// A rational probability must satisfy 0 <= numerator <= denominator.
    #[error("invalid probability {numerator}/{denominator}")]
    InvalidProbability { numerator: i64, denominator: i64 },

    /// Probability strings parse as "num/den", an integer, or a terminating decimal.
    #[error("cannot parse {input:?} as an exact probability")]
    UnparseableProbability { input: String },

    /// A real-valued parameter left its allowed interval.
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    /// A (b0, q) point violates the feasibility region; `bound` names the
    /// violated inequality.
    #[error("infeasible point (b0, q) = ({b0}, {q}): violates {bound}")]
    Infeasible {
        b0: f64,
        q: f64,
        bound: &'static str,
    },

    /// A probability vector does not sum to one.
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    /// Exhaustive enumeration would exceed the supported outcome count.
    #[error("enumeration capacity exceeded: {free_positions} free positions (cap {cap})")]
    CapacityExceeded { free_positions: usize, cap: usize },

    /// A claimed receiver string has probability zero under the channel.
    #[error("impossible outcome: position {position} cannot produce bit {found} under attack {attack} with sender bit {alice_bit}")]
    ImpossibleOutcome {
        position: usize,
        found: char,
        attack: char,
        alice_bit: char,
    },

    /// An experiment configuration is internally inconsistent.
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    /// The attack premise requires a channel transmission efficiency of at
    /// most 50%; larger values run only with an explicit override.
    #[error("transmission efficiency {eta} exceeds the 50% attack premise; set the override to run anyway")]
    EtaPremise { eta: f64 },

    /// Grid resolution below the supported minimum.
    #[error("resolution {0} is below the minimum of 2")]
    ResolutionTooSmall(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
