use thiserror::Error;

/// Errors produced by table construction and the counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The argument is outside the range an operation accepts.
    #[error("{what}: n = {n} is outside the supported range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        n: u64,
        min: u64,
        max: u64,
    },

    /// A dense table would exceed the configured memory budget.
    #[error("table of {requested} entries exceeds the memory budget of {budget} entries")]
    Budget { requested: u64, budget: u64 },

    /// A lookup past the end of a dense prime table.
    #[error("pi({value}) requested from a table sieved only up to {limit}")]
    BeyondTable { value: u64, limit: u64 },

    /// A lookup at a value that is not of the form floor(n/d).
    #[error("{value} is not a quotient floor({n}/d)")]
    NotAQuotient { value: u64, n: u64 },

    /// A 1-based prime index past the end of a table.
    #[error("prime index {k} out of range (table holds {len} primes)")]
    PrimeIndex { k: u64, len: u64 },

    /// The doubled pair count of the halving formula was odd.
    #[error("internal consistency failure at n = {n}: pair sum + pi(sqrt n) = {dividend} is odd")]
    Parity { n: u64, dividend: u128 },

    /// An accumulator overflowed.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    /// A zero or otherwise malformed argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
