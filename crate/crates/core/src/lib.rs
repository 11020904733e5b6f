//! Exact semiprime counting built on prime-counting sums.
//!
//! The number of semiprimes `<= n` is computed three independent ways: the
//! classical sum over primes up to `sqrt(n)`, half the ordered prime-pair
//! count (corrected for squares), and a direct Omega sieve. The difference
//! between the two closed forms gives the identity
//!
//! ```text
//! sum_{p <= sqrt n} pi(n/p) - sum_{sqrt n < p <= n/2} pi(n/p) = pi(sqrt n)^2
//! ```
//!
//! which [`identity`] checks numerically.
//!
//! `pi` at a rational argument `a/b` means `pi(floor(a/b))` everywhere.
//!
//! ```
//! use semipi::{build_quotient_pi, count_semiprimes_eq1, check_identity};
//!
//! let table = build_quotient_pi(25).unwrap();
//! assert_eq!(count_semiprimes_eq1(&table).unwrap().count, 9);
//! assert_eq!(check_identity(25).unwrap().residual, 0);
//! ```

pub mod cli;
pub mod error;
pub mod identity;
pub mod primes;
pub mod semiprime;

pub use error::{Error, Result};
pub use identity::{check_identity, identity_lhs, identity_report, identity_rhs, IdentityReport};
pub use primes::{build_prime_table, build_quotient_pi, isqrt, Limits, PrimeTable, QuotientPiTable};
pub use semiprime::{
    count_semiprimes, count_semiprimes_eq1, count_semiprimes_eq3, count_semiprimes_oracle,
    pair_sum_grouped, pair_sum_naive, square_root_prime_count, Method, PairSum, PairSumMode,
    SemiprimeCount, SemiprimeOracle,
};
