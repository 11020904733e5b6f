//! Both sides of the prime-pair identity
//!
//! ```text
//! sum_{p <= sqrt N} pi(N/p) - sum_{sqrt N < p <= N/2} pi(N/p) = pi(sqrt N)^2
//! ```
//!
//! computed independently so the residual can be checked. The right side is
//! read from a dense sieve; the left side from the quotient table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{isqrt, Limits, PrimeTable, QuotientPiTable};
use crate::semiprime::split_pair_sum;

/// Left side, right side and residual of the identity at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: u64,
    /// `sum pi(n/p)` over primes `p <= isqrt(n)`.
    pub head_sum: u128,
    /// `sum pi(n/p)` over primes `isqrt(n) < p <= n/2`.
    pub tail_sum: u128,
    pub lhs: i128,
    pub rhs: i128,
    pub residual: i128,
    /// `pi(isqrt(n))`, the number of head terms.
    pub pi_sqrt: u64,
    /// `pi(n/2)`, the last prime index in the tail.
    pub pi_half: u64,
    /// Quotient groups the tail was evaluated in.
    pub tail_groups: u64,
}

/// Head sum, tail sum and their difference.
pub fn identity_lhs(qpi: &QuotientPiTable) -> Result<(u128, u128, i128)> {
    let split = split_pair_sum(qpi)?;
    let lhs = signed(split.head)?
        .checked_sub(signed(split.tail)?)
        .ok_or(Error::Overflow("identity lhs"))?;
    Ok((split.head, split.tail, lhs))
}

/// `pi(isqrt(n))^2`.
pub fn identity_rhs(n: u64, table: &PrimeTable) -> Result<i128> {
    let pi = i128::from(table.pi(isqrt(n))?);
    Ok(pi * pi)
}

/// Full report for `n` under the default [`Limits`].
pub fn check_identity(n: u64) -> Result<IdentityReport> {
    check_identity_with(n, &Limits::default())
}

pub fn check_identity_with(n: u64, limits: &Limits) -> Result<IdentityReport> {
    let qpi = QuotientPiTable::with_limits(n, limits)?;
    identity_report(&qpi)
}

/// Report for the `n` the table was built for.
pub fn identity_report(qpi: &QuotientPiTable) -> Result<IdentityReport> {
    let n = qpi.n();
    let split = split_pair_sum(qpi)?;
    let lhs = signed(split.head)?
        .checked_sub(signed(split.tail)?)
        .ok_or(Error::Overflow("identity lhs"))?;
    let rhs = identity_rhs(n, qpi.primes())?;
    Ok(IdentityReport {
        n,
        head_sum: split.head,
        tail_sum: split.tail,
        lhs,
        rhs,
        residual: lhs - rhs,
        pi_sqrt: split.head_terms,
        pi_half: qpi.pi(n / 2)?,
        tail_groups: split.tail_groups,
    })
}

fn signed(x: u128) -> Result<i128> {
    i128::try_from(x).map_err(|_| Error::Overflow("identity sum"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::{build_prime_table, build_quotient_pi};
    use crate::semiprime::pair_sum_grouped;

    #[test]
    fn lhs_examples() {
        assert_eq!(identity_lhs(&build_quotient_pi(25).unwrap()).unwrap(), (12, 3, 9));
        assert_eq!(identity_lhs(&build_quotient_pi(1).unwrap()).unwrap(), (0, 0, 0));
        assert_eq!(identity_lhs(&build_quotient_pi(10_000).unwrap()).unwrap().2, 625);
    }

    #[test]
    fn lhs_10000_by_per_prime_summation() {
        let n = 10_000u64;
        let t = build_prime_table(n).unwrap();
        let r = isqrt(n);
        let (mut head, mut tail) = (0i128, 0i128);
        for &p in t.primes().iter().take_while(|&&p| p <= n / 2) {
            let term = i128::from(t.pi(n / p).unwrap());
            if p <= r {
                head += term;
            } else {
                tail += term;
            }
        }
        assert_eq!(head - tail, 625);
    }

    #[test]
    fn rhs_examples() {
        let t = build_prime_table(100).unwrap();
        assert_eq!(identity_rhs(25, &t).unwrap(), 9);
        assert_eq!(identity_rhs(1, &t).unwrap(), 0);
        assert_eq!(identity_rhs(10_000, &t).unwrap(), 625);
        assert!(identity_rhs(200 * 200, &t).is_err());
    }

    #[test]
    fn reports() {
        let r = check_identity(25).unwrap();
        assert_eq!((r.lhs, r.rhs, r.residual), (9, 9, 0));
        assert_eq!((r.pi_sqrt, r.pi_half), (3, 5));
        let r = check_identity(2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.residual), (0, 0, 0));
        assert!(check_identity(0).is_err());
    }

    #[test]
    fn head_plus_tail_is_pair_sum() {
        for n in (1..5_000).chain([99_999, 1_000_003]) {
            let q = build_quotient_pi(n).unwrap();
            let r = identity_report(&q).unwrap();
            assert_eq!(r.head_sum + r.tail_sum, pair_sum_grouped(&q).unwrap().value);
            assert_eq!(r.residual, 0, "n={n}");
        }
    }
}
