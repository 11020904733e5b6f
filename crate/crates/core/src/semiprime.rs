//! Semiprime counting.
//!
//! Two closed forms for the number of semiprimes `<= n`:
//!
//! * the classical sum over primes `p_k <= sqrt(n)` of `pi(n/p_k) - k + 1`;
//! * half of the ordered prime-pair count `sum_{p <= n/2} pi(n/p)` plus
//!   `pi(sqrt n)`, which adds back the squares `p*p` that the ordered count
//!   sees only once.
//!
//! The pair count is evaluated either term by term (`naive`, test-oracle use
//! only) or with primes beyond `sqrt(n)` grouped by their shared quotient
//! (`grouped`, the production path). An Omega-sieve enumeration
//! ([`SemiprimeOracle`]) backs all of them in tests.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{build_prime_table, Limits, QuotientPiTable};

/// Largest `n` the term-by-term pair sum accepts.
pub const NAIVE_MAX_N: u64 = 10_000_000;
/// Largest `n` the enumeration oracle accepts.
pub const ORACLE_MAX_N: u64 = 10_000_000;

/// How a semiprime count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Eq1,
    Eq3Naive,
    Eq3Grouped,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Eq1,
        Method::Eq3Naive,
        Method::Eq3Grouped,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Eq1 => "eq1",
            Method::Eq3Naive => "eq3_naive",
            Method::Eq3Grouped => "eq3_grouped",
            Method::Oracle => "oracle",
        }
    }

    /// Largest `n` this method runs for, beyond the global limit.
    pub fn cap(self) -> Option<u64> {
        match self {
            Method::Eq3Naive => Some(NAIVE_MAX_N),
            Method::Oracle => Some(ORACLE_MAX_N),
            Method::Eq1 | Method::Eq3Grouped => None,
        }
    }

    /// Range check for `n` under `limits` and this method's own cap.
    pub fn check(self, n: u64, limits: &Limits) -> Result<()> {
        limits.check_n(self.name(), n)?;
        match self.cap() {
            Some(cap) if n > cap => Err(Error::OutOfRange {
                what: self.name(),
                n,
                min: 1,
                max: cap,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown method `{s}` (expected eq1, eq3_naive, eq3_grouped or oracle)"
                ))
            })
    }
}

/// Evaluation strategy for the ordered prime-pair sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSumMode {
    Naive,
    Grouped,
}

/// Number of semiprimes `<= n` and how it was computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeCount {
    pub n: u64,
    pub method: Method,
    pub count: u64,
    /// Summation terms (or enumerated integers, for the oracle) evaluated.
    pub term_count: u64,
    pub elapsed: Duration,
}

/// Ordered prime pairs `(p, q)` with `p*q <= n`: `sum_{p <= n/2} pi(n/p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSum {
    pub n: u64,
    pub value: u128,
    /// `pi(n/2)`, the number of primes summed over.
    pub upper_index: u64,
}

/// Pair sum split at `sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SplitPairSum {
    /// Over primes `p <= isqrt(n)`.
    pub head: u128,
    /// Over primes `isqrt(n) < p <= n/2`.
    pub tail: u128,
    pub head_terms: u64,
    pub tail_groups: u64,
}

fn add(acc: u128, term: u64, what: &'static str) -> Result<u128> {
    acc.checked_add(u128::from(term)).ok_or(Error::Overflow(what))
}

/// `pi(isqrt(n))`: primes whose square does not exceed `n`.
pub fn square_root_prime_count(n: u64, table: &crate::primes::PrimeTable) -> Result<u64> {
    table.pi(crate::primes::isqrt(n))
}

pub(crate) fn split_pair_sum(qpi: &QuotientPiTable) -> Result<SplitPairSum> {
    let n = qpi.n();
    let r = qpi.sqrt_n();

    let mut head = 0u128;
    let mut head_terms = 0u64;
    for &p in qpi.primes().primes() {
        if p > r {
            break;
        }
        head = add(head, qpi.pi_over(p), "pair sum head")?;
        head_terms += 1;
    }

    // Every prime p in (r, n/2] has v = floor(n/p) in [2, r]; the primes
    // sharing a given v are those in (floor(n/(v+1)), floor(n/v)].
    let pi_r = qpi.pi(r)?;
    let mut tail = 0u128;
    let mut tail_groups = 0u64;
    for v in 2..=r {
        let hi = n / v;
        if hi <= r {
            break;
        }
        let pi_lo = if n / (v + 1) > r {
            qpi.pi_over(v + 1)
        } else {
            pi_r
        };
        let primes_in_group = qpi.pi_over(v) - pi_lo;
        if primes_in_group == 0 {
            continue;
        }
        let term = qpi
            .pi(v)?
            .checked_mul(primes_in_group)
            .ok_or(Error::Overflow("pair sum tail"))?;
        tail = add(tail, term, "pair sum tail")?;
        tail_groups += 1;
    }

    Ok(SplitPairSum {
        head,
        tail,
        head_terms,
        tail_groups,
    })
}

/// Pair sum by enumerating every prime `<= n/2`, with `pi` read from a
/// dense sieve rather than `qpi`. Only `qpi.n()` is used.
pub fn pair_sum_naive(qpi: &QuotientPiTable) -> Result<PairSum> {
    let n = qpi.n();
    if n > NAIVE_MAX_N {
        return Err(Error::OutOfRange {
            what: "naive pair sum (use pair_sum_grouped)",
            n,
            min: 1,
            max: NAIVE_MAX_N,
        });
    }
    let half = n / 2;
    let table = build_prime_table(half.max(1))?;
    let mut value = 0u128;
    for &p in table.primes() {
        value = add(value, table.pi(n / p)?, "naive pair sum")?;
    }
    Ok(PairSum {
        n,
        value,
        upper_index: table.pi(half)?,
    })
}

/// Pair sum in `O(sqrt n)` terms using quotient grouping.
pub fn pair_sum_grouped(qpi: &QuotientPiTable) -> Result<PairSum> {
    let split = split_pair_sum(qpi)?;
    Ok(PairSum {
        n: qpi.n(),
        value: split
            .head
            .checked_add(split.tail)
            .ok_or(Error::Overflow("pair sum"))?,
        upper_index: qpi.pi(qpi.n() / 2)?,
    })
}

/// Sum over primes `p_k <= sqrt(n)` of `pi(n/p_k) - k + 1`.
pub fn count_semiprimes_eq1(qpi: &QuotientPiTable) -> Result<SemiprimeCount> {
    let start = Instant::now();
    let r = qpi.sqrt_n();
    let mut total = 0i128;
    let mut terms = 0u64;
    for (k, &p) in (1i128..).zip(qpi.primes().primes()) {
        if p > r {
            break;
        }
        let term = i128::from(qpi.pi_over(p)) - k + 1;
        total = total.checked_add(term).ok_or(Error::Overflow("eq1 sum"))?;
        terms += 1;
    }
    Ok(SemiprimeCount {
        n: qpi.n(),
        method: Method::Eq1,
        count: u64::try_from(total).map_err(|_| Error::Overflow("eq1 sum"))?,
        term_count: terms,
        elapsed: start.elapsed(),
    })
}

/// `(pair_sum + pi(sqrt n)) / 2`, refusing to halve an odd dividend.
pub fn count_semiprimes_eq3(qpi: &QuotientPiTable, mode: PairSumMode) -> Result<SemiprimeCount> {
    let start = Instant::now();
    let n = qpi.n();
    let (pairs, method, term_count) = match mode {
        PairSumMode::Naive => {
            let s = pair_sum_naive(qpi)?;
            (s.value, Method::Eq3Naive, s.upper_index)
        }
        PairSumMode::Grouped => {
            let s = split_pair_sum(qpi)?;
            let value = s.head.checked_add(s.tail).ok_or(Error::Overflow("pair sum"))?;
            (value, Method::Eq3Grouped, s.head_terms + s.tail_groups)
        }
    };
    let squares = qpi.pi(qpi.sqrt_n())?;
    let dividend = add(pairs, squares, "eq3 dividend")?;
    if dividend % 2 != 0 {
        return Err(Error::Parity { n, dividend });
    }
    Ok(SemiprimeCount {
        n,
        method,
        count: u64::try_from(dividend / 2).map_err(|_| Error::Overflow("eq3 count"))?,
        term_count,
        elapsed: start.elapsed(),
    })
}

/// Omega (prime factors with multiplicity) for every integer up to a limit,
/// with running semiprime counts.
#[derive(Debug, Clone)]
pub struct SemiprimeOracle {
    limit: u64,
    omega: Vec<u8>,
    prefix: Vec<u32>,
}

impl SemiprimeOracle {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 || limit > ORACLE_MAX_N {
            return Err(Error::OutOfRange {
                what: "oracle",
                n: limit,
                min: 1,
                max: ORACLE_MAX_N,
            });
        }
        let len = limit as usize + 1;

        // Linear sieve for the smallest prime factor; Omega(m) then follows
        // from Omega(m / spf(m)) + 1 in ascending order.
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }

        let mut omega = vec![0u8; len];
        let mut prefix = vec![0u32; len];
        let mut count = 0u32;
        for m in 2..len {
            omega[m] = omega[m / spf[m] as usize] + 1;
            if omega[m] == 2 {
                count += 1;
            }
            prefix[m] = count;
        }
        Ok(SemiprimeOracle {
            limit,
            omega,
            prefix,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Omega(m), prime factors counted with multiplicity.
    pub fn omega(&self, m: u64) -> Option<u8> {
        self.omega.get(m as usize).copied()
    }

    pub fn is_semiprime(&self, m: u64) -> bool {
        self.omega(m) == Some(2)
    }

    /// Semiprimes `<= n`.
    pub fn count(&self, n: u64) -> Result<u64> {
        self.prefix
            .get(n as usize)
            .map(|&c| u64::from(c))
            .ok_or(Error::OutOfRange {
                what: "oracle lookup",
                n,
                min: 0,
                max: self.limit,
            })
    }
}

/// Semiprimes `<= n` by sieving Omega over `[1, n]`.
pub fn count_semiprimes_oracle(n: u64) -> Result<SemiprimeCount> {
    let start = Instant::now();
    let oracle = SemiprimeOracle::new(n)?;
    Ok(SemiprimeCount {
        n,
        method: Method::Oracle,
        count: oracle.count(n)?,
        term_count: n,
        elapsed: start.elapsed(),
    })
}

/// Run `method` for `n` from scratch, table construction included in
/// `elapsed`.
pub fn count_semiprimes(n: u64, method: Method, limits: &Limits) -> Result<SemiprimeCount> {
    method.check(n, limits)?;
    let start = Instant::now();
    let mut result = match method {
        Method::Oracle => count_semiprimes_oracle(n)?,
        _ => {
            let qpi = QuotientPiTable::with_limits(n, limits)?;
            count_with_table(&qpi, method)?
        }
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

/// Run `method` against an existing table. The oracle sieves `[1, n]`.
pub fn count_with_table(qpi: &QuotientPiTable, method: Method) -> Result<SemiprimeCount> {
    match method {
        Method::Eq1 => count_semiprimes_eq1(qpi),
        Method::Eq3Naive => count_semiprimes_eq3(qpi, PairSumMode::Naive),
        Method::Eq3Grouped => count_semiprimes_eq3(qpi, PairSumMode::Grouped),
        Method::Oracle => count_semiprimes_oracle(qpi.n()),
    }
}

/// First 1-based prime index `k` whose term `pi(floor(n/p_k))` in `qpi`
/// disagrees with a dense sieve. `None` when all agree or when `n` is too
/// large to sieve densely.
pub fn first_divergent_term(qpi: &QuotientPiTable) -> Option<u64> {
    let n = qpi.n();
    if n > NAIVE_MAX_N {
        return None;
    }
    let table = build_prime_table(n).ok()?;
    (1u64..)
        .zip(table.primes())
        .take_while(|&(_, &p)| p <= n / 2)
        .find(|&(_, &p)| table.pi(n / p).ok() != Some(qpi.pi_over(p)))
        .map(|(k, _)| k)
}
