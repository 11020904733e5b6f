//! Exact prime-counting primitives.
//!
//! [`PrimeTable`] is a dense sieve: every prime up to a limit plus `pi(x)` for
//! each `x` up to that limit. [`QuotientPiTable`] holds `pi(v)` for every
//! distinct quotient `v = floor(n/d)` of a fixed `n`, which is exactly the set
//! of arguments the semiprime sums need, in `O(n^(3/4))` time and `O(sqrt n)`
//! memory.
//!
//! `pi` at a rational argument `a/b` is always `pi(floor(a/b))`; nothing here
//! touches floating point.

use crate::error::{Error, Result};

/// Largest `n` accepted by default.
pub const MAX_SUPPORTED_N: u64 = 100_000_000_000;
/// Default number of entries sieved per segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;
/// Default cap on dense table sizes (entries).
pub const DEFAULT_DENSE_BUDGET: u64 = 1 << 31;

/// Resource and range limits applied when building tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` a quotient table may be built for.
    pub max_n: u64,
    /// Largest limit a dense table may be sieved to.
    pub dense_budget: u64,
    /// Entries per sieve segment.
    pub segment_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: MAX_SUPPORTED_N,
            dense_budget: DEFAULT_DENSE_BUDGET,
            segment_size: DEFAULT_SEGMENT_SIZE,
        }
    }
}

impl Limits {
    pub fn with_max_n(mut self, max_n: u64) -> Self {
        self.max_n = max_n;
        self
    }

    pub(crate) fn check_n(&self, what: &'static str, n: u64) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(Error::OutOfRange {
                what,
                n,
                min: 1,
                max: self.max_n,
            });
        }
        Ok(())
    }

    fn check_dense(&self, entries: u64) -> Result<()> {
        // pi values are stored as u32
        let budget = self.dense_budget.min(u64::from(u32::MAX) - 1);
        if entries > budget {
            return Err(Error::Budget {
                requested: entries,
                budget,
            });
        }
        Ok(())
    }
}

/// Integer square root: the `r` with `r*r <= n < (r+1)*(r+1)`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Start above the root and walk Newton's iteration down; it decreases
    // monotonically until it reaches floor(sqrt(n)).
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Primes up to `isqrt(limit)` by a plain sieve, used to seed the segments.
fn base_primes(limit: u64) -> Vec<u64> {
    let root = isqrt(limit) as usize;
    let mut composite = vec![false; root + 1];
    let mut primes = Vec::new();
    for i in 2..=root {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= root {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Segmented sieve of Eratosthenes over `[0, limit]`.
///
/// Calls `visit(lo, flags)` once per segment in ascending order, where
/// `flags[i]` is true iff `lo + i` is prime.
pub fn sieve_segments(limit: u64, segment_size: usize, mut visit: impl FnMut(u64, &[bool])) {
    let segment_size = segment_size.max(1) as u64;
    let base = base_primes(limit);
    let mut flags = Vec::with_capacity(segment_size as usize);
    let mut lo = 0u64;
    while lo <= limit {
        let hi = limit.min(lo.saturating_add(segment_size - 1));
        let len = (hi - lo + 1) as usize;
        flags.clear();
        flags.resize(len, true);
        for v in lo..2.min(hi + 1) {
            flags[(v - lo) as usize] = false;
        }
        for &p in &base {
            let sq = p * p;
            if sq > hi {
                break;
            }
            let mut m = sq.max(lo.div_ceil(p) * p);
            while m <= hi {
                flags[(m - lo) as usize] = false;
                m += p;
            }
        }
        visit(lo, &flags);
        if hi == limit {
            break;
        }
        lo = hi + 1;
    }
}

/// All primes up to an inclusive limit, with a dense `pi` lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    pi_dense: Vec<u32>,
}

/// Sieve a [`PrimeTable`] up to `limit` under the default [`Limits`].
pub fn build_prime_table(limit: u64) -> Result<PrimeTable> {
    PrimeTable::with_limits(limit, &Limits::default())
}

impl PrimeTable {
    pub fn with_limits(limit: u64, limits: &Limits) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument("prime table limit must be >= 1".into()));
        }
        limits.check_dense(limit)?;
        let mut primes = Vec::new();
        let mut pi_dense = Vec::with_capacity(limit as usize + 1);
        let mut count = 0u32;
        sieve_segments(limit, limits.segment_size, |lo, flags| {
            for (i, &is_prime) in flags.iter().enumerate() {
                if is_prime {
                    count += 1;
                    primes.push(lo + i as u64);
                }
                pi_dense.push(count);
            }
        });
        Ok(PrimeTable {
            limit,
            primes,
            pi_dense,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The primes, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `pi(x)` for every `x` in `0..=limit`.
    pub fn pi_dense(&self) -> &[u32] {
        &self.pi_dense
    }

    pub fn is_prime(&self, x: u64) -> bool {
        x >= 2 && x <= self.limit && self.pi_dense[x as usize] != self.pi_dense[x as usize - 1]
    }

    /// Number of primes `<= x`.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::BeyondTable {
                value: x,
                limit: self.limit,
            });
        }
        Ok(u64::from(self.pi_dense[x as usize]))
    }

    /// `pi(numerator / denominator)`, i.e. `pi(floor(numerator / denominator))`.
    pub fn pi_floor(&self, numerator: u64, denominator: u64) -> Result<u64> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("denominator must be >= 1".into()));
        }
        self.pi(numerator / denominator)
    }

    /// The `k`-th prime, 1-indexed (`nth_prime(1) == 2`).
    pub fn nth_prime(&self, k: u64) -> Result<u64> {
        let len = self.primes.len() as u64;
        if k == 0 || k > len {
            return Err(Error::PrimeIndex { k, len });
        }
        Ok(self.primes[k as usize - 1])
    }
}

/// `pi` at every distinct quotient `floor(n/d)`, `1 <= d <= n`.
///
/// Quotients `v <= isqrt(n)` are stored by value; larger ones by their
/// divisor `d = n / v`, which is itself `<= isqrt(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPiTable {
    n: u64,
    sqrt_n: u64,
    small: Vec<u64>,
    large: Vec<u64>,
    primes: PrimeTable,
}

/// Build a [`QuotientPiTable`] for `n` under the default [`Limits`].
pub fn build_quotient_pi(n: u64) -> Result<QuotientPiTable> {
    QuotientPiTable::with_limits(n, &Limits::default())
}

impl QuotientPiTable {
    pub fn with_limits(n: u64, limits: &Limits) -> Result<Self> {
        limits.check_n("quotient table", n)?;
        let r = isqrt(n);
        limits.check_dense(r + 1)?;
        let primes = PrimeTable::with_limits(r.max(1), limits)?;
        let r = r as usize;

        // Start from "everything >= 2 is prime" and strike out, prime by
        // prime, the composites whose least prime factor is p.
        let mut small: Vec<u64> = (0..=r as u64).map(|v| v.saturating_sub(1)).collect();
        let mut large: Vec<u64> = (0..=r as u64)
            .map(|d| n.checked_div(d).map_or(0, |q| q - 1))
            .collect();

        for (below, &p) in primes.primes().iter().enumerate() {
            let below = below as u64;
            let sq = p * p;
            if sq > n {
                break;
            }
            let p = p as usize;
            let last = r.min((n / sq) as usize);
            for d in 1..=last {
                let dp = d * p;
                let sub = if dp <= r {
                    large[dp]
                } else {
                    small[(n / dp as u64) as usize]
                };
                large[d] -= sub - below;
            }
            let sq = sq as usize;
            if sq <= r {
                for v in (sq..=r).rev() {
                    small[v] -= small[v / p] - below;
                }
            }
        }

        Ok(QuotientPiTable {
            n,
            sqrt_n: r as u64,
            small,
            large,
            primes,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `isqrt(n)`.
    pub fn sqrt_n(&self) -> u64 {
        self.sqrt_n
    }

    /// Dense table sieved up to `max(isqrt(n), 1)`.
    pub fn primes(&self) -> &PrimeTable {
        &self.primes
    }

    /// `pi(floor(n/d))` for any `d >= 1`.
    pub fn pi_over(&self, d: u64) -> u64 {
        debug_assert!(d >= 1);
        let q = self.n / d;
        if q <= self.sqrt_n {
            self.small[q as usize]
        } else {
            self.large[d as usize]
        }
    }

    /// `pi(v)` where `v` is a quotient of `n`. Every `v <= isqrt(n)` qualifies.
    pub fn pi(&self, v: u64) -> Result<u64> {
        if v <= self.sqrt_n {
            return Ok(self.small[v as usize]);
        }
        if v > self.n || self.n / (self.n / v) != v {
            return Err(Error::NotAQuotient { value: v, n: self.n });
        }
        Ok(self.large[(self.n / v) as usize])
    }

    /// The distinct quotients, ascending.
    pub fn quotients(&self) -> impl Iterator<Item = u64> + '_ {
        let r = self.sqrt_n;
        let n = self.n;
        let lower = 1..=r;
        // n / r == r exactly when the top of `lower` repeats
        let top = if r > 0 && n / r == r { r - 1 } else { r };
        lower.chain((1..=top).rev().map(move |d| n / d))
    }

    /// `(v, pi(v))` for every quotient, ascending in `v`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.quotients()
            .map(|v| (v, self.pi(v).expect("iterated value is a quotient")))
    }

    /// Number of distinct quotients.
    pub fn len(&self) -> usize {
        self.quotients().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Heap bytes held by the table, including its prime sieve.
    pub fn heap_bytes(&self) -> usize {
        use std::mem::size_of;
        (self.small.capacity() + self.large.capacity() + self.primes.primes.capacity())
            * size_of::<u64>()
            + self.primes.pi_dense.capacity() * size_of::<u32>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(x: u64) -> bool {
        x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| !x.is_multiple_of(d))
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(24), 4);
        assert_eq!(isqrt(25), 5);
        assert_eq!(isqrt(1_000_000_000_000_000_000), 1_000_000_000);
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
        assert_eq!(isqrt((1 << 62) - 1), (1 << 31) - 1);
    }

    #[test]
    fn isqrt_square_boundaries() {
        for r in 1..100_000u64 {
            assert_eq!(isqrt(r * r), r);
            assert_eq!(isqrt(r * r - 1), r - 1);
        }
    }

    #[test]
    fn table_examples() {
        let t = build_prime_table(5).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5]);
        assert_eq!(t.pi(5).unwrap(), 3);

        let t = build_prime_table(1).unwrap();
        assert!(t.primes().is_empty());
        assert_eq!(t.pi(1).unwrap(), 0);

        assert_eq!(build_prime_table(100).unwrap().pi(100).unwrap(), 25);
    }

    #[test]
    fn table_matches_trial_division() {
        let t = build_prime_table(10_000).unwrap();
        let mut count = 0;
        for x in 0..=10_000u64 {
            if trial_division_is_prime(x) {
                count += 1;
            }
            assert_eq!(t.pi(x).unwrap(), count, "pi({x})");
            assert_eq!(t.is_prime(x), trial_division_is_prime(x));
        }
        assert!(t.primes().windows(2).all(|w| w[0] < w[1]));
        assert!(t.primes().iter().all(|&p| trial_division_is_prime(p)));
    }

    #[test]
    fn small_segments_agree_with_one_segment() {
        let limits = Limits {
            segment_size: 7,
            ..Limits::default()
        };
        let a = PrimeTable::with_limits(5_000, &limits).unwrap();
        let b = build_prime_table(5_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_errors() {
        assert!(matches!(
            build_prime_table(0),
            Err(Error::InvalidArgument(_))
        ));
        let limits = Limits {
            dense_budget: 1000,
            ..Limits::default()
        };
        assert_eq!(
            PrimeTable::with_limits(1001, &limits),
            Err(Error::Budget {
                requested: 1001,
                budget: 1000
            })
        );
        let t = build_prime_table(30).unwrap();
        assert_eq!(
            t.pi(31),
            Err(Error::BeyondTable {
                value: 31,
                limit: 30
            })
        );
        assert!(t.pi_floor(100, 3).is_err());
        assert!(t.pi_floor(10, 0).is_err());
    }

    #[test]
    fn pi_floor_examples() {
        let t = build_prime_table(25).unwrap();
        assert_eq!(t.pi_floor(25, 2).unwrap(), 5);
        assert_eq!(t.pi_floor(25, 3).unwrap(), 4);
        assert_eq!(t.pi_floor(25, 11).unwrap(), 1);
    }

    #[test]
    fn nth_prime_examples() {
        let t = build_prime_table(100).unwrap();
        assert_eq!(t.nth_prime(1).unwrap(), 2);
        assert_eq!(t.nth_prime(3).unwrap(), 5);
        assert_eq!(t.nth_prime(25).unwrap(), 97);
        assert_eq!(t.nth_prime(0), Err(Error::PrimeIndex { k: 0, len: 25 }));
        assert_eq!(t.nth_prime(26), Err(Error::PrimeIndex { k: 26, len: 25 }));
    }

    #[test]
    fn quotient_table_25() {
        let q = build_quotient_pi(25).unwrap();
        assert_eq!(
            q.quotients().collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5, 6, 8, 12, 25]
        );
        assert_eq!(q.pi(12).unwrap(), 5);
        assert_eq!(q.pi(8).unwrap(), 4);
        assert_eq!(q.pi(5).unwrap(), 3);
        assert_eq!(q.pi(25).unwrap(), 9);
        assert_eq!(q.pi(7), Err(Error::NotAQuotient { value: 7, n: 25 }));
        assert_eq!(q.pi(26), Err(Error::NotAQuotient { value: 26, n: 25 }));
    }

    #[test]
    fn quotient_table_1() {
        let q = build_quotient_pi(1).unwrap();
        assert_eq!(q.iter().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn quotient_table_million() {
        let q = build_quotient_pi(1_000_000).unwrap();
        let t = build_prime_table(1_000_000).unwrap();
        assert_eq!(q.pi(1_000_000).unwrap(), t.pi(1_000_000).unwrap());
        assert_eq!(q.pi(1_000_000).unwrap(), 78_498);
        for (v, pi) in q.iter() {
            assert_eq!(pi, t.pi(v).unwrap(), "pi({v})");
        }
    }

    #[test]
    fn quotient_table_matches_dense_exhaustively() {
        let t = build_prime_table(3_000).unwrap();
        for n in 1..=3_000u64 {
            let q = build_quotient_pi(n).unwrap();
            for d in 1..=n {
                let v = n / d;
                assert_eq!(q.pi(v).unwrap(), t.pi(v).unwrap(), "n={n} v={v}");
                assert_eq!(q.pi_over(d), t.pi(v).unwrap());
            }
            let distinct: std::collections::BTreeSet<u64> = (1..=n).map(|d| n / d).collect();
            assert_eq!(q.quotients().collect::<Vec<_>>(), distinct.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn quotient_range_guard() {
        assert!(matches!(
            build_quotient_pi(0),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            build_quotient_pi(MAX_SUPPORTED_N + 1),
            Err(Error::OutOfRange { .. })
        ));
        let limits = Limits::default().with_max_n(100);
        assert!(QuotientPiTable::with_limits(101, &limits).is_err());
        assert!(QuotientPiTable::with_limits(100, &limits).is_ok());
    }
}
