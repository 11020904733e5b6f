//! Prime counts at every distinct quotient floor(N/d), checked against a
//! dense sieve.
//!
//! ```text
//! cargo run --example quotient_table -- 1000
//! ```

use std::time::Instant;

use semipi::{build_prime_table, build_quotient_pi};

fn main() -> semipi::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("N must be a positive integer"))
        .unwrap_or(100);

    let start = Instant::now();
    let table = build_quotient_pi(n)?;
    println!(
        "{} distinct quotients of {n} in {:.2?}, {} bytes",
        table.len(),
        start.elapsed(),
        table.heap_bytes()
    );

    if n <= 2_000 {
        for (v, pi) in table.iter() {
            println!("  pi({v}) = {pi}");
        }
    }

    if n <= 100_000_000 {
        let dense = build_prime_table(n)?;
        let bad = table.iter().filter(|&(v, pi)| dense.pi(v) != Ok(pi)).count();
        println!("dense sieve cross-check: {bad} mismatches");
    } else {
        println!("pi({n}) = {}", table.pi(n)?);
    }
    Ok(())
}
