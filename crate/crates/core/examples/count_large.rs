//! Semiprime counts at powers of ten, classical vs grouped pair formula.
//!
//! ```text
//! cargo run --release --example count_large -- 11
//! ```

use std::time::Instant;

use semipi::{build_quotient_pi, count_semiprimes_eq1, count_semiprimes_eq3, PairSumMode};

fn main() -> semipi::Result<()> {
    let max_exp: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("exponent must be an integer"))
        .unwrap_or(10);

    println!("{:>16} {:>14} {:>12} {:>12} {:>12}", "N", "semiprimes", "table", "eq1", "eq3");
    for exp in 1..=max_exp {
        let n = 10u64.pow(exp);
        let start = Instant::now();
        let table = build_quotient_pi(n)?;
        let built = start.elapsed();
        let eq1 = count_semiprimes_eq1(&table)?;
        let eq3 = count_semiprimes_eq3(&table, PairSumMode::Grouped)?;
        assert_eq!(eq1.count, eq3.count);
        println!(
            "{n:>16} {:>14} {:>12.2?} {:>12.2?} {:>12.2?}",
            eq3.count, built, eq1.elapsed, eq3.elapsed
        );
    }
    Ok(())
}
