//! Both semiprime-counting formulas and the identity, term by term, for one N.
//!
//! ```text
//! cargo run --example worked_example -- 25
//! ```

use semipi::{
    build_quotient_pi, check_identity, count_semiprimes_eq1, count_semiprimes_eq3,
    pair_sum_grouped, PairSumMode, SemiprimeOracle,
};

fn main() -> semipi::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("N must be a positive integer"))
        .unwrap_or(25);
    let table = build_quotient_pi(n)?;
    let root = table.sqrt_n();

    if n <= 10_000 {
        let oracle = SemiprimeOracle::new(n)?;
        let listed: Vec<String> = (1..=n)
            .filter(|&m| oracle.is_semiprime(m))
            .map(|m| m.to_string())
            .collect();
        println!("semiprimes <= {n}: {}", listed.join(", "));
    }

    println!("\nclassical sum over p_k <= {root}:");
    for (k, &p) in (1u64..).zip(table.primes().primes()).take_while(|&(_, &p)| p <= root) {
        let pi = table.pi_over(p);
        println!("  k={k} p={p}: pi({n}/{p}) - {k} + 1 = {pi} - {k} + 1 = {}", pi + 1 - k);
    }
    println!("  total {}", count_semiprimes_eq1(&table)?.count);

    let pairs = pair_sum_grouped(&table)?;
    let squares = table.pi(root)?;
    println!("\nordered prime pairs p*q <= {n}: {} (over {} primes p <= {n}/2)", pairs.value, pairs.upper_index);
    println!("primes with p*p <= {n}: {squares}");
    println!(
        "({} + {squares}) / 2 = {}",
        pairs.value,
        count_semiprimes_eq3(&table, PairSumMode::Grouped)?.count
    );

    let report = check_identity(n)?;
    println!(
        "\nidentity: {} - {} = {} vs pi({root})^2 = {}  (residual {})",
        report.head_sum, report.tail_sum, report.lhs, report.rhs, report.residual
    );
    Ok(())
}
