//! Segmented sieve, k-th prime and pi at rational arguments.

use semipi::build_prime_table;

fn main() -> semipi::Result<()> {
    let table = build_prime_table(1_000_000)?;
    println!("pi(10^6) = {}", table.pi(1_000_000)?);
    for k in [1, 3, 25, 1_000, 78_498] {
        println!("p_{k} = {}", table.nth_prime(k)?);
    }
    // pi(25/2), pi(25/3), pi(25/7): the argument is floored
    for d in [2, 3, 7, 11] {
        println!("pi(25/{d}) = {}", table.pi_floor(25, d)?);
    }
    match table.nth_prime(78_499) {
        Ok(p) => println!("unexpected prime {p}"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
