//! Check the head/tail identity over a range on all cores.
//!
//! ```text
//! cargo run --release --example identity_sweep -- 1 1000000
//! ```

use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use semipi::check_identity;

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer bound"));
    let start = args.next().unwrap_or(1);
    let end = args.next().unwrap_or(200_000);
    let workers = thread::available_parallelism().map_or(1, |n| n.get()) as u64;

    let failures = AtomicU64::new(0);
    thread::scope(|s| {
        for w in 0..workers {
            let failures = &failures;
            s.spawn(move || {
                let mut n = start + w;
                while n <= end {
                    let report = check_identity(n).expect("n in supported range");
                    if report.residual != 0 {
                        eprintln!("residual {} at n = {n}: {report:?}", report.residual);
                        failures.fetch_add(1, Ordering::Relaxed);
                    }
                    n += workers;
                }
            });
        }
    });

    let failures = failures.into_inner();
    println!("checked [{start}, {end}] on {workers} threads: {failures} nonzero residuals");
    if failures > 0 {
        std::process::exit(2);
    }
}
