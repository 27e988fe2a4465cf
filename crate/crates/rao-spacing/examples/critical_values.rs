//! Critical-value table for arbitrary sample sizes, including sizes far
//! beyond what published tables cover.
//!
//!     cargo run --release --example critical_values

use rao_spacing::gramcharlier::critical_value;
use rao_spacing::moments::cumulant_set;

fn main() {
    let alphas = [0.001, 0.01, 0.05, 0.10];
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "n", "0.001", "0.01", "0.05", "0.10");
    for n in [50usize, 100, 500, 1000, 2000, 10_000] {
        let cumulants = cumulant_set(n, 10).unwrap();
        let row: Vec<String> = alphas
            .iter()
            .map(|&alpha| format!("{:10.2}", critical_value(n, alpha, &cumulants).unwrap()))
            .collect();
        println!("{n:>8} {}", row.join(" "));
    }
}
