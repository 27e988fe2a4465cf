//! Coefficient table of the moment recursion plus the moments and
//! cumulants of U_n for a chosen sample size.
//!
//!     cargo run --example moment_table

use rao_spacing::moments::{build_coefficients, cumulant_set, moment_set};

fn main() {
    let table = build_coefficients(10).unwrap();
    println!("coefficients a_j^(r):");
    for r in 1..=10 {
        let row: Vec<String> = table.row(r).iter().map(|a| a.to_string()).collect();
        println!("  r={r:>2}: {}", row.join(", "));
    }

    let n = 10;
    let moments = moment_set(n, 10, &table).unwrap();
    let cumulants = cumulant_set(n, 10).unwrap();
    println!("\nU_{n} raw moments, raw cumulants, standardized cumulants:");
    for r in 1..=10 {
        let lambda = if r >= 3 {
            format!("{:>14.6e}", cumulants.lambda(r))
        } else {
            " ".repeat(14)
        };
        println!(
            "  r={r:>2}: mu'={:>12.6} kappa'={:>14.6e} lambda={lambda}",
            moments.raw_moments[r - 1],
            cumulants.raw_cumulants[r - 1]
        );
    }
}
