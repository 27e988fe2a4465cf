//! Exact density route for small samples, compared against the
//! Gram-Charlier expansion at n = 10.
//!
//!     cargo run --example exact_small_sample

use rao_spacing::exact::exact_cdf;
use rao_spacing::gramcharlier::CdfApproximation;
use rao_spacing::moments::cumulant_set;

fn main() {
    let n = 10;
    let approx = CdfApproximation::new(&cumulant_set(n, 10).unwrap());
    println!("{:>7} {:>10} {:>14} {:>10}", "angle", "exact", "gram-charlier", "diff");
    for deg in (50..=220).step_by(10) {
        let t = (deg as f64).to_radians();
        let exact = exact_cdf(n, t).unwrap();
        let gc = approx.cdf(t);
        println!("{deg:>6}° {exact:>10.6} {gc:>14.6} {:>10.2e}", (exact - gc).abs());
    }
}
