//! The vanishing diagnostic for anticanonical multiples: verify the
//! proportionality hypothesis termwise, then track the defect between the
//! intersection invariant and the boundary decomposition across scales.
//!
//! ```bash
//! cargo run --example vanishing_diagnostic
//! ```

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use toric_df::boundary::vanishing_check;
use toric_df::corpus;

fn rq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn main() {
    let ks: Vec<Rat> = [4i64, 8, 12, 16]
        .iter()
        .map(|&k| Rat::from(BigInt::from(k)))
        .collect();
    let tol = rq(1, 1000);
    for (name, tc) in [
        ("normal cone", corpus::normal_cone_p1(&rq(1, 2)).unwrap()),
        ("ruled product", corpus::hirzebruch_product(&rq(1, 3)).unwrap()),
    ] {
        let report = vanishing_check(&tc, &ks, &tol).unwrap();
        println!(
            "{name}: polarisation is {} times the anticanonical; defects:",
            report.proportionality
        );
        for row in &report.rows {
            println!("  k = {:>2}: |defect| = {}", row.k, row.residual);
        }
        println!(
            "  non-increasing: {}, final within 1/1000: {}",
            report.non_increasing, report.final_within_tolerance
        );
        println!();
    }
    // The gate rejects polarisations that are not anticanonical multiples.
    let x = toric_df::fan::p1_fan();
    let l = toric_df::toric::ToricDivisor::new(vec![rq(0, 1), rq(2, 1)]);
    let bad = toric_df::testconfig::trivial_tc(&x, &l).unwrap();
    match vanishing_check(&bad, &ks, &tol) {
        Err(e) => println!("degree (2,1) polarisation on the quadric: {e}"),
        Ok(_) => println!("unexpected: hypothesis gate did not fire"),
    }
}
