//! Critical points of mirror potentials at arbitrary precision: the
//! multistart Newton solver, the Newton polytope root bound, the
//! stationary phase count, and the residue route to the invariant.
//!
//! ```bash
//! cargo run --example critical_points
//! ```

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use toric_df::corpus;
use toric_df::critical::{
    check_stationary_phase, df_mirror_residue, find_critical_points, SolverOptions,
};
use toric_df::hp::HpCtx;
use toric_df::lg::build_potential;

fn rq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn main() {
    let tc = corpus::normal_cone_p1(&rq(1, 2)).unwrap();
    let opts = SolverOptions::default();
    let ctx = HpCtx::new(opts.precision_bits);
    for k in [4i64, 8, 16] {
        let kq = Rat::from(BigInt::from(k));
        let w = build_potential(&tc, &kq);
        let solve = find_critical_points(&w, &opts).unwrap();
        let sp = check_stationary_phase(&w, &solve, None).unwrap();
        println!(
            "k = {k}: {} critical points (root bound {}), stationary phase count holds: {}",
            solve.points.len(),
            solve.bkk,
            sp.holds
        );
        for p in &solve.points {
            let (re0, im0) = p.log_coords[0].approx(&ctx);
            let (re1, im1) = p.log_coords[1].approx(&ctx);
            let (vre, vim) = p.value.approx(&ctx);
            println!(
                "  u = ({re0:+.4} {im0:+.4}i, {re1:+.4} {im1:+.4}i)   W(p) = {vre:+.6e} {vim:+.3e}i"
            );
        }
        let mr = df_mirror_residue(&tc, &kq, &opts).unwrap();
        let (re, im) = mr.value.approx(&ctx);
        println!("  residue route: {re:+.12} {im:+.2e}i  (exact invariant 1/4)");
        println!();
    }
}
