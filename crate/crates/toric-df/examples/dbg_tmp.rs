use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use toric_df::critical::{find_critical_points, grothendieck_residue, SolverOptions};
use toric_df::hp::{HpC, HpCtx};
use toric_df::lg::{build_potential, ScaledRat};
use toric_df::lattice::LatticeVector;

fn main() {
    let tc = toric_df::corpus::normal_cone_p1(&Rat::new(1.into(), 2.into())).unwrap();
    let w = build_potential(&tc, &Rat::from(BigInt::from(8)));
    let opts = SolverOptions::default();
    let solve = find_critical_points(&w, &opts).unwrap();
    let ctx = HpCtx::new(256);
    let g = vec![(LatticeVector::from_i64(&[0, 0]), ScaledRat::one())];
    let mut total = HpC::zero(&ctx);
    for (pi, p) in solve.points.iter().enumerate() {
        let direct = HpC::one(&ctx).div(&p.hessian_det, &ctx);
        total = total.add(&direct, &ctx);
        println!("point {pi}: 1/detH re = {}", ctx.to_decimal(&direct.re, 55));
        println!("          1/detH im = {}", ctx.to_decimal(&direct.im, 55));
        println!("          residual  = {:e}", p.residual);
    }
    println!("fast total re = {}", ctx.to_decimal(&total.re, 40));
    println!("fast total im = {}", ctx.to_decimal(&total.im, 40));
    let r = grothendieck_residue(&w, &g, &solve, &ctx).unwrap();
    println!("api  total re = {}", ctx.to_decimal(&r.re, 40));
}
