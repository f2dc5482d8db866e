//! Mirror Landau-Ginzburg potentials of test configurations: exact term
//! data at scale k, the fibration split, and the leading-order images of
//! the polarisation and relative canonical classes in the Jacobi ring.
//!
//! ```bash
//! cargo run --example mirror_potential
//! ```

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use num_traits::One;
use toric_df::corpus;
use toric_df::lg::{
    build_potential, deformation_split, newton_polytope, psi_class, theta_class,
    theta_proportionality,
};

fn rq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn show(section: &[(toric_df::lattice::LatticeVector, toric_df::lg::ScaledRat)]) -> String {
    section
        .iter()
        .map(|(m, c)| {
            let coeff = if c.log.is_one() {
                "q^-1 ".to_string()
            } else if c.log == rq(0, 1) {
                String::new()
            } else {
                format!("e^{{2 pi k ({})}} ", c.log)
            };
            format!("{coeff}x^{m}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn main() {
    let k = Rat::from(BigInt::from(8));
    for (name, tc) in [
        ("normal cone", corpus::normal_cone_p1(&rq(1, 2)).unwrap()),
        ("ruled product", corpus::hirzebruch_product(&rq(1, 3)).unwrap()),
    ] {
        let w = build_potential(&tc, &k);
        println!("{name}: W = {}", show(&w.terms));
        let np = newton_polytope(&w).unwrap();
        println!(
            "  newton polytope: {} vertices, normalized volume {}",
            np.vertices.len(),
            toric_df::polytope::normalized_volume(&np)
        );
        let (fiber, rest) = deformation_split(&w, &tc.projection.functional);
        println!("  fiber part     : {}", show(&fiber));
        println!("  deformation    : {}", show(&rest));
        let r = theta_proportionality(&tc, &w).unwrap();
        println!("  theta = {r} W termwise (anticanonical multiple)");
        let theta = theta_class(&tc, &w);
        println!("  theta class    : {}", show(&theta));
        let (psi, flagged) = psi_class(&tc, &w);
        println!("  psi class      : {}{}", show(&psi),
            if flagged { "  (multiplicity above one, review)" } else { "" });
        println!();
    }
}
