//! The boundary residue decomposition: compactify the mirror torus, blow
//! up the base points, and assemble the invariant from exact per fixed
//! point data.
//!
//! ```bash
//! cargo run --example residue_decomposition
//! ```

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use toric_df::boundary::{build_compactification, residue_decomposition, single_group};
use toric_df::corpus;
use toric_df::lg::build_potential;

fn rq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn main() {
    for (name, tc) in [
        ("normal cone", corpus::normal_cone_p1(&rq(1, 2)).unwrap()),
        ("ruled product", corpus::hirzebruch_product(&rq(1, 3)).unwrap()),
    ] {
        let k = Rat::from(BigInt::from(16));
        let w = build_potential(&tc, &k);
        let comp = build_compactification(&w).unwrap();
        println!(
            "{name}: container {} ({} vertices), subdivided at {:?}",
            comp.container_tag,
            comp.container.vertices.len(),
            comp.subdivided_at
                .iter()
                .map(|&v| comp.point_label_of_vertex(v))
                .collect::<Vec<_>>()
        );
        let report = residue_decomposition(&tc, &k, &comp, &single_group(&comp)).unwrap();
        println!("  point   theta~  psi~  omega0  residues  term");
        for row in &report.rows {
            println!(
                "  {:<6}  {:>5}  {:>4}  {:>6}  {:?}  {:>6}",
                row.label,
                row.theta_tilde.as_exact().unwrap(),
                row.psi_tilde.as_exact().unwrap(),
                row.omega0_sign,
                row.connection_residues
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>(),
                row.term,
            );
        }
        println!(
            "  total {} = intersection invariant {} (defect {})",
            report.total, report.df_intersection, report.boundary_remainder
        );
        println!();
    }
}
