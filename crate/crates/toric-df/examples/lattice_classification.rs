//! Exact integer linear algebra: Hermite and Smith normal forms, smooth
//! cone tests, and the lattice classification of vertex sets that
//! identifies the two presentations of the threefold polytope.
//!
//! ```bash
//! cargo run --example lattice_classification
//! ```

use toric_df::corpus;
use toric_df::lattice::{
    hermite_normal_form, is_smooth_cone, smith_normal_form, unimodular_equivalent, Cone,
    LatticeMatrix,
};

fn main() {
    let m = LatticeMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
    let (h, u) = hermite_normal_form(&m);
    println!("hermite normal form (row style, reduced):");
    for i in 0..h.rows {
        println!("  {}", h.row(i));
    }
    println!("  transform determinant {}", u.det());
    let (s, _, _) = smith_normal_form(&m);
    println!(
        "smith normal form diagonal: {}, {}, {}",
        s[(0, 0)],
        s[(1, 1)],
        s[(2, 2)]
    );

    for gens in [vec![vec![1i64, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 2]]] {
        let refs: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
        let cone = Cone::from_i64(&refs);
        println!(
            "cone on {:?} smooth: {}",
            gens,
            is_smooth_cone(&cone).unwrap()
        );
    }

    let p = corpus::polytope_82().lattice_vertices().unwrap();
    let q = corpus::polytope_82_prime().lattice_vertices().unwrap();
    let start = std::time::Instant::now();
    let equivalent = unimodular_equivalent(&p, &q).unwrap();
    println!(
        "the two seven-vertex presentations are lattice equivalent: {equivalent} ({:?})",
        start.elapsed()
    );
    // And inequivalent to a rescaled copy.
    let doubled: Vec<_> = p.iter().map(|v| v.scale(&2.into())).collect();
    println!(
        "equivalent to the doubled copy: {}",
        unimodular_equivalent(&p, &doubled).unwrap()
    );
}
