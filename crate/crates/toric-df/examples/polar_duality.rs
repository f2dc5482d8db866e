//! Polytope utilities: polar duals, reflexivity, normalized volumes and
//! lattice point enumeration on the polytopes of the threefold example.
//!
//! ```bash
//! cargo run --example polar_duality
//! ```

use toric_df::corpus;
use toric_df::polytope::{
    is_reflexive, lattice_points, normalized_volume, polar_dual,
};

fn main() {
    let p = corpus::polytope_82();
    println!(
        "seven-vertex reflexive polytope: dim {}, reflexive {}, normalized volume {}",
        p.dim,
        is_reflexive(&p).unwrap(),
        normalized_volume(&p)
    );
    let pp = corpus::polytope_82_prime();
    let dual = polar_dual(&pp).unwrap();
    println!("polar dual of the blowup presentation:");
    for v in dual.lattice_vertices().unwrap() {
        println!("  {v}");
    }
    println!(
        "  {} vertices, normalized volume {} (the anticanonical degree of the threefold is 44)",
        dual.vertices.len(),
        normalized_volume(&dual)
    );
    let back = polar_dual(&dual).unwrap();
    println!(
        "polar dual is an involution: {} vertices back",
        back.vertices.len()
    );

    let hex = corpus::s6_hexagon();
    println!(
        "degree-six hexagon: {} lattice points ({} boundary + origin), volume {}",
        lattice_points(&hex).len(),
        lattice_points(&hex).len() - 1,
        normalized_volume(&hex)
    );
}
