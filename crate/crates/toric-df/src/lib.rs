//! Exact computational toolkit for toric test configurations and their
//! Donaldson-Futaki invariants, together with the mirror Landau-Ginzburg
//! side: potentials, critical points, Grothendieck residues and boundary
//! residue decompositions over torus-fixed points.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: exact integer linear algebra (Hermite/Smith normal forms,
//!   smooth cones, unimodular classification of vertex sets);
//! - [`polytope`]: lattice polytopes, polar duality, reflexivity, volumes,
//!   Delzant containers;
//! - [`fan`]: complete fans, face/normal fans, star subdivisions, fibration
//!   structure over the projective line, subfan decompositions;
//! - [`toric`]: divisors, fixed points, equivariant weights and the single
//!   localisation engine behind all intersection numbers;
//! - [`testconfig`]: toric test configurations and the Donaldson-Futaki
//!   invariant by three independent routes;
//! - [`lg`]: mirror Landau-Ginzburg potentials and leading-order Jacobi
//!   ring classes;
//! - [`critical`]: multistart Newton critical-point solver in log
//!   coordinates at arbitrary precision, BKK counts, Grothendieck residues;
//! - [`boundary`]: toric compactifications of the mirror torus, per-fixed
//!   point residue data and the assembled decomposition of the invariant;
//! - [`duals`]: dual test configurations, rank inequality reports,
//!   Hamiltonian prescriptions and the assembled main identity;
//! - [`cli`]: the command line driver and the reproduction harness.
//!
//! Everything geometric is exact (big integers and rationals); only the
//! critical-point solver and residue sums run in configurable-precision
//! floating point (256 bits by default).

// Elimination and pivoting routines index several arrays in lockstep;
// iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod boundary;
pub mod cli;
pub mod corpus;
pub mod critical;
pub mod duals;
pub mod error;
pub mod fan;
pub mod hp;
pub mod lattice;
pub mod lg;
pub mod polytope;
pub mod report;
pub mod testconfig;
pub mod toric;

pub use error::{Error, Result};

#[allow(dead_code)]
pub(crate) mod num {
    pub use num_bigint::BigInt;
    pub use num_rational::BigRational;

    pub type Int = BigInt;
    pub type Rat = BigRational;

    pub fn int(v: i64) -> Int {
        Int::from(v)
    }

    pub fn rat(p: i64, q: i64) -> Rat {
        Rat::new(Int::from(p), Int::from(q))
    }

    pub fn rat_int(p: i64) -> Rat {
        Rat::from(Int::from(p))
    }
}
