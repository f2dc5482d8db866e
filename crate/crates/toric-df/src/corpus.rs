//! The named desk-scale configurations used throughout the tests, the
//! examples and the reproduction harness: the degeneration to the normal
//! cone of a point in the line, the ruled-surface product configuration,
//! the trivial configuration, the anticanonical threefold degeneration,
//! and the pair of reflexive three-dimensional polytopes with their polar
//! duals.

use crate::error::Result;
use crate::fan::{p1_fan, Fan};
use crate::lattice::LatticeVector;
use crate::num::{rat_int, Rat};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::testconfig::{
    degeneration_to_normal_cone, trivial_tc, Center, ToricTestConfiguration,
};
use crate::toric::ToricDivisor;
use num_traits::{One, Zero};

fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(c)
}

/// `(P1, O(1))` in the representative with coefficient one on the negative
/// ray, so the mirror potential comes out as `x + q/x`.
pub fn p1_o1() -> (Fan, ToricDivisor) {
    let fan = p1_fan();
    let l = ToricDivisor::new(vec![Rat::zero(), Rat::one()]);
    (fan, l)
}

/// Degeneration to the normal cone of the torus-fixed point at the
/// positive ray of the line, parameter `r`; the anticanonical multiple is
/// `r = 1/2`. Presented with the base direction first (the frame in which
/// the potential reads `x + q/x + q/x' + x' + e^{2 pi k r} x x'` with `x`
/// along the base), which fixes the fixed-point tables downstream.
pub fn normal_cone_p1(r: &Rat) -> Result<ToricTestConfiguration> {
    let (fan, l) = p1_o1();
    let tc = degeneration_to_normal_cone(&fan, &l, &Center::FixedPoint(0), r, 1)?;
    let swap = crate::lattice::LatticeMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    tc.apply_unimodular(&swap)
}

/// The trivial configuration for `(P1, O(1))`.
pub fn trivial_p1() -> Result<ToricTestConfiguration> {
    let (fan, l) = p1_o1();
    trivial_tc(&fan, &l)
}

/// The ruled surface `P(O + O(1))` as a compactified product test
/// configuration for the line, polarised by `H - r E`; anticanonical
/// multiple at `r = 1/3`. Rays and coefficients match the potential
/// `q/(x x') + x + x' + e^{2 pi k r} x x'`.
pub fn hirzebruch_product(r: &Rat) -> Result<ToricTestConfiguration> {
    let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1]), lv(&[-1, -1])];
    let cones = vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]];
    let fan = Fan::new(rays, cones, 2)?;
    let coeffs = vec![Rat::zero(), Rat::zero(), -r.clone(), Rat::one()];
    ToricTestConfiguration::new(fan, lv(&[1, -1]), ToricDivisor::new(coeffs))
}

/// The blown-up projective plane: rays of the plane plus the exceptional
/// ray over the cone spanned by the first two.
pub fn blowup_plane_fan() -> Fan {
    Fan::new(
        vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1]), lv(&[1, 1])],
        vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]],
        2,
    )
    .unwrap()
}

/// Anticanonically polarised degeneration to the normal cone of the
/// exceptional curve in the blown-up plane: a smooth toric Fano threefold
/// whose fan has the rays of the reflexive seven-vertex polytope.
pub fn blowup_plane_threefold() -> Result<ToricTestConfiguration> {
    let x = blowup_plane_fan();
    let minus_k = ToricDivisor::new(vec![Rat::one(); 4]);
    let tc = degeneration_to_normal_cone(&x, &minus_k, &Center::Divisor(3), &Rat::one(), 2)?;
    // The polarisation built by the blowup recipe is linearly equivalent to
    // the anticanonical; replace it by the anticanonical representative so
    // potentials are symmetric.
    let anticanonical = ToricDivisor::new(vec![Rat::one(); tc.total_fan.rays.len()]);
    ToricTestConfiguration::new(
        tc.total_fan.clone(),
        tc.projection.functional.clone(),
        anticanonical,
    )
}

/// The reflexive polytope with seven vertices presenting the threefold
/// (entry 82 of the classification of three-dimensional reflexive
/// polytopes).
pub fn polytope_82() -> LatticePolytope {
    convex_hull(&[
        lv(&[1, 0, 0]),
        lv(&[0, 1, 0]),
        lv(&[0, -1, 0]),
        lv(&[-1, 0, 0]),
        lv(&[0, 0, 1]),
        lv(&[1, 1, 0]),
        lv(&[1, 0, -1]),
    ])
    .unwrap()
}

/// The equivalent presentation coming from the blowup construction.
pub fn polytope_82_prime() -> LatticePolytope {
    convex_hull(&[
        lv(&[0, 0, -1]),
        lv(&[1, 0, 0]),
        lv(&[0, 1, 0]),
        lv(&[1, 1, 0]),
        lv(&[-1, -1, 0]),
        lv(&[0, 0, 1]),
        lv(&[1, 1, 1]),
    ])
    .unwrap()
}

/// Golden vertex list of the polar dual of the primed polytope.
pub fn polytope_82_prime_polar_vertices() -> Vec<LatticeVector> {
    vec![
        lv(&[2, -1, -1]),
        lv(&[2, -1, 1]),
        lv(&[-1, 2, 1]),
        lv(&[-1, 2, -1]),
        lv(&[0, -1, 1]),
        lv(&[-1, 0, 1]),
        lv(&[-1, 0, 0]),
        lv(&[0, -1, 0]),
        lv(&[1, -1, -1]),
        lv(&[-1, 1, -1]),
    ]
}

/// The reflexive quadrilateral of the surface example.
pub fn reflexive_quadrilateral() -> LatticePolytope {
    convex_hull(&[lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1]), lv(&[-1, -1])]).unwrap()
}

/// Golden vertex list of its polar dual.
pub fn reflexive_quadrilateral_polar_vertices() -> Vec<LatticeVector> {
    vec![lv(&[2, -1]), lv(&[-1, 2]), lv(&[-1, 0]), lv(&[0, -1])]
}

/// The anticanonical hexagon of the degree-six del Pezzo surface: the
/// Delzant container of both surface-example potentials.
pub fn s6_hexagon() -> LatticePolytope {
    convex_hull(&[
        lv(&[1, 0]),
        lv(&[-1, 0]),
        lv(&[0, 1]),
        lv(&[0, -1]),
        lv(&[1, 1]),
        lv(&[-1, -1]),
    ])
    .unwrap()
}

/// Boundary labels of the hexagon: the fixed point `p_i` sits at the
/// vertex shared by the boundary curves `C_i` and `C_{i+1}` under the
/// anticanonical embedding, which works out to the cyclic list below.
pub fn s6_vertex_label(v: &LatticeVector) -> Option<&'static str> {
    let table: [(&[i64; 2], &str); 6] = [
        (&[1, 1], "p1"),
        (&[0, 1], "p2"),
        (&[-1, 0], "p3"),
        (&[-1, -1], "p4"),
        (&[0, -1], "p5"),
        (&[1, 0], "p6"),
    ];
    for (coords, label) in table {
        if v == &lv(coords) {
            return Some(label);
        }
    }
    None
}

/// Deterministic linear congruential generator for the randomized corpora
/// (no external randomness: identical seeds give identical objects).
pub struct SmallRng(u64);

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// A randomized surface test configuration built from the product of two
/// lines by one or two star subdivisions over the poles, with blowup
/// parameters in `{1/4, 1/3, 1/2}`. Returns `None` when the sampled
/// parameters violate ampleness; callers advance the seed.
pub fn random_surface_tc(seed: u64) -> Option<ToricTestConfiguration> {
    let mut rng = SmallRng::new(seed);
    let (x_fan, l) = p1_o1();
    let base = trivial_tc(&x_fan, &l).ok()?;
    let mut fan = base.total_fan.clone();
    let mut coeffs = base.polarisation.coeffs.clone();
    let n_blowups = 1 + rng.below(2) as usize;
    let r_choices = [
        Rat::new(1.into(), 4.into()),
        Rat::new(1.into(), 3.into()),
        Rat::new(1.into(), 2.into()),
    ];
    for _ in 0..n_blowups {
        let ci = rng.below(fan.max_cones.len() as u64) as usize;
        let cone = fan.max_cones[ci].clone();
        let e_ray = cone
            .iter()
            .fold(LatticeVector::zero(2), |acc, &i| acc.add(&fan.rays[i]))
            .primitive();
        if fan.ray_index(&e_ray).is_some() {
            continue;
        }
        let pullback: Rat = cone.iter().map(|&i| coeffs[i].clone()).sum();
        fan = crate::fan::star_subdivide(&fan, &cone).ok()?;
        let r = r_choices[rng.below(3) as usize].clone();
        coeffs.push(pullback - r);
    }
    let tc = ToricTestConfiguration::new(
        fan.clone(),
        lv(&[0, 1]),
        ToricDivisor::new(coeffs),
    )
    .ok()?;
    if !crate::toric::is_ample(&tc.total_fan, &tc.polarisation) {
        return None;
    }
    Some(tc)
}

/// A deterministic batch of distinct randomized surface configurations.
pub fn random_surface_corpus(count: usize) -> Vec<ToricTestConfiguration> {
    let mut out = Vec::new();
    let mut seed = 1u64;
    while out.len() < count && seed < 10_000 {
        if let Some(tc) = random_surface_tc(seed) {
            out.push(tc);
        }
        seed += 1;
    }
    out
}

/// Convenience: the anticanonical multiple of each corpus configuration.
pub fn anticanonical_parameter(name: &str) -> Rat {
    match name {
        "normal-cone-p1" => Rat::new(1.into(), 2.into()),
        "hirzebruch-product" => Rat::new(1.into(), 3.into()),
        _ => rat_int(1),
    }
}
