//! Divisors, fixed points, equivariant weights and Hamiltonian vertex
//! values. One engine, `equivariant_integrate`, computes every
//! intersection number in the crate through Atiyah-Bott style fixed point
//! sums, exactly over the rationals.
//!
//! Conventions. For a divisor `D = sum a_rho D_rho` and a smooth maximal
//! cone `sigma` with dual basis `u_1, ..., u_n`, the Hamiltonian vertex is
//! `m_sigma(D) = sum a_i u_i` (pairing `+a_i` against the generators) and
//! `h_D(p) = <m_sigma(D), v>`. This sign is pinned by requiring the degree
//! of `O(1)` on the projective line to come out `+1`; every localisation
//! formula downstream inherits it.

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;
use crate::num::{Int, Rat};
use crate::polytope::{LatticePolytope, RatPoint};
use num_complex::Complex;
use num_traits::{One, Zero};

pub type CxRat = Complex<Rat>;

/// Torus-invariant divisor on a fixed fan: one rational coefficient per ray.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricDivisor {
    pub coeffs: Vec<Rat>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        ToricDivisor { coeffs }
    }

    pub fn zero(fan: &Fan) -> Self {
        ToricDivisor {
            coeffs: vec![Rat::zero(); fan.rays.len()],
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ToricDivisor {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &ToricDivisor) -> Self {
        ToricDivisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Shift by the linear functional `m`: coefficients change by
    /// `<m, b_rho>`, a linearly equivalent divisor.
    pub fn shift_by_functional(&self, fan: &Fan, m: &LatticeVector) -> Self {
        ToricDivisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&fan.rays)
                .map(|(a, b)| a + Rat::from(m.dot(b)))
                .collect(),
        }
    }

    pub fn to_complex(&self) -> ComplexDivisorClass {
        ComplexDivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| CxRat::new(c.clone(), Rat::zero()))
                .collect(),
        }
    }
}

/// A complex (1,1)-class without positivity: complex coefficient per ray.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDivisorClass {
    pub coeffs: Vec<CxRat>,
}

impl ComplexDivisorClass {
    pub fn zero(fan: &Fan) -> Self {
        ComplexDivisorClass {
            coeffs: vec![CxRat::new(Rat::zero(), Rat::zero()); fan.rays.len()],
        }
    }

    pub fn scale(&self, s: &CxRat) -> Self {
        ComplexDivisorClass {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &ComplexDivisorClass) -> Self {
        ComplexDivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexDivisorClass {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// `K = -sum D_rho` on a smooth complete fan.
pub fn canonical_divisor(fan: &Fan) -> ToricDivisor {
    ToricDivisor {
        coeffs: vec![-Rat::one(); fan.rays.len()],
    }
}

/// An isolated torus-fixed point: a smooth maximal cone with its dual basis.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub cone_index: usize,
    pub ray_indices: Vec<usize>,
    /// `u_i` with `<u_i, b_j> = delta_ij`, columns of the inverse generator
    /// matrix (entries are integers for smooth cones, stored rational).
    pub dual_basis: Vec<Vec<Rat>>,
}

/// Invert a small rational matrix (rows); `None` when singular.
pub fn rat_inverse(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n);
            r.clone()
        })
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &d;
            inv[col][j] = &inv[col][j] / &d;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t1 = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t1;
                let t2 = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t2;
            }
        }
    }
    Some(inv)
}

/// The fixed point attached to a maximal cone; requires the cone smooth.
pub fn fixed_point(fan: &Fan, cone_index: usize) -> Result<FixedPoint> {
    let cone = fan.cone(cone_index);
    match crate::lattice::is_smooth_cone(&cone) {
        Ok(true) => {}
        _ => return Err(Error::NonSmoothCone),
    }
    let n = fan.dim;
    let rows: Vec<Vec<Rat>> = fan.max_cones[cone_index]
        .iter()
        .map(|&ri| {
            fan.rays[ri]
                .0
                .iter()
                .map(|c| Rat::from(c.clone()))
                .collect()
        })
        .collect();
    let inv = rat_inverse(&rows).ok_or(Error::NonSmoothCone)?;
    let dual_basis: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| inv[j][i].clone()).collect())
        .collect();
    Ok(FixedPoint {
        cone_index,
        ray_indices: fan.max_cones[cone_index].clone(),
        dual_basis,
    })
}

/// All fixed points of a smooth complete fan.
pub fn fixed_points(fan: &Fan) -> Result<Vec<FixedPoint>> {
    (0..fan.max_cones.len())
        .map(|i| fixed_point(fan, i))
        .collect()
}

pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rat::zero(), |acc, t| acc + t)
}

pub fn lattice_to_rat(v: &LatticeVector) -> Vec<Rat> {
    v.0.iter().map(|c| Rat::from(c.clone())).collect()
}

/// Hamiltonian vertex `m_sigma(D)` with `<m_sigma, b_i> = a_i`.
pub fn moment_vertex(d: &ToricDivisor, p: &FixedPoint) -> Vec<Rat> {
    let n = p.dual_basis.len();
    let mut out = vec![Rat::zero(); n];
    for (i, &ri) in p.ray_indices.iter().enumerate() {
        let a = &d.coeffs[ri];
        for (k, o) in out.iter_mut().enumerate() {
            *o += a * &p.dual_basis[i][k];
        }
    }
    out
}

/// Vertex of the divisor polytope `{ m : <m, b_rho> >= -a_rho }` at the
/// cone of `p` (the negative of the Hamiltonian vertex).
pub fn polytope_vertex(d: &ToricDivisor, p: &FixedPoint) -> Vec<Rat> {
    moment_vertex(d, p).into_iter().map(|c| -c).collect()
}

/// `h_D(p) = <m_sigma(D), v>`.
pub fn hamiltonian_value(d: &ToricDivisor, p: &FixedPoint, v: &[Rat]) -> Rat {
    dot_rr(&moment_vertex(d, p), v)
}

/// Complex-linear extension of the Hamiltonian to complex classes.
pub fn hamiltonian_value_cx(d: &ComplexDivisorClass, p: &FixedPoint, v: &[Rat]) -> CxRat {
    let mut out = CxRat::new(Rat::zero(), Rat::zero());
    for (i, &ri) in p.ray_indices.iter().enumerate() {
        let a = &d.coeffs[ri];
        let pairing = dot_rr(&p.dual_basis[i], v);
        out += a * CxRat::new(pairing, Rat::zero());
    }
    out
}

/// Weights `<u_i, v>` of the torus action at `p`; errors when any vanishes.
pub fn equivariant_weights(p: &FixedPoint, v: &[Rat]) -> Result<Vec<Rat>> {
    let w: Vec<Rat> = p.dual_basis.iter().map(|u| dot_rr(u, v)).collect();
    if w.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroWeight);
    }
    Ok(w)
}

/// Product of the weights: the equivariant Euler class at `p`.
pub fn euler_class(p: &FixedPoint, v: &[Rat]) -> Result<Rat> {
    Ok(equivariant_weights(p, v)?
        .into_iter()
        .fold(Rat::one(), |acc, w| acc * w))
}

/// Localised intersection number: with `|classes| = dim`, the sum over
/// fixed points of the product of Hamiltonian values over the Euler class.
/// Exact and independent of the (generic) `v`.
pub fn equivariant_integrate(fan: &Fan, classes: &[ToricDivisor], v: &[Rat]) -> Result<Rat> {
    if classes.len() != fan.dim {
        return Err(Error::InvalidInput(format!(
            "expected {} classes, got {}",
            fan.dim,
            classes.len()
        )));
    }
    let mut total = Rat::zero();
    for p in fixed_points(fan)? {
        let e = euler_class(&p, v)?;
        let mut num = Rat::one();
        for d in classes {
            num *= hamiltonian_value(d, &p, v);
        }
        total += num / e;
    }
    Ok(total)
}

/// Deterministic sequence of candidate torus vectors used to retry when a
/// choice is non-generic: coordinate patterns `(1, t, t^2, ...)` over a
/// fixed prime list.
pub fn generic_vector_candidates(dim: usize) -> impl Iterator<Item = Vec<Rat>> {
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    PRIMES.into_iter().map(move |t| {
        let mut v = Vec::with_capacity(dim);
        let mut cur = 1i64;
        for _ in 0..dim {
            v.push(Rat::from(Int::from(cur)));
            cur *= t;
        }
        v
    })
}

/// `equivariant_integrate` retrying over the candidate vectors until all
/// weights are nonzero.
pub fn equivariant_integrate_auto(fan: &Fan, classes: &[ToricDivisor]) -> Result<Rat> {
    let mut last = Error::ZeroWeight;
    for v in generic_vector_candidates(fan.dim) {
        match equivariant_integrate(fan, classes, &v) {
            Ok(r) => return Ok(r),
            Err(Error::ZeroWeight) => last = Error::ZeroWeight,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Complex version of the localised intersection number.
pub fn equivariant_integrate_cx(
    fan: &Fan,
    classes: &[ComplexDivisorClass],
    v: &[Rat],
) -> Result<CxRat> {
    if classes.len() != fan.dim {
        return Err(Error::InvalidInput(format!(
            "expected {} classes, got {}",
            fan.dim,
            classes.len()
        )));
    }
    let mut total = CxRat::new(Rat::zero(), Rat::zero());
    for p in fixed_points(fan)? {
        let e = euler_class(&p, v)?;
        let mut num = CxRat::new(Rat::one(), Rat::zero());
        for d in classes {
            num *= hamiltonian_value_cx(d, &p, v);
        }
        total += num / CxRat::new(e, Rat::zero());
    }
    Ok(total)
}

/// Polytope of a nef divisor: vertices solved per maximal cone. Errors
/// with `NotNef` when some cone vertex violates another inequality.
pub fn divisor_polytope(fan: &Fan, d: &ToricDivisor) -> Result<LatticePolytope> {
    let mut vertices: Vec<RatPoint> = Vec::new();
    for p in fixed_points(fan)? {
        let v = polytope_vertex(d, &p);
        if !vertices.contains(&v) {
            vertices.push(v);
        }
    }
    for v in &vertices {
        for (ri, ray) in fan.rays.iter().enumerate() {
            let pairing = dot_rr(v, &lattice_to_rat(ray));
            if pairing < -d.coeffs[ri].clone() {
                return Err(Error::NotNef);
            }
        }
    }
    crate::polytope::convex_hull_rational(&vertices)
}

/// A divisor is ample when it is nef and all cone vertices are distinct.
pub fn is_ample(fan: &Fan, d: &ToricDivisor) -> bool {
    match divisor_polytope(fan, d) {
        Ok(p) => p.vertices.len() == fan.max_cones.len(),
        Err(_) => false,
    }
}

/// Coefficient of the vertex monomial of the container at the fixed point
/// `p` of its normal fan (`None` when the monomial is absent). The fixed
/// point lies on the vanishing locus of the section iff this is `None`.
pub fn evaluate_section_at_fixed_point<'s, C>(
    section: &'s [(LatticeVector, C)],
    container: &LatticePolytope,
    p: &FixedPoint,
) -> Option<&'s C> {
    let vertex = &container.vertices[p.cone_index];
    section.iter().find_map(|(m, c)| {
        if &crate::polytope::to_rat_point(m) == vertex {
            Some(c)
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{face_fan, normal_fan, p1_fan, product_with_p1};
    use crate::num::{rat, rat_int};
    use crate::polytope::convex_hull;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn p2_fan() -> Fan {
        Fan::new(
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            2,
        )
        .unwrap()
    }

    fn hexagon_fan() -> Fan {
        let p = convex_hull(
            &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        normal_fan(&p).unwrap()
    }

    #[test]
    fn degree_of_o1_on_p1_is_plus_one() {
        let fan = p1_fan();
        let d = ToricDivisor::new(vec![Rat::zero(), Rat::one()]);
        let v = vec![rat_int(1)];
        assert_eq!(equivariant_integrate(&fan, &[d], &v).unwrap(), rat_int(1));
    }

    #[test]
    fn canonical_on_p1_has_degree_minus_two() {
        let fan = p1_fan();
        let k = canonical_divisor(&fan);
        assert_eq!(equivariant_integrate_auto(&fan, &[k]).unwrap(), rat_int(-2));
    }

    #[test]
    fn anticanonical_squares() {
        // (-K)^2 = 6 on the degree six del Pezzo, 8 on P1 x P1, 9 on P2.
        let s6 = hexagon_fan();
        let mk = canonical_divisor(&s6).scale(&rat_int(-1));
        assert_eq!(
            equivariant_integrate_auto(&s6, &[mk.clone(), mk]).unwrap(),
            rat_int(6)
        );
        let p1p1 = Fan::new(
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
            2,
        )
        .unwrap();
        let mk = canonical_divisor(&p1p1).scale(&rat_int(-1));
        assert_eq!(
            equivariant_integrate_auto(&p1p1, &[mk.clone(), mk]).unwrap(),
            rat_int(8)
        );
        let p2 = p2_fan();
        let mk = canonical_divisor(&p2).scale(&rat_int(-1));
        assert_eq!(
            equivariant_integrate_auto(&p2, &[mk.clone(), mk]).unwrap(),
            rat_int(9)
        );
    }

    #[test]
    fn weights_on_p2() {
        // v = (1, 2): weight sets {(1,2)}, {(-1,1)}, {(-2,-1)}.
        let fan = p2_fan();
        let v = vec![rat_int(1), rat_int(2)];
        let mut seen: Vec<Vec<Rat>> = Vec::new();
        for p in fixed_points(&fan).unwrap() {
            let mut w = equivariant_weights(&p, &v).unwrap();
            w.sort();
            seen.push(w);
        }
        for expect in [
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(-1), rat_int(1)],
            vec![rat_int(-2), rat_int(-1)],
        ] {
            let mut e = expect.clone();
            e.sort();
            assert!(seen.contains(&e), "missing weight set {expect:?}");
        }
    }

    #[test]
    fn zero_weight_detected() {
        let fan = p2_fan();
        let p = fixed_point(&fan, 0).unwrap();
        assert!(matches!(
            equivariant_weights(&p, &[rat_int(1), rat_int(0)]),
            Err(Error::ZeroWeight)
        ));
    }

    #[test]
    fn euler_reciprocal_sum_vanishes() {
        for fan in [p2_fan(), hexagon_fan(), product_with_p1(&p1_fan())] {
            let v: Vec<Rat> = generic_vector_candidates(fan.dim).next().unwrap();
            let mut total = Rat::zero();
            for p in fixed_points(&fan).unwrap() {
                total += euler_class(&p, &v).unwrap().recip();
            }
            assert!(total.is_zero(), "fan with {} rays", fan.rays.len());
        }
    }

    #[test]
    fn integrate_is_v_independent_and_matches_volume() {
        let s6 = hexagon_fan();
        let mk = canonical_divisor(&s6).scale(&rat_int(-1));
        let mut values = Vec::new();
        for (i, v) in generic_vector_candidates(2).enumerate() {
            if i >= 3 {
                break;
            }
            values.push(equivariant_integrate(&s6, &[mk.clone(), mk.clone()], &v).unwrap());
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]));
        let poly = divisor_polytope(&s6, &mk).unwrap();
        assert_eq!(
            Rat::from(crate::polytope::normalized_volume(&poly)),
            values[0]
        );
        // Same identity (n copies of a nef divisor = n! vol) on the line,
        // the plane and the quadric.
        let p1 = p1_fan();
        let d = ToricDivisor::new(vec![Rat::zero(), rat_int(3)]);
        assert_eq!(
            equivariant_integrate_auto(&p1, std::slice::from_ref(&d)).unwrap(),
            Rat::from(crate::polytope::normalized_volume(
                &divisor_polytope(&p1, &d).unwrap()
            ))
        );
        for fan in [p2_fan(), product_fan_of_two_lines()] {
            let mk = canonical_divisor(&fan).scale(&rat_int(-1));
            let classes = vec![mk.clone(); 2];
            assert_eq!(
                equivariant_integrate_auto(&fan, &classes).unwrap(),
                Rat::from(crate::polytope::normalized_volume(
                    &divisor_polytope(&fan, &mk).unwrap()
                ))
            );
        }
    }

    fn product_fan_of_two_lines() -> Fan {
        Fan::new(
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
            2,
        )
        .unwrap()
    }

    #[test]
    fn anticanonical_square_of_blown_up_quadric_is_seven() {
        // The total space of the normal cone degeneration of the line.
        let fan = Fan::new(
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1]), lv(&[1, 1])],
            vec![vec![0, 4], vec![4, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
            2,
        )
        .unwrap();
        let mk = canonical_divisor(&fan).scale(&rat_int(-1));
        assert_eq!(
            equivariant_integrate_auto(&fan, &[mk.clone(), mk]).unwrap(),
            rat_int(7)
        );
    }

    #[test]
    fn linear_equivalence_shifts_hamiltonian_but_not_integrals() {
        let s6 = hexagon_fan();
        let mk = canonical_divisor(&s6).scale(&rat_int(-1));
        let m = lv(&[1, -2]);
        let shifted = mk.shift_by_functional(&s6, &m);
        let v = vec![rat_int(2), rat_int(9)];
        for p in fixed_points(&s6).unwrap() {
            let delta = hamiltonian_value(&shifted, &p, &v) - hamiltonian_value(&mk, &p, &v);
            assert_eq!(delta, dot_rr(&lattice_to_rat(&m), &v));
        }
        assert_eq!(
            equivariant_integrate(&s6, &[mk.clone(), mk.clone()], &v).unwrap(),
            equivariant_integrate(&s6, &[shifted, mk], &v).unwrap()
        );
    }

    #[test]
    fn half_anticanonical_pentagon_vertices() {
        // Blowup of P1 x P1 at a point; -K/2 has the half-integral pentagon
        // as its polytope and h pairs its vertices with v.
        let fan = Fan::new(
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1]), lv(&[1, 1])],
            vec![vec![0, 4], vec![4, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
            2,
        )
        .unwrap();
        let half_mk = canonical_divisor(&fan).scale(&rat(-1, 2));
        let poly = divisor_polytope(&fan, &half_mk).unwrap();
        assert_eq!(poly.vertices.len(), 5);
        let v = vec![rat_int(1), rat_int(1)];
        for p in fixed_points(&fan).unwrap() {
            let h = hamiltonian_value(&half_mk, &p, &v);
            let vert = moment_vertex(&half_mk, &p);
            assert_eq!(h, dot_rr(&vert, &v));
        }
    }

    #[test]
    fn trivial_divisor_hamiltonian_vanishes() {
        let fan = p2_fan();
        let zero = ToricDivisor::zero(&fan);
        for p in fixed_points(&fan).unwrap() {
            assert!(hamiltonian_value(&zero, &p, &[rat_int(3), rat_int(7)]).is_zero());
        }
    }

    #[test]
    fn section_vertex_evaluation() {
        let hexagon = convex_hull(
            &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let fan = normal_fan(&hexagon).unwrap();
        // Section supported away from (-1,-1).
        let section: Vec<(LatticeVector, Rat)> = vec![
            (lv(&[1, 0]), rat_int(1)),
            (lv(&[1, 1]), rat_int(1)),
            (lv(&[0, 1]), rat_int(1)),
            (lv(&[-1, 0]), rat_int(1)),
            (lv(&[0, -1]), rat_int(1)),
        ];
        let mut zero_vertices = Vec::new();
        for p in fixed_points(&fan).unwrap() {
            if evaluate_section_at_fixed_point(&section, &hexagon, &p).is_none() {
                zero_vertices.push(hexagon.vertices[p.cone_index].clone());
            }
        }
        assert_eq!(
            zero_vertices,
            vec![crate::polytope::to_rat_point(&lv(&[-1, -1]))]
        );
        // A constant section misses every vertex monomial.
        let one: Vec<(LatticeVector, Rat)> = vec![(lv(&[0, 0]), rat_int(1))];
        for p in fixed_points(&fan).unwrap() {
            assert!(evaluate_section_at_fixed_point(&one, &hexagon, &p).is_none());
        }
    }

    #[test]
    fn face_fan_of_smooth_fano_threefold_has_ten_fixed_points() {
        // The face fan of the reflexive 3d polytope with seven vertices is
        // simplicial and smooth (a rank four smooth toric Fano threefold).
        let p = convex_hull(
            &[
                [1, 0, 0],
                [0, 1, 0],
                [0, -1, 0],
                [-1, 0, 0],
                [0, 0, 1],
                [1, 1, 0],
                [1, 0, -1],
            ]
            .iter()
            .map(|v| lv(v))
            .collect::<Vec<_>>(),
        )
        .unwrap();
        let f = face_fan(&p).unwrap();
        assert!(f.is_smooth());
        assert_eq!(fixed_points(&f).unwrap().len(), 10);
        // A genuinely singular cone is rejected.
        let sing = Fan::new(
            vec![lv(&[1, 0]), lv(&[1, 2]), lv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            2,
        )
        .unwrap();
        assert!(fixed_points(&sing).is_err());
    }
}
