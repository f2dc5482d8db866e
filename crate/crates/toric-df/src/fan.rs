//! Complete fans, face and normal fans, star subdivisions and the
//! fibration structure over the projective line used by test
//! configurations and their mirror compactifications.
//!
//! Rays are stored in a fixed order and all reports reference rays by
//! index. Maximal cones keep the order of their generators; in dimension
//! two the normal fan orders each vertex cone as (normal of the outgoing
//! edge, normal of the incoming edge) with respect to the counterclockwise
//! boundary walk, which pins the sign of the residue form at every fixed
//! point.

use crate::error::{Error, Result};
use crate::lattice::{is_smooth_cone, Cone, LatticeVector};
use crate::num::{Int, Rat};
use crate::polytope::LatticePolytope;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<Vec<usize>>,
    pub dim: usize,
}

impl Fan {
    pub fn new(rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>, dim: usize) -> Result<Self> {
        for r in &rays {
            if r.is_zero() {
                return Err(Error::InvalidInput("zero ray".into()));
            }
            if *r != r.primitive() {
                return Err(Error::InvalidInput(format!("non-primitive ray {r}")));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if rays[i + 1..].contains(r) {
                return Err(Error::InvalidInput(format!("duplicate ray {r}")));
            }
        }
        for c in &max_cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidInput("cone index out of range".into()));
            }
        }
        Ok(Fan { rays, max_cones, dim })
    }

    pub fn cone(&self, idx: usize) -> Cone {
        Cone::new(
            self.max_cones[idx].iter().map(|&i| self.rays[i].clone()).collect(),
            self.dim,
        )
    }

    pub fn ray_index(&self, ray: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }

    /// All maximal cones are simplicial and smooth.
    pub fn is_smooth(&self) -> bool {
        self.max_cones
            .iter()
            .enumerate()
            .all(|(i, _)| matches!(is_smooth_cone(&self.cone(i)), Ok(true)))
    }

    /// Completeness check. In dimension two the cones, each using two rays,
    /// must chain into a single cycle; in dimension three every wall
    /// (codimension-one face of a maximal cone) must be shared by exactly
    /// two maximal cones.
    pub fn is_complete(&self) -> bool {
        match self.dim {
            1 => {
                let pos = self.rays.iter().any(|r| r.0[0].is_positive());
                let neg = self.rays.iter().any(|r| r.0[0].is_negative());
                pos && neg
            }
            2 => {
                let mut usage = vec![0usize; self.rays.len()];
                for c in &self.max_cones {
                    if c.len() != 2 {
                        return false;
                    }
                    usage[c[0]] += 1;
                    usage[c[1]] += 1;
                }
                usage.iter().all(|&u| u == 2) && self.max_cones.len() == self.rays.len()
            }
            3 => {
                let mut walls: std::collections::HashMap<Vec<usize>, usize> =
                    std::collections::HashMap::new();
                for c in &self.max_cones {
                    for skip in 0..c.len() {
                        let mut w: Vec<usize> = c
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != skip)
                            .map(|(_, &i)| i)
                            .collect();
                        w.sort_unstable();
                        *walls.entry(w).or_insert(0) += 1;
                    }
                }
                walls.values().all(|&v| v == 2)
            }
            _ => false,
        }
    }

    /// Cyclic counterclockwise order of the rays (dimension two only).
    pub fn rays_in_cyclic_order(&self) -> Vec<usize> {
        assert_eq!(self.dim, 2, "cyclic order only in dimension two");
        let mut idx: Vec<usize> = (0..self.rays.len()).collect();
        idx.sort_by(|&a, &b| compare_angle(&self.rays[a], &self.rays[b]));
        idx
    }
}

/// Exact counterclockwise angular comparison from the positive x-axis.
fn compare_angle(a: &LatticeVector, b: &LatticeVector) -> std::cmp::Ordering {
    let half = |v: &LatticeVector| -> u8 {
        if v.0[1].is_positive() || (v.0[1].is_zero() && v.0[0].is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

/// Fan of cones over the proper faces of a polytope with interior origin.
/// Maximal cones correspond to facets of `p` and keep the facet's vertex
/// order; rays are the (primitive) vertex directions.
pub fn face_fan(p: &LatticePolytope) -> Result<Fan> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let verts = p
        .lattice_vertices()
        .ok_or_else(|| Error::InvalidInput("face fan needs lattice vertices".into()))?;
    let rays: Vec<LatticeVector> = verts.iter().map(|v| v.primitive()).collect();
    let max_cones: Vec<Vec<usize>> = p
        .facets
        .iter()
        .map(|f| f.vertex_indices.clone())
        .collect();
    Fan::new(rays, max_cones, p.ambient_dim)
}

/// Normal fan of a full-dimensional polytope: rays are the inward facet
/// normals, maximal cones are indexed by the vertices of `p` (cone `i`
/// belongs to vertex `i`).
pub fn normal_fan(p: &LatticePolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::InvalidInput(
            "normal fan needs a full-dimensional polytope".into(),
        ));
    }
    let rays: Vec<LatticeVector> = p.facets.iter().map(|f| f.normal.clone()).collect();
    let mut max_cones = Vec::with_capacity(p.vertices.len());
    if p.dim == 2 {
        // Facet i is the edge from vertex i to vertex i+1 in ccw order, so
        // vertex i has incoming facet i-1 and outgoing facet i.
        let n = p.vertices.len();
        for vi in 0..n {
            let incoming = (vi + n - 1) % n;
            let outgoing = vi;
            max_cones.push(vec![outgoing, incoming]);
        }
    } else {
        for vi in 0..p.vertices.len() {
            let cone: Vec<usize> = p
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertex_indices.contains(&vi))
                .map(|(i, _)| i)
                .collect();
            max_cones.push(cone);
        }
    }
    Fan::new(rays, max_cones, p.ambient_dim)
}

/// Star subdivision at a cone of the fan (given as a set of ray indices).
/// The cone is replaced, inside every maximal cone containing it, by the
/// cones joined with the ray through the sum of its primitive generators.
/// Subdividing a single ray leaves the fan unchanged.
pub fn star_subdivide(fan: &Fan, cone_rays: &[usize]) -> Result<Fan> {
    if cone_rays.is_empty() || cone_rays.iter().any(|&i| i >= fan.rays.len()) {
        return Err(Error::ConeNotInFan);
    }
    let mut sigma: Vec<usize> = cone_rays.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    let containing: Vec<usize> = fan
        .max_cones
        .iter()
        .enumerate()
        .filter(|(_, c)| sigma.iter().all(|s| c.contains(s)))
        .map(|(i, _)| i)
        .collect();
    if containing.is_empty() {
        return Err(Error::ConeNotInFan);
    }
    if sigma.len() == 1 {
        return Ok(fan.clone());
    }
    let s = sigma
        .iter()
        .fold(LatticeVector::zero(fan.dim), |acc, &i| acc.add(&fan.rays[i]))
        .primitive();
    let mut rays = fan.rays.clone();
    let new_idx = match rays.iter().position(|r| *r == s) {
        Some(i) => i,
        None => {
            rays.push(s);
            rays.len() - 1
        }
    };
    let mut max_cones = Vec::new();
    for (ci, c) in fan.max_cones.iter().enumerate() {
        if !containing.contains(&ci) {
            max_cones.push(c.clone());
            continue;
        }
        for &drop in &sigma {
            let child: Vec<usize> = c
                .iter()
                .map(|&i| if i == drop { new_idx } else { i })
                .collect();
            max_cones.push(child);
        }
    }
    Fan::new(rays, max_cones, fan.dim)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RayClass {
    Fiber,
    /// Lies over 0 with multiplicity `<functional, ray>`.
    OverZero(Int),
    /// Lies over infinity with multiplicity `|<functional, ray>|`.
    OverInf(Int),
}

/// A fan together with a projection to the fan of the projective line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanProjection {
    pub functional: LatticeVector,
    pub classification: Vec<RayClass>,
}

impl FanProjection {
    pub fn fiber_rays(&self) -> Vec<usize> {
        self.classification
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, RayClass::Fiber))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn rays_over_zero(&self) -> Vec<usize> {
        self.classification
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, RayClass::OverZero(_)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn rays_over_inf(&self) -> Vec<usize> {
        self.classification
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, RayClass::OverInf(_)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn multiplicity(&self, ray: usize) -> Int {
        match &self.classification[ray] {
            RayClass::Fiber => Int::zero(),
            RayClass::OverZero(m) | RayClass::OverInf(m) => m.clone(),
        }
    }
}

/// Classify the rays of `fan` by the sign of their pairing with `lambda`
/// and verify that every cone maps into one side of the line, so the cone
/// images refine the fan of the projective line.
pub fn classify_projection(fan: &Fan, lambda: &LatticeVector) -> Result<FanProjection> {
    if lambda.is_zero() {
        return Err(Error::InvalidInput("zero functional".into()));
    }
    let pair: Vec<Int> = fan.rays.iter().map(|r| lambda.dot(r)).collect();
    for c in &fan.max_cones {
        let pos = c.iter().any(|&i| pair[i].is_positive());
        let neg = c.iter().any(|&i| pair[i].is_negative());
        if pos && neg {
            return Err(Error::NotAFibration);
        }
    }
    let classification: Vec<RayClass> = pair
        .iter()
        .map(|p| {
            if p.is_zero() {
                RayClass::Fiber
            } else if p.is_positive() {
                RayClass::OverZero(p.clone())
            } else {
                RayClass::OverInf(-p.clone())
            }
        })
        .collect();
    let proj = FanProjection {
        functional: lambda.clone(),
        classification,
    };
    if proj.rays_over_zero().is_empty() || proj.rays_over_inf().is_empty() {
        return Err(Error::NotAFibration);
    }
    Ok(proj)
}

/// One part of a subfan decomposition after compactification.
#[derive(Debug, Clone)]
pub struct SubfanPart {
    /// Complete fan of the compactified part.
    pub fan: Fan,
    /// The functional nonnegative on the group support (the direction of
    /// the induced one-parameter degeneration); zero for a trivial group.
    pub direction: LatticeVector,
    /// Ray index (in `fan`) of the ray added over infinity, if any.
    pub added_ray: Option<usize>,
    /// For each maximal cone of `fan`, the index of the originating cone
    /// in the ambient fan (`None` for the added boundary cones).
    pub cone_origin: Vec<Option<usize>>,
    /// Indices of the two fiber rays in `fan`.
    pub fiber_rays: Vec<usize>,
}

/// Split a complete two-dimensional fan along a partition of its maximal
/// cones; each group must form a contiguous run bounded by a pair of
/// opposite rays, and is compactified by a trivial side over infinity
/// whose generic fiber is the boundary ray pair.
pub fn subfan_split(fan: &Fan, grouping: &[Vec<usize>]) -> Result<Vec<SubfanPart>> {
    if fan.dim != 2 {
        return Err(Error::InvalidInput(
            "subfan decomposition implemented in dimension two".into(),
        ));
    }
    let mut seen = vec![false; fan.max_cones.len()];
    for g in grouping {
        for &c in g {
            if c >= fan.max_cones.len() || seen[c] {
                return Err(Error::InvalidInput("grouping is not a partition".into()));
            }
            seen[c] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput("grouping is not a partition".into()));
    }
    let mut out = Vec::new();
    for (gi, g) in grouping.iter().enumerate() {
        if g.len() == fan.max_cones.len() {
            // Trivial grouping: the completion is the fan itself.
            out.push(SubfanPart {
                fan: fan.clone(),
                direction: LatticeVector::zero(2),
                added_ray: None,
                cone_origin: (0..fan.max_cones.len()).map(Some).collect(),
                fiber_rays: vec![],
            });
            continue;
        }
        // Ray usage within the group: boundary rays appear once.
        let mut usage: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
        for &ci in g {
            for &r in &fan.max_cones[ci] {
                *usage.entry(r).or_insert(0) += 1;
            }
        }
        let boundary: Vec<usize> = usage
            .iter()
            .filter(|(_, &u)| u == 1)
            .map(|(&r, _)| r)
            .collect();
        if boundary.len() != 2 || fan.rays[boundary[0]] != fan.rays[boundary[1]].neg() {
            return Err(Error::NonCompactifiableGroup(gi));
        }
        let u_f = fan.rays[boundary[0]].clone();
        // Direction: primitive functional vanishing on the boundary pair
        // and nonnegative on the group rays.
        let mut v = LatticeVector(vec![-u_f.0[1].clone(), u_f.0[0].clone()]).primitive();
        let mut nonneg = true;
        let mut nonpos = true;
        for &r in usage.keys() {
            let p = v.dot(&fan.rays[r]);
            if p.is_negative() {
                nonneg = false;
            }
            if p.is_positive() {
                nonpos = false;
            }
        }
        if !nonneg && nonpos {
            v = v.neg();
        } else if !nonneg {
            return Err(Error::NonCompactifiableGroup(gi));
        }
        let w = lattice_partner(&v, &u_f)?;
        let added = w.neg();
        let mut rays: Vec<LatticeVector> = Vec::new();
        let mut ray_map: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
        for &ci in g {
            for &r in &fan.max_cones[ci] {
                if let std::collections::btree_map::Entry::Vacant(e) = ray_map.entry(r) {
                    e.insert(rays.len());
                    rays.push(fan.rays[r].clone());
                }
            }
        }
        if rays.contains(&added) {
            return Err(Error::NonCompactifiableGroup(gi));
        }
        rays.push(added.clone());
        let added_idx = rays.len() - 1;
        let mut max_cones: Vec<Vec<usize>> = Vec::new();
        let mut cone_origin: Vec<Option<usize>> = Vec::new();
        for &ci in g {
            max_cones.push(fan.max_cones[ci].iter().map(|r| ray_map[r]).collect());
            cone_origin.push(Some(ci));
        }
        // Two boundary cones over infinity, ordered clockwise like the
        // normal-fan convention.
        for b in &boundary {
            max_cones.push(ordered_cw(&rays, ray_map[b], added_idx));
            cone_origin.push(None);
        }
        let part_fan = Fan::new(rays, max_cones, 2)?;
        if !part_fan.is_complete() {
            return Err(Error::NonCompactifiableGroup(gi));
        }
        let fiber_rays = vec![ray_map[&boundary[0]], ray_map[&boundary[1]]];
        out.push(SubfanPart {
            fan: part_fan,
            direction: v,
            added_ray: Some(added_idx),
            cone_origin,
            fiber_rays,
        });
    }
    Ok(out)
}

/// Order the two-ray cone clockwise (negative determinant), matching the
/// normal fan convention for residue signs.
fn ordered_cw(rays: &[LatticeVector], a: usize, b: usize) -> Vec<usize> {
    let det = &rays[a].0[0] * &rays[b].0[1] - &rays[a].0[1] * &rays[b].0[0];
    if det.is_negative() {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// Find a lattice vector `w` with `<v, w> = 1`, reduced modulo the fiber
/// direction so the choice is deterministic.
fn lattice_partner(v: &LatticeVector, fiber: &LatticeVector) -> Result<LatticeVector> {
    let (g, x, y) = ext_gcd(&v.0[0], &v.0[1]);
    if !g.abs().is_one() {
        return Err(Error::InvalidInput(
            "direction functional is not primitive".into(),
        ));
    }
    let sign = if g.is_negative() { -Int::one() } else { Int::one() };
    let mut w = LatticeVector(vec![&x * &sign, &y * &sign]);
    let ff = fiber.dot(fiber);
    let q = Rat::new(w.dot(fiber), ff).round().to_integer();
    w = LatticeVector(w.0.iter().zip(&fiber.0).map(|(a, b)| a - b * &q).collect());
    debug_assert!(v.dot(&w).is_one());
    Ok(w)
}

fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if b.is_zero() {
        return (a.clone(), Int::one(), Int::zero());
    }
    let (g, x, y) = ext_gcd(b, &(a % b));
    let q = a / b;
    (g, y.clone(), x - q * y)
}

/// The fan of the product with the projective line: rays gain a zero last
/// coordinate, plus the two poles; cones are products.
pub fn product_with_p1(fan: &Fan) -> Fan {
    let n = fan.dim;
    let mut rays: Vec<LatticeVector> = fan
        .rays
        .iter()
        .map(|r| {
            let mut c = r.0.clone();
            c.push(Int::zero());
            LatticeVector(c)
        })
        .collect();
    let mut up = vec![Int::zero(); n];
    up.push(Int::one());
    rays.push(LatticeVector(up));
    let zero_pole = rays.len() - 1;
    let mut down = vec![Int::zero(); n];
    down.push(-Int::one());
    rays.push(LatticeVector(down));
    let inf_pole = rays.len() - 1;
    let mut max_cones = Vec::new();
    for c in &fan.max_cones {
        let mut up_cone = c.clone();
        up_cone.push(zero_pole);
        max_cones.push(up_cone);
        let mut down_cone = c.clone();
        down_cone.push(inf_pole);
        max_cones.push(down_cone);
    }
    Fan {
        rays,
        max_cones,
        dim: n + 1,
    }
}

/// Fan of the projective line.
pub fn p1_fan() -> Fan {
    Fan::new(
        vec![LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])],
        vec![vec![0], vec![1]],
        1,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn hexagon() -> LatticePolytope {
        convex_hull(
            &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    /// The blown-up del Pezzo compactification in the presentation with
    /// rays w1..w7 and cyclic maximal cones.
    fn w_fan() -> Fan {
        let rays = vec![
            lv(&[1, 0]),
            lv(&[1, 1]),
            lv(&[0, 1]),
            lv(&[-1, 1]),
            lv(&[-1, 0]),
            lv(&[-1, -1]),
            lv(&[0, -1]),
        ];
        let cones = (0..7).map(|i| vec![i, (i + 1) % 7]).collect();
        Fan::new(rays, cones, 2).unwrap()
    }

    #[test]
    fn face_fan_square() {
        let p = convex_hull(
            &[[1, 1], [1, -1], [-1, 1], [-1, -1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let f = face_fan(&p).unwrap();
        assert_eq!(f.max_cones.len(), 4);
        assert!(f.is_complete());
    }

    #[test]
    fn face_fan_hexagon_is_smooth_complete() {
        let f = face_fan(&hexagon()).unwrap();
        assert_eq!(f.max_cones.len(), 6);
        assert!(f.is_smooth());
        assert!(f.is_complete());
    }

    #[test]
    fn face_fan_polytope_82_has_ten_cones() {
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
        assert_eq!(f.max_cones.len(), 10);
    }

    #[test]
    fn normal_fan_of_hexagon() {
        let f = normal_fan(&hexagon()).unwrap();
        let mut rays = f.rays.clone();
        rays.sort();
        let mut expect = vec![
            lv(&[1, 0]),
            lv(&[-1, 0]),
            lv(&[0, 1]),
            lv(&[0, -1]),
            lv(&[1, -1]),
            lv(&[-1, 1]),
        ];
        expect.sort();
        assert_eq!(rays, expect);
        assert_eq!(f.max_cones.len(), 6);
        assert!(f.is_smooth());
        assert!(f.is_complete());
        // Clockwise generator order at every vertex cone.
        for c in &f.max_cones {
            let a = &f.rays[c[0]];
            let b = &f.rays[c[1]];
            let det = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
            assert_eq!(det, Int::from(-1));
        }
    }

    #[test]
    fn normal_fan_simplex_and_square() {
        let simplex = convex_hull(
            &[[0, 0], [1, 0], [0, 1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let f = normal_fan(&simplex).unwrap();
        let mut rays = f.rays.clone();
        rays.sort();
        let mut expect = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
        expect.sort();
        assert_eq!(rays, expect);

        let square = convex_hull(
            &[[0, 0], [1, 0], [0, 1], [1, 1]]
                .iter()
                .map(|v| lv(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let f = normal_fan(&square).unwrap();
        assert_eq!(f.max_cones.len(), 4);
        assert!(f.is_smooth());
    }

    #[test]
    fn face_fan_rays_match_normal_fan_of_dual() {
        // On a reflexive polytope the face fan and the normal fan of the
        // polar dual share their ray sets.
        for p in [
            hexagon(),
            convex_hull(
                &[[1, 0], [0, 1], [1, 1], [-1, -1]]
                    .iter()
                    .map(|v| lv(v))
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        ] {
            let ff = face_fan(&p).unwrap();
            let dual = crate::polytope::polar_dual(&p).unwrap();
            let nf = normal_fan(&dual).unwrap();
            let mut a = ff.rays.clone();
            a.sort();
            let mut b = nf.rays.clone();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn star_subdivision_of_a_wall_in_a_threefold() {
        // Subdividing a two-dimensional cone splits each containing
        // maximal cone in two.
        let base = crate::fan::product_with_p1(&Fan::new(
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1]), lv(&[1, 1])],
            vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]],
            2,
        )
        .unwrap());
        assert_eq!(base.max_cones.len(), 8);
        let e_ray = base.ray_index(&lv(&[1, 1, 0])).unwrap();
        let pole = base.ray_index(&lv(&[0, 0, 1])).unwrap();
        let sub = star_subdivide(&base, &[e_ray, pole]).unwrap();
        assert_eq!(sub.rays.len(), base.rays.len() + 1);
        assert_eq!(sub.max_cones.len(), 10);
        assert!(sub.is_smooth());
        assert!(sub.is_complete());
    }

    #[test]
    fn star_subdivision_counts() {
        let f = w_fan();
        let c0 = f.max_cones[0].clone();
        let sub = star_subdivide(&f, &c0).unwrap();
        assert_eq!(sub.rays.len(), 8);
        assert_eq!(sub.max_cones.len(), 8);
        assert!(sub.is_smooth());
        assert!(sub.is_complete());
        // Subdividing a ray changes nothing.
        let same = star_subdivide(&f, &[3]).unwrap();
        assert_eq!(same, f);
        // A pair of rays spanning no cone of the fan.
        assert!(matches!(star_subdivide(&f, &[0, 3]), Err(Error::ConeNotInFan)));
    }

    #[test]
    fn star_subdivision_builds_blown_up_s6() {
        // Subdividing the vertex cone of the hexagon's normal fan at
        // (-1,-1) adds the ray (1,1) and preserves smooth completeness.
        let p = hexagon();
        let s6 = normal_fan(&p).unwrap();
        let vi = p
            .vertices
            .iter()
            .position(|v| v == &crate::polytope::to_rat_point(&lv(&[-1, -1])))
            .unwrap();
        let cone = s6.max_cones[vi].clone();
        let sub = star_subdivide(&s6, &cone).unwrap();
        assert_eq!(sub.rays.len(), 7);
        assert!(sub.ray_index(&lv(&[1, 1])).is_some());
        assert!(sub.is_smooth());
        assert!(sub.is_complete());
    }

    #[test]
    fn classification_of_w_fan() {
        // First coordinate: w1, w2 over 0; w4, w5, w6 over infinity;
        // w3, w7 in the fiber.
        let f = w_fan();
        let proj = classify_projection(&f, &lv(&[1, 0])).unwrap();
        assert_eq!(proj.rays_over_zero(), vec![0, 1]);
        assert_eq!(proj.rays_over_inf(), vec![3, 4, 5]);
        assert_eq!(proj.fiber_rays(), vec![2, 6]);
    }

    #[test]
    fn classification_of_product() {
        let prod = product_with_p1(&p1_fan());
        let proj = classify_projection(&prod, &lv(&[0, 1])).unwrap();
        assert_eq!(proj.rays_over_zero().len(), 1);
        assert_eq!(proj.rays_over_inf().len(), 1);
        assert_eq!(proj.fiber_rays().len(), 2);
    }

    #[test]
    fn classification_rejects_straddling_cones() {
        let prod = product_with_p1(&p1_fan());
        assert!(matches!(
            classify_projection(&prod, &lv(&[1, 1])),
            Err(Error::NotAFibration)
        ));
    }

    #[test]
    fn subfan_split_groups() {
        let f = w_fan();
        let parts = subfan_split(&f, &[vec![0, 1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(parts.len(), 2);
        let bl2 = &parts[0];
        assert_eq!(bl2.fan.rays.len(), 6);
        assert_eq!(bl2.fan.max_cones.len(), 6);
        assert!(bl2.fan.is_smooth());
        assert!(bl2.fan.is_complete());
        let mut rays = bl2.fan.rays.clone();
        rays.sort();
        let mut expect = vec![
            lv(&[1, 0]),
            lv(&[1, 1]),
            lv(&[0, 1]),
            lv(&[-1, 1]),
            lv(&[-1, 0]),
            lv(&[0, -1]),
        ];
        expect.sort();
        assert_eq!(rays, expect);
        assert_eq!(bl2.direction, lv(&[0, 1]));

        let bl1 = &parts[1];
        assert_eq!(bl1.fan.rays.len(), 5);
        assert!(bl1.fan.is_smooth());
        assert!(bl1.fan.is_complete());
        assert_eq!(bl1.direction, lv(&[0, -1]));
        let fr: Vec<LatticeVector> = bl1
            .fiber_rays
            .iter()
            .map(|&i| bl1.fan.rays[i].clone())
            .collect();
        assert!(fr.contains(&lv(&[1, 0])) && fr.contains(&lv(&[-1, 0])));
    }

    #[test]
    fn subfan_split_trivial_group() {
        let f = w_fan();
        let parts = subfan_split(&f, &[(0..7).collect()]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].fan, f);
    }

    #[test]
    fn subfan_split_rejects_bad_group() {
        let f = w_fan();
        assert!(matches!(
            subfan_split(&f, &[vec![0, 2], vec![1, 3, 4, 5, 6]]),
            Err(Error::NonCompactifiableGroup(0))
        ));
    }
}
