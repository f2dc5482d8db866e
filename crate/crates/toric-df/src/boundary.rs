//! Toric compactifications of the mirror torus adapted to a potential:
//! the Delzant container, the base-point subdivisions, per-fixed-point
//! residue data, the assembled boundary decomposition of the invariant,
//! and the vanishing diagnostic for anticanonical multiples.
//!
//! The fixed points of the container's normal fan correspond to its
//! vertices; on the degree-six hexagon they carry the cyclic labels
//! `p1..p6` of the boundary curves, and base-point blowups split a label
//! into a primed pair ordered along the boundary walk.

use crate::error::{Error, Result};
use crate::fan::{normal_fan, star_subdivide, Fan};
use crate::lattice::LatticeVector;
use crate::lg::{LGPotential, ScaledRat, Section};
use crate::num::{Int, Rat};
use crate::polytope::{edge_lattice_restriction, edges, to_rat_point, LatticePolytope};
use crate::testconfig::ToricTestConfiguration;
use num_traits::{One, Signed, Zero};

/// Where a maximal cone of the compactification fan comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeOrigin {
    /// Dual to an original vertex of the container.
    Vertex { vertex: usize },
    /// Created by blowing up a base point at the given container vertex;
    /// carries the container edge used for boundary limits and the ray of
    /// the container facet it retains.
    Exceptional {
        parent_vertex: usize,
        limit_edge: (usize, usize),
        side: ExceptionalSide,
    },
}

/// Which boundary curve through the blown-up point the limit runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalSide {
    /// Along the incoming boundary curve (the primed point).
    Incoming,
    /// Along the outgoing boundary curve (the double-primed point).
    Outgoing,
}

/// A smooth toric compactification of the mirror torus through which the
/// potential extends with base-point-free boundary data.
#[derive(Debug, Clone)]
pub struct Compactification {
    pub container: LatticePolytope,
    pub container_tag: String,
    pub fan: Fan,
    pub cone_origins: Vec<ConeOrigin>,
    /// Container vertex indices that carried base points (in blowup order).
    pub subdivided_at: Vec<usize>,
}

impl Compactification {
    /// Human-readable label of a fixed point: hexagon labels on the
    /// degree-six container, vertex coordinates otherwise.
    pub fn point_label(&self, cone: usize) -> String {
        match &self.cone_origins[cone] {
            ConeOrigin::Vertex { vertex } => self.vertex_label(*vertex),
            ConeOrigin::Exceptional {
                parent_vertex,
                side,
                ..
            } => {
                let base = self.vertex_label(*parent_vertex);
                match side {
                    ExceptionalSide::Incoming => format!("{base}'"),
                    ExceptionalSide::Outgoing => format!("{base}''"),
                }
            }
        }
    }

    fn vertex_label(&self, vertex: usize) -> String {
        let v = &self.container.vertices[vertex];
        if let Some(lv) = crate::polytope::to_lattice_vector(v) {
            if let Some(name) = crate::corpus::s6_vertex_label(&lv) {
                return name.to_string();
            }
        }
        format!("v{vertex}")
    }

    /// Label of a container vertex (used for blowup records).
    pub fn point_label_of_vertex(&self, vertex: usize) -> String {
        self.vertex_label(vertex)
    }
}

/// Leading coefficient of the section at the corner of its support picked
/// out by a cone: the sum of coefficients over exponents minimising the
/// pairing against every generator simultaneously. Nonzero iff the closure
/// of the section's zero locus misses the fixed point of the cone.
pub fn corner_value(section: &Section, fan: &Fan, cone: usize) -> Option<ScaledRat> {
    let gens: Vec<&LatticeVector> = fan.max_cones[cone]
        .iter()
        .map(|&ri| &fan.rays[ri])
        .collect();
    if section.is_empty() {
        return None;
    }
    let mut minima: Vec<Int> = Vec::with_capacity(gens.len());
    for g in &gens {
        minima.push(
            section
                .iter()
                .map(|(m, _)| m.dot(g))
                .min()
                .expect("nonempty section"),
        );
    }
    // Corner terms at the dominant scale. Distinct scales cannot cancel
    // for rational data (linear independence of the exponentials), so the
    // leading-scale sum decides vanishing.
    let mut acc: Option<ScaledRat> = None;
    for (m, c) in section {
        if gens
            .iter()
            .zip(&minima)
            .all(|(g, min)| &m.dot(g) == min)
        {
            acc = Some(match acc {
                None => c.clone(),
                Some(prev) => {
                    if prev.log == c.log {
                        ScaledRat::new(prev.log, prev.man + c.man.clone())
                    } else if prev.log > c.log {
                        prev
                    } else {
                        c.clone()
                    }
                }
            });
        }
    }
    acc.filter(|c| !c.is_zero())
}

/// Order of vanishing of the potential along the divisor of a ray:
/// the minimum exponent pairing. This is the residue of the logarithmic
/// connection `d + dlog W` along that divisor.
pub fn connection_residue(w_terms: &Section, ray: &LatticeVector) -> Int {
    w_terms
        .iter()
        .map(|(m, _)| m.dot(ray))
        .min()
        .expect("nonempty potential")
}

/// Sign of the residue volume form at a fixed point: the determinant of
/// the cone generators in their stored order.
pub fn omega0_sign(fan: &Fan, cone: usize) -> Result<Int> {
    let c = &fan.max_cones[cone];
    if c.len() != fan.dim {
        return Err(Error::NonSmoothCone);
    }
    let rows: Vec<LatticeVector> = c.iter().map(|&ri| fan.rays[ri].clone()).collect();
    let det = crate::lattice::LatticeMatrix::from_rows(&rows).det();
    if !det.abs().is_one() {
        return Err(Error::NonSmoothCone);
    }
    Ok(det)
}

/// Build the compactification of the potential's torus: Delzant container
/// of the exponents, normal fan, then repeated star subdivision at every
/// fixed point lying on the closure of the zero locus until none remain.
pub fn build_compactification(w: &LGPotential) -> Result<Compactification> {
    let (container, container_tag) = crate::polytope::delzant_container(&w.exponents())?;
    let fan = normal_fan(&container)?;
    let mut origins: Vec<ConeOrigin> = (0..fan.max_cones.len())
        .map(|vertex| ConeOrigin::Vertex { vertex })
        .collect();
    let mut fan = fan;
    let mut subdivided = Vec::new();
    let container_edges = edges(&container);
    let mut budget = 16usize;
    loop {
        let mut base_cone: Option<usize> = None;
        for ci in 0..fan.max_cones.len() {
            if corner_value(&w.terms, &fan, ci).is_none() {
                base_cone = Some(ci);
                break;
            }
        }
        let Some(ci) = base_cone else {
            break;
        };
        if budget == 0 {
            return Err(Error::SubdivisionBudgetExceeded);
        }
        budget -= 1;
        let ConeOrigin::Vertex { vertex } = origins[ci].clone() else {
            // A base point persisting on an exceptional cone would need a
            // deeper (non-fixed-point) modification; the potentials in
            // scope separate after one round.
            return Err(Error::SubdivisionBudgetExceeded);
        };
        // The two container edges through the vertex, in the cyclic walk:
        // cone generators are (outgoing facet normal, incoming facet
        // normal); the new cone keeping the outgoing normal borders the
        // outgoing curve.
        let cone_rays = fan.max_cones[ci].clone();
        assert_eq!(cone_rays.len(), 2, "base point blowups run on surfaces");
        let before = fan.rays.len();
        fan = star_subdivide(&fan, &cone_rays)?;
        if fan.rays.len() != before + 1 {
            return Err(Error::SubdivisionBudgetExceeded);
        }
        let new_ray = before;
        // Rebuild the origin table: the subdivided cone splits into two in
        // place (star subdivision replaces it by [g1, s], [s, g2] at the
        // same position block).
        let mut new_origins = Vec::with_capacity(fan.max_cones.len());
        let incoming_edge = container_edges
            .iter()
            .find(|&&(a, b)| {
                let n = container.vertices.len();
                // Edge from vertex-1 to vertex in the ccw walk.
                let prev = (vertex + n - 1) % n;
                (a.min(b), a.max(b)) == (prev.min(vertex), prev.max(vertex))
            })
            .copied()
            .ok_or(Error::NotAnEdge)?;
        let outgoing_edge = container_edges
            .iter()
            .find(|&&(a, b)| {
                let n = container.vertices.len();
                let next = (vertex + 1) % n;
                (a.min(b), a.max(b)) == (vertex.min(next), vertex.max(next))
            })
            .copied()
            .ok_or(Error::NotAnEdge)?;
        for (new_ci, cone) in fan.max_cones.iter().enumerate() {
            if !cone.contains(&new_ray) {
                // Shifted copy of an old cone: find its original index.
                let old_idx = old_cone_index(new_ci, ci);
                new_origins.push(origins[old_idx].clone());
                continue;
            }
            // One of the two children: the one retaining the outgoing
            // facet normal (stored first in the parent) borders the
            // outgoing boundary curve.
            let keeps_first = cone.contains(&cone_rays[0]);
            let o = if keeps_first {
                ConeOrigin::Exceptional {
                    parent_vertex: vertex,
                    limit_edge: outgoing_edge,
                    side: ExceptionalSide::Outgoing,
                }
            } else {
                ConeOrigin::Exceptional {
                    parent_vertex: vertex,
                    limit_edge: incoming_edge,
                    side: ExceptionalSide::Incoming,
                }
            };
            new_origins.push(o);
        }
        origins = new_origins;
        subdivided.push(vertex);
    }
    Ok(Compactification {
        container,
        container_tag,
        fan,
        cone_origins: origins,
        subdivided_at: subdivided,
    })
}

/// Index of the pre-subdivision cone corresponding to a post-subdivision
/// position, when the cone at `split` was replaced in place by two.
fn old_cone_index(new_idx: usize, split: usize) -> usize {
    if new_idx < split {
        new_idx
    } else {
        // new_idx == split or split + 1 are the children; anything later
        // shifts by one.
        new_idx - 1
    }
}

/// The ratio of two sections at a fixed point of the compactification:
/// the quotient of corner coefficients, computed through a boundary limit
/// along the recorded container edge at exceptional points.
pub fn ratio_at_fixed_point(
    numerator: &Section,
    denominator: &Section,
    comp: &Compactification,
    cone: usize,
) -> Result<ScaledRat> {
    match &comp.cone_origins[cone] {
        ConeOrigin::Vertex { vertex } => {
            let target = &comp.container.vertices[*vertex];
            let coeff_at = |sec: &Section| -> Option<ScaledRat> {
                sec.iter().find_map(|(m, c)| {
                    if &to_rat_point(m) == target {
                        Some(c.clone())
                    } else {
                        None
                    }
                })
            };
            let den = coeff_at(denominator).ok_or(Error::IndeterminateRatio)?;
            Ok(match coeff_at(numerator) {
                Some(num) => num.div(&den),
                None => ScaledRat::zero(),
            })
        }
        ConeOrigin::Exceptional {
            parent_vertex,
            limit_edge,
            ..
        } => {
            let num_terms =
                edge_lattice_restriction(&comp.container, numerator, *limit_edge, *parent_vertex)?;
            let den_terms = edge_lattice_restriction(
                &comp.container,
                denominator,
                *limit_edge,
                *parent_vertex,
            )?;
            let Some((d_ord, d_coeff)) = den_terms.first() else {
                return Err(Error::IndeterminateRatio);
            };
            let lowest_num = num_terms.first();
            match lowest_num {
                None => Ok(ScaledRat::zero()),
                Some((n_ord, n_coeff)) => {
                    if n_ord > d_ord {
                        Ok(ScaledRat::zero())
                    } else if n_ord == d_ord {
                        Ok(n_coeff.div(d_coeff))
                    } else {
                        // The limit diverges: the numerator pole dominates.
                        Err(Error::IndeterminateRatio)
                    }
                }
            }
        }
    }
}

/// Per fixed point residue data and the assembled decomposition.
#[derive(Debug, Clone)]
pub struct ResidueRow {
    pub cone: usize,
    pub label: String,
    pub group: usize,
    pub theta_tilde: ScaledRat,
    pub psi_tilde: ScaledRat,
    pub omega0_sign: Int,
    pub connection_residues: Vec<Int>,
    pub f_factor: Rat,
    pub term: Rat,
}

#[derive(Debug, Clone)]
pub struct ResidueReport {
    pub rows: Vec<ResidueRow>,
    pub group_totals: Vec<Rat>,
    pub total: Rat,
    pub df_intersection: Rat,
    pub boundary_remainder: Rat,
    pub container_tag: String,
    pub k: Rat,
    /// Distinct nonpositive integer residues of the logarithmic connection
    /// found along boundary divisors. The genericity conditions on the
    /// residue spectrum are countable constraints; these collisions are
    /// surfaced for review rather than resolved.
    pub nonpositive_integer_residues: Vec<Int>,
}

/// Assemble the boundary decomposition of the invariant over the torus
/// fixed points of the compactification: the per point term is
/// `(-1)^{n+1} theta~^n ((nc/(n+1)) theta~ - 1 + psi~) f(p)` with
/// `f(p)` the product of inverse connection residues along the divisors
/// through `p` (the squared residue form sign drops out). The grouping
/// only attributes points to parts; the grand total is grouping free.
pub fn residue_decomposition(
    tc: &ToricTestConfiguration,
    k: &Rat,
    comp: &Compactification,
    grouping: &[Vec<usize>],
) -> Result<ResidueReport> {
    let w = crate::lg::build_potential(tc, k);
    let theta = crate::lg::theta_class(tc, &w);
    let (psi, _) = crate::lg::psi_class(tc, &w);
    let n = tc.fiber_dim();
    let c = crate::testconfig::slope_constant(&tc.fiber_fan, &tc.fiber_polarisation)?;
    let factor = c * Rat::new(Int::from(n as i64), Int::from((n + 1) as i64));
    let sign = if (n + 1).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    let mut group_of = vec![usize::MAX; comp.fan.max_cones.len()];
    for (gi, g) in grouping.iter().enumerate() {
        for &ci in g {
            if ci >= group_of.len() || group_of[ci] != usize::MAX {
                return Err(Error::InvalidInput("grouping is not a partition".into()));
            }
            group_of[ci] = gi;
        }
    }
    if group_of.contains(&usize::MAX) {
        return Err(Error::InvalidInput("grouping is not a partition".into()));
    }
    let mut rows = Vec::new();
    let mut group_totals = vec![Rat::zero(); grouping.len()];
    let mut total = Rat::zero();
    for ci in 0..comp.fan.max_cones.len() {
        let theta_tilde = ratio_at_fixed_point(&theta, &w.terms, comp, ci)?;
        let psi_tilde = ratio_at_fixed_point(&psi, &w.terms, comp, ci)?;
        let th = theta_tilde
            .as_exact()
            .ok_or_else(|| Error::InvalidInput("theta ratio not exact at this scale".into()))?;
        let ps = psi_tilde
            .as_exact()
            .ok_or_else(|| Error::InvalidInput("psi ratio not exact at this scale".into()))?;
        let omega = omega0_sign(&comp.fan, ci)?;
        let residues: Vec<Int> = comp.fan.max_cones[ci]
            .iter()
            .map(|&ri| connection_residue(&w.terms, &comp.fan.rays[ri]))
            .collect();
        if residues.iter().any(|r| r.is_zero()) {
            return Err(Error::IndeterminateRatio);
        }
        let f_factor = residues
            .iter()
            .fold(Rat::one(), |acc, r| acc / Rat::from(r.clone()));
        let mut term = (&factor * &th - Rat::one() + &ps) * &sign * &f_factor;
        for _ in 0..n {
            term *= th.clone();
        }
        total += term.clone();
        group_totals[group_of[ci]] += term.clone();
        rows.push(ResidueRow {
            cone: ci,
            label: comp.point_label(ci),
            group: group_of[ci],
            theta_tilde,
            psi_tilde,
            omega0_sign: omega,
            connection_residues: residues,
            f_factor,
            term,
        });
    }
    let df = crate::testconfig::df_intersection(tc)?;
    let boundary_remainder = &df - &total;
    let mut nonpositive_integer_residues: Vec<Int> = comp
        .fan
        .rays
        .iter()
        .map(|ray| connection_residue(&w.terms, ray))
        .filter(|r| !r.is_positive())
        .collect();
    nonpositive_integer_residues.sort();
    nonpositive_integer_residues.dedup();
    Ok(ResidueReport {
        rows,
        group_totals,
        total,
        df_intersection: df,
        boundary_remainder,
        container_tag: comp.container_tag.clone(),
        k: k.clone(),
        nonpositive_integer_residues,
    })
}

/// The trivial grouping with a single part.
pub fn single_group(comp: &Compactification) -> Vec<Vec<usize>> {
    vec![(0..comp.fan.max_cones.len()).collect()]
}

#[derive(Debug, Clone)]
pub struct VanishingRow {
    pub k: Rat,
    pub residual: Rat,
}

#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub proportionality: Rat,
    pub rows: Vec<VanishingRow>,
    pub non_increasing: bool,
    pub final_within_tolerance: bool,
}

/// Vanishing diagnostic for anticanonical multiples: the defect between
/// the intersection invariant and the boundary decomposition total,
/// tracked over a list of scales. Gate: the polarisation class must be a
/// positive multiple of the potential termwise.
pub fn vanishing_check(
    tc: &ToricTestConfiguration,
    k_list: &[Rat],
    tolerance: &Rat,
) -> Result<VanishingReport> {
    if k_list.is_empty() {
        return Err(Error::InvalidInput("empty scale list".into()));
    }
    let w0 = crate::lg::build_potential(tc, &k_list[0]);
    let proportionality = crate::lg::theta_proportionality(tc, &w0)?;
    let mut rows = Vec::new();
    for k in k_list {
        let w = crate::lg::build_potential(tc, k);
        let comp = build_compactification(&w)?;
        let report = residue_decomposition(tc, k, &comp, &single_group(&comp))?;
        rows.push(VanishingRow {
            k: k.clone(),
            residual: report.boundary_remainder.abs(),
        });
    }
    let non_increasing = rows.windows(2).all(|w| w[0].residual >= w[1].residual);
    let final_within_tolerance = rows.last().map(|r| &r.residual <= tolerance).unwrap_or(false);
    Ok(VanishingReport {
        proportionality,
        rows,
        non_increasing,
        final_within_tolerance,
    })
}
