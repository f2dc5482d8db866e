//! Lattice polytopes: hulls, facets, polar duality, reflexivity, Delzant
//! containers, normalized volumes and lattice point enumeration.
//!
//! Vertices are stored with exact rational coordinates so that polar duals
//! of non-reflexive polytopes stay representable; facet normals are always
//! primitive integer vectors pointing inward, with the polytope cut out by
//! `<m, u_F> >= -a_F`.

use crate::error::{Error, Result};
use crate::lattice::{LatticeMatrix, LatticeVector};
use crate::num::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type RatPoint = Vec<Rat>;

pub fn to_rat_point(v: &LatticeVector) -> RatPoint {
    v.0.iter().map(|c| Rat::from(c.clone())).collect()
}

pub fn to_lattice_vector(p: &RatPoint) -> Option<LatticeVector> {
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(LatticeVector(out))
}

fn dot_ri(p: &RatPoint, u: &LatticeVector) -> Rat {
    p.iter()
        .zip(&u.0)
        .map(|(a, b)| a * Rat::from(b.clone()))
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// A facet `{ m : <m, normal> >= -offset }` together with the incident
/// vertices.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Rat,
    pub vertex_indices: Vec<usize>,
}

/// A convex polytope with exact rational vertices. `dim` is the dimension
/// of the affine hull; facet data is only populated for full-dimensional
/// polytopes.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    pub vertices: Vec<RatPoint>,
    pub facets: Vec<Facet>,
    pub dim: usize,
    pub ambient_dim: usize,
}

impl LatticePolytope {
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|c| c.is_integer()))
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices.iter().map(to_lattice_vector).collect()
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        assert!(self.is_full_dimensional(), "containment needs facet data");
        self.facets
            .iter()
            .all(|f| dot_ri(p, &f.normal) >= -f.offset.clone())
    }

    /// Strict interiority with respect to every facet.
    pub fn contains_interior(&self, p: &RatPoint) -> bool {
        assert!(self.is_full_dimensional(), "containment needs facet data");
        self.facets
            .iter()
            .all(|f| dot_ri(p, &f.normal) > -f.offset.clone())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_positive())
    }
}

fn affine_rank(points: &[RatPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    // Scale differences to integers and take the rank.
    let mut rows: Vec<LatticeVector> = Vec::new();
    for p in &points[1..] {
        let diff: Vec<Rat> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let lcm = diff
            .iter()
            .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let row: Vec<Int> = diff
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        rows.push(LatticeVector(row));
    }
    crate::lattice::rank(&LatticeMatrix::from_rows(&rows))
}

/// Convex hull of rational points in ambient dimension 1, 2 or 3.
/// Lower-dimensional hulls are allowed; they carry vertices but no facets.
pub fn convex_hull_rational(points: &[RatPoint]) -> Result<LatticePolytope> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point list".into()));
    }
    let ambient = points[0].len();
    if points.iter().any(|p| p.len() != ambient) {
        return Err(Error::InvalidInput("ragged point list".into()));
    }
    let mut pts: Vec<RatPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let dim = affine_rank(&pts);
    if dim == 0 {
        return Ok(LatticePolytope {
            vertices: vec![pts[0].clone()],
            facets: vec![],
            dim: 0,
            ambient_dim: ambient,
        });
    }
    if dim < ambient {
        // Lower-dimensional: report extreme points only. For a segment this
        // is the pair of endpoints; in general filter by repeated extremity
        // along the coordinate directions of the affine hull.
        let vertices = lower_dimensional_vertices(&pts, dim);
        return Ok(LatticePolytope {
            vertices,
            facets: vec![],
            dim,
            ambient_dim: ambient,
        });
    }
    match ambient {
        1 => hull_1d(&pts),
        2 => hull_2d(&pts),
        3 => hull_3d(&pts),
        d => Err(Error::InvalidInput(format!(
            "convex hull not implemented in ambient dimension {d}"
        ))),
    }
}

/// Convex hull of lattice points.
pub fn convex_hull(points: &[LatticeVector]) -> Result<LatticePolytope> {
    let pts: Vec<RatPoint> = points.iter().map(to_rat_point).collect();
    convex_hull_rational(&pts)
}

fn lower_dimensional_vertices(pts: &[RatPoint], dim: usize) -> Vec<RatPoint> {
    if dim == 1 {
        // Endpoints of the segment: extremes along the direction.
        let dir: Vec<Rat> = pts
            .last()
            .unwrap()
            .iter()
            .zip(&pts[0])
            .map(|(a, b)| a - b)
            .collect();
        let key = |p: &RatPoint| -> Rat {
            p.iter()
                .zip(&dir)
                .map(|(a, d)| a * d)
                .fold(Rat::zero(), |acc, t| acc + t)
        };
        let min = pts.iter().min_by_key(|p| key(p)).unwrap().clone();
        let max = pts.iter().max_by_key(|p| key(p)).unwrap().clone();
        if min == max {
            vec![min]
        } else {
            vec![min, max]
        }
    } else {
        // Rare in this artifact; report the deduplicated points.
        pts.to_vec()
    }
}

fn hull_1d(pts: &[RatPoint]) -> Result<LatticePolytope> {
    let min = pts.iter().min().unwrap().clone();
    let max = pts.iter().max().unwrap().clone();
    let facets = vec![
        Facet {
            normal: LatticeVector::from_i64(&[1]),
            offset: -min[0].clone(),
            vertex_indices: vec![0],
        },
        Facet {
            normal: LatticeVector::from_i64(&[-1]),
            offset: max[0].clone(),
            vertex_indices: vec![1],
        },
    ];
    Ok(LatticePolytope {
        vertices: vec![min, max],
        facets,
        dim: 1,
        ambient_dim: 1,
    })
}

fn cross2(o: &RatPoint, a: &RatPoint, b: &RatPoint) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone chain; returns vertices in counterclockwise order.
fn hull_2d(pts: &[RatPoint]) -> Result<LatticePolytope> {
    let mut sorted = pts.to_vec();
    sorted.sort();
    let mut lower: Vec<RatPoint> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2
            && !cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatPoint> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && !cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let vertices = lower;
    let n = vertices.len();
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        // Inward normal of the directed edge a -> b in ccw order.
        let dx = &b[0] - &a[0];
        let dy = &b[1] - &a[1];
        let scale = dx.denom().lcm(dy.denom());
        let normal = LatticeVector(vec![
            -(dy.numer() * (&scale / dy.denom())),
            dx.numer() * (&scale / dx.denom()),
        ])
        .primitive();
        let offset = -dot_ri(a, &normal);
        facets.push(Facet {
            normal,
            offset,
            vertex_indices: vec![i, (i + 1) % n],
        });
    }
    Ok(LatticePolytope {
        vertices,
        facets,
        dim: 2,
        ambient_dim: 2,
    })
}

fn sub3(a: &RatPoint, b: &RatPoint) -> [Rat; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross3(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn hull_3d(pts: &[RatPoint]) -> Result<LatticePolytope> {
    let k = pts.len();
    // Candidate facet planes from all triples; keep planes with all points
    // weakly on the inner side.
    let mut planes: Vec<(LatticeVector, Rat)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let n = cross3(&sub3(&pts[j], &pts[i]), &sub3(&pts[l], &pts[i]));
                if n.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let scale = n
                    .iter()
                    .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
                let mut normal = LatticeVector(
                    n.iter()
                        .map(|c| c.numer() * (&scale / c.denom()))
                        .collect::<Vec<Int>>(),
                )
                .primitive();
                let mut c = dot_ri(&pts[i], &normal);
                let mut pos = false;
                let mut neg = false;
                for p in pts {
                    let d = dot_ri(p, &normal) - c.clone();
                    if d.is_positive() {
                        pos = true;
                    } else if d.is_negative() {
                        neg = true;
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                // Orient inward: all remaining points have <p, n> >= c.
                if neg {
                    normal = normal.neg();
                    c = -c;
                }
                let entry = (normal, -c);
                if !planes.contains(&entry) {
                    planes.push(entry);
                }
            }
        }
    }
    // Vertices: points whose active facets span rank 3.
    let mut vertices: Vec<RatPoint> = Vec::new();
    for p in pts {
        let active: Vec<LatticeVector> = planes
            .iter()
            .filter(|(u, a)| dot_ri(p, u) == -a.clone())
            .map(|(u, _)| u.clone())
            .collect();
        if active.len() >= 3 && crate::lattice::rank(&LatticeMatrix::from_rows(&active)) == 3 {
            vertices.push(p.clone());
        }
    }
    vertices.sort();
    vertices.dedup();
    let facets = planes
        .into_iter()
        .map(|(normal, offset)| {
            let vertex_indices: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| dot_ri(v, &normal) == -offset.clone())
                .map(|(i, _)| i)
                .collect();
            Facet {
                normal,
                offset,
                vertex_indices,
            }
        })
        .collect();
    Ok(LatticePolytope {
        vertices,
        facets,
        dim: 3,
        ambient_dim: 3,
    })
}

/// Polar dual `P° = { u : <m, u> >= -1 for all m in P }`. Requires the
/// origin strictly interior. Vertices of `P°` are the points `u_F / a_F`,
/// lattice points exactly when `P` is reflexive.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let duals: Vec<RatPoint> = p
        .facets
        .iter()
        .map(|f| {
            f.normal
                .0
                .iter()
                .map(|c| Rat::from(c.clone()) / f.offset.clone())
                .collect()
        })
        .collect();
    convex_hull_rational(&duals)
}

/// A full-dimensional polytope with interior origin is reflexive when all
/// facet offsets equal one (equivalently, the polar dual is again a lattice
/// polytope).
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool> {
    if !p.is_full_dimensional() || !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    Ok(p.facets.iter().all(|f| f.offset.is_one()))
}

/// Triangulate the boundary viewed from `vertices[0]` and sum simplex
/// determinants: the normalized volume (`n!` times the Euclidean one),
/// an exact integer for lattice polytopes.
pub fn normalized_volume(p: &LatticePolytope) -> Int {
    let v = euclidean_volume_times_factorial(p);
    assert!(v.is_integer(), "normalized volume of a lattice polytope");
    v.to_integer()
}

/// `n! * vol(P)` as an exact rational (rational vertices allowed).
/// Fan triangulation from the first vertex over the facets avoiding it.
pub fn euclidean_volume_times_factorial(p: &LatticePolytope) -> Rat {
    assert!(p.is_full_dimensional(), "volume needs full dimension");
    let n = p.dim;
    let apex = &p.vertices[0];
    let diff = |a: &RatPoint| -> RatPoint { a.iter().zip(apex).map(|(x, y)| x - y).collect() };
    let mut total = Rat::zero();
    for f in &p.facets {
        if f.vertex_indices.contains(&0) {
            continue;
        }
        let vs: Vec<&RatPoint> = f.vertex_indices.iter().map(|&i| &p.vertices[i]).collect();
        match n {
            1 => total += diff(vs[0])[0].abs(),
            2 => total += rational_det(&[diff(vs[0]), diff(vs[1])]).abs(),
            3 => {
                let ordered = order_facet_vertices(&vs, &f.normal, 3);
                for w in 1..ordered.len() - 1 {
                    total += rational_det(&[
                        diff(ordered[0]),
                        diff(ordered[w]),
                        diff(ordered[w + 1]),
                    ])
                    .abs();
                }
            }
            _ => panic!("volume supports dimension <= 3"),
        }
    }
    total
}

/// Order the vertices of a facet cyclically (dimension 3) or as the pair
/// they are (dimension 2); needed for fan triangulation of the facet.
fn order_facet_vertices<'a>(
    vs: &[&'a RatPoint],
    normal: &LatticeVector,
    ambient: usize,
) -> Vec<&'a RatPoint> {
    if ambient < 3 || vs.len() <= 3 {
        return vs.to_vec();
    }
    // Project out the normal direction and sort by angle around the
    // centroid using exact cross-sign comparisons against the first ray.
    let k = vs.len();
    let centroid: RatPoint = (0..3)
        .map(|c| {
            vs.iter().map(|v| v[c].clone()).fold(Rat::zero(), |a, t| a + t)
                / Rat::from(Int::from(k as i64))
        })
        .collect();
    let n3: [Rat; 3] = [
        Rat::from(normal.0[0].clone()),
        Rat::from(normal.0[1].clone()),
        Rat::from(normal.0[2].clone()),
    ];
    let rays: Vec<[Rat; 3]> = vs
        .iter()
        .map(|v| sub3(v, &centroid))
        .collect();
    let mut idx: Vec<usize> = (0..k).collect();
    let ref_ray = rays[0].clone();
    let triple = |a: &[Rat; 3], b: &[Rat; 3]| -> Rat {
        let c = cross3(a, b);
        c.iter()
            .zip(&n3)
            .map(|(x, y)| x * y)
            .fold(Rat::zero(), |acc, t| acc + t)
    };
    let dotp = |a: &[Rat; 3], b: &[Rat; 3]| -> Rat {
        a.iter()
            .zip(b)
            .map(|(x, y)| x * y)
            .fold(Rat::zero(), |acc, t| acc + t)
    };
    // Half-plane split followed by cross-product comparisons.
    let half = |r: &[Rat; 3]| -> u8 {
        let t = triple(&ref_ray, r);
        if t.is_positive() || (t.is_zero() && dotp(&ref_ray, r).is_positive()) {
            0
        } else {
            1
        }
    };
    idx.sort_by(|&a, &b| {
        let (ha, hb) = (half(&rays[a]), half(&rays[b]));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let t = triple(&rays[a], &rays[b]);
        if t.is_positive() {
            std::cmp::Ordering::Less
        } else if t.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    idx.into_iter().map(|i| vs[i]).collect()
}

fn rational_det(rows: &[RatPoint]) -> Rat {
    let n = rows.len();
    match n {
        1 => rows[0][0].clone(),
        2 => &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0],
        3 => {
            let m = rows;
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
        _ => panic!("rational_det supports n <= 3"),
    }
}

/// Lattice surface measure of the boundary: for each facet with primitive
/// normal `u`, the Lebesgue measure divided by the covolume of the facet
/// hyperplane lattice. Computed exactly as `|det[edges; u]| / <u, u>`
/// summed over a triangulation of the facet, divided by `(n-1)!`.
pub fn boundary_lattice_volume(p: &LatticePolytope) -> Rat {
    assert!(p.is_full_dimensional());
    let n = p.dim;
    let mut total = Rat::zero();
    for f in &p.facets {
        total += facet_lattice_volume(p, f, n);
    }
    total
}

fn facet_lattice_volume(p: &LatticePolytope, f: &Facet, n: usize) -> Rat {
    let uu = Rat::from(f.normal.dot(&f.normal));
    let vs: Vec<&RatPoint> = f.vertex_indices.iter().map(|&i| &p.vertices[i]).collect();
    match n {
        1 => Rat::one(),
        2 => {
            let rows = vec![
                vs[1].iter().zip(vs[0].iter()).map(|(a, b)| a - b).collect(),
                f.normal.0.iter().map(|c| Rat::from(c.clone())).collect(),
            ];
            rational_det(&rows).abs() / uu
        }
        3 => {
            let ordered = order_facet_vertices(&vs, &f.normal, 3);
            let base = ordered[0];
            let mut acc = Rat::zero();
            for w in 1..ordered.len() - 1 {
                let rows = vec![
                    ordered[w].iter().zip(base).map(|(a, b)| a - b).collect(),
                    ordered[w + 1].iter().zip(base).map(|(a, b)| a - b).collect(),
                    f.normal.0.iter().map(|c| Rat::from(c.clone())).collect(),
                ];
                acc += rational_det(&rows).abs();
            }
            acc / (uu * Rat::from(Int::from(2)))
        }
        _ => panic!("facet lattice volume supports n <= 3"),
    }
}

/// All lattice points of a bounded polytope, in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Vec<LatticeVector> {
    if p.dim == 0 {
        return to_lattice_vector(&p.vertices[0]).into_iter().collect();
    }
    if !p.is_full_dimensional() {
        // Segment case: walk the primitive direction.
        if p.dim == 1 && p.vertices.len() == 2 {
            if let (Some(a), Some(b)) = (
                to_lattice_vector(&p.vertices[0]),
                to_lattice_vector(&p.vertices[1]),
            ) {
                let diff = LatticeVector(b.0.iter().zip(&a.0).map(|(x, y)| x - y).collect());
                let g = diff.content();
                let step = diff.primitive();
                let steps = g.to_i64().unwrap_or(0);
                let mut out = Vec::new();
                for s in 0..=steps {
                    out.push(LatticeVector(
                        a.0.iter()
                            .zip(&step.0)
                            .map(|(x, d)| x + d * Int::from(s))
                            .collect(),
                    ));
                }
                out.sort();
                return out;
            }
        }
        return Vec::new();
    }
    let d = p.ambient_dim;
    let mut lo = vec![Int::zero(); d];
    let mut hi = vec![Int::zero(); d];
    for c in 0..d {
        let mut min = p.vertices[0][c].clone();
        let mut max = min.clone();
        for v in &p.vertices {
            if v[c] < min {
                min = v[c].clone();
            }
            if v[c] > max {
                max = v[c].clone();
            }
        }
        lo[c] = min.ceil().to_integer();
        hi[c] = max.floor().to_integer();
    }
    if (0..d).any(|c| lo[c] > hi[c]) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'scan: loop {
        let pt: RatPoint = cur.iter().map(|c| Rat::from(c.clone())).collect();
        if p.contains(&pt) {
            out.push(LatticeVector(cur.clone()));
        }
        // Odometer increment, lexicographic order.
        let mut c = d;
        loop {
            if c == 0 {
                break 'scan;
            }
            c -= 1;
            if cur[c] < hi[c] {
                cur[c] += 1;
                for (k, item) in cur.iter_mut().enumerate().take(d).skip(c + 1) {
                    *item = lo[k].clone();
                }
                continue 'scan;
            }
        }
    }
    out.sort();
    out
}

/// Whether the normal fan of `p` is smooth at every vertex (Delzant).
pub fn is_delzant(p: &LatticePolytope) -> bool {
    if !p.is_full_dimensional() {
        return false;
    }
    let n = p.dim;
    for (vi, _) in p.vertices.iter().enumerate() {
        let active: Vec<LatticeVector> = p
            .facets
            .iter()
            .filter(|f| f.vertex_indices.contains(&vi))
            .map(|f| f.normal.clone())
            .collect();
        if active.len() != n {
            return false;
        }
        let cone = crate::lattice::Cone::new(active, n);
        match crate::lattice::is_smooth_cone(&cone) {
            Ok(true) => {}
            _ => return false,
        }
    }
    true
}

/// Find a full-dimensional Delzant polytope containing the given exponents.
/// Tries, in order: the hull itself (when Delzant), the reflexive hexagon
/// template in dimension 2, a coordinate box, and a dilated standard
/// simplex (which always works); among the valid candidates the one of
/// smallest normalized volume wins. Returns the polytope together with a
/// short provenance tag recorded in downstream reports.
pub fn delzant_container(points: &[LatticeVector]) -> Result<(LatticePolytope, String)> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty exponent set".into()));
    }
    let dim = points[0].dim();
    let mut candidates: Vec<(LatticePolytope, String)> = Vec::new();
    if let Ok(hull) = convex_hull(points) {
        if hull.is_full_dimensional() && is_delzant(&hull) {
            candidates.push((hull, "hull".into()));
        }
    }
    if dim == 2 {
        // Scaled reflexive hexagon conv{±e1, ±e2, ±(1,1)}.
        let base: Vec<[i64; 2]> = vec![[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]];
        for t in 1..=6i64 {
            let hex: Vec<LatticeVector> = base
                .iter()
                .map(|v| LatticeVector::from_i64(&[v[0] * t, v[1] * t]))
                .collect();
            let hull = convex_hull(&hex)?;
            if points.iter().all(|p| hull.contains(&to_rat_point(p))) {
                candidates.push((hull, format!("hexagon-{t}")));
                break;
            }
        }
    }
    // Coordinate box.
    {
        let mut lo = vec![Int::zero(); dim];
        let mut hi = vec![Int::zero(); dim];
        for c in 0..dim {
            lo[c] = points.iter().map(|p| p.0[c].clone()).min().unwrap();
            hi[c] = points.iter().map(|p| p.0[c].clone()).max().unwrap();
            if lo[c] == hi[c] {
                hi[c] = &lo[c] + 1;
            }
        }
        let mut corners = Vec::new();
        for mask in 0..(1usize << dim) {
            let corner: Vec<Int> = (0..dim)
                .map(|c| {
                    if mask & (1 << c) != 0 {
                        hi[c].clone()
                    } else {
                        lo[c].clone()
                    }
                })
                .collect();
            corners.push(LatticeVector(corner));
        }
        candidates.push((convex_hull(&corners)?, "box".into()));
    }
    // Dilated standard simplex translated to contain everything.
    {
        let lo: Vec<Int> = (0..dim)
            .map(|c| points.iter().map(|p| p.0[c].clone()).min().unwrap())
            .collect();
        let max_sum = points
            .iter()
            .map(|p| {
                p.0.iter()
                    .zip(&lo)
                    .map(|(a, b)| a - b)
                    .fold(Int::zero(), |acc, t| acc + t)
            })
            .max()
            .unwrap()
            .max(Int::one());
        let mut corners = vec![LatticeVector(lo.clone())];
        for c in 0..dim {
            let mut v = lo.clone();
            v[c] = &v[c] + &max_sum;
            corners.push(LatticeVector(v));
        }
        candidates.push((convex_hull(&corners)?, "simplex".into()));
    }
    candidates.retain(|(p, _)| {
        p.is_full_dimensional()
            && is_delzant(p)
            && points.iter().all(|q| p.contains(&to_rat_point(q)))
    });
    candidates
        .into_iter()
        .min_by_key(|(p, _)| normalized_volume(p))
        .ok_or_else(|| Error::InvalidInput("no Delzant container found".into()))
}

/// Edges of a full-dimensional polytope as pairs of vertex indices.
pub fn edges(p: &LatticePolytope) -> Vec<(usize, usize)> {
    match p.dim {
        2 => p
            .facets
            .iter()
            .map(|f| (f.vertex_indices[0], f.vertex_indices[1]))
            .collect(),
        3 => {
            let mut out = Vec::new();
            for (i, f) in p.facets.iter().enumerate() {
                for g in &p.facets[i + 1..] {
                    let shared: Vec<usize> = f
                        .vertex_indices
                        .iter()
                        .filter(|v| g.vertex_indices.contains(v))
                        .cloned()
                        .collect();
                    if shared.len() == 2 {
                        let e = (shared[0].min(shared[1]), shared[0].max(shared[1]));
                        if !out.contains(&e) {
                            out.push(e);
                        }
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Restriction of a section (exponent -> coefficient map) to an edge of its
/// container, reparametrized by lattice distance along the edge from the
/// `from` endpoint. Terms are `(distance, coefficient)` pairs.
pub fn edge_lattice_restriction<C: Clone>(
    p: &LatticePolytope,
    section: &[(LatticeVector, C)],
    edge: (usize, usize),
    from: usize,
) -> Result<Vec<(Int, C)>> {
    if !edges(p)
        .iter()
        .any(|&(a, b)| (a.min(b), a.max(b)) == (edge.0.min(edge.1), edge.0.max(edge.1)))
    {
        return Err(Error::NotAnEdge);
    }
    let (a_idx, b_idx) = if from == edge.0 {
        (edge.0, edge.1)
    } else {
        (edge.1, edge.0)
    };
    let a = to_lattice_vector(&p.vertices[a_idx])
        .ok_or_else(|| Error::InvalidInput("edge endpoints must be lattice points".into()))?;
    let b = to_lattice_vector(&p.vertices[b_idx])
        .ok_or_else(|| Error::InvalidInput("edge endpoints must be lattice points".into()))?;
    let diff = LatticeVector(b.0.iter().zip(&a.0).map(|(x, y)| x - y).collect());
    let g = diff.content();
    let step = diff.primitive();
    let mut out: Vec<(Int, C)> = Vec::new();
    for (m, c) in section {
        // m = a + s * step with 0 <= s <= g?
        let delta = LatticeVector(m.0.iter().zip(&a.0).map(|(x, y)| x - y).collect());
        if delta.is_zero() {
            out.push((Int::zero(), c.clone()));
            continue;
        }
        // Solve delta = s * step exactly.
        let Some(k) = step.0.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let (q, r) = delta.0[k].div_rem(&step.0[k]);
        if !r.is_zero() || q.is_negative() || q > g {
            continue;
        }
        if step.scale(&q) == delta {
            out.push((q, c.clone()));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat_int};

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn hull_of(coords: &[&[i64]]) -> LatticePolytope {
        convex_hull(&coords.iter().map(|c| lv(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hull_unit_square() {
        let p = hull_of(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.dim, 2);
        assert_eq!(p.facets.len(), 4);
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = hull_of(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
        assert_eq!(p.vertices.len(), 4);
    }

    #[test]
    fn hull_collinear() {
        let p = hull_of(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(p.dim, 1);
        assert_eq!(p.vertices.len(), 2);
    }

    #[test]
    fn hull_polytope_82() {
        // conv({(1,0,0), (0,1,0), (0,-1,0), (-1,0,0), (0,0,1), (1,1,0), (1,0,-1)})
        let p = hull_of(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[-1, 0, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, -1],
        ]);
        assert_eq!(p.dim, 3);
        assert_eq!(p.vertices.len(), 7);
        assert!(is_reflexive(&p).unwrap());
    }

    #[test]
    fn polar_dual_of_reflexive_quadrilateral() {
        // P = conv{(1,0),(0,1),(1,1),(-1,-1)} and its golden dual.
        let p = hull_of(&[&[1, 0], &[0, 1], &[1, 1], &[-1, -1]]);
        let d = polar_dual(&p).unwrap();
        let mut got: Vec<LatticeVector> = d.lattice_vertices().unwrap();
        got.sort();
        let mut expect: Vec<LatticeVector> =
            vec![lv(&[2, -1]), lv(&[-1, 2]), lv(&[-1, 0]), lv(&[0, -1])];
        expect.sort();
        assert_eq!(got, expect);
        // Involution on the reflexive pair.
        let dd = polar_dual(&d).unwrap();
        let mut back = dd.lattice_vertices().unwrap();
        back.sort();
        let mut orig = p.lattice_vertices().unwrap();
        orig.sort();
        assert_eq!(back, orig);
    }

    #[test]
    fn polar_dual_square_diamond() {
        let p = hull_of(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        let d = polar_dual(&p).unwrap();
        let mut got = d.lattice_vertices().unwrap();
        got.sort();
        let mut expect = vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn reflexivity_detects_offset() {
        let p = hull_of(&[&[2, 0], &[0, 2], &[-2, -2]]);
        assert!(!is_reflexive(&p).unwrap());
    }

    #[test]
    fn origin_not_interior_is_error() {
        let p = hull_of(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(polar_dual(&p), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn normalized_volumes() {
        // Unit simplex: 1.
        assert_eq!(normalized_volume(&hull_of(&[&[0, 0], &[1, 0], &[0, 1]])), Int::from(1));
        // Newton polytope of the normal-cone potential: 5 (shoelace).
        let p = hull_of(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]]);
        assert_eq!(normalized_volume(&p), Int::from(5));
        // Hirzebruch potential: 4.
        let p = hull_of(&[&[1, 0], &[0, 1], &[1, 1], &[-1, -1]]);
        assert_eq!(normalized_volume(&p), Int::from(4));
        // Unit 3-simplex: 1.
        let p = hull_of(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(normalized_volume(&p), Int::from(1));
        // Hexagon: 6.
        let p = hull_of(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        assert_eq!(normalized_volume(&p), Int::from(6));
    }

    #[test]
    fn lattice_point_counts() {
        let square = hull_of(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(lattice_points(&square).len(), 4);
        let hexagon = hull_of(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        assert_eq!(lattice_points(&hexagon).len(), 7);
        let seg = hull_of(&[&[0, 0], &[3, 0]]);
        assert_eq!(lattice_points(&seg).len(), 4);
    }

    #[test]
    fn picks_theorem_on_polygons() {
        for verts in [
            vec![[1i64, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]],
            vec![[0, 0], [3, 0], [0, 2]],
            vec![[1, 0], [0, 1], [1, 1], [-1, -1]],
        ] {
            let p = convex_hull(&verts.iter().map(|v| lv(v)).collect::<Vec<_>>()).unwrap();
            let pts = lattice_points(&p);
            let boundary = pts
                .iter()
                .filter(|q| {
                    p.facets
                        .iter()
                        .any(|f| dot_ri(&to_rat_point(q), &f.normal) == -f.offset.clone())
                })
                .count() as i64;
            let interior = pts.len() as i64 - boundary;
            // normalized volume = 2 * interior + boundary - 2
            assert_eq!(
                normalized_volume(&p),
                Int::from(2 * interior + boundary - 2)
            );
        }
    }

    #[test]
    fn delzant_container_known_cases() {
        // Normal-cone exponents -> the S6 hexagon.
        let exps: Vec<LatticeVector> = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1]]
            .iter()
            .map(|v| lv(v))
            .collect();
        let (c, tag) = delzant_container(&exps).unwrap();
        assert_eq!(normalized_volume(&c), Int::from(6));
        assert_eq!(tag, "hexagon-1");
        // Hirzebruch exponents -> the same hexagon.
        let exps: Vec<LatticeVector> = [[-1, -1], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|v| lv(v))
            .collect();
        let (c, _) = delzant_container(&exps).unwrap();
        assert_eq!(normalized_volume(&c), Int::from(6));
        // A single point gets some Delzant container containing it.
        let (c, _) = delzant_container(&[lv(&[0, 0])]).unwrap();
        assert!(c.contains(&to_rat_point(&lv(&[0, 0]))));
        assert!(is_delzant(&c));
    }

    #[test]
    fn normalized_volume_is_lattice_invariant() {
        use crate::lattice::LatticeMatrix;
        let base = hull_of(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]]);
        let vol = normalized_volume(&base);
        for shear in [-3i64, -1, 2, 4] {
            for mat in [
                LatticeMatrix::from_i64(&[&[1, shear], &[0, 1]]),
                LatticeMatrix::from_i64(&[&[0, 1], &[1, shear]]),
            ] {
                let verts: Vec<LatticeVector> = base
                    .lattice_vertices()
                    .unwrap()
                    .iter()
                    .map(|v| mat.apply(v))
                    .collect();
                let image = convex_hull(&verts).unwrap();
                assert_eq!(normalized_volume(&image), vol);
            }
        }
    }

    #[test]
    fn boundary_lattice_volume_pentagon() {
        // Pentagon {<m, b> >= -1/2} for the five rays of the blown-up plane:
        // perimeter in lattice measure is 7/2.
        let half = || Rat::new(Int::from(1), Int::from(2));
        let pts: Vec<RatPoint> = vec![
            vec![half(), half()],
            vec![-half(), half()],
            vec![-half(), Rat::zero()],
            vec![Rat::zero(), -half()],
            vec![half(), -half()],
        ];
        let p = convex_hull_rational(&pts).unwrap();
        assert_eq!(boundary_lattice_volume(&p), Rat::new(Int::from(7), Int::from(2)));
        assert_eq!(
            euclidean_volume_times_factorial(&p),
            Rat::new(Int::from(7), Int::from(4))
        );
    }

    #[test]
    fn edge_restriction_filters_terms() {
        let hexagon = hull_of(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        // Section with exponents (1,0) and (1,1) and a stray interior term.
        let section = vec![
            (lv(&[1, 0]), rat_int(3)),
            (lv(&[1, 1]), rat_int(5)),
            (lv(&[0, 0]), rat_int(7)),
        ];
        // Find the edge between (1,0) and (1,1).
        let vi = |target: &[i64]| {
            hexagon
                .vertices
                .iter()
                .position(|v| v == &to_rat_point(&lv(target)))
                .unwrap()
        };
        let e = (vi(&[1, 0]), vi(&[1, 1]));
        let terms = edge_lattice_restriction(&hexagon, &section, e, e.0).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0], (Int::from(0), rat_int(3)));
        assert_eq!(terms[1], (Int::from(1), rat_int(5)));
        // No terms on an edge away from the support.
        let e2 = (vi(&[-1, 0]), vi(&[-1, -1]));
        let terms = edge_lattice_restriction(&hexagon, &section, e2, e2.0).unwrap();
        assert!(terms.is_empty());
        // Not an edge.
        let bad = (vi(&[1, 0]), vi(&[-1, 0]));
        assert!(matches!(
            edge_lattice_restriction(&hexagon, &section, bad, bad.0),
            Err(Error::NotAnEdge)
        ));
    }
}
