//! Toric test configurations and their Donaldson-Futaki invariants by
//! three independent routes: the intersection-theoretic pairing, the
//! fixed-point localisation formula, and convex geometry on the momentum
//! polytope. All three are exact rational computations and must agree.

use crate::error::{Error, Result};
use crate::fan::{classify_projection, product_with_p1, star_subdivide, Fan, FanProjection};
use crate::lattice::{smith_normal_form, LatticeMatrix, LatticeVector};
use crate::num::{Int, Rat};
use crate::polytope::{boundary_lattice_volume, euclidean_volume_times_factorial};
use crate::toric::{
    canonical_divisor, equivariant_integrate_auto, equivariant_weights, euler_class,
    fixed_points, hamiltonian_value, hamiltonian_value_cx, is_ample, lattice_to_rat,
    ComplexDivisorClass, CxRat, ToricDivisor,
};
use num_traits::{One, Signed, Zero};

/// A compactified toric test configuration: a smooth complete fan in
/// `N x Z` fibered over the projective line, with a polarisation.
#[derive(Debug, Clone)]
pub struct ToricTestConfiguration {
    pub total_fan: Fan,
    pub projection: FanProjection,
    pub polarisation: ToricDivisor,
    pub fiber_fan: Fan,
    pub fiber_polarisation: ToricDivisor,
    /// For each fiber fan ray, the index of the corresponding total ray.
    pub fiber_ray_map: Vec<usize>,
}

/// A basis of the kernel sublattice of the functional `lambda`.
fn kernel_basis(lambda: &LatticeVector) -> Vec<LatticeVector> {
    let d = lambda.dim();
    let m = LatticeMatrix::from_rows(std::slice::from_ref(lambda));
    let (s, _, v) = smith_normal_form(&m);
    let mut out = Vec::new();
    for j in 0..d {
        // Columns of V mapped to zero by lambda.
        let col = LatticeVector((0..d).map(|i| v[(i, j)].clone()).collect());
        let image = if j < s.cols { s[(0, j)].clone() } else { Int::zero() };
        if image.is_zero() {
            debug_assert!(lambda.dot(&col).is_zero());
            out.push(col);
        }
    }
    debug_assert_eq!(out.len(), d - 1);
    out
}

/// Express `v` in the given lattice basis; `None` if not in the span or
/// not integral.
fn coords_in_basis(v: &LatticeVector, basis: &[LatticeVector]) -> Option<LatticeVector> {
    let d = v.dim();
    let k = basis.len();
    // Solve sum c_j basis_j = v by rational elimination on the d x k system.
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            (0..k)
                .map(|j| Rat::from(basis[j].0[i].clone()))
                .chain(std::iter::once(Rat::from(v.0[i].clone())))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].clone().recip();
        for j in 0..=k {
            a[row][j] = &a[row][j] * &inv;
        }
        for r in 0..d {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..=k {
                let t = &f * &a[row][j];
                a[r][j] = &a[r][j] - &t;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // Consistency: zero rows must have zero rhs.
    for r in row..d {
        if !a[r][k].is_zero() {
            return None;
        }
    }
    let mut coords = vec![Rat::zero(); k];
    for &(r, c) in &pivots {
        coords[c] = a[r][k].clone();
    }
    let mut out = Vec::with_capacity(k);
    for c in coords {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(LatticeVector(out))
}

impl ToricTestConfiguration {
    /// Build and validate a test configuration from a total fan, the
    /// functional defining the map to the projective line, and a
    /// polarisation divisor.
    pub fn new(total_fan: Fan, lambda: LatticeVector, polarisation: ToricDivisor) -> Result<Self> {
        if !total_fan.is_smooth() || !total_fan.is_complete() {
            return Err(Error::InvalidInput(
                "total space must be smooth and complete".into(),
            ));
        }
        if polarisation.coeffs.len() != total_fan.rays.len() {
            return Err(Error::InvalidInput("polarisation has wrong length".into()));
        }
        let projection = classify_projection(&total_fan, &lambda)?;
        let basis = kernel_basis(&lambda);
        let n = total_fan.dim - 1;
        let fiber_ray_map = projection.fiber_rays();
        let mut fiber_rays = Vec::with_capacity(fiber_ray_map.len());
        for &ri in &fiber_ray_map {
            let coords = coords_in_basis(&total_fan.rays[ri], &basis).ok_or_else(|| {
                Error::InvalidInput("fiber ray not in the kernel lattice".into())
            })?;
            fiber_rays.push(coords);
        }
        // Fiber maximal cones: fiber-ray subsets of size n occurring inside
        // maximal cones of the total fan.
        let mut fiber_cones: Vec<Vec<usize>> = Vec::new();
        for c in &total_fan.max_cones {
            let sub: Vec<usize> = c
                .iter()
                .filter_map(|ri| fiber_ray_map.iter().position(|fr| fr == ri))
                .collect();
            if sub.len() == n {
                let mut key = sub.clone();
                key.sort_unstable();
                if !fiber_cones.iter().any(|exist| {
                    let mut e = exist.clone();
                    e.sort_unstable();
                    e == key
                }) {
                    fiber_cones.push(sub);
                }
            }
        }
        let fiber_fan = Fan::new(fiber_rays, fiber_cones, n)?;
        if !fiber_fan.is_complete() {
            return Err(Error::InvalidInput("generic fiber fan is not complete".into()));
        }
        let fiber_polarisation = ToricDivisor::new(
            fiber_ray_map
                .iter()
                .map(|&ri| polarisation.coeffs[ri].clone())
                .collect(),
        );
        Ok(ToricTestConfiguration {
            total_fan,
            projection,
            polarisation,
            fiber_fan,
            fiber_polarisation,
            fiber_ray_map,
        })
    }

    /// Fiber dimension `n` (the total space has dimension `n + 1`).
    pub fn fiber_dim(&self) -> usize {
        self.total_fan.dim - 1
    }

    /// Relative canonical divisor `K - pullback(K_P1)`: coefficient
    /// `|<lambda, b_rho>| - 1` on each ray.
    pub fn relative_canonical(&self) -> ToricDivisor {
        ToricDivisor::new(
            self.total_fan
                .rays
                .iter()
                .map(|b| Rat::from(self.projection.functional.dot(b).abs()) - Rat::one())
                .collect(),
        )
    }

    /// The same test configuration with the polarisation scaled by `k`.
    pub fn rescaled(&self, k: &Rat) -> Self {
        let mut tc = self.clone();
        tc.polarisation = tc.polarisation.scale(k);
        tc.fiber_polarisation = tc.fiber_polarisation.scale(k);
        tc
    }

    /// Change the lattice presentation by a unimodular matrix: rays are
    /// mapped by `a`, the functional by the inverse transpose. Divisor
    /// coefficients are untouched; all invariants are unchanged.
    pub fn apply_unimodular(&self, a: &LatticeMatrix) -> Result<Self> {
        if !a.det().abs().is_one() {
            return Err(Error::InvalidInput("matrix is not unimodular".into()));
        }
        let rays: Vec<LatticeVector> = self.total_fan.rays.iter().map(|r| a.apply(r)).collect();
        let fan = Fan::new(rays, self.total_fan.max_cones.clone(), self.total_fan.dim)?;
        // lambda' solves <lambda', a b> = <lambda, b>: row vector times the
        // inverse of a, computed through the adjugate over the rationals.
        let d = self.total_fan.dim;
        let rows: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| Rat::from(a[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let inv = crate::toric::rat_inverse(&rows)
            .ok_or_else(|| Error::InvalidInput("matrix is not invertible".into()))?;
        let lam = &self.projection.functional;
        let mut new_lam = Vec::with_capacity(d);
        for j in 0..d {
            let mut acc = Rat::zero();
            for i in 0..d {
                acc += Rat::from(lam.0[i].clone()) * &inv[i][j];
            }
            if !acc.is_integer() {
                return Err(Error::InvalidInput("functional does not stay integral".into()));
            }
            new_lam.push(acc.to_integer());
        }
        ToricTestConfiguration::new(fan, LatticeVector(new_lam), self.polarisation.clone())
    }
}

/// Where to center a degeneration to the normal cone.
#[derive(Debug, Clone)]
pub enum Center {
    /// A torus-fixed point of the fiber, by maximal cone index.
    FixedPoint(usize),
    /// An invariant divisor of the fiber, by ray index.
    Divisor(usize),
}

/// The trivial test configuration `X x P1`, polarised by the box product
/// of `L` with a degree-one bundle on the line (so the polytope of the
/// polarisation stays full-dimensional).
pub fn trivial_tc(x_fan: &Fan, l: &ToricDivisor) -> Result<ToricTestConfiguration> {
    let total = product_with_p1(x_fan);
    let mut coeffs = l.coeffs.clone();
    coeffs.push(Rat::zero());
    coeffs.push(Rat::one());
    let mut lambda = vec![0i64; x_fan.dim];
    lambda.push(1);
    ToricTestConfiguration::new(total, LatticeVector::from_i64(&lambda), ToricDivisor::new(coeffs))
}

/// Degeneration to the normal cone of an invariant center of `(X, L)`
/// with parameter `r`: the product fan is star subdivided at the cone
/// (center x {origin pole}), polarised by the box product of `L` with a
/// degree-`base_degree` bundle on the base line, minus `r` times the
/// exceptional divisor. The base bundle is represented with coefficient
/// zero on the origin pole, which fixes the mirror potential exactly.
pub fn degeneration_to_normal_cone(
    x_fan: &Fan,
    l: &ToricDivisor,
    center: &Center,
    r: &Rat,
    base_degree: u32,
) -> Result<ToricTestConfiguration> {
    if r.is_negative() {
        return Err(Error::InvalidParameter("negative blowup parameter".into()));
    }
    if r.is_zero() {
        return trivial_tc(x_fan, l);
    }
    let product = product_with_p1(x_fan);
    let zero_pole = x_fan.rays.len();
    let center_rays: Vec<usize> = match center {
        Center::FixedPoint(ci) => {
            if *ci >= x_fan.max_cones.len() {
                return Err(Error::InvalidParameter("no such fixed point".into()));
            }
            x_fan.max_cones[*ci].clone()
        }
        Center::Divisor(ri) => {
            if *ri >= x_fan.rays.len() {
                return Err(Error::InvalidParameter("no such divisor".into()));
            }
            vec![*ri]
        }
    };
    let mut blow_cone = center_rays.clone();
    blow_cone.push(zero_pole);
    let total = star_subdivide(&product, &blow_cone)?;
    // Pullback coefficient on the exceptional ray: the support function of
    // the pullback is linear on the blown cone, so the value at the ray sum
    // is the sum of the generator coefficients.
    let e_ray = blow_cone
        .iter()
        .fold(LatticeVector::zero(product.dim), |acc, &i| {
            acc.add(&product.rays[i])
        })
        .primitive();
    let e_idx = total
        .ray_index(&e_ray)
        .ok_or_else(|| Error::InvalidParameter("exceptional ray missing".into()))?;
    let mut coeffs = vec![Rat::zero(); total.rays.len()];
    for (i, c) in l.coeffs.iter().enumerate() {
        coeffs[i] = c.clone();
    }
    // Base bundle of the chosen degree, zero on the origin pole.
    let inf_pole = total
        .ray_index(&{
            let mut d = vec![Int::zero(); x_fan.dim];
            d.push(-Int::one());
            LatticeVector(d)
        })
        .expect("pole ray");
    coeffs[inf_pole] = Rat::from(Int::from(base_degree as i64));
    let pullback_at_e: Rat = center_rays
        .iter()
        .map(|&i| l.coeffs[i].clone())
        .fold(Rat::zero(), |acc, t| acc + t);
    coeffs[e_idx] = pullback_at_e - r;
    let mut lambda = vec![0i64; x_fan.dim];
    lambda.push(1);
    let tc = ToricTestConfiguration::new(
        total,
        LatticeVector::from_i64(&lambda),
        ToricDivisor::new(coeffs),
    )?;
    if !is_ample(&tc.total_fan, &tc.polarisation) {
        return Err(Error::InvalidParameter(format!(
            "parameter {r} exceeds the ampleness bound for this center"
        )));
    }
    Ok(tc)
}

/// `c = (c1(X) . L^{n-1}) / L^n` on the fiber.
pub fn slope_constant(fiber_fan: &Fan, l: &ToricDivisor) -> Result<Rat> {
    let n = fiber_fan.dim;
    let mut classes = vec![l.clone(); n];
    let vol = equivariant_integrate_auto(fiber_fan, &classes)?;
    if vol.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    classes[0] = canonical_divisor(fiber_fan).scale(&-Rat::one());
    let num = equivariant_integrate_auto(fiber_fan, &classes)?;
    Ok(num / vol)
}

/// Donaldson-Futaki invariant as the intersection pairing
/// `L^n . (n c / (n+1) L + K_rel)` on the total space.
pub fn df_intersection(tc: &ToricTestConfiguration) -> Result<Rat> {
    let n = tc.fiber_dim();
    let c = slope_constant(&tc.fiber_fan, &tc.fiber_polarisation)?;
    let factor = c * Rat::new(Int::from(n as i64), Int::from((n + 1) as i64));
    let mixed = tc.polarisation.scale(&factor).add(&tc.relative_canonical());
    let mut classes = vec![tc.polarisation.clone(); n];
    classes.push(mixed);
    equivariant_integrate_auto(&tc.total_fan, &classes)
}

/// Per fixed point data of the localisation formula.
#[derive(Debug, Clone)]
pub struct LocalisedRow {
    pub cone: usize,
    pub h: Rat,
    pub weights: Vec<Rat>,
    pub term: Rat,
}

#[derive(Debug, Clone)]
pub struct LocalisedReport {
    pub v: Vec<Rat>,
    pub rows: Vec<LocalisedRow>,
    pub total: Rat,
}

/// Candidate vectors projecting to the standard action on the line:
/// `<lambda, v> = 1` with deterministic fiber-direction patterns.
pub fn projecting_vector_candidates(tc: &ToricTestConfiguration) -> Vec<Vec<Rat>> {
    let lambda = &tc.projection.functional;
    let d = lambda.dim();
    // Base point w0 with <lambda, w0> = 1.
    let mut w0: Option<LatticeVector> = None;
    for i in 0..d {
        if lambda.0[i].abs().is_one() {
            let mut w = vec![Int::zero(); d];
            w[i] = if lambda.0[i].is_one() { Int::one() } else { -Int::one() };
            w0 = Some(LatticeVector(w));
            break;
        }
    }
    let w0 = match w0 {
        Some(w) => w,
        None => {
            // Generic extended gcd over all coordinates.
            let mut w = LatticeVector::zero(d);
            let mut g = Int::zero();
            for i in 0..d {
                if lambda.0[i].is_zero() {
                    continue;
                }
                let (ng, x, y) = ext_gcd(&g, &lambda.0[i]);
                for c in w.0.iter_mut() {
                    *c = &*c * &x;
                }
                w.0[i] = &w.0[i] + &y;
                g = ng;
                if g.abs().is_one() {
                    break;
                }
            }
            w
        }
    };
    let basis = kernel_basis(lambda);
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    let mut out = Vec::new();
    for t in PRIMES {
        let mut v = lattice_to_rat(&w0);
        let mut cur = t;
        for b in &basis {
            for (vi, bi) in v.iter_mut().zip(&b.0) {
                *vi += Rat::from(bi * Int::from(cur));
            }
            cur *= t;
        }
        out.push(v);
    }
    out
}

/// Localised Donaldson-Futaki invariant via Atiyah-Bott fixed point sums,
/// reported point by point. Retries over the deterministic vector sequence
/// when the given choice is non-generic; exact equality with the
/// intersection route holds for every admissible input.
pub fn df_localised(
    tc: &ToricTestConfiguration,
    v: Option<&[Rat]>,
) -> Result<LocalisedReport> {
    let candidates: Vec<Vec<Rat>> = match v {
        Some(v) => vec![v.to_vec()],
        None => projecting_vector_candidates(tc),
    };
    let mut last = Error::ZeroWeight;
    for v in candidates {
        match df_localised_at(tc, &v) {
            Ok(r) => return Ok(r),
            Err(Error::ZeroWeight) => {
                last = Error::ZeroWeight;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn df_localised_at(tc: &ToricTestConfiguration, v: &[Rat]) -> Result<LocalisedReport> {
    let n = tc.fiber_dim();
    let c = slope_constant(&tc.fiber_fan, &tc.fiber_polarisation)?;
    let factor = c * Rat::new(Int::from(n as i64), Int::from((n + 1) as i64));
    let k_rel = tc.relative_canonical();
    let mut rows = Vec::new();
    let mut total = Rat::zero();
    for p in fixed_points(&tc.total_fan)? {
        let weights = equivariant_weights(&p, v)?;
        let e = weights.iter().fold(Rat::one(), |acc, w| acc * w);
        let h = hamiltonian_value(&tc.polarisation, &p, v);
        let h_rel = hamiltonian_value(&k_rel, &p, v);
        let mut term = (&factor * &h + h_rel) / e;
        for _ in 0..n {
            term *= h.clone();
        }
        total += term.clone();
        rows.push(LocalisedRow {
            cone: p.cone_index,
            h,
            weights,
            term,
        });
    }
    Ok(LocalisedReport {
        v: v.to_vec(),
        rows,
        total,
    })
}

/// Donaldson's momentum polytope formula, normalised against the
/// intersection route: with `Q` the polytope of the polarisation, `P` the
/// fiber polytope and `a = vol_sigma(boundary P) / vol(P)`,
/// `DF = n! (a vol(Q) - vol_sigma(boundary Q) + 2 vol(P))`.
/// A fully convex-geometric route: no fixed points, no weights.
pub fn df_donaldson_polytope(tc: &ToricTestConfiguration) -> Result<Rat> {
    let n = tc.fiber_dim();
    let q = crate::toric::divisor_polytope(&tc.total_fan, &tc.polarisation)?;
    let p = crate::toric::divisor_polytope(&tc.fiber_fan, &tc.fiber_polarisation)?;
    if !q.is_full_dimensional() || !p.is_full_dimensional() {
        return Err(Error::DegenerateVolume);
    }
    let evtf_q = euclidean_volume_times_factorial(&q);
    let evtf_p = euclidean_volume_times_factorial(&p);
    if evtf_p.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    let blat_q = boundary_lattice_volume(&q);
    let blat_p = boundary_lattice_volume(&p);
    let nfac = Rat::from(Int::from((1..=n as i64).product::<i64>()));
    let a = &nfac * &blat_p / &evtf_p;
    Ok(a * evtf_q / Rat::from(Int::from((n + 1) as i64)) - nfac * blat_q
        + Rat::from(Int::from(2)) * evtf_p)
}

/// All three routes bundled, with exact agreement required by the callers.
#[derive(Debug, Clone)]
pub struct DfReport {
    pub value_intersection: Rat,
    pub value_localised: Rat,
    pub value_polytope: Rat,
    pub slope: Rat,
}

pub fn df_report(tc: &ToricTestConfiguration) -> Result<DfReport> {
    Ok(DfReport {
        value_intersection: df_intersection(tc)?,
        value_localised: df_localised(tc, None)?.total,
        value_polytope: df_donaldson_polytope(tc)?,
        slope: slope_constant(&tc.fiber_fan, &tc.fiber_polarisation)?,
    })
}

/// Twisted slope `c = ((c1(X) - xi|) . (eta|)^{n-1}) / (eta|)^n` on the
/// fiber, complex linear in both classes.
pub fn twisted_slope(
    tc: &ToricTestConfiguration,
    eta: &ComplexDivisorClass,
    xi: &ComplexDivisorClass,
) -> Result<CxRat> {
    let n = tc.fiber_dim();
    let restrict = |cl: &ComplexDivisorClass| ComplexDivisorClass {
        coeffs: tc
            .fiber_ray_map
            .iter()
            .map(|&ri| cl.coeffs[ri].clone())
            .collect(),
    };
    let eta_f = restrict(eta);
    let xi_f = restrict(xi);
    let mk = canonical_divisor(&tc.fiber_fan)
        .scale(&-Rat::one())
        .to_complex();
    let minus_xi = xi_f.scale(&CxRat::new(-Rat::one(), Rat::zero()));
    let top = mk.add(&minus_xi);
    let mut vol_classes = vec![eta_f.clone(); n];
    let mut v_used = None;
    let mut vol = CxRat::new(Rat::zero(), Rat::zero());
    for v in crate::toric::generic_vector_candidates(n) {
        match crate::toric::equivariant_integrate_cx(&tc.fiber_fan, &vol_classes, &v) {
            Ok(r) => {
                vol = r;
                v_used = Some(v);
                break;
            }
            Err(Error::ZeroWeight) => continue,
            Err(e) => return Err(e),
        }
    }
    let v = v_used.ok_or(Error::ZeroWeight)?;
    if vol.re.is_zero() && vol.im.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    vol_classes[0] = top;
    let num = crate::toric::equivariant_integrate_cx(&tc.fiber_fan, &vol_classes, &v)?;
    Ok(num / vol)
}

/// Formal twisted Donaldson-Futaki invariant for complex classes, summed
/// over all fixed points of the total space. With `xi = 0` and a real
/// ample `eta` this reduces term by term to `df_localised`.
pub fn df_twisted(
    tc: &ToricTestConfiguration,
    eta: &ComplexDivisorClass,
    xi: &ComplexDivisorClass,
    v: &[Rat],
    c_override: Option<CxRat>,
) -> Result<CxRat> {
    let n = tc.fiber_dim();
    let c = match c_override {
        Some(c) => c,
        None => twisted_slope(tc, eta, xi)?,
    };
    let factor = c * CxRat::new(
        Rat::new(Int::from(n as i64), Int::from((n + 1) as i64)),
        Rat::zero(),
    );
    let k_rel = tc.relative_canonical().to_complex();
    let mut total = CxRat::new(Rat::zero(), Rat::zero());
    for p in fixed_points(&tc.total_fan)? {
        let e = euler_class(&p, v)?;
        let h_eta = hamiltonian_value_cx(eta, &p, v);
        let h_xi = hamiltonian_value_cx(xi, &p, v);
        let h_rel = hamiltonian_value_cx(&k_rel, &p, v);
        let mut term = (&factor * &h_eta + h_rel + h_xi) / CxRat::new(e, Rat::zero());
        for _ in 0..n {
            term *= h_eta.clone();
        }
        total += term;
    }
    Ok(total)
}

/// Scale the class pair so the twisted slope equals the target (the
/// coupling scales inversely with the leading class).
pub fn rescale_to_slope(
    tc: &ToricTestConfiguration,
    eta: &ComplexDivisorClass,
    xi: &ComplexDivisorClass,
    target: &Rat,
) -> Result<(ComplexDivisorClass, ComplexDivisorClass)> {
    let current = twisted_slope(tc, eta, xi)?;
    let t = CxRat::new(target.clone(), Rat::zero());
    if t.re.is_zero() && t.im.is_zero() {
        return Err(Error::InvalidParameter("zero target slope".into()));
    }
    let s = current / t;
    Ok((eta.scale(&s), xi.clone()))
}

fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if b.is_zero() {
        return (a.clone(), Int::one(), Int::zero());
    }
    let (g, x, y) = ext_gcd(b, &(a % b));
    let q = a / b;
    (g, y.clone(), x - q * y)
}
