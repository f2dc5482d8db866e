//! Critical points of Landau-Ginzburg potentials in log coordinates,
//! Newton polytope root counts, the stationary phase count check, and the
//! mirror-side residue formula for the Donaldson-Futaki invariant.
//!
//! The solver is a multistart damped Newton iteration in `u` with
//! `x = e^u`, run at arbitrary precision. Seeds combine the vertices of
//! the tropicalisation of the potential (where critical points localise at
//! large scale) with sign patterns on the imaginary torus; the result set
//! is a deterministic function of the potential and the options.

use crate::error::{Error, Result};
use crate::hp::{det_complex, solve_complex, vec_abs2, HpC, HpCtx};
use crate::lg::{term_value, LGPotential, Section};
use crate::num::{Int, Rat};
use crate::testconfig::ToricTestConfiguration;
use astro_float::BigFloat;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub precision_bits: usize,
    pub start_budget: usize,
    pub max_newton_iters: usize,
    /// Absolute residual tolerance, as a power of ten.
    pub residual_tol_log10: i32,
    /// Deduplication radius in `u`-space, as a power of ten.
    pub dedup_radius_log10: i32,
    /// Hessian degeneracy threshold relative to the term scale.
    pub degeneracy_tol_log10: i32,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            precision_bits: 256,
            start_budget: 200,
            max_newton_iters: 80,
            residual_tol_log10: -30,
            dedup_radius_log10: -8,
            degeneracy_tol_log10: -20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub log_coords: Vec<HpC>,
    pub value: HpC,
    pub hessian_det: HpC,
    pub multiplicity: usize,
    pub degenerate: bool,
    pub residual: f64,
}

#[derive(Debug)]
pub struct CriticalSolveResult {
    pub points: Vec<CriticalPoint>,
    pub bkk: Int,
    pub complete: bool,
}

impl CriticalSolveResult {
    pub fn count_with_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Generic root count: the normalized volume of the Newton polytope.
pub fn bkk_bound(w: &LGPotential) -> Result<Int> {
    let np = crate::lg::newton_polytope(w)?;
    if !np.is_full_dimensional() {
        return Ok(Int::zero());
    }
    Ok(crate::polytope::normalized_volume(&np))
}

/// Gradient of the potential in log coordinates: `F_i = x_i dW/dx_i`.
pub fn log_gradient(w: &LGPotential, u: &[HpC], ctx: &HpCtx) -> Vec<HpC> {
    let d = w.dim;
    let mut f = vec![HpC::zero(ctx); d];
    for (m, c) in &w.terms {
        let t = term_value(m, c, &w.k, u, ctx);
        for i in 0..d {
            if m.0[i].is_zero() {
                continue;
            }
            let s = t.scale(&ctx.from_rat(&Rat::from(m.0[i].clone())), ctx);
            f[i] = f[i].add(&s, ctx);
        }
    }
    f
}

/// Log Hessian `H_ij = (x_i d/dx_i)(x_j d/dx_j) W`, which at a critical
/// point equals `prod x_i^2 det grad^2 W` after taking determinants.
pub fn log_hessian(w: &LGPotential, u: &[HpC], ctx: &HpCtx) -> Vec<Vec<HpC>> {
    let d = w.dim;
    let mut h = vec![vec![HpC::zero(ctx); d]; d];
    for (m, c) in &w.terms {
        let t = term_value(m, c, &w.k, u, ctx);
        for i in 0..d {
            if m.0[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if m.0[j].is_zero() {
                    continue;
                }
                let mij = &m.0[i] * &m.0[j];
                let s = t.scale(&ctx.from_rat(&Rat::from(mij)), ctx);
                h[i][j] = h[i][j].add(&s, ctx);
            }
        }
    }
    h
}

/// Scale of the potential at `u`: the sum of the term magnitudes, used to
/// normalise degeneracy thresholds.
fn term_scale(w: &LGPotential, u: &[HpC], ctx: &HpCtx) -> BigFloat {
    let mut acc = ctx.zero();
    for (m, c) in &w.terms {
        let t = term_value(m, c, &w.k, u, ctx);
        acc = ctx.add(&acc, &t.abs(ctx));
    }
    acc
}

/// Real parts of seed points: vertices of the tropicalisation
/// `max_m (<m, u> + 2 pi k log_m)`, found by solving the equal-value system
/// of every (dim + 1)-subset in double precision (seeds only; the Newton
/// refinement runs at full precision).
fn tropical_vertices(w: &LGPotential) -> Vec<Vec<f64>> {
    let d = w.dim;
    let kf = w.k.to_f64().unwrap_or(1.0);
    let items: Vec<(Vec<f64>, f64)> = w
        .terms
        .iter()
        .map(|(m, c)| {
            (
                m.0.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect(),
                2.0 * std::f64::consts::PI * kf * c.log.to_f64().unwrap_or(0.0),
            )
        })
        .collect();
    let n = items.len();
    let mut out: Vec<Vec<f64>> = vec![vec![0.0; d]];
    let mut subset = vec![0usize; d + 1];
    fn rec(
        subset: &mut Vec<usize>,
        pos: usize,
        start: usize,
        n: usize,
        d: usize,
        items: &[(Vec<f64>, f64)],
        out: &mut Vec<Vec<f64>>,
    ) {
        if pos == d + 1 {
            // Solve <m_i - m_0, u> = phi_0 - phi_i.
            let (m0, p0) = (&items[subset[0]].0, items[subset[0]].1);
            let mut a = vec![vec![0.0f64; d + 1]; d];
            for r in 0..d {
                let (mi, pi) = (&items[subset[r + 1]].0, items[subset[r + 1]].1);
                for c in 0..d {
                    a[r][c] = mi[c] - m0[c];
                }
                a[r][d] = p0 - pi;
            }
            if let Some(u) = solve_f64(&mut a) {
                if u.iter().all(|x| x.is_finite()) {
                    out.push(u);
                }
            }
            return;
        }
        for i in start..n {
            subset[pos] = i;
            rec(subset, pos + 1, i + 1, n, d, items, out);
        }
    }
    rec(&mut subset, 0, 0, n, d, &items, &mut out);
    // Deduplicate coarse duplicates.
    let mut dedup: Vec<Vec<f64>> = Vec::new();
    for v in out {
        if !dedup
            .iter()
            .any(|w| w.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-9))
        {
            dedup.push(v);
        }
    }
    dedup
}

fn solve_f64(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let d = a.len();
    for col in 0..d {
        let p = (col..d).max_by(|&x, &y| {
            a[x][col]
                .abs()
                .partial_cmp(&a[y][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        for r in 0..d {
            if r == col {
                continue;
            }
            let f = a[r][col] / a[col][col];
            for c in col..=d {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    Some((0..d).map(|i| a[i][d] / a[i][i]).collect())
}

/// Double precision model of the potential used by the exploration phase:
/// term `man * exp(shift + <m, u>)` with `shift = 2 pi k log`.
struct F64Model {
    terms: Vec<(Vec<f64>, f64, f64)>,
    dim: usize,
}

type C64 = num_complex::Complex<f64>;

impl F64Model {
    fn new(w: &LGPotential) -> Self {
        let kf = w.k.to_f64().unwrap_or(1.0);
        F64Model {
            terms: w
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.0.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect(),
                        2.0 * std::f64::consts::PI * kf * c.log.to_f64().unwrap_or(0.0),
                        c.man.to_f64().unwrap_or(0.0),
                    )
                })
                .collect(),
            dim: w.dim,
        }
    }

    fn term_values(&self, u: &[C64]) -> Vec<C64> {
        self.terms
            .iter()
            .map(|(m, shift, man)| {
                let mut arg = C64::new(*shift, 0.0);
                for (mi, ui) in m.iter().zip(u) {
                    arg += ui * *mi;
                }
                arg.exp() * *man
            })
            .collect()
    }

    fn gradient(&self, tv: &[C64]) -> Vec<C64> {
        let mut f = vec![C64::new(0.0, 0.0); self.dim];
        for ((m, _, _), t) in self.terms.iter().zip(tv) {
            for i in 0..self.dim {
                f[i] += t * m[i];
            }
        }
        f
    }

    fn hessian(&self, tv: &[C64]) -> Vec<Vec<C64>> {
        let mut h = vec![vec![C64::new(0.0, 0.0); self.dim]; self.dim];
        for ((m, _, _), t) in self.terms.iter().zip(tv) {
            for i in 0..self.dim {
                if m[i] == 0.0 {
                    continue;
                }
                for j in 0..self.dim {
                    h[i][j] += t * (m[i] * m[j]);
                }
            }
        }
        h
    }

    fn scale(&self, tv: &[C64]) -> f64 {
        tv.iter().map(|t| t.norm()).sum()
    }

    /// Damped Newton in double precision; converges to the relative
    /// residual floor or gives up.
    fn newton(&self, mut u: Vec<C64>, iters: usize) -> Option<Vec<C64>> {
        let mut tv = self.term_values(&u);
        let mut res2: f64 = self.gradient(&tv).iter().map(|z| z.norm_sqr()).sum();
        for _ in 0..iters {
            let scale = self.scale(&tv);
            if !res2.is_finite() || !scale.is_finite() {
                return None;
            }
            if res2 <= (1e-10 * scale).powi(2) {
                break;
            }
            let h = self.hessian(&tv);
            let f = self.gradient(&tv);
            let delta = solve_c64(&h, &f.iter().map(|z| -z).collect::<Vec<_>>())?;
            let mut step = 1.0;
            let mut accepted = false;
            for _ in 0..8 {
                let cand: Vec<C64> = u
                    .iter()
                    .zip(&delta)
                    .map(|(ui, di)| ui + di * step)
                    .collect();
                let ctv = self.term_values(&cand);
                let cres2: f64 = self.gradient(&ctv).iter().map(|z| z.norm_sqr()).sum();
                if cres2.is_finite() && cres2 < res2 {
                    u = cand;
                    tv = ctv;
                    res2 = cres2;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        let scale = self.scale(&tv);
        if res2 <= (1e-8 * scale).powi(2) {
            Some(u)
        } else {
            None
        }
    }
}

fn solve_c64(a: &[Vec<C64>], b: &[C64]) -> Option<Vec<C64>> {
    let n = b.len();
    let mut m: Vec<Vec<C64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| {
            m[x][col]
                .norm_sqr()
                .partial_cmp(&m[y][col].norm_sqr())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[p][col].norm_sqr() < 1e-280 {
            return None;
        }
        m.swap(col, p);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col] / m[col][col];
            for c in col..=n {
                let t = f * m[col][c];
                m[r][c] -= t;
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Damped Newton from one seed. Returns the refined point when the
/// squared residual drops below `tol2`.
fn newton_from(
    w: &LGPotential,
    seed: Vec<HpC>,
    ctx: &HpCtx,
    tol2: &BigFloat,
    max_iters: usize,
) -> Option<(Vec<HpC>, BigFloat)> {
    let mut u = seed;
    let mut f = log_gradient(w, &u, ctx);
    let mut res2 = vec_abs2(&f, ctx);
    for _ in 0..max_iters {
        if ctx.lt(&res2, tol2) {
            return Some((u, res2));
        }
        let mut h = log_hessian(w, &u, ctx);
        let mut rhs: Vec<HpC> = f.iter().map(|z| z.neg()).collect();
        let delta = solve_complex(&mut h, &mut rhs, ctx)?;
        let mut step = 1.0f64;
        let mut accepted = false;
        for _ in 0..8 {
            let cand: Vec<HpC> = u
                .iter()
                .zip(&delta)
                .map(|(ui, di)| ui.add(&di.scale(&ctx.from_f64(step), ctx), ctx))
                .collect();
            let fc = log_gradient(w, &cand, ctx);
            let rc = vec_abs2(&fc, ctx);
            if ctx.lt(&rc, &res2) {
                u = cand;
                f = fc;
                res2 = rc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if ctx.lt(&res2, tol2) {
        Some((u, res2))
    } else {
        None
    }
}

/// Deterministic multistart damped Newton solve of `x grad W = 0` in the
/// torus, in two phases: an exploration pass at reduced precision over the
/// tropical seed grid, then a full-precision polish of the distinct points
/// (well past the acceptance residual, so downstream residues carry the
/// full working precision). Converged points are reduced modulo `2 pi i`,
/// deduplicated and sorted; the count never exceeds the Newton polytope
/// bound.
pub fn find_critical_points(
    w: &LGPotential,
    opts: &SolverOptions,
) -> Result<CriticalSolveResult> {
    let ctx = HpCtx::new(opts.precision_bits);
    let bkk = bkk_bound(w)?;
    let d = w.dim;
    // Polish beyond the configured acceptance residual, up to what the
    // working precision supports.
    let polish_log10 = opts
        .residual_tol_log10
        .min(-((opts.precision_bits as f64 * 0.30) as i32) + 6);
    let polish_tol2 = {
        let t = crate::hp::pow10(&ctx, polish_log10);
        ctx.mul(&t, &t)
    };
    let accept_tol = crate::hp::pow10(&ctx, opts.residual_tol_log10);
    let dedup2 = {
        let t = crate::hp::pow10(&ctx, opts.dedup_radius_log10);
        ctx.mul(&t, &t)
    };
    // Exploration in double precision: tropical vertices crossed with
    // imaginary sign patterns, plus scattered golden-angle phases up to
    // the start budget.
    let model = F64Model::new(w);
    let trop = tropical_vertices(w);
    let pi_f = std::f64::consts::PI;
    let two_pi = 2.0 * pi_f;
    let mut seeds: Vec<Vec<C64>> = Vec::new();
    for re in &trop {
        for mask in 0..(1usize << d) {
            if seeds.len() >= opts.start_budget {
                break;
            }
            seeds.push(
                (0..d)
                    .map(|i| C64::new(re[i], if mask & (1 << i) != 0 { pi_f } else { 0.0 }))
                    .collect(),
            );
        }
    }
    let golden = 2.399963229728653f64;
    let mut extra = 0usize;
    while seeds.len() < opts.start_budget {
        let base = &trop[extra % trop.len()];
        seeds.push(
            (0..d)
                .map(|i| {
                    C64::new(
                        base[i],
                        ((extra * (i + 1)) as f64 * golden + opts.seed as f64)
                            .rem_euclid(two_pi),
                    )
                })
                .collect(),
        );
        extra += 1;
    }
    let mut scouted: Vec<Vec<C64>> = Vec::new();
    for seed in seeds {
        let Some(u) = model.newton(seed, 60) else {
            continue;
        };
        let reduced: Vec<C64> = u
            .iter()
            .map(|z| {
                let mut im = z.im.rem_euclid(two_pi);
                if im > pi_f {
                    im -= two_pi;
                }
                C64::new(z.re, im)
            })
            .collect();
        let fresh = !scouted.iter().any(|v| {
            v.iter()
                .zip(&reduced)
                .map(|(a, b)| {
                    let mut di = (a.im - b.im).rem_euclid(two_pi);
                    if di > pi_f {
                        di -= two_pi;
                    }
                    (a.re - b.re).powi(2) + di * di
                })
                .sum::<f64>()
                < 1e-12
        });
        if fresh {
            scouted.push(reduced);
        }
    }
    // Polish at full precision and deduplicate finely.
    let mut distinct: Vec<(Vec<HpC>, BigFloat)> = Vec::new();
    'outer: for u0 in scouted {
        let lifted: Vec<HpC> = u0
            .iter()
            .map(|z| HpC::from_f64(&ctx, z.re, z.im))
            .collect();
        let Some((u, r2)) = newton_from(w, lifted, &ctx, &polish_tol2, 40) else {
            continue;
        };
        let reduced: Vec<HpC> = u.iter().map(|z| z.reduce_imag(&ctx)).collect();
        for (v, _) in &distinct {
            if torus_dist2(&reduced, v, &ctx)
                .cmp(&dedup2)
                .map(|c| c < 0)
                .unwrap_or(false)
            {
                continue 'outer;
            }
        }
        let res = ctx.sqrt(&r2);
        if ctx.lt(&accept_tol, &res) {
            continue;
        }
        distinct.push((reduced, r2));
    }
    distinct.sort_by(|a, b| {
        let ka: Vec<(f64, f64)> = a.0.iter().map(|z| z.approx(&ctx)).collect();
        let kb: Vec<(f64, f64)> = b.0.iter().map(|z| z.approx(&ctx)).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut points = Vec::new();
    for (u, r2) in distinct {
        let h = log_hessian(w, &u, &ctx);
        let det = det_complex(&h, &ctx);
        let scale = term_scale(w, &u, &ctx);
        let mut scale_d = ctx.one();
        for _ in 0..d {
            scale_d = ctx.mul(&scale_d, &scale);
        }
        let threshold = ctx.mul(&crate::hp::pow10(&ctx, opts.degeneracy_tol_log10), &scale_d);
        let degenerate = ctx.lt(&det.abs(&ctx), &threshold);
        points.push(CriticalPoint {
            value: w.eval_log(&u, &ctx),
            hessian_det: det,
            multiplicity: 1,
            degenerate,
            residual: ctx.to_f64(&ctx.sqrt(&r2)),
            log_coords: u,
        });
    }
    let complete = Int::from(points.len() as i64) == bkk;
    if Int::from(points.len() as i64) > bkk {
        return Err(Error::SolverIncomplete {
            found: points.len(),
            expected: bkk.to_usize().unwrap_or(0),
        });
    }
    Ok(CriticalSolveResult {
        points,
        bkk,
        complete,
    })
}

/// Squared distance on the log torus, imaginary parts compared modulo 2 pi.
fn torus_dist2(a: &[HpC], b: &[HpC], ctx: &HpCtx) -> BigFloat {
    let mut acc = ctx.zero();
    for (x, y) in a.iter().zip(b) {
        let diff = x.sub(y, ctx).reduce_imag(ctx);
        acc = ctx.add(&acc, &diff.abs2(ctx));
    }
    acc
}

#[derive(Debug)]
pub struct StationaryPhaseReport {
    pub multiplicity_sum: usize,
    pub chi: Int,
    pub holds: bool,
    pub chi_source: &'static str,
}

/// The stationary phase (Morse) count check: the sum of multiplicities
/// equals the signed Euler characteristic of the potential's domain,
/// supplied by the caller or taken from the Newton polytope count.
pub fn check_stationary_phase(
    w: &LGPotential,
    solve: &CriticalSolveResult,
    chi: Option<Int>,
) -> Result<StationaryPhaseReport> {
    let (chi, chi_source) = match chi {
        Some(c) => (c, "caller"),
        None => (bkk_bound(w)?, "newton-polytope"),
    };
    let sum = solve.count_with_multiplicity();
    Ok(StationaryPhaseReport {
        multiplicity_sum: sum,
        holds: Int::from(sum as i64) == chi.abs(),
        chi,
        chi_source,
    })
}

/// Grothendieck residue pairing `sum_p g(p) / det H(p)` over nondegenerate
/// critical points, at the context precision.
pub fn grothendieck_residue(
    w: &LGPotential,
    g: &Section,
    solve: &CriticalSolveResult,
    ctx: &HpCtx,
) -> Result<HpC> {
    let mut acc = HpC::zero(ctx);
    for p in &solve.points {
        if p.degenerate {
            return Err(Error::DegenerateCriticalPoint);
        }
        let mut gv = HpC::zero(ctx);
        for (m, c) in g {
            let t = term_value(m, c, &w.k, &p.log_coords, ctx);
            gv = gv.add(&t, ctx);
        }
        acc = acc.add(&gv.div(&p.hessian_det, ctx), ctx);
    }
    Ok(acc)
}

#[derive(Debug)]
pub struct MirrorResidueReport {
    pub value: HpC,
    pub points: usize,
    pub bkk: Int,
    pub k: Rat,
}

/// Mirror-side Donaldson-Futaki invariant: the residue sum
/// `sum_p theta^n ((nc/(n+1)) theta - W + psi) / det H |_p`, which
/// approaches the intersection-theoretic invariant as the scale grows.
pub fn df_mirror_residue(
    tc: &ToricTestConfiguration,
    k: &Rat,
    opts: &SolverOptions,
) -> Result<MirrorResidueReport> {
    let w = crate::lg::build_potential(tc, k);
    let solve = find_critical_points(&w, opts)?;
    if !solve.complete {
        return Err(Error::SolverIncomplete {
            found: solve.points.len(),
            expected: solve.bkk.to_usize().unwrap_or(0),
        });
    }
    let ctx = HpCtx::new(opts.precision_bits);
    let n = tc.fiber_dim();
    let c = crate::testconfig::slope_constant(&tc.fiber_fan, &tc.fiber_polarisation)?;
    let factor = ctx.from_rat(&(c * Rat::new(Int::from(n as i64), Int::from((n + 1) as i64))));
    let theta = crate::lg::theta_class(tc, &w);
    let (psi, _) = crate::lg::psi_class(tc, &w);
    let eval = |sec: &Section, u: &[HpC]| -> HpC {
        let mut acc = HpC::zero(&ctx);
        for (m, cf) in sec {
            acc = acc.add(&term_value(m, cf, &w.k, u, &ctx), &ctx);
        }
        acc
    };
    let mut total = HpC::zero(&ctx);
    for p in &solve.points {
        if p.degenerate {
            return Err(Error::DegenerateCriticalPoint);
        }
        let th = eval(&theta, &p.log_coords);
        let ps = eval(&psi, &p.log_coords);
        let wv = w.eval_log(&p.log_coords, &ctx);
        let mut num = th.scale(&factor, &ctx).sub(&wv, &ctx).add(&ps, &ctx);
        for _ in 0..n {
            num = num.mul(&th, &ctx);
        }
        total = total.add(&num.div(&p.hessian_det, &ctx), &ctx);
    }
    Ok(MirrorResidueReport {
        value: total,
        points: solve.points.len(),
        bkk: solve.bkk,
        k: k.clone(),
    })
}
