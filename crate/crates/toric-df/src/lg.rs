//! Mirror Landau-Ginzburg potentials of test configurations at scale `k`,
//! and the leading-order images of divisor classes in the Jacobi ring.
//!
//! Coefficients are kept exact as `man * e^{2 pi k * log}` with rational
//! `man` and `log`; at `k = 16` the small coefficients are around
//! `10^{-44}`, far below double precision, so numeric evaluation is
//! deferred to the arbitrary-precision layer.

use crate::error::{Error, Result};
use crate::fan::RayClass;
use crate::hp::{HpCtx, HpC};
use crate::lattice::LatticeVector;
use crate::num::{Int, Rat};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::testconfig::ToricTestConfiguration;
use crate::toric::ToricDivisor;
use num_traits::{One, Signed, Zero};

/// Exact scaled coefficient `man * e^{2 pi k * log}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRat {
    pub log: Rat,
    pub man: Rat,
}

impl ScaledRat {
    pub fn new(log: Rat, man: Rat) -> Self {
        if man.is_zero() {
            ScaledRat {
                log: Rat::zero(),
                man,
            }
        } else {
            ScaledRat { log, man }
        }
    }

    pub fn zero() -> Self {
        ScaledRat {
            log: Rat::zero(),
            man: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        ScaledRat {
            log: Rat::zero(),
            man: Rat::one(),
        }
    }

    pub fn from_rat(man: Rat) -> Self {
        ScaledRat::new(Rat::zero(), man)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        ScaledRat::new(self.log.clone(), &self.man * r)
    }

    pub fn mul(&self, o: &ScaledRat) -> Self {
        ScaledRat::new(&self.log + &o.log, &self.man * &o.man)
    }

    pub fn div(&self, o: &ScaledRat) -> Self {
        assert!(!o.man.is_zero(), "division by zero coefficient");
        ScaledRat::new(&self.log - &o.log, &self.man / &o.man)
    }

    /// Exact rational value when the exponential factor is trivial.
    pub fn as_exact(&self) -> Option<Rat> {
        if self.log.is_zero() || self.man.is_zero() {
            Some(self.man.clone())
        } else {
            None
        }
    }

    /// Numeric value `man * e^{2 pi k log}` at the given scale.
    pub fn eval(&self, k: &Rat, ctx: &HpCtx) -> astro_float::BigFloat {
        let man = ctx.from_rat(&self.man);
        if self.log.is_zero() {
            return man;
        }
        let arg = ctx.mul(
            &ctx.two_pi(),
            &ctx.from_rat(&(k * &self.log)),
        );
        ctx.mul(&man, &ctx.exp(&arg))
    }
}

/// A formal section: exponents with scaled coefficients. Orders are kept
/// sorted by exponent so reports are stable.
pub type Section = Vec<(LatticeVector, ScaledRat)>;

/// Laurent polynomial mirror to a polarised test configuration at scale
/// `k`: one term per ray of the total fan, with log-coefficient minus the
/// polarisation coefficient.
#[derive(Debug, Clone)]
pub struct LGPotential {
    pub terms: Section,
    pub k: Rat,
    pub dim: usize,
    /// Set when the anticanonical class of the total space is not nef, in
    /// which case the leading-order mirror rule is uncontrolled.
    pub weak_fano_warning: bool,
}

impl LGPotential {
    pub fn coefficient_at(&self, exponent: &LatticeVector) -> Option<&ScaledRat> {
        self.terms
            .iter()
            .find(|(m, _)| m == exponent)
            .map(|(_, c)| c)
    }

    /// Exponent vectors of the support.
    pub fn exponents(&self) -> Vec<LatticeVector> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }

    /// Evaluate all term coefficients numerically at the potential's scale.
    pub fn numeric_terms(&self, ctx: &HpCtx) -> Vec<(LatticeVector, astro_float::BigFloat)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.eval(&self.k, ctx)))
            .collect()
    }

    /// Evaluate the potential at log coordinates `u` (`x = e^u`).
    pub fn eval_log(&self, u: &[HpC], ctx: &HpCtx) -> HpC {
        let mut acc = HpC::zero(ctx);
        for (m, c) in &self.terms {
            let t = term_value(m, c, &self.k, u, ctx);
            acc = acc.add(&t, ctx);
        }
        acc
    }
}

/// One term `man * exp(2 pi k log + <m, u>)` at log coordinates `u`.
pub fn term_value(
    m: &LatticeVector,
    c: &ScaledRat,
    k: &Rat,
    u: &[HpC],
    ctx: &HpCtx,
) -> HpC {
    let mut arg = HpC::new(
        ctx.mul(&ctx.two_pi(), &ctx.from_rat(&(k * &c.log))),
        ctx.zero(),
    );
    for (mi, ui) in m.0.iter().zip(u) {
        if mi.is_zero() {
            continue;
        }
        let s = ui.scale(&ctx.from_rat(&Rat::from(mi.clone())), ctx);
        arg = arg.add(&s, ctx);
    }
    arg.exp(ctx).scale(&ctx.from_rat(&c.man), ctx)
}

/// Build the mirror potential of a test configuration at scale `k`: the
/// term at each ray `b_rho` carries log-coefficient `-a_rho`. Changing the
/// divisor representative by a functional only rescales the torus
/// coordinates.
pub fn build_potential(tc: &ToricTestConfiguration, k: &Rat) -> LGPotential {
    let mut terms: Section = tc
        .total_fan
        .rays
        .iter()
        .zip(&tc.polarisation.coeffs)
        .map(|(b, a)| (b.clone(), ScaledRat::new(-a.clone(), Rat::one())))
        .collect();
    terms.sort_by(|x, y| x.0.cmp(&y.0));
    let minus_k = crate::toric::canonical_divisor(&tc.total_fan).scale(&-Rat::one());
    let weak_fano_warning = crate::toric::divisor_polytope(&tc.total_fan, &minus_k).is_err();
    LGPotential {
        terms,
        k: k.clone(),
        dim: tc.total_fan.dim,
        weak_fano_warning,
    }
}

/// Split the potential along the fibration: terms with `<lambda, m> = 0`
/// form the potential of the generic fiber; the rest is the deformation.
pub fn deformation_split(w: &LGPotential, lambda: &LatticeVector) -> (Section, Section) {
    let mut fiber = Vec::new();
    let mut rest = Vec::new();
    for (m, c) in &w.terms {
        if lambda.dot(m).is_zero() {
            fiber.push((m.clone(), c.clone()));
        } else {
            rest.push((m.clone(), c.clone()));
        }
    }
    (fiber, rest)
}

/// Leading-order image of a divisor class in the Jacobi ring: the sum of
/// its ray coefficients times the potential terms at those rays. Valid at
/// leading large-volume order for weak Fano total spaces.
pub fn divisor_to_jacobi_leading(d: &ToricDivisor, tc: &ToricTestConfiguration, w: &LGPotential) -> Section {
    let mut out: Section = Vec::new();
    for (b, c) in tc.total_fan.rays.iter().zip(&d.coeffs) {
        if c.is_zero() {
            continue;
        }
        let term = w
            .coefficient_at(b)
            .expect("potential has a term at every ray");
        out.push((b.clone(), term.mul_rat(c)));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// The rational `r` with the polarisation linearly equivalent to `r`
/// times the anticanonical divisor, when it exists: solve
/// `a_rho = r + <m, b_rho>` for `(r, m)` over the rationals.
pub fn anticanonical_multiple(tc: &ToricTestConfiguration) -> Option<Rat> {
    let d = tc.total_fan.dim;
    let rays = &tc.total_fan.rays;
    // Unknowns: r and the d components of m.
    let rows: Vec<Vec<Rat>> = rays
        .iter()
        .map(|b| {
            std::iter::once(Rat::one())
                .chain(b.0.iter().map(|c| Rat::from(c.clone())))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = tc.polarisation.coeffs.clone();
    // Least-structure exact solve: Gaussian elimination with consistency.
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .zip(&rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let cols = d + 1;
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].clone().recip();
        for j in 0..=cols {
            a[row][j] = &a[row][j] * &inv;
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..=cols {
                let t = &f * &a[row][j];
                a[r][j] = &a[r][j] - &t;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    for r in row..a.len() {
        if !a[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for &(r, c) in &pivots {
        sol[c] = a[r][cols].clone();
    }
    Some(sol[0].clone())
}

/// The polarisation class at leading order: `r W` termwise when the
/// polarisation is linearly equivalent to `r` times the anticanonical
/// (the Jacobi-ring image is representative independent, and the balanced
/// representative realises it termwise); otherwise the image of the
/// stored representative.
pub fn theta_class(tc: &ToricTestConfiguration, w: &LGPotential) -> Section {
    if let Some(r) = anticanonical_multiple(tc) {
        return w
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.mul_rat(&r)))
            .collect();
    }
    divisor_to_jacobi_leading(&tc.polarisation, tc, w)
}

/// The relative canonical class at leading order plus the potential:
/// supported on the rays with nonzero pairing against the fibration
/// functional, weighted by the multiplicity. Returns the section together
/// with a flag raised when some multiplicity exceeds one (the desk-scale
/// examples all have multiplicity one; larger values are computed with
/// the weight `|<lambda, b>|` but deserve review).
pub fn psi_class(tc: &ToricTestConfiguration, w: &LGPotential) -> (Section, bool) {
    let mut out: Section = Vec::new();
    let mut high_multiplicity = false;
    for (ri, b) in tc.total_fan.rays.iter().enumerate() {
        let mult = match &tc.projection.classification[ri] {
            RayClass::Fiber => continue,
            RayClass::OverZero(m) | RayClass::OverInf(m) => m.clone(),
        };
        if mult > Int::one() {
            high_multiplicity = true;
        }
        let term = w
            .coefficient_at(b)
            .expect("potential has a term at every ray");
        out.push((b.clone(), term.mul_rat(&Rat::from(mult))));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    (out, high_multiplicity)
}

/// Hull of the exponents.
pub fn newton_polytope(w: &LGPotential) -> Result<LatticePolytope> {
    if w.terms.is_empty() {
        return Err(Error::InvalidInput("empty potential".into()));
    }
    convex_hull(&w.exponents())
}

/// Verify the scaling hypothesis of the vanishing theorem: the
/// polarisation class equals `r` times the potential termwise for some
/// positive rational `r`, returned on success.
pub fn theta_proportionality(tc: &ToricTestConfiguration, w: &LGPotential) -> Result<Rat> {
    let theta = theta_class(tc, w);
    if theta.len() != w.terms.len() {
        return Err(Error::HypothesisFailed(
            "polarisation class not supported on all rays".into(),
        ));
    }
    let mut ratio: Option<Rat> = None;
    for ((m1, c1), (m2, c2)) in theta.iter().zip(&w.terms) {
        if m1 != m2 || c1.log != c2.log {
            return Err(Error::HypothesisFailed(
                "polarisation class is not proportional to the potential".into(),
            ));
        }
        let r = &c1.man / &c2.man;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            _ => {
                return Err(Error::HypothesisFailed(
                    "polarisation class is not proportional to the potential".into(),
                ))
            }
        }
    }
    let r = ratio.ok_or_else(|| Error::HypothesisFailed("empty potential".into()))?;
    if !r.is_positive() {
        return Err(Error::HypothesisFailed("proportionality factor not positive".into()));
    }
    Ok(r)
}
