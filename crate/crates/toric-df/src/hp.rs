//! Arbitrary-precision real and complex arithmetic for the critical point
//! solver and the residue sums. A thin layer over binary big-floats with a
//! shared context carrying the working precision (256 bits by default,
//! configurable) and the cached transcendental constants.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use std::cell::RefCell;

use crate::num::{Int, Rat};

pub struct HpCtx {
    pub prec: usize,
    rm: RoundingMode,
    cc: RefCell<Consts>,
}

impl HpCtx {
    pub fn new(prec: usize) -> Self {
        HpCtx {
            prec,
            rm: RoundingMode::ToEven,
            cc: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_f64(0.0, self.prec)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_f64(1.0, self.prec)
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn from_int(&self, v: &Int) -> BigFloat {
        let mut cc = self.cc.borrow_mut();
        BigFloat::parse(&v.to_string(), Radix::Dec, self.prec, self.rm, &mut cc)
    }

    pub fn from_rat(&self, v: &Rat) -> BigFloat {
        let n = self.from_int(v.numer());
        let d = self.from_int(v.denom());
        n.div(&d, self.prec, self.rm)
    }

    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.prec, self.rm)
    }

    pub fn two_pi(&self) -> BigFloat {
        self.pi().mul(&self.from_f64(2.0), self.prec, self.rm)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, self.rm, &mut self.cc.borrow_mut())
    }

    /// Nearest integer (as a big float).
    pub fn round_to_int(&self, a: &BigFloat) -> BigFloat {
        a.round(0, RoundingMode::ToEven)
    }

    /// `a < b` on finite values.
    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.cmp(b), Some(c) if c < 0)
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let mut t = a.clone();
        let _ = t.set_precision(53, self.rm);
        let s = t
            .format(Radix::Dec, self.rm, &mut self.cc.borrow_mut())
            .unwrap_or_else(|_| "0".into());
        parse_sci(&s)
    }

    /// Decimal string with roughly `digits` significant digits.
    pub fn to_decimal(&self, a: &BigFloat, digits: usize) -> String {
        let bits = (digits as f64 * 3.33).ceil() as usize + 8;
        let mut t = a.clone();
        let _ = t.set_precision(bits.min(self.prec.max(64)), self.rm);
        t.format(Radix::Dec, self.rm, &mut self.cc.borrow_mut())
            .unwrap_or_else(|_| "nan".into())
    }
}

fn parse_sci(s: &str) -> f64 {
    // Big-float decimal output uses `e+exp` / `e-exp` notation compatible
    // with the standard parser.
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Complex number over big floats.
#[derive(Debug, Clone)]
pub struct HpC {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpC {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        HpC { re, im }
    }

    pub fn zero(ctx: &HpCtx) -> Self {
        HpC::new(ctx.zero(), ctx.zero())
    }

    pub fn one(ctx: &HpCtx) -> Self {
        HpC::new(ctx.one(), ctx.zero())
    }

    pub fn from_f64(ctx: &HpCtx, re: f64, im: f64) -> Self {
        HpC::new(ctx.from_f64(re), ctx.from_f64(im))
    }

    pub fn from_rat(ctx: &HpCtx, re: &Rat) -> Self {
        HpC::new(ctx.from_rat(re), ctx.zero())
    }

    pub fn add(&self, o: &HpC, ctx: &HpCtx) -> HpC {
        HpC::new(ctx.add(&self.re, &o.re), ctx.add(&self.im, &o.im))
    }

    pub fn sub(&self, o: &HpC, ctx: &HpCtx) -> HpC {
        HpC::new(ctx.sub(&self.re, &o.re), ctx.sub(&self.im, &o.im))
    }

    pub fn neg(&self) -> HpC {
        HpC::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &HpC, ctx: &HpCtx) -> HpC {
        let re = ctx.sub(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im));
        let im = ctx.add(&ctx.mul(&self.re, &o.im), &ctx.mul(&self.im, &o.re));
        HpC::new(re, im)
    }

    pub fn scale(&self, s: &BigFloat, ctx: &HpCtx) -> HpC {
        HpC::new(ctx.mul(&self.re, s), ctx.mul(&self.im, s))
    }

    pub fn div(&self, o: &HpC, ctx: &HpCtx) -> HpC {
        let d = o.abs2(ctx);
        let num = self.mul(&HpC::new(o.re.clone(), o.im.neg()), ctx);
        HpC::new(ctx.div(&num.re, &d), ctx.div(&num.im, &d))
    }

    pub fn abs2(&self, ctx: &HpCtx) -> BigFloat {
        ctx.add(
            &ctx.mul(&self.re, &self.re),
            &ctx.mul(&self.im, &self.im),
        )
    }

    pub fn abs(&self, ctx: &HpCtx) -> BigFloat {
        ctx.sqrt(&self.abs2(ctx))
    }

    /// `exp(re) (cos(im) + i sin(im))`.
    pub fn exp(&self, ctx: &HpCtx) -> HpC {
        let r = ctx.exp(&self.re);
        HpC::new(ctx.mul(&r, &ctx.cos(&self.im)), ctx.mul(&r, &ctx.sin(&self.im)))
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    /// Reduce the imaginary part into `(-pi, pi]` (log coordinates are
    /// periodic with period `2 pi i`).
    pub fn reduce_imag(&self, ctx: &HpCtx) -> HpC {
        let two_pi = ctx.two_pi();
        let t = ctx.div(&self.im, &two_pi);
        let k = ctx.round_to_int(&t);
        let im = ctx.sub(&self.im, &ctx.mul(&k, &two_pi));
        HpC::new(self.re.clone(), im)
    }

    pub fn approx(&self, ctx: &HpCtx) -> (f64, f64) {
        (ctx.to_f64(&self.re), ctx.to_f64(&self.im))
    }
}

/// Euclidean norm squared of a complex vector.
pub fn vec_abs2(v: &[HpC], ctx: &HpCtx) -> BigFloat {
    v.iter()
        .fold(ctx.zero(), |acc, z| ctx.add(&acc, &z.abs2(ctx)))
}

/// Solve a small dense complex linear system in place: `A x = b`.
/// Partial pivoting on the squared modulus; `None` when singular at
/// working precision (pivot below `2^-(prec - 8)` relative scale).
pub fn solve_complex(a: &mut [Vec<HpC>], b: &mut [HpC], ctx: &HpCtx) -> Option<Vec<HpC>> {
    let n = b.len();
    for col in 0..n {
        let mut best = col;
        let mut best_mag = a[col][col].abs2(ctx);
        for r in col + 1..n {
            let m = a[r][col].abs2(ctx);
            if ctx.lt(&best_mag, &m) {
                best = r;
                best_mag = m;
            }
        }
        if best_mag.is_zero() {
            return None;
        }
        a.swap(col, best);
        b.swap(col, best);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col].div(&pivot, ctx);
            for c in col..n {
                let t = f.mul(&a[col][c], ctx);
                a[r][c] = a[r][c].sub(&t, ctx);
            }
            let t = f.mul(&b[col], ctx);
            b[r] = b[r].sub(&t, ctx);
        }
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        x.push(b[i].div(&a[i][i], ctx));
    }
    Some(x)
}

/// Determinant of a small dense complex matrix.
pub fn det_complex(m: &[Vec<HpC>], ctx: &HpCtx) -> HpC {
    let n = m.len();
    match n {
        0 => HpC::one(ctx),
        1 => m[0][0].clone(),
        2 => {
            let a = m[0][0].mul(&m[1][1], ctx);
            let b = m[0][1].mul(&m[1][0], ctx);
            a.sub(&b, ctx)
        }
        3 => {
            let mut acc = HpC::zero(ctx);
            for (i, sign) in [(0usize, 1f64), (1, -1.0), (2, 1.0)] {
                let j = (i + 1) % 3;
                let k = (i + 2) % 3;
                let minor = m[1][j].mul(&m[2][k], ctx).sub(&m[1][k].mul(&m[2][j], ctx), ctx);
                let term = m[0][i].mul(&minor, ctx);
                acc = if sign > 0.0 {
                    acc.add(&term, ctx)
                } else {
                    acc.sub(&term, ctx)
                };
            }
            acc
        }
        _ => {
            // LU with pivoting for larger sizes.
            let mut a: Vec<Vec<HpC>> = m.to_vec();
            let mut det = HpC::one(ctx);
            for col in 0..n {
                let mut best = col;
                let mut best_mag = a[col][col].abs2(ctx);
                for r in col + 1..n {
                    let mag = a[r][col].abs2(ctx);
                    if ctx.lt(&best_mag, &mag) {
                        best = r;
                        best_mag = mag;
                    }
                }
                if best_mag.is_zero() {
                    return HpC::zero(ctx);
                }
                if best != col {
                    a.swap(col, best);
                    det = det.neg();
                }
                det = det.mul(&a[col][col], ctx);
                let pivot = a[col][col].clone();
                for r in col + 1..n {
                    let f = a[r][col].div(&pivot, ctx);
                    for c in col..n {
                        let t = f.mul(&a[col][c], ctx);
                        a[r][c] = a[r][c].sub(&t, ctx);
                    }
                }
            }
            det
        }
    }
}

/// `|a - b|` below `10^-digits` (absolute comparison helper for tests).
pub fn agrees_to_digits(a: &HpC, b: &HpC, digits: i32, ctx: &HpCtx) -> bool {
    let diff = a.sub(b, ctx).abs(ctx);
    let tol = pow10(ctx, -digits);
    ctx.lt(&diff, &tol)
}

pub fn pow10(ctx: &HpCtx, e: i32) -> BigFloat {
    let ten = ctx.from_f64(10.0);
    let mut acc = ctx.one();
    for _ in 0..e.unsigned_abs() {
        acc = ctx.mul(&acc, &ten);
    }
    if e < 0 {
        ctx.div(&ctx.one(), &acc)
    } else {
        acc
    }
}

/// Convenience: the rational `p/q` as a float in this context.
pub fn rat_f(ctx: &HpCtx, p: i64, q: i64) -> BigFloat {
    ctx.from_rat(&Rat::new(Int::from(p), Int::from(q)))
}

impl std::fmt::Display for HpC {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn exp_of_log_two() {
        let ctx = HpCtx::new(256);
        let half = ctx.from_rat(&rat(1, 2));
        let e_half = ctx.exp(&half);
        // exp(1/2)^2 = e
        let sq = ctx.mul(&e_half, &e_half);
        let e = ctx.exp(&ctx.one());
        let diff = ctx.sub(&sq, &e);
        assert!(ctx.lt(&diff.abs(), &pow10(&ctx, -70)));
    }

    #[test]
    fn complex_exp_periodicity() {
        let ctx = HpCtx::new(256);
        let z = HpC::new(ctx.from_f64(0.25), ctx.pi());
        let w = z.exp(&ctx);
        // exp(1/4 + i pi) = -exp(1/4)
        let expect = ctx.exp(&ctx.from_f64(0.25)).neg();
        assert!(ctx.lt(&ctx.sub(&w.re, &expect).abs(), &pow10(&ctx, -70)));
        assert!(ctx.lt(&w.im.abs(), &pow10(&ctx, -70)));
    }

    #[test]
    fn reduce_imag_into_principal_band() {
        let ctx = HpCtx::new(192);
        let z = HpC::new(ctx.zero(), ctx.mul(&ctx.pi(), &ctx.from_f64(7.5)));
        let r = z.reduce_imag(&ctx);
        let (_, im) = r.approx(&ctx);
        assert!(im.abs() <= std::f64::consts::PI + 1e-12);
    }

    #[test]
    fn solve_small_complex_system() {
        let ctx = HpCtx::new(192);
        // (1 + i) x = 2i  =>  x = 1 + i
        let mut a = vec![vec![HpC::from_f64(&ctx, 1.0, 1.0)]];
        let mut b = vec![HpC::from_f64(&ctx, 0.0, 2.0)];
        let x = solve_complex(&mut a, &mut b, &ctx).unwrap();
        let (re, im) = x[0].approx(&ctx);
        assert!((re - 1.0).abs() < 1e-40 && (im - 1.0).abs() < 1e-40);
    }

    #[test]
    fn det_three_by_three() {
        let ctx = HpCtx::new(128);
        let m: Vec<Vec<HpC>> = vec![
            vec![
                HpC::from_f64(&ctx, 2.0, 0.0),
                HpC::from_f64(&ctx, 0.0, 0.0),
                HpC::from_f64(&ctx, 1.0, 0.0),
            ],
            vec![
                HpC::from_f64(&ctx, 0.0, 0.0),
                HpC::from_f64(&ctx, 3.0, 0.0),
                HpC::from_f64(&ctx, 0.0, 0.0),
            ],
            vec![
                HpC::from_f64(&ctx, 1.0, 0.0),
                HpC::from_f64(&ctx, 0.0, 0.0),
                HpC::from_f64(&ctx, 1.0, 0.0),
            ],
        ];
        let d = det_complex(&m, &ctx);
        let (re, im) = d.approx(&ctx);
        assert!((re - 3.0).abs() < 1e-30 && im.abs() < 1e-30);
    }
}
