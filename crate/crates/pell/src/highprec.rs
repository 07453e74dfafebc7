//! Arbitrary-precision evaluation of the analytic forms, plus an exact
//! integer reduction of the unit sandwich.
//!
//! The sandwich B (f(n) - 1) < (alpha + beta sqrt(D))^n < B f(n), with
//! B = 2 sqrt(D) / (1 + sqrt(D)), pins the power between consecutive
//! multiples of B. Its margins shrink like the square of f(n), so doubles
//! stop resolving it near n = 9 even for D = 2. Two independent routes are
//! kept: big-float arithmetic at a precision chosen from the size of f(n),
//! and a rearrangement into pure integer comparisons.

use crate::fundamental::FundamentalSolution;
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;
use num_traits::Zero;
use std::cmp::Ordering;

const RM: RoundingMode = RoundingMode::ToEven;

/// Exact conversion: every integer is representable in binary floating
/// point of unbounded mantissa.
fn big_to_float(x: &BigUint) -> BigFloat {
    if x.is_zero() {
        return BigFloat::from_u64(0, 64);
    }
    let words = x.to_u64_digits();
    BigFloat::from_words(&words, Sign::Pos, (words.len() * 64) as i32)
}

fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.partial_cmp(b), Some(Ordering::Less))
}

/// Big-float evaluator pinned to one instance and one working precision.
pub struct ExtendedEval {
    p: usize,
    cc: Consts,
    fund: FundamentalSolution,
    d: BigFloat,
    sqrt_d: BigFloat,
    unit_log: BigFloat,
}

impl ExtendedEval {
    /// `bits` is the working mantissa precision; values below 128 are
    /// raised to 128.
    pub fn new(fund: &FundamentalSolution, bits: usize) -> Self {
        let p = bits.max(128);
        let mut cc = Consts::new().expect("constants cache");
        let d = big_to_float(fund.d());
        let sqrt_d = d.sqrt(p, RM);
        let alpha = big_to_float(fund.alpha());
        let beta = big_to_float(fund.beta());
        let unit = alpha.add(&beta.mul(&sqrt_d, p, RM), p, RM);
        let unit_log = unit.ln(p, RM, &mut cc);
        Self {
            p,
            cc,
            fund: fund.clone(),
            d,
            sqrt_d,
            unit_log,
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn from_biguint(&self, x: &BigUint) -> BigFloat {
        big_to_float(x)
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    fn one(&self) -> BigFloat {
        BigFloat::from_u64(1, self.p)
    }

    /// cosh(Lx) + sinh(Lx)/sqrt(D) at working precision.
    pub fn f_real(&mut self, x: &BigFloat) -> BigFloat {
        let t = self.unit_log.mul(x, self.p, RM);
        let ch = t.cosh(self.p, RM, &mut self.cc);
        let sh = t.sinh(self.p, RM, &mut self.cc);
        ch.add(&sh.div(&self.sqrt_d, self.p, RM), self.p, RM)
    }

    /// acosh((Dx - sqrt(Dx^2 - D + 1)) / (D - 1)) / L at working precision.
    pub fn g_arccosh(&mut self, x: &BigFloat) -> BigFloat {
        let p = self.p;
        let one = self.one();
        let dm1 = self.d.sub(&one, p, RM);
        let dx2 = self.d.mul(x, p, RM).mul(x, p, RM);
        let s = dx2.sub(&dm1, p, RM).sqrt(p, RM);
        let arg = self.d.mul(x, p, RM).sub(&s, p, RM).div(&dm1, p, RM);
        arg.acosh(p, RM, &mut self.cc).div(&self.unit_log, p, RM)
    }

    /// |f(g(x)) - x| / x at working precision.
    pub fn round_trip_rel_error(&mut self, x: &BigFloat) -> BigFloat {
        let g = self.g_arccosh(x);
        let back = self.f_real(&g);
        let diff = back.sub(x, self.p, RM).abs();
        diff.div(x, self.p, RM)
    }

    /// Checks B (f(n) - 1) < u_n + v_n sqrt(D) < B f(n) numerically. The
    /// power and f(n) enter from exact integer coefficients; only sqrt(D),
    /// B, and the products are rounded. Callers should size the precision
    /// with [`sandwich_precision`]: the right margin is about
    /// (D - 1) / (2 D f(n)^2) in relative terms.
    pub fn sandwich_holds(&mut self, n: u64) -> bool {
        let p = self.p;
        let t = self.fund.term(n);
        let u = big_to_float(&t.u);
        let v = big_to_float(&t.v);
        let f = u.add(&v, p, RM);
        let power = u.add(&v.mul(&self.sqrt_d, p, RM), p, RM);
        let one = self.one();
        let two_sqrt = self.sqrt_d.add(&self.sqrt_d, p, RM);
        let b = two_sqrt.div(&one.add(&self.sqrt_d, p, RM), p, RM);
        let lo = b.mul(&f.sub(&one, p, RM), p, RM);
        let hi = b.mul(&f, p, RM);
        lt(&lo, &power) && lt(&power, &hi)
    }
}

/// Working precision that resolves the sandwich at index n: twice the bit
/// length of f(n) (the squared relative margin) plus slack.
pub fn sandwich_precision(fund: &FundamentalSolution, n: u64) -> usize {
    let t = fund.term(n);
    let f_bits = (&t.u + &t.v).bits() as usize;
    2 * f_bits + 128
}

/// The sandwich rearranged into integer comparisons, removing rounding
/// from the verdict entirely. With f = u + v and m = u + vD:
/// the upper bound is m^2 < D f^2 (their difference is exactly D - 1),
/// and the lower bound is f < 2 or (f - 2)^2 D < m^2.
pub fn sandwich_holds_exact(fund: &FundamentalSolution, n: u64) -> bool {
    let t = fund.term(n);
    let d = fund.d();
    let f = &t.u + &t.v;
    let m = &t.u + &t.v * d;
    let upper = &m * &m < d * &f * &f;
    let lower = if f < BigUint::from(2u32) {
        true
    } else {
        let fm2 = &f - 2u32;
        &fm2 * &fm2 * d < &m * &m
    };
    upper && lower
}
