//! Fundamental solution via the periodic continued fraction of sqrt(D).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// The minimal positive solution (alpha, beta) of x^2 - D y^2 = 1, kept
/// with its modulus. All arithmetic producing it is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSolution {
    d: BigUint,
    alpha: BigUint,
    beta: BigUint,
}

impl FundamentalSolution {
    /// Expands sqrt(D) as a continued fraction, folding convergents until
    /// the period closes. An even period yields the solution directly; an
    /// odd period yields the unit of x^2 - D y^2 = -1, which is squared.
    ///
    /// Caller guarantees D >= 2 and non-square (see `PellInstance`).
    pub(crate) fn solve(d: &BigUint) -> Self {
        let a0 = d.sqrt();
        debug_assert!(&(&a0 * &a0) != d, "caller validates non-square D");
        // State of the expansion: the surd (sqrt(D) + m) / den.
        let mut m = BigUint::zero();
        let mut den = BigUint::one();
        let mut a = a0.clone();
        // Current and previous convergents h/k.
        let mut h_prev = BigUint::one();
        let mut k_prev = BigUint::zero();
        let mut h = a0.clone();
        let mut k = BigUint::one();
        // Parity of the period index about to be tested (true = odd).
        let mut odd = true;
        loop {
            m = &den * &a - &m;
            den = (d - &m * &m) / &den;
            if den.is_one() {
                // Period closed; the current convergent solves
                // h^2 - D k^2 = (-1)^period.
                return if odd {
                    let alpha = &h * &h + d * &k * &k;
                    let beta = &h * &k * 2u32;
                    Self {
                        d: d.clone(),
                        alpha,
                        beta,
                    }
                } else {
                    Self {
                        d: d.clone(),
                        alpha: h,
                        beta: k,
                    }
                };
            }
            a = (&a0 + &m) / &den;
            let h_next = &a * &h + &h_prev;
            let k_next = &a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            odd = !odd;
        }
    }

    /// Build from precomputed components, bypassing the continued fraction.
    /// Test-only: callers must supply a genuine solution pair.
    #[cfg(test)]
    pub(crate) fn solve_for_tests(d: BigUint, alpha: BigUint, beta: BigUint) -> Self {
        debug_assert_eq!(&alpha * &alpha, &d * &beta * &beta + 1u32);
        Self { d, alpha, beta }
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn alpha(&self) -> &BigUint {
        &self.alpha
    }

    pub fn beta(&self) -> &BigUint {
        &self.beta
    }

    /// alpha + beta * sqrt(D) as a double, for display only.
    pub fn unit_value(&self) -> f64 {
        let a = self.alpha.to_f64().unwrap_or(f64::INFINITY);
        let b = self.beta.to_f64().unwrap_or(f64::INFINITY);
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        a + b * d.sqrt()
    }
}
