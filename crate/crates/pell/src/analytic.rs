//! Real-valued interpolants of the solution sequence and the corrected
//! floor formula.
//!
//! The doubles here are a fast path only. Every quantity a count depends on
//! is re-derived exactly: the floor of g comes from walking the integer
//! recurrence, with the float formula serving as a candidate that must land
//! within one step of the truth.

use crate::error::PellError;
use crate::fundamental::FundamentalSolution;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Floor evaluation with telemetry about the float fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorG {
    /// The exact floor value.
    pub n: u64,
    /// Floating-point candidate before correction.
    pub candidate: i64,
    /// n - candidate; always in {-1, 0, 1}.
    pub correction: i8,
}

impl FloorG {
    pub fn corrected(&self) -> bool {
        self.correction != 0
    }
}

/// Precomputed real constants for one instance.
#[derive(Debug, Clone)]
pub struct AnalyticContext {
    fund: FundamentalSolution,
    d_real: f64,
    sqrt_d: f64,
    /// log(alpha + beta sqrt(D))
    unit_log: f64,
    /// log(2 sqrt(D) / (1 + sqrt(D)))
    c: f64,
}

impl AnalyticContext {
    pub fn new(fund: &FundamentalSolution) -> Self {
        let d_real = fund.d().to_f64().unwrap_or(f64::INFINITY);
        let sqrt_d = d_real.sqrt();
        Self {
            fund: fund.clone(),
            d_real,
            sqrt_d,
            unit_log: unit_log(fund),
            c: (2.0 * sqrt_d / (1.0 + sqrt_d)).ln(),
        }
    }

    pub fn fundamental(&self) -> &FundamentalSolution {
        &self.fund
    }

    /// log(alpha + beta sqrt(D)).
    pub fn unit_log(&self) -> f64 {
        self.unit_log
    }

    /// The additive constant log(2 sqrt(D) / (1 + sqrt(D))).
    pub fn constant_c(&self) -> f64 {
        self.c
    }

    fn check_nonneg(&self, x: f64) -> Result<(), PellError> {
        if x >= 0.0 {
            Ok(())
        } else {
            Err(PellError::NegativeArgument { x })
        }
    }

    fn check_domain(&self, x: f64) -> Result<(), PellError> {
        if x >= 1.0 {
            Ok(())
        } else {
            Err(PellError::DomainError { x })
        }
    }

    /// cosh(unit_log * x): the even interpolant through the u_n.
    pub fn u_real(&self, x: f64) -> Result<f64, PellError> {
        self.check_nonneg(x)?;
        Ok((self.unit_log * x).cosh())
    }

    /// sinh(unit_log * x) / sqrt(D): the odd interpolant through the v_n.
    pub fn v_real(&self, x: f64) -> Result<f64, PellError> {
        self.check_nonneg(x)?;
        Ok((self.unit_log * x).sinh() / self.sqrt_d)
    }

    /// u_real + v_real; strictly increasing with f(0) = 1.
    pub fn f_real(&self, x: f64) -> Result<f64, PellError> {
        self.check_nonneg(x)?;
        let t = self.unit_log * x;
        Ok(t.cosh() + t.sinh() / self.sqrt_d)
    }

    /// Inverse of f_real via arccosh.
    pub fn g_arccosh(&self, x: f64) -> Result<f64, PellError> {
        self.check_domain(x)?;
        let d = self.d_real;
        let s = (d * x * x - d + 1.0).sqrt();
        // The argument is >= 1 for x >= 1; clamp away last-ulp dips.
        let arg = ((d * x - s) / (d - 1.0)).max(1.0);
        Ok(arg.acosh() / self.unit_log)
    }

    /// The same inverse written out with logarithms and nested radicals.
    pub fn g_log(&self, x: f64) -> Result<f64, PellError> {
        self.check_domain(x)?;
        let d = self.d_real;
        let s = (d * x * x - d + 1.0).sqrt();
        let radicand = ((d + 1.0) * x * x - d + 1.0 - 2.0 * x * s).max(0.0);
        let inner = d * x - s + self.sqrt_d * radicand.sqrt();
        Ok((inner.ln() - (d - 1.0).ln()) / self.unit_log)
    }

    /// Floor of g at an exact integer argument: the float candidate
    /// floor((log x + C) / unit_log) corrected against the exact sequence
    /// walk. A candidate more than one step off is an internal error.
    pub fn floor_g_int(&self, x: &BigUint) -> Result<FloorG, PellError> {
        if x.is_zero() {
            return Err(PellError::LambdaTooSmall);
        }
        let candidate = ((ln_big(x) + self.c) / self.unit_log).floor() as i64;
        let exact = self
            .fund
            .max_term_index(x)
            .expect("x >= 1 admits the n = 0 term");
        let delta = exact as i64 - candidate;
        if delta.unsigned_abs() > 1 {
            return Err(PellError::PrecisionFailure { candidate, exact });
        }
        Ok(FloorG {
            n: exact,
            candidate,
            correction: delta as i8,
        })
    }

    /// Floor of g for a double argument x >= 1.
    pub fn floor_g(&self, x: f64) -> Result<FloorG, PellError> {
        if !x.is_finite() || x < 1.0 {
            return Err(PellError::DomainError { x });
        }
        let fx = BigUint::from_f64(x.floor()).expect("finite and >= 1");
        self.floor_g_int(&fx)
    }

    /// Floor of g at an exact rational argument x >= 1. Exactness of the
    /// floor of x matters: boundary radii like f(n) for large n are not
    /// representable in a double.
    pub fn floor_g_rational(&self, x: &BigRational) -> Result<FloorG, PellError> {
        if x < &BigRational::one() {
            return Err(PellError::DomainError {
                x: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        let fx = x
            .floor()
            .to_integer()
            .to_biguint()
            .expect("x >= 1 has non-negative floor");
        self.floor_g_int(&fx)
    }

    /// Residual g(x) - floor_g(x), in [0, 1). Zero exactly at x = f(n);
    /// downward float noise at those zeros is clamped to 0 (the floor under
    /// the residual is exact, the g value is not).
    pub fn mu(&self, x: f64) -> Result<f64, PellError> {
        let g = self.g_arccosh(x)?;
        let fl = self.floor_g(x)?;
        Ok((g - fl.n as f64).max(0.0))
    }

    /// The residual with an exact rational argument: exact floor, double g.
    pub fn mu_rational(&self, x: &BigRational) -> Result<f64, PellError> {
        let fl = self.floor_g_rational(x)?;
        let g = self.g_arccosh(x.to_f64().unwrap_or(f64::INFINITY))?;
        Ok((g - fl.n as f64).max(0.0))
    }
}

/// Natural log of a positive big integer, good to a few ulp: the top 53
/// bits carry the mantissa, the discarded bits shift by log 2 each.
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// log(alpha + beta sqrt(D)) without forming the unit in a double when
/// alpha alone would exhaust the mantissa. For large alpha the unit is
/// 2 alpha - 1/(alpha + beta sqrt(D)); the reciprocal is far below the
/// 53-bit horizon, so log(2 alpha) is exact enough.
fn unit_log(fund: &FundamentalSolution) -> f64 {
    let alpha = fund.alpha();
    if alpha.bits() <= 52 {
        let a = alpha.to_f64().expect("small");
        let b = fund.beta().to_f64().expect("beta < alpha");
        let d = fund.d().to_f64().unwrap_or(f64::INFINITY);
        (a + b * d.sqrt()).ln()
    } else {
        ln_big(alpha) + std::f64::consts::LN_2
    }
}
