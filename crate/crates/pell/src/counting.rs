//! Counting and enumerating solutions inside the L1 ball |x| + |y| <= lambda.
//!
//! Three routes produce the same number: walking the exact recurrence until
//! the L1 size leaves the ball, the closed-form floor corrected against that
//! walk, and a brute-force lattice scan. The count is 2 + 4n where n is the
//! largest index whose term fits, or 0 when even (1, 0) does not.

use crate::analytic::AnalyticContext;
use crate::error::PellError;
use crate::fundamental::FundamentalSolution;
use crate::instance::PellInstance;
use crate::oracle::{self, DEFAULT_SCAN_CAP};
use crate::rational;
use crate::sequence::{expand_signs, Solution};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

/// A validated region radius: an exact positive rational kept together
/// with the string it was parsed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionQuery {
    lambda: BigRational,
    raw: String,
}

impl RegionQuery {
    /// Accepts plain decimals ("5", "4.999999999999") and fractions
    /// ("7/2"). The radius must be strictly positive.
    pub fn parse(s: &str) -> Result<Self, PellError> {
        let lambda = rational::parse_decimal(s).map_err(|e| PellError::InvalidLambda {
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        Self::validated(lambda, s.to_string())
    }

    pub fn from_rational(lambda: BigRational) -> Result<Self, PellError> {
        let raw = lambda.to_string();
        Self::validated(lambda, raw)
    }

    fn validated(lambda: BigRational, raw: String) -> Result<Self, PellError> {
        if lambda <= BigRational::zero() {
            return Err(PellError::InvalidLambda {
                input: raw,
                reason: "radius must be positive".into(),
            });
        }
        Ok(Self { lambda, raw })
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    /// The original input string, preserved verbatim for reporting.
    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// floor(lambda); non-negative because the radius is positive.
    pub fn floor(&self) -> BigUint {
        self.lambda
            .floor()
            .to_integer()
            .to_biguint()
            .expect("positive radius has non-negative floor")
    }
}

/// How a count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Walk u, v through the recurrence until u + v leaves the ball.
    ExactRecurrence,
    /// Closed-form floor((log x + C) / log unit), corrected exactly.
    ClosedForm,
    /// Scan the lattice and test each point.
    BruteForce,
}

impl CountMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CountMethod::ExactRecurrence => "exact_recurrence",
            CountMethod::ClosedForm => "closed_form",
            CountMethod::BruteForce => "brute_force",
        }
    }
}

/// A count plus the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub method: CountMethod,
    pub count: u64,
    /// Largest term index inside the ball; -1 encodes the empty region.
    pub max_index: i64,
    /// Closed-form evaluations whose float candidate needed a nudge.
    pub corrections_applied: u32,
    /// Per-branch floor values (one entry for the unshifted count,
    /// four in branch order (+,+),(+,-),(-,+),(-,-) for shifted counts).
    pub branch_indices: Vec<u64>,
    /// Per-branch candidate corrections, aligned with branch_indices;
    /// empty for methods that never form a float candidate.
    pub branch_corrections: Vec<i8>,
}

/// Largest n with u_n + v_n <= Lambda, by walking the recurrence.
pub fn floor_g_exact(fund: &FundamentalSolution, lambda: &BigUint) -> Result<u64, PellError> {
    fund.max_term_index(lambda).ok_or(PellError::LambdaTooSmall)
}

/// Counts solutions of x^2 - D y^2 = 1 with |x| + |y| <= lambda.
pub fn count_region(
    inst: &PellInstance,
    q: &RegionQuery,
    method: CountMethod,
) -> Result<CountReport, PellError> {
    if method == CountMethod::BruteForce {
        let res = oracle::brute_force(
            inst.d(),
            &BigInt::zero(),
            &BigInt::zero(),
            q.lambda(),
            DEFAULT_SCAN_CAP,
        )?;
        // count = 2 + 4n lets the scan report the witness index too
        let max_index = if res.count == 0 {
            -1
        } else {
            ((res.count - 2) / 4) as i64
        };
        return Ok(CountReport {
            method,
            count: res.count,
            max_index,
            corrections_applied: 0,
            branch_indices: if max_index >= 0 {
                vec![max_index as u64]
            } else {
                Vec::new()
            },
            branch_corrections: Vec::new(),
        });
    }

    let fl = q.floor();
    if fl.is_zero() {
        // lambda < 1: the ball misses even (1, 0)
        return Ok(CountReport {
            method,
            count: 0,
            max_index: -1,
            corrections_applied: 0,
            branch_indices: Vec::new(),
            branch_corrections: Vec::new(),
        });
    }

    let (n, correction) = match method {
        CountMethod::ExactRecurrence => (floor_g_exact(inst.fundamental(), &fl)?, 0i8),
        CountMethod::ClosedForm => {
            let ctx = AnalyticContext::new(inst.fundamental());
            let fg = ctx.floor_g_int(&fl)?;
            (fg.n, fg.correction)
        }
        CountMethod::BruteForce => unreachable!("handled above"),
    };
    Ok(CountReport {
        method,
        count: 2 + 4 * n,
        max_index: n as i64,
        corrections_applied: u32::from(correction != 0),
        branch_indices: vec![n],
        branch_corrections: match method {
            CountMethod::ClosedForm => vec![correction],
            _ => Vec::new(),
        },
    })
}

/// All solutions with |x| + |y| <= lambda, ordered by term index and then
/// sign pattern (+,+), (+,-), (-,+), (-,-).
pub fn enumerate_region(inst: &PellInstance, q: &RegionQuery) -> Vec<Solution> {
    let fl = q.floor();
    let mut out = Vec::new();
    if fl.is_zero() {
        return out;
    }
    for term in inst.fundamental().terms() {
        if term.l1() > fl {
            break;
        }
        out.extend(expand_signs(&term));
    }
    out
}
