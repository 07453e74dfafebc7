//! The shifted equation (x - a)^2 - D (y - b)^2 = 1 and its counts.
//!
//! Solutions are the four sign branches of the base sequence translated by
//! (a, b). For radii above the threshold K = |a| + max{|b| + 1,
//! sqrt(1 + D b^2)} the count has a closed form, 2 plus a floor per branch;
//! below K only direct enumeration is trusted. K is irrational whenever the
//! radicand is not a perfect square, so every comparison against it is done
//! on squared rationals, never on floats.

use crate::analytic::AnalyticContext;
use crate::counting::{floor_g_exact, CountMethod, CountReport, RegionQuery};
use crate::error::PellError;
use crate::instance::PellInstance;
use crate::oracle::{self, DEFAULT_SCAN_CAP};
use crate::sequence::{Solution, SolutionTerm};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashSet;
use std::fmt;

/// One of the four sign branches (i u_n + a, j v_n + b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBranch {
    i: i8,
    j: i8,
}

impl SignedBranch {
    /// Branch order used everywhere output order matters.
    pub const ALL: [SignedBranch; 4] = [
        SignedBranch { i: 1, j: 1 },
        SignedBranch { i: 1, j: -1 },
        SignedBranch { i: -1, j: 1 },
        SignedBranch { i: -1, j: -1 },
    ];

    pub fn new(i: i8, j: i8) -> Option<Self> {
        if i.abs() == 1 && j.abs() == 1 {
            Some(Self { i, j })
        } else {
            None
        }
    }

    pub fn i(&self) -> i8 {
        self.i
    }

    pub fn j(&self) -> i8 {
        self.j
    }

    fn apply(&self, t: &SolutionTerm, a: &BigInt, b: &BigInt) -> Solution {
        let u = BigInt::from(t.u.clone());
        let v = BigInt::from(t.v.clone());
        Solution {
            x: if self.i > 0 { u } else { -u } + a,
            y: if self.j > 0 { v } else { -v } + b,
        }
    }
}

impl fmt::Display for SignedBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { '+' } else { '-' };
        write!(f, "({}, {})", sign(self.i), sign(self.j))
    }
}

/// A closed coordinate quadrant, axes included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    H1,
    H2,
    H3,
    H4,
}

impl Quadrant {
    pub fn index(&self) -> u8 {
        match self {
            Quadrant::H1 => 1,
            Quadrant::H2 => 2,
            Quadrant::H3 => 3,
            Quadrant::H4 => 4,
        }
    }

    /// Membership in the closed quadrant.
    pub fn contains(&self, p: &Solution) -> bool {
        let x_nonneg = !p.x.is_negative();
        let x_nonpos = !p.x.is_positive();
        let y_nonneg = !p.y.is_negative();
        let y_nonpos = !p.y.is_positive();
        match self {
            Quadrant::H1 => x_nonneg && y_nonneg,
            Quadrant::H2 => x_nonpos && y_nonneg,
            Quadrant::H3 => x_nonpos && y_nonpos,
            Quadrant::H4 => x_nonneg && y_nonpos,
        }
    }
}

/// The equation (x - a)^2 - D (y - b)^2 = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedInstance {
    base: PellInstance,
    a: BigInt,
    b: BigInt,
}

impl ShiftedInstance {
    pub fn new(base: PellInstance, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            base,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn base(&self) -> &PellInstance {
        &self.base
    }

    pub fn d(&self) -> &BigUint {
        self.base.d()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// The branch point (i u_n + a, j v_n + b).
    pub fn solution(&self, branch: SignedBranch, n: u64) -> Solution {
        branch.apply(&self.base.fundamental().term(n), &self.a, &self.b)
    }

    /// Exact check of (x - a)^2 - D (y - b)^2 = 1.
    pub fn satisfies(&self, p: &Solution) -> bool {
        let dx = &p.x - &self.a;
        let dy = &p.y - &self.b;
        &dx * &dx - BigInt::from(self.d().clone()) * &dy * &dy == BigInt::one()
    }

    pub fn threshold_k(&self) -> ThresholdK {
        ThresholdK::new(self)
    }
}

/// K = |a| + max{|b| + 1, sqrt(1 + D b^2)} kept in exact parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdK {
    abs_a: BigUint,
    /// |b| + 1
    linear: BigUint,
    /// 1 + D b^2
    radicand: BigUint,
    /// (|b| + 1)^2 >= 1 + D b^2, resolved in integers
    linear_wins: bool,
}

impl ThresholdK {
    fn new(s: &ShiftedInstance) -> Self {
        let abs_a = s.a.magnitude().clone();
        let abs_b = s.b.magnitude();
        let linear = abs_b + 1u32;
        let radicand = s.d() * abs_b * abs_b + 1u32;
        let linear_wins = &linear * &linear >= radicand;
        Self {
            abs_a,
            linear,
            radicand,
            linear_wins,
        }
    }

    pub fn abs_a(&self) -> &BigUint {
        &self.abs_a
    }

    /// The value under the square root, 1 + D b^2.
    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    /// Whether the |b| + 1 arm of the max is the larger one.
    pub fn linear_wins(&self) -> bool {
        self.linear_wins
    }

    pub fn is_integral(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn as_integer(&self) -> Option<BigUint> {
        if self.linear_wins {
            return Some(&self.abs_a + &self.linear);
        }
        let r = self.radicand.sqrt();
        (&r * &r == self.radicand).then(|| &self.abs_a + r)
    }

    /// Smallest integer >= K.
    pub fn ceil(&self) -> BigUint {
        if let Some(k) = self.as_integer() {
            return k;
        }
        &self.abs_a + self.radicand.sqrt() + 1u32
    }

    /// Decides lambda >= K exactly: when the sqrt arm wins, via
    /// lambda >= |a| and (lambda - |a|)^2 >= radicand in rationals.
    pub fn lambda_at_least(&self, lambda: &BigRational) -> bool {
        let a = BigRational::from(BigInt::from(self.abs_a.clone()));
        if self.linear_wins {
            let k = a + BigRational::from(BigInt::from(self.linear.clone()));
            return lambda >= &k;
        }
        if lambda < &a {
            return false;
        }
        let t = lambda - a;
        &t * &t >= BigRational::from(BigInt::from(self.radicand.clone()))
    }

    /// Double approximation, for display and sampling only.
    pub fn approx(&self) -> f64 {
        let a = self.abs_a.to_f64().unwrap_or(f64::INFINITY);
        if self.linear_wins {
            a + self.linear.to_f64().unwrap_or(f64::INFINITY)
        } else {
            a + self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt()
        }
    }
}

impl fmt::Display for ThresholdK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        if self.abs_a.is_zero() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{} + sqrt({})", self.abs_a, self.radicand)
        }
    }
}

fn signed(mag: &BigInt, sign: i8) -> BigInt {
    if sign > 0 {
        mag.clone()
    } else {
        -mag.clone()
    }
}

/// Counts solutions of the shifted equation with |x| + |y| <= lambda.
///
/// The formula methods require lambda >= K and return 2 plus one floor per
/// branch at argument floor(lambda) - i a - j b (each >= 1 above K). The
/// brute-force method scans the lattice instead and carries no threshold.
pub fn count_shifted(
    s: &ShiftedInstance,
    q: &RegionQuery,
    method: CountMethod,
) -> Result<CountReport, PellError> {
    if method == CountMethod::BruteForce {
        let res = oracle::brute_force(s.d(), &s.a, &s.b, q.lambda(), DEFAULT_SCAN_CAP)?;
        return Ok(CountReport {
            method,
            count: res.count,
            max_index: witness_index(s, q).map_or(-1, |n| n as i64),
            corrections_applied: 0,
            branch_indices: Vec::new(),
            branch_corrections: Vec::new(),
        });
    }

    let k = s.threshold_k();
    if !k.lambda_at_least(q.lambda()) {
        return Err(PellError::BelowThreshold {
            lambda: q.raw().to_string(),
            k: k.to_string(),
        });
    }

    let fl = BigInt::from(q.floor());
    let ctx = match method {
        CountMethod::ClosedForm => Some(AnalyticContext::new(s.base.fundamental())),
        _ => None,
    };
    let mut total = 0u64;
    let mut max_n = 0u64;
    let mut corrections = 0u32;
    let mut branch_indices = Vec::with_capacity(4);
    let mut branch_corrections = Vec::with_capacity(4);
    for br in SignedBranch::ALL {
        // floor(lambda - ia - jb) = floor(lambda) - ia - jb; >= 1 for
        // lambda >= K because K >= |a| + |b| + 1
        let arg = (&fl - signed(&s.a, br.i) - signed(&s.b, br.j))
            .to_biguint()
            .expect("branch argument is positive above the threshold");
        let n = match &ctx {
            Some(ctx) => {
                let fg = ctx.floor_g_int(&arg)?;
                corrections += u32::from(fg.correction != 0);
                branch_corrections.push(fg.correction);
                fg.n
            }
            None => floor_g_exact(s.base.fundamental(), &arg)?,
        };
        total += n;
        max_n = max_n.max(n);
        branch_indices.push(n);
    }
    Ok(CountReport {
        method,
        count: 2 + total,
        max_index: max_n as i64,
        corrections_applied: corrections,
        branch_indices,
        branch_corrections,
    })
}

/// Largest term index contributing a point to the ball, found by the same
/// bounded walk the enumerator uses; None when the ball is empty.
fn witness_index(s: &ShiftedInstance, q: &RegionQuery) -> Option<u64> {
    let fl = q.floor();
    let stop = &fl + s.a.magnitude() + s.b.magnitude();
    let mut max_n = None;
    for t in s.base.fundamental().terms() {
        if t.l1() > stop {
            break;
        }
        for br in SignedBranch::ALL {
            if br.apply(&t, &s.a, &s.b).l1() <= fl {
                max_n = Some(t.n);
            }
        }
    }
    max_n
}

/// All solutions with |x| + |y| <= lambda, for any lambda > 0.
///
/// Walks each branch until u_n + v_n exceeds floor(lambda) + |a| + |b| (the
/// triangle inequality makes further terms too large) and deduplicates the
/// collisions that occur at v_n = 0. Output keeps first-seen order by
/// (term index, branch).
pub fn enumerate_shifted(s: &ShiftedInstance, q: &RegionQuery) -> Vec<Solution> {
    let fl = q.floor();
    let stop = &fl + s.a.magnitude() + s.b.magnitude();
    let mut seen: HashSet<Solution> = HashSet::new();
    let mut out = Vec::new();
    for t in s.base.fundamental().terms() {
        if t.l1() > stop {
            break;
        }
        for br in SignedBranch::ALL {
            let p = br.apply(&t, &s.a, &s.b);
            if p.l1() <= fl && seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// The quadrant a branch eventually stays in, with the first index n* from
/// which every later point lies in that closed quadrant.
///
/// The branch point is (i u_n + a, j v_n + b); u_n and v_n are strictly
/// increasing, so membership u_n >= -ia and v_n >= -jb is monotone and the
/// first index satisfying both is the onset.
pub fn eventual_quadrant(s: &ShiftedInstance, branch: SignedBranch) -> (Quadrant, u64) {
    let quad = match (branch.i > 0, branch.j > 0) {
        (true, true) => Quadrant::H1,
        (false, true) => Quadrant::H2,
        (false, false) => Quadrant::H3,
        (true, false) => Quadrant::H4,
    };
    let need_u = -signed(&s.a, branch.i);
    let need_v = -signed(&s.b, branch.j);
    for t in s.base.fundamental().terms() {
        if BigInt::from(t.u.clone()) >= need_u && BigInt::from(t.v.clone()) >= need_v {
            debug_assert!(quad.contains(&branch.apply(&t, &s.a, &s.b)));
            return (quad, t.n);
        }
    }
    unreachable!("u_n and v_n grow without bound")
}

/// |a| + sqrt(1 + D b^2): the largest L1 norm among the four axis
/// crossings of the shifted hyperbola. Defined for a != 0 (otherwise the
/// curve has no y-axis crossing to compare against).
pub fn intercept_max_l1(s: &ShiftedInstance) -> Result<f64, PellError> {
    if s.a.is_zero() {
        return Err(PellError::ZeroA);
    }
    let d = s.d().to_f64().unwrap_or(f64::INFINITY);
    let b = s.b.to_f64().unwrap_or(f64::INFINITY);
    let a = s.a.to_f64().unwrap_or(f64::INFINITY);
    Ok(a.abs() + (1.0 + d * b * b).sqrt())
}

/// L1 norms of the four axis crossings: x-axis at a +- sqrt(1 + D b^2),
/// y-axis at b +- sqrt((a^2 - 1) / D).
pub fn intercept_norms(s: &ShiftedInstance) -> Result<[f64; 4], PellError> {
    if s.a.is_zero() {
        return Err(PellError::ZeroA);
    }
    let d = s.d().to_f64().unwrap_or(f64::INFINITY);
    let a = s.a.to_f64().unwrap_or(f64::INFINITY);
    let b = s.b.to_f64().unwrap_or(f64::INFINITY);
    let rx = (1.0 + d * b * b).sqrt();
    let ry = ((a * a - 1.0) / d).sqrt();
    Ok([(a + rx).abs(), (a - rx).abs(), (b + ry).abs(), (b - ry).abs()])
}
