//! Brute-force lattice scan: the ground truth the other methods are checked
//! against. The equation test is exact integer arithmetic end to end.

use crate::error::PellError;
use crate::sequence::Solution;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Default cap on floor(lambda) for scans.
pub const DEFAULT_SCAN_CAP: u64 = 20_000;

/// Outcome of one scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Lexicographically sorted by (x, y).
    pub solutions: Vec<Solution>,
    pub count: u64,
    /// Work units examined: columns for the per-column square test,
    /// individual lattice points for the window scan.
    pub points_scanned: u64,
}

/// Exact integer square root.
pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = ((n as f64).sqrt() as u128).min((1u128 << 64) - 1);
    while x > 0 && x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while let Some(sq) = (x + 1).checked_mul(x + 1) {
        if sq <= n {
            x += 1;
        } else {
            break;
        }
    }
    x
}

/// Scans x in [-floor(lambda), floor(lambda)], solving
/// D (y-b)^2 = (x-a)^2 - 1 per column by an exact square test.
pub fn brute_force(
    d: &BigUint,
    a: &BigInt,
    b: &BigInt,
    lambda: &BigRational,
    cap: u64,
) -> Result<OracleResult, PellError> {
    scan(d, a, b, lambda, cap, false, 1)
}

/// The same region scanned as a plain double loop over (x, y), testing the
/// defining equation at every point. Slower; exists to validate the
/// per-column square shortcut against something definitionally simple.
pub fn brute_force_window(
    d: &BigUint,
    a: &BigInt,
    b: &BigInt,
    lambda: &BigRational,
    cap: u64,
) -> Result<OracleResult, PellError> {
    scan(d, a, b, lambda, cap, true, 1)
}

/// Per-column scan with the x-range split into contiguous stripes across
/// threads. Results are merged by sort, so the output is identical to the
/// serial scan.
pub fn brute_force_parallel(
    d: &BigUint,
    a: &BigInt,
    b: &BigInt,
    lambda: &BigRational,
    cap: u64,
    threads: usize,
) -> Result<OracleResult, PellError> {
    scan(d, a, b, lambda, cap, false, threads.max(1))
}

fn scan(
    d: &BigUint,
    a: &BigInt,
    b: &BigInt,
    lambda: &BigRational,
    cap: u64,
    window: bool,
    threads: usize,
) -> Result<OracleResult, PellError> {
    // |x| + |y| is an integer, so |x| + |y| <= lambda iff <= floor(lambda).
    let fl_big = lambda.floor().to_integer();
    if fl_big.is_negative() {
        return Ok(OracleResult {
            solutions: Vec::new(),
            count: 0,
            points_scanned: 0,
        });
    }
    let radius = fl_big.magnitude().clone();
    if radius > BigUint::from(cap) {
        return Err(PellError::ScanTooLarge { radius, cap });
    }
    // Machine-word fast kernel whenever bounds allow; exact BigInt fallback.
    const FIT: i128 = 1 << 60;
    let fits = |v: &BigInt| v.to_i128().filter(|x| x.abs() < FIT);
    let (mut solutions, points_scanned) = match (d.to_i128().filter(|x| *x < FIT), fits(a), fits(b), fl_big.to_i128()) {
        (Some(di), Some(ai), Some(bi), Some(fli)) => {
            if threads > 1 && !window {
                scan_i128_parallel(di, ai, bi, fli, threads)
            } else if window {
                scan_window_i128(di, ai, bi, fli)
            } else {
                let (sols, n) = scan_fast_i128(di, ai, bi, fli, -fli, fli);
                (to_solutions(sols), n)
            }
        }
        _ => scan_big(d, a, b, &fl_big, window),
    };
    solutions.sort_unstable();
    let count = solutions.len() as u64;
    Ok(OracleResult {
        solutions,
        count,
        points_scanned,
    })
}

fn to_solutions(raw: Vec<(i128, i128)>) -> Vec<Solution> {
    raw.into_iter()
        .map(|(x, y)| Solution {
            x: BigInt::from(x),
            y: BigInt::from(y),
        })
        .collect()
}

/// Columns lo..=hi of the per-column kernel: (x-a)^2 - 1 must be D times a
/// perfect square.
fn scan_fast_i128(
    d: i128,
    a: i128,
    b: i128,
    fl: i128,
    lo: i128,
    hi: i128,
) -> (Vec<(i128, i128)>, u64) {
    let mut sols = Vec::new();
    let mut scanned = 0u64;
    for x in lo..=hi {
        scanned += 1;
        let t = (x - a) * (x - a) - 1;
        if t < 0 {
            continue;
        }
        if t % d != 0 {
            continue;
        }
        let q = (t / d) as u128;
        let s = isqrt_u128(q);
        if s * s != q {
            continue;
        }
        let s = s as i128;
        for y in [b - s, b + s] {
            if x.abs() + y.abs() <= fl {
                sols.push((x, y));
            }
            if s == 0 {
                break;
            }
        }
    }
    (sols, scanned)
}

fn scan_i128_parallel(d: i128, a: i128, b: i128, fl: i128, threads: usize) -> (Vec<Solution>, u64) {
    let total = 2 * fl + 1;
    let stripes = threads.min(total.max(1) as usize).max(1);
    let step = total / stripes as i128 + 1;
    let mut raw: Vec<(i128, i128)> = Vec::new();
    let mut scanned = 0u64;
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        let mut lo = -fl;
        while lo <= fl {
            let hi = (lo + step - 1).min(fl);
            handles.push(scope.spawn(move || scan_fast_i128(d, a, b, fl, lo, hi)));
            lo = hi + 1;
        }
        for h in handles {
            let (sols, n) = h.join().expect("scan stripe");
            raw.extend(sols);
            scanned += n;
        }
    });
    (to_solutions(raw), scanned)
}

fn scan_window_i128(d: i128, a: i128, b: i128, fl: i128) -> (Vec<Solution>, u64) {
    let mut sols = Vec::new();
    let mut scanned = 0u64;
    for x in -fl..=fl {
        let w = fl - x.abs();
        for y in -w..=w {
            scanned += 1;
            if (x - a) * (x - a) - d * (y - b) * (y - b) == 1 {
                sols.push((x, y));
            }
        }
    }
    (to_solutions(sols), scanned)
}

/// Arbitrary-precision kernels for shifts or moduli beyond machine words.
/// The cap keeps the x-range itself small.
fn scan_big(d: &BigUint, a: &BigInt, b: &BigInt, fl: &BigInt, window: bool) -> (Vec<Solution>, u64) {
    use num_traits::{One, Zero};
    let d = BigInt::from(d.clone());
    let mut sols = Vec::new();
    let mut scanned = 0u64;
    let mut x = -fl.clone();
    while &x <= fl {
        if window {
            let w = fl - BigInt::from(x.magnitude().clone());
            let mut y = -w.clone();
            while y <= w {
                scanned += 1;
                let dx = &x - a;
                let dy = &y - b;
                if &dx * &dx - &d * &dy * &dy == BigInt::one() {
                    sols.push(Solution { x: x.clone(), y: y.clone() });
                }
                y += 1;
            }
        } else {
            scanned += 1;
            let dx = &x - a;
            let t = &dx * &dx - BigInt::one();
            if !t.is_negative() && (&t % &d).is_zero() {
                let q = (&t / &d).magnitude().clone();
                let s = q.sqrt();
                if &s * &s == q {
                    let s = BigInt::from(s);
                    for y in [b - &s, b + &s] {
                        if BigInt::from(x.magnitude() + y.magnitude()) <= *fl {
                            sols.push(Solution { x: x.clone(), y });
                        }
                        if s.is_zero() {
                            break;
                        }
                    }
                }
            }
        }
        x += 1;
    }
    (sols, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn run(d: u64, a: i64, b: i64, lambda: BigRational) -> OracleResult {
        brute_force(
            &BigUint::from(d),
            &BigInt::from(a),
            &BigInt::from(b),
            &lambda,
            DEFAULT_SCAN_CAP,
        )
        .unwrap()
    }

    fn points(r: &OracleResult) -> Vec<(i64, i64)> {
        use num_traits::ToPrimitive;
        r.solutions
            .iter()
            .map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn unshifted_fixture() {
        let r = run(2, 0, 0, rat(5, 1));
        assert_eq!(
            points(&r),
            vec![(-3, -2), (-3, 2), (-1, 0), (1, 0), (3, -2), (3, 2)]
        );
        assert_eq!(r.count, 6);
    }

    #[test]
    fn empty_and_minimal_regions() {
        assert_eq!(run(2, 0, 0, rat(1, 2)).count, 0);
        assert_eq!(run(2, 0, 0, rat(9, 10)).count, 0);
        assert_eq!(points(&run(2, 0, 0, rat(1, 1))), vec![(-1, 0), (1, 0)]);
    }

    #[test]
    fn shifted_fixtures() {
        let r = run(2, 1, 0, rat(6, 1));
        assert_eq!(
            points(&r),
            vec![(-2, -2), (-2, 2), (0, 0), (2, 0), (4, -2), (4, 2)]
        );
        // Below the formula threshold the scan still works.
        let r = run(2, 1, 0, rat(1, 1));
        assert_eq!(points(&r), vec![(0, 0)]);
        let r = run(2, 1, 0, rat(3, 2));
        assert_eq!(points(&r), vec![(0, 0)]);
    }

    #[test]
    fn exact_boundary_inclusion() {
        // lambda = 4.999999999999 must exclude the l1 = 5 orbit...
        let lam = crate::rational::parse_decimal("4.999999999999").unwrap();
        assert_eq!(run(2, 0, 0, lam).count, 2);
        // ...and lambda = 5 exactly must include it.
        assert_eq!(run(2, 0, 0, rat(5, 1)).count, 6);
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_force(
            &BigUint::from(2u32),
            &BigInt::from(0),
            &BigInt::from(0),
            &rat(50, 1),
            10,
        )
        .unwrap_err();
        assert!(matches!(err, PellError::ScanTooLarge { cap: 10, .. }));
    }

    #[test]
    fn window_scan_agrees_with_fast_path() {
        for d in [2u64, 3, 5, 7, 10] {
            for (a, b) in [(0i64, 0i64), (1, 0), (-2, 3), (3, -3), (-1, -1)] {
                for lam in [rat(1, 1), rat(7, 2), rat(20, 1), rat(99, 7)] {
                    let fast = run(d, a, b, lam.clone());
                    let slow = brute_force_window(
                        &BigUint::from(d),
                        &BigInt::from(a),
                        &BigInt::from(b),
                        &lam,
                        DEFAULT_SCAN_CAP,
                    )
                    .unwrap();
                    assert_eq!(fast.solutions, slow.solutions, "D={d} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let lam = rat(3000, 1);
        for threads in [2usize, 3, 8] {
            let par = brute_force_parallel(
                &BigUint::from(2u32),
                &BigInt::from(1),
                &BigInt::from(-2),
                &lam,
                DEFAULT_SCAN_CAP,
                threads,
            )
            .unwrap();
            let ser = run(2, 1, -2, lam.clone());
            assert_eq!(par.solutions, ser.solutions);
            assert_eq!(par.points_scanned, ser.points_scanned);
        }
    }

    #[test]
    fn big_kernel_agrees_with_machine_kernel() {
        // Force the BigInt path with a shift beyond the i128 gate.
        let huge = BigInt::from(1i128 << 61);
        let lam = rat(10, 1);
        let big = brute_force(&BigUint::from(2u32), &huge, &BigInt::from(0), &lam, 100).unwrap();
        // (x - a)^2 - 2 y^2 = 1 has no solution with |x| <= 10 for that a:
        // x - a is astronomically negative, its square astronomically large.
        assert_eq!(big.count, 0);
        // And with a = 0 both kernels agree.
        let via_big = scan_big(
            &BigUint::from(2u32),
            &BigInt::from(0),
            &BigInt::from(0),
            &BigInt::from(5),
            false,
        );
        let via_fast = scan_fast_i128(2, 0, 0, 5, -5, 5);
        assert_eq!(via_big.0, to_solutions(via_fast.0));
    }

    #[test]
    fn isqrt_samples() {
        assert_eq!(isqrt_u128(0), 0);
        assert_eq!(isqrt_u128(1), 1);
        assert_eq!(isqrt_u128(2), 1);
        assert_eq!(isqrt_u128(3), 1);
        assert_eq!(isqrt_u128(4), 2);
        assert_eq!(isqrt_u128(99), 9);
        assert_eq!(isqrt_u128(100), 10);
        let big = (1u128 << 80) - 1;
        let r = isqrt_u128(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
        let exact = 123456789012345u128;
        assert_eq!(isqrt_u128(exact * exact), exact);
        assert_eq!(isqrt_u128(exact * exact - 1), exact - 1);
        assert_eq!(isqrt_u128(u128::MAX), (1 << 64) - 1);
    }

    #[test]
    fn every_reported_solution_satisfies_the_equation() {
        let d = BigUint::from(13u32);
        let r = brute_force(&d, &BigInt::from(-2), &BigInt::from(1), &rat(500, 1), DEFAULT_SCAN_CAP).unwrap();
        for s in &r.solutions {
            let dx = &s.x - BigInt::from(-2);
            let dy = &s.y - BigInt::from(1);
            assert_eq!(&dx * &dx - BigInt::from(13) * &dy * &dy, BigInt::one());
        }
    }
}
