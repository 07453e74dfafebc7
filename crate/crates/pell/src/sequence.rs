//! Integer solution sequences generated by the fundamental unit.

use crate::fundamental::FundamentalSolution;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Coefficients (u_n, v_n) of the n-th power of the fundamental unit:
/// u_n + v_n sqrt(D) = (alpha + beta sqrt(D))^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTerm {
    pub n: u64,
    pub u: BigUint,
    pub v: BigUint,
}

impl SolutionTerm {
    /// u + v, the L1 norm shared by all four sign orbits of the term.
    pub fn l1(&self) -> BigUint {
        &self.u + &self.v
    }
}

/// An integer lattice point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    pub x: BigInt,
    pub y: BigInt,
}

impl Solution {
    /// Exact check of x^2 - D y^2 = 1.
    pub fn satisfies(&self, d: &BigUint) -> bool {
        &self.x * &self.x - BigInt::from(d.clone()) * &self.y * &self.y == BigInt::one()
    }

    /// |x| + |y|, exactly.
    pub fn l1(&self) -> BigUint {
        self.x.magnitude() + self.y.magnitude()
    }
}

impl FundamentalSolution {
    /// The n-th term by the exact recurrence from (1, 0).
    pub fn term(&self, n: u64) -> SolutionTerm {
        self.terms()
            .nth(usize::try_from(n).expect("term index fits usize"))
            .expect("stream is unbounded")
    }

    /// Unbounded stream of terms starting at n = 0; the caller terminates.
    pub fn terms(&self) -> TermIter<'_> {
        TermIter {
            fund: self,
            n: 0,
            u: BigUint::one(),
            v: BigUint::zero(),
        }
    }

    /// Largest n >= 0 with u_n + v_n <= bound, or None when bound < 1.
    /// Walks the recurrence; u_n + v_n grows geometrically, so this takes
    /// O(log bound) big-integer steps.
    pub fn max_term_index(&self, bound: &BigUint) -> Option<u64> {
        if bound.is_zero() {
            return None;
        }
        let mut last = 0u64;
        for t in self.terms().skip(1) {
            if &t.l1() <= bound {
                last = t.n;
            } else {
                return Some(last);
            }
        }
        unreachable!("terms grow without bound")
    }
}

pub struct TermIter<'a> {
    fund: &'a FundamentalSolution,
    n: u64,
    u: BigUint,
    v: BigUint,
}

impl Iterator for TermIter<'_> {
    type Item = SolutionTerm;

    fn next(&mut self) -> Option<SolutionTerm> {
        let out = SolutionTerm {
            n: self.n,
            u: self.u.clone(),
            v: self.v.clone(),
        };
        let u_next = self.fund.alpha() * &self.u + self.fund.d() * self.fund.beta() * &self.v;
        let v_next = self.fund.beta() * &self.u + self.fund.alpha() * &self.v;
        self.u = u_next;
        self.v = v_next;
        self.n += 1;
        Some(out)
    }
}

/// The sign orbits {(iu, jv)} of a term in the fixed order
/// (+,+), (+,-), (-,+), (-,-), with coincident points (v = 0) dropped.
pub fn expand_signs(t: &SolutionTerm) -> Vec<Solution> {
    let u = BigInt::from(t.u.clone());
    let v = BigInt::from(t.v.clone());
    let mut out: Vec<Solution> = Vec::with_capacity(4);
    for (i, j) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let s = Solution {
            x: if i > 0 { u.clone() } else { -&u },
            y: if j > 0 { v.clone() } else { -&v },
        };
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::PellInstance;

    fn fund(d: u64) -> FundamentalSolution {
        PellInstance::new(BigInt::from(d))
            .unwrap()
            .fundamental()
            .clone()
    }

    fn term_u64(f: &FundamentalSolution, n: u64) -> (u64, u64) {
        use num_traits::ToPrimitive;
        let t = f.term(n);
        (t.u.to_u64().unwrap(), t.v.to_u64().unwrap())
    }

    #[test]
    fn term_fixtures() {
        let f2 = fund(2);
        assert_eq!(term_u64(&f2, 0), (1, 0));
        assert_eq!(term_u64(&f2, 1), (3, 2));
        assert_eq!(term_u64(&f2, 2), (17, 12));
        assert_eq!(term_u64(&f2, 3), (99, 70));
        let f3 = fund(3);
        assert_eq!(term_u64(&f3, 2), (7, 4));
        assert_eq!(term_u64(&f3, 3), (26, 15));
    }

    #[test]
    fn stream_prefix() {
        let f = fund(2);
        let prefix: Vec<_> = f.terms().take(3).map(|t| (t.n, t.u, t.v)).collect();
        assert_eq!(
            prefix,
            vec![
                (0, BigUint::from(1u32), BigUint::from(0u32)),
                (1, BigUint::from(3u32), BigUint::from(2u32)),
                (2, BigUint::from(17u32), BigUint::from(12u32)),
            ]
        );
    }

    #[test]
    fn identity_and_monotonicity_to_30() {
        for d in [2u64, 3, 5, 6, 7, 8, 10, 13, 29, 61] {
            let f = fund(d);
            let mut prev: Option<SolutionTerm> = None;
            for t in f.terms().take(31) {
                let lhs = &t.u * &t.u;
                let rhs = f.d() * &t.v * &t.v + 1u32;
                assert_eq!(lhs, rhs, "identity at D={d} n={}", t.n);
                if let Some(p) = prev {
                    assert!(t.u > p.u && t.v > p.v, "monotone at D={d} n={}", t.n);
                }
                prev = Some(t);
            }
        }
    }

    /// (u + v sqrt(D))^n by repeated squaring; independent of the stream.
    fn pow_term(f: &FundamentalSolution, n: u64) -> (BigUint, BigUint) {
        let mut ru = BigUint::one();
        let mut rv = BigUint::zero();
        let mut bu = f.alpha().clone();
        let mut bv = f.beta().clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                let nu = &ru * &bu + f.d() * &rv * &bv;
                let nv = &ru * &bv + &rv * &bu;
                ru = nu;
                rv = nv;
            }
            let su = &bu * &bu + f.d() * &bv * &bv;
            let sv = &bu * &bv * 2u32;
            bu = su;
            bv = sv;
            e >>= 1;
        }
        (ru, rv)
    }

    #[test]
    fn recurrence_matches_binary_exponentiation() {
        for d in [2u64, 3, 13, 61] {
            let f = fund(d);
            for n in [0u64, 1, 2, 7, 19, 30] {
                let t = f.term(n);
                let (u, v) = pow_term(&f, n);
                assert_eq!((t.u, t.v), (u, v), "D={d}, n={n}");
            }
        }
    }

    #[test]
    fn expand_signs_collapses_zero_v() {
        let f = fund(2);
        let orbit0 = expand_signs(&f.term(0));
        assert_eq!(
            orbit0,
            vec![
                Solution { x: BigInt::from(1), y: BigInt::from(0) },
                Solution { x: BigInt::from(-1), y: BigInt::from(0) },
            ]
        );
        let orbit1 = expand_signs(&f.term(1));
        assert_eq!(orbit1.len(), 4);
        let expected: Vec<(i64, i64)> = vec![(3, 2), (3, -2), (-3, 2), (-3, -2)];
        for (sol, (x, y)) in orbit1.iter().zip(expected) {
            assert_eq!(sol.x, BigInt::from(x));
            assert_eq!(sol.y, BigInt::from(y));
            assert!(sol.satisfies(f.d()));
        }
        for sol in expand_signs(&f.term(2)) {
            assert!(sol.satisfies(f.d()));
        }
    }

    #[test]
    fn max_term_index_walks_exactly() {
        let f = fund(2);
        assert_eq!(f.max_term_index(&BigUint::from(0u32)), None);
        assert_eq!(f.max_term_index(&BigUint::from(1u32)), Some(0));
        assert_eq!(f.max_term_index(&BigUint::from(4u32)), Some(0));
        assert_eq!(f.max_term_index(&BigUint::from(5u32)), Some(1));
        assert_eq!(f.max_term_index(&BigUint::from(28u32)), Some(1));
        assert_eq!(f.max_term_index(&BigUint::from(29u32)), Some(2));
        let f3 = fund(3);
        assert_eq!(f3.max_term_index(&BigUint::from(11u32)), Some(2));
        assert_eq!(f3.max_term_index(&BigUint::from(10u32)), Some(1));
    }
}
