//! Validated problem instances.

use crate::error::PellError;
use crate::fundamental::FundamentalSolution;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// A validated non-square modulus D >= 2 for x^2 - D y^2 = 1.
///
/// The fundamental solution is computed on first use and cached; everything
/// else derives from it.
#[derive(Debug)]
pub struct PellInstance {
    d: BigUint,
    fund: OnceLock<FundamentalSolution>,
}

impl PellInstance {
    pub fn new(d: impl Into<BigInt>) -> Result<Self, PellError> {
        let d: BigInt = d.into();
        if d <= BigInt::zero() {
            return Err(PellError::NonPositive(d));
        }
        let d = d.to_biguint().expect("positive");
        if d.is_one() {
            return Err(PellError::DIsOne);
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(PellError::PerfectSquare { d, root });
        }
        Ok(Self {
            d,
            fund: OnceLock::new(),
        })
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// The minimal positive solution, computed once per instance.
    pub fn fundamental(&self) -> &FundamentalSolution {
        self.fund.get_or_init(|| FundamentalSolution::solve(&self.d))
    }
}

impl Clone for PellInstance {
    fn clone(&self) -> Self {
        let fund = OnceLock::new();
        if let Some(f) = self.fund.get() {
            let _ = fund.set(f.clone());
        }
        Self {
            d: self.d.clone(),
            fund,
        }
    }
}

impl PartialEq for PellInstance {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for PellInstance {}
