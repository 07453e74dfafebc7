//! Fuzzes instance construction from a decimal string: validation must
//! never panic, and accepted D must yield a genuine fundamental solution.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pell::num_bigint::{BigInt, BigUint};
use pell::PellInstance;

fuzz_target!(|data: &[u8]| {
    if data.len() > 64 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(d) = s.parse::<BigInt>() else {
        return;
    };
    let Ok(inst) = PellInstance::new(d) else {
        return;
    };
    // The continued fraction period is unbounded in D; cap the expensive part.
    if inst.d() <= &BigUint::from(1_000_000u32) {
        let fund = inst.fundamental();
        let alpha = fund.alpha();
        let beta = fund.beta();
        assert_eq!(alpha * alpha, inst.d() * beta * beta + 1u32);
    }
});
