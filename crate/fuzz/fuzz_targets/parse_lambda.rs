//! Fuzzes the decimal/fraction radius parser: accepted inputs must
//! round-trip through Display, and the query floor must bracket the value.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pell::num_rational::BigRational;
use pell::num_traits::One;
use pell::rational::parse_decimal;
use pell::RegionQuery;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_decimal(s) {
        let redisplayed = parse_decimal(&value.to_string()).expect("display output reparses");
        assert_eq!(value, redisplayed);
    }
    if let Ok(query) = RegionQuery::parse(s) {
        let floor = BigRational::from_integer(query.floor().into());
        assert!(&floor <= query.lambda());
        assert!(query.lambda() < &(floor + BigRational::one()));
    }
});
