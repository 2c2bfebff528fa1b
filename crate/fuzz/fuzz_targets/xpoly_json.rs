#![no_main]

use degen::{LambdaPoly, Rational, XPolynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<XPolynomial<Rational>>() {
            assert_eq!(p.to_string().parse::<XPolynomial<Rational>>().unwrap(), p);
        }
        if let Ok(p) = s.parse::<XPolynomial<LambdaPoly>>() {
            assert_eq!(p.to_string().parse::<XPolynomial<LambdaPoly>>().unwrap(), p);
        }
    }
});
