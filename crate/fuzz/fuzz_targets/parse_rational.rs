#![no_main]

use degen::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = s.parse::<Rational>() {
            // Canonical form must re-parse to the same value.
            assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
        }
    }
});
