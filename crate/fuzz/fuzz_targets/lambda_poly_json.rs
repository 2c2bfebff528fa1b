#![no_main]

use degen::{LambdaPoly, Scalar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<LambdaPoly>() {
            let text = p.to_json().to_string();
            assert_eq!(text.parse::<LambdaPoly>().unwrap(), p);
        }
    }
});
