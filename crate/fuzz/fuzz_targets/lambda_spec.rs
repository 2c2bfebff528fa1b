#![no_main]

use degen::LambdaSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(spec) = s.parse::<LambdaSpec>() {
            assert_eq!(spec.to_string().parse::<LambdaSpec>().unwrap(), spec);
        }
    }
});
