#![no_main]

use degen::IdentityId;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        match s.parse::<IdentityId>() {
            Ok(id) => assert!(id.as_str().eq_ignore_ascii_case(s)),
            Err(e) => assert!(e.to_string().contains("THM1")),
        }
    }
});
