#![no_main]

use degen_cli::{parse_json_lines, write_records, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_json_lines(s) {
        let mut out = Vec::new();
        write_records(&records, Format::Json, &mut out).unwrap();
        let again = parse_json_lines(std::str::from_utf8(&out).unwrap()).unwrap();
        assert_eq!(again, records);
    }
});
