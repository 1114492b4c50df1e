#![no_main]

use libfuzzer_sys::fuzz_target;
use unitfrac::io::parse_listing;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((lines, Some(count))) = parse_listing(text) {
        assert_eq!(lines.len(), count);
    }
});
