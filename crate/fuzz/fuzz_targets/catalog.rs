#![no_main]

use libfuzzer_sys::fuzz_target;
use unitfrac::families::FixtureCatalog;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = FixtureCatalog::parse(text) {
        let again = FixtureCatalog::parse(&c.to_text()).expect("written catalog parses");
        assert_eq!(again, c);
    }
});
