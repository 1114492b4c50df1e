#![no_main]

use libfuzzer_sys::fuzz_target;
use unitfrac::io::parse_brace_line;
use unitfrac::SolutionSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_brace_line(text) {
        let s = SolutionSet::new(v.clone());
        assert_eq!(parse_brace_line(&s.to_brace_string()).unwrap(), v);
    }
});
