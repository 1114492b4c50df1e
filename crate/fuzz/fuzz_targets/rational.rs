#![no_main]

use libfuzzer_sys::fuzz_target;
use unitfrac::analysis::greedy_expand;
use unitfrac::io::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(r) = parse_rational(text) else { return };
    // Greedy denominators grow doubly exponentially in the numerator.
    if *r.numer() > 64.into() || r.denom().bits() > 64 {
        return;
    }
    if let Ok(parts) = greedy_expand(&r) {
        assert!(parts.windows(2).all(|w| w[0] < w[1]));
    }
});
