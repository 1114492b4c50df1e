#![no_main]

use libfuzzer_sys::fuzz_target;
use unitfrac::analysis::{validate_solution, Constraints};
use unitfrac::io::parse_solution_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_solution_json(text) else {
        return;
    };
    let round = serde_json_roundtrip(&file);
    assert_eq!(round, file);
    for s in file.to_solutions().iter().take(64) {
        if s.n() <= 64 && s.values().iter().all(|v| v.bits() <= 256) {
            let _ = validate_solution(s, &Constraints::declared(s));
        }
    }
});

fn serde_json_roundtrip(f: &unitfrac::io::SolutionFile) -> unitfrac::io::SolutionFile {
    let text = unitfrac::io::to_json(f).expect("solution file serializes");
    parse_solution_json(&text).expect("written file parses")
}
