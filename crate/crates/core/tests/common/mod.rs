#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;
use unitfrac::io::parse_listing;

pub fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

/// Brace lines of the printed listing for `n`, exactly as printed.
pub fn listing(n: u32) -> Vec<String> {
    data(&format!("listing_n{n}.txt"))
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(str::to_string)
        .collect()
}

/// Parsed listing for `n`, with the trailer's count checked.
pub fn listing_values(n: u32) -> Vec<Vec<BigUint>> {
    let (lines, count) =
        parse_listing(&data(&format!("listing_n{n}.txt"))).expect("listing parses");
    assert_eq!(count, Some(lines.len()));
    lines
}

/// `(n, count)` pairs from the printed count table.
pub fn printed_counts() -> Vec<(u32, u64)> {
    data("counts_9_35.txt")
        .lines()
        .map(|l| {
            let (a, b) = l
                .trim_matches(|c| c == '(' || c == ')')
                .split_once(',')
                .unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

pub const COUNT_VECTOR_35: [u128; 9] = [
    330140577, 191442225, 191442225, 173287025, 52743872, 29586769, 25059215, 204595521, 173287025,
];
