//! Replays the fuzz corpus seeds through the parsers on stable.

use std::fs;
use std::path::PathBuf;

use unitfrac::families::FixtureCatalog;
use unitfrac::io::{
    parse_brace_line, parse_listing, parse_range, parse_rational, parse_solution_json, to_json,
};
use unitfrac::SolutionSet;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn catalog_seeds() {
    for (name, text) in seeds("catalog") {
        let r = FixtureCatalog::parse(&text);
        assert_eq!(r.is_ok(), name != "dup", "{name}");
        if let Ok(c) = r {
            assert_eq!(FixtureCatalog::parse(&c.to_text()).unwrap(), c);
        }
    }
}

#[test]
fn brace_line_seeds() {
    for (name, text) in seeds("brace_line") {
        match parse_brace_line(&text) {
            Ok(v) => assert_eq!(
                parse_brace_line(&SolutionSet::new(v.clone()).to_brace_string()).unwrap(),
                v
            ),
            Err(_) => assert_eq!(name, "zero"),
        }
    }
}

#[test]
fn listing_seeds() {
    for (name, text) in seeds("listing") {
        let r = parse_listing(&text);
        assert_eq!(r.is_ok(), name != "mismatch", "{name}");
    }
}

#[test]
fn solution_json_seeds() {
    for (name, text) in seeds("solution_json") {
        match parse_solution_json(&text) {
            Ok(f) => assert_eq!(parse_solution_json(&to_json(&f).unwrap()).unwrap(), f),
            Err(_) => assert_eq!(name, "float"),
        }
    }
}

#[test]
fn range_and_rational_seeds() {
    for (name, text) in seeds("range") {
        assert_eq!(parse_range(&text).is_ok(), name != "empty", "{name}");
    }
    for (name, text) in seeds("rational") {
        assert_eq!(parse_rational(&text).is_ok(), name != "zero_den", "{name}");
    }
}
