//! Closed-form solution families and the named `n = 9` fixtures.
//!
//! Fixture file format, one solution per line:
//!
//! ```text
//! # comment
//! Y_1 3 (2,0),(0,1),(1,1),(2,1),(0,2),(2,2),(1,3),(1,4),(2,4)
//! ```
//!
//! label, odd prime `q`, then comma-separated `(a,b)` pairs for `2^a·q^b`.

use crate::arith::{FactoredValue, SolutionSet};
use crate::error::{Error, Result};

const CATALOG_N9: &str = include_str!("../data/catalog_n9.txt");

/// `{2, 4, 5, 5^2, …, 5^(n-3), 4·5^(n-3)}`.
pub fn family_u(n: u32) -> Result<SolutionSet> {
    if n < 9 {
        return Err(Error::domain(format!("U_n is defined for n >= 9, got {n}")));
    }
    let mut f = vec![(1, 0), (2, 0)];
    f.extend((1..=n - 3).map(|b| (0, b)));
    f.push((2, n - 3));
    build(&f, 5)
}

/// `{2, 4, 7, 2·7, …, 7^k, 2·7^k, 4·7^k}` with `k = (n-3)/2`; only odd `n`
/// admits a solution.
pub fn family_v(n: u32) -> Result<SolutionSet> {
    if n < 9 {
        return Err(Error::domain(format!("V_n is defined for n >= 9, got {n}")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "no V_n solution exists for even n = {n}"
        )));
    }
    let k = (n - 3) / 2;
    let mut f = vec![(1, 0), (2, 0)];
    for b in 1..=k {
        f.push((0, b));
        f.push((1, b));
    }
    f.push((2, k));
    build(&f, 7)
}

/// `{2, 3, 3^2, …, 3^(n-2), 2·3^(n-2)}`, the solution with highest 2-power 2^1.
pub fn family_z1(n: u32) -> Result<SolutionSet> {
    if n < 9 {
        return Err(Error::domain(format!(
            "Z1 is defined here for n >= 9, got {n}"
        )));
    }
    let mut f = vec![(1, 0)];
    f.extend((1..=n - 2).map(|b| (0, b)));
    f.push((1, n - 2));
    build(&f, 3)
}

fn build(pairs: &[(u32, u32)], q: u64) -> Result<SolutionSet> {
    let factors = pairs
        .iter()
        .map(|&(a, b)| FactoredValue::new(a, b, q))
        .collect::<Result<Vec<_>>>()?;
    SolutionSet::from_factored(factors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub solution: SolutionSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureCatalog {
    entries: Vec<CatalogEntry>,
}

impl FixtureCatalog {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_fixture_line(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(i + 1, msg),
                Error::Domain(msg) => Error::parse(i + 1, msg),
                other => other,
            })?;
            if entries.iter().any(|e| e.label == entry.label) {
                return Err(Error::parse(
                    i + 1,
                    format!("duplicate label {}", entry.label),
                ));
            }
            entries.push(entry);
        }
        Ok(FixtureCatalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&SolutionSet> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| &e.solution)
    }

    pub fn with_n(&self, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.solution.n() == n)
    }

    /// Writes the catalog back in fixture format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let Some(f) = e.solution.factored() else {
                continue;
            };
            let pairs: Vec<String> = f.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{} {} {}\n", e.label, f[0].q, pairs.join(",")));
        }
        out
    }
}

/// Parses one fixture line (no comments or blanks).
pub fn parse_fixture_line(line: &str) -> Result<CatalogEntry> {
    let mut parts = line.split_whitespace();
    let label = parts
        .next()
        .ok_or_else(|| Error::parse(1, "missing label"))?;
    let prime = parts
        .next()
        .ok_or_else(|| Error::parse(1, "missing prime"))?
        .parse::<u64>()
        .map_err(|_| Error::parse(1, "bad prime"))?;
    let body: String = parts.collect();
    if body.is_empty() {
        return Err(Error::parse(1, "missing exponent pairs"));
    }
    let mut factors = Vec::new();
    let mut rest = body.as_str();
    loop {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(1, "expected '('"))?;
        let close = inner
            .find(')')
            .ok_or_else(|| Error::parse(1, "expected ')'"))?;
        let (a, b) = inner[..close]
            .split_once(',')
            .ok_or_else(|| Error::parse(1, "expected (a,b)"))?;
        let a = a
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(1, "bad exponent a"))?;
        let b = b
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(1, "bad exponent b"))?;
        if a > 64 || b > 4096 {
            return Err(Error::parse(1, "exponent out of supported range"));
        }
        factors.push(FactoredValue::new(a, b, prime)?);
        rest = &inner[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::parse(1, "expected ',' between pairs"))?;
    }
    Ok(CatalogEntry {
        label: label.to_string(),
        solution: SolutionSet::from_factored(factors)?,
    })
}

/// The 54 labeled solutions of `(E)_9` in `2^a·q^b` form with `a ≤ 2`.
pub fn catalog_theorem1() -> FixtureCatalog {
    FixtureCatalog::parse(CATALOG_N9).expect("bundled catalog parses")
}

/// The five solutions of `(E)_9` in distinct odd integers, B_1..B_5.
pub const ODD_SOLUTIONS_9: [[u64; 9]; 5] = [
    [3, 5, 7, 9, 11, 15, 21, 231, 315],
    [3, 5, 7, 9, 11, 15, 35, 45, 231],
    [3, 5, 7, 9, 11, 15, 21, 135, 10395],
    [3, 5, 7, 9, 11, 15, 33, 45, 385],
    [3, 5, 7, 9, 11, 15, 21, 165, 693],
];

pub fn odd_solutions_9() -> Vec<(String, SolutionSet)> {
    ODD_SOLUTIONS_9
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("B_{}", i + 1), SolutionSet::from_u64s(v)))
        .collect()
}

/// `B_12` written out, `{3,5,7,3^2,3^2·5·7,5^2,3^3,7^2,7^2·3^3,7·5^2·3^3}`.
/// Ten values, so not a solution by itself; used for the σ spot checks.
pub const B12_AS_PRINTED: [u64; 10] = [3, 5, 7, 9, 315, 25, 27, 49, 1323, 4725];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::reciprocal_sum;
    use num_traits::One;

    fn ints(s: &SolutionSet) -> Vec<u64> {
        s.values().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn u_examples() {
        assert_eq!(
            ints(&family_u(9).unwrap()),
            vec![2, 4, 5, 25, 125, 625, 3125, 15625, 62500]
        );
        assert_eq!(
            ints(&family_u(10).unwrap()),
            vec![2, 4, 5, 25, 125, 625, 3125, 15625, 78125, 312500]
        );
        assert!(family_u(8).is_err());
    }

    #[test]
    fn v_examples() {
        assert_eq!(
            ints(&family_v(9).unwrap()),
            vec![2, 4, 7, 14, 49, 98, 343, 686, 1372]
        );
        assert_eq!(
            ints(&family_v(11).unwrap()),
            vec![2, 4, 7, 14, 49, 98, 343, 686, 2401, 4802, 9604]
        );
        assert!(family_v(10).is_err());
    }

    #[test]
    fn z1_examples() {
        assert_eq!(
            ints(&family_z1(9).unwrap()),
            vec![2, 3, 9, 27, 81, 243, 729, 2187, 4374]
        );
        assert_eq!(
            ints(&family_z1(10).unwrap()),
            vec![2, 3, 9, 27, 81, 243, 729, 2187, 6561, 13122]
        );
    }

    #[test]
    fn families_sum_to_one() {
        for n in 9..=30 {
            assert!(family_u(n).unwrap().reciprocal_sum().is_one());
            assert!(family_z1(n).unwrap().reciprocal_sum().is_one());
            assert_eq!(family_z1(n).unwrap().n(), n as usize);
            if n % 2 == 1 {
                let v = family_v(n).unwrap();
                assert_eq!(v.n(), n as usize);
                assert!(v.reciprocal_sum().is_one());
            }
        }
    }

    #[test]
    fn catalog_contents() {
        let c = catalog_theorem1();
        assert_eq!(c.len(), 54);
        assert_eq!(
            ints(c.get("Y_1").unwrap()),
            vec![4, 3, 6, 12, 9, 36, 54, 162, 324]
        );
        assert_eq!(
            ints(c.get("Zhat_3").unwrap()),
            vec![2, 6, 12, 9, 18, 36, 27, 81, 162]
        );
        assert_eq!(c.get("U").unwrap(), &family_u(9).unwrap());
        assert_eq!(c.get("V").unwrap(), &family_v(9).unwrap());
        assert_eq!(
            c.get("Z_1").unwrap().sorted_values(),
            family_z1(9).unwrap().sorted_values()
        );
    }

    #[test]
    fn catalog_q3_part_is_the_enumeration() {
        let c = catalog_theorem1();
        let mut ours: Vec<_> = crate::enumerator::enumerate(9)
            .unwrap()
            .iter()
            .map(SolutionSet::sorted_values)
            .collect();
        let mut fixed: Vec<_> = c
            .entries()
            .iter()
            .filter(|e| e.solution.prime == Some(3))
            .map(|e| e.solution.sorted_values())
            .collect();
        ours.sort();
        fixed.sort();
        assert_eq!(fixed.len(), 52);
        assert_eq!(fixed, ours);
        assert_eq!(c.with_n(9).count(), 54);
    }

    #[test]
    fn catalog_text_roundtrip() {
        let c = catalog_theorem1();
        assert_eq!(FixtureCatalog::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn fixture_parse_errors() {
        assert!(parse_fixture_line("X 3").is_err());
        assert!(parse_fixture_line("X 4 (1,0)").is_err());
        assert!(parse_fixture_line("X 3 (0,0)").is_err());
        assert!(parse_fixture_line("X 3 (1,0)(2,0)").is_err());
        assert!(parse_fixture_line("X 3 (1,0),").is_err());
        assert!(parse_fixture_line("X 3 (1,x)").is_err());
        assert!(FixtureCatalog::parse("A 3 (1,0)\nA 3 (2,0)\n").is_err());
        let e = parse_fixture_line("T 3 (2,0), (0,1)").unwrap();
        assert_eq!(ints(&e.solution), vec![4, 3]);
    }

    #[test]
    fn odd_solutions_and_b12() {
        for (_, s) in odd_solutions_9() {
            assert!(reciprocal_sum(s.values()).is_one());
        }
        assert_eq!(B12_AS_PRINTED.len(), 10);
        assert_eq!(B12_AS_PRINTED[4], 9 * 5 * 7);
        assert_eq!(B12_AS_PRINTED[9], 7 * 25 * 27);
    }
}
