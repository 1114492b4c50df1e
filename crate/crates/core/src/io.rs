//! Text and JSON formats: brace lines, listings, solution files, ranges and
//! rationals. Every parser here takes untrusted input and reports errors
//! instead of panicking.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::arith::{Rational, SolutionSet};
use crate::error::{Error, Result};

/// JSON schema `{"n", "prime", "count", "solutions": [[ints]]}`.
///
/// Integers are written as bare JSON numbers of any size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub n: usize,
    #[serde(default)]
    pub prime: Option<u64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(with = "big_lists")]
    pub solutions: Vec<Vec<BigUint>>,
}

impl SolutionFile {
    pub fn new(n: usize, prime: Option<u64>, solutions: &[SolutionSet]) -> Self {
        SolutionFile {
            n,
            prime,
            count: Some(solutions.len()),
            solutions: solutions.iter().map(|s| s.values().to_vec()).collect(),
        }
    }

    pub fn to_solutions(&self) -> Vec<SolutionSet> {
        self.solutions
            .iter()
            .map(|v| {
                let mut s = SolutionSet::new(v.clone());
                s.prime = self.prime;
                s
            })
            .collect()
    }
}

mod big_lists {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Vec<BigUint>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<Vec<Box<RawValue>>> = v
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| RawValue::from_string(x.to_string()))
                    .collect::<std::result::Result<_, _>>()
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(S::Error::custom)?;
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<BigUint>>, D::Error> {
        let raw: Vec<Vec<Box<RawValue>>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        parse_uint(x.get().trim()).ok_or_else(|| {
                            D::Error::custom(format!("not a non-negative integer: {}", x.get()))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

fn parse_uint(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
}

pub fn parse_solution_json(input: &str) -> Result<SolutionFile> {
    let file: SolutionFile = serde_json::from_str(input)?;
    Ok(file)
}

pub fn to_json(file: &SolutionFile) -> Result<String> {
    Ok(serde_json::to_string(file)?)
}

/// Parses one `{v1,v2,...}` line of positive integers.
pub fn parse_brace_line(line: &str) -> Result<Vec<BigUint>> {
    let body = line
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::parse(1, "expected {v1,...,vn}"))?;
    body.split(',')
        .map(|tok| {
            let v = parse_uint(tok.trim())
                .ok_or_else(|| Error::parse(1, format!("bad integer {tok:?}")))?;
            if v.is_zero() {
                return Err(Error::parse(1, "zero is not a denominator"));
            }
            Ok(v)
        })
        .collect()
}

/// Parses a listing: brace lines, optionally followed by `There are N solutions`
/// (anything after the count on that line is ignored). Returns the lines and
/// the announced count, which must agree with the number of lines.
pub fn parse_listing(text: &str) -> Result<(Vec<Vec<BigUint>>, Option<usize>)> {
    let mut lines = Vec::new();
    let mut announced = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if announced.is_some() {
            return Err(Error::parse(i + 1, "content after the trailer"));
        }
        if let Some(rest) = line.strip_prefix("There are ") {
            let count: String = rest.chars().take_while(char::is_ascii_digit).collect();
            let count = count
                .parse::<usize>()
                .map_err(|_| Error::parse(i + 1, "bad solution count"))?;
            if count != lines.len() {
                return Err(Error::parse(
                    i + 1,
                    format!("trailer announces {count} solutions, found {}", lines.len()),
                ));
            }
            announced = Some(count);
            continue;
        }
        let v = parse_brace_line(line).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(i + 1, msg),
            other => other,
        })?;
        lines.push(v);
    }
    Ok((lines, announced))
}

/// Parses `a..b` (inclusive) or a single integer `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let s = s.trim();
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(1, format!("bad bound {t:?}")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::parse(1, format!("empty range {lo}..{hi}")));
    }
    Ok(lo..=hi)
}

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let (neg, digits) = match t.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, t),
        };
        let v = parse_uint(digits).ok_or_else(|| Error::parse(1, format!("bad integer {t:?}")))?;
        let v = BigInt::from(v);
        Ok(if neg { -v } else { v })
    };
    let (n, d) = match s.split_once('/') {
        Some((a, b)) => (int(a)?, int(b)?),
        None => (int(s)?, BigInt::from(1)),
    };
    if d.is_zero() {
        return Err(Error::parse(1, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}
