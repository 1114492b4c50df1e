//! Exact arithmetic and the shared domain types.
//!
//! Everything here works on arbitrary-size integers. Solutions at n = 35
//! already contain 2·3^33, and common denominators of longer solutions leave
//! the 64-bit range quickly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A denominator in exponent form `2^a · q^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactoredValue {
    pub a: u32,
    pub b: u32,
    pub q: u64,
}

impl FactoredValue {
    /// Builds `2^a · q^b`, rejecting even or composite `q` and the value 1.
    pub fn new(a: u32, b: u32, q: u64) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(Error::domain(format!("{q} is not an odd prime")));
        }
        if a == 0 && b == 0 {
            return Err(Error::domain("the value 1 is not a candidate denominator"));
        }
        Ok(FactoredValue { a, b, q })
    }

    pub fn value(&self) -> BigUint {
        (BigUint::one() << self.a) * BigUint::from(self.q).pow(self.b)
    }
}

impl fmt::Display for FactoredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An ordered list of positive integers, usually with reciprocal sum 1.
///
/// Element order is kept as produced; equality of solution *sets* should go
/// through [`SolutionSet::sorted_values`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionSet {
    values: Vec<BigUint>,
    /// The odd prime `q` when the solution is in restricted `2^a·q^b` form.
    pub prime: Option<u64>,
    /// Whether the values are required to be pairwise distinct.
    pub distinct: bool,
    factored: Option<Vec<FactoredValue>>,
}

impl SolutionSet {
    pub fn new(values: Vec<BigUint>) -> Self {
        SolutionSet {
            values,
            prime: None,
            distinct: true,
            factored: None,
        }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn from_factored(factors: Vec<FactoredValue>) -> Result<Self> {
        let prime = match factors.first() {
            Some(f) => f.q,
            None => return Err(Error::domain("empty factored solution")),
        };
        if factors.iter().any(|f| f.q != prime) {
            return Err(Error::domain("mixed odd primes in one factored solution"));
        }
        Ok(SolutionSet {
            values: factors.iter().map(FactoredValue::value).collect(),
            prime: Some(prime),
            distinct: true,
            factored: Some(factors),
        })
    }

    pub fn with_distinct(mut self, distinct: bool) -> Self {
        self.distinct = distinct;
        self
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn factored(&self) -> Option<&[FactoredValue]> {
        self.factored.as_deref()
    }

    pub fn sorted_values(&self) -> Vec<BigUint> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    /// Exact sum of reciprocals, over the factored common denominator when
    /// the exponent form is known.
    pub fn reciprocal_sum(&self) -> Rational {
        match &self.factored {
            Some(f) => reciprocal_sum_factored(f).unwrap_or_else(|_| reciprocal_sum(&self.values)),
            None => reciprocal_sum(&self.values),
        }
    }

    pub fn is_pairwise_distinct(&self) -> bool {
        let sorted = self.sorted_values();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Brace form used by the printed listings: `{2,3,6}`.
    pub fn to_brace_string(&self) -> String {
        let body: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brace_string())
    }
}

/// Exact reduced value of `Σ 1/x`. The empty sum is 0.
///
/// Zero entries have no reciprocal; callers validate positivity first, and a
/// zero here is treated as contributing nothing.
pub fn reciprocal_sum(values: &[BigUint]) -> Rational {
    let nonzero: Vec<&BigUint> = values.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return Rational::zero();
    }
    let l = nonzero.iter().fold(BigUint::one(), |acc, v| acc.lcm(v));
    let num: BigUint = nonzero.iter().map(|v| &l / *v).sum();
    Rational::new(BigInt::from(num), BigInt::from(l))
}

/// Reciprocal sum over the common denominator `2^A · q^B`.
pub fn reciprocal_sum_factored(values: &[FactoredValue]) -> Result<Rational> {
    let Some(first) = values.first() else {
        return Ok(Rational::zero());
    };
    let q = first.q;
    if values.iter().any(|f| f.q != q) {
        return Err(Error::domain("mixed odd primes in reciprocal sum"));
    }
    let max_a = values.iter().map(|f| f.a).max().unwrap_or(0);
    let max_b = values.iter().map(|f| f.b).max().unwrap_or(0);
    let qb = BigUint::from(q);
    let den = (BigUint::one() << max_a) * qb.pow(max_b);
    let num: BigUint = values
        .iter()
        .map(|f| (BigUint::one() << (max_a - f.a)) * qb.pow(max_b - f.b))
        .sum();
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// `v_p(x)`, with `v_p(0) = +∞` as its own variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Largest `e` with `p^e | x`.
pub fn valuation(x: &BigUint, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut e = 0u32;
    loop {
        let (quo, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(Valuation::Finite(e));
        }
        x = quo;
        e += 1;
    }
}

/// Finite valuation of a positive integer; panics are impossible because `x ≥ 1`
/// is checked.
pub(crate) fn valuation_pos(x: &BigUint, p: u64) -> Result<u32> {
    match valuation(x, p)? {
        Valuation::Finite(e) => Ok(e),
        Valuation::Infinite => Err(Error::domain(
            "valuation of 0 requested where x >= 1 is required",
        )),
    }
}

/// Elementary symmetric polynomial `σ_k(values)`.
pub fn elementary_symmetric(k: usize, values: &[BigInt]) -> Result<BigInt> {
    if k > values.len() {
        return Err(Error::InvalidDegree {
            k,
            len: values.len(),
        });
    }
    // e[j] holds σ_j of the prefix processed so far.
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for v in values {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * v;
            e[j] += t;
        }
    }
    Ok(e.swap_remove(k))
}

#[cfg(test)]
pub(crate) fn big(v: u64) -> BigUint {
    BigUint::from(v)
}
