//! Brute-force enumerators, independent of the automaton.
//!
//! [`restricted_brute_force`] searches subsets of the `2^a·q^b` pool with
//! integer arithmetic over the common denominator `4·q^B`.
//! [`general_enumerate`] is the textbook search for all of `(E)_n` with
//! exact rationals; it is only usable for tiny `n`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{is_prime, FactoredValue, Rational, SolutionSet};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Every `2^a·q^b > 1` with `a ≤ 2`, `b ≤ B`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePool {
    pub q: u64,
    pub max_a: u32,
    pub max_b: u32,
    values: Vec<FactoredValue>,
}

impl CandidatePool {
    pub fn new(q: u64, max_b: u32) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(Error::domain(format!("{q} is not an odd prime")));
        }
        let mut values = Vec::new();
        for b in 0..=max_b {
            for a in 0..=2 {
                if a == 0 && b == 0 {
                    continue;
                }
                values.push(FactoredValue::new(a, b, q)?);
            }
        }
        values.sort_by_key(FactoredValue::value);
        Ok(CandidatePool {
            q,
            max_a: 2,
            max_b,
            values,
        })
    }

    pub fn values(&self) -> &[FactoredValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Default exponent cap for the restricted search, one above the largest
/// exponent the known families reach.
pub fn default_cap(n: u32, q: u64) -> Result<u32> {
    if n < 3 {
        return Err(Error::domain(format!("n must be at least 3, got {n}")));
    }
    Ok(match q {
        5 => n - 3 + 1,
        7 => (n - 3) / 2 + 1,
        _ => n - 2 + 1,
    })
}

/// All sets of `n` distinct pool values with reciprocal sum exactly 1,
/// each listed in ascending order, the list sorted lexicographically.
pub fn restricted_brute_force(n: u32, q: u64, max_b: u32, budget: u64) -> Result<Vec<SolutionSet>> {
    if n < 3 {
        return Err(Error::domain(format!("n must be at least 3, got {n}")));
    }
    if max_b < 1 {
        return Err(Error::domain("exponent cap must be at least 1"));
    }
    let pool = CandidatePool::new(q, max_b)?;
    let n = n as usize;
    if n > pool.len() {
        return Ok(Vec::new());
    }
    let den = q
        .checked_pow(max_b)
        .and_then(|v| (v as u128).checked_mul(4))
        .ok_or(Error::Overflow("common denominator 4·q^B"))?;
    // weight[i] = den / value[i]; descending because the pool ascends.
    let weights: Vec<u128> = pool
        .values()
        .iter()
        .map(|f| (1u128 << (2 - f.a)) * (q as u128).pow(max_b - f.b))
        .collect();
    // prefix[i] = weights[0] + ... + weights[i-1]
    let mut prefix = vec![0u128; weights.len() + 1];
    for (i, w) in weights.iter().enumerate() {
        prefix[i + 1] = prefix[i] + w;
    }
    let mut search = Search {
        weights: &weights,
        prefix: &prefix,
        chosen: Vec::with_capacity(n),
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    search.dfs(0, n, den)?;
    let mut out: Vec<SolutionSet> = search
        .found
        .into_iter()
        .map(|idx| SolutionSet::from_factored(idx.into_iter().map(|i| pool.values()[i]).collect()))
        .collect::<Result<_>>()?;
    out.sort_by_key(SolutionSet::sorted_values);
    Ok(out)
}

struct Search<'a> {
    weights: &'a [u128],
    prefix: &'a [u128],
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn dfs(&mut self, start: usize, slots: usize, need: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if slots == 0 {
            if need == 0 {
                self.found.push(self.chosen.clone());
            }
            return Ok(());
        }
        let len = self.weights.len();
        if need == 0 || start + slots > len {
            return Ok(());
        }
        // The smallest possible completion uses the last `slots` weights.
        if self.prefix[len] - self.prefix[len - slots] > need {
            return Ok(());
        }
        for i in start..=len - slots {
            // The largest completion from i on uses weights i..i+slots.
            if self.prefix[i + slots] - self.prefix[i] < need {
                break;
            }
            let w = self.weights[i];
            if w > need {
                continue;
            }
            self.chosen.push(i);
            self.dfs(i + 1, slots - 1, need - w)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// All solutions of `(E)_n` as non-decreasing tuples, or strictly increasing
/// ones when `distinct` is set. Output is in lexicographic order.
pub fn general_enumerate(n: u32, distinct: bool, budget: u64) -> Result<Vec<SolutionSet>> {
    if n == 0 || n > 7 {
        return Err(Error::domain(format!(
            "general enumeration supports 1 <= n <= 7, got {n}"
        )));
    }
    let mut g = General {
        distinct,
        current: Vec::with_capacity(n as usize),
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    g.dfs(Rational::one(), n, BigInt::one())?;
    Ok(g.found
        .into_iter()
        .map(|v| SolutionSet::new(v).with_distinct(distinct))
        .collect())
}

struct General {
    distinct: bool,
    current: Vec<BigUint>,
    found: Vec<Vec<BigUint>>,
    nodes: u64,
    budget: u64,
}

impl General {
    fn dfs(&mut self, rest: Rational, slots: u32, min: BigInt) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if slots == 1 {
            // rest must be exactly 1/x with x >= min.
            if rest.numer().is_one() && *rest.denom() >= min {
                let x = rest.denom().magnitude().clone();
                self.current.push(x);
                self.found.push(self.current.clone());
                self.current.pop();
            }
            return Ok(());
        }
        // 1/x <= rest  =>  x >= ceil(1/rest); slots/x >= rest  =>  x <= floor(slots/rest).
        let lo = Integer::div_ceil(rest.denom(), rest.numer()).max(min);
        let hi = (rest.denom() * BigInt::from(slots)).div_floor(rest.numer());
        let mut x = lo;
        while x <= hi {
            let r = &rest - Rational::new(BigInt::one(), x.clone());
            if r.is_positive() {
                self.current.push(x.magnitude().clone());
                let next = if self.distinct { &x + 1 } else { x.clone() };
                self.dfs(r, slots - 1, next)?;
                self.current.pop();
            }
            x += 1;
        }
        Ok(())
    }
}

/// Canonical set view: each solution as its sorted values.
pub fn as_set(solutions: &[SolutionSet]) -> BTreeSet<Vec<BigUint>> {
    solutions.iter().map(SolutionSet::sorted_values).collect()
}

/// Converts small values to `u64` for display and tests; `None` on overflow.
pub fn to_u64s(s: &SolutionSet) -> Option<Vec<u64>> {
    s.values().iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_u, family_v};

    fn sets(v: &[&[u64]]) -> BTreeSet<Vec<BigUint>> {
        v.iter()
            .map(|s| {
                let mut x: Vec<BigUint> = s.iter().map(|&v| BigUint::from(v)).collect();
                x.sort();
                x
            })
            .collect()
    }

    #[test]
    fn pool_shape() {
        let p = CandidatePool::new(3, 8).unwrap();
        assert_eq!(p.len(), 3 * 9 - 1);
        let v: Vec<BigUint> = p.values().iter().map(FactoredValue::value).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v[0], BigUint::from(2u8));
        assert!(CandidatePool::new(9, 3).is_err());
        assert!(CandidatePool::new(2, 3).is_err());
    }

    #[test]
    fn default_caps() {
        assert_eq!(default_cap(9, 3).unwrap(), 8);
        assert_eq!(default_cap(9, 5).unwrap(), 7);
        assert_eq!(default_cap(9, 7).unwrap(), 4);
        assert_eq!(default_cap(10, 7).unwrap(), 4);
        assert_eq!(default_cap(11, 7).unwrap(), 5);
    }

    #[test]
    fn q3_n9_matches_enumerator() {
        let b = restricted_brute_force(9, 3, 8, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(b.len(), 52);
        let e = crate::enumerator::enumerate(9).unwrap();
        assert_eq!(as_set(&b), as_set(&e));
    }

    #[test]
    fn cap_plus_one_is_stable() {
        let b = restricted_brute_force(9, 3, 8, DEFAULT_NODE_BUDGET).unwrap();
        let c = restricted_brute_force(9, 3, 9, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&b), as_set(&c));
        let u = restricted_brute_force(9, 5, 8, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&u), as_set(&[family_u(9).unwrap()]));
    }

    #[test]
    fn q5_and_q7() {
        let u = restricted_brute_force(9, 5, 7, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&u), as_set(&[family_u(9).unwrap()]));
        let v = restricted_brute_force(9, 7, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&v), as_set(&[family_v(9).unwrap()]));
        assert!(restricted_brute_force(10, 7, 4, DEFAULT_NODE_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let err = restricted_brute_force(9, 3, 8, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(matches!(
            general_enumerate(5, false, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn small_general() {
        let three = general_enumerate(3, false, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&three), sets(&[&[3, 3, 3], &[2, 4, 4], &[2, 3, 6]]));
        let two = general_enumerate(2, false, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(as_set(&two), sets(&[&[2, 2]]));
        assert_eq!(general_enumerate(1, false, 10).unwrap().len(), 1);
        assert!(general_enumerate(2, true, 100).unwrap().is_empty());
        assert!(general_enumerate(8, false, 100).is_err());
    }

    #[test]
    fn general_counts() {
        // Unrestricted and distinct counts, checked against the integer sequences.
        let all = [1, 1, 3, 14, 147, 3462];
        let dist = [1, 0, 1, 6, 72, 2320];
        for n in 1..=6u32 {
            let i = (n - 1) as usize;
            assert_eq!(
                general_enumerate(n, false, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .len(),
                all[i],
                "n={n}"
            );
            assert_eq!(
                general_enumerate(n, true, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .len(),
                dist[i],
                "n={n}"
            );
        }
    }

    #[test]
    fn general_results_sum_to_one() {
        for s in general_enumerate(5, false, DEFAULT_NODE_BUDGET).unwrap() {
            assert!(s.reciprocal_sum().is_one());
            assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
