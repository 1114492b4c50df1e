//! Validation, p-adic checks, arithmetical structures and expansions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{elementary_symmetric, is_prime, valuation_pos, Rational, SolutionSet};
use crate::error::{Error, Result};

/// What a solution is supposed to satisfy beyond summing to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub distinct: bool,
    /// `(q, max_a)`: every value must be `2^a·q^b` with `a ≤ max_a`.
    pub form: Option<(u64, u32)>,
}

impl Constraints {
    /// The constraints a solution carries with it.
    pub fn declared(s: &SolutionSet) -> Self {
        Constraints {
            distinct: s.distinct,
            form: s.prime.map(|q| (q, 2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub q: u64,
    pub max_a: u32,
    pub pass: bool,
    pub offending: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub solution: String,
    pub n: usize,
    pub positive: bool,
    pub reciprocal_sum: String,
    pub sum_is_one: bool,
    /// Present when distinctness was required.
    pub distinct: Option<bool>,
    pub form: Option<FormReport>,
    pub pass: bool,
}

pub fn validate_solution(s: &SolutionSet, c: &Constraints) -> ValidationReport {
    let positive = s.n() > 0 && s.values().iter().all(|v| !v.is_zero());
    let sum = s.reciprocal_sum();
    let sum_is_one = positive && sum.is_one();
    let distinct = c.distinct.then(|| s.is_pairwise_distinct());
    let form = c.form.map(|(q, max_a)| {
        let offending: Vec<String> = s
            .values()
            .iter()
            .filter(|v| !in_form(v, q, max_a))
            .map(ToString::to_string)
            .collect();
        FormReport {
            q,
            max_a,
            pass: offending.is_empty(),
            offending,
        }
    });
    let pass = sum_is_one && distinct.unwrap_or(true) && form.as_ref().is_none_or(|f| f.pass);
    ValidationReport {
        solution: s.to_brace_string(),
        n: s.n(),
        positive,
        reciprocal_sum: sum.to_string(),
        sum_is_one,
        distinct,
        form,
        pass,
    }
}

fn in_form(v: &BigUint, q: u64, max_a: u32) -> bool {
    if v.is_zero() {
        return false;
    }
    let a = v.trailing_zeros().unwrap_or(0);
    if a > u64::from(max_a) {
        return false;
    }
    let mut odd = v >> a;
    let q = BigUint::from(q);
    while !odd.is_one() {
        let (quo, rem) = odd.div_rem(&q);
        if !rem.is_zero() {
            return false;
        }
        odd = quo;
    }
    true
}

/// Highest `p`-adic valuation of a solution and where it occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicProfile {
    pub p: u64,
    pub alpha: u32,
    pub s: usize,
    pub occurrences: Vec<usize>,
    /// `x_i / p^alpha` at each occurrence.
    pub cofactors: Vec<BigUint>,
}

/// Profile plus the outcome of each property; `None` means the property's
/// hypotheses do not hold for this solution and prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicCheck {
    pub profile: PadicProfile,
    /// Largest valuation outside the occurrences, 0 when every index attains alpha.
    pub max_other: u32,
    pub cor2: Option<bool>,
    pub cor3: Option<bool>,
    /// Whether the exact-valuation form of `cor3` was checked.
    pub cor3_exact: bool,
    pub cor4: Option<bool>,
    pub lemma2: Option<bool>,
    /// Parity of `s`, reported for every even-containing solution.
    pub s_even: Option<bool>,
}

impl PadicCheck {
    /// True unless some applicable property failed.
    pub fn passes(&self) -> bool {
        [self.cor2, self.cor3, self.cor4, self.lemma2]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

pub fn padic_check(s: &SolutionSet, p: u64) -> Result<PadicCheck> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let vals = s
        .values()
        .iter()
        .map(|x| valuation_pos(x, p))
        .collect::<Result<Vec<u32>>>()?;
    let alpha = vals.iter().copied().max().unwrap_or(0);
    let pb = BigUint::from(p);
    let pa = pb.pow(alpha);
    let occurrences: Vec<usize> = if alpha == 0 {
        Vec::new()
    } else {
        (0..vals.len()).filter(|&i| vals[i] == alpha).collect()
    };
    let cofactors: Vec<BigUint> = occurrences.iter().map(|&i| &s.values()[i] / &pa).collect();
    let count = occurrences.len();
    let others: Vec<u32> = (0..vals.len())
        .filter(|i| !occurrences.contains(i))
        .map(|i| vals[i])
        .collect();
    let max_other = others.iter().copied().max().unwrap_or(0);
    let profile = PadicProfile {
        p,
        alpha,
        s: count,
        occurrences,
        cofactors,
    };
    if alpha == 0 {
        return Ok(PadicCheck {
            profile,
            max_other,
            cor2: None,
            cor3: None,
            cor3_exact: false,
            cor4: None,
            lemma2: None,
            s_even: None,
        });
    }
    let cor2 = Some(count >= 2);
    let (mut cor3, mut cor3_exact, mut cor4) = (None, false, None);
    if count >= 2 {
        let co: Vec<BigInt> = profile
            .cofactors
            .iter()
            .cloned()
            .map(BigInt::from)
            .collect();
        let sigma = elementary_symmetric(count - 1, &co)?;
        let v = valuation_pos(sigma.magnitude(), p)?;
        let mut ok = max_other < alpha && v >= alpha - max_other.min(alpha);
        let unique = others.iter().filter(|&&m| m == max_other).count() == 1;
        if unique && max_other > 0 {
            cor3_exact = true;
            ok = ok && v == alpha - max_other;
        }
        cor3 = Some(ok);
        let mut all = true;
        for skip in 0..count {
            let sub: Vec<BigInt> = co
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, x)| x.clone())
                .collect();
            let sg = elementary_symmetric(count - 2, &sub)?;
            all &= valuation_pos(sg.magnitude(), p)? == 0;
        }
        cor4 = Some(all);
    }
    let s_even = (p == 2).then_some(count.is_multiple_of(2));
    let lemma2 = (p == 2 && s.n() == 9 && s.is_pairwise_distinct()).then_some(count.is_multiple_of(2));
    Ok(PadicCheck {
        profile,
        max_other,
        cor2,
        cor3,
        cor3_exact,
        cor4,
        lemma2,
        s_even,
    })
}

/// Distinct primes dividing any element, ascending.
pub fn prime_divisors(s: &SolutionSet) -> Vec<u64> {
    let mut out = Vec::new();
    for v in s.values() {
        let Some(mut x) = num_traits::ToPrimitive::to_u128(v) else {
            // Large values here are always 2^a·q^b; fall back to trial division by small primes.
            let mut x = v.clone();
            let mut d = 2u64;
            while d < 1_000_000 && !x.is_one() && !x.is_zero() {
                let bd = BigUint::from(d);
                if (&x % &bd).is_zero() {
                    out.push(d);
                    while (&x % &bd).is_zero() {
                        x /= &bd;
                    }
                }
                d += if d == 2 { 1 } else { 2 };
            }
            continue;
        };
        let mut d = 2u128;
        while d * d <= x {
            if x % d == 0 {
                out.push(d as u64);
                while x % d == 0 {
                    x /= d;
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if x > 1 {
            out.push(x as u64);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `(d, r)` on the complete graph `K_n`: `d_i·r_i = Σ_{j≠i} r_j`, `gcd(r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticalStructure {
    pub n: usize,
    pub d: Vec<BigUint>,
    pub r: Vec<BigUint>,
}

impl ArithmeticalStructure {
    /// Checks `(diag(d) − A)·r = 0` and `gcd(r) = 1`.
    pub fn verify(&self) -> bool {
        if self.d.len() != self.n || self.r.len() != self.n || self.r.iter().any(Zero::is_zero) {
            return false;
        }
        let total: BigUint = self.r.iter().sum();
        let g = self.r.iter().fold(BigUint::zero(), |g, x| g.gcd(x));
        g.is_one() && self.d.iter().zip(&self.r).all(|(d, r)| d * r + r == total)
    }

    /// Recovers the denominators, `x_i = Σr / r_i`.
    pub fn to_solution(&self) -> SolutionSet {
        let total: BigUint = self.r.iter().sum();
        SolutionSet::new(self.r.iter().map(|r| &total / r).collect())
    }
}

pub fn to_structure(s: &SolutionSet) -> Result<ArithmeticalStructure> {
    if s.n() == 0 || s.values().iter().any(Zero::is_zero) || !s.reciprocal_sum().is_one() {
        return Err(Error::domain(format!("{s} is not a solution")));
    }
    let l = s.values().iter().fold(BigUint::one(), |acc, x| acc.lcm(x));
    let raw: Vec<BigUint> = s.values().iter().map(|x| &l / x).collect();
    let g = raw.iter().fold(BigUint::zero(), |g, x| g.gcd(x));
    let r: Vec<BigUint> = raw.iter().map(|x| x / &g).collect();
    let total: BigUint = r.iter().sum();
    let mut d = Vec::with_capacity(r.len());
    for ri in &r {
        let (q, rem) = (&total - ri).div_rem(ri);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "r_i = {ri} does not divide the rest of the sum"
            )));
        }
        d.push(q);
    }
    let st = ArithmeticalStructure { n: s.n(), d, r };
    if !st.verify() {
        return Err(Error::Internal(format!("structure identity fails for {s}")));
    }
    Ok(st)
}

/// Greedy unit-fraction expansion of `0 < r ≤ 1`.
pub fn greedy_expand(r: &Rational) -> Result<Vec<BigUint>> {
    if *r <= Rational::zero() || *r > Rational::one() {
        return Err(Error::domain(format!("{r} is outside (0, 1]")));
    }
    let mut rest = r.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let c = Integer::div_ceil(rest.denom(), rest.numer());
        rest -= Rational::new(BigInt::one(), c.clone());
        out.push(c.magnitude().clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `1/a = 1/(5a/4) + 1/(10a) + 1/(15a) + 1/(30a)`, needs `4 | a`.
    FourTerm,
    /// `1/a = 1/(3a/2) + 1/(3a)`, needs `2 | a`.
    TwoTerm,
}

impl std::str::FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "four" | "four-term" | "4" => Ok(Identity::FourTerm),
            "two" | "two-term" | "2" => Ok(Identity::TwoTerm),
            _ => Err(Error::domain(format!("unknown identity {s:?}"))),
        }
    }
}

pub fn identity_expand(x: &BigUint, which: Identity) -> Result<Vec<BigUint>> {
    let need = match which {
        Identity::FourTerm => 4u32,
        Identity::TwoTerm => 2,
    };
    if x.is_zero() || !(x % need).is_zero() {
        return Err(Error::domain(format!(
            "{x} is not a positive multiple of {need}"
        )));
    }
    Ok(match which {
        Identity::FourTerm => vec![x / 4u32 * 5u32, x * 10u32, x * 15u32, x * 30u32],
        Identity::TwoTerm => vec![x / 2u32 * 3u32, x * 3u32],
    })
}

/// Replaces the element at `index` by its expansion, in place.
pub fn expand_solution(s: &SolutionSet, index: usize, which: Identity) -> Result<SolutionSet> {
    let x = s
        .values()
        .get(index)
        .ok_or_else(|| Error::domain(format!("index {index} out of range")))?;
    let parts = identity_expand(x, which)?;
    let mut v = s.values().to_vec();
    v.splice(index..=index, parts);
    Ok(SolutionSet::new(v).with_distinct(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalog_theorem1, family_z1, odd_solutions_9, B12_AS_PRINTED};
    use proptest::prelude::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn bs(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn validation_examples() {
        let b1 = SolutionSet::from_u64s(&[3, 5, 7, 9, 11, 15, 21, 231, 315]);
        let r = validate_solution(
            &b1,
            &Constraints {
                distinct: true,
                form: None,
            },
        );
        assert!(r.pass);
        let bad = SolutionSet::from_u64s(&[2, 3, 7]);
        let r = validate_solution(&bad, &Constraints::default());
        assert!(!r.pass);
        assert_eq!(r.reciprocal_sum, "41/42");
        let z = SolutionSet::from_u64s(&[2, 3, 9, 27, 81, 243, 729, 2187, 4374]);
        let c = Constraints {
            distinct: false,
            form: Some((3, 2)),
        };
        assert!(validate_solution(&z, &c).pass);
        let r = validate_solution(
            &SolutionSet::from_u64s(&[2, 8, 8, 4]),
            &Constraints {
                distinct: false,
                form: Some((3, 2)),
            },
        );
        assert!(r.sum_is_one);
        assert_eq!(r.form.unwrap().offending, vec!["8", "8"]);
        let dup = SolutionSet::from_u64s(&[2, 4, 4]);
        assert_eq!(
            validate_solution(
                &dup,
                &Constraints {
                    distinct: true,
                    form: None
                }
            )
            .distinct,
            Some(false)
        );
        assert!(!validate_solution(&SolutionSet::from_u64s(&[0, 1]), &Constraints::default()).pass);
    }

    #[test]
    fn report_serializes() {
        let r = validate_solution(&SolutionSet::from_u64s(&[2, 3, 6]), &Constraints::default());
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"pass\":true"));
        assert!(j.contains("\"reciprocal_sum\":\"1\""));
    }

    #[test]
    fn z1_profile_at_3() {
        let z = family_z1(9).unwrap();
        let c = padic_check(&z, 3).unwrap();
        assert_eq!(c.profile.alpha, 7);
        assert_eq!(c.profile.s, 2);
        assert_eq!(c.profile.cofactors, bs(&[1, 2]));
        assert!(c.passes());
        assert_eq!(c.cor3, Some(true));
        assert!(padic_check(&z, 4).is_err());
        let c5 = padic_check(&z, 5).unwrap();
        assert_eq!(c5.cor2, None);
    }

    #[test]
    fn b12_spot_checks() {
        // Cofactors of the three 3^3 values.
        let v = B12_AS_PRINTED;
        let co: Vec<u64> = v
            .iter()
            .filter(|&&x| x % 27 == 0 && x % 81 != 0)
            .map(|x| x / 27)
            .collect();
        assert_eq!(co, vec![1, 49, 175]);
        let big = |xs: &[u64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(
            elementary_symmetric(1, &big(&[175, 1])).unwrap(),
            BigInt::from(176)
        );
        assert_eq!(
            elementary_symmetric(1, &big(&[49, 1])).unwrap(),
            BigInt::from(50)
        );
        assert_eq!(
            elementary_symmetric(1, &big(&[49, 175])).unwrap(),
            BigInt::from(224)
        );
        assert_eq!(
            elementary_symmetric(2, &big(&[49, 175, 1])).unwrap(),
            BigInt::from(8799)
        );
        assert_eq!(8799 % 3, 0);
        // p = 5: the two 5^2 values have cofactors 1 and 7·27.
        let co5: Vec<u64> = v.iter().filter(|&&x| x % 25 == 0).map(|x| x / 25).collect();
        assert_eq!(co5, vec![1, 189]);
        assert_eq!((co5[0] + co5[1]) % 5, 0);
    }

    #[test]
    fn catalog_passes_everything() {
        for e in catalog_theorem1().entries() {
            let s = &e.solution;
            assert!(
                validate_solution(s, &Constraints::declared(s)).pass,
                "{}",
                e.label
            );
            for p in prime_divisors(s) {
                let c = padic_check(s, p).unwrap();
                assert!(c.passes(), "{} at {p}: {c:?}", e.label);
                if p == 2 {
                    assert_eq!(c.lemma2, Some(true));
                }
            }
        }
        for (label, s) in odd_solutions_9() {
            for p in prime_divisors(&s) {
                assert!(padic_check(&s, p).unwrap().passes(), "{label} at {p}");
            }
        }
    }

    #[test]
    fn structures() {
        let st = to_structure(&SolutionSet::from_u64s(&[2, 3, 6])).unwrap();
        assert_eq!(st.r, bs(&[3, 2, 1]));
        assert_eq!(st.d, bs(&[1, 2, 5]));
        let st = to_structure(&SolutionSet::from_u64s(&[2, 4, 4])).unwrap();
        assert_eq!((st.r, st.d), (bs(&[2, 1, 1]), bs(&[1, 3, 3])));
        let st = to_structure(&SolutionSet::from_u64s(&[3, 3, 3])).unwrap();
        assert_eq!(
            (st.r.clone(), st.d.clone()),
            (bs(&[1, 1, 1]), bs(&[2, 2, 2]))
        );
        assert_eq!(st.to_solution().values(), &bs(&[3, 3, 3])[..]);
        assert!(to_structure(&SolutionSet::from_u64s(&[2, 3, 7])).is_err());
    }

    #[test]
    fn catalog_structures() {
        for e in catalog_theorem1().entries() {
            let st = to_structure(&e.solution).unwrap();
            assert!(st.verify());
            for (d, x) in st.d.iter().zip(e.solution.values()) {
                assert_eq!(d + 1u32, *x);
            }
            assert_eq!(st.to_solution().values(), e.solution.values());
        }
    }

    #[test]
    fn greedy_examples() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(greedy_expand(&r(2, 3)).unwrap(), bs(&[2, 6]));
        assert_eq!(greedy_expand(&r(1, 1)).unwrap(), bs(&[1]));
        assert_eq!(greedy_expand(&r(4, 5)).unwrap(), bs(&[2, 4, 20]));
        assert!(greedy_expand(&r(0, 1)).is_err());
        assert!(greedy_expand(&r(3, 2)).is_err());
    }

    #[test]
    fn identities() {
        assert_eq!(
            identity_expand(&b(4), Identity::FourTerm).unwrap(),
            bs(&[5, 40, 60, 120])
        );
        assert_eq!(
            identity_expand(&b(2), Identity::TwoTerm).unwrap(),
            bs(&[3, 6])
        );
        assert!(identity_expand(&b(6), Identity::FourTerm).is_err());
        assert!(identity_expand(&b(3), Identity::TwoTerm).is_err());
        let s =
            expand_solution(&SolutionSet::from_u64s(&[2, 4, 4]), 2, Identity::FourTerm).unwrap();
        assert_eq!(s.values(), &bs(&[2, 4, 5, 40, 60, 120])[..]);
        assert!(validate_solution(&s, &Constraints::default()).pass);
    }

    #[test]
    fn repeated_expansion_stays_valid() {
        let mut frontier = vec![SolutionSet::from_u64s(&[2, 4, 4])];
        for _ in 0..3 {
            let mut next = Vec::new();
            for s in &frontier {
                for i in 0..s.n() {
                    for id in [Identity::FourTerm, Identity::TwoTerm] {
                        if let Ok(t) = expand_solution(s, i, id) {
                            assert!(validate_solution(&t, &Constraints::default()).pass);
                            next.push(t);
                        }
                    }
                }
            }
            frontier = next;
        }
        assert!(!frontier.is_empty());
    }

    proptest! {
        #[test]
        fn greedy_resums(n in 1u64..200, d in 1u64..200) {
            prop_assume!(n <= d);
            let r = Rational::new(n.into(), d.into());
            let parts = greedy_expand(&r).unwrap();
            prop_assert!(parts.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(crate::arith::reciprocal_sum(&parts), r);
        }

        #[test]
        fn identity_resums(k in 1u64..10_000) {
            let x = b(4 * k);
            for id in [Identity::FourTerm, Identity::TwoTerm] {
                let parts = identity_expand(&x, id).unwrap();
                prop_assert_eq!(
                    crate::arith::reciprocal_sum(&parts),
                    Rational::new(BigInt::one(), BigInt::from(4 * k))
                );
            }
        }
    }
}
