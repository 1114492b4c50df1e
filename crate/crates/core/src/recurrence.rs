//! Closed recurrences for the `q = 3` counts, the per-depth node counts of
//! the two decision trees, and the depth-based bounds derived from them.
//!
//! Everything is bottom-up dynamic programming; nothing here walks the
//! automaton, so these numbers are an independent check on
//! [`crate::automaton`].

use serde::Serialize;

use crate::automaton::Order;
use crate::error::{Error, Result};

/// `(tri, sq, ast, dia, St1, St2, St, t, p)` at one `n`: the number of
/// solutions whose first move with `n` unknowns is the corresponding order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountVector {
    pub tri: u128,
    pub sq: u128,
    pub ast: u128,
    pub dia: u128,
    pub st1: u128,
    pub st2: u128,
    pub st: u128,
    pub t: u128,
    pub p: u128,
}

impl CountVector {
    pub fn as_array(&self) -> [u128; 9] {
        [
            self.tri, self.sq, self.ast, self.dia, self.st1, self.st2, self.st, self.t, self.p,
        ]
    }

    /// Component for one of the nine orders.
    pub fn for_order(&self, order: Order) -> u128 {
        match order {
            Order::Triangle => self.tri,
            Order::Square => self.sq,
            Order::Asterisk => self.ast,
            Order::Diamond => self.dia,
            Order::Starone => self.st1,
            Order::Startwo => self.st2,
            Order::Starthree => self.st,
            Order::RedStartwo => self.t,
            Order::RedStarthree => self.p,
        }
    }

    /// Sum of the first seven components.
    pub fn solutions(&self) -> Option<u128> {
        self.as_array()[..7]
            .iter()
            .try_fold(0u128, |acc, &v| acc.checked_add(v))
    }

    // tri + sq + St1 + St2 + St: every order applicable in state One.
    fn one_state_total(&self) -> Option<u128> {
        self.tri
            .checked_add(self.sq)?
            .checked_add(self.st1)?
            .checked_add(self.st2)?
            .checked_add(self.st)
    }
}

/// Components pinned to zero by the initial conditions, besides `tri(3) = 1`.
/// Indices below 3 are zero throughout.
const PINNED_ZERO: &[(usize, u32)] = &[
    // (component index in as_array order, n)
    (3, 3),
    (1, 3),
    (2, 3),
    (6, 3),
    (5, 3),
    (4, 3),
    (7, 3),
    (8, 3),
    (3, 4),
    (6, 4),
    (5, 4),
    (4, 4),
    (7, 4),
    (8, 4),
    (6, 5),
    (5, 5),
    (4, 5),
    (5, 6),
    (6, 6),
    (5, 7),
    (6, 7),
];

fn delta(n: u32, k: u32) -> u128 {
    u128::from(n == k)
}

/// Solution of the recurrence system at `n`, by forward DP from `n = 3`.
pub fn count_vector(n: u32) -> Result<CountVector> {
    Ok(*count_table(n)?.last().expect("table is non-empty"))
}

/// Rows for `n = 3..=max_n`.
pub fn count_table(max_n: u32) -> Result<Vec<CountVector>> {
    if max_n < 3 {
        return Err(Error::domain(format!(
            "the recurrence starts at n = 3, got {max_n}"
        )));
    }
    // rows[i] holds n = i; rows 0..3 stay zero.
    let mut rows = vec![CountVector::default(); max_n as usize + 1];
    let overflow = || Error::Overflow("recurrence");
    for n in 3..=max_n {
        let at = |k: u32| -> CountVector {
            if k < 3 || k >= n {
                CountVector::default()
            } else {
                rows[k as usize]
            }
        };
        let back = |j: u32| at(n.saturating_sub(j));
        let (b1, b2, b3, b5) = (back(1), back(2), back(3), back(5));
        let add = |a: u128, b: u128| a.checked_add(b);
        let mut row = CountVector {
            ast: add(add(b1.ast, b1.dia).ok_or_else(overflow)?, delta(n, 4))
                .ok_or_else(overflow)?,
            tri: b1.one_state_total().ok_or_else(overflow)?,
            sq: add(b1.ast, b1.dia).ok_or_else(overflow)?,
            dia: b2.one_state_total().ok_or_else(overflow)?,
            st1: add(add(b3.ast, b3.dia).ok_or_else(overflow)?, delta(n, 6))
                .ok_or_else(overflow)?,
            st2: [b5.ast, b5.dia, b5.t, b5.p, delta(n, 8)]
                .into_iter()
                .try_fold(0u128, add)
                .ok_or_else(overflow)?,
            st: b5.one_state_total().ok_or_else(overflow)?,
            t: [b2.ast, b2.dia, b2.t, b2.p, delta(n, 5)]
                .into_iter()
                .try_fold(0u128, add)
                .ok_or_else(overflow)?,
            p: b2.one_state_total().ok_or_else(overflow)?,
        };
        if n == 3 {
            row.tri = 1;
        }
        let mut arr = row.as_array();
        for &(idx, k) in PINNED_ZERO {
            if k == n {
                arr[idx] = 0;
            }
        }
        rows[n as usize] = CountVector {
            tri: arr[0],
            sq: arr[1],
            ast: arr[2],
            dia: arr[3],
            st1: arr[4],
            st2: arr[5],
            st: arr[6],
            t: arr[7],
            p: arr[8],
        };
    }
    Ok(rows.split_off(3))
}

fn check_nine(n: u32) -> Result<()> {
    if n < 9 {
        return Err(Error::domain(format!(
            "totals are defined for n >= 9, got {n}"
        )));
    }
    Ok(())
}

/// Number of `q = 3` solutions with `n` unknowns.
pub fn recurrence_total(n: u32) -> Result<u128> {
    check_nine(n)?;
    count_vector(n)?
        .solutions()
        .ok_or(Error::Overflow("recurrence total"))
}

/// All solutions in `2^a·q^b` (any odd prime, `a ≤ 2`): the `q = 3` count
/// plus `U_n` (q = 5) and, for odd `n`, `V_n` (q = 7).
pub fn theorem2_total(n: u32) -> Result<u128> {
    let extra = if n % 2 == 1 { 2 } else { 1 };
    recurrence_total(n)?
        .checked_add(extra)
        .ok_or(Error::Overflow("theorem total"))
}

/// Edge-class counts at one depth of a decision tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NodeCountState {
    pub a2: u128,
    pub a5: u128,
    pub a_heart: u128,
}

impl NodeCountState {
    pub fn initial(tree: u8) -> Result<Self> {
        match tree {
            1 => Ok(NodeCountState {
                a2: 1,
                a5: 0,
                a_heart: 0,
            }),
            2 => Ok(NodeCountState {
                a2: 0,
                a5: 1,
                a_heart: 0,
            }),
            _ => Err(Error::domain(format!(
                "tree index must be 1 or 2, got {tree}"
            ))),
        }
    }

    fn next(self) -> Option<Self> {
        let s = self;
        Some(NodeCountState {
            a2: s
                .a2
                .checked_add(s.a5.checked_mul(3)?)?
                .checked_add(s.a_heart)?,
            a5: s
                .a2
                .checked_add(s.a5.checked_mul(2)?)?
                .checked_add(s.a_heart)?,
            a_heart: s.a5.checked_add(s.a_heart)?,
        })
    }

    pub fn nodes(&self) -> Option<u128> {
        self.a2
            .checked_mul(2)?
            .checked_add(self.a5.checked_mul(5)?)?
            .checked_add(self.a_heart.checked_mul(2)?)
    }
}

/// `N_i(d) = 2·a_2(d) + 5·a_5(d) + 2·a_♥(d)`.
pub fn node_count(tree: u8, depth: u32) -> Result<u128> {
    if depth < 1 {
        return Err(Error::domain("depth starts at 1"));
    }
    let mut s = NodeCountState::initial(tree)?;
    for _ in 1..depth {
        s = s.next().ok_or(Error::Overflow("node count"))?;
    }
    s.nodes().ok_or(Error::Overflow("node count"))
}

/// Depth-based bracket on the `q = 3` count, evaluated as a diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthBounds {
    pub n: u32,
    pub d1_min: u32,
    pub d2_min: u32,
    /// Maximal depth as stated (`n - 3`).
    pub d_max: u32,
    pub lower: u128,
    pub upper: u128,
    /// Upper bound with the maximal depth `n - 4` derived in the proof.
    pub upper_alt: u128,
    /// `ms(n) - δ_even - 2·δ_odd`, i.e. the `q = 3` count.
    pub observed: u128,
    pub holds: bool,
    pub holds_alt: bool,
    /// Empty when the bracket holds; otherwise the suspected erratum.
    pub note: String,
}

/// Minimal leaf depths `(d1_min, d2_min)` per residue of `n` mod 5.
pub fn min_depths(n: u32) -> (u32, u32) {
    match n % 5 {
        0 => (n / 5, n / 5),
        1 => (n.div_ceil(5), (n - 1) / 5),
        2 => ((n + 3) / 5, (n + 3) / 5),
        3 => ((n + 2) / 5, (n - 3) / 5),
        _ => ((n + 6) / 5, (n + 1) / 5),
    }
}

pub fn depth_bounds(n: u32) -> Result<DepthBounds> {
    check_nine(n)?;
    let (d1_min, d2_min) = min_depths(n);
    let d_max = n - 3;
    let pair = |d1: u32, d2: u32| -> Result<u128> {
        node_count(1, d1)?
            .checked_add(node_count(2, d2)?)
            .ok_or(Error::Overflow("bound"))
    };
    let lower = pair(d1_min, d2_min)?;
    let upper = pair(d_max, d_max)?;
    let upper_alt = pair(n - 4, n - 4)?;
    let observed = recurrence_total(n)?;
    let holds = lower <= observed && observed <= upper;
    let holds_alt = lower <= observed && observed <= upper_alt;
    let mut notes = Vec::new();
    if observed < lower {
        notes.push(format!("lower bound {lower} exceeds the count {observed}"));
    }
    if observed > upper {
        notes.push(format!(
            "count {observed} exceeds the upper bound {upper} at d_max = n-3"
        ));
    }
    if !holds_alt && holds {
        notes.push(format!(
            "with d_max = n-4 the upper bound {upper_alt} fails"
        ));
    }
    if n.is_multiple_of(5) {
        notes.push(
            "n = 0 mod 5: printed lower bound has a dangling '+', read as N1(n/5)+N2(n/5)".into(),
        );
    }
    Ok(DepthBounds {
        n,
        d1_min,
        d2_min,
        d_max,
        lower,
        upper,
        upper_alt,
        observed,
        holds,
        holds_alt,
        note: notes.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_rows() {
        let v3 = count_vector(3).unwrap();
        assert_eq!(v3.as_array(), [1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let v4 = count_vector(4).unwrap();
        assert_eq!(v4.ast, 1);
        assert_eq!(v4.tri, 1);
        assert_eq!(v4.as_array().iter().sum::<u128>(), 2);
        // The corrections fire at n = 5, 6, 8.
        assert_eq!(count_vector(5).unwrap().t, 1);
        assert_eq!(count_vector(6).unwrap().st1, 1);
        assert_eq!(count_vector(8).unwrap().st2, 1);
        assert!(count_vector(2).is_err());
    }

    #[test]
    fn printed_output_at_35() {
        let v = count_vector(35).unwrap();
        assert_eq!(
            v.as_array(),
            [
                330_140_577,
                191_442_225,
                191_442_225,
                173_287_025,
                52_743_872,
                29_586_769,
                25_059_215,
                204_595_521,
                173_287_025
            ]
        );
        assert_eq!(recurrence_total(35).unwrap(), 993_701_908);
    }

    #[test]
    fn totals() {
        assert_eq!(recurrence_total(9).unwrap(), 52);
        assert_eq!(recurrence_total(13).unwrap(), 690);
        let t: Vec<u128> = (9..=14).map(|n| theorem2_total(n).unwrap()).collect();
        assert_eq!(t, vec![54, 101, 192, 363, 692, 1315]);
        assert!(recurrence_total(8).is_err());
    }

    #[test]
    fn node_counts() {
        assert_eq!(node_count(1, 1).unwrap(), 2);
        assert_eq!(node_count(2, 1).unwrap(), 5);
        assert_eq!(node_count(1, 2).unwrap(), 7);
        assert!(node_count(1, 0).is_err());
        assert!(node_count(3, 1).is_err());
    }

    /// N_i(d) by walking the edge rules 2 → 2+5, 5 → 5+2+2+2+♥+5, ♥ → 5+2+♥.
    fn nodes_by_rules(tree: u8, depth: u32) -> u128 {
        #[derive(Clone, Copy)]
        enum E {
            Two,
            Five,
            Heart,
        }
        let weight = |e: E| match e {
            E::Two => 2,
            E::Five => 5,
            E::Heart => 2,
        };
        let mut level = vec![if tree == 1 { E::Two } else { E::Five }];
        for _ in 1..depth {
            level = level
                .into_iter()
                .flat_map(|e| match e {
                    E::Two => vec![E::Two, E::Five],
                    E::Five => vec![E::Five, E::Two, E::Two, E::Two, E::Heart, E::Five],
                    E::Heart => vec![E::Five, E::Two, E::Heart],
                })
                .collect();
        }
        level.into_iter().map(weight).sum()
    }

    #[test]
    fn node_count_matches_rule_expansion() {
        for tree in [1, 2] {
            for d in 1..=8 {
                assert_eq!(
                    node_count(tree, d).unwrap(),
                    nodes_by_rules(tree, d),
                    "tree {tree}, depth {d}"
                );
            }
        }
    }

    #[test]
    fn min_depths_examples() {
        assert_eq!(min_depths(10), (2, 2));
        assert_eq!(min_depths(9), (3, 2));
        let b = depth_bounds(9).unwrap();
        assert_eq!((b.d1_min, b.d2_min, b.d_max), (3, 2, 6));
        assert_eq!(b.observed, 52);
    }
}
