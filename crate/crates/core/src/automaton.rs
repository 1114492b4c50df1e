//! The decision automaton for solutions in `2^a·3^b` with `a ≤ 2`.
//!
//! A node is a triple `(state, n, order)`: `n` unknowns remain and `order`
//! is the move about to be applied. [`RULES`] is the guard table of the
//! original counting/enumeration program, kept in its textual order because
//! guards overlap and the first match wins. Each rule also carries the values
//! the enumeration program appends at that node, so the enumerator reads the
//! same table.
//!
//! Emitted values are relative to the highest 3-valuation `A`, which is only
//! known at a leaf. `Deferred { coef, shift }` emitted while the running
//! counter is `c` becomes `coef·3^(A - c - shift)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Triangle,
    Square,
    Asterisk,
    Diamond,
    Starone,
    Startwo,
    Starthree,
    RedStartwo,
    RedStarthree,
}

impl Order {
    pub const ALL: [Order; 9] = [
        Order::Triangle,
        Order::Square,
        Order::Asterisk,
        Order::Diamond,
        Order::Starone,
        Order::Startwo,
        Order::Starthree,
        Order::RedStartwo,
        Order::RedStarthree,
    ];

    /// The state in which this order may be applied.
    pub fn state(self) -> State {
        match self {
            Order::Triangle
            | Order::Square
            | Order::Starone
            | Order::Startwo
            | Order::Starthree => State::One,
            Order::Asterisk | Order::Diamond | Order::RedStartwo | Order::RedStarthree => {
                State::Two
            }
        }
    }
}

/// `One`: the solution ends in `{3^α, 2·3^α}`. `Two`: it ends in `{2·3^α, 4·3^α}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum State {
    One,
    Two,
}

/// The seven top-level invocations, in the order the programs run them.
pub const TOP_LEVEL: [Order; 7] = [
    Order::Triangle,
    Order::Square,
    Order::Starone,
    Order::Startwo,
    Order::Starthree,
    Order::Asterisk,
    Order::Diamond,
];

pub const DEFAULT_COUNT_LIMIT: u32 = 40;

/// Condition on `n` in a rule guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Eq(u32),
    Either(u32, u32),
    Above(u32),
}

impl Guard {
    pub fn matches(self, n: u32) -> bool {
        match self {
            Guard::Eq(k) => n == k,
            Guard::Either(a, b) => n == a || n == b,
            Guard::Above(k) => n > k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Literal(u8),
    Deferred { coef: u8, shift: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Child {
    pub state: State,
    /// Unknowns consumed by the move: the child sees `n - drop`.
    pub drop: u32,
    pub order: Order,
    /// Counter increment passed to the child.
    pub step: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Terminal node; the highest 3-valuation resolves to `counter + offset`.
    Leaf {
        offset: u32,
    },
    Branch(&'static [Child]),
}

#[derive(Clone, Copy, Debug)]
pub struct Rule {
    pub state: State,
    /// `None` matches every order.
    pub order: Option<Order>,
    pub guard: Guard,
    /// Values prepended to the solution under construction, in output order.
    pub emit: &'static [Emit],
    /// The emission of the printed program where it differs from `emit`.
    pub printed_emit: Option<&'static [Emit]>,
    pub outcome: Outcome,
}

impl Rule {
    fn matches(&self, state: State, n: u32, order: Order) -> bool {
        self.state == state && self.order.is_none_or(|o| o == order) && self.guard.matches(n)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.outcome, Outcome::Leaf { .. })
    }
}

use Emit::{Deferred as D, Literal as L};
use Order::*;
use State::{One, Two};

const fn d(coef: u8) -> Emit {
    D { coef, shift: 0 }
}

const fn d1(coef: u8) -> Emit {
    D { coef, shift: 1 }
}

const fn c(state: State, drop: u32, order: Order, step: u32) -> Child {
    Child {
        state,
        drop,
        order,
        step,
    }
}

const fn rule(
    state: State,
    order: Option<Order>,
    guard: Guard,
    emit: &'static [Emit],
    outcome: Outcome,
) -> Rule {
    Rule {
        state,
        order,
        guard,
        emit,
        printed_emit: None,
        outcome,
    }
}

const fn leaf(offset: u32) -> Outcome {
    Outcome::Leaf { offset }
}

const fn branch(children: &'static [Child]) -> Outcome {
    Outcome::Branch(children)
}

const ONE_TO_ALL_1: [Child; 5] = [
    c(One, 1, Triangle, 1),
    c(One, 1, Square, 1),
    c(One, 1, Starone, 1),
    c(One, 1, Startwo, 1),
    c(One, 1, Starthree, 1),
];

const TWO_TO_ONE_ALL: [Child; 5] = [
    c(One, 2, Triangle, 1),
    c(One, 2, Square, 1),
    c(One, 2, Starone, 1),
    c(One, 2, Startwo, 1),
    c(One, 2, Starthree, 1),
];

const STAR_PREFIX: [Emit; 5] = [d1(2), d1(4), d(1), d(2), d(4)];

/// The guard table, rule for rule in the original textual order.
pub static RULES: [Rule; 34] = [
    rule(One, None, Guard::Eq(4), &[L(2), L(3)], leaf(1)),
    rule(Two, None, Guard::Eq(4), &[L(2), L(4)], leaf(0)),
    rule(
        One,
        Some(Triangle),
        Guard::Eq(5),
        &[d(1)],
        branch(&[c(One, 1, Triangle, 1)]),
    ),
    rule(
        One,
        Some(Square),
        Guard::Eq(5),
        &[d(4)],
        branch(&[c(Two, 1, Asterisk, 1)]),
    ),
    rule(
        Two,
        Some(Asterisk),
        Guard::Eq(5),
        &[d(2)],
        branch(&[c(Two, 1, Asterisk, 1)]),
    ),
    rule(
        Two,
        Some(Diamond),
        Guard::Eq(5),
        &[L(2), d(1), d(4)],
        leaf(1),
    ),
    rule(
        Two,
        Some(RedStartwo),
        Guard::Eq(5),
        &[L(4), d(1), d(2)],
        leaf(1),
    ),
    // The printed program emits 2, 3^k, 2·3^k here, whose reciprocals sum past
    // 1; 2, 2·3^k, 4·3^k is the only completion that is valid and not already
    // produced by the RedStartwo sibling.
    Rule {
        printed_emit: Some(&[L(2), d(1), d(2)]),
        ..rule(
            Two,
            Some(RedStarthree),
            Guard::Eq(5),
            &[L(2), d(2), d(4)],
            leaf(1),
        )
    },
    rule(
        Two,
        Some(Diamond),
        Guard::Eq(6),
        &[d(1), d(4)],
        branch(&[c(One, 2, Triangle, 1)]),
    ),
    rule(
        One,
        Some(Starone),
        Guard::Eq(6),
        &[L(4), d(1), d(2), d(4)],
        leaf(1),
    ),
    rule(
        One,
        Some(Triangle),
        Guard::Eq(6),
        &[d(1)],
        branch(&[c(One, 1, Triangle, 1), c(One, 1, Square, 1)]),
    ),
    rule(
        Two,
        Some(RedStartwo),
        Guard::Eq(6),
        &[L(2), L(4), d(1), d(2)],
        leaf(2),
    ),
    rule(
        Two,
        Some(RedStarthree),
        Guard::Eq(6),
        &[d(2), d(4)],
        branch(&[c(One, 2, Triangle, 1)]),
    ),
    rule(
        Two,
        Some(Diamond),
        Guard::Eq(7),
        &[d(1), d(4)],
        branch(&[c(One, 2, Triangle, 1), c(One, 2, Square, 1)]),
    ),
    rule(
        One,
        Some(Starone),
        Guard::Eq(7),
        &[L(2), L(4), d(1), d(2), d(4)],
        leaf(2),
    ),
    rule(
        Two,
        Some(RedStarthree),
        Guard::Eq(7),
        &[d(2), d(4)],
        branch(&[c(One, 2, Triangle, 1), c(One, 2, Square, 1)]),
    ),
    rule(
        One,
        Some(Triangle),
        Guard::Either(7, 8),
        &[d(1)],
        branch(&[
            c(One, 1, Triangle, 1),
            c(One, 1, Square, 1),
            c(One, 1, Starone, 1),
        ]),
    ),
    rule(
        One,
        Some(Startwo),
        Guard::Eq(8),
        &[L(4), d1(1), d1(2), d(1), d(2), d(4)],
        leaf(2),
    ),
    rule(
        One,
        Some(Starthree),
        Guard::Eq(8),
        &[L(2), d1(2), d1(4), d(1), d(2), d(4)],
        leaf(2),
    ),
    rule(
        Two,
        Some(Diamond),
        Guard::Either(8, 9),
        &[d(1), d(4)],
        branch(&[
            c(One, 2, Triangle, 1),
            c(One, 2, Square, 1),
            c(One, 2, Starone, 1),
        ]),
    ),
    rule(
        Two,
        Some(RedStarthree),
        Guard::Either(8, 9),
        &[d(2), d(4)],
        branch(&[
            c(One, 2, Triangle, 1),
            c(One, 2, Square, 1),
            c(One, 2, Starone, 1),
        ]),
    ),
    rule(
        One,
        Some(Startwo),
        Guard::Eq(9),
        &[L(2), L(4), d1(1), d1(2), d(1), d(2), d(4)],
        leaf(3),
    ),
    rule(
        One,
        Some(Starthree),
        Guard::Eq(9),
        &[L(2), L(3), d1(2), d1(4), d(1), d(2), d(4)],
        leaf(3),
    ),
    rule(
        One,
        Some(Starthree),
        Guard::Eq(10),
        &STAR_PREFIX,
        branch(&[c(One, 5, Triangle, 2), c(One, 5, Square, 2)]),
    ),
    rule(
        One,
        Some(Starthree),
        Guard::Either(11, 12),
        &STAR_PREFIX,
        branch(&[
            c(One, 5, Triangle, 2),
            c(One, 5, Square, 2),
            c(One, 5, Starone, 2),
        ]),
    ),
    rule(
        One,
        Some(Triangle),
        Guard::Above(7),
        &[d(1)],
        branch(&ONE_TO_ALL_1),
    ),
    rule(
        Two,
        Some(Asterisk),
        Guard::Above(5),
        &[d(2)],
        branch(&[c(Two, 1, Asterisk, 1), c(Two, 1, Diamond, 1)]),
    ),
    rule(
        Two,
        Some(Diamond),
        Guard::Above(9),
        &[d(1), d(4)],
        branch(&TWO_TO_ONE_ALL),
    ),
    rule(
        One,
        Some(Square),
        Guard::Above(5),
        &[d(4)],
        branch(&[c(Two, 1, Asterisk, 1), c(Two, 1, Diamond, 1)]),
    ),
    rule(
        One,
        Some(Starone),
        Guard::Above(7),
        &[d(1), d(2), d(4)],
        branch(&[c(Two, 3, Asterisk, 2), c(Two, 3, Diamond, 2)]),
    ),
    rule(
        One,
        Some(Startwo),
        Guard::Above(9),
        &[d1(1), d1(2), d(1), d(2), d(4)],
        branch(&[
            c(Two, 5, Asterisk, 3),
            c(Two, 5, Diamond, 3),
            c(Two, 5, RedStartwo, 2),
            c(Two, 5, RedStarthree, 2),
        ]),
    ),
    rule(
        Two,
        Some(RedStartwo),
        Guard::Above(6),
        &[d(1), d(2)],
        branch(&[
            c(Two, 2, Asterisk, 2),
            c(Two, 2, Diamond, 2),
            c(Two, 2, RedStartwo, 1),
            c(Two, 2, RedStarthree, 1),
        ]),
    ),
    rule(
        Two,
        Some(RedStarthree),
        Guard::Above(9),
        &[d(2), d(4)],
        branch(&TWO_TO_ONE_ALL),
    ),
    rule(
        One,
        Some(Starthree),
        Guard::Above(12),
        &STAR_PREFIX,
        branch(&[
            c(One, 5, Triangle, 2),
            c(One, 5, Square, 2),
            c(One, 5, Starone, 2),
            c(One, 5, Startwo, 2),
            c(One, 5, Starthree, 2),
        ]),
    ),
];

/// First matching rule for a node.
pub fn rule_for(state: State, n: u32, order: Order) -> Result<&'static Rule> {
    if order.state() != state || n < 4 {
        return Err(Error::NoTransition { state, n, order });
    }
    RULES
        .iter()
        .find(|r| r.matches(state, n, order))
        .ok_or(Error::NoTransition { state, n, order })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Leaf,
    Children(Vec<(State, u32, Order)>),
}

/// The transition relation: a leaf, or the child nodes in program order.
pub fn transitions(state: State, n: u32, order: Order) -> Result<Step> {
    let rule = rule_for(state, n, order)?;
    Ok(match rule.outcome {
        Outcome::Leaf { .. } => Step::Leaf,
        Outcome::Branch(children) => Step::Children(
            children
                .iter()
                .map(|ch| (ch.state, n - ch.drop, ch.order))
                .collect(),
        ),
    })
}

/// Memoized leaf counter. Subtree shape depends only on `(state, n, order)`,
/// so one table serves every path.
#[derive(Debug)]
pub struct LeafCounter {
    limit: u32,
    memo: HashMap<(State, u32, Order), u64>,
}

impl Default for LeafCounter {
    fn default() -> Self {
        Self::with_limit(DEFAULT_COUNT_LIMIT)
    }
}

impl LeafCounter {
    pub fn with_limit(limit: u32) -> Self {
        LeafCounter {
            limit,
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, state: State, n: u32, order: Order) -> Result<u64> {
        if n > self.limit {
            return Err(Error::domain(format!(
                "n = {n} exceeds the counting limit {}",
                self.limit
            )));
        }
        if let Some(&v) = self.memo.get(&(state, n, order)) {
            return Ok(v);
        }
        let rule = rule_for(state, n, order)?;
        let total = match rule.outcome {
            Outcome::Leaf { .. } => 1,
            Outcome::Branch(children) => {
                let mut acc = 0u64;
                for ch in children {
                    let sub = self.count(ch.state, n - ch.drop, ch.order)?;
                    acc = acc.checked_add(sub).ok_or(Error::Overflow("leaf count"))?;
                }
                acc
            }
        };
        self.memo.insert((state, n, order), total);
        Ok(total)
    }

    /// Leaf counts for each of the seven top-level invocations.
    pub fn count_by_order(&mut self, n: u32) -> Result<[(Order, u64); 7]> {
        check_top_level(n)?;
        let mut out = [(Order::Triangle, 0); 7];
        for (slot, order) in out.iter_mut().zip(TOP_LEVEL) {
            *slot = (order, self.count(order.state(), n, order)?);
        }
        Ok(out)
    }
}

fn check_top_level(n: u32) -> Result<()> {
    if n < 9 {
        return Err(Error::domain(format!(
            "n = {n}: the top-level orders are only all defined from n = 9"
        )));
    }
    Ok(())
}

pub fn count_leaves(state: State, n: u32, order: Order) -> Result<u64> {
    LeafCounter::default().count(state, n, order)
}

/// Plain recursion without memoization; exponential, for cross-checks only.
pub fn count_leaves_unmemoized(state: State, n: u32, order: Order) -> Result<u64> {
    let rule = rule_for(state, n, order)?;
    match rule.outcome {
        Outcome::Leaf { .. } => Ok(1),
        Outcome::Branch(children) => children.iter().try_fold(0u64, |acc, ch| {
            let sub = count_leaves_unmemoized(ch.state, n - ch.drop, ch.order)?;
            acc.checked_add(sub).ok_or(Error::Overflow("leaf count"))
        }),
    }
}

/// Number of `q = 3` solutions with `n` unknowns: the sum over the seven
/// top-level orders.
pub fn count_total(n: u32) -> Result<u64> {
    let by_order = LeafCounter::default().count_by_order(n)?;
    sum_counts(&by_order)
}

/// Same as [`count_total`], with the top-level orders spread over `threads`
/// workers, each holding its own memo table.
pub fn count_total_parallel(n: u32, threads: usize) -> Result<u64> {
    check_top_level(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let counts: Vec<(Order, u64)> = pool.install(|| {
        TOP_LEVEL
            .par_iter()
            .map(|&o| Ok((o, LeafCounter::default().count(o.state(), n, o)?)))
            .collect::<Result<_>>()
    })?;
    sum_counts(&counts)
}

fn sum_counts(counts: &[(Order, u64)]) -> Result<u64> {
    counts
        .iter()
        .try_fold(0u64, |acc, (_, c)| acc.checked_add(*c))
        .ok_or(Error::Overflow("total count"))
}
