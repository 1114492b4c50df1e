//! Depth-first construction of the `q = 3` solutions.
//!
//! The walk follows the automaton exactly as the counting does, but every
//! node also contributes values to the solution under construction. Those
//! values depend on the highest 3-valuation, fixed only at the leaf, so they
//! are recorded as [`Entry::Deferred`] and materialized by [`resolve_leaf`].
//!
//! No memoization here: two paths into the same node emit different lists.

use std::io::Write;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{FactoredValue, SolutionSet};
use crate::automaton::{rule_for, Emit, Order, Outcome, Rule, State, TOP_LEVEL};
use crate::error::{Error, Result};
use crate::io::SolutionFile;

pub const DEFAULT_ENUMERATION_LIMIT: u32 = 17;

/// One element of a solution under construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Literal(u8),
    /// `coef · 3^(A - tag)` once the highest 3-valuation `A` is known.
    Deferred {
        coef: u8,
        tag: u32,
    },
}

/// Which emission table drives the walk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmissionTable {
    /// Valid solutions only.
    #[default]
    Corrected,
    /// Byte-for-byte the listing printed by the original program, including
    /// the lines it gets wrong.
    AsPrinted,
}

impl EmissionTable {
    fn emissions(self, rule: &Rule) -> &'static [Emit] {
        match (self, rule.printed_emit) {
            (EmissionTable::AsPrinted, Some(printed)) => printed,
            _ => rule.emit,
        }
    }
}

/// The solution under construction plus the exponent counter.
///
/// Each node prepends its emissions to the list built so far, so the final
/// order is: leaf emissions, then their parent's, up to the root seeds. Entries
/// are stored as a stack with every segment pushed in reverse; reading the
/// stack from the top gives the output order.
#[derive(Clone, Debug, Default)]
pub struct PartialSolution {
    stack: Vec<Entry>,
    pub counter: u32,
}

impl PartialSolution {
    /// Root of a top-level subtree: `{3^A, 2·3^A}` for state One,
    /// `{2·3^A, 4·3^A}` for state Two, with the counter at 1.
    pub fn root(state: State) -> Self {
        let seeds: [Entry; 2] = match state {
            State::One => [
                Entry::Deferred { coef: 1, tag: 0 },
                Entry::Deferred { coef: 2, tag: 0 },
            ],
            State::Two => [
                Entry::Deferred { coef: 2, tag: 0 },
                Entry::Deferred { coef: 4, tag: 0 },
            ],
        };
        let mut p = PartialSolution {
            stack: Vec::new(),
            counter: 1,
        };
        p.push_segment(&seeds);
        p
    }

    /// Prepends `segment` (given in output order) to the list.
    pub fn push_segment(&mut self, segment: &[Entry]) {
        self.stack.extend(segment.iter().rev());
    }

    fn push_emissions(&mut self, emit: &[Emit]) {
        let counter = self.counter;
        self.stack.extend(emit.iter().rev().map(|e| match *e {
            Emit::Literal(v) => Entry::Literal(v),
            Emit::Deferred { coef, shift } => Entry::Deferred {
                coef,
                tag: counter + u32::from(shift),
            },
        }));
    }

    /// Entries in output order.
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.stack.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    fn truncate(&mut self, len: usize) {
        self.stack.truncate(len);
    }
}

fn coef_exponent(coef: u8) -> Result<u32> {
    match coef {
        1 => Ok(0),
        2 => Ok(1),
        4 => Ok(2),
        _ => Err(Error::Internal(format!(
            "coefficient {coef} is not 1, 2 or 4"
        ))),
    }
}

fn literal_factored(v: u8) -> Result<FactoredValue> {
    let (a, b) = match v {
        2 => (1, 0),
        3 => (0, 1),
        4 => (2, 0),
        _ => {
            return Err(Error::Internal(format!(
                "literal {v} outside the emission alphabet"
            )))
        }
    };
    FactoredValue::new(a, b, 3)
}

/// Materializes a partial solution at a leaf: the highest 3-valuation is
/// `counter + offset` and every deferred entry becomes `coef·3^(A - tag)`.
pub fn resolve_leaf(partial: &PartialSolution, offset: u32) -> Result<SolutionSet> {
    let top = i64::from(partial.counter) + i64::from(offset);
    let factors = partial
        .entries()
        .map(|e| match *e {
            Entry::Literal(v) => literal_factored(v),
            Entry::Deferred { coef, tag } => {
                let exponent = top - i64::from(tag);
                if exponent < 0 {
                    return Err(Error::NegativeExponent { exponent });
                }
                FactoredValue::new(coef_exponent(coef)?, exponent as u32, 3)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SolutionSet::from_factored(factors)
}

struct Walker<'a> {
    table: EmissionTable,
    out: &'a mut Vec<SolutionSet>,
}

impl Walker<'_> {
    fn walk(
        &mut self,
        state: State,
        n: u32,
        order: Order,
        partial: &mut PartialSolution,
    ) -> Result<()> {
        let rule = rule_for(state, n, order)?;
        let mark = partial.len();
        partial.push_emissions(self.table.emissions(rule));
        match rule.outcome {
            Outcome::Leaf { offset } => self.out.push(resolve_leaf(partial, offset)?),
            Outcome::Branch(children) => {
                let counter = partial.counter;
                for ch in children {
                    partial.counter = counter + ch.step;
                    self.walk(ch.state, n - ch.drop, ch.order, partial)?;
                }
                partial.counter = counter;
            }
        }
        partial.truncate(mark);
        Ok(())
    }
}

fn check_range(n: u32, limit: u32) -> Result<()> {
    if n < 9 || n > limit {
        return Err(Error::domain(format!(
            "enumeration needs 9 <= n <= {limit}, got {n}"
        )));
    }
    Ok(())
}

/// Solutions reached from one top-level order, in depth-first order.
pub fn enumerate_order(n: u32, order: Order, table: EmissionTable) -> Result<Vec<SolutionSet>> {
    let mut out = Vec::new();
    let state = order.state();
    let mut partial = PartialSolution::root(state);
    Walker {
        table,
        out: &mut out,
    }
    .walk(state, n, order, &mut partial)?;
    Ok(out)
}

/// All `q = 3` solutions with `n` unknowns, in the program's output order.
pub fn enumerate(n: u32) -> Result<Vec<SolutionSet>> {
    enumerate_with(n, EmissionTable::Corrected, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_with(n: u32, table: EmissionTable, limit: u32) -> Result<Vec<SolutionSet>> {
    check_range(n, limit)?;
    let mut all = Vec::new();
    for order in TOP_LEVEL {
        all.extend(enumerate_order(n, order, table)?);
    }
    Ok(all)
}

/// The seven top-level subtrees walked concurrently; the output order is
/// the same as [`enumerate_with`].
pub fn enumerate_parallel(n: u32, table: EmissionTable, limit: u32) -> Result<Vec<SolutionSet>> {
    check_range(n, limit)?;
    let parts: Vec<Vec<SolutionSet>> = TOP_LEVEL
        .par_iter()
        .map(|&o| enumerate_order(n, o, table))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::domain(format!("unknown format {other:?}"))),
        }
    }
}

/// Writes solutions in one of the output formats and returns how many were
/// written.
///
/// Text is the printed-listing shape: one `{v1,...,vn}` per line, then
/// `There are N solutions`.
pub fn emit<W: Write>(
    n: u32,
    prime: u64,
    solutions: &[SolutionSet],
    format: Format,
    mut sink: W,
) -> Result<usize> {
    match format {
        Format::Text => {
            for s in solutions {
                writeln!(sink, "{}", s.to_brace_string())?;
            }
            writeln!(sink, "There are {} solutions", solutions.len())?;
        }
        Format::Json => {
            let file = SolutionFile::new(n as usize, Some(prime), solutions);
            serde_json::to_writer(&mut sink, &file)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            let header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            w.write_record(&header)?;
            for s in solutions {
                w.write_record(s.values().iter().map(BigUint::to_string))?;
            }
            w.flush()?;
        }
    }
    sink.flush()?;
    Ok(solutions.len())
}
