//! Egyptian fractions `1/x_1 + … + 1/x_n = 1` with denominators of the form
//! `2^a·q^b`, `a ≤ 2`, `q` an odd prime.
//!
//! - [`automaton`]: the decision automaton and memoized leaf counting.
//! - [`enumerator`]: depth-first listing of every `q = 3` solution.
//! - [`recurrence`]: the nine-component counting recurrence and depth bounds.
//! - [`families`]: closed-form families and the named `n = 9` solutions.
//! - [`oracle`]: brute-force searches used to cross-check the above.
//! - [`analysis`]: validation, p-adic properties, structures, expansions.

pub mod analysis;
pub mod arith;
pub mod automaton;
pub mod enumerator;
pub mod error;
pub mod families;
pub mod io;
pub mod oracle;
pub mod recurrence;

pub use arith::{FactoredValue, Rational, SolutionSet, Valuation};
pub use automaton::{count_total, Order, State};
pub use enumerator::{enumerate, EmissionTable, Format};
pub use error::{Error, Result};
