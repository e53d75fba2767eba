//! Orderings of NFA states for BWT-style indexing.
//!
//! The crate computes the coarsest forward-stable partition of an automaton,
//! its quotient, the maximum co-lex relation `≤_R`, the coarsest
//! forward-stable co-lex (CFS) order `≤_FS`, and the widths of both, together
//! with verifiers for co-lex orders, co-lex relations, Wheeler orders and
//! Wheeler preorders. The [`oracle`] module holds brute-force references used
//! to cross-check the main algorithms on small instances.

pub mod automaton;
pub mod cli;
pub mod colex;
pub mod error;
pub mod fs_partition;
pub mod json;
pub mod oracle;
pub mod relations;

pub use automaton::{Label, LambdaSet, Nfa, StateId};
pub use colex::{cfs_order, compare_report, max_colex_order, max_colex_relation, CompareReport};
pub use error::{Error, Result};
pub use fs_partition::{coarsest_fs_partition, Partition, QuotientMap};
pub use relations::{Relation, WidthCertificate};

/// Outcome of a verifier: valid, or the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<V> {
    Valid,
    Invalid(V),
}

impl<V> Verdict<V> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&V> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}
