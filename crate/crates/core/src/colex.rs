//! Maximum co-lex relations, CFS orders and the comparison between them.
//!
//! `≤_R` is computed as the complement of the set of "bad" pairs: a distinct
//! pair `(u, v)` is bad when `λ(u) ≤ λ(v)` fails, and badness propagates
//! forward along equally labelled edges into distinct pairs. A pair survives
//! exactly when none of its preceding pairs is label-violating.
//!
//! `≤_FS` is the maximum co-lex relation of the coarsest forward-stable
//! quotient, which is always antisymmetric there, lifted back to the states.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::automaton::{Nfa, StateId};
use crate::error::{Error, Result};
use crate::fs_partition::{build_quotient, coarsest_fs_partition, Partition, QuotientMap};
use crate::relations::{
    check_colex_relation, check_wheeler_preorder, induced_equivalence, width, Relation,
    WidthCertificate,
};
use crate::Verdict;

/// The maximum co-lex relation `≤_R`, verified to be a transitive co-lex
/// relation before it is returned.
pub fn max_colex_relation(nfa: &Nfa) -> Result<Relation> {
    let rel = propagate_bad_pairs(nfa);
    if let Some((u, v, w)) = rel.transitivity_violation() {
        return Err(Error::Internal(format!(
            "maximum co-lex relation not transitive at ({u},{v},{w})"
        )));
    }
    if let Verdict::Invalid(v) = check_colex_relation(nfa, &rel)? {
        return Err(Error::Internal(format!(
            "maximum co-lex relation fails the axioms: {}",
            v.describe(nfa)
        )));
    }
    Ok(rel)
}

fn propagate_bad_pairs(nfa: &Nfa) -> Relation {
    let n = nfa.n_states();
    let k = nfa.alphabet().len();
    let mut bad = vec![FixedBitSet::with_capacity(n); n];
    let mut queue = VecDeque::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && !nfa.lambda_leq_states(u, v) {
                bad[u].insert(v);
                queue.push_back((u, v));
            }
        }
    }
    while let Some((up, vp)) = queue.pop_front() {
        for a in 0..k {
            for &u in nfa.successors(up, a) {
                for &v in nfa.successors(vp, a) {
                    if u != v && !bad[u].contains(v) {
                        bad[u].insert(v);
                        queue.push_back((u, v));
                    }
                }
            }
        }
    }
    let rows = bad
        .into_iter()
        .map(|mut row| {
            row.toggle_range(..);
            row
        })
        .collect();
    Relation::from_rows(rows)
}

/// Every pair of distinct states preceding `(u, v)`, including `(u, v)`,
/// found by walking backwards over equally labelled edges through distinct
/// pairs only.
pub fn preceding_pairs_oracle(
    nfa: &Nfa,
    u: StateId,
    v: StateId,
) -> Result<BTreeSet<(StateId, StateId)>> {
    if u == v {
        return Err(Error::EqualPair(u));
    }
    let mut seen = BTreeSet::from([(u, v)]);
    let mut queue = VecDeque::from([(u, v)]);
    while let Some((x, y)) = queue.pop_front() {
        for a in 0..nfa.alphabet().len() {
            for &xp in nfa.predecessors(x, a) {
                for &yp in nfa.predecessors(y, a) {
                    if xp != yp && seen.insert((xp, yp)) {
                        queue.push_back((xp, yp));
                    }
                }
            }
        }
    }
    Ok(seen)
}

/// The maximum co-lex order, which exists exactly when `≤_R` is
/// antisymmetric (and then equals it).
pub fn max_colex_order(nfa: &Nfa) -> Result<Option<Relation>> {
    let rel = max_colex_relation(nfa)?;
    Ok(rel.is_antisymmetric().then_some(rel))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfsOrder {
    /// `≤_FS` over the states of the input.
    pub relation: Relation,
    /// The coarsest forward-stable quotient.
    pub quotient: QuotientMap,
    /// Maximum co-lex order of the quotient, over its states.
    pub quotient_order: Relation,
}

impl CfsOrder {
    pub fn partition(&self) -> &Partition {
        &self.quotient.partition
    }
}

/// The CFS order `≤_FS`.
pub fn cfs_order(nfa: &Nfa) -> Result<CfsOrder> {
    let partition = coarsest_fs_partition(nfa);
    let quotient = build_quotient(nfa, &partition)
        .map_err(|e| Error::Internal(format!("forward-stable quotient invalid: {e}")))?;
    let quotient_order = max_colex_relation(&quotient.quotient)?;
    if let Some((u, v)) = quotient_order.antisymmetry_violation() {
        return Err(Error::Internal(format!(
            "maximum co-lex relation of the forward-stable quotient is not antisymmetric at ({}, {})",
            quotient.quotient.name(u),
            quotient.quotient.name(v)
        )));
    }
    let relation = quotient_order.lift(&partition)?;
    Ok(CfsOrder {
        relation,
        quotient,
        quotient_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiWheeler {
    pub quasi_wheeler: bool,
    /// `≤_FS`, a Wheeler preorder, when the automaton is quasi-Wheeler.
    pub witness: Option<Relation>,
}

fn quasi_wheeler_from(nfa: &Nfa, cfs: &CfsOrder) -> Result<QuasiWheeler> {
    let total = cfs.quotient_order.incomparable_pair().is_none();
    if !(total && nfa.is_input_consistent()) {
        return Ok(QuasiWheeler {
            quasi_wheeler: false,
            witness: None,
        });
    }
    if let Verdict::Invalid(v) = check_wheeler_preorder(nfa, &cfs.relation)? {
        return Err(Error::Internal(format!(
            "total CFS order is not a Wheeler preorder: {}",
            v.describe(nfa)
        )));
    }
    Ok(QuasiWheeler {
        quasi_wheeler: true,
        witness: Some(cfs.relation.clone()),
    })
}

/// Quasi-Wheeler test: `≤_FS` is total and every state has one incoming label.
pub fn is_quasi_wheeler(nfa: &Nfa) -> Result<QuasiWheeler> {
    quasi_wheeler_from(nfa, &cfs_order(nfa)?)
}

/// Shortest distance (string length) of every state from the initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDistance(pub Vec<usize>);

impl SourceDistance {
    pub fn get(&self, u: StateId) -> usize {
        self.0[u]
    }
}

pub fn source_distances(nfa: &Nfa) -> SourceDistance {
    let mut dist = vec![usize::MAX; nfa.n_states()];
    dist[nfa.initial()] = 0;
    let mut queue = VecDeque::from([nfa.initial()]);
    while let Some(u) = queue.pop_front() {
        for a in 0..nfa.alphabet().len() {
            for &v in nfa.successors(u, a) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    SourceDistance(dist)
}

/// Summary comparing `≤_R` and `≤_FS`. Serialized keys keep this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub n_states: usize,
    #[serde(rename = "classes_R")]
    pub classes_r: usize,
    #[serde(rename = "classes_FS")]
    pub classes_fs: usize,
    #[serde(rename = "width_R")]
    pub width_r: usize,
    #[serde(rename = "width_FS")]
    pub width_fs: usize,
    pub superset_holds: bool,
    pub quasi_wheeler: bool,
    pub max_order_exists: bool,
}

/// Everything computed for one automaton.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub max_relation: Relation,
    pub r_classes: Partition,
    pub r_width: WidthCertificate,
    pub cfs: CfsOrder,
    pub fs_width: WidthCertificate,
    pub quasi_wheeler: QuasiWheeler,
    pub report: CompareReport,
}

impl Analysis {
    /// Computes both preorders and checks the guarantees relating them;
    /// any broken guarantee is an [`Error::Internal`].
    pub fn compute(nfa: &Nfa) -> Result<Self> {
        let max_relation = max_colex_relation(nfa)?;
        let r_classes = induced_equivalence(&max_relation)?;
        let r_width = width(&max_relation)?;
        let cfs = cfs_order(nfa)?;
        let fs_classes = induced_equivalence(&cfs.relation)?;
        if &fs_classes != cfs.partition() {
            return Err(Error::Internal(
                "equivalence induced by the CFS order differs from the coarsest forward-stable partition"
                    .into(),
            ));
        }
        let fs_width = width(&cfs.relation)?;
        let quasi_wheeler = quasi_wheeler_from(nfa, &cfs)?;

        let superset_holds = max_relation.is_subset(&cfs.relation);
        if !superset_holds {
            let (u, v) = max_relation
                .pairs()
                .find(|&(u, v)| !cfs.relation.contains(u, v))
                .unwrap_or_default();
            return Err(Error::Internal(format!(
                "CFS order misses ({}, {}) of the maximum co-lex relation",
                nfa.name(u),
                nfa.name(v)
            )));
        }
        if !r_classes.refines(cfs.partition()) {
            return Err(Error::Internal(
                "classes of the maximum co-lex relation do not refine the coarsest forward-stable partition"
                    .into(),
            ));
        }
        if fs_width.width > r_width.width {
            return Err(Error::Internal(format!(
                "CFS width {} exceeds maximum co-lex relation width {}",
                fs_width.width, r_width.width
            )));
        }
        if (max_relation == cfs.relation) != (&r_classes == cfs.partition()) {
            return Err(Error::Internal(
                "relations and partitions disagree on equality".into(),
            ));
        }
        let max_order_exists = max_relation.is_antisymmetric();
        if max_order_exists != (r_classes.num_blocks() == nfa.n_states()) {
            return Err(Error::Internal(
                "antisymmetry of the maximum co-lex relation disagrees with its class count".into(),
            ));
        }

        let report = CompareReport {
            n_states: nfa.n_states(),
            classes_r: r_classes.num_blocks(),
            classes_fs: cfs.partition().num_blocks(),
            width_r: r_width.width,
            width_fs: fs_width.width,
            superset_holds,
            quasi_wheeler: quasi_wheeler.quasi_wheeler,
            max_order_exists,
        };
        Ok(Analysis {
            max_relation,
            r_classes,
            r_width,
            cfs,
            fs_width,
            quasi_wheeler,
            report,
        })
    }
}

pub fn compare_report(nfa: &Nfa) -> Result<CompareReport> {
    Ok(Analysis::compute(nfa)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{gen_fixture, gen_separation_family, parse_nfa, Fixture};
    use crate::relations::{check_colex_order, induced_order};

    fn single() -> Nfa {
        parse_nfa("initial s\n").unwrap()
    }

    #[test]
    fn separation_family_max_relation() {
        for n in 5..=10 {
            let nfa = gen_separation_family(n).unwrap();
            let r = max_colex_relation(&nfa).unwrap();
            assert_eq!(induced_equivalence(&r).unwrap().num_blocks(), n);
            let order = max_colex_order(&nfa).unwrap().expect("order exists");
            assert_eq!(order, r);
            assert_eq!(width(&r).unwrap().width, n - 4);
        }
    }

    #[test]
    fn separation_family_hasse_shape() {
        // u1 < u2 < {u5, u6} < u3 < u4, sinks incomparable.
        let nfa = gen_separation_family(6).unwrap();
        let r = max_colex_relation(&nfa).unwrap();
        let classes = induced_equivalence(&r).unwrap();
        let order = induced_order(&r, &classes).unwrap();
        let expected = Relation::from_fn(6, |u, v| {
            let rank = [0, 1, 3, 4, 2, 2];
            (rank[u] < rank[v]) || u == v
        });
        assert_eq!(order, expected);
    }

    #[test]
    fn wheeler3_merges_siblings() {
        let nfa = gen_fixture(&Fixture::Wheeler3);
        let r = max_colex_relation(&nfa).unwrap();
        assert!(r.contains(1, 2) && r.contains(2, 1));
        assert_eq!(max_colex_order(&nfa).unwrap(), None);
    }

    #[test]
    fn single_state_cases() {
        let nfa = single();
        assert_eq!(max_colex_relation(&nfa).unwrap(), Relation::identity(1));
        assert_eq!(max_colex_order(&nfa).unwrap(), Some(Relation::identity(1)));
        assert_eq!(cfs_order(&nfa).unwrap().relation, Relation::identity(1));
        assert_eq!(source_distances(&nfa), SourceDistance(vec![0]));
        let report = compare_report(&nfa).unwrap();
        assert_eq!(
            report,
            CompareReport {
                n_states: 1,
                classes_r: 1,
                classes_fs: 1,
                width_r: 1,
                width_fs: 1,
                superset_holds: true,
                quasi_wheeler: true,
                max_order_exists: true,
            }
        );
    }

    #[test]
    fn preceding_pairs_examples() {
        let w = gen_fixture(&Fixture::Wheeler3);
        assert_eq!(
            preceding_pairs_oracle(&w, 1, 2).unwrap(),
            BTreeSet::from([(1, 2)])
        );
        assert_eq!(preceding_pairs_oracle(&w, 1, 1), Err(Error::EqualPair(1)));

        let chain = parse_nfa("initial 0\ntrans 0 a 1\n").unwrap();
        assert_eq!(
            preceding_pairs_oracle(&chain, 0, 1).unwrap(),
            BTreeSet::from([(0, 1)])
        );

        // fig2 (u5, u6): frozen from a hand walk of the backward pair graph.
        let fig2 = gen_fixture(&Fixture::Fig2);
        let pairs = preceding_pairs_oracle(&fig2, 5, 6).unwrap();
        let expected: BTreeSet<(usize, usize)> = [
            (5, 6), (6, 5),
            (2, 4), (2, 5), (3, 2), (3, 4), (3, 5), (6, 2), (6, 4),
            (2, 3), (2, 6), (4, 2), (4, 3), (4, 6), (5, 2), (5, 3),
            (2, 0), (0, 2),
        ]
        .into_iter()
        .collect();
        assert!(pairs.contains(&(5, 6)));
        assert!(pairs.contains(&(6, 5)));
        assert!(pairs.contains(&(3, 4)));
        assert!(!pairs.iter().any(|&(u, v)| u == v));
        assert_eq!(pairs, expected);
    }

    #[test]
    fn cfs_separation_family() {
        for n in 5..=10 {
            let nfa = gen_separation_family(n).unwrap();
            let cfs = cfs_order(&nfa).unwrap();
            assert_eq!(cfs.partition().num_blocks(), 5);
            assert_eq!(width(&cfs.relation).unwrap().width, 1);
            assert!(check_colex_order(&cfs.quotient.quotient, &cfs.quotient_order)
                .unwrap()
                .is_valid());
            let qw = is_quasi_wheeler(&nfa).unwrap();
            assert!(qw.quasi_wheeler);
            assert!(check_wheeler_preorder(&nfa, qw.witness.as_ref().unwrap())
                .unwrap()
                .is_valid());
        }
    }

    #[test]
    fn cfs_fig2() {
        let nfa = gen_fixture(&Fixture::Fig2);
        let cfs = cfs_order(&nfa).unwrap();
        assert_eq!(
            induced_equivalence(&cfs.relation).unwrap().blocks(),
            &[vec![0], vec![1, 2], vec![3, 4], vec![5, 6]]
        );
    }

    #[test]
    fn quasi_wheeler_cases() {
        let w = gen_fixture(&Fixture::Wheeler3);
        let qw = is_quasi_wheeler(&w).unwrap();
        assert!(qw.quasi_wheeler);
        let witness = qw.witness.unwrap();
        assert!(witness.contains(1, 2) && witness.contains(2, 1));

        // q2 is entered by both a and b: the CFS order is total but input
        // consistency fails.
        let mixed = parse_nfa("initial q0\ntrans q0 a q1\ntrans q0 a q2\ntrans q0 b q2\n").unwrap();
        let cfs = cfs_order(&mixed).unwrap();
        assert!(cfs.quotient_order.incomparable_pair().is_none());
        assert!(!is_quasi_wheeler(&mixed).unwrap().quasi_wheeler);
    }

    #[test]
    fn distances() {
        let fig2 = gen_fixture(&Fixture::Fig2);
        assert_eq!(source_distances(&fig2).0, vec![0, 1, 1, 1, 1, 2, 2]);
        let sep = gen_separation_family(7).unwrap();
        assert_eq!(source_distances(&sep).0, vec![0, 1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn reports() {
        let sep = compare_report(&gen_separation_family(10).unwrap()).unwrap();
        assert_eq!(
            sep,
            CompareReport {
                n_states: 10,
                classes_r: 10,
                classes_fs: 5,
                width_r: 6,
                width_fs: 1,
                superset_holds: true,
                quasi_wheeler: true,
                max_order_exists: true,
            }
        );
        let w = compare_report(&gen_fixture(&Fixture::Wheeler3)).unwrap();
        assert_eq!((w.classes_r, w.classes_fs, w.width_r, w.width_fs), (2, 2, 1, 1));
        assert!(!w.max_order_exists);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"n_states":3,"classes_R":2,"classes_FS":2,"width_R":1,"width_FS":1,"superset_holds":true,"quasi_wheeler":true,"max_order_exists":false}"#
        );
    }
}
