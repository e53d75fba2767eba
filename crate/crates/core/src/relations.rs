//! Reflexive binary relations over states, order-axiom verifiers and width.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::automaton::{LabelId, Nfa, StateId};
use crate::error::{Error, Result};
use crate::fs_partition::{build_quotient, coarsest_fs_partition, Partition};
use crate::Verdict;

/// A reflexive relation on `0..n`, stored as a dense bit matrix with
/// `row(u)` holding every `v` such that `(u, v)` is in the relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation")
            .field("n", &self.n())
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl Relation {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    pub fn full(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Relation containing the diagonal and every `(u, v)` with `f(u, v)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(StateId, StateId) -> bool) -> Self {
        let rows = (0..n)
            .map(|u| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(u);
                for v in 0..n {
                    if f(u, v) {
                        row.insert(v);
                    }
                }
                row
            })
            .collect();
        Relation { rows }
    }

    /// Diagonal plus the given pairs.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Result<Self> {
        let mut rel = Self::identity(n);
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "pair ({u},{v}) outside 0..{n}"
                )));
            }
            rel.rows[u].insert(v);
        }
        Ok(rel)
    }

    /// Builds a relation from rows; the diagonal is added.
    pub(crate) fn from_rows(mut rows: Vec<FixedBitSet>) -> Self {
        for (u, row) in rows.iter_mut().enumerate() {
            row.insert(u);
        }
        Relation { rows }
    }

    /// The total order listing elements from smallest to largest.
    pub fn total_order(sequence: &[StateId]) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &u) in sequence.iter().enumerate() {
            if u >= n || rank[u] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "{sequence:?} is not a permutation of 0..{n}"
                )));
            }
            rank[u] = i;
        }
        Ok(Self::from_fn(n, |u, v| rank[u] <= rank[v]))
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, u: StateId, v: StateId) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, u: StateId) -> &FixedBitSet {
        &self.rows[u]
    }

    /// Off-diagonal pairs in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v != u).map(move |v| (u, v)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n() == other.n() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// First `(u, v, w)` with `u R v`, `v R w` and not `u R w`.
    pub fn transitivity_violation(&self) -> Option<(StateId, StateId, StateId)> {
        for u in 0..self.n() {
            for v in self.rows[u].ones() {
                if !self.rows[v].is_subset(&self.rows[u]) {
                    let w = self.rows[v].difference(&self.rows[u]).next().unwrap();
                    return Some((u, v, w));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// First distinct `(u, v)` related in both directions.
    pub fn antisymmetry_violation(&self) -> Option<(StateId, StateId)> {
        self.pairs().find(|&(u, v)| self.contains(v, u))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    /// First pair related in neither direction.
    pub fn incomparable_pair(&self) -> Option<(StateId, StateId)> {
        (0..self.n())
            .flat_map(|u| (u + 1..self.n()).map(move |v| (u, v)))
            .find(|&(u, v)| !self.contains(u, v) && !self.contains(v, u))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_transitive() && self.is_antisymmetric()
    }

    pub fn comparable(&self, u: StateId, v: StateId) -> bool {
        self.contains(u, v) || self.contains(v, u)
    }

    /// Lifts a relation over the blocks of `p` to the elements:
    /// `(u, v)` iff `(block(u), block(v))`.
    pub fn lift(&self, p: &Partition) -> Result<Relation> {
        if self.n() != p.num_blocks() {
            return Err(Error::SizeMismatch {
                expected: p.num_blocks(),
                found: self.n(),
            });
        }
        let b = p.block_of();
        Ok(Relation::from_fn(p.len(), |u, v| self.contains(b[u], b[v])))
    }
}

/// The first reason a relation fails a verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotAntisymmetric { u: StateId, v: StateId },
    NotTransitive { u: StateId, v: StateId, w: StateId },
    NotTotal { u: StateId, v: StateId },
    InitialNotMinimum { initial: StateId, v: StateId },
    /// `(u, v)` related with `u ≠ v` but `λ(u) ≤ λ(v)` fails.
    LabelOrder { u: StateId, v: StateId },
    /// `(u, v)` related, `u ∈ δ_a(u_pred)`, `v ∈ δ_a(v_pred)`, yet
    /// `(u_pred, v_pred)` is not.
    Propagation {
        u: StateId,
        v: StateId,
        u_pred: StateId,
        v_pred: StateId,
        label: LabelId,
    },
    /// Wheeler label axiom: `u` entered by a smaller label than `v`, yet not `u < v`.
    WheelerLabel {
        u: StateId,
        v: StateId,
        u_label: LabelId,
        v_label: LabelId,
    },
    /// Wheeler monotonicity axiom: `u_pred < v_pred` with equal labels, yet not `u ≤ v`.
    WheelerMonotone {
        u: StateId,
        v: StateId,
        u_pred: StateId,
        v_pred: StateId,
        label: LabelId,
    },
    /// The induced equivalence differs from the coarsest forward-stable
    /// partition on `(u, v)`.
    EquivalenceMismatch { u: StateId, v: StateId },
    /// The induced order on the quotient is not a Wheeler order of it.
    QuotientOrder(Box<Violation>),
}

impl Violation {
    /// Human-readable description with state names taken from `nfa`.
    pub fn describe(&self, nfa: &Nfa) -> String {
        let s = |u: StateId| nfa.name(u).to_string();
        let l = |a: LabelId| nfa.label(a).to_string();
        match self {
            Violation::NotAntisymmetric { u, v } => {
                format!("not antisymmetric: ({},{}) and ({},{})", s(*u), s(*v), s(*v), s(*u))
            }
            Violation::NotTransitive { u, v, w } => format!(
                "not transitive: ({},{}) and ({},{}) but not ({},{})",
                s(*u), s(*v), s(*v), s(*w), s(*u), s(*w)
            ),
            Violation::NotTotal { u, v } => {
                format!("not total: {} and {} are incomparable", s(*u), s(*v))
            }
            Violation::InitialNotMinimum { initial, v } => {
                format!("initial state {} does not precede {}", s(*initial), s(*v))
            }
            Violation::LabelOrder { u, v } => format!(
                "label axiom: ({},{}) related but λ({}) ≤ λ({}) fails",
                s(*u), s(*v), s(*u), s(*v)
            ),
            Violation::Propagation { u, v, u_pred, v_pred, label } => format!(
                "propagation axiom: ({},{}) related, {} -{}-> {} and {} -{}-> {}, but ({},{}) not related",
                s(*u), s(*v), s(*u_pred), l(*label), s(*u), s(*v_pred), l(*label), s(*v),
                s(*u_pred), s(*v_pred)
            ),
            Violation::WheelerLabel { u, v, u_label, v_label } => format!(
                "wheeler label axiom: {} entered by {} < {} entering {}, but not {} < {}",
                s(*u), l(*u_label), l(*v_label), s(*v), s(*u), s(*v)
            ),
            Violation::WheelerMonotone { u, v, u_pred, v_pred, label } => format!(
                "wheeler monotonicity axiom: {} < {} with {} -{}-> {} and {} -{}-> {}, but not {} ≤ {}",
                s(*u_pred), s(*v_pred), s(*u_pred), l(*label), s(*u), s(*v_pred), l(*label),
                s(*v), s(*u), s(*v)
            ),
            Violation::EquivalenceMismatch { u, v } => format!(
                "induced equivalence differs from the coarsest forward-stable partition on ({},{})",
                s(*u), s(*v)
            ),
            Violation::QuotientOrder(inner) => {
                match build_quotient(nfa, &coarsest_fs_partition(nfa)) {
                    Ok(q) => format!("on the quotient: {}", inner.describe(&q.quotient)),
                    Err(_) => format!("on the quotient: {inner:?}"),
                }
            }
        }
    }
}

fn check_size(nfa: &Nfa, r: &Relation) -> Result<()> {
    if r.n() != nfa.n_states() {
        return Err(Error::SizeMismatch {
            expected: nfa.n_states(),
            found: r.n(),
        });
    }
    Ok(())
}

fn colex_axioms(nfa: &Nfa, r: &Relation) -> Option<Violation> {
    for (u, v) in r.pairs() {
        if !nfa.lambda_leq_states(u, v) {
            return Some(Violation::LabelOrder { u, v });
        }
        for a in 0..nfa.alphabet().len() {
            for &u_pred in nfa.predecessors(u, a) {
                for &v_pred in nfa.predecessors(v, a) {
                    if !r.contains(u_pred, v_pred) {
                        return Some(Violation::Propagation {
                            u,
                            v,
                            u_pred,
                            v_pred,
                            label: a,
                        });
                    }
                }
            }
        }
    }
    None
}

fn to_verdict(v: Option<Violation>) -> Verdict<Violation> {
    v.map_or(Verdict::Valid, Verdict::Invalid)
}

fn partial_order_violation(r: &Relation) -> Option<Violation> {
    if let Some((u, v)) = r.antisymmetry_violation() {
        return Some(Violation::NotAntisymmetric { u, v });
    }
    r.transitivity_violation()
        .map(|(u, v, w)| Violation::NotTransitive { u, v, w })
}

/// Co-lex relation: reflexive, with both co-lex axioms over distinct pairs.
pub fn check_colex_relation(nfa: &Nfa, r: &Relation) -> Result<Verdict<Violation>> {
    check_size(nfa, r)?;
    Ok(to_verdict(colex_axioms(nfa, r)))
}

/// Co-lex order: a partial order satisfying both co-lex axioms.
pub fn check_colex_order(nfa: &Nfa, r: &Relation) -> Result<Verdict<Violation>> {
    check_size(nfa, r)?;
    Ok(to_verdict(
        partial_order_violation(r).or_else(|| colex_axioms(nfa, r)),
    ))
}

/// Wheeler order: a total order with the initial state first and both
/// Wheeler axioms over all pairs of transitions.
pub fn check_wheeler_order(nfa: &Nfa, r: &Relation) -> Result<Verdict<Violation>> {
    check_size(nfa, r)?;
    if let Some(v) = partial_order_violation(r) {
        return Ok(Verdict::Invalid(v));
    }
    if let Some((u, v)) = r.incomparable_pair() {
        return Ok(Verdict::Invalid(Violation::NotTotal { u, v }));
    }
    let s = nfa.initial();
    if let Some(v) = nfa.states().find(|&v| !r.contains(s, v)) {
        return Ok(Verdict::Invalid(Violation::InitialNotMinimum { initial: s, v }));
    }
    let lt = |u: StateId, v: StateId| u != v && r.contains(u, v);
    let edges = nfa.transitions();
    for e in edges {
        for f in edges {
            if e.label < f.label && !lt(e.to, f.to) {
                return Ok(Verdict::Invalid(Violation::WheelerLabel {
                    u: e.to,
                    v: f.to,
                    u_label: e.label,
                    v_label: f.label,
                }));
            }
            if e.label == f.label && lt(e.from, f.from) && !r.contains(e.to, f.to) {
                return Ok(Verdict::Invalid(Violation::WheelerMonotone {
                    u: e.to,
                    v: f.to,
                    u_pred: e.from,
                    v_pred: f.from,
                    label: e.label,
                }));
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Wheeler preorder: a total preorder whose equivalence is the coarsest
/// forward-stable partition and whose induced order is a Wheeler order of
/// the quotient.
pub fn check_wheeler_preorder(nfa: &Nfa, r: &Relation) -> Result<Verdict<Violation>> {
    check_size(nfa, r)?;
    if let Some((u, v, w)) = r.transitivity_violation() {
        return Ok(Verdict::Invalid(Violation::NotTransitive { u, v, w }));
    }
    if let Some((u, v)) = r.incomparable_pair() {
        return Ok(Verdict::Invalid(Violation::NotTotal { u, v }));
    }
    let classes = induced_equivalence(r)?;
    let fs = coarsest_fs_partition(nfa);
    if classes != fs {
        let (u, v) = nfa
            .states()
            .flat_map(|u| nfa.states().map(move |v| (u, v)))
            .find(|&(u, v)| classes.same_block(u, v) != fs.same_block(u, v))
            .expect("partitions differ");
        return Ok(Verdict::Invalid(Violation::EquivalenceMismatch { u, v }));
    }
    let quotient = build_quotient(nfa, &fs)?;
    let order = induced_order(r, &fs)?;
    Ok(match check_wheeler_order(&quotient.quotient, &order)? {
        Verdict::Valid => Verdict::Valid,
        Verdict::Invalid(v) => Verdict::Invalid(Violation::QuotientOrder(Box::new(v))),
    })
}

fn require_transitive(r: &Relation) -> Result<()> {
    match r.transitivity_violation() {
        Some((u, v, w)) => Err(Error::NotPreorder { u, v, w }),
        None => Ok(()),
    }
}

/// Classes of `u ~ v ⇔ u R v ∧ v R u` for a preorder `r`.
pub fn induced_equivalence(r: &Relation) -> Result<Partition> {
    require_transitive(r)?;
    let keys: Vec<StateId> = (0..r.n())
        .map(|u| {
            r.row(u)
                .ones()
                .find(|&v| r.contains(v, u))
                .expect("reflexive")
        })
        .collect();
    Ok(Partition::from_block_of(&keys))
}

/// The partial order `[u] ≤' [v] ⇔ u R v` over the classes `p` of `r`.
pub fn induced_order(r: &Relation, p: &Partition) -> Result<Relation> {
    if p.len() != r.n() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} elements, relation has {}",
            p.len(),
            r.n()
        )));
    }
    let classes = induced_equivalence(r)?;
    if &classes != p {
        return Err(Error::PartitionMismatch(
            "partition is not the induced equivalence of the relation".into(),
        ));
    }
    let reps: Vec<StateId> = p.blocks().iter().map(|b| b[0]).collect();
    Ok(Relation::from_fn(reps.len(), |i, j| r.contains(reps[i], reps[j])))
}

/// A maximum antichain and a chain cover of the same size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthCertificate {
    pub width: usize,
    /// One representative per class, pairwise incomparable.
    pub antichain: Vec<StateId>,
    /// Chains partitioning all elements, each listed from bottom to top.
    pub chains: Vec<Vec<StateId>>,
}

impl WidthCertificate {
    /// Checks the certificate against `r`.
    pub fn validate(&self, r: &Relation) -> std::result::Result<(), String> {
        if self.antichain.len() != self.width || self.chains.len() != self.width {
            return Err(format!(
                "sizes disagree: width {}, antichain {}, chains {}",
                self.width,
                self.antichain.len(),
                self.chains.len()
            ));
        }
        for (i, &a) in self.antichain.iter().enumerate() {
            for &b in &self.antichain[i + 1..] {
                if r.comparable(a, b) {
                    return Err(format!("antichain elements {a} and {b} are comparable"));
                }
            }
        }
        let mut seen = vec![false; r.n()];
        for chain in &self.chains {
            for (i, &a) in chain.iter().enumerate() {
                if a >= r.n() || seen[a] {
                    return Err(format!("element {a} repeated or out of range"));
                }
                seen[a] = true;
                for &b in &chain[i + 1..] {
                    if !r.contains(a, b) {
                        return Err(format!("chain elements {a} and {b} out of order"));
                    }
                }
            }
        }
        if let Some(u) = seen.iter().position(|s| !s) {
            return Err(format!("element {u} not covered by any chain"));
        }
        Ok(())
    }
}

/// Width of a preorder via Dilworth's theorem on the induced partial order.
///
/// The strict order between classes is turned into a bipartite graph
/// (left copy `i` to right copy `j` when `[i] < [j]`). A maximum matching
/// gives a minimum chain cover of `classes - matching` chains, and König's
/// construction on the same matching yields an antichain of equal size.
pub fn width(r: &Relation) -> Result<WidthCertificate> {
    let classes = induced_equivalence(r)?;
    let k = classes.num_blocks();
    let reps: Vec<StateId> = classes.blocks().iter().map(|b| b[0]).collect();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && r.contains(reps[i], reps[j]))
                .collect()
        })
        .collect();

    let matching = hopcroft_karp(k, &adj);

    let mut chains = Vec::new();
    for start in 0..k {
        if matching.pair_right[start].is_some() {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = Some(start);
        while let Some(c) = cur {
            chain.extend_from_slice(classes.block(c));
            cur = matching.pair_left[c];
        }
        chains.push(chain);
    }

    // König: alternating reachability from unmatched left vertices.
    let mut seen_left = vec![false; k];
    let mut seen_right = vec![false; k];
    let mut queue: VecDeque<usize> = (0..k)
        .filter(|&i| matching.pair_left[i].is_none())
        .collect();
    for &i in &queue {
        seen_left[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if seen_right[j] {
                continue;
            }
            seen_right[j] = true;
            if let Some(i2) = matching.pair_right[j] {
                if !seen_left[i2] {
                    seen_left[i2] = true;
                    queue.push_back(i2);
                }
            }
        }
    }
    let antichain: Vec<StateId> = (0..k)
        .filter(|&i| seen_left[i] && !seen_right[i])
        .map(|i| reps[i])
        .collect();

    let cert = WidthCertificate {
        width: chains.len(),
        antichain,
        chains,
    };
    cert.validate(r)
        .map_err(|e| Error::Internal(format!("width certificate: {e}")))?;
    Ok(cert)
}

struct Matching {
    pair_left: Vec<Option<usize>>,
    pair_right: Vec<Option<usize>>,
}

/// Hopcroft–Karp on a bipartite graph with `k` vertices per side.
/// Neighbours are visited in the order given, so the result is deterministic.
fn hopcroft_karp(k: usize, adj: &[Vec<usize>]) -> Matching {
    const INF: usize = usize::MAX;
    let mut pair_left: Vec<Option<usize>> = vec![None; k];
    let mut pair_right: Vec<Option<usize>> = vec![None; k];
    let mut dist = vec![INF; k];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for i in 0..k {
            if pair_left[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = INF;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                match pair_right[j] {
                    None => found = true,
                    Some(i2) if dist[i2] == INF => {
                        dist[i2] = dist[i] + 1;
                        queue.push_back(i2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }

        fn augment(
            i: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            pair_left: &mut [Option<usize>],
            pair_right: &mut [Option<usize>],
            next: &mut [usize],
        ) -> bool {
            while next[i] < adj[i].len() {
                let j = adj[i][next[i]];
                next[i] += 1;
                let ok = match pair_right[j] {
                    None => true,
                    Some(i2) => {
                        dist[i2] == dist[i] + 1
                            && augment(i2, adj, dist, pair_left, pair_right, next)
                    }
                };
                if ok {
                    pair_left[i] = Some(j);
                    pair_right[j] = Some(i);
                    return true;
                }
            }
            dist[i] = usize::MAX;
            false
        }

        let mut next = vec![0usize; k];
        for i in 0..k {
            if pair_left[i].is_none() {
                augment(i, adj, &mut dist, &mut pair_left, &mut pair_right, &mut next);
            }
        }
    }

    Matching {
        pair_left,
        pair_right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{gen_fixture, Fixture};

    fn chain_order(n: usize) -> Relation {
        Relation::from_fn(n, |u, v| u <= v)
    }

    #[test]
    fn identity_is_colex_everywhere() {
        for f in [Fixture::Fig2, Fixture::Wheeler3, Fixture::Separation(7)] {
            let nfa = gen_fixture(&f);
            let id = Relation::identity(nfa.n_states());
            assert!(check_colex_relation(&nfa, &id).unwrap().is_valid());
            assert!(check_colex_order(&nfa, &id).unwrap().is_valid());
        }
    }

    #[test]
    fn full_relation_fails_the_label_axiom() {
        let nfa = gen_fixture(&Fixture::Fig2);
        let verdict = check_colex_relation(&nfa, &Relation::full(7)).unwrap();
        match verdict.violation() {
            Some(Violation::LabelOrder { u, v }) => {
                assert!(!nfa.lambda_leq_states(*u, *v));
                assert_eq!(*u, 1);
                assert_eq!(*v, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_cycle_is_not_an_order() {
        let nfa = gen_fixture(&Fixture::Wheeler3);
        let r = Relation::from_pairs(3, [(1, 2), (2, 1)]).unwrap();
        assert_eq!(
            check_colex_order(&nfa, &r).unwrap(),
            Verdict::Invalid(Violation::NotAntisymmetric { u: 1, v: 2 })
        );
        assert!(check_colex_relation(&nfa, &r).unwrap().is_valid());
    }

    #[test]
    fn size_mismatch() {
        let nfa = gen_fixture(&Fixture::Wheeler3);
        assert_eq!(
            check_colex_relation(&nfa, &Relation::identity(4)),
            Err(Error::SizeMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn wheeler3_orders() {
        let nfa = gen_fixture(&Fixture::Wheeler3);
        let good = Relation::total_order(&[0, 1, 2]).unwrap();
        assert!(check_wheeler_order(&nfa, &good).unwrap().is_valid());
        let bad = Relation::total_order(&[1, 0, 2]).unwrap();
        assert_eq!(
            check_wheeler_order(&nfa, &bad).unwrap(),
            Verdict::Invalid(Violation::InitialNotMinimum { initial: 0, v: 1 })
        );

        let preorder = Relation::from_pairs(3, [(0, 1), (0, 2), (1, 2), (2, 1)]).unwrap();
        assert!(check_wheeler_preorder(&nfa, &preorder).unwrap().is_valid());
        assert!(matches!(
            check_wheeler_preorder(&nfa, &good).unwrap(),
            Verdict::Invalid(Violation::EquivalenceMismatch { u: 1, v: 2 })
        ));
    }

    #[test]
    fn single_state_preorder() {
        let nfa = crate::automaton::parse_nfa("initial s\n").unwrap();
        assert!(check_wheeler_preorder(&nfa, &Relation::identity(1))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn equivalence_and_order() {
        assert_eq!(
            induced_equivalence(&Relation::identity(4)).unwrap(),
            Partition::discrete(4)
        );
        assert_eq!(
            induced_equivalence(&Relation::full(4)).unwrap(),
            Partition::single(4)
        );
        let id = Relation::identity(3);
        assert_eq!(induced_order(&id, &Partition::discrete(3)).unwrap(), id);

        // 0 < {1,2} < 3
        let r = Relation::from_fn(4, |u, v| {
            let rank = [0, 1, 1, 2];
            rank[u] <= rank[v]
        });
        let classes = induced_equivalence(&r).unwrap();
        assert_eq!(classes.blocks(), &[vec![0], vec![1, 2], vec![3]]);
        let order = induced_order(&r, &classes).unwrap();
        assert_eq!(order, chain_order(3));
        assert!(matches!(
            induced_order(&r, &Partition::discrete(4)),
            Err(Error::PartitionMismatch(_))
        ));
    }

    #[test]
    fn not_preorder_is_rejected() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            induced_equivalence(&r),
            Err(Error::NotPreorder { u: 0, v: 1, w: 2 })
        );
        assert!(width(&r).is_err());
    }

    #[test]
    fn width_basics() {
        let cert = width(&Relation::identity(4)).unwrap();
        assert_eq!(cert.width, 4);
        assert_eq!(cert.antichain, vec![0, 1, 2, 3]);

        let cert = width(&chain_order(5)).unwrap();
        assert_eq!(cert.width, 1);
        assert_eq!(cert.chains, vec![vec![0, 1, 2, 3, 4]]);

        // Diamond 0 < 1, 2 < 3.
        let diamond = Relation::from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let cert = width(&diamond).unwrap();
        assert_eq!(cert.width, 2);
        assert_eq!(cert.antichain, vec![1, 2]);
    }

    #[test]
    fn total_order_requires_permutation() {
        assert!(Relation::total_order(&[0, 0, 1]).is_err());
        assert!(Relation::total_order(&[0, 3]).is_err());
    }
}
