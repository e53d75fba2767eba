//! NFA model used throughout the crate.
//!
//! An [`Nfa`] has a unique initial state without incoming edges, every state
//! reachable from it, and an effective alphabet (every label occurs on some
//! transition). Final states are not modelled. These assumptions are checked
//! whenever an automaton is built, so every `Nfa` value satisfies them.

mod dot;
mod generators;
mod text;

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::error::{Error, Result};

pub use dot::to_dot;
pub use generators::{gen_fixture, gen_fixture_named, gen_random, gen_separation_family, Fixture};
pub use text::parse_nfa;

/// Dense state identifier in `0..n_states`.
pub type StateId = usize;

/// Index into [`Nfa::alphabet`].
pub type LabelId = usize;

/// A transition label. `Hash` is the sentinel `#` that labels the "incoming
/// edge" of the initial state; it sorts below every ordinary symbol, and
/// symbols compare bytewise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Hash,
    Symbol(String),
}

impl Label {
    /// Builds an ordinary label. Tokens must be non-empty, printable and free
    /// of whitespace and `#` (which starts a comment in the text format).
    pub fn symbol(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty()
            || token
                .chars()
                .any(|c| c.is_whitespace() || c.is_control() || c == '#')
        {
            return Err(Error::InvalidParameter(format!(
                "invalid label token {token:?}"
            )));
        }
        Ok(Label::Symbol(token))
    }

    pub fn is_hash(&self) -> bool {
        matches!(self, Label::Hash)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Hash => f.write_str("#"),
            Label::Symbol(s) => f.write_str(s),
        }
    }
}

/// The set `λ(u)` of labels entering a state; `{#}` for the initial state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSet {
    labels: BTreeSet<Label>,
}

impl LambdaSet {
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Self {
        LambdaSet {
            labels: labels.into_iter().collect(),
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.labels.iter()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.labels.contains(label)
    }

    pub fn min(&self) -> Option<&Label> {
        self.labels.first()
    }

    pub fn max(&self) -> Option<&Label> {
        self.labels.last()
    }
}

/// `λ(x) ≤ λ(y)`: every label of `x` is at most every label of `y`, i.e.
/// `max(x) ≤ min(y)`. Sets are expected to be non-empty; an empty side makes
/// the condition vacuously true.
pub fn lambda_leq(x: &LambdaSet, y: &LambdaSet) -> bool {
    match (x.max(), y.min()) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub label: LabelId,
    pub to: StateId,
}

/// Violations of the standing assumptions on an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("automaton has no states")]
    Empty,
    #[error("initial state `{initial}` has an incoming `{label}` edge from `{from}`")]
    InitialHasIncoming {
        initial: String,
        from: String,
        label: String,
    },
    #[error("state `{0}` is not reachable from the initial state")]
    Unreachable(String),
    #[error("label `{0}` is declared but never used")]
    UnusedLabel(String),
    #[error("label `{0}` is used but not declared")]
    UndeclaredLabel(String),
    #[error("the sentinel # cannot label a transition")]
    HashTransition,
    #[error("duplicate transition `{from} {label} {to}`")]
    DuplicateTransition {
        from: String,
        label: String,
        to: String,
    },
    #[error("state id {0} out of range")]
    StateOutOfRange(usize),
    #[error("duplicate state name `{0}`")]
    DuplicateName(String),
}

/// An immutable, validated NFA with dense state ids.
///
/// Transitions are kept sorted by `(from, label, to)`. Forward and reverse
/// adjacency are stored in CSR form indexed by `(state, label)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    names: Vec<String>,
    initial: StateId,
    alphabet: Vec<Label>,
    transitions: Vec<Transition>,
    out_offsets: Vec<usize>,
    out_targets: Vec<StateId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<StateId>,
    // Label ranks with 0 reserved for `#`; symbol id i has rank i + 1.
    lambda_min: Vec<usize>,
    lambda_max: Vec<usize>,
}

impl Nfa {
    /// Builds and validates an automaton from named states and labelled
    /// edges. `alphabet` lists the declared labels; every declared label must
    /// be used and every used label declared.
    pub fn from_parts(
        names: Vec<String>,
        initial: StateId,
        alphabet: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = (StateId, Label, StateId)>,
    ) -> Result<Self, ValidationError> {
        let n = names.len();
        if n == 0 {
            return Err(ValidationError::Empty);
        }
        if initial >= n {
            return Err(ValidationError::StateOutOfRange(initial));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(ValidationError::DuplicateName(name.clone()));
            }
        }

        let alphabet: Vec<Label> = alphabet
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if alphabet.iter().any(Label::is_hash) {
            return Err(ValidationError::HashTransition);
        }

        let mut transitions = Vec::new();
        for (from, label, to) in edges {
            if from >= n {
                return Err(ValidationError::StateOutOfRange(from));
            }
            if to >= n {
                return Err(ValidationError::StateOutOfRange(to));
            }
            if label.is_hash() {
                return Err(ValidationError::HashTransition);
            }
            let id = alphabet
                .binary_search(&label)
                .map_err(|_| ValidationError::UndeclaredLabel(label.to_string()))?;
            transitions.push(Transition {
                from,
                label: id,
                to,
            });
        }
        transitions.sort_unstable();
        if let Some(w) = transitions.windows(2).find(|w| w[0] == w[1]) {
            let t = w[0];
            return Err(ValidationError::DuplicateTransition {
                from: names[t.from].clone(),
                label: alphabet[t.label].to_string(),
                to: names[t.to].clone(),
            });
        }

        if let Some(t) = transitions.iter().find(|t| t.to == initial) {
            return Err(ValidationError::InitialHasIncoming {
                initial: names[initial].clone(),
                from: names[t.from].clone(),
                label: alphabet[t.label].to_string(),
            });
        }

        let mut used = vec![false; alphabet.len()];
        for t in &transitions {
            used[t.label] = true;
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(ValidationError::UnusedLabel(alphabet[i].to_string()));
        }

        let k = alphabet.len();
        let out_offsets = csr_offsets(n, k, transitions.iter().map(|t| (t.from, t.label)));
        let out_targets = transitions.iter().map(|t| t.to).collect();

        let mut reversed = transitions.clone();
        reversed.sort_unstable_by_key(|t| (t.to, t.label, t.from));
        let in_offsets = csr_offsets(n, k, reversed.iter().map(|t| (t.to, t.label)));
        let in_sources: Vec<StateId> = reversed.iter().map(|t| t.from).collect();

        let mut lambda_min = vec![usize::MAX; n];
        let mut lambda_max = vec![0; n];
        lambda_min[initial] = 0;
        for t in &reversed {
            let rank = t.label + 1;
            lambda_min[t.to] = lambda_min[t.to].min(rank);
            lambda_max[t.to] = lambda_max[t.to].max(rank);
        }

        let nfa = Nfa {
            names,
            initial,
            alphabet,
            transitions,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            lambda_min,
            lambda_max,
        };

        let reach = nfa.reachable();
        if let Some(u) = (0..n).find(|&u| !reach[u]) {
            return Err(ValidationError::Unreachable(nfa.names[u].clone()));
        }
        Ok(nfa)
    }

    pub fn n_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    pub fn label(&self, id: LabelId) -> &Label {
        &self.alphabet[id]
    }

    pub fn label_id(&self, label: &Label) -> Option<LabelId> {
        self.alphabet.binary_search(label).ok()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, u: StateId) -> &str {
        &self.names[u]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.n_states()
    }

    /// `δ_a(u)`, sorted ascending.
    pub fn successors(&self, u: StateId, a: LabelId) -> &[StateId] {
        let i = u * self.alphabet.len() + a;
        &self.out_targets[self.out_offsets[i]..self.out_offsets[i + 1]]
    }

    /// States `u'` with `u ∈ δ_a(u')`, sorted ascending.
    pub fn predecessors(&self, u: StateId, a: LabelId) -> &[StateId] {
        let i = u * self.alphabet.len() + a;
        &self.in_sources[self.in_offsets[i]..self.in_offsets[i + 1]]
    }

    /// Labels on edges entering `u`, ascending.
    pub fn in_labels(&self, u: StateId) -> impl Iterator<Item = LabelId> + '_ {
        (0..self.alphabet.len()).filter(move |&a| !self.predecessors(u, a).is_empty())
    }

    pub fn lambda(&self, u: StateId) -> LambdaSet {
        if u == self.initial {
            LambdaSet::new([Label::Hash])
        } else {
            LambdaSet::new(self.in_labels(u).map(|a| self.alphabet[a].clone()))
        }
    }

    /// `λ(u) ≤ λ(v)` using precomputed label ranks.
    pub fn lambda_leq_states(&self, u: StateId, v: StateId) -> bool {
        self.lambda_max[u] <= self.lambda_min[v]
    }

    /// Whether every state has exactly one incoming label.
    pub fn is_input_consistent(&self) -> bool {
        self.states()
            .all(|u| self.lambda_min[u] == self.lambda_max[u])
    }

    /// `δ_a(T)` for a set of states `T`.
    pub fn image(&self, set: &FixedBitSet, a: LabelId) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n_states());
        for u in set.ones() {
            for &v in self.successors(u, a) {
                out.insert(v);
            }
        }
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(u) = stack.pop() {
            let start = self.out_offsets[u * self.alphabet.len()];
            let end = self.out_offsets[(u + 1) * self.alphabet.len()];
            for &v in &self.out_targets[start..end] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

fn csr_offsets(
    n: usize,
    k: usize,
    keys: impl Iterator<Item = (StateId, LabelId)>,
) -> Vec<usize> {
    let mut offsets = vec![0; n * k + 1];
    for (u, a) in keys {
        offsets[u * k + a + 1] += 1;
    }
    for i in 1..offsets.len() {
        offsets[i] += offsets[i - 1];
    }
    offsets
}

/// `δ(u, α)`: the states reached from `u` by reading `alpha`.
pub fn delta_string(nfa: &Nfa, u: StateId, alpha: &[Label]) -> Result<FixedBitSet> {
    let mut current = FixedBitSet::with_capacity(nfa.n_states());
    current.insert(u);
    for label in alpha {
        let a = nfa
            .label_id(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        current = nfa.image(&current, a);
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Label {
        Label::symbol(s).unwrap()
    }

    fn set(labels: &[&str]) -> LambdaSet {
        LambdaSet::new(labels.iter().map(|l| match *l {
            "#" => Label::Hash,
            l => sym(l),
        }))
    }

    fn chain() -> Nfa {
        Nfa::from_parts(
            vec!["0".into(), "1".into()],
            0,
            [sym("a")],
            [(0, sym("a"), 1)],
        )
        .unwrap()
    }

    #[test]
    fn hash_is_minimal() {
        assert!(Label::Hash < sym("!"));
        assert!(Label::Hash < sym("a"));
        assert!(sym("B") < sym("a"));
        assert!(sym("a") < sym("aa"));
    }

    #[test]
    fn label_tokens_are_checked() {
        assert!(Label::symbol("").is_err());
        assert!(Label::symbol("a b").is_err());
        assert!(Label::symbol("a#").is_err());
    }

    #[test]
    fn lambda_leq_examples() {
        assert!(lambda_leq(&set(&["a"]), &set(&["a"])));
        assert!(lambda_leq(&set(&["a", "b"]), &set(&["b"])));
        assert!(!lambda_leq(&set(&["a", "b"]), &set(&["a"])));
        assert!(lambda_leq(&set(&["#"]), &set(&["a"])));
        assert!(!lambda_leq(&set(&["a"]), &set(&["#"])));
    }

    #[test]
    fn lambda_leq_matches_pairwise_enumeration() {
        let letters = ["#", "a", "b"];
        let subsets: Vec<Vec<&str>> = (1u32..8)
            .map(|mask| {
                (0..3)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| letters[i])
                    .collect()
            })
            .collect();
        for x in &subsets {
            for y in &subsets {
                let (sx, sy) = (set(x), set(y));
                let brute = sx.labels().all(|a| sy.labels().all(|b| a <= b));
                assert_eq!(lambda_leq(&sx, &sy), brute, "{x:?} vs {y:?}");
                if lambda_leq(&sx, &sy) && lambda_leq(&sy, &sx) {
                    assert_eq!(sx, sy);
                    assert_eq!(sx.len(), 1);
                }
            }
        }
    }

    #[test]
    fn minimal_chain() {
        let nfa = chain();
        assert_eq!(nfa.n_states(), 2);
        assert_eq!(nfa.alphabet(), &[sym("a")]);
        assert_eq!(nfa.lambda(1), set(&["a"]));
        assert_eq!(nfa.lambda(0), set(&["#"]));
        assert!(nfa.is_input_consistent());
    }

    #[test]
    fn delta_string_base_cases() {
        let nfa = chain();
        let empty = delta_string(&nfa, 1, &[]).unwrap();
        assert_eq!(empty.ones().collect::<Vec<_>>(), vec![1]);
        let none = delta_string(&nfa, 1, &[sym("a")]).unwrap();
        assert_eq!(none.count_ones(..), 0);
        assert_eq!(
            delta_string(&nfa, 0, &[sym("z")]),
            Err(Error::UnknownLabel("z".into()))
        );
    }

    #[test]
    fn validation_errors() {
        let names = || vec!["s".to_string(), "t".to_string()];
        assert!(matches!(
            Nfa::from_parts(names(), 0, [sym("a")], [(0, sym("a"), 0)]),
            Err(ValidationError::InitialHasIncoming { .. })
        ));
        assert_eq!(
            Nfa::from_parts(names(), 0, [sym("a")], [(1, sym("a"), 1)]).unwrap_err(),
            ValidationError::Unreachable("t".into())
        );
        assert_eq!(
            Nfa::from_parts(names(), 0, [sym("a"), sym("b")], [(0, sym("a"), 1)]).unwrap_err(),
            ValidationError::UnusedLabel("b".into())
        );
        assert!(matches!(
            Nfa::from_parts(names(), 0, [sym("a")], [(0, sym("a"), 1), (0, sym("a"), 1)]),
            Err(ValidationError::DuplicateTransition { .. })
        ));
        assert_eq!(
            Nfa::from_parts(names(), 0, [], [(0, sym("a"), 1)]).unwrap_err(),
            ValidationError::UndeclaredLabel("a".into())
        );
    }
}
