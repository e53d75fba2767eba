//! Fixed example automata and seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Label, Nfa, StateId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// Seven states `u0..u6`; coarsest forward-stable partition with four blocks.
    Fig2,
    /// `u1 -a-> u2`, `u1 -a-> u3`.
    Wheeler3,
    /// The `n`-state family separating `≤_R` from `≤_FS`.
    Separation(usize),
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Fixture::Fig2),
            "wheeler3" => Ok(Fixture::Wheeler3),
            _ => {
                let n = s
                    .strip_prefix("sep:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnknownFixture(s.to_string()))?;
                Ok(Fixture::Separation(n))
            }
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Fig2 => f.write_str("fig2"),
            Fixture::Wheeler3 => f.write_str("wheeler3"),
            Fixture::Separation(n) => write!(f, "sep:{n}"),
        }
    }
}

fn sym(s: &str) -> Label {
    Label::Symbol(s.to_string())
}

fn build(names: Vec<String>, edges: &[(StateId, &str, StateId)]) -> Nfa {
    let alphabet: Vec<Label> = edges.iter().map(|&(_, l, _)| sym(l)).collect();
    Nfa::from_parts(
        names,
        0,
        alphabet,
        edges.iter().map(|&(u, l, v)| (u, sym(l), v)),
    )
    .expect("fixture automata are valid")
}

/// Builds a named fixture. `Separation(n)` panics for `n < 5`; use
/// [`gen_separation_family`] or [`gen_fixture_named`] for a checked variant.
pub fn gen_fixture(fixture: &Fixture) -> Nfa {
    match *fixture {
        Fixture::Fig2 => {
            let names = (0..7).map(|i| format!("u{i}")).collect();
            build(
                names,
                &[
                    (0, "a", 1),
                    (0, "a", 2),
                    (0, "a", 3),
                    (0, "a", 4),
                    (1, "a", 1),
                    (2, "a", 2),
                    (2, "b", 5),
                    (2, "b", 6),
                    (3, "b", 5),
                    (4, "b", 6),
                    (5, "b", 6),
                    (6, "b", 5),
                ],
            )
        }
        Fixture::Wheeler3 => {
            let names = (1..=3).map(|i| format!("u{i}")).collect();
            build(names, &[(0, "a", 1), (0, "a", 2)])
        }
        Fixture::Separation(n) => gen_separation_family(n).expect("n >= 5"),
    }
}

/// Parses a fixture name (`fig2`, `wheeler3`, `sep:<n>`) and builds it.
pub fn gen_fixture_named(name: &str) -> Result<Nfa> {
    match name.parse::<Fixture>()? {
        Fixture::Separation(n) => gen_separation_family(n),
        f => Ok(gen_fixture(&f)),
    }
}

/// The family on states `u1..un` with initial `u1`: `u1 -a-> u2`,
/// `u1 -b-> u3`, `u3 -b-> u4`, and `u2 -a-> ui`, `u3 -a-> ui` for `4 < i ≤ n`.
pub fn gen_separation_family(n: usize) -> Result<Nfa> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "separation family needs n >= 5, got {n}"
        )));
    }
    let names = (1..=n).map(|i| format!("u{i}")).collect();
    // ids are i - 1 for u_i
    let mut edges = vec![(0, "a", 1), (0, "b", 2), (2, "b", 3)];
    for i in 5..=n {
        edges.push((1, "a", i - 1));
        edges.push((2, "a", i - 1));
    }
    Ok(build(names, &edges))
}

fn label_name(i: usize, k: usize) -> String {
    if k <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("l{i}")
    }
}

/// A seeded random NFA. Each triple `(u, a, v)` is an edge with probability
/// `density`; edges into the initial state are then dropped, every
/// unreachable state is attached by one random edge from a reachable state,
/// and unused labels are removed from the alphabet.
pub fn gen_random(states: usize, alphabet_size: usize, density: f64, seed: u64) -> Result<Nfa> {
    if states == 0 {
        return Err(Error::InvalidParameter("states must be >= 1".into()));
    }
    if alphabet_size == 0 {
        return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(StateId, usize, StateId)> = Vec::new();
    for u in 0..states {
        for a in 0..alphabet_size {
            for v in 0..states {
                if rng.gen_bool(density) {
                    edges.push((u, a, v));
                }
            }
        }
    }
    edges.retain(|&(_, _, v)| v != 0);

    let mut reached = vec![false; states];
    let mark = |edges: &[(StateId, usize, StateId)], reached: &mut Vec<bool>| {
        let mut stack: Vec<StateId> = (0..states).filter(|&u| reached[u]).collect();
        while let Some(u) = stack.pop() {
            for &(x, _, v) in edges {
                if x == u && !reached[v] {
                    reached[v] = true;
                    stack.push(v);
                }
            }
        }
    };
    reached[0] = true;
    mark(&edges, &mut reached);
    for v in 1..states {
        if reached[v] {
            continue;
        }
        let pool: Vec<StateId> = (0..states).filter(|&u| reached[u]).collect();
        let from = *pool.choose(&mut rng).expect("initial is reachable");
        let a = rng.gen_range(0..alphabet_size);
        edges.push((from, a, v));
        reached[v] = true;
        mark(&edges, &mut reached);
    }

    let names = (0..states).map(|i| format!("q{i}")).collect();
    let labeled: Vec<(StateId, Label, StateId)> = edges
        .iter()
        .map(|&(u, a, v)| (u, sym(&label_name(a, alphabet_size)), v))
        .collect();
    let alphabet: Vec<Label> = labeled.iter().map(|(_, l, _)| l.clone()).collect();
    Nfa::from_parts(names, 0, alphabet, labeled).map_err(|e| Error::Internal(e.to_string()))
}
