//! Forward-stable partitions and quotient automata.
//!
//! A partition `P` of the states is forward-stable when for all blocks `S, T`
//! and every label `a`, either `S ⊆ δ_a(T)` or `S ∩ δ_a(T) = ∅`. The coarsest
//! such partition is unique and is computed here by splitter refinement
//! starting from the single-block partition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::automaton::{LabelId, Nfa, StateId};
use crate::error::{Error, Result};
use crate::Verdict;

/// Disjoint non-empty blocks covering `0..n`, in canonical form: blocks
/// ordered by their minimum element, members ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<StateId>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates and canonicalizes `blocks` as a partition of `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<StateId>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::PartitionMismatch(format!("block {b} is empty")));
            }
            for &u in block {
                if u >= n {
                    return Err(Error::PartitionMismatch(format!(
                        "element {u} outside 0..{n}"
                    )));
                }
                if owner[u] != usize::MAX {
                    return Err(Error::PartitionMismatch(format!(
                        "element {u} appears in two blocks"
                    )));
                }
                owner[u] = b;
            }
        }
        if let Some(u) = owner.iter().position(|&b| b == usize::MAX) {
            return Err(Error::PartitionMismatch(format!("element {u} is not covered")));
        }
        Ok(Self::from_block_of(&owner))
    }

    /// Canonical partition grouping elements with equal keys.
    pub fn from_block_of<K: Ord + Copy>(keys: &[K]) -> Self {
        let mut rename: BTreeMap<K, usize> = BTreeMap::new();
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        let mut block_of = Vec::with_capacity(keys.len());
        for (u, k) in keys.iter().enumerate() {
            let b = *rename.entry(*k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(u);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_block_of(&(0..n).collect::<Vec<_>>())
    }

    pub fn single(n: usize) -> Self {
        Self::from_block_of(&vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[StateId] {
        &self.blocks[b]
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, u: StateId, v: StateId) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.len() == coarser.len()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&u| coarser.same_block(u, b[0])))
    }

    fn bitset(&self, b: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for &u in &self.blocks[b] {
            set.insert(u);
        }
        set
    }
}

/// A block `S` that is cut by `δ_a(T)`: `inside ∈ S ∩ δ_a(T)`,
/// `outside ∈ S \ δ_a(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityViolation {
    pub split_block: usize,
    pub splitter_block: usize,
    pub label: LabelId,
    pub inside: StateId,
    pub outside: StateId,
}

fn check_cover(nfa: &Nfa, p: &Partition) -> Result<()> {
    if p.len() != nfa.n_states() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} states, automaton has {}",
            p.len(),
            nfa.n_states()
        )));
    }
    Ok(())
}

/// Checks forward stability, reporting the first violation in the order
/// splitter block, label, split block.
pub fn is_forward_stable(nfa: &Nfa, p: &Partition) -> Result<Verdict<StabilityViolation>> {
    check_cover(nfa, p)?;
    for t in 0..p.num_blocks() {
        let tset = p.bitset(t);
        for a in 0..nfa.alphabet().len() {
            let image = nfa.image(&tset, a);
            for (s, block) in p.blocks().iter().enumerate() {
                let inside = block.iter().copied().find(|&u| image.contains(u));
                let outside = block.iter().copied().find(|&u| !image.contains(u));
                if let (Some(inside), Some(outside)) = (inside, outside) {
                    return Ok(Verdict::Invalid(StabilityViolation {
                        split_block: s,
                        splitter_block: t,
                        label: a,
                        inside,
                        outside,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Valid)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RefinementStats {
    /// Number of block splits performed.
    pub splits: usize,
    /// Number of `(block, label)` splitters evaluated.
    pub splitters: usize,
}

/// The coarsest forward-stable partition of `nfa`.
pub fn coarsest_fs_partition(nfa: &Nfa) -> Partition {
    refine(nfa).0
}

/// Splitter refinement from the single-block partition.
///
/// Blocks are dequeued in FIFO order and each is used as splitter `T` for
/// every label in order. A split block keeps its id for `S \ δ_a(T)`; the new
/// block `S ∩ δ_a(T)` gets a fresh id. Both halves are (re)queued, which
/// covers pending splitters that referred to the old `S`.
pub fn refine(nfa: &Nfa) -> (Partition, RefinementStats) {
    let n = nfa.n_states();
    let k = nfa.alphabet().len();
    let mut members: Vec<Vec<StateId>> = vec![(0..n).collect()];
    let mut block_of = vec![0usize; n];
    let mut queue = VecDeque::from([0usize]);
    let mut queued = vec![true];
    let mut stats = RefinementStats::default();
    let mut in_image = FixedBitSet::with_capacity(n);

    while let Some(t) = queue.pop_front() {
        queued[t] = false;
        for a in 0..k {
            stats.splitters += 1;
            in_image.clear();
            for &u in &members[t] {
                for &v in nfa.successors(u, a) {
                    in_image.insert(v);
                }
            }
            let mut touched: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
            for v in in_image.ones() {
                touched.entry(block_of[v]).or_default().push(v);
            }
            for (s, inside) in touched {
                if inside.len() == members[s].len() {
                    continue;
                }
                let fresh = members.len();
                members[s].retain(|&u| !in_image.contains(u));
                for &u in &inside {
                    block_of[u] = fresh;
                }
                members.push(inside);
                queued.push(false);
                stats.splits += 1;
                for b in [s, fresh] {
                    if !queued[b] {
                        queued[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
    }

    (Partition::from_block_of(&block_of), stats)
}

/// An automaton together with its quotient by a partition. Quotient state
/// `i` is block `i` of the partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub source: Nfa,
    pub partition: Partition,
    pub quotient: Nfa,
}

impl QuotientMap {
    /// Quotient state holding `u`.
    pub fn class_of(&self, u: StateId) -> StateId {
        self.partition.block_of()[u]
    }
}

/// Name of a quotient state: member names in braces, e.g. `{u1,u2}`.
pub fn block_name(nfa: &Nfa, block: &[StateId]) -> String {
    let names: Vec<&str> = block.iter().map(|&u| nfa.name(u)).collect();
    format!("{{{}}}", names.join(","))
}

/// `A/~`: an `a`-edge between blocks iff some members are joined by one.
pub fn build_quotient(nfa: &Nfa, p: &Partition) -> Result<QuotientMap> {
    check_cover(nfa, p)?;
    let edges: BTreeSet<(usize, LabelId, usize)> = nfa
        .transitions()
        .iter()
        .map(|t| (p.block_of()[t.from], t.label, p.block_of()[t.to]))
        .collect();
    let names = p.blocks().iter().map(|b| block_name(nfa, b)).collect();
    let quotient = Nfa::from_parts(
        names,
        p.block_of()[nfa.initial()],
        nfa.alphabet().iter().cloned(),
        edges
            .into_iter()
            .map(|(u, a, v)| (u, nfa.label(a).clone(), v)),
    )
    .map_err(Error::QuotientInvalid)?;
    Ok(QuotientMap {
        source: nfa.clone(),
        partition: p.clone(),
        quotient,
    })
}
