//! Brute-force references for small instances.
//!
//! Nothing here calls into the main algorithms: every function works from
//! `Nfa::transitions()` and the label table alone. [`cross_check`] is the
//! exception; it runs both sides and compares them.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use crate::automaton::{Label, Nfa, StateId};
use crate::colex::{max_colex_relation, preceding_pairs_oracle, source_distances, Analysis};
use crate::error::{Error, Result};
use crate::fs_partition::{build_quotient, Partition};
use crate::relations::{check_colex_relation, induced_order, Relation};

pub const MAX_STATES: usize = 8;
pub const MAX_CLASSES: usize = 15;
pub const MAX_STRING_LEN: usize = 8;

fn guard_states(nfa: &Nfa) -> Result<()> {
    if nfa.n_states() > MAX_STATES {
        return Err(Error::TooLarge(format!(
            "{} states, oracle limit is {MAX_STATES}",
            nfa.n_states()
        )));
    }
    Ok(())
}

/// `δ_a(set)` computed by scanning every transition.
fn image_of(nfa: &Nfa, set: &BTreeSet<StateId>, label: usize) -> BTreeSet<StateId> {
    nfa.transitions()
        .iter()
        .filter(|t| t.label == label && set.contains(&t.from))
        .map(|t| t.to)
        .collect()
}

fn stable(nfa: &Nfa, blocks: &[BTreeSet<StateId>]) -> bool {
    for t in blocks {
        for a in 0..nfa.alphabet().len() {
            let img = image_of(nfa, t, a);
            for s in blocks {
                let hit = s.iter().filter(|u| img.contains(u)).count();
                if hit != 0 && hit != s.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Every forward-stable partition, in restricted-growth-string order.
pub fn enumerate_fs_partitions(nfa: &Nfa) -> Result<Vec<Partition>> {
    guard_states(nfa)?;
    let n = nfa.n_states();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![BTreeSet::new(); k];
        for (u, &b) in rgs.iter().enumerate() {
            blocks[b].insert(u);
        }
        if stable(nfa, &blocks) {
            out.push(Partition::new(
                n,
                blocks.into_iter().map(|b| b.into_iter().collect()).collect(),
            )?);
        }
        // next restricted growth string: rgs[i] <= 1 + max(rgs[..i])
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// The forward-stable partition that every other one refines.
pub fn brute_coarsest_fs(nfa: &Nfa) -> Result<Partition> {
    let all = enumerate_fs_partitions(nfa)?;
    let mut coarsest = all.iter().filter(|p| all.iter().all(|q| q.refines(p)));
    match (coarsest.next(), coarsest.next()) {
        (Some(p), None) => Ok(p.clone()),
        (None, _) => Err(Error::Internal("no coarsest forward-stable partition".into())),
        (Some(_), Some(_)) => Err(Error::Internal(
            "several coarsest forward-stable partitions".into(),
        )),
    }
}

fn lambda_sets(nfa: &Nfa) -> Vec<BTreeSet<Label>> {
    let mut sets = vec![BTreeSet::new(); nfa.n_states()];
    sets[nfa.initial()].insert(Label::Hash);
    for t in nfa.transitions() {
        sets[t.to].insert(nfa.label(t.label).clone());
    }
    sets
}

fn label_leq(x: &BTreeSet<Label>, y: &BTreeSet<Label>) -> bool {
    x.iter().all(|a| y.iter().all(|b| a <= b))
}

/// Greatest fixpoint of the co-lex axioms: start from every pair passing
/// the label axiom and delete pairs with a predecessor pair outside the set.
pub fn brute_max_colex_relation(nfa: &Nfa) -> Result<Relation> {
    guard_states(nfa)?;
    let n = nfa.n_states();
    let lam = lambda_sets(nfa);
    let mut keep: BTreeSet<(StateId, StateId)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u == v || label_leq(&lam[u], &lam[v]))
        .collect();
    let ts = nfa.transitions();
    loop {
        let doomed: Vec<(StateId, StateId)> = keep
            .iter()
            .copied()
            .filter(|&(u, v)| u != v)
            .filter(|&(u, v)| {
                ts.iter().filter(|tu| tu.to == u).any(|tu| {
                    ts.iter()
                        .filter(|tv| tv.to == v && tv.label == tu.label)
                        .any(|tv| !keep.contains(&(tu.from, tv.from)))
                })
            })
            .collect();
        if doomed.is_empty() {
            break;
        }
        for p in doomed {
            keep.remove(&p);
        }
    }
    Relation::from_pairs(n, keep)
}

/// Largest antichain of classes, by trying every subset of class
/// representatives.
pub fn brute_width(r: &Relation) -> Result<usize> {
    let n = r.n();
    let mut reps: Vec<StateId> = Vec::new();
    for u in 0..n {
        if !reps.iter().any(|&x| r.contains(x, u) && r.contains(u, x)) {
            reps.push(u);
        }
    }
    if reps.len() > MAX_CLASSES {
        return Err(Error::TooLarge(format!(
            "{} classes, oracle limit is {MAX_CLASSES}",
            reps.len()
        )));
    }
    let k = reps.len();
    let mut best = 0;
    for mask in 1u32..(1 << k) {
        let chosen: Vec<StateId> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| reps[i]).collect();
        let antichain = chosen.iter().enumerate().all(|(i, &x)| {
            chosen[i + 1..]
                .iter()
                .all(|&y| !r.contains(x, y) && !r.contains(y, x))
        });
        if antichain {
            best = best.max(chosen.len());
        }
    }
    Ok(best)
}

/// Strings of bounded length reaching each state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSets {
    pub max_len: usize,
    pub sets: Vec<BTreeSet<Vec<Label>>>,
}

impl ReachSets {
    pub fn strings(&self, u: StateId) -> &BTreeSet<Vec<Label>> {
        &self.sets[u]
    }
}

pub fn reach_sets(nfa: &Nfa, max_len: usize) -> Result<ReachSets> {
    if max_len > MAX_STRING_LEN {
        return Err(Error::TooLarge(format!(
            "string length {max_len}, oracle limit is {MAX_STRING_LEN}"
        )));
    }
    let mut sets = vec![BTreeSet::new(); nfa.n_states()];
    let mut frontier: Vec<(Vec<Label>, BTreeSet<StateId>)> =
        vec![(Vec::new(), BTreeSet::from([nfa.initial()]))];
    for len in 0..=max_len {
        for (alpha, reached) in &frontier {
            for &u in reached {
                sets[u].insert(alpha.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (alpha, reached) in &frontier {
            for a in 0..nfa.alphabet().len() {
                let img = image_of(nfa, reached, a);
                if !img.is_empty() {
                    let mut beta = alpha.clone();
                    beta.push(nfa.label(a).clone());
                    next.push((beta, img));
                }
            }
        }
        frontier = next;
    }
    Ok(ReachSets { max_len, sets })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Outside the oracle guards.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

pub const REACH_LEN: usize = 6;

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn guarded<T>(r: Result<T>, f: impl FnOnce(T) -> Outcome) -> Result<Outcome> {
    match r {
        Ok(x) => Ok(f(x)),
        Err(Error::TooLarge(msg)) => Ok(Outcome::Skipped(msg)),
        Err(e) => Err(e),
    }
}

/// Runs the main pipeline and compares it against the oracles and the
/// guaranteed properties. Errors from the main pipeline are returned as is.
pub fn cross_check(nfa: &Nfa) -> Result<Vec<Check>> {
    let n = nfa.n_states();
    let an = Analysis::compute(nfa)?;
    let max_rel = &an.max_relation;
    let fs = an.cfs.partition();
    let mut checks = Vec::new();
    let mut push = |name, outcome| checks.push(Check { name, outcome });

    push(
        "fs_partition",
        guarded(brute_coarsest_fs(nfa), |p| {
            verdict(&p == fs, || format!("brute {:?} vs {:?}", p.blocks(), fs.blocks()))
        })?,
    );
    push(
        "max_colex_relation",
        guarded(brute_max_colex_relation(nfa), |r| {
            verdict(&r == max_rel, || format!("brute {r:?} vs {max_rel:?}"))
        })?,
    );
    push(
        "width",
        guarded(
            brute_width(max_rel).and_then(|a| Ok((a, brute_width(&an.cfs.relation)?))),
            |(wr, wfs)| {
                verdict(wr == an.r_width.width && wfs == an.fs_width.width, || {
                    format!(
                        "brute ({wr}, {wfs}) vs ({}, {})",
                        an.r_width.width, an.fs_width.width
                    )
                })
            },
        )?,
    );

    let rep = &an.report;
    push(
        "superset",
        verdict(
            max_rel.is_subset(&an.cfs.relation)
                && rep.width_fs <= rep.width_r
                && rep.classes_fs <= rep.classes_r,
            || format!("{rep:?}"),
        ),
    );

    let r_blocks: Vec<BTreeSet<StateId>> = an
        .r_classes
        .blocks()
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    push(
        "r_classes_stable",
        verdict(stable(nfa, &r_blocks), || format!("{:?}", an.r_classes.blocks())),
    );

    let colex_ok = check_colex_relation(nfa, max_rel)?.is_valid();
    push(
        "max_relation_preorder",
        verdict(
            (0..n).all(|u| max_rel.contains(u, u)) && max_rel.is_transitive() && colex_ok,
            || format!("transitive={} colex={colex_ok}", max_rel.is_transitive()),
        ),
    );

    let lam = lambda_sets(nfa);
    let mut prec_outcome = Outcome::Pass;
    'pairs: for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let prec = preceding_pairs_oracle(nfa, u, v)?;
            let clean = prec.iter().all(|&(x, y)| label_leq(&lam[x], &lam[y]));
            if clean != max_rel.contains(u, v) {
                prec_outcome = Outcome::Fail(format!(
                    "({}, {}): preceding pairs clean={clean}",
                    nfa.name(u),
                    nfa.name(v)
                ));
                break 'pairs;
            }
        }
    }
    push("preceding_pairs", prec_outcome);

    let phi = source_distances(nfa);
    let mut dist = Outcome::Pass;
    for (u, v) in max_rel.pairs() {
        if !max_rel.contains(v, u) {
            continue;
        }
        let bad_pred = nfa
            .transitions()
            .iter()
            .find(|t| t.to == u && phi.get(t.from) + 1 != phi.get(u));
        if phi.get(u) != phi.get(v) || bad_pred.is_some() {
            dist = Outcome::Fail(format!(
                "({}, {}) phi {} vs {}",
                nfa.name(u),
                nfa.name(v),
                phi.get(u),
                phi.get(v)
            ));
            break;
        }
    }
    push("source_distance", dist);

    let antisym = max_rel.is_antisymmetric();
    push(
        "max_order_exists",
        verdict(
            rep.max_order_exists == antisym && antisym == (rep.classes_r == n),
            || format!("{rep:?} antisymmetric={antisym}"),
        ),
    );

    push(
        "reach_sets",
        guarded(reach_sets(nfa, REACH_LEN), |rs| {
            let bad = fs.blocks().iter().find_map(|b| {
                b.iter()
                    .find(|&&u| rs.strings(u) != rs.strings(b[0]))
                    .map(|&u| (b[0], u))
            });
            match bad {
                None => Outcome::Pass,
                Some((x, y)) => Outcome::Fail(format!(
                    "{} and {} share a block but differ",
                    nfa.name(x),
                    nfa.name(y)
                )),
            }
        })?,
    );

    push("lifting", lifting_check(nfa, fs)?);
    push("r_quotient_order", r_quotient_check(nfa, &an)?);
    Ok(checks)
}

/// Every preceding pair of classes in the forward-stable quotient has a
/// representative pair preceding each member pair in the original automaton.
fn lifting_check(nfa: &Nfa, fs: &Partition) -> Result<Outcome> {
    let qm = build_quotient(nfa, fs)?;
    let q = &qm.quotient;
    let mut prec_cache: BTreeMap<(StateId, StateId), BTreeSet<(StateId, StateId)>> =
        BTreeMap::new();
    for cu in 0..q.n_states() {
        for cv in 0..q.n_states() {
            if cu == cv {
                continue;
            }
            for (pu, pv) in preceding_pairs_oracle(q, cu, cv)? {
                for &u in fs.block(cu) {
                    for &v in fs.block(cv) {
                        let prec = match prec_cache.entry((u, v)) {
                            Entry::Occupied(e) => e.into_mut(),
                            Entry::Vacant(e) => e.insert(preceding_pairs_oracle(nfa, u, v)?),
                        };
                        let found = prec
                            .iter()
                            .any(|&(x, y)| fs.block_of()[x] == pu && fs.block_of()[y] == pv);
                        if !found {
                            return Ok(Outcome::Fail(format!(
                                "no representative of ({}, {}) precedes ({}, {})",
                                q.name(pu),
                                q.name(pv),
                                nfa.name(u),
                                nfa.name(v)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// The order induced by `≤_R` on its classes is the maximum co-lex
/// relation of the R-quotient, and is antisymmetric.
fn r_quotient_check(nfa: &Nfa, an: &Analysis) -> Result<Outcome> {
    let qm = build_quotient(nfa, &an.r_classes)?;
    let induced = induced_order(&an.max_relation, &an.r_classes)?;
    let recomputed = max_colex_relation(&qm.quotient)?;
    Ok(verdict(
        induced == recomputed && recomputed.is_antisymmetric(),
        || format!("induced {induced:?} vs recomputed {recomputed:?}"),
    ))
}
