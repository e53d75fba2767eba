//! JSON documents exchanged with other tools. State names come from the
//! automaton the document refers to.
//!
//! - partition: `{"blocks": [["u0"], ["u1", "u2"]]}`
//! - relation: `{"n": 3, "pairs": [["u1", "u2"]]}` (off-diagonal pairs, sorted)
//! - width: `{"width": 2, "antichain": [...], "chains": [[...], ...]}`

use serde::{Deserialize, Serialize};

use crate::automaton::{Nfa, StateId};
use crate::error::{Error, Result};
use crate::fs_partition::Partition;
use crate::relations::{Relation, WidthCertificate};

#[derive(Debug, Serialize, Deserialize)]
struct PartitionDoc {
    blocks: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RelationDoc {
    n: usize,
    pairs: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WidthDoc {
    width: usize,
    antichain: Vec<String>,
    chains: Vec<Vec<String>>,
}

fn names(nfa: &Nfa, ids: &[StateId]) -> Vec<String> {
    ids.iter().map(|&u| nfa.name(u).to_string()).collect()
}

fn lookup(nfa: &Nfa, name: &str) -> Result<StateId> {
    nfa.state_id(name)
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn partition_to_json(nfa: &Nfa, p: &Partition) -> String {
    pretty(&PartitionDoc {
        blocks: p.blocks().iter().map(|b| names(nfa, b)).collect(),
    })
}

pub fn partition_from_json(nfa: &Nfa, text: &str) -> Result<Partition> {
    let doc: PartitionDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let blocks = doc
        .blocks
        .iter()
        .map(|b| b.iter().map(|name| lookup(nfa, name)).collect())
        .collect::<Result<Vec<Vec<StateId>>>>()?;
    Partition::new(nfa.n_states(), blocks)
}

pub fn relation_to_json(nfa: &Nfa, r: &Relation) -> String {
    pretty(&RelationDoc {
        n: r.n(),
        pairs: r
            .pairs()
            .map(|(u, v)| (nfa.name(u).to_string(), nfa.name(v).to_string()))
            .collect(),
    })
}

pub fn relation_from_json(nfa: &Nfa, text: &str) -> Result<Relation> {
    let doc: RelationDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.n != nfa.n_states() {
        return Err(Error::SizeMismatch {
            expected: nfa.n_states(),
            found: doc.n,
        });
    }
    let pairs = doc
        .pairs
        .iter()
        .map(|(u, v)| Ok((lookup(nfa, u)?, lookup(nfa, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Relation::from_pairs(doc.n, pairs)
}

pub fn width_to_json(nfa: &Nfa, cert: &WidthCertificate) -> String {
    pretty(&WidthDoc {
        width: cert.width,
        antichain: names(nfa, &cert.antichain),
        chains: cert.chains.iter().map(|c| names(nfa, c)).collect(),
    })
}
