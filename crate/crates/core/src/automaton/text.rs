//! Line-oriented text format.
//!
//! ```text
//! # comment
//! initial u0
//! alphabet a b        (optional; every declared label must be used)
//! trans u0 a u1
//! ```
//!
//! States get ids in order of first appearance, so the initial state is id 0.

use std::collections::HashMap;
use std::fmt::Write;

use super::{Label, Nfa};
use crate::error::{Error, Result};

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        *ids.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };

    let mut has_initial = false;
    let mut declared: Option<Vec<Label>> = None;
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            message,
        };
        match tokens[0] {
            "initial" => {
                if has_initial {
                    return Err(syntax("`initial` given more than once".into()));
                }
                if tokens.len() != 2 {
                    return Err(syntax("expected `initial <name>`".into()));
                }
                intern(tokens[1], &mut names);
                has_initial = true;
            }
            _ if !has_initial => {
                return Err(syntax("first statement must be `initial <name>`".into()));
            }
            "alphabet" => {
                let labels = declared.get_or_insert_with(Vec::new);
                for tok in &tokens[1..] {
                    labels.push(Label::symbol(*tok).map_err(|e| syntax(e.to_string()))?);
                }
            }
            "trans" => {
                if tokens.len() != 4 {
                    return Err(syntax("expected `trans <from> <label> <to>`".into()));
                }
                let from = intern(tokens[1], &mut names);
                let label = Label::symbol(tokens[2]).map_err(|e| syntax(e.to_string()))?;
                let to = intern(tokens[3], &mut names);
                edges.push((from, label, to));
            }
            other => return Err(syntax(format!("unknown statement `{other}`"))),
        }
    }

    if !has_initial {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            message: "missing `initial <name>`".into(),
        });
    }

    let alphabet = match declared {
        Some(labels) => labels,
        None => edges.iter().map(|(_, l, _)| l.clone()).collect(),
    };
    Ok(Nfa::from_parts(names, 0, alphabet, edges)?)
}

impl Nfa {
    /// Serializes to the text format: `initial`, then transitions sorted by
    /// `(from, label, to)` ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "initial {}", self.name(self.initial())).unwrap();
        for t in self.transitions() {
            writeln!(
                out,
                "trans {} {} {}",
                self.name(t.from),
                self.label(t.label),
                self.name(t.to)
            )
            .unwrap();
        }
        out
    }
}
