//! DOT and JSON renderings of automata.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AutomataError, Fsa, Symbol};

/// Serialized automaton. Transitions into or out of the sink are omitted;
/// a missing transition leads to `sink` (or to a fresh sink when absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sink: Option<usize>,
}

impl<S: Symbol> Fsa<S> {
    /// A non-accepting state whose every transition loops, if one exists.
    pub fn sink(&self) -> Option<usize> {
        (0..self.num_states()).find(|&q| {
            !self.accepting[q] && (0..self.symbols.len()).all(|si| self.target(q, si) == q)
        })
    }

    pub fn to_json(&self) -> FsaJson {
        let sink = self.sink();
        let mut transitions = Vec::new();
        for q in 0..self.num_states() {
            if Some(q) == sink {
                continue;
            }
            for (si, sym) in self.symbols.iter().enumerate() {
                let t = self.target(q, si);
                if Some(t) != sink {
                    transitions.push((q, sym.to_string(), t));
                }
            }
        }
        FsaJson {
            alphabet: self.symbols.iter().map(|s| s.to_string()).collect(),
            states: self.num_states(),
            start: self.start,
            accepting: (0..self.num_states()).filter(|&q| self.accepting[q]).collect(),
            transitions,
            sink,
        }
    }

    pub fn to_dot(&self) -> String {
        let sink = self.sink();
        let mut out = String::from("digraph fsa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.num_states() {
            if Some(q) == sink {
                continue;
            }
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            writeln!(out, "  q{q} [shape={shape}];").unwrap();
        }
        writeln!(out, "  init -> q{};", self.start).unwrap();
        for (q, sym, t) in self.to_json().transitions {
            writeln!(out, "  q{q} -> q{t} [label=\"{sym}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl<S: Symbol + FromStr> Fsa<S> {
    pub fn from_json(j: &FsaJson) -> Result<Fsa<S>, AutomataError> {
        let symbols = j
            .alphabet
            .iter()
            .map(|s| s.parse::<S>().map_err(|_| AutomataError::SymbolNotInAlphabet(s.clone())))
            .collect::<Result<Vec<S>, _>>()?;
        let k = symbols.len();
        let mut states = j.states;
        let sink = match j.sink {
            Some(s) => s,
            None => {
                states += 1;
                states - 1
            }
        };
        let mut delta = vec![sink as u32; states * k];
        let mut accepting = vec![false; states];
        for &a in &j.accepting {
            *accepting
                .get_mut(a)
                .ok_or_else(|| AutomataError::Invalid(format!("accepting state {a} out of range")))? = true;
        }
        for (q, sym, t) in &j.transitions {
            let si = j
                .alphabet
                .iter()
                .position(|s| s == sym)
                .ok_or_else(|| AutomataError::SymbolNotInAlphabet(sym.clone()))?;
            if *q >= states {
                return Err(AutomataError::Invalid(format!("transition from unknown state {q}")));
            }
            delta[q * k + si] = *t as u32;
        }
        let m = Fsa::new(symbols, j.start, accepting, delta)?;
        Ok(m)
    }
}
