//! Epsilon-NFAs, used only while building deterministic automata.

use std::collections::BTreeSet;

use super::{Fsa, Symbol};

pub(crate) struct Nfa<S: Symbol> {
    pub symbols: Vec<S>,
    // per state: (symbol index or epsilon, target)
    pub edges: Vec<Vec<(Option<usize>, usize)>>,
    pub start: usize,
    pub accepting: Vec<bool>,
}

impl<S: Symbol> Nfa<S> {
    pub fn new(symbols: Vec<S>) -> Nfa<S> {
        Nfa { symbols, edges: Vec::new(), start: 0, accepting: Vec::new() }
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.accepting.push(false);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Option<usize>, to: usize) {
        self.edges[from].push((label, to));
    }

    pub fn from_dfa(m: &Fsa<S>) -> Nfa<S> {
        let k = m.symbols.len();
        let edges = (0..m.num_states())
            .map(|q| (0..k).map(|si| (Some(si), m.target(q, si))).collect())
            .collect();
        Nfa { symbols: m.symbols.clone(), edges, start: m.start, accepting: m.accepting.clone() }
    }

    /// Copies `other` into `self` over a shared alphabet; returns the
    /// state offset and the symbol remapping used.
    fn absorb(&mut self, other: &Nfa<S>) -> usize {
        let remap: Vec<usize> = other
            .symbols
            .iter()
            .map(|s| match self.symbols.iter().position(|x| x == s) {
                Some(i) => i,
                None => {
                    self.symbols.push(s.clone());
                    self.symbols.len() - 1
                }
            })
            .collect();
        let offset = self.edges.len();
        for (q, out) in other.edges.iter().enumerate() {
            self.edges.push(out.iter().map(|&(l, t)| (l.map(|i| remap[i]), t + offset)).collect());
            self.accepting.push(other.accepting[q]);
        }
        offset
    }

    pub fn concat(a: &Nfa<S>, b: &Nfa<S>) -> Nfa<S> {
        let mut out = Nfa::new(a.symbols.clone());
        let oa = out.absorb(a);
        let ob = out.absorb(b);
        out.start = a.start + oa;
        for q in oa..ob {
            if out.accepting[q] {
                out.accepting[q] = false;
                out.add_edge(q, None, b.start + ob);
            }
        }
        out
    }

    pub fn star(&self) -> Nfa<S> {
        let mut out = Nfa::new(self.symbols.clone());
        let hub = out.add_state();
        out.accepting[hub] = true;
        let off = out.absorb(self);
        out.start = hub;
        out.add_edge(hub, None, self.start + off);
        for q in off..out.edges.len() {
            if out.accepting[q] {
                out.add_edge(q, None, hub);
            }
        }
        out
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, t) in &self.edges[q] {
                if l.is_none() && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction.
    pub fn determinize(&self) -> Fsa<S> {
        let mut start = BTreeSet::from([self.start]);
        self.closure(&mut start);
        let mut symbols = self.symbols.clone();
        symbols.sort();
        let pos: Vec<usize> = symbols
            .iter()
            .map(|s| self.symbols.iter().position(|x| x == s).expect("same symbols"))
            .collect();
        let sorted = symbols.clone();
        Fsa::explore(
            symbols,
            start,
            |set, sym| {
                let si = pos[sorted.binary_search(sym).expect("own symbol")];
                let mut next = BTreeSet::new();
                for &q in set {
                    for &(l, t) in &self.edges[q] {
                        if l == Some(si) {
                            next.insert(t);
                        }
                    }
                }
                self.closure(&mut next);
                next
            },
            |set| set.iter().any(|&q| self.accepting[q]),
        )
    }
}
