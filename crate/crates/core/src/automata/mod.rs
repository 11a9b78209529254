//! Deterministic finite automata over arbitrary symbol types.
//!
//! Every public automaton is complete: each state has a transition on every
//! symbol of its alphabet, with undefined moves routed to an explicit sink.
//! Nondeterminism only appears inside constructions ([`nfa`]) and is removed
//! by the subset construction before anything is returned.

mod export;
mod nfa;
mod padded;
mod regex;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use export::FsaJson;
pub use padded::{is_pad_stable, pad_triple, padded_alphabet, padded_product, PaddedSymbol, PAD};
pub use regex::from_regex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("symbol {0} is not in the automaton's alphabet")]
    SymbolNotInAlphabet(String),
    #[error("malformed pattern at offset {position}: {reason}")]
    MalformedPattern { position: usize, reason: String },
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("{op:?} expects {expected} argument(s), got {got}")]
    Arity { op: CombineOp, expected: &'static str, got: usize },
}

/// Anything usable as an automaton input symbol.
pub trait Symbol: Clone + Eq + Hash + Ord + fmt::Display + fmt::Debug + Send + Sync {}

impl<T: Clone + Eq + Hash + Ord + fmt::Display + fmt::Debug + Send + Sync> Symbol for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Union,
    Intersection,
    Complement,
    Concat,
    Star,
}

/// A complete deterministic finite automaton.
#[derive(Clone)]
pub struct Fsa<S: Symbol> {
    symbols: Vec<S>,
    index: HashMap<S, usize>,
    start: usize,
    accepting: Vec<bool>,
    // row-major: delta[state * symbols.len() + symbol]
    delta: Vec<u32>,
}

impl<S: Symbol> fmt::Debug for Fsa<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fsa")
            .field("symbols", &self.symbols.len())
            .field("states", &self.num_states())
            .field("start", &self.start)
            .finish()
    }
}

impl<S: Symbol> Fsa<S> {
    /// Assembles an automaton from an explicit transition table.
    pub fn new(
        symbols: Vec<S>,
        start: usize,
        accepting: Vec<bool>,
        delta: Vec<u32>,
    ) -> Result<Fsa<S>, AutomataError> {
        let n = accepting.len();
        if start >= n {
            return Err(AutomataError::Invalid(format!("start state {start} out of range")));
        }
        if delta.len() != n * symbols.len() {
            return Err(AutomataError::Invalid("transition table is not total".into()));
        }
        if let Some(bad) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(AutomataError::Invalid(format!("transition to unknown state {bad}")));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(AutomataError::Invalid(format!("duplicate symbol {s}")));
            }
        }
        Ok(Fsa { symbols, index, start, accepting, delta })
    }

    /// Builds the automaton whose states are the values reachable from
    /// `start` under `next`. State ids follow breadth-first discovery order.
    pub fn explore<T, N, A>(symbols: Vec<S>, start: T, mut next: N, mut accept: A) -> Fsa<S>
    where
        T: Clone + Eq + Hash,
        N: FnMut(&T, &S) -> T,
        A: FnMut(&T) -> bool,
    {
        let k = symbols.len();
        let mut ids: HashMap<T, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut accepting = Vec::new();
        let mut delta: Vec<u32> = Vec::new();
        ids.insert(start.clone(), 0);
        accepting.push(accept(&start));
        delta.resize(k, 0);
        queue.push_back((start, 0usize));
        while let Some((state, id)) = queue.pop_front() {
            for (si, sym) in symbols.iter().enumerate() {
                let target = next(&state, sym);
                let tid = match ids.get(&target) {
                    Some(&t) => t,
                    None => {
                        let t = accepting.len() as u32;
                        accepting.push(accept(&target));
                        delta.resize(delta.len() + k, 0);
                        ids.insert(target.clone(), t);
                        queue.push_back((target, t as usize));
                        t
                    }
                };
                delta[id * k + si] = tid;
            }
        }
        Fsa::new(symbols, 0, accepting, delta).expect("explored automaton is well formed")
    }

    /// The automaton accepting nothing.
    pub fn empty_language(symbols: Vec<S>) -> Fsa<S> {
        Fsa::explore(symbols, (), |_, _| (), |_| false)
    }

    /// The automaton accepting exactly the given words.
    pub fn finite_language(symbols: Vec<S>, words: &[Vec<S>]) -> Fsa<S> {
        // state: set of (word index, position) still alive
        let start: Vec<(usize, usize)> = (0..words.len()).map(|i| (i, 0)).collect();
        Fsa::explore(
            symbols,
            start,
            |live, sym| {
                live.iter()
                    .filter(|&&(w, pos)| words[w].get(pos) == Some(sym))
                    .map(|&(w, pos)| (w, pos + 1))
                    .collect()
            },
            |live| live.iter().any(|&(w, pos)| words[w].len() == pos),
        )
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn symbol_index(&self, sym: &S) -> Option<usize> {
        self.index.get(sym).copied()
    }

    pub fn target(&self, state: usize, symbol_index: usize) -> usize {
        self.delta[state * self.symbols.len() + symbol_index] as usize
    }

    /// One transition; `None` when the symbol is foreign to the alphabet.
    pub fn step(&self, state: usize, sym: &S) -> Option<usize> {
        self.symbol_index(sym).map(|i| self.target(state, i))
    }

    /// The state reached from the start, or `None` on a foreign symbol.
    pub fn run(&self, input: &[S]) -> Option<usize> {
        input.iter().try_fold(self.start, |q, s| self.step(q, s))
    }

    pub fn accepts(&self, input: &[S]) -> Result<bool, AutomataError> {
        let mut q = self.start;
        for s in input {
            q = self
                .step(q, s)
                .ok_or_else(|| AutomataError::SymbolNotInAlphabet(s.to_string()))?;
        }
        Ok(self.accepting[q])
    }

    /// Membership where foreign symbols simply reject.
    pub fn contains(&self, input: &[S]) -> bool {
        self.run(input).is_some_and(|q| self.accepting[q])
    }

    /// States from which no accepting state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.symbols.len();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for si in 0..k {
                preds[self.target(q, si)].push(q as u32);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p as usize);
                }
            }
        }
        live.into_iter().map(|l| !l).collect()
    }

    /// True iff the language is empty.
    pub fn is_empty(&self) -> bool {
        self.dead_states()[self.start]
    }

    /// A shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Vec<S>> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut out = Vec::new();
                let mut cur = q;
                while let Some((p, si)) = prev[cur] {
                    out.push(self.symbols[si].clone());
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            for si in 0..self.symbols.len() {
                let t = self.target(q, si);
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((q, si));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn complement(&self) -> Fsa<S> {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }

    /// Boolean combination of languages over the union of the alphabets.
    /// A symbol foreign to some argument sends that argument to rejection.
    pub fn product<F>(args: &[&Fsa<S>], combine: F) -> Fsa<S>
    where
        F: Fn(&[bool]) -> bool,
    {
        let mut symbols: Vec<S> = args.iter().flat_map(|a| a.symbols.iter().cloned()).collect();
        symbols.sort();
        symbols.dedup();
        let dead: Vec<Vec<bool>> = args.iter().map(|a| a.dead_states()).collect();
        // per argument, merged symbol index -> local symbol index
        let local: Vec<Vec<Option<usize>>> = args
            .iter()
            .map(|a| symbols.iter().map(|s| a.symbol_index(s)).collect())
            .collect();
        let canon = |i: usize, q: usize| if dead[i][q] { None } else { Some(q as u32) };
        let start: Vec<Option<u32>> =
            args.iter().enumerate().map(|(i, a)| canon(i, a.start)).collect();
        let sym_pos: HashMap<S, usize> =
            symbols.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut flags = vec![false; args.len()];
        Fsa::explore(
            symbols.clone(),
            start,
            |state, sym| {
                let si = sym_pos[sym];
                state
                    .iter()
                    .enumerate()
                    .map(|(i, q)| {
                        let q = (*q)?;
                        let li = local[i][si]?;
                        canon(i, args[i].target(q as usize, li))
                    })
                    .collect()
            },
            |state| {
                for (i, q) in state.iter().enumerate() {
                    flags[i] = q.is_some_and(|q| args[i].accepting[q as usize]);
                }
                combine(&flags)
            },
        )
    }

    pub fn union(args: &[&Fsa<S>]) -> Fsa<S> {
        Fsa::product(args, |f| f.iter().any(|&b| b))
    }

    pub fn intersection(args: &[&Fsa<S>]) -> Fsa<S> {
        Fsa::product(args, |f| f.iter().all(|&b| b))
    }

    /// `L(self) \ L(other)`.
    pub fn difference(&self, other: &Fsa<S>) -> Fsa<S> {
        Fsa::product(&[self, other], |f| f[0] && !f[1])
    }

    pub fn concat(&self, other: &Fsa<S>) -> Fsa<S> {
        nfa::Nfa::concat(&nfa::Nfa::from_dfa(self), &nfa::Nfa::from_dfa(other)).determinize()
    }

    pub fn star(&self) -> Fsa<S> {
        nfa::Nfa::from_dfa(self).star().determinize()
    }

    /// Adds symbols to the alphabet; every new symbol leads to rejection.
    pub fn with_symbols(&self, extra: &[S]) -> Fsa<S> {
        let mut symbols = self.symbols.clone();
        for s in extra {
            if !self.index.contains_key(s) {
                symbols.push(s.clone());
            }
        }
        if symbols.len() == self.symbols.len() {
            return self.clone();
        }
        // None stands for the (possibly new) sink
        Fsa::explore(
            symbols,
            Some(self.start),
            |q, s| q.and_then(|q| self.step(q, s)),
            |q| q.is_some_and(|q| self.accepting[q]),
        )
    }

    /// Minimal equivalent automaton, by partition refinement.
    pub fn minimize(&self) -> Fsa<S> {
        let n = self.num_states();
        let k = self.symbols.len();
        let mut class: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        let mut count = {
            let mut c = class.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        loop {
            let mut sigs: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = vec![0u32; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|si| class[self.target(q, si)]));
                let fresh = sigs.len() as u32;
                next[q] = *sigs.entry(sig).or_insert(fresh);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep = vec![usize::MAX; count];
        for (q, &c) in class.iter().enumerate() {
            if rep[c as usize] == usize::MAX {
                rep[c as usize] = q;
            }
        }
        Fsa::explore(
            self.symbols.clone(),
            class[self.start],
            |&c, s| class[self.step(rep[c as usize], s).expect("own symbol")],
            |&c| self.accepting[rep[c as usize]],
        )
    }

    /// Decides language equality against another automaton.
    pub fn equivalent(&self, other: &Fsa<S>) -> bool {
        Fsa::product(&[self, other], |f| f[0] != f[1]).is_empty()
    }
}

/// Applies a set operation: union and intersection take any number of
/// arguments, complement and star exactly one, concatenation at least one.
pub fn combine<S: Symbol>(op: CombineOp, args: &[&Fsa<S>]) -> Result<Fsa<S>, AutomataError> {
    let arity = |expected: &'static str| AutomataError::Arity { op, expected, got: args.len() };
    match op {
        CombineOp::Union | CombineOp::Intersection if args.is_empty() => Err(arity("at least 1")),
        CombineOp::Union => Ok(Fsa::union(args)),
        CombineOp::Intersection => Ok(Fsa::intersection(args)),
        CombineOp::Complement if args.len() == 1 => Ok(args[0].complement()),
        CombineOp::Star if args.len() == 1 => Ok(args[0].star()),
        CombineOp::Complement | CombineOp::Star => Err(arity("exactly 1")),
        CombineOp::Concat => {
            let (first, rest) = args.split_first().ok_or_else(|| arity("at least 1"))?;
            Ok(rest.iter().fold((*first).clone(), |acc, next| acc.concat(next)))
        }
    }
}
