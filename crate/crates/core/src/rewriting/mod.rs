//! Stacking structures and the prefix-rewriting engine.
//!
//! A structure is a prefix-closed set of normal forms `N` plus a stacking map
//! `φ(u, z)`. Normalization reads the input left to right, keeping a
//! certified normal-form prefix `u`. For each incoming letter `z`:
//! if `u` ends in `z⁻¹` the last letter is dropped, if `u·z ∈ N` it is
//! appended, and otherwise `z` is replaced by `φ(u, z)` in the pending input.

mod presentation;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::automata::Fsa;
use crate::words::{invert, Alphabet, Letter, Word, WordError};

pub use presentation::{canonical_relator, StackingPresentation};
pub use verify::{Axiom, EqualityOracle, Failure, VerificationReport};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("{0:?} is not a normal form of this structure")]
    NotANormalForm(String),
    #[error("letter {0:?} is not in the structure's alphabet")]
    UnknownLetter(char),
    #[error("step budget of {0} rewriting steps exceeded")]
    StepBudgetExceeded(u64),
    #[error("generator {0:?} already present")]
    DuplicateGenerator(char),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type StackingMap = Arc<dyn Fn(&[Letter], Letter) -> Word + Send + Sync>;
pub type Predicate = Arc<dyn Fn(&[Letter]) -> bool + Send + Sync>;

/// Membership test for the normal-form set.
#[derive(Clone)]
pub enum Recognizer {
    Automaton(Arc<Fsa<Letter>>),
    Predicate(Predicate),
}

impl Recognizer {
    pub fn accepts(&self, w: &[Letter]) -> bool {
        match self {
            Recognizer::Automaton(m) => m.contains(w),
            Recognizer::Predicate(p) => p(w),
        }
    }

    pub fn automaton(&self) -> Option<&Fsa<Letter>> {
        match self {
            Recognizer::Automaton(m) => Some(m),
            Recognizer::Predicate(_) => None,
        }
    }
}

/// A normal-form set with a bounded stacking map.
#[derive(Clone)]
pub struct StackingStructure {
    id: String,
    alphabet: Alphabet,
    recognizer: Recognizer,
    phi: StackingMap,
    bound: usize,
    step_budget: u64,
}

impl fmt::Debug for StackingStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StackingStructure")
            .field("id", &self.id)
            .field("alphabet", &self.alphabet)
            .field("bound", &self.bound)
            .finish()
    }
}

/// A word certified to be a normal form of a particular structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalWord {
    word: Word,
    structure_id: String,
}

impl NormalWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn structure_id(&self) -> &str {
        &self.structure_id
    }

    pub fn into_word(self) -> Word {
        self.word
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// A directed Cayley-graph edge: from the element `source` along `label`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub source: NormalWord,
    pub label: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// `u·z` was already a normal form.
    Extend,
    /// `u` ended in `z⁻¹`.
    Retract,
    /// `z` was replaced by `φ(u, z)`.
    Rewrite(Word),
}

/// One step of a normalization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub prefix: Word,
    pub letter: Letter,
    pub kind: EventKind,
    /// The rewrite that produced `letter`, or `None` for input letters.
    pub parent: Option<usize>,
}

impl TraceEvent {
    pub fn is_rewrite(&self) -> bool {
        matches!(self.kind, EventKind::Rewrite(_))
    }
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub result: NormalWord,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn rewrites(&self) -> usize {
        self.events.iter().filter(|e| e.is_rewrite()).count()
    }

    /// Indices of the events caused directly by event `i`.
    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (i + 1..self.events.len()).filter(move |&j| self.events[j].parent == Some(i))
    }
}

impl StackingStructure {
    pub fn new(
        id: impl Into<String>,
        alphabet: Alphabet,
        recognizer: Recognizer,
        phi: StackingMap,
        bound: usize,
    ) -> StackingStructure {
        StackingStructure {
            id: id.into(),
            alphabet,
            recognizer,
            phi,
            bound,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_step_budget(mut self, budget: u64) -> StackingStructure {
        self.step_budget = budget.max(1);
        self
    }

    /// The same normal forms with a different map, under a new id.
    pub fn with_map(&self, id: impl Into<String>, phi: StackingMap) -> StackingStructure {
        StackingStructure { id: id.into(), phi, ..self.clone() }
    }

    pub fn renamed(mut self, id: impl Into<String>) -> StackingStructure {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn recognizer(&self) -> &Recognizer {
        &self.recognizer
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        w.iter().all(|&l| self.alphabet.contains(l)) && self.recognizer.accepts(w)
    }

    pub fn certify(&self, w: Word) -> Result<NormalWord, RewriteError> {
        if self.is_normal(&w) {
            Ok(NormalWord { word: w, structure_id: self.id.clone() })
        } else {
            Err(RewriteError::NotANormalForm(w.to_string()))
        }
    }

    fn check_letter(&self, z: Letter) -> Result<(), RewriteError> {
        if self.alphabet.contains(z) {
            Ok(())
        } else {
            Err(RewriteError::UnknownLetter(z.as_char()))
        }
    }

    fn check_word(&self, w: &[Letter]) -> Result<(), RewriteError> {
        w.iter().try_for_each(|&z| self.check_letter(z))
    }

    /// `(u, z)` is a tree edge when `u·z` is normal or `u` ends in `z⁻¹`.
    pub fn is_tree_edge(&self, u: &[Letter], z: Letter) -> bool {
        u.last() == Some(&z.inverse()) || self.recognizer.accepts(&Word::from(u.to_vec()).push(z))
    }

    /// Raw stacking map, without certification.
    pub fn phi(&self, u: &[Letter], z: Letter) -> Word {
        (self.phi)(u, z)
    }

    /// `φ(u, z)` for a certified `u`.
    pub fn flow_apply(&self, u: &NormalWord, z: Letter) -> Result<Word, RewriteError> {
        if u.structure_id != self.id {
            return Err(RewriteError::NotANormalForm(u.word.to_string()));
        }
        self.check_letter(z)?;
        Ok(self.phi(&u.word, z))
    }

    pub fn normalize(&self, w: &[Letter]) -> Result<NormalWord, RewriteError> {
        self.run(w, |_| {}).map(|(nf, _)| nf)
    }

    /// Normal form plus the number of letters processed.
    pub fn normalize_counting(&self, w: &[Letter]) -> Result<(NormalWord, u64), RewriteError> {
        self.run(w, |_| {})
    }

    pub fn normalize_traced(&self, w: &[Letter]) -> Result<Trace, RewriteError> {
        let mut events = Vec::new();
        let (result, _) = self.run(w, |e| events.push(e))?;
        Ok(Trace { result, events })
    }

    pub fn word_problem(&self, w1: &[Letter], w2: &[Letter]) -> Result<bool, RewriteError> {
        Ok(self.normalize(w1)? == self.normalize(w2)?)
    }

    fn run<F: FnMut(TraceEvent)>(&self, w: &[Letter], mut emit: F) -> Result<(NormalWord, u64), RewriteError> {
        self.check_word(w)?;
        let fsa = self.recognizer.automaton();
        let mut u: Vec<Letter> = Vec::with_capacity(w.len());
        // automaton state after each prefix of u
        let mut states: Vec<usize> = fsa.map(|m| vec![m.start()]).unwrap_or_default();
        let mut pending: Vec<(Letter, Option<usize>)> = w.iter().rev().map(|&l| (l, None)).collect();
        let mut steps: u64 = 0;
        let mut next_id = 0usize;
        while let Some((z, parent)) = pending.pop() {
            steps += 1;
            if steps > self.step_budget {
                return Err(RewriteError::StepBudgetExceeded(self.step_budget));
            }
            let id = next_id;
            next_id += 1;
            if u.last() == Some(&z.inverse()) {
                emit(TraceEvent { prefix: Word::from(u.clone()), letter: z, kind: EventKind::Retract, parent });
                u.pop();
                states.pop();
                continue;
            }
            let extended = match fsa {
                Some(m) => m
                    .step(*states.last().expect("start state"), &z)
                    .filter(|&q| m.is_accepting(q)),
                None => {
                    u.push(z);
                    let ok = self.recognizer.accepts(&u);
                    u.pop();
                    ok.then_some(0)
                }
            };
            match extended {
                Some(q) => {
                    emit(TraceEvent { prefix: Word::from(u.clone()), letter: z, kind: EventKind::Extend, parent });
                    u.push(z);
                    if fsa.is_some() {
                        states.push(q);
                    }
                }
                None => {
                    let v = self.phi(&u, z);
                    self.check_word(&v)?;
                    pending.extend(v.iter().rev().map(|&l| (l, Some(id))));
                    emit(TraceEvent { prefix: Word::from(u.clone()), letter: z, kind: EventKind::Rewrite(v), parent });
                }
            }
        }
        Ok((NormalWord { word: Word::from(u), structure_id: self.id.clone() }, steps))
    }

    /// Every normal form of length at most `radius`, shortest first.
    pub fn normal_forms_up_to(&self, radius: usize) -> Vec<Word> {
        let letters = self.alphabet.letters();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for u in &layer {
                for &z in &letters {
                    if u.last() == Some(&z.inverse()) {
                        continue;
                    }
                    let uz = u.push(z);
                    if self.recognizer.accepts(&uz) {
                        next.push(uz);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Adds generators `z` with fixed images `φ'(u, z) = w_z` and
    /// `φ'(u, z⁻¹) = w_z⁻¹`; normal forms are unchanged.
    pub fn extend_generators(&self, newgens: &[(char, Word)]) -> Result<StackingStructure, RewriteError> {
        if newgens.is_empty() {
            return Ok(self.clone());
        }
        let names: Vec<char> = newgens.iter().map(|(z, _)| *z).collect();
        let alphabet = self.alphabet.extended(&names).map_err(|e| match e {
            WordError::DuplicateGenerator(c) => RewriteError::DuplicateGenerator(c),
            other => RewriteError::Word(other),
        })?;
        let mut images: Vec<(Letter, Word)> = Vec::new();
        for (z, wz) in newgens {
            self.check_word(wz)?;
            let l = Letter::new(*z).expect("validated generator");
            images.push((l, wz.clone()));
            images.push((l.inverse(), invert(wz)));
        }
        let bound = images.iter().map(|(_, w)| w.len()).fold(self.bound, usize::max);
        let old = self.phi.clone();
        let phi: StackingMap = Arc::new(move |u, z| match images.iter().find(|(l, _)| *l == z) {
            Some((_, w)) => w.clone(),
            None => old(u, z),
        });
        let id = format!("{}+{}", self.id, names.iter().collect::<String>());
        Ok(StackingStructure { id, alphabet, recognizer: self.recognizer.clone(), phi, bound, step_budget: self.step_budget })
    }
}
