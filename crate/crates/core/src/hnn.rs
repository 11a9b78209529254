//! Britton normal forms and stacking structures for HNN extensions.
//!
//! Given a stacking structure for a base group `H`, transversals for
//! subgroups `A` and `B`, and an isomorphism `A → B` acting on generators,
//! [`hnn_stacking`] builds a stacking structure for `G = H *_φ` whose normal
//! forms are the Britton normal forms `tail · head`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::automata::{from_regex, Fsa};
use crate::rewriting::{Recognizer, StackingMap, StackingStructure};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnnError {
    #[error("{0:?} is not a Britton normal form")]
    NotBritton(String),
    #[error("subgroup decomposition failed validation: {0}")]
    OracleInconsistent(String),
    #[error("invalid HNN data: {0}")]
    InvalidData(String),
}

/// A Britton normal form split as `tail · head`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrittonWord {
    pub tail: Word,
    pub head: Word,
}

impl fmt::Display for BrittonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tail, self.head)
    }
}

/// Splits after the last stable letter, without checking normality.
pub fn split_at_last_stable(w: &[Letter], stable: Letter) -> (&[Letter], &[Letter]) {
    let cut = w.iter().rposition(|l| l.generator() == stable).map_or(0, |i| i + 1);
    w.split_at(cut)
}

/// `h ↦ (trans(h), subg(h))` with `trans · subg =_H h`.
pub type Decomposer = Arc<dyn Fn(&[Letter]) -> (Word, Word) + Send + Sync>;

#[derive(Clone)]
pub struct HnnData {
    pub base: StackingStructure,
    /// Name of the stable letter `s`.
    pub stable: char,
    /// Transversal `N_{H/A}` for `A` in `H`, a subset of the base normal forms.
    pub transversal_a: Arc<Fsa<Letter>>,
    /// Transversal `N_{H/B}` for `B` in `H`.
    pub transversal_b: Arc<Fsa<Letter>>,
    pub decompose_a: Decomposer,
    pub decompose_b: Decomposer,
    /// Pairs `(z, φ(z))` over an inverse-closed generating set `Z_A` of `A`.
    pub iso: Vec<(Letter, Letter)>,
    /// Radius of the base-group ball on which decompositions are validated.
    pub validation_radius: usize,
}

impl HnnData {
    fn stable_letter(&self) -> Letter {
        Letter::new(self.stable).expect("stable letter validated")
    }

    fn z_a(&self) -> Vec<Letter> {
        self.iso.iter().map(|p| p.0).collect()
    }

    fn z_b(&self) -> Vec<Letter> {
        self.iso.iter().map(|p| p.1).collect()
    }

    fn check_iso(&self) -> Result<(), HnnError> {
        let base = self.base.alphabet();
        if base.contains(self.stable_letter()) {
            return Err(HnnError::InvalidData(format!("stable letter {} is a base generator", self.stable)));
        }
        for &(a, b) in &self.iso {
            if !base.contains(a) || !base.contains(b) {
                return Err(HnnError::InvalidData(format!("pair ({a}, {b}) leaves the base alphabet")));
            }
            if !self.iso.contains(&(a.inverse(), b.inverse())) {
                return Err(HnnError::InvalidData(format!("pair ({a}, {b}) has no inverse pair")));
            }
        }
        let mut zb = self.z_b();
        zb.sort();
        zb.dedup();
        if zb.len() != self.iso.len() {
            return Err(HnnError::InvalidData("the isomorphism is not injective on generators".into()));
        }
        Ok(())
    }

    fn validate_one(&self, h: &Word, which: char) -> Result<(Word, Word), HnnError> {
        let (decompose, transversal, gens) = match which {
            'A' => (&self.decompose_a, &self.transversal_a, self.z_a()),
            _ => (&self.decompose_b, &self.transversal_b, self.z_b()),
        };
        let (trans, subg) = decompose(h);
        let bad = |why: &str| HnnError::OracleInconsistent(format!("{which}-decomposition of {h:?}: {why}"));
        if !transversal.contains(&trans) {
            return Err(bad(&format!("{trans:?} is not in the transversal")));
        }
        if !subg.iter().all(|l| gens.contains(l)) || !subg.is_freely_reduced() {
            return Err(bad(&format!("{subg:?} is not a reduced subgroup word")));
        }
        let joined = trans.concat(&subg);
        match self.base.normalize(&joined) {
            Ok(nf) if nf.word() == h => Ok((trans, subg)),
            Ok(nf) => Err(bad(&format!("{joined:?} normalizes to {nf}"))),
            Err(e) => Err(bad(&e.to_string())),
        }
    }

    /// Decomposes `h ∈ N_H` as `trans · subg`, checking the answer with the
    /// base structure. `which` is `'A'` or `'B'`.
    pub fn decompose_validate(&self, h: &Word, which: char) -> Result<(Word, Word), HnnError> {
        if !self.base.is_normal(h) {
            return Err(HnnError::OracleInconsistent(format!("{h:?} is not a base normal form")));
        }
        self.validate_one(h, which)
    }

    fn letters(&self) -> Vec<Letter> {
        let mut letters = self.base.alphabet().letters();
        let s = self.stable_letter();
        letters.extend([s, s.inverse()]);
        letters
    }

    /// The tail language `(N_{H/A} s⁻¹ ∪ N_{H/B} s)*` without pinches.
    pub fn tail_fsa(&self) -> Fsa<Letter> {
        let letters = self.letters();
        let s = self.stable_letter();
        let one = |l: Letter| Fsa::finite_language(letters.clone(), &[vec![l]]);
        let block = Fsa::union(&[
            &self.transversal_a.concat(&one(s.inverse())),
            &self.transversal_b.concat(&one(s)),
        ]);
        block.star().difference(&self.pinch_fsa()).minimize()
    }

    fn pinch_fsa(&self) -> Fsa<Letter> {
        let alphabet = self.base.alphabet().extended(&[self.stable]).expect("stable letter is fresh");
        let s = self.stable;
        let big = s.to_ascii_uppercase();
        from_regex(&format!(".*({s}{big}|{big}{s}).*"), &alphabet).expect("valid pattern")
    }

    /// The Britton normal forms `N_G`.
    pub fn normal_form_fsa(&self) -> Result<Fsa<Letter>, HnnError> {
        let nh = self
            .base
            .recognizer()
            .automaton()
            .ok_or_else(|| HnnError::InvalidData("base normal forms must be given by an automaton".into()))?;
        let tails = self.tail_fsa();
        Ok(tails.concat(nh).difference(&self.pinch_fsa()).minimize())
    }

    /// Splits a Britton normal form into tail and head.
    pub fn split_tail_head(&self, w: &[Letter]) -> Result<BrittonWord, HnnError> {
        let s = self.stable_letter();
        let bad = || HnnError::NotBritton(Word::from(w.to_vec()).to_string());
        let mut prev: Option<Letter> = None;
        let mut start = 0;
        for (i, &l) in w.iter().enumerate() {
            if l.generator() != s {
                if !self.base.alphabet().contains(l) {
                    return Err(bad());
                }
                continue;
            }
            let h = &w[start..i];
            let transversal = if l == s { &self.transversal_b } else { &self.transversal_a };
            if !transversal.contains(h) || (h.is_empty() && prev == Some(l.inverse())) {
                return Err(bad());
            }
            prev = Some(l);
            start = i + 1;
        }
        if !self.base.is_normal(&w[start..]) {
            return Err(bad());
        }
        Ok(BrittonWord { tail: Word::from(w[..start].to_vec()), head: Word::from(w[start..].to_vec()) })
    }
}

/// The stacking structure of the HNN extension.
pub fn hnn_stacking(d: &HnnData) -> Result<StackingStructure, HnnError> {
    d.check_iso()?;
    for h in d.base.normal_forms_up_to(d.validation_radius) {
        d.validate_one(&h, 'A')?;
        d.validate_one(&h, 'B')?;
    }
    let nf = d.normal_form_fsa()?;
    let s = d.stable_letter();
    let data = d.clone();
    let phi: StackingMap = Arc::new(move |w, x| {
        let (_, head) = split_at_last_stable(w, s);
        if x.generator() != s {
            return data.base.phi(head, x);
        }
        let (decompose, forward) = if x == s { (&data.decompose_b, false) } else { (&data.decompose_a, true) };
        let (_, subg) = decompose(head);
        let Some(&last) = subg.last() else { return Word::letter(x) };
        // b⁻¹ s φ⁻¹(b) for x = s, a⁻¹ s⁻¹ φ(a) for x = s⁻¹
        let partner = data
            .iso
            .iter()
            .find_map(|&(a, b)| match forward {
                true if a == last => Some(b),
                false if b == last => Some(a),
                _ => None,
            })
            .expect("subgroup letters come from the isomorphism");
        Word::from(vec![last.inverse(), x, partner])
    });
    let alphabet = d.base.alphabet().extended(&[d.stable]).map_err(|e| HnnError::InvalidData(e.to_string()))?;
    let bound = d.base.bound().max(3);
    Ok(StackingStructure::new(
        format!("{}*{}", d.base.id(), d.stable),
        alphabet,
        Recognizer::Automaton(Arc::new(nf)),
        phi,
        bound,
    )
    .with_step_budget(d.base.step_budget()))
}
