//! Baumslag–Gersten group ⟨a, t, s | t a t⁻¹ = a², s a s⁻¹ = t⟩ as an HNN
//! extension of BS(1,2) with `A = ⟨a⟩`, `B = ⟨t⟩`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::affine::{oracle_bs12, AffineElement, Dyadic};
use super::bs12::{bs12_alphabet, bs12_structure, BS12_NORMAL_FORMS};
use crate::automata::{from_regex, Fsa};
use crate::hnn::{hnn_stacking, HnnData, HnnError};
use crate::rewriting::{RewriteError, StackingStructure};
use crate::words::{Letter, Word};

pub const BG_TRANSVERSAL_A: &str = "T*|(T*at|)((|a)t)*";
pub const BG_TRANSVERSAL_B: &str = "a*|A*|TT*(a(aa)*|A(AA)*)";

fn lang(pattern: &str) -> Fsa<Letter> {
    from_regex(pattern, &bs12_alphabet()).expect("valid pattern").minimize()
}

fn nh_and(pattern: &str) -> Fsa<Letter> {
    Fsa::intersection(&[&lang(BS12_NORMAL_FORMS), &lang(pattern)]).minimize()
}

/// Base normal forms whose `⟨a⟩`-part ends in `a^ε`.
pub fn l_a(epsilon: i64) -> Fsa<Letter> {
    nh_and(if epsilon > 0 { ".*a" } else { ".*A" })
}

/// Base normal forms whose `⟨t⟩`-part is a positive power of `t`.
pub fn l_t_pos() -> Fsa<Letter> {
    nh_and(".*t.*")
}

/// Base normal forms whose `⟨t⟩`-part is a negative power of `t`.
pub fn l_t_neg() -> Fsa<Letter> {
    lang("TT*((aa)*|(AA)*)")
}

fn letter(c: char) -> Letter {
    Letter::new(c).expect("ascii letter")
}

fn decompose_a(h: &[Letter]) -> (Word, Word) {
    let cut = match h.last() {
        Some(&l) if l.generator() == letter('a') => h.iter().rposition(|&x| x != l).map_or(0, |i| i + 1),
        _ => h.len(),
    };
    (Word::from(h[..cut].to_vec()), Word::from(h[cut..].to_vec()))
}

fn decompose_b(h: &[Letter]) -> (Word, Word) {
    let e = oracle_bs12(h);
    let num = e.offset.numerator().to_i64().expect("offset fits in i64");
    let i = e.offset.denominator_exp();
    let trans = Word::power(letter('T'), i64::from(i)).concat(&Word::power(letter('a'), num));
    (trans, Word::power(letter('t'), e.scale_exp + i64::from(i)))
}

pub fn bg_data() -> HnnData {
    HnnData {
        base: bs12_structure(),
        stable: 's',
        transversal_a: Arc::new(lang(BG_TRANSVERSAL_A)),
        transversal_b: Arc::new(lang(BG_TRANSVERSAL_B)),
        decompose_a: Arc::new(decompose_a),
        decompose_b: Arc::new(decompose_b),
        iso: vec![(letter('a'), letter('t')), (letter('A'), letter('T'))],
        validation_radius: 6,
    }
}

pub fn bg_structure() -> Result<StackingStructure, HnnError> {
    hnn_stacking(&bg_data()).map(|s| s.renamed("bg"))
}

/// Britton-reduced form of a word: base elements separated by stable letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrittonReduced {
    pub pieces: Vec<AffineElement>,
    pub signs: Vec<i8>,
}

impl BrittonReduced {
    pub fn is_identity(&self) -> bool {
        self.signs.is_empty() && self.pieces[0].is_identity()
    }
}

/// Removes pinches `s h s⁻¹` (`h ∈ ⟨a⟩`) and `s⁻¹ h s` (`h ∈ ⟨t⟩`) until none
/// remain. `budget` bounds the number of letters processed.
pub fn britton_reduce(w: &[Letter], budget: u64) -> Result<BrittonReduced, RewriteError> {
    if w.len() as u64 > budget {
        return Err(RewriteError::StepBudgetExceeded(budget));
    }
    let mut pieces = vec![AffineElement::identity()];
    let mut signs: Vec<i8> = Vec::new();
    for &l in w {
        if l.generator() != letter('s') {
            let g = AffineElement::of_letter(l).ok_or(RewriteError::UnknownLetter(l.as_char()))?;
            let top = pieces.last_mut().expect("nonempty");
            *top = &*top * &g;
            continue;
        }
        let eps = l.sign() as i8;
        let top = pieces.last().expect("nonempty");
        let pinched = match signs.last() {
            Some(&prev) if prev == -eps => match prev {
                1 => top.as_a_power().map(|k| AffineElement::new(k, Dyadic::zero())),
                _ => top.as_t_power().map(|k| AffineElement::new(0, Dyadic::integer(k))),
            },
            _ => None,
        };
        match pinched {
            Some(h) => {
                pieces.pop();
                signs.pop();
                let top = pieces.last_mut().expect("nonempty");
                *top = &*top * &h;
            }
            None => {
                signs.push(eps);
                pieces.push(AffineElement::identity());
            }
        }
    }
    Ok(BrittonReduced { pieces, signs })
}

/// Decides equality in the Baumslag–Gersten group by Britton's lemma.
pub fn oracle_bg(w1: &[Letter], w2: &[Letter]) -> Result<bool, RewriteError> {
    let joined = Word::from(w1.to_vec()).concat(&Word::from(w2.to_vec()).invert());
    Ok(britton_reduce(&joined, crate::rewriting::DEFAULT_STEP_BUDGET)?.is_identity())
}

/// Sequence of stable-letter signs in the reduced form, plus the base
/// element when there are none; equal elements share it.
pub fn britton_signature(w: &[Letter]) -> Result<(Vec<i8>, Option<AffineElement>), RewriteError> {
    let r = britton_reduce(w, crate::rewriting::DEFAULT_STEP_BUDGET)?;
    let base = r.signs.is_empty().then(|| r.pieces[0].clone());
    Ok((r.signs, base))
}

/// Groups words by element, using normal forms, and checks the grouping
/// against [`oracle_bg`]. Returns the mismatches found.
pub fn compare_with_oracle(s: &StackingStructure, words: &[Word]) -> Result<Vec<String>, RewriteError> {
    let mut classes: HashMap<Word, Word> = HashMap::new();
    let mut mismatches = Vec::new();
    for w in words {
        let nf = s.normalize(w)?.into_word();
        match classes.get(&nf) {
            Some(rep) => {
                if !oracle_bg(rep, w)? {
                    mismatches.push(format!("{rep} and {w} share a normal form but differ"));
                }
            }
            None => {
                if !oracle_bg(&nf, w)? {
                    mismatches.push(format!("{w} differs from its normal form {nf}"));
                }
                classes.insert(nf, w.clone());
            }
        }
    }
    let mut buckets: HashMap<_, Vec<&Word>> = HashMap::new();
    for nf in classes.keys() {
        buckets.entry(britton_signature(nf)?).or_default().push(nf);
    }
    for bucket in buckets.values() {
        for (i, x) in bucket.iter().enumerate() {
            for y in &bucket[i + 1..] {
                if oracle_bg(x, y)? {
                    mismatches.push(format!("distinct normal forms {x} and {y} are equal"));
                }
            }
        }
    }
    mismatches.sort();
    Ok(mismatches)
}
