use std::collections::BTreeSet;

use super::{RewriteError, StackingStructure};
use crate::words::{free_reduce, invert, shortlex_cmp, Letter, Word};

/// Relators `φ(u, z)·z⁻¹` collected over a ball of normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackingPresentation {
    pub radius: usize,
    pub relators: BTreeSet<Word>,
    /// True when the ball of radius `radius - 1` already produced every relator.
    pub stabilized: bool,
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut v = free_reduce(w).into_letters();
    while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
        v.pop();
        v.remove(0);
    }
    Word::from(v)
}

/// Representative of a relator's class under free and cyclic reduction,
/// rotation and inversion: the shortlex-least rotation of `r` or `r⁻¹`.
/// Returns `None` for relators that reduce to the empty word.
pub fn canonical_relator(r: &[Letter]) -> Option<Word> {
    let c = cyclic_reduce(r);
    if c.is_empty() {
        return None;
    }
    let n = c.len();
    let inv = invert(&c);
    (0..n)
        .flat_map(|k| {
            let rot = |w: &Word| -> Word { w[k..].iter().chain(&w[..k]).copied().collect() };
            [rot(&c), rot(&inv)]
        })
        .min_by(|a, b| shortlex_cmp(a, b))
}

impl StackingStructure {
    fn relators_within(&self, radius: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for u in self.normal_forms_up_to(radius) {
            for z in self.alphabet.letters() {
                if self.is_tree_edge(&u, z) {
                    continue;
                }
                let r = self.phi(&u, z).concat(&[z.inverse()]);
                if let Some(c) = canonical_relator(&r) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// The stacking relators seen from normal forms of length `≤ radius`.
    pub fn stacking_presentation(&self, radius: usize) -> Result<StackingPresentation, RewriteError> {
        let radius = radius.max(1);
        let relators = self.relators_within(radius);
        let previous = self.relators_within(radius - 1);
        Ok(StackingPresentation { radius, stabilized: previous == relators, relators })
    }
}
