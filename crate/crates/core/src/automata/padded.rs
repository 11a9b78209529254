//! Padded triples: the synchronous encoding of word relations.

use std::fmt;
use std::str::FromStr;

use super::{AutomataError, Fsa};
use crate::words::Letter;

/// The padding character. It may never be a letter of an alphabet.
pub const PAD: char = '$';

/// One column of a padded word; `None` is the pad.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PaddedSymbol(pub [Option<Letter>; 3]);

impl fmt::Display for PaddedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: Option<Letter>| x.map_or(PAD, Letter::as_char);
        write!(f, "({},{},{})", c(self.0[0]), c(self.0[1]), c(self.0[2]))
    }
}

impl FromStr for PaddedSymbol {
    type Err = AutomataError;

    fn from_str(s: &str) -> Result<PaddedSymbol, AutomataError> {
        let bad = || AutomataError::SymbolNotInAlphabet(s.to_string());
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut out = [None; 3];
        for (slot, part) in out.iter_mut().zip(parts) {
            let mut chars = part.chars();
            let c = chars.next().ok_or_else(bad)?;
            if chars.next().is_some() {
                return Err(bad());
            }
            *slot = if c == PAD { None } else { Some(Letter::new(c).ok_or_else(bad)?) };
        }
        Ok(PaddedSymbol(out))
    }
}

/// Writes three words in parallel, padding the shorter ones with `$`.
pub fn pad_triple(u: &[Letter], z: &[Letter], v: &[Letter]) -> Vec<PaddedSymbol> {
    let n = u.len().max(z.len()).max(v.len());
    (0..n)
        .map(|j| PaddedSymbol([u.get(j).copied(), z.get(j).copied(), v.get(j).copied()]))
        .collect()
}

/// True iff no coordinate resumes after its first pad.
pub fn is_pad_stable(word: &[PaddedSymbol]) -> bool {
    let mut ended = [false; 3];
    for sym in word {
        for (slot, done) in sym.0.iter().zip(ended.iter_mut()) {
            match slot {
                None => *done = true,
                Some(_) if *done => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// Every triple over `letters ∪ {$}` except the all-pad one.
pub fn padded_alphabet(letters: &[Letter]) -> Vec<PaddedSymbol> {
    let mut opts: Vec<Option<Letter>> = letters.iter().copied().map(Some).collect();
    opts.push(None);
    let mut out = Vec::new();
    for &x in &opts {
        for &y in &opts {
            for &z in &opts {
                if x.is_some() || y.is_some() || z.is_some() {
                    out.push(PaddedSymbol([x, y, z]));
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Track {
    Dead,
    Live { q: usize, u_done: bool, pos: usize },
}

/// The padded language `{ pad(u, z, v) : u ∈ L(first) }` for a fixed letter
/// `z` and word `v`, over the padded alphabet of `letters`.
pub fn padded_product(first: &Fsa<Letter>, z: Letter, v: &[Letter], letters: &[Letter]) -> Fsa<PaddedSymbol> {
    let dead = first.dead_states();
    let cap = v.len().max(1);
    let start = if dead[first.start()] {
        Track::Dead
    } else {
        Track::Live { q: first.start(), u_done: false, pos: 0 }
    };
    Fsa::explore(
        padded_alphabet(letters),
        start,
        |t, sym| {
            let Track::Live { q, u_done, pos } = *t else { return Track::Dead };
            let want_z = if pos == 0 { Some(z) } else { None };
            let want_v = v.get(pos).copied();
            if sym.0[1] != want_z || sym.0[2] != want_v {
                return Track::Dead;
            }
            let (q, u_done) = match (sym.0[0], u_done) {
                (Some(_), true) => return Track::Dead,
                (None, _) if first.is_accepting(q) => (q, true),
                (None, _) => return Track::Dead,
                (Some(l), false) => match first.step(q, &l) {
                    Some(next) if !dead[next] => (next, false),
                    _ => return Track::Dead,
                },
            };
            Track::Live { q, u_done, pos: (pos + 1).min(cap) }
        },
        |t| matches!(*t, Track::Live { q, pos, .. } if pos >= cap && first.is_accepting(q)),
    )
}
