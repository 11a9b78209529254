//! The automaton for heads `a^{α_0} t a^{α_1} ⋯ t a^{α_l} t⁻¹` whose
//! alternating coefficient sum is a given residue.

use crate::automata::Fsa;
use crate::laurent::Modulus;
use crate::words::{Alphabet, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum State {
    Init,
    Fail,
    /// `(sum so far, seen t⁻¹, sign of the current block, a's in the current block)`
    Run { sum: u32, closed: bool, sign: i8, run: u32 },
}

/// Accepts `u` iff `u` starts with `a`, has no `a^p` or `t t⁻¹` factor, ends
/// in its only `t⁻¹`, and `p_u(-1) ≡ δη (mod p)`.
///
/// # Panics
/// If `p` is infinite.
pub fn ntilde_fsa(p: Modulus, delta: i64, eta: i64) -> Fsa<Letter> {
    let Modulus::Finite(q) = p else { panic!("the residue automaton needs a finite modulus") };
    let target = (delta * eta).rem_euclid(i64::from(q)) as u32;
    let symbols = Alphabet::from_names("at").letters().into_iter().filter(|l| l.as_char() != 'A').collect();
    let add = |sum: u32, sign: i8, run: u32| {
        let v = i64::from(sum) + i64::from(sign) * i64::from(run);
        v.rem_euclid(i64::from(q)) as u32
    };
    Fsa::explore(
        symbols,
        State::Init,
        |st, l| match (*st, l.as_char()) {
            (State::Init, 'a') => State::Run { sum: 0, closed: false, sign: 1, run: 1 },
            (State::Run { sum, closed: false, sign, run }, 'a') if run + 1 < q => {
                State::Run { sum, closed: false, sign, run: run + 1 }
            }
            (State::Run { sum, closed: false, sign, run }, 't') => {
                State::Run { sum: add(sum, sign, run), closed: false, sign: -sign, run: 0 }
            }
            (State::Run { sum, closed: false, sign, run }, 'T') if run > 0 => {
                State::Run { sum: add(sum, sign, run), closed: true, sign: -sign, run: 0 }
            }
            _ => State::Fail,
        },
        |st| matches!(*st, State::Run { sum, closed: true, run: 0, .. } if sum == target),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    #[test]
    fn examples() {
        let p2 = Modulus::Finite(2);
        let m = ntilde_fsa(p2, 1, 1);
        assert!(!m.contains(&Word::ascii("t")));
        assert!(m.contains(&Word::ascii("aT")));
        assert!(!m.contains(&Word::ascii("ataT")));
        assert!(!m.contains(&Word::ascii("attaT")));
        assert!(m.contains(&Word::ascii("atataT")));
        assert!(!m.contains(&Word::ascii("aTT")));
        let m3 = ntilde_fsa(Modulus::Finite(3), -1, 1);
        assert!(m3.contains(&Word::ascii("ataaT")));
        assert!(!m3.contains(&Word::ascii("aaaT")));
    }
}
