//! BS(1,2) = ⟨a, t | t a t⁻¹ = a²⟩ from its finite complete rewriting system.

use std::sync::Arc;

use crate::automata::{from_regex, Fsa};
use crate::rewriting::{Recognizer, StackingMap, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

pub const BS12_NORMAL_FORMS: &str = "(T*|(T*at|)((|a)t)*)(a*|A*)";

pub fn bs12_alphabet() -> Alphabet {
    Alphabet::from_names("at")
}

pub fn bs12_nf_fsa() -> Fsa<Letter> {
    from_regex(BS12_NORMAL_FORMS, &bs12_alphabet()).expect("valid pattern").minimize()
}

/// Prefix form of the rules `aat → ta`, `At → atA`, `a^ε T → T a^{2ε}`.
fn bs12_phi(u: &[Letter], z: Letter) -> Word {
    let ends = |s: &str| u.ends_with(&Word::ascii(s));
    let out = match z.as_char() {
        't' if ends("aa") => "AAta",
        't' if ends("A") => "aatA",
        'T' if ends("a") => "ATaa",
        'T' if ends("A") => "aTAA",
        _ => return Word::letter(z),
    };
    Word::ascii(out)
}

pub fn bs12_structure() -> StackingStructure {
    let phi: StackingMap = Arc::new(bs12_phi);
    StackingStructure::new("bs12", bs12_alphabet(), Recognizer::Automaton(Arc::new(bs12_nf_fsa())), phi, 4)
}
