use std::sync::Arc;

use stacker::automata::from_regex;
use stacker::hnn::{hnn_stacking, HnnData, HnnError};
use stacker::rewriting::{Recognizer, StackingStructure};
use stacker::words::{words_up_to, Alphabet, Letter, Word};

fn l(c: char) -> Letter {
    Letter::new(c).unwrap()
}

fn integers() -> StackingStructure {
    let a = Alphabet::from_names("a");
    let nf = from_regex("a*|A*", &a).unwrap();
    StackingStructure::new("z", a, Recognizer::Automaton(Arc::new(nf)), Arc::new(|_, z| Word::letter(z)), 1)
}

/// Z² as the HNN extension of Z = <a> with s a s⁻¹ = a.
fn z2_data() -> HnnData {
    let a = Alphabet::from_names("a");
    let trivial = Arc::new(from_regex("", &a).unwrap());
    let whole: stacker::hnn::Decomposer = Arc::new(|h: &[Letter]| (Word::empty(), Word::from(h.to_vec())));
    HnnData {
        base: integers(),
        stable: 's',
        transversal_a: trivial.clone(),
        transversal_b: trivial,
        decompose_a: whole.clone(),
        decompose_b: whole,
        iso: vec![(l('a'), l('a')), (l('A'), l('A'))],
        validation_radius: 4,
    }
}

fn exponents(w: &[Letter]) -> (i64, i64) {
    w.iter().fold((0, 0), |(x, y), c| match c.generator().as_char() {
        'a' => (x + c.sign(), y),
        _ => (x, y + c.sign()),
    })
}

#[test]
fn z2_normal_forms_biject_with_the_lattice() {
    let g = hnn_stacking(&z2_data()).unwrap();
    assert_eq!(g.id(), "z*s");
    let mut seen = std::collections::HashMap::new();
    for w in words_up_to(&g.alphabet().letters(), 6) {
        let nf = g.normalize(&w).unwrap().into_word();
        assert_eq!(exponents(&nf), exponents(&w), "{w} -> {nf}");
        assert_eq!(seen.entry(exponents(&w)).or_insert_with(|| nf.clone()), &nf);
    }
    // stable letters come first, then the head in <a>
    assert_eq!(g.normalize(&Word::ascii("asAsa")).unwrap().to_string(), "ssa");
}

#[test]
fn z2_flow_axioms() {
    let g = hnn_stacking(&z2_data()).unwrap();
    let oracle = |x: &[Letter], y: &[Letter]| exponents(x) == exponents(y);
    let r = g.verify_flow(5, Some(&oracle));
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.max_phi_len <= 3);
}

#[test]
fn bad_decompositions_are_caught() {
    let mut d = z2_data();
    d.decompose_b = Arc::new(|h: &[Letter]| (Word::from(h.to_vec()), Word::empty()));
    assert!(matches!(hnn_stacking(&d), Err(HnnError::OracleInconsistent(_))));
    let mut d = z2_data();
    d.iso = vec![(l('a'), l('a'))];
    assert!(matches!(hnn_stacking(&d), Err(HnnError::InvalidData(_))));
}
