//! A synchronous automaton for the graph of the `G_p` stacking map, `p`
//! finite, built piece by piece from regular languages of normal forms.

use rayon::prelude::*;

use super::gp::{gp_alphabet, head_fsa, nf_fsa, tail_fsa, GpError};
use super::ntilde::ntilde_fsa;
use crate::automata::{from_regex, padded_product, Fsa, PaddedSymbol};
use crate::laurent::Modulus;
use crate::words::{Letter, Word};

/// One piece: normal forms `K`, a letter `z` and the fixed image `v`.
struct Piece {
    index: usize,
    domain: Fsa<Letter>,
    z: Letter,
    v: Word,
}

struct Languages {
    p: u32,
    letters: Vec<Letter>,
    nf: Fsa<Letter>,
    tail: Fsa<Letter>,
    head: Fsa<Letter>,
}

impl Languages {
    fn re(&self, pattern: &str) -> Fsa<Letter> {
        from_regex(pattern, &gp_alphabet()).expect("valid pattern")
    }

    fn nf_and(&self, pattern: &str) -> Fsa<Letter> {
        Fsa::intersection(&[&self.nf, &self.re(pattern)]).minimize()
    }

    /// Heads whose t-exponent sum `m` has `(-1)^{m+1} = η`.
    fn m_eta(&self, eta: i64) -> Fsa<Letter> {
        let odd = eta == 1;
        let parity = Fsa::explore(
            self.letters.clone(),
            false,
            |&par, l| par ^ (l.generator().as_char() == 't'),
            |&par| par == odd,
        );
        Fsa::intersection(&[&self.head, &parity]).minimize()
    }

    /// Heads with `p_u(-1) ≡ δη` ending in `a t⁻¹ t⁻¹*`.
    fn n_delta_eta(&self, delta: i64, eta: i64) -> Fsa<Letter> {
        let p = Modulus::Finite(self.p);
        let core = |d: i64| ntilde_fsa(p, d, eta).with_symbols(&self.letters);
        let tail_t = self.re("T*");
        let even = self.re("(tt)*|(TT)*").concat(&core(delta)).concat(&tail_t);
        let odd = self.re("t(tt)*|T(TT)*").concat(&core(-delta)).concat(&tail_t);
        Fsa::intersection(&[&Fsa::union(&[&even, &odd]), &self.head]).minimize()
    }
}

fn w(s: &str) -> Word {
    Word::ascii(s)
}

fn a_pow(k: i64) -> Word {
    Word::power(Letter::new('a').expect("ascii"), k)
}

fn pieces(p: u32) -> Vec<Piece> {
    let modulus = Modulus::Finite(p);
    let letters = gp_alphabet().letters();
    let lang = Languages { p, letters, nf: nf_fsa(modulus), tail: tail_fsa(modulus), head: head_fsa(modulus) };
    let l = |c: char| Letter::new(c).expect("ascii");
    let top = "a".repeat(p as usize - 1);
    let q = i64::from(p) - 1;
    let mut out = Vec::new();
    let mut push = |index: usize, domain: Fsa<Letter>, z: Letter, v: Word| out.push(Piece { index, domain, z, v });

    for z in ['t', 'T'] {
        push(1, lang.nf.clone(), l(z), w(&z.to_string()));
    }
    let tail_tinv = lang.tail.concat(&lang.re("T*"));
    let short_run = lang.re(".*a").difference(&lang.re(&format!(".*{top}")));
    let after_t = Fsa::union(&[&tail_tinv, &lang.re(".*t")]);
    let free_a = Fsa::union(&[&after_t, &short_run]);
    push(2, Fsa::intersection(&[&lang.nf, &free_a]).minimize(), l('a'), w("a"));
    push(3, lang.nf_and(&format!(".*{top}")), l('a'), a_pow(-q));
    push(4, lang.nf_and(".*a"), l('A'), w("A"));
    push(5, Fsa::intersection(&[&lang.nf, &after_t]).minimize(), l('A'), a_pow(q));
    for (z, v) in [('a', "tATataT"), ('A', "tATAtaT")] {
        push(6, lang.nf_and(".*aT"), l(z), w(v));
    }
    let deep = lang.re(".*a[aAtT]*TT");
    for (z, delta) in [('a', 1), ('A', -1)] {
        for eta in [1, -1] {
            let m = lang.m_eta(eta);
            let n = lang.n_delta_eta(delta, eta);
            let stable = lang.tail.concat(&Fsa::intersection(&[&m, &n]));
            let moving = lang.tail.concat(&m.difference(&n));
            let x = |k: i64| a_pow(k * delta);
            let v7 = w("t").concat(&x(-1)).concat(&w("Ts")).concat(&x(1)).concat(&w("S"));
            let e = |k: i64| a_pow(k * eta);
            let v8 = w("t").concat(&e(-1)).concat(&w("T")).concat(&x(1)).concat(&w("t")).concat(&e(1)).concat(&w("T"));
            push(7, Fsa::intersection(&[&deep, &stable]).minimize(), l(z), v7);
            push(8, Fsa::intersection(&[&deep, &moving]).minimize(), l(z), v8);
        }
    }
    push(9, lang.tail.clone(), l('S'), w("S"));
    for (d, v) in [("t", "TSt"), ("T", "tST")] {
        push(10, lang.nf_and(&format!(".*{d}")), l('S'), w(v));
    }
    push(11, lang.nf_and(".*a"), l('S'), w("ASataT"));
    let tail_a = lang.tail.concat(&lang.re("a*"));
    push(12, Fsa::intersection(&[&lang.nf, &tail_a]).minimize(), l('s'), w("s"));
    for (d, v) in [("t", "Tst"), ("T", "tsT")] {
        push(13, lang.nf_and(&format!(".*{d}")), l('s'), w(v));
    }
    for alpha in 1..=q {
        let run = "a".repeat(alpha as usize);
        let x = |k: i64| a_pow(k * alpha);
        let v14 = x(-1).concat(&w("T")).concat(&x(-1)).concat(&w("s")).concat(&x(1)).concat(&w("t"));
        let v15 = x(-1).concat(&w("t")).concat(&x(-1)).concat(&w("sT")).concat(&x(1));
        push(14, lang.nf_and(&format!(".*t{run}")), l('s'), v14);
        push(15, lang.nf_and(&format!(".*T{run}")), l('s'), v15);
    }
    out
}

fn finite(p: Modulus) -> Result<u32, GpError> {
    match p {
        Modulus::Finite(q) if q >= 2 => Ok(q),
        Modulus::Finite(q) => Err(GpError::InvalidModulus(u64::from(q))),
        Modulus::Infinite => Err(GpError::UnsupportedForInfiniteP),
    }
}

fn assemble(parts: &[&Piece]) -> Fsa<PaddedSymbol> {
    let letters = gp_alphabet().letters();
    let fsas: Vec<Fsa<PaddedSymbol>> =
        parts.par_iter().map(|pc| padded_product(&pc.domain, pc.z, &pc.v, &letters)).collect();
    let refs: Vec<&Fsa<PaddedSymbol>> = fsas.iter().collect();
    Fsa::union(&refs).minimize()
}

/// Piece number `index` (1 to 15) of the graph on its own.
pub fn graph_phi_piece(p: Modulus, index: usize) -> Result<Fsa<PaddedSymbol>, GpError> {
    let q = finite(p)?;
    if !(1..=15).contains(&index) {
        return Err(GpError::NoSuchPiece(index));
    }
    let all = pieces(q);
    let chosen: Vec<&Piece> = all.iter().filter(|pc| pc.index == index).collect();
    Ok(assemble(&chosen))
}

/// The union of all fifteen pieces: accepts `pad(u, z, v)` iff `u` is a
/// normal form and `v = φ(u, z)`.
pub fn graph_phi_fsa(p: Modulus) -> Result<Fsa<PaddedSymbol>, GpError> {
    let q = finite(p)?;
    let all = pieces(q);
    Ok(assemble(&all.iter().collect::<Vec<_>>()))
}
