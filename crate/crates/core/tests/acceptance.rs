//! Acceptance sweeps. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::HashMap;
use std::hash::Hash;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use stacker::automata::pad_triple;
use stacker::diagrams::{build_diagram, check_diagram, expected_boundary};
use stacker::groups::bg::compare_with_oracle;
use stacker::groups::gp::{descent_violations, tail_fsa};
use stacker::groups::*;
use stacker::laurent::{poly_of_head, Modulus};
use stacker::rewriting::{StackingStructure, DEFAULT_STEP_BUDGET};
use stacker::words::{free_reduce, words_up_to, Letter, Word};

const SEED: u64 = 20_160_501;
const INF_STEP_BUDGET: u64 = 100_000_000;
const P2: Modulus = Modulus::Finite(2);
const P3: Modulus = Modulus::Finite(3);

fn random_words(s: &StackingStructure, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let letters = s.alphabet().letters();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_len);
            Word::from((0..n).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<_>>())
        })
        .collect()
}

/// Checks that normal forms and oracle values determine each other.
fn bijection<E: Eq + Hash + Clone + std::fmt::Display>(pairs: &[(Word, Word, E)], bad: &mut Vec<String>) {
    let mut by_nf: HashMap<&Word, &E> = HashMap::new();
    let mut by_elt: HashMap<&E, &Word> = HashMap::new();
    for (w, nf, e) in pairs {
        if *by_nf.entry(nf).or_insert(e) != e {
            bad.push(format!("{w}: normal form {nf} shared by distinct elements"));
        }
        if *by_elt.entry(e).or_insert(nf) != nf {
            bad.push(format!("{w}: element {e} has two normal forms"));
        }
    }
}

type CellCheck<'a> = dyn Fn(&Word) -> bool + Sync + 'a;

struct Outcome {
    bad: Vec<String>,
    detail: String,
}

fn report(n: usize, name: &str, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let secs = start.elapsed().as_secs_f64();
    let ok = out.bad.is_empty();
    println!("{} {n}. {name}: {} ({secs:.1} s)", if ok { "PASS" } else { "FAIL" }, out.detail);
    for b in out.bad.iter().take(5) {
        println!("     {b}");
    }
    ok
}

fn bs12_equivalence() -> Outcome {
    let s = bs12_structure();
    let words: Vec<Word> = words_up_to(&s.alphabet().letters(), 8).collect();
    let mut bad = Vec::new();
    let pairs: Vec<_> = words
        .par_iter()
        .map(|w| match s.normalize(w) {
            Ok(nf) => Ok((w.clone(), nf.into_word(), oracle_bs12(w))),
            Err(e) => Err(format!("{w}: {e}")),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .filter_map(|r| r.map_err(|e| bad.push(e)).ok())
        .collect();
    bijection(&pairs, &mut bad);
    Outcome { bad, detail: format!("{} words up to length 8", words.len()) }
}

fn bg_equivalence() -> Outcome {
    let g = bg_structure().expect("bg data validates");
    let mut words: Vec<Word> = words_up_to(&g.alphabet().letters(), 5).collect();
    let exhaustive = words.len();
    words.extend(random_words(&g, 10_000, 12, SEED));
    let bad = compare_with_oracle(&g, &words).unwrap_or_else(|e| vec![e.to_string()]);
    Outcome { bad, detail: format!("{exhaustive} exhaustive + 10000 random words") }
}

/// Criterion 3 with the descent counts for criterion 9 on the side.
fn gp_equivalence(descent: &mut Outcome) -> Outcome {
    let mut bad = Vec::new();
    let mut deep = 0;
    let mut parts = Vec::new();
    for (p, words) in [
        (P2, words_up_to(&gp_structure(P2).unwrap().alphabet().letters(), 7).collect::<Vec<_>>()),
        (P3, random_words(&gp_structure(P3).unwrap(), 100_000, 10, SEED + 3)),
        (Modulus::Infinite, random_words(&gp_structure(Modulus::Infinite).unwrap(), 100_000, 10, SEED + 4)),
    ] {
        let finite = matches!(p, Modulus::Finite(_));
        // some short words need a few million steps at p = inf
        let budget = if finite { DEFAULT_STEP_BUDGET } else { INF_STEP_BUDGET };
        let g = gp_structure(p).unwrap().with_step_budget(budget);
        let results: Vec<_> = words
            .par_iter()
            .map(|w| {
                let trace = g.normalize_traced(w).map_err(|e| format!("{w}: {e}"))?;
                let d = if finite { descent_violations(&trace, p) } else { (Vec::new(), 0) };
                Ok(((w.clone(), trace.result.into_word(), oracle_gp(p, w)), d))
            })
            .collect();
        let mut pairs = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok((pair, (v, n))) => {
                    pairs.push(pair);
                    descent.bad.extend(v);
                    deep += n;
                }
                Err(e) => bad.push(e),
            }
        }
        bijection(&pairs, &mut bad);
        parts.push(format!("p={p}: {}", pairs.len()));
    }
    descent.detail = format!("{deep} deep rewrites checked (p = 2, 3)");
    parts.push(format!("step budget {INF_STEP_BUDGET} at p=inf"));
    Outcome { bad, detail: parts.join(", ") }
}

fn flow_axioms() -> Outcome {
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    let bs = bs12_structure();
    let bs_oracle = |x: &[Letter], y: &[Letter]| oracle_bs12(x) == oracle_bs12(y);
    let bg = bg_structure().unwrap();
    let bg_oracle = |x: &[Letter], y: &[Letter]| oracle_bg(x, y).unwrap_or(false);
    let g2 = gp_structure(P2).unwrap();
    let g2_oracle = |x: &[Letter], y: &[Letter]| oracle_gp(P2, x) == oracle_gp(P2, y);
    let g3 = gp_structure(P3).unwrap();
    let g3_oracle = |x: &[Letter], y: &[Letter]| oracle_gp(P3, x) == oracle_gp(P3, y);
    let runs: [(&StackingStructure, stacker::rewriting::EqualityOracle<'_>); 4] =
        [(&bs, &bs_oracle), (&bg, &bg_oracle), (&g2, &g2_oracle), (&g3, &g3_oracle)];
    for (s, oracle) in runs {
        let r = s.verify_flow(6, Some(oracle));
        bad.extend(r.failures.iter().map(|f| format!("{}: {f:?}", s.id())));
        if r.max_phi_len > s.bound() {
            bad.push(format!("{}: |φ| up to {} > {}", s.id(), r.max_phi_len, s.bound()));
        }
        parts.push(format!("{} {} edges |φ| ≤ {}/{}", s.id(), r.edges_checked, r.max_phi_len, s.bound()));
    }
    Outcome { bad, detail: format!("radius 6, {}", parts.join(", ")) }
}

fn ntilde_predicate(u: &[Letter], q: u32, target: i64) -> bool {
    let text = Word::from(u.to_vec()).to_string();
    if !text.starts_with('a') || text.contains(&"a".repeat(q as usize)) || text.contains("tT") {
        return false;
    }
    if !text.ends_with('T') || text.matches('T').count() != 1 {
        return false;
    }
    let p = Modulus::Finite(q);
    match poly_of_head(u, p) {
        Ok(d) => d.poly.eval_minus1().value() == &p.reduce(target.into()),
        Err(_) => false,
    }
}

fn ntilde() -> Outcome {
    let letters: Vec<Letter> = "atT".chars().map(|c| Letter::new(c).unwrap()).collect();
    let words: Vec<Word> = words_up_to(&letters, 10).collect();
    let mut bad = Vec::new();
    for q in [2, 3] {
        for (delta, eta) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let m = ntilde_fsa(Modulus::Finite(q), delta, eta);
            let wrong: Vec<String> = words
                .par_iter()
                .filter(|u| m.contains(u) != ntilde_predicate(u, q, delta * eta))
                .map(|u| format!("p={q} δ={delta} η={eta}: {u}"))
                .collect();
            bad.extend(wrong);
        }
    }
    Outcome { bad, detail: format!("{} words × 8 automata", words.len()) }
}

fn graph_phi() -> Outcome {
    let g = gp_structure(P2).unwrap();
    let m = graph_phi_fsa(P2).unwrap();
    let letters = g.alphabet().letters();
    let nfs = g.normal_forms_up_to(6);
    let bad: Vec<String> = nfs
        .par_iter()
        .flat_map_iter(|u| {
            let mut out = Vec::new();
            for &z in &letters {
                let v = g.phi(u, z);
                if !m.contains(&pad_triple(u, &[z], &v)) {
                    out.push(format!("rejects ({u}, {z}, {v})"));
                }
                for i in 0..v.len() {
                    for &x in letters.iter().filter(|&&x| x != v[i]) {
                        let mut w = v.to_vec();
                        w[i] = x;
                        if m.contains(&pad_triple(u, &[z], &w)) {
                            out.push(format!("accepts mutant ({u}, {z}, {})", Word::from(w)));
                        }
                    }
                }
            }
            out
        })
        .collect();
    Outcome { bad, detail: format!("{} normal forms, {} states", nfs.len(), m.num_states()) }
}

fn diagrams() -> Outcome {
    let mut bad = Vec::new();
    let mut edges = 0;
    let id_bs = oracle_bs12(&[]);
    let id_g2 = oracle_gp(P2, &[]);
    let bs = bs12_structure();
    let g2 = gp_structure(P2).unwrap();
    let trivial_bs = |c: &Word| oracle_bs12(c) == id_bs;
    let trivial_g2 = |c: &Word| oracle_gp(P2, c) == id_g2;
    let runs: [(&StackingStructure, &CellCheck<'_>); 2] = [(&bs, &trivial_bs), (&g2, &trivial_g2)];
    for (s, trivial) in runs {
        let nfs = s.normal_forms_up_to(5);
        edges += nfs.len() * s.alphabet().letters().len();
        let found: Vec<String> = nfs
            .par_iter()
            .flat_map_iter(|u| {
                let mut out = Vec::new();
                for z in s.alphabet().letters() {
                    let at = format!("{} ({u}, {z})", s.id());
                    let d = match build_diagram(s, u, z) {
                        Ok(d) => d,
                        Err(e) => {
                            out.push(format!("{at}: {e}"));
                            continue;
                        }
                    };
                    let c = check_diagram(&d, s, None);
                    out.extend(c.reasons.iter().map(|r| format!("{at}: {r}")));
                    match expected_boundary(s, u, z) {
                        Ok(b) if b == free_reduce(&d.boundary.word()) => {}
                        _ => out.push(format!("{at}: boundary mismatch")),
                    }
                    match s.normalize_traced(&u.push(z)) {
                        Ok(t) if t.rewrites() == d.area() => {}
                        _ => out.push(format!("{at}: area {} disagrees with the trace", d.area())),
                    }
                    out.extend(d.cells().into_iter().filter(|c| !trivial(c)).map(|c| format!("{at}: cell {c} is not trivial")));
                }
                out
            })
            .collect();
        bad.extend(found);
    }
    Outcome { bad, detail: format!("{edges} edges") }
}

fn tails_and_prefixes() -> Outcome {
    let g = gp_structure(P2).unwrap();
    let stable = Letter::new('s').unwrap();
    let tail_lang = tail_fsa(P2);
    let nfs = g.normal_forms_up_to(6);
    let tails: Vec<&Word> = nfs.iter().filter(|w| w.len() <= 3 && tail_lang.contains(w)).collect();
    let mut bad = Vec::new();
    let mut prepends = 0;
    for w in &nfs {
        for k in 0..w.len() {
            if !g.is_normal(&w[..k]) {
                bad.push(format!("prefix {} of {w} is not normal", Word::from(w[..k].to_vec())));
            }
        }
        let first = w.iter().position(|l| l.generator() == stable);
        for tau in &tails {
            let compliant = match first {
                None => true,
                Some(0) => tau.last() == Some(&w[0]),
                Some(_) => true,
            };
            if compliant {
                prepends += 1;
                let tw = tau.concat(w);
                if !g.is_normal(&tw) {
                    bad.push(format!("{tau} · {w} left the language"));
                }
            }
        }
    }
    Outcome { bad, detail: format!("{} normal forms, {prepends} tail prepends", nfs.len()) }
}

fn main() {
    let mut results = Vec::new();
    results.push(report(1, "BS(1,2) oracle equivalence", bs12_equivalence));
    results.push(report(2, "Baumslag-Gersten oracle equivalence", bg_equivalence));
    let mut descent = Outcome { bad: Vec::new(), detail: String::new() };
    results.push(report(3, "G_p oracle equivalence", || gp_equivalence(&mut descent)));
    results.push(report(4, "flow axioms", flow_axioms));
    results.push(report(5, "Ñ automata", ntilde));
    results.push(report(6, "graph(φ) automaton, p = 2", graph_phi));
    results.push(report(7, "diagram soundness", diagrams));
    results.push(report(8, "tail prepends and prefix closure", tails_and_prefixes));
    results.push(report(9, "deep rewrite descent", || descent));
    if results.iter().any(|ok| !ok) {
        std::process::exit(1);
    }
}
