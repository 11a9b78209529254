//! The metabelian groups `G_p = ⟨a, s, t | a^p, [a^t, a], [s, t], a^s = a^t a⟩`
//! (no `a^p` relator for `p = ∞`), with Britton normal forms over the
//! lamplighter-type base `⟨a, t⟩`.
//!
//! The stacking map is evaluated from the pair `(p_u, m_u)` of the current
//! head: the head reads `t^r a^{α_r} t ⋯ t a^{α_l} t^{m-l}` and
//! `p_u = Σ α_i x^i`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::automata::{from_regex, Fsa};
use crate::hnn::split_at_last_stable;
use crate::laurent::{poly_of_head, HeadDecomposition, LaurentError, Modulus};
use crate::rewriting::{EventKind, Recognizer, StackingMap, StackingStructure, Trace};
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{0:?} is not a normal form of G_p")]
    NotNormal(String),
    /// The descent measure is only defined when `p_u ≠ 0` and `m_u - l_u < -1`.
    #[error("{0:?} is outside the deep band m - l < -1")]
    NotDeep(String),
    #[error("the stacking map for p = inf is computable but its graph is not offered as an automaton")]
    UnsupportedForInfiniteP,
    #[error("there is no graph piece {0}; pieces are numbered 1 to 15")]
    NoSuchPiece(usize),
}

impl From<LaurentError> for GpError {
    fn from(e: LaurentError) -> GpError {
        match e {
            LaurentError::InvalidModulus(p) => GpError::InvalidModulus(p),
            LaurentError::NotAHeadNormalForm(w) => GpError::NotNormal(w),
            LaurentError::Parse { text, .. } => GpError::NotNormal(text),
        }
    }
}

fn letter(c: char) -> Letter {
    Letter::new(c).expect("ascii letter")
}

pub fn gp_alphabet() -> Alphabet {
    Alphabet::from_names("ast")
}

pub fn check_modulus(p: Modulus) -> Result<Modulus, GpError> {
    match p {
        Modulus::Finite(q) if q < 2 => Err(GpError::InvalidModulus(u64::from(q))),
        _ => Ok(p),
    }
}

/// `(|a|aa|…|a^{p-1})`, or `(|a+|A+)` for `p = ∞`.
fn block(p: Modulus) -> String {
    match p {
        Modulus::Finite(q) => {
            let powers: Vec<String> = (0..q).map(|k| "a".repeat(k as usize)).collect();
            format!("({})", powers.join("|"))
        }
        Modulus::Infinite => "(|a+|A+)".into(),
    }
}

pub fn tail_regex(p: Modulus) -> String {
    format!("S*({}s)*", block(p))
}

pub fn head_regex(p: Modulus) -> String {
    let b = block(p);
    format!("(t*|T*)({b}t)*{b}(t*|T*)")
}

fn regex(pattern: &str) -> Fsa<Letter> {
    from_regex(pattern, &gp_alphabet()).expect("valid pattern")
}

/// Tails `s^{-k} a^{β_1} s ⋯ a^{β_n} s` with no `s⁻¹ s` factor.
pub fn tail_fsa(p: Modulus) -> Fsa<Letter> {
    regex(&tail_regex(p)).difference(&regex(".*Ss.*")).minimize()
}

/// Head normal forms over `{a, t}^±`.
pub fn head_fsa(p: Modulus) -> Fsa<Letter> {
    regex(&head_regex(p)).difference(&regex(".*(tT|Tt).*")).minimize()
}

/// `N_{G_p} = Tail · N_{H_p}`.
pub fn nf_fsa(p: Modulus) -> Fsa<Letter> {
    tail_fsa(p).concat(&head_fsa(p)).minimize()
}

/// Which branch of the stacking map an edge falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GpCase {
    /// `t^{±1}` is always a tree edge.
    TLetter,
    ATree,
    /// `a^{∓(p-1)}`: the last block would reach `a^p` or go negative.
    AWrap,
    /// `m - l = -1`: `t a^{-ε} t⁻¹ a^δ t a^ε t⁻¹`.
    AShallow { epsilon: i64 },
    /// `m - l < -1` with `p_u(-1) - δ(-1)^{m+1} = 0`: `t a^{-δ} t⁻¹ s a^δ s⁻¹`.
    ADeepStable,
    /// `m - l < -1` otherwise: `t a^{-η} t⁻¹ a^δ t a^η t⁻¹`.
    ADeep { eta: i64 },
    SInvTree,
    /// Head ends in `t^δ`: `t^{-δ} s⁻¹ t^δ`.
    SInvAfterT { delta: i64 },
    /// Head ends in `a^δ`: `a^{-δ} s⁻¹ a^δ t a^δ t⁻¹`.
    SInvAfterA { delta: i64 },
    STree,
    /// Head ends in `t^δ`: `t^{-δ} s t^δ`.
    SAfterT { delta: i64 },
    /// Head ends in `t^τ a^k`; the whole run is moved past `s`.
    SAfterA { tau: i64, k: i64 },
}

struct Split<'a> {
    head: &'a [Letter],
    d: HeadDecomposition,
}

fn split(u: &[Letter], p: Modulus) -> Result<Split<'_>, GpError> {
    let (_, head) = split_at_last_stable(u, letter('s'));
    let d = poly_of_head(head, p)?;
    Ok(Split { head, d })
}

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `p_u(-1) - δ(-1)^{m+1}`, reduced mod `p` when finite.
fn d2_value(d: &HeadDecomposition, delta: i64, p: Modulus) -> BigInt {
    let r = d.poly.eval_minus1().value().clone();
    p.reduce(r - BigInt::from(delta * sign_pow(d.m + 1)))
}

/// Classifies the edge `(u, z)` for a normal form `u`.
pub fn classify(u: &[Letter], z: Letter, p: Modulus) -> Result<GpCase, GpError> {
    let sp = split(u, p)?;
    let head = sp.head;
    let d = &sp.d;
    let delta = z.sign();
    let last = head.last().copied();
    let last_is = |c: char| last.map(Letter::generator) == Some(letter(c));
    Ok(match z.generator().as_char() {
        't' => GpCase::TLetter,
        'a' => {
            let Some(l) = d.poly.highest_degree() else {
                return Ok(if p.is_finite() && delta < 0 { GpCase::AWrap } else { GpCase::ATree });
            };
            let top = d.poly.coeff(l).to_i64().expect("small coefficient");
            match (d.m - l).cmp(&0) {
                Ordering::Greater => {
                    if p.is_finite() && delta < 0 {
                        GpCase::AWrap
                    } else {
                        GpCase::ATree
                    }
                }
                Ordering::Equal => match p {
                    Modulus::Finite(q) if delta > 0 && top == i64::from(q) - 1 => GpCase::AWrap,
                    _ => GpCase::ATree,
                },
                Ordering::Less if d.m - l == -1 => GpCase::AShallow { epsilon: top.signum() },
                Ordering::Less => {
                    let d2 = d2_value(d, delta, p);
                    if d2.is_zero() {
                        GpCase::ADeepStable
                    } else if p.is_finite() || d2 > BigInt::zero() {
                        GpCase::ADeep { eta: sign_pow(d.m + 1) }
                    } else {
                        GpCase::ADeep { eta: sign_pow(d.m) }
                    }
                }
            }
        }
        _ if delta < 0 => match last {
            None => GpCase::SInvTree,
            Some(l) if last_is('t') => GpCase::SInvAfterT { delta: l.sign() },
            Some(l) => GpCase::SInvAfterA { delta: l.sign() },
        },
        _ => match last {
            Some(l) if last_is('t') => GpCase::SAfterT { delta: l.sign() },
            _ if head.iter().all(|x| x.generator() == letter('a')) => GpCase::STree,
            Some(l) => {
                let run = head.iter().rev().take_while(|&&x| x == l).count();
                let tau = head[head.len() - run - 1].sign();
                let k = run as i64 * l.sign();
                GpCase::SAfterA { tau, k }
            }
            None => unreachable!("empty head is all a-letters"),
        },
    })
}

/// The word the stacking map assigns to an edge of the given case.
pub fn case_word(case: GpCase, z: Letter, p: Modulus) -> Word {
    let a = |k: i64| Word::power(letter('a'), k);
    let t = |k: i64| Word::power(letter('t'), k);
    let s = |k: i64| Word::power(letter('s'), k);
    let cat = |parts: &[Word]| -> Word { parts.iter().flat_map(|w| w.iter().copied()).collect() };
    let delta = z.sign();
    match case {
        GpCase::TLetter | GpCase::ATree | GpCase::SInvTree | GpCase::STree => Word::letter(z),
        GpCase::AWrap => match p {
            Modulus::Finite(q) => a(-delta * (i64::from(q) - 1)),
            Modulus::Infinite => Word::letter(z),
        },
        GpCase::AShallow { epsilon } => cat(&[t(1), a(-epsilon), t(-1), a(delta), t(1), a(epsilon), t(-1)]),
        GpCase::ADeepStable => cat(&[t(1), a(-delta), t(-1), s(1), a(delta), s(-1)]),
        GpCase::ADeep { eta } => cat(&[t(1), a(-eta), t(-1), a(delta), t(1), a(eta), t(-1)]),
        GpCase::SInvAfterT { delta: d } | GpCase::SAfterT { delta: d } => cat(&[t(-d), Word::letter(z), t(d)]),
        GpCase::SInvAfterA { delta: d } => cat(&[a(-d), s(-1), a(d), t(1), a(d), t(-1)]),
        GpCase::SAfterA { tau, k } if tau > 0 => cat(&[a(-k), t(-1), a(-k), s(1), a(k), t(1)]),
        GpCase::SAfterA { k, .. } => cat(&[a(-k), t(1), a(-k), s(1), t(-1), a(k)]),
    }
}

fn gp_phi(u: &[Letter], z: Letter, p: Modulus) -> Word {
    match classify(u, z, p) {
        Ok(case) => case_word(case, z, p),
        Err(_) => Word::letter(z),
    }
}

pub fn declared_bound(p: Modulus) -> usize {
    match p {
        Modulus::Finite(q) => (3 * q as usize).max(8),
        Modulus::Infinite => 8,
    }
}

pub fn gp_structure(p: Modulus) -> Result<StackingStructure, GpError> {
    let p = check_modulus(p)?;
    let phi: StackingMap = Arc::new(move |u, z| gp_phi(u, z, p));
    Ok(StackingStructure::new(
        format!("gp{p}"),
        gp_alphabet(),
        Recognizer::Automaton(Arc::new(nf_fsa(p))),
        phi,
        declared_bound(p),
    ))
}

/// `(d₁, d₂) = (|m_u - l_u|, p_u(-1) - δ(-1)^{m_u+1})`, ordered
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GpMeasure {
    pub d1: u64,
    #[serde(serialize_with = "as_string")]
    pub d2: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn measure_of(u: &[Letter], delta: i64, p: Modulus) -> Result<GpMeasure, GpError> {
    let sp = split(u, p)?;
    let deep = || GpError::NotDeep(Word::from(u.to_vec()).to_string());
    let l = sp.d.poly.highest_degree().ok_or_else(deep)?;
    let e = sp.d.m - l;
    if e >= -1 {
        return Err(deep());
    }
    Ok(GpMeasure { d1: e.unsigned_abs(), d2: d2_value(&sp.d, delta, p) })
}

/// Checks that every deep `a`-rewrite in `trace` only spawns deep
/// rewrites of strictly smaller measure. Returns a description of each
/// violation; the second component counts the deep rewrites seen.
pub fn descent_violations(trace: &Trace, p: Modulus) -> (Vec<String>, usize) {
    let measure = |i: usize| -> Option<GpMeasure> {
        let e = &trace.events[i];
        if !matches!(e.kind, EventKind::Rewrite(_)) || e.letter.generator() != letter('a') {
            return None;
        }
        measure_of(&e.prefix, e.letter.sign(), p).ok()
    };
    let mut out = Vec::new();
    let mut seen = 0;
    for i in 0..trace.events.len() {
        let Some(parent) = measure(i) else { continue };
        seen += 1;
        for j in trace.children(i) {
            if let Some(child) = measure(j) {
                if child >= parent {
                    let e = &trace.events[j];
                    out.push(format!(
                        "{}·{} at {:?} spawned {}·{} at {:?}",
                        trace.events[i].prefix, trace.events[i].letter, parent, e.prefix, e.letter, child
                    ));
                }
            }
        }
    }
    (out, seen)
}
