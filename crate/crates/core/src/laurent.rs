//! Laurent polynomials over `Z_p` (or `Z`), division by `1 + x`, and the
//! correspondence between head words over `{a, t}` and pairs `(p(x), m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{0:?} is not a head normal form")]
    NotAHeadNormalForm(String),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Coefficient ring: `Z_p` for finite `p`, or `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    Finite(u32),
    Infinite,
}

impl Modulus {
    pub fn finite(p: u64) -> Result<Modulus, LaurentError> {
        match u32::try_from(p) {
            Ok(p) if p >= 2 => Ok(Modulus::Finite(p)),
            _ => Err(LaurentError::InvalidModulus(p)),
        }
    }

    /// Canonical representative: in `0..p` when finite.
    pub fn reduce(self, v: BigInt) -> BigInt {
        match self {
            Modulus::Finite(p) => {
                let p = BigInt::from(p);
                ((v % &p) + &p) % p
            }
            Modulus::Infinite => v,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Modulus::Finite(_))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(p) => write!(f, "{p}"),
            Modulus::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Modulus {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Modulus, LaurentError> {
        match s.trim() {
            "inf" | "∞" => Ok(Modulus::Infinite),
            t => {
                let p: u64 = t.parse().map_err(|_| LaurentError::Parse {
                    text: s.into(),
                    reason: "expected an integer or \"inf\"".into(),
                })?;
                Modulus::finite(p)
            }
        }
    }
}

/// A reduced element of the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    value: BigInt,
    modulus: Modulus,
}

impl Coefficient {
    pub fn new(value: impl Into<BigInt>, modulus: Modulus) -> Coefficient {
        Coefficient { value: modulus.reduce(value.into()), modulus }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An element of `Z_p[x, 1/x]`; no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    modulus: Modulus,
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(modulus: Modulus) -> LaurentPoly {
        LaurentPoly { modulus, coeffs: BTreeMap::new() }
    }

    pub fn one(modulus: Modulus) -> LaurentPoly {
        LaurentPoly::monomial(1, 0, modulus)
    }

    /// `c · x^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: i64, modulus: Modulus) -> LaurentPoly {
        let mut p = LaurentPoly::zero(modulus);
        p.add_term(degree, c.into());
        p
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated
    /// degrees are summed.
    pub fn from_terms<I, C>(terms: I, modulus: Modulus) -> LaurentPoly
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero(modulus);
        for (d, c) in terms {
            p.add_term(d, c.into());
        }
        p
    }

    fn add_term(&mut self, degree: i64, c: BigInt) {
        let entry = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *entry = self.modulus.reduce(&*entry + c);
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient; `None` for zero.
    pub fn lowest_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest degree with a nonzero coefficient; `None` for zero.
    pub fn highest_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// `x^k · self`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|(&d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(d, v)| (d, v * c)), self.modulus)
    }

    /// `(1 + x) · self`.
    pub fn mul_1px(&self) -> LaurentPoly {
        self + &self.shift(1)
    }

    /// `(1 + x)^k · self` for `k ≥ 0`.
    pub fn mul_1px_pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(self.clone(), |acc, _| acc.mul_1px())
    }

    /// The value at `x = -1`.
    pub fn eval_minus1(&self) -> Coefficient {
        let sum = self
            .terms()
            .fold(BigInt::zero(), |acc, (d, c)| if d % 2 == 0 { acc + c } else { acc - c });
        Coefficient::new(sum, self.modulus)
    }

    /// Writes `self = q·(1 + x) + R` with `R` a constant, returning `(q, R)`.
    ///
    /// Terms of positive degree are cleared from the top down and terms of
    /// negative degree from the bottom up; what is left sits in degree 0.
    pub fn divmod_1px(&self) -> (LaurentPoly, Coefficient) {
        let m = self.modulus;
        let mut q = LaurentPoly::zero(m);
        let mut rem = self.clone();
        while let Some(d) = rem.highest_degree().filter(|&d| d > 0) {
            let c = rem.coeff(d);
            q.add_term(d - 1, c.clone());
            rem.add_term(d, -c.clone());
            rem.add_term(d - 1, -c);
        }
        while let Some(d) = rem.lowest_degree().filter(|&d| d < 0) {
            let c = rem.coeff(d);
            q.add_term(d, c.clone());
            rem.add_term(d, -c.clone());
            rem.add_term(d + 1, -c);
        }
        let r = rem.coeff(0);
        (q, Coefficient::new(r, m))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &-other
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(d, c)| (d, -c)), self.modulus)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        let mut out = LaurentPoly::zero(self.modulus);
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if d == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the textual format, e.g. `"1 + 2x^-1 + x^3"` or `"-x + 3"`.
    /// Terms may come in any order.
    pub fn parse(text: &str, modulus: Modulus) -> Result<LaurentPoly, LaurentError> {
        let err = |reason: &str| LaurentError::Parse { text: text.into(), reason: reason.into() };
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let glued = tokens.windows(2).any(|pair| {
            let end = pair[0].chars().last().expect("nonempty");
            let start = pair[1].chars().next().expect("nonempty");
            !matches!(end, '+' | '-' | '^') && !matches!(start, '+' | '-')
        });
        if glued {
            return Err(err("terms must be separated by '+' or '-'"));
        }
        let compact: String = tokens.concat();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut p = LaurentPoly::zero(modulus);
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected '+' or '-' between terms"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: Option<BigInt> =
                if i > start { Some(compact[start..i].parse().expect("digits")) } else { None };
            let degree = if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let ds = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    compact[ds..i].parse::<i64>().map_err(|_| err("bad exponent"))?
                } else {
                    1
                }
            } else {
                if coeff.is_none() {
                    return Err(err("missing term"));
                }
                0
            };
            p.add_term(degree, sign * coeff.unwrap_or_else(BigInt::one));
        }
        Ok(p)
    }
}

/// A head word viewed as `p(x) · t^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeadDecomposition {
    pub poly: LaurentPoly,
    pub m: i64,
}

const A: u8 = b'a';

/// Reads a head normal form over `{a, t}^±` as `(p(x), m)`.
pub fn poly_of_head(h: &[Letter], modulus: Modulus) -> Result<HeadDecomposition, LaurentError> {
    let bad = || LaurentError::NotAHeadNormalForm(Word::from_letters(h.to_vec()).to_string());
    let mut poly = LaurentPoly::zero(modulus);
    let mut pos: i64 = 0;
    let mut i = 0;
    let mut seen_block = false;
    // sign of the t-run just read, 0 if none since the last a-block
    let mut run_sign = 0i64;
    while i < h.len() {
        let l = h[i];
        let g = l.generator().as_char() as u8;
        if g == b't' {
            let s = l.sign();
            if run_sign == -s {
                return Err(bad());
            }
            if seen_block && s < 0 {
                // between or after a-blocks: a T may only start the trailing run
                if h[i..].iter().any(|x| *x != l) {
                    return Err(bad());
                }
            }
            run_sign = s;
            pos += s;
            i += 1;
        } else if g == A {
            let s = l.sign();
            let mut j = 0i64;
            while i < h.len() && h[i] == l {
                j += 1;
                i += 1;
            }
            if i < h.len() && h[i].generator().as_char() as u8 == A {
                return Err(bad());
            }
            match modulus {
                Modulus::Finite(p) if s < 0 || j >= p as i64 => return Err(bad()),
                _ => {}
            }
            if seen_block && run_sign != 1 {
                return Err(bad());
            }
            poly.add_term(pos, BigInt::from(s * j));
            seen_block = true;
            run_sign = 0;
        } else {
            return Err(bad());
        }
    }
    Ok(HeadDecomposition { poly, m: pos })
}

/// Inverse of [`poly_of_head`]: `t^r a^{α_r} t … t a^{α_l} t^{m-l}`.
pub fn head_of_poly(d: &HeadDecomposition) -> Word {
    let t = Letter::new('t').expect("ascii");
    let a = Letter::new('a').expect("ascii");
    let (Some(r), Some(l)) = (d.poly.lowest_degree(), d.poly.highest_degree()) else {
        return Word::power(t, d.m);
    };
    let mut out: Vec<Letter> = Word::power(t, r).into_letters();
    for i in r..=l {
        let c = d.poly.coeff(i);
        let n: i64 = i64::try_from(&c).expect("coefficient fits in i64");
        out.extend(Word::power(a, n).iter());
        if i < l {
            out.push(t);
        }
    }
    out.extend(Word::power(t, d.m - l).iter());
    Word::from_letters(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const INF: Modulus = Modulus::Infinite;

    fn p(text: &str, m: Modulus) -> LaurentPoly {
        LaurentPoly::parse(text, m).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::ascii(s)
    }

    fn random_poly(rng: &mut ChaCha8Rng, m: Modulus) -> LaurentPoly {
        let n = rng.gen_range(0..6);
        LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-9i64..=9))), m)
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p("1 + x", INF).divmod_1px();
        assert_eq!((q, r.value().clone()), (LaurentPoly::one(INF), BigInt::zero()));
        let (q, r) = p("x^2", INF).divmod_1px();
        assert_eq!(q, p("x - 1", INF));
        assert_eq!(r.value(), &BigInt::one());
        let (q, r) = LaurentPoly::zero(INF).divmod_1px();
        assert!(q.is_zero() && r.is_zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("1 + x + x^2", INF).eval_minus1().value(), &BigInt::one());
        assert!(p("1 + x", INF).eval_minus1().is_zero());
        assert!(p("x^-1 + x", Modulus::Finite(2)).eval_minus1().is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(LaurentPoly::one(INF).mul_1px(), p("1 + x", INF));
        assert!(LaurentPoly::zero(INF).mul_1px().is_zero());
        let two = Modulus::Finite(2);
        assert_eq!(p("1 + x", two).mul_1px(), p("1 + x^2", two));
    }

    #[test]
    fn divmod_identity_on_random_polys() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [Modulus::Finite(2), Modulus::Finite(3), Modulus::Finite(5), INF] {
            for _ in 0..1000 {
                let f = random_poly(&mut rng, m);
                let (q, r) = f.divmod_1px();
                let back = &q.mul_1px() + &LaurentPoly::monomial(r.value().clone(), 0, m);
                assert_eq!(back, f, "{f} at p={m}");
                assert_eq!(r, f.eval_minus1());
                let (q2, r2) = f.mul_1px().divmod_1px();
                assert_eq!(q2, f);
                assert!(r2.is_zero());
                assert!(f.mul_1px().eval_minus1().is_zero());
            }
        }
    }

    #[test]
    fn composite_modulus_division() {
        let four = Modulus::Finite(4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let f = random_poly(&mut rng, four);
            let (q, r) = f.divmod_1px();
            assert_eq!(&q.mul_1px() + &LaurentPoly::monomial(r.value().clone(), 0, four), f);
        }
        // 2 + 2x is divisible by 1 + x even though 2 is a zero divisor mod 4
        let (q, r) = p("2 + 2x", four).divmod_1px();
        assert_eq!(q, p("2", four));
        assert!(r.is_zero());
    }

    #[test]
    fn text_format() {
        let f = p("1 + 2x^-1 + x^3", INF);
        assert_eq!(f.to_string(), "2x^-1 + 1 + x^3");
        assert_eq!(p(&f.to_string(), INF), f);
        assert_eq!(p("-x + 3 - 2x^2", INF).to_string(), "3 - x - 2x^2");
        assert_eq!(LaurentPoly::zero(INF).to_string(), "0");
        assert_eq!(p("0", INF), LaurentPoly::zero(INF));
        assert_eq!(p("3x", Modulus::Finite(3)).to_string(), "0");
        for bad in ["", "1 +", "x^", "2 3", "y"] {
            assert!(LaurentPoly::parse(bad, INF).is_err(), "{bad}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let f = random_poly(&mut rng, INF);
            assert_eq!(p(&f.to_string(), INF), f);
        }
    }

    #[test]
    fn modulus_parsing() {
        assert_eq!("inf".parse::<Modulus>().unwrap(), INF);
        assert_eq!("3".parse::<Modulus>().unwrap(), Modulus::Finite(3));
        assert_eq!("1".parse::<Modulus>(), Err(LaurentError::InvalidModulus(1)));
        assert!("x".parse::<Modulus>().is_err());
    }

    #[test]
    fn head_examples() {
        let two = Modulus::Finite(2);
        let d = poly_of_head(&w("a"), two).unwrap();
        assert_eq!((d.poly, d.m), (LaurentPoly::one(two), 0));
        let d = poly_of_head(&w("tt"), two).unwrap();
        assert!(d.poly.is_zero() && d.m == 2);
        let d = poly_of_head(&w("Tat"), two).unwrap();
        assert_eq!((d.poly.clone(), d.m), (LaurentPoly::monomial(1, -1, two), 0));
        assert_eq!(head_of_poly(&d), w("Tat"));
        assert_eq!(
            head_of_poly(&HeadDecomposition { poly: LaurentPoly::zero(two), m: -3 }),
            w("TTT")
        );
        let d = HeadDecomposition { poly: p("x + x^2", INF), m: 2 };
        assert_eq!(head_of_poly(&d), w("tata"));
        assert_eq!(poly_of_head(&w("tata"), INF).unwrap(), d);
    }

    #[test]
    fn non_heads_are_rejected() {
        let two = Modulus::Finite(2);
        for bad in ["aa", "A", "tT", "aTa", "s", "ataTt", "aTt"] {
            assert!(poly_of_head(&w(bad), two).is_err(), "{bad}");
        }
        assert!(poly_of_head(&w("AAtaaT"), INF).is_ok());
        assert!(poly_of_head(&w("aA"), INF).is_err());
    }

    // Independent description of the head language as a regular expression.
    fn head_language(m: Modulus) -> crate::automata::Fsa<Letter> {
        let block = match m {
            Modulus::Finite(p) => {
                let powers: Vec<String> = (1..p).map(|j| "a".repeat(j as usize)).collect();
                format!("(|{})", powers.join("|"))
            }
            Modulus::Infinite => "(|a+|A+)".to_string(),
        };
        let at = crate::words::Alphabet::from_names("at");
        let shape = crate::automata::from_regex(&format!("(t*|T*)({block}t)*{block}(t*|T*)"), &at).unwrap();
        let bad = crate::automata::from_regex(".*(tT|Tt).*", &at).unwrap();
        shape.difference(&bad)
    }

    #[test]
    fn head_bijection_is_exhaustive() {
        for m in [Modulus::Finite(2), Modulus::Finite(3), INF] {
            let lang = head_language(m);
            let letters = crate::words::Alphabet::from_names("at").letters();
            let max = if m == Modulus::Finite(2) { 10 } else { 7 };
            let mut seen = std::collections::HashSet::new();
            for h in words_up_to(&letters, max) {
                let parsed = poly_of_head(&h, m);
                assert_eq!(parsed.is_ok(), lang.contains(&h), "{h} at p={m}");
                if let Ok(d) = parsed {
                    assert_eq!(head_of_poly(&d), h);
                    assert!(seen.insert(d), "two heads for one pair");
                }
            }
        }
    }
}
