//! Generator alphabets, words and free reduction.
//!
//! Words are written in a one-character-per-letter ASCII format: a lowercase
//! letter is a generator and the same letter in uppercase is its inverse, so
//! `"aT"` spells `a t^-1`. This is the wire format used by every module and by
//! the command line.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter {letter:?} at position {position}")]
    UnknownLetter { position: usize, letter: char },
    #[error("invalid generator name {0:?}: generators are lowercase ASCII letters")]
    InvalidGenerator(char),
    #[error("generator {0:?} listed twice")]
    DuplicateGenerator(char),
}

/// A signed generator, stored as its ASCII character.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Letter(u8);

impl Letter {
    /// Builds a letter from an ASCII alphabetic character.
    pub fn new(c: char) -> Option<Letter> {
        if c.is_ascii_alphabetic() {
            Some(Letter(c as u8))
        } else {
            None
        }
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 0x20)
    }

    /// True for the formal inverse of a generator (uppercase).
    pub fn is_inverse(self) -> bool {
        self.0.is_ascii_uppercase()
    }

    /// The positive generator underlying this letter.
    pub fn generator(self) -> Letter {
        Letter(self.0.to_ascii_lowercase())
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    fn order_key(self) -> (u8, bool) {
        (self.0.to_ascii_lowercase(), self.is_inverse())
    }
}

// Generators are ordered alphabetically with each generator before its inverse.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl std::str::FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Letter, WordError> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::new(c).ok_or(WordError::UnknownLetter { position: 0, letter: c }),
            (Some(_), Some(c)) => Err(WordError::UnknownLetter { position: 1, letter: c }),
            (None, _) => Err(WordError::UnknownLetter { position: 0, letter: ' ' }),
        }
    }
}

/// An inverse-closed generating set, given by its positive generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<char>,
}

impl Alphabet {
    pub fn new(generators: &[char]) -> Result<Alphabet, WordError> {
        let mut seen = Vec::with_capacity(generators.len());
        for &g in generators {
            if !g.is_ascii_lowercase() {
                return Err(WordError::InvalidGenerator(g));
            }
            if seen.contains(&g) {
                return Err(WordError::DuplicateGenerator(g));
            }
            seen.push(g);
        }
        Ok(Alphabet { generators: seen })
    }

    /// Builds an alphabet from a string of generator names, e.g. `"at"`.
    ///
    /// Panics on invalid input; meant for literal alphabets.
    pub fn from_names(names: &str) -> Alphabet {
        let gens: Vec<char> = names.chars().collect();
        Alphabet::new(&gens).expect("invalid literal alphabet")
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    /// All letters: each generator followed by its inverse.
    pub fn letters(&self) -> Vec<Letter> {
        self.generators
            .iter()
            .flat_map(|&g| {
                let l = Letter(g as u8);
                [l, l.inverse()]
            })
            .collect()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.generators.contains(&l.generator().as_char())
    }

    pub fn len(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The alphabet extended by further generators.
    pub fn extended(&self, extra: &[char]) -> Result<Alphabet, WordError> {
        let mut all = self.generators.clone();
        all.extend_from_slice(extra);
        Alphabet::new(&all)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A word over signed generators. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Spells a literal word, panicking on non-letters.
    pub fn ascii(text: &str) -> Word {
        Word(
            text.chars()
                .map(|c| Letter::new(c).unwrap_or_else(|| panic!("not a letter: {c:?}")))
                .collect(),
        )
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// `l^n` for `n >= 0`, `(l^-1)^|n|` for negative `n`.
    pub fn power(l: Letter, n: i64) -> Word {
        let l = if n < 0 { l.inverse() } else { l };
        Word(vec![l; n.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&self, l: Letter) -> Word {
        self.concat(&[l])
    }

    pub fn invert(&self) -> Word {
        invert(&self.0)
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(&self.0)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        text.chars()
            .map(|c| {
                Letter::new(c).ok_or_else(|| serde::de::Error::custom(format!("not a letter: {c:?}")))
            })
            .collect()
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Letter, D::Error> {
        let text = String::deserialize(d)?;
        let mut chars = text.chars();
        match (chars.next().and_then(Letter::new), chars.next()) {
            (Some(l), None) => Ok(l),
            _ => Err(serde::de::Error::custom(format!("not a single letter: {text:?}"))),
        }
    }
}

/// Parses the ASCII word format over `alphabet`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    text.chars()
        .enumerate()
        .map(|(position, c)| match Letter::new(c) {
            Some(l) if alphabet.contains(l) => Ok(l),
            _ => Err(WordError::UnknownLetter { position, letter: c }),
        })
        .collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Shortlex comparison: shorter first, then letter by letter.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Every word over `letters` of length exactly `len`, in lexicographic order.
pub fn words_of_length(letters: &[Letter], len: usize) -> impl Iterator<Item = Word> + '_ {
    let k = letters.len();
    let total = k.checked_pow(len as u32).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let mut v = vec![letters[0]; len];
        for slot in v.iter_mut().rev() {
            *slot = letters[idx % k];
            idx /= k;
        }
        Word(v)
    })
}

/// Every word over `letters` of length at most `max_len`.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> impl Iterator<Item = Word> + '_ {
    (0..=max_len).flat_map(move |n| words_of_length(letters, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at() -> Alphabet {
        Alphabet::from_names("at")
    }

    #[test]
    fn parses_ascii_convention() {
        let w = parse_word("aT", &at()).unwrap();
        assert_eq!(w.letters(), &[Letter::new('a').unwrap(), Letter::new('T').unwrap()]);
        assert!(parse_word("T", &at()).unwrap()[0].is_inverse());
        assert_eq!(parse_word("", &at()).unwrap(), Word::empty());
        let ast = Alphabet::from_names("ast");
        assert_eq!(parse_word("sAt", &ast).unwrap().to_string(), "sAt");
    }

    #[test]
    fn unknown_letter_reports_position() {
        assert_eq!(
            parse_word("aq", &at()),
            Err(WordError::UnknownLetter { position: 1, letter: 'q' })
        );
        assert_eq!(
            parse_word("a$", &at()),
            Err(WordError::UnknownLetter { position: 1, letter: '$' })
        );
    }

    #[test]
    fn alphabet_rejects_bad_generators() {
        assert_eq!(Alphabet::new(&['a', 'a']), Err(WordError::DuplicateGenerator('a')));
        assert_eq!(Alphabet::new(&['A']), Err(WordError::InvalidGenerator('A')));
        assert_eq!(Alphabet::new(&['$']), Err(WordError::InvalidGenerator('$')));
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(Word::ascii("aA").free_reduce(), Word::empty());
        assert_eq!(Word::ascii("taAT").free_reduce(), Word::empty());
        assert_eq!(Word::ascii("aatT").free_reduce(), Word::ascii("aa"));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Word::ascii("at").invert(), Word::ascii("TA"));
        assert_eq!(Word::empty().invert(), Word::empty());
        assert_eq!(Word::ascii("aab").invert(), Word::ascii("BAA"));
    }

    #[test]
    fn letter_order_puts_generator_before_inverse() {
        let mut v = Word::ascii("TtAa").into_letters();
        v.sort();
        assert_eq!(Word::from(v), Word::ascii("aAtT"));
    }

    #[test]
    fn word_times_inverse_reduces_to_empty_exhaustively() {
        let letters = Alphabet::from_names("ab").letters();
        for w in words_up_to(&letters, 12) {
            assert!(w.concat(&w.invert()).free_reduce().is_empty(), "{w}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let letters = at().letters();
        assert_eq!(words_up_to(&letters, 3).count(), 1 + 4 + 16 + 64);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop::sample::select(vec!['a', 'A', 't', 'T', 's', 'S']), 0..16)
            .prop_map(|cs| cs.into_iter().map(|c| Letter::new(c).unwrap()).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(w in arb_word()) {
            let r = w.free_reduce();
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn invert_is_an_involution(w in arb_word()) {
            prop_assert_eq!(w.invert().invert(), w);
        }

        #[test]
        fn format_parse_roundtrip(w in arb_word()) {
            let alphabet = Alphabet::from_names("ast");
            prop_assert_eq!(parse_word(&w.to_string(), &alphabet).unwrap(), w);
        }
    }
}
