//! Words in the half-twists `σ_1, …, σ_{2n+1}`.
//!
//! A word `a_1 a_2 … a_m` denotes the mapping class `a_1 ∘ a_2 ∘ … ∘ a_m`:
//! the rightmost letter acts first. Every module in the crate relies on
//! this single convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};

/// `σ_i^{±1}`, stored as a signed index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: u32, positive: bool) -> Letter {
        assert!(index >= 1, "half-twist indices start at 1");
        let i = index as i32;
        Letter(if positive { i } else { -i })
    }

    pub fn pos(index: u32) -> Letter {
        Letter::new(index, true)
    }

    pub fn neg(index: u32) -> Letter {
        Letter::new(index, false)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "s{}", self.index())
        } else {
            write!(f, "s{}^-1", self.index())
        }
    }
}

/// A freely reduced word over the half-twist alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Builds the free reduction of `letters`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// Convenience constructor from signed indices (`-3` is `σ_3^{-1}`).
    pub fn from_signed(indices: &[i32]) -> Word {
        Word::from_letters(indices.iter().map(|&i| {
            assert!(i != 0, "zero is not a letter");
            Letter(i)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Reduced concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        // Cancellation only happens at the junction.
        let mut cut = 0;
        let (a, b) = (&self.letters, &other.letters);
        while cut < a.len() && cut < b.len() && a[a.len() - 1 - cut] == b[cut].inverse() {
            cut += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * cut);
        letters.extend_from_slice(&a[..a.len() - cut]);
        letters.extend_from_slice(&b[cut..]);
        Word { letters }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self · other · self^{-1}`.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Checks every index lies in `1..=max`.
    pub fn check_indices(&self, max: u32) -> Result<()> {
        match self.letters.iter().find(|l| l.index() > max) {
            Some(l) => Err(Error::IndexOutOfRange {
                index: l.index() as i64,
                max: max as i64,
            }),
            None => Ok(()),
        }
    }

    /// Parses the interchange format: whitespace-separated `s<i>` or `s<i>^-1`.
    pub fn parse(text: &str, ctx: &Context) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            letters.push(parse_token(token, ctx.max_sigma())?);
        }
        Ok(Word::from_letters(letters))
    }

    /// Parses without a context bound (any index ≥ 1).
    pub fn parse_unbounded(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            letters.push(parse_token(token, u32::MAX)?);
        }
        Ok(Word::from_letters(letters))
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn parse_token(token: &str, max: u32) -> Result<Letter> {
    let malformed = || Error::MalformedToken(token.to_string());
    let body = token.strip_prefix('s').ok_or_else(malformed)?;
    let (digits, positive) = match body.strip_suffix("^-1") {
        Some(d) => (d, false),
        None => (body, true),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let index: u64 = digits.parse().map_err(|_| malformed())?;
    if index < 1 || index > max as u64 {
        return Err(Error::IndexOutOfRange {
            index: index as i64,
            max: max as i64,
        });
    }
    Ok(Letter::new(index as u32, positive))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Word> {
        Word::parse_unbounded(&s)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word::from_letters(iter)
    }
}

/// Product of a sequence of words, left to right.
pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
    words.into_iter().fold(Word::empty(), |acc, w| acc.concat(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u32) -> Context {
        Context::new(n, 3).unwrap()
    }

    #[test]
    fn parses_half_twist_word() {
        let w = Word::parse("s1 s2 s1", &ctx(1)).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w, Word::from_signed(&[1, 2, 1]));
    }

    #[test]
    fn parse_reduces() {
        assert!(Word::parse("s1 s1^-1", &ctx(1)).unwrap().is_empty());
        let w = Word::parse("s3^-1 s3^-1", &ctx(1)).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.exponent_sum(), -2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("s4", &ctx(1)),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        ));
        for bad in ["x1", "s", "s0", "s1^2", "s-1", "s1^-1^-1", "s1a"] {
            assert!(Word::parse(bad, &ctx(1)).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        let w = Word::from_signed(&[3, -1, 2, 2]);
        assert_eq!(w.to_string(), "s3 s1^-1 s2 s2");
        assert_eq!(Word::parse(&w.to_string(), &ctx(1)).unwrap(), w);
        assert_eq!(Word::empty().to_string(), "");
    }

    #[test]
    fn inversion() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(Word::from_signed(&[1, 2]).inverse(), Word::from_signed(&[-2, -1]));
        assert_eq!(
            Word::from_signed(&[1, 2, 1]).inverse(),
            Word::from_signed(&[-1, -2, -1])
        );
    }

    #[test]
    fn concatenation() {
        let s1 = Word::from_signed(&[1]);
        assert!(s1.concat(&s1.inverse()).is_empty());
        assert_eq!(
            Word::from_signed(&[1, 2]).concat(&Word::from_signed(&[-2, 3])),
            Word::from_signed(&[1, 3])
        );
        let w = Word::from_signed(&[2, -3]);
        assert_eq!(Word::empty().concat(&w), w);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(Word::from_signed(&[1, 2, 1]).exponent_sum(), 3);
        assert_eq!(Word::empty().exponent_sum(), 0);
        assert_eq!(Word::from_signed(&[1, 1]).exponent_sum(), 2);
    }

    fn arb_letters() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(
            (1i32..=5, any::<bool>()).prop_map(|(i, p)| if p { i } else { -i }),
            0..40,
        )
    }

    proptest! {
        #[test]
        fn times_inverse_is_empty(a in arb_letters()) {
            let w = Word::from_signed(&a);
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }

        #[test]
        fn concat_is_associative(a in arb_letters(), b in arb_letters(), c in arb_letters()) {
            let (u, v, w) = (Word::from_signed(&a), Word::from_signed(&b), Word::from_signed(&c));
            prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
        }

        #[test]
        fn exponent_sum_ignores_reduction(a in arb_letters(), b in arb_letters()) {
            let raw: i64 = a.iter().chain(&b).map(|i| i.signum() as i64).sum();
            let w = Word::from_signed(&a).concat(&Word::from_signed(&b));
            prop_assert_eq!(w.exponent_sum(), raw);
        }

        #[test]
        fn reduced_form_has_no_cancelling_pair(a in arb_letters()) {
            let w = Word::from_signed(&a);
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0], pair[1].inverse());
            }
        }

        #[test]
        fn parse_serialize_idempotent(a in arb_letters()) {
            let c = Context::new(2, 3).unwrap();
            let w = Word::from_signed(&a);
            let once = Word::parse(&w.to_string(), &c).unwrap();
            let twice = Word::parse(&once.to_string(), &c).unwrap();
            prop_assert_eq!(&once, &w);
            prop_assert_eq!(once, twice);
        }
    }
}
