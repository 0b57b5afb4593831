//! Reduced words in a free group on `x_1, …, x_m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A freely reduced word; letter `j` is `x_j`, `-j` is `x_j^{-1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    pub fn generator(j: u32) -> FreeWord {
        FreeWord {
            letters: vec![j as i32],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in letters {
            out.push(l);
        }
        out
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    /// Appends `other` in place, reducing at the junction.
    pub fn append(&mut self, other: &FreeWord) {
        let mut cut = 0;
        let n = self.letters.len();
        while cut < n && cut < other.letters.len() && self.letters[n - 1 - cut] == -other.letters[cut] {
            cut += 1;
        }
        self.letters.truncate(n - cut);
        self.letters.extend_from_slice(&other.letters[cut..]);
    }

    /// Appends the inverse of `other` in place.
    pub fn append_inverse(&mut self, other: &FreeWord) {
        for &l in other.letters.iter().rev() {
            self.push(-l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..e.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Splits the word as `u · core · u^{-1}` with `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (FreeWord, FreeWord) {
        let w = &self.letters;
        let mut s = 0;
        while 2 * s + 1 < w.len() && w[s] == -w[w.len() - 1 - s] {
            s += 1;
        }
        (
            FreeWord {
                letters: w[..s].to_vec(),
            },
            FreeWord {
                letters: w[s..w.len() - s].to_vec(),
            },
        )
    }

    pub fn cyclically_reduced(&self) -> FreeWord {
        self.cyclic_decomposition().1
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || a != -b,
            _ => true,
        }
    }

    /// Exponent sum of `x_j`.
    pub fn exponent_of(&self, j: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() == j)
            .map(|l| l.signum() as i64)
            .sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Parses whitespace-separated `x<j>` / `x<j>^-1` tokens, reducing freely.
    pub fn parse(text: &str) -> Result<FreeWord> {
        let mut out = FreeWord::identity();
        for token in text.split_whitespace() {
            let bad = || Error::MalformedToken(token.to_string());
            let body = token.strip_prefix('x').ok_or_else(bad)?;
            let (digits, sign) = match body.strip_suffix("^-1") {
                Some(d) => (d, -1),
                None => (body, 1),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let j: i32 = digits.parse().map_err(|_| bad())?;
            if j < 1 {
                return Err(bad());
            }
            out.push(sign * j);
        }
        Ok(out)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl From<FreeWord> for String {
    fn from(w: FreeWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for FreeWord {
    type Error = Error;
    fn try_from(s: String) -> Result<FreeWord> {
        FreeWord::parse(&s)
    }
}
