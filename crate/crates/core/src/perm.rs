use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::word::Word;

/// A bijection of `{1, …, len}`. `images[j - 1]` is the image of `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(len: usize) -> Permutation {
        Permutation {
            images: (1..=len as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &x in &images {
            if x < 1 || x as usize > len || seen[x as usize - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a bijection")));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition `(a b)` on `{1, …, len}`.
    pub fn transposition(len: usize, a: u32, b: u32) -> Permutation {
        let mut p = Permutation::identity(len);
        p.images.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, j: u32) -> u32 {
        self.images[j as usize - 1]
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| j == i as u32 + 1)
    }

    pub fn parse(text: &str) -> Result<Permutation> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedToken(text.to_string()))?;
        let images = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::MalformedToken(t.to_string()))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

/// The induced permutation of the `2n + 2` marked points, `σ_i ↦ (i i+1)`.
pub fn psi(w: &Word, ctx: &Context) -> Permutation {
    psi_on(w, ctx.points() as usize)
}

pub(crate) fn psi_on(w: &Word, len: usize) -> Permutation {
    let mut p = Permutation::identity(len);
    // Right-multiplying by (i i+1) swaps the images of i and i+1.
    for l in w.letters() {
        let i = l.index() as usize;
        p.images.swap(i - 1, i);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::transposition(3, 1, 2);
        let b = Permutation::transposition(3, 2, 3);
        // (1 2)(2 3): 3 -> 2 -> 1.
        assert_eq!(a.compose(&b).images(), &[2, 3, 1]);
    }

    #[test]
    fn psi_of_single_letter_is_transposition() {
        let ctx = Context::new(1, 3).unwrap();
        assert_eq!(
            psi(&Word::from_signed(&[-2]), &ctx),
            Permutation::transposition(4, 2, 3)
        );
    }

    #[test]
    fn psi_of_h_is_i_i_plus_2() {
        let ctx = Context::new(2, 3).unwrap();
        for i in 1..=4u32 {
            let h = Word::from_signed(&[i as i32, i as i32 + 1, i as i32]);
            assert_eq!(psi(&h, &ctx), Permutation::transposition(6, i, i + 2));
        }
    }

    #[test]
    fn text_format() {
        let p = Permutation::from_images(vec![2, 1, 3]).unwrap();
        assert_eq!(p.to_string(), "[2,1,3]");
        assert_eq!(Permutation::parse("[2, 1,3]").unwrap(), p);
        assert!(Permutation::parse("[1,1,3]").is_err());
        assert!(Permutation::parse("1,2").is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(
            (1i32..=5, any::<bool>()).prop_map(|(i, p)| if p { i } else { -i }),
            0..30,
        )
        .prop_map(|v| Word::from_signed(&v))
    }

    proptest! {
        #[test]
        fn psi_is_a_homomorphism(u in arb_word(), v in arb_word()) {
            let ctx = Context::new(2, 3).unwrap();
            prop_assert_eq!(psi(&u.concat(&v), &ctx), psi(&u, &ctx).compose(&psi(&v, &ctx)));
        }

        #[test]
        fn psi_of_inverse_is_inverse(u in arb_word()) {
            let ctx = Context::new(2, 3).unwrap();
            prop_assert_eq!(psi(&u.inverse(), &ctx), psi(&u, &ctx).inverse());
        }
    }
}
