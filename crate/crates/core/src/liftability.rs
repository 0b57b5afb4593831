//! Parity classes of point permutations and the curve-lifting test.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::perm::{psi, Permutation};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Preserving,
    Reversing,
    Neither,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::Preserving => "parity-preserving",
            ParityClass::Reversing => "parity-reversing",
            ParityClass::Neither => "neither",
        })
    }
}

/// Classifies `perm` by where it sends the odd points `1, 3, …, 2n+1`.
pub fn parity(perm: &Permutation, _ctx: &Context) -> ParityClass {
    let odd_images = (1..=perm.len() as u32).step_by(2).map(|j| perm.apply(j));
    let (mut odd, mut even) = (0, 0);
    for image in odd_images {
        if image % 2 == 1 {
            odd += 1;
        } else {
            even += 1;
        }
    }
    match (odd, even) {
        (_, 0) => ParityClass::Preserving,
        (0, _) => ParityClass::Reversing,
        _ => ParityClass::Neither,
    }
}

pub fn in_w(perm: &Permutation, ctx: &Context) -> bool {
    parity(perm, ctx) != ParityClass::Neither
}

pub fn is_liftable_word(w: &Word, ctx: &Context) -> bool {
    in_w(&psi(w, ctx), ctx)
}

/// The map `W → ℤ/2`: 0 on parity-preserving, 1 on parity-reversing elements.
pub fn w_parity_map(perm: &Permutation, ctx: &Context) -> Result<u8> {
    match parity(perm, ctx) {
        ParityClass::Preserving => Ok(0),
        ParityClass::Reversing => Ok(1),
        ParityClass::Neither => Err(Error::NotInW),
    }
}

/// `|W| = 2 ((n+1)!)²`.
pub fn w_size(ctx: &Context) -> u64 {
    let f: u64 = (1..=ctx.n() as u64 + 1).product();
    2 * f * f
}

/// Counts `W` by running through all of `S_{2n+2}`.
pub fn w_size_exhaustive(ctx: &Context) -> u64 {
    all_permutations(ctx).filter(|p| in_w(p, ctx)).count() as u64
}

fn all_permutations(ctx: &Context) -> impl Iterator<Item = Permutation> + '_ {
    let m = ctx.points();
    (1..=m)
        .permutations(m as usize)
        .map(|v| Permutation::from_images(v).expect("a permutation"))
}

/// Checks that the kernel of `w_parity_map` is exactly the subgroup
/// generated by the transpositions `(i i+2)`, by closing the generators
/// under multiplication and comparing with a scan of `S_{2n+2}`.
pub fn kernel_generated_by_h(ctx: &Context) -> bool {
    let m = ctx.points() as usize;
    let gens: Vec<Permutation> = (1..=2 * ctx.n())
        .map(|i| Permutation::transposition(m, i, i + 2))
        .collect();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut frontier = vec![Permutation::identity(m)];
    seen.insert(Permutation::identity(m));
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.compose(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let kernel: HashSet<Permutation> = all_permutations(ctx)
        .filter(|p| w_parity_map(p, ctx) == Ok(0))
        .collect();
    kernel == seen
}

/// A closed curve on the punctured sphere, given by a cyclically reduced word
/// in the loops `x_1 … x_{2n+2}` around the marked points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    word: FreeWord,
}

impl CurveClass {
    pub fn new(word: FreeWord, ctx: &Context) -> Result<CurveClass> {
        let max = word.max_generator();
        if max > ctx.points() {
            return Err(Error::IndexOutOfRange {
                index: max as i64,
                max: ctx.points() as i64,
            });
        }
        Ok(CurveClass {
            word: word.cyclically_reduced(),
        })
    }

    pub fn parse(text: &str, ctx: &Context) -> Result<CurveClass> {
        CurveClass::new(FreeWord::parse(text)?, ctx)
    }

    /// `γ_{i,j} = x_i x_{i+1} ⋯ x_j`.
    pub fn gamma(i: u32, j: u32, ctx: &Context) -> Result<CurveClass> {
        CurveClass::new(FreeWord::from_letters((i as i32)..=(j as i32)), ctx)
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    /// Whether `other` represents the same cyclic word up to rotation and
    /// inversion.
    pub fn same_curve(&self, other: &CurveClass) -> bool {
        let a = self.word.letters();
        let rotations_match = |b: &[i32]| {
            a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b)))
        };
        rotations_match(other.word.letters()) || rotations_match(other.word.inverse().letters())
    }
}

/// `Σ_j ε_j · (exponent sum of x_j)` in `ℤ/k`, with `ε_j = +1` for odd and
/// `-1` for even `j`. The curve lifts iff this is zero.
pub fn curve_monodromy(c: &CurveClass, ctx: &Context) -> u32 {
    let k = ctx.k() as i64;
    let total: i64 = c
        .word
        .letters()
        .iter()
        .map(|&l| {
            let eps = if l.unsigned_abs() % 2 == 1 { 1 } else { -1 };
            eps * l.signum() as i64
        })
        .sum();
    total.rem_euclid(k) as u32
}

pub fn curve_lifts(c: &CurveClass, ctx: &Context) -> bool {
    curve_monodromy(c, ctx) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_f, gen_h, gen_r, gen_r1, gen_t};
    use proptest::prelude::*;

    fn ctx(n: u32) -> Context {
        Context::new(n, 3).unwrap()
    }

    #[test]
    fn parity_examples() {
        let c = ctx(2);
        assert_eq!(parity(&Permutation::identity(6), &c), ParityClass::Preserving);
        assert_eq!(parity(&psi(&gen_h(2, &c).unwrap(), &c), &c), ParityClass::Preserving);
        assert_eq!(parity(&psi(&Word::from_signed(&[1]), &c), &c), ParityClass::Neither);
        assert_eq!(parity(&psi(&gen_r(&c), &c), &c), ParityClass::Reversing);
        assert_eq!(parity(&psi(&gen_r1(&c), &c), &c), ParityClass::Reversing);
        assert!(!in_w(&psi(&Word::from_signed(&[1]), &c), &c));
    }

    #[test]
    fn parity_map() {
        let c = ctx(1);
        let r = psi(&gen_r(&c), &c);
        assert_eq!(w_parity_map(&psi(&gen_h(1, &c).unwrap(), &c), &c), Ok(0));
        assert_eq!(w_parity_map(&r, &c), Ok(1));
        assert_eq!(w_parity_map(&r.compose(&r), &c), Ok(0));
        assert_eq!(
            w_parity_map(&Permutation::transposition(4, 1, 2), &c),
            Err(Error::NotInW)
        );
    }

    #[test]
    fn named_generators_lift() {
        for n in 1..=3 {
            let c = ctx(n);
            for i in 1..=2 * n {
                assert!(is_liftable_word(&gen_h(i, &c).unwrap(), &c));
            }
            for i in 1..c.points() {
                for j in i + 1..=c.points() {
                    assert!(is_liftable_word(&gen_t(i, j, &c).unwrap(), &c));
                }
            }
            assert!(is_liftable_word(&gen_r(&c), &c));
            assert!(is_liftable_word(&gen_r1(&c), &c));
            assert!(is_liftable_word(&gen_f(&c), &c));
            assert!(!is_liftable_word(&Word::from_signed(&[1]), &c));
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(w_size(&ctx(1)), 8);
        assert_eq!(w_size(&ctx(2)), 72);
        for n in 1..=2 {
            assert_eq!(w_size_exhaustive(&ctx(n)), w_size(&ctx(n)));
        }
        assert_eq!(24 / w_size(&ctx(1)), 3);
    }

    #[test]
    fn kernel_generation() {
        assert!(kernel_generated_by_h(&ctx(1)));
        assert!(kernel_generated_by_h(&ctx(2)));
    }

    #[test]
    fn curves() {
        for k in 3..=5 {
            let c = Context::new(2, k).unwrap();
            for i in 1..=2 * c.n() + 1 {
                assert!(curve_lifts(&CurveClass::gamma(i, i + 1, &c).unwrap(), &c));
            }
            assert_eq!(curve_monodromy(&CurveClass::parse("x1", &c).unwrap(), &c), 1);
            assert!(curve_lifts(&CurveClass::gamma(1, 4, &c).unwrap(), &c));
            assert!(!curve_lifts(&CurveClass::gamma(1, 3, &c).unwrap(), &c));
        }
        assert!(CurveClass::parse("x7", &ctx(2)).is_err());
    }

    #[test]
    fn curve_identity_up_to_rotation_and_inversion() {
        let c = ctx(2);
        let a = CurveClass::parse("x1 x2 x3", &c).unwrap();
        assert!(a.same_curve(&CurveClass::parse("x2 x3 x1", &c).unwrap()));
        assert!(a.same_curve(&CurveClass::parse("x3^-1 x2^-1 x1^-1", &c).unwrap()));
        assert!(!a.same_curve(&CurveClass::parse("x1 x3 x2", &c).unwrap()));
        // Conjugates are stored cyclically reduced.
        let conj = CurveClass::parse("x4 x1 x2 x4^-1", &c).unwrap();
        assert_eq!(conj.word().to_string(), "x1 x2");
    }

    fn arb_liftable(n: u32) -> impl Strategy<Value = Word> {
        let c = ctx(n);
        let pieces: Vec<Word> = (1..=2 * n)
            .map(|i| gen_h(i, &c).unwrap())
            .chain((1..=2 * n + 1).map(|i| gen_t(i, i + 1, &c).unwrap()))
            .chain([gen_r(&c), gen_r1(&c)])
            .collect();
        prop::collection::vec((0..pieces.len(), any::<bool>()), 0..8).prop_map(move |v| {
            v.into_iter().fold(Word::empty(), |acc, (i, inv)| {
                let p = if inv { pieces[i].inverse() } else { pieces[i].clone() };
                acc.concat(&p)
            })
        })
    }

    proptest! {
        #[test]
        fn liftable_words_form_a_subgroup(u in arb_liftable(2), v in arb_liftable(2)) {
            let c = ctx(2);
            prop_assert!(is_liftable_word(&u, &c));
            prop_assert!(is_liftable_word(&u.concat(&v), &c));
            prop_assert!(is_liftable_word(&u.inverse(), &c));
        }

        #[test]
        fn parity_map_is_a_homomorphism(u in arb_liftable(2), v in arb_liftable(2)) {
            let c = ctx(2);
            let (pu, pv) = (psi(&u, &c), psi(&v, &c));
            let lhs = w_parity_map(&pu.compose(&pv), &c).unwrap();
            prop_assert_eq!(lhs, w_parity_map(&pu, &c).unwrap() ^ w_parity_map(&pv, &c).unwrap());
        }

        #[test]
        fn monodromy_rotation_and_inversion(v in prop::collection::vec((1i32..=6, any::<bool>()), 1..12), s in 0usize..12) {
            let c = Context::new(2, 5).unwrap();
            let letters: Vec<i32> = v.iter().map(|&(i, p)| if p { i } else { -i }).collect();
            let curve = CurveClass::new(FreeWord::from_letters(letters.iter().copied()), &c).unwrap();
            let w = curve.word().letters().to_vec();
            if !w.is_empty() {
                let s = s % w.len();
                let rotated: Vec<i32> = w[s..].iter().chain(&w[..s]).copied().collect();
                let rot = CurveClass::new(FreeWord::from_letters(rotated), &c).unwrap();
                prop_assert_eq!(curve_monodromy(&rot, &c), curve_monodromy(&curve, &c));
            }
            let inv = CurveClass::new(curve.word().inverse(), &c).unwrap();
            let m = curve_monodromy(&curve, &c);
            prop_assert_eq!(curve_monodromy(&inv, &c), (5 - m) % 5);
        }
    }
}
