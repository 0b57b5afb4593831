//! Named mapping classes realized as half-twist words.
//!
//! The chain-twist words for `t_{i,j}` and the words for `r` and `r_1` are
//! choices; `validate` checks each against the oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::oracle::{half_twist, Group, Oracle};
use crate::perm::psi;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Generator {
    Sigma(u32),
    H(u32),
    T(u32, u32),
    R,
    R1,
    F,
    /// `h_{2n-1} ⋯ h_2 h_1 t_{1,2}`.
    HChainT,
}

/// A generator raised to a power.
pub type Factor = (Generator, i64);

impl Generator {
    /// Checks the indices against `ctx` (sphere ranges).
    pub fn validate_indices(self, ctx: &Context) -> Result<()> {
        let out = |index: u32, max: u32| {
            Err(Error::IndexOutOfRange {
                index: index as i64,
                max: max as i64,
            })
        };
        match self {
            Generator::Sigma(i) if i == 0 || i > ctx.max_sigma() => out(i, ctx.max_sigma()),
            Generator::H(i) if i == 0 || i > 2 * ctx.n() => out(i, 2 * ctx.n()),
            Generator::T(i, j) => {
                if i == 0 || i >= j {
                    Err(Error::Invalid(format!("t{i},{j}: need 1 <= i < j")))
                } else if j > ctx.points() {
                    out(j, ctx.points())
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn word(self, ctx: &Context) -> Result<Word> {
        self.validate_indices(ctx)?;
        Ok(match self {
            Generator::Sigma(i) => Word::letter(Letter::pos(i)),
            Generator::H(i) => Word::from_letters([Letter::pos(i), Letter::pos(i + 1), Letter::pos(i)]),
            Generator::T(i, j) => {
                if j == ctx.points() && i >= 3 {
                    return Generator::T(1, i - 1).word(ctx);
                }
                let chain: Word = (i..j).map(Letter::pos).collect();
                chain.pow((j - i + 1) as i64)
            }
            Generator::R1 => (1..=ctx.max_sigma()).map(Letter::pos).collect(),
            Generator::R => half_twist(ctx.points()),
            Generator::F => expand(&f_factors(ctx), ctx)?,
            Generator::HChainT => expand(&hchain_t_factors(ctx), ctx)?,
        })
    }

    pub fn parse(text: &str) -> Result<Generator> {
        let unknown = || Error::UnknownName(text.to_string());
        let index = |s: &str| -> Result<u32> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(unknown());
            }
            s.parse().map_err(|_| unknown())
        };
        match text {
            "r" => Ok(Generator::R),
            "r1" => Ok(Generator::R1),
            "F" => Ok(Generator::F),
            "C" | "hchain" => Ok(Generator::HChainT),
            _ => {
                if let Some(rest) = text.strip_prefix('s') {
                    Ok(Generator::Sigma(index(rest)?))
                } else if let Some(rest) = text.strip_prefix('h') {
                    Ok(Generator::H(index(rest)?))
                } else if let Some(rest) = text.strip_prefix('t') {
                    let (a, b) = rest.split_once(',').ok_or_else(unknown)?;
                    Ok(Generator::T(index(a)?, index(b)?))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::H(i) => write!(f, "h{i}"),
            Generator::T(i, j) => write!(f, "t{i},{j}"),
            Generator::R => f.write_str("r"),
            Generator::R1 => f.write_str("r1"),
            Generator::F => f.write_str("F"),
            Generator::HChainT => f.write_str("C"),
        }
    }
}

impl From<Generator> for String {
    fn from(g: Generator) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Generator {
    type Error = Error;
    fn try_from(s: String) -> Result<Generator> {
        Generator::parse(&s)
    }
}

pub fn gen_h(i: u32, ctx: &Context) -> Result<Word> {
    Generator::H(i).word(ctx)
}

pub fn gen_t(i: u32, j: u32, ctx: &Context) -> Result<Word> {
    Generator::T(i, j).word(ctx)
}

pub fn gen_r1(ctx: &Context) -> Word {
    Generator::R1.word(ctx).expect("r1 is always defined")
}

pub fn gen_r(ctx: &Context) -> Word {
    Generator::R.word(ctx).expect("r is always defined")
}

pub fn gen_f(ctx: &Context) -> Word {
    Generator::F.word(ctx).expect("F is always defined")
}

pub fn gen_hchain_t(ctx: &Context) -> Word {
    Generator::HChainT.word(ctx).expect("C is always defined")
}

/// Expands a product of generator powers, left to right.
pub fn expand(factors: &[Factor], ctx: &Context) -> Result<Word> {
    let mut out = Word::empty();
    for &(g, e) in factors {
        out = out.concat(&g.word(ctx)?.pow(e));
    }
    Ok(out)
}

pub fn format_factors(factors: &[Factor]) -> String {
    factors
        .iter()
        .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn h_run(indices: impl IntoIterator<Item = u32>, e: i64) -> impl Iterator<Item = Factor> {
    indices.into_iter().map(move |i| (Generator::H(i), e))
}

/// The factor list of `F` (so that `r_1 = r F`).
pub fn f_factors(ctx: &Context) -> Vec<Factor> {
    let n = ctx.n();
    if n == 1 {
        return vec![(Generator::H(1), -1)];
    }
    let mut out = Vec::new();
    for b in (1..n).rev() {
        out.extend(h_run(1..=2 * b, -1));
    }
    out.extend(h_run((1..=2 * n - 1).rev().step_by(2), -1));
    for a in (1..n).rev() {
        out.push((Generator::T(2 * a + 2, 2 * a + 3), a as i64));
    }
    out
}

/// `h_{2n-1} ⋯ h_2 h_1 t_{1,2}`.
pub fn hchain_t_factors(ctx: &Context) -> Vec<Factor> {
    let mut out: Vec<Factor> = h_run((1..=2 * ctx.n() - 1).rev(), 1).collect();
    out.push((Generator::T(1, 2), 1));
    out
}

/// Right-hand side expressing `t_{i,j}` (`j - i ≥ 2`) through `h`'s and
/// `t_{m,m+1}`'s.
pub fn t_factorization(i: u32, j: u32) -> Vec<Factor> {
    assert!(j >= i + 2, "factorization needs j - i >= 2");
    let d = j - i;
    if d == 2 {
        return vec![(Generator::H(i), 2)];
    }
    let mut out = Vec::new();
    if d % 2 == 1 {
        let a = ((d - 3) / 2) as i64;
        if a > 0 {
            for m in (i..=j - 1).rev().step_by(2) {
                out.push((Generator::T(m, m + 1), -a));
            }
        }
        let block: Vec<Factor> = h_run((i..=j - 2).rev(), 1).collect();
        for _ in 0..d.div_ceil(2) {
            out.extend_from_slice(&block);
        }
    } else {
        let a = ((d - 2) / 2) as i64;
        for m in (i..=j - 2).rev().step_by(2) {
            out.push((Generator::T(m, m + 1), -a));
        }
        out.extend(h_run((i..=j - 2).rev().step_by(2), 1));
        out.extend(h_run((i..=j - 2).step_by(2), 1));
        let block: Vec<Factor> = h_run((i..=j - 3).rev(), 1).collect();
        for _ in 0..d / 2 {
            out.extend_from_slice(&block);
        }
    }
    out
}

/// A named yes/no check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Runs the oracle checks that justify the chosen words for `r_1`, `r` and
/// the `t_{i,i+1}`.
pub fn validate(ctx: &Context, oracle: &Oracle) -> Result<Vec<Check>> {
    let n = ctx.n();
    let m = ctx.points();
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool| out.push(Check { name, passed });

    let r1 = gen_r1(ctx);
    let cycle: Vec<u32> = (2..=m).chain([1]).collect();
    push(
        "psi(r1) is the rotation j -> j+1".into(),
        psi(&r1, ctx).images() == cycle.as_slice(),
    );
    push(
        format!("order of r1 in sphere is {m}"),
        oracle.order_of(&r1, Group::Sphere, ctx, m as u64)? == Some(m as u64),
    );
    for i in 1..=2 * n {
        let lhs = r1.conjugate(&Word::letter(Letter::pos(i)));
        push(
            format!("r1 s{i} r1^-1 = s{}", i + 1),
            oracle.eq_sphere(&lhs, &Word::letter(Letter::pos(i + 1)), ctx)?,
        );
    }

    let r = gen_r(ctx);
    let flip: Vec<u32> = (1..=m).rev().collect();
    push("psi(r) is i -> 2n+3-i".into(), psi(&r, ctx).images() == flip.as_slice());
    push(
        "r is an involution".into(),
        oracle.is_trivial(Group::Sphere, &r.pow(2), ctx)?,
    );
    for i in 1..=2 * n + 1 {
        let lhs = r.conjugate(&Word::letter(Letter::pos(i)));
        push(
            format!("r s{i} r^-1 = s{}", m - i),
            oracle.eq_sphere(&lhs, &Word::letter(Letter::pos(m - i)), ctx)?,
        );
    }

    for i in 1..=2 * n {
        let t = gen_t(i, i + 1, ctx)?;
        push(format!("t{i},{} is pure", i + 1), psi(&t, ctx).is_identity());
        for s in (1..=2 * n).filter(|&s| s + 1 < i || s > i + 1) {
            let sw = Word::letter(Letter::pos(s));
            push(
                format!("t{i},{} commutes with s{s}", i + 1),
                oracle.eq_disk(&t.concat(&sw), &sw.concat(&t), ctx)?,
            );
        }
    }
    // t_{1,3} = h_1^2 pins the handedness of t.
    let t13 = gen_t(1, 3, ctx)?;
    push("t1,3 = h1^2".into(), oracle.eq_disk(&t13, &gen_h(1, ctx)?.pow(2), ctx)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Context {
        Context::new(n, 3).unwrap()
    }

    #[test]
    fn basic_words() {
        let c = ctx(1);
        assert_eq!(gen_h(1, &c).unwrap(), Word::from_signed(&[1, 2, 1]));
        assert_eq!(gen_t(1, 2, &c).unwrap(), Word::from_signed(&[1, 1]));
        assert_eq!(gen_t(1, 3, &c).unwrap(), Word::from_signed(&[1, 2]).pow(3));
        assert_eq!(gen_r1(&c), Word::from_signed(&[1, 2, 3]));
        assert_eq!(gen_r(&c).len(), 6);
        assert_eq!(gen_f(&c), Word::from_signed(&[-1, -2, -1]));
        assert_eq!(gen_t(1, 2, &c).unwrap().exponent_sum(), 2);
    }

    #[test]
    fn t_with_last_point_is_rewritten() {
        let c = ctx(2);
        assert_eq!(gen_t(4, 6, &c).unwrap(), gen_t(1, 3, &c).unwrap());
        assert_eq!(gen_t(2, 6, &c).unwrap().max_index(), 5);
        assert!(gen_t(3, 7, &c).is_err());
        assert!(gen_t(3, 3, &c).is_err());
        assert!(gen_h(5, &c).is_err());
    }

    #[test]
    fn f_for_n2() {
        let f = format_factors(&f_factors(&ctx(2)));
        assert_eq!(f, "h1^-1 h2^-1 h3^-1 h1^-1 t4,5");
        let f3 = format_factors(&f_factors(&ctx(3)));
        assert_eq!(f3, "h1^-1 h2^-1 h3^-1 h4^-1 h1^-1 h2^-1 h5^-1 h3^-1 h1^-1 t6,7^2 t4,5");
    }

    #[test]
    fn t_factorization_shapes() {
        assert_eq!(format_factors(&t_factorization(1, 3)), "h1^2");
        assert_eq!(format_factors(&t_factorization(1, 4)), "h2 h1 h2 h1");
        assert_eq!(
            format_factors(&t_factorization(1, 5)),
            "t3,4^-1 t1,2^-1 h3 h1 h1 h3 h2 h1 h2 h1"
        );
        assert_eq!(
            format_factors(&t_factorization(1, 6)),
            "t5,6^-1 t3,4^-1 t1,2^-1 h4 h3 h2 h1 h4 h3 h2 h1 h4 h3 h2 h1"
        );
    }

    #[test]
    fn names_round_trip() {
        for g in [
            Generator::Sigma(3),
            Generator::H(2),
            Generator::T(1, 2),
            Generator::T(10, 12),
            Generator::R,
            Generator::R1,
            Generator::F,
            Generator::HChainT,
        ] {
            assert_eq!(Generator::parse(&g.to_string()).unwrap(), g);
        }
        assert_eq!(Generator::parse("hchain").unwrap(), Generator::HChainT);
        for bad in ["q", "h", "t1", "t1,", "s-1", "R"] {
            assert!(Generator::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn permutations_of_named_generators() {
        for n in 1..=3 {
            let c = ctx(n);
            let m = c.points();
            for i in 1..=2 * n {
                let p = psi(&gen_h(i, &c).unwrap(), &c);
                assert_eq!(p, crate::perm::Permutation::transposition(m as usize, i, i + 2));
            }
            for i in 1..m {
                for j in i + 1..=m {
                    assert!(psi(&gen_t(i, j, &c).unwrap(), &c).is_identity());
                }
            }
        }
    }

    #[test]
    fn validations_pass() {
        let o = Oracle::default();
        for n in 1..=3 {
            let v = validate(&ctx(n), &o).unwrap();
            for check in &v {
                assert!(check.passed, "n={n}: {}", check.name);
            }
        }
    }

    #[test]
    fn r1_is_r_times_f() {
        let o = Oracle::default();
        for n in 1..=3 {
            let c = ctx(n);
            let rf = gen_r(&c).concat(&gen_f(&c));
            assert!(o.eq_sphere(&gen_r1(&c), &rf, &c).unwrap(), "n={n}");
        }
    }
}
