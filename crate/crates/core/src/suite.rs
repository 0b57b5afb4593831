//! Executable checks of the relations, factorizations, generating sets and
//! homology identities. Each check yields a [`Claim`] whose witness holds
//! enough data (words, matrices) to re-run the verdict without the code that
//! produced it.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::cover::{check_normalizes_deck, Conventions, LiftName, Lifts};
use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::generators::{
    expand, f_factors, format_factors, gen_f, gen_h, gen_hchain_t, gen_r, gen_r1, gen_t, t_factorization, validate,
    Check, Factor, Generator,
};
use crate::liftability::{curve_lifts, w_size, w_size_exhaustive, CurveClass};
use crate::linalg::Matrix;
use crate::oracle::{Group, Oracle, DEFAULT_BUDGET};
use crate::syntax::parse_factors;
use crate::word::{Letter, Word};

/// Attached to every claim about the homology representation, which is not
/// faithful.
pub const HOMOLOGY_QUALIFIER: &str = "homology-level (necessary condition only)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimGroup {
    Disk,
    Star,
    Sphere,
    Homology,
}

impl From<Group> for ClaimGroup {
    fn from(g: Group) -> Self {
        match g {
            Group::Disk => ClaimGroup::Disk,
            Group::Star => ClaimGroup::Star,
            Group::Sphere => ClaimGroup::Sphere,
        }
    }
}

impl fmt::Display for ClaimGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimGroup::Disk => "disk",
            ClaimGroup::Star => "star",
            ClaimGroup::Sphere => "sphere",
            ClaimGroup::Homology => "homology",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

/// An oracle verdict on `lhs = rhs`. `expected` is false for refutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equality {
    pub label: String,
    pub group: Group,
    pub lhs: Word,
    pub rhs: Word,
    pub expected: bool,
    pub equal: bool,
}

impl Equality {
    pub fn passed(&self) -> bool {
        self.equal == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixIdentity {
    pub label: String,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl MatrixIdentity {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisWord {
    pub symbol: Generator,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetWitness {
    pub target: Generator,
    pub word: Word,
    /// Product of basis symbols, e.g. `r1^2 h1 r1^-2`.
    pub witness: String,
    pub equal: bool,
}

/// Words for every target over a small basis, with the half-twist words of
/// both sides, so the oracle can be re-run from the certificate alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationCertificate {
    pub group: Group,
    pub ctx: Context,
    pub basis: Vec<BasisWord>,
    pub targets: Vec<TargetWitness>,
}

impl GenerationCertificate {
    pub fn passed(&self) -> bool {
        !self.targets.is_empty() && self.targets.iter().all(|t| t.equal)
    }

    /// Expands a witness string using the stored basis words only.
    pub fn expand_witness(&self, witness: &str) -> Result<Word> {
        let mut out = Word::empty();
        for (g, e) in parse_factors(witness, &self.ctx)? {
            let b = self
                .basis
                .iter()
                .find(|b| b.symbol == g)
                .ok_or_else(|| Error::Invalid(format!("{g} is not a basis symbol")))?;
            out = out.concat(&b.word.pow(e));
        }
        Ok(out)
    }

    /// Re-runs the oracle on every stored target.
    pub fn reverify(&self, oracle: &Oracle) -> Result<bool> {
        if self.targets.is_empty() {
            return Ok(false);
        }
        for t in &self.targets {
            let w = self.expand_witness(&t.witness)?;
            if !oracle.eq(self.group, &w, &t.word, &self.ctx)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equalities: Vec<Equality>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixIdentity>,
    /// Scalar facts (ranks, orders, counts) recorded with their outcome.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<GenerationCertificate>,
}

impl Witness {
    fn is_empty(&self) -> bool {
        self.equalities.is_empty() && self.matrices.is_empty() && self.checks.is_empty() && self.certificate.is_none()
    }

    pub fn passed(&self) -> bool {
        !self.is_empty()
            && self.equalities.iter().all(Equality::passed)
            && self.matrices.iter().all(MatrixIdentity::passed)
            && self.checks.iter().all(|c| c.passed)
            && self.certificate.as_ref().is_none_or(GenerationCertificate::passed)
    }

    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    fn matrix(&mut self, label: impl Into<String>, lhs: Matrix, rhs: Matrix) {
        self.matrices.push(MatrixIdentity {
            label: label.into(),
            lhs,
            rhs,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub ctx: Context,
    pub group: ClaimGroup,
    pub status: Status,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qualifier: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Claim {
    fn new(id: &str, ctx: &Context, group: ClaimGroup, statement: impl Into<String>) -> Claim {
        Claim {
            id: id.to_string(),
            ctx: *ctx,
            group,
            status: Status::Skipped,
            statement: statement.into(),
            qualifier: (group == ClaimGroup::Homology).then(|| HOMOLOGY_QUALIFIER.to_string()),
            note: None,
            witness: None,
        }
    }

    fn skipped(mut self, note: impl Into<String>) -> Claim {
        self.status = Status::Skipped;
        self.note = Some(note.into());
        self
    }

    /// Settles the status from a computed witness. Budget overruns skip the
    /// claim; any other error fails it.
    fn settle(mut self, witness: Result<Witness>) -> Claim {
        match witness {
            Ok(w) => {
                self.status = if w.passed() { Status::Pass } else { Status::Fail };
                self.witness = Some(w);
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                self.status = Status::Skipped;
                self.note = Some(e.to_string());
            }
            Err(e) => {
                self.status = Status::Fail;
                self.note = Some(e.to_string());
            }
        }
        self
    }

    fn vacuous(mut self, note: &str) -> Claim {
        self.status = Status::Pass;
        self.note = Some(note.to_string());
        self
    }

    /// Recomputes the verdict from the witness alone: words go back through
    /// the oracle, matrices are compared, recorded checks are taken as is.
    pub fn reverify(&self, oracle: &Oracle) -> Result<Status> {
        let Some(w) = &self.witness else {
            return Ok(self.status);
        };
        let mut ok = !w.is_empty();
        for e in &w.equalities {
            ok &= oracle.eq(e.group, &e.lhs, &e.rhs, &self.ctx)? == e.expected;
        }
        ok &= w.matrices.iter().all(MatrixIdentity::passed);
        ok &= w.checks.iter().all(|c| c.passed);
        if let Some(cert) = &w.certificate {
            ok &= cert.reverify(oracle)?;
        }
        Ok(if ok { Status::Pass } else { Status::Fail })
    }
}

/// Size bounds and budgets for a suite run. Claims beyond a bound are
/// reported as skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub budget_letters: usize,
    /// Largest `n` for claims decided by the word oracles.
    pub max_n_words: u32,
    pub max_n_homology: u32,
    pub max_k_homology: u32,
    /// Largest `n` for which `W` is enumerated through all of `S_{2n+2}`.
    pub max_n_exhaustive: u32,
    pub conventions: Conventions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget_letters: DEFAULT_BUDGET,
            max_n_words: 4,
            max_n_homology: 3,
            max_k_homology: 4,
            max_n_exhaustive: 3,
            conventions: Conventions::default(),
        }
    }
}

impl SuiteConfig {
    pub fn oracle(&self) -> Oracle {
        Oracle::with_budget(self.budget_letters)
    }

    fn words_bound(&self, ctx: &Context) -> Option<String> {
        (ctx.n() > self.max_n_words).then(|| format!("over bound: n = {} > {}", ctx.n(), self.max_n_words))
    }

    fn homology_bound(&self, ctx: &Context) -> Option<String> {
        if ctx.n() > self.max_n_homology || ctx.k() > self.max_k_homology {
            Some(format!(
                "over bound: (n, k) = ({}, {}) exceeds ({}, {})",
                ctx.n(),
                ctx.k(),
                self.max_n_homology,
                self.max_k_homology
            ))
        } else if ctx.k() < 3 {
            Some("lifted generators need k >= 3".into())
        } else {
            None
        }
    }
}

fn equality(oracle: &Oracle, group: Group, label: String, lhs: Word, rhs: Word, ctx: &Context) -> Result<Equality> {
    let equal = oracle.eq(group, &lhs, &rhs, ctx)?;
    Ok(Equality {
        label,
        group,
        lhs,
        rhs,
        expected: true,
        equal,
    })
}

fn refutation(oracle: &Oracle, group: Group, label: String, lhs: Word, rhs: Word, ctx: &Context) -> Result<Equality> {
    let mut e = equality(oracle, group, label, lhs, rhs, ctx)?;
    e.expected = false;
    Ok(e)
}

fn equalities(items: Vec<Equality>) -> Witness {
    Witness {
        equalities: items,
        ..Witness::default()
    }
}

// ---------------------------------------------------------------------------
// Relations

/// The relation families: `h_i t_{i,i+1} h_i^{-1} = t_{i+1,i+2}`, the
/// factorizations of `t_{i,j}`, the shift `C^{-1} h_i C = h_{i+2}` with
/// `C = h_{2n-1} ⋯ h_1 t_{1,2}`, and the rank-three relation among
/// `h_i, h_{i+1}, h_{i+2}`.
pub fn verify_relations(ctx: &Context, oracle: &Oracle) -> Vec<Claim> {
    let n = ctx.n();
    let conj_t = |i: u32, group: Group| -> Result<Equality> {
        let lhs = gen_h(i, ctx)?.conjugate(&gen_t(i, i + 1, ctx)?);
        equality(
            oracle,
            group,
            format!("h{i} t{i},{} h{i}^-1 = t{},{}", i + 1, i + 1, i + 2),
            lhs,
            gen_t(i + 1, i + 2, ctx)?,
            ctx,
        )
    };

    let mut out = Vec::new();
    out.push(
        Claim::new(
            "Rel-conj-t-disk",
            ctx,
            ClaimGroup::Disk,
            "h_i t_{i,i+1} h_i^-1 = t_{i+1,i+2} for i <= 2n-1",
        )
        .settle(
            (1..2 * n)
                .map(|i| conj_t(i, Group::Disk))
                .collect::<Result<_>>()
                .map(equalities),
        ),
    );
    out.push(
        Claim::new(
            "Rel-conj-t-sphere",
            ctx,
            ClaimGroup::Sphere,
            "h_2n t_{2n,2n+1} h_2n^-1 = t_{2n+1,2n+2}",
        )
        .settle(conj_t(2 * n, Group::Sphere).map(|e| equalities(vec![e]))),
    );

    let factorizations = || -> Result<Witness> {
        let mut items = Vec::new();
        for i in 1..=2 * n + 1 {
            for j in i + 2..=2 * n + 1 {
                let factors = t_factorization(i, j);
                items.push(equality(
                    oracle,
                    Group::Disk,
                    format!("t{i},{j} = {}", format_factors(&factors)),
                    gen_t(i, j, ctx)?,
                    expand(&factors, ctx)?,
                    ctx,
                )?);
            }
        }
        Ok(equalities(items))
    };
    out.push(
        Claim::new(
            "Rel-t-factorization",
            ctx,
            ClaimGroup::Disk,
            "t_{i,j} factors through h's and t_{m,m+1}'s for 1 <= i < j <= 2n+1, j-i >= 2",
        )
        .settle(factorizations()),
    );

    let shift = Claim::new(
        "Lemma-shift",
        ctx,
        ClaimGroup::Disk,
        "C^-1 h_i C = h_{i+2}, C = h_{2n-1}...h_1 t_{1,2}",
    );
    if n < 2 {
        out.push(shift.vacuous("no admissible i for n = 1"));
    } else {
        let c = gen_hchain_t(ctx);
        let items = (1..=2 * n - 3)
            .map(|i| {
                let lhs = c.inverse().conjugate(&gen_h(i, ctx)?);
                equality(
                    oracle,
                    Group::Disk,
                    format!("C^-1 h{i} C = h{}", i + 2),
                    lhs,
                    gen_h(i + 2, ctx)?,
                    ctx,
                )
            })
            .collect::<Result<_>>()
            .map(equalities);
        out.push(shift.settle(items));
    }

    let rank3 = Claim::new(
        "Rel-rank3",
        ctx,
        ClaimGroup::Disk,
        "h_i^-1 h_{i+1}^-1 h_{i+2}^-1 h_i h_{i+2} h_{i+1} h_i = h_{i+2}",
    );
    if n < 2 {
        out.push(rank3.vacuous("no admissible i for n = 1"));
    } else {
        let items = (1..=2 * n - 3)
            .map(|i| {
                let h = |j: u32| gen_h(j, ctx);
                let lhs = crate::word::product(
                    [
                        h(i)?.inverse(),
                        h(i + 1)?.inverse(),
                        h(i + 2)?.inverse(),
                        h(i)?,
                        h(i + 2)?,
                        h(i + 1)?,
                        h(i)?,
                    ]
                    .iter(),
                );
                equality(
                    oracle,
                    Group::Disk,
                    format!(
                        "h{i}^-1 h{a}^-1 h{b}^-1 h{i} h{b} h{a} h{i} = h{b}",
                        a = i + 1,
                        b = i + 2
                    ),
                    lhs,
                    h(i + 2)?,
                    ctx,
                )
            })
            .collect::<Result<_>>()
            .map(equalities);
        out.push(rank3.settle(items));
    }
    out
}

/// `r_1 = r F` in the sphere group.
pub fn verify_factorization_r1(ctx: &Context, oracle: &Oracle) -> Claim {
    let witness = equality(
        oracle,
        Group::Sphere,
        format!("r1 = r {}", format_factors(&f_factors(ctx))),
        gen_r1(ctx),
        gen_r(ctx).concat(&gen_f(ctx)),
        ctx,
    );
    Claim::new("Lemma-r1-factorization", ctx, ClaimGroup::Sphere, "r_1 = r F")
        .settle(witness.map(|e| equalities(vec![e])))
}

/// Order of `w` in the sphere group: `w^order = 1` and `w^d ≠ 1` below it.
fn order_witness(name: &str, w: &Word, order: u64, ctx: &Context, oracle: &Oracle) -> Result<Witness> {
    let found = oracle.order_of(w, Group::Sphere, ctx, order)?;
    let mut items = vec![equality(
        oracle,
        Group::Sphere,
        format!("{name}^{order} = 1"),
        w.pow(order as i64),
        Word::empty(),
        ctx,
    )?];
    for d in 1..order {
        items.push(refutation(
            oracle,
            Group::Sphere,
            format!("{name}^{d} != 1"),
            w.pow(d as i64),
            Word::empty(),
            ctx,
        )?);
    }
    let mut witness = equalities(items);
    witness.check(format!("order_of({name}) = {order}"), found == Some(order));
    Ok(witness)
}

pub fn verify_orders(ctx: &Context, oracle: &Oracle) -> Vec<Claim> {
    let m = ctx.points() as u64;
    vec![
        Claim::new("Order-r", ctx, ClaimGroup::Sphere, "r has order 2").settle(order_witness(
            "r",
            &gen_r(ctx),
            2,
            ctx,
            oracle,
        )),
        Claim::new("Order-r1", ctx, ClaimGroup::Sphere, "r_1 has order 2n+2").settle(order_witness(
            "r1",
            &gen_r1(ctx),
            m,
            ctx,
            oracle,
        )),
    ]
}

/// Classical sphere-group relations, plus two words that must not be trivial.
pub fn verify_oracle_presentation(ctx: &Context, oracle: &Oracle) -> Claim {
    let top = ctx.max_sigma();
    let s = |i: u32| Word::letter(Letter::pos(i));
    let run = || -> Result<Witness> {
        let mut items = Vec::new();
        let mut eq = |label: String, lhs: Word, rhs: Word| -> Result<()> {
            items.push(equality(oracle, Group::Sphere, label, lhs, rhs, ctx)?);
            Ok(())
        };
        for i in 1..=top {
            for j in i + 2..=top {
                eq(format!("s{i} s{j} = s{j} s{i}"), s(i).concat(&s(j)), s(j).concat(&s(i)))?;
            }
            if i < top {
                let a = crate::word::product(&[s(i), s(i + 1), s(i)]);
                let b = crate::word::product(&[s(i + 1), s(i), s(i + 1)]);
                eq(format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1), a, b)?;
            }
        }
        let up: Word = (1..=top).map(Letter::pos).collect();
        let down: Word = (1..=top).rev().map(Letter::pos).collect();
        eq(format!("s1...s{top} s{top}...s1 = 1"), up.concat(&down), Word::empty())?;
        eq(
            format!("(s1...s{top})^{} = 1", top + 1),
            up.pow(top as i64 + 1),
            Word::empty(),
        )?;
        items.push(refutation(
            oracle,
            Group::Sphere,
            "s1 != 1".into(),
            s(1),
            Word::empty(),
            ctx,
        )?);
        items.push(refutation(
            oracle,
            Group::Sphere,
            "s1^2 != 1".into(),
            s(1).pow(2),
            Word::empty(),
            ctx,
        )?);
        Ok(equalities(items))
    };
    Claim::new(
        "Oracle-presentation",
        ctx,
        ClaimGroup::Sphere,
        "sphere oracle confirms the classical relations and refutes s1 = 1, s1^2 = 1",
    )
    .settle(run())
}

/// The oracle checks behind the chosen words for `r_1`, `r` and `t_{i,i+1}`.
pub fn verify_generator_words(ctx: &Context, oracle: &Oracle) -> Claim {
    Claim::new(
        "Generator-words",
        ctx,
        ClaimGroup::Sphere,
        "words for r1, r and t_{i,i+1} realize the named mapping classes",
    )
    .settle(validate(ctx, oracle).map(|checks| Witness {
        checks,
        ..Witness::default()
    }))
}

pub fn verify_liftability(ctx: &Context, config: &SuiteConfig) -> Claim {
    let mut w = Witness::default();
    let formula = w_size(ctx);
    if ctx.n() <= config.max_n_exhaustive {
        let counted = w_size_exhaustive(ctx);
        w.check(
            format!("|W| = {counted} by enumeration, 2((n+1)!)^2 = {formula}"),
            counted == formula,
        );
    }
    let run = move || -> Result<Witness> {
        for i in 1..=ctx.points() - 1 {
            let c = CurveClass::gamma(i, i + 1, ctx)?;
            w.check(format!("gamma_{i},{} lifts", i + 1), curve_lifts(&c, ctx));
        }
        let x1 = CurveClass::new(FreeWord::generator(1), ctx)?;
        w.check("x1 does not lift", !curve_lifts(&x1, ctx));
        Ok(w)
    };
    Claim::new(
        "Liftability",
        ctx,
        ClaimGroup::Sphere,
        "|W| = 2((n+1)!)^2; gamma_{i,i+1} lift and x1 does not",
    )
    .settle(run())
}

// ---------------------------------------------------------------------------
// Generation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationGroup {
    LmodSphere,
    LmodStar,
    LmodDisk,
}

impl GenerationGroup {
    pub const ALL: [GenerationGroup; 3] = [
        GenerationGroup::LmodSphere,
        GenerationGroup::LmodStar,
        GenerationGroup::LmodDisk,
    ];

    pub fn oracle_group(self) -> Group {
        match self {
            GenerationGroup::LmodSphere => Group::Sphere,
            GenerationGroup::LmodStar => Group::Star,
            GenerationGroup::LmodDisk => Group::Disk,
        }
    }

    pub fn claim_id(self) -> &'static str {
        match self {
            GenerationGroup::LmodSphere => "Prop-LMod-generation",
            GenerationGroup::LmodStar => "Prop-LMod-star-generation",
            GenerationGroup::LmodDisk => "Prop-LMod-disk-generation",
        }
    }

    pub fn basis(self, ctx: &Context) -> Basis {
        match self {
            GenerationGroup::LmodSphere => Basis::Sphere,
            _ if ctx.n() == 1 => Basis::Pair,
            _ => Basis::Chain,
        }
    }

    /// The standard generators each certificate covers.
    pub fn targets(self, ctx: &Context) -> Vec<Generator> {
        let n = ctx.n();
        let m = ctx.points();
        match self {
            GenerationGroup::LmodSphere => {
                let mut out: Vec<Generator> = (1..=2 * n).map(Generator::H).collect();
                for i in 1..m {
                    for j in i + 1..=m {
                        out.push(Generator::T(i, j));
                    }
                }
                out.extend([Generator::R1, Generator::R]);
                out
            }
            _ => {
                let mut out: Vec<Generator> = (1..2 * n).map(Generator::H).collect();
                out.extend((1..=2 * n).map(|i| Generator::T(i, i + 1)));
                out
            }
        }
    }
}

impl fmt::Display for GenerationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenerationGroup::LmodSphere => "lmod_sphere",
            GenerationGroup::LmodStar => "lmod_star",
            GenerationGroup::LmodDisk => "lmod_disk",
        })
    }
}

impl std::str::FromStr for GenerationGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GenerationGroup::ALL
            .into_iter()
            .find(|g| g.to_string() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Small generating sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `{h_1, t_{1,2}, r_1}`.
    Sphere,
    /// `{h_1, h_2, C}` with `C = h_{2n-1} ⋯ h_1 t_{1,2}`, for `n ≥ 2`.
    Chain,
    /// `{h_1, t_{1,2}}`, for `n = 1`.
    Pair,
}

impl Basis {
    pub fn symbols(self) -> Vec<Generator> {
        match self {
            Basis::Sphere => vec![Generator::H(1), Generator::T(1, 2), Generator::R1],
            Basis::Chain => vec![Generator::H(1), Generator::H(2), Generator::HChainT],
            Basis::Pair => vec![Generator::H(1), Generator::T(1, 2)],
        }
    }
}

fn invert(f: &[Factor]) -> Vec<Factor> {
    f.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn power(f: &[Factor], e: i64) -> Vec<Factor> {
    let base = if e < 0 { invert(f) } else { f.to_vec() };
    (0..e.unsigned_abs()).flat_map(|_| base.iter().copied()).collect()
}

/// `a b a^{-1}`.
fn conj(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
    [a, b, &invert(a)].concat()
}

/// Merges neighbouring powers of the same symbol.
fn simplify(f: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    for (g, e) in f {
        match out.last_mut() {
            Some((h, x)) if *h == g => {
                *x += e;
                if *x == 0 {
                    out.pop();
                }
            }
            _ if e != 0 => out.push((g, e)),
            _ => {}
        }
    }
    out
}

/// The symbolic rewriting of standard generators over a basis.
struct Rewriter {
    basis: Basis,
    ctx: Context,
}

impl Rewriter {
    fn h(&self, i: u32) -> Result<Vec<Factor>> {
        let n = self.ctx.n();
        match self.basis {
            _ if i == 1 => Ok(vec![(Generator::H(1), 1)]),
            // r_1^{i-1} h_1 r_1^{-(i-1)}.
            Basis::Sphere if i <= 2 * n => {
                let r = vec![(Generator::R1, i as i64 - 1)];
                Ok(conj(&r, &[(Generator::H(1), 1)]))
            }
            Basis::Chain if i == 2 => Ok(vec![(Generator::H(2), 1)]),
            // C^{-1} h_{i-2} C.
            Basis::Chain if i < 2 * n => Ok(conj(&[(Generator::HChainT, -1)], &self.h(i - 2)?)),
            _ => Err(Error::Invalid(format!("h{i} is not a target over this basis"))),
        }
    }

    fn t(&self, i: u32, j: u32) -> Result<Vec<Factor>> {
        let n = self.ctx.n();
        let m = self.ctx.points();
        if j == i + 1 {
            if i == 1 {
                return match self.basis {
                    // h_1^{-1} h_2^{-1} ⋯ h_{2n-1}^{-1} C.
                    Basis::Chain => {
                        let mut out = Vec::new();
                        for a in 1..2 * n {
                            out.extend(invert(&self.h(a)?));
                        }
                        out.push((Generator::HChainT, 1));
                        Ok(out)
                    }
                    _ => Ok(vec![(Generator::T(1, 2), 1)]),
                };
            }
            let last = if self.basis == Basis::Sphere { m - 1 } else { 2 * n };
            if i > last {
                return Err(Error::Invalid(format!("t{i},{j} is not a target over this basis")));
            }
            // h_{i-1} t_{i-1,i} h_{i-1}^{-1}.
            return Ok(conj(&self.h(i - 1)?, &self.t(i - 1, i)?));
        }
        if self.basis != Basis::Sphere {
            return Err(Error::Invalid(format!("t{i},{j} is not a target over this basis")));
        }
        if j == m {
            // The curve around p_i … p_{2n+2} also bounds p_1 … p_{i-1}.
            return if i <= 2 { Ok(Vec::new()) } else { self.t(1, i - 1) };
        }
        self.factors(&t_factorization(i, j))
    }

    fn factors(&self, f: &[Factor]) -> Result<Vec<Factor>> {
        let mut out = Vec::new();
        for &(g, e) in f {
            let x = match g {
                Generator::H(i) => self.h(i)?,
                Generator::T(i, j) => self.t(i, j)?,
                other => return Err(Error::Invalid(format!("cannot rewrite {other}"))),
            };
            out.extend(power(&x, e));
        }
        Ok(out)
    }

    fn rewrite(&self, target: Generator) -> Result<Vec<Factor>> {
        let out = match (self.basis, target) {
            (_, Generator::H(i)) => self.h(i)?,
            (_, Generator::T(i, j)) => self.t(i, j)?,
            (Basis::Sphere, Generator::R1) => vec![(Generator::R1, 1)],
            // r = r_1 F^{-1}.
            (Basis::Sphere, Generator::R) => {
                let mut out = vec![(Generator::R1, 1)];
                out.extend(invert(&self.factors(&f_factors(&self.ctx))?));
                out
            }
            (Basis::Chain, Generator::HChainT) => vec![(Generator::HChainT, 1)],
            (_, other) => return Err(Error::Invalid(format!("{other} is not a target over this basis"))),
        };
        Ok(simplify(out))
    }
}

/// A word over `basis` for `target`, confirmed by the oracle of `group`.
pub fn express(target: Generator, group: GenerationGroup, ctx: &Context, oracle: &Oracle) -> Result<Vec<Factor>> {
    let basis = group.basis(ctx);
    let factors = Rewriter { basis, ctx: *ctx }.rewrite(target)?;
    let lhs = expand(&factors, ctx)?;
    if !oracle.eq(group.oracle_group(), &lhs, &target.word(ctx)?, ctx)? {
        return Err(Error::Invalid(format!(
            "oracle refutes {target} = {} in {group}",
            format_factors(&factors)
        )));
    }
    Ok(factors)
}

pub fn generation_certificate(group: GenerationGroup, ctx: &Context, oracle: &Oracle) -> Result<GenerationCertificate> {
    let basis = group.basis(ctx);
    let rewriter = Rewriter { basis, ctx: *ctx };
    let oracle_group = group.oracle_group();
    let mut targets = Vec::new();
    for target in group.targets(ctx) {
        let factors = rewriter.rewrite(target)?;
        let word = target.word(ctx)?;
        let equal = oracle.eq(oracle_group, &expand(&factors, ctx)?, &word, ctx)?;
        targets.push(TargetWitness {
            target,
            word,
            witness: format_factors(&factors),
            equal,
        });
    }
    Ok(GenerationCertificate {
        group: oracle_group,
        ctx: *ctx,
        basis: basis
            .symbols()
            .into_iter()
            .map(|symbol| {
                Ok(BasisWord {
                    symbol,
                    word: symbol.word(ctx)?,
                })
            })
            .collect::<Result<_>>()?,
        targets,
    })
}

pub fn verify_generation(group: GenerationGroup, ctx: &Context, oracle: &Oracle) -> Claim {
    let symbols = group
        .basis(ctx)
        .symbols()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>();
    let statement = format!("{group} is generated by {{{}}}", symbols.join(", "));
    Claim::new(group.claim_id(), ctx, group.oracle_group().into(), statement).settle(
        generation_certificate(group, ctx, oracle).map(|cert| Witness {
            certificate: Some(cert),
            ..Witness::default()
        }),
    )
}

// ---------------------------------------------------------------------------
// Homology

fn homology_structure(lifts: &Lifts) -> Result<Witness> {
    let ctx = lifts.ctx();
    let h = lifts.homology();
    let surface = lifts.surface();
    let two_g = 2 * ctx.g() as usize;
    let k = ctx.k() as u64;
    let zeta = lifts.zeta();
    let mut w = Witness::default();
    w.check(
        format!("chi = {} = 2 - 2n(k-1)", surface.euler_characteristic()),
        surface.euler_characteristic() == 2 - 2 * ctx.g() as i64,
    );
    w.check(format!("rank H_1 = {} = 2g", h.rank()), h.rank() == two_g);
    w.check("raw intersection form is skew", h.raw_form.is_skew());
    w.check(
        "raw intersection form has determinant 1",
        h.raw_form.determinant()? == 1,
    );
    w.matrix(
        "J = standard symplectic form",
        h.form.clone(),
        Matrix::standard_symplectic(two_g),
    );
    let fixed = zeta.sub(&Matrix::identity(two_g))?.rank()?;
    w.check(format!("rank(M_zeta - I) = {fixed} = 2g"), fixed == two_g);
    w.matrix(format!("M_zeta^{k} = I"), zeta.pow(k)?, Matrix::identity(two_g));
    for d in 1..k {
        w.check(format!("M_zeta^{d} != I"), !zeta.pow(d)?.is_identity());
    }
    Ok(w)
}

fn conjugation_t(lifts: &Lifts) -> Result<Witness> {
    let n = lifts.ctx().n();
    let r1 = lifts.rep(LiftName::R1)?;
    let r1_inv = lifts.inverse(&r1)?;
    let mut w = Witness::default();
    for i in 1..=2 * n {
        let lhs = r1.mul(&lifts.rep(LiftName::T(i))?)?.mul(&r1_inv)?;
        w.matrix(
            format!("~r1 ~t{i},{} ~r1^-1 = ~t{},{}", i + 1, i + 1, i + 2),
            lhs,
            lifts.rep(LiftName::T(i + 1))?,
        );
    }
    Ok(w)
}

fn conjugation_h(lifts: &Lifts) -> Result<Witness> {
    let n = lifts.ctx().n();
    let r1 = lifts.rep(LiftName::R1)?;
    let r1_inv = lifts.inverse(&r1)?;
    let mut w = Witness::default();
    for i in 1..2 * n {
        let lhs = r1.mul(&lifts.rep(LiftName::H(i))?)?.mul(&r1_inv)?;
        w.matrix(
            format!("~r1 ~h{i} ~r1^-1 = ~h{}", i + 1),
            lhs,
            lifts.rep(LiftName::H(i + 1))?,
        );
    }
    Ok(w)
}

fn zeta_factorization(lifts: &Lifts) -> Result<Witness> {
    let mut w = Witness::default();
    w.matrix(
        "zeta' = M_zeta",
        lifts.rep(LiftName::ZetaPrime)?,
        lifts.rep(LiftName::Zeta)?,
    );
    Ok(w)
}

fn rotation_lifts(lifts: &Lifts) -> Result<Witness> {
    let ctx = lifts.ctx();
    let dim = lifts.homology().rank();
    let r = lifts.rep(LiftName::R)?;
    let r1 = lifts.rep(LiftName::R1)?;
    let mut w = Witness::default();
    w.matrix("~r^2 = I", r.pow(2)?, Matrix::identity(dim));
    w.matrix(
        format!("~r1^{} = I", ctx.points()),
        r1.pow(ctx.points() as u64)?,
        Matrix::identity(dim),
    );
    if ctx.n() == 1 {
        let h1_inv = lifts.inverse(&lifts.rep(LiftName::H(1))?)?;
        w.matrix("~r1 = ~r ~h1^-1", r1, r.mul(&h1_inv)?);
    }
    Ok(w)
}

fn all_lifts(n: u32) -> Vec<LiftName> {
    let mut out: Vec<LiftName> = (1..=2 * n + 1).map(LiftName::T).collect();
    out.extend((1..=2 * n).map(LiftName::H));
    out.extend([LiftName::R, LiftName::R1]);
    out
}

fn normalizes_deck(lifts: &Lifts) -> Result<Witness> {
    let k = lifts.ctx().k();
    let zeta = lifts.zeta();
    let mut w = Witness::default();
    for name in all_lifts(lifts.ctx().n()) {
        let m = lifts.rep(name)?;
        let j = if matches!(name, LiftName::R | LiftName::R1) {
            k - 1
        } else {
            1
        };
        let found = check_normalizes_deck(&m, lifts)?;
        w.check(
            format!("{name} zeta {name}^-1 = zeta^{j} (found {found:?})"),
            found == Some(j),
        );
        let lhs = m.mul(zeta)?.mul(&lifts.inverse(&m)?)?;
        w.matrix(format!("{name} zeta {name}^-1 = zeta^{j}"), lhs, zeta.pow(j as u64)?);
    }
    Ok(w)
}

fn symplectic(lifts: &Lifts) -> Result<Witness> {
    let j = &lifts.homology().form;
    let mut w = Witness::default();
    for name in all_lifts(lifts.ctx().n()) {
        let m = lifts.rep(name)?;
        w.matrix(
            format!("{name}^T J {name} = J"),
            m.transpose().mul(j)?.mul(&m)?,
            j.clone(),
        );
    }
    Ok(w)
}

/// Intersection numbers of the lifted curves `γ_i^l`: along each `h̃_i`
/// chain consecutive curves meet once and the others are disjoint; lifts of
/// one `γ_i` are disjoint; lifts of `γ_i, γ_j` with `|i - j| ≥ 2` are disjoint.
fn chain_pattern(lifts: &Lifts) -> Result<Witness> {
    let ctx = lifts.ctx();
    let n = ctx.n();
    let k = ctx.k();
    let h = lifts.homology();
    let mut w = Witness::default();
    for i in 1..=2 * n {
        let chain = lifts.chain(i);
        let len = chain.len();
        let mut seen = Matrix::zeros(len, len);
        let mut pattern = Matrix::zeros(len, len);
        for (a, &(ca, la)) in chain.iter().enumerate() {
            for (b, &(cb, lb)) in chain.iter().enumerate() {
                let x = h.intersection(&lifts.gamma(ca, la), &lifts.gamma(cb, lb))?;
                seen.set(a, b, x.abs());
                pattern.set(a, b, (a.abs_diff(b) == 1) as i64);
            }
        }
        w.matrix(
            format!("|<gamma, gamma>| along the ~h{i} chain = path pattern"),
            seen,
            pattern,
        );
    }
    let mut disjoint = true;
    for i in 1..=2 * n + 1 {
        for j in (i..=2 * n + 1).filter(|&j| j == i || j >= i + 2) {
            for l in 1..=k {
                for l2 in 1..=k {
                    disjoint &= h.intersection(&lifts.gamma(i, l), &lifts.gamma(j, l2))? == 0;
                }
            }
        }
    }
    w.check(
        "lifts of one gamma_i, and of gamma_i, gamma_j with |i-j| >= 2, are disjoint",
        disjoint,
    );
    Ok(w)
}

type HomologyCheck = fn(&Lifts) -> Result<Witness>;

const HOMOLOGY_CLAIMS: [(&str, &str, HomologyCheck); 8] = [
    (
        "Hom-structure",
        "cover has genus g, H_1 of rank 2g with unimodular form, M_zeta of order k without fixed vectors",
        homology_structure,
    ),
    ("Hom-conj-t", "~r1 ~t_{i,i+1} ~r1^-1 = ~t_{i+1,i+2}", conjugation_t),
    ("Hom-conj-h", "~r1 ~h_i ~r1^-1 = ~h_{i+1}", conjugation_h),
    (
        "Hom-zeta-factorization",
        "the lifted factorization zeta' of t_{1,2n+1} equals M_zeta",
        zeta_factorization,
    ),
    (
        "Hom-rotations",
        "~r^2 = I, ~r1^(2n+2) = I, and ~r1 = ~r ~h1^-1 for n = 1",
        rotation_lifts,
    ),
    (
        "Hom-normalizes-deck",
        "parity-preserving lifts commute with zeta; ~r and ~r1 invert it",
        normalizes_deck,
    ),
    (
        "Hom-symplectic",
        "every lift preserves the intersection form",
        symplectic,
    ),
    (
        "Hom-chain-pattern",
        "lifted curves gamma_i^l form the (2k-1)-chains",
        chain_pattern,
    ),
];

/// Homology-level identities of the lifted generators.
pub fn verify_smod_homology(ctx: &Context, conventions: Conventions) -> Vec<Claim> {
    timed_homology(ctx, conventions).into_iter().map(|(c, _)| c).collect()
}

fn timed_homology(ctx: &Context, conventions: Conventions) -> Vec<(Claim, u64)> {
    let start = Instant::now();
    let lifts = Lifts::new(ctx, conventions);
    let mut setup = start.elapsed().as_micros() as u64;
    HOMOLOGY_CLAIMS
        .iter()
        .map(|&(id, statement, check)| {
            let start = Instant::now();
            let claim = Claim::new(id, ctx, ClaimGroup::Homology, statement);
            let claim = match &lifts {
                Ok(lifts) => claim.settle(check(lifts)),
                Err(e) => claim.settle(Err(e.clone())),
            };
            let elapsed = start.elapsed().as_micros() as u64 + std::mem::take(&mut setup);
            (claim, elapsed)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Whole suite

/// Claims with their wall-clock time in microseconds, kept apart so the
/// claims themselves are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub claims: Vec<Claim>,
    pub timings_us: BTreeMap<String, u64>,
    /// Sheet of `γ_i^1` for each `i`, when the homology claims ran.
    pub label_offsets: Option<Vec<i64>>,
}

fn skipped_ids(ids: &[(&str, ClaimGroup, &str)], ctx: &Context, note: &str) -> Vec<(Claim, u64)> {
    ids.iter()
        .map(|&(id, group, statement)| (Claim::new(id, ctx, group, statement).skipped(note), 0))
        .collect()
}

const WORD_CLAIMS: [(&str, ClaimGroup, &str); 13] = [
    ("Oracle-presentation", ClaimGroup::Sphere, "sphere oracle relations"),
    ("Generator-words", ClaimGroup::Sphere, "generator words"),
    (
        "Rel-conj-t-disk",
        ClaimGroup::Disk,
        "h_i t_{i,i+1} h_i^-1 = t_{i+1,i+2}",
    ),
    (
        "Rel-conj-t-sphere",
        ClaimGroup::Sphere,
        "h_2n t_{2n,2n+1} h_2n^-1 = t_{2n+1,2n+2}",
    ),
    ("Rel-t-factorization", ClaimGroup::Disk, "t_{i,j} factorizations"),
    ("Lemma-shift", ClaimGroup::Disk, "C^-1 h_i C = h_{i+2}"),
    ("Rel-rank3", ClaimGroup::Disk, "rank-three relation"),
    ("Lemma-r1-factorization", ClaimGroup::Sphere, "r_1 = r F"),
    ("Order-r", ClaimGroup::Sphere, "r has order 2"),
    ("Order-r1", ClaimGroup::Sphere, "r_1 has order 2n+2"),
    ("Prop-LMod-generation", ClaimGroup::Sphere, "lmod_sphere generation"),
    ("Prop-LMod-star-generation", ClaimGroup::Star, "lmod_star generation"),
    ("Prop-LMod-disk-generation", ClaimGroup::Disk, "lmod_disk generation"),
];

type Task<'a> = Box<dyn Fn() -> Vec<(Claim, u64)> + Send + Sync + 'a>;

fn timed<'a>(f: impl Fn() -> Vec<Claim> + Send + Sync + 'a) -> Task<'a> {
    Box::new(move || {
        let start = Instant::now();
        let claims = f();
        let each = start.elapsed().as_micros() as u64 / claims.len().max(1) as u64;
        claims.into_iter().map(|c| (c, each)).collect()
    })
}

/// Runs every claim for `ctx` in parallel. The claim order is fixed.
pub fn verify_all(ctx: &Context, config: &SuiteConfig) -> SuiteRun {
    let oracle = config.oracle();
    let oracle = &oracle;
    let mut tasks: Vec<Task> = Vec::new();
    match config.words_bound(ctx) {
        Some(note) => {
            let skipped = skipped_ids(&WORD_CLAIMS, ctx, &note);
            tasks.push(Box::new(move || skipped.clone()));
        }
        None => {
            tasks.push(timed(move || vec![verify_oracle_presentation(ctx, oracle)]));
            tasks.push(timed(move || vec![verify_generator_words(ctx, oracle)]));
            tasks.push(timed(move || verify_relations(ctx, oracle)));
            tasks.push(timed(move || vec![verify_factorization_r1(ctx, oracle)]));
            tasks.push(timed(move || verify_orders(ctx, oracle)));
            for group in GenerationGroup::ALL {
                tasks.push(timed(move || vec![verify_generation(group, ctx, oracle)]));
            }
        }
    }
    tasks.push(timed(move || vec![verify_liftability(ctx, config)]));
    let homology_note = config.homology_bound(ctx);
    match &homology_note {
        Some(note) => {
            let ids: Vec<_> = HOMOLOGY_CLAIMS
                .iter()
                .map(|&(id, s, _)| (id, ClaimGroup::Homology, s))
                .collect();
            let skipped = skipped_ids(&ids, ctx, note);
            tasks.push(Box::new(move || skipped.clone()));
        }
        None => tasks.push(Box::new(move || timed_homology(ctx, config.conventions))),
    }

    let results: Vec<Vec<(Claim, u64)>> = tasks.par_iter().map(|t| t()).collect();
    let mut claims = Vec::new();
    let mut timings_us = BTreeMap::new();
    for (claim, us) in results.into_iter().flatten() {
        timings_us.insert(claim.id.clone(), us);
        claims.push(claim);
    }
    let label_offsets = if homology_note.is_none() {
        Lifts::new(ctx, config.conventions).ok().map(|l| l.offsets().to_vec())
    } else {
        None
    };
    SuiteRun {
        claims,
        timings_us,
        label_offsets,
    }
}
