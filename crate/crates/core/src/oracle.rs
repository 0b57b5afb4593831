//! Word problems for the three base groups.
//!
//! * disk: the braid group on `2n + 1` strands, `σ_1 … σ_{2n}`, decided by the
//!   (faithful) Artin action on the free group `F_{2n+1}`;
//! * star: the disk group modulo its center `⟨Δ²⟩`;
//! * sphere: the mapping class group of the sphere with `2n + 2` marked
//!   points, decided by the outer action on `π_1 = F_{2n+1}` (with
//!   `x_{2n+2} = (x_1 ⋯ x_{2n+1})^{-1}`): a word is trivial iff it acts as an
//!   inner automorphism.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::perm::psi;
use crate::word::{Letter, Word};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Disk,
    Star,
    Sphere,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::Disk, Group::Star, Group::Sphere];

    pub fn name(self) -> &'static str {
        match self {
            Group::Disk => "disk",
            Group::Star => "star",
            Group::Sphere => "sphere",
        }
    }

    /// Largest admissible half-twist index.
    pub fn max_sigma(self, ctx: &Context) -> u32 {
        match self {
            Group::Disk | Group::Star => 2 * ctx.n(),
            Group::Sphere => 2 * ctx.n() + 1,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s {
            "disk" => Ok(Group::Disk),
            "star" => Ok(Group::Star),
            "sphere" => Ok(Group::Sphere),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// An endomorphism of a free group, stored as the images of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeAutomorphism {
    images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> FreeAutomorphism {
        FreeAutomorphism {
            images: (1..=rank as u32).map(FreeWord::generator).collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> FreeAutomorphism {
        FreeAutomorphism { images }
    }

    /// Conjugation `x_j ↦ w x_j w^{-1}`.
    pub fn inner(rank: usize, w: &FreeWord) -> FreeAutomorphism {
        FreeAutomorphism {
            images: (1..=rank as u32)
                .map(|j| w.mul(&FreeWord::generator(j)).mul(&w.inverse()))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, j: u32) -> &FreeWord {
        &self.images[j as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [i as i32 + 1])
    }

    pub fn letter_count(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }

    /// Substitutes the images into `w`.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.append(img);
            } else {
                out.append_inverse(img);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }
}

/// How half-twists act on the free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Model {
    /// Braid group on `strands` strands acting on `F_strands`.
    Disk { strands: u32 },
    /// Sphere with `points` marked points acting on `F_{points-1}`.
    Sphere { points: u32 },
}

impl Model {
    fn rank(self) -> usize {
        match self {
            Model::Disk { strands } => strands as usize,
            Model::Sphere { points } => points as usize - 1,
        }
    }

    fn max_sigma(self) -> u32 {
        match self {
            Model::Disk { strands } => strands - 1,
            Model::Sphere { points } => points - 1,
        }
    }
}

/// Accumulates `φ_{a_1} ∘ ⋯ ∘ φ_{a_t}` one letter at a time.
struct Evaluator {
    model: Model,
    state: FreeAutomorphism,
    budget: usize,
}

impl Evaluator {
    fn new(model: Model, budget: usize) -> Evaluator {
        Evaluator {
            model,
            state: FreeAutomorphism::identity(model.rank()),
            budget,
        }
    }

    fn apply_word(&mut self, w: &Word) -> Result<()> {
        for &l in w.letters() {
            self.apply_letter(l)?;
        }
        Ok(())
    }

    /// `Φ ← Φ ∘ φ_l`, i.e. `Φ'(x) = Φ(φ_l(x))`.
    fn apply_letter(&mut self, l: Letter) -> Result<()> {
        let i = l.index() as usize;
        let rank = self.model.rank();
        let imgs = &mut self.state.images;
        if i < rank {
            // σ_i: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i.
            // σ_i^{-1}: x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}^{-1} x_i x_{i+1}.
            let a = imgs[i - 1].clone();
            let b = imgs[i].clone();
            if l.is_positive() {
                let mut new_i = a.mul(&b);
                new_i.append_inverse(&a);
                imgs[i - 1] = new_i;
                imgs[i] = a;
            } else {
                let mut new_next = b.inverse();
                new_next.append(&a);
                new_next.append(&b);
                imgs[i - 1] = b;
                imgs[i] = new_next;
            }
        } else {
            // Only the sphere model has a letter touching the eliminated
            // generator x_{m} = (x_1 ⋯ x_{m-1})^{-1}.
            debug_assert!(matches!(self.model, Model::Sphere { .. }) && i == rank);
            let mut new_last = FreeWord::identity();
            if l.is_positive() {
                // x_{m-1} ↦ x_{m-2}^{-1} ⋯ x_1^{-1} x_{m-1}^{-1}
                for j in (0..rank - 1).rev() {
                    new_last.append_inverse(&imgs[j]);
                }
                new_last.append_inverse(&imgs[rank - 1]);
            } else {
                // x_{m-1} ↦ x_{m-1}^{-1} ⋯ x_1^{-1}
                for j in (0..rank).rev() {
                    new_last.append_inverse(&imgs[j]);
                }
            }
            imgs[rank - 1] = new_last;
        }
        let letters = self.state.letter_count();
        if letters > self.budget {
            return Err(Error::BudgetExceeded {
                letters,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

fn check_letters(w: &Word, max: u32, group: &'static str) -> Result<()> {
    match w.letters().iter().find(|l| l.index() > max) {
        Some(l) => Err(Error::LetterOutsideGroup {
            index: l.index(),
            max,
            group,
        }),
        None => Ok(()),
    }
}

/// The Artin action of `w` on `F_m` (`m` strands), with the default budget.
pub fn artin_action(w: &Word, strands: u32) -> Result<FreeAutomorphism> {
    Oracle::default().artin_action(w, strands)
}

/// Returns `w` with `φ(x_j) = w x_j w^{-1}` for every generator, if one exists.
pub fn is_inner(phi: &FreeAutomorphism) -> Option<FreeWord> {
    let rank = phi.rank();
    if rank == 0 {
        return Some(FreeWord::identity());
    }
    let (u, core) = phi.image(1).cyclic_decomposition();
    if core.letters() != [1] {
        return None;
    }
    let candidate = if rank == 1 {
        u
    } else {
        // φ(x_2) = u x_1^k x_2 x_1^{-k} u^{-1}; read k off the prefix.
        let mut v = u.inverse();
        v.append(phi.image(2));
        v.append(&u);
        let lead = v.letters().first().copied().unwrap_or(0);
        let run = if lead.unsigned_abs() == 1 {
            v.letters().iter().take_while(|&&l| l == lead).count() as i64
        } else {
            0
        };
        let k = if lead < 0 { -run } else { run };
        u.mul(&FreeWord::generator(1).pow(k))
    };
    let conj = FreeAutomorphism::inner(rank, &candidate);
    (conj == *phi).then_some(candidate)
}

/// Positive half-twist `Δ = σ_1 (σ_2 σ_1) ⋯ (σ_{m-1} ⋯ σ_1)` on `m` strands.
pub fn half_twist(strands: u32) -> Word {
    let mut letters = Vec::new();
    for top in 1..strands {
        for i in (1..=top).rev() {
            letters.push(Letter::pos(i));
        }
    }
    Word::from_letters(letters)
}

/// `Δ² = (σ_1 ⋯ σ_{m-1})^m`, generator of the center of the braid group.
pub fn full_twist(strands: u32) -> Word {
    let chain: Word = (1..strands).map(Letter::pos).collect();
    chain.pow(strands as i64)
}

/// Equality oracle with a letter budget on intermediate free-group images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub budget: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_BUDGET }
    }
}

impl Oracle {
    pub fn with_budget(budget: usize) -> Oracle {
        Oracle { budget }
    }

    pub fn artin_action(&self, w: &Word, strands: u32) -> Result<FreeAutomorphism> {
        let model = Model::Disk { strands };
        check_letters(w, model.max_sigma(), "disk")?;
        let mut ev = Evaluator::new(model, self.budget);
        ev.apply_word(w)?;
        Ok(ev.state)
    }

    /// Action on `π_1` of the `2n+2`-punctured sphere, free on `x_1 … x_{2n+1}`.
    pub fn sphere_action(&self, w: &Word, ctx: &Context) -> Result<FreeAutomorphism> {
        let model = Model::Sphere { points: ctx.points() };
        check_letters(w, model.max_sigma(), "sphere")?;
        let mut ev = Evaluator::new(model, self.budget);
        ev.apply_word(w)?;
        Ok(ev.state)
    }

    pub fn eq(&self, group: Group, u: &Word, v: &Word, ctx: &Context) -> Result<bool> {
        match group {
            Group::Disk => self.eq_disk(u, v, ctx),
            Group::Star => self.eq_star(u, v, ctx),
            Group::Sphere => self.eq_sphere(u, v, ctx),
        }
    }

    pub fn is_trivial(&self, group: Group, w: &Word, ctx: &Context) -> Result<bool> {
        self.eq(group, w, &Word::empty(), ctx)
    }

    pub fn eq_disk(&self, u: &Word, v: &Word, ctx: &Context) -> Result<bool> {
        let max = Group::Disk.max_sigma(ctx);
        check_letters(u, max, "disk")?;
        check_letters(v, max, "disk")?;
        if u == v {
            return Ok(true);
        }
        let strands = max + 1;
        Ok(self.artin_action(u, strands)? == self.artin_action(v, strands)?)
    }

    pub fn eq_star(&self, u: &Word, v: &Word, ctx: &Context) -> Result<bool> {
        let max = Group::Star.max_sigma(ctx);
        check_letters(u, max, "star")?;
        check_letters(v, max, "star")?;
        let d = u.concat(&v.inverse());
        let center_exponent = (max as i64) * (max as i64 + 1);
        let e = d.exponent_sum();
        if e % center_exponent != 0 {
            return Ok(false);
        }
        let twist = full_twist(max + 1).pow(e / center_exponent);
        self.eq_disk(&d, &twist, ctx)
    }

    pub fn eq_sphere(&self, u: &Word, v: &Word, ctx: &Context) -> Result<bool> {
        let max = Group::Sphere.max_sigma(ctx);
        check_letters(u, max, "sphere")?;
        check_letters(v, max, "sphere")?;
        let d = u.concat(&v.inverse());
        if d.is_empty() {
            return Ok(true);
        }
        if !psi(&d, ctx).is_identity() {
            return Ok(false);
        }
        Ok(is_inner(&self.sphere_action(&d, ctx)?).is_some())
    }

    /// Least `1 ≤ d ≤ max` with `w^d = 1` in `group`.
    pub fn order_of(&self, w: &Word, group: Group, ctx: &Context, max: u64) -> Result<Option<u64>> {
        let max_sigma = group.max_sigma(ctx);
        check_letters(w, max_sigma, group.name())?;
        if w.is_empty() {
            return Ok(Some(1));
        }
        match group {
            // Braid groups are torsion-free.
            Group::Disk => Ok(None),
            Group::Star => {
                let strands = max_sigma + 1;
                let center_exponent = (max_sigma as i64) * (strands as i64);
                let mut ev = Evaluator::new(Model::Disk { strands }, self.budget);
                for d in 1..=max {
                    ev.apply_word(w)?;
                    let e = w.exponent_sum() * d as i64;
                    if e % center_exponent == 0 {
                        let twist = full_twist(strands).pow(e / center_exponent);
                        if ev.state == self.artin_action(&twist, strands)? {
                            return Ok(Some(d));
                        }
                    }
                }
                Ok(None)
            }
            Group::Sphere => {
                let mut ev = Evaluator::new(Model::Sphere { points: ctx.points() }, self.budget);
                let step = psi(w, ctx);
                let mut perm = step.clone();
                for d in 1..=max {
                    ev.apply_word(w)?;
                    if perm.is_identity() && is_inner(&ev.state).is_some() {
                        return Ok(Some(d));
                    }
                    perm = perm.compose(&step);
                }
                Ok(None)
            }
        }
    }
}
