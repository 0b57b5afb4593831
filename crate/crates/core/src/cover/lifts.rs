//! Lifted curves and the homology matrices of lifted mapping classes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{build_cover, crossing, homology, CoverSurface, HomologyBasis};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::generators::{f_factors, t_factorization, Factor, Generator};
use crate::liftability::{curve_monodromy, CurveClass};
use crate::linalg::Matrix;

/// Sign conventions for the homology action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// `τ` in the transvection `x ↦ x + τ ⟨x, c⟩ c` of a right-handed twist.
    pub twist_sign: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { twist_sign: 1 }
    }
}

/// One lift of a closed curve: a dual cycle started on `sheet`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCurve {
    pub base: CurveClass,
    pub sheet: i64,
    pub cycle: Vec<i64>,
}

/// The `k` lifts of a curve with zero monodromy, one per starting sheet.
pub fn lift_cycle(s: &CoverSurface, base: &CurveClass) -> Result<Vec<LiftedCurve>> {
    let residue = curve_monodromy(base, s.ctx());
    if residue != 0 {
        return Err(Error::DoesNotLift {
            residue: residue as i64,
            k: s.ctx().k(),
        });
    }
    (0..s.sheets())
        .map(|sheet| {
            let (cycle, end) = s.trace(base.word(), sheet);
            debug_assert_eq!(end, sheet);
            Ok(LiftedCurve {
                base: base.clone(),
                sheet,
                cycle,
            })
        })
        .collect()
}

/// Homology action of the twist along a dual cycle.
pub fn twist_matrix(h: &HomologyBasis, cycle: &[i64], conv: Conventions) -> Result<Matrix> {
    let c = h.coordinates(cycle)?;
    let jc = h.form.mul_vec(&c)?;
    let dim = h.rank();
    let mut m = Matrix::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            // Column j is e_j + τ <e_j, c> c.
            let v = conv
                .twist_sign
                .checked_mul(jc[j])
                .and_then(|x| x.checked_mul(c[i]))
                .and_then(|x| x.checked_add(m.get(i, j)))
                .ok_or(Error::Overflow("twist matrix"))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Returns `j ∈ 1..k` with `M M_ζ M^{-1} = M_ζ^j`.
pub fn check_normalizes_deck(m: &Matrix, lifts: &Lifts) -> Result<Option<u32>> {
    let conj = m.mul(&lifts.zeta)?.mul(&m.symplectic_inverse(&lifts.homology.form)?)?;
    let mut power = Matrix::identity(m.rows());
    for j in 1..lifts.ctx().k() {
        power = power.mul(&lifts.zeta)?;
        if power == conj {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LiftName {
    /// `t̃_{i,i+1}`.
    T(u32),
    H(u32),
    R,
    R1,
    Zeta,
    ZetaPrime,
}

impl fmt::Display for LiftName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftName::T(i) => write!(f, "~t{i},{}", i + 1),
            LiftName::H(i) => write!(f, "~h{i}"),
            LiftName::R => f.write_str("~r"),
            LiftName::R1 => f.write_str("~r1"),
            LiftName::Zeta => f.write_str("zeta"),
            LiftName::ZetaPrime => f.write_str("zeta'"),
        }
    }
}

/// The cover with its homology and the lifted curves `γ_i^l`.
pub struct Lifts {
    surface: CoverSurface,
    homology: HomologyBasis,
    conventions: Conventions,
    zeta: Matrix,
    /// `offsets[i-1]`: sheet of `γ_i^1`.
    offsets: Vec<i64>,
    cache: Mutex<HashMap<LiftName, Matrix>>,
}

impl Lifts {
    pub fn new(ctx: &Context, conventions: Conventions) -> Result<Lifts> {
        if ctx.k() < 3 {
            return Err(Error::InvalidContext("lifted generators need k >= 3".into()));
        }
        let surface = build_cover(ctx);
        let homology = homology(&surface)?;
        let zeta = homology.matrix_of(|c| surface.deck(c))?;
        let mut lifts = Lifts {
            surface,
            homology,
            conventions,
            zeta,
            offsets: vec![0],
            cache: Mutex::new(HashMap::new()),
        };
        lifts.offsets = lifts.label_offsets()?;
        Ok(lifts)
    }

    pub fn ctx(&self) -> &Context {
        self.surface.ctx()
    }

    pub fn surface(&self) -> &CoverSurface {
        &self.surface
    }

    pub fn homology(&self) -> &HomologyBasis {
        &self.homology
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn zeta(&self) -> &Matrix {
        &self.zeta
    }

    /// `γ_i` lifted with its upper crossings on `sheet`:
    /// `e*_{i+1,s} - e*_{i-1,s}`, dropping arcs that do not exist.
    fn gamma_on_sheet(&self, i: u32, sheet: i64) -> Vec<i64> {
        let s = &self.surface;
        let mut c = vec![0; s.edge_count()];
        if i < s.arcs() {
            c[s.edge(i + 1, sheet)] += 1;
        }
        if i > 1 {
            c[s.edge(i - 1, sheet)] -= 1;
        }
        c
    }

    /// Chooses the labels of `γ_{i+1}^l` relative to `γ_i^l` so that
    /// consecutive members of each chain meet, as the twist orders of `h̃_i`
    /// require.
    fn label_offsets(&self) -> Result<Vec<i64>> {
        let k = self.surface.sheets();
        let mut offsets = vec![0i64];
        for i in 1..=2 * self.ctx().n() {
            let o = offsets[i as usize - 1];
            let base = self.gamma_on_sheet(i, o);
            let meets = (0..k)
                .map(|t| Ok(self.homology.intersection(&base, &self.gamma_on_sheet(i + 1, t))? != 0))
                .collect::<Result<Vec<bool>>>()?;
            let hits: Vec<i64> = (0..k).filter(|&t| meets[t as usize]).collect();
            let first = (0..k).find(|&t| meets[t as usize] && meets[((t + 1) % k) as usize]);
            let t1 = match (hits.len(), first) {
                (2, Some(t1)) => t1,
                _ => {
                    return Err(Error::Invalid(format!(
                        "gamma_{i} on sheet {o} meets gamma_{} on sheets {hits:?}",
                        i + 1
                    )))
                }
            };
            offsets.push(if i % 2 == 1 { t1 + 1 } else { t1 }.rem_euclid(k));
        }
        Ok(offsets)
    }

    /// `γ_i^l` for `1 ≤ i ≤ 2n+1`, `1 ≤ l ≤ k`.
    pub fn gamma(&self, i: u32, l: u32) -> Vec<i64> {
        let sheet = l as i64 - 1 + self.offsets[i as usize - 1];
        self.gamma_on_sheet(i, sheet)
    }

    fn twist(&self, i: u32, l: u32) -> Result<Matrix> {
        twist_matrix(&self.homology, &self.gamma(i, l), self.conventions)
    }

    pub fn inverse(&self, m: &Matrix) -> Result<Matrix> {
        m.symplectic_inverse(&self.homology.form)
    }

    fn power(&self, m: &Matrix, e: i64) -> Result<Matrix> {
        if e >= 0 {
            m.pow(e as u64)
        } else {
            self.inverse(m)?.pow(e.unsigned_abs())
        }
    }

    /// Lifts a product of `h_i` and `t_{i,i+1}` factor by factor.
    pub fn lift_factors(&self, factors: &[Factor]) -> Result<Matrix> {
        let mut out = Matrix::identity(self.homology.rank());
        for &(g, e) in factors {
            let name = match g {
                Generator::H(i) => LiftName::H(i),
                Generator::T(i, j) if j == i + 1 => LiftName::T(i),
                other => return Err(Error::Invalid(format!("no lift defined for {other}"))),
            };
            out = out.mul(&self.power(&self.rep(name)?, e)?)?;
        }
        Ok(out)
    }

    pub fn rep(&self, name: LiftName) -> Result<Matrix> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(&name) {
            return Ok(m.clone());
        }
        let n = self.ctx().n();
        let k = self.ctx().k();
        let m = match name {
            LiftName::T(i) => {
                if i == 0 || i > 2 * n + 1 {
                    return Err(Error::IndexOutOfRange {
                        index: i as i64,
                        max: 2 * n as i64 + 1,
                    });
                }
                let mut m = Matrix::identity(self.homology.rank());
                for l in 1..=k {
                    m = m.mul(&self.twist(i, l)?)?;
                }
                m
            }
            LiftName::H(i) => {
                if i == 0 || i > 2 * n {
                    return Err(Error::IndexOutOfRange {
                        index: i as i64,
                        max: 2 * n as i64,
                    });
                }
                let mut m = Matrix::identity(self.homology.rank());
                for (c, l) in self.chain(i) {
                    m = m.mul(&self.twist(c, l)?)?;
                }
                m
            }
            LiftName::R => self.homology.matrix_of(|c| self.surface.pi_rotation(c))?,
            LiftName::R1 => self
                .rep(LiftName::R)?
                .mul(&self.lift_factors(&f_factors(self.ctx()))?)?,
            LiftName::Zeta => self.zeta.clone(),
            LiftName::ZetaPrime => self.lift_factors(&t_factorization(1, 2 * n + 1))?,
        };
        self.cache.lock().expect("cache lock").insert(name, m.clone());
        Ok(m)
    }

    /// The `(2k-1)`-chain whose twists make up `h̃_i`, as `(curve, label)`
    /// pairs in product order.
    pub fn chain(&self, i: u32) -> Vec<(u32, u32)> {
        let k = self.ctx().k();
        let mut order = Vec::new();
        for l in 1..=k {
            order.push((i, l));
            if l < k {
                order.push((i + 1, l));
            }
        }
        if i.is_multiple_of(2) {
            // γ_i^k γ_{i+1}^k γ_i^{k-1} ⋯ γ_{i+1}^2 γ_i^1.
            order = order.into_iter().map(|(c, l)| (c, k + 1 - l)).collect();
        }
        order
    }

    /// Sheet of `γ_i^1`, for reports.
    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// Whether `γ_i^l` is the traced lift of `x_i x_{i+1}`.
    pub fn gamma_is_traced_lift(&self, i: u32, l: u32) -> Result<bool> {
        let base = CurveClass::gamma(i, i + 1, self.ctx())?;
        let sheet = (l as i64 - 1 + self.offsets[i as usize - 1] - crossing(i)).rem_euclid(self.surface.sheets());
        let (cycle, _) = self.surface.trace(base.word(), sheet);
        Ok(cycle == self.gamma(i, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_cycle_examples() {
        let ctx = Context::new(2, 3).unwrap();
        let s = build_cover(&ctx);
        let lifts = lift_cycle(&s, &CurveClass::gamma(1, 4, &ctx).unwrap()).unwrap();
        assert_eq!(lifts.len(), 3);
        // The deck rotation permutes the lifts cyclically.
        for l in &lifts {
            let moved = s.deck(&l.cycle);
            let next = &lifts[((l.sheet + 1) % 3) as usize];
            assert_eq!(moved, next.cycle);
        }
        assert!(matches!(
            lift_cycle(&s, &CurveClass::parse("x1", &ctx).unwrap()),
            Err(Error::DoesNotLift { residue: 1, k: 3 })
        ));
    }

    #[test]
    fn twists_fix_orthogonal_classes() {
        let ctx = Context::new(1, 3).unwrap();
        let lifts = Lifts::new(&ctx, Conventions::default()).unwrap();
        let h = lifts.homology();
        let c = lifts.gamma(1, 1);
        let m = twist_matrix(h, &c, Conventions::default()).unwrap();
        assert!(m.preserves_form(&h.form).unwrap());
        for b in &h.basis {
            if h.intersection(b, &c).unwrap() == 0 {
                let x = h.coordinates(b).unwrap();
                assert_eq!(m.mul_vec(&x).unwrap(), x);
            }
        }
        let zero = vec![0; lifts.surface().edge_count()];
        assert!(twist_matrix(h, &zero, Conventions::default()).unwrap().is_identity());
    }

    #[test]
    fn gammas_are_traced_lifts() {
        let ctx = Context::new(2, 4).unwrap();
        let lifts = Lifts::new(&ctx, Conventions::default()).unwrap();
        for i in 1..=5 {
            for l in 1..=4 {
                assert!(lifts.gamma_is_traced_lift(i, l).unwrap());
            }
        }
    }
}
