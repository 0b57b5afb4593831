//! The balanced superelliptic cover as a combinatorial surface.
//!
//! The branch points `p_1 … p_m` (`m = 2n+2`) lie on a line, joined by arcs
//! `l_a` from `p_a` to `p_{a+1}`. Cutting the sphere along these arcs leaves
//! one disk; the cover is `k` copies of it (sheets `0 … k-1`). The lifted
//! arc `l̃_a^s` has sheet `s` above it and sheet `s - c_a` below it, where
//! `c_a = 1` for odd `a` and `0` for even `a`: walking upward across an odd
//! arc moves to the next sheet.
//!
//! Chains on edges and on dual edges share one index space: the dual edge
//! `e*_{a,s}` crosses `l̃_a^s` from the sheet below to the sheet above.

mod homology;
mod lifts;

pub use homology::{homology, HomologyBasis};
pub use lifts::{check_normalizes_deck, lift_cycle, twist_matrix, Conventions, LiftName, LiftedCurve, Lifts};

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::free_group::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSurface {
    ctx: Context,
    /// Each face boundary as (edge index, ±1), starting at `p̃_1`.
    faces: Vec<Vec<(usize, i64)>>,
}

/// Sheet change when crossing `l_a` upward.
pub fn crossing(a: u32) -> i64 {
    (a % 2) as i64
}

pub fn build_cover(ctx: &Context) -> CoverSurface {
    let k = ctx.k() as i64;
    let arcs = ctx.points() - 1;
    let mut surface = CoverSurface {
        ctx: *ctx,
        faces: Vec::new(),
    };
    for s in 0..k {
        let mut boundary: Vec<(usize, i64)> = (1..=arcs).map(|a| (surface.edge(a, s), 1)).collect();
        boundary.extend((1..=arcs).rev().map(|a| (surface.edge(a, s + crossing(a)), -1)));
        surface.faces.push(boundary);
    }
    surface
}

impl CoverSurface {
    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn arcs(&self) -> u32 {
        self.ctx.points() - 1
    }

    pub fn sheets(&self) -> i64 {
        self.ctx.k() as i64
    }

    pub fn vertex_count(&self) -> usize {
        self.ctx.points() as usize
    }

    pub fn edge_count(&self) -> usize {
        (self.arcs() * self.ctx.k()) as usize
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<(usize, i64)>] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Genus read off the Euler characteristic.
    pub fn genus(&self) -> u32 {
        (2 - self.euler_characteristic()) as u32 / 2
    }

    /// Index of `l̃_a^s` (sheet taken mod k).
    pub fn edge(&self, a: u32, s: i64) -> usize {
        debug_assert!((1..=self.arcs()).contains(&a));
        (a as usize - 1) * self.ctx.k() as usize + s.rem_euclid(self.sheets()) as usize
    }

    /// `(a, s)` of an edge index.
    pub fn edge_label(&self, e: usize) -> (u32, i64) {
        let k = self.ctx.k() as usize;
        ((e / k) as u32 + 1, (e % k) as i64)
    }

    /// Vertex indices (0-based) of the endpoints of an edge.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, _) = self.edge_label(e);
        (a as usize - 1, a as usize)
    }

    /// Whether every edge occurs once with each orientation among the face
    /// boundaries, so the faces glue to a closed oriented surface.
    pub fn is_closed_oriented(&self) -> bool {
        let mut seen = vec![(0, 0); self.edge_count()];
        for face in &self.faces {
            for &(e, sign) in face {
                if sign > 0 {
                    seen[e].0 += 1;
                } else {
                    seen[e].1 += 1;
                }
            }
        }
        seen.iter().all(|&c| c == (1, 1))
    }

    /// Boundary of a primal edge chain, on vertices.
    pub fn boundary(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.vertex_count()];
        for (e, &x) in chain.iter().enumerate() {
            let (u, v) = self.endpoints(e);
            out[u] -= x;
            out[v] += x;
        }
        out
    }

    /// Boundary of a dual chain, on faces (sheets).
    pub fn dual_boundary(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.face_count()];
        let k = self.sheets();
        for (e, &x) in chain.iter().enumerate() {
            let (a, s) = self.edge_label(e);
            out[s as usize] += x;
            out[(s - crossing(a)).rem_euclid(k) as usize] -= x;
        }
        out
    }

    /// The deck rotation on dual chains: sheet `s` goes to `s + 1`.
    pub fn deck(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0; chain.len()];
        for (e, &x) in chain.iter().enumerate() {
            let (a, s) = self.edge_label(e);
            out[self.edge(a, s + 1)] += x;
        }
        out
    }

    /// The π-rotation on dual chains, from its action on lifted arcs:
    /// `l̃_a^s ↦ (l̃_{m-a}^{-s})^{-1}` for odd `a` and
    /// `(l̃_{m-a}^{-s-1})^{-1}` for even `a` (sheets from 0).
    pub fn pi_rotation(&self, chain: &[i64]) -> Vec<i64> {
        let m = self.ctx.points();
        let mut out = vec![0; chain.len()];
        for (e, &x) in chain.iter().enumerate() {
            let (a, s) = self.edge_label(e);
            let target = if a % 2 == 1 { -s } else { -s - 1 };
            out[self.edge(m - a, target)] -= x;
        }
        out
    }

    /// Face permutation induced by the π-rotation (`s ↦ -s-1`), used to check
    /// that `pi_rotation` is cellular.
    pub fn pi_rotation_faces(&self, s: i64) -> i64 {
        (-s - 1).rem_euclid(self.sheets())
    }

    /// Traces the lift of a loop word in `x_1 … x_m` starting below the line
    /// on sheet `start`. Returns the dual chain and the final sheet.
    pub fn trace(&self, word: &FreeWord, start: i64) -> (Vec<i64>, i64) {
        let arcs = self.arcs();
        let mut chain = vec![0; self.edge_count()];
        let mut sheet = start;
        // x_j crosses l_j upward then l_{j-1} downward; x_j^{-1} the reverse.
        let mut cross = |a: u32, up: bool, sheet: &mut i64| {
            if a == 0 || a > arcs {
                return;
            }
            if up {
                *sheet += crossing(a);
                chain[self.edge(a, *sheet)] += 1;
            } else {
                chain[self.edge(a, *sheet)] -= 1;
                *sheet -= crossing(a);
            }
        };
        for &l in word.letters() {
            let j = l.unsigned_abs();
            if l > 0 {
                cross(j, true, &mut sheet);
                cross(j - 1, false, &mut sheet);
            } else {
                cross(j - 1, true, &mut sheet);
                cross(j, false, &mut sheet);
            }
        }
        (chain, sheet.rem_euclid(self.sheets()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s = build_cover(&Context::new(2, 3).unwrap());
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (6, 15, 3));
        assert_eq!(s.euler_characteristic(), -6);
        assert_eq!(s.genus(), 4);
        assert_eq!(build_cover(&Context::new(1, 2).unwrap()).genus(), 1);
        let s = build_cover(&Context::new(3, 4).unwrap());
        assert_eq!((s.genus(), s.euler_characteristic()), (9, -16));
    }

    #[test]
    fn euler_characteristic_everywhere() {
        for n in 1..=4 {
            for k in 2..=5 {
                let ctx = Context::new(n, k).unwrap();
                let s = build_cover(&ctx);
                assert_eq!(s.euler_characteristic(), 2 - 2 * ctx.g() as i64);
                assert!(s.is_closed_oriented());
            }
        }
    }

    #[test]
    fn face_boundaries_are_cycles() {
        let s = build_cover(&Context::new(2, 3).unwrap());
        for face in s.faces() {
            let mut chain = vec![0; s.edge_count()];
            for &(e, sign) in face {
                chain[e] += sign;
            }
            assert!(s.boundary(&chain).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn deck_rotation_shifts_labels() {
        let s = build_cover(&Context::new(1, 3).unwrap());
        let mut chain = vec![0; s.edge_count()];
        chain[s.edge(2, 2)] = 1;
        let moved = s.deck(&chain);
        assert_eq!(moved[s.edge(2, 0)], 1);
    }

    #[test]
    fn pi_rotation_is_cellular_and_an_involution() {
        for (n, k) in [(1, 3), (2, 4), (3, 5)] {
            let s = build_cover(&Context::new(n, k).unwrap());
            for e in 0..s.edge_count() {
                let mut chain = vec![0; s.edge_count()];
                chain[e] = 1;
                let image = s.pi_rotation(&chain);
                // Faces on either side map to faces on either side.
                let before = s.dual_boundary(&chain);
                let after = s.dual_boundary(&image);
                for f in 0..s.face_count() {
                    let g = s.pi_rotation_faces(f as i64) as usize;
                    assert_eq!(before[f], after[g]);
                }
                assert_eq!(s.pi_rotation(&image), chain);
            }
        }
    }

    #[test]
    fn loops_change_sheet_by_monodromy() {
        let ctx = Context::new(2, 5).unwrap();
        let s = build_cover(&ctx);
        for j in 1..=ctx.points() {
            let (_, end) = s.trace(&FreeWord::generator(j), 0);
            let eps = if j % 2 == 1 { 1 } else { 4 };
            assert_eq!(end, eps, "x{j}");
        }
        let (chain, end) = s.trace(&FreeWord::from_letters([2, 3]), 1);
        assert_eq!(end, 1);
        assert!(s.dual_boundary(&chain).iter().all(|&x| x == 0));
    }
}
