//! First homology of the cover, computed on the dual graph.
//!
//! Dual cycles (sheets as vertices, crossings as edges) modulo the boundaries
//! of the small disks around the lifted branch points give `H_1`. The
//! intersection number of two dual cycles is obtained by pushing the first
//! into the 1-skeleton, where it pairs with dual edges by counting crossings.

use serde::{Deserialize, Serialize};

use super::{crossing, CoverSurface};
use crate::error::{Error, Result};
use crate::linalg::{dot, smith_form, symplectic_basis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyBasis {
    /// Symplectic basis of `H_1` as dual edge chains.
    pub basis: Vec<Vec<i64>>,
    /// Intersection matrix of `basis`: the standard block form.
    pub form: Matrix,
    /// Intersection matrix of the basis found before symplectic reduction.
    pub raw_form: Matrix,
    /// Linear map from dual cycles (edge chains) to coordinates in `basis`.
    coords: Matrix,
    /// Push-forward of each dual edge to a primal cycle, row per dual edge.
    push: Matrix,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of a dual cycle.
    pub fn coordinates(&self, cycle: &[i64]) -> Result<Vec<i64>> {
        self.coords.mul_vec(cycle)
    }

    /// Algebraic intersection number of two dual cycles.
    pub fn intersection(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let pushed = self.push.transpose().mul_vec(x)?;
        dot(&pushed, y)
    }

    /// Matrix of a chain map on dual cycles, in the symplectic basis.
    pub fn matrix_of(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Matrix> {
        let columns = self
            .basis
            .iter()
            .map(|b| self.coordinates(&f(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.rank(), &columns))
    }
}

/// The primal cycle homologous to a single dual edge: from `p̃_1` around the
/// lower face to the crossing point, then around the upper face back to `p̃_1`.
fn push_dual_edge(s: &CoverSurface, e: usize) -> Vec<i64> {
    let (a, sheet) = s.edge_label(e);
    let arcs = s.arcs();
    let (lower, upper) = (sheet - crossing(a), sheet);
    let mut out = vec![0; s.edge_count()];
    for b in 1..=arcs {
        out[s.edge(b, lower)] += 1;
        out[s.edge(b, upper + crossing(b))] -= 1;
    }
    for b in a + 1..=arcs {
        out[s.edge(b, lower + crossing(b))] -= 1;
        out[s.edge(b, upper)] += 1;
    }
    out
}

pub fn homology(s: &CoverSurface) -> Result<HomologyBasis> {
    let edges = s.edge_count();
    let k = s.sheets();
    // Spanning tree of the dual graph: the crossings of l_1, sheet s-1 → s.
    let tree: Vec<usize> = (1..k).map(|t| s.edge(1, t)).collect();
    let non_tree: Vec<usize> = (0..edges).filter(|e| !tree.contains(e)).collect();
    let position = |e: usize| non_tree.iter().position(|&x| x == e);

    // Fundamental cycle of each non-tree edge.
    let fundamental = |e: usize| -> Vec<i64> {
        let (a, t) = s.edge_label(e);
        let (from, to) = ((t - crossing(a)).rem_euclid(k), t);
        let mut c = vec![0; edges];
        c[e] = 1;
        // Tree path from `to` back to `from`.
        if to < from {
            for x in to + 1..=from {
                c[s.edge(1, x)] += 1;
            }
        } else {
            for x in from + 1..=to {
                c[s.edge(1, x)] -= 1;
            }
        }
        c
    };

    // Dual 2-cells: one around each lifted branch point.
    let mut relations = Vec::new();
    for j in 1..=s.ctx().points() {
        let mut r = vec![0i64; non_tree.len()];
        for t in 0..k {
            if j <= s.arcs() {
                if let Some(p) = position(s.edge(j, t)) {
                    r[p] += 1;
                }
            }
            if j >= 2 {
                if let Some(p) = position(s.edge(j - 1, t)) {
                    r[p] -= 1;
                }
            }
        }
        relations.push(r);
    }
    let rel = Matrix::from_columns(non_tree.len(), &relations);
    let snf = smith_form(&rel)?;
    if snf.diagonal.iter().any(|d| d.abs() != 1) {
        return Err(Error::Invalid("dual relations are not saturated".into()));
    }
    let r = snf.diagonal.len();
    let rank = non_tree.len() - r;
    let expected = 2 * s.ctx().g() as usize;
    if rank != expected {
        return Err(Error::Invalid(format!("H_1 rank {rank}, expected {expected}")));
    }

    let expand = |z: &[i64]| -> Vec<i64> {
        let mut c = vec![0; edges];
        for (p, &x) in z.iter().enumerate() {
            if x != 0 {
                for (ci, fi) in c.iter_mut().zip(fundamental(non_tree[p])) {
                    *ci += x * fi;
                }
            }
        }
        c
    };
    let raw_basis: Vec<Vec<i64>> = (r..non_tree.len()).map(|i| expand(&snf.u_inv.column(i))).collect();

    let push_rows: Vec<Vec<i64>> = (0..edges).map(|e| push_dual_edge(s, e)).collect();
    let push = Matrix::from_rows(push_rows)?;
    let pair = |x: &[i64], y: &[i64]| -> Result<i64> { dot(&push.transpose().mul_vec(x)?, y) };

    let mut raw_form = Matrix::zeros(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            raw_form.set(i, j, pair(&raw_basis[i], &raw_basis[j])?);
        }
    }
    if !raw_form.is_skew() || raw_form.determinant()? != 1 {
        return Err(Error::Invalid("intersection form is not skew unimodular".into()));
    }
    let change = symplectic_basis(&raw_form)?;
    let form = change.transpose().mul(&raw_form)?.mul(&change)?;

    let basis: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut c = vec![0; edges];
            for (j, b) in raw_basis.iter().enumerate() {
                let x = change.get(j, i);
                for (ci, &bi) in c.iter_mut().zip(b) {
                    *ci += x * bi;
                }
            }
            c
        })
        .collect();

    // Raw coordinates: restrict to non-tree edges, then project with U.
    let mut restrict = Matrix::zeros(non_tree.len(), edges);
    for (p, &e) in non_tree.iter().enumerate() {
        restrict.set(p, e, 1);
    }
    let project = Matrix::from_rows((r..non_tree.len()).map(|i| snf.u.row(i).to_vec()).collect())?;
    // change^{-1} = -J_std changeᵀ J_raw.
    let change_inv = form.neg().mul(&change.transpose())?.mul(&raw_form)?;
    let coords = change_inv.mul(&project)?.mul(&restrict)?;

    Ok(HomologyBasis {
        basis,
        form,
        raw_form,
        coords,
        push,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::cover::build_cover;

    #[test]
    fn ranks_and_forms() {
        for (n, k) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 3)] {
            let ctx = Context::new(n, k).unwrap();
            let s = build_cover(&ctx);
            let h = homology(&s).unwrap();
            assert_eq!(h.rank(), 2 * ctx.g() as usize);
            assert_eq!(h.form, Matrix::standard_symplectic(h.rank()));
            assert_eq!(h.raw_form.determinant().unwrap(), 1);
            for (i, b) in h.basis.iter().enumerate() {
                assert!(s.dual_boundary(b).iter().all(|&x| x == 0));
                let c = h.coordinates(b).unwrap();
                assert!(c.iter().enumerate().all(|(j, &x)| x == (i == j) as i64));
            }
        }
    }

    #[test]
    fn pushed_edges_are_cycles() {
        let s = build_cover(&Context::new(2, 3).unwrap());
        for e in 0..s.edge_count() {
            assert!(s.boundary(&push_dual_edge(&s, e)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn intersection_matches_form() {
        let s = build_cover(&Context::new(2, 3).unwrap());
        let h = homology(&s).unwrap();
        for i in 0..h.rank() {
            for j in 0..h.rank() {
                assert_eq!(h.intersection(&h.basis[i], &h.basis[j]).unwrap(), h.form.get(i, j));
            }
        }
    }

    #[test]
    fn boundaries_have_zero_class() {
        let s = build_cover(&Context::new(2, 4).unwrap());
        let h = homology(&s).unwrap();
        // The loop around p̃_j (k turns) bounds a disk.
        for j in 1..=6 {
            let w = crate::free_group::FreeWord::generator(j).pow(4);
            let (c, end) = s.trace(&w, 0);
            assert_eq!(end, 0);
            assert!(h.coordinates(&c).unwrap().iter().all(|&x| x == 0));
        }
    }
}
