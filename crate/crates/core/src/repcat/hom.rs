use alloc::vec;
use alloc::vec::Vec;

use super::{Morphism, Rep};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{complement_indices, kernel_basis, solve, Mat};

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis<F: Field> {
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    basis: Vec<Morphism<F>>,
}

impl<F: Field> HomBasis<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Morphism<F>] {
        &self.basis
    }
    pub fn into_basis(self) -> Vec<Morphism<F>> {
        self.basis
    }

    /// `sum_i c_i b_i`.
    pub fn combination(&self, field: &F, coeffs: &[F::Elem]) -> Morphism<F> {
        let comps = (0..self.source_dims.len())
            .map(|v| {
                let mut acc = Mat::zeros(field.clone(), self.target_dims[v], self.source_dims[v]);
                for (b, c) in self.basis.iter().zip(coeffs) {
                    if !field.is_zero(c) {
                        acc = acc.add(&b.component(v).scale(c)).expect("shapes agree");
                    }
                }
                acc
            })
            .collect();
        Morphism::new(comps)
    }

    /// Coordinates of `f` in this basis, `None` if `f` is not in the span.
    pub fn coordinates(&self, field: &F, f: &Morphism<F>) -> Option<Vec<F::Elem>> {
        let len: usize = self
            .source_dims
            .iter()
            .zip(&self.target_dims)
            .map(|(s, t)| s * t)
            .sum();
        let columns: Vec<Vec<F::Elem>> = self.basis.iter().map(Morphism::flatten).collect();
        let m = Mat::from_columns(field.clone(), len, &columns);
        solve(&m, &f.flatten()).ok().flatten()
    }
}

/// Offsets of the per-vertex blocks `Hom_k(M_v, N_v)` in the unknown vector.
fn vertex_offsets(m: &Rep<impl Field>, n: &Rep<impl Field>) -> Vec<usize> {
    let mut off = Vec::with_capacity(m.dims().len() + 1);
    let mut acc = 0;
    off.push(0);
    for v in 0..m.dims().len() {
        acc += m.dim(v) * n.dim(v);
        off.push(acc);
    }
    off
}

/// Matrix of `δ: ⊕_v Hom(M_v, N_v) -> ⊕_a Hom(M_u, N_w)`,
/// `(f_v) ↦ (f_w M_a - N_a f_u)`. Its kernel is `Hom(M, N)` and its cokernel
/// is `Ext¹(M, N)`.
fn intertwiner_map<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Mat<F> {
    let f = m.field();
    let q = m.quiver();
    let off = vertex_offsets(m, n);
    let unknowns = off[off.len() - 1];
    let equations: usize = q
        .arrows()
        .iter()
        .map(|a| n.dim(a.target) * m.dim(a.source))
        .sum();
    let mut d = Mat::zeros(f.clone(), equations, unknowns);
    let mut row0 = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (u, w) = (a.source, a.target);
        let (mu, mw, nu, nw) = (m.dim(u), m.dim(w), n.dim(u), n.dim(w));
        let ma = m.map(ai);
        let na = n.map(ai);
        for i in 0..nw {
            for j in 0..mu {
                let row = row0 + i * mu + j;
                // (f_w M_a)_{ij} = sum_k f_w[i,k] M_a[k,j]
                for k in 0..mw {
                    let c = ma.get(k, j);
                    if !f.is_zero(c) {
                        let col = off[w] + i * mw + k;
                        let v = f.add(d.get(row, col), c);
                        d.set(row, col, v);
                    }
                }
                // -(N_a f_u)_{ij} = -sum_k N_a[i,k] f_u[k,j]
                for k in 0..nu {
                    let c = na.get(i, k);
                    if !f.is_zero(c) {
                        let col = off[u] + k * mu + j;
                        let v = f.sub(d.get(row, col), c);
                        d.set(row, col, v);
                    }
                }
            }
        }
        row0 += nw * mu;
    }
    d
}

/// Basis of the space of intertwiners `M -> N`.
pub fn hom_space<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<HomBasis<F>> {
    m.check_same_category(n)?;
    let f = m.field();
    let off = vertex_offsets(m, n);
    let d = intertwiner_map(m, n);
    let basis = kernel_basis(&d)
        .into_iter()
        .map(|x| {
            let comps = (0..m.dims().len())
                .map(|v| Mat::from_vec(f.clone(), n.dim(v), m.dim(v), x[off[v]..off[v + 1]].to_vec()))
                .collect();
            Morphism::new(comps)
        })
        .collect();
    Ok(HomBasis {
        source_dims: m.dims().to_vec(),
        target_dims: n.dims().to_vec(),
        basis,
    })
}

pub fn end_dim<F: Field>(m: &Rep<F>) -> Result<usize> {
    Ok(hom_space(m, m)?.dim())
}

/// `dim Ext¹(M, N) = dim Hom(M, N) - <dim M, dim N>` (hereditary).
pub fn ext1_dim<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<usize> {
    let hom = hom_space(m, n)?.dim() as i64;
    let euler = m.quiver().euler_form(m.dims(), n.dims())?;
    let ext = hom - euler;
    debug_assert!(ext >= 0);
    Ok(ext as usize)
}

/// An Ext¹ class representative: one matrix `g_a: M_u -> N_w` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle<F: Field> {
    components: Vec<Mat<F>>,
}

impl<F: Field> Cocycle<F> {
    pub fn new(components: Vec<Mat<F>>) -> Self {
        Cocycle { components }
    }
    pub fn components(&self) -> &[Mat<F>] {
        &self.components
    }
    pub fn component(&self, arrow: usize) -> &Mat<F> {
        &self.components[arrow]
    }
    pub fn zero(m: &Rep<F>, n: &Rep<F>) -> Self {
        let comps = m
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(m.field().clone(), n.dim(a.target), m.dim(a.source)))
            .collect();
        Cocycle::new(comps)
    }
}

/// Cocycles whose classes form a basis of `Ext¹(M, N)`: standard basis
/// vectors of `⊕_a Hom(M_u, N_w)` completing the image of `δ`.
pub fn ext1_space<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Vec<Cocycle<F>>> {
    m.check_same_category(n)?;
    let f = m.field();
    let q = m.quiver();
    let d = intertwiner_map(m, n);
    let mut arrow_off = vec![0];
    for a in q.arrows() {
        let last = *arrow_off.last().expect("nonempty");
        arrow_off.push(last + n.dim(a.target) * m.dim(a.source));
    }
    let out = complement_indices(&d)
        .into_iter()
        .map(|idx| {
            let comps = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    let (rows, cols) = (n.dim(a.target), m.dim(a.source));
                    let mut g = Mat::zeros(f.clone(), rows, cols);
                    if (arrow_off[ai]..arrow_off[ai + 1]).contains(&idx) {
                        let local = idx - arrow_off[ai];
                        g.set(local / cols, local % cols, f.one());
                    }
                    g
                })
                .collect();
            Cocycle::new(comps)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::Quiver;
    use alloc::sync::Arc;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    #[test]
    fn hom_examples_on_a2() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), Rationals, 0).unwrap();
        let s2 = Rep::simple(q.clone(), Rationals, 1).unwrap();
        let p1 = Rep::projective(q.clone(), Rationals, 0).unwrap();
        assert_eq!(hom_space(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_space(&p1, &s1).unwrap().dim(), 1);
        let id = hom_space(&p1, &p1).unwrap();
        assert_eq!(id.dim(), 1);
        assert!(id.coordinates(&Rationals, &Morphism::identity(&p1)).is_some());
    }

    #[test]
    fn ext_examples_on_a2() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), Rationals, 0).unwrap();
        let s2 = Rep::simple(q.clone(), Rationals, 1).unwrap();
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        let cocycles = ext1_space(&s1, &s2).unwrap();
        assert_eq!(cocycles.len(), 1);
        assert_eq!(cocycles[0].component(0), &Mat::identity(Rationals, 1));
        let p1 = Rep::projective(q.clone(), Rationals, 0).unwrap();
        for n in [&s1, &s2, &p1] {
            assert_eq!(ext1_dim(&p1, n).unwrap(), 0);
            assert!(ext1_space(&p1, n).unwrap().is_empty());
        }
    }

    #[test]
    fn kronecker_regular_has_one_self_extension() {
        let q = Arc::new(Quiver::kronecker());
        let f = PrimeField::new(5).unwrap();
        let r = Rep::new(
            q,
            f,
            vec![1, 1],
            vec![Mat::from_i64_rows(f, &[&[1]]), Mat::from_i64_rows(f, &[&[3]])],
        )
        .unwrap();
        assert_eq!(end_dim(&r).unwrap(), 1);
        assert_eq!(ext1_space(&r, &r).unwrap().len(), 1);
        assert_eq!(ext1_dim(&r, &r).unwrap(), 1);
    }

    #[test]
    fn zero_object_has_no_maps() {
        let q = a2();
        let z = Rep::zero(q.clone(), Rationals);
        let p1 = Rep::projective(q, Rationals, 0).unwrap();
        assert_eq!(hom_space(&z, &p1).unwrap().dim(), 0);
        assert_eq!(hom_space(&p1, &z).unwrap().dim(), 0);
    }

    #[test]
    fn mismatched_quivers_are_rejected() {
        let s = Rep::simple(a2(), Rationals, 0).unwrap();
        let k = Rep::simple(Arc::new(Quiver::kronecker()), Rationals, 0).unwrap();
        assert!(hom_space(&s, &k).is_err());
        assert!(ext1_dim(&s, &k).is_err());
    }

    #[test]
    fn every_basis_element_intertwines() {
        let q = Arc::new(Quiver::kronecker());
        let p1 = Rep::projective(q.clone(), Rationals, 0).unwrap();
        let a = Rep::regular(q, Rationals);
        let h = hom_space(&a, &p1).unwrap();
        assert_eq!(h.dim(), 3);
        for b in h.basis() {
            assert!(b.is_intertwiner(&a, &p1));
        }
    }
}
