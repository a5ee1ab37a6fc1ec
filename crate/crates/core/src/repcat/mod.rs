//! The category of finite-dimensional representations of a quiver: objects,
//! intertwiners, Hom and Ext¹ spaces, extensions, and decomposition into
//! indecomposables.

mod decompose;
mod hom;
mod sequence;

pub use decompose::{decompose, find_isomorphism, is_indecomposable, is_isomorphic, local_isomorphic, DEFAULT_SPLIT_BUDGET};
pub use hom::{end_dim, ext1_dim, ext1_space, hom_space, Cocycle, HomBasis};
pub use sequence::{cokernel, extension_from_cocycle, ShortExactSeq};

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, solve_many, Mat};
use crate::quiver::Quiver;

/// A representation: one vector space (by dimension) per vertex and one
/// matrix per arrow, of shape `dim_target x dim_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Mat<F>>,
}

impl<F: Field> Rep<F> {
    pub fn new(quiver: Arc<Quiver>, field: F, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Result<Self> {
        quiver.check_dims(&dims)?;
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                found: maps.len(),
            });
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let expected = (dims[a.target], dims[a.source]);
            if m.shape() != expected {
                return Err(Error::ShapeMismatch {
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(Rep {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: F) -> Self {
        let dims = alloc::vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Mat::zeros(field.clone(), 0, 0)).collect();
        Rep {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// The simple representation at `v`.
    pub fn simple(quiver: Arc<Quiver>, field: F, v: usize) -> Result<Self> {
        quiver.check_vertex(v)?;
        let mut dims = alloc::vec![0; quiver.vertex_count()];
        dims[v] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Mat::zeros(field.clone(), dims[a.target], dims[a.source]))
            .collect();
        Rep::new(quiver, field, dims, maps)
    }

    /// The indecomposable projective at `v`: the space at `w` has the paths
    /// `v ~> w` as basis, and an arrow `a` sends a path `p` to `p a`.
    pub fn projective(quiver: Arc<Quiver>, field: F, v: usize) -> Result<Self> {
        quiver.check_vertex(v)?;
        Ok(Rep::from_paths(quiver.clone(), field, &quiver.paths_from(v)))
    }

    /// Representation spanned by a path-closed family of paths, grouped by end
    /// vertex; arrows act by appending, dropping paths that leave the family.
    pub(crate) fn from_paths(quiver: Arc<Quiver>, field: F, paths: &[Vec<crate::quiver::Path>]) -> Self {
        let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Mat::zeros(field.clone(), dims[a.target], dims[a.source]);
                for (j, p) in paths[a.source].iter().enumerate() {
                    let mut ext = p.clone();
                    ext.push(ai);
                    if let Some(i) = paths[a.target].iter().position(|q| *q == ext) {
                        m.set(i, j, field.one());
                    }
                }
                m
            })
            .collect();
        Rep::new(quiver, field, dims, maps).expect("path representation is well formed")
    }

    /// `A = P_1 ⊕ ... ⊕ P_n`, the regular representation.
    pub fn regular(quiver: Arc<Quiver>, field: F) -> Self {
        let ps: Vec<Rep<F>> = (0..quiver.vertex_count())
            .map(|v| Rep::projective(quiver.clone(), field.clone(), v).expect("valid vertex"))
            .collect();
        Rep::direct_sum_of(&ps).expect("same quiver")
    }

    /// Representation with independently random arrow matrices.
    pub fn random(quiver: Arc<Quiver>, field: F, dims: Vec<usize>, rng: &mut dyn RngCore, height: u32) -> Result<Self> {
        quiver.check_dims(&dims)?;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                Mat::from_fn(field.clone(), dims[a.target], dims[a.source], |_, _| field.random(rng, height))
            })
            .collect();
        Rep::new(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn maps(&self) -> &[Mat<F>] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Mat<F> {
        &self.maps[arrow]
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `(d_1,...,d_n)`.
    pub fn dim_string(&self) -> String {
        dim_string(&self.dims)
    }

    pub(crate) fn check_same_category(&self, other: &Rep<F>) -> Result<()> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver) {
            return Err(Error::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Rep<F>) -> Result<Rep<F>> {
        Rep::direct_sum_of(&[self.clone(), other.clone()])
    }

    /// Direct sum of a nonempty list of representations of one quiver.
    pub fn direct_sum_of(parts: &[Rep<F>]) -> Result<Rep<F>> {
        let first = parts.first().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        for p in parts {
            first.check_same_category(p)?;
        }
        let n = first.quiver.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..first.maps.len())
            .map(|a| {
                let blocks: Vec<&Mat<F>> = parts.iter().map(|p| &p.maps[a]).collect();
                Mat::direct_sum(first.field.clone(), &blocks)
            })
            .collect();
        Rep::new(first.quiver.clone(), first.field.clone(), dims, maps)
    }

    /// `M^k`; the zero representation for `k = 0`.
    pub fn power(&self, k: usize) -> Rep<F> {
        if k == 0 {
            return Rep::zero(self.quiver.clone(), self.field.clone());
        }
        let parts: Vec<Rep<F>> = (0..k).map(|_| self.clone()).collect();
        Rep::direct_sum_of(&parts).expect("same quiver")
    }

    /// The vector space dual, a representation of the opposite quiver.
    pub fn dual(&self, opposite: Arc<Quiver>) -> Result<Rep<F>> {
        let maps = self.maps.iter().map(Mat::transpose).collect();
        Rep::new(opposite, self.field.clone(), self.dims.clone(), maps)
    }

    /// Same data viewed over an equal quiver held in a different allocation.
    pub fn with_quiver(&self, quiver: Arc<Quiver>) -> Result<Rep<F>> {
        if *quiver != *self.quiver {
            return Err(Error::QuiverMismatch);
        }
        Ok(Rep {
            quiver,
            ..self.clone()
        })
    }

    /// The subrepresentation spanned at each vertex by the columns of
    /// `bases[v]` (which must be independent), together with its inclusion.
    pub fn subrep(&self, bases: &[Mat<F>]) -> Result<(Rep<F>, Morphism<F>)> {
        self.quiver.check_dims(&alloc::vec![0; bases.len()])?;
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            let image = m.dot(&bases[a.source]);
            let restricted = solve_many(&bases[a.target], &image)?
                .ok_or_else(|| Error::Internal(String::from("subspace family is not closed under arrows")))?;
            maps.push(restricted);
        }
        let sub = Rep::new(self.quiver.clone(), self.field.clone(), dims, maps)?;
        let inclusion = Morphism::new(bases.to_vec());
        Ok((sub, inclusion))
    }
}

pub(crate) fn dim_string(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(|d| format!("{d}")).collect();
    format!("({})", parts.join(","))
}

/// An intertwiner: one matrix `f_v: M_v -> N_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F: Field> {
    components: Vec<Mat<F>>,
}

impl<F: Field> Morphism<F> {
    pub fn new(components: Vec<Mat<F>>) -> Self {
        Morphism { components }
    }

    pub fn identity(m: &Rep<F>) -> Self {
        Morphism::new(m.dims.iter().map(|&d| Mat::identity(m.field.clone(), d)).collect())
    }

    pub fn zero(source: &Rep<F>, target: &Rep<F>) -> Self {
        Morphism::new(
            source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Mat::zeros(source.field.clone(), t, s))
                .collect(),
        )
    }

    pub fn components(&self) -> &[Mat<F>] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Mat<F> {
        &self.components[v]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism<F>) -> Result<Morphism<F>> {
        let comps = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new(comps))
    }

    pub fn add(&self, other: &Morphism<F>) -> Result<Morphism<F>> {
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new(comps))
    }

    pub fn scale(&self, c: &F::Elem) -> Morphism<F> {
        Morphism::new(self.components.iter().map(|m| m.scale(c)).collect())
    }

    /// `self - c * id` for an endomorphism.
    pub fn shift(&self, c: &F::Elem) -> Morphism<F> {
        Morphism::new(
            self.components
                .iter()
                .map(|m| {
                    let id = Mat::identity(m.field().clone(), m.rows()).scale(c);
                    m.sub(&id).expect("square component")
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Mat::is_zero)
    }

    /// Every component is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(Mat::is_invertible)
    }

    /// Checks `f_w M_a = N_a f_u` for every arrow `a: u -> w`, and shapes.
    pub fn is_intertwiner(&self, source: &Rep<F>, target: &Rep<F>) -> bool {
        if self.components.len() != source.dims.len() {
            return false;
        }
        for (v, c) in self.components.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) {
                return false;
            }
        }
        source.quiver.arrows().iter().enumerate().all(|(i, a)| {
            self.components[a.target].dot(&source.maps[i]) == target.maps[i].dot(&self.components[a.source])
        })
    }

    /// All entries concatenated vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.components
            .iter()
            .flat_map(|m| m.data().iter().cloned())
            .collect()
    }

    /// Per-vertex kernel bases as matrices with independent columns.
    pub fn kernel_bases(&self) -> Vec<Mat<F>> {
        self.components
            .iter()
            .map(|m| {
                let ker = kernel_basis(m);
                Mat::from_columns(m.field().clone(), m.cols(), &ker)
            })
            .collect()
    }

    /// Per-vertex image bases.
    pub fn image_bases(&self) -> Vec<Mat<F>> {
        self.components.iter().map(Mat::column_space).collect()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Mat::rank).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn projectives_of_a2() {
        let q = Arc::new(Quiver::linear(2));
        let p1 = Rep::projective(q.clone(), Rationals, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.map(0), &Mat::identity(Rationals, 1));
        let p2 = Rep::projective(q.clone(), Rationals, 1).unwrap();
        assert_eq!(p2, Rep::simple(q.clone(), Rationals, 1).unwrap());
        assert!(matches!(
            Rep::simple(q, Rationals, 2),
            Err(Error::InvalidVertex(2))
        ));
    }

    #[test]
    fn simples_are_one_dimensional() {
        let q = Arc::new(Quiver::kronecker());
        for v in 0..2 {
            assert_eq!(Rep::simple(q.clone(), Rationals, v).unwrap().total_dim(), 1);
        }
    }

    #[test]
    fn kronecker_projective_has_two_paths() {
        let q = Arc::new(Quiver::kronecker());
        let p1 = Rep::projective(q, Rationals, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 2]);
        assert_ne!(p1.map(0), p1.map(1));
    }

    #[test]
    fn rejects_bad_shapes() {
        let q = Arc::new(Quiver::linear(2));
        let bad = Rep::new(q, Rationals, alloc::vec![1, 1], alloc::vec![Mat::zeros(Rationals, 2, 1)]);
        assert!(matches!(bad, Err(Error::ShapeMismatch { .. })));
    }
}
