use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::hom::Cocycle;
use super::{Morphism, Rep};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{complement_indices, Mat};

/// `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq<F: Field> {
    pub left: Rep<F>,
    pub middle: Rep<F>,
    pub right: Rep<F>,
    pub inclusion: Morphism<F>,
    pub projection: Morphism<F>,
}

impl<F: Field> ShortExactSeq<F> {
    /// Checks that both maps intertwine and that the sequence is exact at
    /// every vertex: injective, surjective, composite zero, and
    /// `dim middle = dim left + dim right`.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Internal(String::from(msg)));
        if !self.inclusion.is_intertwiner(&self.left, &self.middle) {
            return fail("inclusion is not an intertwiner");
        }
        if !self.projection.is_intertwiner(&self.middle, &self.right) {
            return fail("projection is not an intertwiner");
        }
        for v in 0..self.middle.dims().len() {
            let (l, m, r) = (self.left.dim(v), self.middle.dim(v), self.right.dim(v));
            if l + r != m {
                return fail("dimensions do not add up");
            }
            if self.inclusion.component(v).rank() != l {
                return fail("inclusion is not injective");
            }
            if self.projection.component(v).rank() != r {
                return fail("projection is not surjective");
            }
            if !self.projection.component(v).dot(self.inclusion.component(v)).is_zero() {
                return fail("composite is nonzero");
            }
        }
        Ok(())
    }
}

/// The extension `0 -> N -> E -> M -> 0` with `E_v = N_v ⊕ M_v` and
/// `E_a = [[N_a, g_a], [0, M_a]]`.
pub fn extension_from_cocycle<F: Field>(m: &Rep<F>, n: &Rep<F>, g: &Cocycle<F>) -> Result<ShortExactSeq<F>> {
    m.check_same_category(n)?;
    let f = m.field().clone();
    let q = m.quiver().clone();
    if g.components().len() != q.arrows().len() {
        return Err(Error::DimensionMismatch {
            expected: q.arrows().len(),
            found: g.components().len(),
        });
    }
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (ai, a) in q.arrows().iter().enumerate() {
        let (u, w) = (a.source, a.target);
        let ga = g.component(ai);
        if ga.shape() != (n.dim(w), m.dim(u)) {
            return Err(Error::ShapeMismatch {
                expected: (n.dim(w), m.dim(u)),
                found: ga.shape(),
            });
        }
        maps.push(Mat::block(
            f.clone(),
            &[n.dim(w), m.dim(w)],
            &[n.dim(u), m.dim(u)],
            &[
                vec![Some(n.map(ai).clone()), Some(ga.clone())],
                vec![None, Some(m.map(ai).clone())],
            ],
        ));
    }
    let dims: Vec<usize> = n.dims().iter().zip(m.dims()).map(|(a, b)| a + b).collect();
    let middle = Rep::new(q, f.clone(), dims, maps)?;
    let inclusion = Morphism::new(
        (0..n.dims().len())
            .map(|v| {
                Mat::block(
                    f.clone(),
                    &[n.dim(v), m.dim(v)],
                    &[n.dim(v)],
                    &[vec![Some(Mat::identity(f.clone(), n.dim(v)))], vec![None]],
                )
            })
            .collect(),
    );
    let projection = Morphism::new(
        (0..n.dims().len())
            .map(|v| {
                Mat::block(
                    f.clone(),
                    &[m.dim(v)],
                    &[n.dim(v), m.dim(v)],
                    &[vec![None, Some(Mat::identity(f.clone(), m.dim(v)))]],
                )
            })
            .collect(),
    );
    let ses = ShortExactSeq {
        left: n.clone(),
        middle,
        right: m.clone(),
        inclusion,
        projection,
    };
    ses.validate()?;
    Ok(ses)
}

/// Cokernel of an intertwiner `f: M -> N`, with the quotient map `N -> C`.
pub fn cokernel<F: Field>(target: &Rep<F>, f: &Morphism<F>) -> Result<(Rep<F>, Morphism<F>)> {
    let field = target.field().clone();
    let q = target.quiver().clone();
    let n = q.vertex_count();
    let mut sections = Vec::with_capacity(n);
    let mut projections = Vec::with_capacity(n);
    for v in 0..n {
        let image = f.component(v).column_space();
        let extra = complement_indices(&image);
        let dim = target.dim(v);
        let section = Mat::from_fn(field.clone(), dim, extra.len(), |i, j| {
            if i == extra[j] {
                field.one()
            } else {
                field.zero()
            }
        });
        let basis = image.hstack(&section);
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Internal(String::from("image and complement do not span")))?;
        let r = image.cols();
        let proj = Mat::from_fn(field.clone(), extra.len(), dim, |i, j| inv.get(r + i, j).clone());
        sections.push(section);
        projections.push(proj);
    }
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| projections[a.target].dot(&target.map(ai).dot(&sections[a.source])))
        .collect();
    let dims = sections.iter().map(Mat::cols).collect();
    let coker = Rep::new(q, field, dims, maps)?;
    Ok((coker, Morphism::new(projections)))
}
