//! Perpendicular categories.
//!
//! For an exceptional `X`, the full subcategory `X^⊥` of representations `Y`
//! with `Hom(X, Y) = 0 = Ext¹(X, Y)` is equivalent to the representations of
//! a quiver with one vertex fewer. That quiver is recovered from a set of
//! projective generators living inside the ambient category:
//!
//! * `X ≅ P_v` projective: the generators are the projectives of the quiver
//!   with `v` deleted, viewed as ambient representations vanishing at `v`.
//! * otherwise: the generators are the indecomposable summands of the
//!   Bongartz complement `M`, the middle term of the universal extension
//!   `0 -> A -> M -> X^c -> 0`.
//!
//! Arrows of the new quiver come from irreducible maps between generators.
//! An arrow `v -> w` corresponds to an irreducible map `M_w -> M_v`, matching
//! the path-algebra convention where an arrow `v -> w` induces `P_w -> P_v`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exceptional::{is_exceptional, is_tilting_module};
use crate::field::Field;
use crate::linalg::{rank, Mat};
use crate::quiver::{Arrow, Path, Quiver};
use crate::repcat::{
    cokernel, decompose, end_dim, ext1_dim, ext1_space, extension_from_cocycle, hom_space, is_isomorphic, Cocycle,
    HomBasis, Morphism, Rep, ShortExactSeq,
};

/// `τ_X(M)`: the sum of the images of all maps `X -> M`, as one column basis
/// per vertex. The family is closed under the arrow maps of `M`.
pub fn trace<F: Field>(x: &Rep<F>, m: &Rep<F>) -> Result<Vec<Mat<F>>> {
    let hom = hom_space(x, m)?;
    let field = m.field();
    Ok((0..m.dims().len())
        .map(|v| {
            hom.basis()
                .iter()
                .fold(Mat::zeros(field.clone(), m.dim(v), 0), |acc, h| acc.hstack(h.component(v)))
                .column_space()
        })
        .collect())
}

/// The universal extension `0 -> R -> M -> X^c -> 0` with `c = dim Ext¹(X, R)`,
/// built from a full cocycle basis placed side by side. Returns `c` with the
/// sequence.
pub fn universal_extension<F: Field>(x: &Rep<F>, r: &Rep<F>, seed: u64) -> Result<(usize, ShortExactSeq<F>)> {
    x.check_same_category(r)?;
    if !is_exceptional(x, seed)? {
        return Err(Error::NotExceptional(x.dim_string()));
    }
    let cocycles = ext1_space(x, r)?;
    let c = cocycles.len();
    let field = x.field().clone();
    let components = x
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            cocycles.iter().fold(Mat::zeros(field.clone(), r.dim(a.target), 0), |acc, g| {
                acc.hstack(g.component(ai))
            })
        })
        .collect();
    let ses = extension_from_cocycle(&x.power(c), r, &Cocycle::new(components))?;
    if ext1_dim(x, &ses.middle)? != 0 {
        return Err(Error::Internal(String::from("universal extension left Ext¹(X, M) nonzero")));
    }
    Ok((c, ses))
}

/// The middle term `M` of the universal extension of `X` by the regular
/// representation. Checks that `M` is perpendicular to `X` and that `M ⊕ X`
/// is tilting.
pub fn bongartz_complement<F: Field>(x: &Rep<F>, seed: u64) -> Result<Rep<F>> {
    let a = Rep::regular(x.quiver().clone(), x.field().clone());
    if !is_exceptional(x, seed)? {
        return Err(Error::NotExceptional(x.dim_string()));
    }
    if ext1_dim(x, &a)? == 0 {
        return Err(Error::Projective(format!(
            "{} is projective; its perpendicular algebra comes from deleting a vertex",
            x.dim_string()
        )));
    }
    let (_, ses) = universal_extension(x, &a, seed)?;
    let m = ses.middle;
    if !is_perpendicular(x, &m)? {
        return Err(Error::Internal(String::from("Bongartz complement is not perpendicular")));
    }
    if !is_tilting_module(&m.direct_sum(x)?, seed)? {
        return Err(Error::Internal(String::from("Bongartz complement does not complete to a tilting module")));
    }
    Ok(m)
}

/// The reflection of the regular representation into `X^⊥`: the middle term
/// of the universal extension modulo its `X`-trace.
pub fn reflection_of_regular<F: Field>(x: &Rep<F>, seed: u64) -> Result<Rep<F>> {
    let a = Rep::regular(x.quiver().clone(), x.field().clone());
    let (_, ses) = universal_extension(x, &a, seed)?;
    let tau = trace(x, &ses.middle)?;
    let (_, inclusion) = ses.middle.subrep(&tau)?;
    Ok(cokernel(&ses.middle, &inclusion)?.0)
}

/// `Hom(X, Y) = 0` and `Ext¹(X, Y) = 0`.
pub fn is_perpendicular<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<bool> {
    Ok(hom_space(x, y)?.dim() == 0 && ext1_dim(x, y)? == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerpBranch {
    /// The generator is the projective at this ambient vertex.
    Projective(usize),
    Bongartz,
}

/// `X^⊥` presented as the representations of `algebra_quiver`.
#[derive(Clone, Debug)]
pub struct PerpPresentation<F: Field> {
    pub generator: Rep<F>,
    pub branch: PerpBranch,
    pub algebra_quiver: Arc<Quiver>,
    /// Ambient images of the indecomposable projectives, one per vertex of
    /// `algebra_quiver`.
    pub projectives_in_ambient: Vec<Rep<F>>,
    /// For each arrow `v -> w` of `algebra_quiver`, a map
    /// `projectives_in_ambient[w] -> projectives_in_ambient[v]`.
    pub radical_generators: Vec<Morphism<F>>,
}

impl<F: Field> PerpPresentation<F> {
    pub fn vertex_count(&self) -> usize {
        self.algebra_quiver.vertex_count()
    }
}

pub fn perp_algebra<F: Field>(x: &Rep<F>, seed: u64) -> Result<PerpPresentation<F>> {
    if !is_exceptional(x, seed)? {
        return Err(Error::NotExceptional(x.dim_string()));
    }
    let a = Rep::regular(x.quiver().clone(), x.field().clone());
    let p = if ext1_dim(x, &a)? == 0 {
        projective_branch(x, seed)?
    } else {
        bongartz_branch(x, &a, seed)?
    };
    if p.vertex_count() + 1 != x.quiver().vertex_count() {
        return Err(Error::Internal(format!(
            "perpendicular algebra of {} has {} vertices",
            x.dim_string(),
            p.vertex_count()
        )));
    }
    Ok(p)
}

fn projective_branch<F: Field>(x: &Rep<F>, seed: u64) -> Result<PerpPresentation<F>> {
    let q = x.quiver();
    let field = x.field();
    let mut vertex = None;
    for v in 0..q.vertex_count() {
        let p = Rep::projective(q.clone(), field.clone(), v)?;
        if p.dims() == x.dims() && is_isomorphic(&p, x, seed)? {
            vertex = Some(v);
            break;
        }
    }
    let v = vertex.ok_or_else(|| Error::Internal(format!("{} has no Ext¹ into A but is not some P_v", x.dim_string())))?;
    if q.vertex_count() == 1 {
        return Ok(PerpPresentation {
            generator: x.clone(),
            branch: PerpBranch::Projective(v),
            algebra_quiver: Arc::new(Quiver::empty()),
            projectives_in_ambient: Vec::new(),
            radical_generators: Vec::new(),
        });
    }
    let (sub, kept) = q.delete_vertex(v)?;
    let avoiding = |u: usize| -> Vec<Vec<Path>> {
        q.paths_from(u)
            .into_iter()
            .map(|group| {
                group
                    .into_iter()
                    .filter(|p| p.iter().all(|&ai| q.arrows()[ai].target != v))
                    .collect()
            })
            .collect()
    };
    let groups: Vec<Vec<Vec<Path>>> = kept.iter().map(|&u| avoiding(u)).collect();
    let projectives = groups
        .iter()
        .map(|g| Rep::from_paths(q.clone(), field.clone(), g))
        .collect::<Vec<_>>();
    let radical_generators = sub
        .arrows()
        .iter()
        .map(|b| {
            let ai = q.arrow_index(&b.id).expect("subquiver arrows exist in the ambient quiver");
            let (from, to) = (&groups[b.target], &groups[b.source]);
            let comps = (0..q.vertex_count())
                .map(|z| {
                    let mut m = Mat::zeros(field.clone(), to[z].len(), from[z].len());
                    for (j, p) in from[z].iter().enumerate() {
                        let mut ext = vec![ai];
                        ext.extend_from_slice(p);
                        let i = to[z].iter().position(|r| *r == ext).expect("prefixed path avoids the vertex");
                        m.set(i, j, field.one());
                    }
                    m
                })
                .collect();
            Morphism::new(comps)
        })
        .collect();
    Ok(PerpPresentation {
        generator: x.clone(),
        branch: PerpBranch::Projective(v),
        algebra_quiver: Arc::new(sub),
        projectives_in_ambient: projectives,
        radical_generators,
    })
}

fn bongartz_branch<F: Field>(x: &Rep<F>, a: &Rep<F>, seed: u64) -> Result<PerpPresentation<F>> {
    let (_, ses) = universal_extension(x, a, seed)?;
    let m = ses.middle;
    if !is_perpendicular(x, &m)? {
        return Err(Error::Internal(String::from("Bongartz complement is not perpendicular")));
    }
    let mut summands: Vec<Rep<F>> = decompose(&m, seed)?.into_iter().map(|(s, _)| s).collect();
    summands.sort_by(|s, t| s.total_dim().cmp(&t.total_dim()).then_with(|| s.dims().cmp(t.dims())));
    for s in &summands {
        if end_dim(s)? != 1 {
            return Err(Error::Internal(format!("summand {} has End of dimension > 1", s.dim_string())));
        }
    }
    let (arrows, radical_generators) = irreducible_maps(&summands)?;
    let labels = summands.iter().map(|s| format!("M{}", s.dim_string())).collect();
    let quiver = Quiver::new(labels, arrows)?;
    Ok(PerpPresentation {
        generator: x.clone(),
        branch: PerpBranch::Bongartz,
        algebra_quiver: Arc::new(quiver),
        projectives_in_ambient: summands,
        radical_generators,
    })
}

/// Arrows between pairwise non-isomorphic indecomposables with `End = k`:
/// for `s != t`, the number of arrows `t -> s` is `dim Hom(M_s, M_t)` minus
/// the dimension of the span of composites `M_s -> M_r -> M_t` with
/// `r ∉ {s, t}`. Generators extend a basis of that span greedily.
fn irreducible_maps<F: Field>(ms: &[Rep<F>]) -> Result<(Vec<Arrow>, Vec<Morphism<F>>)> {
    let m = ms.len();
    let homs: Vec<Vec<HomBasis<F>>> = (0..m)
        .map(|s| (0..m).map(|t| hom_space(&ms[s], &ms[t])).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut arrows = Vec::new();
    let mut generators = Vec::new();
    for v in 0..m {
        for w in 0..m {
            // arrow v -> w for each irreducible map M_w -> M_v
            if v == w || homs[w][v].dim() == 0 {
                continue;
            }
            let field = ms[w].field();
            let len = homs[w][v].basis()[0].flatten().len();
            let mut span: Vec<Vec<F::Elem>> = Vec::new();
            for r in (0..m).filter(|&r| r != v && r != w) {
                for f in homs[w][r].basis() {
                    for g in homs[r][v].basis() {
                        span.push(g.after(f)?.flatten());
                    }
                }
            }
            let mut current = rank(&Mat::from_columns(field.clone(), len, &span));
            for h in homs[w][v].basis() {
                span.push(h.flatten());
                let next = rank(&Mat::from_columns(field.clone(), len, &span));
                if next > current {
                    current = next;
                    arrows.push(Arrow {
                        id: format!("r{}", arrows.len() + 1),
                        source: v,
                        target: w,
                    });
                    generators.push(h.clone());
                } else {
                    span.pop();
                }
            }
        }
    }
    Ok((arrows, generators))
}

/// Re-expresses `Y ∈ X^⊥` over the perpendicular algebra: the space at vertex
/// `j` is `Hom(M_j, Y)` and an arrow `v -> w` with generator `r: M_w -> M_v`
/// acts by `f ↦ f ∘ r`.
pub fn transport_into_perp<F: Field>(p: &PerpPresentation<F>, y: &Rep<F>) -> Result<Rep<F>> {
    p.generator.check_same_category(y)?;
    if !is_perpendicular(&p.generator, y)? {
        return Err(Error::NotPerpendicular(format!(
            "{} is not perpendicular to {}",
            y.dim_string(),
            p.generator.dim_string()
        )));
    }
    let field = y.field();
    let homs = p
        .projectives_in_ambient
        .iter()
        .map(|mj| hom_space(mj, y))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(p.radical_generators.len());
    for (arrow, r) in p.algebra_quiver.arrows().iter().zip(&p.radical_generators) {
        let (from, to) = (&homs[arrow.source], &homs[arrow.target]);
        let mut columns = Vec::with_capacity(from.dim());
        for f in from.basis() {
            let coords = to
                .coordinates(field, &f.after(r)?)
                .ok_or_else(|| Error::Internal(String::from("precomposition left the Hom space")))?;
            columns.push(coords);
        }
        maps.push(Mat::from_columns(field.clone(), to.dim(), &columns));
    }
    let dims = homs.iter().map(HomBasis::dim).collect();
    Rep::new(p.algebra_quiver.clone(), field.clone(), dims, maps)
}

/// Perpendicular reduction along `(Z_1, ..., Z_r)`: `Z_r` first, then the
/// transported `Z_{r-1}`, and so on. Returns one presentation per step.
pub fn iterated_perp<F: Field>(seq: &[Rep<F>], seed: u64) -> Result<Vec<PerpPresentation<F>>> {
    let mut current = seq.to_vec();
    let mut steps = Vec::with_capacity(seq.len());
    while let Some(last) = current.pop() {
        let p = perp_algebra(&last, seed)?;
        current = current
            .iter()
            .map(|y| transport_into_perp(&p, y))
            .collect::<Result<_>>()?;
        steps.push(p);
    }
    Ok(steps)
}

/// The left perpendicular category `⊥(Z_1, ..., Z_r)` of an exceptional
/// sequence, computed through vector-space duality: it is the dual of
/// `(DZ_r, ..., DZ_1)^⊥` over the opposite quiver, so it is equivalent to
/// the representations of the opposite of that perpendicular algebra.
#[derive(Clone, Debug)]
pub struct LeftPerp<F: Field> {
    opposite: Arc<Quiver>,
    steps: Vec<PerpPresentation<F>>,
    pub algebra_quiver: Arc<Quiver>,
}

pub fn left_perp_algebra<F: Field>(q: &Arc<Quiver>, seq: &[Rep<F>], seed: u64) -> Result<LeftPerp<F>> {
    let opposite = Arc::new(q.opposite());
    let duals = seq
        .iter()
        .rev()
        .map(|z| z.dual(opposite.clone()))
        .collect::<Result<Vec<_>>>()?;
    let steps = iterated_perp(&duals, seed)?;
    let last = steps.last().map_or(&opposite, |p| &p.algebra_quiver);
    let algebra_quiver = Arc::new(last.opposite());
    Ok(LeftPerp {
        opposite,
        steps,
        algebra_quiver,
    })
}

/// Re-expresses `Y` with `Hom(Y, Z_i) = 0 = Ext¹(Y, Z_i)` over the left
/// perpendicular algebra.
pub fn transport_into_left_perp<F: Field>(lp: &LeftPerp<F>, y: &Rep<F>) -> Result<Rep<F>> {
    let mut d = y.dual(lp.opposite.clone())?;
    for step in &lp.steps {
        d = transport_into_perp(step, &d)?;
    }
    d.dual(lp.algebra_quiver.clone())
}
