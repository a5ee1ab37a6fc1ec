//! Stratifications by iterated perpendicular reduction.
//!
//! A complete exceptional sequence `(X_1, ..., X_n)` induces a chain of
//! reductions: split off `X_n` (contributing the factor `End(X_n)`), pass to
//! `X_n^⊥`, re-express the remaining members there, and repeat. The
//! Jordan–Hölder check asserts that every such chain has `n` factors with
//! the same multiset of dimensions as the endomorphism rings of the simples.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::exceptional::{
    enumerate_complete_exceptional_sequences, is_tilting_module, order_into_exceptional_sequence, ExcSequence,
};
use crate::field::{Field, PrimeField};
use crate::linalg::Mat;
use crate::perpcat::{iterated_perp, left_perp_algebra, perp_algebra, transport_into_left_perp, transport_into_perp};
use crate::quiver::Quiver;
use crate::repcat::{decompose, end_dim, ext1_dim, hom_space, Rep};

/// A composition factor, recorded by the dimension of its division ring
/// over the base field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FactorDescriptor {
    pub division_ring_dim: usize,
    pub source_label: String,
}

impl FactorDescriptor {
    fn of_simple<F: Field>(s: &Rep<F>, label: &str) -> Result<Self> {
        Ok(FactorDescriptor {
            division_ring_dim: end_dim(s)?,
            source_label: format!("End(S_{label})"),
        })
    }

    fn of_exceptional<F: Field>(x: &Rep<F>, dims: &str) -> Result<Self> {
        let d = end_dim(x)?;
        if d == 0 {
            return Err(Error::NotExceptional(String::from(dims)));
        }
        Ok(FactorDescriptor {
            division_ring_dim: d,
            source_label: format!("End(X) for X = dim {dims}"),
        })
    }
}

/// Sorted division-ring dimensions.
pub fn factor_multiset(factors: &[FactorDescriptor]) -> Vec<usize> {
    let mut dims: Vec<usize> = factors.iter().map(|f| f.division_ring_dim).collect();
    dims.sort_unstable();
    dims
}

/// `A_1 ⊃ A_2 ⊃ ... ⊃ A_n` with `A_{i+1}` the perpendicular algebra of
/// `generators[i]` over `A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<F: Field> {
    pub algebras: Vec<Arc<Quiver>>,
    pub factors: Vec<FactorDescriptor>,
    pub generators: Vec<Rep<F>>,
}

impl<F: Field> Chain<F> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_multiset(&self) -> Vec<usize> {
        factor_multiset(&self.factors)
    }

    /// Checks the length bookkeeping and that each step removes exactly one
    /// vertex, ending at a one-vertex algebra.
    pub fn validate(&self) -> Result<()> {
        let n = self.algebras.first().map_or(0, |a| a.vertex_count());
        let bad = |msg: String| Err(Error::InvalidTree(msg));
        if self.algebras.len() != n || self.factors.len() != n || self.generators.len() + 1 != n {
            return bad(format!(
                "chain over {n} vertices has {} algebras, {} factors, {} generators",
                self.algebras.len(),
                self.factors.len(),
                self.generators.len()
            ));
        }
        for (i, a) in self.algebras.iter().enumerate() {
            if a.vertex_count() != n - i {
                return bad(format!("algebra {} has {} vertices", i + 1, a.vertex_count()));
            }
        }
        for (g, a) in self.generators.iter().zip(&self.algebras) {
            if **g.quiver() != **a {
                return bad(String::from("generator lives over the wrong algebra"));
            }
        }
        Ok(())
    }
}

/// Strips the sink of smallest index at each step (its simple is projective),
/// recording `End(S_v)`.
pub fn standard_stratification<F: Field>(q: &Arc<Quiver>, field: &F, seed: u64) -> Result<Chain<F>> {
    let mut algebras = Vec::new();
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    let mut current = q.clone();
    loop {
        let v = *current.sinks().first().ok_or(Error::Cyclic)?;
        let s = Rep::simple(current.clone(), field.clone(), v)?;
        factors.push(FactorDescriptor::of_simple(&s, current.label(v))?);
        algebras.push(current.clone());
        if current.vertex_count() == 1 {
            break;
        }
        let next = perp_algebra(&s, seed)?.algebra_quiver;
        generators.push(s);
        current = next;
    }
    Ok(Chain {
        algebras,
        factors,
        generators,
    })
}

/// Reduces along a complete exceptional sequence, last member first.
pub fn stratify_along_sequence<F: Field>(s: &ExcSequence<F>, seed: u64) -> Result<Chain<F>> {
    if !s.is_complete() {
        return Err(Error::InvalidSequence(format!(
            "sequence of length {} is not complete",
            s.len()
        )));
    }
    let labels: Vec<String> = s.members().iter().map(Rep::dim_string).collect();
    let mut current = s.members().to_vec();
    let mut algebras = Vec::with_capacity(s.len());
    let mut factors = Vec::with_capacity(s.len());
    let mut generators = Vec::with_capacity(s.len());
    while let Some(last) = current.pop() {
        let i = current.len();
        algebras.push(last.quiver().clone());
        factors.push(FactorDescriptor::of_exceptional(&last, &labels[i])?);
        if current.is_empty() {
            if last.quiver().vertex_count() != 1 {
                return Err(Error::Internal(String::from("reduction did not end at one vertex")));
            }
            break;
        }
        let p = perp_algebra(&last, seed)?;
        current = current
            .iter()
            .map(|y| transport_into_perp(&p, y))
            .collect::<Result<_>>()?;
        generators.push(last);
    }
    let chain = Chain {
        algebras,
        factors,
        generators,
    };
    chain.validate()?;
    Ok(chain)
}

/// A binary tree of reduction steps. At a node, the generator (an exceptional
/// sequence given as an unordered list of summands) splits the algebra into
/// its perpendicular algebra (left) and the algebra of the category the
/// generator spans (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratTree<F: Field> {
    Leaf {
        algebra: Arc<Quiver>,
        factor: FactorDescriptor,
        derived_simple: bool,
    },
    Node {
        algebra: Arc<Quiver>,
        generator: Vec<Rep<F>>,
        left: Box<StratTree<F>>,
        right: Box<StratTree<F>>,
    },
}

impl<F: Field> StratTree<F> {
    pub fn algebra(&self) -> &Arc<Quiver> {
        match self {
            StratTree::Leaf { algebra, .. } | StratTree::Node { algebra, .. } => algebra,
        }
    }

    pub fn leaf_factors(&self) -> Vec<FactorDescriptor> {
        match self {
            StratTree::Leaf { factor, .. } => alloc::vec![factor.clone()],
            StratTree::Node { left, right, .. } => {
                let mut out = left.leaf_factors();
                out.extend(right.leaf_factors());
                out
            }
        }
    }

    pub fn leaf_multiset(&self) -> Vec<usize> {
        factor_multiset(&self.leaf_factors())
    }
}

/// Normalizes a tree to a chain: each node's generator summands are put in
/// exceptional order and split off one at a time, then the left subtree is
/// flattened. The right subtree is validated against the generator.
pub fn flatten_to_chain<F: Field>(t: &StratTree<F>, field: &F, seed: u64) -> Result<Chain<F>> {
    match t {
        StratTree::Leaf {
            algebra,
            factor,
            derived_simple,
        } => {
            if algebra.vertex_count() != 1 || !derived_simple {
                return Err(Error::InvalidTree(String::from("leaf algebra is not derived simple")));
            }
            let s = Rep::simple(algebra.clone(), field.clone(), 0)?;
            if end_dim(&s)? != factor.division_ring_dim {
                return Err(Error::InvalidTree(String::from("leaf factor does not match its algebra")));
            }
            Ok(Chain {
                algebras: alloc::vec![algebra.clone()],
                factors: alloc::vec![factor.clone()],
                generators: Vec::new(),
            })
        }
        StratTree::Node {
            algebra,
            generator,
            left,
            right,
        } => {
            let m = generator.len();
            if m == 0 || m >= algebra.vertex_count() {
                return Err(Error::InvalidTree(format!(
                    "generator with {m} summands over {} vertices",
                    algebra.vertex_count()
                )));
            }
            if generator.iter().any(|g| **g.quiver() != **algebra) {
                return Err(Error::InvalidTree(String::from("generator lives over the wrong algebra")));
            }
            let ordered = order_into_exceptional_sequence(generator, seed)?
                .map_err(|f| Error::InvalidTree(f.reason))?
                .into_members();
            let labels: Vec<String> = ordered.iter().map(Rep::dim_string).collect();
            let mut chain = Chain {
                algebras: Vec::new(),
                factors: Vec::new(),
                generators: Vec::new(),
            };
            let mut current = ordered;
            let mut here = algebra.clone();
            while let Some(last) = current.pop() {
                let i = current.len();
                chain.algebras.push(here.clone());
                chain.factors.push(FactorDescriptor::of_exceptional(&last, &labels[i])?);
                let p = perp_algebra(&last, seed)?;
                current = current
                    .iter()
                    .map(|y| transport_into_perp(&p, y))
                    .collect::<Result<_>>()?;
                here = p.algebra_quiver;
                chain.generators.push(last);
            }
            if *here != **left.algebra() {
                return Err(Error::InvalidTree(String::from(
                    "left subtree is not over the perpendicular algebra of the generator",
                )));
            }
            let right_chain = flatten_to_chain(right, field, seed)?;
            if right.algebra().vertex_count() != m {
                return Err(Error::InvalidTree(format!(
                    "right subtree has {} vertices for {m} generator summands",
                    right.algebra().vertex_count()
                )));
            }
            if right_chain.factor_multiset() != factor_multiset(&chain.factors) {
                return Err(Error::InvalidTree(String::from(
                    "right subtree factors differ from the generator's endomorphism rings",
                )));
            }
            let left_chain = flatten_to_chain(left, field, seed)?;
            chain.algebras.extend(left_chain.algebras);
            chain.factors.extend(left_chain.factors);
            chain.generators.extend(left_chain.generators);
            chain.validate()?;
            Ok(chain)
        }
    }
}

/// Builds a tree from a complete exceptional sequence by cutting it at a
/// random position: the tail becomes the generator, the head is transported
/// into the tail's perpendicular algebra (left) and the tail into the head's
/// left perpendicular algebra (right).
pub fn random_tree<F: Field>(members: &[Rep<F>], rng: &mut dyn RngCore, seed: u64) -> Result<StratTree<F>> {
    let first = members
        .first()
        .ok_or_else(|| Error::InvalidSequence(String::from("empty sequence")))?;
    let algebra = first.quiver().clone();
    if members.len() != algebra.vertex_count() {
        return Err(Error::InvalidSequence(String::from("sequence is not complete")));
    }
    if members.len() == 1 {
        let x = &members[0];
        return Ok(StratTree::Leaf {
            factor: FactorDescriptor::of_exceptional(x, &x.dim_string())?,
            derived_simple: is_derived_simple(&algebra),
            algebra,
        });
    }
    let k = rng.gen_range(1..members.len());
    let (head, tail) = members.split_at(k);
    let ordered_tail = order_into_exceptional_sequence(tail, seed)?
        .map_err(|f| Error::InvalidSequence(f.reason))?
        .into_members();
    let mut left_members = head.to_vec();
    for step in iterated_perp(&ordered_tail, seed)? {
        left_members = left_members
            .iter()
            .map(|y| transport_into_perp(&step, y))
            .collect::<Result<_>>()?;
    }
    let lp = left_perp_algebra(&algebra, head, seed)?;
    let right_members = tail
        .iter()
        .map(|y| transport_into_left_perp(&lp, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(StratTree::Node {
        algebra,
        generator: tail.to_vec(),
        left: Box::new(random_tree(&left_members, rng, seed)?),
        right: Box::new(random_tree(&right_members, rng, seed)?),
    })
}

pub fn endo_rings_of_simples<F: Field>(q: &Arc<Quiver>, field: &F) -> Result<Vec<FactorDescriptor>> {
    (0..q.vertex_count())
        .map(|v| FactorDescriptor::of_simple(&Rep::simple(q.clone(), field.clone(), v)?, q.label(v)))
        .collect()
}

/// One vertex: the path algebra is the base field, which is simple artinian.
pub fn is_derived_simple(q: &Quiver) -> bool {
    q.vertex_count() == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ChainSummary {
    /// Dimension vectors of the sequence members, in sequence order.
    pub sequence: Vec<String>,
    /// Dimension vectors of the generators over their successive algebras.
    pub generators: Vec<String>,
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct JordanHolderReport {
    pub quiver: Quiver,
    pub n: usize,
    pub expected_factors: Vec<usize>,
    pub sequence_count: usize,
    pub chains: Vec<ChainSummary>,
    pub violations: Vec<String>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

/// Assembles the report from per-sequence stratification results, given in
/// sequence order. A failed stratification counts as a violation unless it
/// is undecided, which is passed on.
pub fn jordan_holder_report<F: Field>(
    q: &Quiver,
    expected: &[FactorDescriptor],
    sequences: &[ExcSequence<F>],
    results: Vec<Result<Chain<F>>>,
    mut warnings: Vec<String>,
) -> Result<JordanHolderReport> {
    let n = q.vertex_count();
    let expected = factor_multiset(expected);
    let mut chains = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for (i, (s, r)) in sequences.iter().zip(results).enumerate() {
        let sequence: Vec<String> = s.members().iter().map(Rep::dim_string).collect();
        match r {
            Ok(c) => {
                let factors = c.factor_multiset();
                if c.len() != n {
                    violations.push(format!("sequence {}: chain length {} != {n}", i + 1, c.len()));
                }
                if factors != expected {
                    violations.push(format!("sequence {}: factors {factors:?} != {expected:?}", i + 1));
                }
                chains.push(ChainSummary {
                    sequence,
                    generators: c.generators.iter().map(Rep::dim_string).collect(),
                    factors: c.factors.iter().map(|f| f.division_ring_dim).collect(),
                });
            }
            Err(e) if e.is_undecided() => return Err(e),
            Err(e) => {
                violations.push(format!("sequence {}: {e}", i + 1));
                chains.push(ChainSummary {
                    sequence,
                    generators: Vec::new(),
                    factors: Vec::new(),
                });
            }
        }
    }
    if sequences.is_empty() {
        warnings.push(String::from("no complete exceptional sequence found within the bound"));
    }
    Ok(JordanHolderReport {
        quiver: q.clone(),
        n,
        expected_factors: expected,
        sequence_count: sequences.len(),
        chains,
        pass: violations.is_empty(),
        violations,
        warnings,
    })
}

pub fn unresolved_warnings(unresolved: &[Vec<usize>]) -> Vec<String> {
    unresolved
        .iter()
        .map(|d| format!("unresolved root {}: no exceptional found within budget", crate::repcat::dim_string(d)))
        .collect()
}

/// Enumerates complete exceptional sequences up to `bound`, stratifies each
/// and checks length and factors against the simples.
pub fn verify_jordan_holder<F: Field>(q: &Arc<Quiver>, field: &F, bound: usize, seed: u64) -> Result<JordanHolderReport> {
    let catalog = enumerate_complete_exceptional_sequences(q, field, bound, seed)?;
    let expected = endo_rings_of_simples(q, field)?;
    let results = catalog
        .sequences
        .iter()
        .map(|s| stratify_along_sequence(s, seed))
        .collect();
    jordan_holder_report(
        q,
        &expected,
        &catalog.sequences,
        results,
        unresolved_warnings(&catalog.unresolved),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RingelReport {
    pub summands: Vec<String>,
    pub summand_end_dims: Vec<usize>,
    pub simple_end_dims: Vec<usize>,
    pub pass: bool,
}

/// Compares the endomorphism rings of the summands of a multiplicity-free
/// tilting module with those of the simples.
pub fn verify_ringel_tilting<F: Field>(t: &Rep<F>, seed: u64) -> Result<RingelReport> {
    if !is_tilting_module(t, seed)? {
        return Err(Error::NotTilting(t.dim_string()));
    }
    let parts = decompose(t, seed)?;
    if parts.iter().any(|(_, k)| *k != 1) {
        return Err(Error::NotTilting(format!("{} is not multiplicity-free", t.dim_string())));
    }
    let mut summand_end_dims = parts.iter().map(|(s, _)| end_dim(s)).collect::<Result<Vec<_>>>()?;
    summand_end_dims.sort_unstable();
    let simple_end_dims = factor_multiset(&endo_rings_of_simples(t.quiver(), t.field())?);
    Ok(RingelReport {
        summands: parts.iter().map(|(s, _)| s.dim_string()).collect(),
        pass: summand_end_dims == simple_end_dims,
        summand_end_dims,
        simple_end_dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct KroneckerReport {
    pub prime: u32,
    /// `"0"`, ..., `"p-1"`, `"inf"`.
    pub parameters: Vec<String>,
    pub orthogonal_pairs: usize,
    pub distinct_pairs: usize,
    pub self_hom_dims: Vec<usize>,
    pub self_ext_dims: Vec<usize>,
    pub exceptional_count: usize,
    pub pass: bool,
    pub note: String,
}

/// The regular simples `R_λ` of the Kronecker quiver over `F_p`: the maps
/// of the two arrows are `(1, λ)`, and `(0, 1)` at infinity.
pub fn kronecker_regular_simples(field: PrimeField) -> Vec<(String, Rep<PrimeField>)> {
    let q = Arc::new(Quiver::kronecker());
    let p = field.modulus();
    let rep = |a: i64, b: i64| {
        Rep::new(
            q.clone(),
            field,
            alloc::vec![1, 1],
            alloc::vec![Mat::from_i64_rows(field, &[&[a]]), Mat::from_i64_rows(field, &[&[b]])],
        )
        .expect("1x1 maps fit dimension (1,1)")
    };
    let mut out: Vec<(String, Rep<PrimeField>)> = (0..p).map(|l| (format!("{l}"), rep(1, i64::from(l)))).collect();
    out.push((String::from("inf"), rep(0, 1)));
    out
}

pub fn kronecker_demo(p: u64, seed: u64) -> Result<KroneckerReport> {
    let field = PrimeField::new(p)?;
    let simples = kronecker_regular_simples(field);
    let m = simples.len();
    let mut orthogonal_pairs = 0;
    let mut self_hom_dims = Vec::with_capacity(m);
    let mut self_ext_dims = Vec::with_capacity(m);
    let mut exceptional_count = 0;
    for (i, (_, x)) in simples.iter().enumerate() {
        for (j, (_, y)) in simples.iter().enumerate() {
            if i != j && hom_space(x, y)?.dim() == 0 && ext1_dim(x, y)? == 0 {
                orthogonal_pairs += 1;
            }
        }
        self_hom_dims.push(end_dim(x)?);
        self_ext_dims.push(ext1_dim(x, x)?);
        if crate::exceptional::is_exceptional(x, seed)? {
            exceptional_count += 1;
        }
    }
    let distinct_pairs = m * (m - 1);
    let pass = orthogonal_pairs == distinct_pairs
        && self_hom_dims.iter().all(|&d| d == 1)
        && self_ext_dims.iter().all(|&d| d == 1)
        && exceptional_count == 0;
    Ok(KroneckerReport {
        prime: field.modulus(),
        parameters: simples.into_iter().map(|(l, _)| l).collect(),
        orthogonal_pairs,
        distinct_pairs,
        self_hom_dims,
        self_ext_dims,
        exceptional_count,
        pass,
        note: String::from(
            "Distinct tubes are Hom- and Ext-orthogonal, but every regular simple has a self-extension, \
             so none is exceptional and none generates a reduction step with a ring as factor. \
             A stratification through the tubes therefore needs factors that are not derived categories of rings.",
        ),
    })
}
