//! Exceptional representations, exceptional sequences and tilting modules.
//!
//! A representation `X` is exceptional when it is indecomposable and
//! `Ext¹(X, X) = 0`. A sequence `(X_1, ..., X_m)` of exceptionals is an
//! exceptional sequence when `Hom(X_j, X_i) = 0 = Ext¹(X_j, X_i)` for all
//! `i < j`; it is complete when `m` equals the number of vertices.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::quiver::Quiver;
use crate::repcat::{
    cokernel, decompose, ext1_dim, hom_space, is_indecomposable, is_isomorphic, Morphism, Rep, ShortExactSeq,
};

/// Random representations tried per candidate root before giving up.
pub const ROOT_BUDGET: usize = 256;

/// Exhaustive fallback over a finite field is used when the space of arrow
/// matrices has at most this many points.
pub const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 20;

/// Entry height for random rational representations.
const SAMPLE_HEIGHT: u32 = 2;

/// An exceptional sequence `(X_1, ..., X_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcSequence<F: Field> {
    members: Vec<Rep<F>>,
}

impl<F: Field> ExcSequence<F> {
    /// Validates the members and wraps them.
    pub fn new(members: Vec<Rep<F>>, seed: u64) -> Result<Self> {
        if let Some(reason) = sequence_violation(&members, seed)? {
            return Err(Error::InvalidSequence(reason));
        }
        Ok(ExcSequence { members })
    }

    pub(crate) fn new_unchecked(members: Vec<Rep<F>>) -> Self {
        ExcSequence { members }
    }

    pub fn members(&self) -> &[Rep<F>] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Rep<F>> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Length equals the vertex count of the quiver.
    pub fn is_complete(&self) -> bool {
        self.members
            .first()
            .is_some_and(|x| x.quiver().vertex_count() == self.members.len())
    }

    /// Dimension vectors of the members, in order.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|x| x.dims().to_vec()).collect()
    }
}

/// Indecomposable with no self-extensions.
pub fn is_exceptional<F: Field>(x: &Rep<F>, seed: u64) -> Result<bool> {
    if x.is_zero() || ext1_dim(x, x)? != 0 {
        return Ok(false);
    }
    is_indecomposable(x, seed)
}

/// `Hom(later, earlier) = 0` and `Ext¹(later, earlier) = 0`.
pub fn orthogonal_after<F: Field>(later: &Rep<F>, earlier: &Rep<F>) -> Result<bool> {
    Ok(hom_space(later, earlier)?.dim() == 0 && ext1_dim(later, earlier)? == 0)
}

/// The first violated exceptional-sequence condition, if any.
pub fn sequence_violation<F: Field>(members: &[Rep<F>], seed: u64) -> Result<Option<String>> {
    for (i, x) in members.iter().enumerate() {
        if let Some(first) = members.first() {
            first.check_same_category(x)?;
        }
        if !is_exceptional(x, seed)? {
            return Ok(Some(format!("member {} (dim {}) is not exceptional", i + 1, x.dim_string())));
        }
    }
    for j in 0..members.len() {
        for i in 0..j {
            if !orthogonal_after(&members[j], &members[i])? {
                return Ok(Some(format!(
                    "Hom or Ext¹ from member {} to member {} is nonzero",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(None)
}

/// Why a set of summands admits no exceptional ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFailure {
    pub reason: String,
}

/// Arranges pairwise non-isomorphic exceptional summands into an exceptional
/// sequence. Whenever `Hom(X_b, X_a)` or `Ext¹(X_b, X_a)` is nonzero, `X_b`
/// must precede `X_a`; a valid order exists exactly when these constraints
/// are acyclic, and the smallest-index-first topological order is returned.
pub fn order_into_exceptional_sequence<F: Field>(
    summands: &[Rep<F>],
    seed: u64,
) -> Result<core::result::Result<ExcSequence<F>, OrderFailure>> {
    let fail = |reason: String| Ok(Err(OrderFailure { reason }));
    let m = summands.len();
    for (i, x) in summands.iter().enumerate() {
        if !is_exceptional(x, seed)? {
            return fail(format!("summand {} (dim {}) is not exceptional", i + 1, x.dim_string()));
        }
        for (j, y) in summands.iter().enumerate().take(i) {
            if is_isomorphic(x, y, seed)? {
                return fail(format!("summands {} and {} are isomorphic", j + 1, i + 1));
            }
        }
    }
    // before[b][a]: X_b must come before X_a
    let mut before = vec![vec![false; m]; m];
    for b in 0..m {
        for a in 0..m {
            if a != b && !orthogonal_after(&summands[b], &summands[a])? {
                before[b][a] = true;
            }
        }
    }
    let mut indegree: Vec<usize> = (0..m).map(|a| (0..m).filter(|&b| before[b][a]).count()).collect();
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    while order.len() < m {
        let Some(next) = (0..m).find(|&v| !placed[v] && indegree[v] == 0) else {
            return fail(String::from("Hom/Ext¹ constraints between summands are cyclic"));
        };
        placed[next] = true;
        order.push(next);
        for a in 0..m {
            if before[next][a] {
                indegree[a] -= 1;
            }
        }
    }
    Ok(Ok(ExcSequence::new_unchecked(
        order.into_iter().map(|i| summands[i].clone()).collect(),
    )))
}

/// Rigid with as many pairwise non-isomorphic indecomposable summands as the
/// quiver has vertices. Over a hereditary path algebra projective dimension is
/// at most one automatically, and a rigid module with `n` distinct summands
/// admits the coresolution `0 -> A -> T_0 -> T_1 -> 0` (see
/// [`tilting_coresolution`] for an explicit check).
pub fn is_tilting_module<F: Field>(t: &Rep<F>, seed: u64) -> Result<bool> {
    if t.is_zero() || ext1_dim(t, t)? != 0 {
        return Ok(false);
    }
    Ok(decompose(t, seed)?.len() == t.quiver().vertex_count())
}

/// Builds `0 -> A -> T^r -> C -> 0` from the universal map `A -> T^r`
/// (`r = dim Hom(A, T)`) and checks that it is exact with `C` in `add T`.
/// Returns `None` if either check fails.
pub fn tilting_coresolution<F: Field>(t: &Rep<F>, seed: u64) -> Result<Option<ShortExactSeq<F>>> {
    let q = t.quiver().clone();
    let field = t.field().clone();
    let a = Rep::regular(q.clone(), field.clone());
    let hom = hom_space(&a, t)?;
    let r = hom.dim();
    let middle = t.power(r);
    let comps: Vec<Mat<F>> = (0..q.vertex_count())
        .map(|v| {
            let (rows, cols) = (t.dim(v), a.dim(v));
            Mat::from_fn(field.clone(), rows * r, cols, |i, j| {
                hom.basis()[i / rows.max(1)].component(v).get(i % rows.max(1), j).clone()
            })
        })
        .collect();
    let map = Morphism::new(comps);
    if !map.is_intertwiner(&a, &middle) {
        return Err(Error::Internal(String::from("universal map is not an intertwiner")));
    }
    if (0..q.vertex_count()).any(|v| map.component(v).rank() != a.dim(v)) {
        return Ok(None);
    }
    let (c, projection) = cokernel(&middle, &map)?;
    let summands_t = decompose(t, seed)?;
    for (piece, _) in decompose(&c, seed)? {
        let mut found = false;
        for (s, _) in &summands_t {
            if is_isomorphic(&piece, s, seed)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let ses = ShortExactSeq {
        left: a,
        middle,
        right: c,
        inclusion: map,
        projection,
    };
    ses.validate()?;
    Ok(Some(ses))
}

/// Candidate dimension vectors: total dimension at most `bound` and
/// `<d, d> = 1`, in (total dimension, lexicographic) order.
pub fn candidate_roots(q: &Quiver, bound: usize) -> Vec<Vec<usize>> {
    q.dimension_vectors(bound)
        .into_iter()
        .filter(|d| q.euler_form(d, d) == Ok(1))
        .collect()
}

/// Outcome of the search for an exceptional representation of one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSearch<F: Field> {
    Found(Rep<F>),
    /// Proven absent: every representation of this dimension vector over the
    /// (finite) field was examined.
    Absent,
    /// Budget exhausted without a decision.
    Unresolved,
}

/// Seed for the `index`-th candidate root (splitmix64 of the base seed).
pub fn root_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Searches for the exceptional representation with dimension vector `d`.
///
/// Since `<d, d> = dim End - dim Ext¹`, any rigid representation of a vector
/// with `<d, d> = 1` has `End = k` and is therefore exceptional; general
/// representations of a real Schur root are rigid, so random samples hit
/// quickly. Small finite fields fall back to exhaustive enumeration.
pub fn find_exceptional<F: Field>(q: &Arc<Quiver>, field: &F, d: &[usize], seed: u64) -> Result<RootSearch<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ROOT_BUDGET {
        let x = Rep::random(q.clone(), field.clone(), d.to_vec(), &mut rng, SAMPLE_HEIGHT)?;
        if is_exceptional(&x, seed)? {
            return Ok(RootSearch::Found(x));
        }
    }
    let Some(order) = field.order() else {
        return Ok(RootSearch::Unresolved);
    };
    let entries: u64 = q
        .arrows()
        .iter()
        .map(|a| (d[a.source] * d[a.target]) as u64)
        .sum();
    let space = (order as u128).checked_pow(entries as u32);
    if !space.is_some_and(|s| s <= u128::from(EXHAUSTIVE_ROOT_LIMIT)) {
        return Ok(RootSearch::Unresolved);
    }
    let elems = field.elements(order).expect("finite field lists its elements");
    let mut idx = vec![0usize; entries as usize];
    loop {
        let mut it = idx.iter();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                Mat::from_fn(field.clone(), d[a.target], d[a.source], |_, _| {
                    elems[*it.next().expect("enough entries")].clone()
                })
            })
            .collect();
        let x = Rep::new(q.clone(), field.clone(), d.to_vec(), maps)?;
        if is_exceptional(&x, seed)? {
            return Ok(RootSearch::Found(x));
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return Ok(RootSearch::Absent);
        }
    }
}

/// Exceptional representations up to a total-dimension bound.
#[derive(Clone, Debug)]
pub struct ExceptionalCatalog<F: Field> {
    /// One exceptional per resolved root, in root order.
    pub exceptionals: Vec<Rep<F>>,
    /// Roots whose search ran out of budget.
    pub unresolved: Vec<Vec<usize>>,
}

impl<F: Field> ExceptionalCatalog<F> {
    /// Assembles a catalog from per-root outcomes listed in root order.
    pub fn from_searches(roots: &[Vec<usize>], outcomes: Vec<RootSearch<F>>) -> Self {
        let mut exceptionals = Vec::new();
        let mut unresolved = Vec::new();
        for (d, outcome) in roots.iter().zip(outcomes) {
            match outcome {
                RootSearch::Found(x) => exceptionals.push(x),
                RootSearch::Absent => {}
                RootSearch::Unresolved => unresolved.push(d.clone()),
            }
        }
        ExceptionalCatalog {
            exceptionals,
            unresolved,
        }
    }
}

pub fn enumerate_exceptional<F: Field>(
    q: &Arc<Quiver>,
    field: &F,
    bound: usize,
    seed: u64,
) -> Result<ExceptionalCatalog<F>> {
    if bound == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let roots = candidate_roots(q, bound);
    let outcomes = roots
        .iter()
        .enumerate()
        .map(|(i, d)| find_exceptional(q, field, d, root_seed(seed, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExceptionalCatalog::from_searches(&roots, outcomes))
}

/// Pairwise orthogonality table: `table[j][i]` is true when `X_j` may follow
/// `X_i` in an exceptional sequence.
pub fn orthogonality_table<F: Field>(xs: &[Rep<F>]) -> Result<Vec<Vec<bool>>> {
    let m = xs.len();
    let mut table = vec![vec![false; m]; m];
    for j in 0..m {
        for i in 0..m {
            if i != j {
                table[j][i] = orthogonal_after(&xs[j], &xs[i])?;
            }
        }
    }
    Ok(table)
}

/// Complete exceptional sequences built from a catalog.
#[derive(Clone, Debug)]
pub struct SequenceCatalog<F: Field> {
    pub sequences: Vec<ExcSequence<F>>,
    pub exceptionals: Vec<Rep<F>>,
    pub unresolved: Vec<Vec<usize>>,
}

/// Depth-first search over orderings of catalog members; sequences come out
/// in lexicographic order of catalog indices.
pub fn complete_sequences_from<F: Field>(catalog: ExceptionalCatalog<F>, n: usize) -> Result<SequenceCatalog<F>> {
    let xs = &catalog.exceptionals;
    let table = orthogonality_table(xs)?;
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    extend_sequences(&table, n, &mut stack, &mut found);
    let sequences = found
        .into_iter()
        .map(|idx| ExcSequence::new_unchecked(idx.into_iter().map(|i| xs[i].clone()).collect()))
        .collect();
    Ok(SequenceCatalog {
        sequences,
        exceptionals: catalog.exceptionals,
        unresolved: catalog.unresolved,
    })
}

fn extend_sequences(table: &[Vec<bool>], n: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if stack.len() == n {
        out.push(stack.clone());
        return;
    }
    for c in 0..table.len() {
        if stack.iter().all(|&e| e != c && table[c][e]) {
            stack.push(c);
            extend_sequences(table, n, stack, out);
            stack.pop();
        }
    }
}

pub fn enumerate_complete_exceptional_sequences<F: Field>(
    q: &Arc<Quiver>,
    field: &F,
    bound: usize,
    seed: u64,
) -> Result<SequenceCatalog<F>> {
    let catalog = enumerate_exceptional(q, field, bound, seed)?;
    complete_sequences_from(catalog, q.vertex_count())
}

/// Multiplicity-free tilting modules whose summands come from the catalog,
/// each given by its summand list: `n` exceptionals with vanishing Ext¹ in
/// both directions between every pair.
pub fn tilting_modules_from<F: Field>(exceptionals: &[Rep<F>], n: usize) -> Result<Vec<Vec<Rep<F>>>> {
    let m = exceptionals.len();
    let mut rigid_pair = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                rigid_pair[i][j] = ext1_dim(&exceptionals[i], &exceptionals[j])? == 0;
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    choose_rigid(&rigid_pair, n, 0, &mut chosen, &mut out);
    Ok(out
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| exceptionals[i].clone()).collect())
        .collect())
}

fn choose_rigid(rigid: &[Vec<bool>], n: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == n {
        out.push(chosen.clone());
        return;
    }
    for c in start..rigid.len() {
        if chosen.iter().all(|&e| rigid[c][e] && rigid[e][c]) {
            chosen.push(c);
            choose_rigid(rigid, n, c + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    #[test]
    fn exceptional_examples() {
        let q = a2();
        let f = Rationals;
        for v in 0..2 {
            assert!(is_exceptional(&Rep::projective(q.clone(), f, v).unwrap(), 0).unwrap());
        }
        assert!(is_exceptional(&Rep::simple(q.clone(), f, 0).unwrap(), 0).unwrap());
        let k = Arc::new(Quiver::kronecker());
        let r = Rep::new(
            k,
            f,
            vec![1, 1],
            vec![Mat::from_i64_rows(f, &[&[1]]), Mat::from_i64_rows(f, &[&[2]])],
        )
        .unwrap();
        assert!(!is_exceptional(&r, 0).unwrap());
        assert!(!is_exceptional(&Rep::zero(q, f), 0).unwrap());
    }

    #[test]
    fn ordering_examples() {
        let q = a2();
        let f = Rationals;
        let s1 = Rep::simple(q.clone(), f, 0).unwrap();
        let s2 = Rep::simple(q.clone(), f, 1).unwrap();
        let p1 = Rep::projective(q.clone(), f, 0).unwrap();
        let seq = order_into_exceptional_sequence(&[s2.clone(), s1.clone()], 0).unwrap().unwrap();
        assert_eq!(seq.members(), &[s1.clone(), s2.clone()]);
        let seq = order_into_exceptional_sequence(&[s1.clone(), p1.clone()], 0).unwrap().unwrap();
        assert_eq!(seq.members(), &[p1.clone(), s1.clone()]);
        let single = order_into_exceptional_sequence(core::slice::from_ref(&p1), 0).unwrap().unwrap();
        assert_eq!(single.len(), 1);
        // P_1 and S_2: Hom(S_2, P_1) != 0 and Hom(P_1, S_2) = 0 -> (S_2, P_1)
        let seq = order_into_exceptional_sequence(&[p1.clone(), s2.clone()], 0).unwrap().unwrap();
        assert_eq!(seq.members(), &[s2, p1.clone()]);
        assert!(order_into_exceptional_sequence(&[p1.clone(), p1], 0).unwrap().is_err());
    }

    #[test]
    fn tilting_examples() {
        let q = a2();
        let f = Rationals;
        let s1 = Rep::simple(q.clone(), f, 0).unwrap();
        let s2 = Rep::simple(q.clone(), f, 1).unwrap();
        let p1 = Rep::projective(q.clone(), f, 0).unwrap();
        assert!(is_tilting_module(&Rep::regular(q.clone(), f), 0).unwrap());
        assert!(is_tilting_module(&p1.direct_sum(&s1).unwrap(), 0).unwrap());
        assert!(!is_tilting_module(&s1.direct_sum(&s2).unwrap(), 0).unwrap());
        assert!(!is_tilting_module(&p1, 0).unwrap());
    }

    #[test]
    fn coresolution_of_tilting_modules() {
        let q = a2();
        let f = Rationals;
        let s1 = Rep::simple(q.clone(), f, 0).unwrap();
        let p1 = Rep::projective(q.clone(), f, 0).unwrap();
        let t = p1.direct_sum(&s1).unwrap();
        let ses = tilting_coresolution(&t, 0).unwrap().unwrap();
        ses.validate().unwrap();
        assert!(tilting_coresolution(&Rep::regular(q, f), 0).unwrap().is_some());
    }

    #[test]
    fn enumeration_on_a2() {
        let q = a2();
        let cat = enumerate_exceptional(&q, &Rationals, 3, 0).unwrap();
        assert!(cat.unresolved.is_empty());
        let dims: Vec<&[usize]> = cat.exceptionals.iter().map(|x| x.dims()).collect();
        assert_eq!(dims, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
    }

    #[test]
    fn enumeration_on_one_vertex() {
        let q = Arc::new(Quiver::single_vertex());
        let cat = enumerate_exceptional(&q, &Rationals, 5, 0).unwrap();
        assert_eq!(cat.exceptionals.len(), 1);
        assert_eq!(cat.exceptionals[0].dims(), &[1]);
        let seqs = enumerate_complete_exceptional_sequences(&q, &Rationals, 5, 0).unwrap();
        assert_eq!(seqs.sequences.len(), 1);
    }

    #[test]
    fn enumeration_on_kronecker() {
        let q = Arc::new(Quiver::kronecker());
        let cat = enumerate_exceptional(&q, &Rationals, 3, 0).unwrap();
        assert!(cat.unresolved.is_empty());
        let dims: Vec<&[usize]> = cat.exceptionals.iter().map(|x| x.dims()).collect();
        assert_eq!(dims, vec![&[0, 1][..], &[1, 0], &[1, 2], &[2, 1]]);
    }

    #[test]
    fn a2_sequences_at_bound_two() {
        let q = a2();
        let cat = enumerate_complete_exceptional_sequences(&q, &Rationals, 2, 0).unwrap();
        let dims: Vec<Vec<Vec<usize>>> = cat.sequences.iter().map(ExcSequence::dims).collect();
        // catalog order: S_2 (0,1), S_1 (1,0), P_1 (1,1)
        assert_eq!(
            dims,
            vec![
                vec![vec![0, 1], vec![1, 1]],
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![1, 1], vec![1, 0]],
            ]
        );
    }

    #[test]
    fn exhaustive_fallback_over_f2() {
        let q = a2();
        let f = PrimeField::new(2).unwrap();
        match find_exceptional(&q, &f, &[1, 1], 0).unwrap() {
            RootSearch::Found(x) => assert_eq!(x.map(0), &Mat::identity(f, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sequence_checker_rejects_wrong_order() {
        let q = a2();
        let f = Rationals;
        let s1 = Rep::simple(q.clone(), f, 0).unwrap();
        let s2 = Rep::simple(q, f, 1).unwrap();
        assert!(ExcSequence::new(vec![s1.clone(), s2.clone()], 0).is_ok());
        assert!(matches!(
            ExcSequence::new(vec![s2, s1], 0),
            Err(Error::InvalidSequence(_))
        ));
    }

    #[test]
    fn a3_counts() {
        let q = Arc::new(Quiver::linear(3));
        let cat = enumerate_complete_exceptional_sequences(&q, &Rationals, 3, 0).unwrap();
        assert_eq!(cat.exceptionals.len(), 6);
        assert_eq!(cat.sequences.len(), 16);
        assert_eq!(tilting_modules_from(&cat.exceptionals, 3).unwrap().len(), 5);
    }
}
