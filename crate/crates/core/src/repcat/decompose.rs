//! Krull–Schmidt decomposition and isomorphism testing.
//!
//! Splitting follows Fitting's lemma: an endomorphism `φ` that is neither
//! nilpotent nor invertible gives `M = Im φ^N ⊕ Ker φ^N`. Candidates are End
//! basis elements, their eigenvalue shifts `φ - λ`, pairwise products and
//! seeded random combinations. When none splits, indecomposability is
//! certified by exhibiting `End(M) = k·1 + N` with `N` nilpotent; if that
//! certificate cannot be produced either, the result is `Undecided`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_space, HomBasis};
use super::{Morphism, Rep};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{char_poly, generalized_kernel, is_nilpotent, stable_image, Mat};

/// Random endomorphisms tried per splitting attempt.
pub const DEFAULT_SPLIT_BUDGET: usize = 64;

/// Exhaust the coefficient space of `Hom(M, N)` when it has at most this many points.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Height of random rational coefficients in isomorphism search.
const ISO_HEIGHT: u32 = 1 << 20;

/// Target failure probability `2^-ISO_CONFIDENCE_BITS` for a "not isomorphic" answer
/// reached by sampling (Schwartz–Zippel).
const ISO_CONFIDENCE_BITS: u32 = 64;

/// Pairwise non-isomorphic indecomposable summands with multiplicities,
/// ordered by (total dimension, dimension vector) and then by discovery.
pub fn decompose<F: Field>(m: &Rep<F>, seed: u64) -> Result<Vec<(Rep<F>, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    split_fully(m, &mut rng, &mut pieces)?;
    let mut groups: Vec<(Rep<F>, usize)> = Vec::new();
    for piece in pieces {
        let mut found = false;
        for (g, count) in groups.iter_mut() {
            if local_isomorphic(g, &piece)? {
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((piece, 1));
        }
    }
    groups.sort_by(|(a, _), (b, _)| {
        a.total_dim()
            .cmp(&b.total_dim())
            .then_with(|| a.dims().cmp(b.dims()))
    });
    Ok(groups)
}

/// Nonzero with a local endomorphism ring.
pub fn is_indecomposable<F: Field>(m: &Rep<F>, seed: u64) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = hom_space(m, m)?;
    if end.dim() == 1 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if find_splitting(m, &end, &mut rng)?.is_some() {
        return Ok(false);
    }
    if certify_local(m, &end) {
        Ok(true)
    } else {
        Err(undecided(m))
    }
}

fn undecided<F: Field>(m: &Rep<F>) -> Error {
    Error::Undecided(format!(
        "no splitting endomorphism found and End is not certified local for dim {}",
        m.dim_string()
    ))
}

fn split_fully<F: Field>(m: &Rep<F>, rng: &mut ChaCha8Rng, out: &mut Vec<Rep<F>>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let end = hom_space(m, m)?;
    if end.dim() == 1 {
        out.push(m.clone());
        return Ok(());
    }
    match find_splitting(m, &end, rng)? {
        Some((a, b)) => {
            split_fully(&a, rng, out)?;
            split_fully(&b, rng, out)
        }
        None if certify_local(m, &end) => {
            out.push(m.clone());
            Ok(())
        }
        None => Err(undecided(m)),
    }
}

/// Fitting decomposition along `φ`, if it is nontrivial.
fn fitting<F: Field>(m: &Rep<F>, phi: &Morphism<F>) -> Result<Option<(Rep<F>, Rep<F>)>> {
    let images: Vec<Mat<F>> = phi.components().iter().map(stable_image).collect();
    let r: usize = images.iter().map(Mat::cols).sum();
    if r == 0 || r == m.total_dim() {
        return Ok(None);
    }
    let kernels: Vec<Mat<F>> = phi.components().iter().map(generalized_kernel).collect();
    let (image, _) = m.subrep(&images)?;
    let (kernel, _) = m.subrep(&kernels)?;
    Ok(Some((image, kernel)))
}

fn morphism_is_nilpotent<F: Field>(phi: &Morphism<F>) -> bool {
    phi.components().iter().all(is_nilpotent)
}

/// Eigenvalues in the field of the components of an endomorphism.
fn eigenvalues<F: Field>(phi: &Morphism<F>) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    for c in phi.components() {
        if c.rows() == 0 {
            continue;
        }
        if let Some(roots) = c.field().roots(&char_poly(c)) {
            for r in roots {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn try_candidate<F: Field>(m: &Rep<F>, phi: &Morphism<F>) -> Result<Option<(Rep<F>, Rep<F>)>> {
    if let Some(split) = fitting(m, phi)? {
        return Ok(Some(split));
    }
    for lambda in eigenvalues(phi) {
        if let Some(split) = fitting(m, &phi.shift(&lambda))? {
            return Ok(Some(split));
        }
    }
    Ok(None)
}

fn find_splitting<F: Field>(m: &Rep<F>, end: &HomBasis<F>, rng: &mut ChaCha8Rng) -> Result<Option<(Rep<F>, Rep<F>)>> {
    let field = m.field();
    for b in end.basis() {
        if let Some(split) = try_candidate(m, b)? {
            return Ok(Some(split));
        }
    }
    if end.dim() <= 8 {
        for x in end.basis() {
            for y in end.basis() {
                if let Some(split) = try_candidate(m, &x.after(y)?)? {
                    return Ok(Some(split));
                }
            }
        }
    }
    // A non-invertible, non-nilpotent element splits directly. Products
    // `r ∘ b` with `b` nilpotent and `r` random are such elements unless
    // End(M) is local.
    let nilpotent: Vec<&Morphism<F>> = end.basis().iter().filter(|b| morphism_is_nilpotent(b)).collect();
    for i in 0..DEFAULT_SPLIT_BUDGET {
        let coeffs: Vec<F::Elem> = (0..end.dim()).map(|_| field.random(rng, 3)).collect();
        let phi = end.combination(field, &coeffs);
        if let Some(split) = try_candidate(m, &phi)? {
            return Ok(Some(split));
        }
        if let Some(b) = nilpotent.get(i % nilpotent.len().max(1)) {
            if let Some(split) = fitting(m, &phi.after(b)?)? {
                return Ok(Some(split));
            }
        }
    }
    Ok(None)
}

/// Certifies that `End(M)` is local: every basis element `b` has a single
/// eigenvalue `λ_b` in the field with `b - λ_b` nilpotent, and the span `J` of
/// these shifted elements generates a nilpotent subalgebra. Then
/// `End(M) = k·1 + N` with `N` a nilpotent ideal.
fn certify_local<F: Field>(m: &Rep<F>, end: &HomBasis<F>) -> bool {
    let mut shifted: Vec<Morphism<F>> = Vec::new();
    for b in end.basis() {
        let found = eigenvalues(b).into_iter().find_map(|lambda| {
            let s = b.shift(&lambda);
            morphism_is_nilpotent(&s).then_some(s)
        });
        match found {
            Some(s) => shifted.push(s),
            None => return false,
        }
    }
    let mut words = independent(m, shifted.clone());
    for _ in 0..=m.total_dim() {
        if words.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for j in &shifted {
            for w in &words {
                next.push(j.after(w).expect("endomorphisms compose"));
            }
        }
        words = independent(m, next);
    }
    words.is_empty()
}

/// A maximal linearly independent subfamily (dropping zeros).
fn independent<F: Field>(m: &Rep<F>, family: Vec<Morphism<F>>) -> Vec<Morphism<F>> {
    if family.is_empty() {
        return family;
    }
    let len = family[0].flatten().len();
    let columns: Vec<Vec<F::Elem>> = family.iter().map(Morphism::flatten).collect();
    let mat = Mat::from_columns(m.field().clone(), len, &columns);
    let rref = mat.rref();
    rref.pivots().iter().map(|&p| family[p].clone()).collect()
}

/// Isomorphism test.
///
/// Positive answers come with an explicit isomorphism from
/// [`find_isomorphism`]. When that search cannot settle the question, the
/// Krull–Schmidt decompositions are compared summand by summand with
/// [`local_isomorphic`], which is exact.
pub fn is_isomorphic<F: Field>(m: &Rep<F>, n: &Rep<F>, seed: u64) -> Result<bool> {
    match find_isomorphism(m, n, seed) {
        Ok(found) => Ok(found.is_some()),
        Err(Error::Undecided(_)) => same_decomposition(m, n, seed),
        Err(e) => Err(e),
    }
}

/// Isomorphism of indecomposables with local endomorphism rings: `X ≅ Y`
/// iff `g ∘ f` is not nilpotent for some basis elements `f: X -> Y`,
/// `g: Y -> X`. The non-invertible endomorphisms of `X` form the ideal of
/// nilpotents, so if all such products were nilpotent, so would be every
/// `g ∘ f`; conversely an invertible `g ∘ f` makes `f` a split mono onto the
/// indecomposable `Y`.
pub fn local_isomorphic<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<bool> {
    x.check_same_category(y)?;
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let there = hom_space(x, y)?;
    let back = hom_space(y, x)?;
    for f in there.basis() {
        for g in back.basis() {
            if !morphism_is_nilpotent(&g.after(f)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn same_decomposition<F: Field>(m: &Rep<F>, n: &Rep<F>, seed: u64) -> Result<bool> {
    let dm = decompose(m, seed)?;
    let dn = decompose(n, seed)?;
    if dm.len() != dn.len() {
        return Ok(false);
    }
    for (x, k) in &dm {
        let mut matched = false;
        for (y, l) in &dn {
            if k == l && local_isomorphic(x, y)? {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An invertible intertwiner `M -> N`, if one exists.
///
/// Necessary dimension conditions are checked first. Small finite coefficient
/// spaces are searched exhaustively. Otherwise random elements of `Hom(M, N)`
/// are sampled until the Schwartz–Zippel bound puts the chance of missing an
/// isomorphism below `2^-64`. A failed search is confirmed by comparing
/// decompositions; if they agree (or the field is too small to sample) the
/// result is `Undecided`, since no explicit map is at hand.
pub fn find_isomorphism<F: Field>(m: &Rep<F>, n: &Rep<F>, seed: u64) -> Result<Option<Morphism<F>>> {
    m.check_same_category(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morphism::identity(m)));
    }
    let hom = hom_space(m, n)?;
    let r = hom.dim();
    if r == 0 || hom_space(m, m)?.dim() != r || hom_space(n, n)?.dim() != r || hom_space(n, m)?.dim() != r {
        return Ok(None);
    }
    for b in hom.basis() {
        if b.is_isomorphism() {
            return Ok(Some(b.clone()));
        }
    }
    let field = m.field();
    if let Some(q) = field.order() {
        let points = BigUint::from(q).pow(r as u32);
        if points <= BigUint::from(EXHAUSTIVE_LIMIT) {
            return Ok(exhaustive_isomorphism(&hom, field, q, r));
        }
    }
    let degree = m.total_dim() as u64;
    let sample_space = match field.order() {
        Some(q) => q,
        None => 2 * u64::from(ISO_HEIGHT) + 1,
    };
    let no_map = || {
        Error::Undecided(format!(
            "no explicit isomorphism found for dim {}",
            m.dim_string()
        ))
    };
    let Some(tries) = tries_for_confidence(degree, sample_space) else {
        return Err(no_map());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let coeffs: Vec<F::Elem> = (0..r).map(|_| field.random(&mut rng, ISO_HEIGHT)).collect();
        let f = hom.combination(field, &coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    match same_decomposition(m, n, seed) {
        Ok(false) => Ok(None),
        Ok(true) => Err(no_map()),
        // End not certified local: keep the sampling verdict
        Err(e) if e.is_undecided() => Ok(None),
        Err(e) => Err(e),
    }
}

fn exhaustive_isomorphism<F: Field>(hom: &HomBasis<F>, field: &F, q: u64, r: usize) -> Option<Morphism<F>> {
    let elems = field.elements(q)?;
    let mut idx = alloc::vec![0usize; r];
    loop {
        // advance odometer first so the zero vector is skipped
        let mut k = 0;
        while k < r {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            return None;
        }
        let coeffs: Vec<F::Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        let f = hom.combination(field, &coeffs);
        if f.is_isomorphism() {
            return Some(f);
        }
    }
}

/// Smallest `t` with `(degree / space)^t <= 2^-64`, or `None` if
/// `degree >= space`.
fn tries_for_confidence(degree: u64, space: u64) -> Option<u32> {
    if degree >= space {
        return None;
    }
    let d = BigUint::from(degree.max(1));
    let s = BigUint::from(space);
    let target = BigUint::from(1u8) << ISO_CONFIDENCE_BITS;
    let (mut dt, mut st) = (BigUint::from(1u8), BigUint::from(1u8));
    for t in 1..=4096u32 {
        dt *= &d;
        st *= &s;
        if &dt * &target <= st {
            return Some(t);
        }
    }
    None
}
