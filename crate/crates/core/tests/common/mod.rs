#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, RngCore};
use strata_core::quiver::Arrow;
use strata_core::{Field, Mat, Quiver, Rep};

/// Random acyclic quiver: arrows only go from lower to higher index, then the
/// vertex order is shuffled so sinks are not always last.
pub fn random_quiver(rng: &mut dyn RngCore, max_vertices: usize, max_arrows: usize) -> Arc<Quiver> {
    let n = rng.gen_range(1..=max_vertices);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut arrows = Vec::new();
    if n > 1 {
        for k in 0..rng.gen_range(0..=max_arrows) {
            let s = rng.gen_range(0..n - 1);
            let t = rng.gen_range(s + 1..n);
            arrows.push(Arrow {
                id: format!("a{}", k + 1),
                source: perm[s],
                target: perm[t],
            });
        }
    }
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Arc::new(Quiver::new(labels, arrows).expect("forward arrows are acyclic"))
}

pub fn random_rep<F: Field>(q: &Arc<Quiver>, field: &F, rng: &mut dyn RngCore, max_dim: usize) -> Rep<F> {
    let dims = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    Rep::random(q.clone(), field.clone(), dims, rng, 3).expect("dims match")
}

/// A random invertible matrix of size `n`.
pub fn random_invertible<F: Field>(field: &F, n: usize, rng: &mut dyn RngCore) -> Mat<F> {
    loop {
        let m = Mat::from_fn(field.clone(), n, n, |_, _| field.random(rng, 3));
        if m.is_invertible() {
            return m;
        }
    }
}

/// `g_w M_a g_u^{-1}` for a random base change `g`.
pub fn conjugate<F: Field>(m: &Rep<F>, rng: &mut dyn RngCore) -> Rep<F> {
    let f = m.field();
    let gs: Vec<Mat<F>> = m.dims().iter().map(|&d| random_invertible(f, d, rng)).collect();
    let maps = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.maps())
        .map(|(a, ma)| {
            gs[a.target]
                .mul(ma)
                .unwrap()
                .mul(&gs[a.source].inverse().unwrap())
                .unwrap()
        })
        .collect();
    Rep::new(m.quiver().clone(), f.clone(), m.dims().to_vec(), maps).unwrap()
}

/// The interval module of `1 -> 2 -> ... -> n` supported on `i..=j`
/// (zero-based), with identity maps inside the support.
pub fn interval<F: Field>(q: &Arc<Quiver>, field: &F, i: usize, j: usize) -> Rep<F> {
    let n = q.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| usize::from(i <= v && v <= j)).collect();
    let maps = (0..n - 1)
        .map(|v| {
            let (r, c) = (dims[v + 1], dims[v]);
            Mat::from_fn(field.clone(), r, c, |_, _| field.one())
        })
        .collect();
    Rep::new(q.clone(), field.clone(), dims, maps).unwrap()
}
