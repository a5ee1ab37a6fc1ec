//! Finite acyclic quivers, dimension vectors and the Euler form.
//!
//! A representation assigns a space `M_v` to each vertex and a linear map
//! `M_a: M_u -> M_w` to each arrow `a: u -> w`. Vertices are addressed by
//! zero-based index internally and carry a stable external label, which
//! survives when vertices are deleted.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver, possibly with parallel arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path is the list of arrow indices it traverses, in order.
pub type Path = Vec<usize>;

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let n = labels.len();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n {
                return Err(Error::InvalidVertex(a.source));
            }
            if a.target >= n {
                return Err(Error::InvalidVertex(a.target));
            }
            if arrows[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::DuplicateArrow(a.id.clone()));
            }
        }
        let pairs: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
        if !is_acyclic(n, &pairs) {
            return Err(Error::Cyclic);
        }
        Ok(Quiver { labels, arrows })
    }

    /// Quiver on vertices labelled `1..=n` with arrows `(id, source, target)`
    /// given by zero-based vertex index.
    pub fn from_arrows(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let arrows = arrows
            .iter()
            .map(|&(id, s, t)| Arrow {
                id: id.to_string(),
                source: s,
                target: t,
            })
            .collect();
        Quiver::new(labels, arrows)
    }

    /// The quiver with no vertices; only reachable as the perpendicular
    /// algebra of the single-vertex quiver.
    pub fn empty() -> Self {
        Quiver {
            labels: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn single_vertex() -> Self {
        Quiver::from_arrows(1, &[]).expect("valid quiver")
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let ids: Vec<String> = (1..n).map(|i| alloc::format!("a{i}")).collect();
        let arrows: Vec<(&str, usize, usize)> = ids.iter().enumerate().map(|(i, id)| (id.as_str(), i, i + 1)).collect();
        Quiver::from_arrows(n, &arrows).expect("valid quiver")
    }

    /// Two vertices with two parallel arrows `1 => 2`.
    pub fn kronecker() -> Self {
        Quiver::from_arrows(2, &[("a", 0, 1), ("b", 0, 1)]).expect("valid quiver")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    pub fn check_dims(&self, d: &[usize]) -> Result<()> {
        if d.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                found: d.len(),
            })
        }
    }

    /// `<d, e> = sum_v d_v e_v - sum_{a: u -> w} d_u e_w`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> Result<i64> {
        self.check_dims(d)?;
        self.check_dims(e)?;
        let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| (d[a.source] * e[a.target]) as i64)
            .sum();
        Ok(diag - off)
    }

    /// Vertices without outgoing arrows, in index order.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.arrows.iter().all(|a| a.source != v))
            .collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.arrows.iter().all(|a| a.target != v))
            .collect()
    }

    /// All paths starting at `v`, grouped by end vertex. Each group is sorted
    /// by (length, arrow indices) so bases built from it are deterministic.
    pub fn paths_from(&self, v: usize) -> Vec<Vec<Path>> {
        let mut by_target: Vec<Vec<Path>> = vec![Vec::new(); self.vertex_count()];
        let mut stack: Vec<(usize, Path)> = vec![(v, Vec::new())];
        while let Some((at, path)) = stack.pop() {
            for (i, a) in self.arrows.iter().enumerate() {
                if a.source == at {
                    let mut next = path.clone();
                    next.push(i);
                    stack.push((a.target, next));
                }
            }
            by_target[at].push(path);
        }
        for group in &mut by_target {
            group.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        }
        by_target
    }

    /// Number of paths from `u` to `w` (including the trivial path when `u = w`).
    pub fn path_count(&self, u: usize, w: usize) -> usize {
        self.paths_from(u)[w].len()
    }

    /// Full subquiver on every vertex except `v`. Returns the quiver and, for
    /// each new vertex, its index in `self`.
    pub fn delete_vertex(&self, v: usize) -> Result<(Quiver, Vec<usize>)> {
        self.check_vertex(v)?;
        if self.vertex_count() == 1 {
            return Err(Error::EmptyQuiver);
        }
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        let new_index = |u: usize| kept.iter().position(|&k| k == u);
        let labels = kept.iter().map(|&u| self.labels[u].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow {
                    id: a.id.clone(),
                    source: new_index(a.source)?,
                    target: new_index(a.target)?,
                })
            })
            .collect();
        Ok((Quiver::new(labels, arrows)?, kept))
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            labels: self.labels.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// All nonzero dimension vectors with total dimension at most `bound`,
    /// ordered by (total dimension, lexicographic vector).
    pub fn dimension_vectors(&self, bound: usize) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for total in 1..=bound {
            let mut current = vec![0; n];
            compositions(total, 0, &mut current, &mut out);
        }
        out
    }
}

fn compositions(remaining: usize, at: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = current.len();
    if at == n - 1 {
        current[at] = remaining;
        out.push(current.clone());
        return;
    }
    for v in 0..=remaining {
        current[at] = v;
        compositions(remaining - v, at + 1, current, out);
    }
}

/// Kahn's algorithm: true iff the directed multigraph has a topological order.
pub fn is_acyclic(vertex_count: usize, arrows: &[(usize, usize)]) -> bool {
    let mut indegree = vec![0usize; vertex_count];
    for &(s, t) in arrows {
        if s >= vertex_count || t >= vertex_count {
            return false;
        }
        indegree[t] += 1;
    }
    let mut queue: VecDeque<usize> = (0..vertex_count).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &(s, t) in arrows {
            if s == v {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
    }
    seen == vertex_count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn euler_form_examples() {
        let one = Quiver::single_vertex();
        assert_eq!(one.euler_form(&[2], &[3]).unwrap(), 6);
        let a2 = Quiver::linear(2);
        assert_eq!(a2.euler_form(&[1, 0], &[0, 1]).unwrap(), -1);
        let k = Quiver::kronecker();
        assert_eq!(k.euler_form(&[1, 1], &[1, 1]).unwrap(), 0);
        assert!(matches!(
            k.euler_form(&[1], &[1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(2, &[(0, 1)]));
        assert!(!is_acyclic(1, &[(0, 0)]));
        assert!(!is_acyclic(3, &[(0, 1), (1, 2), (2, 0)]));
        assert_eq!(
            Quiver::from_arrows(1, &[("loop", 0, 0)]),
            Err(Error::Cyclic)
        );
    }

    #[test]
    fn sink_examples() {
        assert_eq!(Quiver::linear(2).sinks(), vec![1]);
        assert_eq!(Quiver::single_vertex().sinks(), vec![0]);
        let q = Quiver::from_arrows(3, &[("a", 0, 1), ("b", 0, 2)]).unwrap();
        assert_eq!(q.sinks(), vec![1, 2]);
    }

    #[test]
    fn paths_in_linear_and_kronecker() {
        let a3 = Quiver::linear(3);
        let p = a3.paths_from(0);
        assert_eq!(p.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(p[2][0], vec![0, 1]);
        let k = Quiver::kronecker();
        assert_eq!(k.path_count(0, 1), 2);
        assert_eq!(k.path_count(1, 0), 0);
    }

    #[test]
    fn deletion_keeps_labels() {
        let a3 = Quiver::linear(3);
        let (q, kept) = a3.delete_vertex(1).unwrap();
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(q.labels(), &["1".to_string(), "3".to_string()]);
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn dimension_vectors_are_ordered() {
        let dv = Quiver::linear(2).dimension_vectors(2);
        assert_eq!(dv, vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    fn arb_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..8).prop_map(move |pairs| {
                // orient every arrow from smaller to larger index
                let arrows: Vec<Arrow> = pairs
                    .into_iter()
                    .filter(|(s, t)| s != t)
                    .enumerate()
                    .map(|(i, (s, t))| Arrow {
                        id: alloc::format!("x{i}"),
                        source: s.min(t),
                        target: s.max(t),
                    })
                    .collect();
                let labels = (1..=n).map(|i| i.to_string()).collect();
                Quiver::new(labels, arrows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn euler_form_is_bilinear(q in arb_quiver(), seed in any::<u64>()) {
            let n = q.vertex_count();
            let gen = |k: u64| -> Vec<usize> { (0..n).map(|i| ((seed >> ((i as u64 * 3 + k) % 60)) & 3) as usize).collect() };
            let (d, d2, e) = (gen(0), gen(7), gen(13));
            let sum: Vec<usize> = d.iter().zip(&d2).map(|(a, b)| a + b).collect();
            prop_assert_eq!(
                q.euler_form(&sum, &e).unwrap(),
                q.euler_form(&d, &e).unwrap() + q.euler_form(&d2, &e).unwrap()
            );
            let esum: Vec<usize> = e.iter().zip(&d2).map(|(a, b)| a + b).collect();
            prop_assert_eq!(
                q.euler_form(&d, &esum).unwrap(),
                q.euler_form(&d, &e).unwrap() + q.euler_form(&d, &d2).unwrap()
            );
        }

        #[test]
        fn acyclic_quivers_have_sinks_and_deletion_stays_acyclic(q in arb_quiver()) {
            prop_assert!(!q.sinks().is_empty());
            if q.vertex_count() > 1 {
                for v in 0..q.vertex_count() {
                    let (sub, _) = q.delete_vertex(v).unwrap();
                    let pairs: Vec<_> = sub.arrows().iter().map(|a| (a.source, a.target)).collect();
                    prop_assert!(is_acyclic(sub.vertex_count(), &pairs));
                }
            }
        }
    }
}
