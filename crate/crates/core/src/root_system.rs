//! Positive roots and simple reflections in the simple-root basis.

use std::collections::BTreeSet;

use crate::matrix::IntMatrix;
use crate::root_data::RootDatum;

/// Integer coordinates of a root in the basis of simple roots.
pub type Root = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    positive_roots: Vec<Root>,
    simple_reflections: Vec<IntMatrix>,
}

impl RootSystem {
    /// Closes the simple roots under the simple reflections, keeping the
    /// positive vectors. Roots are ordered by height, then lexicographically.
    pub fn generate(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let simple_reflections: Vec<IntMatrix> = (0..n)
            .map(|i| {
                let mut m = IntMatrix::identity(n);
                for j in 0..n {
                    m[(i, j)] -= datum.cartan.entry(i, j);
                }
                m
            })
            .collect();

        let mut found: BTreeSet<Root> = BTreeSet::new();
        let mut frontier: Vec<Root> = (0..n).map(|i| unit(n, i)).collect();
        found.extend(frontier.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for root in &frontier {
                for s in &simple_reflections {
                    let image = s.apply(root);
                    if is_positive(&image) && found.insert(image.clone()) {
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }

        let mut positive_roots: Vec<Root> = found.into_iter().collect();
        positive_roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        RootSystem {
            rank: n,
            positive_roots,
            simple_reflections,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_reflections(&self) -> &[IntMatrix] {
        &self.simple_reflections
    }

    pub fn simple_reflection(&self, i: usize) -> &IntMatrix {
        &self.simple_reflections[i]
    }

    /// Number of positive roots sent to negative roots by `w` (given as a
    /// matrix in root coordinates).
    pub fn inversion_count(&self, w: &IntMatrix) -> usize {
        self.positive_roots
            .iter()
            .filter(|beta| is_negative(&w.apply(beta)))
            .count()
    }
}

fn unit(n: usize, i: usize) -> Root {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

/// All coordinates ≥ 0 and at least one > 0.
pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

pub fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&c| c <= 0) && v.iter().any(|&c| c < 0)
}
