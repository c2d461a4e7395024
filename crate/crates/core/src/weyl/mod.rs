//! Weyl groups of finite root systems.
//!
//! Elements are generated breadth-first from the identity by right
//! multiplication with simple reflections and deduplicated by their exact
//! integer matrix in root coordinates. The BFS depth at which an element is
//! first reached is its length, and visiting each level in canonical-word
//! order makes the first word found for an element its lexicographically
//! least reduced word.

mod bruhat;
pub mod oracle;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::poly::QPolynomial;
use crate::root_system::{is_negative, RootSystem};

pub use oracle::oracle_weyl_group;

/// Default cap on `|W|`.
pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("Weyl group enumeration exceeded the budget of {cap} elements")]
    BudgetExceeded { cap: usize },
    #[error("oracle enumeration is limited to rank {max}, got rank {rank}")]
    RankGuard { rank: usize, max: usize },
    #[error("matrix entry out of range during enumeration; is the Cartan matrix of finite type?")]
    EntryOverflow,
}

impl WeylError {
    pub fn name(&self) -> &'static str {
        match self {
            WeylError::BudgetExceeded { .. } => "BudgetExceeded",
            WeylError::RankGuard { .. } => "RankGuard",
            WeylError::EntryOverflow => "EntryOverflow",
        }
    }
}

/// Compact key: matrix entries in root coordinates are root coordinates,
/// bounded by the coefficients of the highest root.
type Key = Box<[i8]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<u8>,
    key: Key,
}

impl WeylElement {
    /// Canonical (lexicographically least) reduced word, 0-based generator indices.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> IntMatrix {
        key_to_matrix(&self.key)
    }

    /// `s1s2s1`-style rendering with 1-based indices, `e` for the identity.
    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

/// Index of an element inside its [`WeylGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementId(pub usize);

#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: RootSystem,
    /// Sorted by length, then canonical word.
    elements: Vec<WeylElement>,
    index: HashMap<Key, usize>,
}

/// `generate_weyl_group` with the default budget.
pub fn generate_weyl_group(roots: &RootSystem) -> Result<WeylGroup, WeylError> {
    WeylGroup::generate(roots, DEFAULT_BUDGET)
}

impl WeylGroup {
    pub fn generate(roots: &RootSystem, budget: usize) -> Result<Self, WeylError> {
        let n = roots.rank();
        let cartan_rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let s = roots.simple_reflection(i);
                // s_i = I - e_i * row_i(cartan)
                (0..n).map(|j| i64::from(i == j) - s[(i, j)]).collect()
            })
            .collect();

        let identity = matrix_to_key(&IntMatrix::identity(n))?;
        let mut elements = vec![WeylElement {
            word: Vec::new(),
            key: identity.clone(),
        }];
        let mut index = HashMap::from([(identity, 0usize)]);
        if budget < 1 {
            return Err(WeylError::BudgetExceeded { cap: budget });
        }

        let mut level_start = 0;
        while level_start < elements.len() {
            let level_end = elements.len();
            let candidates: Vec<Vec<Key>> = elements[level_start..level_end]
                .par_iter()
                .map(|e| {
                    (0..n)
                        .map(|i| right_multiply_simple(&e.key, n, i, &cartan_rows[i]))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            for (offset, row) in candidates.into_iter().enumerate() {
                let parent = level_start + offset;
                for (i, key) in row.into_iter().enumerate() {
                    if index.contains_key(&key) {
                        continue;
                    }
                    if elements.len() >= budget {
                        return Err(WeylError::BudgetExceeded { cap: budget });
                    }
                    let mut word = elements[parent].word.clone();
                    word.push(i as u8);
                    index.insert(key.clone(), elements.len());
                    elements.push(WeylElement { word, key });
                }
            }
            level_start = level_end;
        }

        Ok(WeylGroup {
            roots: roots.clone(),
            elements,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &WeylElement {
        &self.elements[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    /// The longest element `w0`, unique of maximal length.
    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("W contains the identity")
    }

    pub fn simple_reflection(&self, i: usize) -> ElementId {
        self.find_word(&[i as u8]).expect("simple reflections lie in W")
    }

    /// Id of the element with the given matrix, if it belongs to the group.
    pub fn find(&self, matrix: &IntMatrix) -> Option<ElementId> {
        let key = matrix_to_key(matrix).ok()?;
        self.index.get(&key).copied().map(ElementId)
    }

    pub fn id_of(&self, element: &WeylElement) -> Option<ElementId> {
        self.index.get(&element.key).copied().map(ElementId)
    }

    /// Product of the simple reflections in `word`, as an element id.
    pub fn find_word(&self, word: &[u8]) -> Option<ElementId> {
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        for &i in word {
            m = m.mul(self.roots.simple_reflection(usize::from(i)));
        }
        self.find(&m)
    }

    pub fn length(&self, id: ElementId) -> usize {
        self.elements[id.0].length()
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let m = self.elements[a.0].matrix().mul(&self.elements[b.0].matrix());
        self.find(&m).expect("W is closed under multiplication")
    }

    pub fn inverse(&self, a: ElementId) -> ElementId {
        let reversed: Vec<u8> = self.elements[a.0].word.iter().rev().copied().collect();
        self.find_word(&reversed).expect("W is closed under inverses")
    }

    /// `s_i · w`
    pub fn left_multiply_simple(&self, i: usize, w: ElementId) -> ElementId {
        let m = self.roots.simple_reflection(i).mul(&self.elements[w.0].matrix());
        self.find(&m).expect("W is closed under multiplication")
    }

    /// `w · s_i`
    pub fn right_multiply_simple(&self, w: ElementId, i: usize) -> ElementId {
        let m = self.elements[w.0].matrix().mul(self.roots.simple_reflection(i));
        self.find(&m).expect("W is closed under multiplication")
    }

    /// `|{α > 0 : w(α) < 0}|`
    pub fn inversion_count(&self, id: ElementId) -> usize {
        self.roots.inversion_count(&self.elements[id.0].matrix())
    }

    /// Right descents: `w(α_i) < 0`.
    pub fn right_descents(&self, id: ElementId) -> Vec<usize> {
        let m = self.elements[id.0].matrix();
        (0..self.rank()).filter(|&i| is_negative(&m.column(i))).collect()
    }

    /// Lexicographically least reduced word of `matrix`, computed greedily
    /// from left descents measured by inversion counts. Independent of the
    /// BFS bookkeeping.
    pub fn greedy_canonical_word(&self, matrix: &IntMatrix) -> Vec<u8> {
        let mut current = matrix.clone();
        let mut len = self.roots.inversion_count(&current);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (i, next, next_len) = (0..self.rank())
                .map(|i| {
                    let next = self.roots.simple_reflection(i).mul(&current);
                    let l = self.roots.inversion_count(&next);
                    (i, next, l)
                })
                .find(|(_, _, l)| *l < len)
                .expect("a nonidentity element has a left descent");
            word.push(i as u8);
            current = next;
            len = next_len;
        }
        word
    }

    /// `census[d] = #{w : l(w) = d}`.
    pub fn length_census(&self) -> Vec<u64> {
        let mut census = vec![0u64; self.longest().length() + 1];
        for e in &self.elements {
            census[e.length()] += 1;
        }
        census
    }

    /// `Σ_w q^{l(w)}`
    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        PoincarePolynomial(QPolynomial::from_coeffs(
            self.length_census().into_iter().map(BigInt::from),
        ))
    }
}

pub fn poincare_polynomial(group: &WeylGroup) -> PoincarePolynomial {
    group.poincare_polynomial()
}

/// `Σ_{w ∈ W} q^{l(w)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PoincarePolynomial(pub QPolynomial);

impl PoincarePolynomial {
    pub fn as_poly(&self) -> &QPolynomial {
        &self.0
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.0.coeff(degree)
    }

    /// `|W|`
    pub fn total(&self) -> BigInt {
        self.0.eval_at_one()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.is_palindromic()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn matrix_to_key(m: &IntMatrix) -> Result<Key, WeylError> {
    m.as_slice()
        .iter()
        .map(|&x| i8::try_from(x).map_err(|_| WeylError::EntryOverflow))
        .collect()
}

fn key_to_matrix(key: &[i8]) -> IntMatrix {
    let n = (key.len() as f64).sqrt().round() as usize;
    IntMatrix::from_flat(n, key.iter().map(|&x| i64::from(x)).collect())
}

/// Column `j` of `W · s_i` is `W[:, j] - a_ij W[:, i]` (column `i` is negated since `a_ii = 2`).
fn right_multiply_simple(key: &[i8], n: usize, i: usize, cartan_row: &[i64]) -> Result<Key, WeylError> {
    let mut out: Vec<i8> = key.to_vec();
    for (j, &a) in cartan_row.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for r in 0..n {
            let v = i64::from(key[r * n + j]) - a * i64::from(key[r * n + i]);
            out[r * n + j] = i8::try_from(v).map_err(|_| WeylError::EntryOverflow)?;
        }
    }
    Ok(out.into_boxed_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::parse_root_datum;

    pub(crate) fn group(spec: &str) -> WeylGroup {
        let datum = parse_root_datum(spec).unwrap();
        generate_weyl_group(&RootSystem::generate(&datum)).unwrap()
    }

    fn lengths(g: &WeylGroup) -> Vec<usize> {
        g.elements().iter().map(WeylElement::length).collect()
    }

    #[test]
    fn a1() {
        let g = group("A1");
        assert_eq!(g.order(), 2);
        assert_eq!(lengths(&g), vec![0, 1]);
    }

    #[test]
    fn a2_lengths() {
        let g = group("A2");
        assert_eq!(g.order(), 6);
        assert_eq!(lengths(&g), vec![0, 1, 1, 2, 2, 3]);
        let words: Vec<String> = g.elements().iter().map(|e| e.word_string()).collect();
        assert_eq!(words, ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]);
    }

    #[test]
    fn pure_torus_is_trivial() {
        let g = group("T1");
        assert_eq!(g.order(), 1);
        assert_eq!(g.longest().length(), 0);
        assert_eq!(g.poincare_polynomial().to_string(), "1");
    }

    #[test]
    fn specific_lengths() {
        assert_eq!(group("B2").longest().length(), 4);
        let a2 = group("A2");
        let s1s2 = a2.find_word(&[0, 1]).unwrap();
        assert_eq!(a2.length(s1s2), 2);
        assert_eq!(a2.inversion_count(s1s2), 2);
        assert_eq!(a2.length(a2.identity()), 0);
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(group("A1").poincare_polynomial().to_string(), "1 + q");
        assert_eq!(group("A2").poincare_polynomial().to_string(), "1 + 2q + 2q^2 + q^3");
        assert_eq!(
            group("B2").poincare_polynomial().to_string(),
            "1 + 2q + 2q^2 + 2q^3 + q^4"
        );
    }

    #[test]
    fn budget_is_enforced() {
        let datum = parse_root_datum("A3").unwrap();
        let err = WeylGroup::generate(&RootSystem::generate(&datum), 23).unwrap_err();
        assert_eq!(err, WeylError::BudgetExceeded { cap: 23 });
        assert!(WeylGroup::generate(&RootSystem::generate(&datum), 24).is_ok());
    }

    #[test]
    fn lengths_equal_inversion_counts_and_words_are_canonical() {
        for spec in ["A3", "B3", "C3", "G2", "A1xA2"] {
            let g = group(spec);
            for id in g.ids() {
                let e = g.element(id);
                assert_eq!(e.length(), g.inversion_count(id), "{spec} {e}");
                assert_eq!(g.greedy_canonical_word(&e.matrix()), e.word(), "{spec} {e}");
                assert_eq!(g.find_word(e.word()), Some(id));
            }
        }
    }

    #[test]
    fn canonical_words_are_lexicographically_least_by_brute_force() {
        // enumerate every word of length l(w) and keep the least reduced one
        let g = group("B2");
        let n = g.rank() as u8;
        for id in g.ids() {
            let len = g.length(id);
            let mut best: Option<Vec<u8>> = None;
            let total = (n as usize).pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let mut word = vec![0u8; len];
                for slot in word.iter_mut().rev() {
                    *slot = (c % n as usize) as u8;
                    c /= n as usize;
                }
                if g.find_word(&word) == Some(id) {
                    best = Some(word);
                    break;
                }
            }
            assert_eq!(best.as_deref(), Some(g.element(id).word()));
        }
    }

    #[test]
    fn length_changes_by_one_under_simple_reflections() {
        for spec in ["A3", "B3", "G2"] {
            let g = group(spec);
            for id in g.ids() {
                for i in 0..g.rank() {
                    let l = g.length(id) as i64;
                    let l2 = g.length(g.right_multiply_simple(id, i)) as i64;
                    assert_eq!((l - l2).abs(), 1);
                    let is_descent = g.right_descents(id).contains(&i);
                    assert_eq!(is_descent, l2 < l);
                }
            }
        }
    }

    #[test]
    fn closed_under_products_and_inverses() {
        let g = group("B2");
        for a in g.ids() {
            let inv = g.inverse(a);
            assert_eq!(g.multiply(a, inv), g.identity());
            assert_eq!(g.length(inv), g.length(a));
            for b in g.ids() {
                let _ = g.multiply(a, b);
            }
        }
    }

    #[test]
    fn longest_element_is_unique_and_has_length_n_positive_roots() {
        for spec in ["A3", "B3", "D4", "G2", "F4"] {
            let g = group(spec);
            let top = g.longest().length();
            assert_eq!(top, g.root_system().positive_roots().len());
            assert_eq!(g.elements().iter().filter(|e| e.length() == top).count(), 1);
        }
    }

    #[test]
    fn e6_order() {
        assert_eq!(group("E6").order(), 51_840);
    }
}
