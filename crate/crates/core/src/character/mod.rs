//! The representation ring `R(T) = ℤ[X*(T)]` as Laurent polynomials in
//! `t_1, …, t_r`, its augmentation, and `I_T`-adic completion.

mod completion;
mod parse;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{BasisElement, ModulePresentation};

pub use completion::{complete, CompletedElement, Monomial, TruncatedSeries, DEFAULT_PRECISION};
pub use parse::parse_element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("torus ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("cannot parse {input:?} at position {position}: {reason}")]
    ParseError {
        input: String,
        position: usize,
        reason: String,
    },
    #[error("{0} is not a unit of the character ring")]
    NotInvertible(String),
}

impl CharacterError {
    pub fn name(&self) -> &'static str {
        match self {
            CharacterError::RankMismatch { .. } => "RankMismatch",
            CharacterError::ParseError { .. } => "ParseError",
            CharacterError::NotInvertible(_) => "NotInvertible",
        }
    }
}

/// Exponent vector: a character `λ ∈ X*(T) ≅ ℤ^r`.
pub type Character = Vec<i64>;

/// An element `Σ c_λ t^λ` of `R(T)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterRingElement {
    rank: usize,
    terms: BTreeMap<Character, BigInt>,
}

impl CharacterRingElement {
    pub fn zero(rank: usize) -> Self {
        CharacterRingElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::character(vec![0; rank])
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    /// The character `t^λ`.
    pub fn character(exponent: Character) -> Self {
        Self::monomial(exponent, 1)
    }

    pub fn monomial(exponent: Character, coeff: impl Into<BigInt>) -> Self {
        let mut e = CharacterRingElement::zero(exponent.len());
        e.add_term(exponent, coeff.into());
        e
    }

    /// `t_i` (0-based `i`).
    pub fn variable(rank: usize, i: usize) -> Self {
        let mut exp = vec![0; rank];
        exp[i] = 1;
        Self::character(exp)
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Character, BigInt)>) -> Self {
        let mut e = CharacterRingElement::zero(rank);
        for (exp, c) in terms {
            assert_eq!(exp.len(), rank, "exponent length must equal the torus rank");
            e.add_term(exp, c);
        }
        e
    }

    fn add_term(&mut self, exponent: Character, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Character, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_rank(&self, other: &Self) -> Result<(), CharacterError> {
        if self.rank != other.rank {
            return Err(CharacterError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CharacterRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self, CharacterError> {
        self.same_rank(other)?;
        let mut out = CharacterRingElement::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// Integer powers; negative exponents only for units `±t^λ`.
    pub fn pow(&self, k: i64) -> Result<Self, CharacterError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = CharacterRingElement::one(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    /// Inverse of a unit `±t^λ`.
    pub fn inverse(&self) -> Result<Self, CharacterError> {
        match self.terms.iter().next() {
            Some((exp, c)) if self.terms.len() == 1 && c.abs().is_one() => Ok(CharacterRingElement::monomial(
                exp.iter().map(|x| -x).collect(),
                c.clone(),
            )),
            _ => Err(CharacterError::NotInvertible(self.to_string())),
        }
    }

    /// Virtual rank: the image under `t_i ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Membership in the augmentation ideal `I_T`.
    pub fn in_augmentation_ideal(&self) -> bool {
        self.augmentation().is_zero()
    }
}

pub fn multiply(
    a: &CharacterRingElement,
    b: &CharacterRingElement,
) -> Result<CharacterRingElement, CharacterError> {
    a.multiply(b)
}

pub fn augmentation(a: &CharacterRingElement) -> BigInt {
    a.augmentation()
}

/// Variable name `base` for rank 1, `base1 … baser` otherwise.
pub(crate) fn variable_name(base: char, rank: usize, i: usize) -> String {
    if rank == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

/// Writes `Σ c · m` where each monomial is a list of `(variable, exponent)`.
pub(crate) fn write_signed_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Vec<(String, i64)>, &'a BigInt)>,
) -> Result<bool, fmt::Error> {
    let mut first = true;
    for (factors, c) in terms {
        let magnitude = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let monomial: Vec<String> = factors
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if e == 1 { v } else { format!("{v}^{e}") })
            .collect();
        match (monomial.is_empty(), magnitude.is_one()) {
            (true, _) => write!(f, "{magnitude}")?,
            (false, true) => f.write_str(&monomial.join("*"))?,
            (false, false) => write!(f, "{magnitude}*{}", monomial.join("*"))?,
        }
    }
    Ok(!first)
}

impl fmt::Display for CharacterRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.rank;
        let wrote = write_signed_terms(
            f,
            self.terms.iter().map(|(e, c)| {
                let factors = e
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| (variable_name('t', rank, i), x))
                    .collect();
                (factors, c)
            }),
        )?;
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson<E> {
    pub exp: E,
    pub coef: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<TermJson<Vec<i64>>>,
}

impl Serialize for CharacterRingElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl CharacterRingElement {
    /// Reads the `{"terms": [{"exp": [..], "coef": ".."}]}` form.
    pub fn from_json(rank: usize, text: &str) -> Result<Self, CharacterError> {
        let bad = |reason: String| CharacterError::ParseError {
            input: text.to_string(),
            position: 0,
            reason,
        };
        let raw: LaurentJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let mut out = CharacterRingElement::zero(rank);
        for t in raw.terms {
            if t.exp.len() != rank {
                return Err(CharacterError::RankMismatch {
                    left: rank,
                    right: t.exp.len(),
                });
            }
            let c: BigInt = t.coef.parse().map_err(|_| bad(format!("bad coefficient {:?}", t.coef)))?;
            out.add_term(t.exp, c);
        }
        Ok(out)
    }
}

/// Free `R(T)`-module with the given basis and no relations.
pub fn free_module_presentation(basis: Vec<BasisElement>, torus_rank: usize) -> ModulePresentation {
    ModulePresentation::free(representation_ring_descriptor(torus_rank), basis)
}

pub fn representation_ring_descriptor(torus_rank: usize) -> String {
    if torus_rank == 0 {
        return "R(T) = Z".to_string();
    }
    let vars: Vec<String> = (0..torus_rank)
        .map(|i| format!("{}^±1", variable_name('t', torus_rank, i)))
        .collect();
    format!("R(T) = Z[{}]", vars.join(", "))
}
