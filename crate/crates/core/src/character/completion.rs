//! `I_T`-adic completion of `R(T)`.
//!
//! With `x_i = 1 - t_i` the augmentation ideal is `(x_1, …, x_r)` and the
//! completion is `ℤ[[x_1, …, x_r]]`. Elements are kept modulo total degree
//! `precision + 1`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{variable_name, write_signed_terms, CharacterError, CharacterRingElement, TermJson};

pub const DEFAULT_PRECISION: usize = 10;

/// Exponents of `x_1, …, x_r`.
pub type Monomial = Vec<u32>;

pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Power series in `x_1, …, x_r` modulo total degree `precision + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    nvars: usize,
    precision: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Integral completion `ℤ[[x]]` truncated.
pub type CompletedElement = TruncatedSeries<BigInt>;

fn degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(nvars: usize, precision: usize) -> Self {
        TruncatedSeries {
            nvars,
            precision,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, precision: usize, c: C) -> Self {
        let mut s = Self::zero(nvars, precision);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, precision: usize) -> Self {
        Self::constant(nvars, precision, C::one())
    }

    /// `x_i` (0-based).
    pub fn variable(nvars: usize, precision: usize, i: usize) -> Self {
        let mut s = Self::zero(nvars, precision);
        let mut m = vec![0; nvars];
        m[i] = 1;
        s.add_term(m, C::one());
        s
    }

    pub fn from_terms(nvars: usize, precision: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut s = Self::zero(nvars, precision);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            s.add_term(m, c);
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() || degree(&m) > self.precision {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops terms of degree above `precision` (never raises precision).
    pub fn truncate(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        TruncatedSeries {
            nvars: self.nvars,
            precision,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(m) <= precision)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<usize, CharacterError> {
        if self.nvars != other.nvars {
            return Err(CharacterError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(self.precision.min(other.precision))
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        let precision = self.check(other)?;
        let mut out = self.truncate(precision);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            nvars: self.nvars,
            precision: self.precision,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.add(&other.neg())
    }

    /// Product modulo total degree `min(precisions) + 1`.
    pub fn multiply(&self, other: &Self) -> Result<Self, CharacterError> {
        let precision = self.check(other)?;
        let mut out = Self::zero(self.nvars, precision);
        for (ma, ca) in &self.terms {
            let da = degree(ma);
            if da > precision {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + degree(mb) > precision {
                    continue;
                }
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::from_terms(
            self.nvars,
            self.precision,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Terms ordered by total degree, then `x_1` before `x_2`.
    fn display_order(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }
}

impl TruncatedSeries<BigInt> {
    pub fn to_rational(&self) -> TruncatedSeries<BigRational> {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }
}

impl fmt::Display for TruncatedSeries<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self.nvars;
        let wrote = write_signed_terms(
            f,
            self.display_order().into_iter().map(|(m, c)| {
                let factors = m
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (variable_name('x', nvars, i), i64::from(e)))
                    .collect();
                (factors, c)
            }),
        )?;
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(deg {})", self.precision + 1)
    }
}

impl fmt::Display for TruncatedSeries<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .display_order()
            .into_iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let v = variable_name('x', self.nvars, i);
                        if e == 1 { v } else { format!("{v}^{e}") }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "{body} + O(deg {})", self.precision + 1)
    }
}

impl<C: Coefficient> Serialize for TruncatedSeries<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct SeriesJson {
            terms: Vec<TermJson<Monomial>>,
            precision: usize,
        }
        SeriesJson {
            terms: self
                .display_order()
                .into_iter()
                .map(|(m, c)| TermJson {
                    exp: m.clone(),
                    coef: c.to_string(),
                })
                .collect(),
            precision: self.precision,
        }
        .serialize(serializer)
    }
}

/// Expansion of `(1 - x)^e` modulo `x^{precision + 1}`: a finite binomial
/// sum for `e ≥ 0`, and `Σ_k binom(m + k - 1, k) x^k` for `e = -m < 0`.
fn one_minus_x_power(e: i64, precision: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(precision + 1);
    let mut c = BigInt::one();
    if e >= 0 {
        let e_big = BigInt::from(e);
        for k in 0..=precision.min(e as usize) {
            out.push(if k % 2 == 0 { c.clone() } else { -c.clone() });
            // binom(e, k+1) = binom(e, k) (e - k) / (k + 1)
            c = c * (&e_big - k) / (k + 1);
        }
    } else {
        let m = BigInt::from(-e);
        for k in 0..=precision {
            out.push(c.clone());
            // binom(m + k, k + 1) = binom(m + k - 1, k) (m + k) / (k + 1)
            c = c * (&m + k) / (k + 1);
        }
    }
    out
}

/// Image of `a` in the completion, via `t_i = 1 - x_i`.
pub fn complete(a: &CharacterRingElement, precision: usize) -> CompletedElement {
    let r = a.rank();
    let mut acc = CompletedElement::zero(r, precision);
    for (lambda, c) in a.terms() {
        let mut term = CompletedElement::constant(r, precision, c.clone());
        for (i, &e) in lambda.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = CompletedElement::from_terms(
                r,
                precision,
                one_minus_x_power(e, precision).into_iter().enumerate().map(|(k, coeff)| {
                    let mut m = vec![0u32; r];
                    m[i] = k as u32;
                    (m, coeff)
                }),
            );
            term = term.multiply(&factor).expect("same rank");
        }
        acc = acc.add(&term).expect("same rank");
    }
    acc
}
