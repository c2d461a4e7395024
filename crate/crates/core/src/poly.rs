//! Univariate integer polynomials and truncated power series in `q`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense polynomial in `q` with arbitrary-precision coefficients.
/// Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0, 1)
    }

    pub fn monomial(degree: usize, coeff: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff.into();
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients of degree ≤ `precision`, zero-padded to length `precision + 1`.
    pub fn padded(&self, precision: usize) -> Vec<BigInt> {
        (0..=precision).map(|d| self.coeff(d)).collect()
    }

    pub fn truncate(&self, precision: usize) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.iter().take(precision + 1).cloned())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `coeff(d) == coeff(deg - d)` for all `d`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Expansion of `1 / (1 - q)^r` up to degree `precision`:
    /// the coefficient of `q^d` is `binom(d + r - 1, r - 1)`.
    pub fn inverse_power_of_one_minus_q(r: usize, precision: usize) -> QPolynomial {
        if r == 0 {
            return QPolynomial::one();
        }
        let mut coeffs = Vec::with_capacity(precision + 1);
        let mut c = BigInt::one();
        for d in 0..=precision {
            coeffs.push(c.clone());
            // binom(d + r, r - 1) = binom(d + r - 1, r - 1) * (d + r) / (d + 1)
            c = c * BigInt::from(d + r) / BigInt::from(d + 1);
        }
        QPolynomial::from_coeffs(coeffs)
    }

    /// Truncated division by `1 - q`, i.e. partial sums of the coefficients.
    pub fn divide_by_one_minus_q(&self, precision: usize) -> QPolynomial {
        let mut acc = BigInt::zero();
        QPolynomial::from_coeffs((0..=precision).map(|d| {
            acc += self.coeff(d);
            acc.clone()
        }))
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..len).map(|d| self.coeff(d) + rhs.coeff(d)))
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let unit = magnitude.is_one();
        match d {
            0 => write!(f, "{magnitude}")?,
            1 if unit => f.write_str("q")?,
            1 => write!(f, "{magnitude}q")?,
            _ if unit => write!(f, "q^{d}")?,
            _ => write!(f, "{magnitude}q^{d}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// Power series in `q` known up to (and including) degree `precision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    #[serde(serialize_with = "serialize_big_ints")]
    coefficients: Vec<BigInt>,
    precision: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
}

impl PoincareSeries {
    pub fn new(poly: &QPolynomial, precision: usize, closed_form: Option<String>) -> Self {
        PoincareSeries {
            coefficients: poly.padded(precision),
            precision,
            closed_form,
        }
    }

    /// Expansion of `1/(1-q)^r`.
    pub fn of_torus(r: usize, precision: usize) -> Self {
        PoincareSeries::new(
            &QPolynomial::inverse_power_of_one_minus_q(r, precision),
            precision,
            Some(closed_form("1", r)),
        )
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coefficients.get(degree).cloned().unwrap_or_default()
    }

    pub fn closed_form(&self) -> Option<&str> {
        self.closed_form.as_deref()
    }

    pub fn as_polynomial(&self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coefficients.iter().cloned())
    }

    /// Product with a polynomial, truncated at this series' precision.
    pub fn times(&self, poly: &QPolynomial) -> QPolynomial {
        (&self.as_polynomial() * poly).truncate(self.precision)
    }
}

pub(crate) fn closed_form(numerator: &str, r: usize) -> String {
    match r {
        0 => numerator.to_string(),
        1 => format!("({numerator})/(1-q)"),
        _ => format!("({numerator})/(1-q)^{r}"),
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coefficients)?;
        write!(f, " + O(q^{})", self.precision + 1)
    }
}

pub(crate) fn serialize_big_int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn serialize_big_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}
