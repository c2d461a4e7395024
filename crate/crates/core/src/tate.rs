//! Finite direct sums of Tate twists `1⟨n⟩[m]` over a fixed base.
//!
//! `⟨n⟩` stands for `(n)[2n]`; a summand `1⟨n⟩[m]` is stored as the pair
//! `(n, m)` with a multiplicity. Motives coming out of the assembler are
//! pure, i.e. every shift is zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("cannot combine motives over different bases {left:?} and {right:?}")]
    BaseMismatch { left: String, right: String },
    #[error("summand 1<{twist}>[{shift}] carries a nonzero shift")]
    ShiftPresent { twist: i64, shift: i64 },
    #[error("summand 1<{twist}> has a negative twist")]
    NegativeTwist { twist: i64 },
    #[error("multiplicity overflow")]
    MultiplicityOverflow,
}

impl MotiveError {
    pub fn name(&self) -> &'static str {
        match self {
            MotiveError::BaseMismatch { .. } => "BaseMismatch",
            MotiveError::ShiftPresent { .. } => "ShiftPresent",
            MotiveError::NegativeTwist { .. } => "NegativeTwist",
            MotiveError::MultiplicityOverflow => "MultiplicityOverflow",
        }
    }
}

/// A single summand `1⟨twist⟩[shift]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Twist {
    pub twist: i64,
    pub shift: i64,
}

impl Twist {
    pub fn pure(twist: i64) -> Self {
        Twist { twist, shift: 0 }
    }

    /// Rewrites `⟨n⟩[m]` as the plain Tate twist `(n)` with shift `2n + m`.
    pub fn as_tate_shift(&self) -> (i64, i64) {
        (self.twist, 2 * self.twist + self.shift)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateMotive {
    base: String,
    summands: BTreeMap<Twist, u64>,
}

impl TateMotive {
    /// The zero motive over `base`.
    pub fn zero(base: impl Into<String>) -> Self {
        TateMotive {
            base: base.into(),
            summands: BTreeMap::new(),
        }
    }

    /// The unit `1⟨0⟩`.
    pub fn unit(base: impl Into<String>) -> Self {
        TateMotive::twists(base, [0])
    }

    /// `⊕ 1⟨n⟩` over the given twists, with repetition.
    pub fn twists(base: impl Into<String>, twists: impl IntoIterator<Item = i64>) -> Self {
        let mut m = TateMotive::zero(base);
        for t in twists {
            m.add_summand(Twist::pure(t), 1);
        }
        m
    }

    pub fn add_summand(&mut self, twist: Twist, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.summands.entry(twist).or_default() += mult;
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn summands(&self) -> impl Iterator<Item = (Twist, u64)> + '_ {
        self.summands.iter().map(|(t, m)| (*t, *m))
    }

    pub fn multiplicity(&self, twist: Twist) -> u64 {
        self.summands.get(&twist).copied().unwrap_or(0)
    }

    /// Total number of summands counted with multiplicity.
    pub fn rank(&self) -> u64 {
        self.summands.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_shift_free(&self) -> bool {
        self.summands.keys().all(|t| t.shift == 0)
    }

    /// Twists listed with multiplicity, in increasing order.
    pub fn twist_multiset(&self) -> Vec<Twist> {
        self.summands
            .iter()
            .flat_map(|(t, &m)| std::iter::repeat_n(*t, m as usize))
            .collect()
    }

    fn check_base(&self, other: &TateMotive) -> Result<(), MotiveError> {
        if self.base != other.base {
            return Err(MotiveError::BaseMismatch {
                left: self.base.clone(),
                right: other.base.clone(),
            });
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &TateMotive) -> Result<TateMotive, MotiveError> {
        self.check_base(other)?;
        let mut out = self.clone();
        for (t, m) in other.summands() {
            let slot = out.summands.entry(t).or_default();
            *slot = slot.checked_add(m).ok_or(MotiveError::MultiplicityOverflow)?;
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &TateMotive) -> Result<TateMotive, MotiveError> {
        self.check_base(other)?;
        let mut out = TateMotive::zero(self.base.clone());
        for (a, ma) in self.summands() {
            for (b, mb) in other.summands() {
                let t = Twist {
                    twist: a.twist + b.twist,
                    shift: a.shift + b.shift,
                };
                let m = ma.checked_mul(mb).ok_or(MotiveError::MultiplicityOverflow)?;
                let slot = out.summands.entry(t).or_default();
                *slot = slot.checked_add(m).ok_or(MotiveError::MultiplicityOverflow)?;
            }
        }
        Ok(out)
    }

    /// `Σ mult · q^twist`; requires a shift-free motive with nonnegative twists.
    pub fn twist_polynomial(&self) -> Result<TwistPolynomial, MotiveError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (t, m) in self.summands() {
            if t.shift != 0 {
                return Err(MotiveError::ShiftPresent {
                    twist: t.twist,
                    shift: t.shift,
                });
            }
            let d = usize::try_from(t.twist).map_err(|_| MotiveError::NegativeTwist { twist: t.twist })?;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::default());
            }
            coeffs[d] += m;
        }
        Ok(TwistPolynomial(QPolynomial::from_coeffs(coeffs)))
    }

    /// Inverse of [`twist_polynomial`](Self::twist_polynomial).
    pub fn from_twist_polynomial(base: impl Into<String>, poly: &TwistPolynomial) -> Result<Self, MotiveError> {
        let mut m = TateMotive::zero(base);
        for (d, c) in poly.0.coefficients().iter().enumerate() {
            let mult = u64::try_from(c).map_err(|_| MotiveError::MultiplicityOverflow)?;
            m.add_summand(Twist::pure(d as i64), mult);
        }
        Ok(m)
    }
}

impl fmt::Display for TateMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (over {})", self.base);
        }
        let parts: Vec<String> = self
            .summands()
            .map(|(t, m)| {
                let mut s = format!("1<{}>", t.twist);
                if t.shift != 0 {
                    s.push_str(&format!("[{}]", t.shift));
                }
                if m > 1 {
                    s.push_str(&format!("^{m}"));
                }
                s
            })
            .collect();
        write!(f, "{} (over {})", parts.join(" + "), self.base)
    }
}

#[derive(Serialize, Deserialize)]
struct MotiveJson {
    base: String,
    summands: Vec<SummandJson>,
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    twist: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    shift: i64,
    mult: u64,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

impl Serialize for TateMotive {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MotiveJson {
            base: self.base.clone(),
            summands: self
                .summands()
                .map(|(t, mult)| SummandJson {
                    twist: t.twist,
                    shift: t.shift,
                    mult,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TateMotive {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MotiveJson::deserialize(deserializer)?;
        let mut m = TateMotive::zero(raw.base);
        for s in raw.summands {
            m.add_summand(
                Twist {
                    twist: s.twist,
                    shift: s.shift,
                },
                s.mult,
            );
        }
        Ok(m)
    }
}

/// Generating function `Σ rank_i q^i` of a shift-free motive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TwistPolynomial(pub QPolynomial);

impl TwistPolynomial {
    pub fn as_poly(&self) -> &QPolynomial {
        &self.0
    }
}

impl From<crate::weyl::PoincarePolynomial> for TwistPolynomial {
    fn from(p: crate::weyl::PoincarePolynomial) -> Self {
        TwistPolynomial(p.0)
    }
}

impl fmt::Display for TwistPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether `Hom(1⟨n⟩[m], 1)` is known to vanish: exactly when `n ≥ 0`,
/// for every `m`. Outside that range nothing is certified.
pub fn vanishing_guard(n: i64, _m: i64) -> bool {
    n >= 0
}
