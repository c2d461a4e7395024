//! Realizations of the flag motive: homotopy K-theory, equivariant K-groups
//! (integral, rational, and `I_T`-adically completed), and equivariant Chow
//! groups, all as free modules on the Schubert cells.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::assembler::{AssemblyError, FlagVarietyModel};
use crate::character::{complete, representation_ring_descriptor, CharacterRingElement, CompletedElement};
use crate::poly::{closed_form, serialize_big_int, PoincareSeries, QPolynomial};
use crate::presentation::{BasisElement, ModulePresentation};
use crate::root_data::RootDatum;
use crate::tate::{MotiveError, TateMotive};
use crate::weyl::{PoincarePolynomial, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("motive has a shifted summand 1<{twist}>[{shift}]")]
    ShiftPresent { twist: i64, shift: i64 },
    #[error("degree {0} is negative; the K-groups in question are connective")]
    NegativeDegree(i64),
    #[error("series mismatch at degree {degree}: {left} vs {right}")]
    SeriesMismatch {
        degree: usize,
        left: BigInt,
        right: BigInt,
    },
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

impl RealizationError {
    pub fn name(&self) -> &'static str {
        match self {
            RealizationError::ShiftPresent { .. } => "ShiftPresent",
            RealizationError::NegativeDegree(_) => "NegativeDegree",
            RealizationError::SeriesMismatch { .. } => "SeriesMismatch",
            RealizationError::Assembly(e) => e.name(),
        }
    }
}

impl From<MotiveError> for RealizationError {
    fn from(e: MotiveError) -> Self {
        RealizationError::Assembly(AssemblyError::Motive(e))
    }
}

/// `[C_w]` for every `w`, in the group's listing order, graded by `l(w)`.
pub fn schubert_basis(weyl: &WeylGroup) -> Vec<BasisElement> {
    weyl.elements()
        .iter()
        .map(|w| BasisElement::new(format!("[C_{}]", w.word_string()), w.length() as i64))
        .collect()
}

const BOTT_NOTE: &str = "twists collapsed by Bott periodicity";

/// One `KH(base)` summand per Tate summand of `motive`.
pub fn kh_decomposition(motive: &TateMotive) -> Result<ModulePresentation, RealizationError> {
    let mut basis = Vec::new();
    for (t, mult) in motive.summands() {
        if t.shift != 0 {
            return Err(RealizationError::ShiftPresent {
                twist: t.twist,
                shift: t.shift,
            });
        }
        for copy in 1..=mult {
            basis.push(BasisElement::new(format!("1<{}>#{copy}", t.twist), t.twist));
        }
    }
    Ok(ModulePresentation::free(format!("KH({})", motive.base()), basis).with_grading_note(BOTT_NOTE))
}

/// `KH([T\G/B]) ≃ ⊕_w KH(BT)` with Schubert labels; the count is taken from
/// the assembled motive and the labels from the Weyl group.
pub fn kh_flag_decomposition(model: &FlagVarietyModel) -> Result<ModulePresentation, RealizationError> {
    let motive = model.motive()?.motive;
    let generic = kh_decomposition(&motive)?;
    let mut schubert = schubert_basis(&model.weyl);
    debug_assert_eq!(generic.rank(), schubert.len());
    schubert.truncate(generic.rank());
    Ok(ModulePresentation {
        basis: schubert,
        ..generic
    })
}

fn k_coefficient_ring(torus_rank: usize, i: i64) -> String {
    if i == 0 {
        format!("K_0^T(S) = {}", representation_ring_descriptor(torus_rank))
    } else {
        format!("K_{i}^T(S)")
    }
}

/// `K_i^T(G/B) = ⊕_w K_i^T(S)`.
pub fn equivariant_k_groups_of(model: &FlagVarietyModel, i: i64) -> Result<ModulePresentation, RealizationError> {
    if i < 0 {
        return Err(RealizationError::NegativeDegree(i));
    }
    Ok(ModulePresentation::free(
        k_coefficient_ring(model.datum.torus_rank, i),
        schubert_basis(&model.weyl),
    ))
}

pub fn equivariant_k_groups(datum: &RootDatum, i: i64) -> Result<ModulePresentation, RealizationError> {
    if i < 0 {
        return Err(RealizationError::NegativeDegree(i));
    }
    equivariant_k_groups_of(&FlagVarietyModel::new(datum)?, i)
}

/// `K_i^T(G/B)_ℚ ≅ K_i(k)_ℚ ⊗_ℚ R(T)_ℚ^{|W|}` over a base field `k`.
/// The factor `K_i(k)_ℚ` is symbolic; for `i = 0` it is `ℚ` and is dropped.
pub fn rational_ki_presentation_of(
    model: &FlagVarietyModel,
    i: i64,
) -> Result<ModulePresentation, RealizationError> {
    if i < 0 {
        return Err(RealizationError::NegativeDegree(i));
    }
    let p = ModulePresentation::free("R(T)_Q", schubert_basis(&model.weyl))
        .with_grading_note("base is a field k; K_i(k)_Q is not computed");
    Ok(if i == 0 { p } else { p.with_tensor_factor(format!("K_{i}(k)_Q")) })
}

pub fn rational_ki_presentation(datum: &RootDatum, i: i64) -> Result<ModulePresentation, RealizationError> {
    if i < 0 {
        return Err(RealizationError::NegativeDegree(i));
    }
    rational_ki_presentation_of(&FlagVarietyModel::new(datum)?, i)
}

/// The truncated completed ring `ℚ[[x_1..x_r]] / (deg > N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletedRing {
    pub descriptor: String,
    pub variables: Vec<String>,
    pub precision: usize,
    /// `ℚ`-dimension: number of monomials of degree ≤ N, `binom(N + r, r)`.
    #[serde(serialize_with = "serialize_big_int")]
    pub dimension: BigInt,
    /// Images of `t_i` and `t_i^{-1}` under `t_i = 1 - x_i`.
    pub generators: Vec<GeneratorImage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub character: String,
    pub completion: String,
}

impl CompletedRing {
    pub fn new(torus_rank: usize, precision: usize) -> Self {
        let names: Vec<String> = (0..torus_rank)
            .map(|i| crate::character::variable_name('x', torus_rank, i))
            .collect();
        let descriptor = if torus_rank == 0 {
            "Q".to_string()
        } else {
            format!("R(T)_Q^ = Q[[{}]] / (deg > {precision})", names.join(", "))
        };
        let mut generators = Vec::new();
        for i in 0..torus_rank {
            let t = CharacterRingElement::variable(torus_rank, i);
            let t_inv = t.inverse().expect("characters are units");
            for g in [t, t_inv] {
                let image: CompletedElement = complete(&g, precision);
                let image = image.to_rational();
                generators.push(GeneratorImage {
                    character: g.to_string(),
                    completion: image.to_string(),
                });
            }
        }
        CompletedRing {
            descriptor,
            variables: names,
            precision,
            dimension: monomial_count(torus_rank, precision),
            generators,
        }
    }
}

/// `binom(n + r, r)`.
fn monomial_count(r: usize, n: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for k in 1..=r {
        c = c * (n + k) / k;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorTerm {
    pub p: usize,
    pub rank: usize,
}

/// Rank-level comparison of `K_0^T(G/B)_ℚ^∧` with `K_0(G/B)_ℚ ⊗_{K_0(S)_ℚ} K_T(S)_ℚ^∧`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub group: String,
    pub precision: usize,
    /// Completion of the free `R(T)`-module `K_0^T(G/B)`.
    pub left: ModulePresentation,
    /// `K_0(G/B)_ℚ` tensored with the completed coefficient ring.
    pub right: ModulePresentation,
    pub left_rank: usize,
    pub right_rank: usize,
    /// `ℚ`-dimensions of both sides modulo degree > precision.
    #[serde(serialize_with = "serialize_big_int")]
    pub left_truncated_dimension: BigInt,
    #[serde(serialize_with = "serialize_big_int")]
    pub right_truncated_dimension: BigInt,
    /// Higher Tor of `K_0(G/B)_ℚ` over `K_0(S)_ℚ = ℚ`.
    pub tor: Vec<TorTerm>,
    pub ranks_equal: bool,
    pub tor_vanishes: bool,
    pub coefficient_ring: CompletedRing,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.ranks_equal && self.tor_vanishes && self.left_truncated_dimension == self.right_truncated_dimension
    }
}

pub fn completed_k0_identity_of(model: &FlagVarietyModel, precision: usize) -> Result<IdentityReport, RealizationError> {
    let r = model.datum.torus_rank;
    let ring = CompletedRing::new(r, precision);

    // left: complete the free module K_0^T(G/B) = ⊕_w R(T)
    let integral = equivariant_k_groups_of(model, 0)?;
    let left = ModulePresentation::free(ring.descriptor.clone(), integral.basis.clone());

    // right: K_0(G/B)_Q is free over K_0(S)_Q = Q on the cells of the assembled motive
    let motive = model.motive()?.motive;
    let k0_flag = kh_decomposition(&motive)?;
    let k0_flag = ModulePresentation::free("K_0(S)_Q = Q", k0_flag.basis);
    let right = ModulePresentation::free(
        ring.descriptor.clone(),
        k0_flag
            .basis
            .iter()
            .map(|b| BasisElement::new(format!("{} ⊗ 1", b.label), b.degree))
            .collect(),
    )
    .with_tensor_factor("K_0(G/B)_Q");

    let max_p = r.max(1) + 1;
    let tor_ranks = k0_flag.higher_tor_ranks(max_p);
    let tor_vanishes = tor_ranks.as_ref().is_some_and(|v| v.iter().all(|&x| x == 0));
    let tor = tor_ranks
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(k, rank)| TorTerm { p: k + 1, rank })
        .collect();

    let left_rank = left.rank();
    let right_rank = right.rank();
    Ok(IdentityReport {
        group: model.datum.label.clone(),
        precision,
        left_truncated_dimension: BigInt::from(left_rank) * &ring.dimension,
        right_truncated_dimension: BigInt::from(right_rank) * &ring.dimension,
        left,
        right,
        left_rank,
        right_rank,
        tor,
        ranks_equal: left_rank == right_rank,
        tor_vanishes,
        coefficient_ring: ring,
    })
}

pub fn completed_k0_identity(datum: &RootDatum, precision: usize) -> Result<IdentityReport, RealizationError> {
    completed_k0_identity_of(&FlagVarietyModel::new(datum)?, precision)
}

/// `(W(q), W(q)/(1-q)^r)`: Poincaré data of `A*(G/B)` and `A*_T(G/B)`.
///
/// The series is computed as the product of `W(q)` with the expansion of
/// `1/(1-q)^r` and cross-checked against `r`-fold partial summation of `W(q)`.
pub fn chow_poincare_of(
    model: &FlagVarietyModel,
    precision: usize,
) -> Result<(PoincarePolynomial, PoincareSeries), RealizationError> {
    let r = model.datum.torus_rank;
    let w = model.weyl.poincare_polynomial();
    let product = PoincareSeries::of_torus(r, precision).times(w.as_poly());
    let mut summed = w.as_poly().truncate(precision);
    for _ in 0..r {
        summed = summed.divide_by_one_minus_q(precision);
    }
    compare(&product, &summed, precision)?;
    let series = PoincareSeries::new(&product, precision, Some(closed_form(&w.to_string(), r)));
    Ok((w, series))
}

pub fn chow_poincare(datum: &RootDatum, precision: usize) -> Result<(PoincarePolynomial, PoincareSeries), RealizationError> {
    chow_poincare_of(&FlagVarietyModel::new(datum)?, precision)
}

fn compare(a: &QPolynomial, b: &QPolynomial, precision: usize) -> Result<(), RealizationError> {
    for d in 0..=precision {
        if a.coeff(d) != b.coeff(d) {
            return Err(RealizationError::SeriesMismatch {
                degree: d,
                left: a.coeff(d),
                right: b.coeff(d),
            });
        }
    }
    Ok(())
}

/// Rational completion of an element, for display in the completed theory.
pub fn rational_completion(a: &CharacterRingElement, precision: usize) -> crate::character::TruncatedSeries<BigRational> {
    complete(a, precision).to_rational()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theory {
    #[serde(rename = "KH")]
    Kh,
    #[serde(rename = "Ki")]
    Ki,
    #[serde(rename = "K0-completed")]
    K0Completed,
    #[serde(rename = "Chow")]
    Chow,
}

/// Machine-readable report: `{"group", "theory", "rank", "basis", "coefficient_ring", "series"}`
/// plus theory-specific extras.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub group: String,
    pub theory: Theory,
    pub rank: usize,
    pub basis: Vec<BasisElement>,
    pub coefficient_ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_factor: Option<String>,
    pub relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<serde_json::Value>,
}

impl Report {
    pub fn from_presentation(group: &str, theory: Theory, p: &ModulePresentation) -> Self {
        Report {
            group: group.to_string(),
            theory,
            rank: p.rank(),
            basis: p.basis.clone(),
            coefficient_ring: p.coefficient_ring.clone(),
            series: None,
            degree: None,
            tensor_factor: p.tensor_factor.clone(),
            relations: p.relations.clone(),
            note: p.grading_note.clone(),
            identity: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembler::flag_motive;
    use crate::root_data::parse_root_datum;

    fn datum(s: &str) -> RootDatum {
        parse_root_datum(s).unwrap()
    }

    #[test]
    fn kh_examples() {
        let p = kh_decomposition(&flag_motive(&datum("A1")).unwrap()).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.coefficient_ring, "KH(BT)");
        assert_eq!(p.grading_note.as_deref(), Some(BOTT_NOTE));
        assert_eq!(kh_decomposition(&TateMotive::zero("BT")).unwrap().rank(), 0);
        let g2 = FlagVarietyModel::new(&datum("G2")).unwrap();
        assert_eq!(kh_flag_decomposition(&g2).unwrap().rank(), 12);
    }

    #[test]
    fn kh_rejects_shifts() {
        let mut m = TateMotive::zero("BT");
        m.add_summand(crate::tate::Twist { twist: 0, shift: 2 }, 1);
        assert_eq!(kh_decomposition(&m).unwrap_err().name(), "ShiftPresent");
    }

    #[test]
    fn k_groups() {
        let p = equivariant_k_groups(&datum("A1"), 0).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.coefficient_ring, "K_0^T(S) = R(T) = Z[t^±1]");
        let labels: Vec<&str> = p.basis.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["[C_e]", "[C_s1]"]);
        let p = equivariant_k_groups(&datum("A2"), 3).unwrap();
        assert_eq!((p.rank(), p.coefficient_ring.as_str()), (6, "K_3^T(S)"));
        assert_eq!(equivariant_k_groups(&datum("T1"), 7).unwrap().rank(), 1);
        assert_eq!(equivariant_k_groups(&datum("A1"), -1).unwrap_err().name(), "NegativeDegree");
    }

    #[test]
    fn rational_ki() {
        let p = rational_ki_presentation(&datum("A1"), 2).unwrap();
        assert_eq!(p.to_string(), "K_2(k)_Q ⊗ (R(T)_Q)^2");
        let p = rational_ki_presentation(&datum("A1"), 0).unwrap();
        assert_eq!(p.to_string(), "(R(T)_Q)^2");
        assert_eq!(rational_ki_presentation(&datum("B2"), 1).unwrap().rank(), 8);
    }

    #[test]
    fn completed_identity_examples() {
        let r = completed_k0_identity(&datum("A1"), 3).unwrap();
        assert!(r.holds());
        assert_eq!((r.left_rank, r.right_rank), (2, 2));
        assert_eq!(r.coefficient_ring.dimension, BigInt::from(4));
        assert!(r.tor.iter().all(|t| t.rank == 0) && !r.tor.is_empty());
        assert_eq!(
            r.coefficient_ring
                .generators
                .iter()
                .map(|g| (g.character.as_str(), g.completion.as_str()))
                .collect::<Vec<_>>(),
            [
                ("t", "(1) + (-1)*x + O(deg 4)"),
                ("t^-1", "(1) + (1)*x + (1)*x^2 + (1)*x^3 + O(deg 4)"),
            ]
        );

        let r = completed_k0_identity(&datum("T1"), 2).unwrap();
        assert_eq!((r.left_rank, r.right_rank), (1, 1));

        let r = completed_k0_identity(&datum("A2"), 5).unwrap();
        assert_eq!((r.left_rank, r.right_rank), (6, 6));
        // binom(5 + 2, 2) = 21 monomials
        assert_eq!(r.left_truncated_dimension, BigInt::from(6 * 21));
        assert!(r.holds());
    }

    #[test]
    fn chow_examples() {
        let (w, s) = chow_poincare(&datum("A1"), 3).unwrap();
        assert_eq!(w.to_string(), "1 + q");
        assert_eq!(s.to_string(), "1 + 2q + 2q^2 + 2q^3 + O(q^4)");

        let (w, s) = chow_poincare(&datum("T1"), 4).unwrap();
        assert_eq!(w.to_string(), "1");
        assert_eq!(s.to_string(), "1 + q + q^2 + q^3 + q^4 + O(q^5)");

        let (w, s) = chow_poincare(&datum("A2"), 2).unwrap();
        assert_eq!(w.to_string(), "1 + 2q + 2q^2 + q^3");
        assert_eq!(s.to_string(), "1 + 4q + 9q^2 + O(q^3)");
        assert_eq!(s.closed_form(), Some("(1 + 2q + 2q^2 + q^3)/(1-q)^2"));
    }

    #[test]
    fn chow_series_is_nondecreasing() {
        for spec in ["A1", "A2", "B3", "G2", "A1xT2"] {
            let (_, s) = chow_poincare(&datum(spec), 12).unwrap();
            let c = s.coefficients();
            assert!(c.windows(2).all(|w| w[0] <= w[1]), "{spec}");
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(0, 5), BigInt::from(1));
        assert_eq!(monomial_count(1, 5), BigInt::from(6));
        assert_eq!(monomial_count(3, 2), BigInt::from(10));
    }
}
