//! Strict linear schemes and the splitting of their localization sequences.
//!
//! A scheme enters only through its filtration `X_0 ⊂ X_1 ⊂ …`: level `n`
//! records the ranks of the vector bundles making up `U_n = X_n \ X_{n-1}`.
//! For a proper scheme the motive of the quotient is assembled level by
//! level; each step adds `⊕ 1⟨i⟩` over the new ranks once every connecting
//! map `1⟨i_n⟩ → 1⟨i_k⟩[1]` has been certified to vanish.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{PoincareSeries, QPolynomial};
use crate::root_data::RootDatum;
use crate::root_system::RootSystem;
use crate::tate::{vanishing_guard, MotiveError, TateMotive, TwistPolynomial};
use crate::weyl::{WeylError, WeylGroup, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("scheme {label:?} is not proper over the base; compactly supported and plain motives need not agree")]
    NotProper { label: String },
    #[error(
        "splitting not certified at level {level}: rank {previous} from an earlier level is not below rank {current}"
    )]
    SplittingNotCertified {
        level: usize,
        previous: u32,
        current: u32,
    },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
}

impl AssemblyError {
    pub fn name(&self) -> &'static str {
        match self {
            AssemblyError::NotProper { .. } => "NotProper",
            AssemblyError::SplittingNotCertified { .. } => "SplittingNotCertified",
            AssemblyError::Weyl(e) => e.name(),
            AssemblyError::Motive(e) => e.name(),
        }
    }
}

/// Multiset of vector bundle ranks occurring in one level of the filtration.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StratumDescriptor {
    ranks: Vec<u32>,
}

impl StratumDescriptor {
    pub fn new(mut ranks: Vec<u32>) -> Self {
        ranks.sort_unstable();
        StratumDescriptor { ranks }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.ranks.iter().copied().min()
    }

    pub fn max(&self) -> Option<u32> {
        self.ranks.iter().copied().max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictLinearScheme {
    pub proper: bool,
    pub levels: Vec<StratumDescriptor>,
    #[serde(default)]
    pub label: String,
}

impl StrictLinearScheme {
    pub fn new(levels: Vec<Vec<u32>>, proper: bool, label: impl Into<String>) -> Self {
        StrictLinearScheme {
            proper,
            levels: levels.into_iter().map(StratumDescriptor::new).collect(),
            label: label.into(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let raw: StrictLinearScheme = serde_json::from_str(text)?;
        // normalize rank order inside each level
        Ok(StrictLinearScheme {
            levels: raw.levels.into_iter().map(|l| StratumDescriptor::new(l.ranks)).collect(),
            ..raw
        })
    }

    /// Total number of strata counted with multiplicity.
    pub fn stratum_count(&self) -> usize {
        self.levels.iter().map(|l| l.ranks.len()).sum()
    }

    /// First consecutive pair of nonempty levels with `max(prev) ≥ min(cur)`,
    /// as `(level index, max(prev), min(cur))`.
    pub fn strictness_violation(&self) -> Option<(usize, u32, u32)> {
        let mut previous_max: Option<u32> = None;
        for (n, level) in self.levels.iter().enumerate() {
            let (Some(lo), Some(hi)) = (level.min(), level.max()) else {
                continue;
            };
            if let Some(prev) = previous_max {
                if prev >= lo {
                    return Some((n, prev, lo));
                }
            }
            previous_max = Some(hi);
        }
        None
    }
}

pub fn check_strictness(scheme: &StrictLinearScheme) -> bool {
    scheme.strictness_violation().is_none()
}

/// How the splitting of every localization sequence was justified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingRoute {
    /// Strictness plus vanishing of `Hom(1⟨n⟩[-1], 1)` for `n ≥ 0`.
    Strict,
    /// Caller asserted `Hom(1⟨n⟩[-1], 1) = 0` for all `n`.
    VanishingWaiver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub motive: TateMotive,
    pub route: SplittingRoute,
    /// Distinct `(earlier twist, new twist)` pairs passed through the vanishing guard.
    pub certified_pairs: usize,
}

pub fn assemble_motive(scheme: &StrictLinearScheme, base_label: &str) -> Result<Assembly, AssemblyError> {
    require_proper(scheme)?;
    if let Some((level, previous, current)) = scheme.strictness_violation() {
        return Err(AssemblyError::SplittingNotCertified {
            level,
            previous,
            current,
        });
    }
    fold_levels(scheme, base_label, SplittingRoute::Strict)
}

pub fn assemble_with_vanishing_waiver(
    scheme: &StrictLinearScheme,
    base_label: &str,
) -> Result<Assembly, AssemblyError> {
    require_proper(scheme)?;
    fold_levels(scheme, base_label, SplittingRoute::VanishingWaiver)
}

fn require_proper(scheme: &StrictLinearScheme) -> Result<(), AssemblyError> {
    if scheme.proper {
        Ok(())
    } else {
        Err(AssemblyError::NotProper {
            label: scheme.label.clone(),
        })
    }
}

fn fold_levels(
    scheme: &StrictLinearScheme,
    base_label: &str,
    route: SplittingRoute,
) -> Result<Assembly, AssemblyError> {
    let mut motive = TateMotive::zero(base_label);
    let mut earlier: BTreeSet<u32> = BTreeSet::new();
    let mut certified_pairs = 0;
    for (n, level) in scheme.levels.iter().enumerate() {
        let fresh: BTreeSet<u32> = level.ranks.iter().copied().collect();
        if route == SplittingRoute::Strict {
            // δ: M^c(U_n) → M(X_{n-1})[1] has components in
            // Hom(1, 1⟨i_k - i_n⟩[1]) = Hom(1⟨i_n - i_k⟩[-1], 1)
            for &i_k in &earlier {
                for &i_n in &fresh {
                    if !vanishing_guard(i64::from(i_n) - i64::from(i_k), -1) {
                        return Err(AssemblyError::SplittingNotCertified {
                            level: n,
                            previous: i_k,
                            current: i_n,
                        });
                    }
                    certified_pairs += 1;
                }
            }
        }
        let stratum = TateMotive::twists(base_label, level.ranks.iter().map(|&r| i64::from(r)));
        motive = motive.direct_sum(&stratum)?;
        earlier.extend(fresh);
    }
    Ok(Assembly {
        motive,
        route,
        certified_pairs,
    })
}

/// `G/B` with the filtration by `X_n = ⋃_{l(w) ≤ n} C_w`, so that level `n`
/// consists of `#{w : l(w) = n}` affine cells of rank `n`.
#[derive(Debug, Clone)]
pub struct FlagVarietyModel {
    pub datum: RootDatum,
    pub weyl: WeylGroup,
    pub filtration: StrictLinearScheme,
}

/// Base label of the equivariant flag motive.
pub const FLAG_BASE: &str = "BT";

impl FlagVarietyModel {
    pub fn new(datum: &RootDatum) -> Result<Self, AssemblyError> {
        Self::with_budget(datum, DEFAULT_BUDGET)
    }

    pub fn with_budget(datum: &RootDatum, budget: usize) -> Result<Self, AssemblyError> {
        let weyl = WeylGroup::generate(&RootSystem::generate(datum), budget)?;
        Ok(Self::from_group(datum, weyl))
    }

    pub fn from_group(datum: &RootDatum, weyl: WeylGroup) -> Self {
        let levels = weyl
            .length_census()
            .into_iter()
            .enumerate()
            .map(|(n, count)| vec![n as u32; count as usize])
            .collect();
        let filtration = StrictLinearScheme::new(levels, true, format!("{}/B", datum.label));
        FlagVarietyModel {
            datum: datum.clone(),
            weyl,
            filtration,
        }
    }

    pub fn motive(&self) -> Result<Assembly, AssemblyError> {
        assemble_motive(&self.filtration, FLAG_BASE)
    }
}

/// `M_BT([T\G/B]) ≃ ⊕_{w ∈ W} 1⟨l(w)⟩`.
pub fn flag_motive(datum: &RootDatum) -> Result<TateMotive, AssemblyError> {
    Ok(FlagVarietyModel::new(datum)?.motive()?.motive)
}

/// The two factors of `M(T\G/B) = M(G/B) ⊗ M(BT)` at the level of
/// generating functions: the twist polynomial of `G/B` and the series
/// `1/(1-q)^r` of `BT`, `r` the torus rank.
pub fn kunneth_factorization(
    datum: &RootDatum,
    precision: usize,
) -> Result<(TwistPolynomial, PoincareSeries), AssemblyError> {
    let motive = flag_motive(datum)?;
    Ok((motive.twist_polynomial()?, PoincareSeries::of_torus(datum.torus_rank, precision)))
}

/// Product of the two Künneth factors, truncated at the series precision.
pub fn kunneth_product(factors: &(TwistPolynomial, PoincareSeries)) -> QPolynomial {
    factors.1.times(factors.0.as_poly())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::root_data::parse_root_datum;

    fn scheme(levels: Vec<Vec<u32>>) -> StrictLinearScheme {
        StrictLinearScheme::new(levels, true, "X")
    }

    #[test]
    fn strictness_examples() {
        assert!(check_strictness(&scheme(vec![vec![0], vec![1], vec![2], vec![3]])));
        assert!(check_strictness(&scheme(vec![vec![0], vec![1, 1], vec![2, 2], vec![3]])));
        assert!(!check_strictness(&scheme(vec![vec![2], vec![1]])));
        assert!(!check_strictness(&scheme(vec![vec![1], vec![1]])));
        // empty levels are skipped
        assert!(check_strictness(&scheme(vec![vec![0], vec![], vec![1]])));
        assert!(check_strictness(&scheme(vec![])));
    }

    #[test]
    fn a1_flag_filtration() {
        let a = assemble_motive(&scheme(vec![vec![0], vec![1]]), "BT").unwrap();
        assert_eq!(a.motive, TateMotive::twists("BT", [0, 1]));
        assert_eq!(a.route, SplittingRoute::Strict);
        assert_eq!(a.certified_pairs, 1);
    }

    #[test]
    fn empty_filtration_gives_zero() {
        let a = assemble_motive(&scheme(vec![]), "BT").unwrap();
        assert!(a.motive.is_zero());
    }

    #[test]
    fn strictness_gate() {
        let x = scheme(vec![vec![2], vec![1]]);
        let err = assemble_motive(&x, "BT").unwrap_err();
        assert_eq!(
            err,
            AssemblyError::SplittingNotCertified {
                level: 1,
                previous: 2,
                current: 1
            }
        );
        let a = assemble_with_vanishing_waiver(&x, "BT").unwrap();
        assert_eq!(a.motive, TateMotive::twists("BT", [2, 1]));
        assert_eq!(a.route, SplittingRoute::VanishingWaiver);
        assert_eq!(a.certified_pairs, 0);
    }

    #[test]
    fn waiver_is_a_multiset_union() {
        let a = assemble_with_vanishing_waiver(&scheme(vec![vec![0, 5], vec![1]]), "BT").unwrap();
        assert_eq!(a.motive, TateMotive::twists("BT", [0, 5, 1]));
    }

    #[test]
    fn improper_schemes_are_rejected() {
        let x = StrictLinearScheme::new(vec![vec![0]], false, "A1");
        assert_eq!(assemble_motive(&x, "S").unwrap_err().name(), "NotProper");
        assert_eq!(assemble_with_vanishing_waiver(&x, "S").unwrap_err().name(), "NotProper");
    }

    #[test]
    fn a2_flag() {
        let m = flag_motive(&parse_root_datum("A2").unwrap()).unwrap();
        assert_eq!(m, TateMotive::twists("BT", [0, 1, 1, 2, 2, 3]));
        let x = scheme(vec![vec![0], vec![1, 1], vec![2, 2], vec![3]]);
        assert_eq!(
            assemble_motive(&x, "BT").unwrap().motive,
            assemble_with_vanishing_waiver(&x, "BT").unwrap().motive
        );
    }

    #[test]
    fn small_flags() {
        let m = flag_motive(&parse_root_datum("A1").unwrap()).unwrap();
        assert_eq!(m, TateMotive::twists("BT", [0, 1]));
        let m = flag_motive(&parse_root_datum("T1").unwrap()).unwrap();
        assert_eq!(m, TateMotive::unit("BT"));
        let m = flag_motive(&parse_root_datum("B2").unwrap()).unwrap();
        assert_eq!(m.twist_polynomial().unwrap().to_string(), "1 + 2q + 2q^2 + 2q^3 + q^4");
    }

    #[test]
    fn flag_filtrations_are_strict_and_count_w() {
        for spec in ["A3", "B3", "G2", "A1xA1xT2", "D4"] {
            let model = FlagVarietyModel::new(&parse_root_datum(spec).unwrap()).unwrap();
            assert!(check_strictness(&model.filtration), "{spec}");
            assert!(model.filtration.proper);
            assert_eq!(model.filtration.stratum_count(), model.weyl.order());
            for (n, level) in model.filtration.levels.iter().enumerate() {
                assert!(level.ranks().iter().all(|&r| r as usize == n));
            }
            let m = model.motive().unwrap().motive;
            assert!(m.twist_polynomial().unwrap().as_poly().is_palindromic(), "{spec}");
        }
    }

    #[test]
    fn kunneth_examples() {
        let f = kunneth_factorization(&parse_root_datum("A1").unwrap(), 4).unwrap();
        assert_eq!(f.0.to_string(), "1 + q");
        assert_eq!(f.1.to_string(), "1 + q + q^2 + q^3 + q^4 + O(q^5)");
        assert_eq!(kunneth_product(&f).to_string(), "1 + 2q + 2q^2 + 2q^3 + 2q^4");

        let f = kunneth_factorization(&parse_root_datum("T1").unwrap(), 4).unwrap();
        assert_eq!(f.0.to_string(), "1");
        assert_eq!(f.1.closed_form(), Some("(1)/(1-q)"));

        let f = kunneth_factorization(&parse_root_datum("A1xA1").unwrap(), 3).unwrap();
        assert_eq!(f.0.to_string(), "1 + 2q + q^2");
        // 1/(1-q)^2 = Σ (d+1) q^d
        assert_eq!(f.1.to_string(), "1 + 2q + 3q^2 + 4q^3 + O(q^4)");
    }

    #[test]
    fn json_filtration() {
        let x = StrictLinearScheme::from_json(r#"{"proper": true, "levels": [[0], [1, 1]], "label": "demo"}"#)
            .unwrap();
        assert_eq!(x.levels.len(), 2);
        assert_eq!(x.label, "demo");
        let x = StrictLinearScheme::from_json(r#"{"proper": false, "levels": []}"#).unwrap();
        assert_eq!(x.label, "");
    }

    proptest! {
        /// Regrouping a strict filtration into coarser strict levels leaves the motive unchanged.
        #[test]
        fn grouping_independent(ranks in prop::collection::vec(0u32..12, 0..10)) {
            let mut sorted = ranks.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let fine: Vec<Vec<u32>> = sorted.iter().map(|&r| vec![r; 2]).collect();
            let coarse: Vec<Vec<u32>> = sorted.chunks(3).map(|c| c.iter().flat_map(|&r| [r, r]).collect()).collect();
            let fine = scheme(fine);
            let coarse = scheme(coarse);
            prop_assert!(check_strictness(&fine));
            let a = assemble_motive(&fine, "BT").unwrap().motive;
            prop_assert_eq!(a.rank() as usize, fine.stratum_count());
            // coarse chunks may violate strictness only if a chunk contains repeats, which dedup rules out
            prop_assert!(check_strictness(&coarse));
            prop_assert_eq!(&assemble_motive(&coarse, "BT").unwrap().motive, &a);
            prop_assert_eq!(&assemble_with_vanishing_waiver(&fine, "BT").unwrap().motive, &a);
        }
    }
}
