//! Brute-force Weyl group enumeration used to cross-check the word-based
//! generator. Keeps no words: matrices only.

use std::collections::BTreeSet;

use crate::matrix::IntMatrix;
use crate::root_system::RootSystem;

use super::WeylError;

pub const ORACLE_MAX_RANK: usize = 4;

/// Closure of the simple reflection matrices under multiplication.
pub fn oracle_weyl_group(roots: &RootSystem) -> Result<BTreeSet<IntMatrix>, WeylError> {
    oracle_weyl_group_with(roots, ORACLE_MAX_RANK, super::DEFAULT_BUDGET)
}

pub fn oracle_weyl_group_with(
    roots: &RootSystem,
    max_rank: usize,
    budget: usize,
) -> Result<BTreeSet<IntMatrix>, WeylError> {
    if roots.rank() > max_rank {
        return Err(WeylError::RankGuard {
            rank: roots.rank(),
            max: max_rank,
        });
    }
    let gens = roots.simple_reflections();
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::from([IntMatrix::identity(roots.rank())]);
    let mut todo: Vec<IntMatrix> = seen.iter().cloned().collect();
    while let Some(m) = todo.pop() {
        for g in gens {
            let p = g.mul(&m);
            if !seen.contains(&p) {
                if seen.len() >= budget {
                    return Err(WeylError::BudgetExceeded { cap: budget });
                }
                seen.insert(p.clone());
                todo.push(p);
            }
        }
    }
    Ok(seen)
}

/// `hist[d] = #{m : inversions(m) = d}`, lengths measured by inversion count.
pub fn oracle_length_histogram(roots: &RootSystem, matrices: &BTreeSet<IntMatrix>) -> Vec<u64> {
    let mut hist: Vec<u64> = Vec::new();
    for m in matrices {
        let l = roots.inversion_count(m);
        if hist.len() <= l {
            hist.resize(l + 1, 0);
        }
        hist[l] += 1;
    }
    hist
}
