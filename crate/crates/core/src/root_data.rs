//! Root data: Cartan matrices, named Dynkin types and their parser.
//!
//! A [`RootDatum`] is a finite-type Cartan matrix together with the rank of
//! the character lattice of the maximal torus. Central torus factors are
//! recorded only through `torus_rank`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("syntax error in group spec {spec:?}: {reason}")]
    SyntaxError { spec: String, reason: String },
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidMatrix(String),
    #[error("torus rank {torus_rank} is smaller than the semisimple rank {rank}")]
    InvalidTorusRank { torus_rank: usize, rank: usize },
}

impl RootDataError {
    pub fn name(&self) -> &'static str {
        match self {
            RootDataError::SyntaxError { .. } => "SyntaxError",
            RootDataError::NotFiniteType(_) => "NotFiniteType",
            RootDataError::InvalidMatrix(_) => "InvalidMatrix",
            RootDataError::InvalidTorusRank { .. } => "InvalidTorusRank",
        }
    }
}

/// A validated generalized Cartan matrix of finite type.
///
/// Convention: `entry(i, j) = <alpha_i^vee, alpha_j>`, so that the simple
/// reflection `s_i` acts by `s_i(alpha_j) = alpha_j - entry(i, j) * alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CartanMatrix {
    rows: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates `rows` and returns the matrix.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, RootDataError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(RootDataError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if rows[i][i] != 2 {
                return Err(RootDataError::InvalidMatrix(format!(
                    "diagonal entry ({i},{i}) is {}, expected 2",
                    rows[i][i]
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if rows[i][j] > 0 {
                    return Err(RootDataError::InvalidMatrix(format!(
                        "off-diagonal entry ({i},{j}) = {} is positive",
                        rows[i][j]
                    )));
                }
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(RootDataError::InvalidMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) must vanish together"
                    )));
                }
            }
        }
        let matrix = CartanMatrix { rows };
        matrix.check_finite_type()?;
        Ok(matrix)
    }

    pub fn empty() -> Self {
        CartanMatrix { rows: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let (a, b) = (self.size(), other.size());
        let mut rows = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            rows[i][..a].copy_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            rows[a + i][a..].copy_from_slice(&other.rows[i]);
        }
        CartanMatrix { rows }
    }

    /// Leading principal minors `det(A[0..k, 0..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<BigInt> {
        (1..=self.size()).map(|k| self.principal_minor(k)).collect()
    }

    fn principal_minor(&self, k: usize) -> BigInt {
        let m: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(self.rows[i][j])).collect())
            .collect();
        bareiss_determinant(m)
    }

    /// Symmetrizing weights `d` with `d_i a_ij = d_j a_ji`, if they exist.
    fn symmetrizer(&self) -> Option<Vec<Ratio<i64>>> {
        let n = self.size();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Ratio::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].expect("visited");
                for j in 0..n {
                    if i == j || self.rows[i][j] == 0 {
                        continue;
                    }
                    let want = di * Ratio::new(self.rows[i][j], self.rows[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(dj) if dj != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        d.into_iter().collect()
    }

    fn check_finite_type(&self) -> Result<(), RootDataError> {
        if self.symmetrizer().is_none() {
            return Err(RootDataError::NotFiniteType(
                "matrix is not symmetrizable".into(),
            ));
        }
        for (k, minor) in self.leading_principal_minors().iter().enumerate() {
            if !minor.is_positive() {
                return Err(RootDataError::NotFiniteType(format!(
                    "leading principal minor of order {} is {minor}",
                    k + 1
                )));
            }
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A simple factor of a named type expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub class: char,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(class: char, rank: usize) -> Option<Self> {
        let class = class.to_ascii_uppercase();
        let ok = match class {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        ok.then_some(SimpleType { class, rank })
    }

    /// Standard Cartan matrix (Bourbaki numbering).
    pub fn cartan(&self) -> CartanMatrix {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.class {
            'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
            'D' => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            'E' => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            'F' => (0..3).for_each(|i| link(i, i + 1)),
            'G' => link(0, 1),
            _ => unreachable!("validated in SimpleType::new"),
        }
        match self.class {
            // alpha_n short
            'B' => a[n - 1][n - 2] = -2,
            // alpha_n long
            'C' => a[n - 2][n - 1] = -2,
            'F' => a[2][1] = -2,
            // alpha_1 short
            'G' => a[0][1] = -3,
            _ => {}
        }
        CartanMatrix { rows: a }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class, self.rank)
    }
}

/// Combinatorial stand-in for a split reductive group `G ⊇ B ⊇ T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub cartan: CartanMatrix,
    pub torus_rank: usize,
    pub label: String,
}

impl RootDatum {
    pub fn new(
        cartan: CartanMatrix,
        torus_rank: usize,
        label: impl Into<String>,
    ) -> Result<Self, RootDataError> {
        if torus_rank < cartan.size() {
            return Err(RootDataError::InvalidTorusRank {
                torus_rank,
                rank: cartan.size(),
            });
        }
        Ok(RootDatum {
            cartan,
            torus_rank,
            label: label.into(),
        })
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.cartan.size()
    }

    /// Number of central torus factors.
    pub fn central_rank(&self) -> usize {
        self.torus_rank - self.rank()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitDatum {
    cartan: Vec<Vec<i64>>,
    torus_rank: Option<usize>,
    label: Option<String>,
}

/// Parses a named type expression (`A2`, `B3xG2`, `A1xT1`, `T2`) or a JSON
/// Cartan matrix (bare `[[...]]` or `{"cartan": ..., "torus_rank": .., "label": ..}`).
pub fn parse_root_datum(spec: &str) -> Result<RootDatum, RootDataError> {
    let trimmed = spec.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        parse_json_datum(trimmed)
    } else {
        parse_named_datum(trimmed)
    }
}

fn parse_json_datum(spec: &str) -> Result<RootDatum, RootDataError> {
    let syntax = |reason: String| RootDataError::SyntaxError {
        spec: spec.to_string(),
        reason,
    };
    let explicit: ExplicitDatum = if spec.starts_with('[') {
        let cartan: Vec<Vec<i64>> =
            serde_json::from_str(spec).map_err(|e| syntax(e.to_string()))?;
        ExplicitDatum {
            cartan,
            torus_rank: None,
            label: None,
        }
    } else {
        serde_json::from_str(spec).map_err(|e| syntax(e.to_string()))?
    };
    let label = explicit
        .label
        .unwrap_or_else(|| serde_json::to_string(&explicit.cartan).expect("integers serialize"));
    let cartan = CartanMatrix::new(explicit.cartan)?;
    let torus_rank = explicit.torus_rank.unwrap_or(cartan.size());
    RootDatum::new(cartan, torus_rank, label)
}

fn parse_named_datum(spec: &str) -> Result<RootDatum, RootDataError> {
    let syntax = |reason: &str| RootDataError::SyntaxError {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if spec.is_empty() {
        return Err(syntax("empty spec"));
    }
    let lower = spec.to_ascii_lowercase();
    let tokens: Vec<&str> = lower.split('x').collect();
    let mut factors = Vec::new();
    let mut central: Option<usize> = None;
    for (pos, token) in tokens.iter().enumerate() {
        let mut chars = token.chars();
        let class = chars.next().ok_or_else(|| syntax("empty factor"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(&format!("factor {token:?} must be a letter followed by a rank")));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| syntax(&format!("rank in {token:?} out of range")))?;
        if class == 't' {
            if pos + 1 != tokens.len() {
                return Err(syntax("torus factor must come last"));
            }
            if rank == 0 {
                return Err(syntax("torus factor must have rank at least 1"));
            }
            central = Some(rank);
        } else {
            let factor = SimpleType::new(class, rank)
                .ok_or_else(|| syntax(&format!("unknown Dynkin type {}", token.to_ascii_uppercase())))?;
            factors.push(factor);
        }
    }
    let cartan = factors
        .iter()
        .fold(CartanMatrix::empty(), |acc, t| acc.block_sum(&t.cartan()));
    let mut parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
    if let Some(k) = central {
        parts.push(format!("T{k}"));
    }
    let torus_rank = cartan.size() + central.unwrap_or(0);
    // named types are valid by construction, but run them through validation anyway
    let cartan = CartanMatrix::new(cartan.rows)?;
    RootDatum::new(cartan, torus_rank, parts.join("x"))
}

/// Named types of semisimple rank at most `max_rank`, one per isomorphism class
/// of simple type (`C2` is listed as `B2`, `D3` as `A3`).
pub fn simple_types_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for class in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            if let Some(t) = SimpleType::new(class, rank) {
                out.push(t);
            }
        }
    }
    out
}
