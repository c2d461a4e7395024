use std::fmt;

use serde::Serialize;

/// A labeled generator with its degree (cell dimension / twist).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        BasisElement {
            label: label.into(),
            degree,
        }
    }
}

/// A module given by generators and relations over a named coefficient ring.
///
/// `tensor_factor`, when present, is a symbolic factor `F` such that the
/// module is `F ⊗ (free module on basis)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulePresentation {
    pub coefficient_ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_factor: Option<String>,
    pub basis: Vec<BasisElement>,
    pub relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading_note: Option<String>,
}

impl ModulePresentation {
    pub fn free(coefficient_ring: impl Into<String>, basis: Vec<BasisElement>) -> Self {
        ModulePresentation {
            coefficient_ring: coefficient_ring.into(),
            tensor_factor: None,
            basis,
            relations: Vec::new(),
            grading_note: None,
        }
    }

    pub fn with_tensor_factor(mut self, factor: impl Into<String>) -> Self {
        self.tensor_factor = Some(factor.into());
        self
    }

    pub fn with_grading_note(mut self, note: impl Into<String>) -> Self {
        self.grading_note = Some(note.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Ranks of `Tor_p(M, N)` for `p = 1..=max_p`, over the coefficient ring,
    /// against any module `N`. A free module is its own resolution, so all of
    /// them vanish; for modules with relations nothing is computed.
    pub fn higher_tor_ranks(&self, max_p: usize) -> Option<Vec<usize>> {
        self.is_free().then(|| vec![0; max_p])
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(factor) = &self.tensor_factor {
            write!(f, "{factor} ⊗ ")?;
        }
        if self.basis.is_empty() {
            return f.write_str("0");
        }
        write!(f, "({})^{}", self.coefficient_ring, self.rank())?;
        if !self.relations.is_empty() {
            write!(f, " / ({})", self.relations.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_modules_have_vanishing_tor() {
        let p = ModulePresentation::free("R", vec![BasisElement::new("a", 0)]);
        assert_eq!(p.higher_tor_ranks(3), Some(vec![0, 0, 0]));
        let mut q = p.clone();
        q.relations.push("2a".into());
        assert_eq!(q.higher_tor_ranks(3), None);
        assert_eq!(p.to_string(), "(R)^1");
        assert_eq!(ModulePresentation::free("R", vec![]).to_string(), "0");
    }
}
