use super::{ElementId, WeylElement, WeylGroup};

impl WeylGroup {
    /// Bruhat order `u ≤ w`.
    ///
    /// Scans the canonical reduced word of `w` from the left; whenever the
    /// current letter is a left descent of `u`, it is stripped from `u`. Then
    /// `u ≤ w` iff `u` is reduced to the identity, i.e. a reduced word of `u`
    /// occurs as a subword of the word of `w`.
    pub fn bruhat_leq(&self, u: ElementId, w: ElementId) -> bool {
        if self.length(u) > self.length(w) {
            return false;
        }
        let mut current = u;
        for &letter in self.element(w).word() {
            if self.length(current) == 0 {
                break;
            }
            let stripped = self.left_multiply_simple(usize::from(letter), current);
            if self.length(stripped) < self.length(current) {
                current = stripped;
            }
        }
        current == self.identity()
    }

    /// [`bruhat_leq`](Self::bruhat_leq) on elements of this group.
    pub fn bruhat_leq_elements(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let u = self.id_of(u).expect("u belongs to this group");
        let w = self.id_of(w).expect("w belongs to this group");
        self.bruhat_leq(u, w)
    }

    /// Elements covered by `w` in Bruhat order: `u ≤ w` with `l(u) = l(w) - 1`.
    pub fn bruhat_lower_covers(&self, w: ElementId) -> Vec<ElementId> {
        let target = self.length(w);
        if target == 0 {
            return Vec::new();
        }
        self.ids()
            .filter(|&u| self.length(u) + 1 == target && self.bruhat_leq(u, w))
            .collect()
    }
}
