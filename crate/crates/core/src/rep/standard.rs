//! Slices `Δ_n(t)` with basis the injections `[n] -> [t]`.

use std::sync::Arc;

use crate::category::{compose_images, hom_set, CategoryId, HomKind, HomSet, Morphism};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::{Element, Rational};

/// `|C⁺(n,t)|`.
pub fn standard_dim(category: CategoryId, n: usize, t: usize) -> usize {
    hom_set(category, n, t, HomKind::Injective).len()
}

/// `Δ_n(t)` together with its basis.
#[derive(Clone, Debug)]
pub struct StandardModuleSlice {
    pub category: CategoryId,
    pub n: usize,
    pub t: usize,
    pub basis: Arc<HomSet>,
}

impl StandardModuleSlice {
    pub fn new(category: CategoryId, n: usize, t: usize) -> Self {
        StandardModuleSlice { category, n, t, basis: hom_set(category, n, t, HomKind::Injective) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `g: [t] -> [t']` acting by post-composition, columns indexed by this slice.
    pub fn action_matrix(&self, g: &Morphism) -> SparseMatrix<Rational> {
        let target = StandardModuleSlice::new(self.category, self.n, g.target());
        let mut m = SparseMatrix::zeros(target.dim(), self.dim());
        for (j, f) in self.basis.morphisms.iter().enumerate() {
            if let Some(i) = target.basis.position(&compose_images(g.images(), f.images())) {
                m.set(i, j, num_traits::One::one());
            }
        }
        m
    }
}

/// Post-composition by an algebra element `x ∈ kC(t, t')` on `Δ_n(t)`, dropping non-injective terms.
pub fn post_act(x: &Element, n: usize, v: &SparseVec<Rational>) -> SparseVec<Rational> {
    let source = hom_set(x.category(), n, x.source(), HomKind::Injective);
    let target = hom_set(x.category(), n, x.target(), HomKind::Injective);
    let mut pairs = Vec::new();
    for (j, c) in v.entries() {
        let f = source.morphisms[*j].images();
        for (g, d) in x.terms() {
            if let Some(i) = target.position(&compose_images(g, f)) {
                pairs.push((i, c.clone() * d.clone()));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Pre-composition by `x ∈ kC(n', n)` sending `Δ_n(t)` to `Δ_{n'}(t)`, dropping non-injective terms.
pub fn pre_act(v: &SparseVec<Rational>, x: &Element, t: usize) -> SparseVec<Rational> {
    let source = hom_set(x.category(), x.target(), t, HomKind::Injective);
    let target = hom_set(x.category(), x.source(), t, HomKind::Injective);
    let mut pairs = Vec::new();
    for (j, c) in v.entries() {
        let f = source.morphisms[*j].images();
        for (s, d) in x.terms() {
            if let Some(i) = target.position(&compose_images(f, s)) {
                pairs.push((i, c.clone() * d.clone()));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_element;
    use CategoryId::*;

    #[test]
    fn dimensions() {
        assert_eq!(standard_dim(OA, 2, 4), 6);
        assert_eq!(standard_dim(FA, 3, 3), 6);
        assert_eq!(standard_dim(CA, 2, 5), 20);
        assert_eq!(standard_dim(SA, 4, 3), 0);
    }

    #[test]
    fn action_matrix_matches_post_act() {
        let slice = StandardModuleSlice::new(CA, 2, 3);
        let g = Morphism::new(CA, 3, 3, vec![2, 3, 3]).unwrap();
        let m = slice.action_matrix(&g);
        for j in 0..slice.dim() {
            let v = SparseVec::unit(j);
            assert_eq!(m.mul_vec(&v), post_act(&basis_element(&g), 2, &v));
        }
    }
}
