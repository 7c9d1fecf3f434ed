//! `Hom(Δ_m, Δ_n)` as the solutions of (∗) inside `kC⁺(n,m)`: vectors whose image under
//! every surjection `[m] -> [m-1]` has no injective terms.

use crate::algebra::{character_idempotent, LinearCharacter};
use crate::category::{compose_images, hom_set, CategoryId, HomKind};
use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, SparseMatrix, SparseVec};
use crate::rep::standard::{post_act, pre_act};
use crate::Rational;

/// A Hom-space given by a basis inside `kC⁺(n,m)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub category: CategoryId,
    pub m: usize,
    pub n: usize,
    pub basis: Vec<SparseVec<Rational>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Stacked injective parts of `g·v` over all `g ∈ C⁻(m, m-1)`.
pub(crate) fn star_image(category: CategoryId, m: usize, n: usize, v: &SparseVec<Rational>) -> SparseVec<Rational> {
    if m < 2 {
        return SparseVec::new();
    }
    let source = hom_set(category, n, m, HomKind::Injective);
    let lower = hom_set(category, n, m - 1, HomKind::Injective);
    let surj = hom_set(category, m, m - 1, HomKind::Surjective);
    let mut pairs = Vec::new();
    for (k, g) in surj.morphisms.iter().enumerate() {
        for (j, c) in v.entries() {
            let h = compose_images(g.images(), source.morphisms[*j].images());
            if let Some(i) = lower.position(&h) {
                pairs.push((k * lower.len() + i, c.clone()));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

fn star_rows(category: CategoryId, m: usize, n: usize) -> usize {
    if m < 2 {
        return 0;
    }
    hom_set(category, m, m - 1, HomKind::Surjective).len() * hom_set(category, n, m - 1, HomKind::Injective).len()
}

/// Solutions of (∗) inside the span of `w`.
pub(crate) fn solve_star(category: CategoryId, m: usize, n: usize, w: &[SparseVec<Rational>]) -> Vec<SparseVec<Rational>> {
    if w.is_empty() {
        return Vec::new();
    }
    let rows = star_rows(category, m, n);
    let images: Vec<SparseVec<Rational>> = w.iter().map(|x| star_image(category, m, n, x)).collect();
    let system = SparseMatrix::from_rows(rows, images).transpose();
    let mut out = Vec::new();
    for c in system.nullspace_basis() {
        let mut acc = SparseVec::new();
        for (j, a) in c.entries() {
            acc = acc.axpy(a, &w[*j]);
        }
        out.push(acc);
    }
    echelon_basis(&out)
}

fn full_space(category: CategoryId, m: usize, n: usize) -> Vec<SparseVec<Rational>> {
    (0..hom_set(category, n, m, HomKind::Injective).len()).map(SparseVec::unit).collect()
}

/// `Hom(Δ_m, Δ_n)` with a basis in reduced echelon form.
pub fn hom_dim_standard(category: CategoryId, m: usize, n: usize) -> HomSpace {
    let basis = solve_star(category, m, n, &full_space(category, m, n));
    HomSpace { category, m, n, basis }
}

fn check_character(chi: &LinearCharacter, category: CategoryId, size: usize) -> Result<()> {
    if chi.group.category != category || chi.group.n != size {
        return Err(Error::Mismatch(format!(
            "character of G_{} in {} used at [{size}] in {category}",
            chi.group.n, chi.group.category
        )));
    }
    Ok(())
}

/// The image of `e_μ` acting on `kC⁺(n,m)` by pre-composition.
pub(crate) fn mu_projection(category: CategoryId, m: usize, n: usize, mu: Option<&LinearCharacter>) -> Vec<SparseVec<Rational>> {
    let full = full_space(category, m, n);
    match mu {
        None => full,
        Some(mu) => {
            let e = character_idempotent::<Rational>(mu);
            echelon_basis(&full.iter().map(|v| pre_act(v, &e, m)).collect::<Vec<_>>())
        }
    }
}

/// `Hom(Δ_{m,λ}, Δ_{n,μ})`: (∗) solved inside `kC⁺(n,m) e_μ`, then cut down to the
/// `λ`-isotypic part under post-composition by `G_m`.
pub fn hom_dim_refined(
    category: CategoryId,
    m: usize,
    lambda: Option<&LinearCharacter>,
    n: usize,
    mu: Option<&LinearCharacter>,
) -> Result<HomSpace> {
    if let Some(l) = lambda {
        check_character(l, category, m)?;
    }
    if let Some(u) = mu {
        check_character(u, category, n)?;
    }
    let w = mu_projection(category, m, n, mu);
    let solutions = solve_star(category, m, n, &w);
    let basis = match lambda {
        None => solutions,
        Some(l) => {
            let e = character_idempotent::<Rational>(l);
            echelon_basis(&solutions.iter().map(|v| post_act(&e, n, v)).collect::<Vec<_>>())
        }
    };
    Ok(HomSpace { category, m, n, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linear_characters;
    use crate::category::automorphism_group;
    use crate::scalar::Field;
    use std::sync::Arc;
    use CategoryId::*;

    fn sgn(category: CategoryId, n: usize) -> LinearCharacter {
        let chars = linear_characters(&Arc::new(automorphism_group(category, n)));
        chars.last().unwrap().clone()
    }

    #[test]
    fn examples() {
        assert_eq!(hom_dim_standard(FA, 3, 3).dim(), 6);
        assert_eq!(hom_dim_standard(BA, 4, 3).dim(), 2);
        assert_eq!(hom_dim_standard(CA, 5, 3).dim(), 0);
        let h = hom_dim_standard(OA, 2, 1);
        assert_eq!(h.dim(), 1);
        let one = Rational::from_int(1);
        assert_eq!(h.basis[0], SparseVec::from_pairs(vec![(0, one.clone()), (1, -one)]));
    }

    #[test]
    fn refined_sign_pairs() {
        for n in 2..=3 {
            let h = hom_dim_refined(FA, n + 1, Some(&sgn(FA, n + 1)), n, Some(&sgn(FA, n))).unwrap();
            assert_eq!(h.dim(), 1);
        }
        let triv = |n| LinearCharacter::trivial(Arc::new(automorphism_group(BA, n)));
        assert_eq!(hom_dim_refined(BA, 4, Some(&triv(4)), 3, Some(&triv(3))).unwrap().dim(), 0);
        assert_eq!(hom_dim_refined(BA, 4, Some(&triv(4)), 3, Some(&sgn(BA, 3))).unwrap().dim(), 1);
        assert_eq!(hom_dim_refined(BA, 3, Some(&triv(3)), 2, Some(&triv(2))).unwrap().dim(), 1);
        assert_eq!(hom_dim_refined(BA, 3, Some(&triv(3)), 3, Some(&triv(3))).unwrap().dim(), 1);
    }

    #[test]
    fn mismatched_character_is_rejected() {
        assert!(hom_dim_refined(FA, 3, Some(&sgn(FA, 2)), 2, None).is_err());
    }
}
