//! `Ext¹` between standard modules.

use std::collections::{HashMap, HashSet};

use crate::algebra::{psi_q, top_degeneracy, LinearCharacter};
use crate::category::{compose_images, hom_set, CategoryId, HomKind};
use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, rank_of, Echelon, SparseVec};
use crate::rep::hom::{hom_dim_refined, mu_projection};
use crate::rep::standard::post_act;
use crate::Rational;

/// Rank of `Ψ_m` acting on `Δ_n(m)`, i.e. `dim Hom(kCΨ_m, Δ_n)`.
pub fn psi_image_dim(category: CategoryId, m: usize, n: usize) -> Result<usize> {
    if category == CategoryId::FA {
        return Err(Error::Unsupported("Ψ is defined for OA, CA, BA, SA".into()));
    }
    let psi = psi_q(category, m);
    let len = hom_set(category, n, m, HomKind::Injective).len();
    let images: Vec<SparseVec<Rational>> = (0..len).map(|j| post_act(&psi, n, &SparseVec::unit(j))).collect();
    Ok(rank_of(&images))
}

/// The pieces of `Ext¹(Δ_m, Δ_n[e_μ])` for CA and SA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtStandard {
    pub category: CategoryId,
    pub m: usize,
    pub n: usize,
    /// `dim Hom(kCΨ_m, Δ_n e_μ)`.
    pub psi_image: usize,
    /// `dim Hom(Δ_{m-1}, Δ_n e_μ)`.
    pub hom_lower: usize,
    pub restriction_rank: usize,
    /// Restricted vectors all solve (∗) one level down.
    pub lands_in_star: bool,
    pub dim: usize,
}

/// `Ext¹(Δ_m, Δ_n)` from `0 -> Δ_{m-1} -> kCΨ_m -> Δ_m -> 0`, optionally with `e_μ` on the target.
pub fn ext_dim_standard(category: CategoryId, m: usize, n: usize, mu: Option<&LinearCharacter>) -> Result<ExtStandard> {
    if !category.is_cyclic() {
        return Err(Error::Unsupported(format!("standard Ext is computed for CA and SA, not {category}")));
    }
    if m < 3 {
        return Err(Error::Unsupported(format!("Δ_{m} is projective; Ext needs m >= 3")));
    }
    let lower = hom_dim_refined(category, m - 1, None, n, mu)?;
    let mut star = Echelon::new();
    for v in &lower.basis {
        star.insert(v);
    }
    let psi = psi_q(category, m);
    let image = echelon_basis(
        &mu_projection(category, m, n, mu).iter().map(|w| post_act(&psi, n, w)).collect::<Vec<_>>(),
    );
    let s = top_degeneracy::<Rational>(category, m)?;
    let restricted: Vec<SparseVec<Rational>> = image.iter().map(|u| post_act(&s, n, u)).collect();
    let lands_in_star = restricted.iter().all(|r| star.contains(r));
    let restriction_rank = rank_of(&restricted);
    Ok(ExtStandard {
        category,
        m,
        n,
        psi_image: image.len(),
        hom_lower: lower.dim(),
        restriction_rank,
        lands_in_star,
        dim: lower.dim() - restriction_rank,
    })
}

/// `Ext¹(Δ_n, Δ_{n-1})` in FA, with relations imposed up to a degree cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaExt {
    pub n: usize,
    pub cutoff: usize,
    pub dim: usize,
    /// The value with cutoff `T - 1`.
    pub previous: usize,
    pub stabilized: bool,
}

/// Solves for generator assignments `x_g ∈ Δ_{n-1}(n-1)`, `g ∈ FA⁻(n,n-1)`, that respect
/// every equality `h∘g = h'∘g'` with target at most `cutoff`, and subtracts those
/// coming from `Hom(P_n, Δ_{n-1}) = Δ_{n-1}(n)`.
pub fn ext_dim_fa(n: usize, cutoff: usize) -> Result<FaExt> {
    use CategoryId::FA;
    if n < 3 || cutoff < n + 1 {
        return Err(Error::Unsupported(format!("FA Ext needs n >= 3 and cutoff > n, got {n}, {cutoff}")));
    }
    let gens = hom_set(FA, n, n - 1, HomKind::Surjective);
    let perms = hom_set(FA, n - 1, n - 1, HomKind::Injective);
    let p = perms.len();
    let unknowns = gens.len() * p;
    let mut echelon = Echelon::new();
    let mut seen = HashSet::new();
    let mut dims = Vec::new();
    for t in n - 1..=cutoff {
        let hs = hom_set(FA, n - 1, t, HomKind::All);
        let mut groups: HashMap<Vec<u8>, Vec<(usize, usize)>> = HashMap::new();
        for (k, g) in gens.morphisms.iter().enumerate() {
            for (i, h) in hs.morphisms.iter().enumerate() {
                groups.entry(compose_images(h.images(), g.images())).or_default().push((k, i));
            }
        }
        let mut keys: Vec<&Vec<u8>> = groups.keys().collect();
        keys.sort();
        for key in keys {
            let members = &groups[key];
            let (k0, i0) = members[0];
            for &(k, i) in &members[1..] {
                let mut by_target: HashMap<Vec<u8>, Vec<(usize, Rational)>> = HashMap::new();
                for (kk, ii, sign) in [(k, i, 1), (k0, i0, -1)] {
                    let h = &hs.morphisms[ii];
                    if !h.is_injective() {
                        continue;
                    }
                    for (s, sigma) in perms.morphisms.iter().enumerate() {
                        by_target
                            .entry(compose_images(h.images(), sigma.images()))
                            .or_default()
                            .push((kk * p + s, Rational::from_integer(sign.into())));
                    }
                }
                for entries in by_target.into_values() {
                    let row = SparseVec::from_pairs(entries).normalized();
                    if !row.is_zero() && seen.insert(row.entries().to_vec()) {
                        echelon.insert(&row);
                    }
                }
            }
        }
        dims.push(unknowns - echelon.rank());
    }
    let inj = hom_set(FA, n - 1, n, HomKind::Injective);
    let restricted: Vec<SparseVec<Rational>> = inj
        .morphisms
        .iter()
        .map(|f| {
            let pairs = gens
                .morphisms
                .iter()
                .enumerate()
                .filter_map(|(k, g)| {
                    perms.position(&compose_images(g.images(), f.images())).map(|s| (k * p + s, num_traits::One::one()))
                })
                .collect();
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let r = rank_of(&restricted);
    let dim = dims[dims.len() - 1] - r;
    let previous = dims[dims.len() - 2] - r;
    Ok(FaExt { n, cutoff, dim, previous, stabilized: dim == previous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    #[test]
    fn psi_image_examples() {
        for n in 1..=3 {
            assert_eq!(psi_image_dim(CA, n + 1, n).unwrap(), n);
            assert_eq!(psi_image_dim(OA, n + 2, n).unwrap(), 0);
            assert_eq!(psi_image_dim(CA, n, n).unwrap(), n);
        }
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_dim_standard(CA, 4, 3, None).unwrap().dim, 1);
        assert_eq!(ext_dim_standard(SA, 5, 3, None).unwrap().dim, 2);
        assert_eq!(ext_dim_standard(CA, 6, 3, None).unwrap().dim, 0);
        assert!(ext_dim_standard(CA, 2, 1, None).is_err());
        assert!(ext_dim_standard(OA, 4, 3, None).is_err());
    }

    #[test]
    fn four_term_sequence_is_exact() {
        for cat in [CA, SA] {
            for m in 3..=5 {
                for n in 1..=4 {
                    let e = ext_dim_standard(cat, m, n, None).unwrap();
                    let hom_m = crate::rep::hom::hom_dim_standard(cat, m, n).dim();
                    assert!(e.lands_in_star);
                    assert_eq!(e.psi_image + e.dim, hom_m + e.hom_lower, "{cat} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn fa_three() {
        let e = ext_dim_fa(3, 5).unwrap();
        assert_eq!(e.dim, 1);
        assert!(e.stabilized);
    }
}
