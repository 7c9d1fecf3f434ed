//! Singular pairs `(λ, μ)` with `Hom(Δ_{n+1,λ}, Δ_{n,μ}) ≠ 0`, read off from the
//! alternating component vectors of `Γ_{n,n+1}`.

use std::sync::Arc;

use crate::algebra::{character_idempotent, linear_characters, LinearCharacter};
use crate::category::{automorphism_group, CategoryId};
use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, rank_of, SparseVec};
use crate::mutation::build_mutation_graph;
use crate::rep::hom::star_image;
use crate::rep::standard::{post_act, pre_act};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct SingularPair {
    pub n: usize,
    /// Character of `G_{n+1}`.
    pub lambda: LinearCharacter,
    /// Character of `G_n`.
    pub mu: LinearCharacter,
    /// Simultaneous eigenvector in `kC⁺(n, n+1)`.
    pub witness: SparseVec<Rational>,
}

#[derive(Clone, Debug)]
pub struct SingularClassification {
    pub category: CategoryId,
    pub n: usize,
    pub pairs: Vec<SingularPair>,
    /// Dimension of the span of the component vectors.
    pub span_dim: usize,
    /// Total dimension of the linear bi-isotypic pieces; equals `span_dim`
    /// unless a non-linear constituent is present.
    pub linear_dim: usize,
    /// Every witness solves (∗).
    pub annihilated: bool,
}

fn group(category: CategoryId, n: usize) -> Arc<crate::category::AutomorphismGroup> {
    Arc::new(automorphism_group(category, n))
}

/// Decomposes the span of the alternating component vectors under `G_{n+1} × G_n`.
pub fn classify_singular_pairs(category: CategoryId, n: usize) -> Result<SingularClassification> {
    if n == 0 {
        return Err(Error::EmptyObject);
    }
    let graph = build_mutation_graph(category, n, n + 1)?;
    let signs = graph.signs.clone().ok_or_else(|| Error::Internal("missing signs".into()))?;
    let mut components = vec![Vec::new(); graph.component_count()];
    for (v, &c) in graph.components.iter().enumerate() {
        components[c].push((v, Rational::from_integer(signs[v].into())));
    }
    let vectors: Vec<SparseVec<Rational>> = components.into_iter().map(SparseVec::from_pairs).collect();
    let upper = linear_characters(&group(category, n + 1));
    let lower = linear_characters(&group(category, n));
    let mut pairs = Vec::new();
    let mut linear_dim = 0;
    let mut annihilated = true;
    for lambda in &upper {
        let el = character_idempotent::<Rational>(lambda);
        for mu in &lower {
            let em = character_idempotent::<Rational>(mu);
            let projected: Vec<SparseVec<Rational>> =
                vectors.iter().map(|v| pre_act(&post_act(&el, n, v), &em, n + 1)).collect();
            let basis = echelon_basis(&projected);
            linear_dim += basis.len();
            if let Some(w) = basis.into_iter().next() {
                annihilated &= star_image(category, n + 1, n, &w).is_zero();
                pairs.push(SingularPair { n, lambda: lambda.clone(), mu: mu.clone(), witness: w });
            }
        }
    }
    Ok(SingularClassification { category, n, pairs, span_dim: rank_of(&vectors), linear_dim, annihilated })
}

/// One row of the table; a side is `None` when the prescribed character does not exist.
#[derive(Clone, Debug)]
pub struct ExpectedPair {
    pub lambda: Option<LinearCharacter>,
    pub mu: Option<LinearCharacter>,
    pub description: String,
}

fn rotation(n: usize) -> Vec<u8> {
    (0..n).map(|i| ((i + 1) % n + 1) as u8).collect()
}

fn reversal(n: usize) -> Vec<u8> {
    (1..=n as u8).rev().collect()
}

/// The linear character taking the given values on the given elements, if there is one.
fn character_with(category: CategoryId, n: usize, values: &[(Vec<u8>, i8)]) -> Option<LinearCharacter> {
    let g = group(category, n);
    let positions: Option<Vec<(usize, i8)>> = values
        .iter()
        .map(|(x, v)| g.elements.iter().position(|e| e.images() == x.as_slice()).map(|p| (p, *v)))
        .collect();
    let positions = positions?;
    linear_characters(&g).into_iter().find(|c| positions.iter().all(|&(p, v)| c.values[p] == v))
}

fn permutation_sign(p: &[u8]) -> i8 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn sign_character(category: CategoryId, n: usize) -> Option<LinearCharacter> {
    let g = group(category, n);
    let values = g.elements.iter().map(|e| permutation_sign(e.images())).collect();
    LinearCharacter::new(g, values).ok()
}

fn nontrivial(category: CategoryId, n: usize) -> Option<LinearCharacter> {
    let g = group(category, n);
    let values = g.elements.iter().map(|e| if e.is_identity() { 1 } else { -1 }).collect();
    LinearCharacter::new(g, values).ok()
}

fn trivial(category: CategoryId, n: usize) -> Option<LinearCharacter> {
    Some(LinearCharacter::trivial(group(category, n)))
}

fn parity(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn row(lambda: Option<LinearCharacter>, mu: Option<LinearCharacter>, description: &str) -> ExpectedPair {
    ExpectedPair { lambda, mu, description: description.into() }
}

/// The published classification of singular pairs for `Γ_{n,n+1}`.
pub fn expected_singular_pairs(category: CategoryId, n: usize) -> Vec<ExpectedPair> {
    use CategoryId::*;
    match category {
        FA => vec![row(sign_character(FA, n + 1), sign_character(FA, n), "(sgn, sgn)")],
        OA => vec![row(trivial(OA, n + 1), trivial(OA, n), "(triv, triv)")],
        CA => vec![row(
            character_with(CA, n + 1, &[(rotation(n + 1), parity(n))]),
            character_with(CA, n, &[(rotation(n), parity(n - 1))]),
            "rotation values ((-1)^n, (-1)^(n-1))",
        )],
        BA if n == 1 => vec![row(sign_character(BA, 2), trivial(BA, 1), "(sgn, sgn)")],
        BA => vec![
            row(trivial(BA, n + 1), trivial(BA, n), "(triv, triv)"),
            row(nontrivial(BA, n + 1), nontrivial(BA, n), "(sgn, sgn)"),
        ],
        SA if n == 1 => vec![row(sign_character(SA, 2), trivial(SA, 1), "(sgn, sgn)")],
        SA if n == 2 => vec![
            row(trivial(SA, 3), character_with(SA, 2, &[(rotation(2), -1), (reversal(2), 1)]), "(triv, mu+)"),
            row(sign_character(SA, 3), character_with(SA, 2, &[(rotation(2), -1), (reversal(2), -1)]), "(sgn, mu-)"),
        ],
        SA => [(1i8, "(lambda+, mu+)"), (-1, "(lambda-, mu-)")]
            .iter()
            .map(|&(t, d)| {
                row(
                    character_with(SA, n + 1, &[(rotation(n + 1), parity(n)), (reversal(n + 1), t)]),
                    character_with(SA, n, &[(rotation(n), parity(n - 1)), (reversal(n), t)]),
                    d,
                )
            })
            .collect(),
    }
}

/// Computed pairs equal the expected ones as sets, and every expected character exists.
pub fn matches_expected(computed: &SingularClassification, expected: &[ExpectedPair]) -> bool {
    let mut want = Vec::new();
    for e in expected {
        match (&e.lambda, &e.mu) {
            (Some(l), Some(m)) => want.push((l.values.clone(), m.values.clone())),
            _ => return false,
        }
    }
    let mut got: Vec<(Vec<i8>, Vec<i8>)> =
        computed.pairs.iter().map(|p| (p.lambda.values.clone(), p.mu.values.clone())).collect();
    want.sort();
    want.dedup();
    got.sort();
    got == want
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    #[test]
    fn ca_three() {
        let c = classify_singular_pairs(CA, 3).unwrap();
        assert_eq!(c.pairs.len(), 1);
        let p = &c.pairs[0];
        let g = group(CA, 4);
        let r = g.elements.iter().position(|e| e.images() == rotation(4).as_slice()).unwrap();
        assert_eq!(p.lambda.values[r], -1);
        assert!(p.mu.is_trivial());
        assert!(matches_expected(&c, &expected_singular_pairs(CA, 3)));
    }

    #[test]
    fn ba_two_has_two_pairs() {
        let c = classify_singular_pairs(BA, 2).unwrap();
        assert_eq!(c.pairs.len(), 2);
        assert!(matches_expected(&c, &expected_singular_pairs(BA, 2)));
    }

    #[test]
    fn sa_one() {
        let c = classify_singular_pairs(SA, 1).unwrap();
        assert_eq!(c.pairs.len(), 1);
        assert!(!c.pairs[0].lambda.is_trivial());
        assert!(matches_expected(&c, &expected_singular_pairs(SA, 1)));
    }

    #[test]
    fn witnesses_solve_star() {
        for cat in CategoryId::ALL {
            for n in 1..=3 {
                let c = classify_singular_pairs(cat, n).unwrap();
                assert!(c.annihilated);
                assert_eq!(c.span_dim, c.linear_dim, "{cat} {n}");
            }
        }
    }

    #[test]
    fn agrees_with_refined_hom() {
        use crate::rep::hom::hom_dim_refined;
        for cat in CategoryId::ALL {
            for n in 1..=3 {
                let pairs = classify_singular_pairs(cat, n).unwrap().pairs;
                for lambda in linear_characters(&group(cat, n + 1)) {
                    for mu in linear_characters(&group(cat, n)) {
                        let dim = hom_dim_refined(cat, n + 1, Some(&lambda), n, Some(&mu)).unwrap().dim();
                        let listed = pairs.iter().any(|p| p.lambda == lambda && p.mu == mu);
                        assert_eq!(dim > 0, listed, "{cat} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn sa_two_plus_character_does_not_exist() {
        let e = expected_singular_pairs(SA, 2);
        assert!(e[0].mu.is_none());
        assert!(e[1].mu.is_some());
    }
}
