//! Counting and rank identities coming from the standard filtrations of projectives.

use num_integer::binomial;

use crate::algebra::{basis_element, character_idempotent, linear_characters, psi_q};
use crate::category::{automorphism_group, hom_set, CategoryId, HomKind};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::normalized::element_vector;
use crate::rep::standard::standard_dim;
use crate::{Element, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationCheck {
    pub id: String,
    pub expected: usize,
    pub computed: usize,
    pub pass: bool,
}

impl FiltrationCheck {
    fn new(id: String, expected: usize, computed: usize) -> Self {
        FiltrationCheck { id, expected, computed, pass: expected == computed }
    }
}

/// `|C(n,t)| = Σ_l |C⁺(l,t)| · |C⁻(n,l)| / |G_l|`.
pub fn counting_identity(category: CategoryId, n: usize, t: usize) -> FiltrationCheck {
    let total = hom_set(category, n, t, HomKind::All).len();
    let sum = (1..=n.min(t))
        .map(|l| {
            let g = automorphism_group(category, l).order();
            standard_dim(category, l, t) * hom_set(category, n, l, HomKind::Surjective).len() / g
        })
        .sum();
    FiltrationCheck::new(format!("{category}:count({n},{t})"), total, sum)
}

/// `|C⁺(n,t)| = |G_n| · binom(t,n)`.
pub fn restriction_identity(category: CategoryId, n: usize, t: usize) -> FiltrationCheck {
    let g = automorphism_group(category, n).order();
    let expected = if t >= n { g * binomial(t, n) } else { 0 };
    FiltrationCheck::new(format!("{category}:restrict({n},{t})"), expected, standard_dim(category, n, t))
}

fn right_rank(category: CategoryId, n: usize, t: usize, right: &Element) -> usize {
    let mut e = Echelon::new();
    for f in &hom_set(category, n, t, HomKind::All).morphisms {
        e.insert(&element_vector(&basis_element::<Rational>(f).mul(right)));
    }
    e.rank()
}

/// `rank(- · Ψ_n)` on `kC(n,t)` against `dim Δ_n(t)`, plus `dim Δ_{n-1}(t)` for CA and SA when `n >= 3`.
pub fn psi_rank(category: CategoryId, n: usize, t: usize) -> Result<FiltrationCheck> {
    if category == CategoryId::FA {
        return Err(Error::Unsupported("Ψ is defined for OA, CA, BA, SA".into()));
    }
    let mut expected = standard_dim(category, n, t);
    if category.is_cyclic() && n >= 3 {
        expected += standard_dim(category, n - 1, t);
    }
    let computed = right_rank(category, n, t, &psi_q(category, n));
    Ok(FiltrationCheck::new(format!("{category}:psi_rank({n},{t})"), expected, computed))
}

/// `rank(- · e_sgn)` on `kFA(n,t)` equals `|FA⁺(n,t)| / n!` for every `t <= t_max`.
pub fn check_fa_sgn_projectivity(n: usize, t_max: usize) -> Vec<FiltrationCheck> {
    let group = std::sync::Arc::new(automorphism_group(CategoryId::FA, n));
    let sgn = linear_characters(&group).pop().expect("at least the trivial character");
    let e = character_idempotent::<Rational>(&sgn);
    (1..=t_max)
        .map(|t| {
            let expected = standard_dim(CategoryId::FA, n, t) / group.order();
            FiltrationCheck::new(format!("FA:sgn_rank({n},{t})"), expected, right_rank(CategoryId::FA, n, t, &e))
        })
        .collect()
}

/// All counting, restriction and `Ψ`-rank identities for `n, t <= n_max, t_max`.
pub fn check_filtration_identity(category: CategoryId, n_max: usize, t_max: usize) -> Result<Vec<FiltrationCheck>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for t in 1..=t_max {
            out.push(counting_identity(category, n, t));
            out.push(restriction_identity(category, n, t));
            if category != CategoryId::FA {
                out.push(psi_rank(category, n, t)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    #[test]
    fn examples() {
        let c = counting_identity(FA, 2, 2);
        assert_eq!((c.expected, c.computed), (4, 4));
        let r = psi_rank(OA, 4, 6).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed, 15);
        assert!(psi_rank(CA, 4, 5).unwrap().pass);
    }

    #[test]
    fn small_cyclic_psi_is_standard() {
        for t in 1..=4 {
            assert!(psi_rank(CA, 2, t).unwrap().pass);
            assert!(psi_rank(SA, 2, t).unwrap().pass);
        }
    }

    #[test]
    fn sgn_ranks() {
        let checks = check_fa_sgn_projectivity(2, 3);
        assert_eq!(checks.iter().map(|c| c.computed).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(check_fa_sgn_projectivity(3, 3)[2].computed, 1);
    }
}
