//! Corner algebras `Ψ_n kC(n,n) Ψ_n` and their primitive idempotents.
//!
//! Splitting works inside `eAe` for an idempotent `e`: the minimal polynomial of
//! a candidate element is factored over the rationals, and coprime prime-power
//! factors give orthogonal idempotents through the Chinese remainder theorem.
//! Because the full minimal polynomial (with multiplicities) is used, these
//! idempotents are exact in `A` and no lifting through the radical is needed.
//! An idempotent is primitive once `eAe / rad(eAe)` is shown to be a field.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::psi_q;
use crate::category::{hom_set, CategoryId, HomKind};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::normalized::{element_vector, normalized_hom_basis};
use crate::poly::{factor_rational, Poly};
use crate::scalar::Field;
use crate::{Element, Rational};

type Q = Rational;

/// Expresses elements of a hom-space in a fixed independent family.
pub struct CoordinateSolver {
    offset: usize,
    len: usize,
    echelon: Echelon<Q>,
}

impl CoordinateSolver {
    pub fn new(basis: &[Element]) -> Result<Self> {
        let first = basis.first().ok_or_else(|| Error::Internal("empty basis".into()))?;
        let offset = hom_set(first.category(), first.source(), first.target(), HomKind::All).len();
        let mut echelon = Echelon::new();
        for (i, b) in basis.iter().enumerate() {
            let mut pairs = element_vector(b).entries().to_vec();
            pairs.push((offset + i, Q::one()));
            if !echelon.insert(&SparseVec::from_pairs(pairs)) {
                return Err(Error::Internal("basis is not independent".into()));
            }
        }
        Ok(CoordinateSolver { offset, len: basis.len(), echelon })
    }

    /// Coordinates of `x`, or `None` if `x` is outside the span.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Q>> {
        let r = self.echelon.reduce(&element_vector(x));
        if r.entries().iter().any(|(i, _)| *i < self.offset) {
            return None;
        }
        let mut out = vec![Q::zero(); self.len];
        for (i, v) in r.entries() {
            out[i - self.offset] = -v.clone();
        }
        Some(out)
    }
}

/// `Ψ_n kC(n,n) Ψ_n` with structure constants in a greedy lexicographic basis.
pub struct CornerAlgebra {
    pub category: CategoryId,
    pub n: usize,
    pub basis: Vec<Element>,
    /// `structure[i][j]` are the coordinates of `basis[i] * basis[j]`.
    pub structure: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
}

impl CornerAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.clone() * y.clone();
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = out[k].clone() + c.clone() * s.clone();
                    }
                }
            }
        }
        out
    }

    /// The element of `kC(n,n)` with the given coordinates.
    pub fn element(&self, coords: &[Q]) -> Element {
        let mut e = Element::zero(self.category, self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                e = e.add(&b.scale(c));
            }
        }
        e
    }

    fn unit_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// Trace of left multiplication by `x`.
    fn trace_left(&self, x: &[Q]) -> Q {
        let mut t = Q::zero();
        for j in 0..self.dim() {
            t += self.mul(x, &self.unit_vec(j))[j].clone();
        }
        t
    }

    /// Radical as the kernel of the trace form (characteristic zero).
    pub fn radical(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                row.push(self.trace_left(&self.structure[i][j]));
            }
            rows.push(row);
        }
        SparseMatrix::from_dense(&rows).nullspace_basis().iter().map(|v| v.to_dense(d)).collect()
    }
}

/// Builds the corner algebra at `[n]`.
pub fn corner_algebra(category: CategoryId, n: usize) -> Result<CornerAlgebra> {
    let basis = normalized_hom_basis(category, n, n)?;
    let solver = CoordinateSolver::new(&basis)?;
    let mut structure = Vec::with_capacity(basis.len());
    for a in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in &basis {
            let c = solver
                .coordinates(&a.mul(b))
                .ok_or_else(|| Error::Internal("corner is not closed under products".into()))?;
            row.push(c);
        }
        structure.push(row);
    }
    let unit = solver
        .coordinates(&psi_q(category, n))
        .ok_or_else(|| Error::Internal("Ψ is not in its own corner".into()))?;
    Ok(CornerAlgebra { category, n, basis, structure, unit })
}

fn dense(v: &[Q]) -> SparseVec<Q> {
    SparseVec::from_dense(v)
}

fn span_dim(vs: &[Vec<Q>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(&dense(v));
    }
    e.rank()
}

fn independent(vs: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut e = Echelon::new();
    vs.into_iter().filter(|v| e.insert(&dense(v))).collect()
}

/// Minimal polynomial of `x` inside the unital algebra `eAe`.
fn minimal_polynomial(a: &CornerAlgebra, e: &[Q], x: &[Q]) -> Poly<Q> {
    let d = a.dim();
    let mut echelon = Echelon::new();
    let mut power = e.to_vec();
    let mut k = 0;
    loop {
        let mut pairs = dense(&power).entries().to_vec();
        let r = echelon.reduce(&SparseVec::from_pairs(pairs.clone()));
        if r.entries().iter().all(|(i, _)| *i >= d) {
            let mut coeffs = vec![Q::zero(); k + 1];
            for (i, v) in r.entries() {
                coeffs[i - d] = v.clone();
            }
            coeffs[k] = Q::one();
            return Poly::new(coeffs);
        }
        pairs.push((d + k, Q::one()));
        echelon.insert(&SparseVec::from_pairs(pairs));
        power = a.mul(&power, x);
        k += 1;
    }
}

fn evaluate(a: &CornerAlgebra, p: &Poly<Q>, e: &[Q], x: &[Q]) -> Vec<Q> {
    let mut acc = vec![Q::zero(); a.dim()];
    for c in p.coeffs().iter().rev() {
        acc = a.mul(&acc, x);
        for (t, u) in acc.iter_mut().zip(e) {
            *t = t.clone() + c.clone() * u.clone();
        }
    }
    acc
}

/// Splits `e` by a candidate `x ∈ eAe`; returns the pieces or the lone irreducible factor.
fn split_by(a: &CornerAlgebra, e: &[Q], x: &[Q]) -> std::result::Result<Vec<Vec<Q>>, Poly<Q>> {
    let m = minimal_polynomial(a, e, x);
    let factors = factor_rational(&m);
    if factors.len() < 2 {
        return Err(factors.into_iter().next().map(|f| f.poly).unwrap_or_else(Poly::one));
    }
    let mut out = Vec::new();
    for f in &factors {
        let pk = f.poly.pow(f.multiplicity);
        let rest = m.div_rem(&pk).0;
        let (_, u, _) = rest.ext_gcd(&pk);
        let idem = u.mul(&rest).rem(&m);
        out.push(evaluate(a, &idem, e, x));
    }
    Ok(out)
}

struct Sandwich<'a> {
    a: &'a CornerAlgebra,
    e: Vec<Q>,
}

impl Sandwich<'_> {
    fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.a.mul(&self.a.mul(&self.e, x), &self.e)
    }
}

/// Complete set of primitive orthogonal idempotents summing to `Ψ_n`, in coordinates.
pub fn primitive_idempotents_coords(a: &CornerAlgebra) -> Result<Vec<Vec<Q>>> {
    let rad = a.radical();
    let mut rng = ChaCha8Rng::seed_from_u64(a.n as u64 * 7919 + a.category as u64);
    let mut done = Vec::new();
    let mut todo = vec![a.unit.clone()];
    while let Some(e) = todo.pop() {
        let s = Sandwich { a, e: e.clone() };
        let local: Vec<Vec<Q>> = independent((0..a.dim()).map(|i| s.apply(&a.unit_vec(i))).collect());
        let local_rad = span_dim(&rad.iter().map(|r| s.apply(r)).collect::<Vec<_>>());
        let q = local.len() - local_rad;
        if q == 1 {
            done.push(e);
            continue;
        }
        let mut candidates: Vec<Vec<Q>> = local.clone();
        for i in 0..local.len() {
            for j in 0..local.len() {
                candidates.push(a.mul(&local[i], &local[j]));
            }
        }
        let mut split = None;
        let mut primitive = false;
        for attempt in 0.. {
            let x = if attempt < candidates.len() {
                candidates[attempt].clone()
            } else if attempt < candidates.len() + 400 {
                let mut x = vec![Q::zero(); a.dim()];
                for b in &local {
                    let c = Q::from_int(rng.gen_range(-3..=3));
                    for (t, u) in x.iter_mut().zip(b) {
                        *t = t.clone() + c.clone() * u.clone();
                    }
                }
                x
            } else {
                break;
            };
            match split_by(a, &e, &x) {
                Ok(pieces) => {
                    split = Some(pieces);
                    break;
                }
                Err(p) => {
                    if p.degree() == Some(q) {
                        primitive = true;
                        break;
                    }
                }
            }
        }
        match (split, primitive) {
            (Some(pieces), _) => todo.extend(pieces),
            (None, true) => done.push(e),
            (None, false) => {
                return Err(Error::Internal(format!(
                    "could not split an idempotent of the {} corner at n = {}",
                    a.category, a.n
                )))
            }
        }
    }
    done.sort();
    Ok(done)
}

/// Primitive idempotents as elements of `kC(n,n)`.
pub fn primitive_idempotents(a: &CornerAlgebra) -> Result<Vec<Element>> {
    Ok(primitive_idempotents_coords(a)?.iter().map(|c| a.element(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    fn check_complete(a: &CornerAlgebra, ids: &[Element]) {
        let psi = psi_q(a.category, a.n);
        let mut sum = Element::zero(a.category, a.n, a.n);
        for (i, e) in ids.iter().enumerate() {
            assert_eq!(e.mul(e), *e, "idempotent");
            for (j, f) in ids.iter().enumerate() {
                if i != j {
                    assert!(e.mul(f).is_zero(), "orthogonal");
                }
            }
            sum = sum.add(e);
        }
        assert_eq!(sum, *psi);
    }

    #[test]
    fn oa_corner_is_one_dimensional() {
        for n in 1..=4 {
            let a = corner_algebra(OA, n).unwrap();
            assert_eq!(a.dim(), 1);
            let ids = primitive_idempotents(&a).unwrap();
            assert_eq!(ids, vec![(*psi_q(OA, n)).clone()]);
        }
    }

    #[test]
    fn ca_three_decomposition() {
        let a = corner_algebra(CA, 3).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.radical().len(), 1);
        let ids = primitive_idempotents(&a).unwrap();
        assert_eq!(ids.len(), 3);
        check_complete(&a, &ids);
    }

    #[test]
    fn sa_corners_decompose() {
        for n in 2..=4 {
            let a = corner_algebra(SA, n).unwrap();
            let ids = primitive_idempotents(&a).unwrap();
            check_complete(&a, &ids);
        }
    }

    #[test]
    fn ba_corner_splits_into_two() {
        let a = corner_algebra(BA, 3).unwrap();
        let ids = primitive_idempotents(&a).unwrap();
        assert_eq!(ids.len(), 2);
        check_complete(&a, &ids);
    }
}
