//! Elements of the category algebra, the normalization idempotent and
//! linear-character idempotents.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::category::{
    compose_images, cyclic_degeneracy, degeneracy_map, face_map, AutomorphismGroup, CategoryId, Morphism,
};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Field};
use crate::Rational;

/// A formal linear combination of morphisms `[source] -> [target]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<S> {
    category: CategoryId,
    source: usize,
    target: usize,
    terms: BTreeMap<Vec<u8>, S>,
}

impl<S: Field> AlgebraElement<S> {
    pub fn zero(category: CategoryId, source: usize, target: usize) -> Self {
        AlgebraElement { category, source, target, terms: BTreeMap::new() }
    }

    pub fn from_morphism(f: &Morphism) -> Self {
        Self::from_terms(f.category(), f.source(), f.target(), [(f.images().to_vec(), S::one())])
    }

    pub fn identity(category: CategoryId, n: usize) -> Self {
        Self::from_morphism(&Morphism::identity(category, n))
    }

    pub fn from_terms<I>(category: CategoryId, source: usize, target: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, S)>,
    {
        let mut e = Self::zero(category, source, target);
        for (k, v) in terms {
            e.add_term(k, v);
        }
        e
    }

    fn add_term(&mut self, key: Vec<u8>, v: S) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + v;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(v);
            }
        }
    }

    pub fn category(&self) -> CategoryId {
        self.category
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, images: &[u8]) -> S {
        self.terms.get(images).cloned().unwrap_or_else(S::zero)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.category != o.category || self.source != o.source || self.target != o.target {
            return Err(Error::Mismatch("algebra elements live in different hom-spaces".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut e = self.clone();
        for (k, v) in &o.terms {
            e.add_term(k.clone(), v.clone());
        }
        Ok(e)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("adding elements of different hom-spaces")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.category, self.source, self.target);
        }
        AlgebraElement {
            category: self.category,
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// `self ∘ other`; `other` is applied first.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if other.target != self.source || other.category != self.category {
            return Err(Error::Mismatch(format!(
                "cannot multiply [{}]->[{}] after [{}]->[{}]",
                self.source, self.target, other.source, other.target
            )));
        }
        let mut e = Self::zero(self.category, other.source, self.target);
        for (g, a) in &self.terms {
            for (f, b) in &other.terms {
                e.add_term(compose_images(g, f), a.clone() * b.clone());
            }
        }
        Ok(e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("incompatible algebra product")
    }

    /// Drops every term whose morphism is not injective.
    pub fn injective_part(&self) -> Self {
        let terms = self.terms.iter().filter(|(k, _)| distinct(k)).map(|(k, v)| (k.clone(), v.clone()));
        Self::from_terms(self.category, self.source, self.target, terms)
    }
}

fn distinct(v: &[u8]) -> bool {
    let mut seen = [false; 256];
    v.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

impl<S: Field> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let t: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                format!("{}*[{}]", v, t.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Text form with rationals printed as `p/q`.
pub fn format_element(e: &AlgebraElement<Rational>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .map(|(k, v)| {
            let t: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            format!("{}*[{}]", format_rational(v), t.join(","))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Shorthand for a single morphism as an algebra element.
pub fn basis_element<S: Field>(f: &Morphism) -> AlgebraElement<S> {
    AlgebraElement::from_morphism(f)
}

/// The normalization idempotent `Ψ_n = (id - d_1 s_1)(id - d_2 s_2)...(id - d_{n-1} s_{n-1})`.
pub fn psi<S: Field>(category: CategoryId, n: usize) -> AlgebraElement<S> {
    let id = AlgebraElement::<S>::identity(category, n);
    let mut p = id.clone();
    for i in 1..n {
        let d = basis_element::<S>(&face_map(category, n, i).expect("face in range"));
        let s = basis_element::<S>(&degeneracy_map(category, n, i).expect("degeneracy in range"));
        p = p.mul(&id.sub(&d.mul(&s)));
    }
    p
}

type PsiCache = RwLock<HashMap<(CategoryId, usize), Arc<AlgebraElement<Rational>>>>;

fn psi_cache() -> &'static PsiCache {
    static CACHE: OnceLock<PsiCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized rational `Ψ_n`.
pub fn psi_q(category: CategoryId, n: usize) -> Arc<AlgebraElement<Rational>> {
    if let Some(p) = psi_cache().read().expect("psi cache poisoned").get(&(category, n)) {
        return p.clone();
    }
    let p = Arc::new(psi::<Rational>(category, n));
    psi_cache().write().expect("psi cache poisoned").entry((category, n)).or_insert(p).clone()
}

/// One named identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub pass: bool,
}

/// `Ψ_n² = Ψ_n`, `s_j Ψ_n = 0` and `Ψ_n d_j = 0` for `1 <= j < n`.
pub fn check_psi_identities(category: CategoryId, n: usize) -> Vec<IdentityCheck> {
    let p = psi_q(category, n);
    let mut out = vec![IdentityCheck { id: format!("psi{n}^2=psi{n}"), pass: p.mul(&p) == *p }];
    for j in 1..n {
        let s = basis_element::<Rational>(&degeneracy_map(category, n, j).expect("in range"));
        let d = basis_element::<Rational>(&face_map(category, n, j).expect("in range"));
        out.push(IdentityCheck { id: format!("s{j}*psi{n}=0"), pass: s.mul(&p).is_zero() });
        out.push(IdentityCheck { id: format!("psi{n}*d{j}=0"), pass: p.mul(&d).is_zero() });
    }
    out
}

/// The cyclic degeneracy used as the top degeneracy `s_n` in CA and SA.
pub fn top_degeneracy<S: Field>(category: CategoryId, n: usize) -> Result<AlgebraElement<S>> {
    Ok(basis_element(&cyclic_degeneracy(category, n)?))
}

/// A `±1`-valued homomorphism on an automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    pub group: Arc<AutomorphismGroup>,
    pub values: Vec<i8>,
}

impl LinearCharacter {
    /// Validates multiplicativity.
    pub fn new(group: Arc<AutomorphismGroup>, values: Vec<i8>) -> Result<Self> {
        if values.len() != group.order() || values.iter().any(|v| *v != 1 && *v != -1) {
            return Err(Error::InvalidCharacter("values must be ±1, one per element".into()));
        }
        let index = element_index(&group);
        for (i, a) in group.elements.iter().enumerate() {
            for (j, b) in group.elements.iter().enumerate() {
                let k = index[&compose_images(a.images(), b.images())];
                if values[k] != values[i] * values[j] {
                    return Err(Error::InvalidCharacter("values are not multiplicative".into()));
                }
            }
        }
        Ok(LinearCharacter { group, values })
    }

    pub fn trivial(group: Arc<AutomorphismGroup>) -> Self {
        let values = vec![1; group.order()];
        LinearCharacter { group, values }
    }

    pub fn value(&self, g: &Morphism) -> i8 {
        let i = self.group.position(g).expect("element of the group");
        self.values[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    /// Short label: values on the generators, e.g. `(+,-)`.
    pub fn label(&self) -> String {
        let gens: Vec<&str> = self
            .group
            .generators
            .iter()
            .map(|g| if self.value(g) == 1 { "+" } else { "-" })
            .collect();
        if gens.is_empty() {
            "triv".into()
        } else {
            format!("({})", gens.join(","))
        }
    }
}

fn element_index(group: &AutomorphismGroup) -> HashMap<Vec<u8>, usize> {
    group.elements.iter().enumerate().map(|(i, g)| (g.images().to_vec(), i)).collect()
}

/// All linear characters, trivial first, the rest ordered by value table.
pub fn linear_characters(group: &Arc<AutomorphismGroup>) -> Vec<LinearCharacter> {
    let index = element_index(group);
    let id = group.identity_index();
    let k = group.generators.len();
    let mut out = Vec::new();
    for mask in 0..(1usize << k) {
        let mut values = vec![0i8; group.order()];
        values[id] = 1;
        let mut queue = VecDeque::from([id]);
        let mut ok = true;
        while let Some(x) = queue.pop_front() {
            for (gi, g) in group.generators.iter().enumerate() {
                let sign = if mask >> gi & 1 == 1 { -1 } else { 1 };
                let y = index[&compose_images(g.images(), group.elements[x].images())];
                let v = values[x] * sign;
                if values[y] == 0 {
                    values[y] = v;
                    queue.push_back(y);
                } else if values[y] != v {
                    ok = false;
                }
            }
        }
        if ok {
            if let Ok(c) = LinearCharacter::new(group.clone(), values) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| b.values.cmp(&a.values));
    out.dedup();
    out
}

/// `e_χ = (1/|G|) Σ χ(σ⁻¹) σ`.
pub fn character_idempotent<S: Field>(chi: &LinearCharacter) -> AlgebraElement<S> {
    let g = &chi.group;
    let inv_order = S::from_int(g.order() as i64).inv();
    let terms = g.elements.iter().map(|s| {
        let inv = s.inverse().expect("group element is invertible");
        (s.images().to_vec(), S::from_int(chi.value(&inv) as i64) * inv_order.clone())
    });
    AlgebraElement::from_terms(g.category, g.n, g.n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::automorphism_group;
    use CategoryId::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn psi_one_is_identity() {
        assert_eq!(psi::<Rational>(OA, 1), AlgebraElement::identity(OA, 1));
    }

    #[test]
    fn psi_two() {
        let expected =
            AlgebraElement::from_terms(OA, 2, 2, [(vec![1, 2], q(1)), (vec![2, 2], q(-1))]);
        assert_eq!(psi::<Rational>(OA, 2), expected);
    }

    #[test]
    fn psi_identities_small() {
        for cat in CategoryId::NORMALIZED {
            for n in 2..=4 {
                assert!(check_psi_identities(cat, n).iter().all(|c| c.pass), "{cat} {n}");
            }
        }
    }

    #[test]
    fn sign_idempotent_on_c2() {
        let g = Arc::new(automorphism_group(BA, 2));
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 2);
        let e = character_idempotent::<Rational>(&chars[1]);
        let half = q(1) / q(2);
        let expected =
            AlgebraElement::from_terms(BA, 2, 2, [(vec![1, 2], half.clone()), (vec![2, 1], -half)]);
        assert_eq!(e, expected);
    }

    #[test]
    fn s3_has_two_linear_characters() {
        let g = Arc::new(automorphism_group(FA, 3));
        let chars = linear_characters(&g);
        assert_eq!(chars.len(), 2);
        for c in &chars {
            let e = character_idempotent::<Rational>(c);
            assert_eq!(e.mul(&e), e);
        }
    }

    #[test]
    fn non_multiplicative_rejected() {
        let g = Arc::new(automorphism_group(CA, 3));
        assert!(LinearCharacter::new(g, vec![1, -1, 1]).is_err());
    }

    #[test]
    fn element_display() {
        let e = AlgebraElement::from_terms(OA, 2, 2, [(vec![1, 2], q(1) / q(2)), (vec![2, 2], q(-1))]);
        assert_eq!(format_element(&e), "1/2*[1,2] + -1*[2,2]");
    }
}
