//! The five categories: objects `[n]`, membership, enumeration and composition.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CategoryId {
    FA,
    OA,
    CA,
    BA,
    SA,
}

impl CategoryId {
    pub const ALL: [CategoryId; 5] =
        [CategoryId::FA, CategoryId::OA, CategoryId::CA, CategoryId::BA, CategoryId::SA];

    /// Categories in which the normalization idempotent is used.
    pub const NORMALIZED: [CategoryId; 4] =
        [CategoryId::OA, CategoryId::CA, CategoryId::BA, CategoryId::SA];

    pub fn name(self) -> &'static str {
        match self {
            CategoryId::FA => "FA",
            CategoryId::OA => "OA",
            CategoryId::CA => "CA",
            CategoryId::BA => "BA",
            CategoryId::SA => "SA",
        }
    }

    /// CA and SA carry the extra cyclic degeneracy.
    pub fn is_cyclic(self) -> bool {
        matches!(self, CategoryId::CA | CategoryId::SA)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "FA" => Ok(CategoryId::FA),
            "OA" => Ok(CategoryId::OA),
            "CA" => Ok(CategoryId::CA),
            "BA" => Ok(CategoryId::BA),
            "SA" => Ok(CategoryId::SA),
            other => Err(Error::Parse(format!("unknown category `{other}`"))),
        }
    }
}

/// A map `[source] -> [target]` stored by its 1-based image tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    category: CategoryId,
    source: usize,
    target: usize,
    images: Vec<u8>,
}

fn cyclic_winding_ok(images: &[u8], n: usize) -> bool {
    let m = images.len();
    let n = n as i64;
    let total: i64 = (0..m)
        .map(|i| (images[(i + 1) % m] as i64 - images[i] as i64).rem_euclid(n))
        .sum();
    total == 0 || total == n
}

/// The membership predicate of `category` on a tuple with entries in `1..=n`.
pub fn is_morphism(category: CategoryId, m: usize, n: usize, images: &[u8]) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyObject);
    }
    if images.len() != m || images.iter().any(|&x| x == 0 || x as usize > n) {
        return Err(Error::InvalidMap(format!("{images:?} is not a map [{m}] -> [{n}]")));
    }
    Ok(satisfies(category, n, images))
}

fn satisfies(category: CategoryId, n: usize, images: &[u8]) -> bool {
    let increasing = || images.windows(2).all(|w| w[0] <= w[1]);
    let decreasing = || images.windows(2).all(|w| w[0] >= w[1]);
    match category {
        CategoryId::FA => true,
        CategoryId::OA => increasing(),
        CategoryId::BA => increasing() || decreasing(),
        CategoryId::CA => cyclic_winding_ok(images, n),
        CategoryId::SA => {
            cyclic_winding_ok(images, n) || {
                let rev: Vec<u8> = images.iter().map(|&x| (n + 1) as u8 - x).collect();
                cyclic_winding_ok(&rev, n)
            }
        }
    }
}

impl Morphism {
    pub fn new(category: CategoryId, source: usize, target: usize, images: Vec<u8>) -> Result<Self> {
        if !is_morphism(category, source, target, &images)? {
            return Err(Error::NotAMorphism(format!(
                "{category} {source}->{target} {images:?}"
            )));
        }
        Ok(Morphism { category, source, target, images })
    }

    pub(crate) fn new_unchecked(category: CategoryId, source: usize, target: usize, images: Vec<u8>) -> Self {
        debug_assert!(satisfies(category, target, &images));
        Morphism { category, source, target, images }
    }

    pub fn identity(category: CategoryId, n: usize) -> Self {
        Morphism { category, source: n, target: n, images: (1..=n as u8).collect() }
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

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = [false; 256];
        self.images.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target + 1];
        for &x in &self.images {
            seen[x as usize] = true;
        }
        seen[1..].iter().all(|&b| b)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Number of distinct values in the image.
    pub fn rank(&self) -> usize {
        self.images.iter().collect::<HashSet<_>>().len()
    }

    /// The same tuple read in another category; fails if it is not a member there.
    pub fn in_category(&self, category: CategoryId) -> Result<Self> {
        Morphism::new(category, self.source, self.target, self.images.clone())
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<Self> {
        if self.source != self.target || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0u8; self.source];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Some(Morphism::new_unchecked(self.category, self.source, self.target, inv))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{} {}->{} [{}]", self.category, self.source, self.target, parts.join(","))
    }
}

impl FromStr for Morphism {
    type Err = Error;

    /// Parses `CAT m->n [i1,...,im]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (cat, rest) = s
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("expected `CAT m->n [..]`, got `{s}`")))?;
        let category: CategoryId = cat.parse()?;
        let (m, n, images) = parse_map(rest)?;
        Morphism::new(category, m, n, images)
    }
}

/// Parses `m->n [i1,...]` or `m->n:[i1,...]` into sizes and images.
pub fn parse_map(s: &str) -> Result<(usize, usize, Vec<u8>)> {
    let bad = || Error::Parse(format!("cannot parse map `{s}`"));
    let (sizes, tuple) = s.split_once('[').ok_or_else(bad)?;
    let sizes = sizes.trim().trim_end_matches(':').trim();
    let (m, n) = sizes.split_once("->").ok_or_else(bad)?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let inner = tuple.trim().strip_suffix(']').ok_or_else(bad)?;
    let images = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|x| x.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?
    };
    Ok((m, n, images))
}

/// Which morphisms to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    All,
    Injective,
    Surjective,
}

/// `g ∘ f`, read right to left.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.target != g.source || f.category != g.category {
        return Err(Error::Mismatch(format!("cannot compose {g} after {f}")));
    }
    Ok(compose_unchecked(g, f))
}

pub(crate) fn compose_unchecked(g: &Morphism, f: &Morphism) -> Morphism {
    let images = f.images.iter().map(|&x| g.images[x as usize - 1]).collect();
    Morphism { category: g.category, source: f.source, target: g.target, images }
}

/// Composes image tuples directly: `(g ∘ f)(i) = g(f(i))`.
pub fn compose_images(g: &[u8], f: &[u8]) -> Vec<u8> {
    f.iter().map(|&x| g[x as usize - 1]).collect()
}

/// All morphisms `[m] -> [n]` of the given kind, sorted lexicographically by image tuple.
pub fn enumerate_hom(category: CategoryId, m: usize, n: usize, kind: HomKind) -> Vec<Morphism> {
    hom_set(category, m, n, kind).morphisms.clone()
}

/// A cached hom-set with an index from image tuples to positions.
#[derive(Debug)]
pub struct HomSet {
    pub morphisms: Vec<Morphism>,
    index: HashMap<Vec<u8>, usize>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn position(&self, images: &[u8]) -> Option<usize> {
        self.index.get(images).copied()
    }
}

type HomKey = (CategoryId, usize, usize, HomKind);

fn hom_cache() -> &'static RwLock<HashMap<HomKey, Arc<HomSet>>> {
    static CACHE: OnceLock<RwLock<HashMap<HomKey, Arc<HomSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized enumeration shared across threads.
pub fn hom_set(category: CategoryId, m: usize, n: usize, kind: HomKind) -> Arc<HomSet> {
    let key = (category, m, n, kind);
    if let Some(h) = hom_cache().read().expect("hom cache poisoned").get(&key) {
        return h.clone();
    }
    let morphisms = enumerate_uncached(category, m, n, kind);
    let index = morphisms.iter().enumerate().map(|(i, f)| (f.images.clone(), i)).collect();
    let set = Arc::new(HomSet { morphisms, index });
    hom_cache().write().expect("hom cache poisoned").entry(key).or_insert(set).clone()
}

fn enumerate_uncached(category: CategoryId, m: usize, n: usize, kind: HomKind) -> Vec<Morphism> {
    if m == 0 || n == 0 {
        return Vec::new();
    }
    match kind {
        HomKind::Injective if m > n => return Vec::new(),
        HomKind::Surjective if m < n => return Vec::new(),
        _ => {}
    }
    let mut out = Vec::new();
    let mut cur = vec![1u8; m];
    loop {
        let keep = match kind {
            HomKind::All => true,
            HomKind::Injective => distinct(&cur),
            HomKind::Surjective => covers(&cur, n),
        };
        if keep && satisfies(category, n, &cur) {
            out.push(Morphism { category, source: m, target: n, images: cur.clone() });
        }
        // odometer, last coordinate fastest, gives lexicographic order
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (cur[k] as usize) < n {
                cur[k] += 1;
                for x in cur.iter_mut().skip(k + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

fn distinct(v: &[u8]) -> bool {
    let mut seen = [false; 256];
    v.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

fn covers(v: &[u8], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    for &x in v {
        seen[x as usize] = true;
    }
    seen[1..].iter().all(|&b| b)
}

/// The face `d_i : [n-1] -> [n]` skipping `i`.
pub fn face_map(category: CategoryId, n: usize, i: usize) -> Result<Morphism> {
    if n < 2 || i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("face d_{i} into [{n}]")));
    }
    let images = (1..n).map(|j| if j < i { j as u8 } else { (j + 1) as u8 }).collect();
    Ok(Morphism::new_unchecked(category, n - 1, n, images))
}

/// The degeneracy `s_i : [n] -> [n-1]` identifying `i` and `i+1`.
pub fn degeneracy_map(category: CategoryId, n: usize, i: usize) -> Result<Morphism> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!("degeneracy s_{i} out of [{n}]")));
    }
    let images = (1..=n).map(|j| if j <= i { j as u8 } else { (j - 1) as u8 }).collect();
    Ok(Morphism::new_unchecked(category, n, n - 1, images))
}

/// The cyclic degeneracy `[n] -> [n-1]` identifying `n` with `1`; equals `s_1` at `n = 2`.
pub fn cyclic_degeneracy(category: CategoryId, n: usize) -> Result<Morphism> {
    if !category.is_cyclic() {
        return Err(Error::Unsupported(format!("cyclic degeneracy in {category}")));
    }
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("cyclic degeneracy out of [{n}]")));
    }
    let images = (1..=n).map(|j| if j < n { j as u8 } else { 1 }).collect();
    Ok(Morphism::new_unchecked(category, n, n - 1, images))
}

/// `f = injective ∘ surjective` through `[middle]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub surjective_part: Morphism,
    pub injective_part: Morphism,
    pub middle_size: usize,
}

/// Canonical epi-mono factorization: fibers are labeled by first occurrence, and if
/// that pair leaves the category the lexicographically least relabeling by `G_l` is used.
pub fn factorize(f: &Morphism) -> Result<Factorization> {
    let mut label: HashMap<u8, u8> = HashMap::new();
    let mut inj = Vec::new();
    let surj: Vec<u8> = f
        .images
        .iter()
        .map(|&x| {
            let next = label.len() as u8 + 1;
            *label.entry(x).or_insert_with(|| {
                inj.push(x);
                next
            })
        })
        .collect();
    let l = inj.len();
    let cat = f.category;
    if satisfies(cat, l, &surj) && satisfies(cat, f.target, &inj) {
        return Ok(Factorization {
            surjective_part: Morphism::new_unchecked(cat, f.source, l, surj),
            injective_part: Morphism::new_unchecked(cat, l, f.target, inj),
            middle_size: l,
        });
    }
    let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
    for perm in permutations(l) {
        // relabel by perm: surj' = perm ∘ surj, inj' = inj ∘ perm^{-1}
        let s2 = compose_images(&perm, &surj);
        let mut inv = vec![0u8; l];
        for (i, &x) in perm.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        let i2 = compose_images(&inj, &inv);
        if satisfies(cat, l, &s2) && satisfies(cat, f.target, &i2) {
            let cand = (s2, i2);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (s2, i2) = best.ok_or_else(|| Error::Internal(format!("no factorization of {f}")))?;
    Ok(Factorization {
        surjective_part: Morphism::new_unchecked(cat, f.source, l, s2),
        injective_part: Morphism::new_unchecked(cat, l, f.target, i2),
        middle_size: l,
    })
}

/// All permutations of `1..=n` as image tuples, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8 + 1);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The automorphism group `G_n` of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub category: CategoryId,
    pub n: usize,
    pub elements: Vec<Morphism>,
    pub generators: Vec<Morphism>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, g: &Morphism) -> Option<usize> {
        self.elements.iter().position(|x| x == g)
    }

    pub fn identity_index(&self) -> usize {
        self.elements.iter().position(|g| g.is_identity()).expect("group contains identity")
    }
}

/// Invertible endomorphisms of `[n]`, with a greedy generating set.
pub fn automorphism_group(category: CategoryId, n: usize) -> AutomorphismGroup {
    let elements: Vec<Morphism> = hom_set(category, n, n, HomKind::Injective).morphisms.clone();
    let mut generators = Vec::new();
    let mut span: HashSet<Vec<u8>> = HashSet::new();
    span.insert((1..=n as u8).collect());
    for g in &elements {
        if span.contains(&g.images) {
            continue;
        }
        generators.push(g.clone());
        span = closure(&generators, n);
    }
    AutomorphismGroup { category, n, elements, generators }
}

fn closure(generators: &[Morphism], n: usize) -> HashSet<Vec<u8>> {
    let id: Vec<u8> = (1..=n as u8).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = compose_images(&g.images, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The group order listed for each category: 1, n, 2, 2n, n!.
pub fn expected_group_order(category: CategoryId, n: usize) -> Option<usize> {
    match category {
        CategoryId::OA => Some(1),
        CategoryId::CA => Some(n),
        CategoryId::BA if n >= 2 => Some(2),
        CategoryId::SA if n >= 3 => Some(2 * n),
        CategoryId::FA => Some((1..=n).product()),
        _ if n == 1 => Some(1),
        _ => None,
    }
}

/// Every injection `[m] -> [n]` admits a surjective retraction inside the category.
pub fn check_retraction_property(category: CategoryId, m: usize, n: usize) -> bool {
    if m > n {
        return false;
    }
    let surj = hom_set(category, n, m, HomKind::Surjective);
    let id: Vec<u8> = (1..=m as u8).collect();
    hom_set(category, m, n, HomKind::Injective)
        .morphisms
        .iter()
        .all(|f| surj.morphisms.iter().any(|p| compose_images(&p.images, &f.images) == id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    #[test]
    fn membership_examples() {
        assert!(is_morphism(OA, 2, 3, &[1, 3]).unwrap());
        assert!(!is_morphism(CA, 4, 2, &[1, 2, 1, 2]).unwrap());
        assert!(is_morphism(CA, 3, 3, &[1, 1, 2]).unwrap());
        assert!(is_morphism(BA, 3, 3, &[3, 2, 1]).unwrap());
        assert!(is_morphism(OA, 0, 3, &[]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_hom(OA, 2, 3, HomKind::All).len(), 6);
        assert_eq!(enumerate_hom(CA, 3, 3, HomKind::All).len(), 24);
        assert_eq!(enumerate_hom(FA, 2, 2, HomKind::All).len(), 4);
        assert_eq!(enumerate_hom(SA, 2, 4, HomKind::Injective).len(), 12);
        assert!(enumerate_hom(FA, 3, 2, HomKind::Injective).is_empty());
    }

    #[test]
    fn enumeration_is_sorted() {
        let homs = enumerate_hom(SA, 3, 4, HomKind::All);
        assert!(homs.windows(2).all(|w| w[0].images < w[1].images));
    }

    #[test]
    fn simplicial_maps() {
        assert_eq!(face_map(OA, 2, 1).unwrap().images(), &[2]);
        assert_eq!(degeneracy_map(OA, 3, 2).unwrap().images(), &[1, 2, 2]);
        assert_eq!(cyclic_degeneracy(CA, 3).unwrap().images(), &[1, 2, 1]);
        assert_eq!(cyclic_degeneracy(CA, 2).unwrap(), degeneracy_map(CA, 2, 1).unwrap());
        assert!(face_map(OA, 3, 4).is_err());
        assert!(cyclic_degeneracy(OA, 3).is_err());
    }

    #[test]
    fn composition_examples() {
        let s1 = degeneracy_map(OA, 2, 1).unwrap();
        let d1 = face_map(OA, 2, 1).unwrap();
        assert!(compose(&s1, &d1).unwrap().is_identity());
        let g = Morphism::new(FA, 2, 3, vec![2, 3]).unwrap();
        let f = Morphism::new(FA, 2, 2, vec![1, 1]).unwrap();
        assert_eq!(compose(&g, &f).unwrap().images(), &[2, 2]);
        assert!(compose(&f, &g).is_err());
    }

    #[test]
    fn factorization_example() {
        let f = Morphism::new(FA, 3, 3, vec![2, 2, 3]).unwrap();
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.surjective_part.images(), &[1, 1, 2]);
        assert_eq!(fac.injective_part.images(), &[2, 3]);
        assert_eq!(fac.middle_size, 2);
    }

    #[test]
    fn group_examples() {
        assert_eq!(automorphism_group(CA, 4).order(), 4);
        assert_eq!(automorphism_group(SA, 3).order(), 6);
        assert_eq!(automorphism_group(OA, 5).order(), 1);
        assert_eq!(automorphism_group(FA, 4).order(), 24);
    }

    #[test]
    fn retraction_examples() {
        assert!(check_retraction_property(FA, 2, 4));
        assert!(check_retraction_property(OA, 2, 4));
        assert!(check_retraction_property(CA, 3, 5));
    }

    #[test]
    fn text_round_trip() {
        let f: Morphism = "CA 3->2 [1,2,1]".parse().unwrap();
        assert_eq!(f.to_string(), "CA 3->2 [1,2,1]");
        assert!("OA 2->2 [2,1]".parse::<Morphism>().is_err());
    }
}
