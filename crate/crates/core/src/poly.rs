//! Univariate polynomials and factorization over the rationals.
//!
//! Factoring goes through a single large prime: the squarefree integer
//! polynomial is split modulo a prime exceeding twice the coefficient bound
//! for its factors, and the modular factors are recombined by trial division.

use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Field;

/// A polynomial with coefficients listed from the constant term up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Field> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![S::one()] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![S::zero(), S::one()] }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().inv();
        Poly::new(self.coeffs.iter().map(|c| c.clone() * l.clone()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                let b = o.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                a + b
            })
            .collect();
        Poly::new(c)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let linv = d.lead().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * linv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_int(i as i64))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = r0.lead().inv();
        let sc = |p: &Poly<S>| Poly::new(p.coeffs.iter().map(|c| c.clone() * l.clone()).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl<S: Field> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A monic irreducible factor together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly<BigRational>,
    pub multiplicity: usize,
}

/// Factors a nonzero rational polynomial into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients.
pub fn factor_rational(f: &Poly<BigRational>) -> Vec<Factor> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let f = f.monic();
    let mut out = Vec::new();
    for g in distinct_irreducible_factors(&f.squarefree_part()) {
        let mut m = 0;
        let mut rest = f.clone();
        loop {
            let (q, r) = rest.div_rem(&g);
            if !r.is_zero() {
                break;
            }
            m += 1;
            rest = q;
        }
        out.push(Factor { poly: g, multiplicity: m });
    }
    out.sort_by(|a, b| {
        a.poly
            .coeffs
            .len()
            .cmp(&b.poly.coeffs.len())
            .then_with(|| a.poly.coeffs.cmp(&b.poly.coeffs))
    });
    out
}

fn distinct_irreducible_factors(sqf: &Poly<BigRational>) -> Vec<Poly<BigRational>> {
    match sqf.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![sqf.monic()],
        _ => {}
    }
    let h = to_primitive_integer(sqf);
    factor_squarefree_integer(&h).iter().map(|p| from_integer(p).monic()).collect()
}

fn to_primitive_integer(f: &Poly<BigRational>) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    primitive(&ints)
}

fn from_integer(p: &[BigInt]) -> Poly<BigRational> {
    Poly::new(p.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    let sign = if p.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    if g.is_zero() {
        return p.to_vec();
    }
    p.iter().map(|c| c / &g * &sign).collect()
}

/// Exact division in Z[x]; `None` if `d` does not divide `f`.
fn int_divide(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if f.len() < d.len() {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dd];
    let l = d.last().unwrap();
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dd].div_rem(l);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn factor_squarefree_integer(h: &[BigInt]) -> Vec<Vec<BigInt>> {
    let deg = h.len() - 1;
    let norm2: BigInt = h.iter().map(|c| c * c).sum();
    let lc = h[deg].abs();
    // Mignotte: every coefficient of a factor is at most 2^deg * ||h||_2, times lc after scaling.
    let bound = (norm2.sqrt() + BigInt::one()) * (BigInt::one() << deg) * &lc;
    let mut p: BigInt = bound * 2 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        p = next_prime(&p, &mut rng);
        if (&lc % &p).is_zero() {
            p += 2;
            continue;
        }
        let hp = ModPoly::from_ints(h, &p);
        let g = hp.gcd(&hp.derivative());
        if g.degree() == 0 {
            break;
        }
        p += 2;
    }
    let hp = ModPoly::from_ints(h, &p).monic();
    let mut modular = Vec::new();
    for (d, block) in hp.distinct_degree() {
        block.equal_degree(d, &mut rng, &mut modular);
    }
    recombine(h, modular, &p)
}

fn recombine(h: &[BigInt], mut modular: Vec<ModPoly>, p: &BigInt) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut rest = h.to_vec();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), size) {
            let lc = rest.last().unwrap().clone();
            let mut cand = ModPoly::constant(&lc, p);
            for &i in &subset {
                cand = cand.mul(&modular[i]);
            }
            let lifted = primitive(&cand.symmetric_lift());
            if let Some(q) = int_divide(&rest, &lifted) {
                found.push(lifted);
                rest = primitive(&q);
                hit = Some(subset);
                break;
            }
        }
        match hit {
            Some(subset) => {
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn next_prime(start: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let mut c = start.clone();
    if c.is_even() {
        c += 1;
    }
    while !probably_prime(&c, rng) {
        c += 2;
    }
    c
}

fn probably_prime(n: &BigInt, rng: &mut ChaCha8Rng) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let mut d = nm1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for _ in 0..32 {
        let a = rng.gen_bigint_range(&two, &nm1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Polynomial over Z/p with coefficients in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModPoly {
    c: Vec<BigInt>,
    p: BigInt,
}

impl ModPoly {
    fn norm(mut c: Vec<BigInt>, p: &BigInt) -> Self {
        for x in c.iter_mut() {
            *x = x.mod_floor(p);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ModPoly { c, p: p.clone() }
    }

    fn from_ints(h: &[BigInt], p: &BigInt) -> Self {
        ModPoly::norm(h.to_vec(), p)
    }

    fn constant(v: &BigInt, p: &BigInt) -> Self {
        ModPoly::norm(vec![v.clone()], p)
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2), &self.p)
    }

    fn monic(&self) -> Self {
        let l = self.inv(self.c.last().unwrap());
        ModPoly::norm(self.c.iter().map(|x| x * &l).collect(), &self.p)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect();
        ModPoly::norm(c, &self.p)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return ModPoly { c: Vec::new(), p: self.p.clone() };
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ModPoly::norm(c, &self.p)
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (ModPoly { c: Vec::new(), p: self.p.clone() }, self.clone());
        }
        let linv = self.inv(d.c.last().unwrap());
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (&r[k + dd] * &linv).mod_floor(&self.p);
            if !c.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] = (&r[k + j] - &c * dc).mod_floor(&self.p);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (ModPoly::norm(q, &self.p), ModPoly::norm(r, &self.p))
    }

    fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect();
        ModPoly::norm(c, &self.p)
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.c.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.c.is_empty() {
            a
        } else {
            a.monic()
        }
    }

    fn powmod(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = ModPoly::constant(&BigInt::one(), &self.p);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    fn x(p: &BigInt) -> Self {
        ModPoly::norm(vec![BigInt::zero(), BigInt::one()], p)
    }

    /// Splits a monic squarefree polynomial into products of equal-degree irreducibles.
    fn distinct_degree(&self) -> Vec<(usize, ModPoly)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = ModPoly::x(&self.p);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree() > 0 {
            d += 1;
            if 2 * d as isize > f.degree() {
                out.push((f.degree() as usize, f.clone()));
                break;
            }
            h = h.powmod(&self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
        let n = self.degree() as usize;
        if n == d {
            out.push(self.monic());
            return;
        }
        let e = (self.p.pow(d as u32) - 1) / 2;
        loop {
            let a: Vec<BigInt> = (0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p)).collect();
            let a = ModPoly::norm(a, &self.p);
            if a.degree() < 1 {
                continue;
            }
            let b = a.powmod(&e, self).sub(&ModPoly::constant(&BigInt::one(), &self.p));
            let g = self.gcd(&b);
            if g.degree() > 0 && g.degree() < self.degree() {
                let other = self.div_rem(&g).0.monic();
                g.equal_degree(d, rng, out);
                other.equal_degree(d, rng, out);
                return;
            }
        }
    }

    fn symmetric_lift(&self) -> Vec<BigInt> {
        let half = &self.p >> 1;
        self.c
            .iter()
            .map(|x| if x > &half { x - &self.p } else { x.clone() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(coeffs: &[i64]) -> Poly<Rational> {
        Poly::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn division_identity() {
        let a = q(&[1, 2, 3, 4]);
        let b = q(&[1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, Poly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn factor_x4_minus_1() {
        let fs = factor_rational(&q(&[-1, 0, 0, 0, 1]));
        let polys: Vec<_> = fs.iter().map(|f| f.poly.clone()).collect();
        assert_eq!(polys, vec![q(&[-1, 1]), q(&[1, 1]), q(&[1, 0, 1])]);
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x-2)^2 (x^2-2)
        let f = q(&[-2, 1]).pow(2).mul(&q(&[-2, 0, 1]));
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], Factor { poly: q(&[-2, 1]), multiplicity: 2 });
        assert_eq!(fs[1], Factor { poly: q(&[-2, 0, 1]), multiplicity: 1 });
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + 1 is irreducible over Q but splits modulo every prime
        let fs = factor_rational(&q(&[1, 0, 0, 0, 1]));
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].poly.degree(), Some(4));
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 has six cyclotomic factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fs = factor_rational(&q(&c));
        assert_eq!(fs.len(), 6);
        let prod = fs.iter().fold(Poly::one(), |acc, f| acc.mul(&f.poly));
        assert_eq!(prod, q(&c));
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x^2 + 1/3)
        let half = Rational::from_int(1) / Rational::from_int(2);
        let third = Rational::from_int(1) / Rational::from_int(3);
        let a = Poly::new(vec![-half.clone(), Rational::from_int(1)]);
        let b = Poly::new(vec![third, Rational::from_int(0), Rational::from_int(1)]);
        let fs = factor_rational(&a.mul(&b));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].poly, a);
        assert_eq!(fs[1].poly, b);
    }
}
