//! Sparse exact linear algebra: vectors, echelon bases, rank, nullspace.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::scalar::Field;

/// A sparse vector stored as `(index, value)` pairs sorted by index with no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec<S> {
    entries: Vec<(usize, S)>,
}

impl<S: Field> SparseVec<S> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, S)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, S)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.clone() + v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[S]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVec { entries }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, S::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<S> {
        let mut out = vec![S::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, S)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(usize, &S)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> S {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.clone() * c.clone())).collect(),
        }
    }

    /// Returns `self + c * other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|p| p.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|p| p.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c.clone() * other.entries[b].1.clone()));
                b += 1;
            } else {
                let v = self.entries[a].1.clone() + c.clone() * other.entries[b].1.clone();
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &Self) -> S {
        let (mut a, mut b) = (0, 0);
        let mut acc = S::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = acc + self.entries[a].1.clone() * other.entries[b].1.clone();
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Rescales so the leading entry is one.
    pub fn normalized(&self) -> Self {
        match self.lead() {
            Some((_, v)) => self.scale(&v.inv()),
            None => self.clone(),
        }
    }
}

/// An echelon basis of a subspace, grown one vector at a time.
///
/// Every stored row has leading entry 1 in a column no other row leads in, and
/// no stored row has a nonzero entry in an earlier row's pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    rows: Vec<SparseVec<S>>,
    pivots: HashMap<usize, usize>,
}

impl<S: Field> Default for Echelon<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Field> Echelon<S> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    /// Reduces `v` against the stored pivots; the result has no entry in any pivot column.
    pub fn reduce(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut cur = v.clone();
        let mut pos = 0;
        while pos < cur.entries.len() {
            let (col, coef) = cur.entries[pos].clone();
            if let Some(&r) = self.pivots.get(&col) {
                cur = cur.axpy(&-coef, &self.rows[r]);
                // entries before `pos` are untouched because pivot rows start at `col`
            } else {
                pos += 1;
            }
        }
        cur
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<S>) -> bool {
        let r = self.reduce(v);
        match r.lead() {
            None => false,
            Some((col, _)) => {
                self.pivots.insert(col, self.rows.len());
                self.rows.push(r.normalized());
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// The reduced row echelon form of the span, rows sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseVec<S>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].lead().map(|p| p.0).unwrap_or(usize::MAX));
        let mut done: Vec<SparseVec<S>> = Vec::with_capacity(order.len());
        let mut done_pivots: HashMap<usize, usize> = HashMap::new();
        for &r in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let mut pos = 1;
            while pos < row.entries.len() {
                let (col, coef) = row.entries[pos].clone();
                if let Some(&k) = done_pivots.get(&col) {
                    row = row.axpy(&-coef, &done[k]);
                } else {
                    pos += 1;
                }
            }
            let lead = row.lead().map(|p| p.0).unwrap();
            done_pivots.insert(lead, done.len());
            done.push(row);
        }
        done.reverse();
        done
    }
}

/// Rank of the span of `vectors`.
pub fn rank_of<S: Field>(vectors: &[SparseVec<S>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<S>>,
}

impl<S: Field> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec<S>>) -> Self {
        debug_assert!(data.iter().all(|r| r.entries.last().is_none_or(|p| p.0 < cols)));
        SparseMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMatrix::from_rows(cols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<S>> =
            rows.iter().map(|r| r.iter().map(|&v| S::from_int(v)).collect()).collect();
        SparseMatrix::from_dense(&conv)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<S> {
        &self.data[i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        let row = &mut self.data[i];
        match row.entries.binary_search_by_key(&j, |p| p.0) {
            Ok(k) => {
                if v.is_zero() {
                    row.entries.remove(k);
                } else {
                    row.entries[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.entries.insert(k, (j, v));
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i].get(j)
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in &r.entries {
                cols[*j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: cols.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let pairs = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.dot(v)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        SparseVec { entries: pairs }
    }

    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_key(|&i| self.data[i].nnz());
        let mut e = Echelon::new();
        for i in order {
            e.insert(&self.data[i]);
            if e.rank() == self.cols {
                break;
            }
        }
        e.rank()
    }

    /// Basis of `{v : A v = 0}` in reduced row echelon form.
    pub fn nullspace_basis(&self) -> Vec<SparseVec<S>> {
        let mut e = Echelon::new();
        for r in &self.data {
            e.insert(r);
        }
        kernel_from_rref(&e.rref(), self.cols)
    }

    /// RFC-4180 CSV rendering of the dense matrix.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.data {
            let dense: Vec<String> = r.to_dense(self.cols).iter().map(|v| v.to_string()).collect();
            w.write_record(&dense).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf8 csv")
    }
}

fn kernel_from_rref<S: Field>(rref: &[SparseVec<S>], cols: usize) -> Vec<SparseVec<S>> {
    let mut is_pivot = vec![false; cols];
    for r in rref {
        is_pivot[r.lead().unwrap().0] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut pairs = vec![(free, S::one())];
        for r in rref {
            let c = r.get(free);
            if !c.is_zero() {
                pairs.push((r.lead().unwrap().0, -c));
            }
        }
        basis.push(SparseVec::from_pairs(pairs));
    }
    echelon_basis(&basis)
}

/// Reduced echelon basis of the span of `vectors`.
pub fn echelon_basis<S: Field>(vectors: &[SparseVec<S>]) -> Vec<SparseVec<S>> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rref()
}

/// Intersection of subspaces of `S^dim`, each given by a spanning list.
pub fn image_intersection<S: Field>(dim: usize, subspaces: &[Vec<SparseVec<S>>]) -> Vec<SparseVec<S>> {
    let mut constraints = Vec::new();
    for basis in subspaces {
        let m = SparseMatrix::from_rows(dim, basis.clone());
        constraints.extend(m.nullspace_basis());
    }
    SparseMatrix::from_rows(dim, constraints).nullspace_basis()
}

/// Writes a list of vectors as a dense text block, one vector per line.
pub fn format_vectors<S: Field>(vectors: &[SparseVec<S>], dim: usize) -> String {
    let mut out = String::new();
    for v in vectors {
        let dense: Vec<String> = v.to_dense(dim).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "[{}]", dense.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Q = Rational;

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::<Q>::identity(3).rank(), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(SparseMatrix::<Q>::zeros(2, 5).rank(), 0);
    }

    #[test]
    fn nullspace_of_row_of_ones() {
        let a = SparseMatrix::<Q>::from_i64(&[vec![1, 1]]);
        let ns = a.nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].to_dense(2), vec![Q::from_int(1), Q::from_int(-1)]);
    }

    #[test]
    fn rref_rows_are_reduced() {
        let a = SparseMatrix::<Q>::from_i64(&[vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]);
        let mut e = Echelon::new();
        for i in 0..3 {
            e.insert(a.row(i));
        }
        let rref = e.rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0].to_dense(3), vec![Q::from_int(1), Q::from_int(2), Q::from_int(0)]);
        assert_eq!(rref[1].to_dense(3), vec![Q::from_int(0), Q::from_int(0), Q::from_int(1)]);
    }

    #[test]
    fn intersection_of_planes() {
        let x = |v: &[i64]| SparseVec::<Q>::from_dense(&v.iter().map(|&a| Q::from_int(a)).collect::<Vec<_>>());
        let p1 = vec![x(&[1, 0, 0]), x(&[0, 1, 0])];
        let p2 = vec![x(&[0, 1, 0]), x(&[0, 0, 1])];
        let i = image_intersection(3, &[p1, p2]);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], x(&[0, 1, 0]));
    }

    #[test]
    fn csv_rendering() {
        let a = SparseMatrix::<Q>::from_i64(&[vec![1, 0], vec![0, -2]]);
        assert_eq!(a.to_csv(), "1,0\n0,-2\n");
    }
}
