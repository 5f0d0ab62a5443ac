//! Dense matrices and sparse echelon forms over an interned [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// The scalar `s` if the matrix equals `s * I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let s = self[(0, 0)].clone();
        let ok = (0..self.rows)
            .all(|r| (0..self.cols).all(|c| if r == c { self[(r, c)] == s } else { self[(r, c)].is_zero() }));
        ok.then_some(s)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(r, c)].is_zero() {
                        acc = &acc + &(&self[(r, c)] * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Kronecker product, left factor as the slow index.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = &o[(k, l)];
                        if !b.is_zero() {
                            out[(i * o.rows + k, j * o.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + o.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..o.rows {
            for c in 0..o.cols {
                out[(self.rows + r, self.cols + c)] = o[(r, c)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else { continue };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        if !m[(row, c)].is_zero() {
                            m[(r, c)] = &m[(r, c)] - &(&f * &m[(row, c)]);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = self.field.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(out)
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    m[(r, c)] = &m[(r, c)] - &(&f * &m[(col, c)]);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// Sparse vector keyed by basis index.
pub type SparseVec = BTreeMap<u64, Scalar>;

pub fn sv_add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        add_entry(acc, *k, &(x * c));
    }
}

pub fn add_entry(acc: &mut SparseVec, k: u64, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(y) => {
            let s = &*y + x;
            if s.is_zero() {
                acc.remove(&k);
            } else {
                *y = s;
            }
        }
        None => {
            acc.insert(k, x.clone());
        }
    }
}

pub fn sv_scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

pub fn sv_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    for (k, x) in b {
        add_entry(&mut out, *k, &-x);
    }
    out
}

/// Incremental row echelon form of sparse vectors; the pivot of a row is its
/// first nonzero coordinate and rows are normalized to 1 there.
#[derive(Clone, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<u64, usize>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0u64;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let c = v[&k].clone();
            let row = &self.rows[self.pivots[&k]];
            sv_add_scaled(&mut v, row, &-c);
            cursor = k + 1;
        }
        v
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&k, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero lead");
        let r = sv_scale(&r, &inv);
        self.pivots.insert(k, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Fully reduced basis sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<(u64, usize)> = self.pivots.iter().map(|(k, i)| (*k, *i)).collect();
        order.sort();
        let mut out: Vec<SparseVec> = order.iter().map(|(_, i)| self.rows[*i].clone()).collect();
        let keys: Vec<u64> = order.iter().map(|(k, _)| *k).collect();
        for i in (0..out.len()).rev() {
            for j in 0..i {
                if let Some(c) = out[j].get(&keys[i]).cloned() {
                    let row = out[i].clone();
                    sv_add_scaled(&mut out[j], &row, &-c);
                }
            }
        }
        out
    }
}

/// Reduced basis of a subspace with coordinate extraction.
#[derive(Clone)]
pub struct ReducedBasis {
    pub vectors: Vec<SparseVec>,
    pub pivots: Vec<u64>,
}

impl ReducedBasis {
    pub fn from_echelon(e: &SparseEchelon) -> Self {
        let vectors = e.rref();
        let pivots = vectors.iter().map(|v| *v.keys().next().expect("nonzero row")).collect();
        ReducedBasis { vectors, pivots }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec, field: Field) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> =
            self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(|| field.zero())).collect();
        let mut rest = v.clone();
        for (c, b) in coords.iter().zip(&self.vectors) {
            sv_add_scaled(&mut rest, b, &-c);
        }
        rest.is_empty().then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::create(0, 1).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let f = q();
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.determinant(), q().one());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_shape() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(q(), 3);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k[(3, 0)], q().from_i64(3));
    }

    #[test]
    fn sparse_echelon() {
        let f = q();
        let mut e = SparseEchelon::new();
        let v1: SparseVec = [(0, f.from_i64(1)), (3, f.from_i64(2))].into_iter().collect();
        let v2: SparseVec = [(0, f.from_i64(2)), (3, f.from_i64(4))].into_iter().collect();
        let v3: SparseVec = [(3, f.from_i64(1)), (5, f.from_i64(1))].into_iter().collect();
        assert!(e.insert(v1.clone()));
        assert!(!e.insert(v2));
        assert!(e.insert(v3.clone()));
        let rb = ReducedBasis::from_echelon(&e);
        let mut w = sv_scale(&v1, &f.from_i64(3));
        sv_add_scaled(&mut w, &v3, &f.from_i64(-5));
        // reduced basis is e0 - 2 e5, e3 + e5
        let c = rb.coordinates(&w, f).unwrap();
        assert_eq!(c, vec![f.from_i64(3), f.from_i64(1)]);
        let outside: SparseVec = [(5, f.from_i64(1))].into_iter().collect();
        assert!(rb.coordinates(&outside, f).is_none());
    }
}
