//! Exact dense linear algebra over a prime field `F_p`.
//!
//! Vectors are plain `Vec<u32>` of residues. Matrices act on column vectors.
//! Every basis-producing routine returns its result in a fixed order so that
//! downstream constructions are reproducible bit for bit.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Characteristic of a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldChar(u32);

impl FieldChar {
    pub const DEFAULT: u32 = 101;

    /// Checks primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(Error::Input(format!("field characteristic {p} out of range [2, 2^31)")));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::Input(format!("field characteristic {p} is not prime")));
            }
            d += 1;
        }
        Ok(FieldChar(p as u32))
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        let p = self.0 as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.0 as u64 - 2)
    }
}

/// `y += c * x`, entrywise mod p.
#[inline]
pub fn axpy(f: FieldChar, y: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    let p = f.p() as u64;
    let c = c as u64;
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = ((*yi as u64 + c * xi as u64) % p) as u32;
        }
    }
}

pub fn scale_vec(f: FieldChar, v: &mut [u32], c: u32) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

pub fn dot(f: FieldChar, a: &[u32], b: &[u32]) -> u32 {
    let p = f.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    f: FieldChar,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fmt, "FpMatrix<{}>[", self.f.p())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(fmt, "; ")?;
            }
            write!(fmt, "{:?}", self.row(r))?;
        }
        write!(fmt, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FpMatrix {
    pub fn zeros(f: FieldChar, rows: usize, cols: usize) -> Self {
        FpMatrix { f, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(f: FieldChar, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from residues already in `[0, p)`.
    pub fn from_vec(f: FieldChar, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        debug_assert!(data.iter().all(|&x| x < f.p()));
        FpMatrix { f, rows, cols, data }
    }

    /// Builds from arbitrary integers, reducing mod p.
    pub fn from_rows_i64(f: FieldChar, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| f.reduce(x)));
        }
        FpMatrix { f, rows: r, cols: c, data }
    }

    pub fn from_row_vecs(f: FieldChar, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend_from_slice(row);
        }
        FpMatrix { f, rows: rows.len(), cols, data }
    }

    pub fn from_col_vecs(f: FieldChar, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> FieldChar {
        self.f
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn col_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.f.p() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        // Accumulate in u64 and reduce periodically to avoid overflow.
        let limit = u64::MAX / ((p - 1) * (p - 1)).max(1) - 1;
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b as u64;
                }
                pending += 1;
                if pending >= limit {
                    for o in orow.iter_mut() {
                        *o %= p;
                    }
                    pending = 0;
                }
            }
        }
        FpMatrix {
            f: self.f,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| (x % p) as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.f, self.row(i), v)).collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.f;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FpMatrix { f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.f;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FpMatrix { f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.f;
        FpMatrix { f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(self.f, &mut self.data, c, &other.data);
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix { f: self.f, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut m = Self::zeros(self.f, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    /// Contiguous block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> FpMatrix {
        let mut m = Self::zeros(self.f, nr, nc);
        for i in 0..nr {
            m.row_mut(i).copy_from_slice(&self.row(r0 + i)[c0..c0 + nc]);
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        for i in 0..b.rows {
            let cols = self.cols;
            self.data[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols].copy_from_slice(b.row(i));
        }
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(f: FieldChar, rows: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(f, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            m.set_block(0, c0, b);
            c0 += b.cols;
        }
        m
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(f: FieldChar, cols: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FpMatrix { f, rows, cols, data }
    }

    pub fn block_diag(f: FieldChar, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row-echelon form with leftmost pivots, topmost rows first.
    pub fn rref(&self) -> Rref {
        let f = self.f;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            scale_vec(f, m.row_mut(r), inv);
            let prow = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let x = m.get(i, c);
                    if x != 0 {
                        axpy(f, m.row_mut(i), f.neg(x), &prow);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of `{v : self * v = 0}`, one per free column in
    /// ascending order; the basis vector for free column `j` has a 1 there.
    pub fn kernel_basis(&self) -> FpMatrix {
        let Rref { mat, pivots, .. } = self.rref();
        let f = self.f;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(f, free.len(), self.cols);
        for (t, &j) in free.iter().enumerate() {
            k.set(t, j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(t, pc, f.neg(mat.get(r, j)));
            }
        }
        k
    }

    /// Canonical particular solution of `self * x = b` with free variables 0.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "solve: right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let bm = Self::from_col_vecs(self.f, self.rows, &[b.to_vec()]);
        Ok(self.solve_matrix(&bm)?.map(|x| x.col(0)))
    }

    /// Solves `self * X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        if b.rows != self.rows {
            return Err(Error::Dimension(format!(
                "solve: right-hand side has {} rows but matrix has {}",
                b.rows, self.rows
            )));
        }
        let aug = Self::hstack(self.f, self.rows, &[self, b]);
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, mat.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn image_basis(&self) -> FpMatrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    pub fn invert(&self) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("invert: {}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Self::hstack(self.f, n, &[self, &Self::identity(self.f, n)]);
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(mat.block(0, n, n, n))
    }

    /// Matrix of the quotient map `F_p^rows -> F_p^rows / colspace(self)`,
    /// coordinatised by the complement spanned by the non-pivot coordinates
    /// of `rref(self^T)`. Returns a `(rows - rank) x rows` matrix.
    pub fn cokernel_projection(&self) -> FpMatrix {
        let f = self.f;
        let Rref { mat, pivots, .. } = self.transpose().rref();
        let mut is_pivot = vec![false; self.rows];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let comp: Vec<usize> = (0..self.rows).filter(|&c| !is_pivot[c]).collect();
        let mut q = Self::zeros(f, comp.len(), self.rows);
        for (t, &j) in comp.iter().enumerate() {
            q.set(t, j, 1);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            for (t, &j) in comp.iter().enumerate() {
                q.set(t, pc, f.neg(mat.get(r, j)));
            }
        }
        q
    }

    /// Coordinates of the cokernel complement inside the ambient space
    /// (the non-pivot coordinates used by [`Self::cokernel_projection`]).
    pub fn cokernel_complement(&self) -> Vec<usize> {
        let pivots = self.transpose().rref().pivots;
        let mut is_pivot = vec![false; self.rows];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.rows).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Used for large homogeneous systems whose equations are generated lazily:
/// the stored rows never exceed the number of unknowns.
#[derive(Clone, Debug)]
pub struct RowSpace {
    f: FieldChar,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
}

impl RowSpace {
    pub fn new(f: FieldChar, cols: usize) -> Self {
        RowSpace { f, cols, rows: Vec::new(), pivots: Vec::new(), pivot_of_col: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [u32]) {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let x = v[pc];
            if x != 0 {
                axpy(self.f, v, self.f.neg(x), r);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else { return false };
        let inv = self.f.inv(w[pc]);
        scale_vec(self.f, &mut w, inv);
        for r in self.rows.iter_mut() {
            let x = r[pc];
            if x != 0 {
                axpy(self.f, r, self.f.neg(x), &w);
            }
        }
        self.pivot_of_col[pc] = Some(self.rows.len());
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Canonical reduced echelon matrix (rows sorted by pivot column).
    pub fn to_rref(&self) -> FpMatrix {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows: Vec<Vec<u32>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        FpMatrix::from_row_vecs(self.f, self.cols, &rows)
    }

    /// Null space of the stored equations, same convention as
    /// [`FpMatrix::kernel_basis`].
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.f;
        let free: Vec<usize> = (0..self.cols).filter(|&c| self.pivot_of_col[c].is_none()).collect();
        let mut k = FpMatrix::zeros(f, free.len(), self.cols);
        for (t, &j) in free.iter().enumerate() {
            k.set(t, j, 1);
            for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                k.set(t, pc, f.neg(r[j]));
            }
        }
        k
    }
}

/// Extracts coordinates with respect to a fixed list of independent vectors.
///
/// Given basis rows `b_1..b_k` of length `n`, picks `k` coordinate positions on
/// which they are independent; coordinates of a vector in their span are then
/// read off by one small matrix-vector product.
#[derive(Clone, Debug)]
pub struct Coordinates {
    positions: Vec<usize>,
    inverse: FpMatrix,
    basis: FpMatrix,
}

impl Coordinates {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &FpMatrix) -> Result<Self> {
        let f = basis.field();
        let positions = basis.rref().pivots;
        if positions.len() != basis.rows() {
            return Err(Error::Dimension("coordinate basis is linearly dependent".into()));
        }
        let inverse = if positions.is_empty() {
            FpMatrix::zeros(f, 0, 0)
        } else {
            basis.select_cols(&positions).invert()?
        };
        Ok(Coordinates { positions, inverse, basis: basis.clone() })
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    /// Coordinates of `v`, assuming `v` lies in the span (not checked).
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let f = self.basis.field();
        let sel: Vec<u32> = self.positions.iter().map(|&i| v[i]).collect();
        // v restricted = c^T * B_sel, so c = (B_sel^T)^{-1} v_sel.
        (0..self.dim()).map(|j| (0..self.dim()).fold(0, |acc, i| f.add(acc, f.mul(sel[i], self.inverse.get(i, j))))).collect()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(v);
        let f = self.basis.field();
        let mut back = vec![0u32; v.len()];
        for (i, &ci) in c.iter().enumerate() {
            axpy(f, &mut back, ci, self.basis.row(i));
        }
        (back == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldChar {
        FieldChar::new(5).unwrap()
    }

    #[test]
    fn rejects_composite_and_out_of_range() {
        assert!(FieldChar::new(1).is_err());
        assert!(FieldChar::new(9).is_err());
        assert!(FieldChar::new(1 << 31).is_err());
        assert_eq!(FieldChar::new(2147483647).unwrap().p(), 2147483647);
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let m = FpMatrix::from_rows_i64(f5(), &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.mat, FpMatrix::from_rows_i64(f5(), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_trivial_cases() {
        let z = FpMatrix::zeros(f5(), 2, 2);
        let r = z.rref();
        assert_eq!((r.mat, r.pivots, r.rank), (z, vec![], 0));
        let i = FpMatrix::identity(f5(), 3);
        let r = i.rref();
        assert_eq!((r.mat, r.pivots, r.rank), (i, vec![0, 1, 2], 3));
    }

    #[test]
    fn kernel_cases() {
        let f2 = FieldChar::new(2).unwrap();
        let k = FpMatrix::from_rows_i64(f2, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, FpMatrix::from_rows_i64(f2, &[vec![1, 1]]));
        assert_eq!(FpMatrix::identity(f5(), 3).kernel_basis().rows(), 0);
        assert_eq!(FpMatrix::zeros(f5(), 2, 3).kernel_basis(), FpMatrix::identity(f5(), 3));
    }

    #[test]
    fn solve_cases() {
        let m = FpMatrix::from_rows_i64(f5(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.solve(&[1, 2]).unwrap(), Some(vec![1, 0]));
        assert_eq!(m.solve(&[1, 3]).unwrap(), None);
        assert_eq!(FpMatrix::identity(f5(), 2).solve(&[3, 4]).unwrap(), Some(vec![3, 4]));
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn invert_and_singular() {
        let m = FpMatrix::from_rows_i64(f5(), &[vec![1, 2], vec![3, 4]]);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(f5(), 2));
        let s = FpMatrix::from_rows_i64(f5(), &[vec![1, 2], vec![2, 4]]);
        assert!(matches!(s.invert(), Err(Error::Singular)));
    }

    #[test]
    fn cokernel_projection_kills_image() {
        let m = FpMatrix::from_rows_i64(f5(), &[vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 3]]);
        let q = m.cokernel_projection();
        assert_eq!(q.rows(), 2);
        assert!(q.mul(&m).is_zero());
        assert_eq!(q.rank(), 2);
        let comp = m.cokernel_complement();
        assert_eq!(q.select_cols(&comp), FpMatrix::identity(f5(), 2));
    }

    #[test]
    fn row_space_matches_batch_kernel() {
        let m = FpMatrix::from_rows_i64(f5(), &[vec![1, 2, 3, 4], vec![2, 4, 1, 1], vec![3, 1, 4, 0]]);
        let mut rs = RowSpace::new(f5(), 4);
        for r in m.row_vecs() {
            rs.insert(&r);
        }
        assert_eq!(rs.to_rref(), m.rref().mat.select_rows(&(0..m.rank()).collect::<Vec<_>>()));
        assert_eq!(rs.kernel_basis(), m.kernel_basis());
    }

    #[test]
    fn coordinates_round_trip() {
        let b = FpMatrix::from_rows_i64(f5(), &[vec![0, 1, 2], vec![1, 1, 0]]);
        let c = Coordinates::new(&b).unwrap();
        let v = vec![3, f5().add(3, 2), 4]; // 2*b0 + 3*b1
        assert_eq!(c.coords(&v), Some(vec![2, 3]));
        assert_eq!(c.coords(&[1, 0, 0]), None);
    }
}
