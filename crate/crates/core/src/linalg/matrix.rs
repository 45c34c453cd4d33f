use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Prime;

use super::echelon::EchelonBuilder;

/// Dense matrix over `F_p`, row-major. Matrices act on the right of row
/// vectors throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from reduced residues laid out row-major.
    pub fn from_vec(p: Prime, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|v| p.reduce_u64(v as u64)).collect();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    /// Builds from signed integer rows, reducing mod `p`. All rows must
    /// share one length; an empty row list needs `cols` to be given.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&v| p.reduce_i64(v)));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Stacks already-reduced rows.
    pub fn from_residue_rows(p: Prime, cols: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.into_iter().map(|v| p.reduce_u64(v as u64)));
        }
        Ok(FpMatrix {
            p,
            rows: n,
            cols,
            data,
        })
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
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
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = self.p.reduce_u64(v as u64);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    fn check_same_field(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::AmbientMismatch(format!(
                "characteristics {} and {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            mul_row_into(self.p, self.row(i), other, dst);
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let mut dst = vec![0; self.cols];
        mul_row_into(self.p, v, self, &mut dst);
        dst
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.zip_with(other, |p, a, b| p.add(a, b))
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.zip_with(other, |p, a, b| p.sub(a, b))
    }

    fn zip_with(&self, other: &FpMatrix, f: impl Fn(Prime, u32, u32) -> u32) -> Result<FpMatrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(self.p, a, b))
            .collect();
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let c = self.p.reduce_u64(c as u64);
        let data = self.data.iter().map(|&a| self.p.mul(a, c)).collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// The columns listed, in order.
    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.p, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Canonical reduced row-echelon form (zero rows dropped) and pivots.
    pub fn rref_with_pivots(&self) -> (FpMatrix, Vec<usize>) {
        let mut eb = EchelonBuilder::new(self.p, self.cols);
        for r in self.row_iter() {
            eb.insert(r.to_vec());
        }
        eb.into_rref()
    }

    pub fn rank(&self) -> usize {
        let mut eb = EchelonBuilder::new(self.p, self.cols);
        for r in self.row_iter() {
            eb.insert(r.to_vec());
        }
        eb.rank()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(p, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (r, piv) = aug.rref_with_pivots();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(p, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&r.row(i)[n..]);
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis (in RREF) of the left kernel `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> FpMatrix {
        let t = self.transpose();
        t.right_kernel()
    }

    /// Basis (as rows, in RREF) of `{x : self * x^T = 0}`.
    pub fn right_kernel(&self) -> FpMatrix {
        let p = self.p;
        let (r, piv) = self.rref_with_pivots();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let mut rows = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &c) in piv.iter().enumerate() {
                v[c] = p.neg(r.get(i, free));
            }
            rows.push(v);
        }
        let m = FpMatrix::from_residue_rows(p, n, rows).expect("consistent widths");
        m.rref_with_pivots().0
    }

    /// Solves `x * self = b` for a row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut sys = super::system::LinearSystem::new(self.p, self.rows);
        for j in 0..self.cols {
            let eq = (0..self.rows)
                .filter_map(|i| {
                    let v = self.get(i, j);
                    (v != 0).then_some((i, v))
                })
                .collect();
            sys.push(eq, b[j]);
        }
        sys.solve().solution().map(|s| s.particular.clone())
    }
}

fn mul_row_into(p: Prime, v: &[u32], m: &FpMatrix, dst: &mut [u32]) {
    let cols = m.cols;
    if p.get() == 2 {
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                for (d, &b) in dst.iter_mut().zip(&m.data[k * cols..(k + 1) * cols]) {
                    *d ^= b;
                }
            }
        }
        return;
    }
    // Accumulate in u64 and reduce once; p < 2^16 keeps 2^32 products safe.
    let mut acc = vec![0u64; cols];
    let limit = u64::MAX - (p.get() as u64 - 1) * (p.get() as u64 - 1);
    for (k, &a) in v.iter().enumerate() {
        if a != 0 {
            for (s, &b) in acc.iter_mut().zip(&m.data[k * cols..(k + 1) * cols]) {
                *s += a as u64 * b as u64;
                if *s >= limit {
                    *s %= p.get() as u64;
                }
            }
        }
    }
    for (d, s) in dst.iter_mut().zip(acc) {
        *d = p.reduce_u64(s);
    }
}

/// Canonical reduced row-echelon form and rank. The shape is preserved:
/// nonzero rows come first, padded with zero rows.
pub fn rref(m: &FpMatrix) -> (FpMatrix, usize) {
    let (r, piv) = m.rref_with_pivots();
    let mut out = FpMatrix::zeros(m.prime(), m.rows(), m.cols());
    for i in 0..r.rows() {
        out.row_mut(i).copy_from_slice(r.row(i));
    }
    (out, piv.len())
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}
