use crate::fp::Prime;

use super::matrix::FpMatrix;

/// Incremental semi-echelon basis.
///
/// Row `i` has its leading entry 1 at `pivots[i]` and is zero at the pivots of
/// all earlier rows, so reducing a vector by the rows in insertion order
/// clears every pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    p: Prime,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(p: Prime, dim: usize) -> Self {
        EchelonBuilder {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place; returns the first nonzero position left, if any.
    pub fn reduce_in_place(&self, v: &mut [u32]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                axpy(p, v, p.neg(f), row, c);
            }
        }
        v.iter().position(|&x| x != 0)
    }

    /// Reduction that also reports the coefficients used: `v = rem + Σ coef_i row_i`.
    pub fn reduce_with_coords(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut rem = v.to_vec();
        let mut coef = vec![0u32; self.rows.len()];
        for (i, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = rem[c];
            if f != 0 {
                coef[i] = f;
                axpy(p, &mut rem, p.neg(f), row, c);
            }
        }
        (rem, coef)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w).is_none()
    }

    /// Adds `v` if it is independent of the rows so far; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match ambient dimension"
        );
        if self.is_full() {
            return false;
        }
        match self.reduce_in_place(&mut v) {
            None => false,
            Some(c) => {
                let inv = self.p.inv(v[c]);
                if inv != 1 {
                    for x in v[c..].iter_mut() {
                        *x = self.p.mul(*x, inv);
                    }
                }
                self.rows.push(v);
                self.pivots.push(c);
                true
            }
        }
    }

    /// Inserts a sparse vector given as `(index, value)` pairs.
    pub fn insert_sparse(&mut self, entries: impl IntoIterator<Item = (usize, u32)>) -> bool {
        let mut v = vec![0u32; self.dim];
        for (i, x) in entries {
            v[i] = self.p.add(v[i], x);
        }
        self.insert(v)
    }

    /// Back-substitutes to the canonical reduced row-echelon form.
    pub fn into_rref(self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let dim = self.dim;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u32>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        // Clear above each pivot, last pivot first.
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let (upper, lower) = rows.split_at_mut(k);
            let pr = &lower[0];
            for r in upper.iter_mut() {
                let f = r[c];
                if f != 0 {
                    axpy(p, r, p.neg(f), pr, c);
                }
            }
        }
        let m = FpMatrix::from_residue_rows(p, dim, rows).expect("consistent widths");
        (m, pivots)
    }
}

/// `v[start..] += f * row[start..]`.
#[inline]
pub(crate) fn axpy(p: Prime, v: &mut [u32], f: u32, row: &[u32], start: usize) {
    if p.get() == 2 {
        for (a, &b) in v[start..].iter_mut().zip(&row[start..]) {
            *a ^= b;
        }
    } else {
        let m = p.get() as u64;
        let f = f as u64;
        for (a, &b) in v[start..].iter_mut().zip(&row[start..]) {
            if b != 0 {
                *a = ((*a as u64 + f * b as u64) % m) as u32;
            }
        }
    }
}

/// Bit-packed semi-echelon basis over `F_2`.
#[derive(Clone, Debug)]
pub struct BitEchelon {
    dim: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl BitEchelon {
    pub fn new(dim: usize) -> Self {
        BitEchelon {
            dim,
            words: dim.div_ceil(64),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn reduce_in_place(&self, v: &mut [u64]) -> Option<usize> {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if bit(v, c) {
                let w0 = c / 64;
                for (a, &b) in v[w0..].iter_mut().zip(&row[w0..]) {
                    *a ^= b;
                }
            }
        }
        first_bit(v)
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.words);
        match self.reduce_in_place(&mut v) {
            None => false,
            Some(c) if c >= self.dim => false,
            Some(c) => {
                self.rows.push(v);
                self.pivots.push(c);
                true
            }
        }
    }

    /// Canonical reduced form, rows sorted by pivot.
    pub fn into_rref(self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u64>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let (upper, lower) = rows.split_at_mut(k);
            let pr = &lower[0];
            for r in upper.iter_mut() {
                if bit(r, c) {
                    let w0 = c / 64;
                    for (a, &b) in r[w0..].iter_mut().zip(&pr[w0..]) {
                        *a ^= b;
                    }
                }
            }
        }
        (rows, pivots)
    }
}

#[inline]
pub(crate) fn bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn flip_bit(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}
