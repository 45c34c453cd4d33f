use crate::error::{Error, Result};
use crate::fp::Prime;

use super::echelon::EchelonBuilder;
use super::matrix::FpMatrix;

/// A subspace of `F_p^d`, stored as its canonical reduced row-echelon basis.
/// Two subspaces are equal as sets exactly when their bases are identical,
/// so the derived equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, ambient_dim: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(p, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, ambient_dim: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(p, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of the rows of `m`.
    pub fn row_space(m: &FpMatrix) -> Self {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace { basis, pivots }
    }

    /// The span of the given vectors (entries reduced mod `p`).
    pub fn span<I, V>(p: Prime, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut eb = EchelonBuilder::new(p, ambient_dim);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient_dim {
                return Err(Error::AmbientMismatch(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
            if eb.is_full() {
                continue;
            }
            eb.insert(v.iter().map(|&x| p.reduce_u64(x as u64)).collect());
        }
        Ok(Self::from_builder(eb))
    }

    /// Trusts the caller that `basis` is in canonical form with these pivots.
    pub(crate) fn from_rref_unchecked(basis: FpMatrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { basis, pivots }
    }

    pub fn from_builder(eb: EchelonBuilder) -> Self {
        let (basis, pivots) = eb.into_rref();
        Subspace { basis, pivots }
    }

    /// Wraps a matrix already known to be in reduced row-echelon form with no
    /// zero rows; the form is re-verified.
    pub fn from_rref(basis: FpMatrix) -> Result<Self> {
        let s = Self::row_space(&basis);
        if s.basis != basis {
            return Err(Error::InvalidInput(
                "matrix is not in canonical echelon form".into(),
            ));
        }
        Ok(s)
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.basis.row_iter()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.prime() != other.prime() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.prime(),
                self.ambient_dim(),
                other.prime(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.prime();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                super::echelon::axpy(p, &mut w, p.neg(f), self.basis.row(i), 0);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient_dim() && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    /// In reduced echelon form these are just the entries at the pivots.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&j| v[j]).collect();
        let p = self.prime();
        let mut recon = vec![0u32; self.ambient_dim()];
        for (i, &f) in c.iter().enumerate() {
            if f != 0 {
                super::echelon::axpy(p, &mut recon, f, self.basis.row(i), 0);
            }
        }
        (recon == v).then_some(c)
    }

    /// Coordinates at the pivots without a membership check.
    pub fn pivot_coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&j| v[j]).collect()
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        self.basis.apply_row(coords)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.check_compatible(other).is_ok() && other.rows().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::span(
            self.prime(),
            self.ambient_dim(),
            self.rows().chain(other.rows()),
        )
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let p = self.prime();
        let d = self.ambient_dim();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(p, d));
        }
        let mut eb = EchelonBuilder::new(p, 2 * d);
        for r in self.rows() {
            let mut v = r.to_vec();
            v.extend_from_slice(r);
            eb.insert(v);
        }
        for r in other.rows() {
            let mut v = r.to_vec();
            v.extend(std::iter::repeat_n(0, d));
            eb.insert(v);
        }
        let meet: Vec<Vec<u32>> = eb
            .rows()
            .iter()
            .zip(eb.pivots())
            .filter(|(_, &c)| c >= d)
            .map(|(r, _)| r[d..].to_vec())
            .collect();
        Subspace::span(p, d, meet)
    }

    /// Image under a linear map given on vectors.
    pub fn map<F>(&self, target_dim: usize, f: F) -> Result<Subspace>
    where
        F: Fn(&[u32]) -> Vec<u32>,
    {
        Subspace::span(self.prime(), target_dim, self.rows().map(f))
    }

    /// Matrix of the restriction of a linear map that preserves the subspace,
    /// in echelon-basis coordinates. Errors if some image leaves the subspace.
    pub fn induced_matrix<F>(&self, f: F) -> Result<FpMatrix>
    where
        F: Fn(&[u32]) -> Vec<u32>,
    {
        let k = self.dim();
        let mut data = Vec::with_capacity(k * k);
        for (i, r) in self.rows().enumerate() {
            let img = f(r);
            let c = self.coords(&img).ok_or_else(|| {
                Error::Precondition(format!("image of basis vector {i} leaves the subspace"))
            })?;
            data.extend(c);
        }
        FpMatrix::from_vec(self.prime(), k, k, data)
    }

    /// Whether every listed map sends the subspace into itself.
    pub fn is_invariant<F>(&self, f: F) -> bool
    where
        F: Fn(&[u32]) -> Vec<u32>,
    {
        self.rows().all(|r| self.contains(&f(r)))
    }

    /// Coordinates (relative to `self`) of the rows of a subspace of `self`,
    /// as a `dim(sub) × dim(self)` matrix.
    pub fn relative_basis(&self, sub: &Subspace) -> Result<FpMatrix> {
        self.check_compatible(sub)?;
        let mut data = Vec::with_capacity(sub.dim() * self.dim());
        for (i, r) in sub.rows().enumerate() {
            let c = self.coords(r).ok_or_else(|| {
                Error::Precondition(format!("row {i} is not contained in the domain"))
            })?;
            data.extend(c);
        }
        FpMatrix::from_vec(self.prime(), sub.dim(), self.dim(), data)
    }
}

/// True iff the parts have dimensions summing to `dim(whole)` and together
/// span `whole`.
pub fn is_direct_sum(parts: &[Subspace], whole: &Subspace) -> Result<bool> {
    for part in parts {
        part.check_compatible(whole)?;
    }
    let total: usize = parts.iter().map(Subspace::dim).sum();
    if total != whole.dim() {
        return Ok(false);
    }
    let span = Subspace::span(
        whole.prime(),
        whole.ambient_dim(),
        parts.iter().flat_map(|s| s.rows()),
    )?;
    Ok(span == *whole)
}
