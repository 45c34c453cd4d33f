//! The Solomon descent algebra `D_r` over `F_p` (or over `Z` for
//! characteristic-zero cross-checks).
//!
//! Elements are stored in the `X^ν` basis, indexed by the descent mask of
//! `ν` (bit `j−1` set when `j` is a partial sum of `ν`). `X^ν` is the sum of
//! the permutations whose descent set lies inside that mask.

mod action;
mod idempotent;
mod perm;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::{partitions, young_character, ClassFunction, Composition};
use crate::error::{Error, Result};
use crate::fp::Prime;

pub use action::{
    act_on_tensor, act_on_tensors, act_on_tensors_graded, gr_action_check, PermutationExpansion,
};
pub use idempotent::{idempotent_family, lift_idempotents, IdempotentFamily};
pub use perm::{
    all_permutations, compose, descent_mask, xnu_as_permutation_sum, GroupAlgebraElement, Perm,
    PERMUTATION_BOUND,
};

/// Largest degree accepted by [`DescentElement`]; masks have `r − 1` bits.
pub const MAX_DEGREE: usize = 24;

/// Coefficient ring of a descent-algebra element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Modular(Prime),
    Integer,
}

impl Ring {
    fn reduce(self, v: i64) -> i64 {
        match self {
            Ring::Modular(p) => p.reduce_i64(v) as i64,
            Ring::Integer => v,
        }
    }

    pub fn modulus(self) -> Option<Prime> {
        match self {
            Ring::Modular(p) => Some(p),
            Ring::Integer => None,
        }
    }
}

/// An element `Σ a_ν X^ν` of `D_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DescentElement {
    r: usize,
    ring: Ring,
    coeffs: Vec<i64>,
}

impl DescentElement {
    pub fn zero(r: usize, ring: Ring) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&r),
            "descent algebra degree {r} out of range"
        );
        DescentElement {
            r,
            ring,
            coeffs: vec![0; 1 << (r - 1)],
        }
    }

    /// The basis element `X^ν`.
    pub fn xnu(nu: &Composition, ring: Ring) -> Self {
        let mut e = Self::zero(nu.size(), ring);
        e.coeffs[nu.descent_mask() as usize] = 1;
        e
    }

    /// `X^{(r)}`, the identity permutation.
    pub fn identity(r: usize, ring: Ring) -> Self {
        Self::xnu(&Composition::single(r), ring)
    }

    pub fn from_terms<'a>(
        r: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (&'a Composition, i64)>,
    ) -> Result<Self> {
        let mut e = Self::zero(r, ring);
        for (nu, c) in terms {
            if nu.size() != r {
                return Err(Error::DimensionMismatch(format!(
                    "composition {nu} is not of {r}"
                )));
            }
            e.add_mask_term(nu.descent_mask(), c);
        }
        Ok(e)
    }

    /// Builds from a dense coefficient vector indexed by descent mask.
    pub fn from_mask_coeffs(r: usize, ring: Ring, coeffs: Vec<i64>) -> Result<Self> {
        if r == 0 || r > MAX_DEGREE || coeffs.len() != 1 << (r - 1) {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for degree {r}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| ring.reduce(c)).collect();
        Ok(DescentElement { r, ring, coeffs })
    }

    pub(crate) fn add_mask_term(&mut self, mask: u64, c: i64) {
        let slot = &mut self.coeffs[mask as usize];
        *slot = self.ring.reduce(*slot + c);
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coefficient(&self, nu: &Composition) -> i64 {
        if nu.size() != self.r {
            return 0;
        }
        self.coeffs[nu.descent_mask() as usize]
    }

    pub fn mask_coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero `(mask, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m as u64, c))
    }

    /// Nonzero terms keyed by composition, in lex order of compositions.
    pub fn composition_terms(&self) -> Vec<(Composition, i64)> {
        let mut out: Vec<_> = self
            .terms()
            .map(|(m, c)| {
                (
                    Composition::from_descent_mask(self.r, m).expect("mask in range"),
                    c,
                )
            })
            .collect();
        out.sort();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "descent elements of degree {} and {} (or different rings)",
                self.r, other.r
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.reduce(a + b))
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.ring.reduce(a * c))
            .collect();
        self.with_coeffs(coeffs)
    }

    fn with_coeffs(&self, coeffs: Vec<i64>) -> Self {
        DescentElement {
            r: self.r,
            ring: self.ring,
            coeffs,
        }
    }

    /// The product in `D_r`, by the structure-constant rule: `X^μ X^ν` is the
    /// sum, over nonnegative integer matrices with row sums `μ` and column
    /// sums `ν`, of `X` indexed by the nonzero entries read row by row.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = vec![0i128; self.coeffs.len()];
        for (mu, a) in self.terms() {
            for (nu, b) in other.terms() {
                let ab = a as i128 * b as i128;
                for &(mask, count) in structure_constants(self.r, mu, nu).iter() {
                    acc[mask as usize] += ab * count as i128;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|v| match self.ring {
                Ring::Modular(p) => v.rem_euclid(p.get() as i128) as i64,
                Ring::Integer => i64::try_from(v).expect("integer descent coefficient overflow"),
            })
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// Reduces an integer element mod `p`.
    pub fn reduce_mod(&self, p: Prime) -> Self {
        let ring = Ring::Modular(p);
        let coeffs = self.coeffs.iter().map(|&c| ring.reduce(c)).collect();
        DescentElement {
            r: self.r,
            ring,
            coeffs,
        }
    }

    /// The character map: `X^ν ↦ φ^ν`, extended linearly.
    pub fn c_map(&self) -> ClassFunction {
        let comps: Vec<(Composition, i64)> = self.composition_terms();
        let values: HashMap<_, i64> = partitions(self.r)
            .into_iter()
            .map(|l| {
                let v = comps
                    .iter()
                    .map(|(nu, c)| c * young_character(nu, &l).expect("sizes agree") as i64)
                    .sum::<i64>();
                (l, v)
            })
            .collect();
        ClassFunction::from_fn(self.r, self.ring.modulus(), |l| values[l])
    }
}

type ConstantTable = Vec<(u64, u64)>;

fn constant_cache() -> &'static Mutex<HashMap<(usize, u64, u64), Arc<ConstantTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64, u64), Arc<ConstantTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `X^μ X^ν = Σ count · X^mask`, as `(mask, count)` pairs.
pub(crate) fn structure_constants(r: usize, mu: u64, nu: u64) -> Arc<ConstantTable> {
    if let Some(t) = constant_cache().lock().unwrap().get(&(r, mu, nu)) {
        return t.clone();
    }
    let rows = Composition::from_descent_mask(r, mu).expect("mask in range");
    let cols = Composition::from_descent_mask(r, nu).expect("mask in range");
    let mut counts: HashMap<u64, u64> = HashMap::new();
    let mut col_left = cols.parts().to_vec();
    let mut reading = Vec::new();
    enumerate_matrices(rows.parts(), 0, &mut col_left, &mut reading, &mut |read| {
        let c = Composition::new(read.to_vec()).expect("positive parts");
        *counts.entry(c.descent_mask()).or_insert(0) += 1;
    });
    let mut table: ConstantTable = counts.into_iter().collect();
    table.sort_unstable();
    let table = Arc::new(table);
    constant_cache()
        .lock()
        .unwrap()
        .insert((r, mu, nu), table.clone());
    table
}

/// Fills the matrix row by row; `reading` collects the nonzero entries.
fn enumerate_matrices(
    rows: &[usize],
    i: usize,
    col_left: &mut [usize],
    reading: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if i == rows.len() {
        if col_left.iter().all(|&c| c == 0) {
            emit(reading);
        }
        return;
    }
    fill_row(rows, i, 0, rows[i], col_left, reading, emit);
}

fn fill_row(
    rows: &[usize],
    i: usize,
    j: usize,
    left: usize,
    col_left: &mut [usize],
    reading: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if j == col_left.len() {
        if left == 0 {
            enumerate_matrices(rows, i + 1, col_left, reading, emit);
        }
        return;
    }
    // Remaining columns must be able to absorb what is left of this row.
    let rest: usize = col_left[j + 1..].iter().sum();
    let lo = left.saturating_sub(rest);
    let hi = left.min(col_left[j]);
    for m in lo..=hi {
        col_left[j] -= m;
        if m > 0 {
            reading.push(m);
        }
        fill_row(rows, i, j + 1, left - m, col_left, reading, emit);
        if m > 0 {
            reading.pop();
        }
        col_left[j] += m;
    }
}

impl fmt::Display for DescentElement {
    /// One `coeff ν` line per nonzero term; the zero element is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.composition_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (nu, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{c} {nu}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DescentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DescentElement(r={}, {:?}, [", self.r, self.ring)?;
        for (i, (nu, c)) in self.composition_terms().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}·X^({nu})")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests;
