//! Group actions on tensor powers: generators of `GL(n, F_p)`, their
//! letter-substitution action on `T^r(V)`, and the divided-power operators
//! that generate the Schur algebra `S(n, r)`.

mod schur;

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{tensor_dim, Tensor};
use crate::linalg::{EchelonBuilder, FpMatrix, GroupAction, Subspace};

pub use schur::{divided_power, schur_generators, SchurOp};

/// Generators of `GL(n, F_p)`: the cyclic permutation matrix, the
/// transvection `x_1 ↦ x_1 + x_2`, and `diag(d, 1, …, 1)` for a primitive
/// root `d` when `p > 2`. For `n = 1` only `[d]`.
pub fn gl_generators(n: usize, p: Prime) -> Result<Vec<FpMatrix>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let d = p.primitive_root();
    if n == 1 {
        return Ok(vec![FpMatrix::from_residue_rows(p, 1, vec![vec![d]])?]);
    }
    let mut gens = Vec::new();
    let mut cycle = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        cycle.set(i, (i + 1) % n, 1);
    }
    gens.push(cycle);
    let mut t = FpMatrix::identity(p, n);
    t.set(0, 1, 1);
    gens.push(t);
    if p.get() > 2 {
        let mut diag = FpMatrix::identity(p, n);
        diag.set(0, 0, d);
        gens.push(diag);
    }
    Ok(gens)
}

/// Order of the group generated by `gens`, by orbit enumeration from the
/// identity; `None` once more than `cap` elements have been seen.
pub fn generated_order(gens: &[FpMatrix], cap: usize) -> Option<usize> {
    let first = gens.first()?;
    let id = FpMatrix::identity(first.prime(), first.rows());
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.data().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let h = m.mul(g).ok()?;
            if seen.insert(h.data().to_vec()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    Some(seen.len())
}

/// `|GL(n, F_p)| = Π_{i<n} (p^n − p^i)`, or `None` on overflow.
pub fn gl_order(n: usize, p: Prime) -> Option<u64> {
    let q = p.get() as u64;
    let qn = q.checked_pow(n as u32)?;
    (0..n as u32).try_fold(1u64, |acc, i| acc.checked_mul(qn - q.pow(i)))
}

/// The action of matrices on `V = F_p^n` extended to `T^r(V)` by letter
/// substitution `x_i ↦ Σ_j g_ij x_j`.
#[derive(Clone, Debug)]
pub struct TensorAction {
    p: Prime,
    n: usize,
    r: usize,
    generators: Vec<FpMatrix>,
}

impl TensorAction {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient_dim(&self) -> usize {
        self.n.pow(self.r as u32)
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    /// The image of a tensor under generator `g`.
    pub fn apply(&self, g: usize, t: &Tensor) -> Tensor {
        t.substitute(&self.generators[g])
    }

    /// The image of a dense coordinate vector under generator `g`, computed
    /// one tensor factor at a time.
    pub fn apply_dense(&self, g: usize, v: &[u32]) -> Vec<u32> {
        apply_kronecker_power(&self.generators[g], self.r, v)
    }

    /// The matrices of the generators on an invariant subspace, in the
    /// subspace's echelon basis (row-vector convention).
    pub fn restricted_matrices(&self, space: &Subspace) -> Result<Vec<FpMatrix>> {
        (0..self.generators.len())
            .map(|g| space.induced_matrix(|v| self.apply_dense(g, v)))
            .collect()
    }

    /// The generators as dense `n^r × n^r` matrices.
    pub fn group_action(&self) -> Result<GroupAction> {
        let d = self.ambient_dim();
        let mats = (0..self.generators.len())
            .map(|g| {
                let rows = (0..d)
                    .map(|w| {
                        let mut e = vec![0u32; d];
                        e[w] = 1;
                        self.apply_dense(g, &e)
                    })
                    .collect();
                FpMatrix::from_residue_rows(self.p, d, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(mats)
    }

    pub fn is_invariant(&self, space: &Subspace) -> bool {
        (0..self.generators.len()).all(|g| space.is_invariant(|v| self.apply_dense(g, v)))
    }
}

/// `v · g^{⊗r}` for `v` indexed by words of length `r`.
pub fn apply_kronecker_power(g: &FpMatrix, r: usize, v: &[u32]) -> Vec<u32> {
    let p = g.prime();
    let n = g.rows();
    let mut cur = v.to_vec();
    let mut next = vec![0u32; cur.len()];
    // Factor k has stride n^(r-1-k).
    for k in 0..r {
        let stride = n.pow((r - 1 - k) as u32);
        next.iter_mut().for_each(|x| *x = 0);
        for (idx, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let i = (idx / stride) % n;
            let base = idx - i * stride;
            for (j, &gij) in g.row(i).iter().enumerate() {
                if gij != 0 {
                    let t = &mut next[base + j * stride];
                    *t = p.add(*t, p.mul(c, gij));
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// Extends generator matrices on `V` to `T^r(V)`.
pub fn induce_on_tensor_power(gens: &[FpMatrix], r: usize) -> Result<TensorAction> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let (p, n) = (first.prime(), first.rows());
    for g in gens {
        if g.rows() != n || g.cols() != n || g.prime() != p {
            return Err(Error::DimensionMismatch(
                "generators of different shapes".into(),
            ));
        }
        if !g.is_invertible() {
            return Err(Error::InvalidInput("generator is not invertible".into()));
        }
    }
    tensor_dim(n, r)?;
    Ok(TensorAction {
        p,
        n,
        r,
        generators: gens.to_vec(),
    })
}

/// The smallest subspace containing `seed` and invariant under the action.
pub fn module_closure(seed: &Subspace, action: &TensorAction) -> Result<Subspace> {
    if seed.ambient_dim() != action.ambient_dim() {
        return Err(Error::AmbientMismatch(format!(
            "seed in dimension {}, action on {}",
            seed.ambient_dim(),
            action.ambient_dim()
        )));
    }
    let mut eb = EchelonBuilder::new(action.prime(), seed.ambient_dim());
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    for row in seed.rows() {
        if eb.insert(row.to_vec()) {
            queue.push_back(row.to_vec());
        }
    }
    while let Some(v) = queue.pop_front() {
        for g in 0..action.generators().len() {
            let w = action.apply_dense(g, &v);
            if eb.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(Subspace::from_builder(eb))
}

#[cfg(test)]
mod tests;
