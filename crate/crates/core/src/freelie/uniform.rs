use crate::error::{Error, Result};
use crate::linalg::Subspace;

use super::graded::{GradedBuilder, GradedSubspace, WeightIndex};
use super::tensor::Tensor;
use super::word::tensor_dim;

/// `δ` applied to every basis vector: words using letters above `n_target`
/// are dropped. For subspaces spanned by multihomogeneous elements this is
/// the intersection with `T(V^(n_target))`.
pub fn truncate_graded(s: &GradedSubspace, n_target: usize) -> Result<GradedSubspace> {
    if n_target > s.n() || n_target == 0 {
        return Err(Error::InvalidInput(format!(
            "cannot truncate from {} to {n_target} letters",
            s.n()
        )));
    }
    let ix = WeightIndex::shared(n_target, s.r())?;
    let mut b = GradedBuilder::new(s.prime(), ix);
    for t in s.basis_tensors() {
        b.insert(&t.truncate(n_target))?;
    }
    Ok(b.finish())
}

/// Truncation of an arbitrary subspace of `T^r(V^(n))`.
pub fn truncate_subspace(s: &Subspace, n: usize, r: usize, n_target: usize) -> Result<Subspace> {
    if tensor_dim(n, r)? as usize != s.ambient_dim() {
        return Err(Error::AmbientMismatch("subspace is not in T^r(V)".into()));
    }
    if n_target > n || n_target == 0 {
        return Err(Error::InvalidInput(format!(
            "cannot truncate from {n} to {n_target} letters"
        )));
    }
    let p = s.prime();
    let target = tensor_dim(n_target, r)? as usize;
    let rows: Vec<Vec<u32>> = s
        .rows()
        .map(|row| {
            Tensor::from_dense(p, n, r, row)
                .truncate(n_target)
                .to_dense()
        })
        .collect();
    Subspace::span(p, target, rows)
}

/// Letter permutations generating `Sym(n)`: a transposition and an `n`-cycle.
fn letter_generators(n: usize) -> Vec<Vec<u8>> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<u8> = (1..=n as u8).collect();
        swap.swap(0, 1);
        gens.push(swap);
        let cycle: Vec<u8> = (1..=n as u8).map(|l| l % n as u8 + 1).collect();
        gens.push(cycle);
    }
    gens
}

/// `Σ_π W^π` over letter permutations `π ∈ Sym(n_target)`, after embedding
/// `W ⊆ T^r(V^(n))` into `T^r(V^(n_target))`. Verifies that truncating back
/// recovers `W`, which holds when `W` is itself closed under letter
/// permutations and weight projections.
pub fn symmetrize_extend(w: &GradedSubspace, n_target: usize) -> Result<GradedSubspace> {
    let ext = letter_closure(w, n_target)?;
    if truncate_graded(&ext, w.n())? != *w {
        return Err(Error::Invariant(format!(
            "letter-permutation closure in {n_target} letters does not truncate back to the input"
        )));
    }
    Ok(ext)
}

/// The letter-permutation closure without the truncation check.
pub fn letter_closure(w: &GradedSubspace, n_target: usize) -> Result<GradedSubspace> {
    let n = w.n();
    if n_target < n {
        return Err(Error::InvalidInput(format!(
            "cannot extend from {n} to {n_target} letters"
        )));
    }
    let ix = WeightIndex::shared(n_target, w.r())?;
    let mut b = GradedBuilder::new(w.prime(), ix);
    let mut queue: Vec<Tensor> = Vec::new();
    for t in w.basis_tensors() {
        let e = t.map_letters(n_target, |l| l);
        if b.insert(&e)? {
            queue.push(e);
        }
    }
    let gens = letter_generators(n_target);
    while let Some(t) = queue.pop() {
        for g in &gens {
            let img = t.map_letters(n_target, |l| g[l as usize - 1]);
            if b.insert(&img)? {
                queue.push(img);
            }
        }
    }
    Ok(b.finish())
}
