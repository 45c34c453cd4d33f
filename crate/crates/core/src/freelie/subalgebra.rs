use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::Subspace;

use super::graded::{GradedBuilder, GradedSubspace, WeightIndex};
use super::lyndon::lyndon_basis;
use super::tensor::Tensor;

/// `L^r(V)` as a graded subspace of `T^r(V)`.
pub fn lie_power_graded(n: usize, r: usize, p: Prime) -> Result<GradedSubspace> {
    let ix = WeightIndex::shared(n, r)?;
    let basis = lyndon_basis(n, r, p);
    GradedSubspace::span(p, ix, basis.iter().map(|(_, t)| t))
}

/// `L^r(V) = T^r(V) ∩ L(V)`, spanned by the Lyndon basis.
pub fn lie_power(n: usize, r: usize, p: Prime) -> Result<Subspace> {
    Ok(lie_power_graded(n, r, p)?.to_subspace())
}

/// `T^r(V)` as a graded subspace.
pub fn tensor_power_graded(n: usize, r: usize, p: Prime) -> Result<GradedSubspace> {
    Ok(GradedSubspace::full(p, WeightIndex::shared(n, r)?))
}

/// `[A, B]`: the span of all brackets of basis elements.
pub fn bracket_spaces(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    if a.n() != b.n() || a.prime() != b.prime() {
        return Err(Error::AmbientMismatch(
            "bracketing spaces over different V".into(),
        ));
    }
    let ix = WeightIndex::shared(a.n(), a.r() + b.r())?;
    let mut out = GradedBuilder::new(a.prime(), ix);
    let bt = b.basis_tensors();
    for x in a.basis_tensors() {
        for y in &bt {
            out.insert(&x.bracket(y))?;
        }
    }
    Ok(out.finish())
}

/// Degree-`d` components, `d = 1..=up_to`, of the Lie subalgebra generated
/// by the given homogeneous subspaces: `Q_d = G_d + Σ_a [Q_{d−a}, G_a]`.
/// Entry `d − 1` of the result is `Q_d`.
pub fn subalgebra_generated(
    p: Prime,
    n: usize,
    gens: &[GradedSubspace],
    up_to: usize,
) -> Result<Vec<GradedSubspace>> {
    for g in gens {
        if g.n() != n || g.prime() != p {
            return Err(Error::AmbientMismatch(
                "generator over a different V".into(),
            ));
        }
    }
    let mut q: Vec<GradedSubspace> = Vec::with_capacity(up_to);
    for d in 1..=up_to {
        let ix = WeightIndex::shared(n, d)?;
        let mut b = GradedBuilder::new(p, ix);
        for g in gens.iter().filter(|g| g.r() == d) {
            for t in g.basis_tensors() {
                b.insert(&t)?;
            }
        }
        for g in gens.iter().filter(|g| g.r() < d && g.dim() > 0) {
            let lower = &q[d - g.r() - 1];
            if lower.is_zero() {
                continue;
            }
            let gt = g.basis_tensors();
            for x in lower.basis_tensors() {
                for y in &gt {
                    b.insert(&x.bracket(y))?;
                }
            }
        }
        q.push(b.finish());
    }
    Ok(q)
}

/// One piece `[X, B, ..., B]` (left-normed, `brackets` copies of `B`).
#[derive(Clone, Debug)]
pub struct LazardPiece {
    pub source: usize,
    pub brackets: usize,
    pub space: GradedSubspace,
}

/// The pieces `[X_i, B, ..., B]` of `C ≀ B` for each homogeneous piece `X_i`
/// of `C` and each bracket count, up to total degree `up_to`.
pub fn lazard_pieces(
    c: &[GradedSubspace],
    b: &GradedSubspace,
    up_to: usize,
) -> Result<Vec<LazardPiece>> {
    let mut out = Vec::new();
    for (i, x) in c.iter().enumerate() {
        let mut cur = x.clone();
        let mut m = 0;
        while cur.r() <= up_to {
            out.push(LazardPiece {
                source: i,
                brackets: m,
                space: cur.clone(),
            });
            if b.dim() == 0 || cur.r() + b.r() > up_to {
                break;
            }
            cur = bracket_spaces(&cur, b)?;
            m += 1;
        }
    }
    Ok(out)
}

/// Left-normed brackets `[x, y_1, ..., y_k]` of a tensor by a sequence.
pub fn bracket_chain(x: &Tensor, ys: &[&Tensor]) -> Tensor {
    ys.iter().fold(x.clone(), |acc, y| acc.bracket(y))
}
