use std::collections::BTreeMap;
use std::sync::Arc;

use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::Subspace;

use super::graded::{GradedBuilder, GradedSubspace, WeightIndex};
use super::lyndon::lyndon_basis;
use super::tensor::Tensor;

/// An ordered homogeneous basis of the Lie algebra, degree by degree.
///
/// The order `≼` is: lower degree first, then the order of each degree's
/// list. Callers that need block constraints within a degree arrange the
/// list accordingly.
#[derive(Clone, Debug)]
pub struct PbwGenerators {
    p: Prime,
    n: usize,
    by_degree: Vec<Vec<Tensor>>,
}

impl PbwGenerators {
    /// Lyndon bases of `L^1(V), ..., L^max_degree(V)`, each in Lyndon-word order.
    pub fn lyndon(n: usize, max_degree: usize, p: Prime) -> Self {
        let mut by_degree = vec![Vec::new()];
        for d in 1..=max_degree {
            by_degree.push(lyndon_basis(n, d, p).into_iter().map(|(_, t)| t).collect());
        }
        PbwGenerators { p, n, by_degree }
    }

    /// Caller-supplied ordered lists; `by_degree[d]` must hold tensors of
    /// degree `d` (entry 0 is ignored).
    pub fn custom(p: Prime, n: usize, by_degree: Vec<Vec<Tensor>>) -> Result<Self> {
        for (d, list) in by_degree.iter().enumerate().skip(1) {
            for t in list {
                if t.degree() != d || t.n() != n || t.prime() != p {
                    return Err(Error::InvalidInput(format!(
                        "generator listed in degree {d} has degree {}",
                        t.degree()
                    )));
                }
            }
        }
        Ok(PbwGenerators { p, n, by_degree })
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }

    pub fn of_degree(&self, d: usize) -> &[Tensor] {
        self.by_degree.get(d).map_or(&[], |v| v.as_slice())
    }
}

/// Ordered products `a_1 ⋯ a_l` with `a_1 ≼ ⋯ ≼ a_l` of total degree `r`,
/// grouped by the partition formed by the factor degrees.
#[derive(Clone, Debug)]
pub struct PbwBasis {
    p: Prime,
    n: usize,
    r: usize,
    families: BTreeMap<Partition, Vec<Tensor>>,
}

/// Multisets of size `m` from `0..len`, as non-decreasing index lists.
fn multisets(len: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(len, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, m, 0, &mut Vec::new(), &mut out);
    out
}

pub fn pbw_basis(gens: &PbwGenerators, r: usize) -> Result<PbwBasis> {
    if gens.max_degree() < r {
        return Err(Error::InvalidInput(format!(
            "generators only given up to degree {}",
            gens.max_degree()
        )));
    }
    let (p, n) = (gens.p, gens.n);
    let mut families = BTreeMap::new();
    for lambda in partitions(r) {
        let mult = lambda.multiplicities();
        let mut products = vec![Tensor::one(p, n)];
        for (d, &m) in mult.iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            let g = gens.of_degree(d);
            let mut next = Vec::new();
            for prefix in &products {
                for choice in multisets(g.len(), m) {
                    let t = choice.iter().fold(prefix.clone(), |acc, &i| acc.mul(&g[i]));
                    next.push(t);
                }
            }
            products = next;
        }
        families.insert(lambda, products);
    }
    Ok(PbwBasis { p, n, r, families })
}

impl PbwBasis {
    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn family(&self, lambda: &Partition) -> &[Tensor] {
        self.families.get(lambda).map_or(&[], |v| v.as_slice())
    }

    pub fn families(&self) -> impl Iterator<Item = (&Partition, &[Tensor])> {
        self.families.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.families.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight_index(&self) -> Result<Arc<WeightIndex>> {
        WeightIndex::new(self.n, self.r)
    }

    /// `dim W_λ` for every `λ`, increasing in `≤*`, from one pass that adds
    /// the families from `(r)` downwards. The elements are passed through `f`
    /// first, which lets callers compute the chain `e·W_λ`.
    pub fn filtration_dims_with(
        &self,
        f: impl Fn(&Tensor) -> Tensor,
    ) -> Result<Vec<(Partition, usize)>> {
        let mut b = GradedBuilder::new(self.p, self.weight_index()?);
        let mut out = Vec::new();
        for (lambda, fam) in self.families.iter().rev() {
            for t in fam {
                b.insert(&f(t))?;
            }
            out.push((lambda.clone(), b.rank()));
        }
        out.reverse();
        Ok(out)
    }

    pub fn filtration_dims(&self) -> Result<Vec<(Partition, usize)>> {
        self.filtration_dims_with(|t| t.clone())
    }

    /// `W_λ`, spanned by the families of all `θ ≥* λ`.
    pub fn filtration_graded(&self, lambda: &Partition) -> Result<GradedSubspace> {
        let mut b = GradedBuilder::new(self.p, self.weight_index()?);
        for (_, fam) in self.families.range(lambda.clone()..) {
            for t in fam {
                b.insert(t)?;
            }
        }
        Ok(b.finish())
    }

    pub fn filtration_subspace(&self, lambda: &Partition) -> Result<Subspace> {
        Ok(self.filtration_graded(lambda)?.to_subspace())
    }
}
