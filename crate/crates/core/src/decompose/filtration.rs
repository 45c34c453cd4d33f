use serde::Serialize;

use crate::combinat::{
    higher_lie_dim, partitions, young_character, Composition, PClass, Partition,
};
use crate::descent::{
    act_on_tensor, act_on_tensors_graded, idempotent_family, DescentElement, Ring,
};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{
    pbw_basis, tensor_power_graded, GradedBuilder, GradedSubspace, PbwGenerators,
};

/// One summand `e_J T^r(V)` and its filtration.
#[derive(Clone, Debug)]
pub struct ClassSplit {
    pub class: PClass,
    pub idempotent: DescentElement,
    pub summand: GradedSubspace,
    /// `dim e_J W_λ` for the members `λ` of `J` in increasing order; the
    /// chain ends with an implicit 0.
    pub chain: Vec<(Partition, usize)>,
    /// `dim L^λ(V)` for the same members.
    pub expected: Vec<(Partition, u64)>,
}

/// The splitting `T^r(V) = ⊕_J e_J T^r(V)` with the chains `e_J W_λ`.
#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub p: Prime,
    pub n: usize,
    pub r: usize,
    pub classes: Vec<ClassSplit>,
}

/// Plain-data view of a report for serialization.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationSummary {
    pub class: String,
    pub dim: usize,
    pub chain: Vec<usize>,
    pub factors: Vec<(String, u64)>,
}

impl FiltrationReport {
    pub fn summary(&self) -> Vec<FiltrationSummary> {
        self.classes
            .iter()
            .map(|c| FiltrationSummary {
                class: c.class.to_string(),
                dim: c.summand.dim(),
                chain: c.chain.iter().map(|x| x.1).collect(),
                factors: c
                    .expected
                    .iter()
                    .map(|(l, d)| (l.to_string(), *d))
                    .collect(),
            })
            .collect()
    }
}

/// Splits `T^r(V^(n))` by the lifted idempotents and checks that
/// `e_J W_λ / e_J W_λ+` has the dimension of `L^λ(V)` for `λ ∈ J` and is
/// zero otherwise.
pub fn split_tensor_power(n: usize, r: usize, p: Prime) -> Result<FiltrationReport> {
    let family = idempotent_family(r, p)?;
    let full = tensor_power_graded(n, r, p)?;
    let basis = pbw_basis(&PbwGenerators::lyndon(n, r, p), r)?;
    let mut classes = Vec::new();
    for (class, e) in family.members.iter().cloned() {
        let summand = act_on_tensors_graded(&e, &full)?;
        let dims = basis.filtration_dims_with(|t| act_on_tensor(&e, t).expect("degrees match"))?;
        for (i, (lambda, d)) in dims.iter().enumerate() {
            let below = dims.get(i + 1).map_or(0, |x| x.1);
            let expected = if class.contains(lambda) {
                higher_lie_dim(n as u64, lambda)
            } else {
                0
            };
            if (d - below) as u64 != expected {
                return Err(Error::Invariant(format!(
                    "class {class}: e_J W_({lambda}) / e_J W_({lambda})+ has dimension {}, expected {expected}",
                    d - below
                )));
            }
        }
        if dims.first().map_or(0, |x| x.1) != summand.dim() {
            return Err(Error::Invariant(format!(
                "class {class}: e_J W_(1^r) differs from e_J T^r(V)"
            )));
        }
        let chain: Vec<(Partition, usize)> = dims
            .into_iter()
            .filter(|(l, _)| class.contains(l))
            .collect();
        let expected = chain
            .iter()
            .map(|(l, _)| (l.clone(), higher_lie_dim(n as u64, l)))
            .collect();
        classes.push(ClassSplit {
            class,
            idempotent: e,
            summand,
            chain,
            expected,
        });
    }
    let parts: Vec<&GradedSubspace> = classes.iter().map(|c| &c.summand).collect();
    if !full.is_direct_sum_of(&parts)? {
        return Err(Error::Invariant(
            "the summands e_J T^r(V) do not form a direct sum".into(),
        ));
    }
    Ok(FiltrationReport { p, n, r, classes })
}

/// Checks that `{e_J y : y ∈ F_λ, λ ∈ J}` is a basis of `e_J T^r(V)`.
pub fn summand_basis_check(n: usize, r: usize, p: Prime, class: &PClass) -> Result<bool> {
    let family = idempotent_family(r, p)?;
    let e = family
        .get(class)
        .ok_or_else(|| Error::InvalidInput(format!("{class} is not a {p}-class of Part({r})")))?;
    let basis = pbw_basis(&PbwGenerators::lyndon(n, r, p), r)?;
    let full = tensor_power_graded(n, r, p)?;
    let target = act_on_tensors_graded(e, &full)?;
    let mut b = GradedBuilder::new(p, full.index().clone());
    let mut count = 0usize;
    for (lambda, fam) in basis.families() {
        if !class.contains(lambda) {
            continue;
        }
        for y in fam {
            count += 1;
            if !b.insert(&act_on_tensor(e, y)?)? {
                return Ok(false);
            }
        }
    }
    let span = b.finish();
    Ok(count == target.dim() && span == target)
}

/// Checks that `X^ν` acts on `W_λ / W_λ+` as multiplication by `φ^ν(λ)`,
/// for every composition `ν` and partition `λ` of `r`.
pub fn scalar_action_check(n: usize, r: usize, p: Prime) -> Result<bool> {
    let basis = pbw_basis(&PbwGenerators::lyndon(n, r, p), r)?;
    let all = partitions(r);
    for (i, lambda) in all.iter().enumerate() {
        let lower = match all.get(i + 1) {
            Some(next) => basis.filtration_graded(next)?,
            None => GradedSubspace::zero(p, basis.weight_index()?),
        };
        for m in 0..1u64 << (r - 1) {
            let nu = Composition::from_descent_mask(r, m)?;
            let x = DescentElement::xnu(&nu, Ring::Modular(p));
            let phi = p.reduce_u64(young_character(&nu, lambda)?);
            for f in basis.family(lambda) {
                let diff = act_on_tensor(&x, f)?.sub(&f.scale(phi));
                if !lower.contains(&diff) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
