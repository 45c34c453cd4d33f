use std::collections::BTreeMap;

use crate::combinat::{class_of, higher_lie_dim, Partition};
use crate::descent::{
    act_on_tensors, idempotent_family, DescentElement, PermutationExpansion, PERMUTATION_BOUND,
};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{tensor_dim, GradedBuilder, GradedSubspace, Tensor, WeightIndex};
use crate::linalg::{FpMatrix, Subspace};

use super::certificate::{local_to_global, SummandContext};
use super::complement::BasisCoords;

/// `e_{[r,a]}`: the idempotent of `D_{r,F_p}` for the class of `(a^{r/a})`.
pub fn rectangle_idempotent(r: usize, a: usize, p: Prime) -> Result<DescentElement> {
    if a == 0 || !r.is_multiple_of(a) {
        return Err(Error::InvalidInput(format!("{a} does not divide {r}")));
    }
    let lambda = Partition::new(vec![a; r / a])?;
    let family = idempotent_family(r, p)?;
    family
        .get(&class_of(&lambda, p))
        .cloned()
        .ok_or_else(|| Error::Invariant(format!("no idempotent for the class of {lambda}")))
}

/// `e_{[c,a]} T^c(B)` as tensors in `T^{c·deg B}(V)`: the place action on
/// the `c` factors is computed on `T^c(F^m)`, `m = dim B`, and each word
/// `i_1⋯i_c` is then replaced by `b_{i_1}⋯b_{i_c}`.
fn idempotent_power(b: &GradedSubspace, c: usize, a: usize) -> Result<Vec<Tensor>> {
    let p = b.prime();
    let basis = b.basis_tensors();
    let m = basis.len();
    let e = rectangle_idempotent(c, a, p)?;
    let abstract_dim = tensor_dim(m, c)? as usize;
    let image = act_on_tensors(&e, &Subspace::full(p, abstract_dim), m)?;
    let mut out = Vec::with_capacity(image.dim());
    for row in image.rows() {
        let t = Tensor::from_dense(p, m, c, row);
        let mut acc = Tensor::zero(p, b.n(), c * b.r());
        for (word, coef) in t.words() {
            let prod = word
                .letters()
                .iter()
                .fold(Tensor::one(p, b.n()), |x, &l| x.mul(&basis[l as usize - 1]));
            acc = acc.add(&prod.scale(coef));
        }
        out.push(acc);
    }
    Ok(out)
}

/// The data of the modified-PBW construction in degree `q = p^m q'`.
#[derive(Clone, Debug)]
pub struct CanonicalData {
    pub q: usize,
    pub q_prime: usize,
    /// The families `σ = {c_d}` as `(d, c_d)` pairs with `c_d > 0`.
    pub shapes: Vec<Vec<(usize, usize)>>,
    /// `U = ⊕_σ Π_d e_{[c_d, q'/d']} T^{c_d}(B_d)`.
    pub u: GradedSubspace,
    /// `U + L^q(V)`.
    pub sum: GradedSubspace,
    /// `U ∩ L^q(V) = C`.
    pub meets_in_c: bool,
    /// `dim e_{[q,q']} T^q(V)`, by the higher Lie dimensions of the class.
    pub target_dim: u64,
    /// Whether `w ↦ e_{[q,q']} w` maps `U + L^q(V)` isomorphically onto
    /// `e_{[q,q']} T^q(V)`; `None` above the permutation bound.
    pub phi_isomorphism: Option<bool>,
}

/// Builds `U` from the summands `B_d` of the proper divisors `d` of `q` and
/// checks `U ∩ L^q(V) = C` and the isomorphism onto `e_{[q,q']} T^q(V)`.
pub fn canonical_complement(
    q: usize,
    p: Prime,
    lie: &GradedSubspace,
    c: &GradedSubspace,
    family: &[(usize, GradedSubspace)],
) -> Result<CanonicalData> {
    let n = lie.n();
    let pp = p.get() as usize;
    let mut q_prime = q;
    while q_prime.is_multiple_of(pp) {
        q_prime /= pp;
    }
    // Proper divisors d with B_d ≠ 0, with a_d = q'/d'.
    let mut divisors: Vec<(usize, &GradedSubspace, usize)> = Vec::new();
    for (d, b) in family {
        if *d < q && q.is_multiple_of(*d) && b.dim() > 0 {
            let mut d_prime = *d;
            while d_prime % pp == 0 {
                d_prime /= pp;
            }
            divisors.push((*d, b, q_prime / d_prime));
        }
    }
    divisors.sort_by_key(|x| x.0);

    let mut shapes = Vec::new();
    let mut counts = vec![0usize; divisors.len()];
    enumerate_shapes(&divisors, 0, q, &mut counts, &mut shapes);

    let mut factors: BTreeMap<(usize, usize), Vec<Tensor>> = BTreeMap::new();
    let mut ub = GradedBuilder::new(p, WeightIndex::shared(n, q)?);
    for shape in &shapes {
        let mut products = vec![Tensor::one(p, n)];
        for &(d, cd) in shape {
            let (_, b, a) = divisors.iter().find(|x| x.0 == d).expect("divisor listed");
            if let std::collections::btree_map::Entry::Vacant(e) = factors.entry((d, cd)) {
                e.insert(idempotent_power(b, cd, *a)?);
            }
            let f = &factors[&(d, cd)];
            products = products
                .iter()
                .flat_map(|x| f.iter().map(move |y| x.mul(y)))
                .collect();
        }
        for t in &products {
            ub.insert(t)?;
        }
    }
    let u = ub.finish();
    let sum = u.sum(lie)?;
    let meets_in_c = u.intersect(lie)? == *c;

    let top = Partition::new(vec![q_prime; q / q_prime])?;
    let class = class_of(&top, p);
    let target_dim = class
        .members
        .iter()
        .map(|l| higher_lie_dim(n as u64, l))
        .sum();
    let phi_isomorphism = if q <= PERMUTATION_BOUND {
        let e = rectangle_idempotent(q, q_prime, p)?;
        let image = crate::descent::act_on_tensors_graded(&e, &sum)?;
        Some(image.dim() == sum.dim() && sum.dim() as u64 == target_dim)
    } else {
        None
    };
    Ok(CanonicalData {
        q,
        q_prime,
        shapes,
        u,
        sum,
        meets_in_c,
        target_dim,
        phi_isomorphism,
    })
}

fn enumerate_shapes(
    divisors: &[(usize, &GradedSubspace, usize)],
    i: usize,
    left: usize,
    counts: &mut Vec<usize>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if i == divisors.len() {
        if left == 0 {
            out.push(
                divisors
                    .iter()
                    .zip(counts.iter())
                    .filter(|(_, &c)| c > 0)
                    .map(|(d, &c)| (d.0, c))
                    .collect(),
            );
        }
        return;
    }
    let (d, _, a) = divisors[i];
    let mut c = 0;
    while c * d <= left {
        counts[i] = c;
        enumerate_shapes(divisors, i + 1, left - c * d, counts, out);
        c += a;
    }
    counts[i] = 0;
}

/// The retraction `T^q(V) → B` through `φ`: since `φ` maps `U ⊕ B`
/// isomorphically onto `e_{[q,q']} T^q(V)`, the `B`-part of the coordinates
/// of `e_{[q,q']} w` in the basis `{e·u_j} ∪ {e·b_i}` is an equivariant
/// retraction onto `B` along `U`.
pub(crate) fn idempotent_retraction(ctx: &SummandContext<'_>) -> Result<Option<FpMatrix>> {
    let (p, n, q) = (ctx.p, ctx.n, ctx.q);
    if q > PERMUTATION_BOUND {
        return Ok(None);
    }
    let data = canonical_complement(q, p, ctx.lie, ctx.lower, ctx.family)?;
    if !data.meets_in_c || data.phi_isomorphism != Some(true) {
        return Ok(None);
    }
    let e = rectangle_idempotent(q, data.q_prime, p)?;
    let exp = PermutationExpansion::new(&e, p)?;
    let index = ctx.b.index().clone();
    let cols = local_to_global(ctx.b);
    let mut r = FpMatrix::zeros(p, index.ambient_dim(), ctx.b.dim());
    let act = |w: usize, v: &[u32]| -> Vec<u32> {
        let words = index.words_of(w);
        let mut img = vec![0u32; words.len()];
        for (j, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            exp.apply_word(n, words[j], c, &mut |idx, x| {
                let l = index.local_of(idx);
                img[l] = p.add(img[l], x);
            });
        }
        img
    };
    for w in 0..index.weights().len() {
        let bw = ctx.b.block(w);
        if bw.dim() == 0 {
            continue;
        }
        let uw = data.u.block(w);
        let images: Vec<Vec<u32>> = uw.rows().chain(bw.rows()).map(|v| act(w, v)).collect();
        let Ok(coords) =
            BasisCoords::new(FpMatrix::from_residue_rows(p, index.block_dim(w), images)?)
        else {
            return Ok(None);
        };
        for (local, &word) in index.words_of(w).iter().enumerate() {
            let mut unit = vec![0u32; index.block_dim(w)];
            unit[local] = 1;
            let Some(c) = coords.coords(&act(w, &unit)) else {
                return Ok(None);
            };
            for (j, &x) in c[uw.dim()..].iter().enumerate() {
                r.set(word as usize, cols[w][j], x);
            }
        }
    }
    Ok(Some(r))
}
