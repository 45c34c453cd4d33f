use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{GradedSubspace, Tensor};
use crate::linalg::{EchelonBuilder, Subspace};

use super::perm::{all_permutations, check_bound, descent_mask, Perm};
use super::{DescentElement, Ring};

type PermTable = Arc<Vec<(Perm, u64)>>;

/// All permutations of degree `r` with their descent masks, cached per `r`.
fn permutation_table(r: usize) -> Result<PermTable> {
    check_bound(r)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, PermTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&r) {
        return Ok(t.clone());
    }
    let table: PermTable = Arc::new(
        all_permutations(r)
            .into_iter()
            .map(|s| {
                let d = descent_mask(&s);
                (s, d)
            })
            .collect(),
    );
    cache.lock().unwrap().insert(r, table.clone());
    Ok(table)
}

/// A descent-algebra element written out as `Σ c_σ σ` over `F_p`.
#[derive(Clone, Debug)]
pub struct PermutationExpansion {
    pub r: usize,
    pub p: Prime,
    pub terms: Vec<(Perm, u32)>,
}

impl PermutationExpansion {
    pub fn new(a: &DescentElement, p: Prime) -> Result<Self> {
        if let Ring::Modular(q) = a.ring() {
            if q != p {
                return Err(Error::InvalidInput(format!(
                    "element over F_{q} acting over F_{p}"
                )));
            }
        }
        let r = a.r();
        let table = permutation_table(r)?;
        // σ appears in X^ν iff Des(σ) ⊆ S(ν): superset sums over masks.
        let mut sup: Vec<i64> = a
            .mask_coeffs()
            .iter()
            .map(|&c| p.reduce_i64(c) as i64)
            .collect();
        for bit in 0..r.saturating_sub(1) {
            for m in 0..sup.len() {
                if m >> bit & 1 == 0 {
                    sup[m] = (sup[m] + sup[m | 1 << bit]) % p.get() as i64;
                }
            }
        }
        let terms = table
            .iter()
            .filter(|(_, d)| sup[*d as usize] != 0)
            .map(|(s, d)| (s.clone(), sup[*d as usize] as u32))
            .collect();
        Ok(PermutationExpansion { r, p, terms })
    }

    /// Applies to a word given as an index (base `n`, first letter most
    /// significant), accumulating `scale · σ(word)` into `emit`.
    pub fn apply_word(&self, n: usize, word: u64, scale: u32, emit: &mut impl FnMut(u64, u32)) {
        let r = self.r;
        let mut digits = [0u8; 64];
        let mut w = word;
        for i in (0..r).rev() {
            digits[i] = (w % n as u64) as u8;
            w /= n as u64;
        }
        for (s, c) in &self.terms {
            let idx = s
                .iter()
                .fold(0u64, |acc, &j| acc * n as u64 + digits[j as usize] as u64);
            emit(idx, self.p.mul(*c, scale));
        }
    }
}

/// The place-permutation action `σ(v_1⋯v_r) = v_{1σ}⋯v_{rσ}`, extended
/// linearly over the permutation expansion of `a`.
pub fn act_on_tensor(a: &DescentElement, t: &Tensor) -> Result<Tensor> {
    if t.degree() != a.r() {
        return Err(Error::DimensionMismatch(format!(
            "degree {} element acting on a degree {} tensor",
            a.r(),
            t.degree()
        )));
    }
    let exp = PermutationExpansion::new(a, t.prime())?;
    let mut acc: HashMap<u64, u32> = HashMap::new();
    for (w, c) in t.terms() {
        exp.apply_word(t.n(), w, c, &mut |idx, v| {
            let e = acc.entry(idx).or_insert(0);
            *e = t.prime().add(*e, v);
        });
    }
    Ok(Tensor::from_terms(
        t.prime(),
        t.n(),
        t.degree(),
        acc.into_iter().map(|(w, c)| (w, c as i64)),
    ))
}

/// The image `a·S` of a subspace of `T^r(V)` (dense word coordinates).
pub fn act_on_tensors(a: &DescentElement, space: &Subspace, n: usize) -> Result<Subspace> {
    let p = space.prime();
    let d = space.ambient_dim();
    if (n as u64).checked_pow(a.r() as u32) != Some(d as u64) {
        return Err(Error::AmbientMismatch(format!(
            "ambient {d} is not {n}^{}",
            a.r()
        )));
    }
    let exp = PermutationExpansion::new(a, p)?;
    let mut eb = EchelonBuilder::new(p, d);
    for row in space.rows() {
        let mut img = vec![0u32; d];
        for (w, &c) in row.iter().enumerate().filter(|(_, &c)| c != 0) {
            exp.apply_word(n, w as u64, c, &mut |idx, v| {
                img[idx as usize] = p.add(img[idx as usize], v);
            });
        }
        eb.insert(img);
    }
    Ok(Subspace::from_builder(eb))
}

/// `act_on_tensors` on a weight-graded subspace; place permutations keep
/// every multidegree, so the blocks are acted on separately.
pub fn act_on_tensors_graded(a: &DescentElement, space: &GradedSubspace) -> Result<GradedSubspace> {
    if space.r() != a.r() {
        return Err(Error::DimensionMismatch(format!(
            "degree {} element acting on degree {} tensors",
            a.r(),
            space.r()
        )));
    }
    let p = space.prime();
    let index = space.index().clone();
    let n = space.n();
    let exp = PermutationExpansion::new(a, p)?;
    let mut blocks = Vec::with_capacity(space.blocks().len());
    for (wt, block) in space.blocks().iter().enumerate() {
        let words = index.words_of(wt);
        let mut eb = EchelonBuilder::new(p, words.len());
        for row in block.rows() {
            let mut img = vec![0u32; words.len()];
            for (j, &c) in row.iter().enumerate().filter(|(_, &c)| c != 0) {
                exp.apply_word(n, words[j], c, &mut |idx, v| {
                    let l = index.local_of(idx);
                    img[l] = p.add(img[l], v);
                });
            }
            eb.insert(img);
        }
        blocks.push(Subspace::from_builder(eb));
    }
    GradedSubspace::from_blocks(p, index, blocks)
}

/// Compares the place-permutation action of `X^ν` on `b_1⋯b_l` with the
/// sum over ordered set partitions `(I_1, …, I_k)` of the factors, where the
/// degrees in `I_j` add up to `ν_j`, of the products taken in the order
/// `I_1` ascending, then `I_2` ascending, and so on.
pub fn gr_action_check(nu: &Composition, lie_factors: &[Tensor]) -> Result<bool> {
    let first = lie_factors
        .first()
        .ok_or_else(|| Error::InvalidInput("no factors".into()))?;
    let (p, n) = (first.prime(), first.n());
    let degrees: Vec<usize> = lie_factors.iter().map(Tensor::degree).collect();
    if degrees.iter().sum::<usize>() != nu.size() {
        return Err(Error::DimensionMismatch(format!(
            "factor degrees {degrees:?} do not add up to |{nu}|"
        )));
    }
    let product = lie_factors
        .iter()
        .skip(1)
        .fold(first.clone(), |acc, b| acc.mul(b));
    let lhs = act_on_tensor(&DescentElement::xnu(nu, Ring::Modular(p)), &product)?;

    let mut rhs = Tensor::zero(p, n, nu.size());
    let mut assignment = vec![0usize; lie_factors.len()];
    let mut room = nu.parts().to_vec();
    assign_blocks(0, &degrees, &mut room, &mut assignment, &mut |blocks| {
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&i| (blocks[i], i));
        let term = order
            .iter()
            .fold(Tensor::one(p, n), |acc, &i| acc.mul(&lie_factors[i]));
        rhs = rhs.add(&term);
    });
    Ok(lhs == rhs)
}

fn assign_blocks(
    i: usize,
    degrees: &[usize],
    room: &mut [usize],
    assignment: &mut [usize],
    emit: &mut impl FnMut(&[usize]),
) {
    if i == degrees.len() {
        if room.iter().all(|&x| x == 0) {
            emit(assignment);
        }
        return;
    }
    for j in 0..room.len() {
        if room[j] >= degrees[i] {
            room[j] -= degrees[i];
            assignment[i] = j;
            assign_blocks(i + 1, degrees, room, assignment, emit);
            room[j] += degrees[i];
        }
    }
}
