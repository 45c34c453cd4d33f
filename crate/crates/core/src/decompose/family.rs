use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{
    bracket_spaces, lie_power_graded, subalgebra_generated, GradedSubspace, Tensor,
};
use crate::modrep::{gl_generators, schur_generators, SchurOp};

use super::certificate::{certify_summand, SummandCertificate, SummandContext};
use super::complement::{invariant_complements, ComplementFamily, ComplementOutcome, TensorOp};

/// Caps for the construction.
#[derive(Clone, Copy, Debug)]
pub struct FamilyOptions {
    /// Largest number of unknowns in a complement system.
    pub max_unknowns: usize,
    /// Number of members of the solution family tried in the last stage.
    pub max_search: u64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            max_unknowns: 40_000,
            max_search: 256,
        }
    }
}

/// Which stage of the complement search produced `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// `s = 1`: `B_k = L^k(V)`, nothing to choose.
    Base,
    /// `W` is the particular complement invariant under the Schur algebra.
    SchurComplement,
    /// `W` is the particular complement invariant under `GL(n, F_p)`.
    GroupComplement,
    /// `W` is member `index` of the `GL(n, F_p)`-invariant family.
    Search { index: u64 },
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Base => f.write_str("base"),
            Stage::SchurComplement => f.write_str("schur_complement"),
            Stage::GroupComplement => f.write_str("group_complement"),
            Stage::Search { index } => write!(f, "search:{index}"),
        }
    }
}

/// An elimination piece `[W_{ik}, B_{j_1 k}, ..., B_{j_r k}]` contributing
/// to `U_{sk}`; `head = i`, `tail = (j_1, ..., j_r)` non-decreasing.
#[derive(Clone, Debug)]
pub struct UPiece {
    pub head: usize,
    pub tail: Vec<usize>,
    pub space: GradedSubspace,
}

impl UPiece {
    pub fn label(&self, k: usize) -> String {
        let mut s = format!("[W{}", self.head * k);
        for j in &self.tail {
            s.push_str(&format!(",B{}", j * k));
        }
        s.push(']');
        s
    }
}

/// The pieces `(i, tail)` of `U_{sk}`, as multiples of `k`.
///
/// `W_{ik}` enters the elimination at step `i`; eliminating `B_{jk}` then
/// brackets the surviving pieces of degree `> jk` with copies of `B_{jk}`.
/// A piece survives step `j` only while its degree still exceeds `jk`.
pub fn elimination_shapes(s: usize) -> Vec<(usize, Vec<usize>)> {
    fn extend(
        s: usize,
        head: usize,
        tail: &mut Vec<usize>,
        sum: usize,
        out: &mut Vec<(usize, Vec<usize>)>,
    ) {
        if sum == s {
            // Before eliminating B_j the piece has degree head + Σ_{v<j} v.
            let survives =
                (1..s).all(|j| head + tail.iter().filter(|&&v| v < j).sum::<usize>() > j);
            if !tail.is_empty() && survives {
                out.push((head, tail.clone()));
            }
            return;
        }
        let lo = tail.last().copied().unwrap_or(1);
        for v in lo..=s - sum {
            tail.push(v);
            extend(s, head, tail, sum + v, out);
            tail.pop();
        }
    }
    let mut out = Vec::new();
    for head in 2..s {
        extend(s, head, &mut Vec::new(), head, &mut out);
    }
    out
}

/// One step `s` of the construction, at degree `sk`.
#[derive(Clone, Debug)]
pub struct DegreeStep {
    pub s: usize,
    pub degree: usize,
    pub lie: GradedSubspace,
    /// `Q(sk−1) ∩ Q_{sk}`: the brackets of lower Lie powers.
    pub lower: GradedSubspace,
    /// `L^{s/c}(B_{ck})` for the proper divisors `c` of `s`.
    pub c_pieces: Vec<(usize, GradedSubspace)>,
    pub c: GradedSubspace,
    pub u_pieces: Vec<UPiece>,
    pub u: GradedSubspace,
    pub w: GradedSubspace,
    pub b: GradedSubspace,
    pub stage: Stage,
    /// Whether the complement system that produced `W` had a unique solution.
    pub unique: bool,
    pub certificate: SummandCertificate,
}

/// The family `B_k, B_{2k}, ...` up to `max_degree`, with all the data of
/// each step.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub p: Prime,
    pub n: usize,
    pub k: usize,
    pub max_degree: usize,
    pub steps: Vec<DegreeStep>,
}

impl DecompositionResult {
    pub fn step(&self, degree: usize) -> Option<&DegreeStep> {
        self.steps.iter().find(|s| s.degree == degree)
    }

    pub fn b(&self, degree: usize) -> Option<&GradedSubspace> {
        self.step(degree).map(|s| &s.b)
    }

    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.steps.iter().map(|s| (s.degree, s.b.dim())).collect()
    }
}

/// `L^{m}(B)` for a homogeneous `B`, as a subspace of `T^{m·deg B}(V)`.
pub fn lie_power_of(b: &GradedSubspace, m: usize) -> Result<GradedSubspace> {
    let q = subalgebra_generated(b.prime(), b.n(), std::slice::from_ref(b), m * b.r())?;
    Ok(q.into_iter().last().expect("degree is positive"))
}

/// `Σ_{i<s} [L^{(s−i)k}(V), L^{ik}(V)]`.
fn lower_brackets(n: usize, k: usize, s: usize, p: Prime) -> Result<GradedSubspace> {
    let mut acc: Option<GradedSubspace> = None;
    for i in 1..=s / 2 {
        let a = lie_power_graded(n, (s - i) * k, p)?;
        let b = lie_power_graded(n, i * k, p)?;
        let br = bracket_spaces(&a, &b)?;
        acc = Some(match acc {
            None => br,
            Some(x) => x.sum(&br)?,
        });
    }
    acc.ok_or_else(|| Error::Precondition("no lower brackets at s = 1".into()))
}

fn schur_ops<'a>(n: usize, r: usize, p: Prime) -> Vec<TensorOp<'a>> {
    schur_generators(n, r, p)
        .into_iter()
        .filter(|op| !matches!(op, SchurOp::Weight(_)))
        .map(|op| Box::new(move |t: &Tensor| op.apply(t)) as TensorOp<'a>)
        .collect()
}

fn group_ops<'a>(n: usize, p: Prime) -> Result<Vec<TensorOp<'a>>> {
    Ok(gl_generators(n, p)?
        .into_iter()
        .map(|g| Box::new(move |t: &Tensor| t.substitute(&g)) as TensorOp<'a>)
        .collect())
}

fn sum_all(
    p: Prime,
    n: usize,
    r: usize,
    parts: impl IntoIterator<Item = GradedSubspace>,
) -> Result<GradedSubspace> {
    let mut acc = GradedSubspace::zero(p, crate::freelie::WeightIndex::shared(n, r)?);
    for x in parts {
        acc = acc.sum(&x)?;
    }
    Ok(acc)
}

/// Builds `B_k, B_{2k}, ...` up to `max_degree` for `V` of dimension `n`
/// over `F_p`, certifying each `B_{sk}` as a direct summand of `T^{sk}(V)`.
pub fn construct_b_family(
    n: usize,
    p: Prime,
    k: usize,
    max_degree: usize,
    opts: &FamilyOptions,
) -> Result<DecompositionResult> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidInput("k and n must be positive".into()));
    }
    if k.is_multiple_of(p.get() as usize) {
        return Err(Error::Precondition(format!("p = {p} divides k = {k}")));
    }
    if max_degree < k {
        return Err(Error::InvalidInput(format!(
            "max degree {max_degree} is below k = {k}"
        )));
    }
    let mut steps: Vec<DegreeStep> = Vec::new();
    for s in 1..=max_degree / k {
        let step = build_step(n, p, k, s, &steps, opts)?;
        steps.push(step);
    }
    Ok(DecompositionResult {
        p,
        n,
        k,
        max_degree,
        steps,
    })
}

fn build_step(
    n: usize,
    p: Prime,
    k: usize,
    s: usize,
    prev: &[DegreeStep],
    opts: &FamilyOptions,
) -> Result<DegreeStep> {
    let q = s * k;
    let lie = lie_power_graded(n, q, p)?;
    let family: Vec<(usize, GradedSubspace)> =
        prev.iter().map(|st| (st.degree, st.b.clone())).collect();
    let zero = GradedSubspace::zero(p, lie.index().clone());
    if s == 1 {
        let certificate = certify_summand(&SummandContext {
            p,
            n,
            q,
            b: &lie,
            lie: &lie,
            lower: &zero,
            family: &family,
        })?
        .ok_or_else(|| Error::Invariant(format!("L^{q}(V) has no certified retraction")))?;
        return Ok(DegreeStep {
            s,
            degree: q,
            lower: zero.clone(),
            c_pieces: Vec::new(),
            c: zero.clone(),
            u_pieces: Vec::new(),
            u: zero,
            w: lie.clone(),
            b: lie.clone(),
            lie,
            stage: Stage::Base,
            unique: true,
            certificate,
        });
    }

    let lower = lower_brackets(n, k, s, p)?;
    let mut c_pieces = Vec::new();
    for c in (1..s).filter(|c| s.is_multiple_of(*c)) {
        c_pieces.push((c, lie_power_of(&prev[c - 1].b, s / c)?));
    }
    let c = sum_all(p, n, q, c_pieces.iter().map(|(_, x)| x.clone()))?;
    let mut u_pieces = Vec::new();
    for (head, tail) in elimination_shapes(s) {
        let mut space = prev[head - 1].w.clone();
        for &j in &tail {
            space = bracket_spaces(&space, &prev[j - 1].b)?;
        }
        u_pieces.push(UPiece { head, tail, space });
    }
    let u = sum_all(p, n, q, u_pieces.iter().map(|x| x.space.clone()))?;
    let mut parts: Vec<&GradedSubspace> = c_pieces.iter().map(|(_, x)| x).collect();
    parts.extend(u_pieces.iter().map(|x| &x.space));
    if !lower.is_direct_sum_of(&parts)? {
        return Err(Error::Invariant(format!(
            "degree {q}: the brackets of lower Lie powers (dim {}) are not the direct sum of the \
             Lie powers of lower B and the elimination pieces (dims {:?})",
            lower.dim(),
            parts.iter().map(|x| x.dim()).collect::<Vec<_>>()
        )));
    }

    let try_w = |w: GradedSubspace| -> Result<Option<(GradedSubspace, GradedSubspace, SummandCertificate)>> {
        let b = u.sum(&w)?;
        if b.dim() != u.dim() + w.dim() {
            return Ok(None);
        }
        let ctx = SummandContext { p, n, q, b: &b, lie: &lie, lower: &c, family: &family };
        Ok(certify_summand(&ctx)?.map(|cert| (w, b, cert)))
    };

    let mut attempt = None;
    let schur = invariant_complements(&lie, &lower, &schur_ops(n, q, p), opts.max_unknowns)?;
    if let ComplementOutcome::Found(fam) = &schur {
        if let Some(found) = try_w(fam.particular_complement()?)? {
            attempt = Some((found, Stage::SchurComplement, fam.is_unique()));
        }
    }
    if attempt.is_none() {
        let group = invariant_complements(&lie, &lower, &group_ops(n, p)?, opts.max_unknowns)?;
        let fam: ComplementFamily = match group {
            ComplementOutcome::Found(f) => f,
            ComplementOutcome::Infeasible {
                rank,
                augmented_rank,
            } => {
                return Err(Error::ComplementExhausted(format!(
                "degree {q}: no graded GL({n}, F_{p})-invariant complement of the lower brackets \
                     (rank {rank}, augmented rank {augmented_rank})"
            )))
            }
        };
        if let Some(found) = try_w(fam.particular_complement()?)? {
            attempt = Some((found, Stage::GroupComplement, fam.is_unique()));
        } else {
            let total = (p.get() as u64)
                .checked_pow(fam.kernel.len() as u32)
                .unwrap_or(u64::MAX);
            for index in 1..total.min(opts.max_search.saturating_add(1)) {
                if let Some(found) = try_w(fam.enumerated_complement(index)?)? {
                    attempt = Some((found, Stage::Search { index }, false));
                    break;
                }
            }
        }
    }
    let ((w, b, certificate), stage, unique) = attempt.ok_or_else(|| {
        Error::ComplementExhausted(format!(
            "degree {q}: no candidate complement gave a certified direct summand within {} tries",
            opts.max_search
        ))
    })?;

    if !lie.is_direct_sum_of(&[&c, &b])? {
        return Err(Error::Invariant(format!(
            "degree {q}: L^{q}(V) is not the direct sum of C (dim {}) and B (dim {})",
            c.dim(),
            b.dim()
        )));
    }
    Ok(DegreeStep {
        s,
        degree: q,
        lie,
        lower,
        c_pieces,
        c,
        u_pieces,
        u,
        w,
        b,
        stage,
        unique,
        certificate,
    })
}
