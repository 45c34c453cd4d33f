use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{left_normed, tensor_dim, GradedSubspace, Tensor};
use crate::linalg::{solve_retraction, FpMatrix, RetractionOutcome, Subspace};
use crate::modrep::{apply_kronecker_power, gl_generators, gl_order};

use super::complement::BasisCoords;

/// How a retraction onto a summand was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The summand is zero.
    Trivial,
    /// `θ_q / q` onto `L^q(V)` (Dynkin–Specht–Wever), then projection along
    /// the lower Lie powers; needs `p ∤ q`.
    Dynkin,
    /// Through `e_{[q,q']} T^q(V)` and the space `U` built from descent
    /// idempotents acting on tensor powers of the lower summands.
    Idempotent,
    /// Averaging over `GL(n, F_p)` of a retraction that is equivariant for a
    /// cyclic Sylow subgroup over which the summand is free.
    SylowAverage,
    /// Direct solution of the linear retraction system.
    Solved,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Trivial => "trivial",
            Route::Dynkin => "dynkin",
            Route::Idempotent => "idempotent",
            Route::SylowAverage => "sylow_average",
            Route::Solved => "solved",
        })
    }
}

/// Evidence that `B ⊆ T^q(V)` is a direct summand as a `GL(n, F_p)`-module:
/// a basis `Bm` of `B` (rows, word coordinates) and a matrix `R` with
/// `Bm·R = I` and `M_g·R = R·A_g` for every generator `g`, where `M_g` is
/// the action on `T^q(V)` and `A_g` the action on `B` in the basis `Bm`.
/// Then `π = R·Bm` is an equivariant idempotent with image `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandCertificate {
    pub p: Prime,
    pub n: usize,
    pub degree: usize,
    pub route: Route,
    pub generators: Vec<FpMatrix>,
    pub basis: FpMatrix,
    pub retraction: FpMatrix,
}

impl SummandCertificate {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Re-checks everything from the stored data alone.
    pub fn verify(&self) -> Result<()> {
        let (p, n, q) = (self.p, self.n, self.degree);
        let big = tensor_dim(n, q)? as usize;
        let fail = |m: String| Err(Error::Invariant(format!("degree {q} certificate: {m}")));
        if self.generators != gl_generators(n, p)? {
            return fail("generators are not the standard generators of GL(n, F_p)".into());
        }
        if self.basis.cols() != big
            || self.retraction.rows() != big
            || self.retraction.cols() != self.dim()
        {
            return fail("matrix shapes do not match".into());
        }
        if self.basis.prime() != p || self.retraction.prime() != p {
            return fail("matrices over the wrong field".into());
        }
        let space = Subspace::row_space(&self.basis);
        if space.dim() != self.dim() {
            return fail("basis rows are dependent".into());
        }
        if self.basis.mul(&self.retraction)? != FpMatrix::identity(p, self.dim()) {
            return fail("retraction is not a left inverse of the basis".into());
        }
        let coords = BasisCoords::new(self.basis.clone())?;
        let rt = self.retraction.transpose();
        for (gi, g) in self.generators.iter().enumerate() {
            let mut a = Vec::with_capacity(self.dim());
            for row in self.basis.row_iter() {
                match coords.coords(&apply_kronecker_power(g, q, row)) {
                    Some(c) => a.push(c),
                    None => return fail(format!("summand is not invariant under generator {gi}")),
                }
            }
            let a = FpMatrix::from_residue_rows(p, self.dim(), a)?;
            // Columns of M_g·R are g^T applied to the columns of R.
            let gt = g.transpose();
            let lhs_t: Vec<Vec<u32>> = rt
                .row_iter()
                .map(|c| apply_kronecker_power(&gt, q, c))
                .collect();
            let lhs_t = FpMatrix::from_residue_rows(p, big, lhs_t)?;
            let rhs_t = a.transpose().mul(&rt)?;
            if lhs_t != rhs_t {
                return fail(format!("retraction does not commute with generator {gi}"));
            }
        }
        Ok(())
    }

    /// The projection `π = R·Bm` on `T^q(V)`, for small ambient dimension.
    pub fn projection(&self) -> Result<FpMatrix> {
        self.retraction.mul(&self.basis)
    }
}

/// For each row of `b.to_subspace()` in order, its weight and row index
/// inside that weight's block.
pub fn global_rows(b: &GradedSubspace) -> Vec<(usize, usize)> {
    let index = b.index();
    let mut rows: Vec<(u64, usize, usize)> = Vec::with_capacity(b.dim());
    for (w, block) in b.blocks().iter().enumerate() {
        for (r, &piv) in block.pivots().iter().enumerate() {
            rows.push((index.words_of(w)[piv], w, r));
        }
    }
    rows.sort_unstable();
    rows.into_iter().map(|(_, w, r)| (w, r)).collect()
}

/// Per weight, the global row position of each local row of `b`.
pub(crate) fn local_to_global(b: &GradedSubspace) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = b.blocks().iter().map(|s| vec![0; s.dim()]).collect();
    for (g, (w, r)) in global_rows(b).into_iter().enumerate() {
        out[w][r] = g;
    }
    out
}

/// Largest `N · dim B` handed to the direct retraction solver.
pub const SOLVER_LIMIT: usize = 20_000;

/// What a route needs to know about the summand `B ⊆ L^q(V)`.
pub struct SummandContext<'a> {
    pub p: Prime,
    pub n: usize,
    pub q: usize,
    pub b: &'a GradedSubspace,
    pub lie: &'a GradedSubspace,
    /// A submodule `C` of `L^q(V)` with `L^q(V) = C ⊕ B`.
    pub lower: &'a GradedSubspace,
    /// The summands `(d, B_d)` already constructed in lower degrees.
    pub family: &'a [(usize, GradedSubspace)],
}

/// Row `i` holds the coordinates of `basis_i · g^{⊗q}` in `basis`, or
/// `None` when the span is not invariant.
pub(crate) fn action_on_basis(
    g: &FpMatrix,
    q: usize,
    basis: &BasisCoords,
) -> Result<Option<FpMatrix>> {
    let mut rows = Vec::with_capacity(basis.dim());
    for row in basis.basis().row_iter() {
        match basis.coords(&apply_kronecker_power(g, q, row)) {
            Some(c) => rows.push(c),
            None => return Ok(None),
        }
    }
    FpMatrix::from_residue_rows(g.prime(), basis.dim(), rows).map(Some)
}

/// Tries the routes in turn and returns the first certificate that
/// verifies, or `None` when no route produces one.
pub fn certify_summand(ctx: &SummandContext<'_>) -> Result<Option<SummandCertificate>> {
    let (p, n, q) = (ctx.p, ctx.n, ctx.q);
    let big = tensor_dim(n, q)? as usize;
    let basis = ctx.b.to_subspace().basis().clone();
    let generators = gl_generators(n, p)?;
    let make = |route, retraction| SummandCertificate {
        p,
        n,
        degree: q,
        route,
        generators: generators.clone(),
        basis: basis.clone(),
        retraction,
    };
    if basis.rows() == 0 {
        let cert = make(Route::Trivial, FpMatrix::zeros(p, big, 0));
        cert.verify()?;
        return Ok(Some(cert));
    }
    let mut routes: Vec<(Route, fn(&SummandContext<'_>) -> Result<Option<FpMatrix>>)> = Vec::new();
    if q % p.get() as usize != 0 {
        routes.push((Route::Dynkin, dynkin_retraction));
    }
    routes.push((Route::Idempotent, super::canonical::idempotent_retraction));
    if n == 2 {
        routes.push((Route::SylowAverage, sylow_retraction));
    }
    routes.push((Route::Solved, solved_retraction));
    for (route, build) in routes {
        if let Some(r) = build(ctx)? {
            let cert = make(route, r);
            if cert.verify().is_ok() {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Fills a retraction from, for each word, its image in `L^q(V)` given per
/// weight, taking the `B`-part of its coordinates in the basis `[C_α; B_α]`.
fn retraction_through_lie(
    ctx: &SummandContext<'_>,
    image: impl Fn(&Tensor) -> Tensor,
) -> Result<Option<FpMatrix>> {
    let p = ctx.p;
    let index = ctx.b.index().clone();
    let big = index.ambient_dim();
    let cols = local_to_global(ctx.b);
    let mut r = FpMatrix::zeros(p, big, ctx.b.dim());
    for w in 0..index.weights().len() {
        let bw = ctx.b.block(w);
        if bw.dim() == 0 {
            continue;
        }
        let cw = ctx.lower.block(w);
        let coords = BasisCoords::new(cw.basis().vstack(bw.basis())?)?;
        for &word in index.words_of(w) {
            let t = Tensor::from_terms(p, ctx.n, ctx.q, [(word, 1)]);
            let v = index.local_vector(&image(&t), w);
            let Some(c) = coords.coords(&v) else {
                return Ok(None);
            };
            for (j, &x) in c[cw.dim()..].iter().enumerate() {
                r.set(word as usize, cols[w][j], x);
            }
        }
    }
    Ok(Some(r))
}

/// `w ↦ θ(w)/q` with `θ(x_{i_1}⋯x_{i_q}) = [x_{i_1}, …, x_{i_q}]`, which
/// fixes `L^q(V)` pointwise when `p ∤ q`.
fn dynkin_retraction(ctx: &SummandContext<'_>) -> Result<Option<FpMatrix>> {
    let (p, n, q) = (ctx.p, ctx.n, ctx.q);
    let inv_q = p.inv(p.reduce_u64(q as u64));
    retraction_through_lie(ctx, |t| {
        let (word, _) = t.words().next().expect("a single word");
        let letters: Vec<Tensor> = word
            .letters()
            .iter()
            .map(|&l| Tensor::letter(p, n, l))
            .collect();
        left_normed(&letters).scale(inv_q)
    })
}

/// Direct solution of the retraction system.
fn solved_retraction(ctx: &SummandContext<'_>) -> Result<Option<FpMatrix>> {
    let (p, n, q) = (ctx.p, ctx.n, ctx.q);
    let big = tensor_dim(n, q)? as usize;
    if big.saturating_mul(ctx.b.dim()) > SOLVER_LIMIT {
        return Ok(None);
    }
    let basis = ctx.b.to_subspace().basis().clone();
    let coords = BasisCoords::new(basis.clone())?;
    let mut a_dom = Vec::new();
    let mut a_img = Vec::new();
    for g in gl_generators(n, p)? {
        let Some(a) = action_on_basis(&g, q, &coords)? else {
            return Ok(None);
        };
        let rows: Vec<Vec<u32>> = (0..big)
            .map(|i| {
                let mut e = vec![0u32; big];
                e[i] = 1;
                apply_kronecker_power(&g, q, &e)
            })
            .collect();
        a_dom.push(FpMatrix::from_residue_rows(p, big, rows)?);
        a_img.push(a);
    }
    Ok(match solve_retraction(&basis, &a_dom, &a_img) {
        RetractionOutcome::Retraction(y) => Some(y),
        RetractionOutcome::Infeasible { .. } => None,
    })
}

/// All invertible `2 × 2` matrices over `F_p`.
fn gl2_elements(p: Prime) -> Result<Vec<FpMatrix>> {
    let m = p.get();
    let mut out = Vec::new();
    for code in 0..m.pow(4) {
        let e = [
            code % m,
            code / m % m,
            code / (m * m) % m,
            code / (m * m * m),
        ];
        let g = FpMatrix::from_vec(p, 2, 2, e.to_vec())?;
        if g.is_invertible() {
            out.push(g);
        }
    }
    Ok(out)
}

/// For `n = 2`: `B` is free over the cyclic Sylow subgroup `P = ⟨h⟩`, `h`
/// the transvection, when `B = Y ⊕ hY ⊕ ⋯ ⊕ h^{p−1}Y` for a complement `Y`
/// of `(h − 1)B`. The projection `τ` of `B` onto `Y` along the other
/// translates gives the `P`-equivariant retraction `Σ_i h^i R_0 τ h^{−i}`,
/// and averaging over coset representatives of `P` in `G` gives a
/// `G`-equivariant one; together this is
/// `[G:P]^{−1} Σ_{x∈G} M_x R_0 τ A_{x^{−1}}`.
fn sylow_retraction(ctx: &SummandContext<'_>) -> Result<Option<FpMatrix>> {
    let (p, n, q) = (ctx.p, ctx.n, ctx.q);
    if n != 2 {
        return Ok(None);
    }
    let sub = ctx.b.to_subspace();
    let basis = sub.basis().clone();
    let dim = basis.rows();
    let coords = BasisCoords::new(basis.clone())?;
    let mut h = FpMatrix::identity(p, 2);
    h.set(0, 1, 1);
    let Some(a_h) = action_on_basis(&h, q, &coords)? else {
        return Ok(None);
    };

    let (_, rad_pivots) = a_h.sub(&FpMatrix::identity(p, dim))?.rref_with_pivots();
    let y: Vec<usize> = (0..dim).filter(|j| !rad_pivots.contains(j)).collect();
    if y.len() * p.get() as usize != dim {
        return Ok(None);
    }
    // Rows y_j · A_h^i, block i = 0 first.
    let mut z_rows = Vec::with_capacity(dim);
    let mut block: Vec<Vec<u32>> = y
        .iter()
        .map(|&j| {
            let mut e = vec![0u32; dim];
            e[j] = 1;
            e
        })
        .collect();
    for _ in 0..p.get() {
        z_rows.extend(block.iter().cloned());
        block = block.iter().map(|v| a_h.apply_row(v)).collect();
    }
    let z = FpMatrix::from_residue_rows(p, dim, z_rows)?;
    let Some(z_inv) = z.inverse() else {
        return Ok(None);
    };
    let mut keep = FpMatrix::zeros(p, dim, dim);
    for i in 0..y.len() {
        keep.set(i, i, 1);
    }
    let tau = z_inv.mul(&keep)?.mul(&z)?;

    let pivots = sub.pivots().to_vec();
    let big = basis.cols();
    let mut acc_t = FpMatrix::zeros(p, dim, big);
    let tau_t = tau.transpose();
    for x in gl2_elements(p)? {
        let x_inv = x.inverse().expect("invertible");
        let Some(a_inv) = action_on_basis(&x_inv, q, &coords)? else {
            return Ok(None);
        };
        let xt = x.transpose();
        // Row j of K is column pivot_j of M_x.
        let k_rows: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&c| {
                let mut e = vec![0u32; big];
                e[c] = 1;
                apply_kronecker_power(&xt, q, &e)
            })
            .collect();
        let k = FpMatrix::from_residue_rows(p, big, k_rows)?;
        let term = a_inv.transpose().mul(&tau_t)?.mul(&k)?;
        acc_t = acc_t.add(&term)?;
    }
    let order = gl_order(2, p).expect("small group");
    let index = p.reduce_u64(order / p.get() as u64);
    Ok(Some(acc_t.scale(p.inv(index)).transpose()))
}
