use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{GradedSubspace, Tensor, WeightIndex};
use crate::linalg::{EchelonBuilder, FpMatrix, LinearSystem, SolveOutcome, Subspace};

/// A linear operator on tensors of one degree.
pub type TensorOp<'a> = Box<dyn Fn(&Tensor) -> Tensor + 'a>;

/// Coordinates with respect to a fixed (not necessarily echelon) basis.
#[derive(Clone, Debug)]
pub struct BasisCoords {
    basis: FpMatrix,
    pivots: Vec<usize>,
    inverse: FpMatrix,
}

impl BasisCoords {
    /// `basis` must have linearly independent rows.
    pub fn new(basis: FpMatrix) -> Result<Self> {
        let (_, pivots) = basis.rref_with_pivots();
        if pivots.len() != basis.rows() {
            return Err(Error::InvalidInput(
                "basis rows are linearly dependent".into(),
            ));
        }
        let inverse = basis
            .select_columns(&pivots)
            .inverse()
            .ok_or_else(|| Error::Invariant("pivot minor of a basis is singular".into()))?;
        Ok(BasisCoords {
            basis,
            pivots,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let sel: Vec<u32> = self.pivots.iter().map(|&j| v[j]).collect();
        let c = self.inverse.apply_row(&sel);
        (self.basis.apply_row(&c) == v).then_some(c)
    }
}

/// The affine family of invariant complements `W` of `D` in `L`, one
/// weight space at a time: `W_α` is spanned by `x_i + Σ_j U_α[i,j] d_j`
/// where the `x_i` complete a basis of `D_α` to one of `L_α`.
pub struct ComplementFamily {
    p: Prime,
    index: Arc<WeightIndex>,
    d_rows: Vec<FpMatrix>,
    x_rows: Vec<FpMatrix>,
    offsets: Vec<usize>,
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
    pub equations: usize,
}

pub enum ComplementOutcome {
    Found(ComplementFamily),
    Infeasible { rank: usize, augmented_rank: usize },
}

impl ComplementFamily {
    pub fn unknowns(&self) -> usize {
        self.particular.len()
    }

    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }

    /// The complement for a given solution vector of the system.
    pub fn complement_for(&self, u: &[u32]) -> Result<GradedSubspace> {
        let p = self.p;
        let mut blocks = Vec::with_capacity(self.x_rows.len());
        for (w, (x, d)) in self.x_rows.iter().zip(&self.d_rows).enumerate() {
            let dd = d.rows();
            let rows: Vec<Vec<u32>> = (0..x.rows())
                .map(|i| {
                    let mut v = x.row(i).to_vec();
                    for j in 0..dd {
                        let c = u[self.offsets[w] + i * dd + j];
                        if c != 0 {
                            for (a, &b) in v.iter_mut().zip(d.row(j)) {
                                *a = p.add(*a, p.mul(c, b));
                            }
                        }
                    }
                    v
                })
                .collect();
            blocks.push(Subspace::span(p, self.index.block_dim(w), rows.iter())?);
        }
        GradedSubspace::from_blocks(p, self.index.clone(), blocks)
    }

    /// The particular solution (free variables zero).
    pub fn particular_complement(&self) -> Result<GradedSubspace> {
        self.complement_for(&self.particular)
    }

    /// Particular solution plus the kernel combination whose coefficients
    /// are the base-`p` digits of `index` (least significant first).
    pub fn enumerated_complement(&self, mut index: u64) -> Result<GradedSubspace> {
        let p = self.p;
        let mut u = self.particular.clone();
        for k in &self.kernel {
            let c = (index % p.get() as u64) as u32;
            index /= p.get() as u64;
            if c != 0 {
                for (a, &b) in u.iter_mut().zip(k) {
                    *a = p.add(*a, p.mul(c, b));
                }
            }
        }
        self.complement_for(&u)
    }
}

/// Splits a tensor into local vectors per weight.
fn split_by_weight(index: &WeightIndex, t: &Tensor) -> BTreeMap<usize, Vec<u32>> {
    let mut out: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (w, c) in t.terms() {
        let wt = index.weight_of(w);
        out.entry(wt)
            .or_insert_with(|| vec![0; index.block_dim(wt)])[index.local_of(w)] = c;
    }
    out
}

/// Solves for weight-graded complements `W` of `D` in `L` that are
/// invariant under every operator in `ops` (`D` and `L` must be invariant
/// and graded, with `D ⊆ L`). The operators may move between weights.
pub fn invariant_complements(
    l: &GradedSubspace,
    d: &GradedSubspace,
    ops: &[TensorOp<'_>],
    max_unknowns: usize,
) -> Result<ComplementOutcome> {
    if !l.contains_subspace(d) {
        return Err(Error::Precondition("D is not contained in L".into()));
    }
    let p = l.prime();
    let index = l.index().clone();
    let nw = index.weights().len();
    let mut d_rows = Vec::with_capacity(nw);
    let mut x_rows = Vec::with_capacity(nw);
    let mut coords = Vec::with_capacity(nw);
    let mut offsets = Vec::with_capacity(nw);
    let mut nvars = 0usize;
    for w in 0..nw {
        let dim = index.block_dim(w);
        let db = d.block(w).basis().clone();
        let mut eb = EchelonBuilder::new(p, dim);
        for r in db.row_iter() {
            eb.insert(r.to_vec());
        }
        let xs: Vec<Vec<u32>> = l
            .block(w)
            .rows()
            .filter(|r| eb.insert(r.to_vec()))
            .map(<[u32]>::to_vec)
            .collect();
        let xb = FpMatrix::from_residue_rows(p, dim, xs)?;
        coords.push(BasisCoords::new(db.vstack(&xb)?)?);
        offsets.push(nvars);
        nvars += db.rows() * xb.rows();
        d_rows.push(db);
        x_rows.push(xb);
    }
    if nvars > max_unknowns {
        return Err(Error::CapExceeded(format!(
            "complement system with {nvars} unknowns"
        )));
    }

    let mut sys = LinearSystem::new(p, nvars);
    for op in ops {
        for w in 0..nw {
            let (dd, dx) = (d_rows[w].rows(), x_rows[w].rows());
            if dx == 0 {
                continue;
            }
            // Images of the D- and X-basis vectors, in [D; X] coordinates of
            // each target weight.
            let image = |v: &[u32]| -> Result<BTreeMap<usize, Vec<u32>>> {
                let t = index.tensor_from_local(p, w, v);
                split_by_weight(&index, &op(&t))
                    .into_iter()
                    .map(|(w2, lv)| {
                        coords[w2]
                            .coords(&lv)
                            .map(|c| (w2, c))
                            .ok_or_else(|| Error::Precondition("L is not invariant".into()))
                    })
                    .collect()
            };
            let d_img: Vec<_> = d_rows[w].row_iter().map(image).collect::<Result<_>>()?;
            let x_img: Vec<_> = x_rows[w].row_iter().map(image).collect::<Result<_>>()?;
            for (j, img) in d_img.iter().enumerate() {
                for (&w2, c) in img {
                    if c[d_rows[w2].rows()..].iter().any(|&a| a != 0) {
                        return Err(Error::Precondition(format!(
                            "D is not invariant (basis vector {j} of weight {})",
                            index.weights()[w]
                        )));
                    }
                }
            }
            let mut targets: Vec<usize> = x_img.iter().flat_map(|m| m.keys().copied()).collect();
            targets.extend(d_img.iter().flat_map(|m| m.keys().copied()));
            targets.sort_unstable();
            targets.dedup();
            for &w2 in &targets {
                let dd2 = d_rows[w2].rows();
                let zero = vec![0u32; dd2 + x_rows[w2].rows()];
                for i in 0..dx {
                    let xi = x_img[i].get(&w2).unwrap_or(&zero);
                    for m in 0..dd2 {
                        // Σ_l A_XX[i,l] U'[l,m] − Σ_l U[i,l] A_DD[l,m] = A_XD[i,m]
                        let mut eq = Vec::new();
                        for (l, &a) in xi[dd2..].iter().enumerate() {
                            if a != 0 {
                                eq.push((offsets[w2] + l * dd2 + m, a));
                            }
                        }
                        for l in 0..dd {
                            let a = d_img[l].get(&w2).map_or(0, |c| c[m]);
                            if a != 0 {
                                eq.push((offsets[w] + i * dd + l, p.neg(a)));
                            }
                        }
                        sys.push(eq, xi[m]);
                    }
                }
            }
        }
    }
    let equations = sys.len();
    Ok(match sys.solve() {
        SolveOutcome::Solved(sol) => ComplementOutcome::Found(ComplementFamily {
            p,
            index,
            d_rows,
            x_rows,
            offsets,
            particular: sol.particular,
            kernel: sol.kernel,
            equations,
        }),
        SolveOutcome::Infeasible {
            rank,
            augmented_rank,
        } => ComplementOutcome::Infeasible {
            rank,
            augmented_rank,
        },
    })
}
