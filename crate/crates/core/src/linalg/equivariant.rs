use crate::error::{Error, Result};
use crate::fp::Prime;

use super::matrix::FpMatrix;
use super::subspace::Subspace;
use super::system::{LinearSystem, SolveOutcome};

/// A finite set of invertible matrices acting on the right of row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    p: Prime,
    ambient_dim: usize,
    generators: Vec<FpMatrix>,
}

impl GroupAction {
    pub fn new(generators: Vec<FpMatrix>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| {
            Error::InvalidInput("a group action needs at least one generator".into())
        })?;
        let p = first.prime();
        let d = first.rows();
        for (i, g) in generators.iter().enumerate() {
            if g.prime() != p || g.rows() != d || g.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is not a {d}x{d} matrix over F_{p}"
                )));
            }
            if !g.is_invertible() {
                return Err(Error::InvalidInput(format!("generator {i} is singular")));
            }
        }
        Ok(GroupAction {
            p,
            ambient_dim: d,
            generators,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionOutcome {
    /// `π`, in coordinates of the domain's echelon basis.
    Projection(FpMatrix),
    /// The assembled system has `rank < augmented_rank`.
    Infeasible { rank: usize, augmented_rank: usize },
}

impl ProjectionOutcome {
    pub fn projection(&self) -> Option<&FpMatrix> {
        match self {
            ProjectionOutcome::Projection(m) => Some(m),
            ProjectionOutcome::Infeasible { .. } => None,
        }
    }
}

/// Solves for an idempotent endomorphism `π` of `domain` that commutes with
/// every generator and has row space `image`.
///
/// The projection is parametrized as `π = Y·K`, where `K` holds the image
/// basis in domain coordinates. Then `π² = π` and `rowspace(π) = image` are
/// equivalent to `K·Y = I`, and commuting with `g` is equivalent to
/// `Y·A_g|image = A_g·Y`. All three constraint blocks go into one system.
pub fn solve_equivariant_projection(
    action: &GroupAction,
    image: &Subspace,
    domain: &Subspace,
) -> Result<ProjectionOutcome> {
    if domain.ambient_dim() != action.ambient_dim() || domain.prime() != action.prime() {
        return Err(Error::AmbientMismatch(
            "domain does not live in the acted-on space".into(),
        ));
    }
    if !domain.contains_subspace(image) {
        return Err(Error::Precondition(
            "image is not contained in domain".into(),
        ));
    }
    let mut a_dom = Vec::new();
    let mut a_img = Vec::new();
    for (i, g) in action.generators().iter().enumerate() {
        let act = |v: &[u32]| g.apply_row(v);
        a_dom.push(domain.induced_matrix(act).map_err(|_| {
            Error::Precondition(format!("domain is not invariant under generator {i}"))
        })?);
        a_img.push(image.induced_matrix(act).map_err(|_| {
            Error::Precondition(format!("image is not invariant under generator {i}"))
        })?);
    }
    let k = domain.relative_basis(image)?;
    Ok(match solve_retraction(&k, &a_dom, &a_img) {
        RetractionOutcome::Retraction(y) => {
            ProjectionOutcome::Projection(y.mul(&k).expect("conformable"))
        }
        RetractionOutcome::Infeasible {
            rank,
            augmented_rank,
        } => ProjectionOutcome::Infeasible {
            rank,
            augmented_rank,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractionOutcome {
    Retraction(FpMatrix),
    Infeasible { rank: usize, augmented_rank: usize },
}

/// Assembles the system for a `d × k` matrix `Y` with `K·Y = I_k` and
/// `Y·a_img[g] = a_dom[g]·Y` for each generator.
pub fn retraction_system(k: &FpMatrix, a_dom: &[FpMatrix], a_img: &[FpMatrix]) -> LinearSystem {
    let p = k.prime();
    let (kd, d) = (k.rows(), k.cols());
    let var = |i: usize, j: usize| i * kd + j;
    let mut sys = LinearSystem::new(p, d * kd);
    for a in 0..kd {
        for b in 0..kd {
            let eq = (0..d)
                .filter(|&i| k.get(a, i) != 0)
                .map(|i| (var(i, b), k.get(a, i)))
                .collect();
            sys.push(eq, (a == b) as u32);
        }
    }
    for (ad, ai) in a_dom.iter().zip(a_img) {
        for i in 0..d {
            for b in 0..kd {
                let mut eq: Vec<(usize, u32)> = (0..kd)
                    .filter(|&j| ai.get(j, b) != 0)
                    .map(|j| (var(i, j), ai.get(j, b)))
                    .collect();
                eq.extend(
                    (0..d)
                        .filter(|&l| ad.get(i, l) != 0)
                        .map(|l| (var(l, b), p.neg(ad.get(i, l)))),
                );
                sys.push(eq, 0);
            }
        }
    }
    sys
}

/// Solves the retraction system of [`retraction_system`].
pub fn solve_retraction(k: &FpMatrix, a_dom: &[FpMatrix], a_img: &[FpMatrix]) -> RetractionOutcome {
    let p = k.prime();
    let (kd, d) = (k.rows(), k.cols());
    match retraction_system(k, a_dom, a_img).solve() {
        SolveOutcome::Solved(sol) => RetractionOutcome::Retraction(
            FpMatrix::from_vec(p, d, kd, sol.particular).expect("variable count matches"),
        ),
        SolveOutcome::Infeasible {
            rank,
            augmented_rank,
        } => RetractionOutcome::Infeasible {
            rank,
            augmented_rank,
        },
    }
}

/// Re-checks a projection returned by [`solve_equivariant_projection`]:
/// idempotent, commuting with each generator on the domain, row space equal
/// to the image.
pub fn verify_projection(
    action: &GroupAction,
    image: &Subspace,
    domain: &Subspace,
    pi: &FpMatrix,
) -> Result<bool> {
    let d = domain.dim();
    if pi.rows() != d || pi.cols() != d {
        return Ok(false);
    }
    if pi.mul(pi)? != *pi {
        return Ok(false);
    }
    for g in action.generators() {
        let a = domain.induced_matrix(|v| g.apply_row(v))?;
        if pi.mul(&a)? != a.mul(pi)? {
            return Ok(false);
        }
    }
    let k = domain.relative_basis(image)?;
    Ok(Subspace::row_space(pi) == Subspace::row_space(&k))
}
