use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{lie_power_graded, truncate_graded, GradedSubspace};

use super::certificate::{Route, SummandCertificate};
use super::family::{lie_power_of, DecompositionResult};

/// `L^{power}(B_{b_degree})` inside `L^{sk}(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumPart {
    pub b_degree: usize,
    pub power: usize,
    pub dim: usize,
}

/// `L^{sk}(V) = ⊕_{c|s} L^{s/c}(B_{ck})`, checked by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumCheck {
    pub degree: usize,
    pub lie_dim: usize,
    pub parts: Vec<SumPart>,
    pub direct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCheck {
    pub degree: usize,
    pub dim: usize,
    pub route: Route,
    /// `None` when the certificate verified, otherwise the failure.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationCheck {
    pub degree: usize,
    pub from_n: usize,
    pub to_n: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub max_degree: usize,
    pub sums: Vec<SumCheck>,
    pub summands: Vec<SummandCheck>,
}

impl DecompositionReport {
    pub fn checks(&self) -> usize {
        self.sums.len() + self.summands.len()
    }

    pub fn passed(&self) -> usize {
        self.sums.iter().filter(|s| s.direct).count()
            + self.summands.iter().filter(|s| s.failure.is_none()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checks()
    }
}

/// Re-derives every `L^{s/c}(B_{ck})` from the bases alone and checks that
/// they add up directly to `L^{sk}(V)` for each `sk ≤ max_degree`.
pub fn check_direct_sums(
    p: Prime,
    n: usize,
    k: usize,
    family: &[(usize, GradedSubspace)],
    max_degree: usize,
) -> Result<Vec<SumCheck>> {
    let mut out = Vec::new();
    for s in 1..=max_degree / k {
        let lie = lie_power_graded(n, s * k, p)?;
        let mut spaces = Vec::new();
        let mut parts = Vec::new();
        for c in (1..=s).filter(|c| s % c == 0) {
            let b = family
                .iter()
                .find(|(d, _)| *d == c * k)
                .map(|(_, b)| b)
                .ok_or_else(|| Error::InvalidInput(format!("no summand of degree {}", c * k)))?;
            let x = if c == s {
                b.clone()
            } else {
                lie_power_of(b, s / c)?
            };
            parts.push(SumPart {
                b_degree: c * k,
                power: s / c,
                dim: x.dim(),
            });
            spaces.push(x);
        }
        let refs: Vec<&GradedSubspace> = spaces.iter().collect();
        let direct = lie.is_direct_sum_of(&refs)?;
        out.push(SumCheck {
            degree: s * k,
            lie_dim: lie.dim(),
            parts,
            direct,
        });
    }
    Ok(out)
}

/// Verifies a certificate and that it is about the given summand.
pub fn check_summand(cert: &SummandCertificate, b: &GradedSubspace) -> SummandCheck {
    let failure = if cert.basis != *b.to_subspace().basis() {
        Some("certificate basis differs from the summand".to_string())
    } else {
        cert.verify().err().map(|e| e.to_string())
    };
    SummandCheck {
        degree: cert.degree,
        dim: cert.dim(),
        route: cert.route,
        failure,
    }
}

/// Re-checks a constructed family from its bases and certificates.
pub fn certify_decomposition(result: &DecompositionResult) -> Result<DecompositionReport> {
    let family: Vec<(usize, GradedSubspace)> = result
        .steps
        .iter()
        .map(|s| (s.degree, s.b.clone()))
        .collect();
    let sums = check_direct_sums(result.p, result.n, result.k, &family, result.max_degree)?;
    let summands = result
        .steps
        .iter()
        .map(|s| check_summand(&s.certificate, &s.b))
        .collect();
    Ok(DecompositionReport {
        p: result.p.get(),
        n: result.n,
        k: result.k,
        max_degree: result.max_degree,
        sums,
        summands,
    })
}

/// Compares `B^{(n)}` truncated to the smaller rank with `B^{(n')}` in every
/// degree built in both.
pub fn truncation_consistency(
    larger: &DecompositionResult,
    smaller: &DecompositionResult,
) -> Result<Vec<TruncationCheck>> {
    if larger.p != smaller.p || larger.k != smaller.k || larger.n < smaller.n {
        return Err(Error::InvalidInput("families are not comparable".into()));
    }
    let mut out = Vec::new();
    for st in &smaller.steps {
        if let Some(big) = larger.b(st.degree) {
            out.push(TruncationCheck {
                degree: st.degree,
                from_n: larger.n,
                to_n: smaller.n,
                equal: truncate_graded(big, smaller.n)? == st.b,
            });
        }
    }
    Ok(out)
}
