use crate::combinat::{
    p_equiv_classes, partitions, young_character, ClassFunction, Composition, PClass,
};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::{LinearSystem, SolveOutcome};

use super::{DescentElement, Ring};

const MAX_LIFT_STEPS: usize = 64;

/// Orthogonal idempotents `e_J` of `D_{r,F_p}`, one per `p`-equivalence
/// class, with `c(e_J)` the indicator function of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    pub r: usize,
    pub p: Prime,
    /// In lex order of the smallest member of each class.
    pub members: Vec<(PClass, DescentElement)>,
}

impl IdempotentFamily {
    pub fn get(&self, class: &PClass) -> Option<&DescentElement> {
        self.members
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, e)| e)
    }

    /// Checks `Σ e_J = 1`, `e_J e_K = δ_JK e_J` and the indicator images.
    pub fn verify(&self) -> Result<()> {
        let ring = Ring::Modular(self.p);
        let mut total = DescentElement::zero(self.r, ring);
        for (j, (cj, ej)) in self.members.iter().enumerate() {
            total = total.add(ej)?;
            if ej.c_map() != ClassFunction::indicator(cj, self.p) {
                return Err(Error::Invariant(format!(
                    "c(e_J) is not the indicator of {cj}"
                )));
            }
            for (k, (ck, ek)) in self.members.iter().enumerate() {
                let prod = ej.multiply(ek)?;
                let expected = if j == k {
                    ej.clone()
                } else {
                    DescentElement::zero(self.r, ring)
                };
                if prod != expected {
                    return Err(Error::Invariant(format!(
                        "e_J e_K wrong for J = {cj}, K = {ck}"
                    )));
                }
            }
        }
        if total != DescentElement::identity(self.r, ring) {
            return Err(Error::Invariant(
                "idempotents do not sum to the identity".into(),
            ));
        }
        Ok(())
    }
}

/// Some `a` with `c(a)` equal to the indicator of `class`, from a linear
/// solve over the `X^ν` coordinates.
fn indicator_preimage(r: usize, p: Prime, class: &PClass) -> Result<DescentElement> {
    let comps: Vec<Composition> = (0..1u64 << (r - 1))
        .map(|m| Composition::from_descent_mask(r, m).expect("mask in range"))
        .collect();
    let mut sys = LinearSystem::new(p, comps.len());
    for l in partitions(r) {
        let row = comps
            .iter()
            .enumerate()
            .map(|(i, nu)| {
                (
                    i,
                    p.reduce_u64(young_character(nu, &l).expect("sizes agree")),
                )
            })
            .filter(|&(_, v)| v != 0)
            .collect();
        sys.push(row, class.contains(&l) as u32);
    }
    match sys.solve() {
        SolveOutcome::Solved(sol) => DescentElement::from_mask_coeffs(
            r,
            Ring::Modular(p),
            sol.particular.into_iter().map(i64::from).collect(),
        ),
        SolveOutcome::Infeasible { .. } => Err(Error::Invariant(format!(
            "indicator of {class} is not in the image of c"
        ))),
    }
}

/// Iterates `e ← 3e² − 2e³` until `e² = e`.
fn lift(mut e: DescentElement) -> Result<DescentElement> {
    for _ in 0..MAX_LIFT_STEPS {
        let e2 = e.multiply(&e)?;
        if e2 == e {
            return Ok(e);
        }
        let e3 = e2.multiply(&e)?;
        e = e2.scale(3).sub(&e3.scale(2))?;
    }
    Err(Error::NoConvergence(format!(
        "idempotent lifting in degree {}",
        e.r()
    )))
}

/// Lifts the indicator functions of the `p`-classes of `Part(r)` to an
/// orthogonal family of idempotents summing to the identity.
pub fn lift_idempotents(r: usize, p: Prime) -> Result<IdempotentFamily> {
    if r == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let ring = Ring::Modular(p);
    let one = DescentElement::identity(r, ring);
    let mut classes = p_equiv_classes(r, p);
    classes.sort_by(|a, b| a.first().cmp(b.first()));
    let last = classes.len() - 1;
    let mut members = Vec::with_capacity(classes.len());
    let mut taken = DescentElement::zero(r, ring);
    for (i, class) in classes.into_iter().enumerate() {
        let rest = one.sub(&taken)?;
        let e = if i == last {
            rest
        } else {
            let a = lift(indicator_preimage(r, p, &class)?)?;
            lift(rest.multiply(&a)?.multiply(&rest)?)?
        };
        taken = taken.add(&e)?;
        members.push((class, e));
    }
    let family = IdempotentFamily { r, p, members };
    family.verify()?;
    Ok(family)
}

/// [`lift_idempotents`], computed once per `(r, p)` and shared.
pub fn idempotent_family(r: usize, p: Prime) -> Result<std::sync::Arc<IdempotentFamily>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<IdempotentFamily>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(r, p.get())) {
        return Ok(f.clone());
    }
    let f = Arc::new(lift_idempotents(r, p)?);
    cache.lock().unwrap().insert((r, p.get()), f.clone());
    Ok(f)
}
