use std::collections::BTreeMap;

use crate::combinat::Composition;
use crate::error::{Error, Result};

use super::{DescentElement, Ring};

/// Largest degree for which permutations are listed explicitly.
pub const PERMUTATION_BOUND: usize = 8;

/// A permutation of `0..r` as the list of images: `perm[i] = iσ`.
pub type Perm = Vec<u8>;

pub(crate) fn check_bound(r: usize) -> Result<()> {
    if r > PERMUTATION_BOUND {
        return Err(Error::OracleBound {
            r,
            bound: PERMUTATION_BOUND,
        });
    }
    Ok(())
}

/// All permutations of `0..r` in lexicographic order of image lists.
pub fn all_permutations(r: usize) -> Vec<Perm> {
    fn rec(r: usize, cur: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in 0..r {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                rec(r, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(r, &mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// `Des(σ) = {i : iσ > (i+1)σ}` as a bitmask (bit `i−1` for position `i`).
pub fn descent_mask(perm: &[u8]) -> u64 {
    perm.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .fold(0u64, |m, (i, _)| m | 1 << i)
}

/// The product `στ`: first `σ`, then `τ`, so `i(στ) = (iσ)τ`.
pub fn compose(sigma: &[u8], tau: &[u8]) -> Perm {
    sigma.iter().map(|&i| tau[i as usize]).collect()
}

/// The permutations in `X^ν`: those whose descent set lies inside the set
/// of partial sums of `ν`.
pub fn xnu_as_permutation_sum(nu: &Composition) -> Result<Vec<Perm>> {
    let r = nu.size();
    check_bound(r)?;
    let allowed = nu.descent_mask();
    Ok(all_permutations(r)
        .into_iter()
        .filter(|s| descent_mask(s) & !allowed == 0)
        .collect())
}

/// An element of the integral group algebra `Z Sym(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub r: usize,
    pub coeffs: BTreeMap<Perm, i64>,
}

impl GroupAlgebraElement {
    /// The permutation expansion of an integer descent-algebra element.
    pub fn from_descent(a: &DescentElement) -> Result<Self> {
        check_bound(a.r())?;
        let mut coeffs = BTreeMap::new();
        for s in all_permutations(a.r()) {
            let d = descent_mask(&s);
            let c: i64 = a
                .terms()
                .filter(|&(mask, _)| d & !mask == 0)
                .map(|(_, c)| c)
                .sum();
            if c != 0 {
                coeffs.insert(s, c);
            }
        }
        Ok(GroupAlgebraElement { r: a.r(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<Perm, i64> = BTreeMap::new();
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                *coeffs.entry(compose(s, t)).or_insert(0) += a * b;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        GroupAlgebraElement { r: self.r, coeffs }
    }

    /// Rewrites in the `X^ν` basis: read off the coefficient of each descent
    /// class, then invert `X^T = Σ_{S ⊆ T} D_S` by Möbius inversion. Errors
    /// if the element is not constant on descent classes.
    pub fn to_descent(&self) -> Result<DescentElement> {
        let r = self.r;
        let nmask = 1u64 << (r - 1);
        let mut class_coeff: Vec<Option<i64>> = vec![None; nmask as usize];
        for s in all_permutations(r) {
            let d = descent_mask(&s) as usize;
            let c = self.coeffs.get(&s).copied().unwrap_or(0);
            match class_coeff[d] {
                None => class_coeff[d] = Some(c),
                Some(prev) if prev != c => {
                    return Err(Error::InvalidInput(
                        "group algebra element is not in the descent algebra".into(),
                    ))
                }
                _ => {}
            }
        }
        let d: Vec<i64> = class_coeff.into_iter().map(|c| c.unwrap_or(0)).collect();
        let mut out = DescentElement::zero(r, Ring::Integer);
        for t in 0..nmask {
            let mut x = 0i64;
            // Supersets S of T.
            let free = (nmask - 1) & !t;
            let mut sub = free;
            loop {
                let s = t | sub;
                let sign = if (s.count_ones() - t.count_ones()).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                x += sign * d[s as usize];
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            if x != 0 {
                out.add_mask_term(t, x);
            }
        }
        Ok(out)
    }
}
