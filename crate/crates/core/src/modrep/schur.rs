use std::fmt;

use crate::fp::Prime;
use crate::freelie::{MultiDegree, Tensor};

/// A generator of the Schur algebra `S(n, r)` acting on `T^r(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchurOp {
    /// The weight idempotent `ξ_α`: keeps the words of multidegree `α`.
    Weight(MultiDegree),
    /// The divided power `E^{(m)}` replacing `m` occurrences of letter
    /// `from` by letter `to`, summed over all choices of occurrences
    /// (letters are 1-based).
    Raise { from: u8, to: u8, m: usize },
}

impl SchurOp {
    pub fn apply(&self, t: &Tensor) -> Tensor {
        match self {
            SchurOp::Weight(alpha) => {
                let terms = t
                    .words()
                    .filter(|(w, _)| w.multidegree(t.n()) == *alpha)
                    .map(|(w, c)| (w.index(t.n()), c as i64))
                    .collect::<Vec<_>>();
                Tensor::from_terms(t.prime(), t.n(), t.degree(), terms)
            }
            SchurOp::Raise { from, to, m } => divided_power(t, *from, *to, *m),
        }
    }

    /// The multidegree shift, as (letter losing, letter gaining, amount).
    pub fn shift(&self) -> Option<(u8, u8, usize)> {
        match self {
            SchurOp::Weight(_) => None,
            SchurOp::Raise { from, to, m } => Some((*from, *to, *m)),
        }
    }
}

impl fmt::Display for SchurOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurOp::Weight(a) => write!(f, "xi[{a}]"),
            SchurOp::Raise { from, to, m } => write!(f, "E[{to}<-{from}]^({m})"),
        }
    }
}

/// `E^{(m)}`: the coefficient of `t^m` in the substitution `x_from ↦
/// x_from + t·x_to`.
pub fn divided_power(t: &Tensor, from: u8, to: u8, m: usize) -> Tensor {
    let (p, n, r) = (t.prime(), t.n(), t.degree());
    let mut terms: Vec<(u64, i64)> = Vec::new();
    for (w, c) in t.words() {
        let letters = w.letters();
        let spots: Vec<usize> = (0..r).filter(|&i| letters[i] == from).collect();
        if spots.len() < m {
            continue;
        }
        let mut chosen = Vec::with_capacity(m);
        choose(&spots, m, 0, &mut chosen, &mut |sel| {
            let mut l = letters.to_vec();
            for &i in sel {
                l[i] = to;
            }
            let idx = l.iter().fold(0u64, |a, &x| a * n as u64 + (x - 1) as u64);
            terms.push((idx, c as i64));
        });
    }
    Tensor::from_terms(p, n, r, terms)
}

fn choose(
    items: &[usize],
    m: usize,
    start: usize,
    cur: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == m {
        emit(cur);
        return;
    }
    let need = m - cur.len();
    for i in start..=items.len() - need {
        cur.push(items[i]);
        choose(items, m, i + 1, cur, emit);
        cur.pop();
    }
}

/// Weight idempotents together with `E^{(p^a)}` for all ordered letter
/// pairs and `p^a ≤ r`; over `F_p` these generate `S(n, r)`.
pub fn schur_generators(n: usize, r: usize, p: Prime) -> Vec<SchurOp> {
    let mut ops: Vec<SchurOp> = MultiDegree::all(n, r)
        .into_iter()
        .map(SchurOp::Weight)
        .collect();
    for from in 1..=n as u8 {
        for to in 1..=n as u8 {
            if from == to {
                continue;
            }
            let mut m = 1usize;
            while m <= r {
                ops.push(SchurOp::Raise { from, to, m });
                m *= p.get() as usize;
            }
        }
    }
    ops
}
