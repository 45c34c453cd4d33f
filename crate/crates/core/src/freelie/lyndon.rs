use std::collections::HashMap;

use crate::fp::Prime;

use super::tensor::Tensor;
use super::word::Word;

/// Lyndon words of length exactly `r` over `1..=n`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(n: usize, r: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || r == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == r {
            out.push(Word::new_unchecked(w.iter().map(|&l| l + 1).collect()));
        }
        let m = w.len();
        while w.len() < r {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// Splits a Lyndon word of length ≥ 2 as `uv` with `v` its longest proper
/// Lyndon suffix.
pub fn standard_factorization(w: &Word) -> (Word, Word) {
    let l = w.letters();
    assert!(
        l.len() >= 2,
        "single letters have no standard factorization"
    );
    for i in 1..l.len() {
        if is_lyndon(&l[i..]) {
            return (
                Word::new_unchecked(l[..i].to_vec()),
                Word::new_unchecked(l[i..].to_vec()),
            );
        }
    }
    unreachable!("the last letter is always a Lyndon suffix")
}

pub fn is_lyndon(l: &[u8]) -> bool {
    !l.is_empty() && (1..l.len()).all(|i| l[i..].iter().chain(&l[..i]).cmp(l.iter()).is_gt())
}

/// Expands the standard bracketing of Lyndon words, memoizing subwords.
pub struct LyndonExpander {
    p: Prime,
    n: usize,
    memo: HashMap<Word, Tensor>,
}

impl LyndonExpander {
    pub fn new(p: Prime, n: usize) -> Self {
        LyndonExpander {
            p,
            n,
            memo: HashMap::new(),
        }
    }

    pub fn expand(&mut self, w: &Word) -> Tensor {
        if let Some(t) = self.memo.get(w) {
            return t.clone();
        }
        let t = if w.degree() == 1 {
            Tensor::from_word(self.p, self.n, w)
        } else {
            let (u, v) = standard_factorization(w);
            let a = self.expand(&u);
            let b = self.expand(&v);
            a.bracket(&b)
        };
        self.memo.insert(w.clone(), t.clone());
        t
    }
}

/// Lyndon words of length `r` with their standard bracketings expanded in
/// `T^r(V)`.
pub fn lyndon_basis(n: usize, r: usize, p: Prime) -> Vec<(Word, Tensor)> {
    let mut ex = LyndonExpander::new(p, n);
    lyndon_words(n, r)
        .into_iter()
        .map(|w| {
            let t = ex.expand(&w);
            (w, t)
        })
        .collect()
}

/// Left-normed bracket `[a_1, a_2, ..., a_k]`.
pub fn left_normed(factors: &[Tensor]) -> Tensor {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, b| acc.bracket(b))
}
