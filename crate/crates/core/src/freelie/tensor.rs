use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::FpMatrix;

use super::word::{tensor_dim, MultiDegree, Word};

/// An element of `T^r(V)` for `dim V = n`: a sparse map from word indices
/// (see [`Word::index`]) to nonzero residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    p: Prime,
    n: usize,
    r: usize,
    coeffs: BTreeMap<u64, u32>,
}

impl Tensor {
    pub fn zero(p: Prime, n: usize, r: usize) -> Self {
        Tensor {
            p,
            n,
            r,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_word(p: Prime, n: usize, w: &Word) -> Self {
        let mut t = Self::zero(p, n, w.degree());
        t.coeffs.insert(w.index(n), 1 % p.get());
        t
    }

    /// The letter `x_i` as an element of `T^1(V)`.
    pub fn letter(p: Prime, n: usize, i: u8) -> Self {
        Self::from_word(p, n, &Word::new_unchecked(vec![i]))
    }

    /// The unit `1 ∈ T^0(V)`.
    pub fn one(p: Prime, n: usize) -> Self {
        let mut t = Self::zero(p, n, 0);
        t.coeffs.insert(0, 1);
        t
    }

    /// Sums the given `(word index, coefficient)` terms.
    pub fn from_terms(
        p: Prime,
        n: usize,
        r: usize,
        terms: impl IntoIterator<Item = (u64, i64)>,
    ) -> Self {
        let mut t = Self::zero(p, n, r);
        for (w, c) in terms {
            t.add_term(w, p.reduce_i64(c));
        }
        t
    }

    pub fn from_dense(p: Prime, n: usize, r: usize, v: &[u32]) -> Self {
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u64, p.reduce_u64(c as u64)))
            .collect();
        Tensor { p, n, r, coeffs }
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let d = tensor_dim(self.n, self.r).expect("tensor dimension fits") as usize;
        let mut v = vec![0u32; d];
        for (&w, &c) in &self.coeffs {
            v[w as usize] = c;
        }
        v
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, w: u64) -> u32 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.coeffs.iter().map(|(&w, &c)| (w, c))
    }

    pub fn words(&self) -> impl Iterator<Item = (Word, u32)> + '_ {
        self.terms()
            .map(|(w, c)| (Word::from_index(w, self.n, self.r), c))
    }

    pub(crate) fn add_term(&mut self, w: u64, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let e = self.coeffs.entry(w).or_insert(0);
        *e = p.add(*e, c);
        if *e == 0 {
            self.coeffs.remove(&w);
        }
    }

    fn check(&self, other: &Tensor) {
        assert_eq!(self.p, other.p, "tensors over different fields");
        assert_eq!(self.n, other.n, "tensors over different alphabets");
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.check(other);
        assert_eq!(self.r, other.r, "adding tensors of different degrees");
        let mut t = self.clone();
        for (w, c) in other.terms() {
            t.add_term(w, c);
        }
        t
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(self.p.get() - 1)
    }

    pub fn scale(&self, c: u32) -> Tensor {
        let p = self.p;
        let c = p.reduce_u64(c as u64);
        let mut t = Self::zero(p, self.n, self.r);
        if c != 0 {
            t.coeffs = self
                .coeffs
                .iter()
                .map(|(&w, &a)| (w, p.mul(a, c)))
                .collect();
        }
        t
    }

    /// Concatenation product in `T(V)`.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        self.check(other);
        let p = self.p;
        let shift = (self.n as u64).pow(other.r as u32);
        let mut t = Self::zero(p, self.n, self.r + other.r);
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                t.add_term(a * shift + b, p.mul(ca, cb));
            }
        }
        t
    }

    /// `[a, b] = ab − ba`.
    pub fn bracket(&self, other: &Tensor) -> Tensor {
        self.mul(other).sub(&other.mul(self))
    }

    /// Multidegree of each word, if all words share one.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self
            .terms()
            .map(|(w, _)| Word::from_index(w, self.n, self.r).multidegree(self.n));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    /// Letter substitution `x_i ↦ Σ_j g_ij x_j`, extended multiplicatively.
    pub fn substitute(&self, g: &FpMatrix) -> Tensor {
        assert_eq!(g.rows(), self.n, "substitution matrix has the wrong size");
        let p = self.p;
        let n = self.n;
        let mut out = Self::zero(p, n, self.r);
        for (word, c) in self.words() {
            let mut partial: Vec<(u64, u32)> = vec![(0, c)];
            for &l in word.letters() {
                let row = g.row(l as usize - 1);
                let mut next = Vec::with_capacity(partial.len() * n);
                for &(idx, a) in &partial {
                    for (j, &gij) in row.iter().enumerate() {
                        if gij != 0 {
                            next.push((idx * n as u64 + j as u64, p.mul(a, gij)));
                        }
                    }
                }
                partial = next;
            }
            for (idx, a) in partial {
                out.add_term(idx, a);
            }
        }
        out
    }

    /// Place permutation: position `i` of the result holds the letter from
    /// position `source[i]`.
    pub fn permute_places(&self, source: &[usize]) -> Tensor {
        assert_eq!(source.len(), self.r, "permutation degree mismatch");
        let mut out = Self::zero(self.p, self.n, self.r);
        for (word, c) in self.words() {
            let l = word.letters();
            let moved = Word::new_unchecked(source.iter().map(|&s| l[s]).collect());
            out.add_term(moved.index(self.n), c);
        }
        out
    }

    /// Renames letters (`f` maps `1..=n` into `1..=n_target`).
    pub fn map_letters(&self, n_target: usize, f: impl Fn(u8) -> u8) -> Tensor {
        let mut out = Self::zero(self.p, n_target, self.r);
        for (word, c) in self.words() {
            let w = Word::new_unchecked(word.letters().iter().map(|&l| f(l)).collect());
            out.add_term(w.index(n_target), c);
        }
        out
    }

    /// The truncation `δ`: drops words with a letter above `n_target` and
    /// re-reads the rest over the smaller alphabet.
    pub fn truncate(&self, n_target: usize) -> Tensor {
        let mut out = Self::zero(self.p, n_target, self.r);
        for (word, c) in self.words() {
            if word.letters().iter().all(|&l| l as usize <= n_target) {
                out.add_term(word.index(n_target), c);
            }
        }
        out
    }

    /// Parses `coeff word coeff word ...`; `0` alone denotes the zero tensor
    /// (its degree must then be given by the caller).
    pub fn parse(s: &str, p: Prime, n: usize, r: usize) -> Result<Tensor> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() == 1 && toks[0] == "0" {
            return Ok(Self::zero(p, n, r));
        }
        if !toks.len().is_multiple_of(2) {
            return Err(Error::parse(0, "expected `coeff word` pairs"));
        }
        let mut t = Self::zero(p, n, r);
        for pair in toks.chunks(2) {
            let c: i64 = pair[0]
                .parse()
                .map_err(|e| Error::parse(0, format!("bad coefficient {:?}: {e}", pair[0])))?;
            let w: Word = pair[1].parse()?;
            let w = Word::new(w.letters().to_vec(), n)?;
            if w.degree() != r {
                return Err(Error::parse(
                    0,
                    format!("word {w} does not have degree {r}"),
                ));
            }
            t.add_term(w.index(n), p.reduce_i64(c));
        }
        Ok(t)
    }
}

impl fmt::Display for Tensor {
    /// `coeff word` pairs in word order; `0` for the zero tensor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.words().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c} {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tensor(F_{}, n={}, r={}: {})",
            self.p, self.n, self.r, self
        )
    }
}
