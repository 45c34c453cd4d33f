use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::{EchelonBuilder, FpMatrix, Subspace};

use super::tensor::Tensor;
use super::word::{tensor_dim, MultiDegree, Word};

/// Splits the words of degree `r` over `n` letters by multidegree.
#[derive(Debug)]
pub struct WeightIndex {
    n: usize,
    r: usize,
    weights: Vec<MultiDegree>,
    lookup: HashMap<MultiDegree, usize>,
    weight_of_word: Vec<u32>,
    local_of_word: Vec<u32>,
    words: Vec<Vec<u64>>,
}

impl WeightIndex {
    pub fn new(n: usize, r: usize) -> Result<Arc<Self>> {
        let d = tensor_dim(n, r)?;
        if d > 50_000_000 {
            return Err(Error::CapExceeded(format!("{n}^{r} words")));
        }
        let weights = MultiDegree::all(n, r);
        let lookup: HashMap<MultiDegree, usize> = weights
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut weight_of_word = Vec::with_capacity(d as usize);
        let mut local_of_word = Vec::with_capacity(d as usize);
        let mut words = vec![Vec::new(); weights.len()];
        for idx in 0..d {
            let md = Word::from_index(idx, n, r).multidegree(n);
            let wi = lookup[&md];
            weight_of_word.push(wi as u32);
            local_of_word.push(words[wi].len() as u32);
            words[wi].push(idx);
        }
        Ok(Arc::new(WeightIndex {
            n,
            r,
            weights,
            lookup,
            weight_of_word,
            local_of_word,
            words,
        }))
    }

    /// A process-wide cached index (indices are immutable once built).
    pub fn shared(n: usize, r: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<WeightIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ix) = cache.lock().expect("index cache poisoned").get(&(n, r)) {
            return Ok(ix.clone());
        }
        let ix = Self::new(n, r)?;
        cache
            .lock()
            .expect("index cache poisoned")
            .insert((n, r), ix.clone());
        Ok(ix)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient_dim(&self) -> usize {
        self.weight_of_word.len()
    }

    pub fn weights(&self) -> &[MultiDegree] {
        &self.weights
    }

    pub fn weight_id(&self, m: &MultiDegree) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn weight_of(&self, word: u64) -> usize {
        self.weight_of_word[word as usize] as usize
    }

    pub fn local_of(&self, word: u64) -> usize {
        self.local_of_word[word as usize] as usize
    }

    /// Words of the given weight, in increasing index order.
    pub fn words_of(&self, weight: usize) -> &[u64] {
        &self.words[weight]
    }

    pub fn block_dim(&self, weight: usize) -> usize {
        self.words[weight].len()
    }

    /// Weight of a homogeneous tensor (`None` for zero or mixed weights).
    pub fn weight_of_tensor(&self, t: &Tensor) -> Option<usize> {
        let mut it = t.terms().map(|(w, _)| self.weight_of(w));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Local coordinates of a tensor known to lie in one weight space.
    pub fn local_vector(&self, t: &Tensor, weight: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.block_dim(weight)];
        for (w, c) in t.terms() {
            debug_assert_eq!(self.weight_of(w), weight);
            v[self.local_of(w)] = c;
        }
        v
    }

    pub fn tensor_from_local(&self, p: Prime, weight: usize, v: &[u32]) -> Tensor {
        Tensor::from_terms(
            p,
            self.n,
            self.r,
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.words[weight][i], c as i64)),
        )
    }
}

/// A subspace of `T^r(V)` spanned by multihomogeneous tensors, stored as one
/// canonical echelon basis per weight space.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    p: Prime,
    index: Arc<WeightIndex>,
    blocks: Vec<Subspace>,
}

impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.index.n == other.index.n
            && self.index.r == other.index.r
            && self.blocks == other.blocks
    }
}

impl Eq for GradedSubspace {}

/// Incrementally spans homogeneous tensors, one echelon builder per weight.
#[derive(Clone, Debug)]
pub struct GradedBuilder {
    p: Prime,
    index: Arc<WeightIndex>,
    builders: Vec<EchelonBuilder>,
}

impl GradedBuilder {
    pub fn new(p: Prime, index: Arc<WeightIndex>) -> Self {
        let builders = (0..index.weights.len())
            .map(|w| EchelonBuilder::new(p, index.block_dim(w)))
            .collect();
        GradedBuilder { p, index, builders }
    }

    pub fn index(&self) -> &Arc<WeightIndex> {
        &self.index
    }

    pub fn rank(&self) -> usize {
        self.builders.iter().map(EchelonBuilder::rank).sum()
    }

    /// Adds a homogeneous tensor; returns whether it enlarged the span.
    pub fn insert(&mut self, t: &Tensor) -> Result<bool> {
        if t.is_zero() {
            return Ok(false);
        }
        let w = self
            .index
            .weight_of_tensor(t)
            .ok_or_else(|| Error::Precondition("tensor is not multihomogeneous".into()))?;
        let v = self.index.local_vector(t, w);
        Ok(self.builders[w].insert(v))
    }

    pub fn insert_local(&mut self, weight: usize, v: Vec<u32>) -> bool {
        self.builders[weight].insert(v)
    }

    pub fn contains(&self, t: &Tensor) -> bool {
        match self.index.weight_of_tensor(t) {
            None => t.is_zero(),
            Some(w) => self.builders[w].contains(&self.index.local_vector(t, w)),
        }
    }

    pub fn block(&self, weight: usize) -> &EchelonBuilder {
        &self.builders[weight]
    }

    pub fn finish(self) -> GradedSubspace {
        let blocks = self
            .builders
            .into_iter()
            .map(Subspace::from_builder)
            .collect();
        GradedSubspace {
            p: self.p,
            index: self.index,
            blocks,
        }
    }
}

impl GradedSubspace {
    pub fn zero(p: Prime, index: Arc<WeightIndex>) -> Self {
        GradedBuilder::new(p, index).finish()
    }

    pub fn full(p: Prime, index: Arc<WeightIndex>) -> Self {
        let blocks = (0..index.weights.len())
            .map(|w| Subspace::full(p, index.block_dim(w)))
            .collect();
        GradedSubspace { p, index, blocks }
    }

    /// Span of multihomogeneous tensors; errors on a mixed-weight input.
    pub fn span<'a>(
        p: Prime,
        index: Arc<WeightIndex>,
        tensors: impl IntoIterator<Item = &'a Tensor>,
    ) -> Result<Self> {
        let mut b = GradedBuilder::new(p, index);
        for t in tensors {
            b.insert(t)?;
        }
        Ok(b.finish())
    }

    /// Reads a subspace of `T^r(V)` whose echelon rows are multihomogeneous
    /// (true for every subspace spanned by multihomogeneous elements).
    pub fn from_subspace(index: Arc<WeightIndex>, s: &Subspace) -> Result<Self> {
        if s.ambient_dim() != index.ambient_dim() {
            return Err(Error::AmbientMismatch(
                "subspace is not in this tensor power".into(),
            ));
        }
        let p = s.prime();
        let mut b = GradedBuilder::new(p, index.clone());
        for (i, row) in s.rows().enumerate() {
            let t = Tensor::from_dense(p, index.n, index.r, row);
            if index.weight_of_tensor(&t).is_none() {
                return Err(Error::Precondition(format!(
                    "echelon row {i} is not multihomogeneous"
                )));
            }
            b.insert(&t)?;
        }
        Ok(b.finish())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn index(&self) -> &Arc<WeightIndex> {
        &self.index
    }

    pub fn n(&self) -> usize {
        self.index.n
    }

    pub fn r(&self) -> usize {
        self.index.r
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The part in one weight space, in local coordinates.
    pub fn block(&self, weight: usize) -> &Subspace {
        &self.blocks[weight]
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn from_blocks(p: Prime, index: Arc<WeightIndex>, blocks: Vec<Subspace>) -> Result<Self> {
        if blocks.len() != index.weights.len()
            || blocks
                .iter()
                .enumerate()
                .any(|(w, b)| b.ambient_dim() != index.block_dim(w) || b.prime() != p)
        {
            return Err(Error::AmbientMismatch(
                "blocks do not match the weight spaces".into(),
            ));
        }
        Ok(GradedSubspace { p, index, blocks })
    }

    /// Basis tensors: the echelon rows of each weight space, weights in order.
    pub fn basis_tensors(&self) -> Vec<Tensor> {
        let mut out = Vec::with_capacity(self.dim());
        for (w, b) in self.blocks.iter().enumerate() {
            for row in b.rows() {
                out.push(self.index.tensor_from_local(self.p, w, row));
            }
        }
        out
    }

    pub fn contains(&self, t: &Tensor) -> bool {
        match self.index.weight_of_tensor(t) {
            Some(w) => self.blocks[w].contains(&self.index.local_vector(t, w)),
            None => {
                t.is_zero()
                    || self
                        .split(t)
                        .iter()
                        .all(|(w, v)| self.blocks[*w].contains(v))
            }
        }
    }

    fn split(&self, t: &Tensor) -> Vec<(usize, Vec<u32>)> {
        let mut parts: HashMap<usize, Vec<u32>> = HashMap::new();
        for (word, c) in t.terms() {
            let w = self.index.weight_of(word);
            let v = parts
                .entry(w)
                .or_insert_with(|| vec![0; self.index.block_dim(w)]);
            v[self.index.local_of(word)] = c;
        }
        parts.into_iter().collect()
    }

    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        self.same_space(other).is_ok()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.contains_subspace(b))
    }

    fn same_space(&self, other: &GradedSubspace) -> Result<()> {
        if self.p != other.p || self.index.n != other.index.n || self.index.r != other.index.r {
            return Err(Error::AmbientMismatch(format!(
                "T^{}(F_{}^{}) vs T^{}(F_{}^{})",
                self.index.r, self.p, self.index.n, other.index.r, other.p, other.index.n
            )));
        }
        Ok(())
    }

    fn zip(
        &self,
        other: &GradedSubspace,
        f: impl Fn(&Subspace, &Subspace) -> Result<Subspace>,
    ) -> Result<Self> {
        self.same_space(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(GradedSubspace {
            p: self.p,
            index: self.index.clone(),
            blocks,
        })
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<Self> {
        self.zip(other, |a, b| a.sum(b))
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<Self> {
        self.zip(other, |a, b| a.intersect(b))
    }

    /// Whether the parts are independent and together span `self`.
    pub fn is_direct_sum_of(&self, parts: &[&GradedSubspace]) -> Result<bool> {
        for part in parts {
            self.same_space(part)?;
        }
        if parts.iter().map(|s| s.dim()).sum::<usize>() != self.dim() {
            return Ok(false);
        }
        for (w, whole) in self.blocks.iter().enumerate() {
            let pieces: Vec<Subspace> = parts.iter().map(|s| s.blocks[w].clone()).collect();
            if !crate::linalg::is_direct_sum(&pieces, whole)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The canonical echelon form in `T^r(V)`. Rows of different weights have
    /// disjoint supports, so the union of the per-weight echelon bases,
    /// sorted by pivot, is already reduced.
    pub fn to_subspace(&self) -> Subspace {
        let d = self.index.ambient_dim();
        let mut rows: Vec<(usize, Vec<u32>)> = Vec::with_capacity(self.dim());
        for (w, b) in self.blocks.iter().enumerate() {
            let words = &self.index.words[w];
            for (row, &piv) in b.rows().zip(b.pivots()) {
                let mut v = vec![0u32; d];
                for (i, &c) in row.iter().enumerate() {
                    v[words[i] as usize] = c;
                }
                rows.push((words[piv] as usize, v));
            }
        }
        rows.sort_by_key(|r| r.0);
        let pivots = rows.iter().map(|r| r.0).collect();
        let m = FpMatrix::from_residue_rows(self.p, d, rows.into_iter().map(|r| r.1).collect())
            .expect("consistent widths");
        Subspace::from_rref_unchecked(m, pivots)
    }

    /// Image under a weight-preserving linear map given on tensors.
    pub fn map_homogeneous(&self, f: impl Fn(&Tensor) -> Tensor) -> Result<Self> {
        let images: Vec<Tensor> = self.basis_tensors().iter().map(f).collect();
        GradedSubspace::span(self.p, self.index.clone(), images.iter())
    }

    pub fn weight_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Subspace::dim).collect()
    }
}

/// The `ξ_α`-component of a subspace of `T^r(V)`: the projection of every
/// vector onto the words of multidegree `α`.
pub fn weight_component(s: &Subspace, n: usize, r: usize, alpha: &MultiDegree) -> Result<Subspace> {
    if tensor_dim(n, r)? as usize != s.ambient_dim() {
        return Err(Error::AmbientMismatch("subspace is not in T^r(V)".into()));
    }
    if alpha.n() != n || alpha.degree() != r {
        return Err(Error::InvalidInput(format!(
            "multidegree {alpha} does not match n={n}, r={r}"
        )));
    }
    let keep: Vec<bool> = (0..s.ambient_dim() as u64)
        .map(|w| Word::from_index(w, n, r).multidegree(n) == *alpha)
        .collect();
    s.map(s.ambient_dim(), |row| {
        row.iter()
            .zip(&keep)
            .map(|(&c, &k)| if k { c } else { 0 })
            .collect()
    })
}
