//! Partitions, compositions, `p`-equivalence classes, Young characters and
//! the dimension formulas for Lie powers and higher Lie modules.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;

/// A partition: non-increasing positive parts. The derived order on the part
/// sequence is the lexicographic order `≤*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// A composition: positive parts in any order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Like [`Partition::new`] but rejects unsorted input.
    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "parts {parts:?} are not non-increasing"
            )));
        }
        Self::new(parts)
    }

    /// `(r)`.
    pub fn single(r: usize) -> Self {
        Partition { parts: vec![r] }
    }

    /// `(k, k, ..., k)` with `r/k` parts.
    pub fn rectangle(r: usize, k: usize) -> Result<Self> {
        if k == 0 || !r.is_multiple_of(k) {
            return Err(Error::InvalidInput(format!("{k} does not divide {r}")));
        }
        Ok(Partition {
            parts: vec![k; r / k],
        })
    }

    /// `(1^r)`.
    pub fn ones(r: usize) -> Self {
        Partition { parts: vec![1; r] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m(i)` for `i = 1..=size`, index 0 unused.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.size() + 1];
        for &x in &self.parts {
            m[x] += 1;
        }
        m
    }

    pub fn as_composition(&self) -> Composition {
        Composition {
            parts: self.parts.clone(),
        }
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition { parts })
    }

    pub fn single(r: usize) -> Self {
        Composition { parts: vec![r] }
    }

    pub fn ones(r: usize) -> Self {
        Composition { parts: vec![1; r] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Partial sums strictly below the total, as a bitmask: bit `j-1` is set
    /// when `j = ν_1 + ... + ν_i` for some `i < len`.
    pub fn descent_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut s = 0;
        for &x in &self.parts[..self.parts.len().saturating_sub(1)] {
            s += x;
            mask |= 1 << (s - 1);
        }
        mask
    }

    /// Inverse of [`Composition::descent_mask`].
    pub fn from_descent_mask(r: usize, mask: u64) -> Result<Self> {
        if r == 0 || (r < 64 && mask >> (r - 1) != 0) {
            return Err(Error::InvalidInput(format!(
                "mask {mask:#b} is not a subset of 1..{r}"
            )));
        }
        let mut parts = Vec::new();
        let mut last = 0;
        for j in 1..r {
            if mask >> (j - 1) & 1 == 1 {
                parts.push(j - last);
                last = j;
            }
        }
        parts.push(r - last);
        Ok(Composition { parts })
    }
}

/// Sorts the parts non-increasingly.
pub fn associated_partition(c: &Composition) -> Partition {
    Partition::new(c.parts.clone()).expect("composition parts are positive")
}

/// Largest size of a partition or composition read from text.
pub const MAX_PARSED_SIZE: usize = 1 << 24;

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Err(Error::parse(0, "empty part list"));
    }
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(0, format!("bad part {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = parts.iter().try_fold(0usize, |acc, &x| acc.checked_add(x));
    match total {
        Some(t) if t <= MAX_PARSED_SIZE => Ok(parts),
        _ => Err(Error::CapExceeded(format!(
            "parts add up to more than {MAX_PARSED_SIZE}"
        ))),
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::from_parts(parse_parts(s)?)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

fn join(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, x) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(&self.parts, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(&self.parts, f)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::from_parts(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

/// All partitions of `r` in increasing lexicographic order: `(1^r)` first,
/// `(r)` last.
pub fn partitions(r: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for x in 1..=rem.min(max) {
            cur.push(x);
            rec(rem - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, r, &mut Vec::new(), &mut out);
    }
    out
}

/// All `2^(r-1)` compositions of `r`, in lexicographic order of parts.
pub fn compositions(r: usize) -> Vec<Composition> {
    if r == 0 {
        return Vec::new();
    }
    let mut out: Vec<Composition> = (0..1u64 << (r - 1))
        .map(|m| Composition::from_descent_mask(r, m).expect("mask in range"))
        .collect();
    out.sort();
    out
}

fn same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::DimensionMismatch(format!(
            "partitions of {} and {}",
            a.size(),
            b.size()
        )));
    }
    Ok(())
}

/// `a <* b` in the lexicographic order.
pub fn lex_less(a: &Partition, b: &Partition) -> Result<bool> {
    same_size(a, b)?;
    Ok(a < b)
}

/// Whether the parts of `a` can be grouped into blocks summing to the parts
/// of `b`.
pub fn is_refinement(a: &Partition, b: &Partition) -> Result<bool> {
    same_size(a, b)?;
    fn fill(targets: &mut [usize], parts: &[usize]) -> bool {
        let Some((&x, rest)) = parts.split_first() else {
            return targets.iter().all(|&t| t == 0);
        };
        let mut tried = Vec::new();
        for i in 0..targets.len() {
            let t = targets[i];
            if t >= x && !tried.contains(&t) {
                tried.push(t);
                targets[i] -= x;
                if fill(targets, rest) {
                    return true;
                }
                targets[i] += x;
            }
        }
        false
    }
    let mut targets = b.parts.clone();
    Ok(fill(&mut targets, &a.parts))
}

/// The partition immediately after `a` in `≤*`, or `None` for `(r)`.
pub fn next_partition(a: &Partition) -> Option<Partition> {
    let all = partitions(a.size());
    let i = all.iter().position(|x| x == a)?;
    all.get(i + 1).cloned()
}

/// A `p`-equivalence class of partitions, keyed by stabilized cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PClass {
    pub key: Partition,
    pub members: Vec<Partition>,
}

impl PClass {
    pub fn contains(&self, l: &Partition) -> bool {
        self.members.binary_search(l).is_ok()
    }

    /// The lexicographically smallest member.
    pub fn first(&self) -> &Partition {
        &self.members[0]
    }
}

impl fmt::Display for PClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({m})")?;
        }
        f.write_str("}")
    }
}

/// Cycle type of `σ^(p^s)` for `σ` of cycle type `l`, with `p^s ≥ r`: a
/// part `p^a·l'` with `p ∤ l'` becomes `p^a` parts equal to `l'`.
pub fn stabilized_cycle_type(l: &Partition, p: Prime) -> Partition {
    let p = p.get() as usize;
    let mut parts = Vec::new();
    for &x in &l.parts {
        let (mut pa, mut rest) = (1, x);
        while rest % p == 0 {
            rest /= p;
            pa *= p;
        }
        parts.extend(std::iter::repeat_n(rest, pa));
    }
    Partition::new(parts).expect("positive parts")
}

/// The `p`-equivalence classes of `Part(r)`, sorted by key; members sorted.
pub fn p_equiv_classes(r: usize, p: Prime) -> Vec<PClass> {
    let mut map: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
    for l in partitions(r) {
        map.entry(stabilized_cycle_type(&l, p)).or_default().push(l);
    }
    map.into_iter()
        .map(|(key, mut members)| {
            members.sort();
            PClass { key, members }
        })
        .collect()
}

/// The class containing `l`.
pub fn class_of(l: &Partition, p: Prime) -> PClass {
    let key = stabilized_cycle_type(l, p);
    p_equiv_classes(l.size(), p)
        .into_iter()
        .find(|c| c.key == key)
        .expect("every partition lies in a class")
}

/// Number of ordered set partitions `(I_1, ..., I_k)` of the positions of
/// `mu` with `Σ_{j ∈ I_i} μ_j = ν_i` for every `i`.
pub fn count_q(nu: &Composition, mu: &Composition) -> Result<u64> {
    if nu.size() != mu.size() {
        return Err(Error::DimensionMismatch(format!(
            "compositions of {} and {}",
            nu.size(),
            mu.size()
        )));
    }
    let r = mu.size();
    // Positions with equal values are interchangeable, so track counts of
    // each value and weight each choice by binomial coefficients.
    let mut counts = vec![0usize; r + 1];
    for &x in &mu.parts {
        counts[x] += 1;
    }
    let mut memo = HashMap::new();
    Ok(count_blocks(&nu.parts, &counts, &mut memo))
}

fn count_blocks(
    nu: &[usize],
    counts: &[usize],
    memo: &mut HashMap<(usize, Vec<usize>), u64>,
) -> u64 {
    let Some((&target, rest)) = nu.split_first() else {
        return counts.iter().all(|&c| c == 0) as u64;
    };
    let key = (nu.len(), counts.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0u64;
    let mut remaining = counts.to_vec();
    choose_block(
        target,
        counts.len() - 1,
        counts,
        &mut remaining,
        1,
        rest,
        memo,
        &mut total,
    );
    memo.insert(key, total);
    total
}

#[allow(clippy::too_many_arguments)]
fn choose_block(
    target: usize,
    value: usize,
    counts: &[usize],
    remaining: &mut Vec<usize>,
    ways: u64,
    rest: &[usize],
    memo: &mut HashMap<(usize, Vec<usize>), u64>,
    total: &mut u64,
) {
    if target == 0 {
        let r = remaining.clone();
        *total += ways * count_blocks(rest, &r, memo);
        return;
    }
    if value == 0 {
        return;
    }
    let max_take = counts[value].min(target / value);
    for take in 0..=max_take {
        remaining[value] = counts[value] - take;
        let w = ways * binomial(counts[value] as u64, take as u64);
        choose_block(
            target - take * value,
            value - 1,
            counts,
            remaining,
            w,
            rest,
            memo,
            total,
        );
    }
    remaining[value] = counts[value];
}

/// The Young character `φ^ν(λ)`.
pub fn young_character(nu: &Composition, lambda: &Partition) -> Result<u64> {
    count_q(nu, &lambda.as_composition())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub fn mobius(mut d: u64) -> i64 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= d {
        if d.is_multiple_of(f) {
            d /= f;
            if d.is_multiple_of(f) {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// `dim L^r(V)` for `dim V = n`.
pub fn witt_dim(n: u64, r: u64) -> u64 {
    assert!(r >= 1, "degree must be positive");
    let mut s: i128 = 0;
    for d in (1..=r).filter(|d| r.is_multiple_of(*d)) {
        s += mobius(d) as i128 * (n as i128).pow((r / d) as u32);
    }
    (s / r as i128) as u64
}

/// `dim L^λ(V) = Π_i dim S^{m(i)}(L^i(V))`.
pub fn higher_lie_dim(n: u64, lambda: &Partition) -> u64 {
    lambda
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| binomial(witt_dim(n, i as u64) + m as u64 - 1, m as u64))
        .product()
}

/// A function on `Part(r)`, integer-valued or reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    r: usize,
    modulus: Option<Prime>,
    values: BTreeMap<Partition, i64>,
}

impl ClassFunction {
    pub fn from_fn(r: usize, modulus: Option<Prime>, f: impl Fn(&Partition) -> i64) -> Self {
        let values = partitions(r)
            .into_iter()
            .map(|l| {
                let v = f(&l);
                let v = modulus.map_or(v, |p| p.reduce_i64(v) as i64);
                (l, v)
            })
            .collect();
        ClassFunction { r, modulus, values }
    }

    pub fn zero(r: usize, modulus: Option<Prime>) -> Self {
        Self::from_fn(r, modulus, |_| 0)
    }

    /// 1 on the members of `class`, 0 elsewhere.
    pub fn indicator(class: &PClass, p: Prime) -> Self {
        Self::from_fn(class.key.size(), Some(p), |l| class.contains(l) as i64)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> Option<Prime> {
        self.modulus
    }

    pub fn get(&self, l: &Partition) -> i64 {
        self.values[l]
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    fn combine(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.r, other.r, "class functions on different degrees");
        assert_eq!(
            self.modulus, other.modulus,
            "class functions over different rings"
        );
        let m = self.modulus;
        Self::from_fn(self.r, m, |l| f(self.values[l], other.values[l]))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    /// Pointwise product, the multiplication of the character ring.
    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_fn(self.r, self.modulus, |l| c * self.values[l])
    }
}

#[cfg(test)]
mod tests;
