use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word `x_{i_1} ⋯ x_{i_r}` over the letters `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>, n: usize) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::InvalidInput(format!("letter {l} outside 1..={n}")));
        }
        Ok(Word { letters })
    }

    pub(crate) fn new_unchecked(letters: Vec<u8>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Position in the lexicographic enumeration of words of this length over
    /// `n` letters (first letter most significant).
    pub fn index(&self, n: usize) -> u64 {
        self.letters
            .iter()
            .fold(0u64, |acc, &l| acc * n as u64 + (l as u64 - 1))
    }

    pub fn from_index(mut idx: u64, n: usize, r: usize) -> Self {
        let mut letters = vec![0u8; r];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % n as u64) as u8 + 1;
            idx /= n as u64;
        }
        Word { letters }
    }

    pub fn multidegree(&self, n: usize) -> MultiDegree {
        let mut counts = vec![0usize; n];
        for &l in &self.letters {
            counts[l as usize - 1] += 1;
        }
        MultiDegree { counts }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    /// Juxtaposed digits `1..=9`; the alphabet bound is checked by callers.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse(0, "empty word"));
        }
        let letters = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d >= 1 => Ok(d as u8),
                _ => Err(Error::parse(0, format!("bad letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { letters })
    }
}

/// A multidegree `α = (α_1, ..., α_n)`: how often each letter occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    counts: Vec<usize>,
}

impl MultiDegree {
    pub fn new(counts: Vec<usize>) -> Self {
        MultiDegree { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().sum()
    }

    /// All multidegrees of total `r` in `n` letters, lexicographically.
    pub fn all(n: usize, r: usize) -> Vec<MultiDegree> {
        fn rec(n: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
            if cur.len() + 1 == n {
                cur.push(rem);
                out.push(MultiDegree {
                    counts: cur.clone(),
                });
                cur.pop();
                return;
            }
            for x in 0..=rem {
                cur.push(x);
                rec(n, rem - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, r, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `n^r`, or an error when it does not fit the index type.
pub fn tensor_dim(n: usize, r: usize) -> Result<u64> {
    (n as u64)
        .checked_pow(r as u32)
        .filter(|&d| d < (1 << 40))
        .ok_or_else(|| Error::CapExceeded(format!("{n}^{r} words")))
}
