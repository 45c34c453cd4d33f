//! Text and JSON formats shared with the command line: subspaces, tensors,
//! descent elements, generator matrices and summand certificates.
//!
//! Subspace text is a header line `p n r` followed by one basis vector per
//! line as `coeff word` pairs, e.g. `1 112 1 121`; words use the letters
//! `1..n` (so `n ≤ 9`), and lines starting with `#` are comments.

use serde::{Deserialize, Serialize};

use crate::combinat::Composition;
use crate::decompose::{Route, SummandCertificate};
use crate::descent::{DescentElement, Ring};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::freelie::{tensor_dim, GradedSubspace, Tensor};
use crate::linalg::{FpMatrix, Subspace};

/// Largest ambient dimension `n^r` accepted from text.
pub const MAX_TEXT_AMBIENT: u64 = 1 << 20;

/// Largest degree of a descent element read from text.
pub const MAX_TEXT_DESCENT_DEGREE: usize = 16;

/// Largest absolute coefficient in descent-element text.
pub const MAX_TEXT_COEFFICIENT: u64 = 1 << 31;

/// Largest number of entries in a decoded matrix.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 24;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// The rows of a subspace file exactly as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceText {
    pub p: Prime,
    pub n: usize,
    pub r: usize,
    pub rows: Vec<Tensor>,
}

impl SubspaceText {
    pub fn dense_rows(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(Tensor::to_dense).collect()
    }

    pub fn span(&self) -> Result<Subspace> {
        let d = tensor_dim(self.n, self.r)? as usize;
        Subspace::span(self.p, d, self.dense_rows().iter())
    }

    pub fn span_graded(&self) -> Result<GradedSubspace> {
        let ix = crate::freelie::WeightIndex::shared(self.n, self.r)?;
        GradedSubspace::span(self.p, ix, self.rows.iter())
    }
}

pub fn parse_subspace_text(text: &str) -> Result<SubspaceText> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing `p n r` header"))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|e| Error::parse(hl, format!("bad header field {t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let [p, n, r] = nums[..] else {
        return Err(Error::parse(hl, "header must be `p n r`"));
    };
    let p = Prime::new(u32::try_from(p).map_err(|_| Error::NotPrime(p))?)?;
    if !(1..=9).contains(&n) {
        return Err(Error::parse(hl, format!("n = {n} is outside 1..9")));
    }
    let (n, r) = (
        n as usize,
        usize::try_from(r).map_err(|_| Error::parse(hl, "r too large"))?,
    );
    match tensor_dim(n, r) {
        Ok(d) if d <= MAX_TEXT_AMBIENT => {}
        _ => return Err(Error::CapExceeded(format!("ambient dimension {n}^{r}"))),
    }
    let rows = lines
        .map(|(ln, l)| Tensor::parse(l, p, n, r).map_err(|e| relabel(e, ln)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceText { p, n, r, rows })
}

fn relabel(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => Error::parse(line, other.to_string()),
    }
}

/// Reads a subspace file and spans its rows.
pub fn parse_subspace(text: &str) -> Result<(SubspaceText, Subspace)> {
    let t = parse_subspace_text(text)?;
    let s = t.span()?;
    Ok((t, s))
}

/// Header and basis rows of a subspace of `T^r(V)`, one string per line.
pub fn subspace_lines(s: &Subspace, n: usize, r: usize) -> Result<Vec<String>> {
    let d = tensor_dim(n, r)? as usize;
    if s.ambient_dim() != d {
        return Err(Error::AmbientMismatch(format!(
            "subspace of dimension {} is not in {n}^{r}",
            s.ambient_dim()
        )));
    }
    let mut out = vec![format!("{} {n} {r}", s.prime())];
    out.extend(
        s.rows()
            .map(|row| Tensor::from_dense(s.prime(), n, r, row).to_string()),
    );
    Ok(out)
}

pub fn graded_lines(s: &GradedSubspace) -> Result<Vec<String>> {
    subspace_lines(&s.to_subspace(), s.n(), s.r())
}

pub fn write_subspace(s: &Subspace, n: usize, r: usize) -> Result<String> {
    let mut text = subspace_lines(s, n, r)?.join("\n");
    text.push('\n');
    Ok(text)
}

/// A tensor file: the `p n r` header and a single line of `coeff word`
/// pairs.
pub fn parse_tensor_text(text: &str) -> Result<Tensor> {
    let t = parse_subspace_text(text)?;
    match <[Tensor; 1]>::try_from(t.rows) {
        Ok([x]) => Ok(x),
        Err(rows) => Err(Error::parse(
            0,
            format!("expected one tensor line, found {}", rows.len()),
        )),
    }
}

pub fn write_tensor(t: &Tensor) -> String {
    format!("{} {} {}\n{}\n", t.prime(), t.n(), t.degree(), t)
}

/// Descent-element text: one `coeff ν` line per term, `ν` a comma-joined
/// composition (`2 1,2` is `2·X^{(1,2)}`); `0` alone is the zero element of
/// degree `r`, which must then be supplied.
pub fn parse_descent_element(text: &str, ring: Ring, r: Option<usize>) -> Result<DescentElement> {
    let mut terms: Vec<(Composition, i64)> = Vec::new();
    let mut zero_line = false;
    for (ln, line) in content_lines(text) {
        if line == "0" {
            zero_line = true;
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(c), Some(nu), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::parse(ln, "expected `coeff composition`"));
        };
        let c: i64 = c
            .parse()
            .map_err(|e| Error::parse(ln, format!("bad coefficient {c:?}: {e}")))?;
        if c.unsigned_abs() > MAX_TEXT_COEFFICIENT {
            return Err(Error::parse(ln, format!("coefficient {c} is too large")));
        }
        let nu: Composition = nu.parse().map_err(|e| relabel(e, ln))?;
        terms.push((nu, c));
    }
    let degree = match (terms.first(), r) {
        (Some((nu, _)), Some(r)) if nu.size() != r => {
            return Err(Error::parse(0, format!("composition {nu} is not of {r}")));
        }
        (Some((nu, _)), _) => nu.size(),
        (None, Some(r)) if zero_line => r,
        (None, _) => return Err(Error::parse(0, "no terms and no degree")),
    };
    if degree == 0 || degree > MAX_TEXT_DESCENT_DEGREE {
        return Err(Error::CapExceeded(format!(
            "descent algebra of degree {degree}"
        )));
    }
    DescentElement::from_terms(degree, ring, terms.iter().map(|(nu, c)| (nu, *c)))
}

/// Generator matrices as grids of integers, one row per line, matrices
/// separated by blank lines.
pub fn parse_generator_grid(p: Prime, text: &str) -> Result<Vec<FpMatrix>> {
    let mut mats = Vec::new();
    let mut cur: Vec<Vec<i64>> = Vec::new();
    let mut flush = |cur: &mut Vec<Vec<i64>>, ln: usize| -> Result<()> {
        if cur.is_empty() {
            return Ok(());
        }
        let n = cur.len();
        if n > 64 || cur.iter().any(|r| r.len() != n) {
            return Err(Error::parse(
                ln,
                "generator is not a square matrix of size at most 64",
            ));
        }
        let m = FpMatrix::from_rows(p, n, cur)?;
        if !m.is_invertible() {
            return Err(Error::parse(ln, "generator is not invertible"));
        }
        mats.push(m);
        cur.clear();
        Ok(())
    };
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        last = i + 1;
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut cur, i + 1)?;
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::parse(i + 1, format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cur.push(row);
    }
    flush(&mut cur, last)?;
    if mats.is_empty() {
        return Err(Error::parse(0, "no generators"));
    }
    if mats.iter().any(|m| m.rows() != mats[0].rows()) {
        return Err(Error::parse(0, "generators of different sizes"));
    }
    Ok(mats)
}

pub fn write_generator_grid(mats: &[FpMatrix]) -> String {
    mats.iter()
        .map(|m| {
            m.row_iter()
                .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect::<Vec<_>>()
        .join("\n\n")
        + "\n"
}

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A matrix as row strings: one base-36 digit per entry when `p ≤ 36`,
/// otherwise space-separated decimals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub encoding: String,
    pub data: Vec<String>,
}

pub fn encode_matrix(m: &FpMatrix) -> EncodedMatrix {
    let compact = m.prime().get() <= 36;
    let data = m
        .row_iter()
        .map(|r| {
            if compact {
                r.iter().map(|&x| DIGITS[x as usize] as char).collect()
            } else {
                r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
            }
        })
        .collect();
    EncodedMatrix {
        rows: m.rows(),
        cols: m.cols(),
        encoding: if compact { "base36" } else { "decimal" }.to_string(),
        data,
    }
}

pub fn decode_matrix(p: Prime, e: &EncodedMatrix) -> Result<FpMatrix> {
    let bad = |m: String| Error::InvalidInput(format!("encoded matrix: {m}"));
    if e.rows
        .checked_mul(e.cols)
        .is_none_or(|x| x > MAX_MATRIX_ENTRIES)
    {
        return Err(Error::CapExceeded(format!(
            "{} × {} matrix",
            e.rows, e.cols
        )));
    }
    if e.data.len() != e.rows {
        return Err(bad(format!(
            "{} rows declared, {} given",
            e.rows,
            e.data.len()
        )));
    }
    let mut data = Vec::with_capacity(e.rows * e.cols);
    for (i, row) in e.data.iter().enumerate() {
        let before = data.len();
        match e.encoding.as_str() {
            "base36" => {
                for ch in row.chars() {
                    let v = ch
                        .to_digit(36)
                        .filter(|_| ch.is_ascii_digit() || ch.is_ascii_lowercase());
                    data.push(v.ok_or_else(|| bad(format!("bad digit {ch:?} in row {i}")))?);
                }
            }
            "decimal" => {
                for t in row.split_whitespace() {
                    data.push(
                        t.parse::<u32>()
                            .map_err(|err| bad(format!("bad entry {t:?} in row {i}: {err}")))?,
                    );
                }
            }
            other => return Err(bad(format!("unknown encoding {other:?}"))),
        }
        if data.len() - before != e.cols {
            return Err(bad(format!(
                "row {i} has {} entries, expected {}",
                data.len() - before,
                e.cols
            )));
        }
    }
    if data.iter().any(|&x| x >= p.get()) {
        return Err(bad(format!("entry not reduced mod {p}")));
    }
    FpMatrix::from_vec(p, e.rows, e.cols, data)
}

/// Self-contained JSON form of a [`SummandCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub p: u32,
    pub n: usize,
    pub degree: usize,
    pub route: Route,
    pub generators: Vec<Vec<Vec<u32>>>,
    /// The basis of the summand in subspace text, header first.
    pub basis: Vec<String>,
    pub retraction: EncodedMatrix,
}

impl CertificateJson {
    pub fn from_certificate(c: &SummandCertificate) -> Result<Self> {
        let basis_rows: Vec<Tensor> = c
            .basis
            .row_iter()
            .map(|r| Tensor::from_dense(c.p, c.n, c.degree, r))
            .collect();
        let mut basis = vec![format!("{} {} {}", c.p, c.n, c.degree)];
        basis.extend(basis_rows.iter().map(Tensor::to_string));
        Ok(CertificateJson {
            p: c.p.get(),
            n: c.n,
            degree: c.degree,
            route: c.route,
            generators: c.generators.iter().map(FpMatrix::to_row_vecs).collect(),
            basis,
            retraction: encode_matrix(&c.retraction),
        })
    }

    /// Rebuilds the certificate; the rows of the basis are kept as written.
    pub fn to_certificate(&self) -> Result<SummandCertificate> {
        let p = Prime::new(self.p)?;
        let text = parse_subspace_text(&self.basis.join("\n"))?;
        if text.p != p || text.n != self.n || text.r != self.degree {
            return Err(Error::InvalidInput(
                "basis header disagrees with the certificate".into(),
            ));
        }
        let big = tensor_dim(self.n, self.degree)? as usize;
        let basis = FpMatrix::from_residue_rows(p, big, text.dense_rows())?;
        let generators = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.n || g.iter().any(|r| r.len() != self.n) {
                    return Err(Error::InvalidInput("generator of the wrong size".into()));
                }
                FpMatrix::from_rows(
                    p,
                    self.n,
                    &g.iter()
                        .map(|r| r.iter().map(|&x| x as i64).collect())
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SummandCertificate {
            p,
            n: self.n,
            degree: self.degree,
            route: self.route,
            generators,
            basis,
            retraction: decode_matrix(p, &self.retraction)?,
        })
    }
}

#[cfg(test)]
mod tests;
