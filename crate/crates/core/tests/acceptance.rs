//! The acceptance criteria, run as one binary that prints a PASS or FAIL
//! line per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use liepowers::combinat::{
    compositions, higher_lie_dim, p_equiv_classes, partitions, witt_dim, young_character,
    Composition, Partition,
};
use liepowers::decompose::{
    certify_decomposition, construct_b_family, split_tensor_power, summand_basis_check,
    truncation_consistency, DecompositionResult, FamilyOptions,
};
use liepowers::descent::{
    act_on_tensor, act_on_tensors_graded, gr_action_check, lift_idempotents, DescentElement, Ring,
};
use liepowers::freelie::{
    lazard_pieces, lie_power_graded, lyndon_basis, pbw_basis, subalgebra_generated,
    symmetrize_extend, tensor_power_graded, truncate_graded, GradedSubspace, PbwGenerators, Tensor,
    WeightIndex,
};
use liepowers::Prime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn pr(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: liepowers::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        (
            "Witt and PBW bookkeeping",
            Duration::from_secs(30),
            witt_pbw,
        ),
        (
            "descent algebra against the group algebra",
            Duration::from_secs(60),
            descent_oracle,
        ),
        (
            "Young characters by orbit counting",
            Duration::from_secs(60),
            young_characters,
        ),
        (
            "Garsia-Reutenauer action on Lie products",
            Duration::MAX,
            gr_action,
        ),
        ("idempotent families", Duration::from_secs(120), idempotents),
        (
            "idempotent splitting and filtration",
            Duration::from_secs(300),
            filtration,
        ),
        (
            "decomposition p=2 k=3 n=2 up to degree 12",
            Duration::from_secs(600),
            flagship,
        ),
        (
            "decomposition p=3 k=2 n=2 up to degree 6",
            Duration::from_secs(120),
            second_configuration,
        ),
        ("Lazard elimination", Duration::MAX, lazard),
        ("truncation and extension", Duration::MAX, truncation),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:.1?}, limit {limit:?}")
            })
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------------
// Independent oracles shared by several criteria.

/// Words over `1..=n` of length `r`, first letter most significant.
fn all_words(n: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n as u8).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Lyndon words counted by brute force: strictly smaller than every proper
/// rotation.
fn lyndon_count(n: usize, r: usize) -> u64 {
    all_words(n, r)
        .into_iter()
        .filter(|w| {
            (1..r).all(|i| {
                let rot: Vec<u8> = w[i..].iter().chain(&w[..i]).copied().collect();
                *w < rot
            })
        })
        .count() as u64
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim L^λ(V)` from brute-force Lyndon counts: a symmetric power of
/// `L^i(V)` for each part size `i`.
fn higher_lie_oracle(n: usize, lambda: &Partition) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for &x in lambda.parts() {
        *counts.entry(x).or_insert(0u64) += 1;
    }
    counts
        .into_iter()
        .map(|(i, m)| {
            let w = lyndon_count(n, i);
            choose(w + m - 1, m)
        })
        .product()
}

/// Permutations of `0..r` as image lists, by Heap-free recursion.
fn perms(r: usize) -> Vec<Vec<u8>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in perms(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, (r - 1) as u8);
            out.push(q);
        }
    }
    out
}

fn descents(perm: &[u8]) -> u64 {
    let mut m = 0;
    for i in 0..perm.len().saturating_sub(1) {
        if perm[i] > perm[i + 1] {
            m |= 1 << i;
        }
    }
    m
}

/// `Σ a_T X^T` expanded into permutations: `σ` gets `Σ_{T ⊇ Des(σ)} a_T`.
fn expand(r: usize, coeffs: &[i64]) -> std::collections::BTreeMap<Vec<u8>, i64> {
    let mut out = std::collections::BTreeMap::new();
    for s in perms(r) {
        let d = descents(&s);
        let c: i64 = coeffs
            .iter()
            .enumerate()
            .filter(|&(t, _)| d & !(t as u64) == 0)
            .map(|(_, c)| c)
            .sum();
        if c != 0 {
            out.insert(s, c);
        }
    }
    out
}

/// Group algebra product with `i(στ) = (iσ)τ`.
fn group_product(
    a: &std::collections::BTreeMap<Vec<u8>, i64>,
    b: &std::collections::BTreeMap<Vec<u8>, i64>,
) -> std::collections::BTreeMap<Vec<u8>, i64> {
    let mut out = std::collections::BTreeMap::new();
    for (s, x) in a {
        for (t, y) in b {
            let st: Vec<u8> = s.iter().map(|&i| t[i as usize]).collect();
            *out.entry(st).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Cycle type of a permutation, as a partition.
fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for i in 0..perm.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j] as usize;
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::new(parts).unwrap()
}

/// A permutation of cycle type `λ`: consecutive blocks cycled.
fn perm_of_type(lambda: &Partition) -> Vec<u8> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &x in lambda.parts() {
        for i in 0..x {
            perm.push((start + (i + 1) % x) as u8);
        }
        start += x;
    }
    perm
}

/// The permutation character of `Sym(r)` on the cosets of the Young
/// subgroup of `ν`, counted as words of content `ν` fixed by `σ`.
fn induced_character(nu: &Composition, sigma: &[u8]) -> u64 {
    let r = nu.size();
    let mut content = Vec::with_capacity(r);
    for (i, &m) in nu.parts().iter().enumerate() {
        content.extend(std::iter::repeat_n(i as u8, m));
    }
    // Words of content ν are the distinct arrangements of `content`; count
    // the fixed ones by enumerating coset representatives directly.
    let mut count = 0;
    let mut word = content.clone();
    word.sort();
    loop {
        if (0..r).all(|i| word[sigma[i] as usize] == word[i]) {
            count += 1;
        }
        if !next_arrangement(&mut word) {
            break;
        }
    }
    count
}

fn next_arrangement(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// `p`-classes computed from scratch: `λ ~ μ` when the `p^s`-th powers of
/// permutations of those types have the same cycle type.
fn p_class_key(lambda: &Partition, p: u32) -> Partition {
    let sigma = perm_of_type(lambda);
    let r = sigma.len();
    let mut power: Vec<u8> = (0..r as u8).collect();
    let mut e = 1usize;
    while e < r.max(1) {
        e *= p as usize;
    }
    for _ in 0..e {
        power = power.iter().map(|&i| sigma[i as usize]).collect();
    }
    cycle_type(&power)
}

// ---------------------------------------------------------------------------

fn witt_pbw() -> Outcome {
    for p in [2, 3] {
        for n in [2usize, 3] {
            for r in 1..=8usize {
                let words = lyndon_count(n, r);
                ensure(witt_dim(n as u64, r as u64) == words, || {
                    format!("witt_dim({n},{r}) != {words} Lyndon words")
                })?;
                let lie = lib(lie_power_graded(n, r, pr(p)))?;
                ensure(lie.dim() as u64 == words, || {
                    format!(
                        "dim L^{r}(V) = {} over F_{p}, n = {n}; expected {words}",
                        lie.dim()
                    )
                })?;
                let total: u64 = partitions(r)
                    .iter()
                    .map(|l| higher_lie_dim(n as u64, l))
                    .sum();
                ensure(total == (n as u64).pow(r as u32), || {
                    format!("Σ dim L^λ != {n}^{r}")
                })?;
                let basis = lib(pbw_basis(&PbwGenerators::lyndon(n, r, pr(p)), r))?;
                let dims = lib(basis.filtration_dims())?;
                ensure(dims[0].1 as u64 == total, || {
                    format!("W_(1^{r}) is not all of T^{r}(V)")
                })?;
                for (i, (lambda, d)) in dims.iter().enumerate() {
                    let below = dims.get(i + 1).map_or(0, |x| x.1);
                    let want = higher_lie_oracle(n, lambda);
                    ensure(
                        (d - below) as u64 == want && higher_lie_dim(n as u64, lambda) == want,
                        || {
                            format!("p={p} n={n}: W_({lambda}) / W_({lambda})+ has dim {}, expected {want}", d - below)
                        },
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn descent_oracle() -> Outcome {
    let ring = Ring::Integer;
    for r in 1..=5usize {
        let nmask = 1usize << (r - 1);
        let basis: Vec<DescentElement> = (0..nmask)
            .map(|t| {
                let mut c = vec![0i64; nmask];
                c[t] = 1;
                DescentElement::from_mask_coeffs(r, ring, c).unwrap()
            })
            .collect();
        for (s, a) in basis.iter().enumerate() {
            for (t, b) in basis.iter().enumerate() {
                let prod = lib(a.multiply(b))?;
                let lhs = expand(r, prod.mask_coeffs());
                let rhs = group_product(&expand(r, a.mask_coeffs()), &expand(r, b.mask_coeffs()));
                ensure(lhs == rhs, || {
                    format!("r={r}: X^{s} X^{t} disagrees with the group algebra")
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let random = |r: usize, rng: &mut ChaCha8Rng| {
        let c = (0..1usize << (r - 1))
            .map(|_| rng.gen_range(-3i64..=3))
            .collect();
        DescentElement::from_mask_coeffs(r, ring, c).unwrap()
    };
    for i in 0..100 {
        let (a, b, c) = (
            random(6, &mut rng),
            random(6, &mut rng),
            random(6, &mut rng),
        );
        let left = lib(lib(a.multiply(&b))?.multiply(&c))?;
        let right = lib(a.multiply(&lib(b.multiply(&c))?))?;
        ensure(left == right, || {
            format!("associativity fails on random triple {i}")
        })?;
    }
    for i in 0..100 {
        let r = 1 + i % 5;
        let (a, b) = (random(r, &mut rng), random(r, &mut rng));
        let ab = lib(a.multiply(&b))?;
        ensure(ab.c_map() == a.c_map().mul(&b.c_map()), || {
            format!("c(ab) != c(a)c(b) on pair {i}, r = {r}")
        })?;
        // c(X^ν) is the permutation character on Young cosets.
        for lambda in partitions(r) {
            let sigma = perm_of_type(&lambda);
            let want: i64 = a
                .composition_terms()
                .iter()
                .map(|(nu, c)| c * induced_character(nu, &sigma) as i64)
                .sum();
            ensure(a.c_map().get(&lambda) == want, || {
                format!("c_map value at ({lambda}) on pair {i}")
            })?;
        }
    }
    Ok(())
}

fn young_characters() -> Outcome {
    for r in 1..=6usize {
        for nu in compositions(r) {
            for lambda in partitions(r) {
                let sigma = perm_of_type(&lambda);
                ensure(cycle_type(&sigma) == lambda, || {
                    format!("bad representative for ({lambda})")
                })?;
                let want = induced_character(&nu, &sigma);
                let got = lib(young_character(&nu, &lambda))?;
                ensure(got == want, || {
                    format!("φ^({nu})({lambda}) = {got}, oracle {want}")
                })?;
            }
        }
        for p in [2u32, 3, 5] {
            let classes = p_equiv_classes(r, pr(p));
            for lambda in partitions(r) {
                let key = p_class_key(&lambda, p);
                let class = classes.iter().find(|c| c.contains(&lambda)).unwrap();
                for mu in &class.members {
                    ensure(p_class_key(mu, p) == key, || {
                        format!("({lambda}) and ({mu}) are not {p}-equivalent")
                    })?;
                }
                let size = partitions(r)
                    .iter()
                    .filter(|m| p_class_key(m, p) == key)
                    .count();
                ensure(size == class.members.len(), || {
                    format!("{p}-class of ({lambda}) is incomplete")
                })?;
            }
            for class in &classes {
                for nu in compositions(r) {
                    let vals: Vec<u64> = class
                        .members
                        .iter()
                        .map(|l| induced_character(&nu, &perm_of_type(l)) % p as u64)
                        .collect();
                    ensure(vals.windows(2).all(|w| w[0] == w[1]), || {
                        format!("φ^({nu}) mod {p} is not constant on {class}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn random_lie_element(n: usize, d: usize, p: Prime, rng: &mut ChaCha8Rng) -> Tensor {
    let basis = lyndon_basis(n, d, p);
    loop {
        let t = basis.iter().fold(Tensor::zero(p, n, d), |acc, (_, b)| {
            acc.add(&b.scale(rng.gen_range(0..p.get())))
        });
        if !t.is_zero() {
            return t;
        }
    }
}

fn random_composition(r: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = r;
    while left > 0 {
        let x = rng.gen_range(1..=left);
        parts.push(x);
        left -= x;
    }
    parts
}

/// `X^ν` on a tensor as an explicit sum of place permutations.
fn xnu_by_permutations(nu: &Composition, t: &Tensor) -> Tensor {
    let allowed = nu.descent_mask();
    perms(nu.size())
        .into_iter()
        .filter(|s| descents(s) & !allowed == 0)
        .fold(Tensor::zero(t.prime(), t.n(), t.degree()), |acc, s| {
            let source: Vec<usize> = s.iter().map(|&i| i as usize).collect();
            acc.add(&t.permute_places(&source))
        })
}

fn gr_action() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for r in 1..=6usize {
        for p in [2u32, 3] {
            let p = pr(p);
            for trial in 0..50 {
                let n = if trial % 2 == 0 { 2 } else { 3 };
                let degrees = random_composition(r, &mut rng);
                let factors: Vec<Tensor> = degrees
                    .iter()
                    .map(|&d| random_lie_element(n, d, p, &mut rng))
                    .collect();
                let product = factors
                    .iter()
                    .skip(1)
                    .fold(factors[0].clone(), |a, b| a.mul(b));
                for nu in compositions(r) {
                    ensure(lib(gr_action_check(&nu, &factors))?, || {
                        format!(
                            "r={r} p={p} trial {trial}: X^({nu}) on factors of degrees {degrees:?}"
                        )
                    })?;
                    if trial < 5 {
                        let x = DescentElement::xnu(&nu, Ring::Modular(p));
                        let direct = lib(act_on_tensor(&x, &product))?;
                        ensure(direct == xnu_by_permutations(&nu, &product), || {
                            format!("r={r} p={p}: X^({nu}) action differs from its permutation sum")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn idempotents() -> Outcome {
    for p in [2u32, 3] {
        for r in 1..=7usize {
            let family = lib(lift_idempotents(r, pr(p)))?;
            let ring = Ring::Modular(pr(p));
            let mut keys: Vec<Partition> =
                partitions(r).iter().map(|l| p_class_key(l, p)).collect();
            keys.sort();
            keys.dedup();
            ensure(family.members.len() == keys.len(), || {
                format!(
                    "p={p} r={r}: {} idempotents for {} classes",
                    family.members.len(),
                    keys.len()
                )
            })?;
            let mut total = DescentElement::zero(r, ring);
            for (j, (cj, ej)) in family.members.iter().enumerate() {
                total = lib(total.add(ej))?;
                let key = p_class_key(cj.first(), p);
                let image = ej.c_map();
                for lambda in partitions(r) {
                    let want = (p_class_key(&lambda, p) == key) as i64;
                    ensure(image.get(&lambda) == want, || {
                        format!(
                            "p={p} r={r}: c(e_{cj}) at ({lambda}) is {}",
                            image.get(&lambda)
                        )
                    })?;
                }
                for (k, (ck, ek)) in family.members.iter().enumerate() {
                    let prod = lib(ej.multiply(ek))?;
                    let ok = if j == k { prod == *ej } else { prod.is_zero() };
                    ensure(ok, || format!("p={p} r={r}: e_{cj} e_{ck} is wrong"))?;
                }
            }
            ensure(total == DescentElement::identity(r, ring), || {
                format!("p={p} r={r}: Σ e_J != 1")
            })?;
        }
    }
    Ok(())
}

fn filtration() -> Outcome {
    for p in [2u32, 3] {
        for n in [2usize, 3] {
            for r in 2..=6usize {
                let report = lib(split_tensor_power(n, r, pr(p)))?;
                let full = lib(tensor_power_graded(n, r, pr(p)))?;
                let mut span = GradedSubspace::zero(pr(p), full.index().clone());
                let mut total = 0;
                for c in &report.classes {
                    span = lib(span.sum(&c.summand))?;
                    total += c.summand.dim();
                    ensure(
                        c.chain.first().map_or(0, |x| x.1) == c.summand.dim(),
                        || {
                            format!(
                                "p={p} n={n} r={r}: chain of {} does not start at the summand",
                                c.class
                            )
                        },
                    )?;
                    for (i, (lambda, d)) in c.chain.iter().enumerate() {
                        let below = c.chain.get(i + 1).map_or(0, |x| x.1);
                        let want = higher_lie_oracle(n, lambda);
                        ensure((d - below) as u64 == want, || {
                            format!("p={p} n={n} r={r}: class {} factor at ({lambda}) is {}, want {want}", c.class, d - below)
                        })?;
                    }
                    ensure(lib(summand_basis_check(n, r, pr(p), &c.class))?, || {
                        format!(
                            "p={p} n={n} r={r}: e_J F_λ is not a basis of e_J T^r(V) for {}",
                            c.class
                        )
                    })?;
                }
                let nr = n.pow(r as u32);
                ensure(total == nr && span.dim() == nr, || {
                    format!(
                        "p={p} n={n} r={r}: summands add to {total}, span {}",
                        span.dim()
                    )
                })?;
                if (p, n, r) == (2, 2, 4) {
                    let mut dims: Vec<usize> =
                        report.classes.iter().map(|c| c.summand.dim()).collect();
                    dims.sort();
                    ensure(dims == [4, 12], || {
                        format!("p=2 n=2 r=4 summand dims {dims:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn mu(mut d: u64) -> i128 {
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
        -sign
    } else {
        sign
    }
}

/// Number of Lyndon words of length `r` over `n` letters, by the necklace
/// formula with a locally computed Möbius function.
fn necklaces(n: u64, r: u64) -> u64 {
    let s: i128 = (1..=r)
        .filter(|d| r.is_multiple_of(*d))
        .map(|d| mu(d) * (n as i128).pow((r / d) as u32))
        .sum();
    (s / r as i128) as u64
}

fn invertible_matrices(n: usize, p: Prime) -> Vec<liepowers::linalg::FpMatrix> {
    let q = p.get();
    let cells = n * n;
    (0..(q as u64).pow(cells as u32))
        .filter_map(|mut code| {
            let data: Vec<u32> = (0..cells)
                .map(|_| {
                    let v = (code % q as u64) as u32;
                    code /= q as u64;
                    v
                })
                .collect();
            let m = liepowers::linalg::FpMatrix::from_vec(p, n, n, data).unwrap();
            m.is_invertible().then_some(m)
        })
        .collect()
}

/// Applies `π = R·Bm` to a tensor, as a row vector.
fn project(cert: &liepowers::decompose::SummandCertificate, t: &Tensor) -> Tensor {
    let coords = cert.retraction.apply_row(&t.to_dense());
    Tensor::from_dense(cert.p, cert.n, cert.degree, &cert.basis.apply_row(&coords))
}

/// Checks a summand certificate against `B` with an action computed by
/// substitution, over every element of the group.
fn check_certificate(step: &liepowers::decompose::DegreeStep, rng: &mut ChaCha8Rng) -> Outcome {
    let cert = &step.certificate;
    let q = step.degree;
    lib(cert.verify())?;
    let rows = liepowers::linalg::Subspace::row_space(&cert.basis);
    ensure(rows == step.b.to_subspace(), || {
        format!("degree {q}: certificate is about another space")
    })?;
    let group = invertible_matrices(cert.n, cert.p);
    let size = tensor_dim_of(cert.n, q);
    let t = Tensor::from_dense(
        cert.p,
        cert.n,
        q,
        &(0..size)
            .map(|_| rng.gen_range(0..cert.p.get()))
            .collect::<Vec<_>>(),
    );
    let pt = project(cert, &t);
    ensure(step.b.contains(&pt), || {
        format!("degree {q}: π(t) is outside B")
    })?;
    ensure(project(cert, &pt) == pt, || {
        format!("degree {q}: π is not idempotent on π(t)")
    })?;
    for b in step.b.basis_tensors() {
        ensure(project(cert, &b) == b, || {
            format!("degree {q}: π does not fix B")
        })?;
    }
    for g in &group {
        ensure(project(cert, &t.substitute(g)) == pt.substitute(g), || {
            format!("degree {q}: π does not commute with a group element")
        })?;
    }
    Ok(())
}

fn tensor_dim_of(n: usize, r: usize) -> usize {
    n.pow(r as u32)
}

fn family_dims(result: &DecompositionResult) -> Vec<(usize, usize)> {
    result.steps.iter().map(|s| (s.degree, s.b.dim())).collect()
}

fn flagship() -> Outcome {
    let p = pr(2);
    let result = lib(construct_b_family(2, p, 3, 12, &FamilyOptions::default()))?;
    let dims = family_dims(&result);
    ensure(dims == [(3, 2), (6, 8), (9, 54), (12, 304)], || {
        format!("dims of B: {dims:?}")
    })?;
    let expected_sums: [(usize, usize, Vec<usize>); 3] = [
        (6, 9, vec![1, 8]),
        (9, 56, vec![2, 54]),
        (12, 335, vec![3, 28, 304]),
    ];
    for (degree, total, parts) in expected_sums {
        let step = result.step(degree).ok_or("missing step")?;
        ensure(
            lyndon_count(2, degree) as usize == total && step.lie.dim() == total,
            || format!("dim L^{degree}(V) = {}, expected {total}", step.lie.dim()),
        )?;
        let mut got: Vec<usize> = Vec::new();
        let mut spaces: Vec<&GradedSubspace> = Vec::new();
        for (c, piece) in &step.c_pieces {
            let base = result.b(c * 3).ok_or("missing lower summand")?;
            let want = necklaces(base.dim() as u64, (step.s / c) as u64) as usize;
            ensure(piece.dim() == want, || {
                format!(
                    "degree {degree}: L^{}(B_{}) has dim {}, expected {want}",
                    step.s / c,
                    c * 3,
                    piece.dim()
                )
            })?;
            got.push(piece.dim());
            spaces.push(piece);
        }
        got.push(step.b.dim());
        spaces.push(&step.b);
        ensure(got == parts, || {
            format!("degree {degree}: parts {got:?}, expected {parts:?}")
        })?;
        let mut span = GradedSubspace::zero(p, step.lie.index().clone());
        for s in &spaces {
            ensure(step.lie.contains_subspace(s), || {
                format!("degree {degree}: a part is not inside L")
            })?;
            span = lib(span.sum(s))?;
        }
        ensure(span == step.lie, || {
            format!("degree {degree}: parts do not span L^{degree}(V)")
        })?;
    }
    let report = lib(certify_decomposition(&result))?;
    ensure(report.all_passed(), || {
        format!(
            "{} of {} re-checks passed",
            report.passed(),
            report.checks()
        )
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for step in &result.steps {
        check_certificate(step, &mut rng)?;
    }
    Ok(())
}

fn second_configuration() -> Outcome {
    let p = pr(3);
    let result = lib(construct_b_family(2, p, 2, 6, &FamilyOptions::default()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for (degree, dim) in [(2usize, 1usize), (6, 9)] {
        let step = result.step(degree).ok_or("missing step")?;
        let lie = lib(lie_power_graded(2, degree, p))?;
        ensure(
            step.b == lie && lie.dim() == dim && necklaces(2, degree as u64) as usize == dim,
            || {
                format!(
                    "B_{degree} has dim {} and is not L^{degree}(V)",
                    step.b.dim()
                )
            },
        )?;
        check_certificate(step, &mut rng)?;
    }
    let report = lib(certify_decomposition(&result))?;
    ensure(report.all_passed(), || {
        format!(
            "{} of {} re-checks passed",
            report.passed(),
            report.checks()
        )
    })
}

/// Degree-`d` dimensions of the free Lie algebra on a graded set with
/// `gens[m − 1]` generators in degree `m`: with `h = tG'/(1 − G)`,
/// `d·L_d = Σ_{e | d} μ(d/e) h_e`.
fn free_lie_graded_dims(gens: &[u64], up_to: usize) -> Vec<u64> {
    let g = |m: usize| {
        if m >= 1 && m <= gens.len() {
            gens[m - 1] as i128
        } else {
            0
        }
    };
    let mut f = vec![1i128];
    for m in 1..=up_to {
        f.push((1..=m).map(|j| g(j) * f[m - j]).sum());
    }
    let h: Vec<i128> = (0..=up_to)
        .map(|m| (1..=m).map(|j| j as i128 * g(j) * f[m - j]).sum())
        .collect();
    (1..=up_to)
        .map(|d| {
            let s: i128 = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| mu((d / e) as u64) * h[e])
                .sum();
            (s / d as i128) as u64
        })
        .collect()
}

fn lazard() -> Outcome {
    const TOP: usize = 6;
    for p in [2u32, 3] {
        let p = pr(p);
        for b in 1..=2usize {
            for c in 1..=2usize {
                let n = b + c;
                let ix = lib(WeightIndex::shared(n, 1))?;
                let letters: Vec<Tensor> = (1..=n as u8).map(|l| Tensor::letter(p, n, l)).collect();
                let bspace = lib(GradedSubspace::span(p, ix.clone(), &letters[..b]))?;
                let xs: Vec<GradedSubspace> = (b..n)
                    .map(|i| GradedSubspace::span(p, ix.clone(), &letters[i..=i]).unwrap())
                    .collect();
                let pieces = lib(lazard_pieces(&xs, &bspace, TOP))?;
                for piece in &pieces {
                    let want = b.pow(piece.brackets as u32);
                    ensure(
                        piece.space.dim() == want && piece.space.r() == 1 + piece.brackets,
                        || {
                            format!(
                                "b={b} c={c}: piece [X_{}, B^{}] has dim {}",
                                piece.source,
                                piece.brackets,
                                piece.space.dim()
                            )
                        },
                    )?;
                }
                ensure(pieces.len() == c * TOP, || {
                    format!("b={b} c={c}: {} pieces", pieces.len())
                })?;
                let gens: Vec<GradedSubspace> = pieces.iter().map(|x| x.space.clone()).collect();
                let q = lib(subalgebra_generated(p, n, &gens, TOP))?;
                let lb = lib(subalgebra_generated(
                    p,
                    n,
                    std::slice::from_ref(&bspace),
                    TOP,
                ))?;
                let counts: Vec<u64> = (1..=TOP)
                    .map(|m| (c * b.pow(m as u32 - 1)) as u64)
                    .collect();
                let q_oracle = free_lie_graded_dims(&counts, TOP);
                for d in 1..=TOP {
                    let lie = lib(lie_power_graded(n, d, p))?;
                    let (lbd, qd) = (&lb[d - 1], &q[d - 1]);
                    ensure(lie.dim() as u64 == necklaces(n as u64, d as u64), || {
                        format!("dim L^{d}(V)")
                    })?;
                    ensure(lbd.dim() as u64 == necklaces(b as u64, d as u64), || {
                        format!("dim L^{d}(B)")
                    })?;
                    ensure(qd.dim() as u64 == q_oracle[d - 1], || {
                        format!(
                            "b={b} c={c} p={p}: dim Q_{d} = {}, oracle {}",
                            qd.dim(),
                            q_oracle[d - 1]
                        )
                    })?;
                    ensure(lib(lie.is_direct_sum_of(&[lbd, qd]))?, || {
                        format!("b={b} c={c} p={p}: L^{d}(V) != L^{d}(B) ⊕ Q_{d}")
                    })?;
                    let same: Vec<&GradedSubspace> = gens.iter().filter(|x| x.r() == d).collect();
                    let mut span = GradedSubspace::zero(p, lib(WeightIndex::shared(n, d))?);
                    for x in &same {
                        span = lib(span.sum(x))?;
                    }
                    ensure(lib(span.is_direct_sum_of(&same))?, || {
                        format!("b={b} c={c} p={p}: degree {d} pieces are not independent")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn truncation() -> Outcome {
    for p in [2u32, 3] {
        let p = pr(p);
        for r in 1..=4usize {
            let mut cases: Vec<(String, GradedSubspace, GradedSubspace)> = vec![(
                "L".into(),
                lib(lie_power_graded(r, r, p))?,
                lib(lie_power_graded(r + 1, r, p))?,
            )];
            let family = lib(lift_idempotents(r, p))?;
            let small = lib(tensor_power_graded(r, r, p))?;
            let big = lib(tensor_power_graded(r + 1, r, p))?;
            for (class, e) in &family.members {
                cases.push((
                    format!("e_{class} T"),
                    lib(act_on_tensors_graded(e, &small))?,
                    lib(act_on_tensors_graded(e, &big))?,
                ));
            }
            for (name, w, direct) in cases {
                let ext = lib(symmetrize_extend(&w, r + 1))?;
                ensure(lib(truncate_graded(&ext, r))? == w, || {
                    format!("p={p} r={r}: {name} does not survive extension and truncation")
                })?;
                ensure(ext == direct, || {
                    format!("p={p} r={r}: extension of {name} differs from a direct build")
                })?;
            }
        }
    }
    let p = pr(2);
    let opts = FamilyOptions::default();
    let three = lib(construct_b_family(3, p, 3, 6, &opts))?;
    let two = lib(construct_b_family(2, p, 3, 6, &opts))?;
    for degree in [3usize, 6] {
        let (b3, b2) = (
            three.b(degree).ok_or("missing")?,
            two.b(degree).ok_or("missing")?,
        );
        ensure(lib(truncate_graded(b3, 2))? == *b2, || {
            format!("truncate(B^(3)) != B^(2) at degree {degree}")
        })?;
    }
    let checks = lib(truncation_consistency(&three, &two))?;
    ensure(checks.len() == 2 && checks.iter().all(|c| c.equal), || {
        "truncation_consistency disagrees".into()
    })
}
