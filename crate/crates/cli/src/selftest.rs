//! Built-in checks: `quick` runs the small worked examples, `full` runs the
//! acceptance-sized configurations. Cases run on the rayon pool and are
//! reported in a fixed order.

use rayon::prelude::*;

use liepowers::combinat::{compositions, higher_lie_dim, partitions, witt_dim, young_character};
use liepowers::decompose::{
    certify_decomposition, construct_b_family, scalar_action_check, split_tensor_power,
    summand_basis_check, truncation_consistency, FamilyOptions,
};
use liepowers::descent::{
    act_on_tensors_graded, gr_action_check, lift_idempotents, DescentElement, GroupAlgebraElement,
    Ring,
};
use liepowers::freelie::{
    lazard_pieces, lie_power_graded, lyndon_basis, lyndon_words, pbw_basis, subalgebra_generated,
    symmetrize_extend, tensor_power_graded, truncate_graded, GradedSubspace, PbwGenerators, Tensor,
    WeightIndex,
};
use liepowers::{Error, Prime};

use crate::report::{Check, Config, Report, Table};
use crate::{commands, Failure, Level};

type CaseResult = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: liepowers::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn pr(p: u32) -> Prime {
    Prime::new(p).expect("small primes")
}

pub fn run(level: Level, verbose: u8) -> Result<Report, Failure> {
    let mut cases: Vec<(&str, fn() -> CaseResult)> = vec![
        ("dims p=2 n=2 r=4", dims_example),
        ("dims p=2 n=2 r=1", dims_single),
        ("pclasses p=2 r=4", pclasses_example),
        ("witt dims r<=4", || witt(4)),
        ("descent products r<=4", || descent_products(4)),
        ("young characters r<=4", || young_characters(4)),
        ("idempotents r<=4", || idempotents(4)),
        ("scalar action r<=4", scalar_action),
        ("gr action r<=4", || gr_action(4)),
        ("filtration r<=4", || filtration(&[2], 4)),
        ("filtration p=2 n=2 r=4 dims", filtration_example),
        ("lazard up to degree 4", || lazard(1, 4)),
        ("truncation r<=3", || truncation(3)),
        ("decompose p=2 k=3 n=2 to 6", decompose_small),
        ("decompose p=3 k=2 n=2 to 4", decompose_second_small),
        ("decompose k=1", decompose_k1),
        ("decompose rejects p | k", decompose_p_divides_k),
    ];
    if level == Level::Full {
        cases.extend::<[(&str, fn() -> CaseResult); 9]>([
            ("witt and pbw dims r<=8", || witt(8)),
            ("descent products r<=5", || descent_products(5)),
            ("idempotents r<=7", || idempotents(7)),
            ("gr action r<=6", || gr_action(6)),
            ("filtration n<=3 r<=6", || filtration(&[2, 3], 6)),
            ("lazard up to degree 6", || lazard(2, 6)),
            ("decompose p=2 k=3 n=2 to 12", decompose_flagship),
            ("decompose p=3 k=2 n=2 to 6", decompose_second),
            ("truncation of the family", truncation_family),
        ]);
    }
    let outcomes: Vec<CaseResult> = cases
        .par_iter()
        .map(|(name, f)| {
            let start = std::time::Instant::now();
            let out = f();
            if verbose > 0 {
                eprintln!(
                    "{name}: {} in {:.2?}",
                    if out.is_ok() { "pass" } else { "FAIL" },
                    start.elapsed()
                );
            }
            out
        })
        .collect();
    let mut rep = Report::new(Config::default(), Table::new(&["case", "status"]));
    for ((name, _), outcome) in cases.iter().zip(outcomes) {
        let status = if outcome.is_ok() { "pass" } else { "fail" };
        rep.table.push(vec![name.to_string(), status.to_string()]);
        rep.results
            .push(serde_json::json!({ "case": name, "status": status }));
        rep.check(Check::from_result("selftest", name, outcome));
    }
    Ok(rep)
}

fn report_ok(rep: Result<Report, Failure>) -> Result<Report, String> {
    let rep = rep.map_err(|f| format!("{f:?}"))?;
    match rep.first_failure() {
        Some(m) => Err(m),
        None => Ok(rep),
    }
}

fn dims_example() -> CaseResult {
    let rep = report_ok(commands::dims(2, 2, 4))?;
    let sum: u64 = rep.results.iter().filter_map(|r| r["dim"].as_u64()).sum();
    ensure(rep.results.len() == 5 && sum == 16, || {
        format!("{} rows adding to {sum}", rep.results.len())
    })
}

fn dims_single() -> CaseResult {
    let rep = report_ok(commands::dims(2, 2, 1))?;
    ensure(rep.results.len() == 1 && rep.results[0]["dim"] == 2, || {
        "expected one row of dim 2".into()
    })
}

fn pclasses_example() -> CaseResult {
    let rep = report_ok(commands::pclasses(2, 4))?;
    ensure(rep.results.len() == 2, || {
        format!("{} classes", rep.results.len())
    })
}

fn witt(top: usize) -> CaseResult {
    for p in [2, 3] {
        for n in [2usize, 3] {
            for r in 1..=top {
                let lie = lib(lie_power_graded(n, r, pr(p)))?;
                let w = witt_dim(n as u64, r as u64);
                ensure(
                    lie.dim() as u64 == w && lyndon_words(n, r).len() as u64 == w,
                    || {
                        format!(
                            "dim L^{r} with n={n}, p={p} is {}, Witt gives {w}",
                            lie.dim()
                        )
                    },
                )?;
                let dims =
                    lib(lib(pbw_basis(&PbwGenerators::lyndon(n, r, pr(p)), r))?.filtration_dims())?;
                for (i, (lambda, d)) in dims.iter().enumerate() {
                    let below = dims.get(i + 1).map_or(0, |x| x.1);
                    let want = higher_lie_dim(n as u64, lambda);
                    ensure((d - below) as u64 == want, || {
                        format!("W_({lambda}) factor for n={n}, p={p}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn descent_products(top: usize) -> CaseResult {
    for r in 1..=top {
        let nmask = 1usize << (r - 1);
        let basis: Vec<DescentElement> = (0..nmask)
            .map(|t| {
                let mut c = vec![0i64; nmask];
                c[t] = 1;
                DescentElement::from_mask_coeffs(r, Ring::Integer, c).expect("valid coefficients")
            })
            .collect();
        for a in &basis {
            let ga = lib(GroupAlgebraElement::from_descent(a))?;
            for b in &basis {
                let ab = lib(a.multiply(b))?;
                let g = ga.mul(&lib(GroupAlgebraElement::from_descent(b))?);
                ensure(lib(GroupAlgebraElement::from_descent(&ab))? == g, || {
                    format!("{a} · {b}")
                })?;
            }
        }
    }
    Ok(())
}

fn young_characters(top: usize) -> CaseResult {
    for r in 1..=top {
        for nu in compositions(r) {
            let c = DescentElement::xnu(&nu, Ring::Integer).c_map();
            for lambda in partitions(r) {
                let y = lib(young_character(&nu, &lambda))?;
                ensure(c.get(&lambda) == y as i64, || {
                    format!("c(X^({nu})) at ({lambda})")
                })?;
            }
        }
    }
    Ok(())
}

fn idempotents(top: usize) -> CaseResult {
    for p in [2, 3] {
        for r in 1..=top {
            lib(lib(lift_idempotents(r, pr(p)))?.verify())?;
        }
    }
    Ok(())
}

fn scalar_action() -> CaseResult {
    for p in [2, 3] {
        for r in 1..=4 {
            ensure(lib(scalar_action_check(2, r, pr(p)))?, || {
                format!("X^ν on W_λ/W_λ+ at r={r}, p={p}")
            })?;
        }
    }
    Ok(())
}

/// Products of Lyndon basis elements with degrees running over every
/// composition of `r`.
fn gr_action(top: usize) -> CaseResult {
    for p in [2, 3] {
        let p = pr(p);
        for r in 1..=top {
            for degrees in compositions(r) {
                let factors: Vec<Tensor> = degrees
                    .parts()
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| {
                        let basis = lyndon_basis(2, d, p);
                        basis[i % basis.len()].1.clone()
                    })
                    .collect();
                for nu in compositions(r) {
                    ensure(lib(gr_action_check(&nu, &factors))?, || {
                        format!("X^({nu}) on factors of degrees ({degrees}) over F_{p}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn filtration(ns: &[usize], top: usize) -> CaseResult {
    for p in [2, 3] {
        for &n in ns {
            for r in 2..=top {
                let rep = lib(split_tensor_power(n, r, pr(p)))?;
                for c in &rep.classes {
                    ensure(lib(summand_basis_check(n, r, pr(p), &c.class))?, || {
                        format!("basis of e_J T^{r} for {} with n={n}, p={p}", c.class)
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn filtration_example() -> CaseResult {
    let rep = lib(split_tensor_power(2, 4, pr(2)))?;
    let mut dims: Vec<usize> = rep.classes.iter().map(|c| c.summand.dim()).collect();
    dims.sort();
    ensure(dims == [4, 12], || format!("summand dims {dims:?}"))
}

/// `L(B ⊕ C) = L(B) ⊕ Q` where `Q` is generated by `[X_i, B, ..., B]`,
/// with `B` and each `X_i` spanned by letters.
fn lazard(max_dim: usize, top: usize) -> CaseResult {
    for p in [2, 3] {
        let p = pr(p);
        for b in 1..=max_dim {
            for c in 1..=max_dim {
                let n = b + c;
                let ix = lib(WeightIndex::shared(n, 1))?;
                let letters: Vec<Tensor> = (1..=n as u8).map(|l| Tensor::letter(p, n, l)).collect();
                let bspace = lib(GradedSubspace::span(p, ix.clone(), &letters[..b]))?;
                let xs = (b..n)
                    .map(|i| GradedSubspace::span(p, ix.clone(), &letters[i..=i]))
                    .collect::<liepowers::Result<Vec<_>>>();
                let pieces = lib(lazard_pieces(&lib(xs)?, &bspace, top))?;
                for piece in &pieces {
                    ensure(piece.space.dim() == b.pow(piece.brackets as u32), || {
                        format!("piece with {} brackets, dim B = {b}", piece.brackets)
                    })?;
                }
                let gens: Vec<GradedSubspace> = pieces.into_iter().map(|x| x.space).collect();
                let q = lib(subalgebra_generated(p, n, &gens, top))?;
                let lb = lib(subalgebra_generated(p, n, &[bspace], top))?;
                for d in 1..=top {
                    let lie = lib(lie_power_graded(n, d, p))?;
                    ensure(lib(lie.is_direct_sum_of(&[&lb[d - 1], &q[d - 1]]))?, || {
                        format!("degree {d} with dim B = {b}, dim C = {c}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn truncation(top: usize) -> CaseResult {
    for p in [2, 3] {
        let p = pr(p);
        for r in 1..=top {
            let mut spaces = vec![lib(lie_power_graded(r, r, p))?];
            let full = lib(tensor_power_graded(r, r, p))?;
            for (_, e) in lib(lift_idempotents(r, p))?.members {
                spaces.push(lib(act_on_tensors_graded(&e, &full))?);
            }
            for w in spaces {
                let ext = lib(symmetrize_extend(&w, r + 1))?;
                ensure(lib(truncate_graded(&ext, r))? == w, || {
                    format!("r={r}, p={p}")
                })?;
            }
        }
    }
    Ok(())
}

fn family(
    n: usize,
    p: u32,
    k: usize,
    max_degree: usize,
) -> Result<liepowers::decompose::DecompositionResult, String> {
    lib(construct_b_family(
        n,
        pr(p),
        k,
        max_degree,
        &FamilyOptions::default(),
    ))
}

fn certified(result: &liepowers::decompose::DecompositionResult) -> CaseResult {
    let rep = lib(certify_decomposition(result))?;
    ensure(rep.all_passed(), || {
        format!("{} of {} re-checks passed", rep.passed(), rep.checks())
    })
}

/// The dimensions of `L^{s/c}(B_{ck})` and `B_{sk}` at each degree.
fn sum_parts(
    result: &liepowers::decompose::DecompositionResult,
) -> Result<Vec<(usize, Vec<usize>)>, String> {
    let rep = lib(certify_decomposition(result))?;
    Ok(rep
        .sums
        .iter()
        .map(|s| (s.lie_dim, s.parts.iter().map(|x| x.dim).collect()))
        .collect())
}

fn decompose_small() -> CaseResult {
    let result = family(2, 2, 3, 6)?;
    ensure(result.dims() == [(3, 2), (6, 8)], || {
        format!("dims {:?}", result.dims())
    })?;
    certified(&result)
}

fn decompose_second_small() -> CaseResult {
    let result = family(2, 3, 2, 4)?;
    ensure(
        result.b(2) == Some(&lib(lie_power_graded(2, 2, pr(3)))?),
        || "B_2 is not L^2(V)".into(),
    )?;
    certified(&result)
}

fn decompose_k1() -> CaseResult {
    let result = family(2, 2, 1, 4)?;
    let dims = result.dims();
    ensure(dims == [(1, 2), (2, 0), (3, 0), (4, 0)], || {
        format!("dims {dims:?}")
    })?;
    certified(&result)
}

fn decompose_p_divides_k() -> CaseResult {
    match construct_b_family(2, pr(2), 2, 4, &FamilyOptions::default()) {
        Err(Error::Precondition(_)) => Ok(()),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("p | k was accepted".into()),
    }
}

fn decompose_flagship() -> CaseResult {
    let result = family(2, 2, 3, 12)?;
    let dims = result.dims();
    ensure(dims == [(3, 2), (6, 8), (9, 54), (12, 304)], || {
        format!("dims {dims:?}")
    })?;
    let parts = sum_parts(&result)?;
    let want = vec![
        (2, vec![2]),
        (9, vec![1, 8]),
        (56, vec![2, 54]),
        (335, vec![3, 28, 304]),
    ];
    ensure(parts == want, || format!("direct sums {parts:?}"))?;
    certified(&result)
}

fn decompose_second() -> CaseResult {
    let result = family(2, 3, 2, 6)?;
    let lie6 = lib(lie_power_graded(2, 6, pr(3)))?;
    ensure(lie6.dim() == 9 && result.b(6) == Some(&lie6), || {
        "B_6 is not L^6(V)".into()
    })?;
    certified(&result)
}

fn truncation_family() -> CaseResult {
    truncation(4)?;
    let three = family(3, 2, 3, 6)?;
    let two = family(2, 2, 3, 6)?;
    let checks = lib(truncation_consistency(&three, &two))?;
    ensure(checks.len() == 2 && checks.iter().all(|c| c.equal), || {
        format!("{checks:?}")
    })
}
