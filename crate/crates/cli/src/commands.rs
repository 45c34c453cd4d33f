//! One function per subcommand, each returning a finished report.

use std::path::Path;

use serde_json::{json, Value};

use liepowers::combinat::{higher_lie_dim, p_equiv_classes, partitions, witt_dim};
use liepowers::decompose::{
    certify_decomposition, check_direct_sums, check_summand, construct_b_family,
    split_tensor_power, summand_basis_check, FamilyOptions,
};
use liepowers::descent::PERMUTATION_BOUND;
use liepowers::format::{graded_lines, parse_subspace_text, CertificateJson};
use liepowers::freelie::GradedSubspace;
use liepowers::Prime;

use crate::report::{Check, Config, Report, Table};
use crate::Failure;

/// Largest `r` for the closed-form tables.
const MAX_TABLE_DEGREE: usize = 40;

/// Largest `n^r` for anything that builds subspaces of `T^r(V)`.
const MAX_AMBIENT: u64 = 1 << 16;

fn prime(p: u32) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_ambient(n: usize, r: usize) -> Result<(), Failure> {
    if n == 0 || r == 0 {
        return Err(usage("n and r must be positive"));
    }
    match (n as u64).checked_pow(r as u32) {
        Some(d) if d <= MAX_AMBIENT => Ok(()),
        _ => Err(usage(format!(
            "T^{r}(V) with dim V = {n} exceeds the cap of {MAX_AMBIENT}"
        ))),
    }
}

pub fn dims(p: u32, n: usize, r: usize) -> Result<Report, Failure> {
    prime(p)?;
    if n == 0 || r == 0 || r > MAX_TABLE_DEGREE {
        return Err(usage(format!("need n ≥ 1 and 1 ≤ r ≤ {MAX_TABLE_DEGREE}")));
    }
    let total = (n as u64)
        .checked_pow(r as u32)
        .filter(|&t| t < 1 << 62)
        .ok_or_else(|| usage(format!("{n}^{r} is too large")))?;
    let config = Config {
        p: Some(p),
        n: Some(n),
        r: Some(r),
        ..Default::default()
    };
    let mut rep = Report::new(config, Table::new(&["partition", "dim"]));
    let mut sum = 0u64;
    for lambda in partitions(r) {
        let d = higher_lie_dim(n as u64, &lambda);
        sum += d;
        rep.results
            .push(json!({ "partition": lambda.to_string(), "dim": d }));
        rep.table.push(vec![lambda.to_string(), d.to_string()]);
    }
    let witt = witt_dim(n as u64, r as u64);
    let top = higher_lie_dim(n as u64, &liepowers::combinat::Partition::single(r));
    rep.check(Check::new("witt_dim", r, witt == top).detail(format!("dim L^{r}(V) = {witt}")));
    rep.check(Check::new("total", r, sum == total).detail(format!("sum {sum}, n^r = {total}")));
    Ok(rep)
}

pub fn pclasses(p: u32, r: usize) -> Result<Report, Failure> {
    let pp = prime(p)?;
    if r == 0 || r > MAX_TABLE_DEGREE {
        return Err(usage(format!("need 1 ≤ r ≤ {MAX_TABLE_DEGREE}")));
    }
    let config = Config {
        p: Some(p),
        r: Some(r),
        ..Default::default()
    };
    let mut rep = Report::new(config, Table::new(&["class", "members"]));
    let classes = p_equiv_classes(r, pp);
    let mut covered = 0;
    for c in &classes {
        let members: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
        covered += members.len();
        rep.results
            .push(json!({ "key": c.key.to_string(), "members": members }));
        rep.table.push(vec![c.key.to_string(), members.join(" ")]);
    }
    let all = partitions(r).len();
    rep.check(
        Check::new("cover", r, covered == all).detail(format!("{covered} of {all} partitions")),
    );
    Ok(rep)
}

pub fn filtration(p: u32, n: usize, r: usize) -> Result<Report, Failure> {
    let pp = prime(p)?;
    check_ambient(n, r)?;
    if r > PERMUTATION_BOUND {
        return Err(usage(format!(
            "r = {r} exceeds the supported bound {PERMUTATION_BOUND}"
        )));
    }
    let config = Config {
        p: Some(p),
        n: Some(n),
        r: Some(r),
        ..Default::default()
    };
    let mut rep = Report::new(config, Table::new(&["class", "dim", "chain", "factors"]));
    let report = split_tensor_power(n, r, pp)?;
    let mut total = 0;
    for (i, (split, summary)) in report.classes.iter().zip(report.summary()).enumerate() {
        total += summary.dim;
        let factors: Vec<String> = summary
            .factors
            .iter()
            .map(|(l, d)| format!("({l}):{d}"))
            .collect();
        let chain: Vec<String> = summary.chain.iter().map(|d| d.to_string()).collect();
        rep.table.push(vec![
            summary.class.clone(),
            summary.dim.to_string(),
            chain.join(" "),
            factors.join(" "),
        ]);
        let diffs_match = summary.chain.iter().enumerate().all(|(j, &d)| {
            let below = summary.chain.get(j + 1).copied().unwrap_or(0);
            (d - below) as u64 == summary.factors[j].1
        });
        rep.results
            .push(serde_json::to_value(&summary).map_err(|e| usage(e.to_string()))?);
        rep.check(
            Check::new("filtration", &summary.class, diffs_match).data_ref(format!("results[{i}]")),
        );
        let basis = summand_basis_check(n, r, pp, &split.class)?;
        rep.check(Check::new("basis", &summary.class, basis).data_ref(format!("results[{i}]")));
    }
    let nr = n.pow(r as u32);
    rep.check(
        Check::new("direct_sum", r, total == nr).detail(format!("summands add to {total} of {nr}")),
    );
    Ok(rep)
}

pub fn decompose(
    p: u32,
    n: usize,
    k: usize,
    max_degree: usize,
    max_search: u64,
    verbose: u8,
) -> Result<Report, Failure> {
    let pp = prime(p)?;
    if k == 0 || max_degree < k {
        return Err(usage("need k ≥ 1 and max-degree ≥ k"));
    }
    check_ambient(n, max_degree)?;
    let config = Config {
        p: Some(p),
        n: Some(n),
        k: Some(k),
        max_degree: Some(max_degree),
        ..Default::default()
    };
    let mut rep = Report::new(
        config,
        Table::new(&[
            "degree", "dim_lie", "dim_c", "dim_u", "dim_b", "stage", "unique", "route",
        ]),
    );
    let opts = FamilyOptions {
        max_search,
        ..FamilyOptions::default()
    };
    let result = construct_b_family(n, pp, k, max_degree, &opts)?;
    for step in &result.steps {
        if verbose > 0 {
            eprintln!(
                "degree {}: dim B = {} ({}, {} certificate)",
                step.degree,
                step.b.dim(),
                step.stage,
                step.certificate.route
            );
        }
        let c_parts: Vec<Value> = step
            .c_pieces
            .iter()
            .map(|(c, x)| json!({ "b_degree": c * k, "power": step.s / c, "dim": x.dim() }))
            .collect();
        let cert = CertificateJson::from_certificate(&step.certificate)?;
        rep.results.push(json!({
            "degree": step.degree,
            "dim_lie": step.lie.dim(),
            "dim_c": step.c.dim(),
            "c_parts": c_parts,
            "u_pieces": step.u_pieces.iter().map(|u| u.label(k)).collect::<Vec<_>>(),
            "dim_u": step.u.dim(),
            "dim_w": step.w.dim(),
            "dim_b": step.b.dim(),
            "stage": step.stage.to_string(),
            "unique": step.unique,
            "basis": graded_lines(&step.b)?,
            "certificate": cert,
        }));
        rep.table.push(vec![
            step.degree.to_string(),
            step.lie.dim().to_string(),
            step.c.dim().to_string(),
            step.u.dim().to_string(),
            step.b.dim().to_string(),
            step.stage.to_string(),
            step.unique.to_string(),
            step.certificate.route.to_string(),
        ]);
    }
    let verdict = certify_decomposition(&result)?;
    let index_of = |degree: usize| {
        result
            .steps
            .iter()
            .position(|s| s.degree == degree)
            .unwrap_or(0)
    };
    for s in &verdict.sums {
        let i = index_of(s.degree);
        rep.check(Check::new("direct_sum", s.degree, s.direct).data_ref(format!("results[{i}]")));
    }
    for (s, step) in verdict.summands.iter().zip(&result.steps) {
        let i = index_of(s.degree);
        let mut c = Check::new("summand", s.degree, s.failure.is_none())
            .stage(step.stage.to_string())
            .data_ref(format!("results[{i}].certificate"));
        c.detail = s.failure.clone();
        rep.check(c);
    }
    Ok(rep)
}

fn field<'a>(v: &'a Value, path: &str) -> Result<&'a Value, Failure> {
    v.pointer(path)
        .ok_or_else(|| usage(format!("missing {path}")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, Failure> {
    field(v, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| usage(format!("{path} is not a non-negative integer")))
}

/// A summand's basis from its subspace text lines.
fn basis_of(v: &Value) -> Result<GradedSubspace, String> {
    let lines: Vec<String> = serde_json::from_value(v.get("basis").cloned().unwrap_or(Value::Null))
        .map_err(|e| format!("basis: {e}"))?;
    let text = parse_subspace_text(&lines.join("\n")).map_err(|e| e.to_string())?;
    text.span_graded().map_err(|e| e.to_string())
}

fn certificate_of(v: &Value) -> Result<liepowers::decompose::SummandCertificate, String> {
    let cj: CertificateJson =
        serde_json::from_value(v.clone()).map_err(|e| format!("certificate: {e}"))?;
    cj.to_certificate().map_err(|e| e.to_string())
}

/// Re-checks a `decompose --format json` report from its bases and
/// certificates alone, or a single certificate object.
pub fn certify(file: &Path) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    if doc.get("retraction").is_some() {
        return certify_single(&doc);
    }
    let p = as_usize(&doc, "/config/p")? as u32;
    let pp = prime(p)?;
    let n = as_usize(&doc, "/config/n")?;
    let k = as_usize(&doc, "/config/k")?;
    let max_degree = as_usize(&doc, "/config/max_degree")?;
    if k == 0 || max_degree < k {
        return Err(usage("config needs k ≥ 1 and max_degree ≥ k"));
    }
    check_ambient(n, max_degree)?;
    let results = field(&doc, "/results")?
        .as_array()
        .ok_or_else(|| usage("results is not an array"))?;
    let config = Config {
        p: Some(p),
        n: Some(n),
        k: Some(k),
        max_degree: Some(max_degree),
        ..Default::default()
    };
    let mut rep = Report::new(config, Table::new(&["kind", "degree", "status"]));

    let mut family: Vec<(usize, GradedSubspace)> = Vec::new();
    let mut bases: Vec<Result<GradedSubspace, String>> = Vec::new();
    for (i, r) in results.iter().enumerate() {
        let degree = as_usize(r, "/degree")?;
        let b = basis_of(r).and_then(|b| {
            if b.prime() != pp || b.n() != n || b.r() != degree {
                Err(format!(
                    "results[{i}] basis is not in T^{degree}(V) over F_{p} with n = {n}"
                ))
            } else {
                Ok(b)
            }
        });
        if let Ok(b) = &b {
            family.push((degree, b.clone()));
        }
        bases.push(b);
    }
    match check_direct_sums(pp, n, k, &family, max_degree) {
        Ok(sums) => {
            for s in sums {
                rep.check(Check::new("direct_sum", s.degree, s.direct));
            }
        }
        Err(e) => rep.check(Check::from_result("direct_sum", "all", Err(e.to_string()))),
    }
    for (i, (r, b)) in results.iter().zip(bases).enumerate() {
        let degree = as_usize(r, "/degree")?;
        let outcome = b.and_then(|b| {
            let cert = certificate_of(r.get("certificate").unwrap_or(&Value::Null))?;
            match check_summand(&cert, &b).failure {
                None => Ok(()),
                Some(f) => Err(f),
            }
        });
        let mut c = Check::from_result("summand", degree, outcome)
            .data_ref(format!("results[{i}].certificate"));
        if let Some(stage) = r.get("stage").and_then(Value::as_str) {
            c = c.stage(stage);
        }
        rep.check(c);
    }
    for c in rep.certificates.clone() {
        let status = if c.passed() { "pass" } else { "fail" };
        rep.table
            .push(vec![c.kind, c.degree_or_class, status.to_string()]);
    }
    Ok(rep)
}

fn certify_single(doc: &Value) -> Result<Report, Failure> {
    let p = as_usize(doc, "/p")? as u32;
    let n = as_usize(doc, "/n")?;
    let degree = as_usize(doc, "/degree")?;
    prime(p)?;
    check_ambient(n, degree)?;
    let config = Config {
        p: Some(p),
        n: Some(n),
        r: Some(degree),
        ..Default::default()
    };
    let mut rep = Report::new(config, Table::new(&["kind", "degree", "status"]));
    let outcome = certificate_of(doc).and_then(|c| c.verify().map_err(|e| e.to_string()));
    rep.check(Check::from_result("summand", degree, outcome));
    let c = &rep.certificates[0];
    let status = if c.passed() { "pass" } else { "fail" };
    rep.table.push(vec![
        c.kind.clone(),
        c.degree_or_class.clone(),
        status.to_string(),
    ]);
    Ok(rep)
}
