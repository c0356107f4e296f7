use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    crucial_inequality_check, ln_factorial_bounds, ln_factorial_exact, phi_asymptotic_bounds, phi_real, varphi_int,
    weight_params, weight_table_row, DEFAULT_TOL,
};
use crate::certificates::{
    cert_to_json, decide_certified, generate_shift_witness, load_cert, save_cert, verify, verify_const_witness,
    Certificate, VerifyReport,
};
use crate::extremal::{
    diff_table1, diff_table2, diff_weight_table, minimal_frontier, s_inf, suggest_net, table1, table2,
    table2_reference_inputs, verify_net_certified, weight_table, Discrepancy, ReferenceValues, TableOptions,
};
use crate::generacy::{decide, decide_cached, Budget, Cache, CacheEntry, DecideOptions, Mode, Verdict};
use crate::nvec::{NatVec, Rational};

use super::manifest::{check_manifest, digest, ManifestEntry, RunManifest};
use super::output::Report;
use super::{BudgetArgs, Cli, CliError, Command, ExitCode, CACHE_ENV};

type Outcome = Result<(Report, ExitCode), CliError>;

pub(super) fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decide { vector, budget, emit_cert, cross_check, batch, manifest, no_cache } => {
            let opts = DecideOptions {
                mode: budget.mode,
                budget: budget.budget(Budget::default()),
                provenance: false,
                cross_check: *cross_check,
            };
            let cache = if *no_cache { None } else { open_cache()? };
            match (vector, batch) {
                (Some(v), None) => cmd_decide(v, &opts, emit_cert.as_deref(), manifest.as_deref(), cache.as_ref()),
                (None, Some(b)) => cmd_batch(b, &opts, emit_cert.as_deref(), manifest.as_deref(), cache.as_ref()),
                _ => Err(CliError::usage("give a vector or --batch FILE")),
            }
        }
        Command::Verify { path } => cmd_verify(path),
        Command::Sinf { n, budget, allow_long, cert_dir } => cmd_sinf(*n, budget, *allow_long, cert_dir.clone()),
        Command::Frontier { n, t } => cmd_frontier(*n, t),
        Command::Net { n, t, net_file, suggest, budget, cert_dir } => {
            let opts = DecideOptions { mode: budget.mode, budget: budget.budget(Budget::default()), ..Default::default() };
            if *suggest {
                cmd_suggest_net(*n, t, &opts)
            } else {
                cmd_net(*n, t, net_file.as_deref(), &opts, cert_dir.as_deref())
            }
        }
        Command::Phi { n, real, int } => cmd_phi(*n, *real || !*int, *int || !*real),
        Command::Bounds { n } => cmd_bounds(*n),
        Command::Weights { n } => cmd_weights(*n),
        Command::ShiftWitness { n, out } => cmd_shift_witness(*n, out.as_deref()),
        Command::Tables { which, n_max, sinf_upto, no_nets } => cmd_tables(which, *n_max, *sinf_upto, !*no_nets),
    }
}

fn open_cache() -> Result<Option<Cache>, CliError> {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => Ok(Some(Cache::open(Path::new(&d))?)),
        _ => Ok(None),
    }
}

fn parse_vector(s: &str) -> Result<NatVec, CliError> {
    s.parse().map_err(|e: crate::Error| CliError::usage(format!("malformed vector {s:?}: {e}")))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|e: crate::Error| CliError::usage(format!("malformed rational {s:?}: {e}")))
}

fn verdict_code(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Generating { .. } => ExitCode::Ok,
        Verdict::NotGenerating { .. } => ExitCode::Negative,
        Verdict::BudgetExceeded { .. } => ExitCode::Budget,
    }
}

fn other_mode(m: Mode) -> Mode {
    match m {
        Mode::Full => Mode::Antichain,
        Mode::Antichain => Mode::Full,
    }
}

fn cross_check(h: &NatVec, v: &Verdict, opts: &DecideOptions) -> Result<(), CliError> {
    let alt = decide(h, &opts.clone().with_mode(other_mode(opts.mode)))?;
    if v.is_decided() && alt.is_decided() && !v.same_outcome(&alt) {
        return Err(CliError {
            code: ExitCode::Internal,
            message: format!("cross-check failed for {h}: {} gives {v}, {} gives {alt}", opts.mode, other_mode(opts.mode)),
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct DecideOut {
    vector: NatVec,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
    cached: bool,
    seconds: f64,
}

fn file_name_for(h: &NatVec) -> String {
    let parts: Vec<String> = h.entries().iter().map(u64::to_string).collect();
    format!("cert_{}.json", parts.join("_"))
}

/// Decide one vector; with `cert_path`, certify, check and save.
fn decide_one(
    h: &NatVec,
    opts: &DecideOptions,
    cert_path: Option<&Path>,
    cache: Option<&Cache>,
) -> Result<(DecideOut, Option<Certificate>), CliError> {
    let t = Instant::now();
    let mut cached = false;
    let (verdict, cert) = if cert_path.is_some() {
        let (v, c) = decide_certified(h, opts)?;
        if let (Some(cache), Some(c)) = (cache, &c) {
            cache.insert(CacheEntry { vector: h.clone(), verdict: v, digest: Some(digest(c)) });
        }
        (v, c)
    } else if let Some(cache) = cache {
        cached = cache.get(h).is_some();
        (decide_cached(h, opts, cache)?, None)
    } else {
        (decide(h, opts)?, None)
    };
    if opts.cross_check {
        cross_check(h, &verdict, opts)?;
    }
    let mut written = None;
    if let (Some(p), Some(c)) = (cert_path, &cert) {
        save_cert(c, p)?;
        written = Some(p.display().to_string());
    }
    let out = DecideOut { vector: h.clone(), verdict, certificate: written, cached, seconds: t.elapsed().as_secs_f64() };
    Ok((out, cert))
}

fn decide_text(o: &DecideOut) -> String {
    let mut s = format!("{}: {}", o.vector, o.verdict);
    if o.cached {
        s.push_str(" [cached]");
    }
    if let Some(c) = &o.certificate {
        let _ = write!(s, "\n  certificate: {c}");
    }
    s
}

fn decide_row(o: &DecideOut) -> Vec<String> {
    let outcome = match o.verdict {
        Verdict::Generating { .. } => "generating",
        Verdict::NotGenerating { .. } => "not_generating",
        Verdict::BudgetExceeded { .. } => "budget_exceeded",
    };
    vec![
        o.vector.to_string(),
        outcome.into(),
        o.verdict.stage().to_string(),
        o.certificate.clone().unwrap_or_default(),
        format!("{:.3}", o.seconds),
    ]
}

const DECIDE_HEADER: [&str; 5] = ["vector", "outcome", "stage", "certificate", "seconds"];

fn relative_to(path: &Path, base: &Path) -> String {
    path.strip_prefix(base).unwrap_or(path).display().to_string()
}

fn cmd_decide(
    v: &str,
    opts: &DecideOptions,
    emit: Option<&Path>,
    manifest: Option<&Path>,
    cache: Option<&Cache>,
) -> Outcome {
    let h = parse_vector(v)?;
    let start = Instant::now();
    let emit: Option<PathBuf> = match (emit, manifest) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(m)) => Some(m.with_extension("cert.json")),
        (None, None) => None,
    };
    let (out, cert) = decide_one(&h, opts, emit.as_deref(), cache)?;
    if let Some(c) = cache {
        c.save()?;
    }
    if let Some(m) = manifest {
        let base = m.parent().unwrap_or(Path::new("")).to_path_buf();
        let mut rm = RunManifest::new(opts.mode, &opts.budget);
        rm.entries.push(ManifestEntry {
            input: h.to_string(),
            verdict: out.verdict,
            certificate: emit.as_deref().filter(|_| cert.is_some()).map(|p| relative_to(p, &base)),
            digest: cert.as_ref().map(digest),
        });
        rm.wall_clock_secs = start.elapsed().as_secs_f64();
        rm.save(m)?;
    }
    let code = verdict_code(&out.verdict);
    let row = decide_row(&out);
    Ok((Report::new(decide_text(&out), &out).table(&DECIDE_HEADER, vec![row]), code))
}

fn cmd_batch(
    file: &Path,
    opts: &DecideOptions,
    emit_dir: Option<&Path>,
    manifest: Option<&Path>,
    cache: Option<&Cache>,
) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| CliError::from(crate::Error::from(e)))?;
    let vectors: Vec<NatVec> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_vector)
        .collect::<Result<_, _>>()?;
    let start = Instant::now();
    let emit_dir: Option<PathBuf> = match (emit_dir, manifest) {
        (Some(d), _) => Some(d.to_path_buf()),
        (None, Some(m)) => Some(m.parent().unwrap_or(Path::new("")).join("certs")),
        (None, None) => None,
    };
    let results: Vec<Result<(DecideOut, Option<Certificate>), CliError>> = vectors
        .par_iter()
        .map(|h| {
            let path = emit_dir.as_ref().map(|d| d.join(file_name_for(h)));
            decide_one(h, opts, path.as_deref(), cache)
        })
        .collect();
    let results: Vec<(DecideOut, Option<Certificate>)> = results.into_iter().collect::<Result<_, _>>()?;
    if let Some(c) = cache {
        c.save()?;
    }
    if let Some(m) = manifest {
        let base = m.parent().unwrap_or(Path::new("")).to_path_buf();
        let mut rm = RunManifest::new(opts.mode, &opts.budget);
        for (o, c) in &results {
            rm.entries.push(ManifestEntry {
                input: o.vector.to_string(),
                verdict: o.verdict,
                certificate: o.certificate.as_ref().map(|p| relative_to(Path::new(p), &base)),
                digest: c.as_ref().map(digest),
            });
        }
        rm.wall_clock_secs = start.elapsed().as_secs_f64();
        rm.save(m)?;
    }
    let outs: Vec<&DecideOut> = results.iter().map(|(o, _)| o).collect();
    let text = outs.iter().map(|o| decide_text(o)).collect::<Vec<_>>().join("\n");
    let rows = outs.iter().map(|o| decide_row(o)).collect();
    let code = if outs.iter().any(|o| !o.verdict.is_decided()) { ExitCode::Budget } else { ExitCode::Ok };
    Ok((Report::new(text, &outs).table(&DECIDE_HEADER, rows), code))
}

fn report_text(rep: &VerifyReport) -> String {
    let mut s = format!("{}: {}\n", rep.kind, if rep.passed { "PASS" } else { "FAIL" });
    for it in &rep.items {
        if it.ok {
            let _ = writeln!(s, "  ok    {}", it.label);
        } else {
            let _ = writeln!(s, "  FAIL  {}: {}", it.label, it.problems.join("; "));
        }
    }
    if rep.passed {
        let _ = writeln!(s, "established: {}", rep.statement);
    }
    s
}

fn report_rows(rep: &VerifyReport) -> Vec<Vec<String>> {
    rep.items
        .iter()
        .map(|i| {
            let idx = if i.index == usize::MAX { String::new() } else { i.index.to_string() };
            vec![idx, i.label.clone(), i.ok.to_string(), i.problems.join("; ")]
        })
        .collect()
}

const REPORT_HEADER: [&str; 4] = ["index", "label", "ok", "problems"];

fn cmd_verify(path: &Path) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| CliError::from(crate::Error::Io(format!("{}: {e}", path.display()))))?;
    let is_manifest = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .is_some_and(|v| v.get("manifest_version").is_some());
    if is_manifest {
        let results = check_manifest(path)?;
        let passed = results.iter().all(|(_, r)| r.is_ok());
        let mut s = format!("manifest: {}\n", if passed { "PASS" } else { "FAIL" });
        let mut rows = Vec::new();
        for (input, r) in &results {
            match r {
                Ok(()) => {
                    let _ = writeln!(s, "  ok    {input}");
                }
                Err(e) => {
                    let _ = writeln!(s, "  FAIL  {input}: {e}");
                }
            }
            rows.push(vec![input.clone(), r.is_ok().to_string(), r.clone().err().unwrap_or_default()]);
        }
        let json = json!({
            "kind": "manifest",
            "passed": passed,
            "entries": results.iter().map(|(i, r)| json!({"input": i, "ok": r.is_ok(), "problem": r.clone().err()})).collect::<Vec<_>>(),
        });
        let code = if passed { ExitCode::Ok } else { ExitCode::Negative };
        return Ok((Report::new(s, &json).table(&["input", "ok", "problem"], rows), code));
    }
    let cert = load_cert(path)?;
    let rep = verify(&cert);
    let code = if rep.passed { ExitCode::Ok } else { ExitCode::Negative };
    Ok((Report::new(report_text(&rep), &rep).table(&REPORT_HEADER, report_rows(&rep)), code))
}

fn tier(n: usize) -> &'static str {
    match n {
        0..=4 => "fast",
        5 => "slow",
        _ => "long",
    }
}

fn default_cert_dir() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d).join("certs"),
        _ => PathBuf::from("zerogen-certs"),
    }
}

#[derive(Serialize)]
struct SinfOut {
    n: usize,
    tier: &'static str,
    value: Option<u64>,
    lower: u64,
    upper: u64,
    lower_certificate: Option<String>,
    upper_certificate: Option<String>,
    manifest: String,
    scan: Vec<(u64, Verdict)>,
    seconds: f64,
}

fn cmd_sinf(n: usize, budget: &BudgetArgs, allow_long: bool, cert_dir: Option<PathBuf>) -> Outcome {
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let t = tier(n);
    if t == "long" && !allow_long {
        return Err(CliError::tier(format!(
            "sinf {n} is in the long tier (n >= 6 can take hours and many GB); rerun with --allow-long"
        )));
    }
    let base = if t == "long" {
        Budget { max_tuples: 200_000_000_000, max_time: Duration::from_secs(6 * 3600), ..Budget::default() }
    } else {
        Budget::default()
    };
    let opts = DecideOptions { mode: budget.mode, budget: budget.budget(base), ..Default::default() };
    let start = Instant::now();
    let r = s_inf(n, &opts)?;
    let dir = cert_dir.unwrap_or_else(default_cert_dir);
    let mut rm = RunManifest::new(opts.mode, &opts.budget);
    let mut lower_path = None;
    if let Some(inv) = &r.lower_cert {
        let p = dir.join(format!("sinf_n{n}_c{}_nongen.json", inv.hbar));
        let c = Certificate::NongenInvariant(inv.clone());
        save_cert(&c, &p)?;
        rm.entries.push(ManifestEntry {
            input: format!("constant {} on {n}", inv.hbar),
            verdict: r.scan.iter().find(|(c, _)| *c == inv.hbar).map(|x| x.1).expect("scanned"),
            certificate: Some(relative_to(&p, &dir)),
            digest: Some(digest(&c)),
        });
        lower_path = Some(p.display().to_string());
    }
    let mut upper_path = None;
    if let Some(w) = &r.upper_cert {
        let p = dir.join(format!("sinf_n{n}_c{}_witness.json", w.hbar));
        let c = Certificate::ConstWitness(w.clone());
        save_cert(&c, &p)?;
        let verdict = r
            .scan
            .iter()
            .find(|(c, _)| *c == w.hbar)
            .map(|x| x.1)
            .unwrap_or(Verdict::Generating { witness_index: n - 1, stage: w.steps.len() as u64 });
        rm.entries.push(ManifestEntry {
            input: format!("constant {} on {n}", w.hbar),
            verdict,
            certificate: Some(relative_to(&p, &dir)),
            digest: Some(digest(&c)),
        });
        upper_path = Some(p.display().to_string());
    }
    rm.wall_clock_secs = start.elapsed().as_secs_f64();
    let mpath = dir.join(format!("sinf_n{n}_manifest.json"));
    rm.save(&mpath)?;
    let out = SinfOut {
        n,
        tier: t,
        value: r.value,
        lower: r.lower,
        upper: r.upper,
        lower_certificate: lower_path,
        upper_certificate: upper_path,
        manifest: mpath.display().to_string(),
        scan: r.scan.clone(),
        seconds: rm.wall_clock_secs,
    };
    let mut s = match r.value {
        Some(v) => format!("s_inf({n}) = {v}\n"),
        None => format!("s_inf({n}) in [{}, {}] (budget exhausted)\n", r.lower, r.upper),
    };
    if let Some(p) = &out.lower_certificate {
        let _ = writeln!(s, "  lower: constant {} is not 0-generating: {p}", r.lower);
    }
    if let Some(p) = &out.upper_certificate {
        let _ = writeln!(s, "  upper: constant {} is 0-generating: {p}", r.upper + 1);
    }
    let _ = writeln!(s, "  manifest: {}", out.manifest);
    let row = vec![
        n.to_string(),
        r.value.map(|v| v.to_string()).unwrap_or_default(),
        r.lower.to_string(),
        r.upper.to_string(),
        out.lower_certificate.clone().unwrap_or_default(),
        out.upper_certificate.clone().unwrap_or_default(),
    ];
    let code = if r.value.is_some() { ExitCode::Ok } else { ExitCode::Budget };
    Ok((
        Report::new(s, &out).table(&["n", "value", "lower", "upper", "lower_cert", "upper_cert"], vec![row]),
        code,
    ))
}

fn cmd_frontier(n: usize, t: &str) -> Outcome {
    let t = parse_rational(t)?;
    let f = minimal_frontier(n, &t)?;
    let mut s = format!("minimal frontier for n = {n}, t = {t}: {} vectors\n", f.minimal.len());
    for v in &f.minimal {
        let _ = writeln!(s, "  {v}");
    }
    let rows = f.minimal.iter().map(|v| vec![v.to_string()]).collect();
    Ok((Report::new(s, &f).table(&["vector"], rows), ExitCode::Ok))
}

fn read_net(path: &Path) -> Result<Vec<NatVec>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::from(crate::Error::Io(format!("{}: {e}", path.display()))))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::from(crate::Error::Schema(format!("{}: {e}", path.display()))))?;
    let list = v.get("net").cloned().unwrap_or(v);
    serde_json::from_value(list).map_err(|e| CliError::from(crate::Error::Schema(format!("{}: net: {e}", path.display()))))
}

fn cmd_net(n: usize, t: &str, file: Option<&Path>, opts: &DecideOptions, cert_dir: Option<&Path>) -> Outcome {
    let tr = parse_rational(t)?;
    let net = match file {
        Some(p) => read_net(p)?,
        None => match n {
            3 => ReferenceValues::embedded().a3(),
            4 => ReferenceValues::embedded().a4_completed(),
            _ => return Err(CliError::usage(format!("no bundled net for n = {n}; pass a net file"))),
        },
    };
    let (rep, witnesses) = verify_net_certified(n, &tr, &net, opts)?;
    if let Some(d) = cert_dir {
        for w in &witnesses {
            save_cert(&Certificate::GeneralWitness(w.clone()), &d.join(file_name_for(&w.hbar)))?;
        }
    }
    let code = if rep.passed { ExitCode::Ok } else { ExitCode::Negative };
    Ok((Report::new(report_text(&rep), &rep).table(&REPORT_HEADER, report_rows(&rep)), code))
}

fn cmd_suggest_net(n: usize, t: &str, opts: &DecideOptions) -> Outcome {
    let tr = parse_rational(t)?;
    let decider = |v: &NatVec| decide(v, opts);
    let net = suggest_net(n, &tr, &decider)?;
    let mut s = format!("suggested net for n = {n}, t = {tr} ({} vectors, not necessarily minimal)\n", net.len());
    for v in &net {
        let _ = writeln!(s, "  {v}");
    }
    let rows = net.iter().map(|v| vec![v.to_string()]).collect();
    Ok((Report::new(s, &json!({ "n": n, "t": tr, "net": net })).table(&["vector"], rows), ExitCode::Ok))
}

fn cmd_phi(n: usize, real: bool, int: bool) -> Outcome {
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let mut s = String::new();
    let mut obj = serde_json::Map::new();
    let mut header = vec!["n".to_string()];
    let mut row = vec![n.to_string()];
    if int {
        let v = varphi_int(n);
        let _ = writeln!(s, "varphi({n}) = {} (k = {})", v.value, v.k_star);
        obj.insert("int".into(), serde_json::to_value(&v).expect("json"));
        header.extend(["varphi".into(), "k_star".into()]);
        row.extend([v.value.to_string(), v.k_star.to_string()]);
    }
    if real {
        let p = phi_real(n, DEFAULT_TOL)?;
        let _ = writeln!(
            s,
            "phi({n}) = {:.15e} at x = {:.15} (ln = {:.15}, err <= {:.1e}{}), 1 + floor = {}",
            p.value,
            p.x_star,
            p.ln_value,
            p.ln_err,
            if p.boundary { ", boundary" } else { "" },
            p.one_plus_floor()
        );
        obj.insert("real".into(), serde_json::to_value(&p).expect("json"));
        obj.insert("one_plus_floor".into(), json!(p.one_plus_floor()));
        header.extend(["phi".into(), "x_star".into(), "ln_phi".into(), "ln_err".into(), "one_plus_floor".into()]);
        row.extend([
            format!("{:e}", p.value),
            p.x_star.to_string(),
            p.ln_value.to_string(),
            format!("{:e}", p.ln_err),
            p.one_plus_floor().to_string(),
        ]);
    }
    Ok((Report::new(s, &obj).table(&header, vec![row]), ExitCode::Ok))
}

fn cmd_bounds(n: usize) -> Outcome {
    let b = phi_asymptotic_bounds(n)?;
    let f = ln_factorial_bounds(n)?;
    let mut s = format!("n = {n}, W(ne) = {:.15}\n", b.w_ne);
    let _ = writeln!(s, "  lower       {:.12}", b.lower);
    let _ = writeln!(s, "  ln phi(n+1) {:.12} (err <= {:.1e})", b.ln_phi, b.ln_phi_err);
    let _ = writeln!(s, "  upper       {:.12}", b.upper);
    let claim = if b.in_range { "" } else { " (not claimed below n = 51)" };
    let _ = writeln!(s, "  sandwich: {}{claim}", if b.sandwich_holds() { "holds" } else { "fails" });
    let _ = writeln!(s, "  x_phi = {:.9} in ({:.9}, {:.9}): {}", b.x_phi, b.x_phi_lower, b.x_psi, b.x_phi_bracket_holds());
    let _ = writeln!(s, "  ln n! in [{:.9}, {:.9}], exact {:.9}", f.lower, f.upper, ln_factorial_exact(n));
    let ok = !b.in_range || (b.sandwich_holds() && b.x_phi_bracket_holds() && b.ratio_bounds_hold());
    let row = vec![
        n.to_string(),
        b.lower.to_string(),
        b.ln_phi.to_string(),
        b.upper.to_string(),
        b.sandwich_holds().to_string(),
        f.lower.to_string(),
        f.upper.to_string(),
    ];
    let code = if ok { ExitCode::Ok } else { ExitCode::Negative };
    Ok((
        Report::new(s, &json!({ "bounds": b, "factorial": f, "ln_factorial": ln_factorial_exact(n) }))
            .table(&["n", "lower", "ln_phi", "upper", "sandwich", "ln_fact_lower", "ln_fact_upper"], vec![row]),
        code,
    ))
}

fn cmd_weights(n: usize) -> Outcome {
    let p = weight_params(n, DEFAULT_TOL)?;
    let row = weight_table_row(n)?;
    let reference = ReferenceValues::embedded();
    let diffs = diff_weight_table(std::slice::from_ref(&row), &reference);
    let mut s = format!(
        "n = {n}: lambda = {:.4}, phi_n(lambda) = {:.4}, c_lambda = {:.4}, (lambda^(n-1) - 1)/(lambda - 1) = {:.4}{}\n",
        p.lambda,
        p.phi_at_lambda,
        p.c_lambda,
        p.ones_weight,
        if p.boundary { " (boundary maximum)" } else { "" }
    );
    let mut passed = true;
    let crucial = if n >= 4 {
        let c = crucial_inequality_check(n)?;
        passed = c.passed;
        let _ = writeln!(s, "  x_c = {:.6}, zeta residual = {:.1e}", c.x_c, c.zeta_residual);
        for r in &c.rows {
            let _ = writeln!(s, "  k = {:>2}: lhs = {:.6}, margin = {:+.3e} {}", r.k, r.lhs, r.margin, if r.ok { "ok" } else { "FAIL" });
        }
        let _ = writeln!(s, "  crucial inequality: {}", if c.passed { "holds" } else { "fails" });
        Some(c)
    } else {
        None
    };
    s.push_str(&discrepancy_text(&diffs));
    let csv_row = vec![
        n.to_string(),
        p.lambda.to_string(),
        p.phi_at_lambda.to_string(),
        p.c_lambda.to_string(),
        p.ones_weight.to_string(),
        passed.to_string(),
    ];
    let code = if passed { ExitCode::Ok } else { ExitCode::Negative };
    Ok((
        Report::new(s, &json!({ "params": p, "table_row": row, "crucial": crucial, "discrepancies": diffs }))
            .table(&["n", "lambda", "phi_at_lambda", "c_lambda", "ones_weight", "crucial_ok"], vec![csv_row]),
        code,
    ))
}

fn cmd_shift_witness(n: usize, out: Option<&Path>) -> Outcome {
    let w = generate_shift_witness(n)?;
    let rep = verify_const_witness(&w);
    let mut s = format!(
        "constant {} on {n} coordinates: {} steps, {}\n",
        w.hbar,
        w.steps.len(),
        if rep.passed { "verifies" } else { "FAILS" }
    );
    let _ = writeln!(s, "  1 + varphi({}) = {}", n + 1, varphi_int(n + 1).value + 1u32);
    let cert = Certificate::ConstWitness(w.clone());
    if let Some(p) = out {
        save_cert(&cert, p)?;
        let _ = writeln!(s, "  written to {}", p.display());
    }
    if !rep.passed {
        s.push_str(&report_text(&rep));
    }
    let code = if rep.passed { ExitCode::Ok } else { ExitCode::Negative };
    let row = vec![n.to_string(), w.hbar.to_string(), w.steps.len().to_string(), rep.passed.to_string()];
    let json: serde_json::Value = serde_json::from_str(&cert_to_json(&cert)).expect("json");
    Ok((Report::new(s, &json!({ "certificate": json, "passed": rep.passed })).table(&["n", "hbar", "steps", "passed"], vec![row]), code))
}

fn discrepancy_text(d: &[Discrepancy]) -> String {
    if d.is_empty() {
        return "discrepancies: none\n".into();
    }
    let mut s = format!("discrepancies: {}\n", d.len());
    for x in d {
        let _ = writeln!(
            s,
            "  {} {} n={}: reference {} computed {} [{}]",
            x.table,
            x.column,
            x.n,
            x.reference,
            x.computed,
            x.known.as_deref().unwrap_or("UNEXPECTED")
        );
    }
    s
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            let _ = write!(s, "{:>width$}  ", c, width = w[i]);
        }
        s.trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    s
}

fn cmd_tables(which: &str, n_max: usize, sinf_upto: usize, nets: bool) -> Outcome {
    let reference = ReferenceValues::embedded();
    let mut s = String::new();
    let mut json = serde_json::Map::new();
    let mut diffs = Vec::new();
    let mut csv_header: Vec<&str> = Vec::new();
    let mut csv_rows = Vec::new();
    let want = |k: &str| which == k || which == "all";
    if !["1", "2", "weights", "all"].contains(&which) {
        return Err(CliError::usage(format!("unknown table {which:?} (expected 1, 2, weights or all)")));
    }
    if want("1") {
        if sinf_upto > 5 {
            return Err(CliError::tier("tables computes s_inf for n <= 5 only; use `sinf --allow-long` beyond"));
        }
        let rows = table1(n_max, &TableOptions { sinf_upto, nets, decide: DecideOptions::default() })?;
        let d = diff_table1(&rows, &reference);
        let header = ["n", "varphi(n)", "1+floor(phi(n))", "s_inf(n)", "s_-1(n)", "varphi(n+1)", "n!"];
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.varphi.to_string(),
                    r.one_plus_floor_phi.to_string(),
                    r.s_inf.to_string(),
                    r.s1.to_string(),
                    r.varphi_next.to_string(),
                    r.factorial.to_string(),
                ]
            })
            .collect();
        s.push_str("table 1\n");
        s.push_str(&aligned(&header, &body));
        s.push_str(&discrepancy_text(&d));
        json.insert("table1".into(), serde_json::to_value(&rows).expect("json"));
        if which == "1" {
            csv_header = header.to_vec();
            csv_rows = body;
        }
        diffs.extend(d);
    }
    if want("2") {
        let rows = table2(&table2_reference_inputs()?)?;
        let d = diff_table2(&rows, &reference);
        let header = ["n", "s_-1 input", "1 - n/s"];
        let body: Vec<Vec<String>> =
            rows.iter().map(|r| vec![r.n.to_string(), r.s1_lower.to_mixed(), r.bound.to_string()]).collect();
        s.push_str("table 2\n");
        s.push_str(&aligned(&header, &body));
        s.push_str(&discrepancy_text(&d));
        json.insert("table2".into(), serde_json::to_value(&rows).expect("json"));
        if which == "2" {
            csv_header = header.to_vec();
            csv_rows = body;
        }
        diffs.extend(d);
    }
    if want("weights") {
        let ns: Vec<usize> = reference.weight_table.n.clone();
        let rows = weight_table(&ns)?;
        let d = diff_weight_table(&rows, &reference);
        let header = ["n", "lambda", "phi_n(lambda)", "c_lambda", "(lambda^(n-1)-1)/(lambda-1)"];
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    format!("{:.2}", r.lambda),
                    format!("{:.2}", r.phi_at_lambda),
                    format!("{:.2}", r.c_lambda_rounded),
                    format!("{:.2}", r.ones_weight),
                ]
            })
            .collect();
        s.push_str("weight table\n");
        s.push_str(&aligned(&header, &body));
        s.push_str(&discrepancy_text(&d));
        json.insert("weights".into(), serde_json::to_value(&rows).expect("json"));
        if which == "weights" {
            csv_header = header.to_vec();
            csv_rows = body;
        }
        diffs.extend(d);
    }
    let unexpected = diffs.iter().filter(|d| d.known.is_none()).count();
    json.insert("discrepancies".into(), serde_json::to_value(&diffs).expect("json"));
    json.insert("unexpected".into(), json!(unexpected));
    let code = if unexpected == 0 { ExitCode::Ok } else { ExitCode::Negative };
    let mut report = Report::new(s, &json);
    if !csv_header.is_empty() {
        report = report.table(&csv_header, csv_rows);
    }
    Ok((report, code))
}
