//! Command-line front end: `.alg` files, element expressions, commands and
//! reports.
//!
//! Exit status is 0 on success, 1 when a check fails, 2 on bad input.

pub mod alg;
pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use alg::{emit, parse_presentation, parse_presentation_data, AlgError, EmitError};
pub use expr::{parse_scalar, parse_words, ParseError, Scope};

use crate::algebra::{Presentation, Word};
use crate::graded::{gr_injectivity_evidence, gr_structure, pbw_check, PbwReport};
use crate::growth::{gk_estimate, graded_dim_compare, DegreeKind, GrowthTable};
use crate::order::admissibility_probe;
use crate::presets::{load_preset, PresetName, PresetSpec};
use crate::refilter::{refilter, regularity_report, RefiltrationCertificate, RegularityReport, WeightVector};
use crate::sample::{random_element, random_word};

#[derive(Debug, Parser)]
#[command(name = "refilt", version, about = "Normal forms, PBW checks and re-filtration certificates")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks (falls back to REFILT_SEED, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Standard form of an expression.
    Nf { file: PathBuf, expr: String },
    /// Product of two expressions in standard form.
    Mul { file: PathBuf, a: String, b: String },
    /// Multi-degree of an expression.
    Mdeg { file: PathBuf, expr: String },
    /// Resolve every overlap.
    Pbw { file: PathBuf },
    /// Associated graded presentation.
    Gr { file: PathBuf },
    /// Weight vector and re-filtration certificate.
    Refilter { file: PathBuf },
    /// Regularity report.
    Cert { file: PathBuf },
    /// Hilbert function and growth degree.
    Gk {
        file: PathBuf,
        /// Comma-separated weights (default: the certificate's weight vector).
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<u64>>,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// Print the table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Load a preset; parameters are `key=value`.
    Preset {
        name: String,
        params: Vec<String>,
        /// Print the preset in `.alg` format.
        #[arg(long)]
        emit: bool,
    },
    /// Run the property suite on a presentation.
    Check { file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::Mul { .. } => "mul",
            Command::Mdeg { .. } => "mdeg",
            Command::Pbw { .. } => "pbw",
            Command::Gr { .. } => "gr",
            Command::Refilter { .. } => "refilter",
            Command::Cert { .. } => "cert",
            Command::Gk { .. } => "gk",
            Command::Preset { .. } => "preset",
            Command::Check { .. } => "check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    CheckFailed = 1,
    InputError = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub payload: Value,
    pub text: String,
    pub status: Status,
}

impl Report {
    fn ok(command: &'static str, payload: Value, text: String) -> Self {
        Report {
            command,
            payload,
            text,
            status: Status::Success,
        }
    }

    fn input_error(command: &'static str, message: String) -> Self {
        Report {
            command,
            payload: json!({ "error": message }),
            text: format!("error: {message}"),
            status: Status::InputError,
        }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Pretty JSON with sorted keys, or the text rendering.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let v = json!({
                "command": self.command,
                "result": self.payload,
                "status": self.status.code(),
            });
            serde_json::to_string_pretty(&v).expect("JSON values serialize")
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
}

/// `--seed`, then `REFILT_SEED`, then 0.
pub fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("REFILT_SEED").ok()?.trim().parse().ok())
        .unwrap_or(0)
}

/// Parses arguments, runs the command and returns the exit code along with
/// the text to print.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Status::InputError.code() } else { 0 };
            return (code, e.to_string());
        }
    };
    let opts = Options {
        seed: resolve_seed(cli.seed),
    };
    let report = run(&cli.command, &opts);
    (report.status.code(), report.render(cli.json))
}

type Input<T> = Result<T, String>;

fn read(file: &Path) -> Input<String> {
    std::fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))
}

fn load(file: &Path) -> Input<Presentation> {
    parse_presentation(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))
}

fn scope(pres: &Presentation) -> Scope {
    Scope {
        t: pres.t,
        s: pres.s,
        allow_q: pres.field == crate::field::FieldKind::RationalFunction,
    }
}

fn element(pres: &Presentation, text: &str) -> Input<crate::algebra::Element> {
    let words: Vec<Word> = parse_words(text, scope(pres)).map_err(|e| format!("expression: {e}"))?;
    Ok(pres.normal_form_sum(&words))
}

pub fn run(cmd: &Command, opts: &Options) -> Report {
    let name = cmd.name();
    let result = match cmd {
        Command::Nf { file, expr } => nf(file, expr),
        Command::Mul { file, a, b } => mul(file, a, b),
        Command::Mdeg { file, expr } => mdeg(file, expr),
        Command::Pbw { file } => load(file).map(|p| pbw_report(&p)),
        Command::Gr { file } => gr(file),
        Command::Refilter { file } => refilter_cmd(file),
        Command::Cert { file } => cert(file),
        Command::Gk { file, w, nmax, csv } => gk(file, w.as_deref(), *nmax, *csv),
        Command::Preset { name, params, emit } => preset(name, params, *emit),
        Command::Check { file } => load(file).map(|p| check(&p, opts.seed)),
    };
    match result {
        Ok(mut r) => {
            r.command = name;
            r
        }
        Err(msg) => Report::input_error(name, msg),
    }
}

fn nf(file: &Path, expr: &str) -> Input<Report> {
    let p = load(file)?;
    let e = element(&p, expr)?;
    let text = p.render(&e);
    Ok(Report::ok("nf", json!({ "input": expr, "normal_form": text }), text))
}

fn mul(file: &Path, a: &str, b: &str) -> Input<Report> {
    let p = load(file)?;
    let product = p.multiply(&element(&p, a)?, &element(&p, b)?);
    let text = p.render(&product);
    Ok(Report::ok("mul", json!({ "left": a, "right": b, "product": text }), text))
}

fn mdeg(file: &Path, expr: &str) -> Input<Report> {
    let p = load(file)?;
    let e = element(&p, expr)?;
    let d = p.mdeg(&e).map_err(|e| e.to_string())?;
    Ok(Report::ok("mdeg", json!({ "input": expr, "mdeg": d.entries() }), d.to_string()))
}

fn pbw_json(p: &Presentation, r: &PbwReport) -> Value {
    json!({
        "pass": r.pass,
        "overlaps_checked": r.overlaps_checked,
        "witnesses": r.witnesses.iter().map(|w| json!({
            "overlap": w.overlap.label(),
            "path_a": p.render(&w.path_a),
            "path_b": p.render(&w.path_b),
            "difference": p.render(&w.difference),
        })).collect::<Vec<_>>(),
        "bound_violations": r.bound_violations.iter().map(|v| json!({
            "relation": [v.j + 1, v.i + 1],
            "exponent": v.exponent.entries(),
            "degree": v.degree.entries(),
            "bound": v.bound.entries(),
        })).collect::<Vec<_>>(),
    })
}

fn pbw_report(p: &Presentation) -> Report {
    let r = pbw_check(p);
    let mut text = String::new();
    if r.pass {
        let _ = write!(text, "PBW check passed: {} overlaps resolve", r.overlaps_checked);
    } else {
        let _ = write!(text, "PBW check failed");
        for w in &r.witnesses {
            let _ = write!(
                text,
                "\noverlap {}\n  path A: {}\n  path B: {}\n  difference: {}",
                w.overlap.label(),
                p.render(&w.path_a),
                p.render(&w.path_b),
                p.render(&w.difference)
            );
        }
        for v in &r.bound_violations {
            let _ = write!(
                text,
                "\ntail x{} x{}: exponent {} has degree {}, not below {}",
                v.j + 1,
                v.i + 1,
                v.exponent,
                v.degree,
                v.bound
            );
        }
    }
    let status = if r.pass { Status::Success } else { Status::CheckFailed };
    Report::ok("pbw", pbw_json(p, &r), text).with_status(status)
}

fn gr(file: &Path) -> Input<Report> {
    let p = load(file)?;
    let g = gr_structure(&p);
    let text = emit(g.presentation.data()).map_err(|e| e.to_string())?;
    let payload = json!({
        "presentation": text,
        "generator_degrees": g.generator_degrees.iter().map(|d| d.entries().to_vec()).collect::<Vec<_>>(),
        "sigma": g.sigmas().iter()
            .map(|s| s.scales().iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    Ok(Report::ok("gr", payload, text.trim_end().to_string()))
}

fn certificate_text(cert: &RefiltrationCertificate) -> String {
    let w: Vec<String> = cert.weight_vector.entries().iter().map(ToString::to_string).collect();
    let c: Vec<String> = cert.c_set.points().iter().map(ToString::to_string).collect();
    let mut text = format!("weight vector: ({})\nC-set: {{{}}}", w.join(","), c.join(", "));
    for row in &cert.relation_slack {
        let _ = write!(
            text,
            "\nslack x{} x{}: exponent {}, w-degree {} < {}",
            row.j + 1,
            row.i + 1,
            row.exponent,
            row.w_degree,
            row.bound
        );
    }
    let _ = write!(text, "\nvalid: {}", cert.valid);
    text
}

fn refilter_cmd(file: &Path) -> Input<Report> {
    let p = load(file)?;
    Ok(match refilter(&p) {
        Ok(cert) => {
            let status = if cert.valid { Status::Success } else { Status::CheckFailed };
            Report::ok("refilter", cert.to_json(), certificate_text(&cert)).with_status(status)
        }
        Err(e) => Report::ok("refilter", json!({ "error": e.to_string() }), format!("refilter failed: {e}"))
            .with_status(Status::CheckFailed),
    })
}

fn report_text(r: &RegularityReport) -> String {
    let mut text = String::new();
    for (name, pass) in &r.checks {
        let _ = writeln!(text, "{name}: {}", if *pass { "pass" } else { "FAIL" });
    }
    match &r.conclusion {
        Some(c) => {
            let _ = write!(text, "conclusion: {c}");
            for h in &r.trusted_hypotheses {
                let _ = write!(text, "\ntrusted: {h}");
            }
        }
        None => {
            let _ = write!(text, "no conclusion: some hypotheses fail");
        }
    }
    text
}

fn cert(file: &Path) -> Input<Report> {
    let data = parse_presentation_data(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
    let r = regularity_report(&data);
    let status = if r.conclusion.is_some() { Status::Success } else { Status::CheckFailed };
    Ok(Report::ok("cert", r.to_json(), report_text(&r)).with_status(status))
}

fn growth_text(t: &GrowthTable) -> String {
    let w: Vec<String> = t.w.entries().iter().map(ToString::to_string).collect();
    let mut text = format!("weights: ({})\n", w.join(","));
    match t.kind {
        DegreeKind::Exact => {
            let _ = write!(text, "growth degree: {} (exact)", t.estimated_degree);
        }
        DegreeKind::Estimate => {
            let _ = write!(text, "growth degree: {} (estimate)", t.estimated_degree);
        }
    }
    if let (Some(fit), Some(from)) = (&t.exact_fit, t.fit_from) {
        let _ = write!(text, "\nh(n) = {fit} for n >= {from}");
    }
    let n = t.counts.len() - 1;
    let _ = write!(text, "\nh({n}) = {}", t.counts[n]);
    text
}

fn gk(file: &Path, w: Option<&[u64]>, nmax: usize, csv: bool) -> Input<Report> {
    let p = load(file)?;
    let w = match w {
        Some(entries) => WeightVector::new(entries.to_vec()).ok_or("weights must be positive")?,
        None => refilter(&p)
            .map(|c| c.weight_vector)
            .unwrap_or_else(|_| WeightVector::ones(p.s)),
    };
    let table = gk_estimate(&p, &w, nmax).map_err(|e| e.to_string())?;
    let text = if csv { table.to_csv().trim_end().to_string() } else { growth_text(&table) };
    Ok(Report::ok("gk", table.to_json(), text))
}

fn preset_spec(name: &str, params: &[String]) -> Input<PresetSpec> {
    let name: PresetName = name.parse().map_err(|e: crate::presets::PresetError| e.to_string())?;
    let mut spec = PresetSpec::new(name);
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("malformed parameter `{p}` (expected key=value)"))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "s" || k == "t" {
            let n: usize = v.parse().map_err(|_| format!("`{k}` must be a natural number"))?;
            spec = spec.with_size(k, n);
        } else {
            let value = parse_scalar(v, true).map_err(|e| format!("parameter `{k}`: {e}"))?;
            spec = spec.with_param(k, value);
        }
    }
    Ok(spec)
}

fn relations_text(p: &Presentation) -> String {
    let mut lines = vec![format!(
        "field {}, base {}, gens {}, grading {}",
        p.field.keyword(),
        p.t,
        p.s,
        p.n
    )];
    for j in 0..p.s {
        for i in 0..j {
            let mut rhs = p.generator(i).scale(&p.q_value(j, i));
            rhs = p.multiply(&rhs, &p.generator(j));
            if let Some(t) = p.tails.get(&(j, i)) {
                rhs.add_assign(t);
            }
            lines.push(format!("x{}*x{} = {}", j + 1, i + 1, p.render(&rhs)));
        }
    }
    for (i, row) in p.comm.iter().enumerate() {
        for (l, v) in row.iter().enumerate() {
            let term = crate::base::render_term(v, &[format!("z{}", l + 1)], &[format!("x{}", i + 1)]);
            lines.push(format!("x{}*z{} = {}", i + 1, l + 1, term));
        }
    }
    lines.join("\n")
}

fn preset(name: &str, params: &[String], emit_text: bool) -> Input<Report> {
    let spec = preset_spec(name, params)?;
    let p = load_preset(&spec).map_err(|e| e.to_string())?;
    let alg_text = emit(p.data()).map_err(|e| e.to_string())?;
    let text = if emit_text { alg_text.trim_end().to_string() } else { relations_text(&p) };
    Ok(Report::ok(
        "preset",
        json!({ "name": spec.name.as_str(), "presentation": alg_text }),
        text,
    ))
}

const CHECK_SAMPLES: usize = 40;

/// Runs every randomized and exact check; all randomness flows from `seed`.
pub fn check(p: &Presentation, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<(&'static str, bool)> = Vec::new();

    let n_probe = admissibility_probe(&p.order, 2000, p.n, seed);
    let s_probe = admissibility_probe(p.exponent_order(), 2000, p.s, seed.wrapping_add(1));
    results.push(("order_axioms", n_probe.pass && s_probe.pass));

    let pbw = pbw_check(p);
    results.push(("pbw", pbw.pass));

    let assoc = (0..CHECK_SAMPLES).all(|_| {
        let a = random_element(&mut rng, p, 2, 2);
        let b = random_element(&mut rng, p, 2, 2);
        let c = random_element(&mut rng, p, 2, 2);
        p.multiply(&p.multiply(&a, &b), &c) == p.multiply(&a, &p.multiply(&b, &c))
    });
    results.push(("associativity", assoc));

    let idempotent = (0..CHECK_SAMPLES).all(|_| {
        let w = random_word(&mut rng, p, 5);
        let e = p.normal_form(&w);
        let again = p.normal_form_sum(&standard_words(&e));
        again == e
    });
    results.push(("normal_form_idempotent", idempotent));

    let round_trip = (0..CHECK_SAMPLES).all(|_| {
        let e = random_element(&mut rng, p, 3, 3);
        parse_words(&p.render(&e), scope(p))
            .map(|w| p.normal_form_sum(&w) == e)
            .unwrap_or(false)
    });
    results.push(("render_round_trip", round_trip));

    results.push(("gr_injectivity", gr_injectivity_evidence(p, CHECK_SAMPLES, seed)));

    let cert = if pbw.pass { refilter(p).ok() } else { None };
    results.push(("refiltration_valid", cert.as_ref().is_some_and(|c| c.valid)));
    let w = cert
        .as_ref()
        .map(|c| c.weight_vector.clone())
        .unwrap_or_else(|| WeightVector::ones(p.s));
    results.push(("graded_dimensions", graded_dim_compare(p, &w, 20)));

    let pass = results.iter().all(|(_, b)| *b);
    let mut text = String::new();
    for (name, ok) in &results {
        let _ = writeln!(text, "{name}: {}", if *ok { "pass" } else { "FAIL" });
    }
    let _ = write!(text, "seed: {seed}");
    let checks: serde_json::Map<String, Value> = results.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let mut payload = json!({ "checks": checks, "seed": seed, "pass": pass });
    if !pbw.pass {
        payload["pbw"] = pbw_json(p, &pbw);
    }
    Report::ok("check", payload, text).with_status(if pass { Status::Success } else { Status::CheckFailed })
}

/// The words `a · x^γ` of an element in standard form.
fn standard_words(e: &crate::algebra::Element) -> Vec<Word> {
    e.terms()
        .map(|(gamma, a)| {
            let mut atoms = vec![crate::algebra::Atom::Base(a.clone())];
            atoms.extend(crate::algebra::expand_exponent(gamma).into_iter().map(crate::algebra::Atom::Gen));
            Word::new(crate::field::Scalar::one(), atoms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
        f
    }

    fn run_args(args: &[&str]) -> (i32, String) {
        main_with_args(std::iter::once("refilt").chain(args.iter().copied()))
    }

    #[test]
    fn nf_on_plane() {
        let f = write_tmp("gens 2\nq x2 x1 = q\n");
        let (code, out) = run_args(&["nf", f.path().to_str().unwrap(), "x2*x1"]);
        assert_eq!((code, out.as_str()), (0, "q*x1*x2"));
    }

    #[test]
    fn bad_expression_is_input_error() {
        let f = write_tmp("gens 2\n");
        let (code, out) = run_args(&["nf", f.path().to_str().unwrap(), "x1^-1"]);
        assert_eq!(code, 2);
        assert!(out.contains("not invertible"), "{out}");
        let (code, _) = run_args(&["nf", "/nonexistent.alg", "x1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn preset_emit_parses() {
        let (code, out) = run_args(&["preset", "quantum_affine", "s=2", "q_2_1=q^3", "--emit"]);
        assert_eq!(code, 0);
        let p = parse_presentation(&out).unwrap();
        assert_eq!(p.q_value(1, 0).to_string(), "q^3");
        let (code, _) = run_args(&["preset", "quantum_affine", "bogus"]);
        assert_eq!(code, 2);
        let (code, _) = run_args(&["preset", "uq_sl3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn preset_summary() {
        let (_, out) = run_args(&["preset", "uq_sl2"]);
        assert!(out.contains("x1*z1 = q^2*z1*x1"), "{out}");
        assert!(out.contains("x2*x1 = "), "{out}");
    }
}
