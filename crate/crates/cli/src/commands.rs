//! Command implementations. Each returns what would be printed and the
//! process exit code, so tests can drive them without a subprocess.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use rht_core::gca::apply_derivation;
use rht_core::formality::{koszul_sequence, regular_sequence_check, RegularSequence};
use rht_core::mapmodel::{check_hypotheses, map_model, MapModel, Route};
use rht_core::{ce_cochains, formality_pipeline, Cdga, Certificate, FormalityVerdict, Verdict};

use crate::fixtures;
use crate::workspace::{algebra_text, Item, Workspace};

pub const DEFAULT_MAX_DEGREE: u32 = 20;
pub const MAX_DEGREE_ENV: &str = "RHT_MAX_DEGREE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome { stdout, stderr: String::new(), code }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: msg.into(), code: 1 }
    }
}

/// Where a workspace comes from.
#[derive(Clone, Debug)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

impl Source {
    pub fn load(&self) -> Result<Workspace, String> {
        match self {
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Workspace::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
            }
            Source::Builtin(name) => {
                let text = fixtures::builtin(name)
                    .ok_or_else(|| format!("unknown builtin `{name}`; expected one of {}", fixtures::NAMES.join(", ")))?;
                Workspace::parse(text).map_err(|e| format!("builtin {name}: {e}"))
            }
        }
    }

    /// Directory certificates are written to when none is given.
    fn default_dir(&self) -> PathBuf {
        match self {
            Source::File(p) => p.parent().filter(|d| !d.as_os_str().is_empty()).map_or_else(|| PathBuf::from("."), Path::to_path_buf),
            Source::Builtin(_) => PathBuf::from("."),
        }
    }
}

/// `N` from the flag, else `RHT_MAX_DEGREE`, else the default.
pub fn resolve_max_degree(flag: Option<u32>) -> Result<u32, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_DEGREE_ENV}={v} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn single<'a>(names: Vec<&'a str>, what: &str) -> Result<&'a str, String> {
    match names[..] {
        [one] => Ok(one),
        [] => Err(format!("the workspace has no {what}")),
        _ => Err(format!("several {what}s ({}); pick one with --name", names.join(", "))),
    }
}

/// The algebra a cohomology request refers to: an algebra, `C*` of a dgl,
/// or the model of a problem.
fn target_algebra(ws: &Workspace, name: Option<&str>) -> Result<(String, Cdga), String> {
    let name = match name {
        Some(n) => n,
        None => single(
            ws.items.iter().filter(|i| matches!(i, Item::Algebra { .. } | Item::Dgl { .. })).map(Item::name).collect(),
            "algebra or dgl",
        )?,
    };
    match ws.get(name) {
        Some(Item::Algebra { cdga, .. }) => Ok((name.into(), cdga.clone())),
        Some(Item::Dgl { dgl, .. }) => Ok((name.into(), ce_cochains(dgl).map_err(|e| e.to_string())?.cdga)),
        Some(Item::Problem(_)) => {
            let prob = ws.problem(name)?;
            Ok((name.into(), map_model(&prob, None).map_err(|e| e.to_string())?.cdga().clone()))
        }
        Some(Item::Morphism { .. }) => Err(format!("{name} is a morphism, not an algebra")),
        None => Err(format!("no algebra, dgl or problem named {name}")),
    }
}

fn problem_name<'a>(ws: &'a Workspace, name: Option<&'a str>) -> Result<&'a str, String> {
    match name {
        Some(n) => Ok(n),
        None => single(ws.problems().map(|p| p.name.as_str()).collect(), "problem"),
    }
}

pub fn cohomology(src: &Source, name: Option<&str>, max_degree: u32, format: Format) -> Outcome {
    let run = || -> Result<(String, Vec<usize>), String> {
        let ws = src.load()?;
        let (name, a) = target_algebra(&ws, name)?;
        let ranks = a.cohomology_ranks(max_degree).map_err(|e| e.to_string())?;
        Ok((name, ranks))
    };
    match run() {
        Err(e) => Outcome::fail(e),
        Ok((name, ranks)) => {
            let out = match format {
                Format::Json => json!({ "name": name, "max_degree": max_degree, "ranks": ranks }).to_string() + "\n",
                Format::Table => {
                    let mut s = format!("# H^n({name})\ndegree rank\n");
                    for (n, r) in ranks.iter().enumerate() {
                        s.push_str(&format!("{n:>6} {r}\n"));
                    }
                    s
                }
            };
            Outcome::ok(out, 0)
        }
    }
}

/// `d(Sv) = -S(dv)` on the barred generators, the other sign convention for
/// even `p`. Isomorphic to the canonical model by rescaling barred generators.
fn alternate_normalization(m: &MapModel, y: Option<&Cdga>) -> Option<Vec<(String, String)>> {
    let (MapModel::Suspension(s), Some(y)) = (m, y) else { return None };
    if s.p % 2 == 1 {
        return None;
    }
    let gens = s.cdga.gens();
    Some(
        (0..s.base)
            .map(|g| {
                let alt = apply_derivation(gens, &s.s, y.differential(g)).neg();
                (gens.name(s.bar_of(g)).to_string(), alt)
            })
            .filter(|(_, alt)| !alt.is_zero())
            .map(|(name, alt)| (name, alt.fmt_with(gens)))
            .collect(),
    )
}

fn route_name(m: &MapModel) -> &'static str {
    match m {
        MapModel::Suspension(_) => "sullivan",
        MapModel::Tensor { .. } => "lie",
    }
}

pub fn map_model_cmd(src: &Source, name: Option<&str>, route: Option<Route>, format: Format) -> Outcome {
    let ws = match src.load() {
        Ok(ws) => ws,
        Err(e) => return Outcome::fail(e),
    };
    let pname = match problem_name(&ws, name) {
        Ok(n) => n.to_string(),
        Err(e) => return Outcome::fail(e),
    };
    let prob = match ws.problem(&pname) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(e),
    };
    let hyp = check_hypotheses(&prob);
    if !hyp.is_ok() {
        let msgs: Vec<String> = hyp.violations.iter().map(|v| v.to_string()).collect();
        return Outcome::fail(format!("hypotheses fail for {pname}: {}", msgs.join("; ")));
    }
    let model = match map_model(&prob, route) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let a = model.cdga();
    let check = a.check();
    let y = prob.y.sullivan().ok();
    let alternate = alternate_normalization(&model, y.as_ref());
    let block = algebra_text(&format!("{pname}_model"), a);
    let out = match format {
        Format::Json => {
            let g = a.gens();
            let generators: Vec<Value> =
                (0..g.len()).map(|i| json!({ "name": g.name(i), "degree": g.degree(i) })).collect();
            let differentials: serde_json::Map<String, Value> =
                (0..g.len()).map(|i| (g.name(i).to_string(), json!(a.differential(i).fmt_with(g)))).collect();
            json!({
                "problem": pname,
                "route": route_name(&model),
                "p": hyp.p,
                "connectivity": hyp.m,
                "warnings": hyp.warnings,
                "valid": check.is_ok(),
                "generators": generators,
                "differentials": differentials,
                "alternate_differentials": alternate.as_ref().map(|alt| alt.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>()),
                "model": block,
            })
            .to_string()
                + "\n"
        }
        Format::Table => {
            let mut s = format!("# model of F(X, Y) for {pname} via the {} route\n", route_name(&model));
            s.push_str(&format!("# p = {}, Y is {}-connected\n", hyp.p, hyp.m));
            for w in &hyp.warnings {
                s.push_str(&format!("# warning: {w}\n"));
            }
            match &check {
                Ok(_) => s.push_str("# validation: ok\n"),
                Err(v) => s.push_str(&format!("# validation: {v}\n")),
            }
            s.push_str(&block);
            if let Some(alt) = &alternate {
                s.push_str("# with d(Sv) = -S(dv) instead:\n");
                for (name, d) in alt {
                    s.push_str(&format!("#   d {name} = {d}\n"));
                }
            }
            s
        }
    };
    Outcome::ok(out, if check.is_ok() { 0 } else { 1 })
}

fn write_certificate(dir: &Path, problem: &str, v: &FormalityVerdict) -> Result<Option<PathBuf>, String> {
    if v.certificate.is_none() {
        return Ok(None);
    }
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(format!("{problem}.cert.json"));
    std::fs::write(&path, v.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Some(path))
}

fn verdict_report(problem: &str, v: &FormalityVerdict, path: Option<&Path>, format: Format) -> String {
    let bound = v.bound.map_or_else(|| "all degrees".to_string(), |b| format!("degrees <= {b}"));
    match format {
        Format::Json => json!({
            "problem": problem,
            "verdict": v.verdict.to_string(),
            "bound": v.bound,
            "certificate_kind": v.certificate_kind(),
            "certificate_path": path.map(|p| p.display().to_string()),
            "evidence": v.evidence.iter().map(Certificate::kind).collect::<Vec<_>>(),
            "notes": v.notes,
        })
        .to_string()
            + "\n",
        Format::Table => {
            let mut s = format!("{problem}: {} ({bound})\n", v.verdict);
            if let Some(k) = v.certificate_kind() {
                s.push_str(&format!("certificate: {k}\n"));
            }
            for e in &v.evidence {
                s.push_str(&format!("evidence: {}\n", e.kind()));
            }
            for n in &v.notes {
                s.push_str(&format!("note: {n}\n"));
            }
            if let Some(p) = path {
                s.push_str(&format!("written: {}\n", p.display()));
            }
            s
        }
    }
}

pub fn formality(src: &Source, name: Option<&str>, max_degree: u32, out_dir: Option<&Path>, format: Format) -> Outcome {
    let ws = match src.load() {
        Ok(ws) => ws,
        Err(e) => return Outcome::fail(e),
    };
    let pname = match problem_name(&ws, name) {
        Ok(n) => n.to_string(),
        Err(e) => return Outcome::fail(e),
    };
    let prob = match ws.problem(&pname) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(e),
    };
    let v = match formality_pipeline(&prob, max_degree) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let dir = out_dir.map_or_else(|| src.default_dir(), Path::to_path_buf);
    let path = match write_certificate(&dir, &pname, &v) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(e),
    };
    Outcome::ok(verdict_report(&pname, &v, path.as_deref(), format), v.verdict.exit_code())
}

/// Replays a certificate file: a full verdict as written by `formality`, or
/// a bare certificate.
pub fn verify_certificate(path: &Path, format: Format) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(format!("{}: {e}", path.display())),
    };
    let (verdict, kind, result) = match FormalityVerdict::from_json(&text) {
        Ok(v) => (Some(v.verdict), v.certificate_kind(), v.replay()),
        Err(_) => match Certificate::from_json(&text) {
            Ok(c) => (None, Some(c.kind()), c.replay()),
            Err(e) => return Outcome::fail(format!("{}: not a certificate: {e}", path.display())),
        },
    };
    let out = match format {
        Format::Json => json!({
            "path": path.display().to_string(),
            "verdict": verdict.map(|v| v.to_string()),
            "certificate_kind": kind,
            "replay": if result.is_ok() { "ok" } else { "failed" },
            "error": result.as_ref().err().map(|e| e.to_string()),
        })
        .to_string()
            + "\n",
        Format::Table => {
            let what = kind.unwrap_or("no certificate");
            match (&result, verdict) {
                (Ok(()), Some(v)) => format!("{}: {v} verdict, {what} certificate replays\n", path.display()),
                (Ok(()), None) => format!("{}: {what} certificate replays\n", path.display()),
                (Err(e), _) => format!("{}: {what} certificate FAILED to replay: {e}\n", path.display()),
            }
        }
    };
    Outcome::ok(out, if result.is_ok() { 0 } else { 1 })
}

/// Degree through which `reproduce-section4` checks that the Koszul
/// comparison map is a quasi-isomorphism.
pub const SECTION4_QUASI_ISO_DEGREE: u32 = 16;

/// The built-in `section4` walkthrough: model, regular sequence, verdict and
/// a recheck of the certificate's comparison map.
pub fn reproduce_section4(max_degree: u32, out_dir: Option<&Path>, format: Format) -> Outcome {
    let src = Source::Builtin("section4".into());
    let model = map_model_cmd(&src, None, None, format);
    if model.code != 0 {
        return model;
    }
    let ws = src.load().expect("builtin parses");
    let prob = ws.problem("section4").expect("builtin resolves");
    let m = map_model(&prob, None).expect("builtin has a model");
    let regular = koszul_sequence(m.cdga()).map(|(ring, seq)| regular_sequence_check(&ring, &seq, max_degree));
    let regular_text = match &regular {
        Some(Ok(RegularSequence::Yes { upto })) => format!("regular through degree {upto}"),
        Some(Ok(RegularSequence::No { index, degree, .. })) => format!("not regular: element {index} in degree {degree}"),
        Some(Err(e)) => format!("error: {e}"),
        None => "model is not pure".into(),
    };
    let v = match formality_pipeline(&prob, max_degree) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let dir = out_dir.map_or_else(|| src.default_dir(), Path::to_path_buf);
    let path = match write_certificate(&dir, "section4", &v) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(e),
    };
    let quasi_iso = match &v.certificate {
        Some(Certificate::KoszulRegularSequence { rho, .. }) => {
            Some(rho.morphism().and_then(|r| r.is_quasi_iso(SECTION4_QUASI_ISO_DEGREE)).unwrap_or(false))
        }
        _ => None,
    };
    let report = verdict_report("section4", &v, path.as_deref(), format);
    let out = match format {
        Format::Json => {
            let model: Value = serde_json::from_str(&model.stdout).unwrap_or(Value::Null);
            let verdict: Value = serde_json::from_str(&report).unwrap_or(Value::Null);
            json!({
                "model": model,
                "regular_sequence": regular_text,
                "formality": verdict,
                "quasi_iso_degree": SECTION4_QUASI_ISO_DEGREE,
                "quasi_iso": quasi_iso,
            })
            .to_string()
                + "\n"
        }
        Format::Table => {
            let qi = match quasi_iso {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "no comparison map",
            };
            format!(
                "{}\n# sequence d(odd generators): {regular_text}\n\n{report}rho quasi-isomorphism through degree {SECTION4_QUASI_ISO_DEGREE}: {qi}\n",
                model.stdout
            )
        }
    };
    let code = if quasi_iso == Some(false) { 1 } else { v.verdict.exit_code() };
    Outcome::ok(out, code)
}

/// Re-prints a workspace in canonical form.
pub fn print(src: &Source) -> Outcome {
    match src.load() {
        Ok(ws) => Outcome::ok(ws.to_text(), 0),
        Err(e) => Outcome::fail(e),
    }
}

pub fn verdict_of(code: i32) -> Option<Verdict> {
    match code {
        0 => Some(Verdict::Formal),
        2 => Some(Verdict::Unknown),
        3 => Some(Verdict::NonFormal),
        _ => None,
    }
}
