use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use rht_cli::commands::{self, Format, Source};
use rht_cli::workspace::Workspace;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn rht(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rht")).args(args).env_remove("RHT_MAX_DEGREE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json_ranks(out: &str) -> Vec<usize> {
    let v: Value = serde_json::from_str(out).unwrap();
    serde_json::from_value(v["ranks"].clone()).unwrap()
}

/// `(degree, rank)` rows of a table.
fn table_ranks(out: &str) -> Vec<usize> {
    out.lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            let n: usize = it.next()?.parse().ok()?;
            let r: usize = it.next()?.parse().ok()?;
            Some((n, r))
        })
        .enumerate()
        .map(|(k, (n, r))| {
            assert_eq!(k, n);
            r
        })
        .collect()
}

#[test]
fn cohomology_of_the_section4_target() {
    let src = Source::Builtin("section4".into());
    let out = commands::cohomology(&src, Some("Y"), 12, Format::Json);
    assert_eq!(out.code, 0);
    assert_eq!(json_ranks(&out.stdout), [1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2]);
}

#[test]
fn cohomology_of_small_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let free = write(dir.path(), "free.rht", "algebra F\ngenerator v2 degree 2\ngenerator v4 degree 4\n");
    let out = commands::cohomology(&Source::File(free), None, 8, Format::Json);
    assert_eq!(json_ranks(&out.stdout), [1, 0, 1, 0, 2, 0, 2, 0, 3]);

    let trivial = write(dir.path(), "trivial.rht", "algebra T\n");
    let out = commands::cohomology(&Source::File(trivial), None, 6, Format::Json);
    assert_eq!(json_ranks(&out.stdout), [1, 0, 0, 0, 0, 0, 0]);

    // C* of the abelian DGL on one degree-3 element is Λ(v4).
    let out = commands::cohomology(&Source::Builtin("thom".into()), Some("L"), 8, Format::Json);
    assert_eq!(json_ranks(&out.stdout), [1, 0, 0, 0, 1, 0, 0, 0, 1]);
}

#[test]
fn json_and_table_agree() {
    for (name, target) in [("section4", "Y"), ("section4", "section4"), ("thom", "L"), ("nonformal", "nonformal")] {
        let src = Source::Builtin(name.into());
        let j = commands::cohomology(&src, Some(target), 14, Format::Json);
        let t = commands::cohomology(&src, Some(target), 14, Format::Table);
        assert_eq!((j.code, t.code), (0, 0));
        assert_eq!(json_ranks(&j.stdout), table_ranks(&t.stdout), "{name}/{target}");
    }
    for name in ["section4", "nonformal", "thom"] {
        let dir = tempfile::tempdir().unwrap();
        let src = Source::Builtin(name.into());
        let j = commands::formality(&src, None, 12, Some(dir.path()), Format::Json);
        let t = commands::formality(&src, None, 12, Some(dir.path()), Format::Table);
        assert_eq!(j.code, t.code);
        let v: Value = serde_json::from_str(&j.stdout).unwrap();
        let verdict = v["verdict"].as_str().unwrap();
        assert!(t.stdout.starts_with(&format!("{name}: {verdict} ")), "{}", t.stdout);
        if let Some(kind) = v["certificate_kind"].as_str() {
            assert!(t.stdout.contains(&format!("certificate: {kind}")));
        }
    }
}

#[test]
fn map_model_of_section4() {
    let out = commands::map_model_cmd(&Source::Builtin("section4".into()), None, None, Format::Table);
    assert_eq!(out.code, 0);
    let ws = Workspace::parse(&out.stdout).unwrap();
    let a = ws.algebra("section4_model").unwrap();
    assert_eq!(a.gens().names(), ["x1", "x2", "y", "x1_bar", "x2_bar", "y_bar"]);
    assert_eq!(a.gens().degrees(), [4, 4, 7, 2, 2, 5]);
    assert!(out.stdout.contains("d y_bar = x1*x2_bar + x2*x1_bar\n"), "{}", out.stdout);
    assert!(out.stdout.contains("#   d y_bar = -x1*x2_bar - x2*x1_bar\n"), "{}", out.stdout);
    // Printed models re-parse to the same algebra.
    let again = Workspace::parse(&ws.to_text()).unwrap();
    assert_eq!(again, ws);
}

#[test]
fn map_model_of_an_eilenberg_maclane_target() {
    let out = commands::map_model_cmd(&Source::Builtin("thom".into()), None, None, Format::Json);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["route"], "lie");
    let ws = Workspace::parse(v["model"].as_str().unwrap()).unwrap();
    let a = ws.algebra("thom_model").unwrap();
    let mut degrees = a.gens().degrees().to_vec();
    degrees.sort();
    assert_eq!(degrees, [2, 4]);
    assert!(a.has_zero_differential());
    // The Sullivan route is not available for a Lie model of Y.
    let out = commands::map_model_cmd(&Source::Builtin("thom".into()), None, Some(rht_core::mapmodel::Route::Sullivan), Format::Table);
    assert_eq!(out.code, 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(rht(&["reproduce-section4", "--out-dir", d]).0, 0);
    assert_eq!(rht(&["formality", "--builtin", "section4", "--out-dir", d]).0, 0);
    assert_eq!(rht(&["formality", "--builtin", "nonformal", "--out-dir", d]).0, 3);
    assert_eq!(rht(&["formality", "--builtin", "thom", "--out-dir", d]).0, 0);
    assert_eq!(rht(&["formality", "--builtin", "section4", "--max-degree", "3", "--out-dir", d]).0, 2);

    let small = Command::new(env!("CARGO_BIN_EXE_rht"))
        .args(["formality", "--builtin", "section4", "--out-dir", d])
        .env("RHT_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(small.status.code(), Some(2));
    let bad_env = Command::new(env!("CARGO_BIN_EXE_rht"))
        .args(["cohomology", "--builtin", "section4", "--name", "Y"])
        .env("RHT_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(1));

    // p ≥ m: Y is only 3-connected, so X = S3 is too big.
    let p_big = write(dir.path(), "pm.rht", "algebra Y\ngenerator x degree 4\nproblem big X=S3 Y=Y p=3\n");
    let p_big = p_big.to_str().unwrap();
    let (code, _, err) = rht(&["map-model", p_big]);
    assert_eq!(code, 1);
    assert!(err.contains("connect"), "{err}");
    assert_eq!(rht(&["formality", p_big, "--out-dir", d]).0, 1);

    let bad = write(dir.path(), "bad.rht", "algebra A\ngenerator x degree 0\n");
    let (code, _, err) = rht(&["print", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2, column 20"), "{err}");
    assert_eq!(rht(&["print", "--builtin", "nosuch"]).0, 1);
    assert_eq!(rht(&["print", dir.path().join("missing.rht").to_str().unwrap()]).0, 1);
}

#[test]
fn certificates_replay() {
    let dir = tempfile::tempdir().unwrap();
    for (name, kind) in
        [("section4", "KoszulRegularSequence"), ("nonformal", "BarLinearityObstruction"), ("thom", "FreeCohomology")]
    {
        let out = commands::formality(&Source::Builtin(name.into()), None, 20, Some(dir.path()), Format::Table);
        let path = dir.path().join(format!("{name}.cert.json"));
        assert!(out.stdout.contains(&format!("written: {}", path.display())), "{}", out.stdout);
        let (code, stdout, _) = rht(&["verify-certificate", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 0, "{name}");
        let v: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(v["certificate_kind"], kind);
        assert_eq!(v["replay"], "ok");
    }
}

#[test]
fn tampered_certificates_fail() {
    let dir = tempfile::tempdir().unwrap();
    commands::formality(&Source::Builtin("section4".into()), None, 20, Some(dir.path()), Format::Table);
    let path = dir.path().join("section4.cert.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // Point the degree-5 generator's differential at x1*x2 only.
    let tampered = text.replacen("x1*x2_bar + x2*x1_bar", "x1*x2_bar", 1);
    assert_ne!(tampered, text);
    let bad = write(dir.path(), "tampered.cert.json", &tampered);
    assert_eq!(commands::verify_certificate(&bad, Format::Table).code, 1);
    let junk = write(dir.path(), "junk.json", "{\"not\": \"a certificate\"}");
    assert_eq!(commands::verify_certificate(&junk, Format::Table).code, 1);
}

#[test]
fn certificates_default_to_the_input_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "s4.rht", rht_cli::fixtures::SECTION4);
    let out = commands::formality(&Source::File(path), None, 20, None, Format::Table);
    assert_eq!(out.code, 0);
    assert!(dir.path().join("section4.cert.json").exists());
}

#[test]
fn reproduce_section4_reports_every_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = commands::reproduce_section4(20, Some(dir.path()), Format::Table);
    assert_eq!(out.code, 0, "{}", out.stderr);
    for needle in [
        "generator y_bar degree 5",
        "regular through degree 20",
        "section4: Formal (degrees <= 20)",
        "certificate: KoszulRegularSequence",
        "rho quasi-isomorphism through degree 16: yes",
    ] {
        assert!(out.stdout.contains(needle), "missing `{needle}` in\n{}", out.stdout);
    }
    let json = commands::reproduce_section4(20, Some(dir.path()), Format::Json);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["quasi_iso"], true);
    assert_eq!(v["formality"]["verdict"], "Formal");
    assert_eq!(v["model"]["generators"].as_array().unwrap().len(), 6);
}

#[test]
fn print_round_trips() {
    let (code, text, _) = rht(&["print", "--builtin", "section4"]);
    assert_eq!(code, 0);
    assert_eq!(Workspace::parse(&text).unwrap(), Workspace::parse(rht_cli::fixtures::SECTION4).unwrap());
}
