use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use simplecurrent::engine::{Answer, Count};
use simplecurrent_cli::{parse_input, run_analysis, Format, ReportDocument};

fn input(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("inputs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplecurrent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn analyze_json(path: &Path) -> (ReportDocument, String) {
    let out = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), text)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn z8_pointed_document() {
    let (rep, _) = analyze_json(&input("z8.toml"));
    assert_eq!(rep.census.local_count, Count::Finite(2));
    assert_eq!(rep.census.simple_count, Count::Finite(4));
    assert_eq!(rep.verdicts.nondegenerate, Answer::Yes);
    assert_eq!(rep.metadata.haploid, Answer::Yes);
    assert!(rep.metadata.char_zero_assumed);
    assert_eq!(rep.provenance.input["mode"], "pointed");
}

#[test]
fn gl11_document() {
    let (rep, _) = analyze_json(&input("gl11_r3.toml"));
    assert_eq!(rep.census.local_count, Count::Finite(16));
    assert_eq!(rep.census.simples.len(), 16);
    let (rep, _) = analyze_json(&input("gl11_r3.json"));
    assert_eq!(rep.census.local_count, Count::Finite(4));
}

#[test]
fn unrolled_document() {
    let (rep, _) = analyze_json(&input("sl2_ell4.toml"));
    let v = &rep.verdicts;
    for a in [
        v.algebra_exists,
        v.commutative,
        v.ribbon,
        v.finite,
        v.nondegenerate,
    ] {
        assert_eq!(a, Answer::Yes);
    }
    assert_eq!(rep.census.local_count, Count::Finite(4));
}

#[test]
fn table_document_with_fixed_point() {
    let (rep, _) = analyze_json(&input("su2_level4.toml"));
    assert_eq!(rep.census.simple_count, Count::Finite(4));
    assert_eq!(rep.census.local_count, Count::Finite(3));
    let fixed = rep
        .census
        .simples
        .iter()
        .find(|c| c.orbit_rep == "2")
        .unwrap();
    assert_eq!((fixed.stabilizer_order, fixed.irrep_count), (2, 2));
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for name in [
        "z8.toml",
        "klein.toml",
        "sl2_ell4.toml",
        "gl11_r3.toml",
        "su2_level4.toml",
    ] {
        let (rep, text) = analyze_json(&input(name));
        let again =
            serde_json::to_string_pretty(&serde_json::to_value(&rep).unwrap()).unwrap() + "\n";
        assert_eq!(again, text, "{name}");
        let (_, second) = analyze_json(&input(name));
        assert_eq!(text, second, "{name}");
    }
}

#[test]
fn text_output_has_one_line_per_verdict() {
    let out = run(&["analyze", input("z8.toml").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    for v in [
        "algebra_exists",
        "commutative",
        "ribbon",
        "finite ",
        "finite_full",
        "nondegenerate",
    ] {
        assert_eq!(text.lines().filter(|l| l.starts_with(v)).count(), 1, "{v}");
    }
}

#[test]
fn undecided_verdicts_show_the_missing_data() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "bare.toml",
        r#"
mode = "table"
[table]
labels = ["1", "g"]
gamma = [2]
action = [[1, 0]]
monodromy = [["0", "0"]]
"#,
    );
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with("algebra_exists"))
        .unwrap();
    assert!(
        line.contains("undecided") && line.contains("[missing: "),
        "{line}"
    );
}

#[test]
fn oracle_flag_cross_checks_pointed_inputs() {
    let path = input("klein.toml");
    let out = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep.oracle.unwrap().agrees);

    let out = run(&[
        "analyze",
        input("gl11_r3.toml").to_str().unwrap(),
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_phase = write_temp(
        &dir,
        "phase.toml",
        "mode = \"pointed\"\n[pointed]\ngroup = [8]\nform = [[\"3/0\"]]\n",
    );
    let bad_mode = write_temp(&dir, "mode.toml", "mode = \"spherical\"\n");
    let not_pair = write_temp(
        &dir,
        "pair.json",
        r#"{"mode": "gl11", "gl11": {"r": 3}, "subgroup": {"generators": [[1, 2, 3]]}}"#,
    );
    let ill_defined = write_temp(
        &dir,
        "form.toml",
        "mode = \"pointed\"\n[pointed]\ngroup = [3]\nform = [[\"1/2\"]]\n",
    );
    for p in [&bad_phase, &bad_mode, &not_pair, &ill_defined] {
        let out = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{}", p.display());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: input error"));
    }
    let out = run(&["analyze", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr =
        String::from_utf8_lossy(&run(&["analyze", bad_mode.to_str().unwrap()]).stderr).to_string();
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn oversized_computations_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = write_temp(
        &dir,
        "big.toml",
        "mode = \"pointed\"\n[pointed]\ngroup = [64, 128]\nbraiding = [[\"0\", \"0\"], [\"0\", \"0\"]]\n",
    );
    assert_eq!(
        run(&["analyze", big.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let capped = write_temp(
        &dir,
        "capped.toml",
        "mode = \"pointed\"\n[pointed]\ngroup = [8]\nform = [[\"1/16\"]]\n[options]\nmax_order = 4\n",
    );
    assert_eq!(
        run(&["analyze", capped.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn non_commutative_answers_still_exit_0() {
    let doc = parse_input(
        "mode = \"gl11\"\n[gl11]\nr = 4\n[subgroup]\ngenerators = [[0, 1]]\nparities = [1]\n",
        Format::Toml,
    )
    .unwrap();
    let rep = run_analysis(&doc).unwrap();
    assert_eq!(rep.verdicts.commutative, Answer::No);
}
