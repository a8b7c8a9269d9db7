use std::path::PathBuf;
use std::process::Command as Process;

use xconn::report::{EXIT_INPUT, EXIT_PASS, EXIT_VIOLATION};
use xconn::{run, Command, Input, Options, RunReport};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn xconn(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_xconn")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn analyze_brandt() {
    let (code, out) = xconn(&["analyze", &path("b2.cay")]);
    assert_eq!(code, 0);
    assert!(out.contains("inverse: yes, locally inverse: yes, L(S): unambiguous"), "{out}");
}

#[test]
fn analyze_full_transformations_reports_a_witness() {
    let (code, out) = xconn(&["analyze", &path("t2.cay")]);
    assert_eq!(code, 0);
    assert!(out.contains("locally inverse: no, witness (c1,c2,id)"), "{out}");
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(xconn(&["analyze", &path("invalid/ragged.cay")]).0, 2);
    assert_eq!(xconn(&["analyze", &path("missing.cay")]).0, 2);
    assert_eq!(xconn(&["rees", &path("b2.cay")]).0, 2);
}

#[test]
fn rebuild_commands() {
    let (code, out) = xconn(&["rebuild", &path("b2.cay")]);
    assert_eq!(code, 0);
    assert!(out.contains("iso found"), "{out}");
    let (code, out) = xconn(&["rebuild", &path("t2.cay")]);
    assert_eq!(code, 1);
    assert!(out.contains("NotLocallyInverse"), "{out}");
    let (code, out) = xconn(&["rebuild", &path("sl2.cay"), "--report", "json"]);
    assert_eq!(code, 0);
    let report = RunReport::from_json(&out).unwrap();
    let iso = report.checks.iter().find(|c| c.name == "iso_found").unwrap();
    assert_eq!(iso.witness.as_ref().unwrap().as_object().unwrap().len(), 2);
}

#[test]
fn rees_commands() {
    let (code, out) = xconn(&["rees", &path("m9.rees")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("17 cones, quotient 17, formula 17"), "{out}");
    assert_eq!(xconn(&["rees", &path("invalid/zero_row.rees")]).0, 1);
    let (code, out) = xconn(&["rees", &path("b2.rees"), "--compare", &path("b2.cay")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("b2.cay  : yes") || out.contains("b2.cay : yes"), "{out}");
}

#[test]
fn esn_commands() {
    let (code, out) = xconn(&["esn", &path("b2.cay")]);
    assert_eq!(code, 0);
    assert!(out.contains("round trips: pass"), "{out}");
    let (code, out) = xconn(&["esn", &path("lz2.cay")]);
    assert_eq!(code, 1);
    assert!(out.contains("NotInverse"), "{out}");
    let (_, out) = xconn(&["esn", &path("z2.cay")]);
    assert!(out.contains("1 object, 2 morphisms"), "{out}");
}

#[test]
fn groupoid_export_is_written() {
    let target = std::env::temp_dir().join(format!("xconn-groupoid-{}.txt", std::process::id()));
    let (code, _) = xconn(&["esn", &path("sl2.cay"), "--export", &target.display().to_string()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::remove_file(&target).ok();
    assert!(text.starts_with("objects: 2\n"));
}

#[test]
fn abstract_category_input() {
    let (code, out) = xconn(&["analyze", &path("l_b2.socat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("category: unambiguous, Ĉ locally inverse: yes"), "{out}");
}

#[test]
fn corpus_runs_pass() {
    for args in [
        vec!["analyze", "--fixtures"],
        vec!["rebuild", "--fixtures"],
        vec!["esn", "--fixtures"],
        vec!["rees", "--fixtures", "--random", "4", "--seed", "11"],
    ] {
        let (code, out) = xconn(&args);
        assert_eq!(code, 0, "{args:?}\n{out}");
    }
}

#[test]
fn json_reports_round_trip() {
    let opts = Options::default();
    let mut inputs: Vec<(Command, Input)> = ["b2.cay", "t2.cay", "sl2.cay", "m9.cay", "lz2.cay", "invalid/ragged.cay"]
        .iter()
        .flat_map(|f| {
            [Command::Analyze, Command::Rebuild, Command::Esn].map(|c| (c, Input::File(fixture(f))))
        })
        .collect();
    inputs.push((Command::Rees, Input::File(fixture("m9.rees"))));
    inputs.push((Command::Analyze, Input::Fixtures));
    for (command, input) in inputs {
        let report = run(command, &input, &opts);
        let back = RunReport::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let opts = Options::default();
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    files.extend(std::fs::read_dir(fixture("invalid")).unwrap().map(|e| e.unwrap().path()));
    files.sort();
    assert!(files.len() >= 10);
    for file in files {
        for command in [Command::Analyze, Command::Rebuild, Command::Rees, Command::Esn] {
            let report = run(command, &Input::File(file.clone()), &opts);
            match report.exit_code {
                EXIT_PASS => assert!(report.all_passed()),
                EXIT_VIOLATION => assert!(!report.all_passed()),
                EXIT_INPUT => assert!(report.checks.iter().any(|c| c.name == "input")),
                other => panic!("exit code {other} for {}", file.display()),
            }
        }
    }
}

#[test]
fn size_guard_is_an_input_error() {
    let (code, out) = xconn(&["rees", &path("m9.rees"), "--max-enum", "5"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("--max-enum"), "{out}");
}
