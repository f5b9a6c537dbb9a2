use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmsing"))
}

#[test]
fn gen_y5_has_expected_relation_counts() {
    let out = bin().args(["gen", "--kind", "y", "--d", "5"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "Y");
    assert_eq!(doc["linear"].as_array().unwrap().len(), 4);
    assert_eq!(doc["quadratic"].as_array().unwrap().len(), 10);
}

#[test]
fn small_d_is_a_usage_error() {
    let out = bin()
        .args(["verify", "--suite", "quiver", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("at least 4"), "{}", err);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let run = || {
        let out = bin()
            .args(["verify", "--suite", "psi", "--n", "8"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn config_file_and_output_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.conf");
    std::fs::write(&cfg_path, "psi_n=6\nd_min=4\nd_max=5\n").unwrap();
    let out_path = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "--suite", "psi"])
        .arg("--config")
        .arg(&cfg_path)
        .env("CMSING_OUTPUT", &out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "report went to the file, not stdout");
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(doc["config"]["psi_n"], 6);
    assert_eq!(doc["failed"], 0);
}

#[test]
fn malformed_config_is_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("bad.conf");
    std::fs::write(&cfg_path, "this line has no equals sign\n").unwrap();
    let out = bin()
        .args(["verify", "--suite", "psi"])
        .arg("--config")
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn slodowy_subcommand_single_d() {
    let out = bin().args(["slodowy", "--d", "4"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["failed"], 0);
    assert_eq!(doc["suites"][0]["suite"], "slodowy");
}
