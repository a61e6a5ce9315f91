//! End-to-end tests of the command-line interface: exit codes, export
//! round trips, config layering and thread-count invariance.

use std::io::BufReader;
use std::path::Path;
use std::process::{Command, Output};

fn lwschro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lwschro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn beam_exports_parseable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("beam.csv");
    let out = lwschro(&[
        "beam",
        "--E",
        "1",
        "--pz",
        "0.5",
        "--grid",
        "4,16,-2,2,16",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let file = std::fs::File::open(&path).unwrap();
    let rows = lwschro::io::read_csv(BufReader::new(file)).unwrap();
    assert_eq!(rows.len(), 16 * 16);
    // a Bessel beam has unit axial intensity
    assert!((rows[0].abs2 - 1.0).abs() < 1e-12);
}

#[test]
fn json_export_round_trips_with_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mk.json");
    let out = lwschro(&[
        "exact",
        "--family",
        "mackinnon",
        "--a",
        "0",
        "--grid",
        "6,12,-6,6,16",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let file = std::fs::File::open(&path).unwrap();
    let (grid, meta) = lwschro::io::read_json(BufReader::new(file)).unwrap();
    assert_eq!(meta.family, "exact-mackinnon");
    assert_eq!(meta.params["a"], "0");
    assert_eq!(meta.units["hbar"], 1.0);
    assert!(!meta.errata_flags.is_empty());
    assert_eq!(grid.values.len(), 12 * 16);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let out = lwschro(&[
            "exact",
            "--family",
            "element",
            "--n",
            "1",
            "--grid",
            "5,24,-5,5,24",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        bytes.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1], "outputs differ between 1 and 4 threads");
}

#[test]
fn missing_parameter_is_a_validation_error() {
    let out = lwschro(&["beam", "--pz", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--E"));
}

#[test]
fn evanescent_beam_names_the_violated_constraint() {
    let out = lwschro(&["beam", "--E", "0.1", "--pz", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p_z^2/(2m)"));
}

#[test]
fn bad_grid_is_a_validation_error() {
    let out = lwschro(&["beam", "--E", "1", "--pz", "0.5", "--grid", "4,4,-2,2,16"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n_rho"));
}

#[test]
fn residual_check_passes_for_a_beam() {
    let out = lwschro(&[
        "verify",
        "residual",
        "--family",
        "beam",
        "--E",
        "1",
        "--pz",
        "1",
        "--grid",
        "4,48,-4,4,64",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("convergence order"));
}

#[test]
fn translation_check_passes_for_exact_family() {
    let out = lwschro(&[
        "verify",
        "translate",
        "--family",
        "exact",
        "--exact-family",
        "mackinnon",
        "--a",
        "0.5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn translation_drift_is_a_tolerance_failure() {
    // a square-integrable pulse is not rigidly translating
    let out = lwschro(&[
        "verify",
        "translate",
        "--family",
        "finite-energy",
        "--w0",
        "1.6",
        "--q-w",
        "60",
        "--a",
        "0.4",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("drift"));
}

#[test]
fn errata_ledger_prints_every_entry() {
    let out = lwschro(&["errata"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for id in [
        "paraxial-phase-sign",
        "paraxial-gaussian-exponent",
        "paraxial-closed-form-prefactors",
        "inverse-power-regularization",
        "series-element-phase-placement",
        "finite-energy-closed-form",
    ] {
        assert!(text.contains(id), "missing entry {id}");
    }
}

#[test]
fn paraxial_width_measurement_matches_the_spectrum() {
    let out = lwschro(&[
        "paraxial",
        "--family",
        "g1",
        "--alpha",
        "100",
        "--measure-widths",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let rho_line = text
        .lines()
        .find(|l| l.starts_with("delta_rho"))
        .expect("width line");
    let value: f64 = rho_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    // 1/e intensity half-width of the alpha = 100 Gaussian pulse at focus
    assert!((value - 200.0_f64.sqrt()).abs() < 0.01, "delta_rho = {value}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override(
) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[global]\ngrid = \"4,16,-2,2,16\"\n\n[beam]\nE = 1.0\npz = 0.5\norder = 1\n",
    )
    .unwrap();
    let from_config = dir.path().join("a.json");
    let out = lwschro(&[
        "beam",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        from_config.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (grid, meta) = read_json_file(&from_config);
    assert_eq!(grid.spec.n_rho, 16);
    assert_eq!(meta.params["order"], "1");

    let overridden = dir.path().join("b.json");
    let out = lwschro(&[
        "beam",
        "--config",
        cfg.to_str().unwrap(),
        "--order",
        "2",
        "--format",
        "json",
        "--out",
        overridden.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (_, meta) = read_json_file(&overridden);
    assert_eq!(meta.params["order"], "2");
}

fn read_json_file(path: &Path) -> (lwschro::numerics::FieldGrid, lwschro::io::ExportMeta) {
    let file = std::fs::File::open(path).unwrap();
    lwschro::io::read_json(BufReader::new(file)).unwrap()
}

#[test]
fn potential_train_lists_admissible_modes() {
    let out = lwschro(&["potential-train", "--omega", "0.05", "--list-modes"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("n = 4"));
}
