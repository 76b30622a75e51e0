//! End-to-end tests of the `carpet-perc` binary: command behavior, file
//! outputs, determinism, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_carpet-perc"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .env_remove("CARPET_PERC_THREADS")
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
fn gen_verify_passes_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gen", "--b", "7", "--l", "3", "--family", "central", "--stages", "1", "--verify",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("verification: PASS"));
    assert!(dir.path().join("carpet_b7_l3_central_n1.mask").exists());
    assert!(dir.path().join("carpet_b7_l3_central_n1.pgm").exists());
}

#[test]
fn gen_writes_expected_mask_size() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gen",
            "--b",
            "5",
            "--l",
            "2",
            "--family",
            "scattered",
            "--stages",
            "3",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let mask = fs::read_to_string(dir.path().join("carpet_b5_l2_scattered_n3.mask")).unwrap();
    let lines: Vec<&str> = mask.lines().collect();
    // header plus one row of 126 characters per site row
    assert_eq!(lines.len(), 1 + 126);
    assert_eq!(lines[1].len(), 126);
}

#[test]
fn gen_rejects_invalid_generator() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gen", "--b", "7", "--l", "4", "--family", "central", "--stages", "1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn gen_occupy_writes_config_and_cluster_image() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gen", "--b", "3", "--l", "1", "--family", "central", "--stages", "2", "--occupy",
            "0.6", "--seed", "7",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(dir
        .path()
        .join("carpet_b3_l1_central_n2_p0.6.config")
        .exists());
    let ppm = fs::read(dir.path().join("carpet_b3_l1_central_n2_p0.6_nnn8.ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n10 10\n255\n"));
}

const SMALL_SWEEP: &[&str] = &[
    "sweep", "--b", "3", "--l", "1", "--family", "central", "--stages", "2", "--runs", "3",
    "--p-min", "0.4", "--p-max", "0.8", "--dp", "0.1", "--seed", "5",
];

#[test]
fn sweep_outputs_are_deterministic_across_repeats_and_threads() {
    let read = |dir: &Path| {
        (
            fs::read(dir.join("sweep_b3_l1_central_n2_nnn8.csv")).unwrap(),
            fs::read(dir.join("estimate_b3_l1_central_n2_nnn8.csv")).unwrap(),
        )
    };
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let d3 = tempfile::tempdir().unwrap();
    let out1 = run_in(d1.path(), SMALL_SWEEP);
    assert_eq!(out1.status.code(), Some(0), "{}", stderr(&out1));
    assert!(stdout(&out1).contains("pc = "));
    let mut with_one_thread = SMALL_SWEEP.to_vec();
    with_one_thread.extend(["--threads", "1"]);
    let mut with_three_threads = SMALL_SWEEP.to_vec();
    with_three_threads.extend(["--threads", "3"]);
    run_in(d2.path(), &with_one_thread);
    run_in(d3.path(), &with_three_threads);
    assert_eq!(
        read(d1.path()),
        read(d2.path()),
        "repeat changed the CSV bytes"
    );
    assert_eq!(
        read(d1.path()),
        read(d3.path()),
        "thread count changed the CSV bytes"
    );
}

#[test]
fn sweep_estimate_csv_has_expected_layout() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), SMALL_SWEEP);
    let text = fs::read_to_string(dir.path().join("estimate_b3_l1_central_n2_nnn8.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("b,l,family,N,conn,D,Q,pc_mean,pc_stderr,runs,dp")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("3,1,central,2,nnn8,"));
    assert_eq!(lines.next(), None);
}

#[test]
fn table_reference_mode_reports_fits() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["table", "--family", "central", "--reference-data"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("power-law refit:  exponent 1.62341"));
    let csv = fs::read_to_string(dir.path().join("table_central_nnn8.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 22);
}

#[test]
fn table_row_filter_selects_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "table",
            "--family",
            "central",
            "--reference-data",
            "--rows",
            "b=13,l=1",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("table_central_nnn8.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("13,1,central,2,nnn8,"));
}

#[test]
fn table_simulates_selected_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "table", "--family", "central", "--rows", "b=7,l=3", "--runs", "2", "--p-min", "0.4",
            "--p-max", "0.7", "--dp", "0.05",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("simulated: runs=2"));
}

#[test]
fn table_rejects_unknown_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "table",
            "--family",
            "central",
            "--reference-data",
            "--rows",
            "b=4,l=1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no central reference row"));
}

#[test]
fn fit_reads_table_output_and_reports_both_fits() {
    let dir = tempfile::tempdir().unwrap();
    run_in(
        dir.path(),
        &["table", "--family", "central", "--reference-data"],
    );
    let out = run_in(dir.path(), &["fit", "--input", "table_central_nnn8.csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# exponent=1.62341"));
    assert!(text.contains("# fit: quadratic"));
}

#[test]
fn fit_reads_sweep_output() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), SMALL_SWEEP);
    let out = run_in(
        dir.path(),
        &["fit", "--input", "sweep_b3_l1_central_n2_nnn8.csv"],
    );
    // a single lattice gives one point: the power law can't be fitted
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("insufficient data") || stderr(&out).contains("singular"));
}

#[test]
fn fit_two_row_quadratic_input_is_a_singular_fit() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("two.csv"), "q,pc\n0.5,0.6\n0.6,0.55\n").unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "two.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("singular fit"));
}

#[test]
fn fit_names_the_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.csv"),
        "q,pc\n0.5,0.6\n0.6,oops\n0.7,0.5\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "bad.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.csv:3"), "{}", stderr(&out));
}

#[test]
fn fit_missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "nope.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_writes_both_plots_for_two_families() {
    let dir = tempfile::tempdir().unwrap();
    run_in(
        dir.path(),
        &["table", "--family", "central", "--reference-data"],
    );
    run_in(
        dir.path(),
        &["table", "--family", "scattered", "--reference-data"],
    );
    let out = run_in(
        dir.path(),
        &[
            "render",
            "--input",
            "table_central_nnn8.csv",
            "--input",
            "table_scattered_nnn8.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let d_plot = fs::read_to_string(dir.path().join("pc_vs_d.svg")).unwrap();
    let q_plot = fs::read_to_string(dir.path().join("pc_vs_q.svg")).unwrap();
    assert!(d_plot.starts_with("<svg "));
    // both families appear as legend entries in the connectivity plot
    assert!(q_plot.contains("central nnn8") && q_plot.contains("scattered nnn8"));
}

#[test]
fn render_rejects_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.csv"), "q,pc\n").unwrap();
    let out = run_in(dir.path(), &["render", "--input", "empty.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no data rows"));
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(run_in(dir.path(), &["--version"]).status.code(), Some(0));
    assert_eq!(
        run_in(dir.path(), &["gen", "--help"]).status.code(),
        Some(0)
    );
}

#[test]
fn bad_arguments_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run_in(dir.path(), &["no-such-command"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run_in(
            dir.path(),
            &["gen", "--b", "x", "--l", "1", "--family", "central"]
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn thread_env_variable_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "gen", "--b", "3", "--l", "1", "--family", "central", "--stages", "1",
        ])
        .current_dir(dir.path())
        .env("CARPET_PERC_THREADS", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("CARPET_PERC_THREADS"));
}
