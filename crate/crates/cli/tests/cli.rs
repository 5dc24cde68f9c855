use std::path::Path;
use std::process::{Command, Output};

fn udiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udiscord"))
        .args(args)
        .output()
        .expect("failed to run udiscord")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fig2b_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2b.csv");
    let run = udiscord(&["sweep", "--quantity", "fig2b", "--steps", "101", "--out", path(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "two_theta_over_pi,fig2b");
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[51], "0.500000000000,-0.500000000000");
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_to_stdout_with_theta_range() {
    let run = udiscord(&[
        "sweep",
        "--quantity",
        "fig1b,s_b_given_c",
        "--theta-start",
        "0",
        "--theta-end",
        "0.7853981633974483",
        "--steps",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(run.stdout).unwrap(),
        "two_theta_over_pi,fig1b,s_b_given_c\n0.00000000000,1.00000000000,1.00000000000\n0.500000000000,0.00000000000,0.00000000000\n"
    );
}

#[test]
fn sweep_config_errors_exit_2() {
    for args in [
        vec!["sweep", "--quantity", "fig2b", "--steps", "1"],
        vec!["sweep", "--quantity", "nonsense"],
        vec!["sweep", "--quantity", "fig2b", "--family", "ghz3"],
        vec!["sweep", "--quantity", "fig1b", "--theta-end", "3"],
        vec!["sweep", "--quantity", "fig1b", "--family", "w"],
        vec!["sweep", "--quantity", "fig1b", "--restarts", "0"],
        vec!["sweep", "--quantity", "fig1b", "--povm-outcomes", "dual"],
        vec!["sweep", "--quantity", "fig1b", "--threads", "0"],
        vec!["sweep"],
    ] {
        let run = udiscord(&args);
        assert_eq!(run.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn custom_state_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ghz.txt");
    std::fs::write(
        &file,
        "# GHZ\n2 2 2\n0.7071067811865476 0\n0 0\n0 0\n0 0\n0 0\n0 0\n0 0\n0.7071067811865476 0\n",
    )
    .unwrap();
    let run = udiscord(&[
        "sweep",
        "--state-file",
        path(&file),
        "--quantity",
        "s_a,mutual_bc",
        "--steps",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.ends_with("1.00000000000,1.00000000000,1.00000000000\n"), "{text}");

    std::fs::write(&file, "2 2\n1 0\n").unwrap();
    let run = udiscord(&["sweep", "--state-file", path(&file), "--quantity", "s_a"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn verify_small_batches() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.tsv");
    let run = udiscord(&[
        "verify",
        "--states",
        "3",
        "--dims",
        "2,2,2",
        "--seed",
        "7",
        "--restarts",
        "8",
        "--out",
        path(&report),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 3 * 14);
    for line in &data {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 3);
        fields[0].parse::<u64>().unwrap();
        assert!(fields[2].parse::<f64>().unwrap() <= 1e-3);
    }
    assert!(text.contains("# max\tkoashi_winter\t"));
    assert!(text.ends_with("# violations\t0\n"));

    let run = udiscord(&["verify", "--states", "2", "--dims", "2,2,2,2", "--restarts", "8"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8(run.stdout).unwrap().contains("quad_left_bound"));
}

#[test]
fn verify_reports_violations_with_exit_1() {
    // a tolerance no optimizer can meet
    let run = udiscord(&["verify", "--states", "1", "--restarts", "2", "--tol-opt", "1e-30"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8(run.stdout).unwrap().contains("FAIL"));
}

#[test]
fn verify_config_errors_exit_2() {
    for args in [
        vec!["verify", "--states", "0"],
        vec!["verify", "--dims", "2,2"],
        vec!["verify", "--dims", "2,x,2"],
        vec!["verify", "--povm-outcomes", "d3"],
        vec!["verify", "--tol-exact", "0"],
    ] {
        assert_eq!(udiscord(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_emits_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2a.csv");
    std::fs::write(&csv, "two_theta_over_pi,fig2a\n0.0,0.0\n0.5,-1.0\n1.0,0.0\n").unwrap();
    let run = udiscord(&["report", path(&csv), "--emit-plotscript"]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let script = std::fs::read_to_string(dir.path().join("fig2a.gp")).unwrap();
    assert!(script.contains("set xlabel '2θ/π'"));
    assert!(script.contains("plot 'fig2a.csv' using 1:2"));
    assert_eq!(script.matches(" with lines ").count(), 1);

    let run = udiscord(&["report", path(&csv)]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8(run.stdout).unwrap().starts_with("fig2a\trows=3"));
}

#[test]
fn report_rejects_missing_and_bad_csv() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    assert_eq!(udiscord(&["report", path(&missing)]).status.code(), Some(2));
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(
        udiscord(&["report", path(&empty), "--emit-plotscript"]).status.code(),
        Some(2)
    );
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "two_theta_over_pi,fig2a\n0.0,oops\n").unwrap();
    assert_eq!(udiscord(&["report", path(&bad)]).status.code(), Some(2));
}

#[test]
fn sweep_is_thread_count_independent() {
    let args = |threads: &'static str| {
        vec![
            "sweep",
            "--quantity",
            "fig2a",
            "--steps",
            "5",
            "--restarts",
            "6",
            "--seed",
            "3",
            "--threads",
            threads,
        ]
    };
    let one = udiscord(&args("1"));
    let three = udiscord(&args("3"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
}
