use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hweno_cli::read_snapshot_binary;

fn hweno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hweno")).args(args).output().expect("binary runs")
}

fn status_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or_default().to_string()
}

#[test]
fn accuracy_runs_write_tables_and_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let config = dir.path().join("burgers.cfg");
    fs::write(
        &config,
        "# coarse convergence check\nproblem = burgers1d_acc\nresolutions = 20, 40\nformat = table,binary\ntfinal = 0.2\n",
    )
    .unwrap();
    let result = hweno(&[
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--emit-plots",
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", String::from_utf8_lossy(&result.stderr));
    let status = status_line(&result);
    assert!(status.starts_with("status=ok code=0 problem=burgers1d_acc runs=2"), "{status}");

    for n in [20, 40] {
        let run = out.join(format!("burgers1d_acc_{n}"));
        let table = fs::read_to_string(run.join("solution.dat")).unwrap();
        assert_eq!(table.lines().count(), n + 1);
        let binary = read_snapshot_binary(&run.join("solution.bin")).unwrap();
        assert_eq!((binary.nx, binary.ny, binary.values.len()), (n, 1, 1));
        let column: Vec<f64> = table
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(column, binary.values[0]);
        assert!(run.join("solution.gp").exists());
    }
    let errors = fs::read_to_string(out.join("burgers1d_acc_errors.dat")).unwrap();
    assert_eq!(errors.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert!(fs::read_to_string(out.join("burgers1d_acc_errors.gp")).unwrap().contains("logscale"));
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("resolutions = 20,40"));
}

fn solution_bytes(out: &Path, run: &str) -> Vec<u8> {
    fs::read(out.join(run).join("solution.bin")).unwrap()
}

#[test]
fn outputs_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (k, jobs) in ["1", "1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("out{k}"));
        let config = dir.path().join(format!("rt{k}.cfg"));
        fs::write(&config, "problem = rayleigh_taylor\nresolutions = 8x32, 10x40\ntfinal = 0.05\n").unwrap();
        let result = hweno(&[
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--format",
            "binary",
            "--jobs",
            jobs,
        ]);
        assert_eq!(result.status.code(), Some(0), "{}", String::from_utf8_lossy(&result.stderr));
        files.push((
            solution_bytes(&out, "rayleigh_taylor_8x32"),
            solution_bytes(&out, "rayleigh_taylor_10x40"),
        ));
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    fs::write(&config, "problem = shu_osher\nresolution = 200\n").unwrap();
    let result = hweno(&["--config", config.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    let status = status_line(&result);
    assert!(status.starts_with("status=config_error code=2"), "{status}");
    assert!(status.contains("line 2"), "{status}");

    let result = hweno(&["--problem", "burgers1d_acc", "--gamma0", "1.2"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(status_line(&result).contains("gamma0"));

    let result = hweno(&["--nx", "40"]);
    assert_eq!(result.status.code(), Some(2));

    let result = hweno(&["--problem", "shu_osher", "--format", "csv"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(status_line(&result).starts_with("status=config_error"));
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("blast");
    // the pressure jump of the blast wave drives the unlimited scheme negative
    let result = hweno(&["--problem", "blast_wave", "--nx", "200", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(3), "{}", String::from_utf8_lossy(&result.stdout));
    assert!(status_line(&result).starts_with("status=numerical_failure code=3"));
}
