use std::process::Command;

use beamsched::output::{read_csv, HEADER};

fn beamsched() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beamsched"))
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let status = beamsched()
        .args(["sweep", "--preset", "desk-fig4", "--trials", "2", "--algorithms", "css,random"])
        .args(["--rho-db", "-10,0", "--seed", "3", "--summary", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout.contains("CSS") && stdout.contains("random"));
    assert_eq!(read_csv(&out).unwrap().len(), 2 * 2 * 2);
}

#[test]
fn sweep_to_stdout_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("s.conf");
    std::fs::write(&conf, "num_antennas = 16\nnum_users = 6\nnum_scheduled = 2\nnum_stored_beams = 4\ntrials = 1\nrho_db = 0\nalgorithms = greedy\n").unwrap();
    let out = beamsched().args(["sweep", "--config"]).arg(&conf).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("greedy,0,2,0,"));
}

#[test]
fn unknown_scheduler_fails_fast() {
    let out = beamsched().args(["sweep", "--algorithms", "css,bogus"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_runs_selected_criteria() {
    let out = beamsched().args(["verify", "--only", "1,5"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
}

#[test]
fn quantizer_table_lists_each_resolution() {
    let out = beamsched().args(["quantizer-table", "--max-bits", "6"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("3.63380228e-1"));
}
