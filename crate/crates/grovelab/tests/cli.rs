//! The `grovelab` binary: golden outputs, exit codes and determinism.

use std::process::{Command, Output};

fn grovelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grovelab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measure_and_bush_goldens() {
    let o = grovelab(&["measure", "--builtin", "y3", "--partition", "1|2|3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "a + b + c\n"));
    let o = grovelab(&["bush", "--builtin", "y3", "--xi", "15|26|34"]);
    assert_eq!(stdout(&o), "a^2*c + a*b*c + a*c^2\n");
}

#[test]
fn verify_product_exhaustive() {
    let o = grovelab(&["verify", "product", "--n", "3", "--all"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ok (25 pairs × all TC_3)\n"));
}

#[test]
fn network_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("grovelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dual.json");
    let dual = grovelab(&["dual", "--builtin", "y3"]);
    std::fs::write(&path, &dual.stdout).unwrap();
    let o = grovelab(&["medial", "--network", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let y = grovelab(&["medial", "--builtin", "y3"]);
    assert_eq!(stdout(&o), stdout(&y));
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(grovelab(&["medial", "--network", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(grovelab(&["groves"]).status.code(), Some(2));
    assert_eq!(grovelab(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(grovelab(&["acoeff", "--xi", "14|25|36"]).status.code(), Some(2));
    assert_eq!(grovelab(&["verify", "dims", "--n", "4", "--d", "2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["bush", "--builtin", "fig3", "--json"];
    let a = grovelab(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_grovelab")).args(args).env("GROVELAB_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_grovelab")).args(args).env("GROVELAB_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumerate_and_convert() {
    let o = grovelab(&["enum", "dyck", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = grovelab(&["enum", "chains", "--n", "3", "--d", "2"]);
    assert_eq!(stdout(&o).lines().count(), 14);
    let o = grovelab(&["convert", "12|34", "--from", "ncm", "--to", "dyck"]);
    assert_eq!(stdout(&o), "UDUD\n");
    assert_eq!(grovelab(&["convert", "12|34", "--to", "tree"]).status.code(), Some(2));
}
