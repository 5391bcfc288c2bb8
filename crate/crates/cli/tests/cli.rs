use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn nutorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutorb"))
        .args(args)
        .env_remove("NUTORB_MAX_ORDER")
        .env_remove("NUTORB_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn census(report: &Value) -> (u64, u64, u64) {
    let c = &report["census"];
    (
        c["o_v"].as_u64().unwrap(),
        c["o_e"].as_u64().unwrap(),
        c["o_a"].as_u64().unwrap(),
    )
}

// Circ(10, {1, 2}), written independently of the library's encoder
const CIRC_10_1_2: &str = "IzKWWMBoW";

#[test]
fn check_circulant_nut() {
    let r = json(&nutorb(&["check", CIRC_10_1_2]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["verdict"]["is_nut"], true);
    assert_eq!(r["graph"]["order"], 10);
    assert_eq!(r["graph"]["size"], 20);
    assert_eq!(census(&r), (1, 2, 2));
    assert_eq!(r["census"]["aut_order"], "20");
    let kernel: Vec<&str> = r["verdict"]["kernel_basis"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(
        kernel,
        ["1", "-1", "1", "-1", "1", "-1", "1", "-1", "1", "-1"]
    );
}

#[test]
fn check_k4_is_not_nut() {
    let r = json(&nutorb(&["check", "C~"]));
    assert_eq!(r["verdict"]["is_nut"], false);
    assert_eq!(r["verdict"]["nullity"], 0);
    assert_eq!(census(&r), (1, 1, 1));
}

#[test]
fn check_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nutorb"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(format!(">>graph6<<{CIRC_10_1_2}\n").as_bytes())
        .unwrap();
    let r = json(&child.wait_with_output().unwrap());
    assert_eq!(census(&r), (1, 2, 2));
}

#[test]
fn malformed_input_exits_2_with_offset() {
    for bad in ["A~~", "D\x7fc", ""] {
        let out = nutorb(&["check", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));
    }
}

#[test]
fn construct_from_orbit_counts() {
    let r = json(&nutorb(&["construct", "--r", "3", "--k", "5"]));
    assert_eq!(census(&r), (3, 5, 7));
    assert_eq!(r["verdict"]["is_nut"], true);
    assert_eq!(r["provenance"]["variant"], "subdivided");

    let out = nutorb(&["construct", "--r", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k >= r + 1"));

    let out = nutorb(&["construct", "--r", "4", "--k", "6"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
}

#[test]
fn construct_variants() {
    let r = json(&nutorb(&["construct", "--variant", "prop3", "--n", "5"]));
    assert_eq!(r["graph"]["order"], 40);
    assert_eq!(r["census"]["aut_order"], "480");
    assert_eq!(census(&r), (1, 3, 3));

    let r = json(&nutorb(&["construct", "--variant", "fig3"]));
    assert_eq!(r["graph"]["order"], 12);
    assert_eq!(census(&r), (1, 5, 5));

    let out = nutorb(&["construct", "--variant", "prop1", "--k", "4", "--p", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_writes_files() {
    let dir = std::env::temp_dir().join(format!("nutorb-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g6 = dir.join("g.g6");
    let dot = dir.join("g.dot");
    let r = json(&nutorb(&[
        "construct",
        "--variant",
        "prop2",
        "--k",
        "5",
        "--out",
        g6.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]));
    let written = std::fs::read_to_string(&g6).unwrap();
    assert_eq!(written.trim(), r["graph"]["graph6"].as_str().unwrap());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
    let again = json(&nutorb(&["check", "--file", g6.to_str().unwrap()]));
    assert_eq!(again["verdict"], r["verdict"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_round_trip_through_graph6() {
    let cases: [&[&str]; 4] = [
        &["construct", "--r", "3", "--k", "4"],
        &["construct", "--variant", "prop2", "--k", "5"],
        &[
            "construct",
            "--variant",
            "subdivided",
            "--k",
            "3",
            "--t",
            "1",
        ],
        &["check", CIRC_10_1_2],
    ];
    for args in cases {
        let first = json(&nutorb(args));
        let g6 = first["graph"]["graph6"].as_str().unwrap();
        let second = json(&nutorb(&["check", g6]));
        assert_eq!(first["verdict"], second["verdict"], "{args:?}");
        assert_eq!(first["census"], second["census"], "{args:?}");
        assert_eq!(first["graph"], second["graph"], "{args:?}");
    }
}

#[test]
fn sweeps() {
    let r = json(&nutorb(&["sweep", "--suite", "prop1", "--kmax", "6"]));
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| row["verified"] == true));
    assert_eq!(r["all_verified"], true);

    let r = json(&nutorb(&["sweep", "--suite", "prop2", "--k", "5"]));
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["order"], 44);

    let r = json(&nutorb(&[
        "sweep",
        "--suite",
        "circulant-cross",
        "--nmax",
        "16",
    ]));
    assert_eq!(r["rows"].as_array().unwrap().len(), 8);
    assert_eq!(r["all_verified"], true);
}

#[test]
fn jobs_do_not_change_output() {
    for suite in ["prop3", "subdiv", "circulant-cross"] {
        let base = ["sweep", "--suite", suite, "--nmax", "14"];
        let one = nutorb(&[&base[..], &["--jobs", "1"]].concat());
        let many = nutorb(&[&base[..], &["--jobs", "4"]].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, many.stdout, "{suite}");
    }
}

#[test]
fn caps_exit_4() {
    let out = nutorb(&["sweep", "--suite", "circulant-cross", "--nmax", "64"]);
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_nutorb"))
        .args(["check", CIRC_10_1_2])
        .env("NUTORB_MAX_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn enumeration_cap_keeps_exact_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_nutorb"))
        .args(["construct", "--variant", "prop3", "--n", "5"])
        .output()
        .unwrap();
    let g6 = json(&out)["graph"]["graph6"].as_str().unwrap().to_string();
    let out = Command::new(env!("CARGO_BIN_EXE_nutorb"))
        .args(["check", &g6])
        .env("NUTORB_ENUM_CAP", "10")
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!(r["census"]["aut_order"], "480");
    assert_eq!(r["census"]["order_verified"], false);
    assert_eq!(census(&r), (1, 3, 3));
}

#[test]
fn export_dot() {
    let out = nutorb(&["export", CIRC_10_1_2]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), 20);
}
