use std::process::{Command, Output};

use serde_json::Value;
use zsindex::audit::AuditReport;

fn zsindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zsindex"))
        .args(args)
        .env_remove("ZSINDEX_WORKERS")
        .output()
        .expect("spawn zsindex")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn index_examples() {
    let out = zsindex(&["index", "--n", "7", "--seq", "1,1,2,3"]);
    assert_eq!(code(&out), 0);
    let r = &lines(&out)[0];
    assert_eq!(r["index"], 1);
    assert_eq!(r["witness_g"], 1);
    assert_eq!(r["minimal"], true);

    let out = zsindex(&["index", "--n", "7", "--seq", "1,6,2,5"]);
    assert_eq!(code(&out), 0);
    let r = &lines(&out)[0];
    assert_eq!(r["minimal"], false);
    assert_eq!(r["index"], 2);

    let out = zsindex(&["index", "--n", "7", "--seq", "1,2,3,4"]);
    assert_eq!(code(&out), 2);
    assert_eq!(lines(&out)[0]["zero_sum"], false);
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["index", "--n", "7", "--seq", "1,2,4"][..],
        &["index", "--n", "7", "--seq", "0,1,2,4"],
        &["index", "--n", "7", "--seq", "1,x,2,4"],
        &["index", "--n", "1", "--seq", "1,1,1,1"],
        &["index", "--seq", "1,1,2,3"],
        &["verify", "--n-min", "10", "--n-max", "5"],
        &["verify", "--n-min", "3", "--n-max", "20"],
        &["verify", "--n-min", "5", "--n-max", "20", "--workers", "0"],
        &[
            "audit", "s0s1", "--n", "101", "--a", "2", "--b", "3", "--H", "1000",
        ],
        &[
            "audit", "s0s1", "--n", "9", "--a", "3", "--b", "2", "--H", "1001",
        ],
        &["audit", "starsum", "--n", "101", "--A", "100", "--H", "5"],
        &["audit", "starsum", "--n", "21", "--A", "2", "--H", "5"],
        &[
            "audit", "theorem", "--n", "101", "--a", "1", "--b", "5", "--H", "1001",
        ],
        &[
            "audit", "kstar", "--n", "101", "--A", "2", "--H", "3", "--k", "5",
        ],
        &["frobnicate"],
        &["constants", "--n", "5"],
        &["--output", "xml", "constants"],
    ] {
        assert_eq!(code(&zsindex(args)), 2, "{args:?}");
    }
    assert_eq!(code(&zsindex(&["--help"])), 0);
    assert_eq!(code(&zsindex(&["--version"])), 0);
}

#[test]
fn verify_output_is_independent_of_workers() {
    let one = zsindex(&["verify", "--n-min", "5", "--n-max", "100", "--workers", "1"]);
    let eight = zsindex(&["verify", "--n-min", "5", "--n-max", "100", "--workers", "8"]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&eight), 0);
    assert_eq!(one.stdout, eight.stdout);
    let records = lines(&one);
    assert_eq!(
        records.len(),
        (5..=100).filter(|n| n % 2 != 0 && n % 3 != 0).count()
    );
    let ns: Vec<u64> = records.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] < w[1]));
    for r in &records {
        assert_eq!(r["ok"], true);
        assert!(r["witness"].is_null());
        assert!(r["checked"].as_u64().unwrap() > 0);
    }
}

#[test]
fn workers_default_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_zsindex"))
        .args(["verify", "--n-min", "5", "--n-max", "60"])
        .env("ZSINDEX_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_zsindex"))
        .args(["verify", "--n-min", "5", "--n-max", "60"])
        .env("ZSINDEX_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn exploratory_run_reports_witness() {
    let out = zsindex(&["verify", "--n-min", "5", "--n-max", "50", "--exploratory"]);
    assert_eq!(code(&out), 1);
    let records = lines(&out);
    let w = records
        .iter()
        .find(|r| !r["witness"].is_null())
        .expect("a witness");
    assert_eq!(w["n"], 6);
    assert_eq!(w["witness"]["seq"], serde_json::json!([1, 3, 4, 4]));
    assert_eq!(w["witness"]["index"], 2);
    assert_eq!(w["ok"], false);
}

#[test]
fn audit_records_round_trip() {
    let cases: [&[&str]; 5] = [
        &[
            "audit", "s0s1", "--n", "1009", "--a", "5", "--b", "7", "--H", "2000",
        ],
        &[
            "audit", "starsum", "--n", "9973", "--A", "12", "--H", "1001",
        ],
        &[
            "audit", "kstar", "--n", "101", "--A", "2", "--H", "3", "--k", "-1",
        ],
        &[
            "audit", "theorem", "--n", "10007", "--a", "100", "--b", "2000", "--H", "1001",
        ],
        &["audit", "relations"],
    ];
    for args in cases {
        let out = zsindex(args);
        assert_eq!(code(&out), 0, "{args:?}");
        for line in String::from_utf8(out.stdout).unwrap().lines() {
            let r: AuditReport = serde_json::from_str(line).unwrap();
            assert!(r.pass, "{line}");
            assert_eq!(r.margin, r.rhs - r.lhs);
            let again = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<AuditReport>(&again).unwrap(), r);
        }
    }
}

#[test]
fn relations_listing() {
    let out = zsindex(&["audit", "relations"]);
    let records = lines(&out);
    assert_eq!(records.len(), 8);
    assert!(records
        .iter()
        .all(|r| r["inputs"]["D"].as_u64().unwrap() > 0));
    assert!(records
        .iter()
        .any(|r| r["inputs"]["combo"] == "3+a, 1+3b, 3a+b" && r["inputs"]["D"] == 28));
    let all = lines(&zsindex(&["audit", "relations", "--all"]));
    assert_eq!(all.len(), 64);
    assert_eq!(
        all.iter()
            .filter(|r| r["inputs"]["feasible"] == false)
            .count(),
        56
    );
}

#[test]
fn starsum_example_within_envelope() {
    let records = lines(&zsindex(&[
        "audit", "starsum", "--n", "9973", "--A", "12", "--H", "1001",
    ]));
    let r = &records[0];
    assert_eq!(r["name"], "starsum");
    assert!(r["lhs"].as_f64().unwrap() <= 0.07926 * 9972.0);
}

#[test]
fn constants_ledger_dump() {
    let out = zsindex(&["constants"]);
    assert_eq!(code(&out), 0);
    let records = lines(&out);
    let get = |s: &str| records.iter().find(|r| r["symbol"] == s).unwrap().clone();
    let c0 = get("c0")["value"].as_f64().unwrap();
    assert!((c0 - 0.002_036_666).abs() < 1e-9);
    assert_eq!(get("subcase2")["satisfied"], true);
    assert!(get("phi_ratio_min")["value"].as_f64().unwrap() < 1.1e9);
    assert!(records.iter().all(|r| r["satisfied"] == true));
}

#[test]
fn csv_output() {
    let out = zsindex(&["--output", "csv", "verify", "--n-min", "5", "--n-max", "30"]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["n", "checked", "ok", "witness_seq", "witness_index"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(&rows[0][0], "5");

    let out = zsindex(&["audit", "relations", "--output", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.records().count(), 8);

    let out = zsindex(&["--output", "csv", "enumerate", "--n", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "n,seq\n5,1-1-1-2\n5,1-3-3-3\n5,2-2-2-4\n5,3-4-4-4\n");
}

#[test]
fn enumerate_variants() {
    let all = lines(&zsindex(&["enumerate", "--n", "7"]));
    let coprime = lines(&zsindex(&["enumerate", "--n", "7", "--coprime-only"]));
    let normalized = lines(&zsindex(&["enumerate", "--n", "7", "--normalized"]));
    assert_eq!(all.len(), coprime.len()); // 7 is prime
    assert!(normalized.len() < coprime.len());
    assert!(normalized.iter().all(|r| r["seq"][0] == 1));
}

#[test]
fn checkpoint_resume_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.log");
    let p = path.to_str().unwrap();
    let first = zsindex(&["verify", "--n-min", "5", "--n-max", "80", "--checkpoint", p]);
    let second = zsindex(&["verify", "--n-min", "5", "--n-max", "80", "--checkpoint", p]);
    assert_eq!(code(&first), 0);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout);
    let log = String::from_utf8(second.stderr).unwrap();
    assert!(log.contains("(26 from checkpoint)"), "{log}");

    let unwritable = dir.path().join("missing").join("run.log");
    let out = zsindex(&[
        "verify",
        "--n-min",
        "5",
        "--n-max",
        "20",
        "--checkpoint",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}
