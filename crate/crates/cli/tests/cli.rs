use std::process::Command;

use agcodes_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn agc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("agc").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = agc(args);
    assert_eq!(code, EXIT_OK, "agc {args:?}: {err}");
    out
}

#[test]
fn documented_examples() {
    assert!(ok(&["x0", "--ell", "11"]).starts_with(r#"{"ell":11,"genus":1,"#));
    assert_eq!(
        ok(&["rs", "--q", "7", "--n", "7", "--k", "3"]),
        "{\"n\":7,\"k\":3,\"d\":5,\"d_exact\":true}\n"
    );
    let ihara = ok(&["ihara", "--p", "7", "--ells", "11,23,47"]);
    let lines: Vec<&str> = ihara.lines().collect();
    assert_eq!(lines[0], "ell,genus,lower_bound,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.ends_with(",6/1")));
}

#[test]
fn subcommand_outputs() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["crossover", "--q", "49"])).unwrap();
    assert_eq!(v["beats"], true);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["agcode", "--curve", "E[q=7;A=1;B=1]", "--m", "2"])).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"n": 4, "k": 2, "d": 2, "d_exact": true, "g": 1, "degG": 2})
    );
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["elliptic", "--curve", "E[q=5;A=1;B=0]", "--group"])).unwrap();
    assert_eq!(v["group"], serde_json::json!({"n1": 2, "n2": 2, "N": 4}));
    assert!(v.get("points").is_none());
    let v: serde_json::Value = serde_json::from_str(&ok(&["supersingular", "--p", "11"])).unwrap();
    assert_eq!(v["count"], 2);
    let table = ok(&["bounds", "--q", "49", "--samples", "11"]);
    assert_eq!(table.lines().count(), 12);
    assert!(table.starts_with("delta,singleton,plotkin,gv,tvz\n0,1.00000000000,"));
    let weights = ok(&[
        "channel", "--q", "7", "--n", "50", "--perr", "0.2", "--trials", "5", "--seed", "1",
    ]);
    assert_eq!(weights.lines().next(), Some("trial,weight"));
    assert_eq!(weights.lines().count(), 6);
}

#[test]
fn code_csv_quotes_extension_field_elements() {
    let csv = ok(&["rs", "--q", "9", "--n", "3", "--k", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines,
        ["9,3,2", r#""1,0","1,0","1,0""#, r#""0,0","1,0","2,0""#]
    );
    let prime = ok(&["rs", "--q", "5", "--n", "4", "--k", "2", "--format", "csv"]);
    assert_eq!(prime, "5,4,2\n1,1,1,1\n0,1,2,3\n");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let cases: [&[&str]; 5] = [
        &[
            "channel", "--q", "7", "--n", "200", "--perr", "0.1", "--trials", "300", "--seed", "42",
        ],
        &["bounds", "--q", "121", "--samples", "257"],
        &["crossover", "--q", "169"],
        &["elliptic", "--curve", "E[q=7^2;mod=1,0,1;A=1,0;B=3,1]"],
        &["bounds", "--q", "49", "--samples", "33", "--format", "json"],
    ];
    for args in cases {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
    let a = ok(&[
        "channel", "--q", "7", "--n", "200", "--perr", "0.1", "--trials", "30", "--seed", "1",
    ]);
    let b = ok(&[
        "channel", "--q", "7", "--n", "200", "--perr", "0.1", "--trials", "30", "--seed", "2",
    ]);
    assert_ne!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x0.json");
    let path_str = path.to_str().unwrap();
    let (code, out, _) = agc(&["x0", "--ell", "23", "--out", path_str]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        ok(&["x0", "--ell", "23"])
    );
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 8] = [
        &[],
        &["frobnicate"],
        &["x0"],
        &["x0", "--ell", "eleven"],
        &["x0", "--ell", "11", "--bogus"],
        &["rs", "--q", "7", "--n", "-1", "--k", "3"],
        &["crossover", "--q", "49", "--format", "csv"],
        &["elliptic", "--curve", "E[q=7;A=1]"],
    ];
    for args in cases {
        let (code, out, err) = agc(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_3_with_named_precondition() {
    let cases: [(&[&str], &str); 14] = [
        (&["x0", "--ell", "12"], "not prime"),
        (&["x0", "--ell", "3"], "must exceed 3"),
        (&["rs", "--q", "6", "--n", "3", "--k", "2"], "not prime"),
        (&["rs", "--q", "7", "--n", "8", "--k", "2"], "k <= n <= q"),
        (&["rs", "--q", "7", "--n", "5", "--k", "6"], "k <= n <= q"),
        (&["crossover", "--q", "4"], "TVZ line undefined"),
        (
            &["bounds", "--q", "49", "--samples", "1"],
            "at least 2 samples",
        ),
        (&["ihara", "--p", "7", "--ells", "13"], "11 mod 12"),
        (&["ihara", "--p", "11", "--ells", "11"], "must differ"),
        (&["supersingular", "--p", "101"], "budget"),
        (&["elliptic", "--curve", "E[q=7;A=0;B=0]"], "singular"),
        (
            &["elliptic", "--curve", "E[q=9;A=1;B=1]"],
            "characteristic 3",
        ),
        (
            &["agcode", "--curve", "E[q=7;A=1;B=1]", "--m", "4"],
            "smaller than the number of evaluation points",
        ),
        (
            &[
                "channel", "--q", "7", "--n", "10", "--perr", "0.9", "--trials", "1", "--seed", "0",
            ],
            "p_err",
        ),
    ];
    for (args, needle) in cases {
        let (code, out, err) = agc(args);
        assert_eq!(code, EXIT_DOMAIN, "{args:?}: {err}");
        assert!(out.is_empty());
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn adversarial_sizes_fail_fast() {
    let max = u64::MAX.to_string();
    let cases: Vec<Vec<&str>> = vec![
        vec!["x0", "--ell", &max],
        vec!["rs", "--q", &max, "--n", "3", "--k", "2"],
        vec!["rs", "--q", "1048573", "--n", "1048573", "--k", "1000"],
        vec!["bounds", "--q", &max, "--samples", "100000000"],
        vec![
            "channel", "--q", "7", "--n", "1000000", "--perr", "0.1", "--trials", "1000000",
            "--seed", "0",
        ],
        vec!["ihara", "--p", &max, "--ells", "11"],
        vec!["supersingular", "--p", &max],
        vec!["elliptic", "--curve", "E[q=1048573;A=1;B=1]"],
        vec!["agcode", "--curve", "E[q=1048573;A=1;B=1]", "--m", "100000"],
        vec!["agcode", "--curve", "E[q=7;A=1;B=1]", "--m", &max],
        vec![
            "channel", "--q", "7", "--n", "10", "--perr", "inf", "--trials", "1", "--seed", "0",
        ],
    ];
    for args in cases {
        let start = std::time::Instant::now();
        let (code, _, err) = agc(&args);
        assert_eq!(code, EXIT_DOMAIN, "{args:?}: {err}");
        assert!(
            start.elapsed().as_secs() < 5,
            "{args:?} took {:?}",
            start.elapsed()
        );
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_agc");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["x0", "--ell", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with(r#"{"ell":11,"genus":1,"#));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
    assert_eq!(status(&["x0", "--nope"]).status.code(), Some(2));
    assert_eq!(status(&["x0", "--ell", "15"]).status.code(), Some(3));
}
