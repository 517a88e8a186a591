use std::process::{Command, Output};

fn ditrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ditrans")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_wronskian_reports_sigma() {
    let o = ditrans(&["verify", "wronskian", "--alpha", "0.3", "--beta", "0.4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["pass"], true);
    let sigma = r["checks"].as_array().unwrap().iter().find(|c| c.get("value").is_some()).unwrap();
    let v = sigma["value"].as_array().unwrap();
    // i (0.3 + 0.4i) = -0.4 + 0.3i
    assert!((v[0].as_f64().unwrap() + 0.4).abs() < 1e-7);
    assert!((v[1].as_f64().unwrap() - 0.3).abs() < 1e-7);
}

#[test]
fn transform_emits_five_column_csv() {
    let o = ditrans(&["transform", "--s-max", "4", "--s-nodes", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,re_phi1,im_phi1,re_phi2,im_phi2"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 20);
    for r in rows {
        let cols: Vec<&str> = r.split(',').collect();
        assert_eq!(cols.len(), 5);
        for c in cols {
            let mantissa = c.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.replace('.', "").len(), 17, "{c}");
            c.parse::<f64>().unwrap();
        }
    }
}

#[test]
fn roundtrip_with_discrete_part() {
    let o = ditrans(&["roundtrip", "--alpha", "1.7", "--beta", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert!(r["max_rel_error"].as_f64().unwrap() <= 1e-3);
    assert_eq!(r["pass"], true);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (p, threads) in [(&a, "1"), (&b, "3")] {
        let o = Command::new(env!("CARGO_BIN_EXE_ditrans"))
            .args(["transform", "--alpha", "0.5", "--beta", "-0.2", "--s-max", "3", "--s-nodes", "6", "--format", "json", "--output"])
            .arg(p)
            .env("DITRANS_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn transform_json_feeds_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let o = ditrans(&["transform", "--alpha", "1.7", "--beta", "0.3", "--basis", "jost", "--format", "json", "--output", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(doc["discrete"].as_array().unwrap().len(), 2);
    let o = ditrans(&["inverse", "--input", t.to_str().unwrap(), "--x-max", "2", "--x-step", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let want = 1.0 / (0.25 + v[0] * v[0]);
        assert!((v[1] - want).abs() < 1e-6 * want && v[2].abs() < 1e-6 * want, "{line}");
    }
}

#[test]
fn csv_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let mut text = String::from("x,re,im\n");
    for k in -1200..=1200 {
        let x = k as f64 * 0.01;
        text.push_str(&format!("{x},{},0\n", (-x * x).exp()));
    }
    std::fs::write(&f, text).unwrap();
    let o = ditrans(&["verify", "parseval", "--input", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    // validation
    assert_eq!(ditrans(&["transform", "--alpha", "-1"]).status.code(), Some(1));
    assert_eq!(ditrans(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(ditrans(&["transform", "--input", "no-such-function"]).status.code(), Some(1));
    assert_eq!(ditrans(&["kernel"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_ditrans")).args(["verify", "gamma"]).env("DITRANS_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    // tolerance: the report is still written
    let o = ditrans(&["roundtrip", "--rel-tol", "1e-16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["pass"], false);
    // evaluation: degenerate 2F2 denominator
    assert_eq!(ditrans(&["verify", "addendum-2f2", "--rho", "2"]).status.code(), Some(3));
    assert_eq!(ditrans(&["--help"]).status.code(), Some(0));
}

#[test]
fn gram_and_tables() {
    let o = ditrans(&["gram", "--family", "r", "--p", "0.3", "--q", "0.7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["identity_defect"].as_f64().unwrap() < 1e-8);

    let o = ditrans(&["tabulate", "--s-max", "2", "--s-nodes", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);

    let o = ditrans(&["kernel", "--alpha", "2.2", "--beta", "0.5", "--k", "1", "--x-max", "1", "--x-step", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("x,re_r,im_r"));
    assert_eq!(ditrans(&["kernel", "--alpha", "0.3", "--k", "0"]).status.code(), Some(1));
}
