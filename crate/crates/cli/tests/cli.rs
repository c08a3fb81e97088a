use std::process::Command;

fn dualcount(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dualcount"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = dualcount(&full);
    assert_eq!(code, 0, "{:?}: {}", args, err);
    serde_json::from_str(&out).unwrap()
}

#[test]
fn count_examples() {
    for (g, t, n, want) in [
        ("Ohat", "Sp", "1", 4),
        ("Z:3", "SO_odd", "1", 2),
        ("That", "Sp", "0", 1),
    ] {
        let v = json(&["count", "--gamma", g, "--target", t, "--n", n]);
        assert_eq!(v[0]["count"], want, "{} {} {}", g, t, n);
    }
    let (code, out, _) = dualcount(&["count", "--gamma", "Ohat", "--target", "Sp", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "N(Ohat, Sp(1)) = 4");
}

#[test]
fn count_range_and_csv() {
    let (code, out, _) = dualcount(&[
        "--format", "csv", "count", "--gamma", "Z:2", "--target", "U", "--n", "1..3",
    ]);
    assert_eq!(code, 0);
    // Z2 into U(n): n+1 classes.
    assert_eq!(
        out,
        "gamma,target,n,count\nZ:2,U(1),1,2\nZ:2,U(2),2,3\nZ:2,U(3),3,4\n"
    );
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "duality", "--pair", "sp-so", "--max-n", "12"][..],
        &[
            "verify",
            "identities",
            "--prop",
            "KF4",
            "--params",
            "1,2;1;2",
        ],
        &["verify", "refined", "--gamma", "Ohat", "--max-n", "6"],
    ] {
        let (code, out, err) = dualcount(args);
        assert_eq!(code, 0, "{:?}: {}{}", args, out, err);
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "everything"][..],
        &["count", "--gamma", "Ohat", "--target", "Sp"],
        &["count", "--gamma", "Xhat", "--target", "Sp", "--n", "1"],
        &[
            "count",
            "--gamma",
            "Ohat",
            "--target",
            "Sp",
            "--n",
            "1",
            "--frobnicate",
        ],
        &["series", "--expr", "1/(1-q^0)"],
        &[
            "verify",
            "identities",
            "--prop",
            "KF1",
            "--params",
            "3;1,1,1;0;",
        ],
    ] {
        let (code, _, err) = dualcount(args);
        assert_eq!(code, 1, "{:?}: {}", args, err);
    }
}

#[test]
fn uncovered_inputs_exit_three() {
    for args in [
        &["count", "--gamma", "Dhat:4", "--target", "Spin", "--n", "2"][..],
        &["count", "--gamma", "Ohat", "--target", "Sp(2)", "--n", "1"],
        &["smatrix", "--type", "E8", "--level", "1"],
        &["smatrix", "--type", "E7", "--level", "1"],
        &["series", "--gamma", "That", "--target", "y11-spin"],
        &[
            "verify", "duality", "--pair", "psp-spin", "--gamma", "Dhat:3", "--max-n", "2",
        ],
    ] {
        let (code, _, err) = dualcount(args);
        // "Sp(2)" is not a family name, which is a usage error.
        let want = if args.contains(&"Sp(2)") { 1 } else { 3 };
        assert_eq!(code, want, "{:?}: {}", args, err);
    }
}

#[test]
fn json_is_reproducible() {
    let args = [
        "--format", "json", "smatrix", "--type", "A3", "--level", "2",
    ];
    let (_, a, _) = dualcount(&args);
    let (_, b, _) = dualcount(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["conjugation"]["holds"], true);
    assert_eq!(v["smatrix"]["weights"].as_array().unwrap().len(), 10);
}

#[test]
fn series_and_orbits() {
    let v = json(&[
        "series", "--gamma", "That", "--target", "sp", "--order", "4",
    ]);
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1", "0", "3", "0", "7"])
    );
    let v = json(&["series", "--gamma", "Z:3", "--target", "so", "--coeff", "3"]);
    assert_eq!(v["coefficient"], "2");
    let v = json(&["orbits", "--group", "SU(3)", "--n", "3"]);
    // Z3 into SU(3): multiplicity vectors (a,b,c) with a+b+c = 3 and b+2c ≡ 0 mod 3.
    assert_eq!(v[0]["orbits"], 4);
}

#[test]
fn max_order_env_bounds_series() {
    let out = Command::new(env!("CARGO_BIN_EXE_dualcount"))
        .args([
            "series", "--gamma", "Ohat", "--target", "sp", "--order", "30",
        ])
        .env("DUALCOUNT_MAX_ORDER", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_dualcount"))
        .args([
            "series", "--gamma", "Ohat", "--target", "sp", "--order", "100",
        ])
        .env("DUALCOUNT_MAX_ORDER", "200")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
