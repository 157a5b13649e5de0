use std::process::{Command, Output};

fn quasi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasi")).args(args).output().expect("spawn quasi")
}

fn words(cmd: &str) -> Vec<&str> {
    cmd.split_whitespace().collect()
}

fn code(args: &[&str]) -> i32 {
    quasi(args).status.code().expect("exit code")
}

#[test]
fn exit_code_corpus() {
    let corpus: &[(&str, i32)] = &[
        ("verify claim1", 0),
        ("verify claim1 --k 3 --max-exp 8", 0),
        ("verify claim2 --family yy --a 2 --b 0", 0),
        ("verify lemma1", 0),
        ("verify lemma2 --max-exp 6", 0),
        ("verify theorem --a-max 3 --b-max 3 --max-exp 8", 0),
        ("classify --family xy-a3 --a 3 --b 2", 0),
        ("enumerate --a-max 2 --b-max 2", 0),
        ("scan --example zeta --condition cx --family xx --a 3 --b 0 --max-exp 8", 0),
        ("scan --example pow2 --condition cx --k 2 --max-exp 8", 0),
        ("iterate --map demo-banach --alpha 1/3 --beta 2 --x0 5 --tol-sq 1/1000 --max-iter 50", 0),
        ("iterate --map pow2 --x0 3 --tol-sq 1/2 --max-iter 50", 0),
        // Violations found.
        ("scan --example pow2 --condition c1 --max-exp 8", 1),
        ("scan --example zeta --condition c3 --max-exp 8", 1),
        ("scan --example zeta --condition cx --k 2 --max-exp 8", 1),
        // Usage and validation errors.
        ("", 2),
        ("frobnicate", 2),
        ("verify", 2),
        ("verify claim3", 2),
        ("verify claim1 --k 1", 2),
        ("verify claim1 --max-exp 2", 2),
        ("verify claim2", 2),
        ("verify claim2 --family xy-a3 --a 3 --b 2", 2),
        ("verify lemma1 --max-exp 3", 2),
        ("classify --family xx --a 3 --b 3", 2),
        ("classify --family zz --a 3 --b 0", 2),
        ("classify --family yy --a 1 --b 0", 2),
        ("scan --example demo --condition c1 --max-exp 4", 2),
        ("scan --example pow2 --condition cx --max-exp 4", 2),
        ("scan --example pow2 --condition cx --k 2 --family yy --max-exp 4", 2),
        ("iterate --map demo-banach --x0 0 --tol-sq 1/10 --max-iter 5", 2),
        ("iterate --map demo-banach --alpha 1/2 --beta 1 --x0 0 --tol-sq 0 --max-iter 5", 2),
        ("iterate --map demo-banach --alpha 1/0 --beta 1 --x0 0 --tol-sq 1 --max-iter 5", 2),
        ("iterate --map zeta --x0 1/2 --tol-sq 1 --max-iter 5", 2),
        ("enumerate --a-max 2", 2),
        ("verify claim1 --format xml", 2),
        ("verify claim1 --jobs 0", 2),
    ];
    for (args, want) in corpus {
        assert_eq!(code(&words(args)), *want, "quasi {args}");
    }
}

#[test]
fn usage_errors_go_to_stderr() {
    let out = quasi(&["classify", "--family", "xx", "--a", "3", "--b", "3"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("a != b"));

    let out = quasi(&["frobnicate"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn output_is_identical_across_job_counts() {
    let commands: &[&str] = &[
        "verify claim1 --max-exp 10",
        "verify claim2 --family xy-b2 --a 1 --b 2 --max-exp 10",
        "verify lemma2",
        "verify theorem --a-max 4 --b-max 4 --max-exp 8",
        "scan --example zeta --condition c2 --max-exp 8",
        "enumerate --a-max 4 --b-max 3",
        "iterate --map demo-banach --alpha -2/3 --beta 1 --x0 0 --tol-sq 1/100 --max-iter 40",
    ];
    for cmd in commands {
        for format in ["json", "csv", "text"] {
            let run = |jobs: &str| {
                let mut args = words(cmd);
                args.extend(["--format", format, "--jobs", jobs]);
                quasi(&args).stdout
            };
            let reference = run("1");
            assert!(!reference.is_empty());
            for jobs in ["1", "2", "4"] {
                assert_eq!(run(jobs), reference, "{} --format {format} --jobs {jobs}", cmd);
            }
        }
    }
}

#[test]
fn json_report_has_stable_keys() {
    let out = quasi(&["verify", "claim1", "--k", "2", "--max-exp", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["subject", "params", "status", "certificates", "grid", "failures"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["grid"]["sup_ratio_sq"], serde_json::json!({"num": 9, "den": 16}));
    let cert = &v["certificates"][0];
    for key in ["case_id", "dominating_term", "q_sq", "boundary_checks", "tail"] {
        assert!(cert.get(key).is_some(), "certificate missing {key}");
    }
}

#[test]
fn csv_headers_depend_on_command() {
    let header = |args: &[&str]| {
        let mut args = args.to_vec();
        args.extend(["--format", "csv"]);
        let out = String::from_utf8(quasi(&args).stdout).unwrap();
        out.lines().next().unwrap_or_default().to_string()
    };
    assert_eq!(header(&["verify", "claim1", "--max-exp", "6"]), "m,n,lhs_sq,rhs_sq,argmax,holds");
    assert_eq!(
        header(&["verify", "theorem", "--a-max", "3", "--b-max", "0", "--max-exp", "6"]),
        "family,a,b,term,example,status,sup_ratio_sq"
    );
    assert_eq!(header(&["enumerate", "--a-max", "3", "--b-max", "3"]), "family,a,b,term,example");
    assert_eq!(header(&["classify", "--family", "yy", "--a", "2", "--b", "0"]), "family,a,b,term,example");
    assert_eq!(
        header(&["iterate", "--map", "zeta", "--x0", "0", "--tol-sq", "1", "--max-iter", "30"]),
        "step,dist_sq,apriori_holds"
    );

    let out = quasi(&["verify", "claim1", "--max-exp", "6", "--format", "csv"]);
    let rows = String::from_utf8(out.stdout).unwrap().lines().count();
    assert_eq!(rows, 1 + 7 * 7);
}

#[test]
fn enumerate_json_shape() {
    let out = quasi(&["enumerate", "--a-max", "3", "--b-max", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 4);
    let terms: Vec<&str> = v["specs"].as_array().unwrap().iter().map(|s| s["term"].as_str().unwrap()).collect();
    assert_eq!(terms, ["d(T^3 x, y)", "d(x, T^3 x)", "d(y, T^2 y)", "d(y, T^3 y)"]);
}

#[test]
fn lemma_text_lists_base_cases() {
    let out = String::from_utf8(quasi(&["verify", "lemma1"]).stdout).unwrap();
    let values: Vec<&str> = out
        .lines()
        .filter(|l| l.trim_start().starts_with("u="))
        .map(|l| l.split_whitespace().rev().nth(3).unwrap())
        .collect();
    assert_eq!(values, ["21", "28", "112", "49", "84", "112"]);
    assert!(out.contains("lemma1/tail"));
}
