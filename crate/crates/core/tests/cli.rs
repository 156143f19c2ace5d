use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nnscf"));
    cmd.args(args).env_remove("NNSCF_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn file(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    // tests run in parallel and share fixtures, so write then rename
    let tmp = dir.join(format!("{name}.{:?}", std::thread::current().id()));
    std::fs::write(&tmp, contents).unwrap();
    std::fs::rename(&tmp, &path).unwrap();
    path.to_string_lossy().into_owned()
}

fn chain(n: usize) -> String {
    let elems: Vec<String> = (1..=n).map(|k| format!("\"{k}\"")).collect();
    let covers: Vec<String> = (1..n).map(|k| format!("[\"{k}\",\"{}\"]", k + 1)).collect();
    file(
        &format!("chain{n}.json"),
        &format!(
            "{{\"elements\":[{}],\"covers\":[{}]}}",
            elems.join(","),
            covers.join(",")
        ),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not json ({e}): {s}"))
}

#[test]
fn enumerate_counts_catalan() {
    let (code, out, _) = run(&["enumerate", "--poset", &chain(4)]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["count"], 14);
    assert_eq!(v["polynomial_value"], "14");
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 14);

    let (_, out, _) = run(&["enumerate", "--all", "--poset", &chain(4)]);
    assert_eq!(json(&out)["count"], 15);
}

#[test]
fn enumerate_over_extension_field() {
    let (code, out, _) = run(&[
        "--q",
        "4",
        "--e",
        "2",
        "--modulus",
        "1,1,1",
        "enumerate",
        "--poset",
        &chain(3),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], 19);
    let (code, _, err) = run(&["--q", "4", "enumerate", "--poset", &chain(3)]);
    assert_eq!(code, 2);
    assert_eq!(json(&err)["error"], "Parse");
}

#[test]
fn table_on_chain_and_empty_poset() {
    let (code, out, _) = run(&["table", "--poset", &chain(3)]);
    assert_eq!(code, 0);
    let v = json(&out);
    let mut dims: Vec<&str> = v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_str().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, ["1", "1", "1", "1", "4"]);

    let empty = file("empty.json", r#"{"elements":[],"covers":[]}"#);
    let (code, out, _) = run(&["table", "--poset", &empty]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["values"][0][0]["coords"][0], "1");
    assert_eq!(v["dims"], serde_json::json!(["1"]));
}

#[test]
fn table_with_oracle_embeds_checks() {
    let (code, out, _) = run(&["table", "--poset", &chain(3), "--oracle"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verification"]["passed"], true);
    let (code, out, _) = run(&[
        "table",
        "--theory",
        "algebra",
        "--poset",
        &chain(3),
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verification"]["passed"], true);
}

#[test]
fn table_renderings() {
    let (code, out, _) = run(&["table", "--poset", &chain(2), "--format", "ascii"]);
    assert_eq!(code, 0);
    assert!(out.contains("|K|"));
    let (code, out, _) = run(&["table", "--poset", &chain(2), "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("tabular"));
}

#[test]
fn verify_sct_on_hasse_diagram() {
    let hasse = file(
        "hasse.json",
        r#"{"elements":["1","2","3","4"],"covers":[["1","3"],["2","3"],["2","4"]]}"#,
    );
    let (code, out, _) = run(&["verify", "sct", "--poset", &hasse]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["supercharacters"], v["superclasses"]);
}

#[test]
fn verify_hopf_reports_witness() {
    let (code, out, _) = run(&["verify", "hopf", "--n", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["noncommutative_witness"].is_string());
    let (code, out, _) = run(&["hopf", "verify", "--n", "2", "--basis", "p"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["engine"], "functional");
}

#[test]
fn hopf_product_and_coproduct() {
    let a = file(
        "a.json",
        r#"{"poset":{"elements":["1","2"],"covers":[["1","2"]]},"arcs":[{"from":"1","to":"2","label":"1"}]}"#,
    );
    let b = file(
        "b.json",
        r#"{"poset":{"elements":["3"],"covers":[]},"arcs":[]}"#,
    );
    let (code, out, _) = run(&[
        "hopf", "product", "--basis", "kappa", "--left", &a, "--right", &b,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let (_, functional, _) = run(&[
        "hopf",
        "product",
        "--basis",
        "kappa",
        "--left",
        &a,
        "--right",
        &b,
        "--engine",
        "functional",
    ]);
    assert_eq!(out, functional);

    let empty = file("z.json", r#"{"arcs":[]}"#);
    let (code, out, _) = run(&[
        "hopf",
        "coproduct",
        "--basis",
        "kappa",
        "--diagram",
        &empty,
        "--poset",
        &chain(3),
        "--left",
        "1",
        "--right",
        "2,3",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    for term in v.as_array().unwrap() {
        assert!(
            term.get("left").is_some()
                && term.get("right").is_some()
                && term.get("coeff").is_some()
        );
    }
    assert!(!v.as_array().unwrap().is_empty());

    let (code, _, err) = run(&[
        "hopf",
        "coproduct",
        "--basis",
        "kappa",
        "--diagram",
        &a,
        "--left",
        "1",
        "--right",
        "1,2",
    ]);
    assert_eq!(code, 2);
    assert!(json(&err)["message"].is_string());
}

#[test]
fn hopf_free_table() {
    let (code, out, _) = run(&["hopf", "free", "--n", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let atomic: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["atomic_count"].as_u64().unwrap())
        .collect();
    assert_eq!(atomic, [1, 1, 2, 5]);
}

#[test]
fn render_round_trips() {
    let d = file("d.json", r#"{"arcs":[{"from":"1","to":"3","label":"1"}]}"#);
    let (code, first, _) = run(&[
        "render",
        "--diagram",
        &d,
        "--poset",
        &chain(3),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let again = file("d_again.json", &first);
    let (_, second, _) = run(&["render", "--diagram", &again, "--format", "json"]);
    assert_eq!(first, second);

    let (_, ascii, _) = run(&["render", "--diagram", &again, "--format", "ascii"]);
    assert!(ascii.lines().last().unwrap().contains('3'));
    let (_, latex, _) = run(&["render", "--diagram", &again, "--format", "latex"]);
    assert!(latex.contains("tikzpicture"));
    let (code, hasse, _) = run(&["render", "--poset", &chain(3), "--format", "ascii"]);
    assert_eq!(code, 0);
    assert!(!hasse.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--poset", &chain(3), "--q", "3"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["table", "--poset", &chain(3), "--q", "3"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn size_guard_and_environment_limit() {
    let (code, _, err) = run(&["verify", "sct", "--poset", &chain(4), "--limit", "10"]);
    assert_eq!(code, 3);
    assert_eq!(json(&err)["error"], "GroupTooLarge");
    let (code, _, _) = run_env(
        &["verify", "sct", "--poset", &chain(4)],
        &[("NNSCF_LIMIT", "10")],
    );
    assert_eq!(code, 3);
    let (code, _, _) = run_env(
        &["verify", "sct", "--poset", &chain(3), "--limit", "100"],
        &[("NNSCF_LIMIT", "10")],
    );
    assert_eq!(code, 0);
}

#[test]
fn parse_errors() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    let bad = file("bad.json", "{not json");
    let (code, _, err) = run(&["table", "--poset", &bad]);
    assert_eq!(code, 2);
    assert_eq!(json(&err)["exit_code"], 2);
    let cyclic = file(
        "cyclic.json",
        r#"{"elements":["a","b"],"covers":[["a","b"],["b","a"]]}"#,
    );
    assert_eq!(run(&["table", "--poset", &cyclic]).0, 2);
    let shared_end = file(
        "shared.json",
        r#"{"arcs":[{"from":"1","to":"3","label":"1"},{"from":"2","to":"3","label":"1"}]}"#,
    );
    assert_eq!(
        run(&["render", "--diagram", &shared_end, "--poset", &chain(3)]).0,
        2
    );
    let reversed = file(
        "reversed.json",
        r#"{"arcs":[{"from":"3","to":"1","label":"1"}]}"#,
    );
    assert_eq!(
        run(&["render", "--diagram", &reversed, "--poset", &chain(3)]).0,
        2
    );
}

#[test]
fn oracle_namespace() {
    let d = file(
        "d13.json",
        r#"{"arcs":[{"from":"1","to":"3","label":"1"}]}"#,
    );
    let (code, out, _) = run(&["oracle", "character", "--diagram", &d, "--poset", &chain(3)]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["passed"], true);
    for sub in ["classes", "coarsening", "algebra"] {
        let (code, out, _) = run(&["oracle", sub, "--poset", &chain(3)]);
        assert_eq!(code, 0, "{sub}");
        assert_eq!(json(&out)["passed"], true, "{sub}");
    }
    let g = file(
        "g.json",
        r#"{"entries":[{"row":"1","col":"2","value":[1]},{"row":"2","col":"3","value":[1]}]}"#,
    );
    let (code, out, _) = run(&[
        "oracle",
        "superclass",
        "--poset",
        &chain(3),
        "--element",
        &g,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["superclass_size"], 2);
    assert_eq!(v["sml"]["arcs"].as_array().unwrap().len(), 2);
}
