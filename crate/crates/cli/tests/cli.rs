use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bideal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bideal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn text(args: &[&str]) -> String {
    let (code, out, err) = bideal(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(format!("{name}.v1.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).expect("schema compiles")
}

/// Runs with `--json`, checks the exit code and validates against the named schema.
fn json(name: &str, code: i32, args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (got, out, err) = bideal(&full);
    assert_eq!(got, code, "{args:?}: {out}{err}");
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"));
    let errors: Vec<String> = schema(name)
        .iter_errors(&v)
        .map(|e| e.to_string())
        .collect();
    assert!(
        errors.is_empty(),
        "{args:?} against {name}: {errors:?}\n{v:#}"
    );
    v
}

#[test]
fn ideal_verbs() {
    assert_eq!(text(&["normalize", "omega(FIN)"]), "P(1)");
    assert_eq!(text(&["normalize", "omega(perp(omega(FIN)))"]), "P(2)");
    assert_eq!(text(&["normalize", "sum(FIN, POW)"]), "PQ(0)");
    assert_eq!(text(&["perp", "P(2)"]), "Q(2)");
    assert_eq!(text(&["rank", "PQ(w+1)"]), "w+1");
    assert_eq!(text(&["iso", "P(1)", "omega(FIN)"]), "isomorphic");
    assert_eq!(text(&["iso", "P(1)", "Q(1)"]), "non-isomorphic");
    assert_eq!(text(&["compile", "FIN"]), "chain");

    let v = json("normalize", 0, &["normalize", "limsum(w)"]);
    assert_eq!(v["form"]["kind"], "P");
    assert_eq!(v["form"]["rank"], "w");
    json("perp", 0, &["perp", "PQ(3)"]);
    json("rank", 0, &["rank", "Q(w^2)"]);
    assert_eq!(json("iso", 0, &["iso", "POW", "P(0)"])["isomorphic"], true);
}

#[test]
fn compile_emits() {
    json("compile", 0, &["compile", "P(1)"]);
    let dot = json(
        "compile",
        0,
        &[
            "compile", "FIN", "--emit", "dot", "--depth", "2", "--width", "2",
        ],
    );
    assert!(dot["dot"].as_str().unwrap().starts_with("digraph"));
    let listing = json(
        "compile",
        0,
        &["compile", "FIN", "--emit", "json", "--depth", "3"],
    );
    assert_eq!(listing["elements"].as_array().unwrap().len(), 3);
    assert!(text(&["compile", "POW", "--emit", "dot"]).contains("->"));
}

#[test]
fn classify_verbs() {
    assert_eq!(text(&["classify", "fan([]; const(chain))"]), "BOREL P(1)");
    assert_eq!(text(&["classify", "chain"]), "BOREL FIN");
    assert!(text(&["classify", "full"]).starts_with("NON-BOREL"));
    assert!(text(&["classify", "full", "--via", "derivative"]).starts_with("NON-BOREL"));
    let v = json(
        "classify",
        0,
        &["classify", "spine([]; const(chain))", "--via", "derivative"],
    );
    assert_eq!(v["class"]["verdict"], "Borel");
    assert_eq!(v["method"], "derivative");
    json("classify", 0, &["classify", "fan([full]; const(eps))"]);
    assert_eq!(text(&["treerank", "chain"]), "rank 1, core empty");
    assert_eq!(text(&["treerank", "full"]), "rank 0, core nonempty");
    json("treerank", 0, &["treerank", "fan([]; const(chain))"]);
}

#[test]
fn membership_verbs() {
    assert_eq!(
        text(&["member", "chain", "in", "FIN"]),
        "not a member of FIN"
    );
    let v = json(
        "member",
        0,
        &[
            "member",
            "fan([chain]; const(empty))",
            "in",
            "P(1)",
            "--perp",
        ],
    );
    assert_eq!(v["member"], true);
    assert_eq!(v["ideal"], "Q(1)");
    let v = json(
        "frechet",
        0,
        &["frechet", "fan([]; const(chain))", "in", "P(1)"],
    );
    assert_eq!(v["witness"]["data"], "fan([chain]; const(empty))");
    assert_eq!(text(&["idwitness", "chain"]), "dominating branch (0)^w");
    let v = json("idwitness", 0, &["idwitness", "full", "--show", "3"]);
    assert_eq!(v["sample"], serde_json::json!(["<0>", "<1>", "<2>"]));
    json(
        "idwitness",
        0,
        &["idwitness", "transversal(fan([]; const(chain)))"],
    );
}

#[test]
fn order_verbs() {
    assert_eq!(text(&["wo", "classify", "N"]), "SCATTERED POW");
    assert_eq!(text(&["wo", "classify", "rev(N)"]), "SCATTERED FIN");
    assert!(text(&["wo", "classify", "cat(N, QQ)"]).starts_with("NON-SCATTERED"));
    json("wo-classify", 0, &["wo", "classify", "cat(N, rev(QQ))"]);
    let v = json("wo-reverse", 0, &["wo", "reverse", "osum([]; N)"]);
    assert_eq!(v["reversedClass"]["data"]["kind"], "Q");
    let v = json(
        "wo-rationalize",
        0,
        &["wo", "rationalize", "N", "--count", "3"],
    );
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
}

#[test]
fn enumerate_and_selftest() {
    assert_eq!(
        text(&["enumerate", "chain", "--budget", "2,2,10"]),
        "<0>\n<0,0>"
    );
    json(
        "enumerate",
        0,
        &[
            "enumerate",
            "union(chain, finset{<1>, <2,0>})",
            "--budget",
            "3,3,20",
        ],
    );
    let v = json("selftest", 0, &["selftest", "--seed", "5", "--trials", "2"]);
    assert!(v["laws"]
        .as_array()
        .unwrap()
        .iter()
        .all(|l| l["failures"] == 0));
    let seq = json(
        "selftest",
        0,
        &["selftest", "--seed", "5", "--trials", "2", "--sequential"],
    );
    assert_eq!(v, seq);
}

#[test]
fn exit_codes() {
    let v = json("error", 1, &["normalize", "P("]);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 2);
    assert_eq!(bideal(&["frobnicate"]).0, 1);
    assert_eq!(bideal(&["enumerate", "chain", "--budget", "0,1,1"]).0, 1);
    assert_eq!(bideal(&["member", "chain", "of", "FIN"]).0, 1);
    let v = json("error", 2, &["classify", "fan([]; qdiag(2))"]);
    assert_eq!(v["error"]["kind"], "precondition");
    json("error", 2, &["member", "full", "in", "FIN"]);
    json(
        "error",
        2,
        &[
            "frechet",
            "transversal(fan([]; const(chain)))",
            "in",
            "P(1)",
        ],
    );
    let (code, _, err) = bideal(&["normalize", "limsum(3)"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(bideal(&["--help"]).0, 0);
}

#[test]
fn schemas_reject_other_shapes() {
    let v = json("normalize", 0, &["normalize", "FIN"]);
    assert!(!schema("classify").is_valid(&v));
    assert!(!schema("error").is_valid(&v));
    let mut bad = v.clone();
    bad["form"]["kind"] = "R".into();
    assert!(!schema("normalize").is_valid(&bad));
}

#[test]
fn witnesses_report_their_check() {
    let budget = serde_json::json!({"depth": 8, "width": 8, "count": 200});
    let v = json("classify", 0, &["classify", "fan([]; const(full))"]);
    assert_eq!(v["witness"]["checkedAtBudget"], budget);
    assert!(json("classify", 0, &["classify", "chain"])
        .get("witness")
        .is_none());
    let v = json(
        "frechet",
        0,
        &["frechet", "fan([]; const(chain))", "in", "P(1)"],
    );
    assert_eq!(v["witness"]["checkedAtBudget"], budget);
    let v = json("idwitness", 0, &["idwitness", "spine([]; const(eps))"]);
    assert_eq!(v["witness"]["checkedAtBudget"], budget);
}
