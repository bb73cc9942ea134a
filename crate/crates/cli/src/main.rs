use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bideal::ideal::{b_rank, iso_check, normalize, perp_c};
use bideal::membership::{frechet_witness, id_witness, member_of, member_perp, IdWitness};
use bideal::oracle::{
    check_embedding, check_frechet, check_id_witness, enumerate_query, law_suite, Budget,
};
use bideal::scattered::{rationalize, wo_classify, wo_self_dual, LinTerm, RouteStep, WoClass};
use bideal::syntax::{parse_ideal, parse_lin, parse_query, parse_schema};
use bideal::tree::{
    classify, classify_via_derivative, compile, to_dot, to_json, tree_rank, TreeClass,
};
use bideal::{Error, Execution};

#[derive(Parser)]
#[command(
    name = "bideal",
    version,
    about = "Canonical forms of ideals and classification of tree restrictions"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Derivative,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical form of an ideal expression.
    Normalize { expr: String },
    /// Rank of the canonical form.
    Rank { expr: String },
    /// Canonical form of the orthogonal.
    Perp { expr: String },
    /// Decide whether two expressions denote isomorphic ideals.
    Iso { left: String, right: String },
    /// Tree schema realizing the ideal as a restriction of I_wf.
    Compile {
        expr: String,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        width: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Classify the restriction of I_wf to a schema.
    Classify {
        schema: String,
        #[arg(long, value_enum)]
        via: Option<Via>,
    },
    /// Derivative rank of the generated tree.
    Treerank { schema: String },
    /// Membership of a query in the compiled copy of an ideal.
    Member {
        query: String,
        #[arg(value_parser = ["in"], value_name = "in")]
        keyword: String,
        target: String,
        /// Test membership in the orthogonal instead.
        #[arg(long)]
        perp: bool,
    },
    /// Infinite subset of a positive query orthogonal to the ideal.
    Frechet {
        query: String,
        #[arg(value_parser = ["in"], value_name = "in")]
        keyword: String,
        target: String,
    },
    /// Dominating branch, or an unbounded family, for a query.
    Idwitness {
        query: String,
        /// Members of an unbounded family to list.
        #[arg(long, default_value_t = 5)]
        show: usize,
    },
    /// Well-ordered subsets of countable linear orders.
    Wo {
        #[command(subcommand)]
        cmd: WoCmd,
    },
    /// List elements of a schema or query within a budget.
    Enumerate {
        term: String,
        /// depth,width,count
        #[arg(long, value_parser = parse_budget, default_value = "6,6,200")]
        budget: Budget,
    },
    /// Run the seeded law suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum WoCmd {
    /// Class of WO(Q) restricted to an order of this type.
    Classify { term: String },
    /// The reversed order and the duality check.
    Reverse { term: String },
    /// Rationals realizing the first points of the order.
    Rationalize {
        term: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [d, w, c] = parts[..] else {
        return Err("expected depth,width,count".into());
    };
    let num = |x: &str| x.parse::<u64>().map_err(|e| format!("{x}: {e}"));
    let (d, w, c) = (num(d)?, num(w)?, num(c)?);
    if d == 0 || w == 0 || c == 0 {
        return Err("budget fields must be at least 1".into());
    }
    Ok(Budget::new(d as usize, w, c as usize))
}

enum Failure {
    Term(Error),
    /// A law the library promises was violated.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Term(e)
    }
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output {
        text: text.into(),
        json,
    }
}

/// Budget every emitted witness is re-checked at before it is printed.
const CHECK: Budget = Budget {
    depth: 8,
    width: 8,
    count: 200,
};

/// `{kind, data, checkedAtBudget}`; a witness failing its check is a bug.
fn checked(kind: &str, data: Value, passed: bool, what: &str) -> Result<Value, Failure> {
    if !passed {
        return Err(Failure::Internal(format!(
            "{what} fails its check at {CHECK:?}"
        )));
    }
    Ok(json!({"kind": kind, "data": data, "checkedAtBudget": CHECK}))
}

fn class_text(c: &TreeClass) -> String {
    match c {
        TreeClass::Borel(f) => format!("BOREL {f}"),
        TreeClass::NonBorel(w) => format!("NON-BOREL: {}", w.summary()),
    }
}

fn run(cmd: Cmd) -> Result<Output, Failure> {
    Ok(match cmd {
        Cmd::Normalize { expr } => {
            let c = normalize(&parse_ideal(&expr)?)?;
            out(
                c.to_string(),
                json!({"input": expr, "form": c, "text": c.to_string()}),
            )
        }
        Cmd::Rank { expr } => {
            let r = b_rank(&parse_ideal(&expr)?)?;
            out(r.to_string(), json!({"input": expr, "rank": r}))
        }
        Cmd::Perp { expr } => {
            let c = perp_c(&normalize(&parse_ideal(&expr)?)?);
            out(
                c.to_string(),
                json!({"input": expr, "form": c, "text": c.to_string()}),
            )
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (parse_ideal(&left)?, parse_ideal(&right)?);
            let iso = iso_check(&a, &b)?;
            let (na, nb) = (normalize(&a)?, normalize(&b)?);
            let text = if iso { "isomorphic" } else { "non-isomorphic" };
            out(
                text,
                json!({"left": left, "right": right, "isomorphic": iso,
                       "forms": [na.to_string(), nb.to_string()]}),
            )
        }
        Cmd::Compile {
            expr,
            emit,
            depth,
            width,
            count,
        } => {
            let t = compile(&parse_ideal(&expr)?)?;
            let b = Budget::new(depth, width, count);
            match emit {
                None => out(t.to_string(), json!({"input": expr, "schema": t})),
                Some(Emit::Dot) => {
                    let dot = to_dot(&t, &b);
                    out(dot.clone(), json!({"input": expr, "schema": t, "dot": dot}))
                }
                Some(Emit::Json) => {
                    let v = to_json(&t, &b);
                    out(serde_json::to_string_pretty(&v).expect("json value"), v)
                }
            }
        }
        Cmd::Classify { schema, via } => {
            let t = parse_schema(&schema)?;
            let structural = classify(&t)?;
            let derivative = classify_via_derivative(&t)?;
            if structural.is_borel() != derivative.is_borel() {
                return Err(Failure::Internal(format!(
                    "classifiers disagree on {t}: {} vs {}",
                    class_text(&structural),
                    class_text(&derivative)
                )));
            }
            let c = match via {
                Some(Via::Derivative) => derivative,
                None => structural,
            };
            let method = if via.is_some() {
                "derivative"
            } else {
                "structural"
            };
            let mut v = json!({"input": schema, "method": method, "class": c});
            if let TreeClass::NonBorel(w) = &c {
                let ok = check_embedding(w, &t, &CHECK);
                v["witness"] = checked("Embedding", json!(w), ok, &w.summary())?;
            }
            out(class_text(&c), v)
        }
        Cmd::Treerank { schema } => {
            let t = parse_schema(&schema)?;
            let (rank, core_empty) = tree_rank(&t);
            let core = if core_empty {
                "core empty"
            } else {
                "core nonempty"
            };
            out(
                format!("rank {rank}, {core}"),
                json!({"input": schema, "rank": rank, "coreEmpty": core_empty}),
            )
        }
        Cmd::Member {
            query,
            target,
            perp,
            ..
        } => {
            let (q, e) = (parse_query(&query)?, parse_ideal(&target)?);
            let member = if perp {
                member_perp(&q, &e)?
            } else {
                member_of(&q, &e)?
            };
            let form = normalize(&e)?;
            let ideal = if perp { form.perp() } else { form };
            let text = format!(
                "{} of {ideal}",
                if member { "member" } else { "not a member" }
            );
            out(
                text,
                json!({"query": query, "target": target, "perp": perp,
                       "ideal": ideal.to_string(), "member": member}),
            )
        }
        Cmd::Frechet { query, target, .. } => {
            let (q, e) = (parse_query(&query)?, parse_ideal(&target)?);
            let w = frechet_witness(&q, &e)?;
            let ok = check_frechet(&w, &q, &e, &CHECK);
            let witness = checked("Frechet", json!(w), ok, &w.to_string())?;
            out(
                w.to_string(),
                json!({"query": query, "target": target, "witness": witness}),
            )
        }
        Cmd::Idwitness { query, show } => {
            let q = parse_query(&query)?;
            let w = id_witness(&q);
            let text = match &w {
                IdWitness::DominatingBranch(b) => format!("dominating branch {b}"),
                IdWitness::UnboundedFamily(f) => {
                    let first: Vec<String> = f.iter().take(show).map(|s| s.to_string()).collect();
                    format!(
                        "unbounded family at {}: {}, ...",
                        f.position,
                        first.join(", ")
                    )
                }
            };
            let sample: Vec<String> = match &w {
                IdWitness::UnboundedFamily(f) => {
                    f.iter().take(show).map(|s| s.to_string()).collect()
                }
                IdWitness::DominatingBranch(_) => Vec::new(),
            };
            let ok = check_id_witness(&w, &q, &CHECK);
            let mut witness = json!(w);
            witness["checkedAtBudget"] = json!(CHECK);
            if !ok {
                return Err(Failure::Internal(format!(
                    "{text} fails its check at {CHECK:?}"
                )));
            }
            out(
                text,
                json!({"query": query, "witness": witness, "sample": sample}),
            )
        }
        Cmd::Wo { cmd } => run_wo(cmd)?,
        Cmd::Enumerate { term, budget } => {
            let q = parse_query(&term)?;
            let elements = enumerate_query(&q, &budget);
            let text = elements
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            out(
                text,
                json!({"input": term, "budget": budget, "elements": elements}),
            )
        }
        Cmd::Selftest {
            seed,
            trials,
            sequential,
        } => {
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let report = law_suite(seed, trials, exec);
            let lines: Vec<String> = report
                .iter()
                .map(|r| {
                    let mark = if r.passed() { "PASS" } else { "FAIL" };
                    let mut line =
                        format!("{mark} {} {}/{}", r.name, r.trials - r.failures, r.trials);
                    if let Some(c) = &r.first_counterexample {
                        line += &format!(" counterexample: {c}");
                    }
                    line
                })
                .collect();
            let json = json!({"seed": seed, "trials": trials, "laws": report});
            if let Some(bad) = report.iter().find(|r| !r.passed()) {
                return Err(Failure::Internal(format!(
                    "{}\nlaw {} failed",
                    lines.join("\n"),
                    bad.name
                )));
            }
            out(lines.join("\n"), json)
        }
    })
}

fn wo_text(c: &WoClass) -> String {
    match c {
        WoClass::Scattered(f) => format!("SCATTERED {f}"),
        WoClass::NonScattered(e) if e.route.is_empty() => "NON-SCATTERED: the order is QQ".into(),
        WoClass::NonScattered(e) => {
            let steps: Vec<String> = e
                .route
                .iter()
                .map(|s| match s {
                    RouteStep::Rev => "rev".to_string(),
                    RouteStep::Into(i) => format!("part {i}"),
                })
                .collect();
            format!("NON-SCATTERED: copy of QQ via {}", steps.join(", "))
        }
    }
}

fn run_wo(cmd: WoCmd) -> Result<Output, Failure> {
    Ok(match cmd {
        WoCmd::Classify { term } => {
            let c = wo_classify(&parse_lin(&term)?);
            out(wo_text(&c), json!({"input": term, "class": c}))
        }
        WoCmd::Reverse { term } => {
            let t = parse_lin(&term)?;
            let (r, holds) = wo_self_dual(&t);
            if !holds {
                return Err(Failure::Internal(format!("duality fails for {t}")));
            }
            let (a, b) = (wo_classify(&t), wo_classify(&r));
            out(
                format!("{r}\n{} -> {}", wo_text(&a), wo_text(&b)),
                json!({"input": term, "reversed": r.to_string(), "class": a,
                       "reversedClass": b, "dual": holds}),
            )
        }
        WoCmd::Rationalize { term, count } => {
            let t: LinTerm = parse_lin(&term)?;
            let values: Vec<String> = rationalize(&t, count)
                .iter()
                .map(|q| q.to_string())
                .collect();
            out(values.join("\n"), json!({"input": term, "values": values}))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli.cmd) {
        Ok(o) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json value")
                );
            } else {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, kind, message, position) = match &f {
                Failure::Term(Error::Parse(p)) => (1, "parse", f_msg(&f), Some(p.pos)),
                Failure::Term(e) if e.is_precondition() => (2, "precondition", e.to_string(), None),
                Failure::Term(e) => (1, "malformed", e.to_string(), None),
                Failure::Internal(m) => (3, "internal", m.clone(), None),
            };
            if json {
                let v = json!({"error": {"kind": kind, "message": message, "position": position}});
                println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}

fn f_msg(f: &Failure) -> String {
    match f {
        Failure::Term(e) => e.to_string(),
        Failure::Internal(m) => m.clone(),
    }
}
