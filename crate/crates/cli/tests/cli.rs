use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn contrasim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contrasim"))
        .args(args)
        .output()
        .unwrap()
}

fn check(file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec!["check", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    contrasim(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn philosophers_are_equivalent() {
    let out = check(
        "phil.ccs",
        &[
            "--notion",
            "contrasim",
            "--direction",
            "equivalence",
            "--lhs",
            "Pc",
            "--rhs",
            "Pp",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: Pc ~C Pp is true"));
}

#[test]
fn aut_twin_gives_the_same_verdicts() {
    let both = ["--direction", "equivalence", "--lhs", "0", "--rhs", "1"];
    assert_eq!(check("phil.aut", &both).status.code(), Some(0));
    assert_eq!(check("locked.aut", &both).status.code(), Some(1));
    assert_eq!(check("instable.aut", &both).status.code(), Some(1));
    let ws = |l: &str, r: &str| {
        check(
            "phil.aut",
            &["--notion", "weak-sim", "--lhs", l, "--rhs", r],
        )
        .status
        .code()
    };
    assert_eq!(ws("1", "0"), Some(0));
    assert_eq!(ws("0", "1"), Some(1));
}

#[test]
fn locked_certificate_splits_the_processes() {
    let out = check(
        "locked.ccs",
        &["--lhs", "Pc", "--rhs", "Pl", "--emit-certificate"],
    );
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let formula = text
        .lines()
        .find_map(|l| l.strip_prefix("formula: "))
        .unwrap_or_else(|| panic!("no certificate line in\n{text}"));
    let path = fixture("locked.ccs");
    let sat = |state: &str| {
        contrasim(&[
            "sat",
            path.to_str().unwrap(),
            "--state",
            state,
            "--formula",
            formula,
        ])
        .status
        .code()
    };
    assert_eq!(sat("Pc"), Some(0));
    assert_eq!(sat("Pl"), Some(1));
}

#[test]
fn reflexive_check_holds() {
    let out = check(
        "trivial.ccs",
        &["--lhs", "X", "--rhs", "X", "--emit-certificate"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out)
        .lines()
        .any(|l| l.starts_with("relation: {") && l.contains("(X, X)")));
}

#[test]
fn baselines_on_instable_choice() {
    let base = ["--lhs", "Pab", "--rhs", "Pb"];
    let run = |extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        check("instable.ccs", &args).status.code()
    };
    assert_eq!(
        run(&[
            "--notion",
            "naive-contrasim-1step",
            "--direction",
            "equivalence"
        ]),
        Some(0)
    );
    assert_eq!(
        run(&["--notion", "bounded-word-game", "--word-bound", "1"]),
        Some(0)
    );
    assert_eq!(
        run(&["--notion", "bounded-word-game", "--word-bound", "2"]),
        Some(1)
    );
    assert_eq!(run(&["--notion", "weak-bisim"]), Some(1));
    assert_eq!(run(&["--notion", "strong-bisim"]), Some(1));
}

#[test]
fn errors_exit_with_two() {
    let missing = contrasim(&["check", "no/such/file.ccs", "--lhs", "A", "--rhs", "B"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));
    assert_eq!(
        check("phil.ccs", &["--lhs", "Pc", "--rhs", "Nobody"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        check("phil.aut", &["--lhs", "0", "--rhs", "99"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        check("phil.aut", &["--lhs", "0", "--rhs", "Pp"])
            .status
            .code(),
        Some(2)
    );
    let budget = check(
        "phil.ccs",
        &["--lhs", "Pc", "--rhs", "Pp", "--max-states", "3"],
    );
    assert_eq!(budget.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&budget.stderr).contains("budget of 3"));
    let no_bound = check(
        "instable.ccs",
        &[
            "--lhs",
            "Pab",
            "--rhs",
            "Pb",
            "--notion",
            "bounded-word-game",
        ],
    );
    assert_eq!(no_bound.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ccs");
    std::fs::write(&bad, "P = a.;\n").unwrap();
    let out = contrasim(&["check", bad.to_str().unwrap(), "--lhs", "P", "--rhs", "P"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:7"));
    let unknown_format = dir.path().join("model.txt");
    std::fs::write(&unknown_format, "des (0,0,1)\n").unwrap();
    let out = contrasim(&[
        "check",
        unknown_format.to_str().unwrap(),
        "--lhs",
        "0",
        "--rhs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = contrasim(&[
        "check",
        unknown_format.to_str().unwrap(),
        "--format",
        "aut",
        "--lhs",
        "0",
        "--rhs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

fn json_report(file: &str, extra: &[&str], dir: &tempfile::TempDir, name: &str) -> String {
    let path = dir.path().join(name);
    let mut args = extra.to_vec();
    args.extend_from_slice(&["--emit-json", path.to_str().unwrap(), "--omit-timings"]);
    check(file, &args);
    std::fs::read_to_string(path).unwrap()
}

fn is_count(v: &Value) -> bool {
    v.is_null() || v.is_u64()
}

fn valid_certificate(v: &Value) -> bool {
    match v.get("kind").and_then(Value::as_str) {
        Some("formula") => v["formula"].is_string(),
        Some("relation") => v["pairs"].as_array().is_some_and(|pairs| {
            pairs.iter().all(|p| {
                p.as_array()
                    .is_some_and(|p| p.len() == 2 && p.iter().all(Value::is_string))
            })
        }),
        _ => v.is_null(),
    }
}

#[test]
fn json_report_schema_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let text = json_report(
        "phil.ccs",
        &["--lhs", "Pc", "--rhs", "Pp", "--direction", "equivalence"],
        &dir,
        "phil.json",
    );
    assert!(text.contains("\"verdict\": true"));
    let keys = [
        "verdict",
        "notion",
        "direction",
        "lhs",
        "rhs",
        "certificate",
        "game_positions",
        "game_moves",
        "solve_ms",
        "results",
        "total_ms",
    ];
    let offsets: Vec<usize> = keys
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(
        offsets.windows(2).all(|w| w[0] < w[1]),
        "keys out of order:\n{text}"
    );

    let v: Value = serde_json::from_str(&text).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), keys.len());
    assert_eq!(v["notion"], "contrasim");
    assert_eq!(v["direction"], "equivalence");
    assert_eq!(
        (v["lhs"].as_str(), v["rhs"].as_str()),
        (Some("Pc"), Some("Pp"))
    );
    assert!(valid_certificate(&v["certificate"]));
    assert!(is_count(&v["game_positions"]) && is_count(&v["game_moves"]));
    assert_eq!(v["solve_ms"].as_f64(), Some(0.0));
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        assert!(r["holds"].is_boolean());
        assert!(r["lhs"].is_string() && r["rhs"].is_string());
        assert!(valid_certificate(&r["certificate"]));
        assert!(r["game_positions"].is_u64() && r["game_moves"].is_u64());
    }
    let total: u64 = results
        .iter()
        .map(|r| r["game_positions"].as_u64().unwrap())
        .sum();
    assert_eq!(v["game_positions"].as_u64(), Some(total));

    let failing = json_report(
        "locked.ccs",
        &["--lhs", "Pc", "--rhs", "Pl"],
        &dir,
        "locked.json",
    );
    let v: Value = serde_json::from_str(&failing).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["certificate"]["kind"], "formula");

    let oracle = json_report(
        "phil.ccs",
        &["--lhs", "Pp", "--rhs", "Pc", "--notion", "weak-sim"],
        &dir,
        "ws.json",
    );
    let v: Value = serde_json::from_str(&oracle).unwrap();
    assert!(v["game_positions"].is_null());
    assert_eq!(v["certificate"]["kind"], "relation");
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--lhs", "Pc", "--rhs", "Pl", "--direction", "equivalence"];
    let first = json_report("locked.ccs", &args, &dir, "a.json");
    let second = json_report("locked.ccs", &args, &dir, "b.json");
    assert_eq!(first, second);
    let human = |_: ()| {
        stdout(&check(
            "locked.ccs",
            &[
                "--lhs",
                "Pc",
                "--rhs",
                "Pl",
                "--emit-certificate",
                "--omit-timings",
            ],
        ))
    };
    assert_eq!(human(()), human(()));
}

/// Tokens of the DOT language subset used by the exporter.
#[derive(Debug, PartialEq)]
enum Tok {
    Id(String),
    Str(String),
    Punct(&'static str),
}

fn dot_tokens(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut id = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                id.push(chars.next().unwrap());
            }
            out.push(Tok::Id(id));
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next().ok_or("unterminated string")? {
                    '"' => break,
                    '\\' => s.push(chars.next().ok_or("dangling escape")?),
                    c => s.push(c),
                }
            }
            out.push(Tok::Str(s));
        } else if c == '-' {
            chars.next();
            if chars.next() != Some('>') {
                return Err("expected ->".into());
            }
            out.push(Tok::Punct("->"));
        } else {
            chars.next();
            let p = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                '=' => "=",
                ',' => ",",
                ';' => ";",
                other => return Err(format!("stray `{other}`")),
            };
            out.push(Tok::Punct(p));
        }
    }
    Ok(out)
}

struct DotGraph {
    nodes: Vec<(String, Vec<(String, String)>)>,
    edges: Vec<(String, String)>,
}

fn lint_dot(src: &str) -> Result<DotGraph, String> {
    let toks = dot_tokens(src)?;
    let mut i = 0;
    let id = |i: &mut usize| match toks.get(*i) {
        Some(Tok::Id(s)) | Some(Tok::Str(s)) => {
            *i += 1;
            Ok(s.clone())
        }
        other => Err(format!("expected an id, found {other:?}")),
    };
    let punct = |i: &mut usize, p: &str| match toks.get(*i) {
        Some(Tok::Punct(q)) if *q == p => {
            *i += 1;
            Ok(())
        }
        other => Err(format!("expected `{p}`, found {other:?}")),
    };
    if id(&mut i)? != "digraph" {
        return Err("not a digraph".into());
    }
    if matches!(toks.get(i), Some(Tok::Id(_))) {
        i += 1;
    }
    punct(&mut i, "{")?;
    let mut graph = DotGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    loop {
        if punct(&mut i, "}").is_ok() {
            break;
        }
        let head = id(&mut i)?;
        if punct(&mut i, "->").is_ok() {
            graph.edges.push((head, id(&mut i)?));
        } else {
            let mut attrs = Vec::new();
            if punct(&mut i, "[").is_ok() {
                while punct(&mut i, "]").is_err() {
                    let key = id(&mut i)?;
                    punct(&mut i, "=")?;
                    attrs.push((key, id(&mut i)?));
                    let _ = punct(&mut i, ",");
                }
            }
            if head != "node" && head != "edge" && head != "graph" {
                graph.nodes.push((head, attrs));
            }
        }
        let _ = punct(&mut i, ";");
    }
    if i != toks.len() {
        return Err("trailing tokens".into());
    }
    for (from, to) in &graph.edges {
        for end in [from, to] {
            if !graph.nodes.iter().any(|(n, _)| n == end) {
                return Err(format!("edge to undeclared node {end}"));
            }
        }
    }
    Ok(graph)
}

#[test]
fn dot_export_lints_and_matches_the_game() {
    let dir = tempfile::tempdir().unwrap();
    let dot_path = dir.path().join("game.dot");
    let json_path = dir.path().join("game.json");
    let out = check(
        "phil.ccs",
        &[
            "--lhs",
            "Pc",
            "--rhs",
            "Pp",
            "--emit-game-dot",
            dot_path.to_str().unwrap(),
            "--emit-json",
            json_path.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    let graph = lint_dot(&dot).unwrap();
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(
        graph.nodes.len() as u64,
        report["game_positions"].as_u64().unwrap()
    );
    assert_eq!(
        graph.edges.len() as u64,
        report["game_moves"].as_u64().unwrap()
    );

    let attr = |node: &(String, Vec<(String, String)>), key: &str| {
        node.1
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
    };
    let initial = graph
        .nodes
        .iter()
        .find(|n| attr(n, "style").as_deref() == Some("bold"))
        .unwrap();
    assert_eq!(attr(initial, "label").as_deref(), Some("(Pc, {Pp})_a"));
    assert_eq!(attr(initial, "shape").as_deref(), Some("box"));
    for node in &graph.nodes {
        let label = attr(node, "label").unwrap();
        let shape = attr(node, "shape").unwrap();
        let expected = if label.ends_with("_a") {
            "box"
        } else {
            "circle"
        };
        assert_eq!(shape, expected, "{label}");
    }
    assert!(graph
        .nodes
        .iter()
        .any(|n| attr(n, "label").unwrap().starts_with("Sim(op, ")));
    assert!(graph
        .nodes
        .iter()
        .any(|n| attr(n, "label").unwrap().starts_with("Swap(")));
}

#[test]
fn game_export_requires_the_game_notion() {
    let dir = tempfile::tempdir().unwrap();
    let dot_path = dir.path().join("game.dot");
    let out = check(
        "phil.ccs",
        &[
            "--lhs",
            "Pc",
            "--rhs",
            "Pp",
            "--notion",
            "weak-sim",
            "--emit-game-dot",
            dot_path.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dot_path.exists());
}

#[test]
fn exporter_output_for_an_empty_game_lints() {
    let dot = contrasim_cli::dot_digraph(&[], &[], None);
    let graph = lint_dot(&dot).unwrap();
    assert!(graph.nodes.is_empty() && graph.edges.is_empty());
}

#[test]
fn expand_reproduces_the_aut_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (name, roots) in [
        ("phil", ["Pc", "Pp"]),
        ("locked", ["Pc", "Pl"]),
        ("instable", ["Pab", "Pb"]),
    ] {
        let out_path = dir.path().join(format!("{name}.aut"));
        let src = fixture(&format!("{name}.ccs"));
        let out = contrasim(&[
            "expand",
            src.to_str().unwrap(),
            "--root",
            roots[0],
            "--root",
            roots[1],
            "-o",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert_eq!(
            std::fs::read_to_string(&out_path).unwrap(),
            std::fs::read_to_string(fixture(&format!("{name}.aut"))).unwrap()
        );
    }
}

#[test]
fn sat_on_aut_input() {
    let path = fixture("locked.aut");
    let formula = "<e>~(<e><op><e><aEats>T)";
    let sat = |state: &str| {
        contrasim(&[
            "sat",
            path.to_str().unwrap(),
            "--state",
            state,
            "--formula",
            formula,
        ])
    };
    assert_eq!(sat("0").status.code(), Some(0));
    assert_eq!(sat("1").status.code(), Some(1));
    assert_eq!(
        contrasim(&[
            "sat",
            path.to_str().unwrap(),
            "--state",
            "0",
            "--formula",
            "<e><nope>T"
        ])
        .status
        .code(),
        Some(2)
    );
}
