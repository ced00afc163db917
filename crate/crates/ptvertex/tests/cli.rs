use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use ptvertex::cli::{run, CliError};
use ptvertex_core::arith::parse::{parse_ratfunc, parse_rational};
use ptvertex_core::localization::{pt_vertex_series, Mode, SeriesValues};
use ptvertex_core::Error;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["ptvertex"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn pairs(v: &Value) -> Vec<(i64, String)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|t| (t["qPower"].as_i64().unwrap(), t["coefficient"].as_str().unwrap().to_string()))
        .collect()
}

fn ints(v: &[(i64, i64)]) -> Vec<(i64, String)> {
    v.iter().map(|(n, c)| (*n, c.to_string())).collect()
}

fn schema(name: &str) -> jsonschema::Validator {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/");
    let read = |f: &str| -> Value {
        serde_json::from_str(&std::fs::read_to_string(format!("{}{}", dir, f)).unwrap()).unwrap()
    };
    let mut meta = read("metadata.schema.json");
    meta.as_object_mut().unwrap().retain(|k, _| k != "$schema" && k != "$id");
    let mut s = read(name);
    s["properties"]["metadata"] = meta;
    jsonschema::validator_for(&s).unwrap()
}

fn exit_code(args: &[&str], env: Option<(&str, &str)>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ptvertex"));
    cmd.args(args);
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn cy_vertex_example() {
    let r = json(&["vertex", "cy", "--legs", "1;2;1", "--order", "0"]);
    assert_eq!(pairs(&r["terms"]), ints(&[(-3, -1), (-2, 2), (-1, -4), (0, 7)]));
    assert_eq!(pairs(&r["minusQForm"]), ints(&[(-3, 1), (-2, 2), (-1, 4), (0, 7)]));
    assert_eq!(r["metadata"]["conjectural"], Value::Bool(true));
    assert_eq!(r["lowest"], -3);
}

#[test]
fn macmahon_example() {
    let r = json(&["vertex", "dt", "--legs", "-;-;-", "--order", "3", "--cy"]);
    assert_eq!(pairs(&r["terms"]), ints(&[(0, 1), (1, -1), (2, 3), (3, -6)]));
    assert_eq!(pairs(&r["minusQForm"]), ints(&[(0, 1), (1, 1), (2, 3), (3, 6)]));
}

#[test]
fn correspondence_example() {
    let r = json(&["check", "correspondence", "--legs", "1;2;1", "--order", "3", "--cy"]);
    assert_eq!(r["match"], Value::Bool(true));
    assert_eq!(r["mismatch"].as_array().unwrap().len(), 0);
}

#[test]
fn two_leg_checks_are_not_conjectural() {
    let r = json(&["check", "cy-specialization", "--legs", "1;1;-", "--order", "1"]);
    assert_eq!(r["match"], Value::Bool(true));
    assert_eq!(r["metadata"]["conjectural"], Value::Bool(false));
    let r = json(&["check", "con-parity", "--legs", "2;1;-", "--max-length", "4"]);
    assert_eq!(r["match"], Value::Bool(true));
    let r = json(&["vertex", "equivariant", "--legs", "1;1;1", "--order", "-1"]);
    assert_eq!(r["metadata"]["conjectural"], Value::Bool(false));
}

const COMMANDS: &[&[&str]] = &[
    &["enumerate", "--legs", "1;2;1", "--max-length", "3"],
    &["check", "con-parity", "--legs", "1;1;-", "--order", "3"],
    &["check", "con-parity", "--legs", "1;1;1", "--max-length", "2"],
    &["vertex", "cy", "--legs", "1;2;1", "--order", "1"],
    &["vertex", "equivariant", "--legs", "1;1;-", "--order", "1"],
    &["vertex", "equivariant", "--legs", "2;-;1", "--order", "1", "--mode", "numeric", "--seed", "7"],
    &["vertex", "descendent", "--legs", "1;-;-", "--tau", "-1,2", "--order", "2"],
    &["vertex", "dt", "--legs", "1;-;-", "--order", "1"],
    &["vertex", "dt", "--legs", "1;2;1", "--order", "0", "--cy"],
    &["check", "correspondence", "--legs", "1;-;-", "--order", "2", "--eval", "1/2,3,-5"],
    &["check", "cy-specialization", "--legs", "1;1;1", "--order", "-1", "--assume-conjectures"],
    &["toric", "assemble", "--graph", "conifold", "--beta", "0=1", "--order", "4"],
    &["toric", "assemble", "--graph", "localP2", "--beta", "0=1", "--order", "2", "--theory", "dt"],
    &["toric", "assemble", "--graph", "conifold", "--beta", "0=0", "--order", "1", "--equivariant"],
    &["toric", "assemble", "--graph", "p3", "--beta", "0=1", "--order", "2", "--tau", "5", "--mode", "numeric"],
];

#[test]
fn reports_match_schemas() {
    let validators = [
        ("enumerate", schema("enumerate-report.schema.json")),
        ("con-parity", schema("parity-report.schema.json")),
        ("correspondence", schema("check-report.schema.json")),
        ("cy-specialization", schema("check-report.schema.json")),
    ];
    let series = schema("series-report.schema.json");
    for args in COMMANDS {
        let v = json(args);
        let which = validators.iter().find(|(k, _)| args.contains(k)).map(|(_, s)| s).unwrap_or(&series);
        let errors: Vec<String> = which.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{:?}: {:?}", args, errors);
    }
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in COMMANDS {
        for format in ["json", "csv"] {
            let outs: Vec<String> = ["1", "2", "5"]
                .iter()
                .map(|t| {
                    let mut a = args.to_vec();
                    a.extend_from_slice(&["--threads", t, "--format", format]);
                    ok(&a)
                })
                .collect();
            assert!(outs.windows(2).all(|w| w[0] == w[1]), "{:?} {}", args, format);
        }
    }
}

#[test]
fn thread_count_from_environment() {
    let args = ["vertex", "equivariant", "--legs", "1;1;-", "--order", "1"];
    let (c1, a, _) = exit_code(&args, Some(("PTVERTEX_THREADS", "1")));
    let (c2, b, _) = exit_code(&args, Some(("PTVERTEX_THREADS", "3")));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (c, _, err) = exit_code(&args, Some(("PTVERTEX_THREADS", "many")));
    assert_eq!(c, 2, "{}", err);
}

#[test]
fn symbolic_coefficients_round_trip() {
    let l = "1;1;-".parse().unwrap();
    let SeriesValues::Symbolic(want) = pt_vertex_series(&l, 1, &Mode::Symbolic).unwrap().values else { panic!() };
    let r = json(&["vertex", "equivariant", "--legs", "1;1;-", "--order", "1"]);
    let got = pairs(&r["terms"]);
    assert_eq!(got.len(), want.terms().count());
    for ((n, c), (m, w)) in got.iter().zip(want.terms()) {
        assert_eq!(*n, m);
        assert_eq!(&parse_ratfunc(c).unwrap(), w);
    }
}

#[test]
fn every_coefficient_reparses() {
    for args in COMMANDS {
        let v = json(args);
        let ring = v["metadata"]["coefficientRing"].as_str().unwrap().to_string();
        let mut strings = Vec::new();
        for key in ["terms", "minusQForm"] {
            if let Some(a) = v.get(key) {
                strings.extend(pairs(a).into_iter().map(|(_, c)| c));
            }
        }
        if let Some(rows) = v.get("rows").and_then(|r| r.as_array()) {
            for row in rows {
                for key in ["lhs", "rhs"] {
                    if let Some(s) = row.get(key).and_then(|x| x.as_str()) {
                        strings.push(s.to_string());
                    }
                }
            }
        }
        for s in strings {
            let f = parse_ratfunc(&s).unwrap_or_else(|e| panic!("{:?}: {:?} {}", args, s, e));
            assert_eq!(f.to_string(), s, "canonical form");
            if ring == "integer" {
                assert!(s.parse::<BigInt>().is_ok(), "{}", s);
            }
            if ring == "rational" {
                let _: BigRational = parse_rational(&s).unwrap();
            }
        }
    }
}

#[test]
fn seeds_are_deterministic() {
    let base = ["vertex", "equivariant", "--legs", "1;-;-", "--order", "2", "--mode", "numeric"];
    let a = ok(&base);
    let mut zero = base.to_vec();
    zero.extend_from_slice(&["--seed", "0"]);
    assert_eq!(a, ok(&zero));
    let mut other = base.to_vec();
    other.extend_from_slice(&["--seed", "1"]);
    assert_ne!(a, ok(&other));
}

#[test]
fn csv_has_one_row_per_term() {
    let text = ok(&["vertex", "cy", "--legs", "1;2;1", "--order", "0", "--format", "csv"]);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rd.headers().unwrap(), vec!["qPower", "coefficient"]);
    let rows: Vec<(i64, i64)> = rd.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows, vec![(-3, -1), (-2, 2), (-1, -4), (0, 7)]);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["vertex", "cy", "--legs", "1;2", "--order", "0"], 2),
        (&["vertex", "cy", "--legs", "1;2;1"], 2),
        (&["frobnicate"], 2),
        (&["vertex", "equivariant", "--legs", "1;-;-", "--order", "1", "--eval", "1,2"], 2),
        (&["vertex", "cy", "--legs", "1;2;1", "--order", "-4"], 2),
        (&["check", "cy-specialization", "--legs", "1;1;1", "--order", "0"], 2),
        (&["toric", "assemble", "--graph", "no-such-graph", "--beta", "0=1", "--order", "1"], 2),
        (&["toric", "assemble", "--graph", "conifold", "--beta", "0:1", "--order", "1"], 2),
        (&["toric", "assemble", "--graph", "p3", "--beta", "0=1", "--order", "1", "--theory", "dt"], 2),
        (&["vertex", "equivariant", "--legs", "1;-;-", "--order", "1", "--eval", "0,1,1"], 3),
        (&["vertex", "dt", "--legs", "-;-;-", "--order", "1", "--eval", "1,0,2"], 3),
        (&["vertex", "cy", "--legs", "1;2;1", "--order", "0"], 0),
        (&["--help"], 0),
    ];
    for (args, want) in cases {
        let (code, out, err) = exit_code(args, None);
        assert_eq!(code, *want, "{:?}: {}", args, err);
        if *want != 0 {
            assert!(out.is_empty());
            assert!(!err.is_empty());
        }
    }
}

#[test]
fn invalid_graph_file_is_rejected() {
    let dir = std::env::temp_dir().join(format!("ptvertex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let bad = r#"{"vertices": [{"id": 0, "slots": {"1": 0, "2": null, "3": null}}],
                  "edges": [{"id": 0, "ends": [[0, 1], [1, 1]], "m": -1, "mprime": -1, "classId": 0}],
                  "cy": true}"#;
    std::fs::write(&path, bad).unwrap();
    let (code, _, err) =
        exit_code(&["toric", "assemble", "--graph", path.to_str().unwrap(), "--beta", "0=1", "--order", "1"], None);
    assert_eq!(code, 2);
    assert!(err.contains("invalid toric graph"), "{}", err);
    std::fs::write(&path, "{").unwrap();
    let (code, _, _) =
        exit_code(&["toric", "assemble", "--graph", path.to_str().unwrap(), "--beta", "0=1", "--order", "1"], None);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn internal_failures_map_to_four() {
    let internal = [
        Error::NonCancellation { context: "x".into(), detail: "y".into() },
        Error::NegativeObstruction { monomial: "t1".into() },
        Error::DivisionByZero,
        Error::NonInvertible("0".into()),
        Error::InvalidConfiguration("x".into()),
    ];
    for e in internal {
        assert_eq!(CliError::from(e).exit_code(), 4);
    }
    assert_eq!(CliError::from(Error::DegenerateEvaluationPoint { form: "s1".into() }).exit_code(), 3);
    assert_eq!(CliError::from(Error::Parse("x".into())).exit_code(), 2);
}

#[test]
fn equivariant_degree_zero_warns() {
    let r = json(&["toric", "assemble", "--graph", "conifold", "--beta", "0=0", "--order", "1", "--equivariant"]);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(r["metadata"]["mode"], "symbolic");
}
