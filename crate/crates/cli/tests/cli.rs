use std::process::{Command, Output};

use serde_json::Value;
use skewrank::exterior::{group_action, TensorFile};
use skewrank::linalg::Matrix;
use skewrank::orbit::{canonical_form, parse_canonical_forms, ORBIT_DIMS};
use skewrank::poly::parse_ideal;
use skewrank::FieldContext;

fn skewrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewrank"))
        .args(args)
        .env_remove("SKEWRANK_PRIME")
        .env_remove("SKEWRANK_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn contact_on_gr_2_9_with_five_points() {
    let out = skewrank(&["contact", "--k", "2", "--n", "9", "--r", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["command"], "contact");
    assert_eq!(doc["records"][0]["kernel"], 1);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["contact", "--k", "2", "--n", "7", "--r", "2", "--seed", "11"];
    assert_eq!(skewrank(&args).stdout, skewrank(&args).stdout);
}

#[test]
fn env_overrides_seed_and_prime() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewrank"))
        .args(["dual", "--orbit", "II"])
        .env("SKEWRANK_SEED", "99")
        .env("SKEWRANK_PRIME", "1000003")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["seed"], 99);
    assert_eq!(doc["modulus"], 1000003);
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_skewrank"))
        .args(["dual", "--orbit", "II", "--seed", "7"])
        .env("SKEWRANK_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 7);
}

#[test]
fn table1_markdown() {
    let out = skewrank(&["orbits", "--table1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| Orbit") && !l.starts_with("| ---"))
        .map(|l| l.trim_matches('|').split('|').map(str::trim).collect())
        .collect();
    assert_eq!(rows.len(), 23);
    for (row, want) in rows.iter().zip(ORBIT_DIMS) {
        assert_eq!(row[2].parse::<usize>().unwrap(), want, "{row:?}");
    }
    assert_eq!(rows[18][0], "XIX");
    assert_eq!(rows[18][3], "32");
}

#[test]
fn dual_of_xix() {
    let out = skewrank(&["dual", "--orbit", "xix"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json(&out)["records"][0];
    assert_eq!(rec["dual_dim"], 32);
    assert_eq!(rec["partner"], "V");
    assert_eq!(rec["consistent"], true);
}

#[test]
fn classify_transformed_form() {
    let ctx = FieldContext::default();
    let f = ctx.field;
    let g = Matrix::random_invertible(&f, 8, &mut ctx.rng(&[3]));
    let t = group_action(&f, &g, &canonical_form(&f, "VII".parse().unwrap())).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tensor.json");
    std::fs::write(&path, TensorFile::from_tensor(&f, &t).to_json()).unwrap();
    let out = skewrank(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["records"][0]["classification"]["orbit"], "VII");
}

#[test]
fn export_forms_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("forms.txt");
    let out = skewrank(&["orbits", "--export-forms", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let forms = parse_canonical_forms(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(forms.len(), 23);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 24);
}

#[test]
fn tcl_with_fixed_planes_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    let out = skewrank(&[
        "tcl",
        "--k",
        "2",
        "--n",
        "7",
        "--r",
        "3",
        "--paper-points",
        "--dump",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json(&out)["records"][0];
    assert_eq!(rec["outcome"]["dimension"], 5);
    let gens = parse_ideal(&FieldContext::default().field, &std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(gens.len(), rec["generators"].as_u64().unwrap() as usize);
}

#[test]
fn fixed_planes_need_the_matching_case() {
    let out = skewrank(&["tcl", "--k", "2", "--n", "8", "--r", "3", "--paper-points"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(!json(&out)["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn scroll_demo() {
    let out = skewrank(&["scroll", "--demo"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json(&out)["records"][0];
    assert_eq!(rec["terracini_dim"], 110);
    assert_eq!(rec["hilbert"]["h3"], 30);
    assert_eq!(rec["membership_pass"], 50);
    assert_eq!(rec["contact_kernel"], 1);
}

#[test]
fn oracle_passes() {
    let out = skewrank(&["oracle", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("| component dimensions | yes |"));
}

#[test]
fn small_scan_as_csv() {
    let out = skewrank(&["scan", "--nmax", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let defective: Vec<(String, String, String)> = reader
        .records()
        .map(Result::unwrap)
        .filter(|c| &c[col("defect")] != "0")
        .map(|c| (c[col("case.k")].to_string(), c[col("case.n")].to_string(), c[col("case.r")].to_string()))
        .collect();
    let mut beyond: Vec<String> = defective
        .iter()
        .filter(|(k, _, _)| k != "1")
        .map(|(k, n, r)| format!("{k},{n},{r}"))
        .collect();
    beyond.sort();
    assert_eq!(beyond, ["2,6,3", "2,8,4", "3,7,3", "3,7,4"]);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(skewrank(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(skewrank(&["contact", "--k", "2"]).status.code(), Some(64));
    assert_eq!(skewrank(&["scan", "--format", "xml"]).status.code(), Some(64));
    assert_eq!(skewrank(&["--help"]).status.code(), Some(0));
    assert_eq!(skewrank(&["--version"]).status.code(), Some(0));
    assert_eq!(skewrank(&["--prime", "1000", "dual", "--orbit", "II"]).status.code(), Some(64));
}
