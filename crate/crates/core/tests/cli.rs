use std::path::PathBuf;

mod common;

use common::data;
use dgraph::cli::run;
use dgraph::graph::InvariantCertificate;


fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn dgraph(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("dgraph").chain(args.iter().copied()), &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn error_code(o: &Outcome) -> String {
    let v: serde_json::Value = serde_json::from_str(o.err.trim()).unwrap();
    assert!(v["message"].is_string());
    v["code"].as_str().unwrap().to_string()
}

#[test]
fn invariant_of_quadratic() {
    let o = dgraph(&["invariant", &data("quad_c3.json")]);
    assert_eq!(o.code, 0, "{}", o.err);
    let cert = InvariantCertificate::from_json(&o.out).unwrap();
    assert_eq!(cert.degree, 2);
    assert_eq!(cert.graph.len(), 1);
    let p = &cert.graph.points()[0];
    assert_eq!(p.position, 0.0);
    assert_eq!(p.label.to_string(), "(2,0,{1}{1})");
}

#[test]
fn invariant_of_monomial_is_empty() {
    let o = dgraph(&["invariant", &data("cube.json")]);
    assert_eq!(o.code, 0);
    let cert = InvariantCertificate::from_json(&o.out).unwrap();
    assert_eq!(cert.degree, 3);
    assert!(cert.graph.is_empty());
}

#[test]
fn invariant_writes_to_file() {
    let path = scratch("quad.cert.json");
    let o = dgraph(&["invariant", &data("quad_c3.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, dgraph(&["invariant", &data("quad_c3.json")]).out);
}

#[test]
fn portraits_and_certificates_are_inputs_too() {
    let o = dgraph(&["invariant", &data("portrait_quadratic.json")]);
    assert_eq!(o.code, 0, "{}", o.err);
    let path = scratch("cubic.cert.json");
    assert_eq!(dgraph(&["invariant", &data("cubic_real.json"), "-o", path.to_str().unwrap()]).code, 0);
    let o = dgraph(&["equiv", path.to_str().unwrap(), &data("cubic_real_conjugate.json")]);
    assert_eq!(o.code, 0, "{}{}", o.out, o.err);
    assert!(o.out.starts_with("EQUIVALENT"));
}

#[test]
fn malformed_input() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{\"coefficients\": [[1, 0], ").unwrap();
    let o = dgraph(&["invariant", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert_eq!(error_code(&o), "PARSE");

    std::fs::write(&path, "{\"coefficients\": [[1, 0], [2, 0]]}").unwrap();
    let o = dgraph(&["invariant", path.to_str().unwrap()]);
    assert_eq!((o.code, error_code(&o)), (2, "INVALID_INPUT".to_string()));

    let o = dgraph(&["invariant", &data("missing.json")]);
    assert_eq!((o.code, error_code(&o)), (2, "IO".to_string()));

    let o = dgraph(&["invariant"]);
    assert_eq!((o.code, error_code(&o)), (2, "USAGE".to_string()));

    let o = dgraph(&["invariant", &data("quad_c3.json"), "--res", "10"]);
    assert_eq!((o.code, error_code(&o)), (2, "CONFIG".to_string()));
}

#[test]
fn help_goes_to_stdout() {
    let o = dgraph(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("invariant"));
    assert!(o.err.is_empty());
}

#[test]
fn equiv_verdicts() {
    let o = dgraph(&["equiv", &data("quad_c3.json"), &data("quad_c5.json")]);
    assert_eq!(o.code, 0);
    assert!(o.out.starts_with("EQUIVALENT"), "{}", o.out);

    let o = dgraph(&["equiv", &data("quad_c3.json"), &data("cubic_real.json")]);
    assert_eq!(o.code, 1);
    assert!(o.out.starts_with("NOT_EQUIVALENT") && o.out.contains("degree"), "{}", o.out);

    let o = dgraph(&["equiv", &data("quad_c3.json"), &data("quad_bounded.json")]);
    assert_eq!(o.code, 1);
    assert!(o.out.starts_with("NOT_EQUIVALENT") && o.out.contains("length"), "{}", o.out);

    let o = dgraph(&["equiv", &data("square.json"), &data("quad_bounded.json")]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("empty"), "{}", o.out);
}

#[test]
fn both_orientations_agree() {
    for name in ["quad_c3.json", "cubic_real.json", "cubic_a.json", "portrait_quadratic.json"] {
        let o = dgraph(&["invariant", &data(name), "--orientation", "both"]);
        assert_eq!(o.code, 0, "{name}: {}", o.err);
        assert_eq!(o.out, dgraph(&["invariant", &data(name), "--orientation", "cw"]).out);
    }
}

#[test]
fn check_reports() {
    let o = dgraph(&["check", &data("cubic_symmetric.json")]);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("genericity: violated"), "{}", o.out);

    let o = dgraph(&["check", &data("quad_c3.json")]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("escaping") && o.out.contains("genericity: ok"), "{}", o.out);

    let o = dgraph(&["check", &data("quad_bounded.json")]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("bounded") && o.out.contains("portrait: empty"), "{}", o.out);

    let o = dgraph(&["invariant", &data("cubic_symmetric.json")]);
    assert_eq!((o.code, error_code(&o)), (2, "GENERICITY".to_string()));
}

#[test]
fn oracle_on_quadratic() {
    let o = dgraph(&["oracle", &data("quad_c3.json"), "--depth", "2", "--res", "512"]);
    assert_eq!(o.code, 0, "{}{}", o.out, o.err);
    assert!(o.out.ends_with("CONSISTENT\n"), "{}", o.out);
    assert!(o.out.contains("depth 0: 1 regions, 2 boundaries"), "{}", o.out);
    assert!(o.out.contains("depth 1: 1 regions, 3 boundaries"), "{}", o.out);
    assert!(o.out.contains("depth 2: 2 regions"), "{}", o.out);

    let o = dgraph(&["oracle", &data("quad_c3.json"), "--corrupt", "--res", "512"]);
    assert_eq!((o.code, error_code(&o)), (2, "USAGE".to_string()));
}

#[test]
fn oracle_catches_a_corrupted_certificate() {
    let o = dgraph(&["oracle", &data("cubic_real.json"), "--depth", "2", "--res", "1024"]);
    assert_eq!(o.code, 0, "{}{}", o.out, o.err);
    let path = scratch("report.json");
    let o = dgraph(&["oracle", &data("cubic_real.json"), "--depth", "2", "--res", "1024", "--corrupt", "-o", path.to_str().unwrap()]);
    assert_eq!(o.code, 1, "{}{}", o.out, o.err);
    assert!(o.out.ends_with("INCONSISTENT\n"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(report.is_object());
}

#[test]
fn renders() {
    let o = dgraph(&["render", &data("quad_c3.json"), "equipotentials", "--res", "256"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.starts_with("<?xml") && o.out.ends_with("</svg>\n"));
    assert_eq!(o.out.matches("<path").count(), 3, "{}", o.out.len());
    assert_eq!(o.out.matches(" Z\"").count(), 3);

    let o = dgraph(&["render", &data("quad_c3.json"), "rays"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out.matches("class=\"ray\"").count(), 2);

    let o = dgraph(&["render", &data("quad_c3.json"), "regions", "--depth", "2", "--res", "256"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let colours: std::collections::BTreeSet<&str> =
        o.out.lines().filter(|l| l.starts_with("<rect x=")).filter_map(|l| l.split("fill=\"").nth(1)).collect();
    assert_eq!(colours.len(), 2);

    let path = scratch("regions.csv");
    let o = dgraph(&["render", &data("quad_c3.json"), "regions", "--res", "128", "-o", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let csv = std::fs::read_to_string(path).unwrap();
    assert!(csv.contains("\r\n"));

    let o = dgraph(&["render", &data("cube.json"), "rays"]);
    assert_eq!(o.code, 2);
}

#[test]
fn renders_are_repeatable() {
    let args = ["render", &data("cubic_a.json"), "equipotentials", "--res", "256"];
    assert_eq!(dgraph(&args).out, dgraph(&args).out);
}
