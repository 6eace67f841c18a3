use std::path::PathBuf;
use std::process::{Command, Output};

use abelcone::canring::CanonicalClass;
use abelcone::scalar::rat;
use abelcone::{CanonicalRing, Rational as Q};
use abelcone_cli::ClassDocument;
use proptest::prelude::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelcone")).args(args).env_remove("ABELCONE_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_doc(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("abelcone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn mu_t_doc(name: &str, t: &str) -> PathBuf {
    write_doc(name, &format!(r#"{{"g": 2, "degree": 2, "coeffs": {{"t1*t2": "4", "l^2": "{t}"}}}}"#))
}

#[test]
fn product_examples() {
    let x = write_doc("p_x.json", r#"{"g": 2, "degree": 2, "coeffs": {"t1*t2": "4", "l^2": "1"}}"#);
    let y = write_doc("p_y.json", r#"{"g": 2, "degree": 2, "coeffs": {"t1^2": "2", "t2^2": "2", "l^2": "-1"}}"#);
    let o = bin(&["product", x.to_str().unwrap(), y.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "-8"));

    let l2 = write_doc("p_l2.json", r#"{"g": 2, "degree": 2, "coeffs": {"l^2": "1"}}"#);
    let o = bin(&["product", l2.to_str().unwrap(), l2.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "24");

    let t1 = write_doc("p_t1.json", r#"{"g": 1, "degree": 1, "coeffs": {"t1": "1"}}"#);
    let o = bin(&["product", t1.to_str().unwrap(), t1.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "0"));
}

#[test]
fn product_below_top_and_overflow() {
    let t1 = write_doc("q_t1.json", r#"{"g": 2, "degree": 1, "coeffs": {"t1": "1"}}"#);
    let t2 = write_doc("q_t2.json", r#"{"g": 2, "degree": 1, "coeffs": {"t2": "1/2"}}"#);
    let o = bin(&["product", t1.to_str().unwrap(), t2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = ClassDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.degree, 2);
    assert_eq!(serde_json::to_value(&doc.coeffs).unwrap(), serde_json::json!({"t1*t2": "1/2"}));

    let top = write_doc("q_top.json", r#"{"g": 2, "degree": 4, "coeffs": {"omega": "1"}}"#);
    let o = bin(&["product", top.to_str().unwrap(), t1.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "0"));
    assert!(stderr(&o).contains("exceeds 2g"));
}

#[test]
fn member_examples_and_exit_codes() {
    let m32 = mu_t_doc("m32.json", "3/2");
    let o = bin(&["member", "nef", m32.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Member"));

    let m1110 = mu_t_doc("m1110.json", "11/10");
    let o = bin(&["member", "weak", m1110.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "NonMember");
    assert_eq!(v["certificate"]["kind"], "covectors");
    let value = abelcone::scalar::parse_rational(v["certificate"]["value"].as_str().unwrap()).unwrap();
    assert!(value < Q::from_integer(0.into()));

    let zero = write_doc("zero.json", r#"{"g": 2, "degree": 2, "coeffs": {}}"#);
    let o = bin(&["member", "semi", zero.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let m151 = mu_t_doc("m151.json", "151/100");
    assert_eq!(bin(&["member", "nef", m151.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sym2_unknown_on_a_coarse_grid() {
    // (θ₁ + θ₂)²
    let x = write_doc("s_x.json", r#"{"g": 2, "degree": 2, "coeffs": {"t1^2": "1", "t1*t2": "2", "t2^2": "1", "t1*l": "0"}}"#);
    let o = bin(&["member", "sym2", x.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["member", "sym2", x.to_str().unwrap(), "--grid", "0,1"]);
    // grid {0} ∪ {∞}: θ₁², θ₁θ₂, θ₂² are all available
    assert_eq!(o.status.code(), Some(0));
    let mu0 = mu_t_doc("s_mu0.json", "0");
    let o = bin(&["member", "sym2", mu0.to_str().unwrap(), "--grid", "0,1", "--float"]);
    assert_eq!(o.status.code(), Some(0));
    let y = write_doc("s_y.json", r#"{"g": 2, "degree": 2, "coeffs": {"t1^2": "1", "t1*t2": "2", "t2^2": "1", "t1*l": "1", "t2*l": "1"}}"#);
    let coarse = bin(&["member", "sym2", y.to_str().unwrap(), "--grid", "0,1"]);
    let fine = bin(&["decompose", y.to_str().unwrap()]);
    assert_eq!(coarse.status.code(), Some(3));
    assert_eq!(fine.status.code(), Some(0));
    assert!(stdout(&fine).contains("theta("));
}

#[test]
fn errors_exit_2() {
    let dup = write_doc("dup.json", "{\"g\": 2, \"degree\": 2,\n  \"coeffs\": {\"l^2\": \"1\", \"l^2\": \"2\"}}");
    let o = bin(&["member", "semi", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));

    let deg1 = write_doc("deg1.json", r#"{"g": 2, "degree": 1, "coeffs": {"l": "1"}}"#);
    assert_eq!(bin(&["member", "nef", deg1.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bin(&["member", "psef1", deg1.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(bin(&["member", "semi", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(bin(&["cm-witness", "--n", "4", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn verify_paper_relations_g3() {
    let o = bin(&["verify-paper", "--only", "relations", "--g", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("PASS") && l.contains("lambda^6 = -720")));
    let o = bin(&["verify-paper", "--only", "products", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["items"].as_array().unwrap().len(), 15);
    assert!(v["items"][0]["claim"].is_string());
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_abelcone"));
        c.args(args).env_remove("ABELCONE_SEED");
        if let Some(s) = env {
            c.env("ABELCONE_SEED", s);
        }
        c.output().unwrap().stdout
    };
    let args = ["fourier-check", "--n", "2", "--samples", "2", "--json"];
    let from_env = run(Some("5"), &args);
    let explicit = run(None, &[&args[..], &["--seed", "5"]].concat());
    assert_eq!(from_env, explicit);
    assert!(String::from_utf8(from_env).unwrap().contains("\"seed\": 5"));
}

#[test]
fn cm_witness_roundtrip() {
    let o = bin(&["cm-witness"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let end = text.find("\n}\n").unwrap() + 2;
    let path = write_doc("witness.json", &text[..end]);
    let o = bin(&["cm-witness", "--verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let tampered = text[..end].replace("\"-4\"", "\"-5\"");
    let path = write_doc("witness_bad.json", &tampered);
    assert_eq!(bin(&["cm-witness", "--verify", path.to_str().unwrap()]).status.code(), Some(1));
}

fn class_strategy() -> impl Strategy<Value = CanonicalClass<Q>> {
    (1usize..=3).prop_flat_map(|g| {
        (0..=2 * g).prop_flat_map(move |d| {
            let dim = CanonicalRing::new(g).unwrap().dim(d);
            proptest::collection::vec((-9i64..=9, 1i64..=5), dim)
                .prop_map(move |c| CanonicalClass::from_coords(g, d, c.into_iter().map(|(p, q)| rat(p, q)).collect()))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn document_roundtrip(x in class_strategy()) {
        let r = CanonicalRing::new(x.g()).unwrap();
        let doc = ClassDocument::from_class(&r, &x).unwrap();
        let parsed = ClassDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_class(&r).unwrap(), x);
        let again = ClassDocument::parse(&parsed.to_json()).unwrap();
        prop_assert_eq!(again, parsed);
    }
}
