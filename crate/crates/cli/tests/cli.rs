use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

use relmono::moves::apply_moves;
use relmono::paut::product_of_factors;
use relmono::sample::{random_framing, random_paut, random_spec, Parity};
use relmono::{AbsVec, Move, TransvectionFactor};
use relmono_cli::{FramingFile, PAutFile};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn relmono(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_relmono")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const WINDS0_K2: &str = r#"{"g":2,"kappa":[2],"wind_x":[0,0],"wind_y":[0,0]}"#;
const WINDS0_K11: &str = r#"{"g":2,"kappa":[1,1],"wind_x":[0,0],"wind_y":[0,0],"arc2":[1]}"#;
const IDENTITY_N1: &str = r#"{"g":2,"n":1,"S":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"M":[]}"#;
const PUSH_X1: &str = r#"{"g":2,"n":2,"S":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"M":[[1],[0],[0],[0]]}"#;

#[test]
fn arf_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", WINDS0_K2);
    assert_eq!(
        relmono(&["arf", "--framing", s(&f)]).json(),
        serde_json::json!({"arf": 0})
    );
    let f1 = write(&dir, "f1.json", r#"{"g":2,"kappa":[2],"wind_x":[1,0],"wind_y":[0,0]}"#);
    assert_eq!(
        relmono(&["arf", "--framing", s(&f1)]).json(),
        serde_json::json!({"arf": 1})
    );
}

#[test]
fn validation_failures_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad_sum = write(&dir, "a.json", r#"{"g":2,"kappa":[3],"wind_x":[0,0],"wind_y":[0,0]}"#);
    let r = relmono(&["arf", "--framing", s(&bad_sum)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("kappa sum"), "{}", r.stderr);

    let extra = write(
        &dir,
        "b.json",
        r#"{"g":2,"kappa":[2],"wind_x":[0,0],"wind_y":[0,0],"phi":1}"#,
    );
    let r = relmono(&["arf", "--framing", s(&extra)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown field"), "{}", r.stderr);

    let even_arc = write(
        &dir,
        "c.json",
        r#"{"g":2,"kappa":[1,1],"wind_x":[0,0],"wind_y":[0,0],"arc2":[2]}"#,
    );
    assert_eq!(relmono(&["arf", "--framing", s(&even_arc)]).code, 2);

    let f = write(&dir, "f.json", WINDS0_K2);
    let not_sp = write(
        &dir,
        "p.json",
        r#"{"g":2,"n":1,"S":[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"M":[]}"#,
    );
    let r = relmono(&["theta", "--framing", s(&f), "--paut", s(&not_sp)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("symplectic"), "{}", r.stderr);

    assert_eq!(relmono(&["act", "--framing", s(&f), "--word", "Tq1"]).code, 2);
}

#[test]
fn theta_and_kernel_test() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", WINDS0_K2);
    let id = write(&dir, "id.json", IDENTITY_N1);
    let r = relmono(&["theta", "--framing", s(&f), "--paut", s(&id)]);
    assert_eq!(r.json(), serde_json::json!({"theta": [0, 0, 0, 0]}));

    let f11 = write(&dir, "f11.json", WINDS0_K11);
    let push = write(&dir, "push.json", PUSH_X1);
    // ⟨·, x1⟩ is 1 on y1 only
    let r = relmono(&["theta", "--framing", s(&f11), "--paut", s(&push)]);
    assert_eq!(r.json(), serde_json::json!({"theta": [0, 1, 0, 0]}));
    let r = relmono(&["kernel-test", "--framing", s(&f11), "--paut", s(&push)]);
    assert_eq!(r.json(), serde_json::json!({"in_kernel": false}));

    let r = relmono(&["theta", "--framing", s(&f11), "--word", "Tx1 Ty2^-1 P(2;x1)"]);
    assert_eq!(r.code, 0);
    let r = relmono(&["kernel-test", "--framing", s(&f), "--word", "Tx1^3 Ty1"]);
    assert_eq!(r.json(), serde_json::json!({"in_kernel": true}));
}

#[test]
fn spec_mismatch_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", WINDS0_K2);
    let push = write(&dir, "push.json", PUSH_X1);
    assert_eq!(relmono(&["theta", "--framing", s(&f), "--paut", s(&push)]).code, 3);

    let g = write(&dir, "g.json", r#"{"g":2,"kappa":[2],"wind_x":[1,0],"wind_y":[0,0]}"#);
    assert_eq!(relmono(&["match", "--framing", s(&f), "--target", s(&g)]).code, 3);
}

#[test]
fn lift_both_outcomes() {
    let dir = TempDir::new().unwrap();
    let odd_x = write(&dir, "f.json", r#"{"g":2,"kappa":[2],"wind_x":[1,0],"wind_y":[0,0]}"#);
    let r = relmono(&["lift", "--framing", s(&odd_x), "--vec", "x1"]);
    assert_eq!(r.json(), serde_json::json!({"exists": false}));

    let f11 = write(
        &dir,
        "f11.json",
        r#"{"g":2,"kappa":[1,1],"wind_x":[1,0],"wind_y":[0,0],"arc2":[1]}"#,
    );
    let r = relmono(&["lift", "--framing", s(&f11), "--vec", "x1"]).json();
    assert_eq!(r["exists"], true);
    let lift = write(&dir, "lift.json", &r["lift"].to_string());
    let r = relmono(&["kernel-test", "--framing", s(&f11), "--paut", s(&lift)]);
    assert_eq!(r.json(), serde_json::json!({"in_kernel": true}));
}

#[test]
fn factor_sp_reproduces_the_matrix() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..10 {
        let spec = random_spec(&mut rng, 3, 2, Parity::Any);
        let a = random_paut(&mut rng, &spec, 12);
        let file = PAutFile::from_paut(&a);
        let p = write(&dir, &format!("p{t}.json"), &serde_json::to_string(&file).unwrap());
        let out = relmono(&["factor-sp", "--paut", s(&p)]).json();
        let factors: Vec<TransvectionFactor> = out["factors"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| TransvectionFactor {
                v: AbsVec::new(
                    f["v"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|c| c.to_string().parse().unwrap())
                        .collect(),
                ),
                k: f["k"].to_string().parse().unwrap(),
            })
            .collect();
        assert_eq!(&product_of_factors(6, &factors), a.s());
    }
}

#[test]
fn act_and_inverse_word() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"g":2,"kappa":[1,1],"wind_x":[3,0],"wind_y":[-2,1],"arc2":[5]}"#,
    );
    let r = relmono(&["act", "--framing", s(&f), "--word", "Tx1 Ty2^2"]).json();
    assert_eq!(r["kappa"], serde_json::json!([1, 1]));
    let h = write(&dir, "h.json", &r.to_string());
    // the inverse word with windings read from the original framing
    let back = relmono(&["act", "--framing", s(&h), "--word", "T(y2;w=1)^-2 T(x1;w=3)^-1"]).json();
    let orig: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(back, orig);
    let push = relmono(&["act", "--framing", s(&f), "--word", "P(2;x1)"]);
    assert_eq!(push.code, 2);
}

#[test]
fn match_output_reaches_target() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"g":2,"kappa":[1,1],"wind_x":[0,0],"wind_y":[0,0],"arc2":[1]}"#,
    );
    let h = write(
        &dir,
        "h.json",
        r#"{"g":2,"kappa":[1,1],"wind_x":[4,-2],"wind_y":[6,2],"arc2":[9]}"#,
    );
    let out = relmono(&["match", "--framing", s(&f), "--target", s(&h)]).json();
    let moves: Vec<Move> = serde_json::from_value(out["moves"].clone()).unwrap();
    assert_eq!(out["count"], moves.len());
    let load = |p: &Path| -> FramingFile { serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap() };
    let start = load(&f).to_framing().unwrap();
    let target = load(&h).to_framing().unwrap();
    assert_eq!(apply_moves(&start, &moves).unwrap(), target);
}

#[test]
fn stratum_presets() {
    let r = relmono(&["stratum", "2"]).json();
    assert_eq!(r["framing"]["g"], 2);
    assert_eq!(r["report"]["regime"], "even");
    assert_eq!(r["report"]["mod2_kernel_order"], 72);

    let r = relmono(&["stratum", "1,1"]).json();
    assert_eq!(r["framing"]["g"], 2);
    assert_eq!(r["report"]["regime"], "odd");
    assert_eq!(r["report"]["mod2_kernel_order"], 720);

    let r = relmono(&["stratum", "3,1", "--no-count"]).json();
    assert_eq!(r["framing"]["g"], 3);
    assert_eq!(r["report"]["regime"], "odd");
    assert_eq!(r["report"]["gcd"], 1);

    assert_eq!(relmono(&["stratum", "2,1"]).code, 2);
    assert_eq!(relmono(&["stratum", "0,2"]).code, 2);
}

#[test]
fn verify_suites() {
    let r = relmono(&["verify", "cocycle", "--g", "2", "--trials", "1000"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("1000 word pairs"));

    let r = relmono(&["verify", "census", "--g", "2"]);
    assert_eq!(r.code, 0);
    for needle in ["= 720", "(10, 6)", "(72, 120)"] {
        assert!(r.stdout.contains(needle), "{needle} missing from {}", r.stdout);
    }

    assert_eq!(relmono(&["verify", "unknown-suite"]).code, 2);
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["verify", "all", "--trials", "50", "--seed", "17", "--json"];
    let a = relmono(&args);
    let b = relmono(&args);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let report = a.json();
    assert_eq!(report["seed"], 17);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let g = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=4);
        let spec = random_spec(&mut rng, g, n, Parity::Any);
        let arcs = rng.gen_bool(0.5);
        let mut file = FramingFile::from_framing(&random_framing(&mut rng, &spec, arcs));
        // integers beyond 64 bits survive
        file.wind_x[0] = BigInt::from(rng.gen::<i64>()) * BigInt::from(u64::MAX) * 4 + 3;
        let text = serde_json::to_string(&file).unwrap();
        let back: FramingFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(FramingFile::from_framing(&back.to_framing().unwrap()), file);

        let a = random_paut(&mut rng, &spec, 6);
        let pf = PAutFile::from_paut(&a);
        let back: PAutFile = serde_json::from_str(&serde_json::to_string(&pf).unwrap()).unwrap();
        assert_eq!(back, pf);
        assert_eq!(back.to_paut(&spec).unwrap(), a);
    }
}
