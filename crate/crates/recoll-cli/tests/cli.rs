use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn recoll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recoll")).env_remove("RECOLL_CHAR").args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn check_algebra_reports_radical_layers() {
    let out = recoll(&["check-algebra", data("dual-numbers.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["n"], 2);
    assert_eq!(v["selfInjective"], true);
    let v = json(&recoll(&["check-algebra", "field"]));
    assert_eq!((v["dim"].as_u64(), v["n"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn invalid_algebras_exit_2() {
    for f in ["inadmissible.json", "free-loop.json"] {
        let out = recoll(&["check-algebra", data(f).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{f}");
    }
    let out = recoll(&["check-algebra", data("inadmissible.json").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissible"));
    assert_eq!(recoll(&["check-algebra", "no-such-algebra"]).status.code(), Some(2));
}

#[test]
fn field_char_from_env_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_recoll"))
        .env("RECOLL_CHAR", "3")
        .args(["check-algebra", "dual-numbers"])
        .output()
        .unwrap();
    assert_eq!(json(&out)["char"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_recoll"))
        .env("RECOLL_CHAR", "3")
        .args(["--char", "5", "check-algebra", "dual-numbers"])
        .output()
        .unwrap();
    assert_eq!(json(&out)["char"], 5);
    assert_eq!(recoll(&["--char", "4", "check-algebra", "a2"]).status.code(), Some(2));
}

#[test]
fn aalg_build_dual_numbers() {
    let out = recoll(&["aalg", "build", "dual-numbers"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimM"], 3);
    assert_eq!(v["dimTilde"], 5);
    assert_eq!(v["gldimTilde"], 2);
    assert_eq!(v["cornerIsoVerified"], true);
    assert_eq!(v["nilpotencyIndex"], 2);
}

#[test]
fn resolution_on_dual_numbers_passes() {
    let out = recoll(&["verify", "resolution", "dual-numbers", "--corpus-size", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn crepant_rejects_non_self_injective() {
    let out = recoll(&["verify", "crepant", "a2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not self-injective"));
}

#[test]
fn tampered_structure_constant_fails_with_counterexample() {
    for alg in ["dual-numbers", "nakayama2"] {
        let out = recoll(&["verify", "recollement", alg, "--inject-fault", "structure-constant", "--format", "json"]);
        assert_eq!(out.status.code(), Some(1), "{alg}");
        let v = json(&out);
        assert_eq!(v["passed"], false);
        let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
        assert!(!failed.is_empty());
        assert!(failed[0]["counterexample"].is_object());
    }
}

#[test]
fn json_report_schema() {
    let out = recoll(&["verify", "covariant", "dual-numbers", "--corpus-size", "5", "--seed", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["corpus_size"], 5);
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "claim", "instances", "passed", "dims"] {
            assert!(c.get(key).is_some(), "{key} missing from {c}");
        }
        assert!(c.get("witness").is_some() || c.get("counterexample").is_some() || c["instances"] == 0);
    }
}

#[test]
fn covariant_verify_alias_matches_verify() {
    let a = recoll(&["covariant", "verify", "a2", "--corpus-size", "4", "--format", "json"]);
    let b = recoll(&["verify", "covariant", "a2", "--corpus-size", "4", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn functor_commands() {
    let v = json(&recoll(&["functor", "va", data("simple-functor.json").to_str().unwrap()]));
    // The simple functor at k vanishes on Λ.
    assert_eq!(v["value"]["dim"], 0);
    assert_eq!(v["dimAtGen"], 1);
    let s = data("regular-plus-simple.json");
    let m = data("simple.json");
    let v = json(&recoll(&["functor", "valambda", "--subcat", s.to_str().unwrap(), m.to_str().unwrap()]));
    assert_eq!(v["counitIsIso"], true);
    let v = json(&recoll(&["functor", "varho", "--subcat", s.to_str().unwrap(), m.to_str().unwrap()]));
    assert_eq!(v["homDim"], 2);
    let bad = data("bad-action.json");
    assert_eq!(recoll(&["functor", "varho", "--subcat", s.to_str().unwrap(), bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn relative_duality_of_simple_is_simple() {
    let out = recoll(&[
        "duality",
        "tilde",
        "--subcat",
        data("projectives.json").to_str().unwrap(),
        data("simple.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["relativeDual"]["dim"], 1);
}
