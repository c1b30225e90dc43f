use std::process::{Command, Output};

use sbo_core::GR;
use serde_json::Value;

fn sbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbo")).args(args).env_remove("SBO_SEED").output().expect("spawn sbo")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn classify(lambda: &str, nu: &str, m: &str) -> Value {
    let out = sbo(&["classify", "--lambda", lambda, "--nu", nu, "--m", m]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

#[test]
fn classify_examples() {
    let v = classify("-3", "2", "4");
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["case"], "2");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["case", "dimension", "lambda", "m", "nu"]);

    let v = classify("0", "0", "1");
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["case"], "1");

    let v = classify("0", "-1", "1");
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["case"], Value::Null);

    let v = classify("1/2+1/3*i", "9/2+1/3*i", "-2");
    assert_eq!(v["lambda"], "1/2+1/3*i");
}

#[test]
fn exit_codes() {
    assert_eq!(sbo(&["classify", "--lambda", "1/0", "--nu", "0", "--m", "1"]).status.code(), Some(2));
    assert_eq!(sbo(&["classify", "--lambda", "0", "--nu", "0"]).status.code(), Some(2));
    assert_eq!(sbo(&["bogus"]).status.code(), Some(2));
    let out = sbo(&["classify", "--lambda", "0", "--nu", "0", "--m", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of scope"));
    assert_eq!(sbo(&["emit", "--lambda", "0", "--nu", "1", "--m", "0"]).status.code(), Some(3));
    // no operator at this point
    assert_eq!(sbo(&["emit", "--lambda", "0", "--nu", "-1", "--m", "1"]).status.code(), Some(1));
}

#[test]
fn solve_matches_closed_form() {
    let out = sbo(&["solve", "--lambda", "-4", "--a", "5", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["subcase"], "3.II");
    assert_eq!(v["scalar"], "-16");
    assert_eq!(v["closed_form"]["g_hi"]["poly"], "-16*t");

    let out = sbo(&["solve", "--lambda", "1/2", "--a", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["case"], "1");
    assert_eq!(v["consistent"], true);
    assert!(v["scalar"].is_string());

    // nu given instead of a, negative m, empty solution space
    let out = sbo(&["solve", "--lambda", "-2", "--nu", "2", "--m", "-3"]);
    assert_eq!(json_of(&out)["dimension"], 1);
    let v = json_of(&sbo(&["solve", "--lambda", "2/3", "--a", "1", "--m", "4"]));
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["closed_form"], Value::Null);
}

#[test]
fn emit_base_and_dual_cases() {
    let v = json_of(&sbo(&["emit", "--lambda", "3/2", "--nu", "3/2", "--m", "1"]));
    let u1 = v["components"]["u1"].as_array().unwrap();
    assert_eq!(u1.len(), 1);
    assert_eq!(u1[0]["coeff"], "1");
    assert_eq!((u1[0]["dz"].as_u64(), u1[0]["dzbar"].as_u64(), u1[0]["dx3"].as_u64()), (Some(0), Some(0), Some(0)));
    assert_eq!(v["components"]["u2"].as_array().unwrap().len(), 0);

    // lambda = -1, nu = lambda + 1, m = -2: only u3, carrying dz
    let v = json_of(&sbo(&["emit", "--lambda", "-1", "--nu", "0", "--m", "-2"]));
    let u3 = v["components"]["u3"].as_array().unwrap();
    assert_eq!(u3.len(), 1);
    assert_eq!(u3[0]["dz"], 1);
    assert_eq!(u3[0]["dzbar"], 0);
    assert!(v["components"]["u1"].as_array().unwrap().is_empty());
}

#[test]
fn emit_latex_golden() {
    let out = sbo(&["emit", "--lambda", "-4", "--nu", "1", "--m", "3", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/emit_m4_n1_m3.tex");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn emit_json_coefficients_parse() {
    let v = json_of(&sbo(&["emit", "--lambda", "1/2+1/3*i", "--nu", "7/2+1/3*i", "--m", "1"]));
    let mut n = 0;
    for s in ["u1", "u2", "u3"] {
        for t in v["components"][s].as_array().unwrap() {
            let k: GR = t["coeff"].as_str().unwrap().parse().unwrap();
            assert!(!k.is_zero());
            n += 1;
        }
    }
    assert!(n > 0);
}

#[test]
fn verify_single_point_and_fuzz() {
    let args = ["verify", "--grid-lambda", "-4", "--grid-a", "5", "--grid-m", "3"];
    let out = sbo(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["points"][0]["checks"]["operator"], true);

    for seed in ["1", "7"] {
        let out = Command::new(env!("CARGO_BIN_EXE_sbo"))
            .args(args)
            .arg("--fuzz-l")
            .env("SBO_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(4), "seed {seed}");
        assert_eq!(json_of(&out)["points"][0]["checks"]["dimension"], false);
    }

    assert_eq!(sbo(&["verify", "--grid-m", "0"]).status.code(), Some(3));
    assert_eq!(sbo(&["verify", "--grid-a", "1/2"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let base = ["verify", "--grid-lambda", "-5..1,1/2", "--grid-a", "0..4", "--grid-m", "1..3"];
    let one = sbo(&[&base[..], &["--jobs", "1"]].concat());
    let four = sbo(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json_of(&one)["checked"], 8 * 5 * 3);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["solve", "--lambda", "-3", "--a", "6", "--m", "2"];
    assert_eq!(sbo(&args).stdout, sbo(&args).stdout);
    let args = ["emit", "--lambda", "-3", "--nu", "3", "--m", "-2", "--format", "text"];
    assert_eq!(sbo(&args).stdout, sbo(&args).stdout);
}

#[test]
fn suite_and_kkp() {
    let out = sbo(&["suite", "--max-degree", "5", "--max-k", "3", "--max-operator-degree", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["identities"].as_array().unwrap().len(), 13);

    let v = json_of(&sbo(&["compare-kkp", "--lambda", "-1", "--nu", "2", "--max-degree", "3"]));
    assert_eq!(v["agrees"], true);
    assert_eq!(v["K"], "2");
    let v = json_of(&sbo(&["compare-kkp", "--lambda", "1/2", "--nu", "1/2", "--max-degree", "3"]));
    assert_eq!(v["K"], "1");
}
