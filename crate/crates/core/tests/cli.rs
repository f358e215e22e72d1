use std::path::PathBuf;

use projrep::cli::run;
use projrep::families::FamilyTag;

fn call(args: &str) -> (i32, String) {
    run(std::iter::once("projrep").chain(args.split_whitespace()))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &str) {
    let (code, out) = call(args);
    assert_eq!(code, 0, "{args}: {out}");
    let path = golden_dir().join(name);
    if std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(out, want, "{args}");
    assert_eq!(call(args).1, out, "{args} is not reproducible");
}

#[test]
fn group_info_golden_for_every_family() {
    for tag in FamilyTag::ALL {
        let n = tag.cli_name();
        golden(&format!("group-{n}.json"), &format!("group --family {n} --p 3 --d 3 --m 1 info"));
        golden(&format!("group-{n}.tsv"), &format!("group --family {n} --p 3 --d 3 --m 1 info --format tsv"));
    }
}

#[test]
fn h2_golden() {
    for n in ["elab", "heis", "es-p", "maxrank-exp-p", "maxrank-gp", "es-times-ab"] {
        golden(&format!("h2-{n}.json"), &format!("h2 --family {n} --p 3 --d 3 --m 1"));
    }
}

#[test]
fn cocycle_and_irr_golden() {
    for n in ["heis", "maxrank-exp-p", "maxrank-gp"] {
        golden(&format!("cocycle-{n}.json"), &format!("cocycle --family {n} --p 3 --d 3 --seed 7"));
    }
    golden("irr-heis.json", "irr --family heis --p 3 --matrices");
    for n in ["elab", "heis", "hath", "gstar", "repk", "maxrank-exp-p", "maxrank-gp"] {
        golden(&format!("irr-{n}.tsv"), &format!("irr --family {n} --p 3 --d 3 --format tsv"));
    }
    golden("proj-hath.json", "proj --family hath --p 3");
}

#[test]
fn spec_examples() {
    let (code, out) = call("group --family hstar --p 3 --d 3 info");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 4782969);
    assert_eq!(v["generators"], serde_json::json!({"x": 3, "y": 3, "z": 8}));

    let (code, out) = call("h2 --family maxrank-gp --p 3 --d 3");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h2_log_p"], 5);

    let (code, out) = call("verify --suite cocycle --p 3 --d 3 --seed 7");
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(call("group --family nope").0, 2);
    assert_eq!(call("group --family hstar --p 4 --d 3").0, 2);
    assert_eq!(call("bogus").0, 2);
    assert_eq!(call("irr --family heis --budget banana").0, 2);
    assert_eq!(call("verify --suite nosuch").0, 2);
    let (code, out) = call("irr --family hstar --d 3");
    assert_eq!(code, 3);
    assert!(out.starts_with("{\"error\":\"budget\""), "{out}");
    assert_eq!(out.lines().count(), 1);
    assert_eq!(call("irr --family heis --budget 9").0, 3);
    assert_eq!(call("--help").0, 0);
}

#[test]
fn injections_fail_with_witness() {
    let (code, out) = call("irr --family heis --inject matrix");
    assert_eq!(code, 4);
    assert!(out.contains("power relation"), "{out}");
    let (code, out) = call("cocycle --family maxrank-exp-p --d 3 --inject cocycle");
    assert_eq!(code, 4);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identity"]["witness"].as_array().unwrap().len(), 3);
    for inj in ["matrix", "cocycle"] {
        let (code, out) = call(&format!("proj --family hath --inject {inj}"));
        assert_eq!(code, 4, "{inj}");
        assert!(out.contains("\"witness\": ["), "{out}");
    }
    let (code, out) = call("verify --suite repgroup --inject relation");
    assert_eq!(code, 4);
    assert!(out.contains("[x2,x1]"), "{out}");
}

#[test]
fn proj_with_mu_file() {
    let dir = std::env::temp_dir().join(format!("projrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mu.json");
    std::fs::write(&path, r#"{"family":"maxrank-exp-p","p":3,"d":3,"mu":{"1,2,3":1,"2,1,2":2}}"#).unwrap();
    let (code, out) = call(&format!("proj --family hstar --p 3 --d 3 --mu {}", path.display()));
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["projective_representations"][0]["mu"]["mu"], serde_json::json!({"1,2,3": 1, "2,1,2": 2}));

    let out_file = dir.join("out.json");
    let (code, out) = call(&format!("h2 --family heis --out {}", out_file.display()));
    assert_eq!((code, out.as_str()), (0, ""));
    assert!(std::fs::read_to_string(&out_file).unwrap().contains("h2_log_p"));
    std::fs::remove_dir_all(&dir).unwrap();
}
