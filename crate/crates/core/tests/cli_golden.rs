//! Runs the binary and compares its output with files under `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn lieshift(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lieshift"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn golden(name: &str, args: &[&str]) {
    let (code, stdout, stderr) = lieshift(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    let path = golden_dir().join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(stdout, want, "{name} differs from {}", path.display());
}

#[test]
fn index_borel_sl3() {
    golden("index_borel_sl3", &["index", "--preset", "borel-sl3"]);
}

#[test]
fn b_gl4_json() {
    golden("b_gl4", &["b", "--preset", "gl4", "--json"]);
}

#[test]
fn info_sl2_semidirect_h3() {
    golden("info_sl2_semidirect_h3", &["info", "--preset", "sl2-semidirect-h3"]);
}

#[test]
fn mf_sl2() {
    golden("mf_sl2", &["mf", "--preset", "sl2", "--gamma", "e=1"]);
}

#[test]
fn hat_check() {
    golden("hat_check", &["hat-check", "--preset", "sl2-semidirect-h3", "--json"]);
}

#[test]
fn reduce_abelian_h3() {
    golden("reduce_abelian_h3", &["reduce-abelian", "--preset", "heisenberg(1)", "--ideal", "y,z", "--json"]);
}

#[test]
fn construct_borel_sl3() {
    golden("construct_borel_sl3", &["construct", "--preset", "borel-sl3"]);
}

#[test]
fn reproduce_example() {
    golden("reproduce", &["reproduce-paper-example", "--json"]);
}

#[test]
fn file_input_matches_preset() {
    let dir = std::env::temp_dir().join(format!("lieshift-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("aff1.json");
    std::fs::write(
        &path,
        r#"{"schema":"lieshift/1","name":"aff1","dim":2,"basis":["t","y"],
            "brackets":[{"i":0,"j":1,"coeffs":{"y":"1"}}]}"#,
    )
    .unwrap();
    let from_file = lieshift(&["construct", "--file", path.to_str().unwrap()]);
    let from_preset = lieshift(&["construct", "--preset", "aff1"]);
    assert_eq!(from_file, from_preset);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(lieshift(&["index", "--preset", "no-such"]).0, 2);
    assert_eq!(lieshift(&["trdeg", "--preset", "sl2", "--gens", "e +"]).0, 2);
    assert_eq!(lieshift(&["maximality", "--preset", "sl2", "--gens", "e; f"]).0, 1);
    assert_eq!(lieshift(&["validate", "--preset", "sl3"]).0, 0);
}
