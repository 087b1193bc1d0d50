use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lscrystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscrystal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn crystal_of_a_minuscule_weight() {
    let out = lscrystal(&["crystal", "--type", "A", "--rank", "3", "--weights", "1,0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("elements 3\n"), "{text}");
    assert!(text.contains("simple yes"));
}

#[test]
fn crystal_contains_the_bent_path() {
    let out = lscrystal(&["crystal", "--type", "A", "--rank", "2", "--weights", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let elements: Vec<&str> = doc["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
    assert_eq!(elements.len(), 4);
    assert!(elements.contains(&"[(-2,2)@1/2, (2,-2)@1/2]"));
    assert_eq!(doc["simple"]["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["crystal", "--type", "A", "--rank", "3", "--weights", "0,0"][..],
        &["crystal", "--type", "A", "--rank", "3", "--weights", "1"],
        &["crystal", "--type", "A", "--rank", "3"],
        &["crystal", "--type", "E", "--rank", "6", "--weights", "1"],
        &["crystal", "--type", "A", "--rank", "3", "--weights", "1,0", "--frobnicate"],
        &["kostka", "--type", "C", "--rank", "2", "--seq", "1"],
        &["onedsum", "--type", "A", "--rank", "3", "--seq", "1,3"],
    ] {
        assert_eq!(code(&lscrystal(args)), 2, "{args:?}");
    }
}

#[test]
fn cap_exceeded_exits_3() {
    let out = lscrystal(&["crystal", "--type", "A", "--rank", "4", "--weights", "2,2,2", "--cap", "50"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn one_dimensional_sums() {
    let run = |mu: &str| {
        let out = lscrystal(&["onedsum", "--type", "A", "--rank", "2", "--seq", "1,1", &format!("--mu={mu}")]);
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    assert_eq!(run("0"), "q^-1\n");
    assert_eq!(run("2"), "1\n");
    assert_eq!(run("4"), "0\n");
    assert_eq!(run("-2"), "0\n");
}

#[test]
fn kostka_table() {
    let out = lscrystal(&["kostka", "--type", "A", "--rank", "3", "--seq", "2,1,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("K_(3,1),(2,1,1) = q + q^2\n"), "{text}");
    assert!(text.contains("K_(2,2),(2,1,1) = q\n"));
    assert!(text.contains("K_(2,1,1),(2,1,1) = 1\n"));
}

#[test]
fn energy_table_by_hand() {
    let out = lscrystal(&["energy", "--type", "A", "--rank", "2", "--seq", "1,1", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "element,H,D,Deg\n\
         \"[(-1,1)@1/1][(-1,1)@1/1]\",0,0,0\n\
         \"[(-1,1)@1/1][(1,-1)@1/1]\",-1,-1,-1\n\
         \"[(1,-1)@1/1][(-1,1)@1/1]\",0,0,0\n\
         \"[(1,-1)@1/1][(1,-1)@1/1]\",0,0,0\n"
    );
}

#[test]
fn output_does_not_depend_on_jobs() {
    for cmd in ["crystal", "energy", "verify"] {
        let args = |jobs: &'static str| [cmd, "--type", "A", "--rank", "4", "--seq", "1,2,3", "--json", "--jobs", jobs];
        let one = lscrystal(&args("1"));
        let many = lscrystal(&args("4"));
        assert_eq!(code(&one), 0, "{cmd}");
        assert_eq!(one.stdout, many.stdout, "{cmd}");
    }
}

#[test]
fn verify_single_fundamental() {
    let out = lscrystal(&["verify", "--type", "C", "--rank", "2", "--seq", "2"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("FAIL"));
}

fn golden_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

/// `A3_1-2.json` → (`3`, `1,2`).
fn golden_args(path: &Path) -> (String, String) {
    let stem = path.file_stem().unwrap().to_str().unwrap();
    let (rank, seq) = stem.trim_start_matches('A').split_once('_').unwrap();
    (rank.to_string(), seq.replace('-', ","))
}

#[test]
fn golden_files_match() {
    let files = golden_files();
    assert_eq!(files.len(), 56);
    for path in files {
        let (rank, seq) = golden_args(&path);
        let golden = path.to_str().unwrap();
        let out = lscrystal(&["verify", "--type", "A", "--rank", &rank, "--seq", &seq, "--golden", golden]);
        assert_eq!(code(&out), 0, "{golden}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("golden file matches"));
    }
}

#[test]
fn corrupted_golden_exits_1() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/A2_1-1.json");
    let text = std::fs::read_to_string(path).unwrap();
    let corrupted = text.replacen("\"-1\": 1", "\"-1\": 2", 1);
    assert_ne!(text, corrupted);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, corrupted).unwrap();
    let out = lscrystal(&["verify", "--type", "A", "--rank", "2", "--seq", "1,1", "--golden", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("differs at line"));
}
