use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_table_char_three() {
    let o = nichols(&["verify-table", "--char", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("rank,family,dimension,char,support,example,run_char,computed,pass\n"));
    assert!(out.contains(",1296,true") && out.contains(",1152,true"));
    assert!(!out.contains("false"));
}

#[test]
fn p5_fixture_gives_three_objects() {
    let o = nichols(&["pair", "--pair", &fixture("p5.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"], "℘₅");
    assert_eq!(v["dimension"], "2239488");
    let objects = v["scheme"]["objects"].as_array().unwrap();
    assert_eq!(objects.len(), 3);
    assert!(objects.iter().all(|x| x["roots"].as_array().unwrap().len() == 6));
}

#[test]
fn trivial_braiding_is_rejected() {
    let o = nichols(&["pair", "--pair", &fixture("a1xa1.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("braiding square is identity"));
}

#[test]
fn p6_fixture_reports_undefined_reflection() {
    let o = nichols(&["pair", "--pair", &fixture("p6.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reflection undefined at R₂ image"));
    let o = nichols(&["roots", "--pair", &fixture("p6.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("reflection undefined at R₂ image"));
}

#[test]
fn oracle_examples() {
    let o = nichols(&["oracle", "--example", "g2a", "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all bidegrees match"));

    let o = nichols(&["oracle", "--yclass", "Y1", "--max-degree", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["1,0,3,3,true", "2,0,4,4,true", "3,0,3,3,true", "4,0,1,1,true", "5,0,0,0,true"] {
        assert!(out.lines().any(|l| l == line), "{line} missing");
    }

    let o = nichols(&["oracle", "--pair", &fixture("g2a.json"), "--max-degree", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1), "g2a has no class series from a bare pair file");
}

#[test]
fn degree_one_oracle_matches_dimensions() {
    let o = nichols(&["oracle", "--example", "z32-p1", "--max-degree", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let rank = |a: u64, b: u64| rows.iter().find(|r| r["d1"] == a && r["d2"] == b).unwrap()["rank"].as_u64().unwrap();
    assert_eq!((rank(1, 0), rank(0, 1)), (3, 2));
}

#[test]
fn json_is_deterministic() {
    let args = ["roots", "--pair", &fixture("p5.json"), "--format", "json"];
    let a = stdout(&nichols(&args));
    let b = stdout(&nichols(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&serde_json::to_string(&v).unwrap()).unwrap(), v);
}

#[test]
fn saved_pair_round_trips() {
    let dir = std::env::temp_dir().join(format!("nichols-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z31b.json");
    let p = path.to_string_lossy().into_owned();
    let o = nichols(&["pair", "--example", "z31b-p3", "--save-pair", &p]);
    assert_eq!(o.status.code(), Some(0));
    let o = nichols(&["hilbert", "--pair", &p, "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension: 2304"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reflect_trace() {
    let o = nichols(&["reflect", "--example", "z31a-p5", "--char", "2", "--word", "1 2 1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let labels: Vec<String> =
        stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(labels, ["℘₅", "℘₅′", "℘₅′", "℘₅"]);
}

#[test]
fn exit_codes() {
    assert_eq!(nichols(&["pair", "--example", "nope"]).status.code(), Some(2));
    assert_eq!(nichols(&["pair", "--example", "g2a", "--char", "4"]).status.code(), Some(2));
    assert_eq!(nichols(&["pair"]).status.code(), Some(2));
    assert_eq!(nichols(&["bogus"]).status.code(), Some(2));
    assert_eq!(nichols(&["pair", "--example", "g2a", "--format", "csv"]).status.code(), Some(2));
    let o = nichols(&["roots", "--example", "g2a", "--object-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not finite within cap"));
}

#[test]
fn yclass_listing() {
    let o = nichols(&["oracle", "--yclass", "Y2", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = nichols(&["yclass", "Y4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Y4 char 0: (6)_{t1} dim 6"));
    assert!(out.contains("Y4 char 2: (3)_{t1} dim 3"));
    assert!(out.contains("Y4 char 3: (2)_{t1} dim 2"));
}
