use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use rmcover::cli::{format_matrix, parse_kappa_csv};
use rmcover::{rm, BitMatrix};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rmcover"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rmcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("RMCOVER_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn golden_outputs() {
    let pair = golden("pair.txt");
    let query = golden("query.txt");
    let cases: [(&str, Vec<&str>); 6] = [
        (
            "bounds_1_1_3.json",
            vec![
                "--format", "json", "bounds", "--t", "1", "--r", "1", "--m", "3",
            ],
        ),
        (
            "bounds_2_1_3.csv",
            vec![
                "--format", "csv", "bounds", "--t", "2", "--r", "1", "--m", "3",
            ],
        ),
        (
            "exact_1_1_3.json",
            vec![
                "--format", "json", "exact", "--t", "1", "--r", "1", "--m", "3", "--method", "all",
            ],
        ),
        (
            "cover_pair.json",
            vec![
                "--format",
                "json",
                "cover",
                "--r",
                "1",
                "--input",
                pair.to_str().unwrap(),
            ],
        ),
        (
            "plan_query.json",
            vec![
                "--format",
                "json",
                "plan",
                "--r",
                "1",
                "--m",
                "3",
                "--input",
                query.to_str().unwrap(),
            ],
        ),
        ("kappa_2_6.csv", vec!["kappa", "--t", "2", "--m", "6"]),
    ];
    for (name, args) in cases {
        check_golden(name, &stdout(&args));
    }
}

#[test]
fn bounds_reports() {
    let v = json(&["bounds", "--t", "1", "--r", "1", "--m", "3"]);
    assert_eq!(v["exact"], 2);
    assert_eq!(v["best_upper"]["integer_form"], 2);
    for b in v["bounds"].as_array().unwrap() {
        for key in ["source", "raw", "integer_form", "certified"] {
            assert!(b.get(key).is_some(), "bound record lacks {key}: {b}");
        }
    }

    let v = json(&["bounds", "--t", "2", "--r", "0", "--m", "3"]);
    assert_eq!(v["exact"], 6);

    for (t, m) in [(1, 3), (3, 5), (2, 9)] {
        let (t, m) = (t.to_string(), m.to_string());
        let v = json(&["bounds", "--t", &t, "--r", &m, "--m", &m]);
        assert_eq!(v["exact"], 0);
        for b in v["bounds"].as_array().unwrap() {
            if b["side"] == "upper" {
                assert!(b["integer_form"].as_i64().unwrap() >= 0);
            }
        }
    }
}

#[test]
fn exact_examples() {
    let v = json(&[
        "exact", "--t", "1", "--r", "1", "--m", "3", "--method", "all",
    ]);
    assert_eq!(v["exact"], 2);
    let oracles = v["oracles"].as_object().unwrap();
    assert_eq!(oracles.len(), 3);
    assert!(oracles.values().all(|x| x == 2));

    let v = json(&[
        "exact", "--t", "2", "--r", "1", "--m", "2", "--method", "all",
    ]);
    assert_eq!(v["exact"], 1);

    let v = json(&[
        "exact", "--t", "1", "--r", "3", "--m", "3", "--method", "rt2",
    ]);
    assert_eq!(v["exact"], 0);
}

#[test]
fn cover_examples() {
    let zero = temp_file("zero.txt", "2 16\n0000000000000000\n0000000000000000\n");
    let v = json(&["cover", "--r", "1", "--input", zero.to_str().unwrap()]);
    assert_eq!(v["distance"], 0);

    // the sum of two generator rows of RM(2, 4), alongside a third row
    let code = rm(2, 4).unwrap();
    let g = code.generator();
    let word =
        BitMatrix::from_rows(vec![&g.rows()[1] ^ &g.rows()[5], g.rows()[7].clone()], 16).unwrap();
    assert!(code.contains_rows(&word));
    let path = temp_file("codeword.txt", &format_matrix(&word));
    let v = json(&[
        "cover",
        "--r",
        "2",
        "--m",
        "4",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["distance"], 0);

    for x in 0..256u32 {
        let row: String = (0..8)
            .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        let path = temp_file("single.txt", &format!("1 8\n{row}\n"));
        let v = json(&[
            "cover",
            "--t",
            "1",
            "--r",
            "1",
            "--m",
            "3",
            "--input",
            path.to_str().unwrap(),
        ]);
        assert!(v["distance"].as_u64().unwrap() <= 2, "{row}");
        assert_eq!(v["guarantee"], 2);
    }
}

#[test]
fn plan_indices_are_one_based() {
    let v = json(&[
        "plan",
        "--r",
        "1",
        "--m",
        "3",
        "--input",
        golden("query.txt").to_str().unwrap(),
    ]);
    let indices: Vec<u64> = v["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(indices.iter().all(|&i| (1..=8).contains(&i)));
    assert!(indices.windows(2).all(|w| w[0] < w[1]));
    assert!(indices.len() as u64 <= v["bound"].as_u64().unwrap());
}

#[test]
fn kappa_csv_round_trips() {
    let text = stdout(&["kappa", "--t", "3", "--m", "20"]);
    let rows = parse_kappa_csv(&text).unwrap();
    assert!(text.starts_with("rho,rate,source\n"));
    assert_eq!(text.lines().count(), rows.len() + 1);
    assert!(rows.iter().any(|r| r.source.ends_with(":below")));
    assert_eq!(
        rows.iter().filter(|r| r.source == "entropy:t=3").count(),
        101
    );
    for (line, row) in text.lines().skip(1).zip(&rows) {
        assert_eq!(
            line,
            format!("{:.6},{:.6},{}", row.rho, row.rate, row.source)
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bounds", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["bounds", "--t", "1", "--r", "4", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["kappa", "--t", "2", "--m", "21"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let out = run(&["exact", "--t", "3", "--r", "0", "--m", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = run(&[
        "--cap-override",
        "8",
        "exact",
        "--t",
        "1",
        "--r",
        "1",
        "--m",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let bad = temp_file("bad.txt", "2 8\n0110x001\n11100000\n");
    let out = run(&["cover", "--r", "1", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 5"));

    let short = temp_file("short.txt", "2 8\n01101001\n");
    assert_eq!(
        run(&["cover", "--r", "1", "--input", short.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let pair = golden("pair.txt");
    assert_eq!(
        run(&[
            "cover",
            "--t",
            "3",
            "--r",
            "1",
            "--input",
            pair.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn output_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("rmcover-cli-out-{}.csv", std::process::id()));
    let out = run(&[
        "--output",
        path.to_str().unwrap(),
        "kappa",
        "--t",
        "2",
        "--m",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        std::fs::read_to_string(golden("kappa_2_6.csv")).unwrap()
    );
    std::fs::remove_file(path).unwrap();
}

#[test]
fn results_do_not_depend_on_threads() {
    // three rows of length 32 make the joint first-order search run in parallel
    let input = "3 32\n\
        01101001100101101110001010110100\n\
        11100000111111110000101011001010\n\
        00010111010100111100101000011110\n";
    let path = temp_file("three.txt", input);
    let p = path.to_str().unwrap();
    let one = stdout(&[
        "--threads",
        "1",
        "--format",
        "json",
        "cover",
        "--r",
        "1",
        "--input",
        p,
    ]);
    let four = stdout(&[
        "--threads",
        "4",
        "--format",
        "json",
        "cover",
        "--r",
        "1",
        "--input",
        p,
    ]);
    let default = stdout(&["--format", "json", "cover", "--r", "1", "--input", p]);
    assert_eq!(one, four);
    assert_eq!(one, default);
    assert_eq!(
        run(&["--threads", "0", "kappa", "--t", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn selftest_is_deterministic() {
    let a = stdout(&["selftest", "--samples", "10"]);
    let b = stdout(&["selftest", "--samples", "10"]);
    assert_eq!(a, b);
    assert!(a.contains("overall PASS"));
    let c = stdout(&["--seed", "5", "selftest", "--samples", "10"]);
    assert!(c.contains("seed=5"));
}
