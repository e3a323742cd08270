use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmatroid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn field(out: &Output, key: &str) -> String {
    let prefix = format!("{key}=");
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {}", stdout(out)))
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("pmatroid-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn generated(dir: &TempDir, name: &str, line: &str) -> String {
    let args: Vec<&str> = line.split_whitespace().collect();
    let out = run(&args);
    assert!(out.status.success(), "{args:?}");
    dir.write(name, &stdout(&out))
}

#[test]
fn girth_and_cogirth_agree_with_oracle() {
    let dir = TempDir::new("pair");
    for seed in 0..15 {
        let s = seed.to_string();
        let pair = generated(
            &dir,
            "pair.txt",
            &format!("--seed {s} gen perturbed --r 5 --n 9 --t 2"),
        );
        for kind in ["girth", "cogirth"] {
            let fast = run(&["--seed", &s, kind, "--pair", &pair]);
            let slow = run(&["oracle", kind, "--pair", &pair]);
            assert!(fast.status.success() && slow.status.success());
            assert_eq!(
                field(&fast, "value"),
                field(&slow, "value"),
                "{kind} seed {seed}"
            );
            field(&fast, "c");
            field(&fast, "reps");
        }
    }
}

#[test]
fn separate_matrix_files() {
    let dir = TempDir::new("split");
    let a = dir.0.join("a.txt");
    let p = dir.0.join("p.txt");
    let (a, p) = (a.to_str().unwrap(), p.to_str().unwrap());
    let line = format!("--seed 4 gen perturbed --r 4 --n 7 --t 1 --out-a {a} --out-p {p}");
    let out = run(&line.split_whitespace().collect::<Vec<_>>());
    assert!(out.status.success());
    assert!(std::fs::read_to_string(a)
        .unwrap()
        .starts_with("gf2matrix 4 7\n"));
    let out = run(&["cogirth", "--A", a, "--P", p]);
    assert!(out.status.success());
    let value = field(&out, "value");
    let witness = field(&out, "witness");
    if value == "inf" {
        assert!(witness.is_empty());
    } else {
        assert_eq!(witness.split(',').count(), value.parse::<usize>().unwrap());
    }
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = TempDir::new("bad");
    let bad = dir.write("bad.txt", "gf2matrix 2 2\n01\n0x\n");
    let good = dir.write("good.txt", "gf2matrix 2 2\n11\n00\n");
    let out = run(&["girth", "--A", &bad, "--P", &good]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let wide = dir.write("wide.txt", "gf2matrix 2 3\n110\n000\n");
    assert_eq!(
        run(&["girth", "--A", &good, "--P", &wide]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["girth", "--A", "/nonexistent", "--P", &good])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--epsilon", "0", "girth", "--A", &good, "--P", &good])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["girth"]).status.code(), Some(2));
}

#[test]
fn single_edge_graph() {
    let dir = TempDir::new("edge");
    let a = dir.write("a.txt", "gf2matrix 2 1\n1\n1\n");
    let p = dir.write("p.txt", "gf2matrix 2 1\n0\n0\n");
    assert_eq!(
        field(&run(&["girth", "--A", &a, "--P", &p]), "value"),
        "inf"
    );
    let out = run(&["cogirth", "--A", &a, "--P", &p]);
    assert_eq!(field(&out, "value"), "1");
    assert_eq!(field(&out, "witness"), "0");
}

#[test]
fn json_mirrors_text() {
    let dir = TempDir::new("json");
    let pair = generated(&dir, "pair.txt", "--seed 2 gen perturbed --r 5 --n 8 --t 1");
    let text = run(&["cogirth", "--pair", &pair]);
    let json = run(&["--json", "cogirth", "--pair", &pair]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(
        v["value"].to_string().trim_matches('"'),
        field(&text, "value")
    );
    assert_eq!(v["c"].to_string(), field(&text, "c"));
    let ids: Vec<String> = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    assert_eq!(ids.join(","), field(&text, "witness"));
}

#[test]
fn parity_commands() {
    let dir = TempDir::new("parity");
    let m = generated(&dir, "m.txt", "--seed 1 gen matching --n 6 --m 10 --t 2");
    let out = run(&["paritymatch", &m, "--confidence", "3", "--reps", "7"]);
    assert_eq!(
        (field(&out, "c").as_str(), field(&out, "reps").as_str()),
        ("3", "7")
    );
    let join = generated(&dir, "j.txt", "--seed 1 gen parity --terminals 4");
    assert!(run(&["parityjoin", &join]).status.success());
    assert_eq!(run(&["paritywalk", &join]).status.code(), Some(2));
    assert_eq!(run(&["paritycycle", &join]).status.code(), Some(2));

    let walk = dir.write(
        "w.txt",
        "parity t=1\ngraph 3 3\ne 0 1 2 p=1\ne 1 2 3 p=0\ne 2 3 1 p=0\nT 1 3\nalpha 1\n",
    );
    assert_eq!(field(&run(&["paritywalk", &walk]), "value"), "2");
    let cycle = dir.write(
        "c.txt",
        "parity t=1\ngraph 3 3\ne 0 1 2 p=1\ne 1 2 3 p=0\ne 2 3 1 p=0\nalpha 1\n",
    );
    assert_eq!(field(&run(&["paritycycle", &cycle]), "value"), "3");
    let even = dir.write(
        "e.txt",
        "parity t=1\ngraph 3 3\ne 0 1 2 p=1\ne 1 2 3 p=0\ne 2 3 1 p=0\nalpha 0\n",
    );
    assert_eq!(field(&run(&["paritycycle", &even]), "value"), "0");
}

#[test]
fn evencut_commands() {
    let dir = TempDir::new("evencut");
    let set = generated(&dir, "s.txt", "--seed 3 gen evencut-set --n 7 --m 12 --t 2");
    let out = run(&["evencut-set", &set, "--confidence", "2"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "c"), "2");
    let dim = generated(&dir, "d.txt", "--seed 3 gen evencut-dim --n 7 --m 12");
    let out = run(&["evencut-dim", &dim]);
    assert!(out.status.success());
    field(&out, "witness");
}

#[test]
fn pfaffian_matches_naive() {
    let dir = TempDir::new("pf");
    for seed in 0..5 {
        let s = seed.to_string();
        let skew = generated(
            &dir,
            "s.txt",
            &format!("--seed {s} gen skewmatrix --n 6 --t 2"),
        );
        assert_eq!(
            field(&run(&["pfaffian", &skew]), "value"),
            field(&run(&["pfaffian", "--naive", &skew]), "value")
        );
    }
}

#[test]
fn selftest_exit_codes() {
    let ok = run(&["selftest", "--trials", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("pass ")));
    let bad = run(&["selftest", "--trials", "5", "--mutate-dag"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL pfaffian"));
}
