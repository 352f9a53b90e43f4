use std::fs;
use std::process::{Command, Output};

fn lstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lstar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lambda1_of_an_edge() {
    let o = lstar(&["lambda1", "01", "--tol", "1e-9"]);
    assert!(o.status.success());
    let parts: Vec<f64> = stdout(&o).split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert!(parts[0] <= -1.0 && -1.0 <= parts[1] && parts[1] - parts[0] <= 1e-9);

    let o = lstar(&["--format", "json", "lambda1", "01", "--tol", "1e-9"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lo"].as_f64().unwrap(), parts[0]);
    assert_eq!(v["hi"].as_f64().unwrap(), parts[1]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lstar(&["lambda1", "01", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(lstar(&["lambda1", "0x"]).status.code(), Some(2));
    assert_eq!(lstar(&["--jobs", "0", "verify-forbidden"]).status.code(), Some(2));
    assert_eq!(lstar(&["enum-maverick", "--resume"]).status.code(), Some(2));
    assert_eq!(lstar(&["verify-appendix", "--corpus", "/nonexistent/corpus.txt"]).status.code(), Some(2));
}

#[test]
fn forbidden_determinants() {
    let o = lstar(&["verify-forbidden"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.ends_with("\tnegative")));
}

#[test]
fn appendix_with_a_broken_corpus_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.txt");
    // a B-list entry whose one-vertex deletions are not E7
    fs::write(&path, "E6\t0312233445\nB1\t03122334455667\n").unwrap();
    let o = lstar(&["verify-appendix", "--corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = lstar(&["verify-appendix"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rooted_text_and_json_agree() {
    let text = lstar(&["enum-rooted", "--expect-paper"]);
    assert!(text.status.success());
    let json = lstar(&["--format", "json", "enum-rooted"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let lines: Vec<String> = stdout(&text).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(lines.len(), entries.len());
    assert_eq!(entries.len(), 794);
    for (line, e) in lines.iter().zip(entries) {
        let f: Vec<&str> = line.split('\t').collect();
        assert_eq!(f[0], e["edges"].as_str().unwrap());
        assert_eq!(f[1].parse::<u64>().unwrap(), e["size"].as_u64().unwrap());
        assert_eq!(f[2].parse::<u64>().unwrap(), e["ell0"].as_u64().unwrap());
        assert_eq!(f[3].parse::<bool>().unwrap(), e["maximal"].as_bool().unwrap());
    }
    assert_eq!(v["maximal"].as_u64(), Some(48));
}

#[test]
fn job_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("rooted-{jobs}.txt"));
        let o = lstar(&["--jobs", jobs, "--out", path.to_str().unwrap(), "enum-rooted"]);
        assert!(o.status.success());
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn maverick_checkpoints_resume_to_the_same_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("levels");
    let first = dir.path().join("first.txt");
    let o = lstar(&[
        "--jobs",
        "8",
        "--out",
        first.to_str().unwrap(),
        "enum-maverick",
        "--expect-paper",
        "--checkpoint-dir",
        ckpt.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let again = dir.path().join("again.txt");
    let o = lstar(&[
        "--jobs",
        "1",
        "--out",
        again.to_str().unwrap(),
        "enum-maverick",
        "--checkpoint-dir",
        ckpt.to_str().unwrap(),
        "--resume",
    ]);
    assert!(o.status.success());
    let a = fs::read_to_string(&first).unwrap();
    assert_eq!(a, fs::read_to_string(&again).unwrap());
    assert!(a.contains("# 9\t13\n") && a.contains("# 19\t3\n"));
}

#[test]
fn selfcheck_passes() {
    let o = lstar(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
