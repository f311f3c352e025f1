#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const GOLDEN_MODELS: [&str; 3] = ["die", "possibility", "viterbi"];

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the binary from the crate directory so model paths stay relative.
pub fn genprob<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_genprob"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exited normally"),
    }
}

pub fn golden_queries(model: &str) -> Vec<String> {
    let path = manifest_dir().join(format!("tests/golden/{model}.queries"));
    std::fs::read_to_string(path)
        .expect("query list")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

pub fn golden_path(model: &str) -> PathBuf {
    manifest_dir().join(format!("tests/golden/{model}.txt"))
}

/// `check` followed by every golden query, with exit codes.
pub fn transcript(model: &str) -> String {
    let model_path = format!("models/{model}.json");
    let mut t = String::new();
    let check = genprob(["check", "--model", &model_path]);
    t.push_str(&format!("$ genprob check --model {model_path}\n"));
    t.push_str(&check.stdout);
    t.push_str(&check.stderr);
    t.push_str(&format!("[exit {}]\n", check.code));

    let queries = golden_queries(model);
    let mut args = vec!["query".to_string(), "--model".into(), model_path.clone()];
    args.extend(queries);
    let query = genprob(&args);
    t.push_str(&format!("$ genprob query --model {model_path} ...\n"));
    t.push_str(&query.stdout);
    t.push_str(&query.stderr);
    t.push_str(&format!("[exit {}]\n", query.code));
    t
}
