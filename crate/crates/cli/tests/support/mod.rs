#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Raw JSON written to `--output`, if any.
    pub json: Option<String>,
}

impl Run {
    pub fn report(&self) -> Value {
        serde_json::from_str(self.json.as_deref().expect("no report written")).expect("report is JSON")
    }
}

/// Runs the binary with `args`, asking for a JSON report in a temporary file.
pub fn bvoperad(args: &[&str]) -> Run {
    bvoperad_env(args, &[])
}

pub fn bvoperad_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bvoperad"));
    cmd.args(args).arg("--output").arg(&out);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let o = cmd.output().expect("binary runs");
    Run {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&o.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
        json: std::fs::read_to_string(&out).ok(),
    }
}

pub fn section<'a>(report: &'a Value, name: &str) -> Option<&'a Value> {
    report["sections"].as_array()?.iter().find(|s| s["name"] == name)
}

/// Names of failing checks in the given section (all sections if `None`).
pub fn failing(report: &Value, name: Option<&str>) -> Vec<String> {
    report["sections"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|s| name.map_or(true, |n| s["name"] == n))
        .flat_map(|s| s["checks"].as_array().into_iter().flatten())
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

pub fn check_names(report: &Value, name: &str) -> Vec<String> {
    section(report, name)
        .and_then(|s| s["checks"].as_array())
        .into_iter()
        .flatten()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

pub fn dims(report: &Value, table: &str) -> Vec<u64> {
    report["tables"][table].as_array().unwrap_or_else(|| panic!("no table {table}")).iter().map(|d| d.as_u64().unwrap()).collect()
}
