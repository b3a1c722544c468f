#![allow(dead_code)]

use std::process::{Command, Output};

pub fn cesymp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cesymp"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

/// The JSON report with the wall-clock field removed.
pub fn report_json(args: &[&str]) -> (serde_json::Value, i32) {
    let output = cesymp(args);
    let mut value: serde_json::Value = serde_json::from_str(&stdout(&output))
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&output.stderr)));
    if let Some(map) = value.as_object_mut() {
        map.remove("duration_ms");
    }
    (value, output.status.code().expect("exit code"))
}

pub fn builtin_names() -> Vec<String> {
    let output = cesymp(&["examples", "list"]);
    stdout(&output)
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect()
}
