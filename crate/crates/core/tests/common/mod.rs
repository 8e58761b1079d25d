#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde::Deserialize;

#[derive(Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub stdin: Option<String>,
    pub exit: i32,
    pub contains: Vec<String>,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(corpus_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("valid case list")
}

pub fn run_binary(args: &[String], stdin: Option<&str>) -> (i32, String, String) {
    let dir = corpus_dir();
    let mut child = Command::new(env!("CARGO_BIN_EXE_weightcx"))
        .args(args)
        .current_dir(&dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn weightcx");
    let input = stdin.map(|f| std::fs::read(dir.join(f)).expect("stdin file")).unwrap_or_default();
    child.stdin.take().expect("stdin").write_all(&input).expect("write stdin");
    let out = child.wait_with_output().expect("wait");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Runs one case; `Err` describes the mismatch.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (code, stdout, stderr) = run_binary(&case.args, case.stdin.as_deref());
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {} (stderr: {})", case.name, case.exit, stderr.trim()));
    }
    for needle in &case.contains {
        if !stdout.contains(needle.as_str()) {
            return Err(format!("{}: output lacks {needle:?}: {stdout}", case.name));
        }
    }
    if code == 2 && stderr.trim().is_empty() {
        return Err(format!("{}: no diagnostic on malformed input", case.name));
    }
    Ok(())
}

/// Every complex document in the corpus that parses: serializing and
/// parsing again gives the same complex.
pub fn round_trip_corpus() -> Result<usize, String> {
    let mut checked = 0;
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir()).expect("corpus").map(|e| e.expect("entry").path()).collect();
    entries.sort();
    for path in entries {
        if path.extension().and_then(|e| e.to_str()) != Some("json") || path.ends_with("cases.json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).expect("read");
        let Ok(x) = weightcx::document::parse_complex(&text) else { continue };
        let written = weightcx::document::write_complex(&x);
        let again = weightcx::document::parse_complex(&written).map_err(|e| format!("{}: {e}", path.display()))?;
        if again != x || weightcx::document::write_complex(&again) != written {
            return Err(format!("{}: round trip changed the complex", path.display()));
        }
        let original: serde_json::Value = serde_json::from_str(&text).expect("json");
        let reparsed: serde_json::Value = serde_json::from_str(&written).expect("json");
        // over F_p entries are reduced, so only integer documents keep their text
        if x.ring() == weightcx::linalg::Ring::Integers && original != reparsed {
            return Err(format!("{}: document not canonical after round trip", path.display()));
        }
        checked += 1;
    }
    Ok(checked)
}
