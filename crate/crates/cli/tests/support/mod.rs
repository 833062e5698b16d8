#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const MONOMIAL: &str = "[ab]*a.[]*c.[c]w";

pub fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/session.txt")
}

/// Runs the binary in `dir` and renders the call like a shell session.
pub fn call(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_po2"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exited normally");
    let shown: Vec<String> = args
        .iter()
        .map(|a| {
            if a.chars().all(|c| c.is_ascii_alphanumeric() || "-./".contains(c)) {
                a.to_string()
            } else {
                format!("'{a}'")
            }
        })
        .collect();
    let text = format!(
        "$ po2 {}\n{}{}[exit {code}]\n",
        shown.join(" "),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (code, text)
}

/// The command session recorded in the golden file.
pub fn session_transcript() -> String {
    let dir = tempfile::tempdir().unwrap();
    let steps: &[&[&str]] = &[
        &["from-monomial", MONOMIAL, "--alphabet", "abc", "-o", "A.po2"],
        &["validate", "A.po2"],
        &["member", "A.po2", "ba(c)"],
        &["member", "A.po2", "bac(c)"],
        &["member", "A.po2", "bc(c)"],
        &["member", "A.po2", "acac(c)"],
        &["empty", "A.po2"],
        &["universal", "A.po2"],
        &["complement", "A.po2", "-o", "N.po2"],
        &["member", "N.po2", "bc(c)"],
        &["product", "--op", "intersect", "A.po2", "N.po2", "-o", "E.po2"],
        &["empty", "E.po2"],
        &["equiv", "A.po2", "N.po2"],
        &["sat", "v1 & !v1"],
        &["member", "A.po2", "ab"],
    ];
    steps.iter().map(|s| call(dir.path(), s).1 + "\n").collect()
}
