//! Fixture loading, the check registry, the result cache, the seeded
//! fixture generator, and the open-question searches.

pub mod cache;
pub mod checks;
pub mod fixture;
pub mod generator;
pub mod search;

use std::path::Path;

use crate::error::Result;

/// Render a report value as pretty JSON with a trailing newline and,
/// when a path is given, also write it there.
pub fn emit_report(value: &serde_json::Value, path: Option<&Path>) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    if let Some(p) = path {
        if let Some(parent) = p.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(p, &text)?;
    }
    Ok(text)
}
