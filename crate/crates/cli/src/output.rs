use std::io::{self, Write};
use std::path::Path;

use lears_core::report::SCHEMA_VERSION;
use serde_json::json;

use crate::commands::Outcome;
use crate::Format;

pub fn render(command: &str, format: Format, o: &Outcome) -> String {
    match format {
        Format::Text => {
            let mut s = o.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Structured => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "passed": o.passed,
                "result": o.json,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Writes to `path` through a temporary file in the same directory.
pub fn emit(path: Option<&Path>, body: &str) -> io::Result<()> {
    match path {
        None => io::stdout().lock().write_all(body.as_bytes()),
        Some(p) => {
            let dir = p
                .parent()
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.flush()?;
            tmp.persist(p).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
