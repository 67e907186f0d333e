//! Output-file assembly: echoed config header, CSV body, atomic writes.

use std::fs;
use std::path::{Path, PathBuf};

use crate::errors::CliError;

/// Write through a temporary sibling plus rename, so a failure never leaves
/// a partially written file at the destination.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = tmp_path(path);
    let result = fs::write(&tmp, contents).and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| {
        CliError::Core(dki_core::Error::Io(std::io::Error::new(
            e.kind(),
            format!("writing {}: {e}", path.display()),
        )))
    })
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// `# key = value` echo lines, a header line, then one line per row.
pub fn csv(echo: &str, header: &str, rows: &[String]) -> String {
    let mut out = String::with_capacity(
        echo.len() + header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>(),
    );
    out.push_str(echo);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}
