use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::Failure;

/// Stdout, or a file when `--out` is given.
pub fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        None => Ok(Box::new(io::BufWriter::new(io::stdout().lock()))),
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| io_failure(path, e))?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
    }
}

pub fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

pub fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf, Failure> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| io_failure(&path, e))?;
    Ok(path)
}

pub fn pairs_text(pairs: &[(usize, usize)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(x, y)| format!("{x}→{y}")).collect();
    format!("{{{}}}", parts.join(", "))
}
