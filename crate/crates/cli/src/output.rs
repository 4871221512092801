//! Artifact writing. Every file is written to a temporary sibling and renamed into place.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Destination directory plus the set of formats the user asked for (all when none given).
pub struct Sink {
    dir: PathBuf,
    formats: BTreeSet<Format>,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: &Path, formats: &[Format]) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let formats = if formats.is_empty() {
            [Format::Csv, Format::Json, Format::Svg].into_iter().collect()
        } else {
            formats.iter().copied().collect()
        };
        Ok(Sink { dir: dir.to_path_buf(), formats, written: Vec::new() })
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Writes `name` if its format was requested; the format is taken from the extension.
    pub fn emit(&mut self, name: &str, contents: impl FnOnce() -> Result<String, CliError>) -> Result<(), CliError> {
        let format = match Path::new(name).extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some("svg") => Format::Svg,
            _ => unreachable!("artifact names carry a known extension"),
        };
        if !self.wants(format) {
            return Ok(());
        }
        let path = self.dir.join(name);
        write_atomic(&path, contents()?.as_bytes())?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::Builder::new().prefix(".growth-").tempfile_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Minimal CSV assembly; fields never contain separators or quotes.
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut out = header.join(",");
        out.push('\n');
        Csv { out }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let fields: Vec<String> = fields.into_iter().collect();
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Shortest round-trip representation, so equal floats print equally.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_leaves_no_temporaries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        write_atomic(&path, b"x\n").unwrap();
        write_atomic(&path, b"y\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "y\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn format_filter() {
        let dir = tempfile::tempdir().unwrap();
        let mut sink = Sink::new(dir.path(), &[Format::Json]).unwrap();
        sink.emit("a.csv", || Ok("x".into())).unwrap();
        sink.emit("a.json", || Ok("{}".into())).unwrap();
        assert_eq!(sink.written().len(), 1);
        assert!(!dir.path().join("a.csv").exists());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e300, 0.0] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
    }
}
