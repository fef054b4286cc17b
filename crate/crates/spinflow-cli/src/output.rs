//! Deterministic CSV/JSON emission: '.' decimal, 17 significant digits,
//! byte-identical bodies for identical configs. Timestamps live only in the
//! provenance block of `run.json`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// 17 significant digits, locale-free.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvTable {
    header: String,
    rows: Vec<String>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        CsvTable {
            header: columns.join(","),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, fields: &[String]) {
        self.rows.push(fields.join(","));
    }

    pub fn body(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        out
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}

pub struct OutputDir {
    dir: PathBuf,
}

impl OutputDir {
    pub fn create(dir: &str) -> std::io::Result<Self> {
        let dir = PathBuf::from(dir);
        fs::create_dir_all(&dir)?;
        Ok(OutputDir { dir })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn write_text(&self, name: &str, body: &str) -> std::io::Result<PathBuf> {
        let path = self.path(name);
        let mut f = fs::File::create(&path)?;
        f.write_all(body.as_bytes())?;
        Ok(path)
    }

    pub fn write_json(&self, name: &str, value: &serde_json::Value) -> std::io::Result<PathBuf> {
        let mut body = serde_json::to_string_pretty(value).expect("serializable");
        body.push('\n');
        self.write_text(name, &body)
    }
}

/// Provenance block: config echo plus version and wall time.
pub fn run_record(config_echo: serde_json::Value, wall_seconds: f64) -> serde_json::Value {
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    serde_json::json!({
        "config": config_echo,
        "artifact_version": env!("CARGO_PKG_VERSION"),
        "wall_time_seconds": wall_seconds,
        "timestamp_unix": timestamp,
    })
}

pub fn error_record(exit_code: i32, kind: &str, message: &str) -> serde_json::Value {
    serde_json::json!({
        "exit_code": exit_code,
        "kind": kind,
        "message": message,
    })
}

pub fn write_error(dir: &Path, record: &serde_json::Value) {
    let _ = fs::create_dir_all(dir);
    if let Ok(mut f) = fs::File::create(dir.join("error.json")) {
        let mut body = serde_json::to_string_pretty(record).unwrap_or_default();
        body.push('\n');
        let _ = f.write_all(body.as_bytes());
    }
}
