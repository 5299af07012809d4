//! Header block and output sinks.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Identifies one run in every output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub command: String,
    pub config_sha256: String,
    pub seed: u64,
    pub timestamp: Option<u64>,
    /// Extra `key: value` lines (summaries computed by the run).
    pub notes: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str, config_sha256: String, seed: u64, timestamp: bool) -> Self {
        Self {
            command: command.into(),
            config_sha256,
            seed,
            timestamp: timestamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    /// `# key: value` lines for CSV output.
    pub fn comment_block(&self) -> String {
        let mut s = format!(
            "# cauchy-lab {VERSION}\n# command: {}\n# config_sha256: {}\n# seed: {}\n",
            self.command, self.config_sha256, self.seed
        );
        if let Some(t) = self.timestamp {
            s.push_str(&format!("# timestamp: {t}\n"));
        }
        for (k, v) in &self.notes {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s
    }

    pub fn json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("artifact".into(), format!("cauchy-lab {VERSION}").into());
        m.insert("command".into(), self.command.clone().into());
        m.insert("config_sha256".into(), self.config_sha256.clone().into());
        m.insert("seed".into(), self.seed.into());
        if let Some(t) = self.timestamp {
            m.insert("timestamp".into(), t.into());
        }
        for (k, v) in &self.notes {
            m.insert(k.clone(), v.clone().into());
        }
        serde_json::Value::Object(m)
    }
}

/// What a run produced: the rendered document and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: String,
    pub passed: bool,
}

pub fn csv_document(header: &Header, body: &str) -> String {
    let mut s = header.comment_block();
    s.push_str(body);
    s
}

pub fn json_document(header: &Header, body: serde_json::Value) -> String {
    let mut m = serde_json::Map::new();
    m.insert("header".into(), header.json());
    m.insert("body".into(), body);
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(m)).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Lines of a CSV document below its `#` header block.
pub fn csv_body(document: &str) -> String {
    document
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

pub fn emit(output: &Option<PathBuf>, document: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, document)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(document.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_lines_and_body_split() {
        let mut h = Header::new("tumanov", "ab".repeat(32), 7, false);
        h.note("max_abs_err", 0.5);
        let doc = csv_document(&h, "a,b\n1,2\n");
        assert!(doc.starts_with("# cauchy-lab "));
        assert!(doc.contains("# seed: 7\n") && doc.contains("# max_abs_err: 0.5\n"));
        assert!(!doc.contains("timestamp"));
        assert_eq!(csv_body(&doc), "a,b\n1,2\n");
        let stamped = Header::new("tumanov", String::new(), 7, true);
        assert!(stamped.comment_block().contains("# timestamp: "));
    }
}
