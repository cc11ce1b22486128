//! CSV output with a provenance line.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Short hex digest of any serializable configuration.
pub fn digest<C: Serialize>(config: &C) -> Result<String> {
    let json = serde_json::to_vec(config)?;
    Ok(hex::encode(&Sha256::digest(&json)[..8]))
}

pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(&Sha256::digest(&bytes)[..8]))
}

pub fn fmt_float(v: f64, precision: usize) -> String {
    format!("{v:.precision$}")
}

/// Writes a `# command digest=... config=...` line followed by an RFC 4180
/// table.
pub fn write_table<C: Serialize>(
    path: &Path,
    command: &str,
    config: &C,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    writeln!(
        out,
        "# semcov {command} digest={} config={}",
        digest(config)?,
        serde_json::to_string(config)?
    )?;
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let a = digest(&serde_json::json!({"seed": 1, "n": [5, 10]})).unwrap();
        let b = digest(&serde_json::json!({"seed": 1, "n": [5, 10]})).unwrap();
        let c = digest(&serde_json::json!({"seed": 2, "n": [5, 10]})).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 16);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(2f64.ln(), 6), "0.693147");
        assert_eq!(fmt_float(1.0, 2), "1.00");
    }
}
