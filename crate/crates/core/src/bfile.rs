//! OEIS b-file format: ASCII lines `index value`, LF endings.
//!
//! Reading tolerates what published b-files contain besides data: blank
//! lines and `#` comments.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::sequences::AlphaEntry;

pub fn format_bfile(entries: &[AlphaEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!("{} {}\n", e.k, e.alpha));
    }
    out
}

pub fn parse_bfile(text: &str) -> Result<Vec<(u64, BigInt)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::BFileFormat {
            line: i + 1,
            reason: reason.to_string(),
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected exactly two fields"));
        };
        let index: u64 = index.parse().map_err(|_| bad("index is not a nonnegative integer"))?;
        let value: BigInt = value.parse().map_err(|_| bad("value is not an integer"))?;
        rows.push((index, value));
    }
    Ok(rows)
}

pub fn write_bfile(entries: &[AlphaEntry], path: &Path) -> Result<()> {
    fs::write(path, format_bfile(entries)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_bfile(path: &Path) -> Result<Vec<(u64, BigInt)>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_bfile(&text)
}
