use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde_json::Value;
use tempfile::NamedTempFile;

const SIG_DIGITS: i32 = 12;

/// `x` with 12 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    // exponent after rounding, so 9.99…→1.0e1 is handled
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).expect("exponent");
    if !(-6..15).contains(&exp) {
        return sci;
    }
    let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Rounds to 12 significant digits for JSON output.
pub fn round_float(x: f64) -> f64 {
    fmt_float(x).parse().unwrap_or(x)
}

/// Rounds every float inside a JSON tree.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_float(n.as_f64().expect("f64"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        v => v,
    }
}

/// Files to write together once everything has been computed.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(PathBuf, String)>,
}

impl Outputs {
    pub fn add(&mut self, path: PathBuf, contents: String) {
        self.files.push((path, contents));
    }

    pub fn add_json(&mut self, path: PathBuf, value: Value) {
        let mut text = serde_json::to_string_pretty(&round_json(value)).expect("json serializes");
        text.push('\n');
        self.add(path, text);
    }

    /// Writes each file through a temporary in the same directory and
    /// renames it into place.
    pub fn commit(self) -> anyhow::Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for (path, contents) in self.files {
            write_atomic(&path, contents.as_bytes())?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(0.9453125), "0.945312500000");
        assert_eq!(fmt_float(1.0), "1.00000000000");
        assert_eq!(fmt_float(0.125), "0.125000000000");
        assert_eq!(fmt_float(7.0), "7.00000000000");
        assert_eq!(fmt_float(-24.43077012345678), "-24.4307701235");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(3.1e-9), "3.10000000000e-9");
        assert_eq!(fmt_float(0.99999999999999), "1.00000000000");
        assert_eq!(fmt_float(0.05), "0.0500000000000");
        assert_eq!(fmt_float(123456.0), "123456.000000");
    }

    #[test]
    fn json_floats_are_rounded() {
        let v = round_json(serde_json::json!({"a": [0.1 + 0.2, 3], "b": 2.0 / 3.0}));
        assert_eq!(v["a"][0].as_f64(), Some(0.3));
        assert_eq!(v["a"][1].as_u64(), Some(3));
        assert_eq!(v["b"].as_f64(), Some(0.666666666667));
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/x.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(path.parent().unwrap()).unwrap().count(), 1);
    }
}
