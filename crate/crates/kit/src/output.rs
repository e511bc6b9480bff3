//! CSV and JSON writers with a fixed number format.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::KitError;

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), KitError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| KitError::Io(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| KitError::Io(format!("{}: {e}", path.display()));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| KitError::Io(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), KitError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| KitError::Io(format!("{}: {e}", path.display())))?;
    s.push('\n');
    write_text(path, &s)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), KitError> {
    fs::write(path, text).map_err(|e| KitError::Io(format!("{}: {e}", path.display())))
}

pub fn ensure_dir(dir: &Path) -> Result<(), KitError> {
    fs::create_dir_all(dir).map_err(|e| KitError::Io(format!("{}: {e}", dir.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(-0.1), "-1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_uses_lf() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.csv");
        write_csv(&p, &["a", "b"], &[vec![num(1.5), "x".into()]]).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "a,b\n1.5000000000000000e0,x\n");
    }
}
