//! Deterministic CSV/JSON serialization and atomic file writes.
//!
//! CSV numbers are printed with 17 significant digits (`{:.16e}`), which
//! round-trips every double exactly; identical invocations therefore
//! produce byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use fracspline_core::distributional::DeltaExpansion;
use fracspline_core::splines::{GridFunction, GridValues};
use fracspline_core::Complex64;
use serde::{Deserialize, Serialize};

/// A table with one abscissa column and any number of value columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnTable {
    pub x_label: String,
    pub xs: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

#[derive(Debug)]
pub enum FormatError {
    Malformed(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Malformed(msg) => write!(f, "malformed artifact: {msg}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl ColumnTable {
    pub fn new(x_label: &str, xs: Vec<f64>) -> Self {
        ColumnTable {
            x_label: x_label.to_string(),
            xs,
            columns: Vec::new(),
        }
    }

    pub fn push_column(&mut self, label: &str, values: Vec<f64>) {
        assert_eq!(values.len(), self.xs.len(), "column length mismatch");
        self.columns.push((label.to_string(), values));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.x_label);
        for (label, _) in &self.columns {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for (i, x) in self.xs.iter().enumerate() {
            let _ = write!(out, "{}", fmt_f64(*x));
            for (_, col) in &self.columns {
                let _ = write!(out, ",{}", fmt_f64(col[i]));
            }
            out.push('\n');
        }
        out
    }

    /// Re-parses a table written by [`Self::to_csv`]; the bundled reader for the
    /// lossless round-trip guarantee.
    pub fn parse_csv(text: &str) -> Result<ColumnTable, FormatError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| FormatError::Malformed("empty file".into()))?;
        let mut labels = header.split(',');
        let x_label = labels
            .next()
            .ok_or_else(|| FormatError::Malformed("empty header".into()))?
            .to_string();
        let col_labels: Vec<String> = labels.map(|s| s.to_string()).collect();
        let mut xs = Vec::new();
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); col_labels.len()];
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let parse = |s: Option<&str>| -> Result<f64, FormatError> {
                s.ok_or_else(|| FormatError::Malformed(format!("short row {}", lineno + 2)))?
                    .parse()
                    .map_err(|e| FormatError::Malformed(format!("row {}: {e}", lineno + 2)))
            };
            xs.push(parse(fields.next())?);
            for col in cols.iter_mut() {
                col.push(parse(fields.next())?);
            }
            if fields.next().is_some() {
                return Err(FormatError::Malformed(format!("long row {}", lineno + 2)));
            }
        }
        Ok(ColumnTable {
            x_label,
            xs,
            columns: col_labels.into_iter().zip(cols).collect(),
        })
    }

    pub fn column(&self, label: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_slice())
    }
}

/// `omega, re, im` table for frequency-domain grids.
pub fn complex_table(x_label: &str, xs: Vec<f64>, values: &[Complex64]) -> ColumnTable {
    let mut t = ColumnTable::new(x_label, xs);
    t.push_column("re", values.iter().map(|z| z.re).collect());
    t.push_column("im", values.iter().map(|z| z.im).collect());
    t
}

/// Renders a sampled grid as a table: `value` column for real grids,
/// `re`/`im` pair for complex ones.
pub fn grid_table(grid: &GridFunction, x_label: &str) -> ColumnTable {
    let xs: Vec<f64> = (0..grid.len()).map(|i| grid.x(i)).collect();
    match grid.values() {
        GridValues::Real(v) => {
            let mut t = ColumnTable::new(x_label, xs);
            t.push_column("value", v.clone());
            t
        }
        GridValues::Complex(v) => complex_table(x_label, xs, v),
    }
}

/// Wire form of a delta expansion:
/// `{ "alpha": .., "x": .., "coeffs": [[re, im], ..], "center": .., "reflected": .. }`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DeltaExpansionJson {
    pub alpha: f64,
    pub x: f64,
    pub coeffs: Vec<[f64; 2]>,
    pub center: f64,
    pub reflected: bool,
}

impl From<&DeltaExpansion> for DeltaExpansionJson {
    fn from(d: &DeltaExpansion) -> Self {
        DeltaExpansionJson {
            alpha: d.alpha,
            x: d.x,
            coeffs: d.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            center: d.center,
            reflected: d.reflected,
        }
    }
}

impl DeltaExpansionJson {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite floats only")
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))
    }
}

/// Writes via a temporary sibling and an atomic rename.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name()
                .map(|f| f.to_string_lossy())
                .unwrap_or_default()
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name()
                .map(|f| f.to_string_lossy())
                .unwrap_or_default()
        ))
        .to_path_buf(),
    };
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_and_digits() {
        let mut t = ColumnTable::new("x", vec![0.0, 0.1, 0.2]);
        t.push_column(
            "value",
            vec![1.0, std::f64::consts::PI, -7.647961118281426e-6],
        );
        let text = t.to_csv();
        assert!(text.starts_with("x,value\n"));
        let parsed = ColumnTable::parse_csv(&text).unwrap();
        assert_eq!(parsed, t);
        // byte-identical on re-serialization
        assert_eq!(parsed.to_csv(), text);
    }

    #[test]
    fn grid_table_schemas() {
        let g = GridFunction::new(0.0, 0.5, GridValues::Real(vec![1.0, 0.5, 0.0]));
        let t = grid_table(&g, "x");
        assert!(t.to_csv().starts_with("x,value\n"));
        assert_eq!(t.xs, vec![0.0, 0.5, 1.0]);

        let g = GridFunction::new(
            -1.0,
            1.0,
            GridValues::Complex(vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, -3.0)]),
        );
        let t = grid_table(&g, "omega");
        assert!(t.to_csv().starts_with("omega,re,im\n"));
        assert_eq!(t.column("im").unwrap(), &[1.0, -3.0]);
    }

    #[test]
    fn delta_json_roundtrip() {
        let d = DeltaExpansionJson {
            alpha: 2.5,
            x: 0.5,
            coeffs: vec![[1.0, 0.0], [1.25, 0.0]],
            center: 0.0,
            reflected: false,
        };
        let text = d.to_json();
        assert_eq!(DeltaExpansionJson::parse(&text).unwrap(), d);
    }

    #[test]
    fn atomic_write_creates_file() {
        let dir = std::env::temp_dir().join("fracspline-fmt-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_atomic(&path, "x,value\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,value\n");
        std::fs::remove_dir_all(&dir).ok();
    }
}
