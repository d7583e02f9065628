//! On-disk formats: code files, report files and Gram CSV, all with canonical bytes.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certificate::Certificate;
use crate::codes::{gram_of, Code};
use crate::error::{Error, Result};
use crate::matcore::{embed_from_gram, SymMatrix, Tolerance};

pub const FORMAT_VERSION: &str = "1";
pub const GRAM_CSV_HEADER: &str = "# equicode gram v1";

/// Where a code came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn named(construction: &str) -> Self {
        Metadata { construction: Some(construction.to_string()), ..Default::default() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn param_f64(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).and_then(Value::as_f64)
    }

    pub fn param_usize(&self, key: &str) -> Option<usize> {
        self.parameters.get(key).and_then(Value::as_u64).map(|v| v as usize)
    }
}

/// A code stored either as vectors or as a Gram matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub format_version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl CodeFile {
    pub fn from_code(code: &Code, metadata: Metadata) -> Self {
        CodeFile {
            format_version: FORMAT_VERSION.into(),
            dim: code.dim(),
            vectors: Some(code.vectors().to_vec()),
            gram: None,
            metadata,
        }
    }

    pub fn from_gram(gram: &SymMatrix, dim: usize, metadata: Metadata) -> Self {
        CodeFile { format_version: FORMAT_VERSION.into(), dim, vectors: None, gram: Some(gram.rows()), metadata }
    }

    fn check(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {:?}", self.format_version)));
        }
        match (&self.vectors, &self.gram) {
            (Some(_), Some(_)) => Err(Error::Parse("a code file holds vectors or gram, not both".into())),
            (None, None) => Err(Error::Parse("a code file needs vectors or gram".into())),
            (Some(v), None) => {
                if let Some(row) = v.iter().find(|r| r.len() != self.dim) {
                    return Err(Error::Parse(format!("vector of length {} in a dim {} file", row.len(), self.dim)));
                }
                Ok(())
            }
            (None, Some(g)) => {
                if g.iter().any(|r| r.len() != g.len()) {
                    return Err(Error::Parse("gram is not square".into()));
                }
                Ok(())
            }
        }
    }

    /// The code itself; Gram-only files are embedded and padded to `dim`.
    pub fn to_code(&self, tol: &Tolerance) -> Result<Code> {
        self.check()?;
        if let Some(v) = &self.vectors {
            return Code::with_tolerance(self.dim, v.clone(), tol);
        }
        let gram = SymMatrix::from_rows(self.gram.as_ref().expect("checked"))?;
        let code = embed_from_gram(&gram, tol)?;
        if code.dim() > self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: code.dim() });
        }
        Ok(code.padded(self.dim))
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(text)?;
        file.check()?;
        Ok(file)
    }
}

/// Output of `verify` and `certify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: String,
    pub tolerances: Tolerance,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
}

/// A check whose preconditions did not hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

impl ReportFile {
    pub fn new(tolerances: Tolerance) -> Self {
        ReportFile {
            version: env!("CARGO_PKG_VERSION").into(),
            tolerances,
            certificates: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }
}

/// Compact JSON with every float written as `{:.16e}` (17 significant digits).
struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Deterministic serialization: struct field order, sorted maps, fixed float format.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::InternalError(e.to_string()))
}

pub fn read_code_file(path: &Path) -> Result<CodeFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if text.starts_with(GRAM_CSV_HEADER) {
        let gram = parse_gram_csv(&text)?;
        let dim = gram.len();
        return Ok(CodeFile { format_version: FORMAT_VERSION.into(), dim, vectors: None, gram: Some(gram), metadata: Metadata::default() });
    }
    CodeFile::from_json(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Row-major Gram export under a fixed header line.
pub fn gram_csv(code: &Code) -> String {
    let mut out = String::from(GRAM_CSV_HEADER);
    out.push('\n');
    for row in gram_of(code).rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_gram_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim_end) != Some(GRAM_CSV_HEADER) {
        return Err(Error::Parse(format!("missing header {GRAM_CSV_HEADER:?}")));
    }
    let rows: Vec<Vec<f64>> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {c:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Parse("gram is not square".into()));
    }
    Ok(rows)
}

/// Distinct off-diagonal inner products, merged when closer than `angle_tol`.
pub fn inner_product_values(code: &Code, tol: &Tolerance) -> Vec<f64> {
    let mut all: Vec<f64> = (0..code.len())
        .flat_map(|i| ((i + 1)..code.len()).map(move |j| (i, j)))
        .map(|(i, j)| code.inner(i, j))
        .collect();
    all.sort_by(f64::total_cmp);
    let mut groups: Vec<(f64, f64, usize)> = Vec::new();
    for v in all {
        match groups.last_mut() {
            Some((_, last, count)) if v - *last <= tol.angle_tol => {
                *last = v;
                *count += 1;
            }
            _ => groups.push((v, v, 1)),
        }
    }
    groups.into_iter().map(|(lo, hi, _)| (lo + hi) / 2.0).collect()
}
