//! Exact-integer serialization of coefficient tables (JSON and CSV) and a
//! gzip-compressed on-disk cache for expensive series.
//!
//! All coefficients are serialized as decimal strings ("64", "-1/252") so
//! no consumer's numeric range can corrupt them. Output bytes are
//! deterministic for a fixed table: rows are sorted lexicographically by
//! exponent and JSON fields have a fixed order.
//!
//! The cache directory is taken from `KMFORMS_CACHE`, falling back to
//! `$XDG_CACHE_HOME/kmforms`, `~/.cache/kmforms`, then a temp directory.
//! Cache keys include the form name, unit string, grading weights and the
//! crate version; a cached table at bound B serves any request with a
//! bound <= B by filtering rows.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Grading, Unit};
use crate::theta::SiegelCoefficientTable;

pub const FORMAT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Truncation {
    #[serde(rename = "type")]
    pub kind: String,
    pub bound: i64,
}

/// Serializable form of a coefficient table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableExport {
    pub form: String,
    /// Comma-joined per-variable exponent units, as multiples of exp(pi i z).
    pub unit: String,
    pub truncation: Truncation,
    /// Grading weights on stored exponents (lambda = <weights, e>).
    pub weights: Vec<i64>,
    pub version: String,
    /// [e_1, ..., e_dim, "coefficient"] rows, sorted by exponent.
    pub coefficients: Vec<serde_json::Value>,
}

fn unit_to_string(u: &Unit) -> String {
    if u.denom().is_one() {
        format!("{}", u.numer())
    } else {
        format!("{}/{}", u.numer(), u.denom())
    }
}

fn unit_from_string(s: &str) -> Result<Unit> {
    let parse = |t: &str| {
        i64::from_str(t.trim()).map_err(|e| Error::Parse(format!("bad unit component {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(Unit::new(parse(n)?, parse(d)?)),
        None => Ok(Unit::new(parse(s)?, 1)),
    }
}

fn coeff_to_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn coeff_from_string(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(BigRational::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn export_series(series: &GradedSeries, form: &str, trunc_kind: &str) -> TableExport {
    let dim = series.dim();
    let units = series.units()[..dim]
        .iter()
        .map(unit_to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut rows: Vec<(Vec<i64>, String)> = series
        .iter()
        .map(|(e, c)| (e[..dim].to_vec(), coeff_to_string(c)))
        .collect();
    rows.sort();
    let coefficients = rows
        .into_iter()
        .map(|(e, c)| {
            let mut row: Vec<serde_json::Value> =
                e.into_iter().map(serde_json::Value::from).collect();
            row.push(serde_json::Value::from(c));
            serde_json::Value::from(row)
        })
        .collect();
    TableExport {
        form: form.to_string(),
        unit: units,
        truncation: Truncation { kind: trunc_kind.to_string(), bound: series.bound() },
        weights: series.grading().weights[..dim].to_vec(),
        version: FORMAT_VERSION.to_string(),
        coefficients,
    }
}

pub fn export_table(table: &SiegelCoefficientTable, trunc_kind: &str) -> TableExport {
    export_series(&table.to_series(), &table.name, trunc_kind)
}

impl TableExport {
    pub fn dim(&self) -> usize {
        self.unit.split(',').count()
    }

    fn parsed_rows(&self) -> Result<Vec<([i64; 3], BigRational)>> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(self.coefficients.len());
        for (i, row) in self.coefficients.iter().enumerate() {
            let arr = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {i}: not an array")))?;
            if arr.len() != dim + 1 {
                return Err(Error::Parse(format!(
                    "row {i}: expected {} entries, got {}",
                    dim + 1,
                    arr.len()
                )));
            }
            let mut e = [0i64; 3];
            for (j, v) in arr[..dim].iter().enumerate() {
                e[j] = v
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("row {i}: exponent {j} not an integer")))?;
            }
            let c = arr[dim]
                .as_str()
                .ok_or_else(|| Error::Parse(format!("row {i}: coefficient must be a string")))?;
            out.push((e, coeff_from_string(c)?));
        }
        Ok(out)
    }

    pub fn to_graded_series(&self) -> Result<GradedSeries> {
        let dim = self.dim();
        let mut units = [Unit::one(); 3];
        for (i, part) in self.unit.split(',').enumerate() {
            units[i] = unit_from_string(part)?;
        }
        let mut weights = [0i64; 3];
        for (i, w) in self.weights.iter().enumerate() {
            weights[i] = *w;
        }
        let mut s = GradedSeries::zero(dim, units, Grading::new(weights, self.truncation.bound));
        for (e, c) in self.parsed_rows()? {
            s.add_term(e, c)?;
        }
        Ok(s)
    }

    pub fn to_siegel_table(&self) -> Result<SiegelCoefficientTable> {
        SiegelCoefficientTable::from_series(&self.to_graded_series()?, &self.form)
    }

    /// Keep only rows with lambda <= bound (for serving shallower requests).
    pub fn filtered(&self, bound: i64) -> Result<TableExport> {
        if bound > self.truncation.bound {
            return Err(Error::Config(format!(
                "cannot deepen a table from bound {} to {bound}",
                self.truncation.bound
            )));
        }
        let dim = self.dim();
        let mut out = self.clone();
        out.truncation.bound = bound;
        let rows = self.parsed_rows()?;
        out.coefficients = rows
            .into_iter()
            .filter(|(e, _)| {
                let lam: i64 = (0..dim).map(|i| self.weights[i] * e[i]).sum();
                lam <= bound
            })
            .map(|(e, c)| {
                let mut row: Vec<serde_json::Value> =
                    e[..dim].iter().map(|x| serde_json::Value::from(*x)).collect();
                row.push(serde_json::Value::from(coeff_to_string(&c)));
                serde_json::Value::from(row)
            })
            .collect();
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("export serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<TableExport> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("json parse error at line {} column {}: {e}", e.line(), e.column()))
        })
    }

    /// CSV with an exponent-variable header and string coefficients.
    pub fn to_csv(&self) -> String {
        let dim = self.dim();
        let header = match dim {
            1 => "n,c",
            2 => "n,l,c",
            _ => "n,l,m,c",
        };
        let mut out = String::from(header);
        out.push('\n');
        for row in &self.coefficients {
            let arr = row.as_array().expect("rows are arrays");
            let cells: Vec<String> = arr
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_json(path: &Path) -> Result<TableExport> {
    let text = std::fs::read_to_string(path)?;
    TableExport::from_json(&text)
}

/// Resolve the cache directory.
pub fn cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("KMFORMS_CACHE") {
        return PathBuf::from(dir);
    }
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        return PathBuf::from(xdg).join("kmforms");
    }
    if let Ok(home) = std::env::var("HOME") {
        return PathBuf::from(home).join(".cache").join("kmforms");
    }
    std::env::temp_dir().join("kmforms-cache")
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn cache_stem(form: &str, unit: &str, weights: &[i64]) -> String {
    let w: Vec<String> = weights.iter().map(|x| x.to_string()).collect();
    sanitize(&format!(
        "{form}-u{unit}-w{}-v{FORMAT_VERSION}",
        w.join("_")
    ))
}

/// Store a table in the cache, gzip-compressed.
pub fn cache_store(dir: &Path, export: &TableExport) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let stem = cache_stem(&export.form, &export.unit, &export.weights);
    let path = dir.join(format!("{stem}-b{}.json.gz", export.truncation.bound));
    let mut enc = GzEncoder::new(Vec::new(), flate2::Compression::default());
    enc.write_all(export.to_json().as_bytes())?;
    std::fs::write(&path, enc.finish()?)?;
    Ok(path)
}

/// Fetch a cached table with bound >= `bound` (deepest match), filtered
/// down to exactly `bound`.
pub fn cache_fetch(
    dir: &Path,
    form: &str,
    unit: &str,
    weights: &[i64],
    bound: i64,
) -> Option<TableExport> {
    let stem = cache_stem(form, unit, weights);
    let mut best: Option<(i64, PathBuf)> = None;
    let entries = std::fs::read_dir(dir).ok()?;
    for entry in entries.flatten() {
        let name = entry.file_name().to_string_lossy().into_owned();
        let Some(rest) = name.strip_prefix(&format!("{stem}-b")) else {
            continue;
        };
        let Some(bstr) = rest.strip_suffix(".json.gz") else {
            continue;
        };
        let Ok(b) = bstr.parse::<i64>() else { continue };
        if b >= bound && best.as_ref().map(|(bb, _)| b < *bb).unwrap_or(true) {
            best = Some((b, entry.path()));
        }
    }
    let (_, path) = best?;
    let bytes = std::fs::read(path).ok()?;
    let mut dec = GzDecoder::new(&bytes[..]);
    let mut text = String::new();
    dec.read_to_string(&mut text).ok()?;
    let export = TableExport::from_json(&text).ok()?;
    export.filtered(bound).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::delta5;

    #[test]
    fn json_round_trip_is_exact() {
        let d = delta5(8).unwrap();
        let export = export_table(&d, "trace");
        let text = export.to_json();
        let back = TableExport::from_json(&text).unwrap();
        assert_eq!(back, export);
        let table = back.to_siegel_table().unwrap();
        assert_eq!(table.coeff(1, 1, 1), num_bigint::BigInt::from(64));
        assert_eq!(table.len(), d.len());
        // Deterministic bytes.
        assert_eq!(text, export_table(&d, "trace").to_json());
    }

    #[test]
    fn coefficients_serialize_as_strings() {
        let d = delta5(6).unwrap();
        let export = export_table(&d, "trace");
        let text = export.to_json();
        assert!(text.contains("\"64\""));
        // Rationals render as p/q.
        assert_eq!(coeff_to_string(&crate::arith::rat(-1, 252)), "-1/252");
        assert_eq!(
            coeff_from_string("-1/252").unwrap(),
            crate::arith::rat(-1, 252)
        );
    }

    #[test]
    fn csv_has_header_and_rows() {
        let d = delta5(6).unwrap();
        let csv = export_table(&d, "trace").to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,l,m,c"));
        assert!(csv.lines().any(|l| l == "1,1,1,64"));
    }

    #[test]
    fn cache_serves_shallower_requests() {
        let tmp = std::env::temp_dir().join(format!("kmforms-test-cache-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&tmp);
        let d = delta5(10).unwrap();
        let export = export_table(&d, "trace");
        cache_store(&tmp, &export).unwrap();
        let fetched = cache_fetch(&tmp, "delta5", &export.unit, &export.weights, 6).unwrap();
        assert_eq!(fetched.truncation.bound, 6);
        let shallow = fetched.to_siegel_table().unwrap();
        let direct = delta5(6).unwrap();
        assert_eq!(shallow.len(), direct.len());
        // Nothing deep enough for bound 12.
        assert!(cache_fetch(&tmp, "delta5", &export.unit, &export.weights, 12).is_none());
        let _ = std::fs::remove_dir_all(&tmp);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = TableExport::from_json("{\"form\": }").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
