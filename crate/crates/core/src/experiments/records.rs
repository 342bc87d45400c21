use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Cell, ErrorMetric};
use crate::error::{Error, Result};

/// Bit-exact header of every records file.
pub const CSV_HEADER: &str =
    "objective,n,d,inv_sigma2_total,replicate,seed,best_value,error_metric,error_value,acceptance_rate,wall_time_s";

/// Outcome of one anneal call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub objective: String,
    pub cell: Cell,
    pub replicate: usize,
    pub seed: u64,
    pub best_value: f64,
    pub error_metric: ErrorMetric,
    /// `None` exactly when `error_metric` is [`ErrorMetric::None`].
    pub error_value: Option<f64>,
    /// Accepted fraction over all steps of the run.
    pub acceptance_rate: f64,
    pub wall_time_s: Option<f64>,
}

impl RunRecord {
    pub fn sort_key(&self) -> ((usize, usize, u64), usize) {
        (self.cell.sort_key(), self.replicate)
    }

    /// The value summarized for this run: the error when there is one,
    /// otherwise the best value.
    pub fn metric_value(&self) -> f64 {
        self.error_value.unwrap_or(self.best_value)
    }
}

/// 17 significant digits; parses back to the identical `f64`.
pub(crate) fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

/// Writes records sorted by cell then replicate. An empty slice produces a
/// header-only file.
pub fn write_records(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.sort_key());

    let mut out = String::with_capacity(64 + 200 * records.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in sorted {
        let row = [
            r.objective.clone(),
            r.cell.n.to_string(),
            r.cell.d.to_string(),
            fmt_float(r.cell.inv_sigma2_total),
            r.replicate.to_string(),
            r.seed.to_string(),
            fmt_float(r.best_value),
            r.error_metric.as_str().to_owned(),
            fmt_opt(r.error_value),
            fmt_float(r.acceptance_rate),
            fmt_opt(r.wall_time_s),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

/// Writes through a temporary sibling file and renames it into place.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = std::fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::Csv {
            path: path.to_owned(),
            source: e,
        })?;
    let header = reader
        .headers()
        .map_err(|e| Error::Csv {
            path: path.to_owned(),
            source: e,
        })?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(Error::Record {
            path: path.to_owned(),
            row: 0,
            message: format!("unexpected header `{header}`"),
        });
    }

    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row_no = i + 1;
        let row = row.map_err(|e| Error::Csv {
            path: path.to_owned(),
            source: e,
        })?;
        let bad = |message: String| Error::Record {
            path: path.to_owned(),
            row: row_no,
            message,
        };
        let field = |k: usize| row.get(k).ok_or_else(|| bad(format!("missing column {k}")));
        fn num<T: std::str::FromStr>(s: &str, name: &str, bad: &dyn Fn(String) -> Error) -> Result<T> {
            s.parse().map_err(|_| bad(format!("bad {name} `{s}`")))
        }
        let opt = |s: &str, name: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, name, &bad).map(Some)
            }
        };
        let metric_s = field(7)?;
        let error_metric = ErrorMetric::parse(metric_s).ok_or_else(|| bad(format!("unknown metric `{metric_s}`")))?;
        let error_value = opt(field(8)?, "error_value")?;
        if error_value.is_some() == (error_metric == ErrorMetric::None) {
            return Err(bad(format!("error_value does not match metric `{metric_s}`")));
        }
        records.push(RunRecord {
            objective: field(0)?.to_owned(),
            cell: Cell {
                n: num(field(1)?, "n", &bad)?,
                d: num(field(2)?, "d", &bad)?,
                inv_sigma2_total: num(field(3)?, "inv_sigma2_total", &bad)?,
            },
            replicate: num(field(4)?, "replicate", &bad)?,
            seed: num(field(5)?, "seed", &bad)?,
            best_value: num(field(6)?, "best_value", &bad)?,
            error_metric,
            error_value,
            acceptance_rate: num(field(9)?, "acceptance_rate", &bad)?,
            wall_time_s: opt(field(10)?, "wall_time_s")?,
        });
    }
    Ok(records)
}

/// Recomputes each record's error from its best value and `reference(n)` and
/// reports the first record that disagrees.
pub fn verify_records(records: &[RunRecord], reference: impl Fn(usize) -> Option<f64>) -> Result<()> {
    for (i, r) in records.iter().enumerate() {
        let expected = r.error_metric.error(r.best_value, reference(r.cell.n));
        let consistent = match (expected, r.error_value) {
            (None, None) => r.error_metric == ErrorMetric::None,
            (Some(a), Some(b)) => a == b || (a - b).abs() <= 1e-12 * a.abs().max(1e-300),
            _ => false,
        };
        if !consistent {
            return Err(Error::Record {
                path: "<records>".into(),
                row: i + 1,
                message: format!(
                    "{} error {:?} inconsistent with best value {} (expected {:?})",
                    r.error_metric.as_str(),
                    r.error_value,
                    r.best_value,
                    expected
                ),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(replicate: usize, best: f64) -> RunRecord {
        RunRecord {
            objective: "lennard-jones".into(),
            cell: Cell {
                n: 6,
                d: 2,
                inv_sigma2_total: 100.0,
            },
            replicate,
            seed: 12345678901234567890,
            best_value: best,
            error_metric: ErrorMetric::Relative,
            error_value: Some((best + 12.5) / 12.5),
            acceptance_rate: 0.1 + 0.2,
            wall_time_s: None,
        }
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1 + 0.2, -12.712062, 1e-300, f64::MAX, 5e-324, -0.0] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn rows_are_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        write_records(&[record(2, -11.0), record(0, -12.0), record(1, -10.0)], &path).unwrap();
        let back = read_records(&path).unwrap();
        assert_eq!(back.iter().map(|r| r.replicate).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn consistency_check_catches_tampering() {
        let reference = |_| Some(-12.5);
        let mut rs = vec![record(0, -12.0)];
        verify_records(&rs, reference).unwrap();
        rs[0].best_value = -12.4;
        assert!(verify_records(&rs, reference).is_err());
        assert!(verify_records(&[record(0, -12.0)], |_| None).is_err());
    }

    #[test]
    fn rejects_foreign_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_records(&path), Err(Error::Record { row: 0, .. })));
    }
}
