//! CSV and JSON rendering of sweep rows, plus the metadata sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::request::{Format, SweepRequest};
use crate::sweep::{Param, PointError, Row, SweepOutput};

const VALUE_COLUMNS: [&str; 4] = ["exact", "asymptotic", "abs_diff", "rel_diff"];

pub fn header(out: &SweepOutput) -> Vec<&'static str> {
    let mut h = out.quantity.parameters().to_vec();
    h.extend(VALUE_COLUMNS);
    h
}

/// Seventeen significant digits, which round-trip every `f64`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn cells(row: &Row) -> Vec<String> {
    let mut c: Vec<String> = row
        .params
        .iter()
        .map(|p| match *p {
            Param::Int(v) => v.to_string(),
            Param::Real(v) => format_real(v),
        })
        .collect();
    c.extend(
        [row.exact, row.asymptotic, row.abs_diff(), row.rel_diff()]
            .into_iter()
            .map(format_real),
    );
    c
}

pub fn write_csv<W: Write>(out: &SweepOutput, w: W) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(header(out))?;
    for row in &out.rows {
        wtr.write_record(cells(row))?;
    }
    wtr.flush()
}

struct Record<'a> {
    names: &'a [&'static str],
    row: &'a Row,
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.names.len()))?;
        let mut names = self.names.iter();
        for p in &self.row.params {
            let name = names.next().expect("parameter count matches header");
            match *p {
                Param::Int(v) => map.serialize_entry(name, &v)?,
                Param::Real(v) => map.serialize_entry(name, &finite(v))?,
            }
        }
        let r = self.row;
        for (name, v) in names.zip([r.exact, r.asymptotic, r.abs_diff(), r.rel_diff()]) {
            map.serialize_entry(name, &finite(v))?;
        }
        map.end()
    }
}

/// JSON has no NaN; such values become `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

struct Records<'a>(&'a SweepOutput);

impl Serialize for Records<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = header(self.0);
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&Record { names: &names, row })?;
        }
        seq.end()
    }
}

pub fn write_json<W: Write>(out: &SweepOutput, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, &Records(out))?;
    writeln!(w)
}

pub fn write_data<W: Write>(out: &SweepOutput, format: Format, w: W) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(out, w),
        Format::Json => write_json(out, w),
    }
}

#[derive(Serialize)]
pub struct Metadata<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_unix_seconds: u64,
    pub request: &'a SweepRequest,
    pub rows: usize,
    pub errors: &'a [PointError],
}

pub fn sidecar_path(data: &Path) -> PathBuf {
    let mut name = data.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Writes the data file and, next to it, `<file>.meta.json` with the request,
/// the time of the run and any per-point errors.
pub fn write_outputs(req: &SweepRequest, out: &SweepOutput, path: &Path) -> std::io::Result<PathBuf> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_data(out, req.format, file)?;
    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        generated_unix_seconds: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        request: req,
        rows: out.rows.len(),
        errors: &out.errors,
    };
    let side = sidecar_path(path);
    let mut f = std::fs::File::create(&side)?;
    serde_json::to_writer_pretty(&mut f, &meta)?;
    writeln!(f)?;
    Ok(side)
}
