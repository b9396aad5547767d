//! Deterministic JSON and CSV output.

use std::io::{self, Write};

use homsphere::SpectrumTable;
use serde::Serialize;
use serde_json::ser::Formatter;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct OutputRecord<'a, I: Serialize, R: Serialize> {
    pub schema_version: &'a str,
    pub command: &'a str,
    pub inputs: I,
    pub results: R,
}

/// Compact JSON with every float written as `d.dddddddddddddddde±x`
/// (17 significant digits), which round-trips exactly.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn write_json<W: Write>(mut w: W, record: &impl Serialize) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut w, FixedDigits);
    record.serialize(&mut ser).map_err(io::Error::other)?;
    writeln!(w)
}

#[derive(Serialize)]
struct CsvRow {
    value: String,
    multiplicity: u64,
    k_sources: String,
}

/// One row per distinct eigenvalue: `value,multiplicity,k_sources`, with the
/// source representations joined by `;`.
pub fn write_spectrum_csv<W: Write>(w: W, table: &SpectrumTable) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for e in &table.entries {
        let k_sources: Vec<String> = e.k_sources.iter().map(u32::to_string).collect();
        out.serialize(CsvRow {
            value: format_f64(e.value),
            multiplicity: e.multiplicity,
            k_sources: k_sources.join(";"),
        })
        .map_err(io::Error::other)?;
    }
    out.flush()
}
