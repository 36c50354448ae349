//! Shared helpers for the byte-deterministic text exports.

use crate::error::Result;

/// Fixed six-decimal rendering; negative zero is printed as zero.
pub(crate) fn real6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub(crate) fn finish_csv(wtr: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = wtr
        .into_inner()
        .map_err(|e| crate::Error::Validation(format!("csv buffer: {e}")))?;
    // csv only emits what we feed it, and every field is a Rust String.
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
