use std::io::{Read, Write};

use super::Matrix;
use crate::error::{Error, Result};

/// One row per line, comma-separated. `f64`'s `Display` is the shortest
/// representation that parses back to the same value.
pub fn write_csv<W: Write>(m: &Matrix, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Matrix> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut data = Vec::new();
    let mut rows = 0;
    let mut cols = None;
    for record in r.records() {
        let record = record?;
        let n = record.len();
        if *cols.get_or_insert(n) != n {
            return Err(Error::Parse(format!("row {rows} has {n} fields")));
        }
        for field in record.iter() {
            data.push(
                field
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{field:?}: {e}")))?,
            );
        }
        rows += 1;
    }
    Matrix::from_vec(rows, cols.unwrap_or(0), data)
}

pub fn to_csv_string(m: &Matrix) -> String {
    let mut buf = Vec::new();
    write_csv(m, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii output")
}

/// `{"rows": r, "cols": c, "entries": [row-major]}`.
pub fn to_json_string(m: &Matrix) -> String {
    serde_json::to_string(m).expect("matrix serializes")
}

pub fn from_json_str(s: &str) -> Result<Matrix> {
    Ok(serde_json::from_str(s)?)
}
