use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::{SeriesMatrix, SourceMeta};

/// Reads a comma-separated numeric table, one channel per column.
///
/// Without a header row the channels are labelled `c1..cM`. Row numbers in
/// errors count data rows from 1, excluding the header.
pub fn load_csv(path: impl AsRef<Path>, has_header: bool) -> Result<SeriesMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_csv(file, has_header, &path.display().to_string())
}

pub fn read_csv<R: Read>(reader: R, has_header: bool, source: &str) -> Result<SeriesMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut records = rdr.records();
    let mut labels: Option<Vec<String>> = None;
    if has_header {
        match records.next() {
            Some(rec) => {
                let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
                labels = Some(rec.iter().map(str::to_string).collect());
            }
            None => return Err(Error::TooFewRows),
        }
    }

    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut width = labels.as_ref().map(Vec::len);
    for (idx, rec) in records.enumerate() {
        let row = idx + 1;
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        let expected = *width.get_or_insert(rec.len());
        if rec.len() != expected {
            return Err(Error::RaggedRow {
                row,
                expected,
                found: rec.len(),
            });
        }
        if columns.is_empty() {
            columns = vec![Vec::new(); expected];
        }
        for (c, field) in rec.iter().enumerate() {
            let value: f64 = field
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::NonNumeric {
                    row,
                    column: c + 1,
                    value: field.to_string(),
                })?;
            columns[c].push(value);
        }
    }

    let m = width.unwrap_or(0);
    if m < 2 {
        return Err(Error::TooFewChannels);
    }
    if columns.is_empty() || columns[0].len() < 2 {
        return Err(Error::TooFewRows);
    }
    let labels = labels.unwrap_or_else(|| SeriesMatrix::default_labels(m));
    SeriesMatrix::new(columns, labels, SourceMeta::new(source))
}

/// Writes the matrix with a header row. Values use the shortest decimal form
/// that round-trips to the same `f64`.
pub fn write_csv<W: Write>(series: &SeriesMatrix, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| Error::Csv(e.to_string());
    w.write_record(series.labels()).map_err(csv_err)?;
    let mut row = Vec::with_capacity(series.channels());
    for t in 0..series.rows() {
        row.clear();
        row.extend(series.columns().iter().map(|c| format!("{}", c[t])));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<csv writer>".into(),
        source,
    })?;
    Ok(())
}
