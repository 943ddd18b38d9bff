use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use crate::codes::{CodeReport, WeightDistribution};
use crate::{Error, Result};

pub const CSV_HEADER: &str =
    "q,a,b,case,N,e,K,w1,f1,w2,f2,d,d_dual,mds,projective,one_weight,u,subfield,semiprimitive,flags";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "jsonl" | "json" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (jsonl, csv)")),
        }
    }
}

/// Streams records in either format, counting bytes written.
pub struct RecordWriter<W: Write> {
    inner: W,
    format: Format,
    bytes: u64,
}

impl<W: Write> RecordWriter<W> {
    /// Writes the CSV header up front when `with_header` is set.
    pub fn new(inner: W, format: Format, with_header: bool) -> Result<Self> {
        let mut w = RecordWriter { inner, format, bytes: 0 };
        if format == Format::Csv && with_header {
            w.line(CSV_HEADER)?;
        }
        Ok(w)
    }

    fn line(&mut self, s: &str) -> Result<()> {
        self.inner.write_all(s.as_bytes())?;
        self.inner.write_all(b"\n")?;
        self.bytes += s.len() as u64 + 1;
        Ok(())
    }

    pub fn write(&mut self, r: &CodeReport) -> Result<()> {
        let line = match self.format {
            Format::Jsonl => serde_json::to_string(r)?,
            Format::Csv => csv_row(r).join(","),
        };
        self.line(&line)
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }

    pub fn bytes_written(&self) -> u64 {
        self.bytes
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}

/// Writes all records (with a CSV header) and returns the byte count.
pub fn export_records<W: Write>(records: &[CodeReport], format: Format, out: W) -> Result<u64> {
    let mut w = RecordWriter::new(out, format, true)?;
    for r in records {
        w.write(r)?;
    }
    w.flush()?;
    Ok(w.bytes_written())
}

pub fn import_records<R: Read>(input: R, format: Format) -> Result<Vec<CodeReport>> {
    match format {
        Format::Jsonl => BufReader::new(input)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
            .map(|l| Ok(serde_json::from_str(&l?)?))
            .collect(),
        Format::Csv => {
            let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
            let header: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
            if header.join(",") != CSV_HEADER {
                return Err(Error::Record(format!("unexpected CSV header {:?}", header.join(","))));
            }
            rdr.records().map(|row| parse_csv_row(&row?)).collect()
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(r: &CodeReport) -> Vec<String> {
    let w = r.weights.entries();
    let cell = |i: usize, j: usize| w.get(i).map(|p| if j == 0 { p.0 } else { p.1 });
    vec![
        r.q.to_string(),
        r.a.clone(),
        r.b.clone(),
        r.case.to_string(),
        r.n.to_string(),
        r.e.to_string(),
        r.k.to_string(),
        opt(cell(0, 0)),
        opt(cell(0, 1)),
        opt(cell(1, 0)),
        opt(cell(1, 1)),
        r.d.to_string(),
        r.d_dual.to_string(),
        r.mds.to_string(),
        r.projective.to_string(),
        r.one_weight.to_string(),
        opt(r.u),
        opt(r.subfield),
        opt(r.semiprimitive),
        r.flags.join(";"),
    ]
}

fn parse_csv_row(row: &csv::StringRecord) -> Result<CodeReport> {
    if row.len() != 20 {
        return Err(Error::Record(format!("expected 20 CSV fields, got {}", row.len())));
    }
    fn req<T: FromStr>(row: &csv::StringRecord, i: usize) -> Result<T> {
        row[i].parse().map_err(|_| Error::Record(format!("bad value {:?} in column {}", &row[i], i + 1)))
    }
    fn optional<T: FromStr>(row: &csv::StringRecord, i: usize) -> Result<Option<T>> {
        if row[i].is_empty() {
            Ok(None)
        } else {
            req(row, i).map(Some)
        }
    }
    let mut pairs = Vec::new();
    for (wi, fi) in [(7, 8), (9, 10)] {
        match (optional::<u64>(row, wi)?, optional::<u64>(row, fi)?) {
            (Some(w), Some(f)) => pairs.push((w, f)),
            (None, None) => {}
            _ => return Err(Error::Record("weight without frequency".into())),
        }
    }
    let weights = WeightDistribution::try_from(pairs).map_err(Error::Record)?;
    Ok(CodeReport {
        q: req(row, 0)?,
        a: row[1].to_string(),
        b: row[2].to_string(),
        case: row[3].parse().map_err(Error::Record)?,
        n: req(row, 4)?,
        e: req(row, 5)?,
        k: req(row, 6)?,
        weights,
        d: req(row, 11)?,
        d_dual: req(row, 12)?,
        mds: req(row, 13)?,
        projective: req(row, 14)?,
        one_weight: req(row, 15)?,
        u: optional(row, 16)?,
        subfield: optional(row, 17)?,
        semiprimitive: optional(row, 18)?,
        flags: if row[19].is_empty() { Vec::new() } else { row[19].split(';').map(String::from).collect() },
    })
}
