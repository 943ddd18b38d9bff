//! Field-wide scans, the published-table fixtures, and record export.

mod export;
mod tables;

pub use export::{export_records, import_records, Format, RecordWriter, CSV_HEADER};
pub use tables::{fixtures, parse_fixtures, reproduce_table, RowOutcome, TableFixtureRow, TableReport};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::codes::{analyze, AnalyzeOptions, CodeReport};
use crate::gf::{Element, QuadraticExtension};
use crate::recurrence::{Case, RecurrenceParams};
use crate::Result;

/// One scanned `(a, b)` pair; the report already carries `q`, `a` and `b`.
pub type ScanRecord = CodeReport;

/// Per-pair enumeration cap used by scans (`q^2 * N`). Every pair with
/// `q <= 27` fits; larger fields fall back to the closed form for long codes.
pub const DEFAULT_SCAN_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Filter {
    Mds,
    OneWeight,
    OutsideClassification,
    Case(Case),
}

impl Filter {
    pub fn matches(&self, r: &CodeReport) -> bool {
        match self {
            Filter::Mds => r.mds,
            Filter::OneWeight => r.one_weight,
            Filter::OutsideClassification => r.outside_classification(),
            Filter::Case(c) => r.case == *c,
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "mds" => Ok(Filter::Mds),
            "one-weight" => Ok(Filter::OneWeight),
            "outside-classification" => Ok(Filter::OutsideClassification),
            other => other.parse::<Case>().map(Filter::Case).map_err(|_| {
                format!(
                    "unknown filter {s:?} (mds, one-weight, outside-classification, irreducible, distinct, repeated)"
                )
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub analyze: AnalyzeOptions,
    /// Records must satisfy every filter.
    pub filters: Vec<Filter>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { analyze: AnalyzeOptions { bruteforce_budget: Some(DEFAULT_SCAN_BUDGET) }, filters: Vec::new() }
    }
}

/// Analyzes every pair `(a, b)`, `b != 0`, in order of `(log a, log b)` with `a = 0` first.
pub fn scan_field(tower: &QuadraticExtension, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    let mut out = Vec::new();
    scan_chunks(tower, opts, 0, |_, chunk| {
        out.extend(chunk);
        Ok(())
    })?;
    Ok(out)
}

/// Scans one value of `a` at a time, starting at position `start` in
/// [`Field::elements`](crate::gf::Field::elements) order, handing each
/// finished chunk to `sink` together with its position.
pub fn scan_chunks<F>(tower: &QuadraticExtension, opts: &ScanOptions, start: usize, mut sink: F) -> Result<()>
where
    F: FnMut(usize, Vec<ScanRecord>) -> Result<()>,
{
    let field = tower.base();
    let bs: Vec<Element> = field.nonzero().collect();
    for (pos, a) in field.elements().enumerate().skip(start) {
        let chunk = bs
            .par_iter()
            .map(|&b| {
                let params = RecurrenceParams::new(a, b)?;
                analyze(tower, &params, &opts.analyze)
            })
            .collect::<Result<Vec<_>>>()?;
        let kept = chunk.into_iter().filter(|r| opts.filters.iter().all(|f| f.matches(r))).collect();
        sink(pos, kept)?;
    }
    Ok(())
}

/// Counts per case and per flag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub records: usize,
    pub by_case: BTreeMap<Case, usize>,
    pub mds: usize,
    pub one_weight: usize,
    pub outside_classification: usize,
    pub flags: BTreeMap<String, usize>,
}

impl ScanSummary {
    pub fn add(&mut self, r: &CodeReport) {
        self.records += 1;
        *self.by_case.entry(r.case).or_default() += 1;
        self.mds += r.mds as usize;
        self.one_weight += r.one_weight as usize;
        self.outside_classification += r.outside_classification() as usize;
        for f in &r.flags {
            *self.flags.entry(f.clone()).or_default() += 1;
        }
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a CodeReport>) -> Self {
        let mut s = ScanSummary::default();
        records.into_iter().for_each(|r| s.add(r));
        s
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records: {}", self.records)?;
        for (case, n) in &self.by_case {
            writeln!(f, "  {case}: {n}")?;
        }
        writeln!(f, "  mds: {}", self.mds)?;
        writeln!(f, "  one-weight: {}", self.one_weight)?;
        writeln!(f, "  outside-classification: {}", self.outside_classification)?;
        for (flag, n) in &self.flags {
            writeln!(f, "  flag {flag}: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn tower(q: u64) -> QuadraticExtension {
        QuadraticExtension::new(Field::with_order(q).unwrap()).unwrap()
    }

    #[test]
    fn f3_scan_has_six_records_in_order() {
        let recs = scan_field(&tower(3), &ScanOptions::default()).unwrap();
        let pairs: Vec<_> = recs.iter().map(|r| (r.a.as_str(), r.b.as_str())).collect();
        assert_eq!(
            pairs,
            vec![("0", "r^0"), ("0", "r^1"), ("r^0", "r^0"), ("r^0", "r^1"), ("r^1", "r^0"), ("r^1", "r^1")]
        );
    }

    #[test]
    fn f5_mds_filter_contains_3_3() {
        let opts = ScanOptions { filters: vec![Filter::Mds], ..Default::default() };
        let recs = scan_field(&tower(5), &opts).unwrap();
        // 3 = r^3 for r = 2
        assert!(recs.iter().any(|r| r.a == "r^3" && r.b == "r^3"));
        assert!(recs.iter().all(|r| r.mds && r.k == 1));
    }

    #[test]
    fn filters_parse() {
        assert_eq!("outside-classification".parse::<Filter>().unwrap(), Filter::OutsideClassification);
        assert_eq!("one_weight".parse::<Filter>().unwrap(), Filter::OneWeight);
        assert_eq!("repeated".parse::<Filter>().unwrap(), Filter::Case(Case::Repeated));
        assert!("bogus".parse::<Filter>().is_err());
    }

    #[test]
    fn chunks_resume_where_asked() {
        let t = tower(5);
        let mut seen = Vec::new();
        scan_chunks(&t, &ScanOptions::default(), 3, |pos, chunk| {
            assert_eq!(chunk.len(), 4);
            seen.push(pos);
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, vec![3, 4]);
    }

    #[test]
    fn summary_counts() {
        let recs = scan_field(&tower(3), &ScanOptions::default()).unwrap();
        let s = ScanSummary::from_records(&recs);
        assert_eq!(s.records, 6);
        assert_eq!(s.by_case.values().sum::<usize>(), 6);
    }
}
