use std::collections::HashMap;
use std::fmt;

use crate::gf::{format_poly, Field, QuadraticExtension};
use crate::recurrence::{self, Case, RecurrenceParams};
use crate::{Error, Result};

const FIXTURES: &str = include_str!("../../data/tables.txt");

/// One row of a published table: `r^a_exp`, `r^b_exp` over `F_q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TableFixtureRow {
    pub table: u32,
    pub q: u64,
    pub a_exp: u64,
    pub b_exp: u64,
    pub n: u64,
    /// Printed rank; absent for the repeated-root table.
    pub e: Option<u64>,
}

/// Parses `table q a_exp b_exp N [e]` lines; `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<TableFixtureRow>> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(str::parse::<u64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Record(format!("fixture line {}: {e}", lineno + 1)))?;
        if !(5..=6).contains(&nums.len()) {
            return Err(Error::Record(format!("fixture line {}: expected 5 or 6 fields", lineno + 1)));
        }
        rows.push(TableFixtureRow {
            table: nums[0] as u32,
            q: nums[1],
            a_exp: nums[2],
            b_exp: nums[3],
            n: nums[4],
            e: nums.get(5).copied(),
        });
    }
    Ok(rows)
}

/// Embedded rows of table `id`.
pub fn fixtures(id: u32) -> Result<Vec<TableFixtureRow>> {
    if !(1..=3).contains(&id) {
        return Err(Error::UnknownTable(id));
    }
    Ok(parse_fixtures(FIXTURES)?.into_iter().filter(|r| r.table == id).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOutcome {
    pub fixture: TableFixtureRow,
    pub case: Case,
    pub n: u64,
    pub e: u64,
    /// Expected rank: printed, or the characteristic for the repeated-root table.
    pub expected_e: u64,
    pub modulus: String,
}

impl RowOutcome {
    pub fn n_matches(&self) -> bool {
        self.n == self.fixture.n
    }

    pub fn e_matches(&self) -> bool {
        self.e == self.expected_e
    }

    pub fn passed(&self) -> bool {
        self.n_matches() && self.e_matches()
    }
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "✓" } else { "✗" };
        let r = &self.fixture;
        write!(f, "q={} a=r^{} b=r^{}: N={} {}", r.q, r.a_exp, r.b_exp, self.n, mark(self.n_matches()))?;
        if !self.n_matches() {
            write!(f, " (expected {})", r.n)?;
        }
        let implied = if r.e.is_none() { " = p" } else { "" };
        write!(f, ", e={} {}", self.e, mark(self.e_matches()))?;
        if !self.e_matches() {
            write!(f, " (expected {}{implied})", self.expected_e)?;
        } else if r.e.is_none() {
            write!(f, " (e = p)")?;
        }
        write!(f, " [{}]", self.case)?;
        if !self.passed() {
            write!(f, " modulus: {}", self.modulus)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub id: u32,
    pub rows: Vec<RowOutcome>,
}

impl TableReport {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.matched() == self.rows.len()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Table {}", self.id)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        writeln!(f, "{}/{} rows match", self.matched(), self.rows.len())
    }
}

/// Recomputes `N` and `e` for each row of table `id` under Conway moduli.
pub fn reproduce_table(id: u32) -> Result<TableReport> {
    let rows = fixtures(id)?;
    let mut towers: HashMap<u64, QuadraticExtension> = HashMap::new();
    let mut out = Vec::with_capacity(rows.len());
    for fixture in rows {
        if let std::collections::hash_map::Entry::Vacant(e) = towers.entry(fixture.q) {
            e.insert(QuadraticExtension::new(Field::with_order(fixture.q)?)?);
        }
        let tower = &towers[&fixture.q];
        let field = tower.base();
        let params = RecurrenceParams::new(field.exp(fixture.a_exp as i64), field.exp(fixture.b_exp as i64))?;
        let fact = recurrence::classify(tower, &params);
        let profile = recurrence::profile_of(tower, &fact)?;
        out.push(RowOutcome {
            fixture,
            case: fact.case(),
            n: profile.period,
            e: profile.rank,
            expected_e: fixture.e.unwrap_or(field.p()),
            modulus: format_poly(field.modulus()),
        });
    }
    Ok(TableReport { id, rows: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_ten_rows_each() {
        for id in 1..=3 {
            assert_eq!(fixtures(id).unwrap().len(), 10);
        }
        assert!(matches!(fixtures(4), Err(Error::UnknownTable(4))));
        assert!(fixtures(3).unwrap().iter().all(|r| r.e.is_none()));
    }

    #[test]
    fn parse_rejects_short_rows() {
        assert!(parse_fixtures("1 9 2 3").is_err());
        assert_eq!(parse_fixtures("# c\n1 9 2 3 80 10 # trailing").unwrap().len(), 1);
    }

    #[test]
    fn first_rows_reproduce() {
        let t1 = reproduce_table(1).unwrap();
        assert_eq!((t1.rows[0].n, t1.rows[0].e), (80, 10));
        let t2 = reproduce_table(2).unwrap();
        let row = t2.rows.iter().find(|r| r.fixture.q == 121 && r.fixture.a_exp == 14).unwrap();
        assert!(row.passed());
        let t3 = reproduce_table(3).unwrap();
        let row = t3.rows.iter().find(|r| r.fixture.a_exp == 18).unwrap();
        assert_eq!(row.n, 168);
        assert_eq!(row.case, Case::Repeated);
    }
}
