use std::fmt;
use std::path::Path;

use pathfinding::prelude::{kuhn_munkres_min, Matrix};
use serde::Deserialize;

use super::catalog::Catalog;
use super::PipelineError;
use crate::certifier::ResultRecord;

/// Published tables shipped with the crate.
pub const REFERENCE_CSV: &str = include_str!("../../data/reference.csv");

/// One published row. Transposed `d` pairs are stored sorted with
/// `swapped` set.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReferenceRow {
    pub n: usize,
    pub row: usize,
    pub d_min: f64,
    pub d_max: f64,
    /// Found by Danzer, hence D-irreducible.
    pub star: bool,
    /// Maximal.
    pub double_star: bool,
    pub swapped: bool,
    #[serde(default)]
    pub note: String,
}

impl ReferenceRow {
    /// Maximal graphs are Danzer graphs as well.
    pub fn danzer(&self) -> bool {
        self.star || self.double_star
    }
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>, PipelineError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for r in rdr.deserialize() {
        let row: ReferenceRow = r.map_err(|e| PipelineError::Format(format!("reference: {e}")))?;
        if row.d_min > row.d_max {
            return Err(PipelineError::Format(format!("reference row {}/{} unsorted", row.n, row.row)));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn load_reference(path: Option<&Path>) -> Result<Vec<ReferenceRow>, PipelineError> {
    match path {
        Some(p) => parse_reference(&std::fs::read_to_string(p)?),
        None => parse_reference(REFERENCE_CSV),
    }
}

/// Interval tolerance for a given `n`.
pub fn d_tolerance(n: usize) -> f64 {
    if n <= 9 {
        2e-3
    } else {
        5e-3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowMatch {
    pub row: ReferenceRow,
    /// Index into the catalog records.
    pub record: usize,
    pub delta_min: f64,
    pub delta_max: f64,
    pub maximal_ok: bool,
    /// Danzer rows must be D-irreducible; others are unconstrained.
    pub d_irreducible_ok: bool,
}

impl RowMatch {
    pub fn delta(&self) -> f64 {
        self.delta_min.abs().max(self.delta_max.abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceReport {
    pub n: usize,
    pub expected: usize,
    pub found: usize,
    pub tolerance: f64,
    pub matches: Vec<RowMatch>,
    /// Rows left without a record.
    pub unmatched_rows: Vec<usize>,
    /// Records left without a row.
    pub unmatched_records: Vec<usize>,
}

impl ReferenceReport {
    pub fn count_ok(&self) -> bool {
        self.expected == self.found
    }

    pub fn max_delta(&self) -> f64 {
        self.matches.iter().map(RowMatch::delta).fold(0.0, f64::max)
    }

    pub fn intervals_ok(&self) -> bool {
        self.matches.iter().all(|m| m.delta() <= self.tolerance)
    }

    pub fn flags_ok(&self) -> bool {
        self.matches.iter().all(|m| m.maximal_ok && m.d_irreducible_ok)
    }

    pub fn passed(&self) -> bool {
        self.count_ok() && self.unmatched_rows.is_empty() && self.intervals_ok() && self.flags_ok()
    }
}

impl fmt::Display for ReferenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} records {}/{} max |dd| {:.2e} (tol {:.0e}) {}",
            self.n,
            self.found,
            self.expected,
            self.max_delta(),
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for m in &self.matches {
            let stars = if m.row.double_star {
                "**"
            } else if m.row.star {
                "*"
            } else {
                ""
            };
            writeln!(
                f,
                "  row {:>2}{:<2} [{:.5}, {:.5}] record {:>2} dmin {:+.1e} dmax {:+.1e}{}{}{}",
                m.row.row,
                stars,
                m.row.d_min,
                m.row.d_max,
                m.record,
                m.delta_min,
                m.delta_max,
                if m.delta() > self.tolerance { " INTERVAL" } else { "" },
                if m.maximal_ok { "" } else { " MAXIMAL-FLAG" },
                if m.d_irreducible_ok { "" } else { " D-IRREDUCIBLE-FLAG" },
            )?;
        }
        for r in &self.unmatched_rows {
            writeln!(f, "  row {r} has no record")?;
        }
        for r in &self.unmatched_records {
            writeln!(f, "  record {r} has no row")?;
        }
        Ok(())
    }
}

fn mismatch_cost(row: &ReferenceRow, rec: &ResultRecord) -> f64 {
    let mut c = (rec.d_min - row.d_min).abs() + (rec.d_max - row.d_max).abs();
    if !c.is_finite() {
        c = 10.0;
    }
    if rec.flags.maximal != row.double_star {
        c += 0.01;
    }
    if row.danzer() && !rec.flags.d_irreducible {
        c += 0.01;
    }
    c
}

/// Pairs catalog records with the published rows for the catalog's `n` by a
/// minimum-cost assignment on interval distance and flags.
pub fn verify_reference(catalog: &Catalog, reference: &[ReferenceRow]) -> ReferenceReport {
    let n = catalog.meta.n;
    let rows: Vec<&ReferenceRow> = reference.iter().filter(|r| r.n == n).collect();
    let recs: Vec<(usize, &ResultRecord)> = catalog
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.status == crate::certifier::Status::Embedded)
        .collect();
    let tolerance = d_tolerance(n);
    let mut report = ReferenceReport {
        n,
        expected: rows.len(),
        found: catalog.records.len(),
        tolerance,
        matches: Vec::new(),
        unmatched_rows: Vec::new(),
        unmatched_records: Vec::new(),
    };
    let scaled = |row: &ReferenceRow, rec: &ResultRecord| (mismatch_cost(row, rec) * 1e9).round() as i64;
    let pairs: Vec<(usize, usize)> = if rows.is_empty() || recs.is_empty() {
        Vec::new()
    } else if rows.len() <= recs.len() {
        let m = Matrix::from_fn(rows.len(), recs.len(), |(i, j)| scaled(rows[i], recs[j].1));
        kuhn_munkres_min(&m).1.into_iter().enumerate().collect()
    } else {
        let m = Matrix::from_fn(recs.len(), rows.len(), |(j, i)| scaled(rows[i], recs[j].1));
        kuhn_munkres_min(&m).1.into_iter().enumerate().map(|(j, i)| (i, j)).collect()
    };
    for (i, row) in rows.iter().enumerate() {
        match pairs.iter().find(|p| p.0 == i) {
            Some(&(_, j)) => {
                let rec = recs[j].1;
                report.matches.push(RowMatch {
                    row: (*row).clone(),
                    record: recs[j].0,
                    delta_min: rec.d_min - row.d_min,
                    delta_max: rec.d_max - row.d_max,
                    maximal_ok: rec.flags.maximal == row.double_star,
                    d_irreducible_ok: !row.danzer() || rec.flags.d_irreducible,
                });
            }
            None => report.unmatched_rows.push(row.row),
        }
    }
    for (j, (idx, _)) in recs.iter().enumerate() {
        if !pairs.iter().any(|p| p.1 == j) {
            report.unmatched_records.push(*idx);
        }
    }
    report
}
