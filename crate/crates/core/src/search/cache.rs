//! Append-only result cache, one record per line:
//! `d,k,status,eps_num,eps_den,witnessP,witnessQ` with witness points as
//! semicolon-separated coordinate tuples (coordinates space-separated).

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::LatticePoint;
use crate::rational::{Int, Rational};
use crate::search::SearchStatus;

#[derive(Debug, Clone)]
pub struct CacheRecord {
    pub d: u32,
    pub k: i64,
    pub status: SearchStatus,
    pub eps_sq: Rational,
    pub witness_p: Vec<LatticePoint>,
    pub witness_q: Vec<LatticePoint>,
}

fn format_points(points: &[LatticePoint]) -> String {
    points
        .iter()
        .map(|p| p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_points(s: &str, line: usize) -> Result<Vec<LatticePoint>> {
    s.split(';')
        .map(|tuple| {
            tuple
                .split_whitespace()
                .map(|c| {
                    c.parse::<i64>()
                        .map_err(|_| Error::Cache(format!("line {line}: bad coordinate {c:?}")))
                })
                .collect::<Result<Vec<i64>>>()
                .map(LatticePoint::new)
        })
        .collect()
}

pub fn format_record(r: &CacheRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.d,
        r.k,
        match r.status {
            SearchStatus::Complete => "COMPLETE",
            SearchStatus::Incomplete => "INCOMPLETE",
        },
        r.eps_sq.numer(),
        r.eps_sq.denom(),
        format_points(&r.witness_p),
        format_points(&r.witness_q),
    )
}

pub fn parse_record(line: &str, lineno: usize) -> Result<CacheRecord> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 7 {
        return Err(Error::Cache(format!(
            "line {lineno}: expected 7 comma-separated fields, got {}",
            fields.len()
        )));
    }
    let d: u32 = fields[0]
        .parse()
        .map_err(|_| Error::Cache(format!("line {lineno}: bad d {:?}", fields[0])))?;
    let k: i64 = fields[1]
        .parse()
        .map_err(|_| Error::Cache(format!("line {lineno}: bad k {:?}", fields[1])))?;
    let status = match fields[2] {
        "COMPLETE" => SearchStatus::Complete,
        "INCOMPLETE" => SearchStatus::Incomplete,
        other => return Err(Error::Cache(format!("line {lineno}: bad status {other:?}"))),
    };
    let num: Int = fields[3]
        .parse()
        .map_err(|_| Error::Cache(format!("line {lineno}: bad eps numerator")))?;
    let den: Int = fields[4]
        .parse()
        .map_err(|_| Error::Cache(format!("line {lineno}: bad eps denominator")))?;
    if !den.is_positive() {
        return Err(Error::Cache(format!("line {lineno}: eps denominator must be positive")));
    }
    Ok(CacheRecord {
        d,
        k,
        status,
        eps_sq: Rational::new(num, den),
        witness_p: parse_points(fields[5], lineno)?,
        witness_q: parse_points(fields[6], lineno)?,
    })
}

/// Read every record of a cache file. A missing file is an empty cache.
pub fn read_cache(path: &Path) -> Result<Vec<CacheRecord>> {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::Cache(format!("read {}: {e}", path.display()))),
    };
    content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_record(l.trim(), i + 1))
        .collect()
}

/// Last COMPLETE record for `(d, k)`, if any.
pub fn lookup_complete(records: &[CacheRecord], d: u32, k: i64) -> Option<&CacheRecord> {
    records
        .iter()
        .rev()
        .find(|r| r.d == d && r.k == k && r.status == SearchStatus::Complete)
}

/// Append one record; the file is created when missing.
pub fn append_record(path: &Path, record: &CacheRecord) -> Result<()> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::Cache(format!("open {}: {e}", path.display())))?;
    writeln!(f, "{}", format_record(record))
        .map_err(|e| Error::Cache(format!("write {}: {e}", path.display())))
}
