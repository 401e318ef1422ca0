//! Machine formats: JSON with exact integers, CSV count tables, aligned text.
//!
//! JSON integers are written as bare JSON numbers of arbitrary length, never
//! strings or floats. Rationals are `[numerator, denominator]` pairs.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::enumerate::{CountTable, PatternSet};
use crate::error::{Error, Result};

/// Exact rational as a JSON `[num, den]` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair(pub Number, pub Number);

impl From<&BigRational> for RationalPair {
    fn from(q: &BigRational) -> Self {
        Self(int_number(q.numer()), int_number(q.denom()))
    }
}

impl TryFrom<RationalPair> for BigRational {
    type Error = String;

    fn try_from(pair: RationalPair) -> std::result::Result<Self, String> {
        let num = number_int(&pair.0)?;
        let den = number_int(&pair.1)?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

pub fn int_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integers are JSON numbers")
}

pub fn uint_number(n: &BigUint) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integers are JSON numbers")
}

pub fn number_int(n: &Number) -> std::result::Result<BigInt, String> {
    BigInt::from_str(&n.to_string()).map_err(|_| format!("{n} is not an integer"))
}

pub fn number_uint(n: &Number) -> std::result::Result<BigUint, String> {
    BigUint::from_str(&n.to_string()).map_err(|_| format!("{n} is not a nonnegative integer"))
}

#[derive(Serialize, Deserialize)]
struct CountTableJson {
    patterns: PatternSet,
    n_max: usize,
    total: Vec<Number>,
    /// Rows for `n = 1..=n_max`, each listing `l = 1..=n`.
    by_blocks: Vec<Vec<Number>>,
}

impl Serialize for CountTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CountTableJson {
            patterns: self.pattern_set.clone(),
            n_max: self.n_max(),
            total: self.total.iter().map(uint_number).collect(),
            by_blocks: self.by_blocks[1..].iter().map(|row| row.iter().map(uint_number).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CountTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CountTableJson::deserialize(d)?;
        if j.total.len() != j.n_max + 1 || j.by_blocks.len() != j.n_max {
            return Err(D::Error::custom("row count does not match n_max"));
        }
        let total = j.total.iter().map(number_uint).collect::<std::result::Result<_, _>>().map_err(D::Error::custom)?;
        let mut rows = vec![Vec::new()];
        for row in &j.by_blocks {
            rows.push(row.iter().map(number_uint).collect::<std::result::Result<_, _>>().map_err(D::Error::custom)?);
        }
        CountTable::from_rows(j.patterns, total, rows).map_err(D::Error::custom)
    }
}

impl CountTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("count tables serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))
    }

    /// CSV with header `n,ell_1,...,ell_{n_max},total`, one row per `n = 0..=n_max`.
    pub fn to_csv(&self, by_blocks: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let n_max = self.n_max();
        let mut header = vec!["n".to_string()];
        if by_blocks {
            header.extend((1..=n_max).map(|l| format!("ell_{l}")));
        }
        header.push("total".into());
        w.write_record(&header).expect("in-memory write");
        for n in 0..=n_max {
            let mut record = vec![n.to_string()];
            if by_blocks {
                record.extend((1..=n_max).map(|l| self.by_blocks(n, l).to_string()));
            }
            record.push(self.total[n].to_string());
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Reads the by-blocks CSV written by [`CountTable::to_csv`]. The pattern
    /// set is not part of the CSV and must be supplied.
    pub fn from_csv(text: &str, pattern_set: PatternSet) -> Result<Self> {
        let bad = |msg: String| Error::Table(msg);
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
        let n_max = header.len().checked_sub(2).ok_or_else(|| bad("missing columns".into()))?;
        let expected: Vec<String> = std::iter::once("n".to_string())
            .chain((1..=n_max).map(|l| format!("ell_{l}")))
            .chain(std::iter::once("total".to_string()))
            .collect();
        if header.iter().ne(expected.iter().map(String::as_str)) {
            return Err(bad(format!("unexpected header {:?}", header)));
        }
        let mut total = Vec::new();
        let mut rows = Vec::new();
        for (n, record) in r.records().enumerate() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            let field = |i: usize| -> Result<BigUint> {
                record.get(i).unwrap_or("").parse().map_err(|_| bad(format!("row {n}, column {i} is not a count")))
            };
            if field(0)? != BigUint::from(n) {
                return Err(bad(format!("row {n} is out of order")));
            }
            let row = (1..=n_max).map(field).collect::<Result<Vec<_>>>()?;
            if row[n.min(n_max)..].iter().any(|c| !c.is_zero()) {
                return Err(bad(format!("row {n} has counts beyond l = n")));
            }
            rows.push(row[..n.min(n_max)].to_vec());
            total.push(field(n_max + 1)?);
        }
        if total.len() != n_max + 1 {
            return Err(bad(format!("expected {} rows, found {}", n_max + 1, total.len())));
        }
        CountTable::from_rows(pattern_set, total, rows)
    }

    /// Aligned columns under a caption naming the pattern set.
    pub fn to_text(&self, by_blocks: bool, ceiling: usize) -> String {
        let n_max = self.n_max();
        let mut out = String::new();
        let _ = writeln!(out, "Av(S) for S = {{{}}}, n <= {n_max} (ceiling {ceiling})", self.pattern_set);
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["n".to_string()];
        if by_blocks {
            header.extend((1..=n_max).map(|l| format!("l={l}")));
        }
        header.push("total".into());
        cells.push(header);
        for n in 0..=n_max {
            let mut row = vec![n.to_string()];
            if by_blocks {
                row.extend((1..=n_max).map(|l| if l <= n { self.by_blocks(n, l).to_string() } else { String::new() }));
            }
            row.push(self.total[n].to_string());
            cells.push(row);
        }
        out.push_str(&align(&cells));
        out
    }
}

/// Right-aligns every column to its widest cell.
pub fn align(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| cells.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
