//! Exhaustive census of monic polynomials in a height box.
//!
//! Every coefficient vector `(a_1, ..., a_n)` with `|a_i| <= H` is
//! classified once. Work is split into contiguous blocks of `a_1` values
//! and the per-block counters are summed, so the result does not depend on
//! how many blocks or threads were used.

use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigpoly::MonicPoly;
use crate::disc::{discriminant, is_perfect_square};
use crate::error::{Error, Result};
use crate::fit::{fit_power_law, FitResult};
use crate::galois::{certify_irreducible, classify_with_disc};

/// Default cap on the number of polynomials a single census may visit.
pub const DEFAULT_CEILING: u128 = 1_000_000_000;

/// Column header of the census CSV format.
pub const CSV_HEADER: &str = "n,H,total,e_lower,e_upper,m_count,an_contained,undecided,elapsed_ms";

/// Counts for one `(n, H)` box.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: u64,
    /// `(2H + 1)^n`.
    pub total: u64,
    /// Polynomials certified not to have group `S_n`.
    pub e_lower: u64,
    /// `e_lower` plus the undecided ones.
    pub e_upper: u64,
    /// Polynomials whose discriminant is a square, zero included.
    pub m_count: u64,
    /// Nonzero square discriminant and certified irreducible.
    pub an_contained: u64,
    pub undecided: u64,
    pub elapsed_ms: u64,
}

impl CensusRow {
    /// The same row with `elapsed_ms` cleared, for reproducible output.
    pub fn without_timing(&self) -> CensusRow {
        CensusRow {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn get(&self, counter: Counter) -> u64 {
        match counter {
            Counter::Total => self.total,
            Counter::ELower => self.e_lower,
            Counter::EUpper => self.e_upper,
            Counter::MCount => self.m_count,
            Counter::AnContained => self.an_contained,
            Counter::Undecided => self.undecided,
        }
    }

    fn add(&mut self, other: &Tally) {
        self.e_lower += other.e_lower;
        self.m_count += other.m_count;
        self.an_contained += other.an_contained;
        self.undecided += other.undecided;
    }
}

/// A count column that [`fit_exponent`] can fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counter {
    Total,
    ELower,
    EUpper,
    MCount,
    AnContained,
    Undecided,
}

impl FromStr for Counter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "total" => Counter::Total,
            "e_lower" => Counter::ELower,
            "e_upper" => Counter::EUpper,
            "m_count" => Counter::MCount,
            "an_contained" => Counter::AnContained,
            "undecided" => Counter::Undecided,
            other => {
                return Err(Error::InvalidArgument(format!("unknown counter `{other}`")))
            }
        })
    }
}

/// Limits applied before enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub ceiling: u128,
    /// Ignore the ceiling.
    pub force: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            ceiling: DEFAULT_CEILING,
            force: false,
        }
    }
}

impl CensusConfig {
    /// Fails if `size` polynomials would exceed the ceiling.
    pub fn check(&self, size: u128) -> Result<()> {
        if !self.force && size > self.ceiling {
            return Err(Error::EnumerationTooLarge {
                size,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

/// `(2H + 1)^n`, saturating.
pub fn box_size(n: usize, h: u64) -> u128 {
    let side = 2 * u128::from(h) + 1;
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(side))
}

#[derive(Default)]
struct Tally {
    e_lower: u64,
    m_count: u64,
    an_contained: u64,
    undecided: u64,
}

/// How one polynomial contributes to the census counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// `Some(true)` for certified `S_n`, `Some(false)` for certified not.
    pub is_sn: Option<bool>,
    pub disc_square: bool,
    pub an_contained: bool,
}

/// Classifies a single polynomial for the census. Classification errors
/// are reported as undecided rather than aborting the run.
pub fn census_verdict(f: &MonicPoly, budget: usize) -> Verdict {
    let Ok(disc) = discriminant(f) else {
        return Verdict {
            is_sn: None,
            disc_square: false,
            an_contained: false,
        };
    };
    let disc_square = disc.is_zero() || is_perfect_square(&disc.value).is_some();
    let class = classify_with_disc(f, &disc, budget);
    let an_contained =
        disc_square && !disc.is_zero() && certify_irreducible(f, budget) == Some(true);
    Verdict {
        is_sn: class.is_sn(),
        disc_square,
        an_contained,
    }
}

fn tally_block(n: usize, h: i64, a1_range: std::ops::RangeInclusive<i64>, budget: usize) -> Tally {
    let mut tally = Tally::default();
    let mut coeffs = vec![-h; n];
    for a1 in a1_range {
        coeffs[0] = a1;
        for c in coeffs.iter_mut().skip(1) {
            *c = -h;
        }
        loop {
            let f = MonicPoly::from_i64(&coeffs).expect("degree is at least 1");
            let v = census_verdict(&f, budget);
            match v.is_sn {
                Some(false) => tally.e_lower += 1,
                None => tally.undecided += 1,
                Some(true) => {}
            }
            tally.m_count += u64::from(v.disc_square);
            tally.an_contained += u64::from(v.an_contained);
            // Odometer over a_2..a_n.
            let mut i = n - 1;
            loop {
                if i == 0 {
                    break;
                }
                if coeffs[i] < h {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -h;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
    tally
}

/// Splits `[-h, h]` into at most `parts` contiguous nonempty blocks.
fn blocks(h: i64, parts: usize) -> Vec<std::ops::RangeInclusive<i64>> {
    let len = 2 * h + 1;
    let parts = (parts.max(1) as i64).min(len);
    (0..parts)
        .map(|k| {
            let lo = -h + len * k / parts;
            let hi = -h + len * (k + 1) / parts - 1;
            lo..=hi
        })
        .collect()
}

/// Census of degree `n`, height `h`, with the default ceiling.
pub fn run_census(n: usize, h: u64, budget: usize, partitions: usize) -> Result<CensusRow> {
    run_census_with(n, h, budget, partitions, &CensusConfig::default())
}

/// Census of degree `n`, height `h`, split into `partitions` blocks of
/// leading coefficients that are processed in parallel.
pub fn run_census_with(
    n: usize,
    h: u64,
    budget: usize,
    partitions: usize,
    config: &CensusConfig,
) -> Result<CensusRow> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let size = box_size(n, h);
    config.check(size)?;
    let total = u64::try_from(size).map_err(|_| Error::EnumerationTooLarge {
        size,
        ceiling: u128::from(u64::MAX),
    })?;
    let hi = i64::try_from(h).map_err(|_| Error::CoefficientTooLarge)?;
    let start = Instant::now();
    let tallies: Vec<Tally> = blocks(hi, partitions)
        .into_par_iter()
        .map(|range| tally_block(n, hi, range, budget))
        .collect();
    let mut row = CensusRow {
        n,
        h,
        total,
        ..CensusRow::default()
    };
    for t in &tallies {
        row.add(t);
    }
    row.e_upper = row.e_lower + row.undecided;
    row.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(row)
}

/// Least-squares exponent of `counter` against `H` over `rows`.
pub fn fit_exponent(rows: &[CensusRow], counter: Counter) -> Result<FitResult> {
    fit_power_law(rows.iter().map(|r| (r.h as f64, r.get(counter) as f64)))
}

/// Writes rows as CSV with [`CSV_HEADER`].
pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

/// Renders rows as a CSV string.
pub fn to_csv_string(rows: &[CensusRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CensusRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse {
            input: header.join(","),
            reason: format!("expected header `{CSV_HEADER}`"),
        });
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_box() {
        let row = run_census(2, 1, 100, 1).unwrap();
        assert_eq!(row.total, 9);
        assert_eq!(row.m_count, 4);
        assert_eq!(row.e_lower, 4);
        assert_eq!(row.e_upper, 4);
        assert_eq!(row.undecided, 0);
        // x^2 - 1 and x^2 + x and x^2 - x are reducible; x^2 is too.
        assert_eq!(row.an_contained, 0);
    }

    #[test]
    fn zero_height() {
        let row = run_census(3, 0, 100, 4).unwrap();
        assert_eq!((row.total, row.e_lower, row.e_upper, row.m_count), (1, 1, 1, 1));
    }

    #[test]
    fn blocks_cover_range() {
        for h in 0..6 {
            for parts in 1..20 {
                let bs = blocks(h, parts);
                let all: Vec<i64> = bs.into_iter().flatten().collect();
                assert_eq!(all, (-h..=h).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn ceiling() {
        let config = CensusConfig {
            ceiling: 100,
            force: false,
        };
        assert!(matches!(
            run_census_with(3, 2, 10, 1, &config),
            Err(Error::EnumerationTooLarge { size: 125, ceiling: 100 })
        ));
        let forced = CensusConfig { force: true, ..config };
        assert_eq!(run_census_with(3, 2, 10, 1, &forced).unwrap().total, 125);
        assert!(matches!(
            run_census(6, 50, 100, 1),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![run_census(2, 2, 50, 2).unwrap(), run_census(2, 3, 50, 2).unwrap()];
        let text = to_csv_string(&rows).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(read_csv(text.as_bytes()).unwrap(), rows);
        assert_eq!(to_csv_string(&[]).unwrap().trim_end(), CSV_HEADER);
    }

    #[test]
    fn counter_names() {
        assert_eq!("e_upper".parse::<Counter>().unwrap(), Counter::EUpper);
        assert!("elapsed_ms".parse::<Counter>().is_err());
    }
}
