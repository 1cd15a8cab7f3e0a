//! Integer points on the discriminant surface `z^2 = D(a_{n-1}, a_n)`.
//!
//! With `a_1, ..., a_{n-2}` fixed, the discriminant is a polynomial in the
//! last two coefficients. Points are counted by walking the `(a_{n-1}, a_n)`
//! grid and reading `z` off the discriminant: a positive square gives the
//! two points `z = ±sqrt(D)`, zero gives the single point `z = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bigpoly::MonicPoly;
use crate::census::CensusConfig;
use crate::disc::{discriminant, is_perfect_square, perfect_square_i128};
use crate::error::{Error, Result};
use crate::fit::{fit_power_law, FitResult};
use crate::sympoly::{specialize_prefix, MAX_SYMBOLIC_DEGREE};

/// Point count on the surface over the box `|a_{n-1}|, |a_n| <= H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceCount {
    pub n: usize,
    pub prefix: Vec<i64>,
    #[serde(rename = "H")]
    pub h: u64,
    /// Integer triples `(a_{n-1}, a_n, z)`.
    pub points: u64,
    /// Pairs `(a_{n-1}, a_n)` with square discriminant, zero included.
    pub square_pairs: u64,
}

/// Point count on the section `d1 a_{n-1} + d2 a_n + d3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineCount {
    pub n: usize,
    pub prefix: Vec<i64>,
    #[serde(serialize_with = "serialize_line")]
    pub line: (BigRational, BigRational, BigRational),
    #[serde(rename = "H")]
    pub h: u64,
    pub points: u64,
}

fn serialize_line<S: serde::Serializer>(
    line: &(BigRational, BigRational, BigRational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for d in [&line.0, &line.1, &line.2] {
        seq.serialize_element(&d.to_string())?;
    }
    seq.end()
}

/// The discriminant as a function of `(a_{n-1}, a_n)` for a fixed prefix.
enum SurfaceDisc {
    /// `coeffs[i][j]` multiplies `x^i y^j`.
    Dense(Vec<Vec<BigInt>>),
    /// Degrees without a symbolic discriminant fall back to the numeric one.
    Numeric { prefix: Vec<BigInt> },
}

impl SurfaceDisc {
    fn new(n: usize, prefix: &[i64]) -> Result<Self> {
        if n < 3 {
            return Err(Error::DegreeTooSmall(n));
        }
        if prefix.len() != n - 2 {
            return Err(Error::InvalidArgument(format!(
                "prefix must have {} entries, got {}",
                n - 2,
                prefix.len()
            )));
        }
        let prefix: Vec<BigInt> = prefix.iter().map(|&c| BigInt::from(c)).collect();
        if n > MAX_SYMBOLIC_DEGREE {
            return Ok(SurfaceDisc::Numeric { prefix });
        }
        let bivariate = specialize_prefix(n, &prefix)?;
        let dx = bivariate.degree_in(0).unwrap_or(0) as usize;
        let dy = bivariate.degree_in(1).unwrap_or(0) as usize;
        let mut coeffs = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for (e, c) in bivariate.terms() {
            coeffs[e[0] as usize][e[1] as usize] = c.clone();
        }
        Ok(SurfaceDisc::Dense(coeffs))
    }

    /// Coefficients in `y` once `x` is fixed, highest power last.
    fn row(&self, x: &BigInt) -> Option<Vec<BigInt>> {
        match self {
            SurfaceDisc::Dense(coeffs) => {
                let dy = coeffs[0].len();
                let mut out = vec![BigInt::zero(); dy];
                for (j, slot) in out.iter_mut().enumerate() {
                    for i in (0..coeffs.len()).rev() {
                        *slot = &*slot * x + &coeffs[i][j];
                    }
                }
                Some(out)
            }
            SurfaceDisc::Numeric { .. } => None,
        }
    }

    fn numeric(&self, x: &BigInt, y: &BigInt) -> BigInt {
        match self {
            SurfaceDisc::Numeric { prefix } => {
                let mut cs = prefix.clone();
                cs.extend([x.clone(), y.clone()]);
                let f = MonicPoly::new(cs).expect("nonempty coefficients");
                discriminant(&f).expect("degree at least 3").value
            }
            SurfaceDisc::Dense(_) => unreachable!("dense surfaces evaluate by rows"),
        }
    }
}

/// Evaluates one grid row, in `i128` while that is exact.
struct RowEval {
    small: Option<Vec<i128>>,
    big: Vec<BigInt>,
}

impl RowEval {
    fn new(row: Vec<BigInt>) -> Self {
        let small = row.iter().map(ToPrimitive::to_i128).collect();
        RowEval { small, big: row }
    }

    fn at(&self, y: i64) -> BigInt {
        let y = BigInt::from(y);
        self.big.iter().rev().fold(BigInt::zero(), |acc, c| acc * &y + c)
    }

    fn at_small(&self, y: i64) -> Option<i128> {
        let cs = self.small.as_ref()?;
        let mut acc: i128 = 0;
        for &c in cs.iter().rev() {
            acc = acc.checked_mul(i128::from(y))?.checked_add(c)?;
        }
        Some(acc)
    }
}

/// Points above one grid pair: 2, 1 or 0.
fn points_over(d: &BigInt) -> u64 {
    if d.is_zero() {
        1
    } else if is_perfect_square(d).is_some() {
        2
    } else {
        0
    }
}

fn points_over_small(d: i128) -> u64 {
    match d {
        0 => 1,
        _ if perfect_square_i128(d).is_some() => 2,
        _ => 0,
    }
}

fn count_at(surface: &SurfaceDisc, row: Option<&RowEval>, x: &BigInt, y: i64) -> u64 {
    match row {
        Some(r) => match r.at_small(y) {
            Some(d) => points_over_small(d),
            None => points_over(&r.at(y)),
        },
        None => points_over(&surface.numeric(x, &BigInt::from(y))),
    }
}

/// Counts surface points with `|a_{n-1}|, |a_n| <= H`.
pub fn count_surface(n: usize, prefix: &[i64], h: u64) -> Result<SurfaceCount> {
    count_surface_with(n, prefix, h, &CensusConfig::default())
}

/// [`count_surface`] with an explicit enumeration ceiling.
pub fn count_surface_with(
    n: usize,
    prefix: &[i64],
    h: u64,
    config: &CensusConfig,
) -> Result<SurfaceCount> {
    let side = 2 * u128::from(h) + 1;
    config.check(side * side)?;
    let hi = i64::try_from(h).map_err(|_| Error::CoefficientTooLarge)?;
    let surface = SurfaceDisc::new(n, prefix)?;
    let (points, square_pairs) = (-hi..=hi)
        .into_par_iter()
        .map(|x| {
            let xb = BigInt::from(x);
            let row = surface.row(&xb).map(RowEval::new);
            let mut acc = (0u64, 0u64);
            for y in -hi..=hi {
                let p = count_at(&surface, row.as_ref(), &xb, y);
                acc.0 += p;
                acc.1 += u64::from(p > 0);
            }
            acc
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(SurfaceCount {
        n,
        prefix: prefix.to_vec(),
        h,
        points,
        square_pairs,
    })
}

/// Counts surface points on the line `d1 a_{n-1} + d2 a_n + d3 = 0` inside
/// the box `|a_{n-1}|, |a_n| <= H`.
pub fn count_line(
    n: usize,
    prefix: &[i64],
    d1: &BigRational,
    d2: &BigRational,
    d3: &BigRational,
    h: u64,
) -> Result<LineCount> {
    if d1.is_zero() && d2.is_zero() {
        return Err(Error::DegenerateLine);
    }
    let hi = i64::try_from(h).map_err(|_| Error::CoefficientTooLarge)?;
    let surface = SurfaceDisc::new(n, prefix)?;
    let in_box = |v: &BigRational| -> Option<i64> {
        if !v.is_integer() {
            return None;
        }
        let v = v.to_integer();
        (v.abs() <= BigInt::from(hi)).then(|| v.to_i64().expect("bounded by H"))
    };
    let points = if !d2.is_zero() {
        // a_n = -(d1 a_{n-1} + d3) / d2
        (-hi..=hi)
            .into_par_iter()
            .map(|x| {
                let xq = BigRational::from_integer(x.into());
                let Some(y) = in_box(&(-(d1 * &xq + d3) / d2)) else {
                    return 0;
                };
                let xb = BigInt::from(x);
                let row = surface.row(&xb).map(RowEval::new);
                count_at(&surface, row.as_ref(), &xb, y)
            })
            .sum()
    } else {
        match in_box(&(-d3 / d1)) {
            None => 0,
            Some(x) => {
                let xb = BigInt::from(x);
                let row = surface.row(&xb).map(RowEval::new);
                (-hi..=hi)
                    .map(|y| count_at(&surface, row.as_ref(), &xb, y))
                    .sum()
            }
        }
    };
    Ok(LineCount {
        n,
        prefix: prefix.to_vec(),
        line: (d1.clone(), d2.clone(), d3.clone()),
        h,
        points,
    })
}

/// Least-squares exponent of the surface point count against `H`.
pub fn fit_surface_slope(n: usize, prefix: &[i64], h_list: &[u64]) -> Result<FitResult> {
    if h_list.len() < 2 {
        return Err(Error::InsufficientData(h_list.len()));
    }
    let mut samples = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let c = count_surface(n, prefix, h)?;
        samples.push((h as f64, c.points as f64));
    }
    fit_power_law(samples)
}

/// A reproducible prefix `a_1..a_{n-2}` with entries in `[-bound, bound]`.
pub fn random_prefix(n: usize, seed: u64, bound: i64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(-bound..=bound))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn surface_examples() {
        assert_eq!(count_surface(3, &[0], 1).unwrap().points, 3);
        assert_eq!(count_surface(3, &[0], 0).unwrap().points, 1);
        // 256 a4^3 - 27 a3^4 over the 3x3 box: (0,0) -> 0, (0,1) -> 256.
        assert_eq!(count_surface(4, &[0, 0], 1).unwrap().points, 3);
    }

    #[test]
    fn grid_matches_direct_discriminants() {
        // Degree 6 uses the symbolic discriminant, degree 7 the numeric one.
        for prefix in [vec![0i64, 1, -1, 2], vec![1i64, 0, -1, 0, 2]] {
            let n = prefix.len() + 2;
            for h in [0i64, 1, 2] {
                let mut brute = 0;
                for x in -h..=h {
                    for y in -h..=h {
                        let mut all = prefix.clone();
                        all.extend([x, y]);
                        let d = discriminant(&MonicPoly::from_i64(&all).unwrap()).unwrap();
                        brute += points_over(&d.value);
                    }
                }
                assert_eq!(count_surface(n, &prefix, h as u64).unwrap().points, brute);
            }
        }
    }

    #[test]
    fn line_examples() {
        let (zero, one) = (q(0, 1), q(1, 1));
        assert_eq!(count_line(3, &[0], &zero, &one, &zero, 4).unwrap().points, 5);
        assert_eq!(count_line(3, &[0], &one, &zero, &q(-1, 1), 10).unwrap().points, 0);
        assert_eq!(
            count_line(3, &[0], &zero, &zero, &one, 10),
            Err(Error::DegenerateLine)
        );
    }

    #[test]
    fn sharpness_family() {
        let (zero, one) = (q(0, 1), q(1, 1));
        for h in [1u64, 4, 9, 16, 25, 100] {
            let c = count_line(3, &[0], &zero, &one, &zero, h).unwrap();
            let r = (h as f64).sqrt().floor() as u64;
            assert_eq!(c.points, 2 * r + 1);
        }
    }

    #[test]
    fn non_integer_forced_values_are_skipped() {
        // a_3 = a_2 / 2 only meets the grid at even a_2.
        let c = count_line(3, &[0], &q(1, 2), &q(-1, 1), &q(0, 1), 6).unwrap();
        let mut brute = 0;
        for x in (-6i64..=6).filter(|x| x % 2 == 0) {
            let d = BigInt::from(-4 * x * x * x - 27 * (x / 2) * (x / 2));
            brute += points_over(&d);
        }
        assert_eq!(c.points, brute);
    }

    #[test]
    fn seeded_prefixes() {
        assert_eq!(random_prefix(5, 7, 10), random_prefix(5, 7, 10));
        assert_eq!(random_prefix(5, 7, 10).len(), 3);
        assert!(random_prefix(6, 1, 3).iter().all(|c| c.abs() <= 3));
    }
}
