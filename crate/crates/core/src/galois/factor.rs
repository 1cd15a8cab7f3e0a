//! Brute-force search for a proper monic integer factor.
//!
//! Complex roots are located with Aberth iteration in `f64`, refined in
//! fixed-point big-integer arithmetic, and every subset of roots of an
//! admissible size is expanded into a candidate factor. Candidates whose
//! coefficients round cleanly to integers are confirmed by exact division,
//! so a returned factor is always correct; precision only decides whether
//! the search can conclude that no factor exists.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigpoly::{IntPoly, MonicPoly};
use crate::disc::discriminant;
use crate::error::{Error, Result};
use crate::ratpoly::RatPoly;

use super::modp::{cycle_type_mod_p, primes};

/// Largest degree the factor search accepts.
pub const MAX_ORACLE_DEGREE: usize = 8;
/// Largest root modulus bound the factor search accepts.
pub const MAX_ORACLE_ROOT_BOUND: f64 = 1e6;

const PRECISIONS: [u32; 3] = [128, 256, 512];
const DEGREE_SIEVE_PRIMES: usize = 24;

/// Returns a monic integer factor `g` of `f` with `1 <= deg g < n`, or
/// `None` when `f` is irreducible over the rationals.
pub fn reducible_witness(f: &MonicPoly) -> Result<Option<MonicPoly>> {
    let n = f.degree();
    if n > MAX_ORACLE_DEGREE {
        return Err(Error::OutsideOracleRange(format!(
            "degree {n} exceeds {MAX_ORACLE_DEGREE}"
        )));
    }
    let bound = f.root_bound_f64();
    if bound > MAX_ORACLE_ROOT_BOUND {
        return Err(Error::OutsideOracleRange(format!(
            "root bound {bound:.3e} exceeds {MAX_ORACLE_ROOT_BOUND:e}"
        )));
    }
    if n == 1 {
        return Ok(None);
    }
    if f.a(n).is_zero() {
        return Ok(Some(MonicPoly::from_i64(&[0])?));
    }
    let disc = discriminant(f)?.value;
    if disc.is_zero() {
        return repeated_factor(f).map(Some);
    }

    let allowed = admissible_degrees(f, &disc);
    if allowed.iter().skip(1).take(n - 1).all(|ok| !ok) {
        return Ok(None);
    }

    let approx = aberth_f64(f, bound.max(1.0));
    if allowed[1] {
        if let Some(r) = integer_root_near(f, &approx) {
            return Ok(Some(MonicPoly::new(vec![-r])?));
        }
    }

    let target = f.to_int_poly();
    let sizes: Vec<usize> = (1..=n / 2).filter(|&k| allowed[k]).collect();
    for prec in PRECISIONS {
        let Some((roots, err_bits)) = refine_fixed(f, &approx, prec) else {
            continue;
        };
        match search_subsets(&target, &roots, &sizes, prec, bound, err_bits) {
            Search::Found(g) => return Ok(Some(MonicPoly::from_int_poly(&g)?)),
            Search::NoFactor => return Ok(None),
            Search::Ambiguous => continue,
        }
    }
    Err(Error::PrecisionExhausted(*PRECISIONS.last().unwrap()))
}

/// `gcd(f, f')`, which for monic integer `f` is monic with integer
/// coefficients.
fn repeated_factor(f: &MonicPoly) -> Result<MonicPoly> {
    let fr = RatPoly::from(&f.to_int_poly());
    let g = fr.gcd(&fr.derivative());
    let gi = g
        .to_int_poly()
        .expect("monic gcd of monic integer polynomials is integral");
    MonicPoly::from_int_poly(&gi)
}

/// `allowed[k]` is false when some squarefree reduction rules out a factor
/// of degree `k`: factor degrees must be sub-sums of every cycle type.
fn admissible_degrees(f: &MonicPoly, disc: &BigInt) -> Vec<bool> {
    let n = f.degree();
    let full: u64 = (1u64 << (n + 1)) - 1;
    let mut mask = full;
    let mut used = 0;
    for &p in primes() {
        if used == DEGREE_SIEVE_PRIMES || mask == (1 | (1 << n)) {
            break;
        }
        if (disc % BigInt::from(p)).is_zero() {
            continue;
        }
        if let Ok(ct) = cycle_type_mod_p(f, p) {
            mask &= ct.subset_sums();
            used += 1;
        }
    }
    (0..=n).map(|k| mask & (1 << k) != 0).collect()
}

fn integer_root_near(f: &MonicPoly, approx: &[(f64, f64)]) -> Option<BigInt> {
    for &(re, im) in approx {
        if im.abs() > 0.5 || !re.is_finite() {
            continue;
        }
        let center = re.round();
        for delta in [0.0, -1.0, 1.0] {
            let r = BigInt::from((center + delta) as i64);
            if f.evaluate(&r).is_zero() {
                return Some(r);
            }
        }
    }
    None
}

/// Simultaneous root approximation by Aberth iteration in double precision.
fn aberth_f64(f: &MonicPoly, radius: f64) -> Vec<(f64, f64)> {
    let n = f.degree();
    let coeffs: Vec<f64> = std::iter::once(1.0)
        .chain(f.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::MAX)))
        .collect();
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            (radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
            for &c in &coeffs {
                dp = cadd(cmul(dp, z[k]), p);
                p = cadd(cmul(p, z[k]), (c, 0.0));
            }
            if dp == (0.0, 0.0) {
                z[k] = cadd(z[k], (1e-8 * radius, 1e-8 * radius));
                continue;
            }
            let w = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s = cadd(s, cdiv((1.0, 0.0), csub(z[k], z[j])));
                }
            }
            let step = cdiv(w, csub((1.0, 0.0), cmul(w, s)));
            if step.0.is_finite() && step.1.is_finite() {
                z[k] = csub(z[k], step);
                max_step = max_step.max(step.0.hypot(step.1));
            }
        }
        if max_step <= 1e-14 * radius.max(1.0) {
            break;
        }
    }
    z
}

fn cadd(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}
fn csub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}
fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

/// Complex number `(re + i im) / 2^prec` with big-integer parts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn zero() -> Self {
        Fixed {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn integer(v: &BigInt, prec: u32) -> Self {
        Fixed {
            re: v << prec,
            im: BigInt::zero(),
        }
    }

    fn from_f64(v: (f64, f64), prec: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            // 2^52 keeps every significant bit of the double.
            let scaled = BigInt::from((x * 4503599627370496.0) as i128);
            if prec >= 52 {
                scaled << (prec - 52)
            } else {
                scaled >> (52 - prec)
            }
        };
        Fixed {
            re: conv(v.0),
            im: conv(v.1),
        }
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Fixed, prec: u32) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec,
        }
    }

    fn div(&self, o: &Fixed, prec: u32) -> Option<Fixed> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << prec;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec;
        Some(Fixed {
            re: re / &den,
            im: im / &den,
        })
    }

    /// Bit length of the larger component, a cheap magnitude proxy.
    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// Aberth refinement at `prec` fractional bits, started from double
/// approximations. `None` if the iteration does not settle on distinct roots.
///
/// Also returns a bit length `e` such that every approximation lies within
/// `2^e` units of a root, from the inclusion radius `n |f(z)| / |f'(z)|`.
fn refine_fixed(f: &MonicPoly, approx: &[(f64, f64)], prec: u32) -> Option<(Vec<Fixed>, u64)> {
    let n = f.degree();
    let coeffs: Vec<Fixed> = std::iter::once(BigInt::one())
        .chain(f.coeffs().iter().cloned())
        .map(|c| Fixed::integer(&c, prec))
        .collect();
    let one = Fixed::integer(&BigInt::one(), prec);
    let mut z: Vec<Fixed> = approx.iter().map(|&v| Fixed::from_f64(v, prec)).collect();
    let settled_bits = 8u64;
    let mut settled = false;
    for _ in 0..64 {
        let mut max_bits = 0;
        for k in 0..n {
            let (mut p, mut dp) = (Fixed::zero(), Fixed::zero());
            for c in &coeffs {
                dp = dp.mul(&z[k], prec).add(&p);
                p = p.mul(&z[k], prec).add(c);
            }
            let w = p.div(&dp, prec)?;
            let mut s = Fixed::zero();
            for j in 0..n {
                if j != k {
                    s = s.add(&one.div(&z[k].sub(&z[j]), prec)?);
                }
            }
            let step = w.div(&one.sub(&w.mul(&s, prec)), prec)?;
            max_bits = max_bits.max(step.bits());
            z[k] = z[k].sub(&step);
        }
        if max_bits <= settled_bits {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    let mut radius_bits = 0;
    for zk in &z {
        let (mut p, mut dp) = (Fixed::zero(), Fixed::zero());
        for c in &coeffs {
            dp = dp.mul(zk, prec).add(&p);
            p = p.mul(zk, prec).add(c);
        }
        // One extra unit covers the truncation in evaluating `p`.
        radius_bits = radius_bits.max(p.div(&dp, prec)?.bits() + 1);
    }
    let radius_bits = radius_bits + u64::from(usize::BITS - n.leading_zeros()) + 1;
    // Distinct roots must stay well apart at this precision.
    let separation = u64::from(prec / 4);
    for i in 0..n {
        for j in i + 1..n {
            if z[i].sub(&z[j]).bits() <= separation {
                return None;
            }
        }
    }
    Some((z, radius_bits))
}

enum Search {
    Found(IntPoly),
    NoFactor,
    Ambiguous,
}

enum Rounded {
    Integer(BigInt),
    NotInteger,
    Unclear,
}

/// Rounds a fixed-point value known to within `2^err_bits` units.
fn round_fixed(v: &Fixed, prec: u32, err_bits: u64) -> Rounded {
    if err_bits + 3 >= u64::from(prec) {
        return Rounded::Unclear;
    }
    let half = BigInt::one() << (prec - 1);
    let nearest = (&v.re + &half) >> prec;
    let dist = (&v.re - (&nearest << prec)).abs();
    if v.im.bits() > err_bits || dist.bits() > err_bits {
        Rounded::NotInteger
    } else {
        Rounded::Integer(nearest)
    }
}

fn search_subsets(
    target: &IntPoly,
    roots: &[Fixed],
    sizes: &[usize],
    prec: u32,
    bound: f64,
    root_err_bits: u64,
) -> Search {
    let n = roots.len();
    let mut unclear = false;
    // Each root has modulus at most B and error at most 2^e units, so a
    // coefficient of a degree-k product is off by at most about
    // 2^(e + k) (B + 1)^k units, plus truncation in the products.
    let magnitude_bits = (bound.max(1.0) + 1.0).log2().ceil() as u64;
    for &k in sizes {
        let k64 = k as u64;
        let err_bits = root_err_bits + k64 * (magnitude_bits + 1) + 4;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            // Coefficients of prod (X - z_i), ascending.
            let mut poly = vec![Fixed::integer(&BigInt::one(), prec)];
            for (i, z) in roots.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let mut next = vec![Fixed::zero(); poly.len() + 1];
                for (j, c) in poly.iter().enumerate() {
                    next[j + 1] = next[j + 1].add(c);
                    next[j] = next[j].sub(&c.mul(z, prec));
                }
                poly = next;
            }
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rejected = false;
            for (j, c) in poly.iter().enumerate() {
                match round_fixed(c, prec, err_bits) {
                    Rounded::Integer(v) => {
                        // |coefficient of X^j| <= C(k, k-j) B^(k-j).
                        let limit = binomial(k, j) * bound.max(1.0).powi((k - j) as i32);
                        if v.to_f64().is_some_and(|x| x.abs() > limit * (1.0 + 1e-9) + 1.0) {
                            rejected = true;
                            break;
                        }
                        coeffs.push(v);
                    }
                    Rounded::NotInteger => {
                        rejected = true;
                        break;
                    }
                    Rounded::Unclear => {
                        unclear = true;
                        rejected = true;
                        break;
                    }
                }
            }
            if rejected {
                continue;
            }
            let candidate = IntPoly::new(coeffs);
            let (_, rem) = target.div_rem_monic(&candidate);
            if rem.is_zero() {
                return Search::Found(candidate);
            }
        }
    }
    if unclear {
        Search::Ambiguous
    } else {
        Search::NoFactor
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(cs: &[i64]) -> Option<MonicPoly> {
        reducible_witness(&MonicPoly::from_i64(cs).unwrap()).unwrap()
    }

    fn divides(g: &MonicPoly, f: &MonicPoly) -> bool {
        let (_, r) = f.to_int_poly().div_rem_monic(&g.to_int_poly());
        r.is_zero() && (1..f.degree()).contains(&g.degree())
    }

    #[test]
    fn examples() {
        assert_eq!(witness(&[0, -1, 0]), Some(MonicPoly::from_i64(&[0]).unwrap()));
        assert_eq!(witness(&[0, 0, 0, 1]), None);
        let g = witness(&[0, 0, 0, -1]).unwrap();
        assert!(divides(&g, &MonicPoly::from_i64(&[0, 0, 0, -1]).unwrap()));
        assert_eq!(g.degree(), 1);
    }

    #[test]
    fn quadratic_times_quadratic() {
        // (x^2 + x + 3)(x^2 - 2x + 5)
        let f = MonicPoly::from_i64(&[-1, 6, -1, 15]).unwrap();
        let g = reducible_witness(&f).unwrap().unwrap();
        assert!(divides(&g, &f));
        assert_eq!(g.degree(), 2);
    }

    #[test]
    fn sextic_with_cubic_factors() {
        // (x^3 - 2)(x^3 + x + 1) = x^6 + x^4 - x^3 - 2x - 2
        let f = MonicPoly::from_i64(&[0, 1, -1, 0, -2, -2]).unwrap();
        let g = reducible_witness(&f).unwrap().unwrap();
        assert!(divides(&g, &f));
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn repeated_roots() {
        // (x^2 + 1)^2
        let f = MonicPoly::from_i64(&[0, 2, 0, 1]).unwrap();
        assert_eq!(reducible_witness(&f).unwrap(), Some(MonicPoly::from_i64(&[0, 1]).unwrap()));
    }

    #[test]
    fn irreducible_inputs() {
        assert_eq!(witness(&[0, 1, 1]), None);
        assert_eq!(witness(&[0, 0, 0, -1, -1]), None);
        // x^8 + 1: reducible modulo every prime.
        assert_eq!(witness(&[0, 0, 0, 0, 0, 0, 0, 1]), None);
        // x^4 - 10x^2 + 1, reducible modulo every prime.
        assert_eq!(witness(&[0, -10, 0, 1]), None);
    }

    #[test]
    fn guards() {
        let f = MonicPoly::from_i64(&[0; 9]).unwrap();
        assert!(matches!(reducible_witness(&f), Err(Error::OutsideOracleRange(_))));
        let f = MonicPoly::from_i64(&[0, 10_000_000_000_000]).unwrap();
        assert!(matches!(reducible_witness(&f), Err(Error::OutsideOracleRange(_))));
    }
}
