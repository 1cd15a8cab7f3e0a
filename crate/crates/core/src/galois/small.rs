//! Exact Galois groups in degrees 2, 3 and 4.
//!
//! Reducibility is decided by integer-root search and, for quartics, by
//! solving for a factorization into two integer quadratics. Irreducible
//! quartics are separated through the resolvent cubic
//! `X^3 - a_2 X^2 + (a_1 a_3 - 4 a_4) X - (a_1^2 a_4 - 4 a_2 a_4 + a_3^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigpoly::{IntPoly, MonicPoly};
use crate::disc::{discriminant, is_perfect_square};
use crate::error::{Error, Result};

/// Transitive groups of degree 2 to 4, plus reducible inputs labelled by
/// the degrees of their irreducible factors over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SmallGroup {
    S2,
    S3,
    A3,
    S4,
    A4,
    D4,
    C4,
    V4,
    Reducible(Vec<usize>),
}

impl SmallGroup {
    /// Whether this is the full symmetric group of its degree.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SmallGroup::S2 | SmallGroup::S3 | SmallGroup::S4)
    }
}

impl fmt::Display for SmallGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallGroup::Reducible(shape) => {
                let parts: Vec<String> = shape.iter().map(|d| d.to_string()).collect();
                write!(f, "reducible({})", parts.join(","))
            }
            other => write!(f, "{other:?}"),
        }
    }
}

/// Positive divisors of `|m|` not exceeding `limit`, for `m != 0`.
///
/// A divisor `e > sqrt(m)` pairs with `m / e < sqrt(m)`, and `e <= limit`
/// forces `m / e >= m / limit`, so trial division never has to pass
/// `min(sqrt(m), limit)`.
fn bounded_divisors(m: &BigInt, limit: &BigInt) -> Result<Vec<BigInt>> {
    let mu = m.abs().to_u128().ok_or(Error::CoefficientTooLarge)?;
    let lim = limit.to_u128().unwrap_or(u128::MAX);
    let stop = crate::disc::isqrt_u128(mu).min(lim);
    if stop > 1 << 32 {
        return Err(Error::CoefficientTooLarge);
    }
    let mut out = Vec::new();
    for d in 1..=stop {
        if mu % d == 0 {
            out.push(BigInt::from(d));
            let e = mu / d;
            if e != d && e <= lim {
                out.push(BigInt::from(e));
            }
        }
    }
    Ok(out)
}

/// Distinct integer roots of a monic integer polynomial.
pub(crate) fn integer_roots(g: &IntPoly) -> Result<Vec<BigInt>> {
    let mut roots = Vec::new();
    let mut g = g.clone();
    while g.degree().unwrap_or(0) >= 1 && g.coeffs()[0].is_zero() {
        if roots.is_empty() {
            roots.push(BigInt::zero());
        }
        g = IntPoly::new(g.coeffs()[1..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let monic = MonicPoly::from_int_poly(&g)?;
    let bound = monic.root_bound().ceil().to_integer();
    for d in bounded_divisors(&g.coeffs()[0], &bound)? {
        for r in [d.clone(), -d] {
            if g.evaluate(&r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Degrees of the irreducible factors over the rationals, for degree <= 4.
fn factor_shape(f: &MonicPoly) -> Result<Vec<usize>> {
    let mut g = f.to_int_poly();
    let mut shape = Vec::new();
    loop {
        let d = g.degree().unwrap_or(0);
        if d == 0 {
            break;
        }
        let roots = integer_roots(&g)?;
        match roots.first() {
            Some(r) => {
                let (q, rem) = g.div_rem_monic(&IntPoly::new(vec![-r, BigInt::one()]));
                debug_assert!(rem.is_zero());
                g = q;
                shape.push(1);
            }
            None => {
                if d == 4 && splits_into_quadratics(&MonicPoly::from_int_poly(&g)?)? {
                    shape.extend([2, 2]);
                } else {
                    shape.push(d);
                }
                break;
            }
        }
    }
    shape.sort_unstable();
    Ok(shape)
}

/// Whether a quartic without rational roots is a product of two monic
/// integer quadratics `(X^2 + bX + c)(X^2 + dX + e)`.
fn splits_into_quadratics(f: &MonicPoly) -> Result<bool> {
    let (a1, a2, a3, a4) = (f.a(1), f.a(2), f.a(3), f.a(4));
    debug_assert!(!a4.is_zero());
    let limit = a4.abs();
    for c_abs in bounded_divisors(a4, &limit)? {
        for c in [c_abs.clone(), -c_abs] {
            let e = a4 / &c;
            if c == e {
                // b + d = a1, bd = a2 - 2c, and c (b + d) = a3.
                if &c * a1 != *a3 {
                    continue;
                }
                let disc = a1 * a1 - BigInt::from(4) * (a2 - BigInt::from(2) * &c);
                if is_perfect_square(&disc).is_some() {
                    return Ok(true);
                }
            } else {
                // b (e - c) = a3 - c a1, d = a1 - b, bd = a2 - c - e.
                let num = a3 - &c * a1;
                let den = &e - &c;
                if !num.is_multiple_of(&den) {
                    continue;
                }
                let b = num / den;
                let d = a1 - &b;
                if &b * &d == a2 - &c - &e {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The exact Galois group for `n` in `{2, 3, 4}`.
pub fn exact_small_degree(f: &MonicPoly) -> Result<SmallGroup> {
    let n = f.degree();
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDegree(n, 2, 4));
    }
    let shape = factor_shape(f)?;
    if shape != [n] {
        return Ok(SmallGroup::Reducible(shape));
    }
    let disc = discriminant(f)?;
    let square = is_perfect_square(&disc.value).is_some();
    Ok(match n {
        2 => SmallGroup::S2,
        3 if square => SmallGroup::A3,
        3 => SmallGroup::S3,
        _ => quartic_group(f, &disc.value, square)?,
    })
}

fn quartic_group(f: &MonicPoly, disc: &BigInt, disc_square: bool) -> Result<SmallGroup> {
    let (a1, a2, a3, a4) = (f.a(1), f.a(2), f.a(3), f.a(4));
    let four = BigInt::from(4);
    let resolvent = IntPoly::new(vec![
        -(a1 * a1 * a4 - &four * a2 * a4 + a3 * a3),
        a1 * a3 - &four * a4,
        -a2.clone(),
        BigInt::one(),
    ]);
    let roots = integer_roots(&resolvent)?;
    Ok(match roots.len() {
        0 if disc_square => SmallGroup::A4,
        0 => SmallGroup::S4,
        1 => {
            // C4 iff (X^2 - rX + a4)(X^2 + a1 X + a2 - r) splits over Q(sqrt(disc)).
            let r = &roots[0];
            let d1 = r * r - &four * a4;
            let d2 = a1 * a1 - &four * (a2 - r);
            let splits = |d: &BigInt| {
                d.is_zero()
                    || is_perfect_square(d).is_some()
                    || is_perfect_square(&(d * disc)).is_some()
            };
            if splits(&d1) && splits(&d2) {
                SmallGroup::C4
            } else {
                SmallGroup::D4
            }
        }
        _ => SmallGroup::V4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(cs: &[i64]) -> SmallGroup {
        exact_small_degree(&MonicPoly::from_i64(cs).unwrap()).unwrap()
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(group(&[0, 0, 0, 1]), SmallGroup::V4);
        assert_eq!(group(&[0, 0, 0, -2]), SmallGroup::D4);
        assert_eq!(group(&[0, 0, 1, 1]), SmallGroup::S4);
        assert_eq!(group(&[1, 1, 1, 1]), SmallGroup::C4);
        // x^4 + 8x + 12 has group A4.
        assert_eq!(group(&[0, 0, 8, 12]), SmallGroup::A4);
        // Biquadratic x^4 + ax^2 + b with b(a^2 - 4b) a square.
        assert_eq!(group(&[0, -5, 0, 5]), SmallGroup::C4);
    }

    #[test]
    fn cubic_and_quadratic_examples() {
        assert_eq!(group(&[0, -3, 1]), SmallGroup::A3);
        assert_eq!(group(&[0, 1, 1]), SmallGroup::S3);
        assert_eq!(group(&[0, -1, 0]), SmallGroup::Reducible(vec![1, 1, 1]));
        assert_eq!(group(&[1, 1]), SmallGroup::S2);
        assert_eq!(group(&[-3, 2]), SmallGroup::Reducible(vec![1, 1]));
        assert_eq!(group(&[0, 0, 0]), SmallGroup::Reducible(vec![1, 1, 1]));
    }

    #[test]
    fn reducible_quartic_shapes() {
        // (x^2 + 1)(x^2 + 2)
        assert_eq!(group(&[0, 3, 0, 2]), SmallGroup::Reducible(vec![2, 2]));
        // (x^2 + x + 1)^2
        assert_eq!(group(&[2, 3, 2, 1]), SmallGroup::Reducible(vec![2, 2]));
        // x^4 - 1 = (x - 1)(x + 1)(x^2 + 1)
        assert_eq!(group(&[0, 0, 0, -1]), SmallGroup::Reducible(vec![1, 1, 2]));
        // x (x^3 - 2)
        assert_eq!(group(&[0, 0, -2, 0]), SmallGroup::Reducible(vec![1, 3]));
        // (x - 1)^4
        assert_eq!(group(&[-4, 6, -4, 1]), SmallGroup::Reducible(vec![1, 1, 1, 1]));
    }

    #[test]
    fn degree_guard() {
        let f = MonicPoly::from_i64(&[0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            exact_small_degree(&f),
            Err(Error::UnsupportedDegree(5, 2, 4))
        ));
    }

    #[test]
    fn integer_roots_with_zero_and_multiplicity() {
        // x^2 (x - 3)(x + 2)
        let g = IntPoly::from_i64(&[0, 0, -6, -1, 1]);
        let roots = integer_roots(&g).unwrap();
        assert_eq!(roots, [-2, 0, 3].map(BigInt::from));
    }
}
