//! Monic integer polynomials `X^n + a_1 X^(n-1) + ... + a_n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A monic polynomial with exact integer coefficients.
///
/// Only `a_1, ..., a_n` are stored; the leading coefficient is implicitly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<BigInt>,
}

/// A dense integer polynomial, coefficients in ascending degree order.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl MonicPoly {
    /// Builds `X^n + a_1 X^(n-1) + ... + a_n` from `[a_1, ..., a_n]`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a monic polynomial needs degree at least 1".into(),
            ));
        }
        Ok(MonicPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Result<Self> {
        Self::new(vec![BigInt::zero(); n])
    }

    /// The trinomial `X^n + pX + q`.
    pub fn trinomial(n: usize, p: BigInt, q: BigInt) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[n - 2] = p;
        coeffs[n - 1] = q;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `[a_1, ..., a_n]`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i` for `1 <= i <= n`.
    pub fn a(&self, i: usize) -> &BigInt {
        &self.coeffs[i - 1]
    }

    /// Largest absolute value of `a_1, ..., a_n`.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Evaluates `f(x)` by Horner's rule.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc * x + c)
    }

    /// `f'`, of degree `n - 1` with leading coefficient `n`.
    pub fn derivative(&self) -> IntPoly {
        self.to_int_poly().derivative()
    }

    /// The same polynomial in dense ascending form, leading 1 included.
    pub fn to_int_poly(&self) -> IntPoly {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        coeffs.push(BigInt::one());
        IntPoly::new(coeffs)
    }

    /// Reads a dense polynomial back as monic, failing unless its leading
    /// coefficient is 1 and its degree is at least 1.
    pub fn from_int_poly(p: &IntPoly) -> Result<Self> {
        match p.leading() {
            Some(lc) if lc.is_one() && p.degree() >= Some(1) => {
                let c = p.coeffs();
                Self::new(c[..c.len() - 1].iter().rev().cloned().collect())
            }
            _ => Err(Error::NotMonic),
        }
    }

    /// Upper bound on the modulus of every complex root.
    ///
    /// Uses `|z| <= (2^(1/n) - 1)^(-1) * max_k |a_k / C(n,k)|^(1/k)`, with the
    /// maximum taken over nonzero `a_k`. Every irrational quantity is rounded
    /// outward in exact integer arithmetic, so the returned rational is a
    /// rigorous bound. `X^n` gets 0.
    pub fn root_bound(&self) -> BigRational {
        const SCALE_BITS: usize = 32;
        let n = self.degree();
        let scale = BigInt::one() << SCALE_BITS;

        // Largest numerator m with (m / scale) >= |a_k / C(n,k)|^(1/k).
        let mut best = BigInt::zero();
        let mut binom = BigInt::one();
        for (idx, a) in self.coeffs.iter().enumerate() {
            let k = idx + 1;
            binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
            if a.is_zero() {
                continue;
            }
            let target = (a.abs() * scale.pow(k as u32)).div_ceil(&binom);
            let mut m = target.nth_root(k as u32);
            if m.pow(k as u32) < target {
                m += 1;
            }
            if m > best {
                best = m;
            }
        }
        if best.is_zero() {
            return BigRational::zero();
        }
        // lower / scale <= 2^(1/n), hence 1/(2^(1/n) - 1) <= scale / (lower - scale).
        let lower = (BigInt::from(2) * scale.pow(n as u32)).nth_root(n as u32);
        debug_assert!(lower > scale);
        BigRational::new(best, lower - scale)
    }

    /// Floating-point view of [`MonicPoly::root_bound`].
    pub fn root_bound_f64(&self) -> f64 {
        self.root_bound().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Reduces the coefficients modulo `m`, returning `[a_1 mod m, ..., a_n mod m]`.
    pub fn coeffs_mod(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => v.rem_euclid(m as i64) as u64,
                None => c.mod_floor(&mb).to_u64().expect("residue fits"),
            })
            .collect()
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_int_poly().fmt(f)
    }
}

impl FromStr for MonicPoly {
    type Err = Error;

    /// Accepts either `x^3 - 3x + 1` or the coefficient list `[a1,...,an]`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.starts_with('[') {
            parse_coeff_list(trimmed)
        } else {
            MonicPoly::from_int_poly(&parse_expression(trimmed)?)
        }
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_coeff_list(s: &str) -> Result<MonicPoly> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_error(s, "unbalanced brackets"))?;
    if inner.trim().is_empty() {
        return Err(parse_error(s, "empty coefficient list"));
    }
    let coeffs = inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<BigInt>()
                .map_err(|_| parse_error(s, format!("bad integer `{}`", tok.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    MonicPoly::new(coeffs)
}

/// Parses a polynomial expression in `x` with integer coefficients.
pub fn parse_expression(s: &str) -> Result<IntPoly> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(parse_error(s, "empty input"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i != 0 {
            return Err(parse_error(s, format!("expected `+` or `-` at offset {i}")));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            text[start..i].parse::<BigInt>().expect("digits parse")
        } else {
            BigInt::one()
        };
        let has_number = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_number {
                return Err(parse_error(s, "`*` without a coefficient"));
            }
            i += 1;
        }
        let exponent = if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(parse_error(s, "missing exponent after `^`"));
                }
                text[es..i]
                    .parse::<usize>()
                    .map_err(|_| parse_error(s, "exponent too large"))?
            } else {
                1
            }
        } else if has_number {
            0
        } else {
            return Err(parse_error(s, format!("unexpected character at offset {i}")));
        };
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += sign * coeff;
    }
    Ok(IntPoly::new(coeffs))
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Division by a monic divisor: returns `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(
            divisor.leading().is_some_and(|c| c.is_one()),
            "divisor must be monic"
        );
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::default(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if e == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn evaluate_examples() {
        let f = MonicPoly::from_i64(&[0, -1, 0]).unwrap();
        assert_eq!(f.evaluate(&big(2)), big(6));
        let g = MonicPoly::from_i64(&[0, 0]).unwrap();
        assert_eq!(g.evaluate(&big(0)), big(0));
        let h = MonicPoly::from_i64(&[0, -3, 1]).unwrap();
        assert_eq!(h.evaluate(&big(-2)), big(-1));
    }

    #[test]
    fn derivative_examples() {
        let f = MonicPoly::from_i64(&[0, -3, 1]).unwrap();
        assert_eq!(f.derivative(), IntPoly::from_i64(&[-3, 0, 3]));
        let g = MonicPoly::from_i64(&[7, -4]).unwrap();
        assert_eq!(g.derivative(), IntPoly::from_i64(&[7, 2]));
        let h = MonicPoly::monomial(5).unwrap();
        assert_eq!(h.derivative(), IntPoly::from_i64(&[0, 0, 0, 0, 5]));
    }

    #[test]
    fn root_bound_examples() {
        let f = MonicPoly::from_i64(&[-2, 1]).unwrap();
        let b = f.root_bound_f64();
        assert!(b >= 1.0 && (b - 1.0 / (2f64.sqrt() - 1.0)).abs() < 1e-6, "{b}");

        let g = MonicPoly::from_i64(&[0, -2]).unwrap();
        let b = g.root_bound_f64();
        assert!(b >= 2f64.sqrt() && (b - (2.0 + 2f64.sqrt())).abs() < 1e-6, "{b}");

        for n in 1..8 {
            assert!(MonicPoly::monomial(n).unwrap().root_bound().is_zero());
        }
    }

    #[test]
    fn root_bound_degree_one_is_exact_up_to_rounding() {
        let f = MonicPoly::from_i64(&[-7]).unwrap();
        let b = f.root_bound_f64();
        assert!((7.0..7.000_001).contains(&b), "{b}");
    }

    #[test]
    fn parse_both_forms() {
        let a: MonicPoly = "x^3 - 3x + 1".parse().unwrap();
        let b: MonicPoly = "[0, -3, 1]".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^3 - 3x + 1");

        let c: MonicPoly = "X^4+1".parse().unwrap();
        assert_eq!(c.coeffs(), &[big(0), big(0), big(0), big(1)]);
        let d: MonicPoly = "x^2 + 2*x - x - 5".parse().unwrap();
        assert_eq!(d.coeffs(), &[big(1), big(-5)]);
        assert_eq!(MonicPoly::from_i64(&[0, 0]).unwrap().to_string(), "x^2");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("2x^2 + 1".parse::<MonicPoly>().is_err());
        assert!("[]".parse::<MonicPoly>().is_err());
        assert!("[1, a]".parse::<MonicPoly>().is_err());
        assert!("x^ + 1".parse::<MonicPoly>().is_err());
        assert!("7".parse::<MonicPoly>().is_err());
        assert!("x^2 y".parse::<MonicPoly>().is_err());
    }

    #[test]
    fn monic_division() {
        // x^3 - x = x (x - 1)(x + 1)
        let f = IntPoly::from_i64(&[0, -1, 0, 1]);
        let (q, r) = f.div_rem_monic(&IntPoly::from_i64(&[-1, 1]));
        assert_eq!(q, IntPoly::from_i64(&[0, 1, 1]));
        assert!(r.is_zero());
        let (_, r) = f.div_rem_monic(&IntPoly::from_i64(&[2, 1]));
        assert_eq!(r, IntPoly::from_i64(&[-6]));
    }
}
