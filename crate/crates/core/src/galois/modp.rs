//! Polynomials over `F_p` for word-sized primes, and distinct-degree
//! factorization.

use std::sync::OnceLock;

use crate::bigpoly::MonicPoly;
use crate::error::{Error, Result};

use super::CycleType;

const SIEVE_LIMIT: usize = 1 << 20;

/// All primes below 2^20, in increasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT];
        let mut out = Vec::new();
        for i in 2..SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j < SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Ascending coefficients in `[0, p)`, no trailing zeros.
type FpPoly = Vec<u64>;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inverse(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &FpPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

/// Remainder of `a` modulo `m` (`m` nonzero).
fn rem(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    let dm = degree(m).expect("nonzero modulus");
    let mut r = a.clone();
    let inv = inverse(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = mulmod(r[dr], inv, p);
        let shift = dr - dm;
        for (j, &mj) in m.iter().enumerate() {
            let sub = mulmod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn div_exact(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    let dm = degree(m).expect("nonzero divisor");
    let da = degree(a).expect("nonzero dividend");
    let inv = inverse(m[dm], p);
    let mut r = a.clone();
    let mut q = vec![0; da - dm + 1];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + dm], inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let sub = mulmod(c, mj, p);
            r[k + j] = (r[k + j] + p - sub) % p;
        }
    }
    debug_assert!(trim(r).is_empty());
    trim(q)
}

fn mul_rem(a: &FpPoly, b: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn pow_rem(base: &FpPoly, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn reduce(f: &MonicPoly, p: u64) -> FpPoly {
    let mut coeffs = f.coeffs_mod(p);
    coeffs.reverse();
    coeffs.push(1 % p);
    trim(coeffs)
}

/// Degrees of the irreducible factors of `f mod p`.
///
/// Fails with [`Error::NotSquarefree`] when `f mod p` has a repeated factor,
/// which for monic `f` happens exactly when `p` divides the discriminant.
pub fn cycle_type_mod_p(f: &MonicPoly, p: u64) -> Result<CycleType> {
    let n = f.degree();
    let fp = reduce(f, p);
    let g = gcd(&fp, &derivative(&fp, p), p);
    if degree(&g) != Some(0) {
        return Err(Error::NotSquarefree(p));
    }
    let mut parts = Vec::with_capacity(n);
    let mut rest = fp;
    let x: FpPoly = trim(vec![0, 1 % p]);
    let mut h = rem(&x, &rest, p);
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        // h = X^(p^d) mod rest
        h = pow_rem(&h, p, &rest, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(&rest, &trim(diff), p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            parts.extend(std::iter::repeat_n(d as u32, dg / d));
            rest = div_exact(&rest, &g, p);
            h = rem(&h, &rest, p);
        }
        d += 1;
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            parts.push(dr as u32);
        }
    }
    Ok(CycleType::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(cs: &[i64], p: u64) -> Result<Vec<u32>> {
        cycle_type_mod_p(&MonicPoly::from_i64(cs).unwrap(), p).map(|c| c.parts().to_vec())
    }

    #[test]
    fn prime_table() {
        let ps = primes();
        assert_eq!(&ps[..6], &[2, 3, 5, 7, 11, 13]);
        assert_eq!(ps.len(), 82025);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(ct(&[0, 1, 1], 2), Ok(vec![3]));
        assert_eq!(ct(&[0, 1, 1], 3), Ok(vec![1, 2]));
        assert_eq!(ct(&[0, -1, 0], 2), Err(Error::NotSquarefree(2)));
    }

    #[test]
    fn cyclotomic_splitting() {
        // x^4 + 1 splits into linear factors mod p = 1 (mod 8), quadratics otherwise.
        assert_eq!(ct(&[0, 0, 0, 1], 17), Ok(vec![1, 1, 1, 1]));
        assert_eq!(ct(&[0, 0, 0, 1], 3), Ok(vec![2, 2]));
        assert_eq!(ct(&[0, 0, 0, 1], 2), Err(Error::NotSquarefree(2)));
        // x^4 + x^3 + x^2 + x + 1 mod 2 is irreducible.
        assert_eq!(ct(&[1, 1, 1, 1], 2), Ok(vec![4]));
    }

    #[test]
    fn inseparable_reduction() {
        // x^3 - 2 = (x - 2)^3 mod 3: derivative vanishes identically.
        assert_eq!(ct(&[0, 0, -2], 3), Err(Error::NotSquarefree(3)));
    }
}
