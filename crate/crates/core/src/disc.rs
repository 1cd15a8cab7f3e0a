//! Exact discriminants and perfect-square detection.
//!
//! The generic discriminant is `(-1)^(n(n-1)/2) Res(f, f')`, with the
//! resultant taken as the determinant of the Sylvester matrix, evaluated by
//! fraction-free (Bareiss) elimination. Elimination first runs in checked
//! `i128` arithmetic and falls back to `BigInt` on overflow, which keeps the
//! census loop allocation-light without giving up exactness.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bigpoly::MonicPoly;
use crate::error::{Error, Result};

/// The discriminant of a monic polynomial together with its source degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscValue {
    pub value: BigInt,
    pub n: usize,
}

impl DiscValue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Non-negative square root when the value is a perfect square.
    pub fn square_root(&self) -> Option<BigInt> {
        is_perfect_square(&self.value)
    }
}

/// `(-1)^(k(k-1)/2)` as a sign: `true` means negative.
pub(crate) fn triangular_sign_negative(k: usize) -> bool {
    (k * k.saturating_sub(1) / 2) % 2 == 1
}

/// Exact discriminant `prod_{i<j} (alpha_i - alpha_j)^2` of a monic polynomial.
pub fn discriminant(f: &MonicPoly) -> Result<DiscValue> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let small: Option<Vec<i128>> = f.coeffs().iter().map(|c| c.to_i128()).collect();
    let det = small
        .and_then(|cs| bareiss_det(sylvester_with_derivative(&cs)))
        .map(BigInt::from)
        .unwrap_or_else(|| {
            let big = bareiss_det(sylvester_with_derivative(f.coeffs()));
            big.expect("BigInt elimination cannot overflow")
        });
    let value = if triangular_sign_negative(n) { -det } else { det };
    Ok(DiscValue { value, n })
}

/// Discriminant of `X^n + pX + q` from its closed form
/// `(-1)^(n(n-1)/2) n^n q^(n-1) + (-1)^((n-1)(n-2)/2) (n-1)^(n-1) p^n`.
pub fn trinomial_disc(n: usize, p: &BigInt, q: &BigInt) -> Result<DiscValue> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let nn = BigInt::from(n);
    let m = BigInt::from(n - 1);
    let mut first = num_traits::pow(nn, n) * num_traits::pow(q.clone(), n - 1);
    if triangular_sign_negative(n) {
        first = -first;
    }
    let mut second = num_traits::pow(m, n - 1) * num_traits::pow(p.clone(), n);
    if triangular_sign_negative(n - 1) {
        second = -second;
    }
    Ok(DiscValue {
        value: first + second,
        n,
    })
}

/// Integers that support the exact operations fraction-free elimination needs.
/// `None` signals overflow.
pub(crate) trait ExactInt: Clone {
    fn ring_zero() -> Self;
    fn from_usize(v: usize) -> Self;
    fn vanishes(&self) -> bool;
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn neg_checked(&self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn from_usize(v: usize) -> Self {
        v as i128
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self % other, 0);
        Some(self / other)
    }
    fn neg_checked(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl ExactInt for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn from_usize(v: usize) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % other)));
        Some(self / other)
    }
    fn neg_checked(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Sylvester matrix of `f = X^n + a_1 X^(n-1) + ... + a_n` and `f'`.
fn sylvester_with_derivative<T: ExactInt>(a: &[T]) -> Vec<Vec<T>> {
    let n = a.len();
    let size = 2 * n - 1;
    // Descending coefficients of f and f'.
    let mut f_row = Vec::with_capacity(n + 1);
    f_row.push(T::from_usize(1));
    f_row.extend(a.iter().cloned());
    let mut d_row = Vec::with_capacity(n);
    d_row.push(T::from_usize(n));
    for (i, c) in a.iter().take(n - 1).enumerate() {
        d_row.push(T::from_usize(n - 1 - i).mul_checked(c).expect("small multiplier"));
    }
    let mut m = vec![vec![T::ring_zero(); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f_row.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in d_row.iter().enumerate() {
            m[n - 1 + r][r + j] = c.clone();
        }
    }
    m
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub(crate) fn bareiss_det<T: ExactInt>(mut m: Vec<Vec<T>>) -> Option<T> {
    let size = m.len();
    if size == 0 {
        return Some(T::from_usize(1));
    }
    let mut negate = false;
    let mut prev = T::from_usize(1);
    for k in 0..size - 1 {
        if m[k][k].vanishes() {
            match (k + 1..size).find(|&i| !m[i][k].vanishes()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Some(T::ring_zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let lhs = m[i][j].mul_checked(&m[k][k])?;
                let rhs = m[i][k].mul_checked(&m[k][j])?;
                m[i][j] = lhs.sub_checked(&rhs)?.div_exact(&prev)?;
            }
            m[i][k] = T::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        det.neg_checked()
    } else {
        Some(det)
    }
}

const RESIDUE_MODULUS: u64 = 64 * 63 * 65 * 11;

const fn square_table<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    let mut r = 0;
    while r < M {
        table[(r * r) % M] = true;
        r += 1;
    }
    table
}

static SQUARES_MOD_64: [bool; 64] = square_table::<64>();
static SQUARES_MOD_63: [bool; 63] = square_table::<63>();
static SQUARES_MOD_65: [bool; 65] = square_table::<65>();
static SQUARES_MOD_11: [bool; 11] = square_table::<11>();

#[inline]
fn passes_residue_filter(r: u64) -> bool {
    SQUARES_MOD_64[(r % 64) as usize]
        && SQUARES_MOD_63[(r % 63) as usize]
        && SQUARES_MOD_65[(r % 65) as usize]
        && SQUARES_MOD_11[(r % 11) as usize]
}

/// Returns `r >= 0` with `r^2 = v` when `v` is a perfect square.
///
/// Non-squares are mostly rejected by quadratic residue tables modulo
/// 64, 63, 65 and 11 before any square root is taken.
pub fn is_perfect_square(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    if let Some(small) = v.to_u128() {
        return perfect_square_u128(small).map(BigInt::from);
    }
    let r = (v % BigInt::from(RESIDUE_MODULUS))
        .to_u64()
        .expect("residue fits");
    if !passes_residue_filter(r) {
        return None;
    }
    let root = v.sqrt();
    (&root * &root == *v).then_some(root)
}

/// Fixed-width counterpart of [`is_perfect_square`].
pub fn perfect_square_u128(v: u128) -> Option<u128> {
    if !passes_residue_filter((v % RESIDUE_MODULUS as u128) as u64) {
        return None;
    }
    let r = isqrt_u128(v);
    (r * r == v).then_some(r)
}

/// `floor(sqrt(v))`.
pub fn isqrt_u128(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut r = (v as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|sq| sq > v) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= v) {
        r += 1;
    }
    r
}

/// `perfect_square_u128` lifted to signed input.
pub fn perfect_square_i128(v: i128) -> Option<u128> {
    if v < 0 {
        None
    } else {
        perfect_square_u128(v as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn disc_of(cs: &[i64]) -> BigInt {
        discriminant(&MonicPoly::from_i64(cs).unwrap()).unwrap().value
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(disc_of(&[-3, 2]), BigInt::from(1));
        assert_eq!(disc_of(&[0, -1, 0]), BigInt::from(4));
        assert_eq!(disc_of(&[0, -3, 1]), BigInt::from(81));
        assert_eq!(disc_of(&[0, 0, 0, 1]), BigInt::from(256));
    }

    #[test]
    fn discriminant_needs_degree_two() {
        let f = MonicPoly::from_i64(&[3]).unwrap();
        assert_eq!(discriminant(&f), Err(Error::DegreeTooSmall(1)));
        assert_eq!(
            trinomial_disc(1, &BigInt::one(), &BigInt::one()),
            Err(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn trinomial_examples() {
        for p in -6..=6i64 {
            for q in -6..=6i64 {
                let d = trinomial_disc(2, &p.into(), &q.into()).unwrap();
                assert_eq!(d.value, BigInt::from(p * p - 4 * q));
            }
        }
        let d = trinomial_disc(3, &BigInt::from(-3), &BigInt::one()).unwrap();
        assert_eq!(d.value, BigInt::from(81));
        let d = trinomial_disc(5, &BigInt::zero(), &BigInt::zero()).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn big_coefficients_take_the_bigint_route() {
        // x^2 + p x + q with p beyond i128 after squaring.
        let p: BigInt = BigInt::one() << 100;
        let q = BigInt::from(7);
        let f = MonicPoly::new(vec![p.clone(), q.clone()]).unwrap();
        let d = discriminant(&f).unwrap();
        assert_eq!(d.value, &p * &p - BigInt::from(4) * q);
        // Degree 6 with 40-bit coefficients overflows the i128 elimination.
        let c = BigInt::from(1u64 << 40);
        let f = MonicPoly::trinomial(6, c.clone(), -c.clone()).unwrap();
        let expected = trinomial_disc(6, &c, &-c.clone()).unwrap();
        assert_eq!(discriminant(&f).unwrap(), expected);
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&BigInt::from(81)), Some(BigInt::from(9)));
        assert_eq!(is_perfect_square(&BigInt::from(-4)), None);
        assert_eq!(is_perfect_square(&BigInt::zero()), Some(BigInt::zero()));
        assert_eq!(
            is_perfect_square(&(BigInt::one() << 64)),
            Some(BigInt::one() << 32)
        );
        let big = (BigInt::one() << 200) + BigInt::from(12345);
        let sq = &big * &big;
        assert_eq!(is_perfect_square(&sq), Some(big));
        assert_eq!(is_perfect_square(&(sq + 1)), None);
    }

    #[test]
    fn squares_and_neighbours() {
        for r in (0u128..=1_000_000).step_by(7) {
            assert_eq!(perfect_square_u128(r * r), Some(r));
            assert_eq!(perfect_square_u128(r * r + 1), if r == 0 { Some(1) } else { None });
        }
        assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
    }

    #[test]
    fn residue_filter_accepts_every_square() {
        for r in 0..RESIDUE_MODULUS {
            let sq = (r * r) % RESIDUE_MODULUS;
            assert!(passes_residue_filter(sq));
        }
    }
}
