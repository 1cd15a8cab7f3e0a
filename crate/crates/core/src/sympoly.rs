//! Sparse multivariate integer polynomials and the symbolic discriminant.
//!
//! For `2 <= n <= 6` the discriminant of `X^n + a_1 X^(n-1) + ... + a_n` is
//! expanded as an explicit polynomial in `a_1, ..., a_n`. The expansion backs
//! the structural checks on its leading terms and the restrictions of the
//! discriminant to lines in the `(a_{n-1}, a_n)` plane.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::disc::triangular_sign_negative;
use crate::error::{Error, Result};
use crate::ratpoly::RatPoly;

/// Smallest and largest degree handled symbolically.
pub const MIN_SYMBOLIC_DEGREE: usize = 2;
pub const MAX_SYMBOLIC_DEGREE: usize = 6;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables, stored as a map from exponent vectors
/// to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl SparseMultiPoly {
    pub fn zero(nvars: usize) -> Self {
        SparseMultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparseMultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.degree_in_vars(&(0..self.nvars).collect::<Vec<_>>())
    }

    /// Largest joint degree in the listed variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum())
            .max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.degree_in_vars(&[var])
    }

    /// Coefficient of `x_var^power`, as a polynomial in the other variables
    /// (the slot for `var` is kept and set to zero).
    pub fn coefficient_of(&self, var: usize, power: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(self.nvars);
        for (v, x) in point.iter().enumerate() {
            let maxe = self.degree_in(v).unwrap_or(0) as usize;
            let mut pw = vec![BigInt::one()];
            for k in 1..=maxe {
                let next = &pw[k - 1] * x;
                pw.push(next);
            }
            powers.push(pw);
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(c.clone(), |acc, (v, &k)| acc * &powers[v][k as usize])
            })
            .sum()
    }

    /// Fixes the variables with `Some` value and returns a polynomial in the
    /// remaining variables, in their original order.
    pub fn specialize(&self, values: &[Option<BigInt>]) -> Self {
        assert_eq!(values.len(), self.nvars);
        let free: Vec<usize> = (0..self.nvars).filter(|&v| values[v].is_none()).collect();
        let mut out = Self::zero(free.len());
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    if e[v] > 0 {
                        coeff *= num_traits::pow(x.clone(), e[v] as usize);
                    }
                }
            }
            let e2: Exponents = free.iter().map(|&v| e[v]).collect();
            out.add_term(e2, coeff);
        }
        out
    }

    /// Substitutes a univariate rational polynomial for every variable.
    pub fn substitute(&self, subs: &[RatPoly]) -> RatPoly {
        assert_eq!(subs.len(), self.nvars);
        let mut cache: HashMap<(usize, u32), RatPoly> = HashMap::new();
        let mut acc = RatPoly::zero();
        for (e, c) in &self.terms {
            let mut term = RatPoly::constant(BigRational::from_integer(c.clone()));
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache
                    .entry((v, k))
                    .or_insert_with(|| subs[v].pow(k))
                    .clone();
                term = &term * &pw;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Renders with variable names `a1, a2, ...`.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].to_string()
                    } else {
                        format!("{}^{}", names[v], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for SparseMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl<'a> Add<&'a SparseMultiPoly> for &'a SparseMultiPoly {
    type Output = SparseMultiPoly;
    fn add(self, rhs: &SparseMultiPoly) -> SparseMultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparseMultiPoly> for &'a SparseMultiPoly {
    type Output = SparseMultiPoly;
    fn sub(self, rhs: &SparseMultiPoly) -> SparseMultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SparseMultiPoly> for &'a SparseMultiPoly {
    type Output = SparseMultiPoly;
    fn mul(self, rhs: &SparseMultiPoly) -> SparseMultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparseMultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparseMultiPoly {
    type Output = SparseMultiPoly;
    fn neg(self) -> SparseMultiPoly {
        self.scale(&-BigInt::one())
    }
}

fn check_symbolic_degree(n: usize) -> Result<()> {
    if (MIN_SYMBOLIC_DEGREE..=MAX_SYMBOLIC_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(
            n,
            MIN_SYMBOLIC_DEGREE,
            MAX_SYMBOLIC_DEGREE,
        ))
    }
}

/// The discriminant of the generic monic polynomial of degree `n` as a
/// polynomial in `a_1, ..., a_n` (variable `i - 1` is `a_i`).
pub fn symbolic_discriminant(n: usize) -> Result<SparseMultiPoly> {
    check_symbolic_degree(n)?;
    static CACHE: [OnceLock<SparseMultiPoly>; MAX_SYMBOLIC_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_SYMBOLIC_DEGREE + 1];
    Ok(CACHE[n].get_or_init(|| compute_symbolic_discriminant(n)).clone())
}

fn compute_symbolic_discriminant(n: usize) -> SparseMultiPoly {
    let size = 2 * n - 1;
    // Entries of the Sylvester matrix of f and f'; every entry is a single
    // term, so they are stored as (exponents, coefficient).
    let mut matrix: Vec<Vec<Option<(Exponents, BigInt)>>> = vec![vec![None; size]; size];
    let unit = |i: Option<usize>, c: BigInt| {
        let mut e = vec![0; n];
        if let Some(i) = i {
            e[i] = 1;
        }
        Some((e, c))
    };
    for r in 0..n - 1 {
        matrix[r][r] = unit(None, BigInt::one());
        for i in 1..=n {
            matrix[r][r + i] = unit(Some(i - 1), BigInt::one());
        }
    }
    for r in 0..n {
        let row = n - 1 + r;
        matrix[row][r] = unit(None, BigInt::from(n));
        for i in 1..n {
            matrix[row][r + i] = unit(Some(i - 1), BigInt::from(n - i));
        }
    }

    // Laplace expansion along rows, memoized on the set of unused columns.
    // Every entry is a monomial, so each expansion step is a sum of
    // monomial-times-minor products and no division is needed.
    let mut memo: HashMap<u32, SparseMultiPoly> = HashMap::new();
    let full: u32 = (1u32 << size) - 1;
    let det = minor(&matrix, 0, full, n, &mut memo);
    if triangular_sign_negative(n) {
        -&det
    } else {
        det
    }
}

fn minor(
    matrix: &[Vec<Option<(Exponents, BigInt)>>],
    row: usize,
    cols: u32,
    nvars: usize,
    memo: &mut HashMap<u32, SparseMultiPoly>,
) -> SparseMultiPoly {
    if row == matrix.len() {
        return SparseMultiPoly::constant(nvars, BigInt::one());
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = SparseMultiPoly::zero(nvars);
    let mut position = 0;
    for col in 0..matrix.len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        if let Some((e, c)) = &matrix[row][col] {
            let sub = minor(matrix, row + 1, cols & !(1 << col), nvars, memo);
            if !sub.is_zero() {
                let coeff = if position % 2 == 1 { -c } else { c.clone() };
                let term = SparseMultiPoly::monomial(nvars, e.clone(), coeff);
                acc = &acc + &(&term * &sub);
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Outcome of one structural check on the symbolic discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub n: usize,
    pub passed: bool,
    /// The constant the leading term must carry.
    pub expected: String,
    /// What was extracted from the expansion.
    pub found: String,
    pub detail: String,
}

/// `(-1)^(k(k-1)/2) * base^exp`.
fn signed_power(k: usize, base: usize, exp: usize) -> BigInt {
    let v = num_traits::pow(BigInt::from(base), exp);
    if triangular_sign_negative(k) {
        -v
    } else {
        v
    }
}

/// Checks that, as a polynomial in `a_n`, the discriminant has degree `n - 1`
/// with the constant leading coefficient `(-1)^(n(n-1)/2) n^n`.
pub fn verify_leading_in_last(n: usize) -> Result<LemmaReport> {
    let delta = symbolic_discriminant(n)?;
    let last = n - 1;
    let expected = signed_power(n, n, n);
    let degree = delta.degree_in(last).unwrap_or(0);
    let lead = delta.coefficient_of(last, degree);
    let found = lead.as_constant();
    let passed = degree as usize == n - 1 && found.as_ref() == Some(&expected);
    Ok(LemmaReport {
        lemma: "leading-in-last",
        n,
        passed,
        expected: expected.to_string(),
        found: found.map_or_else(|| lead.to_string(), |c| c.to_string()),
        detail: format!("degree in a{n} = {degree}"),
    })
}

/// Checks that the joint degree of the discriminant in `(a_{n-1}, a_n)` is
/// `n`, attained only by `(-1)^((n-1)(n-2)/2) (n-1)^(n-1) a_{n-1}^n`.
pub fn verify_joint_degree_last_two(n: usize) -> Result<LemmaReport> {
    let delta = symbolic_discriminant(n)?;
    let (u, v) = (n - 2, n - 1);
    let expected = signed_power(n - 1, n - 1, n - 1);
    let joint = delta.degree_in_vars(&[u, v]).unwrap_or(0);
    let top: Vec<(&Exponents, &BigInt)> = delta
        .terms()
        .filter(|(e, _)| e[u] + e[v] == joint)
        .collect();
    let mut target = vec![0; n];
    target[u] = n as u32;
    let passed = joint as usize == n
        && top.len() == 1
        && *top[0].0 == target
        && *top[0].1 == expected;
    let found = if top.len() == 1 {
        top[0].1.to_string()
    } else {
        format!("{} top-degree terms", top.len())
    };
    Ok(LemmaReport {
        lemma: "joint-degree-last-two",
        n,
        passed,
        expected: expected.to_string(),
        found,
        detail: format!("joint degree in (a{}, a{}) = {joint}", n - 1, n),
    })
}

/// Checks that setting `a_1 = ... = a_{n-2} = 0` in the expansion yields the
/// closed trinomial form in `p = a_{n-1}`, `q = a_n`.
pub fn verify_trinomial_specialization(n: usize) -> Result<LemmaReport> {
    let delta = symbolic_discriminant(n)?;
    let mut values = vec![Some(BigInt::zero()); n];
    values[n - 2] = None;
    values[n - 1] = None;
    let got = delta.specialize(&values);
    let expected = &SparseMultiPoly::monomial(2, vec![0, n as u32 - 1], signed_power(n, n, n))
        + &SparseMultiPoly::monomial(2, vec![n as u32, 0], signed_power(n - 1, n - 1, n - 1));
    Ok(LemmaReport {
        lemma: "trinomial-closed-form",
        n,
        passed: got == expected,
        expected: expected.display_with(&["p", "q"]),
        found: got.display_with(&["p", "q"]),
        detail: format!("{} terms in full expansion", delta.num_terms()),
    })
}

/// A line in the `(a_{n-1}, a_n)` plane, parametrized by `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineMode {
    /// `a_{n-1} = c1 t + c2`, `a_n = t`.
    LastIsAffine { c1: BigRational, c2: BigRational },
    /// `a_{n-1} = t`, `a_n = c`.
    NextToLastFixed { c: BigRational },
}

/// The discriminant restricted to a line with the prefix `a_1..a_{n-2}` fixed.
pub fn restrict_to_line(n: usize, prefix: &[BigInt], mode: &LineMode) -> Result<RatPoly> {
    check_symbolic_degree(n)?;
    if prefix.len() != n - 2 {
        return Err(Error::InvalidArgument(format!(
            "prefix must have {} entries, got {}",
            n - 2,
            prefix.len()
        )));
    }
    let bivariate = specialize_prefix(n, prefix)?;
    let t = RatPoly::linear(BigRational::one(), BigRational::zero());
    let subs = match mode {
        LineMode::LastIsAffine { c1, c2 } => {
            vec![RatPoly::linear(c1.clone(), c2.clone()), t]
        }
        LineMode::NextToLastFixed { c } => vec![t, RatPoly::constant(c.clone())],
    };
    Ok(bivariate.substitute(&subs))
}

/// The discriminant as a polynomial in `(a_{n-1}, a_n)` for a fixed prefix.
pub fn specialize_prefix(n: usize, prefix: &[BigInt]) -> Result<SparseMultiPoly> {
    let delta = symbolic_discriminant(n)?;
    let mut values: Vec<Option<BigInt>> = prefix.iter().cloned().map(Some).collect();
    values.extend([None, None]);
    if values.len() != n {
        return Err(Error::InvalidArgument(format!(
            "prefix must have {} entries, got {}",
            n - 2,
            prefix.len()
        )));
    }
    Ok(delta.specialize(&values))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (num, den) = (q.numer(), q.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
}

/// Returns `h` with `h^2 = g` and positive leading coefficient, if `g` is the
/// square of a rational polynomial.
pub fn poly_square_root(g: &RatPoly) -> Option<RatPoly> {
    let Some(deg) = g.degree() else {
        return Some(RatPoly::zero());
    };
    if deg % 2 == 1 {
        return None;
    }
    let m = deg / 2;
    let mut h = vec![BigRational::zero(); m + 1];
    h[m] = rational_sqrt(g.leading().unwrap())?;
    let two_lead = &h[m] * BigRational::from_integer(BigInt::from(2));
    for k in 1..=m {
        let mut s = g.coeff(2 * m - k);
        for i in (m - k + 1)..m {
            s -= &h[i] * &h[2 * m - k - i];
        }
        h[m - k] = s / &two_lead;
    }
    let h = RatPoly::new(h);
    (&h * &h == *g).then_some(h)
}

/// True iff `z^2 - Delta` restricted to the line is irreducible over the
/// rationals, i.e. the restriction is not the square of a polynomial.
pub fn verify_line_irreducibility(n: usize, prefix: &[BigInt], mode: &LineMode) -> Result<bool> {
    Ok(poly_square_root(&restrict_to_line(n, prefix, mode)?).is_none())
}
