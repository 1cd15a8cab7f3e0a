//! Certified Galois-group classification.
//!
//! A polynomial is placed in one of three bins. `CertifiedSn` and
//! `CertifiedNonSn` carry evidence that can be re-checked independently;
//! anything the pipeline cannot settle is reported as `Undecided` rather
//! than guessed.
//!
//! The pipeline runs cheapest test first:
//!
//! 1. vanishing discriminant (repeated root, so the group is not `S_n`);
//! 2. square discriminant (group inside `A_n`);
//! 3. Frobenius cycle types that force `S_n`;
//! 4. an explicit integer factor;
//! 5. the exact classifier for `n <= 4`.

mod factor;
mod modp;
mod small;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bigpoly::MonicPoly;
use crate::disc::{discriminant, is_perfect_square, DiscValue};
use crate::error::Result;

pub use factor::{reducible_witness, MAX_ORACLE_DEGREE, MAX_ORACLE_ROOT_BOUND};
pub use modp::{cycle_type_mod_p, primes};
pub use small::{exact_small_degree, SmallGroup};

/// Default number of good primes scanned for an `S_n` certificate.
pub const DEFAULT_BUDGET: usize = 100;

/// Primes per unit of degree scanned before the factor search is tried.
const EARLY_SCAN_FACTOR: usize = 4;

/// Degrees of the irreducible factors of `f mod p`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType(Vec<u32>);

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// A single `n`-cycle.
    pub fn is_full_cycle(&self) -> bool {
        self.0.len() == 1
    }

    /// Shape `(1, n - 1)`.
    pub fn is_fixed_point_and_long_cycle(&self) -> bool {
        self.0.len() == 2 && self.0[0] == 1
    }

    /// Exactly one even part, equal to 2, so an odd power is a transposition.
    pub fn powers_to_transposition(&self) -> bool {
        let even: Vec<u32> = self.0.iter().copied().filter(|d| d % 2 == 0).collect();
        even == [2]
    }

    /// Bitmask of all sub-multiset sums (bit `k` set iff some parts sum to `k`).
    pub fn subset_sums(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &d| acc | (acc << d))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Primes witnessing the three cycle-type flags that together force `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SnCertificate {
    /// Prime with cycle type `(n)`: the group is transitive.
    pub full_cycle: u64,
    /// Prime with cycle type `(1, n-1)`: doubly transitive. Absent for `n = 2`.
    pub long_cycle: Option<u64>,
    /// Prime whose cycle type powers to a transposition.
    pub transposition: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SnEvidence {
    Frobenius(SnCertificate),
    SmallDegree(SmallGroup),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NonSnReason {
    DiscZero,
    /// Square root of the discriminant.
    DiscSquare(#[serde(serialize_with = "crate::serde_bigint")] BigInt),
    /// A proper monic integer factor.
    Reducible(#[serde(serialize_with = "crate::serde_display")] MonicPoly),
    SmallDegree(SmallGroup),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct UndecidedEvidence {
    pub primes_tried: usize,
    pub cycle_types: Vec<CycleType>,
    /// Why the later stages could not conclude, if they ran.
    pub note: Option<String>,
}

/// Three-way verdict on whether the Galois group is the full `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisClass {
    CertifiedSn(SnEvidence),
    CertifiedNonSn(NonSnReason),
    Undecided(UndecidedEvidence),
}

impl GaloisClass {
    pub fn label(&self) -> &'static str {
        match self {
            GaloisClass::CertifiedSn(_) => "CertifiedSn",
            GaloisClass::CertifiedNonSn(_) => "CertifiedNonSn",
            GaloisClass::Undecided(_) => "Undecided",
        }
    }

    /// `Some(true)` for `S_n`, `Some(false)` for not `S_n`, `None` if undecided.
    pub fn is_sn(&self) -> Option<bool> {
        match self {
            GaloisClass::CertifiedSn(_) => Some(true),
            GaloisClass::CertifiedNonSn(_) => Some(false),
            GaloisClass::Undecided(_) => None,
        }
    }
}

/// Resumable walk over the primes not dividing the discriminant.
struct FrobeniusScan<'a> {
    f: &'a MonicPoly,
    disc: &'a BigInt,
    disc_small: Option<i128>,
    next: usize,
    tried: usize,
    full: Option<u64>,
    long: Option<u64>,
    transposition: Option<u64>,
    seen: Vec<CycleType>,
}

impl<'a> FrobeniusScan<'a> {
    fn new(f: &'a MonicPoly, disc: &'a BigInt) -> Self {
        FrobeniusScan {
            f,
            disc,
            disc_small: disc.to_i128(),
            next: 0,
            tried: 0,
            full: None,
            long: None,
            transposition: None,
            seen: Vec::new(),
        }
    }

    fn divides_disc(&self, p: u64) -> bool {
        match self.disc_small {
            Some(d) => d % i128::from(p) == 0,
            None => (self.disc % BigInt::from(p)).is_zero(),
        }
    }

    fn certificate(&self) -> Option<SnCertificate> {
        let n = self.f.degree();
        match (self.full, self.long, self.transposition) {
            (Some(a), long, Some(c)) if n == 2 || long.is_some() => Some(SnCertificate {
                full_cycle: a,
                long_cycle: long,
                transposition: c,
            }),
            _ => None,
        }
    }

    /// Continues until `budget` good primes have been used in total or a
    /// certificate is complete.
    fn run(&mut self, budget: usize) -> Option<SnCertificate> {
        let n = self.f.degree();
        let table = primes();
        while self.tried < budget && self.next < table.len() {
            if let Some(cert) = self.certificate() {
                return Some(cert);
            }
            let p = table[self.next];
            self.next += 1;
            if self.divides_disc(p) {
                continue;
            }
            let Ok(ct) = cycle_type_mod_p(self.f, p) else {
                continue;
            };
            self.tried += 1;
            if self.full.is_none() && ct.is_full_cycle() {
                self.full = Some(p);
            }
            if self.long.is_none() && n > 2 && ct.is_fixed_point_and_long_cycle() {
                self.long = Some(p);
            }
            if self.transposition.is_none() && ct.powers_to_transposition() {
                self.transposition = Some(p);
            }
            if !self.seen.contains(&ct) {
                self.seen.push(ct);
            }
        }
        self.certificate()
    }

    fn into_evidence(mut self, note: Option<String>) -> UndecidedEvidence {
        self.seen.sort();
        UndecidedEvidence {
            primes_tried: self.tried,
            cycle_types: self.seen,
            note,
        }
    }
}

/// Looks for cycle types that force the Galois group to be `S_n`:
/// an `n`-cycle, an `(n-1)`-cycle (skipped for `n = 2`) and a type with a
/// single 2-cycle and otherwise odd cycles.
pub fn sn_certificate(f: &MonicPoly, budget: usize) -> Result<Option<SnCertificate>> {
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Ok(None);
    }
    Ok(FrobeniusScan::new(f, &disc.value).run(budget))
}

/// Classifies `f`; see the module documentation for the stage order.
///
/// Errors only on degree below 2; a failed factor search leaves the verdict
/// undecided (for `n >= 5`) or defers to the exact classifier.
pub fn classify(f: &MonicPoly, budget: usize) -> Result<GaloisClass> {
    let disc = discriminant(f)?;
    Ok(classify_with_disc(f, &disc, budget))
}

/// [`classify`] with a precomputed discriminant.
pub fn classify_with_disc(f: &MonicPoly, disc: &DiscValue, budget: usize) -> GaloisClass {
    let n = f.degree();
    if disc.is_zero() {
        return GaloisClass::CertifiedNonSn(NonSnReason::DiscZero);
    }
    if let Some(root) = is_perfect_square(&disc.value) {
        return GaloisClass::CertifiedNonSn(NonSnReason::DiscSquare(root));
    }
    // A reducible polynomial never yields a certificate, so when a short
    // scan has not even produced an n-cycle the factor search runs early.
    // The verdict and its evidence are the same as in the plain stage order.
    let mut scan = FrobeniusScan::new(f, &disc.value);
    if let Some(cert) = scan.run(budget.min(EARLY_SCAN_FACTOR * n)) {
        return GaloisClass::CertifiedSn(SnEvidence::Frobenius(cert));
    }
    let mut witness = None;
    if scan.full.is_none() && n <= MAX_ORACLE_DEGREE {
        witness = Some(reducible_witness(f));
    }
    if !matches!(witness, Some(Ok(Some(_)))) {
        if let Some(cert) = scan.run(budget) {
            return GaloisClass::CertifiedSn(SnEvidence::Frobenius(cert));
        }
    }
    let mut note = None;
    if n <= MAX_ORACLE_DEGREE {
        match witness.unwrap_or_else(|| reducible_witness(f)) {
            Ok(Some(g)) => return GaloisClass::CertifiedNonSn(NonSnReason::Reducible(g)),
            Ok(None) => {}
            Err(e) => note = Some(e.to_string()),
        }
    }
    if n <= 4 {
        match exact_small_degree(f) {
            Ok(g) if g.is_symmetric() => return GaloisClass::CertifiedSn(SnEvidence::SmallDegree(g)),
            Ok(g) => return GaloisClass::CertifiedNonSn(NonSnReason::SmallDegree(g)),
            Err(e) => note = Some(e.to_string()),
        }
    }
    GaloisClass::Undecided(scan.into_evidence(note))
}

/// `Some(true)` if `f` is certified irreducible over the rationals,
/// `Some(false)` if certified reducible, `None` if neither could be shown.
pub fn certify_irreducible(f: &MonicPoly, budget: usize) -> Option<bool> {
    let n = f.degree();
    if n == 1 {
        return Some(true);
    }
    let disc = discriminant(f).ok()?;
    if disc.is_zero() {
        return Some(false);
    }
    let mut scan = FrobeniusScan::new(f, &disc.value);
    scan.run(budget.min(EARLY_SCAN_FACTOR * n));
    if scan.full.is_some() {
        return Some(true);
    }
    if n <= 4 {
        if let Ok(g) = exact_small_degree(f) {
            return Some(!matches!(g, SmallGroup::Reducible(_)));
        }
    }
    match reducible_witness(f) {
        Ok(Some(_)) => Some(false),
        Ok(None) => Some(true),
        Err(_) => None,
    }
}
