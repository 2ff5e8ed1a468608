//! Structure functions of deformed oscillators and their recurrences.
//!
//! The quadratic family `φ(n) = (1 + f/2) n − (f/2) n²` is the one realized
//! by two-fermion quasi-bosons. The generic recurrence
//! `φ(n+1) = Σ_{k=0}^{n} (−1)^{n−k} C(n+1,k) φ(k)` (n ≥ 2) fixes every value
//! from `φ(1)` and `φ(2)`; its cancellations grow with binomial size, so the
//! certifying paths run in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StructureFunction {
    Quadratic { f: f64 },
    ArikCoon { q: f64 },
    Undeformed,
}

impl StructureFunction {
    pub fn quadratic(f: f64) -> Self {
        Self::Quadratic { f }
    }

    pub fn arik_coon(q: f64) -> Self {
        Self::ArikCoon { q }
    }

    pub fn eval(&self, n: u32) -> f64 {
        match *self {
            Self::Quadratic { f } => phi_quadratic(n, f),
            Self::ArikCoon { q } => phi_ac(n, q),
            Self::Undeformed => n as f64,
        }
    }

    /// `∏_{k=1}^{n} φ(k)`, the squared norm of `(A†)^n|O⟩`.
    pub fn factorial(&self, n: u32) -> f64 {
        (1..=n).map(|k| self.eval(k)).product()
    }

    /// Deformation parameter when the function belongs to the quadratic family.
    pub fn quadratic_f(&self) -> Option<f64> {
        match *self {
            Self::Quadratic { f } => Some(f),
            Self::Undeformed => Some(0.0),
            Self::ArikCoon { .. } => None,
        }
    }

    pub fn energy(&self, n: u32) -> f64 {
        energy(n, self)
    }
}

pub fn phi_quadratic(n: u32, f: f64) -> f64 {
    let n = n as f64;
    (1.0 + f / 2.0) * n - (f / 2.0) * n * n
}

/// Arik–Coon `(qⁿ − 1)/(q − 1)`, with the removable singularity at `q = 1`.
pub fn phi_ac(n: u32, q: f64) -> f64 {
    if q == 1.0 {
        return n as f64;
    }
    // 1 + q + … + q^{n-1}, exact at small n and free of the 0/0 near q = 1
    let mut sum = 0.0;
    let mut term = 1.0;
    for _ in 0..n {
        sum += term;
        term *= q;
    }
    sum
}

/// `E(n) = (φ(n+1) + φ(n)) / 2`.
pub fn energy(n: u32, sf: &StructureFunction) -> f64 {
    0.5 * (sf.eval(n + 1) + sf.eval(n))
}

/// Row `n` of Pascal's triangle in exact integers.
pub fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    pascal_row(n).swap_remove(k)
}

/// `Σ_{k=0}^{n} C(n,k) k^m (−1)^{n−k}`; zero for `m < n` and `n!` at `m = n`.
pub fn alternating_binomial_sum(n: usize, m: u32) -> BigInt {
    pascal_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let term = c * BigInt::from(k).pow(m);
            if (n - k).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Number types the recurrences are evaluated in: `f64` for operator work,
/// `BigRational` for certification.
pub trait RecurrenceScalar: Num + Clone {
    fn from_bigint(x: &BigInt) -> Self;

    fn from_i64(x: i64) -> Self {
        Self::from_bigint(&BigInt::from(x))
    }
}

impl RecurrenceScalar for f64 {
    fn from_bigint(x: &BigInt) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
}

impl RecurrenceScalar for BigRational {
    fn from_bigint(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }
}

/// Right-hand side of the generic recurrence: `φ(n+1)` from `φ(0..=n)`.
pub fn recurrence_rhs<T: RecurrenceScalar>(values: &[T]) -> T {
    let n = values.len() - 1;
    let row = pascal_row(n + 1);
    let mut acc = T::zero();
    for (k, phi_k) in values.iter().enumerate() {
        let term = T::from_bigint(&row[k]) * phi_k.clone();
        acc = if (n - k).is_multiple_of(2) { acc + term } else { acc - term };
    }
    acc
}

/// `φ(0..=n_max)` generated from `φ(0) = 0`, `φ(1)`, `φ(2)` by the generic recurrence.
pub fn recurrence_sequence<T: RecurrenceScalar>(phi1: T, phi2: T, n_max: usize) -> Vec<T> {
    let mut values = vec![T::zero(), phi1, phi2];
    while values.len() <= n_max {
        let next = recurrence_rhs(&values);
        values.push(next);
    }
    values.truncate(n_max + 1);
    values
}

/// `φ(n)` from the generic recurrence. The iteration runs in exact rationals
/// seeded with the exact binary values of `phi1`, `phi2`.
pub fn phi_from_recurrence(phi1: f64, phi2: f64, n: usize) -> f64 {
    let to_exact = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
    let seq = recurrence_sequence(to_exact(phi1), to_exact(phi2), n);
    seq[n].to_f64().unwrap_or(f64::NAN)
}

/// `φ(n+1) = (2(n+1)/n) φ(n) − ((n+1)/(n−1)) φ(n−1)`.
pub fn three_term_next<T: RecurrenceScalar>(phi_prev: T, phi_curr: T, n: i64) -> Result<T> {
    if n < 2 {
        return Err(Error::Domain(format!("three-term recurrence needs n >= 2, got {n}")));
    }
    let (np1, nn, nm1) = (T::from_i64(n + 1), T::from_i64(n), T::from_i64(n - 1));
    let two = T::from_i64(2);
    Ok(two * np1.clone() / nn * phi_curr - np1 / nm1 * phi_prev)
}

pub fn phi_three_term(phi_prev: f64, phi_curr: f64, n: i64) -> Result<f64> {
    three_term_next(phi_prev, phi_curr, n)
}

/// `E_{n+1} = ((4n²+4n−4)/(2n²−1)) E_n − ((2n²+4n+1)/(2n²−1)) E_{n−1}`.
pub fn energy_recurrence_next<T: RecurrenceScalar>(e_prev: T, e_curr: T, n: i64) -> Result<T> {
    let den = 2 * n * n - 1;
    if den == 0 || n < 1 {
        return Err(Error::Domain(format!("energy recurrence undefined at n = {n}")));
    }
    let d = T::from_i64(den);
    Ok(T::from_i64(4 * n * n + 4 * n - 4) / d.clone() * e_curr
        - T::from_i64(2 * n * n + 4 * n + 1) / d * e_prev)
}

/// Quadratic structure function in exact arithmetic.
pub fn phi_quadratic_exact(n: i64, f: &BigRational) -> BigRational {
    let half_f = f / BigRational::from_integer(2.into());
    let n = BigRational::from_integer(n.into());
    (BigRational::one() + &half_f) * &n - half_f * &n * &n
}

/// Residuals of the quasi-Fibonacci energy recurrence for `n = 1..n_max−1`.
pub fn check_energy_recurrence(sf: &StructureFunction, n_max: u32, tolerance: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut worst = 0.0f64;
    let mut worst_n = 0;
    for n in 1..n_max {
        let predicted = energy_recurrence_next(energy(n - 1, sf), energy(n, sf), n as i64)
            .expect("2n^2-1 is odd, never zero");
        let r = (energy(n + 1, sf) - predicted).abs();
        if !(r <= worst) {
            worst = r;
            worst_n = n;
        }
    }
    report.add(
        "energy quasi-Fibonacci recurrence",
        worst,
        tolerance,
        format!("{sf:?}, n = 1..{}, worst at n = {worst_n}", n_max.saturating_sub(1)),
    );
    report
}
