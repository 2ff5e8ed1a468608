//! Structured pass/fail residual reports.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default absolute tolerance on unit-scale residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub max_residual: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub tolerance: f64,
    pub passed: bool,
    pub context: String,
}

impl Check {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64, context: impl Into<String>) -> Self {
        let max_residual = max_residual.abs();
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            context: context.into(),
        }
    }

    /// A check whose verdict is decided by the caller, not by a residual bound.
    pub fn verdict(
        name: impl Into<String>,
        max_residual: f64,
        tolerance: f64,
        passed: bool,
        context: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            max_residual: max_residual.abs(),
            tolerance,
            passed,
            context: context.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall_passed: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self {
            checks: Vec::new(),
            overall_passed: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.overall_passed &= check.passed;
        self.checks.push(check);
    }

    pub fn add(&mut self, name: impl Into<String>, residual: f64, tolerance: f64, context: impl Into<String>) {
        self.push(Check::new(name, residual, tolerance, context));
    }

    /// Appends every check of `other`, keeping declaration order.
    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest residual among checks whose name starts with `prefix`.
    pub fn max_residual(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix))
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Re-evaluates residual-bound checks at another tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Self {
        let mut out = Self::new();
        for c in &self.checks {
            out.push(Check::new(c.name.clone(), c.max_residual, tolerance, c.context.clone()));
        }
        out
    }

    /// `overall_passed` equals the conjunction of the individual verdicts.
    pub fn is_consistent(&self) -> bool {
        self.overall_passed == self.checks.iter().all(|c| c.passed)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = serde_json::value::RawValue::from_string(format_f64(*x))
        .map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

/// Inverse of [`ser_f64`]: `null` reads back as NaN.
pub fn de_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction() {
        let mut r = VerificationReport::new();
        assert!(r.overall_passed);
        r.add("a", 1e-12, 1e-10, "");
        assert!(r.overall_passed);
        r.add("b", 1e-3, 1e-10, "");
        assert!(!r.overall_passed);
        assert!(r.is_consistent());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.max_residual(""), 1e-3);
    }

    #[test]
    fn nan_residual_fails() {
        let c = Check::new("x", f64::NAN, 1.0, "");
        assert!(!c.passed);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f64(-2.0), "-2.0000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 6.02e23, -1e-300, 5e-324] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn json_round_trip() {
        let mut r = VerificationReport::new();
        r.add("norm", 1.0 / 3.0, 1e-10, "ctx");
        r.push(Check::verdict("nan", f64::NAN, 1e-10, false, ""));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("3.3333333333333331e-1"));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.checks[0], r.checks[0]);
        assert!(back.checks[1].max_residual.is_nan());
    }
}
