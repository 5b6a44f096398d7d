use std::fmt::Write as _;

use crate::families::FamilySpec;

/// One named check with its worst observed residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub worst_residual: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes iff `worst ≤ tolerance` (NaN never passes).
    pub fn within(name: impl Into<String>, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tolerance,
            worst_residual: worst,
            tolerance,
        }
    }

    /// A boolean check; the residual is 0 or 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            passed: ok,
            worst_residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
        }
    }
}

/// Formats like C's `%.12g`.
pub fn fmt_g(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", v);
    let (mant, e) = sci.split_once('e').expect("exponent");
    let exp: i32 = e.parse().expect("exponent digits");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub spec: FamilySpec,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(spec: FamilySpec) -> Self {
        Self {
            spec,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `spec=…` header followed by one `check=… passed=… worst=… tol=…` line
    /// per check and an `overall=` line.
    pub fn to_key_value(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "spec family={} epsilon={} gamma={} beta={}\n",
            s.family,
            fmt_g(s.epsilon),
            fmt_g(s.gamma),
            fmt_g(s.beta)
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check={} passed={} worst={} tol={}",
                c.name,
                c.passed,
                fmt_g(c.worst_residual),
                fmt_g(c.tolerance)
            );
        }
        let _ = writeln!(out, "overall={}", self.overall());
        out
    }

    pub const CSV_HEADER: &'static str = "family,epsilon,gamma,beta,check,passed,worst,tolerance";

    pub fn csv_rows(&self) -> Vec<String> {
        let s = &self.spec;
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{},{},{},{},{}",
                    s.family,
                    fmt_g(s.epsilon),
                    fmt_g(s.gamma),
                    fmt_g(s.beta),
                    c.name,
                    c.passed,
                    fmt_g(c.worst_residual),
                    fmt_g(c.tolerance)
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub n: usize,
    pub e_analytic: f64,
    pub e_numeric: f64,
    pub abs_error: f64,
}

/// Analytic vs finite-difference levels of H₋, plus the level-by-level
/// comparison of the numeric H₊ and H₋ spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub spec: FamilySpec,
    pub rows: Vec<SpectrumRow>,
    /// (E⁺ numeric, matching E⁻ numeric) after removing the zero mode.
    pub pairs: Vec<(f64, f64)>,
}

impl SpectrumTable {
    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.abs_error))
    }

    pub fn max_pairing_error(&self) -> f64 {
        self.pairs
            .iter()
            .fold(0.0, |m, (p, q)| m.max((p - q).abs()))
    }

    pub const CSV_HEADER: &'static str = "n,E_analytic,E_numeric,abs_error";

    pub fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{}",
                    r.n,
                    fmt_g(r.e_analytic),
                    fmt_g(r.e_numeric),
                    fmt_g(r.abs_error)
                )
            })
            .collect()
    }
}
