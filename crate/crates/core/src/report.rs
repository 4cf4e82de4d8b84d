//! Plain-text verification reports with stable ordering.

use std::fmt::{self, Write as _};

use num_complex::Complex64;

/// Formats `x` with 12 significant digits, fixed notation for moderate
/// exponents and scientific otherwise. Values below `1e-13` print as zero so
/// that float noise never changes a report.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x.abs() < 1e-13 {
        return "0".to_string();
    }
    // exponent after rounding to 12 significant digits
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// `(re, im)` pair at 12 significant digits.
pub fn complex_pair(z: Complex64) -> String {
    format!("({}, {})", sig12(z.re), sig12(z.im))
}

/// Status of one reported check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A named list of checks; a report passes when every check does.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's checks in under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}.{}", c.name),
                ..c
            });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {}", self.title);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{status} {}", c.name);
            } else {
                let _ = writeln!(out, "{status} {}: {}", c.name, c.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "violations: {}", self.violations());
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formats() {
        assert_eq!(sig12(0.5), "0.500000000000");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(-0.8660254037844386), "-0.866025403784");
        assert_eq!(sig12(1e-16), "0");
        assert_eq!(sig12(-1e-16), "0");
        assert_eq!(sig12(123.0), "123.000000000");
        assert_eq!(sig12(2.5e-7), "2.50000000000e-7");
        assert_eq!(sig12(0.9999999999999999), "1.00000000000");
        assert_eq!(sig12(9.9999999999999e-6), "0.0000100000000000");
    }

    #[test]
    fn report_counts_failures() {
        let mut r = Report::new("t");
        r.check("a", true, "");
        r.check("b", false, "bad");
        assert!(!r.passed());
        assert_eq!(r.violations(), 1);
        assert_eq!(r.first_failure().unwrap().name, "b");
        assert!(r.render().contains("FAIL b: bad"));
    }
}
