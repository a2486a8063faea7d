//! CSV reports: one header row, comma separated, `.` decimal point, LF line
//! endings, numbers printed with 12 significant digits.

use std::fmt::Write as _;

/// Significant digits of every printed number.
pub const SIGNIFICANT_DIGITS: usize = 12;

pub const HEADER: &str = "method,quantity,lambda,n_points,value,error,runtime_ms";

/// Row source, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Fekete,
    EpsilonExact,
    EpsilonAsym,
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Fekete => "fekete",
            Method::EpsilonExact => "epsilon_exact",
            Method::EpsilonAsym => "epsilon_asym",
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// What a row measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Logarithmic energy.
    Energy,
    L1,
    L2,
    L3,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Energy => "E",
            Quantity::L1 => "L1",
            Quantity::L2 => "L2",
            Quantity::L3 => "L3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub quantity: Quantity,
    pub lambda: Option<f64>,
    pub n_points: usize,
    pub value: f64,
    pub error: Option<f64>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    /// Stable sort by `(n_points, method)`.
    pub fn sort(&mut self) {
        self.rows.sort_by_key(|r| (r.n_points, r.method));
    }

    /// Zero every runtime so that output is reproducible byte for byte.
    pub fn clear_timing(&mut self) {
        self.rows.iter_mut().for_each(|r| r.runtime_ms = 0);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.method.as_str(),
                r.quantity.as_str(),
                r.lambda.map_or_else(|| "NA".to_string(), format_number),
                r.n_points,
                format_number(r.value),
                r.error.map_or_else(|| "NA".to_string(), format_number),
                r.runtime_ms
            );
        }
        out
    }
}

/// `%.12g`: fixed notation for decimal exponents in `[-5, 12)`, otherwise
/// scientific; trailing zeros dropped.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    } else {
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exponent.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Header of the verification report.
pub const VERIFY_HEADER: &str = "check_id,expected,observed,tolerance,pass";

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check_id: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    /// Absolute comparison `|observed − expected| ≤ tolerance`.
    pub fn new(check_id: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            check_id: check_id.into(),
            expected,
            observed,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
        }
    }
}

pub fn checks_to_csv(rows: &[CheckRow]) -> String {
    let mut out = String::new();
    out.push_str(VERIFY_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.check_id,
            format_number(r.expected),
            format_number(r.observed),
            format_number(r.tolerance),
            r.pass
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(format_number(-2.0 * std::f64::consts::LN_2), "-1.38629436112");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(123_456_789_012.0), "123456789012");
        assert_eq!(format_number(1.5e12), "1.5e+12");
        assert_eq!(format_number(1e-7), "1e-07");
        assert_eq!(format_number(0.000_123_456_789_012_345), "0.000123456789012");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(9.999_999_999_999_9), "10");
    }

    #[test]
    fn rows_sort_by_points_then_method() {
        let row = |method, n_points| ReportRow {
            method,
            quantity: Quantity::Energy,
            lambda: None,
            n_points,
            value: 0.0,
            error: None,
            runtime_ms: 5,
        };
        let mut report = Report {
            rows: vec![
                row(Method::EpsilonAsym, 3),
                row(Method::Fekete, 3),
                row(Method::Quadrature, 2),
            ],
        };
        report.sort();
        report.clear_timing();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines[1], "quadrature,E,NA,2,0,NA,0");
        assert_eq!(lines[2], "fekete,E,NA,3,0,NA,0");
        assert_eq!(lines[3], "epsilon_asym,E,NA,3,0,NA,0");
    }
}
