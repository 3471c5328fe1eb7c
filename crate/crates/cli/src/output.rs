use std::fmt::Write as _;

use bergman_spectra::spectra::{Method, Operator};
use serde::Serialize;

pub const TABLE_HEADER: &str = "operator,alpha,beta,n,method,value,error_est";
pub const ASYMPTOTICS_HEADER: &str = "operator,alpha,beta,n,s_n,s_n_approx,ratio,error_est";

/// Formats `x` with 12 significant digits in the style of C's `%.12g`.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let fixed = format!("{x:.*}", (11 - exp) as usize);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON has no infinity; non-finite numbers become `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub operator: Operator,
    pub alpha: f64,
    pub beta: f64,
    pub n: u64,
    pub method: Method,
    pub value: f64,
    /// `inf` when the computation did not converge.
    pub error_est: f64,
}

#[derive(Serialize)]
struct TableJson {
    operator: Operator,
    alpha: f64,
    beta: f64,
    n: u64,
    method: Method,
    value: Option<f64>,
    error_est: Option<f64>,
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.operator,
            sig12(r.alpha),
            sig12(r.beta),
            r.n,
            r.method,
            sig12(r.value),
            sig12(r.error_est)
        );
    }
    out
}

pub fn table_json(rows: &[TableRow]) -> String {
    let items: Vec<TableJson> = rows
        .iter()
        .map(|r| TableJson {
            operator: r.operator,
            alpha: r.alpha,
            beta: r.beta,
            n: r.n,
            method: r.method,
            value: finite(r.value),
            error_est: finite(r.error_est),
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("rows serialize") + "\n"
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub operator: Operator,
    pub alpha: f64,
    pub beta: f64,
    pub n: u64,
    pub s_n: f64,
    pub s_n_approx: f64,
    /// `n^{α+1} s_n / c`.
    pub ratio: f64,
    pub error_est: f64,
}

#[derive(Serialize)]
struct AsymptoticJson {
    operator: Operator,
    alpha: f64,
    beta: f64,
    n: u64,
    s_n: Option<f64>,
    s_n_approx: f64,
    ratio: Option<f64>,
    error_est: Option<f64>,
}

pub fn asymptotics_csv(rows: &[AsymptoticRow]) -> String {
    let mut out = String::from(ASYMPTOTICS_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.operator,
            sig12(r.alpha),
            sig12(r.beta),
            r.n,
            sig12(r.s_n),
            sig12(r.s_n_approx),
            sig12(r.ratio),
            sig12(r.error_est)
        );
    }
    out
}

pub fn asymptotics_json(rows: &[AsymptoticRow]) -> String {
    let items: Vec<AsymptoticJson> = rows
        .iter()
        .map(|r| AsymptoticJson {
            operator: r.operator,
            alpha: r.alpha,
            beta: r.beta,
            n: r.n,
            s_n: finite(r.s_n),
            s_n_approx: r.s_n_approx,
            ratio: finite(r.ratio),
            error_est: finite(r.error_est),
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("rows serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.42065141435084571), "0.420651414351");
        assert_eq!(sig12(0.044910727028), "0.044910727028");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-0.5), "-0.5");
        assert_eq!(sig12(1.23e-9), "1.23e-9");
        assert_eq!(sig12(6.02214076e23), "6.02214076e23");
        assert_eq!(sig12(123456789012.7), "123456789013");
        assert_eq!(sig12(f64::INFINITY), "inf");
        assert_eq!(sig12(0.0), "0");
        // Rounding that carries into the next decade.
        assert_eq!(sig12(9.9999999999996e-6), "1e-5");
    }

    #[test]
    fn json_maps_infinity_to_null() {
        let row = TableRow {
            operator: Operator::T,
            alpha: 0.5,
            beta: -0.5,
            n: 3,
            method: Method::Quadrature,
            value: 0.25,
            error_est: f64::INFINITY,
        };
        let v: serde_json::Value = serde_json::from_str(&table_json(&[row])).unwrap();
        assert_eq!(v[0]["error_est"], serde_json::Value::Null);
        assert_eq!(v[0]["method"], "quadrature");
        assert_eq!(v[0]["operator"], "T");
    }
}
