//! Cross-checks of every floating-point route against the exact `f(n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{f_via_3f2, f_via_p4, f_via_quadratic};
use crate::quadrature::{
    f_double_integral, f_single_integral_2f1, f_single_integral_legendre, QuadratureSpec,
};
use crate::rational::{to_decimal_string, to_f64, BigRational};
use crate::saddle::{default_saddle_count, f_ratio_via_saddle};
use crate::watson::{compose_expansion, AsymptoticExpansion, MAX_EXPANSION_ORDER};

/// Digits after the point in the `exact` column of reports.
pub const EXACT_DECIMALS: usize = 20;

/// Largest `n` for which the binary64 routes carry a stated tolerance.
pub const GUARANTEED_N_MAX: u64 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    P2,
    P4,
    Quad2d,
    Quad1dLegendre,
    #[serde(rename = "quad1d-2f1")]
    Quad1d2f1,
    Saddle,
    Expansion,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Exact,
        Method::P2,
        Method::P4,
        Method::Quad2d,
        Method::Quad1dLegendre,
        Method::Quad1d2f1,
        Method::Saddle,
        Method::Expansion,
    ];

    /// The routes compared by [`cross_validate`].
    pub const NUMERIC: [Method; 5] = [
        Method::Quad2d,
        Method::Quad1dLegendre,
        Method::Quad1d2f1,
        Method::Saddle,
        Method::Expansion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::P2 => "p2",
            Method::P4 => "p4",
            Method::Quad2d => "quad2d",
            Method::Quad1dLegendre => "quad1d-legendre",
            Method::Quad1d2f1 => "quad1d-2f1",
            Method::Saddle => "saddle",
            Method::Expansion => "expansion",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Method::Exact | Method::P2 | Method::P4)
    }

    /// Whether the route has a stated tolerance at `n`.
    ///
    /// Exact routes always do; the quadrature and saddle routes do for
    /// `n <= 40`; the truncated expansion is asymptotic and never does.
    pub fn is_guaranteed(self, n: u64) -> bool {
        match self {
            Method::Exact | Method::P2 | Method::P4 => true,
            Method::Quad2d | Method::Quad1dLegendre | Method::Quad1d2f1 => n <= GUARANTEED_N_MAX,
            Method::Saddle => (1..=GUARANTEED_N_MAX).contains(&n),
            Method::Expansion => false,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method {s:?}")))
    }
}

/// Exact value of one route; `None` for floating-point routes.
pub fn exact_route(method: Method, n: u64) -> Option<BigRational> {
    match method {
        Method::Exact => Some(f_via_3f2(n)),
        Method::P2 => Some(f_via_quadratic(n)),
        Method::P4 => Some(f_via_p4(n)),
        _ => None,
    }
}

/// Binary64 estimate of `f(n)` from one route.
pub fn estimate(
    method: Method,
    n: u64,
    spec: &QuadratureSpec,
    expansion: &AsymptoticExpansion,
) -> Result<f64> {
    match method {
        Method::Exact | Method::P2 | Method::P4 => {
            Ok(to_f64(&exact_route(method, n).expect("exact route")))
        }
        Method::Quad2d => f_double_integral(n, spec),
        Method::Quad1dLegendre => f_single_integral_legendre(n, spec),
        Method::Quad1d2f1 => f_single_integral_2f1(n, spec),
        Method::Saddle => f_ratio_via_saddle(n, default_saddle_count(n)),
        Method::Expansion => Ok(to_f64(&expansion.evaluate(n, expansion.order())?)),
    }
}

/// Per-`n` comparison of every route against the exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub n: u64,
    pub exact: BigRational,
    pub estimates: BTreeMap<Method, f64>,
    /// `|estimate - exact| / exact`.
    pub discrepancies: BTreeMap<Method, f64>,
    /// Routes that failed, with their error messages.
    pub failures: BTreeMap<Method, String>,
}

/// One flattened report line, the unit of JSON and CSV output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub method: Method,
    pub estimate: Option<f64>,
    pub exact: String,
    pub rel_discrepancy: Option<f64>,
    pub error: Option<String>,
}

impl MethodReport {
    pub fn worst_discrepancy(&self) -> f64 {
        self.discrepancies.values().copied().fold(0.0, f64::max)
    }

    /// Rows in method order, failures included.
    pub fn rows(&self) -> Vec<ReportRow> {
        let exact = to_decimal_string(&self.exact, EXACT_DECIMALS);
        let mut methods: Vec<Method> = self
            .estimates
            .keys()
            .chain(self.failures.keys())
            .copied()
            .collect();
        methods.sort();
        methods.dedup();
        methods
            .into_iter()
            .map(|m| ReportRow {
                n: self.n,
                method: m,
                estimate: self.estimates.get(&m).copied(),
                exact: exact.clone(),
                rel_discrepancy: self.discrepancies.get(&m).copied(),
                error: self.failures.get(&m).cloned(),
            })
            .collect()
    }
}

/// Compare `methods` against the exact `f(n)`. A failing route is recorded
/// in `failures` and does not stop the others.
pub fn cross_validate_methods(
    n: u64,
    spec: &QuadratureSpec,
    expansion: &AsymptoticExpansion,
    methods: &[Method],
) -> MethodReport {
    let exact = f_via_3f2(n);
    let exact_f = to_f64(&exact);
    let mut report = MethodReport {
        n,
        exact: exact.clone(),
        estimates: BTreeMap::new(),
        discrepancies: BTreeMap::new(),
        failures: BTreeMap::new(),
    };
    for &m in methods {
        if let Some(value) = exact_route(m, n) {
            let rel = to_f64(&((&value - &exact) / &exact)).abs();
            report.estimates.insert(m, to_f64(&value));
            report.discrepancies.insert(m, rel);
            continue;
        }
        match estimate(m, n, spec, expansion) {
            Ok(v) => {
                report.estimates.insert(m, v);
                report
                    .discrepancies
                    .insert(m, ((v - exact_f) / exact_f).abs());
            }
            Err(e) => {
                report.failures.insert(m, e.to_string());
            }
        }
    }
    report
}

/// All numeric routes (three quadratures, saddle point, order-5 expansion).
pub fn cross_validate(n: u64, spec: &QuadratureSpec) -> MethodReport {
    let expansion = compose_expansion(MAX_EXPANSION_ORDER).expect("order 5 is tabulated");
    cross_validate_methods(n, spec, &expansion, &Method::NUMERIC)
}

pub fn write_csv<W: Write>(reports: &[MethodReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for report in reports {
        for row in report.rows() {
            w.serialize(row)?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn to_json(reports: &[MethodReport]) -> Result<String> {
    let rows: Vec<ReportRow> = reports.iter().flat_map(MethodReport::rows).collect();
    Ok(serde_json::to_string(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{m}\""));
        }
        assert!("simpson".parse::<Method>().is_err());
    }

    #[test]
    fn n_zero_reports_failures_without_aborting() {
        let report = cross_validate(0, &QuadratureSpec::for_n(0));
        assert!(report.failures.contains_key(&Method::Saddle));
        assert!(report.failures.contains_key(&Method::Expansion));
        for m in [Method::Quad2d, Method::Quad1dLegendre, Method::Quad1d2f1] {
            assert!(report.discrepancies[&m] < 1e-12, "{m}");
        }
    }

    #[test]
    fn csv_and_json_rows() {
        let exp = compose_expansion(5).unwrap();
        let report = cross_validate_methods(
            2,
            &QuadratureSpec::for_n(2),
            &exp,
            &[Method::P2, Method::Saddle],
        );
        let mut buf = Vec::new();
        write_csv(std::slice::from_ref(&report), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("n,method,estimate,exact,rel_discrepancy,error")
        );
        let p2 = lines.next().unwrap();
        assert!(
            p2.starts_with("2,p2,2.2222222222222223,2.22222222222222222222,0"),
            "{p2}"
        );
        assert!(lines.next().unwrap().starts_with("2,saddle,"));

        let json = to_json(&[report]).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["method"], "p2");
        assert_eq!(parsed[0]["exact"], "2.22222222222222222222");
    }
}
