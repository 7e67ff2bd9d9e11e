//! One function per subcommand, each building an [`OutputEnvelope`].

use clf_core::exact::verify_identities;
use clf_core::quadrature::QuadratureSpec;
use clf_core::rational::{to_decimal_string, to_ratio_string};
use clf_core::validate::{cross_validate_methods, exact_route, Method, EXACT_DECIMALS};
use clf_core::watson::{
    compose_expansion, expand_f, gamma_ratio_coeffs, integrate_ck, remainder_study,
    MAX_EXPANSION_ORDER,
};
use clf_core::{Error, Result};
use rayon::prelude::*;
use serde_json::Value;

use crate::output::{num, opt_num, Format, OutputEnvelope};

/// Which coefficient table `coeffs` prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// Coefficient polynomials c_k(s), s = sin t.
    #[value(name = "ck")]
    Ck,
    /// Integrals C_k of c_k over [0, pi/2], in units of pi.
    #[value(name = "Ck")]
    BigCk,
    /// Expansion of n!/(1/2)_n divided by sqrt(n).
    #[value(name = "gamma")]
    Gamma,
    /// Final coefficients e_k of f(n) ~ 2 sum e_k n^-k.
    #[value(name = "final")]
    Final,
}

impl Which {
    fn as_str(self) -> &'static str {
        match self {
            Which::Ck => "ck",
            Which::BigCk => "Ck",
            Which::Gamma => "gamma",
            Which::Final => "final",
        }
    }
}

/// Outcome of a command: the table plus whether every check passed.
pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub ok: bool,
}

impl From<OutputEnvelope> for Outcome {
    fn from(envelope: OutputEnvelope) -> Self {
        Self { envelope, ok: true }
    }
}

fn dec_column(name: &str) -> String {
    format!("{name}_dec{EXACT_DECIMALS}")
}

fn method_names(methods: &[Method]) -> Value {
    methods.iter().map(|m| Value::from(m.as_str())).collect()
}

pub fn seq(n_max: u64, format: Format) -> Result<Outcome> {
    let dec = dec_column("f_n");
    let mut env = OutputEnvelope::new("seq", format, &["n", "P_n", "f_n", &dec, "F_n"]);
    env.param("n_max", n_max);
    let values = (0..=n_max)
        .into_par_iter()
        .map(verify_identities)
        .collect::<Result<Vec<_>>>()?;
    for v in values {
        env.push(vec![
            v.n.into(),
            v.p_n.to_string().into(),
            to_ratio_string(&v.f_n).into(),
            to_decimal_string(&v.f_n, EXACT_DECIMALS).into(),
            to_ratio_string(&v.generating).into(),
        ]);
    }
    Ok(env.into())
}

pub fn f(n: u64, methods: &[Method], format: Format) -> Result<Outcome> {
    let dec = dec_column("exact");
    let mut env = OutputEnvelope::new(
        "f",
        format,
        &[
            "n",
            "method",
            "value",
            "estimate",
            &dec,
            "rel_discrepancy",
            "error",
        ],
    );
    env.param("n", n);
    env.param("methods", method_names(methods));
    let expansion = compose_expansion(MAX_EXPANSION_ORDER)?;
    let report = cross_validate_methods(n, &QuadratureSpec::for_n(n), &expansion, methods);
    let mut ok = true;
    for row in report.rows() {
        ok &= row.error.is_none();
        let value = exact_route(row.method, n).map_or(Value::Null, |r| to_ratio_string(&r).into());
        env.push(vec![
            n.into(),
            row.method.as_str().into(),
            value,
            opt_num(row.estimate),
            row.exact.into(),
            opt_num(row.rel_discrepancy),
            row.error.map_or(Value::Null, Value::from),
        ]);
    }
    Ok(Outcome { envelope: env, ok })
}

pub fn coeffs(order: usize, which: Which, format: Format) -> Result<Outcome> {
    let columns: &[&str] = match which {
        Which::Ck => &["k", "c_k"],
        Which::BigCk => &["k", "C_k_over_pi"],
        Which::Gamma => &["k", "gamma_k"],
        Which::Final => &["k", "e_k"],
    };
    let mut env = OutputEnvelope::new("coeffs", format, columns);
    env.param("order", order);
    env.param("which", which.as_str());
    match which {
        Which::Ck | Which::BigCk => {
            for (k, c) in expand_f(order)?.into_terms().into_iter().enumerate() {
                let value = match which {
                    Which::Ck => serde_json::to_value(&c)?,
                    _ => to_ratio_string(&integrate_ck(&c)).into(),
                };
                env.push(vec![k.into(), value]);
            }
        }
        Which::Gamma => {
            for (k, g) in gamma_ratio_coeffs(order)?.coefficients.iter().enumerate() {
                env.push(vec![k.into(), to_ratio_string(g).into()]);
            }
        }
        Which::Final => {
            let exp = compose_expansion(order)?;
            env.param("scale", to_ratio_string(&exp.scale));
            for (k, e) in exp.coefficients.iter().enumerate() {
                env.push(vec![k.into(), to_ratio_string(e).into()]);
            }
        }
    }
    Ok(env.into())
}

/// Status of one validate row.
fn status(method: Method, n: u64, rel: Option<f64>, tol: f64) -> &'static str {
    match (method.is_guaranteed(n), rel) {
        (false, _) => "unchecked",
        (true, Some(r)) if r <= tol => "pass",
        (true, _) => "fail",
    }
}

pub fn validate(n_max: u64, tol: f64, methods: &[Method], format: Format) -> Result<Outcome> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be a nonnegative number, got {tol}"
        )));
    }
    let dec = dec_column("exact");
    let mut env = OutputEnvelope::new(
        "validate",
        format,
        &[
            "n",
            "method",
            "estimate",
            &dec,
            "rel_discrepancy",
            "status",
            "error",
        ],
    );
    env.param("n_max", n_max);
    env.param("tol", num(tol));
    env.param("methods", method_names(methods));
    let expansion = compose_expansion(MAX_EXPANSION_ORDER)?;
    let reports: Vec<_> = (0..=n_max)
        .into_par_iter()
        .map(|n| cross_validate_methods(n, &QuadratureSpec::for_n(n), &expansion, methods))
        .collect();
    let mut ok = true;
    for report in &reports {
        for row in report.rows() {
            let st = status(row.method, row.n, row.rel_discrepancy, tol);
            ok &= st != "fail";
            env.push(vec![
                row.n.into(),
                row.method.as_str().into(),
                opt_num(row.estimate),
                row.exact.into(),
                opt_num(row.rel_discrepancy),
                st.into(),
                row.error.map_or(Value::Null, Value::from),
            ]);
        }
    }
    Ok(Outcome { envelope: env, ok })
}

pub fn remainder(order: usize, n_list: &[u64], format: Format) -> Result<Outcome> {
    let mut env = OutputEnvelope::new(
        "remainder",
        format,
        &["n", "remainder", "scaled_remainder", "order_estimate"],
    );
    env.param("order", order);
    env.param(
        "n_list",
        n_list.iter().map(|&n| Value::from(n)).collect::<Value>(),
    );
    env.param("scaled_remainder", format!("remainder * n^{}", order + 1));
    env.param("order_estimate", "log2(remainder(n) / remainder(2n))");
    for row in remainder_study(order, n_list)? {
        env.push(vec![
            row.n.into(),
            num(row.remainder),
            num(row.scaled_remainder),
            opt_num(row.order_estimate),
        ]);
    }
    Ok(env.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_policy() {
        assert_eq!(status(Method::Quad2d, 40, Some(1e-9), 1e-8), "pass");
        assert_eq!(status(Method::Quad2d, 40, Some(1e-7), 1e-8), "fail");
        assert_eq!(status(Method::Quad2d, 41, Some(1.0), 1e-8), "unchecked");
        assert_eq!(status(Method::Saddle, 0, None, 1e-8), "unchecked");
        assert_eq!(status(Method::Saddle, 3, None, 1e-8), "fail");
        assert_eq!(
            status(Method::Expansion, 100, Some(1e-20), 1e-8),
            "unchecked"
        );
    }

    #[test]
    fn seq_zero_is_single_row() {
        let out = seq(0, Format::Csv).unwrap();
        assert_eq!(
            out.envelope.render(),
            "n,P_n,f_n,f_n_dec20,F_n\n0,1,1,1.00000000000000000000,1\n"
        );
    }

    #[test]
    fn coeffs_order_zero() {
        let out = coeffs(0, Which::Ck, Format::Csv).unwrap();
        assert_eq!(
            out.envelope.render(),
            "k,c_k\n0,\"{\"\"0\"\":\"\"1\"\"}\"\n"
        );
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(
            coeffs(6, Which::Final, Format::Json),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(matches!(
            coeffs(6, Which::Gamma, Format::Json),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(matches!(
            remainder(6, &[10], Format::Json),
            Err(Error::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn negative_tolerance_rejected() {
        assert!(validate(0, -1.0, &Method::ALL, Format::Json).is_err());
        assert!(validate(0, f64::NAN, &Method::ALL, Format::Json).is_err());
    }
}
