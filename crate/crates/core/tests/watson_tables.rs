use clf_core::rational::{int, ratio, BigRational};
use clf_core::watson::{
    coefficient_table, compose_expansion, expand_f, integrate_ck, log_map_of, revert_log_map,
    EvenSinPoly, PolySeries,
};

/// `scale * (a_0 + a_2 s^2 + a_4 s^4 + ...)` from the printed tables.
fn printed(den: i64, coeffs: &[i64]) -> EvenSinPoly {
    EvenSinPoly::from_y_coeffs(coeffs.iter().map(|&c| ratio(c, den)).collect())
}

fn printed_c() -> Vec<EvenSinPoly> {
    vec![
        printed(1, &[1]),
        printed(2, &[-1, 8, -8]),
        printed(8, &[1, -28, 220, -384, 192]),
        printed(48, &[-1, 92, -1628, 10752, -24576, 23040, -7680]),
        printed(
            384,
            &[
                1, -280, 10024, -130848, 773904, -2054400, 2691840, -1720320, 430080,
            ],
        ),
        printed(
            3840,
            &[
                -1, 848, -55328, 1259040, -13396560, 73983360, -215329920, 349224960, -319549440,
                154828800, -30965760,
            ],
        ),
    ]
}

#[test]
fn c_k_match_printed_table() {
    let f = expand_f(5).unwrap();
    for (k, want) in printed_c().iter().enumerate() {
        assert_eq!(f.coefficient(k), want, "c_{k}");
    }
}

#[test]
fn integrated_coefficients_match_printed_table() {
    let want = [
        ratio(1, 2),
        int(0),
        ratio(1, 8),
        ratio(1, 8),
        ratio(55, 384),
        ratio(11, 64),
    ];
    let f = expand_f(5).unwrap();
    for (k, w) in want.iter().enumerate() {
        assert_eq!(&integrate_ck(f.coefficient(k)), w, "C_{k}/pi");
    }
}

#[test]
fn final_expansion_matches_printed_table() {
    let exp = compose_expansion(5).unwrap();
    assert_eq!(exp.scale, int(2));
    assert_eq!(
        exp.coefficients,
        vec![
            int(1),
            ratio(1, 4),
            ratio(17, 32),
            ratio(207, 128),
            ratio(14875, 2048),
            ratio(352375, 8192),
        ]
    );
    // truncations agree with the full table
    for order in 0..5 {
        let e = compose_expansion(order).unwrap();
        assert_eq!(e.coefficients[..], exp.coefficients[..=order]);
    }
}

const ORDER: usize = 12;

#[test]
fn reversion_roundtrip_to_order_12() {
    let r = revert_log_map(ORDER).unwrap();
    assert_eq!(log_map_of(&r), PolySeries::var(ORDER));
}

#[test]
fn coefficient_properties_to_order_12() {
    let f = expand_f(ORDER).unwrap();
    let mut fact = 1i64;
    for (k, ck) in f.terms().iter().enumerate() {
        if k > 0 {
            fact *= k as i64;
        }
        assert_eq!(&ck.reflect(), ck, "symmetry of c_{k}");
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let want =
            ratio(sign, fact) / BigRational::from_integer(num_bigint::BigInt::from(1u64 << k));
        assert_eq!(ck.at_zero(), want, "c_{k}(0)");
        assert!(ck.degree() <= 4 * k, "degree of c_{k} is {}", ck.degree());
    }
    assert_eq!(integrate_ck(f.coefficient(1)), int(0));
}

#[test]
fn f_at_t_zero_is_exponential() {
    // at t = 0 the map closes: F(w, 0) = e^{-w/2}
    let f = expand_f(8).unwrap();
    let mut term = 1.0f64;
    for (k, ck) in f.terms().iter().enumerate() {
        if k > 0 {
            term *= -0.5 / k as f64;
        }
        assert!((ck.eval_f64(0.0) - term).abs() < 1e-15);
    }
}

#[test]
fn exported_table_json() {
    let rows = coefficient_table(1).unwrap();
    let json = serde_json::to_string(&rows).unwrap();
    assert_eq!(
        json,
        r#"[{"k":0,"c_k":{"0":"1"},"q_k":"1/2","gamma_k":"1","e_k":"1"},{"k":1,"c_k":{"0":"-1/2","2":"4","4":"-4"},"q_k":"0","gamma_k":"1/8","e_k":"1/4"}]"#
    );
}
