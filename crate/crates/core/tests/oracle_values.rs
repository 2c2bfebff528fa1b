//! Values computed independently with a computer algebra system (direct
//! series expansion of the generating functions) and frozen here.

use degen::classical::oracle_partitions;
use degen::{Degenerate, LambdaPoly, Method, Rational, XPolynomial};

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn lp(c: &[i64]) -> LambdaPoly {
    LambdaPoly::from_ints(c)
}

#[test]
fn symbolic_r_extended_values() {
    let d = Degenerate::new(LambdaPoly::lambda(), 8);
    let expected = lp(&[70035, -204771, 223125, -110985, 24360, -1764]);
    for method in Method::ALL {
        assert_eq!(d.s2_ext(7, 2, 4, method).unwrap().value, expected, "{method}");
    }
    assert_eq!(expected.eval(&q("7/5")), q("724752/3125"));
}

#[test]
fn fixed_lambda_seven_fifths() {
    let d = Degenerate::new(q("7/5"), 8);
    for method in Method::ALL {
        assert_eq!(d.s2_ext(8, 3, 4, method).unwrap().value, q("2034816/3125"), "{method}");
    }
}

#[test]
fn degenerate_bell_polynomial_of_degree_six() {
    let d = Degenerate::new(LambdaPoly::lambda(), 6);
    let expected = XPolynomial::new(vec![
        lp(&[0]),
        lp(&[1, -15, 85, -225, 274, -120]),
        lp(&[31, -225, 595, -675, 274]),
        lp(&[90, -375, 510, -225]),
        lp(&[65, -150, 85]),
        lp(&[15, -15]),
        lp(&[1]),
    ]);
    assert_eq!(d.bell_deg_poly(6).unwrap().poly, expected);
}

#[test]
fn dobinski_against_high_precision_sums() {
    let d = Degenerate::new(q("1/2"), 4);
    let est = d.dobinski_numeric(4, 2, &q("2"), 1e-12).unwrap();
    assert!((est.value - 270.5).abs() < 1e-10, "{est:?}");

    let d = Degenerate::new(q("-1/3"), 6);
    let est = d.dobinski_numeric(6, 1, &q("1/2"), 1e-12).unwrap();
    assert!((est.value - 614.176_890_432_098_8).abs() < 1e-9, "{est:?}");
}

#[test]
fn partition_counts() {
    // Stirling numbers S2(10, k) and r-Stirling numbers S_{2,3}(8+3, k+3).
    let s2_10 = [0u64, 1, 511, 9330, 34105, 42525, 22827, 5880, 750, 45, 1];
    for (k, v) in s2_10.iter().enumerate() {
        assert_eq!(oracle_partitions(10, k, 0).unwrap(), *v);
    }
    let r3 = [6561u64, 58975, 133057, 116298, 47271, 9702, 1022, 52, 1];
    for (k, v) in r3.iter().enumerate() {
        assert_eq!(oracle_partitions(8, k, 3).unwrap(), *v, "k = {k}");
    }
}
