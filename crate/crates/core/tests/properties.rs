use degen::classical::{falling_factorial_poly, r_s2};
use degen::series::binom_lambda;
use degen::{binomial, Degenerate, LambdaPoly, Method, Rational, Ring, TruncatedSeries, XPolynomial};
use proptest::prelude::*;

const ORDER: usize = 6;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn lambda_poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(rational(), 0..4).prop_map(LambdaPoly::new)
}

fn series() -> impl Strategy<Value = TruncatedSeries<Rational>> {
    prop::collection::vec(rational(), ORDER + 1).prop_map(|c| TruncatedSeries::new(c, ORDER))
}

fn series_no_constant() -> impl Strategy<Value = TruncatedSeries<Rational>> {
    prop::collection::vec(rational(), ORDER).prop_map(|mut c| {
        c.insert(0, Rational::zero());
        TruncatedSeries::new(c, ORDER)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_poly_ring_axioms(a in lambda_poly(), b in lambda_poly(), c in lambda_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, LambdaPoly::zero());
        prop_assert_eq!(&a * &LambdaPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in lambda_poly(), b in lambda_poly(), at in rational()) {
        prop_assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
        prop_assert_eq!((&a + &b).eval(&at), a.eval(&at) + b.eval(&at));
    }

    #[test]
    fn lambda_poly_text_round_trip(a in lambda_poly()) {
        let text = degen::Scalar::to_json(&a).to_string();
        prop_assert_eq!(text.parse::<LambdaPoly>().unwrap(), a);
    }

    #[test]
    fn series_product_laws(f in series(), g in series(), h in series()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn exp_turns_sums_into_products(f in series_no_constant(), g in series_no_constant()) {
        let lhs = f.add(&g).unwrap().exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_series_exponents_add(a in rational(), b in rational(), lambda in rational()) {
        let lhs = binom_lambda(&a, &lambda, ORDER).mul(&binom_lambda(&b, &lambda, ORDER)).unwrap();
        prop_assert_eq!(lhs, binom_lambda(&(&a + &b), &lambda, ORDER));
    }

    #[test]
    fn specialising_lambda_commutes_with_series(a in rational(), at in rational()) {
        let symbolic = binom_lambda(&LambdaPoly::constant(a.clone()), &LambdaPoly::lambda(), ORDER);
        let specialised = symbolic.map(|c| c.eval(&at));
        prop_assert_eq!(specialised, binom_lambda(&a, &at, ORDER));
    }

    #[test]
    fn methods_agree_at_random_lambda(lambda in rational(), n in 0usize..8, k in 0usize..9, r in 0usize..5) {
        let d = Degenerate::new(lambda, 8);
        let reference = d.s2_ext(n, k, r, Method::Series).unwrap().value;
        for method in Method::ALL {
            prop_assert_eq!(&d.s2_ext(n, k, r, method).unwrap().value, &reference, "{}", method);
        }
    }

    #[test]
    fn symbolic_agrees_with_fixed(lambda in rational(), n in 0usize..7, r in 0usize..4) {
        let sym = Degenerate::new(LambdaPoly::lambda(), 6);
        let fixed = Degenerate::new(lambda.clone(), 6);
        for k in 0..=n {
            let s = sym.s2_ext(n, k, r, Method::Series).unwrap().value;
            prop_assert_eq!(s.eval(&lambda), fixed.s2_ext(n, k, r, Method::Series).unwrap().value);
        }
        let b = sym.bell_ext_poly(n, r).unwrap().poly.map(|c| c.eval(&lambda));
        prop_assert_eq!(b, fixed.bell_ext_poly(n, r).unwrap().poly);
    }

    #[test]
    fn bell_series_matches_polynomial(lambda in rational(), a in rational(), n in 0usize..7, r in 0usize..4) {
        let d = Degenerate::new(lambda, 6);
        let poly = d.bell_ext_poly(n, r).unwrap().poly;
        prop_assert_eq!(poly.eval(&a), d.bell_series_eval(n, r, &a, n).unwrap());
    }
}

#[test]
fn lambda_degree_is_at_most_n_minus_k() {
    let d = Degenerate::new(LambdaPoly::lambda(), 10);
    for r in 0..=4 {
        for n in 0..=10 {
            for k in 0..=n {
                let v = d.s2_ext(n, k, r, Method::Series).unwrap().value;
                assert!(v.degree().is_none_or(|deg| deg <= n - k), "n={n} k={k} r={r}: {v}");
            }
        }
    }
}

#[test]
fn lambda_one_closed_form() {
    let d = Degenerate::new(Rational::one(), 10);
    for r in 0..=4 {
        for n in 0..=10 {
            for k in 0..=n {
                let closed =
                    binomial(n as u64, k as u64) * falling_factorial_poly(n - k).eval(&Rational::from(r as i64));
                assert_eq!(d.s2_ext(n, k, r, Method::Series).unwrap().value, closed);
            }
        }
    }
}

#[test]
fn lambda_zero_is_classical() {
    let d = Degenerate::new(Rational::zero(), 10);
    for r in 0..=3 {
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(d.s2_ext(n, k, r, Method::Thm4).unwrap().value, r_s2(n, k, r).unwrap());
            }
        }
        let x = XPolynomial::<Rational>::x();
        for n in 0..=10 {
            assert_eq!(d.deg_falling(&Rational::from(7), n), Rational::from(7).pow(n as u32));
            assert_eq!(
                degen::deg_falling(&x, &XPolynomial::zero(), n),
                XPolynomial::monomial(n)
            );
        }
    }
}
