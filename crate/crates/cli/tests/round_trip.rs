use degen::{LambdaSpec, Method, Rational};
use degen_cli::{parse_csv, parse_json_lines, table, write_records, Family, Format};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = Option<LambdaSpec>> {
    prop_oneof![
        Just(Some(LambdaSpec::Symbolic)),
        (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Some(LambdaSpec::Fixed(Rational::new(p, q).unwrap()))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn csv_and_json_encode_the_same_records(
        family in prop::sample::select(Family::ALL.to_vec()),
        n_max in 0usize..5,
        r in 0usize..4,
        lambda in lambda(),
    ) {
        let lambda = family.is_degenerate().then_some(lambda).flatten();
        let r = family.has_r().then_some(r);
        let rows = table(family, n_max, r, lambda.as_ref(), Method::Series, 30).unwrap();
        let mut json = Vec::new();
        write_records(&rows, Format::Json, &mut json).unwrap();
        let mut csv = Vec::new();
        write_records(&rows, Format::Csv, &mut csv).unwrap();
        prop_assert_eq!(&parse_json_lines(std::str::from_utf8(&json).unwrap()).unwrap(), &rows);
        prop_assert_eq!(&parse_csv(std::str::from_utf8(&csv).unwrap()).unwrap(), &rows);
    }

    #[test]
    fn decoders_never_panic(input in ".{0,200}") {
        let _ = parse_json_lines(&input);
        let _ = parse_csv(&input);
    }
}
