use serde_json::Value;

use degen::classical::{bell_poly, r_s2, StirlingKind, StirlingTriangle};
use degen::{Degenerate, LambdaPoly, LambdaSpec, Method, Rational, Scalar, XPolynomial};

use crate::record::{Family, OutputRecord};
use crate::CliError;

/// Indices and parameters for one family value.
#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub family: Family,
    pub n: usize,
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub lambda: Option<LambdaSpec>,
    pub x: Option<Rational>,
    pub method: Method,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_shape(
    family: Family,
    k: Option<usize>,
    r: Option<usize>,
    lambda: Option<&LambdaSpec>,
    x: Option<&Rational>,
) -> Result<(), CliError> {
    if family.has_k() && k.is_none() {
        return Err(usage(format!("family {family} needs --k")));
    }
    if !family.has_k() && k.is_some() {
        return Err(usage(format!("family {family} takes no --k")));
    }
    if family.has_r() && r.is_none() {
        return Err(usage(format!("family {family} needs --r")));
    }
    if !family.has_r() && r.is_some() {
        return Err(usage(format!("family {family} takes no --r")));
    }
    if family.is_degenerate() && lambda.is_none() {
        return Err(usage(format!("family {family} needs --lambda")));
    }
    if !family.is_degenerate() && lambda.is_some() {
        return Err(usage(format!("family {family} takes no --lambda")));
    }
    if !family.is_bell() && x.is_some() {
        return Err(usage(format!("--x only applies to Bell families, not {family}")));
    }
    Ok(())
}

fn check_bound(n: usize, max_n: usize) -> Result<(), CliError> {
    if n > max_n {
        Err(usage(format!(
            "n = {n} exceeds the configured bound {max_n} (DEGEN_MAX_N)"
        )))
    } else {
        Ok(())
    }
}

/// One value of a family.
pub fn eval(q: &Query, max_n: usize) -> Result<OutputRecord, CliError> {
    check_shape(q.family, q.k, q.r, q.lambda.as_ref(), q.x.as_ref())?;
    check_bound(q.n, max_n)?;
    let value = match &q.lambda {
        None => classical_value(q)?,
        Some(LambdaSpec::Fixed(l)) => degenerate_value(&Degenerate::new(l.clone(), q.n), q)?,
        Some(LambdaSpec::Symbolic) => degenerate_value(&Degenerate::new(LambdaPoly::lambda(), q.n), q)?,
    };
    Ok(record(q, value))
}

/// A whole triangle (or sequence, for Bell families) up to `n_max`, rows in
/// `(n, k)` order.
pub fn table(
    family: Family,
    n_max: usize,
    r: Option<usize>,
    lambda: Option<&LambdaSpec>,
    method: Method,
    max_n: usize,
) -> Result<Vec<OutputRecord>, CliError> {
    let k = family.has_k().then_some(0);
    check_shape(family, k, r, lambda, None)?;
    check_bound(n_max, max_n)?;
    let queries = (0..=n_max).flat_map(|n| {
        let ks: Vec<Option<usize>> = if family.has_k() {
            (0..=n).map(Some).collect()
        } else {
            vec![None]
        };
        ks.into_iter().map(move |k| Query {
            family,
            n,
            k,
            r,
            lambda: lambda.cloned(),
            x: None,
            method,
        })
    });
    match lambda {
        None => {
            let s1 = StirlingTriangle::new(StirlingKind::FirstSigned, n_max);
            let s2 = StirlingTriangle::new(StirlingKind::Second, n_max);
            queries
                .map(|q| {
                    let v = match family {
                        Family::S1 => s1.value(q.n, q.k.unwrap_or(0)).to_json(),
                        Family::S2 => s2.value(q.n, q.k.unwrap_or(0)).to_json(),
                        _ => classical_value(&q)?,
                    };
                    Ok(record(&q, v))
                })
                .collect()
        }
        Some(LambdaSpec::Fixed(l)) => {
            let d = Degenerate::new(l.clone(), n_max);
            queries.map(|q| Ok(record(&q, degenerate_value(&d, &q)?))).collect()
        }
        Some(LambdaSpec::Symbolic) => {
            let d = Degenerate::new(LambdaPoly::lambda(), n_max);
            queries.map(|q| Ok(record(&q, degenerate_value(&d, &q)?))).collect()
        }
    }
}

fn record(q: &Query, value: Value) -> OutputRecord {
    OutputRecord {
        family: q.family,
        n: q.n,
        k: q.k,
        r: q.r,
        lambda: q.lambda.as_ref().map(LambdaSpec::to_string),
        x: q.x.as_ref().map(Rational::to_string),
        value,
    }
}

fn classical_value(q: &Query) -> Result<Value, CliError> {
    let k = q.k.unwrap_or(0);
    Ok(match q.family {
        Family::S1 => StirlingTriangle::new(StirlingKind::FirstSigned, q.n)
            .value(q.n, k)
            .to_json(),
        Family::S2 => StirlingTriangle::new(StirlingKind::Second, q.n).value(q.n, k).to_json(),
        Family::RS2 if k > q.n => Rational::zero().to_json(),
        Family::RS2 => r_s2(q.n, k, q.r.unwrap_or(0))?.to_json(),
        Family::Bell => poly_value(&bell_poly(q.n), q.x.as_ref()),
        other => unreachable!("{other} is degenerate"),
    })
}

fn poly_value<S: Scalar>(p: &XPolynomial<S>, x: Option<&Rational>) -> Value {
    match x {
        Some(x) => p.eval(&S::from_rational(x)).to_json(),
        None => p.to_json(),
    }
}

fn degenerate_value<S: Scalar>(d: &Degenerate<S>, q: &Query) -> Result<Value, CliError> {
    let k = q.k.unwrap_or(0);
    let r = q.r.unwrap_or(0);
    Ok(match q.family {
        Family::S2Deg if k > q.n => S::zero().to_json(),
        Family::S2Deg => d.s2_deg(q.n, k)?.to_json(),
        Family::S2Ext => d.s2_ext(q.n, k, r, q.method)?.value.to_json(),
        Family::BellDeg => poly_value(&d.bell_deg_poly(q.n)?.poly, q.x.as_ref()),
        Family::BellExt => poly_value(&d.bell_ext_poly(q.n, r)?.poly, q.x.as_ref()),
        other => unreachable!("{other} is classical"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn query(family: Family, n: usize) -> Query {
        Query {
            family,
            n,
            k: None,
            r: None,
            lambda: None,
            x: None,
            method: Method::Series,
        }
    }

    #[test]
    fn eval_examples() {
        let bell = Query {
            lambda: Some(LambdaSpec::Fixed(q("0"))),
            x: Some(q("1")),
            ..query(Family::BellDeg, 2)
        };
        assert_eq!(eval(&bell, 30).unwrap().value, json!("2"));

        let vanishing = Query {
            k: Some(2),
            r: Some(5),
            lambda: Some(LambdaSpec::Fixed(q("1/2"))),
            ..query(Family::S2Ext, 1)
        };
        assert_eq!(eval(&vanishing, 30).unwrap().value, json!("0"));

        let ext = Query {
            r: Some(1),
            lambda: Some(LambdaSpec::Fixed(q("1/2"))),
            x: Some(q("2")),
            ..query(Family::BellExt, 2)
        };
        assert_eq!(eval(&ext, 30).unwrap().value, json!("19/2"));
    }

    #[test]
    fn table_examples() {
        let rows = table(
            Family::S2Ext,
            2,
            Some(1),
            Some(&LambdaSpec::Symbolic),
            Method::Series,
            30,
        )
        .unwrap();
        let row = rows.iter().find(|r| r.n == 2 && r.k == Some(1)).unwrap();
        assert_eq!(row.value, json!(["3", "-1"]));

        let rows = table(Family::S2, 4, None, None, Method::Series, 30).unwrap();
        assert_eq!(rows.len(), 15);
        let row = rows.iter().find(|r| r.n == 4 && r.k == Some(2)).unwrap();
        assert_eq!(row.value, json!("7"));

        let rows = table(
            Family::BellExt,
            1,
            Some(2),
            Some(&LambdaSpec::Fixed(q("1/2"))),
            Method::Series,
            30,
        )
        .unwrap();
        assert_eq!(rows[1].value, json!(["2", "1"]));
    }

    #[test]
    fn shape_errors_are_usage_errors() {
        let missing_k = query(Family::S2, 3);
        assert!(matches!(eval(&missing_k, 30), Err(CliError::Usage(_))));
        let stray_x = Query {
            k: Some(1),
            x: Some(q("1")),
            ..query(Family::S2, 3)
        };
        assert!(matches!(eval(&stray_x, 30), Err(CliError::Usage(_))));
        let big = Query {
            k: Some(1),
            ..query(Family::S2, 40)
        };
        assert!(matches!(eval(&big, 30), Err(CliError::Usage(_))));
        assert!(table(Family::S2Deg, 3, None, None, Method::Series, 30).is_err());
    }
}
