use std::collections::BTreeMap;

use serde_json::Value;

use super::{Failure, Grid, IdentityId, LambdaSpec};
use crate::classical::{bell_poly, falling_factorial_poly, forward_diff, r_s2};
use crate::degenerate::{deg_falling, Degenerate, Method};
use crate::error::Result;
use crate::ring::{binomial, factorial, LambdaPoly, Rational, Ring, Scalar};
use crate::xpoly::{interpolate, XPolynomial};

#[derive(Debug, Default)]
pub(super) struct Tally {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

/// Something both sides of an identity can evaluate to.
trait Side: Ring {
    fn json(&self) -> Value;
}

impl<S: Scalar> Side for S {
    fn json(&self) -> Value {
        self.to_json()
    }
}

impl<S: Scalar> Side for XPolynomial<S> {
    fn json(&self) -> Value {
        self.to_json()
    }
}

struct Ctx {
    lambda: String,
    fault: bool,
    tally: Tally,
}

impl Ctx {
    fn params(&self, extra: &[(&str, String)]) -> BTreeMap<String, String> {
        let mut p = BTreeMap::from([("lambda".to_string(), self.lambda.clone())]);
        p.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
        p
    }

    fn check<T: Side>(&mut self, extra: &[(&str, String)], left: T, right: T) {
        let right = if self.fault { right + T::one() } else { right };
        self.tally.checked += 1;
        if left != right {
            let params = self.params(extra);
            self.tally.failures.push(Failure {
                params,
                left: left.json(),
                right: right.json(),
            });
        }
    }

    fn check_close(&mut self, extra: &[(&str, String)], approx: &Rational, exact: Rational, tol: f64) {
        let exact = if self.fault { exact + Rational::one() } else { exact };
        self.tally.checked += 1;
        let within = Rational::from_f64(tol).is_some_and(|t| (approx - &exact).abs() <= t);
        if !within {
            let mut params = self.params(extra);
            params.insert("residual".into(), format!("{:e}", (approx - &exact).abs().to_f64()));
            self.tally.failures.push(Failure {
                params,
                left: Value::String(approx.to_string()),
                right: exact.to_json(),
            });
        }
    }
}

fn s(v: usize) -> String {
    v.to_string()
}

pub(super) fn run(id: IdentityId, spec: &LambdaSpec, grid: &Grid, fault: bool) -> Result<Tally> {
    let mut ctx = Ctx {
        lambda: spec.to_string(),
        fault,
        tally: Tally::default(),
    };
    match spec {
        LambdaSpec::Fixed(q) => {
            let d = Degenerate::new(q.clone(), grid.n_max);
            match id {
                IdentityId::Eq10 => eq10(&d, grid, &mut ctx)?,
                IdentityId::Eq27 => eq27(&d, grid, &mut ctx)?,
                _ => {
                    let at = |target: &Rational, v: &Rational| (q == target).then(|| v.clone());
                    exact(id, &d, grid, &mut ctx, &at)?
                }
            }
        }
        LambdaSpec::Symbolic => {
            // The Dobinski series need a numeric λ.
            if !id.is_numeric() {
                let d = Degenerate::new(LambdaPoly::lambda(), grid.n_max);
                let at = |target: &Rational, v: &LambdaPoly| Some(v.eval(target));
                exact(id, &d, grid, &mut ctx, &at)?
            }
        }
    }
    Ok(ctx.tally)
}

/// Specialises a scalar at a given λ, or `None` when this context's λ can't
/// be specialised there.
type At<'a, S> = dyn Fn(&Rational, &S) -> Option<Rational> + 'a;

fn exact<S: Scalar>(id: IdentityId, d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx, at: &At<'_, S>) -> Result<()> {
    match id {
        IdentityId::Thm1 => against_series(d, grid, ctx, Method::Thm1),
        IdentityId::Thm2 => thm2(d, grid, ctx),
        IdentityId::Thm3 => thm3(d, grid, ctx),
        IdentityId::Thm4 => against_series(d, grid, ctx, Method::Thm4),
        IdentityId::Thm5 => thm5(d, grid, ctx),
        IdentityId::Thm6 => thm6(d, grid, ctx),
        IdentityId::Eq11 => eq11(d, grid, ctx),
        IdentityId::Eq12 => eq12(d, grid, ctx),
        IdentityId::Eq13 => eq13(d, grid, ctx),
        IdentityId::Eq17 => against_series(d, grid, ctx, Method::Eq17),
        IdentityId::Eq24 => eq24(d, grid, ctx),
        IdentityId::LimitLambda0 => limit0(d, grid, ctx, at),
        IdentityId::LimitLambda1 => limit1(d, grid, ctx, at),
        IdentityId::RemarkBellnum => remark_bellnum(d, grid, ctx),
        IdentityId::Eq10 | IdentityId::Eq27 => unreachable!("numeric identities are dispatched separately"),
    }
}

fn lift<S: Ring>(p: &XPolynomial<Rational>) -> XPolynomial<S> {
    p.map(S::from_rational)
}

fn xq<S: Scalar>(x: &Rational) -> S {
    S::from_rational(x)
}

/// The method under test against series extraction; `n < k` must vanish.
fn against_series<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx, method: Method) -> Result<()> {
    for r in 0..=grid.r_max {
        for n in 0..=grid.n_max {
            for k in 0..=grid.k_max {
                let left = d.s2_ext(n, k, r, method)?.value;
                let right = if n < k {
                    S::zero()
                } else {
                    d.s2_ext(n, k, r, Method::Series)?.value
                };
                ctx.check(&[("n", s(n)), ("k", s(k)), ("r", s(r))], left, right);
            }
        }
    }
    Ok(())
}

fn thm2<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    let x = XPolynomial::<S>::x();
    let lambda = XPolynomial::constant(d.lambda().clone());
    for r in 0..=grid.r_max {
        let x_r = &x + &XPolynomial::from_int(r as i64);
        for n in 0..=grid.n_max {
            let left = deg_falling(&x_r, &lambda, n);
            let mut stirling_basis = XPolynomial::zero();
            let mut power_basis = XPolynomial::zero();
            for k in 0..=n {
                let c = d.s2_ext(n, k, r, Method::Series)?.value;
                stirling_basis += &lift::<S>(&falling_factorial_poly(k)).scale_by(&c);
                let c = d.lambda_pow(n - k).clone() * d.s1(n, k);
                power_basis += &x_r.pow(k as u32).scale_by(&c);
            }
            let p = [("n", s(n)), ("r", s(r)), ("basis", "falling".to_string())];
            ctx.check(&p, left.clone(), stirling_basis);
            let p = [("n", s(n)), ("r", s(r)), ("basis", "power".to_string())];
            ctx.check(&p, left, power_basis);
        }
    }
    Ok(())
}

/// `Σ_{m=k..n} Σ_{l=0..n−m} C(n,m) r^l λ^{n−m−l} S_1(n−m,l) S_{2,λ}(m,k)`.
fn double_sum<S: Scalar>(d: &Degenerate<S>, n: usize, k: usize, r: usize) -> Result<S> {
    let r = Rational::from(r as i64);
    let mut acc = S::zero();
    for m in k..=n {
        let s2m = d.s2_deg(m, k)?;
        for l in 0..=n - m {
            let c = binomial(n as u64, m as u64) * r.pow(l as u32) * d.s1_table().value(n - m, l);
            acc += &(d.lambda_pow(n - m - l).scale(&c) * &s2m);
        }
    }
    Ok(acc)
}

fn thm3<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for r in 0..=grid.r_max {
        for n in 0..=grid.n_max {
            let bell = d.bell_ext_poly(n, r)?.poly;
            let mut series_form = Vec::with_capacity(n + 1);
            let mut sum_form = Vec::with_capacity(n + 1);
            for k in 0..=n {
                series_form.push(d.s2_ext(n, k, r, Method::Series)?.value);
                sum_form.push(double_sum(d, n, k, r)?);
            }
            let series_form = XPolynomial::new(series_form);
            let sum_form = XPolynomial::new(sum_form);
            let p = [("n", s(n)), ("r", s(r)), ("form", "stirling".to_string())];
            ctx.check(&p, bell.clone(), series_form.clone());
            let p = [("n", s(n)), ("r", s(r)), ("form", "double-sum".to_string())];
            ctx.check(&p, bell.clone(), sum_form.clone());
            for x in &grid.xs {
                let gf = d.bell_series_eval(n, r, x, n)?;
                let at = xq(x);
                let p = [
                    ("n", s(n)),
                    ("r", s(r)),
                    ("x", x.to_string()),
                    ("form", "stirling".to_string()),
                ];
                ctx.check(&p, series_form.eval(&at), gf.clone());
                let p = [
                    ("n", s(n)),
                    ("r", s(r)),
                    ("x", x.to_string()),
                    ("form", "double-sum".to_string()),
                ];
                ctx.check(&p, sum_form.eval(&at), gf);
            }
        }
    }
    Ok(())
}

fn thm5<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    let bells = (0..=grid.n_max)
        .map(|n| d.bell_deg_poly(n).map(|b| b.poly))
        .collect::<Result<Vec<_>>>()?;
    for r in 0..=grid.r_max {
        let rq = Rational::from(r as i64);
        for n in 0..=grid.n_max {
            let mut right = XPolynomial::zero();
            for k in 0..=n {
                let mut c = S::zero();
                for m in 0..=k {
                    let w = rq.pow(m as u32) * d.s1_table().value(k, m);
                    c += &d.lambda_pow(k - m).scale(&w);
                }
                let c = c.scale(&binomial(n as u64, k as u64));
                right += &bells[n - k].scale_by(&c);
            }
            ctx.check(&[("n", s(n)), ("r", s(r))], d.bell_ext_poly(n, r)?.poly, right);
        }
    }
    Ok(())
}

#[allow(clippy::needless_range_loop)]
fn thm6<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for r in 0..=grid.r_max {
        let ext = (0..=grid.n_max)
            .map(|l| {
                (0..=l)
                    .map(|m| d.s2_ext(l, m, r, Method::Eq17).map(|v| v.value))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for n in 0..=grid.n_max {
            for m in 0..=n {
                for k in 0..=(n - m).min(grid.k_max) {
                    let left = d
                        .s2_ext(n, m + k, r, Method::Series)?
                        .value
                        .scale(&binomial((m + k) as u64, m as u64));
                    let mut right = S::zero();
                    for l in m..=n - k {
                        right += &(ext[l][m].clone() * &d.s2_deg(n - l, k)?).scale(&binomial(n as u64, l as u64));
                    }
                    ctx.check(&[("n", s(n)), ("m", s(m)), ("k", s(k)), ("r", s(r))], left, right);
                }
            }
        }
    }
    Ok(())
}

fn eq10(d: &Degenerate<Rational>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for n in 0..=grid.n_max {
        let bell = d.bell_deg_poly(n)?.poly;
        for x in grid.xs.iter().filter(|x| x.is_positive()) {
            let est = d.dobinski_falling(n, x, grid.tol)?;
            ctx.check_close(
                &[("n", s(n)), ("x", x.to_string())],
                &est.approx,
                bell.eval(x),
                grid.tol,
            );
        }
    }
    Ok(())
}

fn eq11<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    let classical: Vec<XPolynomial<S>> = (0..grid.n_max).map(|j| lift(&bell_poly(j))).collect();
    // The right side is an empty sum at n = 0, so the identity starts at n = 1.
    for n in 1..=grid.n_max {
        let mut inner = XPolynomial::zero();
        for k in 1..=n {
            let c = d.lambda_pow(n - k).clone() * d.s1(n, k);
            if c.is_zero() {
                continue;
            }
            let mut b = XPolynomial::zero();
            for j in 1..=k {
                b += &classical[j - 1].scale(&binomial((k - 1) as u64, (j - 1) as u64));
            }
            inner += &b.scale_by(&c);
        }
        let right = XPolynomial::x() * inner;
        ctx.check(&[("n", s(n))], d.bell_deg_poly(n)?.poly, right);
    }
    Ok(())
}

fn eq12<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for n in 0..=grid.n_max {
        let mut coeffs = vec![S::zero(); n + 1];
        for k in 0..=n {
            let c = d.lambda_pow(n - k).clone() * d.s1(n, k);
            for (m, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
                *slot += &(c.clone() * d.s2(k, m));
            }
        }
        ctx.check(&[("n", s(n))], d.bell_deg_poly(n)?.poly, XPolynomial::new(coeffs));
    }
    Ok(())
}

/// The generating-function side is known only pointwise, so it is rebuilt as
/// a polynomial from `n + 1` evaluations.
fn eq13<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for n in 0..=grid.n_max {
        let points: Vec<Rational> = (0..=n as i64).map(Rational::from).collect();
        let values = points
            .iter()
            .map(|a| d.bell_series_eval(n, 0, a, n))
            .collect::<Result<Vec<_>>>()?;
        let from_series = interpolate(&points, &values)?;
        ctx.check(&[("n", s(n))], d.bell_deg_poly(n)?.poly, from_series);
    }
    Ok(())
}

fn eq24<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for r in 0..=grid.r_max {
        let rq = Rational::from(r as i64);
        for n in 0..=grid.n_max {
            let mut coeffs = vec![S::zero(); n + 1];
            for m in 0..=n {
                let w = d.s1_table().value(n, m);
                if w.is_zero() {
                    continue;
                }
                let lw = d.lambda_pow(n - m).scale(&w);
                for (k, slot) in coeffs.iter_mut().enumerate() {
                    let c = forward_diff(k, m, &rq) / factorial(k as u64);
                    *slot += &lw.scale(&c);
                }
            }
            ctx.check(
                &[("n", s(n)), ("r", s(r))],
                d.bell_ext_poly(n, r)?.poly,
                XPolynomial::new(coeffs),
            );
        }
    }
    Ok(())
}

fn eq27(d: &Degenerate<Rational>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    for r in 0..=grid.r_max {
        for n in 0..=grid.n_max {
            let bell = d.bell_ext_poly(n, r)?.poly;
            for x in grid.xs.iter().filter(|x| x.is_positive()) {
                let est = d.dobinski_numeric(n, r, x, grid.tol)?;
                let p = [("n", s(n)), ("r", s(r)), ("x", x.to_string())];
                ctx.check_close(&p, &est.approx, bell.eval(x), grid.tol);
            }
        }
    }
    Ok(())
}

fn limit0<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx, at: &At<'_, S>) -> Result<()> {
    let zero = Rational::zero();
    let spec = |v: &S| at(&zero, v);
    if spec(&S::zero()).is_none() {
        return Ok(());
    }
    let at0 = |v: &S| spec(v).expect("specialisable");
    let x = XPolynomial::<S>::x();
    let lambda = XPolynomial::constant(d.lambda().clone());
    for n in 0..=grid.n_max {
        for r in 0..=grid.r_max {
            for k in 0..=n {
                let v = d.s2_ext(n, k, r, Method::Series)?.value;
                ctx.check(&[("n", s(n)), ("k", s(k)), ("r", s(r))], at0(&v), r_s2(n, k, r)?);
            }
        }
        for k in 0..=n {
            let p = [("n", s(n)), ("k", s(k)), ("quantity", "s2".to_string())];
            ctx.check(&p, at0(&d.s2_deg(n, k)?), d.s2_table().value(n, k));
        }
        let bell = d.bell_deg_poly(n)?.poly.map(at0);
        ctx.check(&[("n", s(n)), ("quantity", "bell".to_string())], bell, bell_poly(n));
        let falling = deg_falling(&x, &lambda, n).map(at0);
        let p = [("n", s(n)), ("quantity", "falling".to_string())];
        ctx.check(&p, falling, XPolynomial::monomial(n));
    }
    Ok(())
}

fn limit1<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx, at: &At<'_, S>) -> Result<()> {
    let one = Rational::one();
    let spec = |v: &S| at(&one, v);
    if spec(&S::zero()).is_none() {
        return Ok(());
    }
    let at1 = |v: &S| spec(v).expect("specialisable");
    let x = XPolynomial::<S>::x();
    let lambda = XPolynomial::constant(d.lambda().clone());
    for n in 0..=grid.n_max {
        for r in 0..=grid.r_max {
            for k in 0..=n {
                let v = d.s2_ext(n, k, r, Method::Series)?.value;
                let closed =
                    binomial(n as u64, k as u64) * falling_factorial_poly(n - k).eval(&Rational::from(r as i64));
                ctx.check(&[("n", s(n)), ("k", s(k)), ("r", s(r))], at1(&v), closed);
            }
        }
        let falling = deg_falling(&x, &lambda, n).map(at1);
        ctx.check(
            &[("n", s(n)), ("quantity", "falling".to_string())],
            falling,
            falling_factorial_poly(n),
        );
    }
    Ok(())
}

fn remark_bellnum<S: Scalar>(d: &Degenerate<S>, grid: &Grid, ctx: &mut Ctx) -> Result<()> {
    let one = Rational::one();
    for r in 0..=grid.r_max {
        for n in 0..=grid.n_max {
            let left = d.bell_ext_poly(n, r)?.poly.eval(&S::one());
            let mut triple = S::zero();
            for k in 0..=n {
                triple += &double_sum(d, n, k, r)?;
            }
            ctx.check(
                &[("n", s(n)), ("r", s(r)), ("form", "triple-sum".to_string())],
                left.clone(),
                triple,
            );
            let p = [("n", s(n)), ("r", s(r)), ("form", "series".to_string())];
            ctx.check(&p, left, d.bell_series_eval(n, r, &one, n)?);
        }
    }
    Ok(())
}
