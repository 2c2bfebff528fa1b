//! Acceptance criteria 1-9, run in order with one PASS/FAIL line each.
//!
//! Lines go straight to the process stderr so they show up in ordinary
//! `cargo test` output, not only under `--nocapture`.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use degen::classical::{oracle_partitions, r_s2, s2};
use degen::{verify_identity, Degenerate, Grid, IdentityId, LambdaPoly, LambdaSpec, Method, Rational, Ring, Scalar};

/// Absolute tolerance for the Dobinski comparison.
const DOBINSKI_TOL: f64 = 1e-9;
const LIMIT_ORACLE: Duration = Duration::from_secs(5);
const LIMIT_METHODS: Duration = Duration::from_secs(30);
const LIMIT_SUITE: Duration = Duration::from_secs(60);
const LIMIT_DOBINSKI: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn fixed_lambdas() -> Vec<Rational> {
    ["0", "1", "1/2", "-1/3", "7/5"].into_iter().map(q).collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 0..=10 {
        for k in 0..=n {
            let oracle = oracle_partitions(n, k, 0).map_err(|e| e.to_string())?;
            ensure(s2(n, k).unwrap() == oracle as i64, || format!("s2({n},{k})"))?;
            checked += 1;
        }
    }
    for r in 0..=3 {
        for n in 0..=11 - r {
            for k in 0..=n {
                let oracle = oracle_partitions(n, k, r).map_err(|e| e.to_string())?;
                ensure(r_s2(n, k, r).unwrap() == oracle as i64, || format!("r_s2({n},{k},{r})"))?;
                checked += 1;
            }
        }
    }
    let took = within(start, LIMIT_ORACLE)?;
    Ok(format!("{checked} values, {took:.2?}"))
}

fn methods_agree<S: Scalar>(d: &Degenerate<S>, label: &str) -> Result<usize, String> {
    let methods = [Method::Series, Method::Thm1, Method::Eq17, Method::Thm4];
    let mut checked = 0;
    for r in 0..=4 {
        for n in 0..=12 {
            for k in 0..=n {
                let values = methods
                    .iter()
                    .map(|&m| d.s2_ext(n, k, r, m).map(|v| v.value))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                ensure(values.iter().all(|v| *v == values[0]), || {
                    format!("λ={label} n={n} k={k} r={r}: {values:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn four_way_agreement() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for lambda in fixed_lambdas() {
        let label = lambda.to_string();
        checked += methods_agree(&Degenerate::new(lambda, 12), &label)?;
    }
    checked += methods_agree(&Degenerate::new(LambdaPoly::lambda(), 12), "symbolic")?;
    let took = within(start, LIMIT_METHODS)?;
    Ok(format!("{checked} index triples, {took:.2?}"))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_degen"))
}

fn full_suite() -> Outcome {
    let ids = [
        "THM1",
        "THM2",
        "THM3",
        "THM4",
        "THM5",
        "THM6",
        "EQ11",
        "EQ12",
        "EQ13",
        "EQ17",
        "EQ24",
        "REMARK_BELLNUM",
        "LIMIT_LAMBDA0",
        "LIMIT_LAMBDA1",
    ];
    let start = Instant::now();
    let out = binary()
        .args(["verify", "--ids", &ids.join(",")])
        .output()
        .map_err(|e| e.to_string())?;
    let took = within(start, LIMIT_SUITE)?;
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let passing = stdout.lines().filter(|l| l.contains("\"status\":\"pass\"")).count();
    ensure(passing == ids.len(), || {
        format!("{passing} of {} reports pass", ids.len())
    })?;
    Ok(format!("{passing} identities, exit 0, {took:.2?}"))
}

fn symbolic_basis_expansions() -> Outcome {
    let grid = Grid {
        n_max: 10,
        r_max: 3,
        lambdas: vec![LambdaSpec::Symbolic],
        ..Grid::default()
    };
    let report = verify_identity(IdentityId::Thm2, &grid).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    // Two basis expansions per (n, r).
    ensure(report.checked == 2 * 11 * 4, || format!("checked {}", report.checked))?;
    Ok(format!("{} comparisons", report.checked))
}

fn vanishing_below_diagonal() -> Outcome {
    let mut checked = 0;
    let check = |values: Vec<bool>, what: &str| ensure(values.into_iter().all(|z| z), || what.to_string());
    for lambda in fixed_lambdas() {
        let d = Degenerate::new(lambda.clone(), 12);
        for r in 0..=4 {
            for k in 1..=12 {
                for n in 0..k {
                    let zeros = Method::ALL
                        .iter()
                        .map(|&m| d.s2_ext(n, k, r, m).unwrap().value == Rational::zero())
                        .collect();
                    check(zeros, &format!("λ={lambda} n={n} k={k} r={r}"))?;
                    checked += 1;
                }
            }
        }
    }
    let d = Degenerate::new(LambdaPoly::lambda(), 12);
    for r in 0..=4 {
        for k in 1..=12 {
            for n in 0..k {
                let zeros = Method::ALL
                    .iter()
                    .map(|&m| d.s2_ext(n, k, r, m).unwrap().value == LambdaPoly::zero())
                    .collect();
                check(zeros, &format!("symbolic n={n} k={k} r={r}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} index triples, all methods"))
}

fn lambda_degree_bound() -> Outcome {
    let d = Degenerate::new(LambdaPoly::lambda(), 12);
    let mut checked = 0;
    for r in 0..=4 {
        for n in 0..=12 {
            for k in 0..=n {
                let v = d.s2_ext(n, k, r, Method::Series).unwrap().value;
                ensure(v.degree().is_none_or(|deg| deg <= n - k), || {
                    format!("n={n} k={k} r={r}: degree {:?}", v.degree())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} polynomials"))
}

fn dobinski_numerics() -> Outcome {
    let start = Instant::now();
    let tol = Rational::from_f64(DOBINSKI_TOL).unwrap();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for lambda in ["0", "1/2", "-1/3"].map(q) {
        let d = Degenerate::new(lambda.clone(), 8);
        for n in 0..=8 {
            for r in 0..=2 {
                let exact = d.bell_ext_poly(n, r).unwrap().poly;
                for x in ["1/2", "1", "2"].map(q) {
                    let est = d.dobinski_numeric(n, r, &x, DOBINSKI_TOL).map_err(|e| e.to_string())?;
                    let err = (&est.approx - &exact.eval(&x)).abs();
                    ensure(err <= tol, || {
                        format!("λ={lambda} n={n} r={r} x={x}: error {}", err.to_f64())
                    })?;
                    worst = worst.max(err.to_f64());
                    checked += 1;
                }
            }
        }
    }
    let bell3 = Degenerate::new(q("0"), 3)
        .dobinski_numeric(3, 0, &q("1"), DOBINSKI_TOL)
        .unwrap();
    ensure((bell3.value - 5.0).abs() <= DOBINSKI_TOL, || {
        format!("Bel_3(1) = {}", bell3.value)
    })?;
    let took = within(start, LIMIT_DOBINSKI)?;
    Ok(format!("{checked} evaluations, worst error {worst:.1e}, {took:.2?}"))
}

fn series_vs_polynomial() -> Outcome {
    let mut checked = 0;
    for lambda in ["1/2", "-1/3"].map(q) {
        let d = Degenerate::new(lambda.clone(), 10);
        for r in 0..=3 {
            for n in 0..=10 {
                let poly = d.bell_ext_poly(n, r).unwrap().poly;
                for a in ["1/2", "1", "2", "-1"].map(q) {
                    let from_series = d.bell_series_eval(n, r, &a, n).map_err(|e| e.to_string())?;
                    ensure(from_series == poly.eval(&a), || format!("λ={lambda} n={n} r={r} a={a}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} evaluations"))
}

fn golden(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn cli_golden_files() -> Outcome {
    let cases: [(&str, &[&str]); 3] = [
        ("table_s2_n6.jsonl", &["table", "--family", "s2", "--n-max", "6"]),
        (
            "table_s2_ext_symbolic_n4_r1.jsonl",
            &[
                "table", "--family", "s2_ext", "--n-max", "4", "--r", "1", "--lambda", "symbolic",
            ],
        ),
        ("verify_all.jsonl", &["verify", "--ids", "all"]),
    ];
    for (file, args) in cases {
        let first = binary().args(args).output().map_err(|e| e.to_string())?;
        let second = binary().args(args).output().map_err(|e| e.to_string())?;
        ensure(first.status.code() == Some(0), || {
            format!("{file}: exit {:?}", first.status.code())
        })?;
        ensure(first.stdout == second.stdout, || format!("{file}: runs differ"))?;
        ensure(first.stdout == golden(file), || {
            format!("{file}: differs from golden file")
        })?;
    }
    let fault = binary()
        .args(["verify", "--ids", "THM1,EQ13", "--n-max", "3", "--inject-fault", "EQ13"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(fault.status.code() == Some(1), || {
        format!("fault run exited {:?}", fault.status.code())
    })?;
    ensure(fault.stdout == golden("verify_fault.jsonl"), || {
        "fault run differs from golden file".into()
    })?;
    let bogus = binary()
        .args(["verify", "--ids", "BOGUS"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(bogus.status.code() == Some(2), || {
        format!("bad id exited {:?}", bogus.status.code())
    })?;
    ensure(String::from_utf8_lossy(&bogus.stderr).contains("THM1"), || {
        "bad id diagnostic lacks valid ids".into()
    })?;
    Ok("3 golden outputs stable, exit codes 0/1/2 honoured".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("four-way method agreement", four_way_agreement),
        ("full identity suite", full_suite),
        ("polynomial identity in both bases", symbolic_basis_expansions),
        ("vanishing for n < k", vanishing_below_diagonal),
        ("lambda-degree bound", lambda_degree_bound),
        ("Dobinski numerics", dobinski_numerics),
        ("series vs polynomial", series_vs_polynomial),
        ("CLI golden files", cli_golden_files),
    ];
    let mut failed = Vec::new();
    let stderr = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let line = match &outcome {
            Ok(detail) => format!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => format!("criterion {}: FAIL {name}: {why}", i + 1),
        };
        writeln!(stderr.lock(), "{line}").unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
