//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always visible; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use mgtest_core::construct::{
    build_concatenation, decode_concatenation, decode_kronecker, f_count, kronecker, reduce_rows,
};
use mgtest_core::decode::{decode_general, decode_one_sided, oracle_decode, OracleVerdict};
use mgtest_core::disjunct::{
    optimize_w_by_negation, required_w_general, verify_additive_disjunct, verify_binary_disjunct,
    SignTransform,
};
use mgtest_core::simulate::draw_trial;
use mgtest_core::subsets::binomial;
use mgtest_core::{encode, Rational};

const KRON_SEED: u64 = 20_240_601;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Check {
    let a = a12();
    let report = verify_binary_disjunct(&a, 2).map_err(|e| e.to_string())?;
    ensure(report.holds, || format!("witness {:?}", report.witness))?;
    let f4 = f_count(&a, 4).map_err(|e| e.to_string())?;
    ensure(f4 == 3, || format!("f_4 = {f4}"))?;
    Ok(format!("2-disjunct after {} checks, f_4 = {f4}", report.checks_performed))
}

fn c2() -> Check {
    let reduced = reduce_rows(&a12(), &Rational::integer(2), 2).map_err(|e| e.to_string())?;
    let expected = a9();
    ensure(
        (reduced.t(), reduced.n()) == (9, 16) && reduced.entries() == expected.entries(),
        || "reduced matrix differs from the 9x16 fixture".into(),
    )?;
    let report = verify_additive_disjunct(&reduced, &Rational::integer(2), 2).map_err(|e| e.to_string())?;
    ensure(report.holds, || format!("witness {:?}", report.witness))?;
    Ok(format!("9x16 entrywise equal, q = {}, (2,2)-disjunct", reduced.q()))
}

fn c3() -> Check {
    let g1 = required_w_general(&alphabet("-2,0,1,4")).map_err(|e| e.to_string())?;
    let g2 = required_w_general(&alphabet("-4,-1,0,2")).map_err(|e| e.to_string())?;
    let opt = optimize_w_by_negation(&alphabet("-2,0,1,4"));
    ensure(g1 == Rational::integer(6), || format!("w({{-2,0,1,4}}) = {g1}"))?;
    ensure(g2 == Rational::integer(4), || format!("w({{-4,-1,0,2}}) = {g2}"))?;
    ensure(opt == (SignTransform::Negate, Rational::integer(4)), || format!("optimize = {opt:?}"))?;
    Ok(format!("6, 4, ({:?}, {})", opt.0, opt.1))
}

/// Returns the max comparisons seen as well, for criterion 8.
fn c4(max_cmp: &mut u64) -> Check {
    let a = a9();
    let al = alphabet("0,1,2");
    let all = all_sparse(16, &al, 2);
    ensure(all.len() == 513, || format!("{} vectors", all.len()))?;
    for x in &all {
        let v = encode(&a, x).map_err(|e| e.to_string())?;
        let res = decode_one_sided(&a, &v, &al, 2).map_err(|e| format!("{x:?}: {e}"))?;
        ensure(res.x_hat == *x, || format!("{x:?} decoded to {:?}", res.x_hat))?;
        let verdict = oracle_decode(&a, &v, &al, 2).map_err(|e| e.to_string())?;
        ensure(verdict == OracleVerdict::Unique { x: x.clone() }, || format!("oracle: {verdict:?}"))?;
        *max_cmp = (*max_cmp).max(res.comparisons);
    }
    Ok("513/513 roundtrip, oracle UNIQUE for each".into())
}

fn c5(max_cmp: &mut u64) -> Check {
    let a = a9();
    let al = alphabet("-1,0,1");
    let all = all_sparse(16, &al, 1);
    ensure(all.len() == 33, || format!("{} vectors", all.len()))?;
    for x in &all {
        let v = encode(&a, x).map_err(|e| e.to_string())?;
        let res = decode_general(&a, &v, &al, 1).map_err(|e| format!("{x:?}: {e}"))?;
        ensure(res.x_hat == *x, || format!("{x:?} decoded to {:?}", res.x_hat))?;
        let verdict = oracle_decode(&a, &v, &al, 1).map_err(|e| e.to_string())?;
        ensure(verdict == OracleVerdict::Unique { x: x.clone() }, || format!("oracle: {verdict:?}"))?;
        *max_cmp = (*max_cmp).max(res.comparisons);
    }
    Ok("33/33 roundtrip, oracle UNIQUE for each".into())
}

fn c6() -> Check {
    let design = build_concatenation(&a12(), 1, 2, 8).map_err(|e| e.to_string())?;
    ensure(
        design.u == 2 && design.n_prime == 3 && design.coeffs == [1, 3, 7],
        || format!("u = {}, n' = {}, coeffs = {:?}", design.u, design.n_prime, design.coeffs),
    )?;
    let al = alphabet("0,1");
    let all = all_sparse(48, &al, 2);
    ensure(all.len() == 1177, || format!("{} vectors", all.len()))?;
    let mut stages = 0;
    for x in &all {
        let v = encode(&design.matrix, x).map_err(|e| e.to_string())?;
        let out = decode_concatenation(&design, &v, &al, 2).map_err(|e| format!("{x:?}: {e}"))?;
        ensure(out.result.x_hat == *x, || format!("{x:?} decoded to {:?}", out.result.x_hat))?;
        ensure(out.floor_checks.len() == 3, || "missing floor checks".into())?;
        for fc in &out.floor_checks {
            let coef = Rational::from(fc.coefficient);
            ensure(fc.max_remainder >= 0 && fc.max_remainder < coef, || {
                format!("block {}: remainder {} vs coefficient {}", fc.block, fc.max_remainder, coef)
            })?;
            stages += 1;
        }
    }
    Ok(format!("1177/1177 roundtrip, {stages} floor bounds held"))
}

fn c7() -> Check {
    let b = a12();
    let a = a9();
    let k = kronecker(&b, &a).map_err(|e| e.to_string())?;
    ensure((k.t(), k.n()) == (108, 256), || format!("{} x {}", k.t(), k.n()))?;
    let al = alphabet("0,1,2");
    let mut oracle_checked = 0;
    for trial in 0..1000 {
        let x = draw_trial(KRON_SEED, trial, 256, &al, 2);
        let v = encode(&k, &x).map_err(|e| e.to_string())?;
        let res = decode_kronecker(&b, &a, &v, &al, 2).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(res.x_hat == x, || format!("trial {trial}: {x:?} decoded to {:?}", res.x_hat))?;
        if trial % 50 == 0 {
            let verdict = oracle_decode(&k, &v, &al, 2).map_err(|e| e.to_string())?;
            ensure(verdict == OracleVerdict::Unique { x: x.clone() }, || format!("trial {trial}: {verdict:?}"))?;
            oracle_checked += 1;
        }
    }
    ensure(oracle_checked == 20, || format!("{oracle_checked} oracle checks"))?;
    Ok(format!("1000/1000 roundtrip (seed {KRON_SEED}), {oracle_checked} oracle-confirmed"))
}

fn c8(one_sided: u64, general: u64) -> Check {
    let (d_size, t, n) = (3u128, 9u128, 16u128);
    let bound1 = 4 * d_size * t * n;
    let bound2 = bound1 * binomial(16, 1);
    ensure(one_sided as u128 <= bound1, || format!("one-sided {one_sided} > {bound1}"))?;
    ensure(general as u128 <= bound2, || format!("general {general} > {bound2}"))?;
    Ok(format!("one-sided max {one_sided} <= {bound1}, general max {general} <= {bound2}"))
}

fn c9() -> Check {
    let mut summary = Vec::new();
    for (name, prop) in props::all() {
        let cases = prop().map_err(|e| format!("{name}: {e}"))?;
        ensure(cases >= 200, || format!("{name}: only {cases} cases"))?;
        summary.push(name);
    }
    Ok(format!("{} properties x {} cases", summary.len(), props::CASES))
}

fn main() -> ExitCode {
    let mut one_sided_cmp = 0;
    let mut general_cmp = 0;
    let mut failures = 0;
    let mut report = |id: u32, title: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = limit.filter(|l| elapsed >= *l);
        let limit_txt = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        match (result, over) {
            (Ok(detail), None) => {
                println!("PASS  {id}. {title}: {detail} [{:.2}s{limit_txt}]", elapsed.as_secs_f64())
            }
            (Ok(detail), Some(l)) => {
                failures += 1;
                println!(
                    "FAIL  {id}. {title}: {detail}, but took {:.2}s >= {}s",
                    elapsed.as_secs_f64(),
                    l.as_secs()
                )
            }
            (Err(e), _) => {
                failures += 1;
                println!("FAIL  {id}. {title}: {e} [{:.2}s{limit_txt}]", elapsed.as_secs_f64())
            }
        }
    };
    let s = Duration::from_secs;
    report(1, "fixture verification", Some(s(1)), &mut c1);
    report(2, "construction exactness", Some(s(5)), &mut c2);
    report(3, "w-bound formulas", None, &mut c3);
    report(4, "one-sided exhaustive roundtrip", Some(s(30)), &mut || c4(&mut one_sided_cmp));
    report(5, "general exhaustive roundtrip", Some(s(30)), &mut || c5(&mut general_cmp));
    report(6, "concatenation roundtrip", Some(s(60)), &mut c6);
    report(7, "Kronecker roundtrip", Some(s(60)), &mut c7);
    report(8, "complexity instrumentation", None, &mut || c8(one_sided_cmp, general_cmp));
    report(9, "property suites", None, &mut c9);
    if failures == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
