//! Property checks shared by `properties.rs` and the acceptance target.
//! Each runs [`CASES`] generated cases from a fixed-seed generator.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use mgtest_core::construct::{f_count, kronecker, reduce_rows};
use mgtest_core::decode::DecodeMode;
use mgtest_core::disjunct::{verify_additive_disjunct, verify_binary_disjunct};
use mgtest_core::io::{parse_matrix_str, parse_vector_str, write_matrix, write_vector, MatrixFile};
use mgtest_core::simulate::{run_simulation_on, SimulationConfig};
use mgtest_core::{
    dominates, encode, threshold_indicator, AffineMap, Alphabet, Budget, Execution, QaryMatrix,
    Rational, SparseVector, ThresholdMode,
};

use super::{a9, naive_additive_disjunct, naive_encode, set_cover_disjunct};

pub const CASES: u32 = 256;

fn run<S>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(CASES)
}

fn matrix(tmax: usize, nmax: usize, qmax: u32) -> impl Strategy<Value = QaryMatrix> {
    (1..=tmax, 1..=nmax, 2..=qmax).prop_flat_map(|(t, n, q)| {
        vec(0..q, t * n).prop_map(move |e| QaryMatrix::new(q, t, n, e).unwrap())
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn alphabet() -> impl Strategy<Value = Alphabet> {
    vec(nonzero_rational(), 1..5).prop_filter_map("distinct levels", |mut v| {
        v.push(Rational::zero());
        Alphabet::from_unsorted(v).ok()
    })
}

fn rvec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    vec(rational(), n)
}

pub fn encode_linearity() -> Result<u32, String> {
    let s = matrix(5, 6, 6).prop_flat_map(|a| {
        let n = a.n();
        (Just(a), rvec(n), rvec(n), rational(), rational())
    });
    run(s, |(a, x, y, alpha, beta)| {
        let combo: Vec<Rational> = x
            .iter()
            .zip(&y)
            .map(|(p, q)| &alpha * p + &beta * q)
            .collect();
        let lhs = encode(&a, &SparseVector::from_dense(&combo)).unwrap();
        let ex = encode(&a, &SparseVector::from_dense(&x)).unwrap();
        let ey = encode(&a, &SparseVector::from_dense(&y)).unwrap();
        let rhs: Vec<Rational> = ex.iter().zip(ey.iter()).map(|(p, q)| &alpha * p + &beta * q).collect();
        prop_assert_eq!(lhs.to_vec(), rhs);
        prop_assert_eq!(ex.to_vec(), naive_encode(&a, &x));
        Ok(())
    })
}

pub fn affine_invertibility() -> Result<u32, String> {
    let s = matrix(5, 6, 5).prop_flat_map(|a| {
        let n = a.n();
        (Just(a), rvec(n), nonzero_rational(), rvec(n))
    });
    run(s, |(a, x, scale, shift)| {
        let map = AffineMap::new(scale, shift).unwrap();
        let inv = map.inverse();
        let x2 = map.map_vector(&x).unwrap();
        prop_assert_eq!(inv.map_vector(&x2).unwrap(), x.clone());
        let v = encode(&a, &SparseVector::from_dense(&x)).unwrap();
        let v2 = map.map_outcome(&a, &v).unwrap();
        // The transformed outcome is the encoding of the transformed vector.
        prop_assert_eq!(v2.to_vec(), naive_encode(&a, &x2));
        prop_assert_eq!(inv.map_outcome(&a, &v2).unwrap(), v);
        Ok(())
    })
}

pub fn eq_partition() -> Result<u32, String> {
    let s = alphabet().prop_flat_map(|al| {
        let k = al.len();
        (Just(al), vec(0..k, 0..12))
    });
    run(s, |(al, picks)| {
        let y: Vec<Rational> = picks.iter().map(|&i| al.levels()[i].clone()).collect();
        let mut hits = vec![0usize; y.len()];
        for delta in al.levels() {
            for (h, on) in hits.iter_mut().zip(threshold_indicator(&y, delta, ThresholdMode::Eq)) {
                *h += on as usize;
            }
        }
        prop_assert!(hits.iter().all(|&h| h == 1));
        Ok(())
    })
}

pub fn dominance_partial_order() -> Result<u32, String> {
    let small = || vec(-2i64..=2, 4).prop_map(|v| v.into_iter().map(Rational::integer).collect::<Vec<_>>());
    run((small(), small(), small()), |(x, y, z)| {
        prop_assert!(dominates(&x, &x).unwrap());
        if dominates(&x, &y).unwrap() && dominates(&y, &x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
        if dominates(&x, &y).unwrap() && dominates(&y, &z).unwrap() {
            prop_assert!(dominates(&x, &z).unwrap());
        }
        Ok(())
    })
}

fn disjunct_case() -> impl Strategy<Value = (QaryMatrix, i64, i64, usize)> {
    matrix(6, 7, 5)
        .prop_filter("n >= 2", |a| a.n() >= 2)
        .prop_flat_map(|a| {
            let n = a.n();
            (Just(a), 1i64..=6, 1i64..=4, 1..n)
        })
}

pub fn disjunct_monotonicity() -> Result<u32, String> {
    let s = (disjunct_case(), 1i64..=4, 0usize..8);
    run(s, |((a, num, den, d), shrink, dd)| {
        let w = Rational::new(num, den);
        let report = verify_additive_disjunct(&a, &w, d).unwrap();
        prop_assert_eq!(report.holds, naive_additive_disjunct(&a, num, den, d));
        if report.holds {
            // w' = w * shrink / 4 <= w and d' <= d
            let w2 = &w * Rational::new(shrink, 4);
            let d2 = 1 + dd % d;
            prop_assert!(verify_additive_disjunct(&a, &w2, d2).unwrap().holds);
        }
        Ok(())
    })
}

pub fn witness_soundness() -> Result<u32, String> {
    run(disjunct_case(), |(a, num, den, d)| {
        let w = Rational::new(num, den);
        let report = verify_additive_disjunct(&a, &w, d).unwrap();
        prop_assert_eq!(report.holds, report.witness.is_none());
        if let Some(wit) = report.witness {
            prop_assert!(!wit.support.contains(&wit.column));
            prop_assert!(wit.support.len() <= d);
            for row in a.rows() {
                let sum: i64 = wit.support.iter().map(|&j| row[j] as i64).sum();
                prop_assert!(row[wit.column] as i64 * den <= num * sum);
            }
            prop_assert!(wit.replay_violates(&a, &w));
        }
        Ok(())
    })
}

pub fn binary_matches_set_cover() -> Result<u32, String> {
    let s = (1usize..=8, 2usize..=10).prop_flat_map(|(t, n)| {
        (
            vec(prop::bool::weighted(0.35), t * n)
                .prop_map(move |e| QaryMatrix::new(2, t, n, e.into_iter().map(u32::from).collect()).unwrap()),
            1..n.min(4),
        )
    });
    run(s, |(a, d)| {
        let report = verify_binary_disjunct(&a, d).unwrap();
        prop_assert_eq!(report.holds, set_cover_disjunct(&a, d));
        Ok(())
    })
}

pub fn kronecker_entry_law() -> Result<u32, String> {
    run((matrix(4, 4, 3), matrix(4, 4, 5)), |(b, a)| {
        let k = kronecker(&b, &a).unwrap();
        prop_assert_eq!((k.t(), k.n()), (b.t() * a.t(), b.n() * a.n()));
        let mut max = 0;
        for bi in 0..b.t() {
            for ai in 0..a.t() {
                for bj in 0..b.n() {
                    for aj in 0..a.n() {
                        let e = b.get(bi, bj) * a.get(ai, aj);
                        max = max.max(e);
                        prop_assert_eq!(k.get(bi * a.t() + ai, bj * a.n() + aj), e);
                    }
                }
            }
        }
        prop_assert_eq!(k.q(), (max + 1).max(2));
        Ok(())
    })
}

pub fn serialization_roundtrip() -> Result<u32, String> {
    let comments = vec("[a-z][a-z ]{0,10}[a-z]", 0..3);
    let s = (matrix(5, 6, 9), comments, alphabet(), vec(rational(), 0..8));
    run(s, |(m, comments, al, values)| {
        let file = MatrixFile {
            matrix: m,
            comments,
        };
        let text = write_matrix(&file);
        let parsed = parse_matrix_str(&text).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(write_matrix(&parsed), text);

        let vtext = write_vector(&values);
        prop_assert_eq!(&parse_vector_str(&vtext).unwrap(), &values);
        prop_assert_eq!(write_vector(&parse_vector_str(&vtext).unwrap()), vtext);

        let reparsed: Alphabet = al.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, al);
        for v in &values {
            prop_assert_eq!(&v.to_string().parse::<Rational>().unwrap(), v);
        }
        Ok(())
    })
}

pub fn simulation_determinism() -> Result<u32, String> {
    let a = a9();
    run((any::<u64>(), 0usize..6), move |(seed, trials)| {
        let cfg = |exec| SimulationConfig {
            matrix_path: "additive_9x16.mgt".into(),
            levels: "0,1,2".into(),
            d: 2,
            trials,
            seed,
            mode: DecodeMode::Auto,
            oracle_check: false,
            budget: Budget::default(),
            timing: false,
            exec,
        };
        let first = run_simulation_on(&a, &cfg(Execution::default())).unwrap();
        let again = run_simulation_on(&a, &cfg(Execution::default())).unwrap();
        let seq = run_simulation_on(&a, &cfg(Execution::Sequential)).unwrap();
        prop_assert_eq!(first.to_json(), again.to_json());
        prop_assert_eq!(first.to_json(), seq.to_json());
        prop_assert_eq!(first.successes + first.failures.len(), trials);
        prop_assert_eq!(first.successes, trials);
        Ok(())
    })
}

/// Transversal binary matrices: each family is a random assignment of the
/// columns to its rows (or to none), optionally followed by an identity family.
fn transversal() -> impl Strategy<Value = QaryMatrix> {
    (3usize..=8, vec(1usize..=5, 1..4), any::<bool>()).prop_flat_map(|(n, sizes, with_identity)| {
        let assignments: Vec<_> = sizes.iter().map(|&b| vec(0..=b, n)).collect();
        (Just(n), Just(sizes), Just(with_identity), assignments)
    }).prop_map(|(n, sizes, with_identity, assignments)| {
        let mut rows = Vec::new();
        let mut families = Vec::new();
        for (b, assign) in sizes.iter().zip(&assignments) {
            let start = rows.len();
            for r in 0..*b {
                rows.push((0..n).map(|j| u32::from(assign[j] == r)).collect::<Vec<_>>());
            }
            families.push((start..start + b).collect::<Vec<_>>());
        }
        if with_identity {
            let start = rows.len();
            for r in 0..n {
                rows.push((0..n).map(|j| u32::from(j == r)).collect());
            }
            families.push((start..start + n).collect());
        }
        QaryMatrix::from_rows(2, rows).unwrap().with_families(families).unwrap()
    })
}

pub fn reduce_preserves_disjunctness() -> Result<u32, String> {
    run((transversal(), 1usize..=2, 1i64..=4), |(a, d, wd)| {
        prop_assume!(d < a.n());
        let w = Rational::new(wd, d as i64);
        let reduced = reduce_rows(&a, &w, d).unwrap();
        let folded = f_count(&a, d + 2).unwrap();
        prop_assert_eq!(reduced.t(), a.t() - folded);
        prop_assert_eq!(reduced.n(), a.n());
        prop_assert!(reduced.q() as i64 >= wd + 2);
        prop_assert!(reduced.max_entry() < reduced.q());
        if set_cover_disjunct(&a, d) {
            prop_assert!(verify_additive_disjunct(&reduced, &w, d).unwrap().holds);
            prop_assert!(naive_additive_disjunct(&reduced, wd, d as i64, d));
        }
        Ok(())
    })
}

/// Every property with its display name.
pub type Property = fn() -> Result<u32, String>;

pub fn all() -> Vec<(&'static str, Property)> {
    vec![
        ("encode linearity", encode_linearity),
        ("affine-transform invertibility", affine_invertibility),
        ("equality indicators partition items", eq_partition),
        ("dominance is a partial order", dominance_partial_order),
        ("disjunctness monotonicity", disjunct_monotonicity),
        ("witness soundness", witness_soundness),
        ("binary verifier matches set cover", binary_matches_set_cover),
        ("Kronecker entry law", kronecker_entry_law),
        ("serialization round-trip", serialization_roundtrip),
        ("seeded simulation determinism", simulation_determinism),
        ("reduce_rows preserves disjunctness", reduce_preserves_disjunctness),
    ]
}
