//! Acceptance suite. Every criterion is an exact integer equality; timing
//! limits are wall-clock bounds on the criterion as a whole.
//!
//! Run with `cargo test -p ucycle-core --test acceptance`. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fail.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::pow;

use ucycle_core::counting::{
    all_laplacian_cofactors, count_bruteforce, count_matrix_tree, enumerate_all_vec,
    generate_cycle, TourBudget,
};
use ucycle_core::perm::{canonical_rotation, count_k_permutations, is_universal_cycle};
use ucycle_core::spectral::{
    multiplicities, verify_lemma2, verify_theorem2_product, verify_walk_table, WalkCase,
};
use ucycle_core::{BigCount, CyclicSequence, TransitionDigraph};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fact(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n^(n-2) * ((n-2)!)^n`, evaluated independently of the library.
fn k2_formula(n: usize) -> BigCount {
    BigCount(pow(BigUint::from(n), n - 2) * pow(fact(n - 2), n))
}

/// `(n-3)^((n-1)(n-2)/2) (n-2)^(n-1) (n-1)^((n-1)(n-2)/2-2) n^(n-2) ((n-3)!)^(n(n-1))`.
fn k3_formula(n: usize) -> BigCount {
    let half = (n - 1) * (n - 2) / 2;
    BigCount(
        pow(BigUint::from(n - 3), half)
            * pow(BigUint::from(n - 2), n - 1)
            * pow(BigUint::from(n - 1), half - 2)
            * pow(BigUint::from(n), n - 2)
            * pow(fact(n - 3), n * (n - 1)),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn c1_k2_small() -> Outcome {
    within(Duration::from_secs(30), || {
        let frozen = [(3, 3u64), (4, 256), (5, 972_000)];
        for (n, value) in frozen {
            let formula = k2_formula(n);
            ensure(formula == BigCount::from(value), || {
                format!("formula n={n}: {formula} != {value}")
            })?;
            let brute =
                count_bruteforce(n, 2, &TourBudget::default()).map_err(|e| e.to_string())?;
            let tree = count_matrix_tree(n, 2).map_err(|e| e.to_string())?;
            ensure(brute == formula && tree == formula, || {
                format!("n={n}: brute {brute}, matrix-tree {tree}, formula {formula}")
            })?;
        }
        Ok(())
    })
}

fn c2_k2_scale() -> Outcome {
    within(Duration::from_secs(10), || {
        for n in 6..=8 {
            let tree = count_matrix_tree(n, 2).map_err(|e| e.to_string())?;
            let formula = k2_formula(n);
            ensure(tree == formula, || format!("n={n}: {tree} != {formula}"))?;
        }
        Ok(())
    })
}

fn c3_k3_small() -> Outcome {
    within(Duration::from_secs(10), || {
        let brute = count_bruteforce(4, 3, &TourBudget::default()).map_err(|e| e.to_string())?;
        let tree = count_matrix_tree(4, 3).map_err(|e| e.to_string())?;
        let expected = BigCount::from(384);
        ensure(k3_formula(4) == expected, || "formula(4) != 384".into())?;
        ensure(brute == expected && tree == expected, || {
            format!("brute {brute}, matrix-tree {tree}")
        })
    })
}

fn c4_k3_scale() -> Outcome {
    within(Duration::from_secs(60), || {
        ensure(k3_formula(5) == BigCount::from(173_946_175_488_000), || {
            "formula(5) != 173946175488000".into()
        })?;
        for n in 5..=7 {
            let tree = count_matrix_tree(n, 3).map_err(|e| e.to_string())?;
            let formula = k3_formula(n);
            ensure(tree == formula, || format!("n={n}: {tree} != {formula}"))?;
        }
        Ok(())
    })
}

fn c5_degree4_identity() -> Outcome {
    within(Duration::from_secs(60), || {
        for n in 4..=8 {
            let c = verify_lemma2(n).map_err(|e| e.to_string())?;
            ensure(c.passed && c.size == n * (n - 1), || {
                format!("n={n}: {:?}", c.counterexample)
            })?;
        }
        Ok(())
    })
}

fn c6_walk_table() -> Outcome {
    for n in 5..=8 {
        let c = verify_walk_table(n).map_err(|e| e.to_string())?;
        ensure(c.cases.len() == WalkCase::ALL.len(), || {
            "missing cases".into()
        })?;
        for r in &c.cases {
            ensure(r.witness_passed && r.sweep_passed && r.pairs > 0, || {
                format!(
                    "n={n} case {}: got {:?}, expected {:?}",
                    r.case, r.got, r.expected
                )
            })?;
        }
        let size = n * (n - 1);
        let classified: usize = c.cases.iter().map(|r| r.pairs).sum();
        ensure(classified == size * size && c.passed, || {
            format!("n={n}: classified {classified} of {} pairs", size * size)
        })?;
    }
    Ok(())
}

fn c7_multiplicities() -> Outcome {
    for n in 4..=8 {
        let m = multiplicities(n).map_err(|e| e.to_string())?;
        let s = [(n - 1) * (n - 2) / 2, n * (n - 3) / 2, n - 1];
        let t3 = (n * (n - 1) * (n - 2)) as i64;
        ensure(
            [m.s1, m.s2, m.s3] == s
                && m.t1 == 0.into()
                && m.t2 == 0.into()
                && m.t3 == t3.into()
                && m.passed,
            || format!("n={n}: {m:?}"),
        )?;
    }
    Ok(())
}

fn c8_k3_spectrum() -> Outcome {
    for n in 4..=8 {
        let c = verify_theorem2_product(n).map_err(|e| e.to_string())?;
        ensure(
            c.passed && c.eigenvalue_product == c.spectrum_product,
            || format!("n={n}: {:?}", c.counterexample),
        )?;
    }
    Ok(())
}

fn c9_round_trip() -> Outcome {
    let example: CyclicSequence = "1 2 3 4 1 3 2 4 2 1 4 3".parse().unwrap();
    ensure(is_universal_cycle(&example, 4, 2).is_valid(), || {
        "example cycle for P(4,2) rejected".into()
    })?;
    for n in 2..=6 {
        for k in 1..n {
            for seed in 0..100 {
                let c = generate_cycle(n, k, Some(seed)).map_err(|e| e.to_string())?;
                let v = is_universal_cycle(&c, n, k);
                ensure(v.is_valid(), || format!("({n},{k}) seed {seed}: {v:?}"))?;
            }
        }
    }
    Ok(())
}

fn c10_enumeration() -> Outcome {
    for (n, k, expected) in [(3, 2, 3usize), (4, 2, 256), (4, 3, 384)] {
        let all = enumerate_all_vec(n, k, &TourBudget::default()).map_err(|e| e.to_string())?;
        let canon: HashSet<CyclicSequence> =
            all.iter().map(|c| canonical_rotation(c).unwrap()).collect();
        ensure(all.len() == expected && canon.len() == expected, || {
            format!("({n},{k}): {} emitted, {} distinct", all.len(), canon.len())
        })?;
        ensure(
            all.iter().all(|c| is_universal_cycle(c, n, k).is_valid()),
            || format!("({n},{k}): invalid cycle emitted"),
        )?;
    }
    Ok(())
}

fn c11_structure() -> Outcome {
    for n in 3..=7 {
        for k in 2..n {
            let d = TransitionDigraph::build(n, k).map_err(|e| e.to_string())?;
            let p = d.degree_profile();
            let deg = n - k + 1;
            ensure(
                d.is_balanced()
                    && d.is_strongly_connected()
                    && p.out_degree.iter().all(|&x| x == deg)
                    && d.arc_count() as u64 == count_k_permutations(n, k).unwrap(),
                || format!("({n},{k}) fails"),
            )?;
        }
    }
    Ok(())
}

fn c12_k4() -> Outcome {
    for n in [5, 6] {
        let count = count_matrix_tree(n, 4).map_err(|e| e.to_string())?;
        let d = TransitionDigraph::build(n, 4).map_err(|e| e.to_string())?;
        let cofs = all_laplacian_cofactors(&d).map_err(|e| e.to_string())?;
        ensure(cofs.len() == d.vertex_count(), || {
            "missing cofactors".into()
        })?;
        ensure(cofs.iter().all(|c| c == &cofs[0]), || {
            format!("n={n}: cofactors differ")
        })?;
        // all degrees are n-3, so the count is cof * ((n-4)!)^|V|
        let rebuilt = cofs[0].to_biguint().unwrap() * pow(fact(n - 4), d.vertex_count());
        ensure(count.0 == rebuilt, || format!("n={n}: count {count}"))?;
        println!("    count_matrix_tree({n},4) = {count}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1  k=2 counts agree three ways, n=3..5", c1_k2_small),
        ("2  k=2 matrix-tree = formula, n=6..8", c2_k2_scale),
        ("3  k=3 counts agree three ways, n=4", c3_k3_small),
        ("4  k=3 matrix-tree = formula, n=5..7", c4_k3_scale),
        (
            "5  degree-4 adjacency identity, n=4..8",
            c5_degree4_identity,
        ),
        ("6  walk-count table, n=5..8", c6_walk_table),
        (
            "7  eigenvalue multiplicities and traces, n=4..8",
            c7_multiplicities,
        ),
        ("8  k=3 Laplacian spectrum product, n=4..8", c8_k3_spectrum),
        ("9  generated cycles validate, k<n<=6", c9_round_trip),
        ("10 enumeration completeness", c10_enumeration),
        ("11 balanced and strongly connected, n<=7", c11_structure),
        ("12 k=4 cofactor self-consistency", c12_k4),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of {} criteria passed", 12 - failed, 12);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
