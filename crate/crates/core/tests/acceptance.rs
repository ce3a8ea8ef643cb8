//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{algebra_from_ints, all_algebras, fp, random_regular_fp, random_regular_ints};
use evalg::algebra::EvolutionAlgebra;
use evalg::field::{FieldSpec, Scalar};
use evalg::finder::{self, CodimOneCase, PairOutcome};
use evalg::linalg::Matrix;
use evalg::oracle::{self, DEFAULT_MAX_SUBSPACES};
use evalg::subspace::{canonicalize, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

const IRREDUCIBLE_CUBIC: [i64; 9] = [1, 0, 0, 1, -1, 1, 2, 1, 0];

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn span_of(a: &EvolutionAlgebra, vectors: &[&[i64]]) -> Subspace {
    let elems: Vec<_> = vectors
        .iter()
        .map(|v| a.element_from_i64(v).unwrap())
        .collect();
    canonicalize(a, &elems).unwrap()
}

fn sorted(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort_by(Subspace::canonical_cmp);
    v
}

fn irreducible_cubic_over_q() -> Check {
    let a = algebra_from_ints(q(), 3, &IRREDUCIBLE_CUBIC);
    let report = finder::enumerate_codim1(&a).map_err(|e| e.to_string())?;
    ensure!(
        report.subalgebras.is_empty(),
        "found {} subalgebras",
        report.subalgebras.len()
    );

    let pair = |p, q| {
        report
            .diagnostics
            .iter()
            .find(|d| (d.p, d.q) == (p, q))
            .unwrap()
    };
    let expect_rank_one = |p, q, lhs: i64, rhs: i64| -> Result<(), String> {
        let d = pair(p, q);
        match &d.outcome {
            PairOutcome::RankOne {
                lhs: l,
                rhs: r,
                holds: false,
                ..
            } if *l == Scalar::from_i64(a.spec(), lhs) && *r == Scalar::from_i64(a.spec(), rhs) => {
                Ok(())
            }
            other => Err(format!("pair ({p},{q}): rank {} {other:?}", d.rank)),
        }
    };
    expect_rank_one(1, 2, 5, -2)?;
    expect_rank_one(1, 3, 3, 0)?;

    let d = pair(2, 3);
    ensure!(d.rank == 0, "pair (2,3) rank {}", d.rank);
    let PairOutcome::RankZero {
        cubic,
        roots,
        drop_q,
        drop_p,
        ..
    } = &d.outcome
    else {
        return Err(format!("pair (2,3): {:?}", d.outcome));
    };
    let coeffs: Vec<String> = cubic.coefficients().iter().map(|c| c.to_string()).collect();
    ensure!(
        coeffs == ["1", "0", "-1", "-1"],
        "cubic coefficients {coeffs:?}"
    );
    ensure!(
        cubic.to_string() == "λ^3 - λ - 1",
        "cubic renders as {cubic}"
    );
    ensure!(
        roots.is_empty() && !drop_q && !drop_p,
        "roots {roots:?}, drops {drop_q} {drop_p}"
    );
    // rational root theorem: only ±1 could be roots of the monic integer cubic
    for r in [1i64, -1] {
        ensure!(r * r * r - r - 1 != 0, "{r} is a root");
    }
    Ok("0 subalgebras; (1,2) 5 != -2; (1,3) 3 != 0; (2,3) rank 0, λ^3 - λ - 1 without rational roots".into())
}

fn irreducible_cubic_over_reals() -> Check {
    let tol = 1e-9;
    let a = algebra_from_ints(FieldSpec::reals(tol).unwrap(), 3, &IRREDUCIBLE_CUBIC);
    let report = finder::enumerate_codim1(&a).map_err(|e| e.to_string())?;
    ensure!(
        report.subalgebras.len() == 1,
        "found {} subalgebras",
        report.subalgebras.len()
    );
    let found = &report.subalgebras[0];
    ensure!(found.pair == (2, 3), "pair {:?}", found.pair);
    let CodimOneCase::RankZeroRoot { lambda } = &found.case else {
        return Err(format!("case {:?}", found.case));
    };
    let l = lambda.to_f64();
    ensure!(
        (l * l * l - l - 1.0).abs() <= tol,
        "|λ^3 - λ - 1| = {:e}",
        (l * l * l - l - 1.0).abs()
    );
    ensure!((1.3247..=1.3248).contains(&l), "λ = {l}");
    let basis: Vec<Vec<f64>> = found
        .subspace
        .basis()
        .row_iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    ensure!(
        basis == vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, l]],
        "basis {basis:?} is not span{{e_1, e_2 + λe_3}}"
    );
    // (e_2 + λe_3)² = (1 + 2λ², λ² - 1, 1) lies in span{e_1, e_2 + λe_3} iff 1 = λ(λ² - 1)
    let by_hand = (1.0 - l * (l * l - 1.0)).abs();
    let residual = found.subspace.closure_residual();
    ensure!(
        by_hand <= tol && residual <= tol,
        "closure residuals {by_hand:e}, {residual:e}"
    );
    Ok(format!(
        "one subalgebra for (2,3), λ = {l:.10}, closure residual {residual:.1e}"
    ))
}

fn rank_two_pair() -> Check {
    let a = algebra_from_ints(q(), 4, &[1, 0, 1, 2, 0, 1, 1, -1, 0, 0, -3, 2, 0, 0, 1, 0]);
    let columns: Vec<Vec<String>> = (2..4)
        .map(|j| {
            (0..4)
                .map(|i| a.structure().get(i, j).to_string())
                .collect()
        })
        .collect();
    ensure!(
        columns == [["1", "1", "-3", "1"], ["2", "-1", "2", "0"]],
        "columns {columns:?}"
    );
    let det = a.structure().determinant().map_err(|e| e.to_string())?;
    ensure!(!det.is_zero(), "completion is singular");
    let sub = finder::pair_submatrix(&a, 3, 4).map_err(|e| e.to_string())?;
    ensure!(sub.rank == 2, "rank M_34 = {}", sub.rank);
    ensure!(
        sub.matrix == Matrix::from_i64_rows(q(), &[&[1, 2], &[1, -1]]).unwrap(),
        "M_34 = {}",
        sub.matrix
    );
    let found = finder::codim1_for_pair(&a, 3, 4).map_err(|e| e.to_string())?;
    ensure!(
        found.is_empty(),
        "codim1_for_pair(3,4) returned {}",
        found.len()
    );
    ensure!(
        finder::necessary_pair_condition(&a, 3, 4).unwrap(),
        "necessary condition fails"
    );
    Ok(format!(
        "det = {det}, rank M_34 = 2, no subalgebras, necessary condition holds"
    ))
}

fn nilpotent() -> Check {
    for p in [2, 3] {
        let a = algebra_from_ints(fp(p), 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        ensure!(!a.is_regular(), "F_{p}: regular");
        let proper: Vec<Subspace> = oracle::enumerate_subalgebras(&a, DEFAULT_MAX_SUBSPACES)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(Subspace::is_proper_nonzero)
            .collect();
        let expected = sorted(vec![
            span_of(&a, &[&[0, 0, 1]]),
            span_of(&a, &[&[0, 1, 0], &[0, 0, 1]]),
        ]);
        ensure!(proper == expected, "F_{p}: {proper:?}");
    }
    Ok(
        "proper nonzero subalgebras {span{e_3}, span{e_2, e_3}} over F_2 and F_3; not regular"
            .into(),
    )
}

fn natural_basis_exhaustive() -> Check {
    let p = 2u64;
    let gl3 = (p.pow(3) - 1) * (p.pow(3) - p) * (p.pow(3) - p * p);
    let mut regular = 0;
    let mut checked = 0;
    for a in all_algebras(p, 3).filter(EvolutionAlgebra::is_regular) {
        regular += 1;
        for s in oracle::enumerate_subalgebras(&a, DEFAULT_MAX_SUBSPACES).unwrap() {
            let basis = s.basis_elements();
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    ensure!(
                        basis[i].multiply(&basis[j]).unwrap().is_zero(),
                        "{s} in {}: nonzero product",
                        a.structure()
                    );
                    ensure!(
                        basis[i].support().is_disjoint(&basis[j].support()),
                        "{s} in {}: overlapping supports",
                        a.structure()
                    );
                }
            }
            ensure!(
                s.natural_basis().ok() == Some(basis),
                "natural_basis disagrees on {s}"
            );
            checked += 1;
        }
    }
    ensure!(
        regular == gl3,
        "{regular} regular matrices, |GL(3,2)| = {gl3}"
    );
    Ok(format!(
        "{regular} regular algebras, {checked} subalgebras, 0 failures"
    ))
}

fn codim1_matches_oracle(a: &EvolutionAlgebra) -> Result<(), String> {
    let got: Vec<Subspace> = finder::enumerate_codim1(a)
        .unwrap()
        .subalgebras
        .into_iter()
        .map(|f| f.subspace)
        .collect();
    let want = oracle::enumerate_subalgebras_of_dim(a, a.dim() - 1, DEFAULT_MAX_SUBSPACES).unwrap();
    ensure!(
        got == want,
        "{}:\nfinder {got:?}\noracle {want:?}",
        a.structure()
    );
    Ok(())
}

fn codim1_completeness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut exhaustive = 0;
    for a in all_algebras(2, 3).filter(EvolutionAlgebra::is_regular) {
        codim1_matches_oracle(&a)?;
        exhaustive += 1;
    }
    let samples = 500;
    for _ in 0..samples {
        codim1_matches_oracle(&random_regular_fp(&mut rng, 3, 3))?;
        codim1_matches_oracle(&random_regular_fp(&mut rng, 2, 4))?;
    }
    Ok(format!("F_2 dim 3: {exhaustive} exhaustive; F_3 dim 3 and F_2 dim 4: {samples} random each; 0 discrepancies"))
}

/// Every vector of `F_p^n`.
fn all_vectors(a: &EvolutionAlgebra) -> Vec<evalg::algebra::Element> {
    let p = a.spec().modulus().unwrap();
    let n = a.dim();
    (0..p.pow(n as u32))
        .map(|mut code| {
            let coords: Vec<i64> = (0..n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d as i64
                })
                .collect();
            a.element_from_i64(&coords).unwrap()
        })
        .collect()
}

fn onedim_bijection_for(a: &EvolutionAlgebra) -> Result<(), String> {
    let solutions = all_vectors(a)
        .into_iter()
        .filter(|x| !x.is_zero() && finder::onedim_residual(a, x).unwrap().is_zero())
        .count();
    let lines = oracle::enumerate_subalgebras_of_dim(a, 1, DEFAULT_MAX_SUBSPACES).unwrap();
    ensure!(
        solutions == lines.len(),
        "{}: {solutions} solutions, {} lines",
        a.structure(),
        lines.len()
    );
    let solved = finder::solve_onedim(a).unwrap();
    ensure!(
        solved == lines,
        "{}: solve_onedim {solved:?} vs oracle {lines:?}",
        a.structure()
    );
    Ok(())
}

fn onedim_bijection() -> Check {
    let mut count = 0;
    for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        for a in all_algebras(p, n).filter(EvolutionAlgebra::is_regular) {
            onedim_bijection_for(&a)?;
            count += 1;
        }
    }
    Ok(format!(
        "all {count} regular algebras over F_2, F_3 with dim <= 3; 0 discrepancies"
    ))
}

fn dimension_two() -> Check {
    let swap = algebra_from_ints(q(), 2, &[0, 1, 1, 0]);
    let lines = finder::solve_onedim(&swap).map_err(|e| e.to_string())?;
    ensure!(lines == vec![span_of(&swap, &[&[1, 1]])], "swap: {lines:?}");

    let id = algebra_from_ints(q(), 2, &[1, 0, 0, 1]);
    let lines = finder::solve_onedim(&id).map_err(|e| e.to_string())?;
    let expected = sorted(vec![
        span_of(&id, &[&[1, 0]]),
        span_of(&id, &[&[0, 1]]),
        span_of(&id, &[&[1, 1]]),
    ]);
    ensure!(lines == expected, "identity: {lines:?}");

    for (a, want) in [(&swap, 1), (&id, 3)] {
        let lines = finder::solve_onedim(a).unwrap();
        ensure!(
            lines.len() == want && lines.iter().all(Subspace::is_subalgebra),
            "closure failed"
        );
        let via_codim1: Vec<Subspace> = finder::enumerate_codim1(a)
            .unwrap()
            .subalgebras
            .into_iter()
            .map(|f| f.subspace)
            .collect();
        ensure!(
            via_codim1 == lines,
            "enumerate_codim1 disagrees: {via_codim1:?}"
        );
    }
    Ok(
        "[[0,1],[1,0]] -> {span{e_1+e_2}}; identity -> {span{e_1}, span{e_2}, span{e_1+e_2}}"
            .into(),
    )
}

fn exact_vs_real() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let reals = FieldSpec::reals(1e-9).unwrap();
    let (mut matched, mut irrational) = (0, 0);
    let samples = 100;
    for _ in 0..samples {
        let entries = random_regular_ints(&mut rng, 3);
        let exact = finder::enumerate_codim1(&algebra_from_ints(q(), 3, &entries)).unwrap();
        let real = finder::enumerate_codim1(&algebra_from_ints(reals, 3, &entries)).unwrap();
        let cmp = finder::compare_exact_with_real(&exact, &real, 1e-6);
        ensure!(
            cmp.is_consistent(),
            "{entries:?}: missing {:?}, unexplained extras {:?}",
            cmp.missing,
            cmp.extra_unexplained
        );
        // each irrational extra must be listed among the real roots of its pair
        for extra in &cmp.extra_irrational {
            let CodimOneCase::RankZeroRoot { lambda } = &extra.case else {
                return Err(format!("{entries:?}: extra without root provenance"));
            };
            let listed = real.diagnostics.iter().any(|d| {
                (d.p, d.q) == extra.pair
                    && matches!(&d.outcome, PairOutcome::RankZero { roots, .. } if roots.contains(lambda))
            });
            ensure!(
                listed,
                "{entries:?}: root {lambda} missing from diagnostics"
            );
        }
        matched += cmp.matched;
        irrational += cmp.extra_irrational.len();
    }
    Ok(format!("{samples} algebras: {matched} rational subalgebras matched, {irrational} irrational-root extras"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 irreducible pair cubic over Q",
            Some(Duration::from_secs(1)),
            irreducible_cubic_over_q,
        ),
        (
            "2 irreducible pair cubic over R",
            Some(Duration::from_secs(1)),
            irreducible_cubic_over_reals,
        ),
        (
            "3 rank-two pair separation",
            Some(Duration::from_secs(1)),
            rank_two_pair,
        ),
        (
            "4 nilpotent algebra",
            Some(Duration::from_secs(1)),
            nilpotent,
        ),
        (
            "5 natural basis, F_2 dim 3",
            Some(Duration::from_secs(60)),
            natural_basis_exhaustive,
        ),
        (
            "6 codim-one completeness",
            Some(Duration::from_secs(300)),
            codim1_completeness,
        ),
        ("7 one-dim bijection", None, onedim_bijection),
        (
            "8 dimension two",
            Some(Duration::from_secs(1)),
            dimension_two,
        ),
        ("9 exact vs real", None, exact_vs_real),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
