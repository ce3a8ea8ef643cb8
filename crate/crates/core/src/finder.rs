//! Detection of one-dimensional and codimension-one subalgebras.
//!
//! One-dimensional subalgebras of a regular algebra correspond to the nonzero
//! solutions `x` of `(x_1², …, x_n²)ᵀ = (Mᵀ)⁻¹ x`, i.e. to nonzero idempotents:
//! a line `span{u}` with `u² = k u` contains exactly one idempotent `u / k`.
//! [`onedim_residual`] checks candidates over any field; [`solve_onedim`]
//! solves the system outright over prime fields and in dimension two.
//!
//! In a regular algebra every codimension-one subalgebra has the shape
//! `span{e_i : i ≠ p, q} + span{v}` with `v ∈ span{e_p, e_q}`. For a pair
//! `p < q` let `M_pq` be columns `p, q` of the structure matrix with rows
//! `p, q` removed:
//!
//! * rank 2: no subalgebra for this pair;
//! * rank 1: `v` must be proportional to a nonzero row `(α, β)`, and the
//!   subspace is closed iff `α²β·a_pp + β³·a_qp = α³·a_pq + αβ²·a_qq`;
//! * rank 0: `v = e_p + λ e_q` for each nonzero root of
//!   `a_qp·λ³ − a_qq·λ² + a_pp·λ − a_pq`, plus `span{e_i : i ≠ q}` when
//!   `a_pq = 0` and `span{e_i : i ≠ p}` when `a_qp = 0`.
//!
//! Indices `p, q` are 1-based throughout.

use crate::algebra::{Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, LowDegreePoly, Scalar};
use crate::linalg::Matrix;
use crate::oracle::DEFAULT_MAX_SUBSPACES;
use crate::subspace::{self, Subspace};

/// Columns `p, q` of the structure matrix without rows `p, q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSubmatrix {
    pub p: usize,
    pub q: usize,
    pub matrix: Matrix,
    pub rank: usize,
}

/// How a codimension-one subalgebra was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum CodimOneCase {
    /// `v = α e_p + β e_q` from a nonzero row of a rank-one `M_pq`.
    RankOneRow { alpha: Scalar, beta: Scalar },
    /// `v = e_p + λ e_q` from a nonzero root of the pair cubic.
    RankZeroRoot { lambda: Scalar },
    /// `span{e_i : i ≠ q}`, available when `a_pq = 0`.
    DropQ,
    /// `span{e_i : i ≠ p}`, available when `a_qp = 0`.
    DropP,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodimOneFound {
    pub subspace: Subspace,
    pub pair: (usize, usize),
    pub case: CodimOneCase,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairOutcome {
    RankTwo,
    RankOne {
        alpha: Scalar,
        beta: Scalar,
        lhs: Scalar,
        rhs: Scalar,
        holds: bool,
    },
    RankZero {
        cubic: LowDegreePoly,
        roots: Vec<Scalar>,
        /// Approximate reals only: points just outside the acceptance threshold.
        near_misses: Vec<(f64, f64)>,
        drop_q: bool,
        drop_p: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairDiagnostic {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    pub outcome: PairOutcome,
    /// Approximate reals only: candidates whose closure residual exceeded the threshold.
    pub rejected: Vec<(Subspace, f64)>,
}

/// Deduplicated codimension-one subalgebras plus per-pair diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraReport {
    pub spec: FieldSpec,
    pub dim: usize,
    pub subalgebras: Vec<CodimOneFound>,
    pub diagnostics: Vec<PairDiagnostic>,
}

fn require_regular(a: &EvolutionAlgebra) -> Result<()> {
    if a.is_regular() {
        Ok(())
    } else {
        Err(Error::NotRegular)
    }
}

fn check_pair(a: &EvolutionAlgebra, p: usize, q: usize) -> Result<()> {
    if p == 0 || p >= q || q > a.dim() {
        return Err(Error::BadIndices { p, q, dim: a.dim() });
    }
    Ok(())
}

fn check_dim(a: &EvolutionAlgebra, min: usize) -> Result<()> {
    if a.dim() < min {
        return Err(Error::DimensionTooSmall { dim: a.dim(), min });
    }
    Ok(())
}

/// `(x_i²)_i − (Mᵀ)⁻¹ x`; zero exactly when `x` solves the one-dimensional system.
pub fn onedim_residual(a: &EvolutionAlgebra, x: &Element) -> Result<Element> {
    if !x.algebra().same_as(a) {
        return Err(Error::MixedAlgebras);
    }
    let inv = a.structure().transpose().inverse().map_err(|e| match e {
        Error::SingularMatrix => Error::NotRegular,
        other => other,
    })?;
    let rhs = inv.apply(x.coords())?;
    let coords = x
        .coords()
        .iter()
        .zip(&rhs)
        .map(|(xi, r)| &(xi * xi) - r)
        .collect();
    a.element(coords)
}

/// All one-dimensional subalgebras, canonically ordered.
///
/// Dimension one returns the algebra itself, dimension two uses the closed
/// form over any field, and larger dimensions require a prime field, where
/// every line is tested.
pub fn solve_onedim(a: &EvolutionAlgebra) -> Result<Vec<Subspace>> {
    solve_onedim_with_limit(a, DEFAULT_MAX_SUBSPACES)
}

pub fn solve_onedim_with_limit(a: &EvolutionAlgebra, limit: u128) -> Result<Vec<Subspace>> {
    require_regular(a)?;
    let mut out = match a.dim() {
        1 => vec![Subspace::full(a)],
        2 => analyse_pair(a, 1, 2)?
            .0
            .into_iter()
            .map(|f| f.subspace)
            .collect(),
        n => {
            let p = a.spec().modulus().ok_or_else(|| {
                Error::UnsupportedFieldDimension(format!(
                    "one-dimensional subalgebras over {} need dimension <= 2, got {n}",
                    a.spec()
                ))
            })?;
            let lines = crate::oracle::gaussian_binomial(n, 1, p);
            if lines > limit {
                return Err(Error::TooLarge {
                    needed: lines,
                    limit,
                });
            }
            prime_field_lines(a)
        }
    };
    subspace::sort_dedup(&mut out);
    Ok(out)
}

/// Lines `span{u}` with `u` normalised so its first nonzero coordinate is 1,
/// kept when `u² ∈ span{u}`.
fn prime_field_lines(a: &EvolutionAlgebra) -> Vec<Subspace> {
    let spec = a.spec();
    let p = spec.modulus().expect("prime field");
    let n = a.dim();
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = p.pow(tail as u32);
        for mut code in 0..count {
            let mut coords = vec![Scalar::zero(spec); n];
            coords[lead] = Scalar::one(spec);
            for c in coords.iter_mut().skip(lead + 1) {
                *c = Scalar::from_i64(spec, (code % p) as i64);
                code /= p;
            }
            let u = a.element(coords).expect("coordinates of algebra width");
            let line = subspace::canonicalize(a, std::slice::from_ref(&u)).expect("same algebra");
            if line.contains(&u.square()).expect("same algebra") {
                out.push(line);
            }
        }
    }
    out
}

pub fn pair_submatrix(a: &EvolutionAlgebra, p: usize, q: usize) -> Result<PairSubmatrix> {
    check_dim(a, 3)?;
    check_pair(a, p, q)?;
    Ok(pair_submatrix_unchecked(a, p, q))
}

fn pair_submatrix_unchecked(a: &EvolutionAlgebra, p: usize, q: usize) -> PairSubmatrix {
    let rows: Vec<usize> = (0..a.dim()).filter(|&i| i != p - 1 && i != q - 1).collect();
    let matrix = a.structure().select(&rows, &[p - 1, q - 1]);
    let rank = matrix.rank();
    PairSubmatrix { p, q, matrix, rank }
}

/// Both sides of `α²β·a_pp + β³·a_qp = α³·a_pq + αβ²·a_qq`.
pub fn rank_one_condition_sides(
    a: &EvolutionAlgebra,
    p: usize,
    q: usize,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<(Scalar, Scalar)> {
    check_pair(a, p, q)?;
    if alpha.spec() != a.spec() || beta.spec() != a.spec() {
        return Err(Error::MixedFieldSpecs);
    }
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::ZeroPair);
    }
    let (app, apq) = (a.constant(p, p), a.constant(p, q));
    let (aqp, aqq) = (a.constant(q, p), a.constant(q, q));
    let lhs = &(&(&alpha.pow(2) * beta) * app) + &(&beta.pow(3) * aqp);
    let rhs = &(&alpha.pow(3) * apq) + &(&(alpha * &beta.pow(2)) * aqq);
    Ok((lhs, rhs))
}

pub fn rank_one_condition_holds(
    a: &EvolutionAlgebra,
    p: usize,
    q: usize,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<bool> {
    let (lhs, rhs) = rank_one_condition_sides(a, p, q, alpha, beta)?;
    Ok(lhs == rhs)
}

/// `a_qp·λ³ − a_qq·λ² + a_pp·λ − a_pq`.
pub fn pair_cubic(a: &EvolutionAlgebra, p: usize, q: usize) -> Result<LowDegreePoly> {
    check_pair(a, p, q)?;
    LowDegreePoly::new(
        a.constant(q, p).clone(),
        -a.constant(q, q),
        a.constant(p, p).clone(),
        -a.constant(p, q),
    )
}

/// Codimension-one subalgebras of the form `span{e_i : i ≠ p, q} + span{v}`.
pub fn codim1_for_pair(a: &EvolutionAlgebra, p: usize, q: usize) -> Result<Vec<CodimOneFound>> {
    check_dim(a, 3)?;
    check_pair(a, p, q)?;
    require_regular(a)?;
    Ok(analyse_pair(a, p, q)?.0)
}

/// Threshold for closure residuals over the approximate reals.
fn real_closure_threshold(a: &EvolutionAlgebra) -> Option<f64> {
    let tol = a.spec().tolerance()?;
    let s = a.structure();
    let scale = (0..s.rows())
        .flat_map(|i| s.row(i).iter().map(Scalar::magnitude))
        .fold(1.0f64, f64::max);
    Some(tol * scale)
}

/// Works for `n >= 2`; in dimension two `M_pq` is empty and rank 0.
fn analyse_pair(
    a: &EvolutionAlgebra,
    p: usize,
    q: usize,
) -> Result<(Vec<CodimOneFound>, PairDiagnostic)> {
    let spec = a.spec();
    let sub = pair_submatrix_unchecked(a, p, q);
    let mut candidates = Vec::new();

    let outcome = match sub.rank {
        2 => PairOutcome::RankTwo,
        1 => {
            let row = sub
                .matrix
                .row_iter()
                .find(|r| r.iter().any(|x| !x.is_zero()))
                .expect("rank one has a nonzero row");
            let (alpha, beta) = (row[0].clone(), row[1].clone());
            let (lhs, rhs) = rank_one_condition_sides(a, p, q, &alpha, &beta)?;
            let holds = lhs == rhs;
            if holds {
                let v = a
                    .basis_vector(p)?
                    .scale(&alpha)
                    .add(&a.basis_vector(q)?.scale(&beta))?;
                candidates.push(CodimOneFound {
                    subspace: Subspace::coordinate_span_plus(a, &[p, q], &[v]),
                    pair: (p, q),
                    case: CodimOneCase::RankOneRow {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                    },
                });
            }
            PairOutcome::RankOne {
                alpha,
                beta,
                lhs,
                rhs,
                holds,
            }
        }
        0 => {
            let cubic = pair_cubic(a, p, q)?;
            let (roots, near_misses) = match cubic.nonzero_roots() {
                Ok(roots) => {
                    let near = if spec.is_exact() {
                        Vec::new()
                    } else {
                        cubic.real_root_scan()?.near_misses
                    };
                    (roots, near)
                }
                Err(Error::IdenticallyZeroPolynomial) => {
                    // needs a_pp = a_qq = a_pq = a_qp = 0 with M_pq = 0, i.e. a
                    // singular structure matrix
                    return Err(Error::InvariantViolation(format!(
                        "pair ({p},{q}): columns p and q vanish in a regular algebra"
                    )));
                }
                Err(e) => return Err(e),
            };
            for lambda in &roots {
                let v = a.basis_vector(p)?.add(&a.basis_vector(q)?.scale(lambda))?;
                candidates.push(CodimOneFound {
                    subspace: Subspace::coordinate_span_plus(a, &[p, q], &[v]),
                    pair: (p, q),
                    case: CodimOneCase::RankZeroRoot {
                        lambda: lambda.clone(),
                    },
                });
            }
            let drop_q = a.constant(p, q).is_zero();
            let drop_p = a.constant(q, p).is_zero();
            if drop_q {
                candidates.push(CodimOneFound {
                    subspace: Subspace::coordinate_span_plus(a, &[q], &[]),
                    pair: (p, q),
                    case: CodimOneCase::DropQ,
                });
            }
            if drop_p {
                candidates.push(CodimOneFound {
                    subspace: Subspace::coordinate_span_plus(a, &[p], &[]),
                    pair: (p, q),
                    case: CodimOneCase::DropP,
                });
            }
            PairOutcome::RankZero {
                cubic,
                roots,
                near_misses,
                drop_q,
                drop_p,
            }
        }
        r => unreachable!("a two-column matrix has rank {r}"),
    };

    let mut found = Vec::new();
    let mut rejected = Vec::new();
    for cand in candidates {
        match real_closure_threshold(a) {
            Some(threshold) => {
                let residual = cand.subspace.closure_residual();
                if residual <= threshold {
                    found.push(cand);
                } else {
                    rejected.push((cand.subspace, residual));
                }
            }
            None => {
                if !cand.subspace.is_subalgebra() {
                    return Err(Error::InvariantViolation(format!(
                        "pair ({p},{q}) produced {}, which is not closed",
                        cand.subspace
                    )));
                }
                found.push(cand);
            }
        }
    }
    let diag = PairDiagnostic {
        p,
        q,
        rank: sub.rank,
        outcome,
        rejected,
    };
    Ok((found, diag))
}

/// All codimension-one subalgebras, deduplicated across pairs and canonically
/// ordered. Dimension two reports the one-dimensional subalgebras, as pair (1,2).
pub fn enumerate_codim1(a: &EvolutionAlgebra) -> Result<SubalgebraReport> {
    check_dim(a, 2)?;
    require_regular(a)?;
    let n = a.dim();
    let mut subalgebras: Vec<CodimOneFound> = Vec::new();
    let mut diagnostics = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            let (found, diag) = analyse_pair(a, p, q)?;
            subalgebras.extend(found);
            diagnostics.push(diag);
        }
    }
    // stable sort keeps the first pair that produced each subspace
    subalgebras.sort_by(|x, y| x.subspace.canonical_cmp(&y.subspace));
    subalgebras.dedup_by(|later, earlier| later.subspace == earlier.subspace);
    Ok(SubalgebraReport {
        spec: a.spec(),
        dim: n,
        subalgebras,
        diagnostics,
    })
}

/// `a_ip²·a_iq·a_pp + a_iq³·a_qp = a_ip³·a_pq + a_ip·a_iq²·a_qq` for every `i ∉ {p, q}`.
pub fn necessary_pair_condition(a: &EvolutionAlgebra, p: usize, q: usize) -> Result<bool> {
    check_dim(a, 3)?;
    check_pair(a, p, q)?;
    for i in (1..=a.dim()).filter(|&i| i != p && i != q) {
        let (aip, aiq) = (a.constant(i, p), a.constant(i, q));
        let holds = if aip.is_zero() && aiq.is_zero() {
            true
        } else {
            rank_one_condition_holds(a, p, q, aip, aiq)?
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of lining up an exact report with the same algebra over the reals.
#[derive(Debug, Clone, Default)]
pub struct ExactRealComparison {
    pub matched: usize,
    /// Exact subalgebras with no real counterpart.
    pub missing: Vec<Subspace>,
    /// Real-only subalgebras coming from a cubic root that is not rational.
    pub extra_irrational: Vec<CodimOneFound>,
    /// Real-only subalgebras with any other provenance.
    pub extra_unexplained: Vec<CodimOneFound>,
}

impl ExactRealComparison {
    pub fn is_consistent(&self) -> bool {
        self.missing.is_empty() && self.extra_unexplained.is_empty()
    }
}

fn approx_same_subspace(x: &Subspace, y: &Subspace, tol: f64) -> bool {
    x.dim() == y.dim()
        && x.basis()
            .row_iter()
            .flatten()
            .zip(y.basis().row_iter().flatten())
            .all(|(a, b)| (a.to_f64() - b.to_f64()).abs() <= tol)
}

/// Matches each subalgebra of `exact` (over Q) with one of `real` (the same
/// entries over the reals) entry-wise within `match_tol`. Real-only entries
/// are classified by provenance: a cubic root with no rational root of the
/// same pair within `match_tol` is irrational.
pub fn compare_exact_with_real(
    exact: &SubalgebraReport,
    real: &SubalgebraReport,
    match_tol: f64,
) -> ExactRealComparison {
    let mut cmp = ExactRealComparison::default();
    let mut used = vec![false; real.subalgebras.len()];
    for e in &exact.subalgebras {
        let hit =
            real.subalgebras.iter().enumerate().find(|(k, r)| {
                !used[*k] && approx_same_subspace(&e.subspace, &r.subspace, match_tol)
            });
        match hit {
            Some((k, _)) => {
                used[k] = true;
                cmp.matched += 1;
            }
            None => cmp.missing.push(e.subspace.clone()),
        }
    }
    for (k, r) in real.subalgebras.iter().enumerate() {
        if used[k] {
            continue;
        }
        let irrational = match &r.case {
            CodimOneCase::RankZeroRoot { lambda } => {
                let rational_roots =
                    exact
                        .diagnostics
                        .iter()
                        .find(|d| (d.p, d.q) == r.pair)
                        .map(|d| match &d.outcome {
                            PairOutcome::RankZero { roots, .. } => roots.clone(),
                            _ => Vec::new(),
                        });
                rational_roots
                    .unwrap_or_default()
                    .iter()
                    .all(|x| (x.to_f64() - lambda.to_f64()).abs() > match_tol)
            }
            _ => false,
        };
        if irrational {
            cmp.extra_irrational.push(r.clone());
        } else {
            cmp.extra_unexplained.push(r.clone());
        }
    }
    cmp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn reals() -> FieldSpec {
        FieldSpec::reals(1e-9).unwrap()
    }

    const IRREDUCIBLE_CUBIC: [&[i64]; 3] = [&[1, 0, 0], &[1, -1, 1], &[2, 1, 0]];

    fn irreducible_cubic(spec: FieldSpec) -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64_rows(spec, &IRREDUCIBLE_CUBIC).unwrap()
    }

    /// `M_34` has rank 2 although every row outside {3, 4} satisfies the
    /// pair condition; the first two columns are the identity's (det -2).
    fn rank_two_pair() -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64_rows(
            q(),
            &[&[1, 0, 1, 2], &[0, 1, 1, -1], &[0, 0, -3, 2], &[0, 0, 1, 0]],
        )
        .unwrap()
    }

    fn identity(spec: FieldSpec, n: usize) -> EvolutionAlgebra {
        EvolutionAlgebra::new(spec, Matrix::identity(spec, n)).unwrap()
    }

    fn s(spec: FieldSpec, v: i64) -> Scalar {
        Scalar::from_i64(spec, v)
    }

    #[test]
    fn onedim_residual_examples() {
        let a = identity(q(), 3);
        for (x, expected) in [
            ([1, 0, 0], [0, 0, 0]),
            ([1, 1, 0], [0, 0, 0]),
            ([2, 0, 0], [2, 0, 0]),
        ] {
            let r = onedim_residual(&a, &a.element_from_i64(&x).unwrap()).unwrap();
            assert_eq!(r, a.element_from_i64(&expected).unwrap());
        }
        let nil =
            EvolutionAlgebra::from_i64_rows(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(
            onedim_residual(&nil, &nil.zero()).unwrap_err(),
            Error::NotRegular
        );
    }

    #[test]
    fn solve_onedim_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let lines: Vec<String> = solve_onedim(&identity(f2, 2))
            .unwrap()
            .iter()
            .map(Subspace::to_string)
            .collect();
        assert_eq!(lines, ["span{(0, 1)}", "span{(1, 0)}", "span{(1, 1)}"]);

        let swap = EvolutionAlgebra::from_i64_rows(q(), &[&[0, 1], &[1, 0]]).unwrap();
        let lines: Vec<String> = solve_onedim(&swap)
            .unwrap()
            .iter()
            .map(Subspace::to_string)
            .collect();
        assert_eq!(lines, ["span{(1, 1)}"]);

        let nil =
            EvolutionAlgebra::from_i64_rows(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(solve_onedim(&nil).unwrap_err(), Error::NotRegular);
        assert!(matches!(
            solve_onedim(&irreducible_cubic(q())),
            Err(Error::UnsupportedFieldDimension(_))
        ));
        assert_eq!(solve_onedim(&identity(q(), 1)).unwrap().len(), 1);
    }

    #[test]
    fn pair_submatrix_examples() {
        let ps = pair_submatrix(&rank_two_pair(), 3, 4).unwrap();
        assert_eq!(
            ps.matrix,
            Matrix::from_i64_rows(q(), &[&[1, 2], &[1, -1]]).unwrap()
        );
        assert_eq!(ps.rank, 2);
        let a = irreducible_cubic(q());
        let ps = pair_submatrix(&a, 2, 3).unwrap();
        assert_eq!((ps.matrix.to_string(), ps.rank), ("[0, 0]".to_string(), 0));
        let ps = pair_submatrix(&a, 1, 2).unwrap();
        assert_eq!((ps.matrix.to_string(), ps.rank), ("[2, 1]".to_string(), 1));
        assert!(matches!(
            pair_submatrix(&a, 2, 2),
            Err(Error::BadIndices { .. })
        ));
        assert!(matches!(
            pair_submatrix(&a, 3, 2),
            Err(Error::BadIndices { .. })
        ));
        assert!(matches!(
            pair_submatrix(&a, 1, 4),
            Err(Error::BadIndices { .. })
        ));
        assert_eq!(
            pair_submatrix(&identity(q(), 2), 1, 2).unwrap_err(),
            Error::DimensionTooSmall { dim: 2, min: 3 }
        );
    }

    #[test]
    fn rank_one_condition_examples() {
        let a = irreducible_cubic(q());
        let (l, r) = rank_one_condition_sides(&a, 1, 2, &s(q(), 2), &s(q(), 1)).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("5".into(), "-2".into()));
        let (l, r) = rank_one_condition_sides(&a, 1, 3, &s(q(), 1), &s(q(), 1)).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("3".into(), "0".into()));
        assert!(!rank_one_condition_holds(&a, 1, 2, &s(q(), 2), &s(q(), 1)).unwrap());
        // a_23 = 1 but a_12 = 0: (α, β) = (1, 0) on pair (1, 2)
        assert!(rank_one_condition_holds(&a, 1, 2, &s(q(), 1), &s(q(), 0)).unwrap());
        assert_eq!(
            rank_one_condition_holds(&a, 1, 2, &s(q(), 0), &s(q(), 0)).unwrap_err(),
            Error::ZeroPair
        );
    }

    #[test]
    fn pair_cubic_examples() {
        assert_eq!(
            pair_cubic(&irreducible_cubic(q()), 2, 3)
                .unwrap()
                .to_string(),
            "λ^3 - λ - 1"
        );
        assert_eq!(
            pair_cubic(&identity(q(), 3), 1, 3).unwrap().to_string(),
            "-λ^2 + λ"
        );
        let swap = EvolutionAlgebra::from_i64_rows(q(), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(pair_cubic(&swap, 1, 2).unwrap().to_string(), "λ^3 - 1");
        assert!(matches!(
            pair_cubic(&swap, 1, 3),
            Err(Error::BadIndices { .. })
        ));
    }

    #[test]
    fn codim1_for_pair_examples() {
        assert!(codim1_for_pair(&irreducible_cubic(q()), 2, 3)
            .unwrap()
            .is_empty());

        let found = codim1_for_pair(&irreducible_cubic(reals()), 2, 3).unwrap();
        assert_eq!(found.len(), 1);
        let CodimOneCase::RankZeroRoot { lambda } = &found[0].case else {
            panic!("expected a root case, got {:?}", found[0].case);
        };
        let l = lambda.to_f64();
        assert!((1.3247..=1.3248).contains(&l));
        assert!(found[0].subspace.closure_residual() <= 1e-9);

        let id = identity(q(), 3);
        let shown: Vec<String> = codim1_for_pair(&id, 1, 2)
            .unwrap()
            .iter()
            .map(|f| f.subspace.to_string())
            .collect();
        assert_eq!(
            shown,
            [
                "span{(1, 1, 0), (0, 0, 1)}",
                "span{(1, 0, 0), (0, 0, 1)}",
                "span{(0, 1, 0), (0, 0, 1)}",
            ]
        );
        let nil =
            EvolutionAlgebra::from_i64_rows(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(codim1_for_pair(&nil, 1, 2).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn enumerate_codim1_examples() {
        let report = enumerate_codim1(&irreducible_cubic(q())).unwrap();
        assert!(report.subalgebras.is_empty());
        assert_eq!(
            report
                .diagnostics
                .iter()
                .map(|d| (d.p, d.q, d.rank))
                .collect::<Vec<_>>(),
            [(1, 2, 1), (1, 3, 1), (2, 3, 0)]
        );

        let report = enumerate_codim1(&identity(q(), 3)).unwrap();
        assert_eq!(report.subalgebras.len(), 6);

        let f2 = FieldSpec::prime(2).unwrap();
        let a = identity(f2, 3);
        let report = enumerate_codim1(&a).unwrap();
        let oracle = oracle::enumerate_subalgebras_of_dim(&a, 2, 1000).unwrap();
        let got: Vec<Subspace> = report.subalgebras.into_iter().map(|f| f.subspace).collect();
        assert_eq!(got, oracle);
        assert_eq!(got.len(), 6);

        // same matrix over F_5 agrees with the oracle as well
        let f5 = FieldSpec::prime(5).unwrap();
        let a = identity(f5, 3);
        let got: Vec<Subspace> = enumerate_codim1(&a)
            .unwrap()
            .subalgebras
            .into_iter()
            .map(|f| f.subspace)
            .collect();
        assert_eq!(
            got,
            oracle::enumerate_subalgebras_of_dim(&a, 2, 1000).unwrap()
        );
        assert_eq!(got.len(), 6);

        assert_eq!(
            enumerate_codim1(&identity(q(), 1)).unwrap_err(),
            Error::DimensionTooSmall { dim: 1, min: 2 }
        );
    }

    #[test]
    fn necessary_pair_condition_examples() {
        assert!(necessary_pair_condition(&rank_two_pair(), 3, 4).unwrap());
        assert!(codim1_for_pair(&rank_two_pair(), 3, 4).unwrap().is_empty());
        assert!(rank_two_pair().is_regular());
        let a = irreducible_cubic(q());
        assert!(necessary_pair_condition(&a, 2, 3).unwrap());
        assert!(!necessary_pair_condition(&a, 1, 3).unwrap());
        assert!(!necessary_pair_condition(&a, 1, 2).unwrap());
    }

    #[test]
    fn real_report_flags_irrational_extras() {
        let exact = enumerate_codim1(&irreducible_cubic(q())).unwrap();
        let real = enumerate_codim1(&irreducible_cubic(reals())).unwrap();
        let cmp = compare_exact_with_real(&exact, &real, 1e-6);
        assert!(cmp.is_consistent());
        assert_eq!(cmp.matched, 0);
        assert_eq!(cmp.extra_irrational.len(), 1);
    }
}
