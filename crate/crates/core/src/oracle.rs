//! Brute-force ground truth over prime fields.
//!
//! Every `m`-dimensional subspace of `F_p^n` has exactly one RREF basis, fixed
//! by its pivot columns and the entries in the free positions (right of the
//! row's pivot, outside pivot columns). Enumerating those profiles visits each
//! subspace once, without duplicate filtering.

use crate::algebra::EvolutionAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::subspace::{self, Subspace};

/// Default cap on the number of subspaces an oracle call may visit.
pub const DEFAULT_MAX_SUBSPACES: u128 = 10_000_000;

/// Number of `m`-dimensional subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, m: usize, q: u64) -> u128 {
    if m > n {
        return 0;
    }
    // Pascal-type recurrence [n, m] = [n-1, m-1] + q^m [n-1, m]
    let mut row = vec![1u128; 1];
    for k in 1..=n {
        let mut next = vec![1u128; k + 1];
        for j in 1..k {
            let qj = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            next[j] = row[j - 1].saturating_add(qj.saturating_mul(row[j]));
        }
        row = next;
    }
    row[m]
}

pub fn total_subspaces(n: usize, q: u64) -> u128 {
    (0..=n).fold(0u128, |acc, m| {
        acc.saturating_add(gaussian_binomial(n, m, q))
    })
}

/// Stream of canonical RREF basis matrices for the `m`-dimensional subspaces
/// of `F_p^n`. Pivot sets are visited in lexicographic order; within one
/// pivot set, free entries count up like a base-`p` odometer.
#[derive(Debug, Clone)]
pub struct SubspaceEnumeration {
    spec: FieldSpec,
    n: usize,
    m: usize,
    p: u64,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    started: bool,
    count: u128,
}

impl SubspaceEnumeration {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn subspace_dim(&self) -> usize {
        self.m
    }

    /// Total number of subspaces this stream yields.
    pub fn len_hint(&self) -> u128 {
        self.count
    }

    fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
        let mut free = Vec::new();
        for (i, &c) in pivots.iter().enumerate() {
            for j in c + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        free
    }

    fn next_pivots(&mut self) {
        let Some(piv) = self.pivots.as_mut() else {
            return;
        };
        let (n, m) = (self.n, self.m);
        let mut i = m;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if piv[i] < n - m + i {
                piv[i] += 1;
                for k in i + 1..m {
                    piv[k] = piv[k - 1] + 1;
                }
                break;
            }
        }
        let piv = self.pivots.as_ref().expect("pivots present");
        self.free = SubspaceEnumeration::free_positions(n, piv);
        self.digits = vec![0; self.free.len()];
    }

    /// Advances the free-entry odometer; false once it wraps around.
    fn bump_digits(&mut self) -> bool {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.p {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn current(&self) -> Matrix {
        let piv = self.pivots.as_ref().expect("pivots present");
        let mut rows = vec![vec![Scalar::zero(self.spec); self.n]; self.m];
        for (i, &c) in piv.iter().enumerate() {
            rows[i][c] = Scalar::one(self.spec);
        }
        for (&(i, j), &d) in self.free.iter().zip(&self.digits) {
            rows[i][j] = Scalar::from_i64(self.spec, d as i64);
        }
        Matrix::from_rows_with_cols(self.spec, self.n, rows).expect("consistent widths")
    }
}

impl Iterator for SubspaceEnumeration {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.started {
            if !self.bump_digits() {
                self.next_pivots();
            }
        } else {
            self.started = true;
        }
        self.pivots.as_ref()?;
        Some(self.current())
    }
}

/// All `m`-dimensional subspaces of `F_p^n`, each exactly once, as RREF bases.
pub fn enumerate_subspaces(
    spec: FieldSpec,
    n: usize,
    m: usize,
    limit: u128,
) -> Result<SubspaceEnumeration> {
    let p = spec.modulus().ok_or(Error::NotFiniteField)?;
    if m > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m,
        });
    }
    let count = gaussian_binomial(n, m, p);
    if count > limit {
        return Err(Error::TooLarge {
            needed: count,
            limit,
        });
    }
    let pivots: Vec<usize> = (0..m).collect();
    let free = SubspaceEnumeration::free_positions(n, &pivots);
    Ok(SubspaceEnumeration {
        spec,
        n,
        m,
        p,
        digits: vec![0; free.len()],
        free,
        pivots: Some(pivots),
        started: false,
        count,
    })
}

/// Every subalgebra of `a` (all dimensions, including `0` and `a` itself),
/// canonically ordered.
pub fn enumerate_subalgebras(a: &EvolutionAlgebra, limit: u128) -> Result<Vec<Subspace>> {
    let p = a.spec().modulus().ok_or(Error::NotFiniteField)?;
    let n = a.dim();
    let total = total_subspaces(n, p);
    if total > limit {
        return Err(Error::TooLarge {
            needed: total,
            limit,
        });
    }
    let mut out = Vec::new();
    for m in 0..=n {
        for basis in enumerate_subspaces(a.spec(), n, m, limit)? {
            let s = Subspace::from_matrix(a, &basis)?;
            if s.is_subalgebra() {
                out.push(s);
            }
        }
    }
    subspace::sort_dedup(&mut out);
    Ok(out)
}

/// Subalgebras of a fixed dimension.
pub fn enumerate_subalgebras_of_dim(
    a: &EvolutionAlgebra,
    m: usize,
    limit: u128,
) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for basis in enumerate_subspaces(a.spec(), a.dim(), m, limit)? {
        let s = Subspace::from_matrix(a, &basis)?;
        if s.is_subalgebra() {
            out.push(s);
        }
    }
    subspace::sort_dedup(&mut out);
    Ok(out)
}
