//! Dense matrices over a [`FieldSpec`]: row reduction, rank, determinant, inverse.
//!
//! Over the approximate reals, pivots are chosen by largest magnitude and
//! entries within tolerance of zero are treated as zero. Rank is therefore
//! tolerance-sensitive there; the exhaustive features of the crate are meant
//! for the exact fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with rank and pivot columns (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct RrefResult {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| e.spec() != spec) {
            return Err(Error::MixedFieldSpecs);
        }
        Ok(Matrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length. An empty row list gives a 0×0 matrix.
    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        let n = rows.len();
        Matrix::new(spec, n, cols, rows.into_iter().flatten().collect())
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// matrices with zero rows keep their width.
    pub fn from_rows_with_cols(
        spec: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        let n = rows.len();
        Matrix::new(spec, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            spec,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(spec, v)).collect())
                .collect(),
        )
    }

    /// Parses rows of scalar strings.
    pub fn parse_rows<S: AsRef<str>>(spec: FieldSpec, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Scalar::parse(s.as_ref(), spec))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(spec, parsed)
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            spec,
            rows,
            cols,
            entries: vec![Scalar::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(spec);
        }
        m
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            spec: self.spec,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.spec != other.spec {
            return Err(Error::MixedFieldSpecs);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.spec);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            spec: self.spec,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix–vector product `self · v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        if v.iter().any(|x| x.spec() != self.spec) {
            return Err(Error::MixedFieldSpecs);
        }
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Scalar::zero(self.spec), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// The submatrix on the given (0-based) rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            spec: self.spec,
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Index of the pivot row for column `col` among rows `from..`.
    fn find_pivot(&self, col: usize, from: usize) -> Option<usize> {
        if self.spec.is_exact() {
            (from..self.rows).find(|&i| !self.get(i, col).is_zero())
        } else {
            (from..self.rows)
                .filter(|&i| !self.get(i, col).is_zero())
                .max_by(|&a, &b| {
                    self.get(a, col)
                        .magnitude()
                        .total_cmp(&self.get(b, col).magnitude())
                })
        }
    }

    /// `row[target] -= factor · row[source]`, starting at column `from`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &Scalar, from: usize) {
        for j in from..self.cols {
            let delta = factor * self.get(source, j);
            let idx = target * self.cols + j;
            self.entries[idx] = &self.entries[idx] - &delta;
        }
    }

    fn clean_small(&mut self) {
        if self.spec.is_exact() {
            return;
        }
        for e in &mut self.entries {
            if e.is_zero() {
                *e = Scalar::zero(self.spec);
            }
        }
    }

    /// Canonical reduced row echelon form; the row space is unchanged.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.find_pivot(c, r) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.entries[idx] = &m.entries[idx] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    m.eliminate(i, r, &factor, c);
                }
            }
            m.clean_small();
            pivot_cols.push(c);
            r += 1;
        }
        m.clean_small();
        RrefResult {
            rank: pivot_cols.len(),
            rref: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let mut det = Scalar::one(self.spec);
        for c in 0..m.cols {
            let Some(p) = m.find_pivot(c, c) else {
                return Ok(Scalar::zero(self.spec));
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..m.rows {
                if !m.get(i, c).is_zero() {
                    let factor = m.get(i, c) * &inv;
                    m.eliminate(i, c, &factor, c);
                }
            }
            det = &det * &pivot;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut augmented = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            augmented.extend(self.row(i).iter().cloned());
            augmented.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one(self.spec)
                } else {
                    Scalar::zero(self.spec)
                }
            }));
        }
        let aug = Matrix {
            spec: self.spec,
            rows: n,
            cols: 2 * n,
            entries: augmented,
        };
        let reduced = aug.rref();
        if reduced.pivot_cols.iter().take_while(|&&c| c < n).count() < n {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(reduced.rref.select(&rows, &cols))
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.spec == other.spec
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
