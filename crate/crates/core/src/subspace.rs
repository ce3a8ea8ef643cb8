//! Linear subspaces of an evolution algebra in canonical form.
//!
//! A [`Subspace`] stores its basis in reduced row echelon form with no zero
//! rows. RREF is unique for a given row space, so two subspaces are equal
//! exactly when their basis matrices agree entry by entry.
//!
//! For subalgebras of a regular algebra the RREF basis is already a natural
//! basis: distinct basis vectors have disjoint supports and multiply to zero.
//! [`Subspace::natural_basis`] returns it after checking that property.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct Subspace {
    algebra: EvolutionAlgebra,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// RREF of the stacked coordinates of `spanning`, zero rows dropped.
pub fn canonicalize(algebra: &EvolutionAlgebra, spanning: &[Element]) -> Result<Subspace> {
    if spanning.iter().any(|u| !u.algebra().same_as(algebra)) {
        return Err(Error::MixedAlgebras);
    }
    let rows = spanning.iter().map(|u| u.coords().to_vec()).collect();
    let m = Matrix::from_rows_with_cols(algebra.spec(), algebra.dim(), rows)?;
    Subspace::from_matrix(algebra, &m)
}

impl Subspace {
    /// The row space of `m`, whose column count must equal the algebra dimension.
    pub fn from_matrix(algebra: &EvolutionAlgebra, m: &Matrix) -> Result<Subspace> {
        if m.spec() != algebra.spec() {
            return Err(Error::MixedFieldSpecs);
        }
        if m.cols() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: m.cols(),
            });
        }
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Ok(Subspace {
            algebra: algebra.clone(),
            basis: r.rref.select(&keep, &cols),
            pivots: r.pivot_cols,
        })
    }

    pub fn zero(algebra: &EvolutionAlgebra) -> Subspace {
        canonicalize(algebra, &[]).expect("empty spanning set")
    }

    pub fn full(algebra: &EvolutionAlgebra) -> Subspace {
        Subspace::from_matrix(algebra, &Matrix::identity(algebra.spec(), algebra.dim()))
            .expect("identity has matching width")
    }

    /// `span{e_i : i ∉ skip}` plus the extra vectors, canonicalized.
    pub(crate) fn coordinate_span_plus(
        algebra: &EvolutionAlgebra,
        skip: &[usize],
        extra: &[Element],
    ) -> Subspace {
        let mut spanning: Vec<Element> = (1..=algebra.dim())
            .filter(|i| !skip.contains(i))
            .map(|i| algebra.basis_vector(i).expect("index in range"))
            .collect();
        spanning.extend(extra.iter().cloned());
        canonicalize(algebra, &spanning).expect("elements of the same algebra")
    }

    pub fn algebra(&self) -> &EvolutionAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// 0-based pivot columns of the RREF basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        self.basis
            .row_iter()
            .map(|r| {
                self.algebra
                    .element(r.to_vec())
                    .expect("row has algebra width")
            })
            .collect()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        self.dim() > 0 && self.dim() < self.algebra.dim()
    }

    /// Remainder of `u` after reduction against the RREF basis.
    pub fn reduce(&self, u: &Element) -> Result<Vec<Scalar>> {
        if !u.algebra().same_as(&self.algebra) {
            return Err(Error::MixedAlgebras);
        }
        let mut r = u.coords().to_vec();
        for (row, &c) in self.basis.row_iter().zip(&self.pivots) {
            if r[c].is_zero() {
                continue;
            }
            let k = r[c].clone();
            for (x, b) in r.iter_mut().zip(row) {
                *x = &*x - &(&k * b);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, u: &Element) -> Result<bool> {
        Ok(self.reduce(u)?.iter().all(Scalar::is_zero))
    }

    /// Largest remainder magnitude over all products of basis vectors. Zero
    /// for a closed subspace over an exact field.
    pub fn closure_residual(&self) -> f64 {
        let elems = self.basis_elements();
        let mut worst: f64 = 0.0;
        for i in 0..elems.len() {
            for j in i..elems.len() {
                let prod = elems[i].multiply(&elems[j]).expect("same algebra");
                let rem = self.reduce(&prod).expect("same algebra");
                worst = rem.iter().map(Scalar::magnitude).fold(worst, f64::max);
            }
        }
        worst
    }

    /// Closure under the product; by bilinearity, products of basis vectors suffice.
    /// The zero subspace and the whole algebra are subalgebras.
    pub fn is_subalgebra(&self) -> bool {
        let elems = self.basis_elements();
        (0..elems.len()).all(|i| {
            (i..elems.len()).all(|j| {
                let prod = elems[i].multiply(&elems[j]).expect("same algebra");
                self.contains(&prod).expect("same algebra")
            })
        })
    }

    /// A natural basis of a subalgebra of a regular algebra: the RREF basis,
    /// checked to have pairwise zero products and pairwise disjoint supports.
    pub fn natural_basis(&self) -> Result<Vec<Element>> {
        if !self.algebra.is_regular() {
            return Err(Error::NotRegular);
        }
        if !self.is_subalgebra() {
            return Err(Error::NotASubalgebra);
        }
        let elems = self.basis_elements();
        let supports: Vec<_> = elems.iter().map(Element::support).collect();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                if !elems[i].multiply(&elems[j])?.is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "basis vectors {} and {} of a subalgebra multiply to a nonzero element",
                        elems[i], elems[j]
                    )));
                }
                if !supports[i].is_disjoint(&supports[j]) {
                    return Err(Error::InvariantViolation(format!(
                        "basis vectors {} and {} have overlapping supports",
                        elems[i], elems[j]
                    )));
                }
            }
        }
        Ok(elems)
    }

    /// Order by dimension, then entry by entry.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            self.basis
                .row_iter()
                .flatten()
                .zip(other.basis.row_iter().flatten())
                .map(|(a, b)| a.canonical_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.basis == other.basis
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_elements()
            .iter()
            .map(Element::to_string)
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Sorts canonically and removes duplicates.
pub fn sort_dedup(subspaces: &mut Vec<Subspace>) {
    subspaces.sort_by(Subspace::canonical_cmp);
    subspaces.dedup();
}
