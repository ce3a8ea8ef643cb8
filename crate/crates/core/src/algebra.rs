//! Evolution algebras given by a structure matrix relative to a natural basis.
//!
//! Row `i` of the structure matrix holds the coordinates of `e_i²`, so entry
//! `(i, j)` is the structure constant `a_ij`. Distinct basis vectors multiply
//! to zero, which makes the product of `u = Σ u_i e_i` and `v = Σ v_i e_i`
//! equal to `Σ u_i v_i e_i²`.
//!
//! Basis indices in the public API are 1-based (`e_1..e_n`); coordinate
//! slices are ordinary 0-based Rust slices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// A finite-dimensional evolution algebra. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct EvolutionAlgebra {
    structure: Arc<Matrix>,
}

/// An element of an [`EvolutionAlgebra`], as coordinates in the natural basis.
#[derive(Debug, Clone)]
pub struct Element {
    algebra: EvolutionAlgebra,
    coords: Vec<Scalar>,
}

/// The set of basis indices (1-based, increasing) with a nonzero coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Support(Vec<usize>);

impl EvolutionAlgebra {
    pub fn new(spec: FieldSpec, structure: Matrix) -> Result<Self> {
        if structure.spec() != spec {
            return Err(Error::MixedFieldSpecs);
        }
        if !structure.is_square() {
            return Err(Error::NonSquareStructure {
                rows: structure.rows(),
                cols: structure.cols(),
            });
        }
        if structure.rows() == 0 {
            return Err(Error::EmptyStructure);
        }
        Ok(EvolutionAlgebra {
            structure: Arc::new(structure),
        })
    }

    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        EvolutionAlgebra::new(spec, Matrix::from_i64_rows(spec, rows)?)
    }

    pub fn spec(&self) -> FieldSpec {
        self.structure.spec()
    }

    pub fn dim(&self) -> usize {
        self.structure.rows()
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    /// The structure constant `a_ij`, 1-based.
    pub fn constant(&self, i: usize, j: usize) -> &Scalar {
        self.structure.get(i - 1, j - 1)
    }

    /// True iff the structure matrix is non-singular (within tolerance over the reals).
    pub fn is_regular(&self) -> bool {
        !self
            .structure
            .determinant()
            .expect("square structure")
            .is_zero()
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| c.spec() != self.spec()) {
            return Err(Error::MixedFieldSpecs);
        }
        Ok(Element {
            algebra: self.clone(),
            coords,
        })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(
            coords
                .iter()
                .map(|&c| Scalar::from_i64(self.spec(), c))
                .collect(),
        )
    }

    /// Parses `"c1,c2,...,cn"`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.element(crate::field::parse_vector(text, self.spec())?)
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            coords: vec![Scalar::zero(self.spec()); self.dim()],
        }
    }

    /// The natural basis vector `e_i`, 1-based.
    pub fn basis_vector(&self, i: usize) -> Result<Element> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        let mut e = self.zero();
        e.coords[i - 1] = Scalar::one(self.spec());
        Ok(e)
    }

    pub fn same_as(&self, other: &EvolutionAlgebra) -> bool {
        Arc::ptr_eq(&self.structure, &other.structure) || self.structure == other.structure
    }
}

impl PartialEq for EvolutionAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Element {
    pub fn algebra(&self) -> &EvolutionAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    /// `uv = Σ u_i v_i e_i²`.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let spec = self.algebra.spec();
        let s = self.algebra.structure();
        let mut out = vec![Scalar::zero(spec); self.coords.len()];
        for (i, (a, b)) in self.coords.iter().zip(&other.coords).enumerate() {
            let w = a * b;
            if w.is_zero() {
                continue;
            }
            for (o, sij) in out.iter_mut().zip(s.row(i)) {
                *o = &*o + &(&w * sij);
            }
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            coords: out,
        })
    }

    pub fn square(&self) -> Element {
        self.multiply(self).expect("same algebra")
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Element {
            algebra: self.algebra.clone(),
            coords,
        })
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        let coords = self.coords.iter().map(|a| a * k).collect();
        Element {
            algebra: self.algebra.clone(),
            coords,
        }
    }

    /// Indices with a nonzero coordinate (tolerance-based over the reals).
    pub fn support(&self) -> Support {
        Support(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coords == other.coords
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        write!(f, "({})", cells.join(", "))
    }
}

impl Support {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_disjoint(&self, other: &Support) -> bool {
        // both sorted
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", cells.join(","))
    }
}
