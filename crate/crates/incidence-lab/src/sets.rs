//! Subsets of the polynomial space F^k[x] and of the affine plane F x F,
//! held as sorted index lists into the canonical enumerations.
//!
//! Index storage keeps sets cheap to sample, hash, and serialize, and the
//! strictly-increasing invariant gives every set exactly one representation.
//! Interpreting an index requires the owning [`FieldSpec`], which every
//! consuming operation takes explicitly.

use crate::gf::{FieldElement, FieldSpec, FPoly, GfError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("duplicate polynomial in set")]
    DuplicatePolynomials,
    #[error("duplicate point in set")]
    DuplicatePoints,
    #[error("index {idx} out of range for a space of size {size}")]
    IndexOutOfRange { idx: u64, size: u64 },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A set of polynomials of degree < k (the "L" side of an incidence
/// instance), as strictly increasing canonical indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySet {
    k: usize,
    indices: Vec<u64>,
}

impl PolySet {
    /// Builds a set from indices into the canonical enumeration of F^k[x].
    /// The input is sorted; duplicates are an error, not a merge.
    pub fn from_indices(spec: &FieldSpec, k: usize, mut indices: Vec<u64>) -> Result<PolySet, SetError> {
        let size = spec.poly_count(k)?;
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(SetError::DuplicatePolynomials);
            }
        }
        if let Some(&last) = indices.last() {
            if last >= size {
                return Err(SetError::IndexOutOfRange { idx: last, size });
            }
        }
        Ok(PolySet { k, indices })
    }

    pub fn from_polys(spec: &FieldSpec, k: usize, polys: &[FPoly]) -> Result<PolySet, SetError> {
        let mut indices = Vec::with_capacity(polys.len());
        for f in polys {
            spec.validate_poly(f)?;
            if f.k() != k {
                return Err(SetError::Field(GfError::SpecMismatch { p: spec.p(), m: spec.m() }));
            }
            indices.push(spec.poly_index(f));
        }
        PolySet::from_indices(spec, k, indices)
    }

    /// The whole space F^k[x].
    pub fn full(spec: &FieldSpec, k: usize) -> Result<PolySet, SetError> {
        let size = spec.poly_count(k)?;
        Ok(PolySet { k, indices: (0..size).collect() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// |L|, the set size.
    pub fn len(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn iter_polys<'a>(&'a self, spec: &'a FieldSpec) -> impl Iterator<Item = FPoly> + 'a {
        self.indices.iter().map(move |&i| spec.poly_from_index(self.k, i))
    }

    /// Checks the set against a field (index range and cap), for operations
    /// that received spec and set separately.
    pub fn check(&self, spec: &FieldSpec) -> Result<(), SetError> {
        let size = spec.poly_count(self.k)?;
        if let Some(&last) = self.indices.last() {
            if last >= size {
                return Err(SetError::IndexOutOfRange { idx: last, size });
            }
        }
        Ok(())
    }
}

/// A set of points of the affine plane F x F (the "P" side), as strictly
/// increasing canonical point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    indices: Vec<u64>,
}

impl PointSet {
    pub fn from_indices(spec: &FieldSpec, mut indices: Vec<u64>) -> Result<PointSet, SetError> {
        let size = (spec.q() as u128) * (spec.q() as u128);
        spec.check_cap(size)?;
        let size = size as u64;
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(SetError::DuplicatePoints);
            }
        }
        if let Some(&last) = indices.last() {
            if last >= size {
                return Err(SetError::IndexOutOfRange { idx: last, size });
            }
        }
        Ok(PointSet { indices })
    }

    pub fn from_points(
        spec: &FieldSpec,
        points: &[(FieldElement, FieldElement)],
    ) -> Result<PointSet, SetError> {
        let mut indices = Vec::with_capacity(points.len());
        for (x, y) in points {
            spec.validate(x)?;
            spec.validate(y)?;
            indices.push(spec.point_index(x, y));
        }
        PointSet::from_indices(spec, indices)
    }

    /// The whole plane F x F.
    pub fn full(spec: &FieldSpec) -> Result<PointSet, SetError> {
        let size = (spec.q() as u128) * (spec.q() as u128);
        spec.check_cap(size)?;
        Ok(PointSet { indices: (0..size as u64).collect() })
    }

    /// |P|, the set size.
    pub fn len(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn iter_points<'a>(
        &'a self,
        spec: &'a FieldSpec,
    ) -> impl Iterator<Item = (FieldElement, FieldElement)> + 'a {
        self.indices.iter().map(move |&i| spec.point_from_index(i))
    }

    pub fn check(&self, spec: &FieldSpec) -> Result<(), SetError> {
        let size = (spec.q() as u128) * (spec.q() as u128);
        spec.check_cap(size)?;
        if let Some(&last) = self.indices.last() {
            if last as u128 >= size {
                return Err(SetError::IndexOutOfRange { idx: last, size: size as u64 });
            }
        }
        Ok(())
    }
}
