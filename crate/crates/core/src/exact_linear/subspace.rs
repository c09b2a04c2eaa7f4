use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::matrix::{rref_rows, Matrix};
use super::scalar::{format_vector, is_zero_vector, unit_vector, Scalar, Vector};
use super::LinalgError;

/// Linear subspace of `Q^n` stored by its reduced row-echelon basis.
///
/// The echelon basis is unique per subspace, so structural equality is
/// subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(), pivots: (0..ambient).collect() }
    }

    /// Canonical form of the span of `vectors`.
    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        if let Some(bad) = rows.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::DimensionMismatch { expected: ambient, found: bad.len() });
        }
        Ok(Self::span_unchecked(ambient, rows))
    }

    pub(crate) fn span_unchecked(ambient: usize, rows: Vec<Vector>) -> Self {
        let rows: Vec<Vector> = rows.into_iter().filter(|v| !is_zero_vector(v)).collect();
        let (basis, pivots) = rref_rows(rows, ambient);
        Self { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_dim(&self, found: usize) -> Result<(), LinalgError> {
        if found == self.ambient {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch { expected: self.ambient, found })
        }
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    ///
    /// Linear in `v`, zero exactly on the subspace, and constant on cosets.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -out[p].clone();
                for (o, x) in out.iter_mut().zip(row).skip(p) {
                    if !x.is_zero() {
                        *o += &c * x;
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_dim(v.len())?;
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_dim(other.ambient)?;
        Ok(other.basis.iter().all(|v| self.contains_unchecked(v)))
    }

    /// Coefficients of `v` in the canonical basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient || !self.contains_unchecked(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_dim(other.ambient)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        if other.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span_unchecked(self.ambient, rows)
    }

    /// Adds vectors to the span; vectors already inside are skipped cheaply.
    pub(crate) fn extend_with<I: IntoIterator<Item = Vector>>(&self, vectors: I) -> Subspace {
        let fresh: Vec<Vector> = vectors.into_iter().map(|v| self.reduce(&v)).filter(|v| !is_zero_vector(v)).collect();
        if fresh.is_empty() {
            return self.clone();
        }
        let rows = self.basis.iter().cloned().chain(fresh).collect();
        Subspace::span_unchecked(self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_dim(other.ambient)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        if other.is_zero() || self.is_full() {
            return other.clone();
        }
        // (A^perp + B^perp)^perp for the standard (nondegenerate) pairing
        self.orthogonal_complement().sum_unchecked(&other.orthogonal_complement()).orthogonal_complement()
    }

    /// `{x : <x, b> = 0 for every basis vector b}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.ambient, &self.basis).expect("basis rows have ambient length").kernel()
    }

    /// Standard unit vectors on the non-pivot coordinates: a canonical complement.
    pub fn complement_basis(&self) -> Vec<Vector> {
        self.free_columns().into_iter().map(|c| unit_vector(self.ambient, c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the coset `v + self` on the canonical complement.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let reduced = self.reduce(v);
        self.free_columns().into_iter().map(|c| reduced[c].clone()).collect()
    }

    /// Image of this subspace under `map`.
    pub fn image(&self, map: &Matrix) -> Result<Subspace, LinalgError> {
        self.check_dim(map.cols())?;
        Ok(Subspace::span_unchecked(map.rows(), self.basis.iter().map(|v| map.apply(v)).collect()))
    }

    /// Checks whether every basis row has the canonical echelon shape.
    pub fn is_canonical(&self) -> bool {
        self.basis.iter().zip(&self.pivots).enumerate().all(|(r, (row, &p))| {
            row[..p].iter().all(Zero::is_zero)
                && row[p].is_one()
                && self.basis.iter().enumerate().all(|(s, other)| s == r || other[p].is_zero())
        })
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient_dim", &self.ambient)?;
        st.serialize_field("rank", &self.rank())?;
        let basis: Vec<Vec<String>> = self.basis.iter().map(|v| format_vector(v)).collect();
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::scalar::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(Subspace::span(3, vec![]).unwrap().rank(), 0);
        let plane = Subspace::span(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(plane, Subspace::full(2));
        let line = Subspace::span(2, vec![v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(line.basis(), &[v(&[1, 2])]);
        assert!(matches!(
            Subspace::span(2, vec![v(&[1, 0]), v(&[1, 0, 0])]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn lattice_operations() {
        let x = Subspace::span(2, vec![v(&[1, 0])]).unwrap();
        let y = Subspace::span(2, vec![v(&[0, 1])]).unwrap();
        assert_eq!(x.sum(&Subspace::zero(2)).unwrap(), x);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert!(x.contains(&v(&[3, 0])).unwrap());
        assert!(!x.contains(&v(&[3, 1])).unwrap());
        assert!(x.contains(&v(&[3])).is_err());
        assert!(x.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn quotient_coordinates_are_coset_invariant() {
        let k = Subspace::span(3, vec![v(&[1, 1, 0])]).unwrap();
        assert_eq!(k.free_columns(), vec![1, 2]);
        assert_eq!(k.quotient_coordinates(&v(&[1, 0, 5])), k.quotient_coordinates(&v(&[2, 1, 5])));
        assert_eq!(k.coordinates(&v(&[3, 3, 0])), Some(vec![int(3)]));
        assert_eq!(k.coordinates(&v(&[3, 2, 0])), None);
    }
}
