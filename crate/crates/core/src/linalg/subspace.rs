//! Subspaces of a row-vector space `k^n`, kept in reduced row echelon form.

use super::field::Field;
use super::mat::{Mat, Rref};

/// A subspace of `k^n` spanned by the rows of a reduced echelon matrix.
///
/// Because the basis is reduced, the coordinates of a vector in the span
/// are just its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl RowSpace {
    /// The span of the rows of `m`.
    pub fn span(m: &Mat) -> RowSpace {
        let Rref { reduced, pivots } = m.rref();
        RowSpace { basis: reduced, pivots }
    }

    pub fn zero(field: Field, n: usize) -> RowSpace {
        RowSpace { basis: Mat::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: Field, n: usize) -> RowSpace {
        RowSpace { basis: Mat::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Coordinates (one row per input row) of vectors assumed to lie in the
    /// span.
    pub fn coords_unchecked(&self, v: &Mat) -> Mat {
        v.select_cols(&self.pivots)
    }

    /// Coordinates of each row of `v`, or `None` if some row is outside.
    pub fn coords(&self, v: &Mat) -> Option<Mat> {
        let c = self.coords_unchecked(v);
        if &c * &self.basis == *v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &Mat) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.dim() == 0 || self.contains(&other.basis)
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        RowSpace::span(&Mat::vstack(self.field(), self.ambient(), &[&self.basis, &other.basis]))
    }

    pub fn add_rows(&self, rows: &Mat) -> RowSpace {
        RowSpace::span(&Mat::vstack(self.field(), self.ambient(), &[&self.basis, rows]))
    }

    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        let f = self.field();
        let n = self.ambient();
        if self.dim() == 0 || other.dim() == 0 {
            return RowSpace::zero(f, n);
        }
        // x·A = y·B  <=>  (x, -y) in left kernel of [A; B]
        let stacked = Mat::vstack(f, n, &[&self.basis, &other.basis]);
        let k = stacked.left_kernel();
        let xs = k.submatrix(0, k.rows(), 0, self.dim());
        RowSpace::span(&(&xs * &self.basis))
    }

    /// The projection `k^n → k^n / self` in coordinates on the non-pivot
    /// columns.
    pub fn quotient_map(&self) -> QuotientMap {
        let f = self.field();
        let n = self.ambient();
        let free: Vec<usize> = (0..n).filter(|j| !self.pivots.contains(j)).collect();
        let q = free.len();
        let mut proj = Mat::zeros(f, n, q);
        for (k, &j) in free.iter().enumerate() {
            proj.set(j, k, &f.one());
        }
        // e_p ≡ e_p - row(p) = -(non-pivot part of row(p))
        for (i, &p) in self.pivots.iter().enumerate() {
            for (k, &j) in free.iter().enumerate() {
                if !self.basis.is_zero_at(i, j) {
                    proj.set(p, k, &self.basis.get(i, j).neg());
                }
            }
        }
        let mut section = Mat::zeros(f, q, n);
        for (k, &j) in free.iter().enumerate() {
            section.set(k, j, &f.one());
        }
        QuotientMap { proj, section }
    }

    /// Image of the subspace under right multiplication by `m`.
    pub fn image_under(&self, m: &Mat) -> RowSpace {
        RowSpace::span(&(&self.basis * m))
    }

    /// `{v in self : v·m = 0}`.
    pub fn kernel_within(&self, m: &Mat) -> RowSpace {
        let f = self.field();
        if self.dim() == 0 {
            return self.clone();
        }
        let img = &self.basis * m;
        let k = img.left_kernel();
        if k.rows() == 0 {
            return RowSpace::zero(f, self.ambient());
        }
        RowSpace::span(&(&k * &self.basis))
    }
}

/// Canonical projection onto a quotient space together with a linear
/// section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `n × q`: row vector `v` maps to `v · proj`.
    pub proj: Mat,
    /// `q × n`: picks the representative supported on non-pivot columns.
    pub section: Mat,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.proj.cols()
    }

    /// Induced endomorphism of the quotient for an `n × n` map preserving
    /// the subspace.
    pub fn induced(&self, m: &Mat) -> Mat {
        &(&self.section * m) * &self.proj
    }
}

/// The rows `v` with `v·m = 0`.
pub fn row_kernel(m: &Mat) -> RowSpace {
    RowSpace::span(&m.left_kernel())
}

/// Row space of `m` (image of `v ↦ v·m`).
pub fn row_image(m: &Mat) -> RowSpace {
    RowSpace::span(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let u = RowSpace::span(&Mat::from_i64(q(), &[&[1, 1, 0], &[0, 2, 2]]));
        let qm = u.quotient_map();
        assert_eq!(qm.dim(), 1);
        assert!((&u.basis().clone() * &qm.proj).is_zero());
        // section then projection is the identity on the quotient
        assert!((&qm.section * &qm.proj).is_identity());
    }

    #[test]
    fn intersection_dimension() {
        let a = RowSpace::span(&Mat::from_i64(q(), &[&[1, 0, 0], &[0, 1, 0]]));
        let b = RowSpace::span(&Mat::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1]]));
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&Mat::from_i64(q(), &[&[0, 5, 0]])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn coordinates_in_reduced_basis() {
        let u = RowSpace::span(&Mat::from_i64(q(), &[&[2, 4, 0], &[0, 0, 3]]));
        let v = Mat::from_i64(q(), &[&[1, 2, 7]]);
        let c = u.coords(&v).unwrap();
        assert_eq!(&c * u.basis(), v);
        assert!(u.coords(&Mat::from_i64(q(), &[&[1, 0, 0]])).is_none());
    }
}
