//! Dense exact matrices.
//!
//! Storage is specialised per field (arbitrary-precision rationals or `u32`
//! residues) and every algorithm is written once against the private
//! [`Arith`] trait.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::field::{add_mod, inv_mod, mul_mod, sub_mod, Field, Scalar};
use super::KernelError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Store {
    Q(Vec<BigRational>),
    P(Vec<u32>),
}

/// A `rows × cols` matrix over a single exact field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    store: Store,
}

pub(crate) trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    #[allow(dead_code)]
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn wrap(&self, v: Vec<Self::E>) -> Store;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn lift(&self, s: &Scalar) -> Self::E;

    /// `dst -= c * src`
    fn sub_scaled(&self, dst: &mut [Self::E], src: &[Self::E], c: &Self::E) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(c, s));
            }
        }
    }

    fn scale_in_place(&self, row: &mut [Self::E], c: &Self::E) {
        for x in row.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, c);
            }
        }
    }
}

pub(crate) struct QArith;
pub(crate) struct PArith(pub u32);

impl Arith for QArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn wrap(&self, v: Vec<BigRational>) -> Store {
        Store::Q(v)
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Arith for PArith {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        add_mod(*a, *b, self.0)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        sub_mod(*a, *b, self.0)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        mul_mod(*a, *b, self.0)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.0)
    }
    fn wrap(&self, v: Vec<u32>) -> Store {
        Store::P(v)
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Mod { value: *a, modulus: self.0 }
    }
    fn lift(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Mod { value, modulus } if *modulus == self.0 => *value,
            _ => panic!("scalar field mismatch"),
        }
    }

    fn sub_scaled(&self, dst: &mut [u32], src: &[u32], c: &u32) {
        let p = self.0 as u64;
        let c = *c as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                let t = (c * *s as u64) % p;
                *d = ((*d as u64 + p - t) % p) as u32;
            }
        }
    }
}

/// Dispatches `$body` with `$ar` bound to the arithmetic and `$v` to the
/// entry slice of `$m`.
macro_rules! dispatch {
    ($m:expr, |$ar:ident, $v:ident| $body:expr) => {
        match &$m.store {
            Store::Q($v) => {
                let $ar = &QArith;
                $body
            }
            Store::P($v) => {
                let $ar = &PArith($m.field.characteristic());
                $body
            }
        }
    };
}

/// As [`dispatch!`] for two matrices over the same field.
macro_rules! dispatch2 {
    ($a:expr, $b:expr, |$ar:ident, $x:ident, $y:ident| $body:expr) => {
        match (&$a.store, &$b.store) {
            (Store::Q($x), Store::Q($y)) => {
                let $ar = &QArith;
                $body
            }
            (Store::P($x), Store::P($y)) => {
                let $ar = &PArith($a.field.characteristic());
                $body
            }
            _ => unreachable!("field checked by caller"),
        }
    };
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    /// The reduced row echelon form with zero rows removed.
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    fn from_parts(field: Field, rows: usize, cols: usize, store: Store) -> Mat {
        Mat { field, rows, cols, store }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        let store = match field {
            Field::Rational => Store::Q(vec![BigRational::zero(); rows * cols]),
            Field::Prime(_) => Store::P(vec![0; rows * cols]),
        };
        Mat::from_parts(field, rows, cols, store)
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one());
        }
        m
    }

    /// Builds a matrix from row-major scalars, rejecting entries from a
    /// different field.
    pub fn from_scalars(field: Field, rows: usize, cols: usize, entries: &[Scalar]) -> Result<Mat, KernelError> {
        if entries.len() != rows * cols {
            return Err(KernelError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(KernelError::FieldMismatch { expected: field, found: bad.field() });
        }
        let mut m = Mat::zeros(field, rows, cols);
        for (k, s) in entries.iter().enumerate() {
            m.set(k / cols.max(1), k % cols.max(1), s);
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.set(i, j, &field.from_i64(*v));
                }
            }
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if !s.is_zero() {
                    m.set(i, j, &s);
                }
            }
        }
        m
    }

    /// A row vector with the given entries.
    pub fn row_vector(field: Field, entries: &[Scalar]) -> Mat {
        Mat::from_scalars(field, 1, entries.len(), entries).expect("row vector field")
    }

    pub fn unit_row(field: Field, n: usize, i: usize) -> Mat {
        let mut m = Mat::zeros(field, 1, n);
        m.set(0, i, &field.one());
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R, spread: i64) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng, spread))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        dispatch!(self, |ar, v| ar.to_scalar(&v[i * self.cols + j]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &mut self.store {
            Store::Q(v) => v[k] = QArith.lift(s),
            Store::P(v) => v[k] = PArith(self.field.characteristic()).lift(s),
        }
    }

    pub fn entries(&self) -> Vec<Scalar> {
        dispatch!(self, |ar, v| v.iter().map(|x| ar.to_scalar(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(self, |ar, v| v.iter().all(|x| ar.is_zero(x)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field, self.rows)
    }

    /// Entry in position `(i, j)` is zero.
    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        dispatch!(self, |ar, v| ar.is_zero(&v[i * self.cols + j]))
    }

    fn check_field(&self, other: &Mat) -> Result<(), KernelError> {
        if self.field != other.field {
            return Err(KernelError::FieldMismatch { expected: self.field, found: other.field });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let (r, c) = (self.rows, self.cols);
        dispatch!(self, |ar, v| {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    #[allow(clippy::clone_on_copy)]
                    out.push(v[i * c + j].clone());
                }
            }
            Mat::from_parts(self.field, c, r, ar.wrap(out))
        })
    }

    /// Checked product `self · other`.
    pub fn compose(&self, other: &Mat) -> Result<Mat, KernelError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        Ok(dispatch2!(self, other, |ar, a, b| {
            let mut out = vec![ar.zero(); n * m];
            for i in 0..n {
                let orow = &mut out[i * m..(i + 1) * m];
                for t in 0..k {
                    let x = &a[i * k + t];
                    if ar.is_zero(x) {
                        continue;
                    }
                    let brow = &b[t * m..(t + 1) * m];
                    for (o, y) in orow.iter_mut().zip(brow) {
                        if !ar.is_zero(y) {
                            *o = ar.add(o, &ar.mul(x, y));
                        }
                    }
                }
            }
            Mat::from_parts(self.field, n, m, ar.wrap(out))
        }))
    }

    fn zip_with(&self, other: &Mat, sub: bool) -> Result<Mat, KernelError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(KernelError::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(dispatch2!(self, other, |ar, a, b| {
            let out = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| if sub { ar.sub(x, y) } else { ar.add(x, y) })
                .collect();
            Mat::from_parts(self.field, self.rows, self.cols, ar.wrap(out))
        }))
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, KernelError> {
        self.zip_with(other, false)
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat, KernelError> {
        self.zip_with(other, true)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        dispatch!(self, |ar, v| {
            let c = ar.lift(s);
            let out = v.iter().map(|x| ar.mul(x, &c)).collect();
            Mat::from_parts(self.field, self.rows, self.cols, ar.wrap(out))
        })
    }

    pub fn neg(&self) -> Mat {
        dispatch!(self, |ar, v| {
            let out = v.iter().map(|x| ar.neg(x)).collect();
            Mat::from_parts(self.field, self.rows, self.cols, ar.wrap(out))
        })
    }

    /// `Σ coeffs[i] · mats[i]`; all matrices must share a shape.
    pub fn linear_combination(field: Field, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[&Mat]) -> Mat {
        assert_eq!(coeffs.len(), mats.len());
        let mut acc = Mat::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &m.scale(c);
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field);
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = Mat::zeros(self.field, r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                if self.is_zero_at(i, j) {
                    continue;
                }
                let a = self.get(i, j);
                for k in 0..r2 {
                    for l in 0..c2 {
                        if other.is_zero_at(k, l) {
                            continue;
                        }
                        out.set(i * r2 + k, j * c2 + l, &a.mul(&other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column count on top of each other.
    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.paste(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.paste(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.paste(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let cols = self.cols;
        match (&mut self.store, &block.store) {
            (Store::Q(dst), Store::Q(src)) => {
                for i in 0..block.rows {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .clone_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Store::P(dst), Store::P(src)) => {
                for i in 0..block.rows {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .copy_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => panic!("matrix field mismatch"),
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let cols = self.cols;
        dispatch!(self, |ar, v| {
            let mut out = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for i in r0..r1 {
                out.extend_from_slice(&v[i * cols + c0..i * cols + c1]);
            }
            Mat::from_parts(self.field, r1 - r0, c1 - c0, ar.wrap(out))
        })
    }

    pub fn row(&self, i: usize) -> Mat {
        self.submatrix(i, i + 1, 0, self.cols)
    }

    pub fn col(&self, j: usize) -> Mat {
        self.submatrix(0, self.rows, j, j + 1)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let parts: Vec<Mat> = idx.iter().map(|&i| self.row(i)).collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        Mat::vstack(self.field, self.cols, &refs)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        self.transpose().select_rows(idx).transpose()
    }

    /// Row-major flattening into a `1 × (rows·cols)` row vector.
    pub fn flatten(&self) -> Mat {
        Mat::from_parts(self.field, 1, self.rows * self.cols, self.store.clone())
    }

    /// Inverse of [`Mat::flatten`].
    pub fn unflatten(&self, rows: usize, cols: usize) -> Mat {
        assert_eq!(self.rows * self.cols, rows * cols);
        Mat::from_parts(self.field, rows, cols, self.store.clone())
    }

    /// Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref {
        let (rows, cols) = self.shape();
        dispatch!(self, |ar, v| {
            let mut data = v.clone();
            let pivots = rref_in_place(ar, &mut data, rows, cols);
            let r = pivots.len();
            data.truncate(r * cols);
            Rref { reduced: Mat::from_parts(self.field, r, cols, ar.wrap(data)), pivots }
        })
    }

    pub fn rank(&self) -> usize {
        let (rows, cols) = self.shape();
        dispatch!(self, |ar, v| {
            let mut data = v.clone();
            rank_in_place(ar, &mut data, rows, cols)
        })
    }

    /// Basis of the right null space `{v : self · v = 0}` as rows of a
    /// matrix in reduced row echelon form.
    pub fn nullspace_rows(&self) -> Mat {
        let Rref { reduced, pivots } = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut basis = Mat::zeros(self.field, free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, &self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                if !reduced.is_zero_at(i, f) {
                    basis.set(k, p, &reduced.get(i, f).neg());
                }
            }
        }
        basis.rref().reduced
    }

    /// Right null space basis as column vectors, canonical (reduced echelon)
    /// so equal spans give equal outputs.
    pub fn kernel_basis(&self) -> Vec<Mat> {
        let rows = self.nullspace_rows();
        (0..rows.rows()).map(|i| rows.row(i).transpose()).collect()
    }

    /// Basis of the left null space `{v : v · self = 0}`, as RREF rows.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().nullspace_rows()
    }

    /// Canonical basis of the column space, as column vectors.
    pub fn image_basis(&self) -> Vec<Mat> {
        let r = self.transpose().rref().reduced;
        (0..r.rows()).map(|i| r.row(i).transpose()).collect()
    }

    /// Some `x` with `self · x = b` (`b` a column vector), or `None`.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>, KernelError> {
        self.check_field(b)?;
        if b.rows != self.rows || b.cols != 1 {
            return Err(KernelError::DimensionMismatch(format!(
                "right-hand side {}x{} for a {}x{} system",
                b.rows, b.cols, self.rows, self.cols
            )));
        }
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, 1);
        for (i, &p) in pivots.iter().enumerate() {
            x.set(p, 0, &reduced.get(i, self.cols));
        }
        Ok(Some(x))
    }

    /// Some row vector `x` with `x · self = b`, or `None`.
    pub fn solve_left(&self, b: &Mat) -> Result<Option<Mat>, KernelError> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    /// Solves `x · self = b` for every row of `b` at once; `None` if any row
    /// is inconsistent.
    pub fn solve_left_many(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.cols, self.cols);
        let aug = Mat::hstack(self.field, self.cols, &[&self.transpose(), &b.transpose()]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.rows) {
            return None;
        }
        let mut x = Mat::zeros(self.field, b.rows, self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.rows {
                if !reduced.is_zero_at(i, self.rows + j) {
                    x.set(j, p, &reduced.get(i, self.rows + j));
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entrywise reduction of a rational matrix modulo `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<Mat> {
        let f = Field::prime(p).ok()?;
        let mut out = Mat::zeros(f, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, &self.get(i, j).reduce_mod(p)?);
            }
        }
        Some(out)
    }
}

fn rref_in_place<A: Arith>(ar: &A, data: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        ar.scale_in_place(&mut data[r * cols..(r + 1) * cols], &inv);
        let pivot_row: Vec<A::E> = data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            ar.sub_scaled(&mut data[i * cols..(i + 1) * cols], &pivot_row, &f);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only.
fn rank_in_place<A: Arith>(ar: &A, data: &mut [A::E], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        ar.scale_in_place(&mut data[r * cols..(r + 1) * cols], &inv);
        let pivot_row: Vec<A::E> = data[r * cols..(r + 1) * cols].to_vec();
        for i in r + 1..rows {
            let f = data[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            ar.sub_scaled(&mut data[i * cols..(i + 1) * cols], &pivot_row, &f);
        }
        r += 1;
    }
    r
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.compose(rhs).expect("matrix product")
    }
}

impl std::ops::Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl std::ops::Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}; {}x{}](", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
