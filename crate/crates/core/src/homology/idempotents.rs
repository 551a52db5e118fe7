use std::sync::Arc;

use crate::algebra::Algebra;
use crate::decompose::{split_by_endomorphisms, Split};
use crate::linalg::{Mat, RowSpace};
use crate::{Error, Result};

/// A complete set of primitive orthogonal idempotents, grouped by the
/// isomorphism class of `e_i A`.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub complete: Vec<Mat>,
    pub class_of: Vec<usize>,
    /// One index into `complete` per class, in class order.
    pub basic: Vec<usize>,
}

impl Idempotents {
    /// Number of simple modules.
    pub fn classes(&self) -> usize {
        self.basic.len()
    }

    /// The representative idempotent of class `c`.
    pub fn representative(&self, c: usize) -> &Mat {
        &self.complete[self.basic[c]]
    }
}

pub fn idempotents(alg: &Algebra) -> Result<&Idempotents> {
    alg.idempotents.get_or_init(|| compute(alg)).as_ref().map_err(|e| e.clone())
}

/// Idempotents used to block-decompose hom computations; just the unit if
/// the primitive ones are unavailable.
pub fn block_idempotents(alg: &Arc<Algebra>) -> Vec<Mat> {
    match idempotents(alg) {
        Ok(i) => i.complete.clone(),
        Err(_) => vec![alg.unit().clone()],
    }
}

fn compute(alg: &Algebra) -> Result<Idempotents> {
    if let Some(q) = alg.quiver() {
        let complete: Vec<Mat> = (0..q.vertices).map(|v| alg.basis_vector(q.vertex_index(v))).collect();
        let n = complete.len();
        return Ok(Idempotents { complete, class_of: (0..n).collect(), basic: (0..n).collect() });
    }
    let mut done = Vec::new();
    let mut stack = vec![alg.unit().clone()];
    while let Some(e) = stack.pop() {
        match split_idempotent(alg, &e)? {
            Some(parts) => stack.extend(parts.into_iter().rev()),
            None => done.push(e),
        }
    }
    let j = alg.radical()?.clone();
    let mut basic: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(done.len());
    for i in 0..done.len() {
        let c = basic.iter().position(|&r| projectives_isomorphic(alg, &j, &done[i], &done[r]));
        match c {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(basic.len());
                basic.push(i);
            }
        }
    }
    Ok(Idempotents { complete: done, class_of, basic })
}

/// `{e·x·f}` for `x` ranging over the basis.
fn corner(alg: &Algebra, e: &Mat, f: &Mat) -> RowSpace {
    let rows: Vec<Mat> = (0..alg.dim()).map(|i| alg.mul(&alg.mul(e, &alg.basis_vector(i)), f)).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    RowSpace::span(&Mat::vstack(alg.field(), alg.dim(), &refs))
}

/// Splits `e` into orthogonal idempotents via a Fitting decomposition of
/// `eA` under left multiplication by `eAe`; `None` if `eA` is
/// indecomposable.
fn split_idempotent(alg: &Algebra, e: &Mat) -> Result<Option<Vec<Mat>>> {
    let f = alg.field();
    let ea = RowSpace::span(&alg.left_mult(e));
    let eae = corner(alg, e, e);
    let restrict = |x: &Mat| -> Mat {
        let img = ea.basis() * &alg.left_mult(x);
        ea.coords(&img).expect("eA is stable under left multiplication by eAe")
    };
    let mats: Vec<Mat> = (0..eae.dim()).map(|i| restrict(&eae.basis().row(i))).collect();
    let parts = match split_by_endomorphisms(f, ea.dim(), &mats)? {
        Split::Parts(p) => p,
        Split::Indecomposable => return Ok(None),
        Split::Undecided(why) => return Err(Error::Undecided(format!("primitive idempotents: {why}"))),
    };
    // coordinates of e in eA, split along the direct sum
    let ce = ea.coords(e).expect("e lies in eA");
    let bases: Vec<&Mat> = parts.iter().map(|p| p.basis()).collect();
    let q = Mat::vstack(f, ea.dim(), &bases);
    let split = &ce * &q.inverse().expect("Fitting components form a direct sum");
    let mut out = Vec::with_capacity(parts.len());
    let mut off = 0;
    for p in &parts {
        let c = split.submatrix(0, 1, off, off + p.dim());
        off += p.dim();
        out.push(&(&c * p.basis()) * ea.basis());
    }
    Ok(Some(out))
}

/// `eA ≅ fA` iff `y·x ∉ J` for some `x ∈ fAe`, `y ∈ eAf`.
fn projectives_isomorphic(alg: &Algebra, j: &RowSpace, e: &Mat, f: &Mat) -> bool {
    let fae = corner(alg, f, e);
    let eaf = corner(alg, e, f);
    for a in 0..fae.dim() {
        for b in 0..eaf.dim() {
            let prod = alg.mul(&eaf.basis().row(b), &fae.basis().row(a));
            if !j.contains(&prod) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;
    use crate::linalg::Field;

    fn plain(alg: &Algebra) -> Algebra {
        let right = (0..alg.dim()).map(|j| alg.right_basis(j).clone()).collect();
        Algebra::new(alg.field(), alg.labels().to_vec(), right, alg.unit().clone()).unwrap()
    }

    #[test]
    fn structure_constant_copy_of_a3() {
        for f in [Field::Rational, Field::Prime(2)] {
            let a3 = Algebra::path_algebra(f, &QuiverPresentation::linear(3)).unwrap();
            let p = plain(&a3);
            let id = idempotents(&p).unwrap();
            assert_eq!(id.complete.len(), 3);
            assert_eq!(id.classes(), 3);
            let mut sum = Mat::zeros(f, 1, p.dim());
            for (i, e) in id.complete.iter().enumerate() {
                assert_eq!(&p.mul(e, e), e);
                for (k, g) in id.complete.iter().enumerate() {
                    if i != k {
                        assert!(p.mul(e, g).is_zero());
                    }
                }
                sum = &sum + e;
            }
            assert_eq!(&sum, p.unit());
        }
    }

    #[test]
    fn matrix_algebra_has_one_class() {
        // M_2(Q) with basis e11, e12, e21, e22
        let f = Field::Rational;
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut c = vec![vec![vec![f.zero(); 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    c[idx(i, j)][idx(j, k)][idx(i, k)] = f.one();
                }
            }
        }
        let labels = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        let m2 = Algebra::from_structure_constants(f, labels, &c, &[f.one(), f.zero(), f.zero(), f.one()]).unwrap();
        let id = idempotents(&m2).unwrap();
        assert_eq!(id.complete.len(), 2);
        assert_eq!(id.classes(), 1);
    }
}
