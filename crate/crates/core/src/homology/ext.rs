use crate::linalg::{Mat, QuotientMap, RowSpace};
use crate::module::{direct_sum, ModuleMorphism, RightModule};
use crate::Result;

use super::hom::{hom_space, HomSpace};
use super::projective::syzygy;

/// `Ext¹(M, N) = coker(Hom(P, N) → Hom(ΩM, N))` for `0 → ΩM → P → M → 0`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    /// `ΩM → P`.
    pub inclusion: ModuleMorphism,
    /// `P → M`.
    pub cover: ModuleMorphism,
    /// `Hom(ΩM, N)`; classes are represented by its elements.
    pub cocycles: HomSpace,
    /// Restrictions of maps `P → N`, in cocycle coordinates.
    pub coboundaries: RowSpace,
    quotient: QuotientMap,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// A cocycle `ΩM → N` representing the `i`-th basis class.
    pub fn representative(&self, i: usize) -> Mat {
        self.cocycles.element(&self.quotient.section.row(i))
    }

    /// Class of a cocycle `ΩM → N`.
    pub fn class_of(&self, cocycle: &Mat) -> Option<Mat> {
        Some(&self.cocycles.coords(cocycle)? * &self.quotient.proj)
    }

    /// The extension `0 → N → E → M → 0` for a class, as a pushout of the
    /// presentation along a representative.
    pub fn extension(&self, class: &Mat) -> Result<Extension> {
        let xi = self.cocycles.element(&(class * &self.quotient.section));
        let n = self.cocycles.target().clone();
        let p = self.cover.source().clone();
        let m = self.cover.target().clone();
        let f = n.field();
        let sum = direct_sum(n.algebra(), &[&p, &n])?;
        let rel = Mat::hstack(f, xi.rows(), &[self.inclusion.matrix(), &xi.neg()]);
        let (module, proj) = sum.module.quotient(&RowSpace::span(&rel))?;
        let inclusion = sum.injections[1].then(&proj)?;
        let qm = RowSpace::span(&rel).quotient_map();
        let to_m = Mat::vstack(f, m.dim(), &[self.cover.matrix(), &Mat::zeros(f, n.dim(), m.dim())]);
        let projection = ModuleMorphism::new_unchecked(&module, &m, &qm.section * &to_m);
        Ok(Extension { module, inclusion, projection })
    }
}

/// A short exact sequence `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: RightModule,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

impl Extension {
    /// Whether the sequence splits, i.e. the projection has a section.
    pub fn splits(&self) -> Result<bool> {
        let m = self.projection.target();
        let hom = hom_space(m, &self.module)?;
        Ok(super::hom::factor_through(&hom, self.projection.matrix(), &Mat::identity(m.field(), m.dim())).is_some())
    }
}

pub fn ext1(m: &RightModule, n: &RightModule) -> Result<Ext1> {
    m.require_same_algebra(n)?;
    let s = syzygy(m)?;
    ext1_from(&s.inclusion, &s.cover.map, n)
}

/// `Ext¹` computed from any presentation `0 → K → P → M → 0` with `P`
/// projective.
pub fn ext1_from(inclusion: &ModuleMorphism, cover: &ModuleMorphism, n: &RightModule) -> Result<Ext1> {
    let f = n.field();
    let cocycles = hom_space(inclusion.source(), n)?;
    let hp = hom_space(inclusion.target(), n)?;
    let inc = inclusion.matrix();
    let rows: Vec<Mat> = hp
        .basis()
        .iter()
        .map(|h| cocycles.coords(&(inc * h)).expect("restriction is a homomorphism"))
        .collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let coboundaries = RowSpace::span(&Mat::vstack(f, cocycles.dim(), &refs));
    let quotient = coboundaries.quotient_map();
    Ok(Ext1 { inclusion: inclusion.clone(), cover: cover.clone(), cocycles, coboundaries, quotient })
}

/// `dim Ext^i(M, N)` via `Ext^i(M, N) = Ext¹(Ω^{i-1} M, N)`.
pub fn ext_dim(m: &RightModule, n: &RightModule, degree: usize) -> Result<usize> {
    if degree == 0 {
        return Ok(hom_space(m, n)?.dim());
    }
    let mut cur = m.clone();
    for _ in 1..degree {
        cur = syzygy(&cur)?.module;
    }
    Ok(ext1(&cur, n)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, QuiverPresentation};
    use crate::homology::{projective_cover, simple_module};
    use crate::linalg::Field;
    use std::sync::Arc;

    #[test]
    fn ext_between_simples_of_a2() {
        for f in [Field::Rational, Field::Prime(2)] {
            let a = Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(2)).unwrap());
            let s1 = simple_module(&a, 0).unwrap();
            let s2 = simple_module(&a, 1).unwrap();
            let e = ext1(&s1, &s2).unwrap();
            assert_eq!(e.dim(), 1);
            assert_eq!(ext1(&s2, &s1).unwrap().dim(), 0);
            assert_eq!(ext_dim(&s1, &s2, 2).unwrap(), 0);
            let ext = e.extension(&Mat::from_i64(f, &[&[1]])).unwrap();
            assert_eq!(ext.module.dim(), 2);
            assert!(!ext.splits().unwrap());
            let trivial = e.extension(&Mat::from_i64(f, &[&[0]])).unwrap();
            assert!(trivial.splits().unwrap());
        }
    }

    #[test]
    fn presentation_independence() {
        // the same Ext from P(M) ⊕ A → M
        let f = Field::Rational;
        let q = QuiverPresentation::linear(3).relation(vec![(f.one(), vec![0, 1])]);
        let a = Arc::new(Algebra::path_algebra(f, &q).unwrap());
        let s1 = simple_module(&a, 0).unwrap();
        let s3 = simple_module(&a, 2).unwrap();
        let cover = projective_cover(&s1).unwrap();
        let reg = RightModule::regular(&a);
        let big = crate::module::direct_sum(&a, &[cover.module(), &reg]).unwrap();
        let map = Mat::vstack(f, s1.dim(), &[cover.map.matrix(), &Mat::zeros(f, reg.dim(), s1.dim())]);
        let pmap = ModuleMorphism::new(&big.module, &s1, map).unwrap();
        let (_, inc) = pmap.kernel();
        for n in [&s1, &s3, &reg] {
            assert_eq!(ext1_from(&inc, &pmap, n).unwrap().dim(), ext1(&s1, n).unwrap().dim());
        }
        assert_eq!(ext_dim(&s1, &s3, 2).unwrap(), 1);
    }
}
