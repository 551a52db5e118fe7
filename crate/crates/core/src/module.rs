//! Right modules as matrix representations, and their morphisms.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::linalg::{Field, Mat, RowSpace};
use crate::{Error, Result};

/// A right module over `algebra`: one `dim × dim` matrix per basis element,
/// acting on row vectors.
#[derive(Clone)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Arc<Vec<Mat>>,
}

impl RightModule {
    /// Checks `action(1) = I` and `A_i·A_j = Σ_k c_ijk A_k`.
    pub fn new(algebra: &Arc<Algebra>, action: Vec<Mat>) -> Result<RightModule> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.field() != algebra.field() {
                return Err(crate::KernelError::FieldMismatch { expected: algebra.field(), found: m.field() }.into());
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule("action matrices have inconsistent shapes".into()));
            }
        }
        let m = RightModule::new_unchecked(algebra, dim, action);
        m.check_law()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, dim: usize, action: Vec<Mat>) -> RightModule {
        debug_assert_eq!(action.len(), algebra.dim());
        RightModule { algebra: algebra.clone(), dim, action: Arc::new(action) }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> RightModule {
        let f = algebra.field();
        RightModule::new_unchecked(algebra, 0, vec![Mat::zeros(f, 0, 0); algebra.dim()])
    }

    /// The module `A_A`, acting by right multiplication.
    pub fn regular(algebra: &Arc<Algebra>) -> RightModule {
        let action = (0..algebra.dim()).map(|j| algebra.right_basis(j).clone()).collect();
        RightModule::new_unchecked(algebra, algebra.dim(), action)
    }

    /// A quiver representation: a space of dimension `dims[v]` at each vertex
    /// and a `dims[s] × dims[t]` matrix for each arrow `s → t`.
    pub fn from_representation(algebra: &Arc<Algebra>, dims: &[usize], arrows: &[Mat]) -> Result<RightModule> {
        let q = algebra
            .quiver()
            .ok_or_else(|| Error::InvalidModule("representation data needs a quiver algebra".into()))?;
        if dims.len() != q.vertices || arrows.len() != q.arrows.len() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dimensions and {} arrow matrices",
                q.vertices,
                q.arrows.len()
            )));
        }
        let f = algebra.field();
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, d| { let o = *acc; *acc += d; Some(o) }).collect();
        let total: usize = dims.iter().sum();
        for (a, (label, s, t)) in q.arrows.iter().enumerate() {
            if arrows[a].shape() != (dims[*s], dims[*t]) {
                return Err(Error::InvalidModule(format!(
                    "arrow {label} needs a {}x{} matrix, got {}x{}",
                    dims[*s],
                    dims[*t],
                    arrows[a].rows(),
                    arrows[a].cols()
                )));
            }
            if arrows[a].field() != f {
                return Err(crate::KernelError::FieldMismatch { expected: f, found: arrows[a].field() }.into());
            }
        }
        let mut action = Vec::with_capacity(algebra.dim());
        for (s, t, word) in &q.paths {
            let mut m = Mat::zeros(f, total, total);
            let mut block = Mat::identity(f, dims[*s]);
            for &a in word {
                block = &block * &arrows[a];
            }
            m.paste(offsets[*s], offsets[*t], &block);
            action.push(m);
        }
        RightModule::new(algebra, action)
            .map_err(|e| Error::InvalidModule(format!("representation violates the relations ({e})")))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, j: usize) -> &Mat {
        &self.action[j]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix of `m ↦ m·x` for an algebra element `x` (a row vector).
    pub fn act(&self, x: &Mat) -> Mat {
        let coeffs = x.entries();
        let mats: Vec<&Mat> = self.action.iter().collect();
        Mat::linear_combination(self.field(), self.dim, self.dim, &coeffs, &mats)
    }

    pub fn check_law(&self) -> Result<()> {
        let alg = &self.algebra;
        if !self.act(alg.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = &self.action[i] * &self.action[j];
                let prod = alg.right_basis(j).row(i);
                if lhs != self.act(&prod) {
                    return Err(Error::InvalidModule(format!(
                        "module law fails for {} · {}",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn same_algebra(&self, other: &RightModule) -> bool {
        same_algebra(&self.algebra, &other.algebra)
    }

    pub(crate) fn require_same_algebra(&self, other: &RightModule) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Same module over an equal algebra held by a different pointer.
    pub fn rebase(&self, algebra: &Arc<Algebra>) -> Result<RightModule> {
        if !same_algebra(&self.algebra, algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(RightModule { algebra: algebra.clone(), dim: self.dim, action: self.action.clone() })
    }

    /// Smallest action-closed subspace containing the rows of `gens`.
    pub fn closure(&self, gens: &Mat) -> RowSpace {
        let f = self.field();
        let mut span = RowSpace::span(gens);
        let gen_idx = self.algebra.generators().to_vec();
        loop {
            let mut rows = vec![span.basis().clone()];
            for &g in &gen_idx {
                rows.push(span.basis() * &self.action[g]);
            }
            let refs: Vec<&Mat> = rows.iter().collect();
            let next = RowSpace::span(&Mat::vstack(f, self.dim, &refs));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_submodule(&self, space: &RowSpace) -> bool {
        self.algebra.generators().iter().all(|&g| space.contains_space(&space.image_under(&self.action[g])))
    }

    /// The module structure on an action-closed subspace, with its inclusion.
    pub fn restrict(&self, space: &RowSpace) -> Result<(RightModule, ModuleMorphism)> {
        if space.ambient() != self.dim {
            return Err(Error::InvalidModule("subspace of the wrong ambient dimension".into()));
        }
        let b = space.basis();
        let mut action = Vec::with_capacity(self.action.len());
        for a in self.action.iter() {
            let img = b * a;
            let c = space
                .coords(&img)
                .ok_or_else(|| Error::InvalidModule("subspace is not closed under the action".into()))?;
            action.push(c);
        }
        let sub = RightModule::new_unchecked(&self.algebra, space.dim(), action);
        let inc = ModuleMorphism::new_unchecked(&sub, self, b.clone());
        Ok((sub, inc))
    }

    /// The submodule generated by the rows of `gens`, with inclusion.
    pub fn submodule(&self, gens: &Mat) -> (RightModule, ModuleMorphism) {
        let space = self.closure(gens);
        self.restrict(&space).expect("closure is a submodule")
    }

    /// `M / U` on the complement coordinates, with the projection.
    pub fn quotient(&self, space: &RowSpace) -> Result<(RightModule, ModuleMorphism)> {
        if !self.is_submodule(space) {
            return Err(Error::InvalidModule("quotient by a subspace that is not a submodule".into()));
        }
        let qm = space.quotient_map();
        let action = self.action.iter().map(|a| qm.induced(a)).collect();
        let quo = RightModule::new_unchecked(&self.algebra, qm.dim(), action);
        let proj = ModuleMorphism::new_unchecked(self, &quo, qm.proj.clone());
        Ok((quo, proj))
    }

    /// `{a ∈ A : M·a = 0}`.
    pub fn annihilator(&self) -> RowSpace {
        let f = self.field();
        let flat: Vec<Mat> = self.action.iter().map(|a| a.flatten()).collect();
        let refs: Vec<&Mat> = flat.iter().collect();
        let stacked = Mat::vstack(f, self.dim * self.dim, &refs);
        RowSpace::span(&stacked.left_kernel())
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().dim() == 0
    }

    /// `M·U` for a subspace `U` of the algebra (e.g. `MJ`).
    pub fn times_space(&self, u: &RowSpace) -> RowSpace {
        let f = self.field();
        let rows: Vec<Mat> = (0..u.dim()).map(|r| self.act(&u.basis().row(r))).collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        RowSpace::span(&Mat::vstack(f, self.dim, &refs))
    }

    /// `M·x` for one algebra element.
    pub fn times_element(&self, x: &Mat) -> RowSpace {
        RowSpace::span(&self.act(x))
    }

    /// The same module with every action matrix conjugated by `p` (new basis
    /// vectors are the rows of `p`).
    pub fn change_basis(&self, p: &Mat) -> Result<(RightModule, ModuleMorphism)> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidModule("base change is not invertible".into()))?;
        let action = self.action.iter().map(|a| &(p * a) * &inv).collect();
        let m = RightModule::new_unchecked(&self.algebra, self.dim, action);
        let iso = ModuleMorphism::new_unchecked(&m, self, p.clone());
        Ok((m, iso))
    }
}

impl PartialEq for RightModule {
    fn eq(&self, other: &RightModule) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule[dim {} over {:?}]", self.dim, self.algebra)
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: RightModule,
    pub injections: Vec<ModuleMorphism>,
    pub projections: Vec<ModuleMorphism>,
}

/// `⊕ ms` with block-diagonal actions. The empty sum is the zero module.
pub fn direct_sum(algebra: &Arc<Algebra>, ms: &[&RightModule]) -> Result<DirectSum> {
    for m in ms {
        if !same_algebra(m.algebra(), algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let f = algebra.field();
    let total: usize = ms.iter().map(|m| m.dim()).sum();
    let action = (0..algebra.dim())
        .map(|j| {
            let blocks: Vec<&Mat> = ms.iter().map(|m| m.action(j)).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let module = RightModule::new_unchecked(algebra, total, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        let mut inj = Mat::zeros(f, m.dim(), total);
        inj.paste(0, off, &Mat::identity(f, m.dim()));
        projections.push(ModuleMorphism::new_unchecked(&module, m, inj.transpose()));
        injections.push(ModuleMorphism::new_unchecked(m, &module, inj));
        off += m.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

/// `M^n`.
pub fn power(m: &RightModule, n: usize) -> RightModule {
    let parts = vec![m; n];
    direct_sum(m.algebra(), &parts).expect("same algebra").module
}

/// A module homomorphism `m ↦ m·matrix`.
#[derive(Clone)]
pub struct ModuleMorphism {
    source: RightModule,
    target: RightModule,
    matrix: Mat,
}

impl ModuleMorphism {
    /// Checks shapes and `A^M_a·F = F·A^N_a` for all generators `a`.
    pub fn new(source: &RightModule, target: &RightModule, matrix: Mat) -> Result<ModuleMorphism> {
        source.require_same_algebra(target)?;
        if matrix.shape() != (source.dim(), target.dim()) {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if matrix.field() != source.field() {
            return Err(crate::KernelError::FieldMismatch { expected: source.field(), found: matrix.field() }.into());
        }
        let m = ModuleMorphism::new_unchecked(source, target, matrix);
        if !m.intertwines() {
            return Err(Error::InvalidMorphism("matrix does not commute with the action".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: &RightModule, target: &RightModule, matrix: Mat) -> ModuleMorphism {
        debug_assert_eq!(matrix.shape(), (source.dim(), target.dim()));
        ModuleMorphism { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn intertwines(&self) -> bool {
        let alg = self.source.algebra().clone();
        alg.generators()
            .iter()
            .all(|&g| self.source.action(g) * &self.matrix == &self.matrix * self.target.action(g))
    }

    pub fn identity(m: &RightModule) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(m, m, Mat::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &RightModule, target: &RightModule) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(source, target, Mat::zeros(source.field(), source.dim(), target.dim()))
    }

    pub fn source(&self) -> &RightModule {
        &self.source
    }

    pub fn target(&self) -> &RightModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target.dim() != next.source.dim() || !self.target.same_algebra(&next.source) {
            return Err(Error::InvalidMorphism("composition of non-composable morphisms".into()));
        }
        Ok(ModuleMorphism::new_unchecked(&self.source, &next.target, &self.matrix * &next.matrix))
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        Ok(ModuleMorphism::new_unchecked(&self.source, &self.target, self.matrix.try_add(&other.matrix)?))
    }

    pub fn scale(&self, s: &crate::Scalar) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(&self.source, &self.target, self.matrix.scale(s))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMorphism> {
        let inv = self.matrix.inverse()?;
        Some(ModuleMorphism::new_unchecked(&self.target, &self.source, inv))
    }

    pub fn kernel_space(&self) -> RowSpace {
        RowSpace::span(&self.matrix.left_kernel())
    }

    pub fn image_space(&self) -> RowSpace {
        RowSpace::span(&self.matrix)
    }

    pub fn kernel(&self) -> (RightModule, ModuleMorphism) {
        self.source.restrict(&self.kernel_space()).expect("kernel is a submodule")
    }

    pub fn image(&self) -> (RightModule, ModuleMorphism) {
        self.target.restrict(&self.image_space()).expect("image is a submodule")
    }

    pub fn cokernel(&self) -> (RightModule, ModuleMorphism) {
        self.target.quotient(&self.image_space()).expect("image is a submodule")
    }
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism[{} -> {}] {:?}", self.source.dim(), self.target.dim(), self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;

    fn a2() -> Arc<Algebra> {
        Arc::new(Algebra::path_algebra(Field::Rational, &QuiverPresentation::linear(2)).unwrap())
    }

    #[test]
    fn representations_and_submodules() {
        let a = a2();
        let f = a.field();
        let p1 = RightModule::from_representation(&a, &[1, 1], &[Mat::from_i64(f, &[&[1]])]).unwrap();
        assert_eq!(p1.dim(), 2);
        // the vector at vertex 2 spans a copy of S2
        let (sub, inc) = p1.submodule(&Mat::from_i64(f, &[&[0, 1]]));
        assert_eq!(sub.dim(), 1);
        assert!(inc.intertwines());
        let (quo, proj) = p1.quotient(&inc.image_space()).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(proj.kernel_space(), inc.image_space());
        // alpha acts as zero on the quotient S1
        let alpha = a.label_index("a1").unwrap();
        assert!(quo.action(alpha).is_zero());
        let whole = p1.closure(&Mat::identity(f, 2));
        assert_eq!(whole.dim(), 2);
        assert_eq!(p1.closure(&Mat::zeros(f, 0, 2)).dim(), 0);
    }

    #[test]
    fn direct_sum_structure_maps() {
        let a = a2();
        let f = a.field();
        let s1 = RightModule::from_representation(&a, &[1, 0], &[Mat::zeros(f, 1, 0)]).unwrap();
        let s2 = RightModule::from_representation(&a, &[0, 1], &[Mat::zeros(f, 0, 1)]).unwrap();
        let ds = direct_sum(&a, &[&s1, &s2]).unwrap();
        assert_eq!(ds.module.dim(), 2);
        for (i, p) in ds.injections.iter().zip(&ds.projections) {
            assert!(i.then(p).unwrap().matrix().is_identity());
            assert!(i.intertwines() && p.intertwines());
        }
        assert!(direct_sum(&a, &[]).unwrap().module.is_zero());
    }

    #[test]
    fn bad_representation_rejected() {
        let f = Field::Rational;
        let q = QuiverPresentation::new(1).arrow(0, 0, "x").relation(vec![(f.one(), vec![0, 0])]);
        let a = Arc::new(Algebra::path_algebra(f, &q).unwrap());
        let ok = RightModule::from_representation(&a, &[2], &[Mat::from_i64(f, &[&[0, 1], &[0, 0]])]);
        assert!(ok.is_ok());
        let bad = RightModule::from_representation(&a, &[1], &[Mat::from_i64(f, &[&[1]])]);
        assert!(bad.is_err());
    }

    #[test]
    fn morphism_must_intertwine() {
        let a = a2();
        let f = a.field();
        let p1 = RightModule::from_representation(&a, &[1, 1], &[Mat::from_i64(f, &[&[1]])]).unwrap();
        assert!(ModuleMorphism::new(&p1, &p1, Mat::from_i64(f, &[&[2, 0], &[0, 2]])).is_ok());
        // End(P1) is the field: moving the top into the socle is not a morphism
        assert!(ModuleMorphism::new(&p1, &p1, Mat::from_i64(f, &[&[0, 1], &[0, 0]])).is_err());
        let s2 = RightModule::from_representation(&a, &[0, 1], &[Mat::zeros(f, 0, 1)]).unwrap();
        assert!(ModuleMorphism::new(&s2, &p1, Mat::from_i64(f, &[&[0, 1]])).is_ok());
        assert!(ModuleMorphism::new(&p1, &s2, Mat::from_i64(f, &[&[0], &[1]])).is_err());
    }
}
