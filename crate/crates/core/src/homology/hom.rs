use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{Field, Mat, RowSpace};
use crate::module::{ModuleMorphism, RightModule};
use crate::{Error, Result};

use super::idempotents::block_idempotents;

/// `Hom_A(M, N)` with a canonical (reduced echelon) basis of flattened
/// matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: RightModule,
    target: RightModule,
    space: RowSpace,
}

impl HomSpace {
    pub fn source(&self) -> &RightModule {
        &self.source
    }

    pub fn target(&self) -> &RightModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// The `i`-th basis morphism as a matrix.
    pub fn basis_matrix(&self, i: usize) -> Mat {
        self.space.basis().row(i).unflatten(self.source.dim(), self.target.dim())
    }

    pub fn basis(&self) -> Vec<Mat> {
        (0..self.dim()).map(|i| self.basis_matrix(i)).collect()
    }

    pub fn morphism(&self, i: usize) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(&self.source, &self.target, self.basis_matrix(i))
    }

    /// `Σ c_i f_i` for a row vector of coefficients.
    pub fn element(&self, coeffs: &Mat) -> Mat {
        (coeffs * self.space.basis()).unflatten(self.source.dim(), self.target.dim())
    }

    pub fn element_morphism(&self, coeffs: &Mat) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(&self.source, &self.target, self.element(coeffs))
    }

    /// Coefficients of a matrix in the basis, if it is a homomorphism.
    pub fn coords(&self, f: &Mat) -> Option<Mat> {
        self.space.coords(&f.flatten())
    }

    pub fn contains(&self, f: &Mat) -> bool {
        self.space.contains(&f.flatten())
    }

    /// The flattened basis as a row space of `k^{m·n}`.
    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    /// A random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> Mat {
        let c = Mat::random(self.field(), 1, self.dim(), rng, spread);
        self.element(&c)
    }
}

/// Splits `M = ⊕_e Me` along a complete set of orthogonal idempotents:
/// returns the adapted basis and the block sizes.
fn adapted_basis(m: &RightModule, idem: &[Mat]) -> (Mat, Vec<usize>) {
    let f = m.field();
    let mut parts = Vec::with_capacity(idem.len());
    let mut sizes = Vec::with_capacity(idem.len());
    for e in idem {
        let b = RowSpace::span(&m.act(e)).basis().clone();
        sizes.push(b.rows());
        parts.push(b);
    }
    let refs: Vec<&Mat> = parts.iter().collect();
    (Mat::vstack(f, m.dim(), &refs), sizes)
}

/// `Hom_A(M, N)`: block-diagonal unknowns in bases adapted to a complete set
/// of orthogonal idempotents, cut down by the generator constraints
/// `A_a·F = F·B_a`.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<HomSpace> {
    m.require_same_algebra(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(HomSpace { source: m.clone(), target: n.clone(), space: RowSpace::zero(f, dm * dn) });
    }
    let alg = m.algebra().clone();
    let idem = block_idempotents(&alg);
    let (pm, sm) = adapted_basis(m, &idem);
    let (pn, sn) = adapted_basis(n, &idem);
    let pm_inv = pm.inverse().ok_or_else(|| Error::InvalidModule("idempotents do not split the module".into()))?;
    let pn_inv = pn.inverse().ok_or_else(|| Error::InvalidModule("idempotents do not split the module".into()))?;

    // unknown entries (row, col) of the block-diagonal F'
    let mut params = Vec::new();
    let (mut om, mut on) = (0, 0);
    for (a, b) in sm.iter().zip(&sn) {
        for i in 0..*a {
            for j in 0..*b {
                params.push((om + i, on + j));
            }
        }
        om += a;
        on += b;
    }
    if params.is_empty() {
        return Ok(HomSpace { source: m.clone(), target: n.clone(), space: RowSpace::zero(f, dm * dn) });
    }

    let skip_vertices = alg.quiver().is_some();
    let gens: Vec<usize> = alg
        .generators()
        .iter()
        .copied()
        .filter(|&g| !skip_vertices || alg.quiver().is_none_or(|q| !q.paths[g].2.is_empty()))
        .collect();
    let a_new: Vec<Mat> = gens.iter().map(|&g| &(&pm * m.action(g)) * &pm_inv).collect();
    let b_new: Vec<Mat> = gens.iter().map(|&g| &(&pn * n.action(g)) * &pn_inv).collect();

    // residual of A'E_ij - E_ij B': column j gets column i of A', row i loses row j of B'
    let block = dm * dn;
    let mut c = Mat::zeros(f, params.len(), block * gens.len());
    for (p, &(i, j)) in params.iter().enumerate() {
        for (g, (a, b)) in a_new.iter().zip(&b_new).enumerate() {
            let base = g * block;
            for r in 0..dm {
                if !a.is_zero_at(r, i) {
                    let col = base + r * dn + j;
                    c.set(p, col, &c.get(p, col).add(&a.get(r, i)));
                }
            }
            for col2 in 0..dn {
                if !b.is_zero_at(j, col2) {
                    let col = base + i * dn + col2;
                    c.set(p, col, &c.get(p, col).sub(&b.get(j, col2)));
                }
            }
        }
    }
    let sol = c.left_kernel();
    let mut flat = Vec::with_capacity(sol.rows());
    for s in 0..sol.rows() {
        let mut fp = Mat::zeros(f, dm, dn);
        for (p, &(i, j)) in params.iter().enumerate() {
            if !sol.is_zero_at(s, p) {
                fp.set(i, j, &sol.get(s, p));
            }
        }
        let orig = &(&pm_inv * &fp) * &pn;
        flat.push(orig.flatten());
    }
    let refs: Vec<&Mat> = flat.iter().collect();
    let space = RowSpace::span(&Mat::vstack(f, block, &refs));
    Ok(HomSpace { source: m.clone(), target: n.clone(), space })
}

/// Maps `X → Y` for which `g ∘ h = target` (`h` followed by `g`), if any.
pub fn factor_through(hom: &HomSpace, g: &Mat, target: &Mat) -> Option<Mat> {
    let f = hom.field();
    let rows: Vec<Mat> = (0..hom.dim()).map(|i| (&hom.basis_matrix(i) * g).flatten()).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let stacked = Mat::vstack(f, target.rows() * target.cols(), &refs);
    if hom.dim() == 0 {
        return if target.is_zero() { Some(Mat::zeros(f, hom.source.dim(), hom.target.dim())) } else { None };
    }
    let x = stacked.solve_left(&target.flatten()).ok()??;
    Some(hom.element(&x))
}

/// Maps `h` with `h' ∘ h = …` solved on the other side: `h ∘ g = target`
/// (`g` followed by `h`).
pub fn factor_from(hom: &HomSpace, g: &Mat, target: &Mat) -> Option<Mat> {
    let f = hom.field();
    if hom.dim() == 0 {
        return if target.is_zero() { Some(Mat::zeros(f, hom.source.dim(), hom.target.dim())) } else { None };
    }
    let rows: Vec<Mat> = (0..hom.dim()).map(|i| (g * &hom.basis_matrix(i)).flatten()).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let stacked = Mat::vstack(f, target.rows() * target.cols(), &refs);
    let x = stacked.solve_left(&target.flatten()).ok()??;
    Some(hom.element(&x))
}

/// A `B`-`A`-bimodule: a right `A`-module with a commuting left `B`-action
/// `b·x = x·L_b`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<Algebra>,
    module: RightModule,
    left_action: Arc<Vec<Mat>>,
}

impl Bimodule {
    /// Checks the left module law and that the two actions commute.
    pub fn new(left: &Arc<Algebra>, module: &RightModule, left_action: Vec<Mat>) -> Result<Bimodule> {
        let n = module.dim();
        if left_action.len() != left.dim() || left_action.iter().any(|l| l.shape() != (n, n)) {
            return Err(Error::InvalidModule("left action has the wrong shape".into()));
        }
        let bm = Bimodule::new_unchecked(left, module, left_action);
        if !bm.act_left(left.unit()).is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity on the left".into()));
        }
        for i in 0..left.dim() {
            for j in 0..left.dim() {
                // (b_i b_j)·x = b_i·(b_j·x)
                let prod = left.right_basis(j).row(i);
                if bm.act_left(&prod) != &bm.left_action[j] * &bm.left_action[i] {
                    return Err(Error::InvalidModule("left module law fails".into()));
                }
            }
        }
        for l in bm.left_action.iter() {
            for &g in module.algebra().generators() {
                if (l * module.action(g)) != (module.action(g) * l) {
                    return Err(Error::InvalidModule("left and right actions do not commute".into()));
                }
            }
        }
        Ok(bm)
    }

    pub(crate) fn new_unchecked(left: &Arc<Algebra>, module: &RightModule, left_action: Vec<Mat>) -> Bimodule {
        Bimodule { left: left.clone(), module: module.clone(), left_action: Arc::new(left_action) }
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(algebra: &Arc<Algebra>) -> Bimodule {
        let module = RightModule::regular(algebra);
        let left = (0..algebra.dim()).map(|i| algebra.left_mult(&algebra.basis_vector(i))).collect();
        Bimodule::new_unchecked(algebra, &module, left)
    }

    /// A left `B`-module viewed as a `B`-`k`-bimodule.
    pub fn left_only(left: &Arc<Algebra>, left_action: Vec<Mat>) -> Result<Bimodule> {
        let f = left.field();
        let k = Arc::new(Algebra::base_field(f));
        let n = left_action.first().map_or(0, |m| m.rows());
        let module = RightModule::new(&k, vec![Mat::identity(f, n)])?;
        Bimodule::new(left, &module, left_action)
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn left_action(&self, i: usize) -> &Mat {
        &self.left_action[i]
    }

    pub fn left_actions(&self) -> &[Mat] {
        &self.left_action
    }

    pub fn act_left(&self, b: &Mat) -> Mat {
        let mats: Vec<&Mat> = self.left_action.iter().collect();
        Mat::linear_combination(self.module.field(), self.dim(), self.dim(), &b.entries(), &mats)
    }

    /// The left action as a right module over `B^op`.
    pub fn left_module(&self) -> RightModule {
        let op = self.left.opposite_arc();
        RightModule::new_unchecked(&op, self.dim(), self.left_action.to_vec())
    }

    /// `D(X)` as a right `B`-module: `(φ·b)(x) = φ(b·x)`.
    pub fn dual_right(&self) -> RightModule {
        let action = self.left_action.iter().map(|l| l.transpose()).collect();
        RightModule::new_unchecked(&self.left, self.dim(), action)
    }
}

/// `Hom_A(X, M)` as a right `B`-module, `(h·b)(x) = h(b·x)`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: RightModule,
    pub hom: HomSpace,
}

impl HomModule {
    /// The element of `Hom_A(X, M)` with the given coordinates.
    pub fn matrix_of(&self, coords: &Mat) -> Mat {
        self.hom.element(coords)
    }
}

pub fn hom_from_bimodule(x: &Bimodule, m: &RightModule) -> Result<HomModule> {
    let hom = hom_space(x.module(), m)?;
    let f = m.field();
    let d = hom.dim();
    let basis = hom.basis();
    let mut action = Vec::with_capacity(x.left().dim());
    for l in x.left_actions() {
        let rows: Vec<Mat> = basis
            .iter()
            .map(|h| hom.coords(&(l * h)).expect("hom space is closed under the left action"))
            .collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        action.push(Mat::vstack(f, d, &refs));
    }
    let module = RightModule::new_unchecked(x.left(), d, action);
    Ok(HomModule { module, hom })
}

/// `Hom_A(X, f)`: post-composition with `f: M → M'`.
pub fn hom_from_bimodule_map(src: &HomModule, dst: &HomModule, f: &Mat) -> ModuleMorphism {
    let fld = f.field();
    let rows: Vec<Mat> = src
        .hom
        .basis()
        .iter()
        .map(|h| dst.hom.coords(&(h * f)).expect("post-composition stays in the hom space"))
        .collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let m = Mat::vstack(fld, dst.module.dim(), &refs);
    ModuleMorphism::new_unchecked(&src.module, &dst.module, m)
}

/// `End_A(M)` as an algebra with product `s·s' = s ∘ s'` (apply `s'`
/// first), together with `M` as an `End(M)`-`A`-bimodule.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Arc<Algebra>,
    pub hom: HomSpace,
    pub bimodule: Bimodule,
}

pub fn end_algebra(m: &RightModule) -> Result<EndAlgebra> {
    let hom = hom_space(m, m)?;
    let f = m.field();
    let basis = hom.basis();
    let r = basis.len();
    let mut right = Vec::with_capacity(r);
    for fj in &basis {
        let rows: Vec<Mat> = basis.iter().map(|fi| hom.coords(&(fj * fi)).expect("closed under composition")).collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        right.push(Mat::vstack(f, r, &refs));
    }
    let unit = hom
        .coords(&Mat::identity(f, m.dim()))
        .ok_or_else(|| Error::InvalidModule("identity missing from End".into()))?;
    let labels = (1..=r).map(|i| format!("s{i}")).collect();
    let algebra = Arc::new(Algebra::new(f, labels, right, unit)?);
    let bimodule = Bimodule::new_unchecked(&algebra, m, basis);
    Ok(EndAlgebra { algebra, hom, bimodule })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;

    fn a2(f: Field) -> Arc<Algebra> {
        Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(2)).unwrap())
    }

    #[test]
    fn hom_dimensions_over_a2() {
        for f in [Field::Rational, Field::Prime(2)] {
            let a = a2(f);
            let p1 = RightModule::from_representation(&a, &[1, 1], &[Mat::from_i64(f, &[&[1]])]).unwrap();
            let s1 = RightModule::from_representation(&a, &[1, 0], &[Mat::zeros(f, 1, 0)]).unwrap();
            let s2 = RightModule::from_representation(&a, &[0, 1], &[Mat::zeros(f, 0, 1)]).unwrap();
            assert_eq!(hom_space(&p1, &p1).unwrap().dim(), 1);
            assert_eq!(hom_space(&s2, &p1).unwrap().dim(), 1);
            assert_eq!(hom_space(&p1, &s2).unwrap().dim(), 0);
            assert_eq!(hom_space(&p1, &s1).unwrap().dim(), 1);
            assert_eq!(hom_space(&s1, &p1).unwrap().dim(), 0);
            let reg = RightModule::regular(&a);
            assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 3);
            for h in hom_space(&reg, &p1).unwrap().basis() {
                assert!(ModuleMorphism::new(&reg, &p1, h).is_ok());
            }
        }
    }

    #[test]
    fn end_algebra_of_regular_module_is_the_algebra() {
        let a = a2(Field::Rational);
        let e = end_algebra(&RightModule::regular(&a)).unwrap();
        assert_eq!(e.algebra.dim(), 3);
        assert!(!e.algebra.is_commutative());
        assert_eq!(e.algebra.radical().unwrap().dim(), 1);
        // Hom(A, M) ≅ M as vector spaces
        let p1 = RightModule::from_representation(&a, &[1, 1], &[Mat::from_i64(a.field(), &[&[1]])]).unwrap();
        let hm = hom_from_bimodule(&e.bimodule, &p1).unwrap();
        assert_eq!(hm.module.dim(), 2);
        hm.module.check_law().unwrap();
    }

    #[test]
    fn factorisation_solves() {
        let f = Field::Rational;
        let a = a2(f);
        let p1 = RightModule::from_representation(&a, &[1, 1], &[Mat::from_i64(f, &[&[1]])]).unwrap();
        let s2 = RightModule::from_representation(&a, &[0, 1], &[Mat::zeros(f, 0, 1)]).unwrap();
        let inc = hom_space(&s2, &p1).unwrap().basis_matrix(0);
        let hom = hom_space(&s2, &s2).unwrap();
        let h = factor_through(&hom, &inc, &inc.scale(&f.from_i64(3))).unwrap();
        assert_eq!(h, Mat::from_i64(f, &[&[3]]));
    }
}
