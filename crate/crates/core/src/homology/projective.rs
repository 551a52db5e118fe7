use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::linalg::{Mat, RowSpace};
use crate::module::{ModuleMorphism, RightModule};
use crate::{Error, Result};

use super::idempotents::idempotents;

/// A direct sum of indecomposable projectives `e_k A`, remembering the
/// generators so maps out of it are determined by the images of the `e_k`.
#[derive(Clone, Debug)]
pub struct FreeSum {
    pub module: RightModule,
    pub parts: Vec<FreePart>,
}

#[derive(Clone, Debug)]
pub struct FreePart {
    /// Isomorphism class of the summand.
    pub class: usize,
    pub idempotent: Mat,
    /// Rows (elements of `A`) spanning `e A`, in the order of the summand's
    /// coordinates.
    pub basis: Mat,
    pub offset: usize,
}

impl FreeSum {
    pub fn new(algebra: &Arc<Algebra>, classes: &[usize]) -> Result<FreeSum> {
        let idem = idempotents(algebra)?;
        let mut parts = Vec::with_capacity(classes.len());
        let mut mods = Vec::with_capacity(classes.len());
        let mut offset = 0;
        for &c in classes {
            if c >= idem.classes() {
                return Err(Error::InvalidModule(format!("no projective of class {c}")));
            }
            let e = idem.representative(c).clone();
            let (basis, module) = corner_module(algebra, &e);
            let d = basis.rows();
            parts.push(FreePart { class: c, idempotent: e, basis, offset });
            mods.push(module);
            offset += d;
        }
        let refs: Vec<&RightModule> = mods.iter().collect();
        let module = crate::module::direct_sum(algebra, &refs)?.module;
        debug_assert_eq!(module.dim(), offset);
        Ok(FreeSum { module, parts })
    }

    pub fn classes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.class).collect()
    }

    /// The generator `e_k` of the `k`-th summand as a vector of the sum.
    pub fn generator(&self, k: usize) -> Mat {
        let p = &self.parts[k];
        let f = self.module.field();
        let sub = RowSpace::span(&p.basis);
        let c = sub.coords(&p.idempotent).expect("e lies in eA");
        let mut v = Mat::zeros(f, 1, self.module.dim());
        v.paste(0, p.offset, &c);
        v
    }

    /// The map sending `e_k ↦ images[k]`; each image must lie in `X·e_k`.
    pub fn map_from_images(&self, target: &RightModule, images: &[Mat]) -> Result<ModuleMorphism> {
        if images.len() != self.parts.len() {
            return Err(Error::InvalidMorphism("one image per generator is required".into()));
        }
        let f = target.field();
        let mut m = Mat::zeros(f, self.module.dim(), target.dim());
        for (p, x) in self.parts.iter().zip(images) {
            if &(x * &target.act(&p.idempotent)) != x {
                return Err(Error::InvalidMorphism("generator image is not fixed by its idempotent".into()));
            }
            for l in 0..p.basis.rows() {
                let w = p.basis.row(l);
                m.paste(p.offset + l, 0, &(x * &target.act(&w)));
            }
        }
        Ok(ModuleMorphism::new_unchecked(&self.module, target, m))
    }

    /// `h: P → N` with `h·g = f` for `f: P → M` and surjective `g: N → M`.
    pub fn lift(&self, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<ModuleMorphism> {
        let n = g.source();
        let mut images = Vec::with_capacity(self.parts.len());
        for (k, p) in self.parts.iter().enumerate() {
            let want = &self.generator(k) * f.matrix();
            let y = g
                .matrix()
                .solve_left(&want)?
                .ok_or_else(|| Error::InvalidMorphism("map to lift along is not surjective".into()))?;
            images.push(&y * &n.act(&p.idempotent));
        }
        self.map_from_images(n, &images)
    }
}

/// `eA` with its basis of algebra elements.
fn corner_module(algebra: &Arc<Algebra>, e: &Mat) -> (Mat, RightModule) {
    let space = RowSpace::span(&algebra.left_mult(e));
    let (module, _) = RightModule::regular(algebra).restrict(&space).expect("eA is a right ideal");
    (space.basis().clone(), module)
}

/// The indecomposable projective `P_c = e_c A`.
pub fn projective_indecomposable(algebra: &Arc<Algebra>, class: usize) -> Result<RightModule> {
    Ok(FreeSum::new(algebra, &[class])?.module)
}

/// `S_c = P_c / P_c J`.
pub fn simple_module(algebra: &Arc<Algebra>, class: usize) -> Result<RightModule> {
    let p = projective_indecomposable(algebra, class)?;
    let pj = p.times_space(algebra.radical()?);
    Ok(p.quotient(&pj)?.0)
}

/// `I_c = D(A e_c)`.
pub fn injective_indecomposable(algebra: &Arc<Algebra>, class: usize) -> Result<RightModule> {
    let op = algebra.opposite_arc();
    let p = projective_indecomposable(&op, class)?;
    dual_over(&p, algebra)
}

pub fn simple_modules(algebra: &Arc<Algebra>) -> Result<Vec<RightModule>> {
    (0..idempotents(algebra)?.classes()).map(|c| simple_module(algebra, c)).collect()
}

pub fn projective_modules(algebra: &Arc<Algebra>) -> Result<Vec<RightModule>> {
    (0..idempotents(algebra)?.classes()).map(|c| projective_indecomposable(algebra, c)).collect()
}

pub fn injective_modules(algebra: &Arc<Algebra>) -> Result<Vec<RightModule>> {
    (0..idempotents(algebra)?.classes()).map(|c| injective_indecomposable(algebra, c)).collect()
}

/// `D(M) = Hom_k(M, k)` as a right module over the opposite algebra.
pub fn dual(m: &RightModule) -> RightModule {
    let op = m.algebra().opposite_arc();
    let action = m.actions().iter().map(|a| a.transpose()).collect();
    RightModule::new_unchecked(&op, m.dim(), action)
}

/// `D(M)` over a given algebra, which must be the opposite of `M`'s.
pub fn dual_over(m: &RightModule, algebra: &Arc<Algebra>) -> Result<RightModule> {
    let d = dual(m);
    if !same_algebra(d.algebra(), algebra) {
        return Err(Error::AlgebraMismatch);
    }
    d.rebase(algebra)
}

/// `D(f): D(N) → D(M)`.
pub fn dual_map(f: &ModuleMorphism, dsource: &RightModule, dtarget: &RightModule) -> ModuleMorphism {
    ModuleMorphism::new_unchecked(dtarget, dsource, f.matrix().transpose())
}

/// A projective cover `P(M) → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub free: FreeSum,
    pub map: ModuleMorphism,
}

impl ProjectiveCover {
    pub fn module(&self) -> &RightModule {
        &self.free.module
    }
}

/// Minimal projective cover: generators chosen greedily in `M·e_c` outside
/// `MJ` plus the submodule generated so far.
pub fn projective_cover(m: &RightModule) -> Result<ProjectiveCover> {
    let alg = m.algebra().clone();
    let idem = idempotents(&alg)?;
    let mut current = m.times_space(alg.radical()?);
    let mut classes = Vec::new();
    let mut images = Vec::new();
    for c in 0..idem.classes() {
        if current.is_full() {
            break;
        }
        let me = RowSpace::span(&m.act(idem.representative(c)));
        for r in 0..me.dim() {
            let v = me.basis().row(r);
            if current.contains(&v) {
                continue;
            }
            current = current.sum(&m.closure(&v));
            classes.push(c);
            images.push(v);
        }
    }
    if !current.is_full() {
        return Err(Error::InvalidModule("generators do not reach the whole module".into()));
    }
    let free = FreeSum::new(&alg, &classes)?;
    let map = free.map_from_images(m, &images)?;
    Ok(ProjectiveCover { free, map })
}

/// `0 → ΩM → P(M) → M → 0`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: RightModule,
    pub inclusion: ModuleMorphism,
    pub cover: ProjectiveCover,
}

pub fn syzygy(m: &RightModule) -> Result<Syzygy> {
    let cover = projective_cover(m)?;
    let (module, inclusion) = cover.map.kernel();
    Ok(Syzygy { module, inclusion, cover })
}

pub fn is_projective(m: &RightModule) -> Result<bool> {
    Ok(projective_cover(m)?.module().dim() == m.dim())
}

pub fn is_injective(m: &RightModule) -> Result<bool> {
    is_projective(&dual(m))
}

/// `pd M ≤ n`, checked by computing `n` syzygies.
pub fn projective_dimension_at_most(m: &RightModule, n: usize) -> Result<bool> {
    let mut cur = m.clone();
    for _ in 0..n {
        cur = syzygy(&cur)?.module;
    }
    is_projective(&cur)
}

pub fn injective_dimension_at_most(m: &RightModule, n: usize) -> Result<bool> {
    projective_dimension_at_most(&dual(m), n)
}

/// `pd M`, or `None` if it exceeds `cap`.
pub fn projective_dimension(m: &RightModule, cap: usize) -> Result<Option<usize>> {
    let mut cur = m.clone();
    for d in 0..=cap {
        let s = syzygy(&cur)?;
        if s.module.is_zero() {
            return Ok(Some(d));
        }
        cur = s.module;
    }
    Ok(None)
}

/// An injective envelope `M → I(M)`, dual to a projective cover of `D(M)`.
#[derive(Clone, Debug)]
pub struct InjectiveHull {
    pub module: RightModule,
    pub embedding: ModuleMorphism,
    /// Classes of the indecomposable injective summands.
    pub classes: Vec<usize>,
}

pub fn injective_hull(m: &RightModule) -> Result<InjectiveHull> {
    let alg = m.algebra().clone();
    let cover = projective_cover(&dual(m))?;
    let module = dual_over(cover.module(), &alg)?;
    let embedding = ModuleMorphism::new_unchecked(m, &module, cover.map.matrix().transpose());
    Ok(InjectiveHull { module, embedding, classes: cover.free.classes() })
}

/// `0 → M → I(M) → Ω⁻¹M → 0`.
#[derive(Clone, Debug)]
pub struct Cosyzygy {
    pub module: RightModule,
    pub projection: ModuleMorphism,
    pub hull: InjectiveHull,
}

pub fn cosyzygy(m: &RightModule) -> Result<Cosyzygy> {
    let hull = injective_hull(m)?;
    let (module, projection) = hull.embedding.cokernel();
    Ok(Cosyzygy { module, projection, hull })
}

/// `top M = M / MJ`.
pub fn top(m: &RightModule) -> Result<RightModule> {
    let mj = m.times_space(m.algebra().radical()?);
    Ok(m.quotient(&mj)?.0)
}

/// `soc M = {m : mJ = 0}`.
pub fn socle_space(m: &RightModule) -> Result<RowSpace> {
    let f = m.field();
    let j = m.algebra().radical()?;
    let mats: Vec<Mat> = (0..j.dim()).map(|r| m.act(&j.basis().row(r))).collect();
    let refs: Vec<&Mat> = mats.iter().collect();
    let stacked = Mat::hstack(f, m.dim(), &refs);
    if j.dim() == 0 {
        return Ok(RowSpace::full(f, m.dim()));
    }
    Ok(RowSpace::span(&stacked.left_kernel()))
}

/// Multiplicity of each simple in the top of `M`.
pub fn top_multiplicities(m: &RightModule) -> Result<Vec<usize>> {
    let cover = projective_cover(m)?;
    let n = idempotents(m.algebra())?.classes();
    let mut out = vec![0; n];
    for c in cover.free.classes() {
        out[c] += 1;
    }
    Ok(out)
}

/// Composition multiplicities `[M : S_c] = dim Hom(P_c, M) / dim End(S_c)`.
pub fn composition_multiplicities(m: &RightModule) -> Result<Vec<usize>> {
    let alg = m.algebra().clone();
    let idem = idempotents(&alg)?;
    let mut out = Vec::with_capacity(idem.classes());
    for c in 0..idem.classes() {
        let me = m.act(idem.representative(c)).rank();
        let s = simple_module(&alg, c)?;
        let se = s.act(idem.representative(c)).rank();
        out.push(me / se.max(1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;
    use crate::linalg::Field;

    fn a3(f: Field) -> Arc<Algebra> {
        Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(3)).unwrap())
    }

    #[test]
    fn projectives_simples_injectives_of_a3() {
        for f in [Field::Rational, Field::Prime(3)] {
            let a = a3(f);
            let p: Vec<usize> = projective_modules(&a).unwrap().iter().map(|m| m.dim()).collect();
            let i: Vec<usize> = injective_modules(&a).unwrap().iter().map(|m| m.dim()).collect();
            assert_eq!(p, vec![3, 2, 1]);
            assert_eq!(i, vec![1, 2, 3]);
            for s in simple_modules(&a).unwrap() {
                assert_eq!(s.dim(), 1);
                s.check_law().unwrap();
            }
            for m in injective_modules(&a).unwrap() {
                m.check_law().unwrap();
                assert!(is_injective(&m).unwrap());
            }
        }
    }

    #[test]
    fn covers_and_syzygies() {
        let f = Field::Rational;
        let a = a3(f);
        let s1 = simple_module(&a, 0).unwrap();
        let sy = syzygy(&s1).unwrap();
        assert_eq!(sy.cover.module().dim(), 3);
        assert_eq!(sy.module.dim(), 2);
        assert!(is_projective(&sy.module).unwrap());
        assert!(projective_dimension_at_most(&s1, 1).unwrap());
        assert!(!projective_dimension_at_most(&s1, 0).unwrap());
        assert_eq!(projective_dimension(&s1, 5).unwrap(), Some(1));
        let reg = RightModule::regular(&a);
        assert_eq!(projective_cover(&reg).unwrap().module().dim(), 6);
        let h = injective_hull(&s1).unwrap();
        assert_eq!(h.module.dim(), 1);
        let h3 = injective_hull(&simple_module(&a, 2).unwrap()).unwrap();
        assert_eq!(h3.module.dim(), 3);
        assert!(h3.embedding.is_injective());
    }

    #[test]
    fn infinite_projective_dimension_is_capped() {
        let f = Field::Rational;
        let q = QuiverPresentation::new(1).arrow(0, 0, "x").relation(vec![(f.one(), vec![0, 0])]);
        let d = Arc::new(Algebra::path_algebra(f, &q).unwrap());
        let s = simple_module(&d, 0).unwrap();
        assert_eq!(projective_dimension(&s, 4).unwrap(), None);
    }

    #[test]
    fn lifting_through_a_surjection() {
        let f = Field::Rational;
        let a = a3(f);
        let s1 = simple_module(&a, 0).unwrap();
        let cover = projective_cover(&s1).unwrap();
        let reg = RightModule::regular(&a);
        let reg_cover = projective_cover(&reg).unwrap();
        // P(S1) → S1 lifts through any surjection onto S1, e.g. P1 → S1 itself
        let h = cover.free.lift(&cover.map, &cover.map).unwrap();
        assert_eq!(h.then(&cover.map).unwrap().matrix(), cover.map.matrix());
        assert!(reg_cover.map.is_surjective());
    }
}
