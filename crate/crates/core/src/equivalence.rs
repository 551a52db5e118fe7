//! The functors `H = Hom_R(T, -)`, `G = - ⊗_S T`, `E¹ = Ext¹_R(T, -)` and
//! `Tor₁^S(-, T)` for a tilting module `T` with `S = End(T)`, their natural
//! maps, the classes they cut out, and left-fraction witnesses for the maps
//! inverted by `G`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::homology::{
    dual, end_algebra, ext1, ext_dim, hom_from_bimodule, hom_from_bimodule_map, hom_space, injective_hull,
    is_projective, syzygy, tensor, tensor_map, tor1, tor1_dim_from_presentation, Bimodule, EndAlgebra, HomModule,
    HomSpace, InjectiveHull, Tensor, Tor1,
};
use crate::linalg::{Mat, RowSpace};
use crate::module::{ModuleMorphism, RightModule};
use crate::report::{Check, Probe};
use crate::tilting::{in_gen, is_tilting, reject_of, Coresolution, TiltingCheck, Verdict};
use crate::{Error, Result};

/// The projective presentation `0 → Q₁ → Q₀ → T → 0` of `T` as a left
/// `S`-module, obtained by applying `Hom_R(-, T)` to a coresolution
/// `0 → R → T₀ → T₁ → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// `Hom(T₀, T)` with `s·g = g·F_s`.
    pub q0: Bimodule,
    /// `Hom(T₁, T)`.
    pub q1: Bimodule,
    pub hom0: HomSpace,
    pub hom1: HomSpace,
    /// `Q₁ → Q₀`, `f ↦ π·f`.
    pub delta: Mat,
    /// `Q₀ → T`, `g ↦ μ(1)·g`.
    pub epsilon: Mat,
}

impl Presentation {
    fn build(bim: &Bimodule, c: &Coresolution) -> Result<Presentation> {
        let t = bim.module();
        let f = t.field();
        let s = bim.left();
        let hom0 = hom_space(&c.t0, t)?;
        let hom1 = hom_space(&c.t1, t)?;
        let left = |hom: &HomSpace| -> Vec<Mat> {
            let basis = hom.basis();
            bim.left_actions()
                .iter()
                .map(|fs| {
                    let rows: Vec<Mat> =
                        basis.iter().map(|g| hom.coords(&(g * fs)).expect("closed under the S-action")).collect();
                    let refs: Vec<&Mat> = rows.iter().collect();
                    Mat::vstack(f, hom.dim(), &refs)
                })
                .collect()
        };
        let q0 = Bimodule::left_only(s, left(&hom0))?;
        let q1 = Bimodule::left_only(s, left(&hom1))?;
        let rows: Vec<Mat> = hom1
            .basis()
            .iter()
            .map(|fk| hom0.coords(&(c.pi.matrix() * fk)).expect("precomposition lands in Hom(T0, T)"))
            .collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        let delta = Mat::vstack(f, hom0.dim(), &refs);
        let rows: Vec<Mat> = hom0.basis().iter().map(|g| &c.generator * g).collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        let epsilon = Mat::vstack(f, t.dim(), &refs);
        Ok(Presentation { q0, q1, hom0, hom1, delta, epsilon })
    }

    /// `δ` injective, `ε` surjective, `im δ = ker ε`, and `ε` is
    /// `S`-linear.
    pub fn is_exact(&self, bim: &Bimodule) -> bool {
        let r1 = self.delta.rank();
        let r0 = self.epsilon.rank();
        let linear = (0..bim.left().dim()).all(|i| {
            (self.q0.left_action(i) * &self.epsilon) == (&self.epsilon * bim.left_action(i))
                && (self.q1.left_action(i) * &self.delta) == (&self.delta * self.q0.left_action(i))
        });
        linear
            && r1 == self.hom1.dim()
            && r0 == bim.dim()
            && (&self.delta * &self.epsilon).is_zero()
            && r1 + r0 == self.hom0.dim()
    }

    /// Both terms are projective left `S`-modules.
    pub fn is_projective(&self) -> Result<bool> {
        Ok(is_projective(&self.q0.left_module())? && is_projective(&self.q1.left_module())?)
    }
}

#[derive(Clone, Debug)]
pub struct TiltingContext {
    pub t: RightModule,
    pub check: TiltingCheck,
    /// `S = End(T)` with `T` as an `S`-`R`-bimodule.
    pub end: EndAlgebra,
    pub presentation: Option<Presentation>,
    /// `T^d = D(T)` as a right `S`-module.
    pub td: RightModule,
}

/// Context for a tilting module; fails unless `T` is certified tilting.
pub fn build_context(t: &RightModule, bound: usize) -> Result<TiltingContext> {
    let ctx = build_context_unchecked(t, bound)?;
    match &ctx.check.verdict {
        Verdict::Yes => {}
        Verdict::No(why) => return Err(Error::InvalidModule(format!("not a tilting module: {why}"))),
        Verdict::Undecided(why) => return Err(Error::Undecided(why.clone())),
    }
    let p = ctx.presentation.as_ref().expect("a tilting certificate carries a coresolution");
    if !p.is_exact(ctx.bimodule()) {
        return Err(Error::InvalidComplex("the induced presentation of T over S is not exact".into()));
    }
    Ok(ctx)
}

/// Context for any module, used for negative controls; the presentation is
/// present only when a coresolution was found.
pub fn build_context_unchecked(t: &RightModule, bound: usize) -> Result<TiltingContext> {
    let check = is_tilting(t, bound)?;
    let end = end_algebra(t)?;
    let presentation = match check.t3.coresolution() {
        Some(c) => Some(Presentation::build(&end.bimodule, c)?),
        None => None,
    };
    let td = end.bimodule.dual_right();
    Ok(TiltingContext { t: t.clone(), check, end, presentation, td })
}

/// `E¹(M) = coker(H(I) → H(I/M))` for an injective envelope `M → I`.
#[derive(Clone, Debug)]
pub struct E1Module {
    pub module: RightModule,
    pub hull: InjectiveHull,
    /// `I → I/M`.
    pub projection: ModuleMorphism,
    pub hom_hull: HomModule,
    pub hom_cokernel: HomModule,
    /// `H(I) → H(I/M)`.
    pub restriction: ModuleMorphism,
    /// `H(I/M) → E¹(M)`.
    pub to_ext: ModuleMorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Counit,
    Unit,
    Xi,
    Theta,
}

#[derive(Clone, Debug)]
pub struct NaturalMapRecord {
    pub kind: MapKind,
    /// For `θ` when `N ⊗ T ≠ 0` this is the restriction to `ker η_N`; for
    /// `ξ` when `tM ≠ 0` the composite into `M / tM`.
    pub map: ModuleMorphism,
    pub iso: bool,
    /// Whether `map` is the natural map on the full source and target.
    pub total: bool,
    /// Whether `map` is an isomorphism (for `θ`, `ξ`: the canonical
    /// isomorphism `ker η_N ≅ E¹Tor₁(N)` resp. `Tor₁E¹(M) ≅ M/tM`).
    pub canonical_iso: bool,
    /// Auxiliary models of the source and target agree in dimension.
    pub consistent: bool,
    pub note: String,
}

impl NaturalMapRecord {
    fn plain(kind: MapKind, map: ModuleMorphism) -> NaturalMapRecord {
        let iso = map.is_iso();
        NaturalMapRecord { kind, map, iso, total: true, canonical_iso: iso, consistent: true, note: String::new() }
    }
}

#[derive(Clone, Debug)]
pub struct Counit {
    pub hom: HomModule,
    pub tensor: Tensor,
    pub record: NaturalMapRecord,
}

#[derive(Clone, Debug)]
pub struct Unit {
    pub tensor: Tensor,
    pub hom: HomModule,
    pub record: NaturalMapRecord,
}

/// A predicate value with an independent second computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub value: bool,
    pub cross_check: Option<bool>,
}

impl Membership {
    pub fn consistent(&self) -> bool {
        self.cross_check.is_none_or(|c| c == self.value)
    }
}

#[derive(Clone, Debug)]
pub struct OreCompletion {
    /// `t: Z → W` with `G(t)` invertible.
    pub t: ModuleMorphism,
    /// `g: Y → W` with `g∘s = t∘f`.
    pub g: ModuleMorphism,
    pub verified: bool,
}

/// `ε_M: G(H(M)) → M`, `h ⊗ t ↦ h(t)`.
fn counit_matrix(hm: &HomModule, ghm: &Tensor, target_dim: usize) -> Mat {
    let f = ghm.quotient.proj.field();
    let basis = hm.hom.basis();
    let refs: Vec<&Mat> = basis.iter().collect();
    let eval = Mat::vstack(f, target_dim, &refs);
    &ghm.quotient.section * &eval
}

/// `η_N: N → H(G(N))`, `n ↦ (t ↦ n ⊗ t)`.
fn unit_matrix(n_dim: usize, gn: &Tensor, hgn: &HomModule) -> Mat {
    let f = gn.quotient.proj.field();
    let dt = gn.right_dim;
    let q = gn.module.dim();
    let rows: Vec<Mat> = (0..n_dim)
        .map(|i| {
            let k = gn.quotient.proj.submatrix(i * dt, (i + 1) * dt, 0, q);
            hgn.hom.coords(&k).expect("t ↦ n ⊗ t is a homomorphism")
        })
        .collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(f, hgn.module.dim(), &refs)
}

impl TiltingContext {
    pub fn r(&self) -> &Arc<Algebra> {
        self.t.algebra()
    }

    pub fn s(&self) -> &Arc<Algebra> {
        &self.end.algebra
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.end.bimodule
    }

    pub fn is_tilting(&self) -> bool {
        self.check.verdict.is_yes()
    }

    pub fn h(&self, m: &RightModule) -> Result<HomModule> {
        hom_from_bimodule(self.bimodule(), m)
    }

    pub fn g(&self, n: &RightModule) -> Result<Tensor> {
        tensor(n, self.bimodule())
    }

    pub fn t1(&self, n: &RightModule) -> Result<Tor1> {
        tor1(n, self.bimodule())
    }

    /// `dim Tor₁^S(N, T)` from the presentation `Q₁ → Q₀` instead of a
    /// resolution of `N`.
    pub fn t1_dim_via_presentation(&self, n: &RightModule) -> Result<Option<usize>> {
        match &self.presentation {
            Some(p) => Ok(Some(tor1_dim_from_presentation(n, &p.q1, &p.q0, &p.delta)?)),
            None => Ok(None),
        }
    }

    pub fn e1(&self, m: &RightModule) -> Result<E1Module> {
        let hull = injective_hull(m)?;
        let (c, projection) = hull.embedding.cokernel();
        let hom_hull = self.h(&hull.module)?;
        let hom_cokernel = self.h(&c)?;
        let restriction = hom_from_bimodule_map(&hom_hull, &hom_cokernel, projection.matrix());
        let (module, to_ext) = restriction.cokernel();
        Ok(E1Module { module, hull, projection, hom_hull, hom_cokernel, restriction, to_ext })
    }

    pub fn counit(&self, m: &RightModule) -> Result<Counit> {
        let hom = self.h(m)?;
        let tensor = self.g(&hom.module)?;
        let mat = counit_matrix(&hom, &tensor, m.dim());
        let map = ModuleMorphism::new_unchecked(&tensor.module, m, mat);
        Ok(Counit { hom, tensor, record: NaturalMapRecord::plain(MapKind::Counit, map) })
    }

    pub fn unit(&self, n: &RightModule) -> Result<Unit> {
        let tensor = self.g(n)?;
        let hom = self.h(&tensor.module)?;
        let mat = unit_matrix(n.dim(), &tensor, &hom);
        let map = ModuleMorphism::new_unchecked(n, &hom.module, mat);
        Ok(Unit { tensor, hom, record: NaturalMapRecord::plain(MapKind::Unit, map) })
    }

    /// `θ_N: N → E¹(Tor₁(N, T))`. With `0 → ΩN → P → N → 0`,
    /// `Z = im(ΩN ⊗ T → P ⊗ T)` and `K = Tor₁(N, T)`, the target is
    /// `coker(H(ΩN ⊗ T) → H(Z))` and `θ` is induced by `η_P` on
    /// `ker η_N`, which is all of `N` exactly when `N ⊗ T = 0`.
    pub fn theta(&self, n: &RightModule) -> Result<NaturalMapRecord> {
        let f = n.field();
        let syz = syzygy(n)?;
        let p = syz.cover.module();
        let cover = syz.cover.map.matrix();
        let gp = self.g(p)?;
        let go = self.g(&syz.module)?;
        let c = tensor_map(&syz.inclusion, &go, &gp);
        let zspace = c.image_space();
        let (zmod, zinc) = gp.module.restrict(&zspace)?;
        let (kmod, _) = c.kernel();
        let hp = self.h(&gp.module)?;
        let hz = self.h(&zmod)?;
        let ho = self.h(&go.module)?;
        let eta_p = unit_matrix(p.dim(), &gp, &hp);
        let hzinc = hom_from_bimodule_map(&hz, &hp, zinc.matrix());
        let cz = zspace.coords(c.matrix()).expect("the image contains every row");
        let hc = hom_from_bimodule_map(&ho, &hz, &cz);
        let (e1, e1proj) = hc.cokernel();

        let qm = hzinc.image_space().quotient_map();
        let pprime = RowSpace::span(&(&eta_p * &qm.proj).left_kernel());
        let n0 = RowSpace::span(&(pprime.basis() * cover));
        let values = |lifts: &Mat| -> Result<Mat> {
            let z = hzinc
                .matrix()
                .solve_left_many(&(lifts * &eta_p))
                .ok_or_else(|| Error::InvalidMorphism("lift does not land in H(Z)".into()))?;
            Ok(&z * e1proj.matrix())
        };
        let model_dim = self.e1(&kmod)?.module.dim();
        let consistent = model_dim == e1.dim();
        if n0.dim() == n.dim() {
            let lifts = cover
                .solve_left_many(&Mat::identity(f, n.dim()))
                .ok_or_else(|| Error::InvalidMorphism("projective cover is not surjective".into()))?;
            let map = ModuleMorphism::new_unchecked(n, &e1, values(&lifts)?);
            let iso = map.is_iso();
            let note = format!("dim N = {}, dim E1(Tor1(N,T)) = {}", n.dim(), e1.dim());
            return Ok(NaturalMapRecord { kind: MapKind::Theta, map, iso, total: true, canonical_iso: iso, consistent, note });
        }
        let (sub, _) = n.restrict(&n0)?;
        let pb = pprime.basis();
        let x = (pb * cover)
            .solve_left_many(n0.basis())
            .ok_or_else(|| Error::InvalidMorphism("ker η_N does not lift".into()))?;
        let map = ModuleMorphism::new_unchecked(&sub, &e1, values(&(&x * pb))?);
        let canonical_iso = map.is_iso();
        let note = format!("N ⊗ T ≠ 0: θ is defined on ker η_N of dim {} < dim N = {}", sub.dim(), n.dim());
        Ok(NaturalMapRecord { kind: MapKind::Theta, map, iso: false, total: false, canonical_iso, consistent, note })
    }

    /// `ξ_M: Tor₁(E¹(M), T) → M`. With `B = im(H(I) → H(I/M))`, the source
    /// is `K = ker(B ⊗ T → H(I/M) ⊗ T)`; an element lifts to `H(I) ⊗ T`,
    /// whose evaluation in `I` lies in `M`, well defined modulo `tM`.
    pub fn xi(&self, m: &RightModule) -> Result<NaturalMapRecord> {
        let e1 = self.e1(m)?;
        let bspace = e1.restriction.image_space();
        let (bmod, binc) = e1.hom_cokernel.module.restrict(&bspace)?;
        let gb = self.g(&bmod)?;
        let gc = self.g(&e1.hom_cokernel.module)?;
        let gi = self.g(&e1.hom_hull.module)?;
        let beta = tensor_map(&binc, &gb, &gc);
        let (kmod, kinc) = beta.kernel();
        let rho = bspace.coords(e1.restriction.matrix()).expect("the image contains every row");
        let rho = ModuleMorphism::new_unchecked(&e1.hom_hull.module, &bmod, rho);
        let rho_t = tensor_map(&rho, &gi, &gb);
        let eps_i = counit_matrix(&e1.hom_hull, &gi, e1.hull.module.dim());
        let y = rho_t
            .matrix()
            .solve_left_many(kinc.matrix())
            .ok_or_else(|| Error::InvalidMorphism("H(I) ⊗ T → B ⊗ T is not surjective".into()))?;
        let in_i = &y * &eps_i;
        let tor_dim = self.t1(&e1.module)?.module.dim();
        let consistent = tor_dim == kmod.dim();
        let trace = crate::tilting::trace_of(&self.t, m)?;
        let lands = e1.hull.embedding.matrix().solve_left_many(&in_i);
        let (quo, qproj) = m.quotient(&trace)?;
        let Some(in_m) = lands else {
            let map = ModuleMorphism::zero(&kmod, &quo);
            let note = "evaluation does not land in M".to_string();
            return Ok(NaturalMapRecord { kind: MapKind::Xi, map, iso: false, total: false, canonical_iso: false, consistent, note });
        };
        if trace.dim() == 0 {
            let map = ModuleMorphism::new_unchecked(&kmod, m, in_m);
            let iso = map.is_iso();
            let note = format!("dim Tor1(E1(M),T) = {}, dim M = {}", kmod.dim(), m.dim());
            return Ok(NaturalMapRecord { kind: MapKind::Xi, map, iso, total: true, canonical_iso: iso, consistent, note });
        }
        let map = ModuleMorphism::new_unchecked(&kmod, &quo, &in_m * qproj.matrix());
        let canonical_iso = map.is_iso();
        let note = format!("tM ≠ 0 (dim {}): ξ is taken into M/tM", trace.dim());
        Ok(NaturalMapRecord { kind: MapKind::Xi, map, iso: false, total: false, canonical_iso, consistent, note })
    }

    /// `M ∈ T⊥`, cross-checked against `M ∈ Gen T`.
    pub fn in_t(&self, m: &RightModule) -> Result<Membership> {
        Ok(Membership { value: ext1(&self.t, m)?.is_zero(), cross_check: Some(in_gen(&self.t, m)?) })
    }

    /// `Hom(T, M) = 0`.
    pub fn in_f(&self, m: &RightModule) -> Result<Membership> {
        Ok(Membership { value: hom_space(&self.t, m)?.dim() == 0, cross_check: None })
    }

    /// `Hom_S(N, T^d) = 0`, cross-checked against `N ⊗ T = 0`.
    pub fn in_ttd(&self, n: &RightModule) -> Result<Membership> {
        Ok(Membership {
            value: hom_space(n, &self.td)?.dim() == 0,
            cross_check: Some(self.g(n)?.module.dim() == 0),
        })
    }

    /// `Rej_{T^d}(N) = 0`, cross-checked against `D(N) ∈ Gen D(T^d)`.
    pub fn in_ftd(&self, n: &RightModule) -> Result<Membership> {
        Ok(Membership {
            value: reject_of(&self.td, n)?.dim() == 0,
            cross_check: Some(in_gen(&dual(&self.td), &dual(n))?),
        })
    }

    /// `N ⊗ T = Tor₁(N, T) = 0`, cross-checked against
    /// `Hom_S(N, T^d) = Ext¹_S(N, T^d) = 0`.
    pub fn in_e(&self, n: &RightModule) -> Result<Membership> {
        let value = self.g(n)?.module.dim() == 0 && self.t1(n)?.module.dim() == 0;
        let cross = hom_space(n, &self.td)?.dim() == 0 && ext1(n, &self.td)?.is_zero();
        Ok(Membership { value, cross_check: Some(cross) })
    }

    /// `Ext^i(E, N) = 0` for `i = 0, 1, 2` and every given member `E` of
    /// the class `E`.
    pub fn in_m_sampled(&self, n: &RightModule, e_members: &[RightModule]) -> Result<bool> {
        for e in e_members {
            for i in 0..=2 {
                if ext_dim(e, n, i)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn in_y(&self, n: &RightModule) -> Result<bool> {
        Ok(self.unit(n)?.record.iso)
    }

    pub fn in_x(&self, n: &RightModule) -> Result<bool> {
        Ok(self.theta(n)?.iso)
    }

    /// `u ∈ Σ`: `u ⊗ T` is invertible.
    pub fn sigma_member(&self, u: &ModuleMorphism) -> Result<bool> {
        let gs = self.g(u.source())?;
        let gt = self.g(u.target())?;
        Ok(tensor_map(u, &gs, &gt).is_iso())
    }

    /// `G(η_N)` followed by `ε_{G(N)}` is the identity.
    pub fn triangle_tensor(&self, n: &RightModule) -> Result<bool> {
        let u = self.unit(n)?;
        let ghgn = self.g(&u.hom.module)?;
        let g_eta = tensor_map(&u.record.map, &u.tensor, &ghgn);
        let eps = counit_matrix(&u.hom, &ghgn, u.tensor.module.dim());
        Ok((g_eta.matrix() * &eps).is_identity())
    }

    /// `η_{H(M)}` followed by `H(ε_M)` is the identity.
    pub fn triangle_hom(&self, m: &RightModule) -> Result<bool> {
        let c = self.counit(m)?;
        let hghm = self.h(&c.tensor.module)?;
        let eta = unit_matrix(c.hom.module.dim(), &c.tensor, &hghm);
        let h_eps = hom_from_bimodule_map(&hghm, &c.hom, c.record.map.matrix());
        Ok((&eta * h_eps.matrix()).is_identity())
    }

    /// For `s: X → Y` in `Σ` and `f: X → Z`: `t = η_Z` and
    /// `g = η_Y · HG(s)⁻¹ · HG(f)` with `g∘s = t∘f`.
    pub fn ore_left_completion(&self, s: &ModuleMorphism, f: &ModuleMorphism) -> Result<OreCompletion> {
        if s.source().dim() != f.source().dim() || !s.source().same_algebra(f.source()) {
            return Err(Error::InvalidMorphism("s and f must share their source".into()));
        }
        let (x, y, z) = (s.source(), s.target(), f.target());
        let ux = self.unit(x)?;
        let uy = self.unit(y)?;
        let uz = self.unit(z)?;
        let gs = tensor_map(s, &ux.tensor, &uy.tensor);
        if !gs.is_iso() {
            return Err(Error::InvalidMorphism("s is not inverted by - ⊗ T".into()));
        }
        let gf = tensor_map(f, &ux.tensor, &uz.tensor);
        let hgs = hom_from_bimodule_map(&ux.hom, &uy.hom, gs.matrix());
        let hgf = hom_from_bimodule_map(&ux.hom, &uz.hom, gf.matrix());
        let inv = hgs.inverse().ok_or_else(|| Error::InvalidMorphism("H(G(s)) is not invertible".into()))?;
        let g_mat = &(uy.record.map.matrix() * inv.matrix()) * hgf.matrix();
        let g = ModuleMorphism::new_unchecked(y, &uz.hom.module, g_mat);
        let t = uz.record.map.clone();
        let verified = s.matrix() * g.matrix() == f.matrix() * t.matrix()
            && g.intertwines()
            && t.intertwines()
            && self.sigma_member(&t)?;
        Ok(OreCompletion { t, g, verified })
    }

    /// For `s ∈ Σ` and `f, g: Y → Z` with `f∘s = g∘s`: `t = η_Z` with
    /// `t∘f = t∘g`. Returns `t` and whether the equation holds.
    pub fn ore_equalizer(
        &self,
        s: &ModuleMorphism,
        f: &ModuleMorphism,
        g: &ModuleMorphism,
    ) -> Result<(ModuleMorphism, bool)> {
        if s.matrix() * f.matrix() != s.matrix() * g.matrix() {
            return Err(Error::InvalidMorphism("f∘s ≠ g∘s".into()));
        }
        if !self.sigma_member(s)? {
            return Err(Error::InvalidMorphism("s is not inverted by - ⊗ T".into()));
        }
        let t = self.unit(f.target())?.record.map;
        let ok = f.matrix() * t.matrix() == g.matrix() * t.matrix();
        Ok((t, ok))
    }

    /// Every claim of the equivalence on the given probes. `e_members` are
    /// the known nonzero members of `E` (empty at finite-dimensional
    /// scale).
    pub fn verify_theorem(&self, probes_r: &[Probe], probes_s: &[Probe]) -> Vec<Check> {
        let mut out = Vec::new();
        for p in probes_r {
            self.verify_r_probe(p, &mut out);
        }
        let mut e_members = Vec::new();
        for p in probes_s {
            if p.module.dim() > 0 && self.in_e(&p.module).map(|m| m.value).unwrap_or(false) {
                e_members.push(p.module.clone());
            }
        }
        for p in probes_s {
            self.verify_s_probe(p, &e_members, &mut out);
        }
        out
    }

    fn verify_r_probe(&self, p: &Probe, out: &mut Vec<Check>) {
        let m = &p.module;
        let name = || format!("R:{}", p.name);
        out.push(Check::from_result(
            "counit-iso-iff-perp",
            name(),
            (|| {
                let c = self.counit(m)?;
                let t = self.in_t(m)?;
                Ok((c.record.iso == t.value, format!("counit iso {}, Ext1(T,M)=0 {}", c.record.iso, t.value)))
            })(),
        ));
        out.push(Check::from_result(
            "perp-equals-gen",
            name(),
            self.in_t(m).map(|t| (t.consistent(), format!("{t:?}"))),
        ));
        out.push(Check::from_result(
            "tor-vanishes-on-hom",
            name(),
            (|| {
                let d = self.t1(&self.h(m)?.module)?.module.dim();
                Ok((d == 0, format!("dim Tor1(H(M),T) = {d}")))
            })(),
        ));
        out.push(Check::from_result(
            "triangle-identity-hom",
            name(),
            self.triangle_hom(m).map(|ok| (ok, String::new())),
        ));
        match self.in_t(m) {
            Ok(t) if t.value => out.push(Check::from_result(
                "hom-lands-in-Y",
                name(),
                (|| {
                    let hm = self.h(m)?.module;
                    let iso = self.unit(&hm)?.record.iso;
                    let cogen = self.in_ftd(&hm)?.value;
                    Ok((iso && cogen, format!("unit on H(M) iso {iso}, H(M) cogenerated by T^d {cogen}")))
                })(),
            )),
            Ok(_) => {}
            Err(e) => out.push(Check::new("hom-lands-in-Y", name(), false, format!("error: {e}"))),
        }
        out.push(Check::from_result(
            "xi-iso-iff-torsion-free",
            name(),
            (|| {
                let xi = self.xi(m)?;
                let fr = self.in_f(m)?.value;
                Ok((xi.iso == fr && xi.consistent, format!("xi iso {}, Hom(T,M)=0 {fr}; {}", xi.iso, xi.note)))
            })(),
        ));
        out.push(Check::from_result(
            "xi-canonical-on-torsion-free-quotient",
            name(),
            self.xi(m).map(|xi| (xi.canonical_iso, xi.note)),
        ));
        match self.in_f(m) {
            Ok(fr) if fr.value => out.push(Check::from_result(
                "ext-lands-in-X",
                name(),
                (|| {
                    let e = self.e1(m)?.module;
                    let th = self.theta(&e)?;
                    let ttd = self.in_ttd(&e)?.value;
                    Ok((th.iso && ttd, format!("theta on E1(M) iso {}, E1(M) ⊗ T = 0 {ttd}", th.iso)))
                })(),
            )),
            Ok(_) => {}
            Err(e) => out.push(Check::new("ext-lands-in-X", name(), false, format!("error: {e}"))),
        }
        out.push(Check::from_result(
            "ext-dimension-agrees",
            name(),
            (|| {
                let a = self.e1(m)?.module.dim();
                let b = ext1(&self.t, m)?.dim();
                Ok((a == b, format!("E1 carrier {a}, Ext1 cocycle model {b}")))
            })(),
        ));
    }

    fn verify_s_probe(&self, p: &Probe, e_members: &[RightModule], out: &mut Vec<Check>) {
        let n = &p.module;
        let name = || format!("S:{}", p.name);
        let in_m = self.in_m_sampled(n, e_members);
        out.push(Check::from_result(
            "unit-iso-iff-cogenerated",
            name(),
            (|| {
                let iso = self.unit(n)?.record.iso;
                let y = self.in_ftd(n)?.value && in_m.clone()?;
                Ok((iso == y, format!("unit iso {iso}, in Cogen(T^d) ∩ M {y}")))
            })(),
        ));
        out.push(Check::from_result(
            "theta-iso-iff-tensor-vanishes",
            name(),
            (|| {
                let th = self.theta(n)?;
                let x = self.in_ttd(n)?.value && in_m.clone()?;
                Ok((th.iso == x && th.consistent, format!("theta iso {}, N ⊗ T = 0 {x}; {}", th.iso, th.note)))
            })(),
        ));
        out.push(Check::from_result(
            "theta-canonical-on-tensor-kernel",
            name(),
            self.theta(n).map(|th| (th.canonical_iso, th.note)),
        ));
        out.push(Check::from_result(
            "dual-hom-detects-tensor",
            name(),
            self.in_ttd(n).map(|m| (m.consistent(), format!("{m:?}"))),
        ));
        out.push(Check::from_result(
            "reject-detects-cogenerated",
            name(),
            self.in_ftd(n).map(|m| (m.consistent(), format!("{m:?}"))),
        ));
        out.push(Check::from_result(
            "class-E-characterization",
            name(),
            self.in_e(n).map(|m| (m.consistent(), format!("{m:?}"))),
        ));
        out.push(Check::from_result(
            "class-E-vanishes",
            name(),
            self.in_e(n).map(|m| (!(m.value && n.dim() > 0), format!("dim N = {}, in E {}", n.dim(), m.value))),
        ));
        out.push(Check::from_result(
            "tor-dimension-agrees",
            name(),
            (|| {
                let a = self.t1(n)?.module.dim();
                match self.t1_dim_via_presentation(n)? {
                    Some(b) => Ok((a == b, format!("syzygy model {a}, presentation model {b}"))),
                    None => Err(Error::Undecided("no presentation of T over S".into())),
                }
            })(),
        ));
        out.push(Check::from_result(
            "triangle-identity-tensor",
            name(),
            self.triangle_tensor(n).map(|ok| (ok, String::new())),
        ));
        out.push(Check::from_result(
            "unit-inverted-by-tensor",
            name(),
            (|| Ok((self.sigma_member(&self.unit(n)?.record.map)?, String::new())))(),
        ));
        match self.in_y(n) {
            Ok(true) => out.push(Check::from_result(
                "tensor-lands-in-T",
                name(),
                (|| {
                    let gn = self.g(n)?.module;
                    let t = self.in_t(&gn)?.value;
                    let back = self.counit(&gn)?.record.iso;
                    Ok((t && back, format!("Ext1(T, N ⊗ T) = 0 {t}, counit on N ⊗ T iso {back}")))
                })(),
            )),
            Ok(false) => {}
            Err(e) => out.push(Check::new("tensor-lands-in-T", name(), false, format!("error: {e}"))),
        }
        match self.in_x(n) {
            Ok(true) => out.push(Check::from_result(
                "tor-lands-in-F",
                name(),
                (|| {
                    let k = self.t1(n)?.module;
                    let fr = self.in_f(&k)?.value;
                    let back = self.xi(&k)?.iso;
                    Ok((fr && back, format!("Hom(T, Tor1(N,T)) = 0 {fr}, xi on Tor1(N,T) iso {back}")))
                })(),
            )),
            Ok(false) => {}
            Err(e) => out.push(Check::new("tor-lands-in-F", name(), false, format!("error: {e}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;
    use crate::homology::{projective_indecomposable, simple_module};
    use crate::linalg::Field;
    use crate::module::direct_sum;

    fn a2_context(f: Field) -> (Arc<Algebra>, TiltingContext) {
        let a = Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(2)).unwrap());
        let p1 = projective_indecomposable(&a, 0).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let t = direct_sum(&a, &[&p1, &s1]).unwrap().module;
        let ctx = build_context(&t, 3).unwrap();
        (a, ctx)
    }

    #[test]
    fn context_dimensions() {
        let (_, ctx) = a2_context(Field::Rational);
        assert_eq!(ctx.s().dim(), 3);
        let p = ctx.presentation.as_ref().unwrap();
        assert_eq!(p.hom0.dim(), 4);
        assert_eq!(p.hom1.dim(), 1);
        assert!(p.is_exact(ctx.bimodule()));
        assert!(p.is_projective().unwrap());
    }

    #[test]
    fn natural_maps_on_simples() {
        let (a, ctx) = a2_context(Field::Rational);
        let s2 = simple_module(&a, 1).unwrap();
        let c = ctx.counit(&s2).unwrap();
        assert_eq!(c.tensor.module.dim(), 0);
        assert!(!c.record.iso);
        let xi = ctx.xi(&s2).unwrap();
        assert!(xi.iso && xi.consistent);
        let xi_t = ctx.xi(&ctx.t).unwrap();
        assert!(!xi_t.iso);
        let theta0 = ctx.theta(&RightModule::zero(ctx.s())).unwrap();
        assert!(theta0.iso);
        assert!(ctx.counit(&ctx.t).unwrap().record.iso);
    }

    #[test]
    fn theorem_on_regular_and_apr_contexts() {
        for f in [Field::Rational, Field::Prime(3)] {
            let (a, ctx) = a2_context(f);
            let probes_r: Vec<Probe> = crate::homology::simple_modules(&a)
                .unwrap()
                .into_iter()
                .chain(crate::homology::projective_modules(&a).unwrap())
                .enumerate()
                .map(|(i, m)| Probe::new(format!("m{i}"), m))
                .collect();
            let s = ctx.s().clone();
            let probes_s: Vec<Probe> = crate::homology::simple_modules(&s)
                .unwrap()
                .into_iter()
                .chain(crate::homology::projective_modules(&s).unwrap())
                .chain(crate::homology::injective_modules(&s).unwrap())
                .enumerate()
                .map(|(i, m)| Probe::new(format!("n{i}"), m))
                .collect();
            let checks = ctx.verify_theorem(&probes_r, &probes_s);
            let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
            assert!(bad.is_empty(), "{bad:#?}");
        }
    }

    #[test]
    fn negative_control_fails() {
        let f = Field::Rational;
        let a = Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(2)).unwrap());
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let t = direct_sum(&a, &[&s1, &s2]).unwrap().module;
        assert!(build_context(&t, 3).is_err());
        let ctx = build_context_unchecked(&t, 3).unwrap();
        let probes = vec![Probe::new("S1", s1), Probe::new("S2", s2)];
        let checks = ctx.verify_theorem(&probes, &[]);
        assert!(checks.iter().any(|c| c.status == crate::report::Status::Fail));
    }

    #[test]
    fn ore_witnesses() {
        let (a, ctx) = a2_context(Field::Rational);
        let s = ctx.s().clone();
        let x = crate::homology::simple_module(&s, 0).unwrap();
        let unit = ctx.unit(&x).unwrap().record.map;
        let z = RightModule::regular(&s);
        let hom = hom_space(&x, &z).unwrap();
        for i in 0..hom.dim() {
            let f = hom.morphism(i);
            let c = ctx.ore_left_completion(&unit, &f).unwrap();
            assert!(c.verified);
        }
        let id = ModuleMorphism::identity(&x);
        let (_, ok) = ctx.ore_equalizer(&id, &id, &id).unwrap();
        assert!(ok);
        let _ = a;
    }
}
