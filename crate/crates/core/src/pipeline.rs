//! The three verification runs driven by the command line: tilting
//! recognition, the module-level equivalence, and the derived equivalence.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{s_probes, standard_modules};
use crate::derived::{
    cone, derived_counit, fully_faithful_check, ker_lg_member, les_check, lg, lg_resolved, random_chain_map,
    random_complex, rh, sigma_derived_member, theta_derived_iso, xi_derived_iso, ChainMap, Complex,
};
use crate::equivalence::{build_context_unchecked, TiltingContext};
use crate::homology::{ext1, hom_space, projective_modules};
use crate::input::Document;
use crate::linalg::Mat;
use crate::module::{ModuleMorphism, RightModule};
use crate::report::{Check, Probe};
use crate::tilting::{gen_equals_perp_check, is_tilting, partial_cotilting_check, rej_radical_check, T3Search};
use crate::{Error, Result};

/// Sampling sizes and bounds shared by the runs.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Extra room for the coresolution search: `dim T₀ ≤ dim R + bound`.
    /// `None` means `dim T`.
    pub bound: Option<usize>,
    pub ses_samples: usize,
    pub ore_samples: usize,
    pub window: RangeInclusive<i32>,
    pub samples: usize,
    pub ff_pairs: usize,
    pub max_len: usize,
    pub max_dim: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            seed: 0,
            bound: None,
            ses_samples: 200,
            ore_samples: 100,
            window: -2..=2,
            samples: 50,
            ff_pairs: 10,
            max_len: 4,
            max_dim: 8,
        }
    }
}

/// Checks plus wall time per phase.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub timings: Vec<(String, Duration)>,
}

impl Outcome {
    fn phase<T>(&mut self, name: &str, f: impl FnOnce(&mut Vec<Check>) -> T) -> T {
        let start = Instant::now();
        let out = f(&mut self.checks);
        self.timings.push((name.to_string(), start.elapsed()));
        out
    }
}

fn bound_for(t: &RightModule, opts: &Options) -> usize {
    opts.bound.unwrap_or(t.dim())
}

/// The axioms for every declared tilting module, each failure naming its
/// axiom, and `Gen T = T⊥` on the probes.
pub fn check_tilting(doc: &Document, opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let probes = doc.probe_list();
    for name in &doc.tilting {
        let t = doc.module(name).expect("checked while parsing");
        let bound = bound_for(t, opts);
        let check = out.phase(&format!("axioms:{name}"), |_| is_tilting(t, bound))?;
        let checks = &mut out.checks;
        checks.push(Check::new(
            "axiom-T1-projective-dimension",
            name.as_str(),
            check.t1,
            if check.t1 { "pd T ≤ 1" } else { "pd T > 1" },
        ));
        checks.push(Check::new(
            "axiom-T2-no-self-extensions",
            name.as_str(),
            check.t2,
            format!("dim Ext1(T, T) = {}", check.self_ext_dim),
        ));
        checks.push(match &check.t3 {
            T3Search::Found(c) => Check::new(
                "axiom-T3-coresolution",
                name.as_str(),
                c.verify(),
                format!(
                    "0 → R → T0 → T1 → 0 with dim T0 = {}, dim T1 = {}, T0 multiplicities {:?}, T1 multiplicities {:?} ({})",
                    c.t0.dim(),
                    c.t1.dim(),
                    c.t0_multiplicities,
                    c.t1_multiplicities,
                    c.method
                ),
            ),
            T3Search::Disproved(why) => Check::new("axiom-T3-coresolution", name.as_str(), false, why.clone()),
            T3Search::Exhausted(why) => Check::undecided(
                "axiom-T3-coresolution",
                name.as_str(),
                format!("no coresolution with dim T0 ≤ dim R + {bound}: {why}"),
            ),
        });
        let failing: Vec<&str> = [(check.t1, "T1"), (check.t2, "T2"), (check.t3.coresolution().is_some(), "T3")]
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, a)| *a)
            .collect();
        checks.push(match &check.verdict {
            crate::tilting::Verdict::Yes => Check::new("is-tilting", name.as_str(), true, "T1, T2, T3 hold"),
            crate::tilting::Verdict::No(why) => {
                Check::new("is-tilting", name.as_str(), false, format!("fails {}: {why}", failing.join(", ")))
            }
            crate::tilting::Verdict::Undecided(why) => {
                Check::undecided("is-tilting", name.as_str(), format!("bound {bound}: {why}"))
            }
        });
        let mods: Vec<RightModule> = probes.iter().map(|p| p.module.clone()).collect();
        let rows = out.phase(&format!("gen-perp:{name}"), |_| gen_equals_perp_check(t, &mods))?;
        for (p, row) in probes.iter().zip(rows) {
            out.checks.push(Check::new(
                "gen-equals-perp",
                format!("{name}/{}", p.name),
                row.agrees(),
                format!("in Gen T {}, Ext1(T, M) = 0 {}", row.in_gen, row.in_perp),
            ));
        }
    }
    Ok(out)
}

/// The first declared tilting module and its context. A module that fails
/// the axioms still gets a context so that the claims can be exercised as
/// a negative control; the verdict is recorded as a check.
pub fn context(doc: &Document, opts: &Options, checks: &mut Vec<Check>) -> Result<(String, TiltingContext)> {
    let name = doc
        .tilting
        .first()
        .ok_or_else(|| Error::InvalidModule("no tilting module declared".into()))?
        .clone();
    let t = doc.module(&name).expect("checked while parsing");
    let bound = bound_for(t, opts);
    let ctx = build_context_unchecked(t, bound)?;
    checks.push(match &ctx.check.verdict {
        crate::tilting::Verdict::Yes => {
            let exact = ctx.presentation.as_ref().is_some_and(|p| p.is_exact(ctx.bimodule()));
            Check::new("is-tilting", name.as_str(), exact, "certified; presentation of T over End(T) exact")
        }
        crate::tilting::Verdict::No(why) => Check::new("is-tilting", name.as_str(), false, why.clone()),
        crate::tilting::Verdict::Undecided(why) => {
            Check::undecided("is-tilting", name.as_str(), format!("bound {bound}: {why}"))
        }
    });
    Ok((name, ctx))
}

/// Resolves a `--probes` selection against the document.
pub fn select_probes(doc: &Document, names: Option<&[String]>) -> Result<Vec<Probe>> {
    match names {
        None => Ok(doc.probe_list()),
        Some(names) => names
            .iter()
            .map(|n| {
                doc.module(n)
                    .map(|m| Probe::new(n.clone(), m.clone()))
                    .ok_or_else(|| Error::InvalidModule(format!("unknown probe {n:?}")))
            })
            .collect(),
    }
}

/// An automorphism of `m` drawn at random, or the identity after a few
/// singular draws.
fn random_automorphism(m: &RightModule, rng: &mut ChaCha8Rng) -> Result<ModuleMorphism> {
    let end = hom_space(m, m)?;
    for _ in 0..8 {
        let a = end.random(rng, 4);
        if a.rank() == m.dim() {
            return Ok(ModuleMorphism::new_unchecked(m, m, a));
        }
    }
    Ok(ModuleMorphism::identity(m))
}

fn random_hom(x: &RightModule, z: &RightModule, rng: &mut ChaCha8Rng) -> Result<ModuleMorphism> {
    let hom = hom_space(x, z)?;
    let m = if hom.dim() == 0 { Mat::zeros(x.field(), x.dim(), z.dim()) } else { hom.random(rng, 4) };
    Ok(ModuleMorphism::new_unchecked(x, z, m))
}

/// A random map `h: Y → Z` with `s∘h = 0`.
fn random_annihilated(s: &ModuleMorphism, z: &RightModule, rng: &mut ChaCha8Rng) -> Result<Mat> {
    let y = s.target();
    let fld = y.field();
    let hom = hom_space(y, z)?;
    let basis = hom.basis();
    if basis.is_empty() || s.source().dim() == 0 {
        return Ok(if basis.is_empty() { Mat::zeros(fld, y.dim(), z.dim()) } else { hom.random(rng, 4) });
    }
    let rows: Vec<Mat> = basis.iter().map(|b| (s.matrix() * b).flatten()).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let k = Mat::vstack(fld, rows[0].cols(), &refs).left_kernel();
    if k.rows() == 0 {
        return Ok(Mat::zeros(fld, y.dim(), z.dim()));
    }
    let c = &Mat::random(fld, 1, k.rows(), rng, 4) * &k;
    Ok(hom.element(&c))
}

/// Everything about the equivalence between `T⊥` and the classes over
/// `S = End(T)`: the theorem claims, the partial cotilting dual, rejects,
/// class sweeps, closure of `E` on sampled sequences, and fraction
/// witnesses.
pub fn verify_bb(doc: &Document, probes: &[Probe], opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (tname, ctx) = out.phase("context", |checks| context(doc, opts, checks))?;
    let sp = out.phase("s-probes", |_| s_probes(&ctx, probes))?;
    out.phase("theorem", |checks| checks.extend(ctx.verify_theorem(probes, &sp)));
    out.phase("dual", |checks| {
        checks.push(Check::from_result(
            "dual-partial-cotilting",
            format!("{tname}^d"),
            partial_cotilting_check(ctx.bimodule()).map(|p| {
                (p.holds() && p.tor_vanishes, format!("{p:?}"))
            }),
        ));
        for p in &sp {
            let n = &p.module;
            checks.push(Check::from_result(
                "ext-into-dual-equals-tor",
                format!("S:{}", p.name),
                (|| {
                    let e = ext1(n, &ctx.td)?.dim();
                    let t = ctx.t1(n)?.module.dim();
                    Ok((e == t, format!("dim Ext1(N, T^d) = {e}, dim Tor1(N, T) = {t}")))
                })(),
            ));
            checks.push(Check::from_result(
                "reject-radical",
                format!("S:{}", p.name),
                rej_radical_check(&ctx.td, n).map(|r| (r.holds(), format!("{r:?}"))),
            ));
        }
    });
    out.phase("class-sweep", |checks| {
        for p in &sp {
            let n = &p.module;
            checks.push(Check::from_result(
                "Y-equals-cogenerated",
                format!("S:{}", p.name),
                (|| {
                    let y = ctx.in_y(n)?;
                    let f = ctx.in_ftd(n)?.value;
                    Ok((y == f, format!("unit iso {y}, Rej_{{T^d}}(N) = 0 {f}")))
                })(),
            ));
            checks.push(Check::from_result(
                "X-equals-tensor-kernel",
                format!("S:{}", p.name),
                (|| {
                    let x = ctx.in_x(n)?;
                    let t = ctx.in_ttd(n)?.value;
                    Ok((x == t, format!("theta iso {x}, Hom(N, T^d) = 0 {t}")))
                })(),
            ));
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    out.phase("E-closure", |checks| e_closure(&ctx, &sp, opts, &mut rng, checks));
    out.phase("ore", |checks| ore_witnesses(&ctx, &sp, opts, &mut rng, checks));
    Ok(out)
}

/// Random short exact sequences `0 → A → B → C → 0` of `S`-modules from
/// extensions between probes: two-out-of-three for `E`, and the sweep that
/// no nonzero module met lies in `E`.
fn e_closure(ctx: &TiltingContext, sp: &[Probe], opts: &Options, rng: &mut ChaCha8Rng, checks: &mut Vec<Check>) {
    if sp.is_empty() {
        return;
    }
    let fld = ctx.s().field();
    let mut violations = Vec::new();
    let mut nonzero_in_e = Vec::new();
    let mut max_dim = 0;
    let mut errors = Vec::new();
    for k in 0..opts.ses_samples {
        let a = &sp[rng.gen_range(0..sp.len())];
        let c = &sp[rng.gen_range(0..sp.len())];
        let r = (|| -> Result<(bool, bool, bool, usize)> {
            let ext = ext1(&c.module, &a.module)?;
            let class = Mat::random(fld, 1, ext.dim(), rng, 4);
            let b = ext.extension(&class)?.module;
            let e = |m: &RightModule| -> Result<bool> { Ok(ctx.in_e(m)?.value) };
            Ok((e(&a.module)?, e(&b)?, e(&c.module)?, b.dim()))
        })();
        match r {
            Ok((ea, eb, ec, db)) => {
                if (ea as u8 + eb as u8 + ec as u8) == 2 {
                    violations.push(format!("#{k}: {} → ? → {}", a.name, c.name));
                }
                if eb && db > 0 {
                    nonzero_in_e.push(format!("#{k}: extension of {} by {}", c.name, a.name));
                }
                max_dim = max_dim.max(db);
            }
            Err(e) => errors.push(format!("#{k}: {e}")),
        }
    }
    for p in sp {
        if p.module.dim() > 0 && ctx.in_e(&p.module).map(|m| m.value).unwrap_or(false) {
            nonzero_in_e.push(format!("probe {}", p.name));
        }
    }
    let n = opts.ses_samples;
    checks.push(if errors.is_empty() {
        Check::new(
            "class-E-two-out-of-three",
            "sampled-sequences",
            violations.is_empty(),
            if violations.is_empty() {
                format!("{n} sequences, no violation (vacuous when E = 0)")
            } else {
                format!("violations: {}", violations.join("; "))
            },
        )
    } else {
        Check::new("class-E-two-out-of-three", "sampled-sequences", false, errors.join("; "))
    });
    checks.push(Check::new(
        "class-E-is-zero-up-to-cap",
        "sampled-sequences",
        nonzero_in_e.is_empty() && errors.is_empty(),
        if nonzero_in_e.is_empty() {
            format!("{} probes and {n} sampled middle terms of dim ≤ {max_dim}: E ∩ sample = {{0}}", sp.len())
        } else {
            format!("nonzero members: {}", nonzero_in_e.join("; "))
        },
    ));
}

/// Fraction witnesses for `s ∈ Σ`: left completions for random `(s, f)`
/// and equalizers for random `f, g` agreeing after `s`.
fn ore_witnesses(ctx: &TiltingContext, sp: &[Probe], opts: &Options, rng: &mut ChaCha8Rng, checks: &mut Vec<Check>) {
    if sp.is_empty() {
        return;
    }
    let mut completion_fail = Vec::new();
    let mut equalizer_fail = Vec::new();
    for k in 0..opts.ore_samples {
        let x = &sp[rng.gen_range(0..sp.len())];
        let z = &sp[rng.gen_range(0..sp.len())];
        let r = (|| -> Result<(bool, bool)> {
            // s = η_X after a random automorphism of X, so s ∈ Σ
            let aut = random_automorphism(&x.module, rng)?;
            let eta = ctx.unit(&x.module)?.record.map;
            let s = aut.then(&eta)?;
            let f = random_hom(&x.module, &z.module, rng)?;
            let c = ctx.ore_left_completion(&s, &f)?;
            let y = s.target().clone();
            let f2 = random_hom(&y, &z.module, rng)?;
            let h = random_annihilated(&s, &z.module, rng)?;
            let g2 = ModuleMorphism::new_unchecked(&y, &z.module, f2.matrix() + &h);
            let (_, eq) = ctx.ore_equalizer(&s, &f2, &g2)?;
            Ok((c.verified, eq))
        })();
        match r {
            Ok((c, e)) => {
                if !c {
                    completion_fail.push(format!("#{k} ({} → {})", x.name, z.name));
                }
                if !e {
                    equalizer_fail.push(format!("#{k} ({} → {})", x.name, z.name));
                }
            }
            Err(e) => {
                completion_fail.push(format!("#{k}: {e}"));
                equalizer_fail.push(format!("#{k}: {e}"));
            }
        }
    }
    let n = opts.ore_samples;
    for (claim, fails) in [("ore-left-completion", completion_fail), ("ore-equalizer", equalizer_fail)] {
        checks.push(Check::new(
            claim,
            "sampled-pairs",
            fails.is_empty(),
            if fails.is_empty() { format!("{n} seeded pairs verified exactly") } else { fails.join("; ") },
        ));
    }
}

/// `(name, complex)` pairs: the declared complexes over `R` followed by
/// `samples` random ones.
fn r_complexes(doc: &Document, opts: &Options, rng: &mut ChaCha8Rng) -> Result<Vec<(String, Complex)>> {
    let alg = &doc.algebra;
    let mut out: Vec<(String, Complex)> =
        doc.complexes.iter().map(|(n, c)| (format!("input:{n}"), c.clone())).collect();
    let mut pool = standard_modules(alg)?.modules;
    pool.extend(doc.modules.iter().filter(|p| p.module.dim() > 0 && p.module.dim() <= opts.max_dim).map(|p| p.module.clone()));
    for k in 0..opts.samples {
        let c = random_complex(alg, &pool, opts.max_len, opts.max_dim, rng)?;
        out.push((format!("sample-{k:03}"), c));
    }
    Ok(out)
}

fn s_complexes(ctx: &TiltingContext, sp: &[Probe], opts: &Options, rng: &mut ChaCha8Rng) -> Result<Vec<(String, Complex)>> {
    let pool: Vec<RightModule> = sp.iter().filter(|p| p.module.dim() > 0 && p.module.dim() <= opts.max_dim).map(|p| p.module.clone()).collect();
    let mut out = Vec::new();
    if pool.is_empty() {
        return Ok(out);
    }
    for k in 0..opts.samples.div_ceil(2) {
        out.push((format!("S-sample-{k:03}"), random_complex(ctx.s(), &pool, opts.max_len.min(3), opts.max_dim, rng)?));
    }
    let proj = projective_modules(ctx.s())?;
    for k in 0..opts.samples.div_ceil(5) {
        out.push((format!("S-projective-{k:03}"), random_complex(ctx.s(), &proj, opts.max_len.min(3), opts.max_dim, rng)?));
    }
    Ok(out)
}

fn undecided_on_cap(claim: &str, subject: &str, r: Result<(bool, String)>) -> Check {
    match r {
        Err(Error::CapExceeded(why)) => Check::undecided(claim, subject, why),
        r => Check::from_result(claim, subject, r),
    }
}

/// The derived counit, the long exact sequences, full faithfulness,
/// `Ker(LG)` and the maps inverted by `LG`, and the module-level `θ`, `ξ`
/// against their derived counterparts.
pub fn verify_derived(doc: &Document, opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (_, ctx) = out.phase("context", |checks| context(doc, opts, checks))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let xs = out.phase("sampling", |_| r_complexes(doc, opts, &mut rng))?;
    out.phase("counit", |checks| {
        for (name, x) in &xs {
            checks.push(undecided_on_cap(
                "derived-counit-quasi-iso",
                name,
                derived_counit(&ctx, x).map(|c| {
                    let chain = c.map.is_chain_map();
                    (chain && c.is_quasi_iso(), format!("chain map {chain}, cohomology {:?}", x.cohomology_dims()))
                }),
            ));
        }
    });
    out.phase("les", |checks| {
        for (name, x) in &xs {
            let r = rh(&ctx, x).and_then(|r| les_check(&ctx, &r.complex));
            checks.push(undecided_on_cap(
                "les-exact",
                name,
                r.clone().map(|l| (l.termwise_right_exact && l.les_exact, format!("{} nodes", l.nodes))),
            ));
            checks.push(match r {
                Ok(l) => match l.tensor_quasi_iso {
                    Some(ok) => Check::new("tensor-matches-cone", name.as_str(), ok, "on RH(X)"),
                    None => Check::undecided("tensor-matches-cone", name.as_str(), "some term has Tor1(-, T) ≠ 0"),
                },
                Err(e) => undecided_on_cap("tensor-matches-cone", name, Err(e)),
            });
        }
    });
    let sp = out.phase("s-probes", |_| s_probes(&ctx, &doc.probe_list()))?;
    let cs = out.phase("sampling", |_| s_complexes(&ctx, &sp, opts, &mut rng))?;
    out.phase("S-complexes", |checks| {
        for (name, c) in &cs {
            if name.starts_with("S-projective") {
                checks.push(Check::from_result(
                    "tensor-matches-cone",
                    name,
                    les_check(&ctx, c).map(|l| {
                        (l.holds() && l.tensor_quasi_iso == Some(true), format!("{l:?}"))
                    }),
                ));
            }
            checks.push(Check::from_result(
                "ker-LG-iff-acyclic",
                name,
                ker_lg_member(&ctx, c).map(|k| {
                    let a = c.is_acyclic();
                    (k == a, format!("LG(C) acyclic {k}, C acyclic {a}"))
                }),
            ));
            checks.push(Check::from_result(
                "ker-LG-contains-cones-of-identities",
                name,
                cone(&ChainMap::identity(c)).and_then(|k| ker_lg_member(&ctx, &k.complex)).map(|k| (k, String::new())),
            ));
            checks.push(undecided_on_cap(
                "LG-two-term-matches-resolution",
                name,
                (|| {
                    let a = lg(&ctx, c)?.complex().cohomology_dims();
                    let (r, complete) = lg_resolved(&ctx, c)?;
                    let b = r.cohomology_dims();
                    let nz = |m: &std::collections::BTreeMap<i32, usize>| {
                        m.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (*k, *d)).collect::<Vec<_>>()
                    };
                    if !complete {
                        return Err(Error::Undecided(format!(
                            "projective resolution cut after {} degrees",
                            crate::derived::RESOLUTION_CAP
                        )));
                    }
                    Ok((nz(&a) == nz(&b), format!("two-term {:?}, resolved {:?}", nz(&a), nz(&b))))
                })(),
            ));
        }
        for (k, w) in cs.windows(2).enumerate() {
            let (x, y) = (&w[0].1, &w[1].1);
            let maps = [Ok(ChainMap::identity(x)), random_chain_map(x, y, &mut rng)];
            for (j, f) in maps.into_iter().enumerate() {
                checks.push(Check::from_result(
                    "sigma-derived-iff-cone-in-kernel",
                    format!("S-map-{k:03}-{j}"),
                    f.and_then(|f| sigma_derived_member(&ctx, &f)).map(|(qi, ker)| {
                        (qi == ker, format!("LG(f) quasi-iso {qi}, cone in Ker(LG) {ker}"))
                    }),
                ));
            }
        }
    });
    out.phase("fully-faithful", |checks| {
        let window = opts.window.clone();
        for k in 0..opts.ff_pairs.min(xs.len() * xs.len()) {
            let i = rng.gen_range(0..xs.len());
            let j = rng.gen_range(0..xs.len());
            let (x, y) = (&xs[i], &xs[j]);
            let subject = format!("{}->{}#{k}", x.0, y.0);
            let r = fully_faithful_check(&ctx, &x.1, &y.1, window.clone()).map(|row| {
                (row.holds(), format!("(n, dim R side, dim S side, iso) {:?}", row.degrees))
            });
            checks.push(match r {
                Err(Error::Undecided(why)) => Check::undecided(
                    "fully-faithful",
                    subject,
                    format!("{why} (resolution cap {})", crate::derived::RESOLUTION_CAP),
                ),
                r => Check::from_result("fully-faithful", subject, r),
            });
        }
    });
    out.phase("theta-xi", |checks| {
        for p in doc.probe_list() {
            let m = &p.module;
            if ctx.in_f(m).map(|f| f.value).unwrap_or(false) {
                checks.push(undecided_on_cap(
                    "xi-derived-agrees",
                    &format!("R:{}", p.name),
                    (|| {
                        let a = xi_derived_iso(&ctx, m)?;
                        let b = ctx.xi(m)?.iso;
                        Ok((a == b, format!("derived {a}, module level {b}")))
                    })(),
                ));
            }
        }
        for p in &sp {
            checks.push(undecided_on_cap(
                "theta-derived-agrees",
                &format!("S:{}", p.name),
                (|| {
                    let a = theta_derived_iso(&ctx, &p.module)?;
                    let b = ctx.theta(&p.module)?.iso;
                    Ok((a == b, format!("derived {a}, module level {b}")))
                })(),
            ));
        }
    });
    Ok(out)
}
