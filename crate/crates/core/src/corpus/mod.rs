//! The built-in example catalogue, module enumeration, and the tilting
//! modules found on each entry.

pub mod golden;
pub mod oracle;

use std::sync::Arc;

use crate::algebra::{Algebra, QuiverPresentation};
use crate::decompose::{decompose, dimension_vector, is_indecomposable, is_isomorphic};
use crate::equivalence::TiltingContext;
use crate::homology::{
    ext1, injective_indecomposable, injective_modules, projective_indecomposable, projective_modules,
    simple_module, simple_modules,
};
use crate::linalg::{Field, Mat, Scalar};
use crate::module::{direct_sum, RightModule};
use crate::report::Probe;
use crate::tilting::{are_equivalent_tilting, is_tilting, TiltingCheck};
use crate::{Error, Result};

pub use oracle::{oracle_all_extensions, oracle_ext_dim, oracle_hom_dim, oracle_tensor_dim, oracle_tor1_dim};

/// Candidate representations tried per dimension vector before the search
/// gives up on it and flags the list as partial.
pub const SEARCH_CAP: u64 = 1 << 14;
/// Coresolution bound used when filtering tilting candidates.
pub const TILTING_BOUND: usize = 3;

/// Names of the built-in entries.
pub const ENTRY_NAMES: &[&str] = &[
    "field-Q",
    "A2-Q",
    "A2-F2",
    "A2-F3",
    "A3-Q",
    "A3-rad-F3",
    "kronecker-Q",
    "kronecker-F2",
    "dual-numbers-Q",
    "dual-numbers-F3",
    "triangular-F2",
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Arc<Algebra>,
    /// Indecomposables up to isomorphism, possibly capped by dimension.
    pub modules: Vec<Probe>,
    /// Every indecomposable of dimension at most `dim_cap` is listed.
    pub complete: bool,
    pub dim_cap: usize,
    /// How the list was produced.
    pub source: &'static str,
}

/// A list of indecomposables and whether it is exhaustive.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub modules: Vec<RightModule>,
    pub complete: bool,
    pub source: &'static str,
}

fn one(f: Field) -> Scalar {
    f.one()
}

fn quiver_algebra(f: Field, q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    Ok(Arc::new(Algebra::path_algebra(f, q)?))
}

fn kronecker() -> QuiverPresentation {
    QuiverPresentation::new(2).arrow(0, 1, "a").arrow(0, 1, "b")
}

fn dual_numbers(f: Field) -> QuiverPresentation {
    QuiverPresentation::new(1).arrow(0, 0, "x").relation(vec![(one(f), vec![0, 0])])
}

/// Upper triangular 2×2 matrices with basis `e11, e12, e22`.
fn triangular(f: Field) -> Result<Algebra> {
    let z = f.zero();
    let o = f.one();
    let unit = |k: usize| -> Vec<Scalar> { (0..3).map(|j| if j == k { o.clone() } else { z.clone() }).collect() };
    let zero = vec![z.clone(); 3];
    // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22
    let c = vec![
        vec![unit(0), unit(1), zero.clone()],
        vec![zero.clone(), zero.clone(), unit(1)],
        vec![zero.clone(), zero.clone(), unit(2)],
    ];
    Algebra::from_structure_constants(f, vec!["e11".into(), "e12".into(), "e22".into()], &c, &[o.clone(), z, o])
}

pub fn load(name: &str) -> Result<CorpusEntry> {
    let q = Field::Rational;
    let (algebra, cap) = match name {
        "field-Q" => (Arc::new(Algebra::base_field(q)), 3),
        "A2-Q" => (quiver_algebra(q, &QuiverPresentation::linear(2))?, 3),
        "A2-F2" => (quiver_algebra(Field::Prime(2), &QuiverPresentation::linear(2))?, 3),
        "A2-F3" => (quiver_algebra(Field::Prime(3), &QuiverPresentation::linear(2))?, 3),
        "A3-Q" => (quiver_algebra(q, &QuiverPresentation::linear(3))?, 3),
        "A3-rad-F3" => {
            let f = Field::Prime(3);
            (quiver_algebra(f, &QuiverPresentation::linear(3).relation(vec![(one(f), vec![0, 1])]))?, 3)
        }
        "kronecker-Q" => (quiver_algebra(q, &kronecker())?, 3),
        "kronecker-F2" => (quiver_algebra(Field::Prime(2), &kronecker())?, 3),
        "dual-numbers-Q" => (quiver_algebra(q, &dual_numbers(q))?, 2),
        "dual-numbers-F3" => (quiver_algebra(Field::Prime(3), &dual_numbers(Field::Prime(3)))?, 2),
        "triangular-F2" => (Arc::new(triangular(Field::Prime(2))?), 3),
        _ => return Err(Error::InvalidAlgebra(format!("no corpus entry named {name:?}"))),
    };
    let e = match name {
        "kronecker-Q" => kronecker_constructors(&algebra)?,
        "dual-numbers-Q" => Enumeration {
            modules: vec![simple_module(&algebra, 0)?, RightModule::regular(&algebra)],
            complete: true,
            source: "constructors",
        },
        "triangular-F2" => standard_modules(&algebra)?,
        _ => enumerate_modules(&algebra, cap)?,
    };
    let modules = name_modules(&algebra, &e.modules)?;
    Ok(CorpusEntry { name: name.to_string(), algebra, modules, complete: e.complete, dim_cap: cap, source: e.source })
}

pub fn all_entries() -> Result<Vec<CorpusEntry>> {
    ENTRY_NAMES.iter().map(|n| load(n)).collect()
}

/// Indecomposables of dimension at most `dim_cap`: exhaustive search over
/// finite fields, intervals for `A_n` over the rationals.
pub fn enumerate_modules(algebra: &Arc<Algebra>, dim_cap: usize) -> Result<Enumeration> {
    if dim_cap == 0 {
        return Ok(Enumeration { modules: Vec::new(), complete: true, source: "empty" });
    }
    if algebra.dim() == 1 {
        return Ok(Enumeration { modules: vec![RightModule::regular(algebra)], complete: true, source: "field" });
    }
    let Some(quiver) = algebra.quiver() else {
        return Err(Error::Undecided("enumeration needs a quiver presentation".into()));
    };
    if algebra.field().order().is_some() {
        return search_modules(algebra, dim_cap);
    }
    let vertices = quiver.vertices;
    let linear = quiver.arrows.len() + 1 == vertices
        && quiver.arrows.iter().enumerate().all(|(i, (_, s, t))| *s == i && *t == i + 1);
    if linear {
        return interval_modules(algebra, dim_cap);
    }
    Err(Error::Undecided("no constructor list for this quiver over the rationals".into()))
}

/// Thin modules on the intervals of a linear quiver that satisfy the
/// relations.
fn interval_modules(algebra: &Arc<Algebra>, dim_cap: usize) -> Result<Enumeration> {
    let f = algebra.field();
    let n = algebra.quiver().expect("quiver").vertices;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if j - i + 1 > dim_cap {
                continue;
            }
            let dims: Vec<usize> = (0..n).map(|v| usize::from(i <= v && v <= j)).collect();
            let arrows: Vec<Mat> = (0..n - 1)
                .map(|a| {
                    let (s, t) = (dims[a], dims[a + 1]);
                    if s == 1 && t == 1 {
                        Mat::identity(f, 1)
                    } else {
                        Mat::zeros(f, s, t)
                    }
                })
                .collect();
            if let Ok(m) = RightModule::from_representation(algebra, &dims, &arrows) {
                out.push(m);
            }
        }
    }
    Ok(Enumeration { modules: out, complete: dim_cap >= n, source: "intervals" })
}

fn dimension_vectors(vertices: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vertices {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().sum();
            for d in 0..=(cap - used) {
                let mut w = v.clone();
                w.push(d);
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().sum::<usize>() > 0);
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

/// Every representation with entries in the prime field, filtered to
/// indecomposables and merged up to isomorphism.
fn search_modules(algebra: &Arc<Algebra>, dim_cap: usize) -> Result<Enumeration> {
    let f = algebra.field();
    let elements = f.elements().expect("finite field");
    let p = elements.len() as u64;
    let q = algebra.quiver().expect("quiver").clone();
    let mut out: Vec<RightModule> = Vec::new();
    let mut complete = true;
    for dims in dimension_vectors(q.vertices, dim_cap) {
        let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|(_, s, t)| (dims[*s], dims[*t])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let count = p.checked_pow(entries as u32).unwrap_or(u64::MAX);
        if count > SEARCH_CAP {
            complete = false;
            continue;
        }
        let start = out.len();
        for code in 0..count {
            let mut c = code;
            let mut arrows = Vec::with_capacity(shapes.len());
            for &(r, cols) in &shapes {
                let vals: Vec<Scalar> = (0..r * cols)
                    .map(|_| {
                        let s = elements[(c % p) as usize].clone();
                        c /= p;
                        s
                    })
                    .collect();
                arrows.push(Mat::from_scalars(f, r, cols, &vals)?);
            }
            let Ok(m) = RightModule::from_representation(algebra, &dims, &arrows) else { continue };
            if !is_indecomposable(&m)? {
                continue;
            }
            let mut seen = false;
            for o in &out[start..] {
                if is_isomorphic(&m, o)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(m);
            }
        }
    }
    Ok(Enumeration { modules: out, complete, source: "search" })
}

/// Small Kronecker modules over the rationals: the simples, the three
/// regular modules `k --(x, y)--> k` for `[x : y] ∈ {[1:0], [0:1], [1:1]}`,
/// and the modules of dimension vectors `(1, 2)` and `(2, 1)`.
fn kronecker_constructors(algebra: &Arc<Algebra>) -> Result<Enumeration> {
    let f = algebra.field();
    let m = |r: &[&[i64]]| Mat::from_i64(f, r);
    let mut out = Vec::new();
    out.push(RightModule::from_representation(algebra, &[1, 0], &[Mat::zeros(f, 1, 0), Mat::zeros(f, 1, 0)])?);
    out.push(RightModule::from_representation(algebra, &[0, 1], &[Mat::zeros(f, 0, 1), Mat::zeros(f, 0, 1)])?);
    for (x, y) in [(1, 0), (0, 1), (1, 1)] {
        out.push(RightModule::from_representation(algebra, &[1, 1], &[m(&[&[x]]), m(&[&[y]])])?);
    }
    out.push(RightModule::from_representation(algebra, &[1, 2], &[m(&[&[1, 0]]), m(&[&[0, 1]])])?);
    out.push(RightModule::from_representation(algebra, &[2, 1], &[m(&[&[1], &[0]]), m(&[&[0], &[1]])])?);
    // over an infinite field the regular family is not exhausted
    Ok(Enumeration { modules: out, complete: false, source: "constructors" })
}

/// Indecomposable projectives, injectives and simples, up to isomorphism.
pub fn standard_modules(algebra: &Arc<Algebra>) -> Result<Enumeration> {
    let mut all = projective_modules(algebra)?;
    all.extend(injective_modules(algebra)?);
    all.extend(simple_modules(algebra)?);
    Ok(Enumeration { modules: dedupe(all)?, complete: false, source: "projectives, injectives, simples" })
}

fn dedupe(ms: Vec<RightModule>) -> Result<Vec<RightModule>> {
    let mut out: Vec<RightModule> = Vec::new();
    'outer: for m in ms {
        if m.dim() == 0 {
            continue;
        }
        for o in &out {
            if is_isomorphic(&m, o)? {
                continue 'outer;
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `P<i>`, `S<i>` or `I<i>` when the module is an indecomposable
/// projective, simple or injective (in that order of preference), else the
/// dimension vector.
fn name_modules(algebra: &Arc<Algebra>, ms: &[RightModule]) -> Result<Vec<Probe>> {
    let n = crate::homology::idempotents(algebra)?.classes();
    let mut named: Vec<(String, RightModule)> = Vec::new();
    for i in 0..n {
        named.push((format!("P{}", i + 1), projective_indecomposable(algebra, i)?));
    }
    for i in 0..n {
        named.push((format!("S{}", i + 1), simple_module(algebra, i)?));
    }
    for i in 0..n {
        named.push((format!("I{}", i + 1), injective_indecomposable(algebra, i)?));
    }
    let mut out: Vec<Probe> = Vec::new();
    for m in ms {
        let mut name = None;
        for (nm, x) in &named {
            if x.dim() == m.dim() && is_isomorphic(m, x)? {
                name = Some(nm.clone());
                break;
            }
        }
        let mut name = name.unwrap_or_else(|| {
            let dv: Vec<String> = dimension_vector(m).iter().map(|d| d.to_string()).collect();
            format!("M({})", dv.join(","))
        });
        let base = name.clone();
        let mut k = 2;
        while out.iter().any(|p| p.name == name) {
            name = format!("{base}#{k}");
            k += 1;
        }
        out.push(Probe::new(name, m.clone()));
    }
    Ok(out)
}

/// A tilting module found by enumeration, with its basic summands named.
#[derive(Clone, Debug)]
pub struct FoundTilting {
    pub name: String,
    pub summands: Vec<String>,
    pub module: RightModule,
    pub check: TiltingCheck,
}

/// Multiplicity-free sums of the listed modules that are tilting, one per
/// equivalence class. Subsets containing a pair with `Ext¹ ≠ 0` in either
/// direction are skipped, since (T2) already fails for them.
pub fn enumerate_tilting(entry: &CorpusEntry, bound: usize) -> Result<Vec<FoundTilting>> {
    let alg = &entry.algebra;
    let ms = &entry.modules;
    let k = ms.len();
    if k > 16 {
        return Err(Error::CapExceeded(format!("{k} modules is too many to take subsets of")));
    }
    let mut compatible = vec![vec![true; k]; k];
    for i in 0..k {
        for j in 0..k {
            compatible[i][j] = ext1(&ms[i].module, &ms[j].module)?.dim() == 0;
        }
    }
    let mut out: Vec<FoundTilting> = Vec::new();
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        if !idx.iter().all(|&i| idx.iter().all(|&j| compatible[i][j])) {
            continue;
        }
        let parts: Vec<&RightModule> = idx.iter().map(|&i| &ms[i].module).collect();
        let t = direct_sum(alg, &parts)?.module;
        let check = is_tilting(&t, bound)?;
        if let crate::tilting::Verdict::Undecided(why) = &check.verdict {
            return Err(Error::Undecided(format!("{why} (bound {bound})")));
        }
        if !check.verdict.is_yes() {
            continue;
        }
        let mut dup = false;
        for o in &out {
            if are_equivalent_tilting(&o.module, &t)? {
                dup = true;
                break;
            }
        }
        if !dup {
            let summands: Vec<String> = idx.iter().map(|&i| ms[i].name.clone()).collect();
            out.push(FoundTilting { name: summands.join("+"), summands, module: t, check });
        }
    }
    Ok(out)
}

/// Modules over `S = End(T)` to probe with: the simple, projective and
/// injective `S`-modules and the indecomposable summands of `H(M)` and
/// `E¹(M)` for every `R`-probe, up to isomorphism.
pub fn s_probes(ctx: &TiltingContext, r_probes: &[Probe]) -> Result<Vec<Probe>> {
    let s = ctx.s();
    let mut cands: Vec<RightModule> = Vec::new();
    cands.extend(simple_modules(s)?);
    cands.extend(projective_modules(s)?);
    cands.extend(injective_modules(s)?);
    for p in r_probes {
        for m in [ctx.h(&p.module)?.module, ctx.e1(&p.module)?.module] {
            if m.dim() > 0 {
                cands.extend(decompose(&m)?.summands.into_iter().map(|x| x.module));
            }
        }
    }
    let ms = dedupe(cands)?;
    let mut ms: Vec<(Vec<usize>, RightModule)> = ms.into_iter().map(|m| (dimension_vector(&m), m)).collect();
    ms.sort_by(|a, b| (a.1.dim(), &a.0).cmp(&(b.1.dim(), &b.0)));
    let modules: Vec<RightModule> = ms.into_iter().map(|x| x.1).collect();
    name_modules(s, &modules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_enumerations() {
        for name in ["A2-Q", "A2-F2", "A2-F3", "triangular-F2"] {
            let e = load(name).unwrap();
            let mut dims: Vec<Vec<usize>> = e.modules.iter().map(|p| dimension_vector(&p.module)).collect();
            dims.sort();
            assert_eq!(e.modules.len(), 3, "{name}");
            let t = enumerate_tilting(&e, TILTING_BOUND).unwrap();
            assert_eq!(t.len(), 2, "{name}");
        }
        let e = load("A2-Q").unwrap();
        let names: Vec<&str> = e.modules.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["S1", "P1", "P2"]);
        let t: Vec<String> = enumerate_tilting(&e, TILTING_BOUND).unwrap().into_iter().map(|t| t.name).collect();
        assert_eq!(t, ["S1+P1", "P1+P2"]);
    }

    #[test]
    fn small_enumerations() {
        let field = load("field-Q").unwrap();
        assert_eq!(field.modules.len(), 1);
        assert_eq!(enumerate_tilting(&field, 1).unwrap().len(), 1);
        assert!(enumerate_modules(&field.algebra, 0).unwrap().modules.is_empty());
        for name in ["dual-numbers-Q", "dual-numbers-F3"] {
            let e = load(name).unwrap();
            assert_eq!(e.modules.len(), 2, "{name}");
            let t = enumerate_tilting(&e, TILTING_BOUND).unwrap();
            assert_eq!(t.len(), 1);
            assert_eq!(t[0].module.dim(), 2);
        }
        let a3 = load("A3-Q").unwrap();
        assert_eq!(a3.modules.len(), 6);
        assert_eq!(enumerate_tilting(&a3, TILTING_BOUND).unwrap().len(), 5);
        let rad = load("A3-rad-F3").unwrap();
        assert_eq!(rad.modules.len(), 5);
    }

    #[test]
    fn kronecker_lists_agree() {
        let q = load("kronecker-Q").unwrap();
        let f2 = load("kronecker-F2").unwrap();
        // over F2 the regular (1,1) family has the three points of P¹(F2)
        assert_eq!(q.modules.len(), f2.modules.len());
        assert!(f2.complete);
    }
}
