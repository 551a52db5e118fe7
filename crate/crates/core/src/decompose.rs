//! Krull–Schmidt decompositions by Fitting's lemma and isomorphism tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::homology::hom_space;
use crate::linalg::{minimal_polynomial, primary_component, Field, Mat, RowSpace};
use crate::module::{ModuleMorphism, RightModule};
use crate::{Error, Result};

/// Largest `|E/rad E|` enumerated over a finite field.
const ENUMERATION_CAP: u64 = 1 << 12;
const RANDOM_TRIES: usize = 24;
const SEED: u64 = 0x7e57_ab1e;

pub(crate) enum Split {
    Parts(Vec<RowSpace>),
    Indecomposable,
    Undecided(String),
}

/// Looks for an element of the algebra spanned by `mats` (endomorphisms of
/// `k^n`, closed under products, identity in the span) whose minimal
/// polynomial has two coprime factors. Otherwise certifies locality through
/// `E/rad E`, if it can.
pub(crate) fn split_by_endomorphisms(field: Field, n: usize, mats: &[Mat]) -> Result<Split> {
    if n <= 1 {
        return Ok(Split::Indecomposable);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (n as u64) ^ ((mats.len() as u64) << 32));
    let mut single_factors: Vec<(usize, bool)> = Vec::new();
    let try_split = |phi: &Mat, single: &mut Vec<(usize, bool)>| -> Option<Vec<RowSpace>> {
        let mu = minimal_polynomial(phi);
        let fac = mu.factor();
        if fac.parts.len() >= 2 {
            return Some(fac.parts.iter().map(|p| primary_component(phi, &p.poly, p.multiplicity)).collect());
        }
        if let Some(p) = fac.parts.first() {
            single.push((p.poly.degree().unwrap_or(0), p.irreducible));
        }
        None
    };
    for m in mats {
        if let Some(parts) = try_split(m, &mut single_factors) {
            return Ok(Split::Parts(parts));
        }
    }
    if mats.len() > 1 {
        for _ in 0..RANDOM_TRIES {
            let c = Mat::random(field, 1, mats.len(), &mut rng, 7);
            let refs: Vec<&Mat> = mats.iter().collect();
            let phi = Mat::linear_combination(field, n, n, &c.entries(), &refs);
            if let Some(parts) = try_split(&phi, &mut single_factors) {
                return Ok(Split::Parts(parts));
            }
        }
    }

    let (quotient_dim, complement, commutative) = semisimple_quotient(field, n, mats)?;
    if quotient_dim == 1 {
        return Ok(Split::Indecomposable);
    }
    if commutative && single_factors.iter().any(|&(d, irr)| irr && d == quotient_dim) {
        return Ok(Split::Indecomposable);
    }
    if let Some(order) = field.order() {
        if order.checked_pow(quotient_dim as u32).is_some_and(|s| s <= ENUMERATION_CAP) {
            let elems = field.elements().expect("finite field");
            let mut all_invertible = true;
            let mut idx = vec![0usize; complement.len()];
            loop {
                // next coefficient vector in lexicographic order
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
                let coeffs: Vec<_> = idx.iter().map(|&i| elems[i].clone()).collect();
                let refs: Vec<&Mat> = complement.iter().collect();
                let phi = Mat::linear_combination(field, n, n, &coeffs, &refs);
                if let Some(parts) = try_split(&phi, &mut Vec::new()) {
                    return Ok(Split::Parts(parts));
                }
                if !phi.is_invertible() {
                    all_invertible = false;
                }
            }
            if all_invertible {
                return Ok(Split::Indecomposable);
            }
        }
    }
    Ok(Split::Undecided(format!(
        "endomorphism ring has a semisimple quotient of dimension {quotient_dim} that could not be shown to be a division ring"
    )))
}

/// `dim E/rad E`, matrices spanning a complement of the radical, and
/// whether `E/rad E` is commutative.
fn semisimple_quotient(field: Field, n: usize, mats: &[Mat]) -> Result<(usize, Vec<Mat>, bool)> {
    let flat: Vec<Mat> = mats.iter().map(|m| m.flatten()).collect();
    let refs: Vec<&Mat> = flat.iter().collect();
    let span = RowSpace::span(&Mat::vstack(field, n * n, &refs));
    let basis: Vec<Mat> = (0..span.dim()).map(|i| span.basis().row(i).unflatten(n, n)).collect();
    let r = basis.len();
    let coords = |m: &Mat| -> Result<Mat> {
        span.coords(&m.flatten()).ok_or_else(|| Error::InvalidModule("endomorphisms not closed under products".into()))
    };
    let mut right = Vec::with_capacity(r);
    for bj in &basis {
        let rows = basis.iter().map(|bi| coords(&(bi * bj))).collect::<Result<Vec<_>>>()?;
        let rr: Vec<&Mat> = rows.iter().collect();
        right.push(Mat::vstack(field, r, &rr));
    }
    let unit = coords(&Mat::identity(field, n))?;
    let labels = (0..r).map(|i| format!("f{i}")).collect();
    let e = Algebra::new(field, labels, right, unit)?;
    let rad = e.radical()?;
    let q = rad.quotient_map();
    let complement: Vec<Mat> = (0..q.dim())
        .map(|k| {
            let c = q.section.row(k);
            let rr: Vec<&Mat> = basis.iter().collect();
            Mat::linear_combination(field, n, n, &c.entries(), &rr)
        })
        .collect();
    let mut commutative = true;
    'outer: for i in 0..r {
        for j in (i + 1)..r {
            let c = coords(&(&(&basis[i] * &basis[j]) - &(&basis[j] * &basis[i])))?;
            if !rad.contains(&c) {
                commutative = false;
                break 'outer;
            }
        }
    }
    Ok((q.dim(), complement, commutative))
}

/// One indecomposable summand with its structure maps.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: RightModule,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Every summand certified indecomposable.
    pub complete: bool,
    pub notes: Vec<String>,
}

/// Splits `M` into indecomposables (or pieces that could not be split nor
/// certified, flagged by `complete = false`).
pub fn decompose(m: &RightModule) -> Result<Decomposition> {
    let f = m.field();
    let mut pieces: Vec<RowSpace> = Vec::new();
    let mut complete = true;
    let mut notes = Vec::new();
    if m.dim() > 0 {
        let mut stack = vec![RowSpace::full(f, m.dim())];
        while let Some(space) = stack.pop() {
            let (sub, inc) = m.restrict(&space)?;
            let end = hom_space(&sub, &sub)?.basis();
            match split_by_endomorphisms(f, sub.dim(), &end)? {
                Split::Parts(parts) => {
                    // reversed so the stack pops them in order
                    for p in parts.into_iter().rev() {
                        stack.push(RowSpace::span(&(p.basis() * inc.matrix())));
                    }
                }
                Split::Indecomposable => pieces.push(space),
                Split::Undecided(why) => {
                    complete = false;
                    notes.push(why);
                    pieces.push(space);
                }
            }
        }
    }
    Ok(Decomposition { summands: summands_from_spaces(m, &pieces)?, complete, notes })
}

/// Structure maps for a decomposition of `M` into submodules.
pub(crate) fn summands_from_spaces(m: &RightModule, pieces: &[RowSpace]) -> Result<Vec<Summand>> {
    let f = m.field();
    if pieces.is_empty() {
        return Ok(Vec::new());
    }
    let bases: Vec<&Mat> = pieces.iter().map(|p| p.basis()).collect();
    let q = Mat::vstack(f, m.dim(), &bases);
    let qinv = q.inverse().ok_or_else(|| Error::InvalidModule("summands do not form a direct sum".into()))?;
    let mut out = Vec::with_capacity(pieces.len());
    let mut off = 0;
    for p in pieces {
        let (sub, inc) = m.restrict(p)?;
        let proj = qinv.submatrix(0, m.dim(), off, off + p.dim());
        off += p.dim();
        let projection = ModuleMorphism::new_unchecked(m, &sub, proj);
        out.push(Summand { module: sub, inclusion: inc, projection });
    }
    Ok(out)
}

/// Whether `M` is indecomposable; `Undecided` if locality of `End(M)` could
/// not be settled.
pub fn is_indecomposable(m: &RightModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let end = hom_space(m, m)?.basis();
    match split_by_endomorphisms(m.field(), m.dim(), &end)? {
        Split::Parts(_) => Ok(false),
        Split::Indecomposable => Ok(true),
        Split::Undecided(why) => Err(Error::Undecided(why)),
    }
}

/// For indecomposable `M`, `M ≅ N` iff `g ∘ f` is invertible for some pair
/// of basis morphisms `f: M → N`, `g: N → M`.
pub fn indecomposables_isomorphic(m: &RightModule, n: &RightModule) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    let mn = hom_space(m, n)?;
    let nm = hom_space(n, m)?;
    for f in mn.basis() {
        for g in nm.basis() {
            if (&f * &g).is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Finds an isomorphism by sampling `Hom(M, N)`; `None` if none was hit.
pub fn find_isomorphism(m: &RightModule, n: &RightModule) -> Result<Option<ModuleMorphism>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMorphism::zero(m, n)));
    }
    let hom = hom_space(m, n)?;
    if hom.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for f in hom.basis() {
        if f.is_invertible() {
            return Ok(Some(ModuleMorphism::new_unchecked(m, n, f)));
        }
    }
    for _ in 0..RANDOM_TRIES {
        let f = hom.random(&mut rng, 9);
        if f.is_invertible() {
            return Ok(Some(ModuleMorphism::new_unchecked(m, n, f)));
        }
    }
    Ok(None)
}

/// `M ≅ N`: sampling, then exhaustive search over tiny prime fields, then a
/// comparison of Krull–Schmidt decompositions.
pub fn is_isomorphic(m: &RightModule, n: &RightModule) -> Result<bool> {
    m.require_same_algebra(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if dimension_vector(m) != dimension_vector(n) {
        return Ok(false);
    }
    if find_isomorphism(m, n)?.is_some() {
        return Ok(true);
    }
    let hom = hom_space(m, n)?;
    if let Some(order) = m.field().order() {
        if order.checked_pow(hom.dim() as u32).is_some_and(|s| s <= ENUMERATION_CAP) {
            let elems = m.field().elements().expect("finite field");
            let mut idx = vec![0usize; hom.dim()];
            loop {
                let coeffs: Vec<_> = idx.iter().map(|&i| elems[i].clone()).collect();
                let fm = hom.element(&Mat::row_vector(m.field(), &coeffs));
                if fm.is_invertible() {
                    return Ok(true);
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    return Ok(false);
                }
            }
        }
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if !dm.complete || !dn.complete {
        return Err(Error::Undecided("could not decompose modules to compare them".into()));
    }
    multiset_match(&dm.summands, &dn.summands)
}

/// Pairs up indecomposable summands by isomorphism.
pub fn multiset_match(a: &[Summand], b: &[Summand]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for s in a {
        let mut found = false;
        for (j, t) in b.iter().enumerate() {
            if !used[j] && indecomposables_isomorphic(&s.module, &t.module)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim M·e` for each block idempotent.
pub fn dimension_vector(m: &RightModule) -> Vec<usize> {
    crate::homology::block_idempotents(m.algebra()).iter().map(|e| m.act(e).rank()).collect()
}

/// Representatives of the isomorphism classes among `modules`, with the
/// class of every input.
pub fn group_by_isomorphism(modules: &[RightModule]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(modules.len());
    for (i, m) in modules.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if is_isomorphic(m, &modules[r])? {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    Ok((reps, class_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;
    use crate::module::direct_sum;
    use std::sync::Arc;

    fn kronecker(f: Field) -> Arc<Algebra> {
        let q = QuiverPresentation::new(2).arrow(0, 1, "a").arrow(0, 1, "b");
        Arc::new(Algebra::path_algebra(f, &q).unwrap())
    }

    #[test]
    fn regular_module_splits_into_projectives() {
        for f in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let a = Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(3)).unwrap());
            let d = decompose(&RightModule::regular(&a)).unwrap();
            assert!(d.complete);
            let mut dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
            dims.sort();
            assert_eq!(dims, vec![1, 2, 3]);
            for s in &d.summands {
                assert!(s.inclusion.then(&s.projection).unwrap().matrix().is_identity());
            }
        }
    }

    #[test]
    fn kronecker_regular_modules() {
        let f = Field::Rational;
        let a = kronecker(f);
        let id = Mat::identity(f, 2);
        // (1, J): End is Q(i), a field of dimension 2
        let j = Mat::from_i64(f, &[&[0, 1], &[-1, 0]]);
        let m = RightModule::from_representation(&a, &[2, 2], &[id.clone(), j]).unwrap();
        assert!(is_indecomposable(&m).unwrap());
        // (1, diag(2, 3)) splits
        let d = Mat::from_i64(f, &[&[2, 0], &[0, 3]]);
        let n = RightModule::from_representation(&a, &[2, 2], &[id.clone(), d]).unwrap();
        assert_eq!(decompose(&n).unwrap().summands.len(), 2);
        // (1, Jordan block) is indecomposable with local End of dimension 2
        let jb = Mat::from_i64(f, &[&[5, 1], &[0, 5]]);
        let r = RightModule::from_representation(&a, &[2, 2], &[id, jb]).unwrap();
        assert!(is_indecomposable(&r).unwrap());
    }

    #[test]
    fn isomorphism_tests_agree() {
        for f in [Field::Rational, Field::Prime(2)] {
            let a = kronecker(f);
            let one = Mat::from_i64(f, &[&[1]]);
            let zero = Mat::from_i64(f, &[&[0]]);
            let r0 = RightModule::from_representation(&a, &[1, 1], &[one.clone(), zero.clone()]).unwrap();
            let r1 = RightModule::from_representation(&a, &[1, 1], &[zero.clone(), one.clone()]).unwrap();
            let r2 = RightModule::from_representation(&a, &[1, 1], &[one.clone(), one.clone()]).unwrap();
            assert!(!is_isomorphic(&r0, &r1).unwrap());
            assert!(!is_isomorphic(&r1, &r2).unwrap());
            let s01 = direct_sum(&a, &[&r0, &r1]).unwrap().module;
            let s10 = direct_sum(&a, &[&r1, &r0]).unwrap().module;
            let s00 = direct_sum(&a, &[&r0, &r0]).unwrap().module;
            assert!(is_isomorphic(&s01, &s10).unwrap());
            assert!(!is_isomorphic(&s01, &s00).unwrap());
            let (reps, classes) = group_by_isomorphism(&[r0.clone(), r1.clone(), r0.clone()]).unwrap();
            assert_eq!(reps, vec![0, 1]);
            assert_eq!(classes, vec![0, 1, 0]);
        }
    }
}
