use std::collections::BTreeMap;

use crate::homology::injective_hull;
use crate::linalg::{Mat, RowSpace};
use crate::module::{direct_sum, RightModule};
use crate::{Error, Result};

use super::complex::{ChainMap, Complex};

/// Injective resolutions stop after this many degrees past the top of the
/// input unless told otherwise.
pub const RESOLUTION_CAP: usize = 6;

/// A quasi-isomorphism `X → I` into a complex of injectives, or dually
/// `P → X` from a complex of projectives.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: Complex,
    pub map: ChainMap,
    /// False when the resolution was cut off, so `map` is only a
    /// quasi-isomorphism below the cut.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Complete(usize),
    Through(i32),
    Perp,
}

/// `X → I(X)` with every term injective; fails if more than `cap` degrees
/// past the top of `X` are needed.
pub fn injective_resolution(x: &Complex, cap: usize) -> Result<Resolution> {
    build(x, Stop::Complete(cap))
}

/// Injective terms in degrees `≤ n` only; a quasi-isomorphism in degrees
/// `< n`.
pub fn injective_resolution_through(x: &Complex, n: i32) -> Result<Resolution> {
    build(x, Stop::Through(n))
}

/// Injective hulls up to the top of `X`, then the cokernel in the next
/// degree. The last term is a quotient of an injective, hence in `Gen T`
/// for any tilting `T`, which makes the result `Hom(T, -)`-acyclic.
pub fn perp_resolution(x: &Complex) -> Result<Resolution> {
    build(x, Stop::Perp)
}

fn build(x: &Complex, stop: Stop) -> Result<Resolution> {
    let alg = x.algebra().clone();
    let f = alg.field();
    let x = x.trimmed();
    if x.is_empty() {
        return Ok(Resolution { complex: x.clone(), map: ChainMap::identity(&x), complete: true });
    }
    let (lo, hi) = (x.lo(), x.hi());
    let mut terms: Vec<RightModule> = Vec::new();
    let mut diffs: Vec<Mat> = Vec::new();
    let mut maps: BTreeMap<i32, Mat> = BTreeMap::new();
    // cokernel of the last differential of I, as a quotient of the last term
    let mut coker: Option<(RightModule, Mat)> = None;
    let mut n = lo;
    let complete = loop {
        let xn = x.term(n);
        let (cmod, cproj) = match &coker {
            Some((m, p)) => (m.clone(), p.clone()),
            None => (RightModule::zero(&alg), Mat::zeros(f, 0, 0)),
        };
        let sum = direct_sum(&alg, &[&cmod, &xn])?;
        // (x F^{n-1} q, -x d^{n-1}) for x in X^{n-1}
        let prev = x.dim(n - 1);
        let rel = if prev > 0 && n > lo {
            let mut r = Mat::zeros(f, prev, cmod.dim() + xn.dim());
            r.paste(0, 0, &(&maps[&(n - 1)] * &cproj));
            r.paste(0, cmod.dim(), &x.diff(n - 1).neg());
            r
        } else {
            Mat::zeros(f, 0, cmod.dim() + xn.dim())
        };
        let (b, bproj) = sum.module.quotient(&RowSpace::span(&rel))?;
        let bproj = bproj.matrix().clone();
        if b.dim() == 0 && n > hi {
            break true;
        }
        let last = match stop {
            Stop::Perp => n > hi,
            Stop::Through(m) => n >= m,
            Stop::Complete(cap) => {
                if n > hi + cap as i32 {
                    return Err(Error::CapExceeded(format!(
                        "injective resolution needs more than {cap} degrees past the top"
                    )));
                }
                false
            }
        };
        let (term, emb) = if stop == Stop::Perp && last {
            (b.clone(), Mat::identity(f, b.dim()))
        } else {
            let h = injective_hull(&b)?;
            (h.module, h.embedding.matrix().clone())
        };
        let to_term = &bproj * &emb;
        if n > lo {
            diffs.push(&cproj * &to_term.submatrix(0, cmod.dim(), 0, term.dim()));
        }
        maps.insert(n, to_term.submatrix(cmod.dim(), cmod.dim() + xn.dim(), 0, term.dim()));
        let d_in = match diffs.last() {
            Some(d) if n > lo => d.clone(),
            _ => Mat::zeros(f, 0, term.dim()),
        };
        let (cm, cp) = term.quotient(&RowSpace::span(&d_in))?;
        terms.push(term);
        coker = Some((cm, cp.matrix().clone()));
        if last {
            break stop == Stop::Perp;
        }
        n += 1;
    };
    let complex = Complex::new_unchecked(&alg, lo, terms, diffs);
    let map = ChainMap::new_unchecked(&x, &complex, maps);
    Ok(Resolution { complex, map, complete })
}

/// `P(X) → X` with projective terms, dual to an injective resolution of
/// `D(X)`.
pub fn projective_resolution(x: &Complex, cap: usize) -> Result<Resolution> {
    dualize(x, &injective_resolution(&x.dual(), cap)?)
}

/// Projective terms in degrees `≥ n` only.
pub fn projective_resolution_through(x: &Complex, n: i32) -> Result<Resolution> {
    dualize(x, &injective_resolution_through(&x.dual(), -n)?)
}

fn dualize(x: &Complex, r: &Resolution) -> Result<Resolution> {
    let alg = x.algebra();
    let complex = r.complex.dual_onto(alg)?;
    let x = x.trimmed();
    let maps = (complex.lo()..=complex.hi()).map(|n| (n, r.map.at(-n).transpose())).collect();
    let map = ChainMap::new_unchecked(&complex, &x, maps);
    Ok(Resolution { complex, map, complete: r.complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, QuiverPresentation};
    use crate::derived::complex::random_complex;
    use crate::homology::{is_injective, is_projective, projective_modules, simple_module, simple_modules};
    use crate::linalg::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn a2() -> Arc<Algebra> {
        Arc::new(Algebra::path_algebra(Field::Rational, &QuiverPresentation::linear(2)).unwrap())
    }

    #[test]
    fn resolutions_of_simples() {
        let a = a2();
        // S1 = top of P1 has I = I1 injective already; S2 = P2 embeds into P1
        let s2 = simple_module(&a, 1).unwrap();
        let r = injective_resolution(&Complex::single(&s2, 0), RESOLUTION_CAP).unwrap();
        assert!(r.complete);
        assert_eq!((r.complex.lo(), r.complex.hi()), (0, 1));
        assert!(r.map.is_chain_map() && r.map.is_quasi_iso());
        let s1 = simple_module(&a, 0).unwrap();
        let p = projective_resolution(&Complex::single(&s1, 0), RESOLUTION_CAP).unwrap();
        assert_eq!((p.complex.lo(), p.complex.hi()), (-1, 0));
        assert!(p.map.is_chain_map() && p.map.is_quasi_iso());
        for n in -1..=0 {
            assert!(is_projective(&p.complex.term(n)).unwrap());
        }
    }

    #[test]
    fn random_complexes_resolve() {
        let a = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut pool = projective_modules(&a).unwrap();
        pool.extend(simple_modules(&a).unwrap());
        for _ in 0..12 {
            let x = random_complex(&a, &pool, 3, 5, &mut rng).unwrap();
            let r = injective_resolution(&x, RESOLUTION_CAP).unwrap();
            assert!(r.map.is_chain_map(), "{x:?}");
            assert!(r.map.is_quasi_iso());
            for n in r.complex.lo()..=r.complex.hi() {
                assert!(is_injective(&r.complex.term(n)).unwrap());
            }
            let p = projective_resolution(&x, RESOLUTION_CAP).unwrap();
            assert!(p.map.is_chain_map() && p.map.is_quasi_iso());
            let q = perp_resolution(&x).unwrap();
            assert!(q.map.is_chain_map() && q.map.is_quasi_iso());
        }
    }

    #[test]
    fn infinite_injective_dimension_hits_the_cap() {
        let dual_numbers = QuiverPresentation::new(1)
            .arrow(0, 0, "x")
            .relation(vec![(Field::Rational.one(), vec![0, 0])]);
        let a = Arc::new(Algebra::path_algebra(Field::Rational, &dual_numbers).unwrap());
        let s = simple_module(&a, 0).unwrap();
        let x = Complex::single(&s, 0);
        assert!(matches!(injective_resolution(&x, 3), Err(Error::CapExceeded(_))));
        let t = injective_resolution_through(&x, 2).unwrap();
        assert!(!t.complete);
        assert_eq!(t.complex.hi(), 2);
    }
}
