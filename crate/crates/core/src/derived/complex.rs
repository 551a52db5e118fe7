use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{same_algebra, Algebra};
use crate::homology::{dual_over, hom_space};
use crate::linalg::{Mat, QuotientMap, RowSpace};
use crate::module::{direct_sum, ModuleMorphism, RightModule};
use crate::{Error, Result};

/// `k^n` as a module over the base field.
pub fn vector_space(k: &Arc<Algebra>, n: usize) -> RightModule {
    RightModule::new_unchecked(k, n, vec![Mat::identity(k.field(), n)])
}

/// A bounded cochain complex `X^lo → … → X^hi` of right modules, with
/// `d^n: X^n → X^{n+1}` acting on row vectors.
#[derive(Clone, Debug)]
pub struct Complex {
    algebra: Arc<Algebra>,
    lo: i32,
    terms: Vec<RightModule>,
    diffs: Vec<Mat>,
}

impl Complex {
    /// Checks shapes, that each differential is a homomorphism, and
    /// `d∘d = 0`; the error names the offending degree.
    pub fn new(algebra: &Arc<Algebra>, lo: i32, terms: Vec<RightModule>, diffs: Vec<Mat>) -> Result<Complex> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (i, t) in terms.iter().enumerate() {
            if !same_algebra(t.algebra(), algebra) {
                return Err(Error::InvalidComplex(format!("term in degree {} lives over another algebra", lo + i as i32)));
            }
        }
        let x = Complex::new_unchecked(algebra, lo, terms, diffs);
        for (i, d) in x.diffs.iter().enumerate() {
            let n = lo + i as i32;
            if d.shape() != (x.terms[i].dim(), x.terms[i + 1].dim()) {
                return Err(Error::InvalidComplex(format!("differential in degree {n} has the wrong shape")));
            }
            if !x.diff_morphism(n).intertwines() {
                return Err(Error::InvalidComplex(format!("differential in degree {n} is not a homomorphism")));
            }
        }
        for i in 1..x.diffs.len() {
            if !(&x.diffs[i - 1] * &x.diffs[i]).is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 in degree {}", lo + i as i32 - 1)));
            }
        }
        Ok(x)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, lo: i32, terms: Vec<RightModule>, diffs: Vec<Mat>) -> Complex {
        Complex { algebra: algebra.clone(), lo, terms, diffs }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Complex {
        Complex::new_unchecked(algebra, 0, Vec::new(), Vec::new())
    }

    /// `M` concentrated in degree `n`.
    pub fn single(m: &RightModule, n: i32) -> Complex {
        Complex::new_unchecked(m.algebra(), n, vec![m.clone()], Vec::new())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }

    pub fn term(&self, n: i32) -> RightModule {
        match self.index(n) {
            Some(i) => self.terms[i].clone(),
            None => RightModule::zero(&self.algebra),
        }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.index(n).map_or(0, |i| self.terms[i].dim())
    }

    fn index(&self, n: i32) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.terms.len()).then_some(i as usize)
    }

    /// `d^n: X^n → X^{n+1}`, zero outside the bounds.
    pub fn diff(&self, n: i32) -> Mat {
        match self.index(n) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Mat::zeros(self.algebra.field(), self.dim(n), self.dim(n + 1)),
        }
    }

    pub fn diff_morphism(&self, n: i32) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(&self.term(n), &self.term(n + 1), self.diff(n))
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.dim()).sum()
    }

    /// `X[k]^n = X^{n+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg()).collect() };
        Complex::new_unchecked(&self.algebra, self.lo - k, self.terms.clone(), diffs)
    }

    /// The underlying complex of vector spaces.
    pub fn forget(&self) -> Complex {
        let k = Arc::new(Algebra::base_field(self.algebra.field()));
        let terms = self.terms.iter().map(|t| vector_space(&k, t.dim())).collect();
        Complex::new_unchecked(&k, self.lo, terms, self.diffs.clone())
    }

    /// `D(X)` over the opposite algebra, `D(X)^n = D(X^{-n})`.
    pub fn dual(&self) -> Complex {
        self.dual_onto(&self.algebra.opposite_arc()).expect("opposite algebra")
    }

    /// `D(X)` over a given copy of the opposite algebra.
    pub fn dual_onto(&self, op: &Arc<Algebra>) -> Result<Complex> {
        let terms = self.terms.iter().rev().map(|t| dual_over(t, op)).collect::<Result<Vec<_>>>()?;
        let diffs = self.diffs.iter().rev().map(|d| d.transpose()).collect();
        Ok(Complex::new_unchecked(op, -self.hi(), terms, diffs))
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Complex {
        let first = self.terms.iter().position(|t| t.dim() > 0);
        let Some(first) = first else { return Complex::zero(&self.algebra) };
        let last = self.terms.iter().rposition(|t| t.dim() > 0).expect("nonempty");
        Complex::new_unchecked(
            &self.algebra,
            self.lo + first as i32,
            self.terms[first..=last].to_vec(),
            self.diffs[first..last].to_vec(),
        )
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        Cohomology::new(self, n)
    }

    /// `dim H^n` for every degree in the support.
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        (self.lo..=self.hi()).map(|n| (n, self.cohomology(n).dim())).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.cohomology(n).dim() == 0)
    }
}

/// `H^n = ker d^n / im d^{n-1}` with its module structure.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub module: RightModule,
    pub cycles: RowSpace,
    pub boundaries: RowSpace,
    quotient: QuotientMap,
}

impl Cohomology {
    fn new(x: &Complex, n: i32) -> Cohomology {
        let t = x.term(n);
        let cycles = RowSpace::span(&x.diff(n).left_kernel());
        let boundaries = RowSpace::span(&x.diff(n - 1));
        let bc = cycles.coords(boundaries.basis()).expect("d∘d = 0");
        let (zmod, _) = t.restrict(&cycles).expect("cycles form a submodule");
        let bsub = RowSpace::span(&bc);
        let quotient = bsub.quotient_map();
        let (module, _) = zmod.quotient(&bsub).expect("boundaries form a submodule");
        Cohomology { module, cycles, boundaries, quotient }
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Classes of cocycles given as rows in `X^n`.
    pub fn class_of(&self, z: &Mat) -> Option<Mat> {
        Some(&self.cycles.coords(z)? * &self.quotient.proj)
    }

    /// Cocycles representing the given classes.
    pub fn representative(&self, c: &Mat) -> Mat {
        &(c * &self.quotient.section) * self.cycles.basis()
    }

    pub fn representatives(&self) -> Mat {
        self.representative(&Mat::identity(self.cycles.field(), self.dim()))
    }
}

/// A chain map, one matrix per degree (zero where absent).
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    maps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    pub fn new(source: &Complex, target: &Complex, maps: BTreeMap<i32, Mat>) -> Result<ChainMap> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let f = ChainMap::new_unchecked(source, target, maps);
        for (&n, m) in &f.maps {
            if m.shape() != (source.dim(n), target.dim(n)) {
                return Err(Error::InvalidMorphism(format!("chain map component in degree {n} has the wrong shape")));
            }
            if !ModuleMorphism::new_unchecked(&source.term(n), &target.term(n), m.clone()).intertwines() {
                return Err(Error::InvalidMorphism(format!("chain map component in degree {n} is not a homomorphism")));
            }
        }
        if let Some(n) = f.first_non_commuting() {
            return Err(Error::InvalidMorphism(format!("chain map square fails in degree {n}")));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Complex, target: &Complex, maps: BTreeMap<i32, Mat>) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), maps }
    }

    /// `d_X^n · f^{n+1} = f^n · d_Y^n` fails first in this degree.
    pub fn first_non_commuting(&self) -> Option<i32> {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).find(|&n| &self.source.diff(n) * &self.at(n + 1) != &self.at(n) * &self.target.diff(n))
    }

    pub fn is_chain_map(&self) -> bool {
        self.first_non_commuting().is_none()
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let f = x.algebra().field();
        let maps = (x.lo()..=x.hi()).map(|n| (n, Mat::identity(f, x.dim(n)))).collect();
        ChainMap::new_unchecked(x, x, maps)
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::new_unchecked(source, target, BTreeMap::new())
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn at(&self, n: i32) -> Mat {
        match self.maps.get(&n) {
            Some(m) => m.clone(),
            None => Mat::zeros(self.source.algebra().field(), self.source.dim(n), self.target.dim(n)),
        }
    }

    pub fn morphism(&self, n: i32) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(&self.source.term(n), &self.target.term(n), self.at(n))
    }

    /// "First `self`, then `next`".
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        let lo = self.source.lo().min(next.target.lo());
        let hi = self.source.hi().max(next.target.hi());
        let maps = (lo..=hi).map(|n| (n, &self.at(n) * &next.at(n))).collect();
        ChainMap::new_unchecked(&self.source, &next.target, maps)
    }

    /// The same maps between the underlying complexes of vector spaces.
    pub fn forget(&self) -> ChainMap {
        ChainMap::new_unchecked(&self.source.forget(), &self.target.forget(), self.maps.clone())
    }

    /// `H^n(f)` in the bases of the two cohomologies.
    pub fn induced(&self, n: i32) -> Mat {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n);
        let img = &hs.representatives() * &self.at(n);
        ht.class_of(&img).expect("chain maps send cocycles to cocycles")
    }

    pub fn is_quasi_iso(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| {
            let m = self.induced(n);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

/// `Cone(f)^n = X^{n+1} ⊕ Y^n` with `(x, y) ↦ (-d x, f x + d y)`, together
/// with `Y → Cone(f)` and `Cone(f) → X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn cone(f: &ChainMap) -> Result<Cone> {
    let x = f.source();
    let y = f.target();
    let alg = y.algebra().clone();
    let fld = alg.field();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let xn = x.term(n + 1);
        let yn = y.term(n);
        let sum = direct_sum(&alg, &[&xn, &yn])?;
        inc.insert(n, sum.projections[1].matrix().transpose());
        proj.insert(n, sum.projections[0].matrix().clone());
        terms.push(sum.module);
        if n < hi {
            let (a, b) = (xn.dim(), yn.dim());
            let (c, d) = (x.dim(n + 2), y.dim(n + 1));
            let mut m = Mat::zeros(fld, a + b, c + d);
            m.paste(0, 0, &x.diff(n + 1).neg());
            m.paste(0, c, &f.at(n + 1));
            m.paste(a, c, &y.diff(n));
            diffs.push(m);
        }
    }
    let complex = Complex::new_unchecked(&alg, lo, terms, diffs);
    let inclusion = ChainMap::new_unchecked(y, &complex, inc);
    let projection = ChainMap::new_unchecked(&complex, &x.shift(1), proj);
    Ok(Cone { complex, inclusion, projection })
}

/// A basis of the chain maps `X → Y`.
pub fn chain_map_basis(x: &Complex, y: &Complex) -> Result<Vec<ChainMap>> {
    let fld = x.algebra().field();
    let lo = x.lo().max(y.lo());
    let hi = x.hi().min(y.hi());
    if lo > hi {
        return Ok(Vec::new());
    }
    let homs = (lo..=hi).map(|n| hom_space(&x.term(n), &y.term(n))).collect::<Result<Vec<_>>>()?;
    let total: usize = homs.iter().map(|h| h.dim()).sum();
    if total == 0 {
        return Ok(Vec::new());
    }
    // each unknown contributes its effect on every square, flattened
    let squares: Vec<i32> = ((lo - 1)..=hi).collect();
    let widths: Vec<usize> = squares.iter().map(|&n| x.dim(n) * y.dim(n + 1)).collect();
    let width: usize = widths.iter().sum();
    let mut rows = Vec::with_capacity(total);
    for (k, h) in homs.iter().enumerate() {
        let n = lo + k as i32;
        for b in h.basis() {
            let mut row = Mat::zeros(fld, 1, width);
            let mut off = 0;
            for (s, &m) in squares.iter().enumerate() {
                let mut v = Mat::zeros(fld, x.dim(m), y.dim(m + 1));
                if m + 1 == n {
                    v = &v + &(&x.diff(m) * &b);
                }
                if m == n {
                    v = &v - &(&b * &y.diff(m));
                }
                row.paste(0, off, &v.flatten());
                off += widths[s];
            }
            rows.push(row);
        }
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    let kernel = Mat::vstack(fld, width, &refs).left_kernel();
    let mut out = Vec::with_capacity(kernel.rows());
    for r in 0..kernel.rows() {
        let mut maps = BTreeMap::new();
        let mut off = 0;
        for (k, h) in homs.iter().enumerate() {
            let c = kernel.submatrix(r, r + 1, off, off + h.dim());
            off += h.dim();
            maps.insert(lo + k as i32, h.element(&c));
        }
        out.push(ChainMap::new_unchecked(x, y, maps));
    }
    Ok(out)
}

/// A random combination of the chain-map basis.
pub fn random_chain_map<R: Rng + ?Sized>(x: &Complex, y: &Complex, rng: &mut R) -> Result<ChainMap> {
    let fld = x.algebra().field();
    let basis = chain_map_basis(x, y)?;
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let mut maps: BTreeMap<i32, Mat> = BTreeMap::new();
    for n in lo..=hi {
        maps.insert(n, Mat::zeros(fld, x.dim(n), y.dim(n)));
    }
    for b in &basis {
        let c = Mat::random(fld, 1, 1, rng, 5).get(0, 0);
        for (n, m) in maps.iter_mut() {
            *m = &*m + &b.at(*n).scale(&c);
        }
    }
    Ok(ChainMap::new_unchecked(x, y, maps))
}

/// A random complex of length at most `max_len` with terms direct sums of
/// modules from `pool` and every term of dimension at most `max_dim`.
/// Differentials are random homomorphisms killing the previous image.
pub fn random_complex<R: Rng + ?Sized>(
    algebra: &Arc<Algebra>,
    pool: &[RightModule],
    max_len: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<Complex> {
    let fld = algebra.field();
    let len = rng.gen_range(1..=max_len.max(1));
    let lo = rng.gen_range(-1..=1);
    let mut terms = Vec::with_capacity(len);
    for _ in 0..len {
        let mut parts: Vec<&RightModule> = Vec::new();
        let mut dim = 0;
        let want = rng.gen_range(1..=3);
        for _ in 0..want {
            let m = &pool[rng.gen_range(0..pool.len())];
            if dim + m.dim() <= max_dim {
                dim += m.dim();
                parts.push(m);
            }
        }
        terms.push(direct_sum(algebra, &parts)?.module);
    }
    let mut diffs: Vec<Mat> = Vec::with_capacity(len.saturating_sub(1));
    for i in 0..len.saturating_sub(1) {
        let hom = hom_space(&terms[i], &terms[i + 1])?;
        let basis = hom.basis();
        let prev = diffs.last().cloned();
        // coefficient vectors c with prev · (Σ c_k B_k) = 0
        let allowed = match &prev {
            Some(p) if p.rows() > 0 && !basis.is_empty() => {
                let rows: Vec<Mat> = basis.iter().map(|b| (p * b).flatten()).collect();
                let refs: Vec<&Mat> = rows.iter().collect();
                Mat::vstack(fld, p.rows() * terms[i + 1].dim(), &refs).left_kernel()
            }
            _ => Mat::identity(fld, basis.len()),
        };
        let d = if allowed.rows() == 0 {
            Mat::zeros(fld, terms[i].dim(), terms[i + 1].dim())
        } else {
            let c = &Mat::random(fld, 1, allowed.rows(), rng, 5) * &allowed;
            hom.element(&c)
        };
        diffs.push(d);
    }
    Complex::new(algebra, lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverPresentation;
    use crate::homology::{projective_modules, simple_module};
    use crate::linalg::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2(f: Field) -> Arc<Algebra> {
        Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(2)).unwrap())
    }

    #[test]
    fn cohomology_of_simple_complexes() {
        let a = a2(Field::Rational);
        let s = simple_module(&a, 0).unwrap();
        let x = Complex::single(&s, 0);
        assert_eq!(x.cohomology(0).dim(), 1);
        let two = Complex::new(&a, 0, vec![s.clone(), s.clone()], vec![Mat::identity(a.field(), 1)]).unwrap();
        assert!(two.is_acyclic());
    }

    #[test]
    fn d_squared_is_rejected_with_degree() {
        let a = Arc::new(Algebra::base_field(Field::Rational));
        let v = vector_space(&a, 1);
        let one = Mat::identity(a.field(), 1);
        let err = Complex::new(&a, 3, vec![v.clone(), v.clone(), v], vec![one.clone(), one]).unwrap_err();
        assert!(err.to_string().contains("degree 3"), "{err}");
    }

    #[test]
    fn cones() {
        let a = a2(Field::Rational);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pool = projective_modules(&a).unwrap();
        for _ in 0..10 {
            let x = random_complex(&a, &pool, 3, 6, &mut rng).unwrap();
            let c = cone(&ChainMap::identity(&x)).unwrap();
            assert!(c.complex.is_acyclic());
            assert!(c.inclusion.is_chain_map() && c.projection.is_chain_map());
            let z = cone(&ChainMap::zero(&Complex::zero(&a), &x)).unwrap();
            assert_eq!(z.complex.cohomology_dims().values().sum::<usize>(), x.cohomology_dims().values().sum::<usize>());
            let y = random_complex(&a, &pool, 3, 6, &mut rng).unwrap();
            for f in chain_map_basis(&x, &y).unwrap() {
                assert!(f.is_chain_map());
                let c = cone(&f).unwrap();
                for n in c.complex.lo()..c.complex.hi() {
                    assert!((&c.complex.diff(n) * &c.complex.diff(n + 1)).is_zero());
                }
            }
        }
    }

    #[test]
    fn duality_is_an_involution_on_dimensions() {
        let a = a2(Field::Prime(5));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pool = projective_modules(&a).unwrap();
        let x = random_complex(&a, &pool, 4, 8, &mut rng).unwrap();
        let dd = x.dual().dual_onto(&a).unwrap();
        for n in x.lo()..=x.hi() {
            assert_eq!(dd.diff(n), x.diff(n));
            assert_eq!(x.cohomology(n).dim(), x.dual().cohomology(-n).dim());
        }
    }
}
