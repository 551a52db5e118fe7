//! Univariate polynomials over an exact field, with just enough
//! factorisation to split endomorphisms into primary components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::mat::Mat;
use super::subspace::RowSpace;

/// Dense polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    /// `x - a`
    pub fn linear(a: &Scalar) -> Poly {
        let f = a.field();
        Poly::new(f, vec![a.neg(), f.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().unwrap();
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one(self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        let inv = d.lead().inv().unwrap();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self(m)` for a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(self.field, n, n);
        let id = Mat::identity(self.field, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &id.scale(c);
        }
        acc
    }

    fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    /// For `F_p`: the polynomial `g` with `g^p = self`, assuming all
    /// exponents are multiples of `p`.
    fn pth_root(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        let c = self.coeffs.iter().step_by(p).cloned().collect();
        Poly::new(self.field, c)
    }

    /// Square-free decomposition: pairs `(g, i)` with `self = lead · Π g^i`,
    /// each `g` square-free, monic, pairwise coprime.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        squarefree_rec(&f, 1, &mut out);
        out.sort_by_key(|(_, i)| *i);
        out
    }

    /// Factors `self` into monic pieces with multiplicities.
    pub fn factor(&self) -> Factorization {
        let mut parts = Vec::new();
        let mut certified = true;
        for (g, mult) in self.squarefree() {
            let (pieces, ok) = split_squarefree(&g);
            certified &= ok;
            for (h, irr) in pieces {
                parts.push(Factor { poly: h, multiplicity: mult, irreducible: irr });
            }
        }
        Factorization { parts, complete: certified }
    }

    /// Irreducibility, when it can be decided.
    pub fn is_irreducible(&self) -> Option<bool> {
        if self.degree().unwrap_or(0) == 0 {
            return Some(false);
        }
        let fac = self.factor();
        if fac.parts.len() > 1 || fac.parts.iter().any(|p| p.multiplicity > 1) {
            return Some(false);
        }
        fac.parts.first().map(|p| p.irreducible).and_then(|b| if b { Some(true) } else { None })
    }
}

fn squarefree_rec(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    // Yun-style loop with a p-th root step in positive characteristic.
    let d = f.derivative();
    if d.is_zero() {
        if f.deg() > 0 {
            squarefree_rec(&f.pth_root(), scale * f.field.characteristic() as usize, out);
        }
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            push_part(out, z.monic(), i * scale);
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // leftover is a p-th power
        squarefree_rec(&c.pth_root().monic(), scale * f.field.characteristic() as usize, out);
    }
}

fn push_part(out: &mut Vec<(Poly, usize)>, g: Poly, mult: usize) {
    if let Some(slot) = out.iter_mut().find(|(_, m)| *m == mult) {
        slot.0 = slot.0.mul(&g).monic();
    } else {
        out.push((g, mult));
    }
}

/// One piece of a factorisation.
#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: usize,
    /// Certified irreducible; `false` means "not split further", not
    /// "reducible".
    pub irreducible: bool,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub parts: Vec<Factor>,
    /// Every part certified irreducible.
    pub complete: bool,
}

/// Splits a monic square-free polynomial; returns pieces and whether every
/// piece is certified irreducible.
fn split_squarefree(g: &Poly) -> (Vec<(Poly, bool)>, bool) {
    match g.field {
        Field::Prime(_) => {
            let pieces = berlekamp(g);
            let n = pieces.len();
            (pieces.into_iter().map(|p| (p, true)).collect(), n > 0)
        }
        Field::Rational => {
            let mut rest = g.clone();
            let mut pieces = Vec::new();
            for r in rational_roots(g) {
                let lin = Poly::linear(&r);
                rest = rest.div_rem(&lin).0;
                pieces.push((lin, true));
            }
            let mut all = true;
            if rest.deg() > 0 {
                let irr = rest.deg() <= 3 || irreducible_mod_small_prime(&rest);
                all = irr;
                pieces.push((rest.monic(), irr));
            }
            (pieces, all)
        }
    }
}

/// Berlekamp factorisation of a monic square-free polynomial over `F_p`.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field;
    let p = field.characteristic() as u64;
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows: coefficients of x^{ip} mod f.
    let xp = Poly::x(field).powmod(p, f);
    let mut q = Mat::zeros(field, n, n);
    let mut cur = Poly::one(field);
    for i in 0..n {
        for (j, c) in cur.coeffs.iter().enumerate() {
            q.set(i, j, c);
        }
        cur = cur.mul(&xp).rem(f);
    }
    let qm = &q - &Mat::identity(field, n);
    let kernel = qm.left_kernel();
    let r = kernel.rows();
    let basis: Vec<Poly> = (0..r)
        .map(|i| Poly::new(field, (0..n).map(|j| kernel.get(i, j)).collect()))
        .collect();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    let elements = field.elements().filter(|_| p <= 64);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut guard = 0;
    while factors.len() < r && guard < 10_000 {
        guard += 1;
        let mut next = Vec::new();
        for fac in factors {
            if fac.deg() <= 1 {
                next.push(fac);
                continue;
            }
            let mut split = None;
            if let Some(els) = &elements {
                'outer: for v in basis.iter().filter(|v| v.deg_or_zero() > 0) {
                    for s in els {
                        let g = fac.gcd(&v.sub(&Poly::constant(s.clone())));
                        if g.deg() > 0 && g.deg() < fac.deg() {
                            split = Some(g);
                            break 'outer;
                        }
                    }
                }
            } else {
                // Cantor–Zassenhaus style random element of the Berlekamp subalgebra.
                let mut v = Poly::zero(field);
                for b in &basis {
                    v = v.add(&b.scale(&field.random(&mut rng, 0)));
                }
                let w = v.powmod((p - 1) / 2, &fac).sub(&Poly::one(field));
                let g = fac.gcd(&w);
                if g.deg() > 0 && g.deg() < fac.deg() {
                    split = Some(g);
                }
            }
            match split {
                Some(g) => {
                    let h = fac.div_rem(&g).0.monic();
                    next.push(g);
                    next.push(h);
                }
                None => next.push(fac),
            }
        }
        factors = next;
    }
    factors
}

impl Poly {
    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Rational polynomial scaled to a primitive integer polynomial.
    fn to_primitive_integer(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.as_rational().expect("rational poly").denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let q = c.as_rational().unwrap();
                q.numer() * (&lcm / q.denom())
            })
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Rational roots by the rational root theorem (divisor search capped).
pub fn rational_roots(f: &Poly) -> Vec<Scalar> {
    assert!(f.field.is_rational());
    let mut out = Vec::new();
    let mut g = f.monic();
    while g.deg_or_zero() > 0 && g.coeffs[0].is_zero() {
        out.push(g.field.zero());
        g = g.div_rem(&Poly::x(g.field)).0;
    }
    if g.deg_or_zero() == 0 {
        return out;
    }
    let ints = g.to_primitive_integer();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(d0), Some(dn)) = (divisors(&a0), divisors(&an)) else {
        return out;
    };
    for p in &d0 {
        for q in &dn {
            for sign in [1i64, -1] {
                let cand = Scalar::Rational(num_rational::BigRational::new(p * BigInt::from(sign), q.clone()));
                if out.contains(&cand) {
                    continue;
                }
                if g.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Irreducible modulo some small prime that preserves the degree implies
/// irreducible over the rationals.
fn irreducible_mod_small_prime(f: &Poly) -> bool {
    let ints = f.to_primitive_integer();
    let n = ints.len() - 1;
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let fp = Field::Prime(p);
        let lead = super::field::reduce_big(&ints[n], p);
        if lead == 0 {
            continue;
        }
        let g = Poly::new(fp, ints.iter().map(|c| Scalar::Mod { value: super::field::reduce_big(c, p), modulus: p }).collect());
        let sf = g.squarefree();
        if sf.len() != 1 || sf[0].1 != 1 {
            continue;
        }
        if berlekamp(&g.monic()).len() == 1 {
            return true;
        }
    }
    false
}

/// Minimal polynomial of a square matrix (Krylov on matrix powers).
pub fn minimal_polynomial(m: &Mat) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut powers: Vec<Mat> = vec![Mat::identity(f, n).flatten()];
    let mut cur = Mat::identity(f, n);
    loop {
        cur = &cur * m;
        let flat = cur.flatten();
        let refs: Vec<&Mat> = powers.iter().collect();
        let stacked = Mat::vstack(f, n * n, &refs);
        if let Ok(Some(x)) = stacked.solve_left(&flat) {
            // cur = Σ x_i m^i  =>  t^k - Σ x_i t^i
            let mut c: Vec<Scalar> = (0..powers.len()).map(|i| x.get(0, i).neg()).collect();
            c.push(f.one());
            return Poly::new(f, c);
        }
        powers.push(flat);
        debug_assert!(powers.len() <= n + 1);
    }
}

/// `ker g(m)^N` for `N = n`, i.e. the generalized kernel.
pub fn primary_component(m: &Mat, g: &Poly, mult: usize) -> RowSpace {
    let gm = g.pow(mult).eval_mat(m);
    RowSpace::span(&gm.left_kernel())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly {
        Poly::new(Field::Rational, c.iter().map(|&x| Field::Rational.from_i64(x)).collect())
    }

    #[test]
    fn squarefree_separates_multiplicities() {
        // (x-1)^2 (x+2)
        let f = qp(&[-1, 1]).pow(2).mul(&qp(&[2, 1]));
        let sf = f.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (qp(&[2, 1]), 1));
        assert_eq!(sf[1], (qp(&[-1, 1]), 2));
    }

    #[test]
    fn rational_roots_found() {
        let f = qp(&[-1, 0, 2]).mul(&qp(&[-3, 1])); // (2x^2-1)(x-3)
        let r = rational_roots(&f);
        assert_eq!(r, vec![Field::Rational.from_i64(3)]);
        assert_eq!(qp(&[-2, 0, 1]).is_irreducible(), Some(true));
        assert_eq!(qp(&[-1, 0, 1]).is_irreducible(), Some(false));
    }

    #[test]
    fn berlekamp_splits_over_f2() {
        let f2 = Field::Prime(2);
        let p = |c: &[i64]| Poly::new(f2, c.iter().map(|&x| f2.from_i64(x)).collect());
        // x^2+x+1 irreducible over F2, x(x+1) not
        assert_eq!(p(&[1, 1, 1]).is_irreducible(), Some(true));
        let f = p(&[1, 1, 1]).mul(&p(&[0, 1])).mul(&p(&[1, 1]));
        let fac = f.factor();
        assert_eq!(fac.parts.len(), 3);
        assert!(fac.complete);
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f3 = Field::Prime(3);
        // (x+1)^3 = x^3 + 1 over F3
        let f = Poly::new(f3, vec![f3.one(), f3.zero(), f3.zero(), f3.one()]);
        let sf = f.squarefree();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].1, 3);
        assert_eq!(sf[0].0, Poly::new(f3, vec![f3.one(), f3.one()]));
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let m = Mat::from_i64(Field::Rational, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(minimal_polynomial(&m), qp(&[0, 0, 0, 1]));
        let d = Mat::from_i64(Field::Rational, &[&[2, 0], &[0, 2]]);
        assert_eq!(minimal_polynomial(&d), qp(&[-2, 1]));
    }
}
