//! Finite-dimensional associative unital algebras, given either by structure
//! constants or by a quiver with relations.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::linalg::{Field, Mat, RowSpace, Scalar};
use crate::{Error, Result};

/// Bound on the number of paths enumerated while presenting a quiver algebra.
pub const PATH_CAP: usize = 20_000;
/// Longest path length tried before a quiver algebra is declared infinite.
pub const PATH_LENGTH_CAP: usize = 40;

/// A basis, its right-multiplication matrices and a unit.
///
/// `right[j]` is the matrix of `x ↦ x·b_j` on row vectors, so its row `i`
/// holds the coordinates of `b_i·b_j`.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    right: Vec<Mat>,
    unit: Mat,
    generators: Vec<usize>,
    quiver: Option<QuiverData>,
    radical: OnceLock<std::result::Result<RowSpace, Error>>,
    pub(crate) idempotents: OnceLock<std::result::Result<crate::homology::Idempotents, Error>>,
    opposite_cache: OnceLock<Arc<Algebra>>,
}

/// Path bookkeeping for algebras built by [`Algebra::path_algebra`].
#[derive(Clone, Debug)]
pub struct QuiverData {
    pub vertices: usize,
    /// `(label, source, target)` with 0-based vertices.
    pub arrows: Vec<(String, usize, usize)>,
    /// For every basis element: source, target and arrow word of its path.
    pub paths: Vec<(usize, usize, Vec<usize>)>,
}

impl QuiverData {
    /// Basis index of the idempotent at vertex `v`.
    pub fn vertex_index(&self, v: usize) -> usize {
        self.paths.iter().position(|(s, t, w)| w.is_empty() && *s == v && *t == v).expect("vertex path")
    }

    /// Basis index of arrow `a`.
    pub fn arrow_index(&self, a: usize) -> usize {
        self.paths.iter().position(|(_, _, w)| w.len() == 1 && w[0] == a).expect("arrow path")
    }
}

/// A quiver with relations. Vertices are 0-based; a relation is a linear
/// combination of paths, each path a sequence of arrow indices read left to
/// right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
    pub relations: Vec<Vec<(Scalar, Vec<usize>)>>,
}

impl QuiverPresentation {
    pub fn new(vertices: usize) -> QuiverPresentation {
        QuiverPresentation { vertices, arrows: Vec::new(), relations: Vec::new() }
    }

    pub fn arrow(mut self, source: usize, target: usize, label: &str) -> QuiverPresentation {
        self.arrows.push((source, target, label.to_string()));
        self
    }

    pub fn relation(mut self, terms: Vec<(Scalar, Vec<usize>)>) -> QuiverPresentation {
        self.relations.push(terms);
        self
    }

    /// The path `A_n`: `1 → 2 → … → n`.
    pub fn linear(n: usize) -> QuiverPresentation {
        let mut q = QuiverPresentation::new(n);
        for v in 0..n.saturating_sub(1) {
            q = q.arrow(v, v + 1, &format!("a{}", v + 1));
        }
        q
    }
}

type Path = (usize, usize, Vec<usize>);

impl Algebra {
    /// Validates associativity and the unit law.
    pub fn new(field: Field, labels: Vec<String>, right: Vec<Mat>, unit: Mat) -> Result<Algebra> {
        let n = labels.len();
        if right.len() != n {
            return Err(Error::InvalidAlgebra(format!("{} multiplication tables for {} basis elements", right.len(), n)));
        }
        for m in right.iter().chain(std::iter::once(&unit)) {
            if m.field() != field {
                return Err(crate::KernelError::FieldMismatch { expected: field, found: m.field() }.into());
            }
        }
        if right.iter().any(|m| m.shape() != (n, n)) || unit.shape() != (1, n) {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        let alg = Algebra::unchecked(field, labels, right, unit, None);
        alg.validate()?;
        Ok(alg)
    }

    /// `c[i][j][k]` with `b_i·b_j = Σ_k c[i][j][k] b_k`.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        c: &[Vec<Vec<Scalar>>],
        unit: &[Scalar],
    ) -> Result<Algebra> {
        let n = labels.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) || unit.len() != n {
            return Err(Error::InvalidAlgebra("structure constant array has the wrong shape".into()));
        }
        let mut right = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = Mat::zeros(field, n, n);
            for (i, ci) in c.iter().enumerate() {
                for (k, s) in ci[j].iter().enumerate() {
                    if s.field() != field {
                        return Err(crate::KernelError::FieldMismatch { expected: field, found: s.field() }.into());
                    }
                    if !s.is_zero() {
                        m.set(i, k, s);
                    }
                }
            }
            right.push(m);
        }
        Algebra::new(field, labels, right, Mat::from_scalars(field, 1, n, unit)?)
    }

    fn unchecked(field: Field, labels: Vec<String>, right: Vec<Mat>, unit: Mat, quiver: Option<QuiverData>) -> Algebra {
        let generators = match &quiver {
            Some(q) => (0..q.paths.len()).filter(|&i| q.paths[i].2.len() <= 1).collect(),
            None => greedy_generators(field, &right, &unit),
        };
        Algebra {
            field,
            labels,
            right,
            unit,
            generators,
            quiver,
            radical: OnceLock::new(),
            idempotents: OnceLock::new(),
            opposite_cache: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if !self.right_mult(&self.unit).is_identity() {
            return Err(Error::InvalidAlgebra("unit is not a right identity".into()));
        }
        for j in 0..n {
            if self.unit.compose(&self.right[j])? != Mat::unit_row(self.field, n, j) {
                return Err(Error::InvalidAlgebra(format!("unit is not a left identity on {}", self.labels[j])));
            }
        }
        // x(b_j b_l) = (x b_j) b_l for all x  <=>  R_{b_j b_l} = R_j R_l
        for j in 0..n {
            for l in 0..n {
                let lhs = &self.right[j] * &self.right[l];
                let rhs = self.right_mult(&self.right[l].row(j));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails for products with {} and {}",
                        self.labels[j], self.labels[l]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The base field as a one-dimensional algebra.
    pub fn base_field(field: Field) -> Algebra {
        Algebra::path_algebra(field, &QuiverPresentation::new(1)).expect("one vertex")
    }

    /// `kQ/I`, with basis the residues of paths not eliminated by `I`.
    pub fn path_algebra(field: Field, q: &QuiverPresentation) -> Result<Algebra> {
        build_path_algebra(field, q)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &Mat {
        &self.unit
    }

    /// Right multiplication by the basis element `b_j`.
    pub fn right_basis(&self, j: usize) -> &Mat {
        &self.right[j]
    }

    /// Matrix of `x ↦ x·y`.
    pub fn right_mult(&self, y: &Mat) -> Mat {
        let n = self.dim();
        let coeffs = y.entries();
        let mats: Vec<&Mat> = self.right.iter().collect();
        Mat::linear_combination(self.field, n, n, &coeffs, &mats)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &Mat) -> Mat {
        let parts: Vec<Mat> = self.right.iter().map(|r| x * r).collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        Mat::vstack(self.field, self.dim(), &refs)
    }

    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        x * &self.right_mult(y)
    }

    pub fn basis_vector(&self, i: usize) -> Mat {
        Mat::unit_row(self.field, self.dim(), i)
    }

    /// `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.right[j].get(i, k)
    }

    /// Basis indices generating the algebra (with the unit).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn quiver(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    /// Structure constants transposed in the first two indices.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        // in the opposite algebra b_i * b_j = b_j b_i = row j of R_i
        let right = (0..n)
            .map(|j| {
                let rows: Vec<Mat> = (0..n).map(|i| self.right[i].row(j)).collect();
                let refs: Vec<&Mat> = rows.iter().collect();
                Mat::vstack(self.field, n, &refs)
            })
            .collect();
        let labels = self.labels.clone();
        let quiver = self.quiver.as_ref().map(|q| QuiverData {
            vertices: q.vertices,
            arrows: q.arrows.iter().map(|(l, s, t)| (l.clone(), *t, *s)).collect(),
            paths: q.paths.iter().map(|(s, t, w)| (*t, *s, w.iter().rev().cloned().collect())).collect(),
        });
        let alg = Algebra::unchecked(self.field, labels, right, self.unit.clone(), quiver);
        if let Some(Ok(j)) = self.radical.get() {
            let _ = alg.radical.set(Ok(j.clone()));
        }
        // eA ≅ fA iff Ae ≅ Af, so the primitive idempotents carry over
        if let Some(Ok(i)) = self.idempotents.get() {
            let _ = alg.idempotents.set(Ok(i.clone()));
        }
        alg
    }

    /// Shared handle to [`Algebra::opposite`], built once.
    pub fn opposite_arc(&self) -> Arc<Algebra> {
        self.opposite_cache.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    /// Whether every product is symmetric.
    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.right[j].row(i) == self.right[i].row(j)))
    }

    /// The Jacobson radical. Quiver algebras use the arrow ideal; otherwise
    /// the trace form in characteristic zero and its integer-lift refinement
    /// in characteristic `p`.
    pub fn radical(&self) -> Result<&RowSpace> {
        self.radical
            .get_or_init(|| {
                if let Some(q) = &self.quiver {
                    let n = self.dim();
                    let rows: Vec<usize> = (0..n).filter(|&i| !q.paths[i].2.is_empty()).collect();
                    let id = Mat::identity(self.field, n);
                    return Ok(RowSpace::span(&id.select_rows(&rows)));
                }
                let j = match self.field {
                    Field::Rational => self.radical_trace_form(),
                    Field::Prime(p) => self.radical_lifted_traces(p),
                };
                self.check_radical(&j)?;
                Ok(j)
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn radical_trace_form(&self) -> RowSpace {
        let n = self.dim();
        let traces: Vec<Scalar> = self.right.iter().map(trace).collect();
        let gram = Mat::from_fn(self.field, n, n, |i, j| {
            let mut acc = self.field.zero();
            for (k, t) in traces.iter().enumerate() {
                if !t.is_zero() && !self.right[j].is_zero_at(i, k) {
                    acc = acc.add(&self.right[j].get(i, k).mul(t));
                }
            }
            acc
        });
        RowSpace::span(&gram.left_kernel())
    }

    /// Characteristic `p`: the chain of ideals cut out by the functions
    /// `g_i(x) = (Tr(X̃^{p^i}) mod p^{i+1}) / p^i` on integer lifts `X̃` of
    /// the regular representation, `i ≤ log_p(dim)`.
    fn radical_lifted_traces(&self, p: u32) -> RowSpace {
        let n = self.dim();
        let mut levels = 0u32;
        while (p as u64).pow(levels + 1) <= n as u64 {
            levels += 1;
        }
        let mut cur = RowSpace::full(self.field, n);
        for i in 0..=levels {
            if cur.dim() == 0 {
                break;
            }
            let modulus = (p as u128).pow(i + 1);
            let exponent = (p as u64).pow(i);
            let scale = (p as u128).pow(i);
            let basis = cur.basis().clone();
            let g = Mat::from_fn(self.field, basis.rows(), n, |r, k| {
                let y = &basis.row(r) * &self.right[k];
                let m = self.right_mult(&y);
                let t = lifted_trace_power(&m, exponent, modulus);
                debug_assert_eq!(t % scale, 0, "lifted trace not divisible by p^i");
                self.field.from_i64(((t / scale) % p as u128) as i64)
            });
            let k = g.left_kernel();
            cur = if k.rows() == 0 { RowSpace::zero(self.field, n) } else { RowSpace::span(&(&k * &basis)) };
        }
        cur
    }

    fn check_radical(&self, j: &RowSpace) -> Result<()> {
        // a two-sided ideal ...
        for b in 0..self.dim() {
            let right = j.image_under(&self.right[b]);
            let left = j.image_under(&self.left_mult(&self.basis_vector(b)));
            if !j.contains_space(&right) || !j.contains_space(&left) {
                return Err(Error::InvalidAlgebra("computed radical is not an ideal".into()));
            }
        }
        // ... that is nilpotent
        let mut power = j.clone();
        for _ in 0..=self.dim() {
            if power.dim() == 0 {
                return Ok(());
            }
            let prods: Vec<Mat> = (0..j.dim()).map(|r| self.right_mult(&j.basis().row(r))).collect();
            let mut rows = Vec::new();
            for pm in &prods {
                rows.push(power.basis() * pm);
            }
            let refs: Vec<&Mat> = rows.iter().collect();
            power = RowSpace::span(&Mat::vstack(self.field, self.dim(), &refs));
        }
        Err(Error::InvalidAlgebra("computed radical is not nilpotent".into()))
    }

    /// Powers `J, J², …` until zero.
    pub fn radical_powers(&self) -> Result<Vec<RowSpace>> {
        let j = self.radical()?.clone();
        let mut out = vec![j.clone()];
        let prods: Vec<Mat> = (0..j.dim()).map(|r| self.right_mult(&j.basis().row(r))).collect();
        loop {
            let last = out.last().expect("nonempty");
            if last.dim() == 0 {
                break;
            }
            let rows: Vec<Mat> = prods.iter().map(|pm| last.basis() * pm).collect();
            let refs: Vec<&Mat> = rows.iter().collect();
            let next = RowSpace::span(&Mat::vstack(self.field, self.dim(), &refs));
            out.push(next);
        }
        Ok(out)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.field == other.field && self.right == other.right && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra[{}; dim {}; {:?}]", self.field, self.dim(), self.labels)
    }
}

/// Same algebra, by pointer or by value.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn trace(m: &Mat) -> Scalar {
    let mut t = m.field().zero();
    for i in 0..m.rows() {
        if !m.is_zero_at(i, i) {
            t = t.add(&m.get(i, i));
        }
    }
    t
}

fn lifted_trace_power(m: &Mat, e: u64, modulus: u128) -> u128 {
    let n = m.rows();
    let lift: Vec<u128> = m.entries().iter().map(|s| s.to_i64().expect("residue") as u128).collect();
    let mul = |a: &[u128], b: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut result: Vec<u128> = (0..n * n).map(|k| if k / n == k % n { 1 % modulus } else { 0 }).collect();
    let mut base: Vec<u128> = lift.iter().map(|x| x % modulus).collect();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    (0..n).fold(0u128, |acc, i| (acc + result[i * n + i]) % modulus)
}

/// Basis elements added one at a time when not in the subalgebra generated
/// so far.
fn greedy_generators(field: Field, right: &[Mat], unit: &Mat) -> Vec<usize> {
    let n = right.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = RowSpace::span(unit);
    for j in 0..n {
        if closure.contains(&Mat::unit_row(field, n, j)) {
            continue;
        }
        gens.push(j);
        loop {
            let mut rows = vec![closure.basis().clone(), Mat::unit_row(field, n, j)];
            for &g in &gens {
                rows.push(closure.basis() * &right[g]);
            }
            let refs: Vec<&Mat> = rows.iter().collect();
            let next = RowSpace::span(&Mat::vstack(field, n, &refs));
            if next.dim() == closure.dim() {
                break;
            }
            closure = next;
        }
    }
    gens
}

fn concat(p: &Path, q: &Path) -> Option<Path> {
    if p.1 != q.0 {
        return None;
    }
    let mut w = p.2.clone();
    w.extend_from_slice(&q.2);
    Some((p.0, q.1, w))
}

fn build_path_algebra(field: Field, q: &QuiverPresentation) -> Result<Algebra> {
    if q.vertices == 0 {
        return Err(Error::InvalidAlgebra("quiver without vertices".into()));
    }
    for (s, t, l) in &q.arrows {
        if *s >= q.vertices || *t >= q.vertices {
            return Err(Error::InvalidAlgebra(format!("arrow {l} has an endpoint outside the quiver")));
        }
    }
    let mut rel_ends = Vec::new();
    for (r, rel) in q.relations.iter().enumerate() {
        if rel.is_empty() {
            return Err(Error::InvalidAlgebra(format!("relation {} is empty", r + 1)));
        }
        let mut ends = None;
        for (c, w) in rel {
            if c.field() != field {
                return Err(crate::KernelError::FieldMismatch { expected: field, found: c.field() }.into());
            }
            if w.len() < 2 {
                return Err(Error::InvalidAlgebra(format!(
                    "relation {} has a term of length {} (relations must lie in the square of the arrow ideal)",
                    r + 1,
                    w.len()
                )));
            }
            if w.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::InvalidAlgebra(format!("relation {} uses an unknown arrow", r + 1)));
            }
            if w.windows(2).any(|x| q.arrows[x[0]].1 != q.arrows[x[1]].0) {
                return Err(Error::InvalidAlgebra(format!("relation {} contains a non-composable path", r + 1)));
            }
            let e = (q.arrows[w[0]].0, q.arrows[*w.last().expect("nonempty")].1);
            if *ends.get_or_insert(e) != e {
                return Err(Error::InvalidAlgebra(format!("relation {} mixes paths with different endpoints", r + 1)));
            }
        }
        rel_ends.push(ends.expect("nonempty"));
    }

    // paths by length
    let mut layers: Vec<Vec<Path>> = vec![(0..q.vertices).map(|v| (v, v, Vec::new())).collect()];
    let mut total = q.vertices;
    let extend = |layer: &[Path]| -> Vec<Path> {
        let mut out = Vec::new();
        for p in layer {
            for (a, (s, t, _)) in q.arrows.iter().enumerate() {
                if *s == p.1 {
                    let mut w = p.2.clone();
                    w.push(a);
                    out.push((p.0, *t, w));
                }
            }
        }
        out
    };
    layers.push(extend(&layers[0]));
    total += layers[1].len();

    let mut bound = None;
    for len in 2..=PATH_LENGTH_CAP {
        while layers.len() <= len + 1 {
            let next = extend(layers.last().expect("layer"));
            total += next.len();
            if total > PATH_CAP {
                return Err(Error::CapExceeded(format!("more than {PATH_CAP} paths while bounding the relations")));
            }
            layers.push(next);
        }
        if layers[len].is_empty() {
            bound = Some(len);
            break;
        }
        if power_reduces(field, q, &layers, len) {
            bound = Some(len);
            break;
        }
    }
    let bound = bound.ok_or_else(|| {
        Error::CapExceeded(format!(
            "paths of length {PATH_LENGTH_CAP} survive the relations; the ideal is not admissible or the algebra is too large"
        ))
    })?;

    // V = kQ / J^bound, columns ordered longest first so pivots fall on long paths
    let mut cols: Vec<Path> = Vec::new();
    for l in (0..bound).rev() {
        cols.extend(layers[l].iter().cloned());
    }
    let ideal = ideal_rows(field, q, &layers, &cols, bound - 1);
    let quotient = RowSpace::span(&ideal).quotient_map();
    let free: Vec<usize> = (0..cols.len()).filter(|j| !quotient.section.col(*j).is_zero()).collect();
    // basis order: short paths first, in enumeration order
    let mut order: Vec<usize> = (0..free.len()).collect();
    let rank_of = |c: usize| -> (usize, usize) {
        let p = &cols[c];
        let l = p.2.len();
        let pos = layers[l].iter().position(|x| x == p).expect("enumerated");
        (l, pos)
    };
    order.sort_by_key(|&k| rank_of(free[k]));
    let proj = quotient.proj.select_cols(&order);
    let basis: Vec<Path> = order.iter().map(|&k| cols[free[k]].clone()).collect();
    let n = basis.len();
    let col_of = |p: &Path| cols.iter().position(|c| c == p);

    let mut right = vec![Mat::zeros(field, n, n); n];
    for (i, p) in basis.iter().enumerate() {
        for (j, r) in basis.iter().enumerate() {
            let Some(pq) = concat(p, r) else { continue };
            if pq.2.len() >= bound {
                continue;
            }
            let c = col_of(&pq).expect("path enumerated");
            let coords = proj.row(c);
            right[j].paste(i, 0, &coords);
        }
    }
    let mut unit = Mat::zeros(field, 1, n);
    for (i, p) in basis.iter().enumerate() {
        if p.2.is_empty() {
            unit.set(0, i, &field.one());
        }
    }
    let labels = basis
        .iter()
        .map(|(s, _, w)| {
            if w.is_empty() {
                format!("e{}", s + 1)
            } else {
                w.iter().map(|&a| q.arrows[a].2.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let data = QuiverData {
        vertices: q.vertices,
        arrows: q.arrows.iter().map(|(s, t, l)| (l.clone(), *s, *t)).collect(),
        paths: basis,
    };
    let alg = Algebra::unchecked(field, labels, right, unit, Some(data));
    alg.validate()?;
    Ok(alg)
}

/// Whether every path of length `len` lies in `I + J^{len+1}`.
fn power_reduces(field: Field, q: &QuiverPresentation, layers: &[Vec<Path>], len: usize) -> bool {
    let mut cols: Vec<Path> = Vec::new();
    for l in (0..=len + 1).rev() {
        cols.extend(layers[l].iter().cloned());
    }
    let mut rows = ideal_rows(field, q, layers, &cols, len + 1);
    let longer: Vec<usize> = (0..layers[len + 1].len()).collect();
    let id = Mat::identity(field, cols.len());
    rows = Mat::vstack(field, cols.len(), &[&rows, &id.select_rows(&longer)]);
    let span = RowSpace::span(&rows);
    let offset = layers[len + 1].len();
    (0..layers[len].len()).all(|k| span.contains(&Mat::unit_row(field, cols.len(), offset + k)))
}

/// Spanning set of the image of the ideal `(relations)` in `kQ/J^{max+1}`,
/// as rows over the given path columns.
fn ideal_rows(field: Field, q: &QuiverPresentation, layers: &[Vec<Path>], cols: &[Path], max: usize) -> Mat {
    let mut rows: Vec<Mat> = Vec::new();
    for rel in &q.relations {
        let min_len = rel.iter().map(|(_, w)| w.len()).min().unwrap_or(0);
        let (rs, rt) = (q.arrows[rel[0].1[0]].0, q.arrows[*rel[0].1.last().expect("term")].1);
        for a in 0..=max.saturating_sub(min_len) {
            for p in layers.get(a).into_iter().flatten().filter(|p| p.1 == rs) {
                for b in 0..=max.saturating_sub(min_len + a) {
                    for r in layers.get(b).into_iter().flatten().filter(|r| r.0 == rt) {
                        let mut row = Mat::zeros(field, 1, cols.len());
                        let mut any = false;
                        for (c, w) in rel {
                            if a + w.len() + b > max {
                                continue;
                            }
                            let mid = (rs, rt, w.clone());
                            let full = concat(&concat(p, &mid).expect("composable"), r).expect("composable");
                            let k = cols.iter().position(|x| *x == full).expect("path enumerated");
                            row.set(0, k, &row.get(0, k).add(c));
                            any = true;
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(field, cols.len(), &refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_algebra_dimensions() {
        let q = Field::Rational;
        assert_eq!(Algebra::base_field(q).dim(), 1);
        let a2 = Algebra::path_algebra(q, &QuiverPresentation::linear(2)).unwrap();
        assert_eq!(a2.dim(), 3);
        assert_eq!(a2.labels(), &["e1", "e2", "a1"]);
        let a3 = Algebra::path_algebra(q, &QuiverPresentation::linear(3)).unwrap();
        assert_eq!(a3.dim(), 6);
        let rel = QuiverPresentation::linear(3).relation(vec![(q.one(), vec![0, 1])]);
        assert_eq!(Algebra::path_algebra(q, &rel).unwrap().dim(), 5);
        let dual = QuiverPresentation::new(1).arrow(0, 0, "x").relation(vec![(q.one(), vec![0, 0])]);
        let d = Algebra::path_algebra(q, &dual).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.is_commutative());
    }

    #[test]
    fn free_loop_is_rejected() {
        let q = QuiverPresentation::new(1).arrow(0, 0, "x");
        assert!(matches!(Algebra::path_algebra(Field::Rational, &q), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn commutativity_relation() {
        // square 1→2→4, 1→3→4 with ab = cd
        let f = Field::Rational;
        let q = QuiverPresentation::new(4)
            .arrow(0, 1, "a")
            .arrow(1, 3, "b")
            .arrow(0, 2, "c")
            .arrow(2, 3, "d")
            .relation(vec![(f.one(), vec![0, 1]), (f.from_i64(-1), vec![2, 3])]);
        let alg = Algebra::path_algebra(f, &q).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
    }

    #[test]
    fn opposite_round_trip() {
        let a2 = Algebra::path_algebra(Field::Rational, &QuiverPresentation::linear(2)).unwrap();
        let op = a2.opposite();
        assert_ne!(op, a2);
        assert_eq!(op.opposite(), a2);
    }

    #[test]
    fn trace_form_radical_matches_arrow_ideal() {
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let a3 = Algebra::path_algebra(field, &QuiverPresentation::linear(3)).unwrap();
            let n = a3.dim();
            let right: Vec<Mat> = (0..n).map(|j| a3.right_basis(j).clone()).collect();
            let plain = Algebra::new(field, a3.labels().to_vec(), right, a3.unit().clone()).unwrap();
            assert_eq!(plain.radical().unwrap(), a3.radical().unwrap(), "{field}");
        }
    }

    #[test]
    fn radical_of_group_algebra_in_characteristic_two() {
        // F2[C2] = F2[x]/(x^2 - 1), radical spanned by 1 + x
        let f = Field::Prime(2);
        let c = vec![
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
            vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]],
        ];
        let alg = Algebra::from_structure_constants(f, vec!["1".into(), "g".into()], &c, &[f.one(), f.zero()]).unwrap();
        let j = alg.radical().unwrap();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&Mat::from_i64(f, &[&[1, 1]])));
    }

    #[test]
    fn associativity_violation_detected() {
        let f = Field::Rational;
        let labels = vec!["1".to_string(), "x".into(), "y".into()];
        // x·y = x and every other product of x, y vanishes: (x·y)·y = x but x·(y·y) = 0
        let rx = Mat::from_i64(f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let ry = Mat::from_i64(f, &[&[0, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
        let unit = Mat::from_i64(f, &[&[1, 0, 0]]);
        let bad = Algebra::new(f, labels.clone(), vec![Mat::identity(f, 3), rx.clone(), ry], unit.clone());
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
        let ry_ok = Mat::from_i64(f, &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        assert!(Algebra::new(f, labels.clone(), vec![Mat::identity(f, 3), rx.clone(), ry_ok.clone()], unit).is_ok());
        let wrong_unit = Algebra::new(f, labels, vec![Mat::identity(f, 3), rx, ry_ok], Mat::from_i64(f, &[&[0, 1, 0]]));
        assert!(wrong_unit.is_err());
    }
}
