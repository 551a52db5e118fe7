//! The line-oriented text format for algebras, modules and complexes.
//!
//! ```text
//! # A2 with the tilting module P1 + S1
//! field Q
//! algebra quiver 2
//!   arrow a 1 2
//! end
//! module P1 = projective 1
//! module S1 = simple 1
//! module T = sum P1 S1
//! module M
//!   dims 1 1
//!   arrow a
//!     1
//! end
//! tilting T
//! probes P1 S1 M
//! complex X 0
//!   term P1
//!   term S1
//!   diff 0
//!     1
//!     0
//! end
//! ```
//!
//! A matrix with no columns is written with no rows. Vertices and summand
//! indices are 1-based. Scalars are integers or `a/b`
//! over `Q`, integers over `Fp`. Relations are written as
//! `relation 1 a b + -1 c d`, each path listed from its first arrow. An
//! algebra given by structure constants uses
//!
//! ```text
//! algebra structure
//!   basis e1 x e2
//!   unit 1 0 1
//!   product e1 x = 1 x
//! end
//! ```
//!
//! with unlisted products zero, and its modules give one `action <label>`
//! matrix per basis element after `dim n`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, QuiverPresentation};
use crate::derived::Complex;
use crate::homology::{injective_indecomposable, projective_indecomposable, simple_module};
use crate::linalg::{Field, Mat, Scalar};
use crate::module::{direct_sum, RightModule};
use crate::report::Probe;
use crate::{Error, Result};

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Document {
    pub algebra: Arc<Algebra>,
    pub modules: Vec<Probe>,
    pub tilting: Vec<String>,
    pub probes: Option<Vec<String>>,
    pub complexes: Vec<(String, Complex)>,
}

impl Document {
    pub fn module(&self, name: &str) -> Option<&RightModule> {
        self.modules.iter().find(|p| p.name == name).map(|p| &p.module)
    }

    /// The declared probes, or every module that is not declared tilting.
    pub fn probe_list(&self) -> Vec<Probe> {
        match &self.probes {
            Some(names) => names
                .iter()
                .map(|n| Probe::new(n.clone(), self.module(n).expect("checked while parsing").clone()))
                .collect(),
            None => self.modules.iter().filter(|p| !self.tilting.contains(&p.name)).cloned().collect(),
        }
    }
}

/// `x y = sum of c z`, as basis indices.
type Product = (usize, usize, Vec<(Scalar, usize)>);

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn tokenize(src: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    let col = line[..s].chars().count() + 1;
                    toks.push(Token { text: &line[s..j], line: i + 1, col });
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

struct Parser<'a> {
    lines: Vec<Vec<Token<'a>>>,
    pos: usize,
    last_line: usize,
    field: Option<Field>,
    algebra: Option<Arc<Algebra>>,
    modules: Vec<Probe>,
    index: HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn next_line(&mut self) -> Option<Vec<Token<'a>>> {
        let l = self.lines.get(self.pos).cloned();
        if let Some(l) = &l {
            self.last_line = l[0].line;
            self.pos += 1;
        }
        l
    }

    fn eof(&self, what: &str) -> Error {
        err(self.last_line + 1, 1, format!("unexpected end of input, expected {what}"))
    }

    fn field(&self, t: &Token) -> Result<Field> {
        self.field.ok_or_else(|| err(t.line, t.col, "`field` must come first"))
    }

    fn algebra(&self, t: &Token) -> Result<Arc<Algebra>> {
        self.algebra.clone().ok_or_else(|| err(t.line, t.col, "no algebra declared yet"))
    }

    fn scalar(&self, t: &Token) -> Result<Scalar> {
        let f = self.field(t)?;
        f.parse(t.text).map_err(|e| err(t.line, t.col, format!("bad scalar {:?}: {e}", t.text)))
    }

    fn usize(t: &Token) -> Result<usize> {
        t.text.parse().map_err(|_| err(t.line, t.col, format!("expected a nonnegative integer, got {:?}", t.text)))
    }

    fn i32(t: &Token) -> Result<i32> {
        t.text.parse().map_err(|_| err(t.line, t.col, format!("expected an integer, got {:?}", t.text)))
    }

    fn arity(toks: &[Token], n: usize, usage: &str) -> Result<()> {
        if toks.len() != n {
            let t = toks.get(n).unwrap_or(&toks[0]);
            return Err(err(t.line, t.col, format!("expected `{usage}`")));
        }
        Ok(())
    }

    /// `rows` lines of `cols` scalars each; no lines at all when `cols` is 0.
    fn matrix(&mut self, rows: usize, cols: usize, at: &Token) -> Result<Mat> {
        let f = self.field(at)?;
        if cols == 0 {
            return Ok(Mat::zeros(f, rows, 0));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = self.next_line().ok_or_else(|| self.eof("a matrix row"))?;
            if line.len() != cols {
                let t = line.get(cols).unwrap_or(&line[0]);
                return Err(err(t.line, t.col, format!("matrix row needs {cols} entries, found {}", line.len())));
            }
            for t in &line {
                entries.push(self.scalar(t)?);
            }
        }
        Ok(Mat::from_scalars(f, rows, cols, &entries)?)
    }

    fn run(mut self) -> Result<Document> {
        let mut tilting = Vec::new();
        let mut probes: Option<Vec<String>> = None;
        let mut complexes = Vec::new();
        while let Some(line) = self.next_line() {
            let head = &line[0];
            match head.text {
                "field" => {
                    Self::arity(&line, 2, "field Q | field Fp")?;
                    if self.field.is_some() {
                        return Err(err(head.line, head.col, "field declared twice"));
                    }
                    let t = &line[1];
                    let f = match t.text {
                        "Q" => Field::Rational,
                        s if s.starts_with('F') => {
                            let p: u32 =
                                s[1..].parse().map_err(|_| err(t.line, t.col + 1, "expected a prime after F"))?;
                            Field::prime(p).map_err(|e| err(t.line, t.col + 1, e.to_string()))?
                        }
                        _ => return Err(err(t.line, t.col, "expected Q or Fp")),
                    };
                    self.field = Some(f);
                }
                "algebra" => {
                    if self.algebra.is_some() {
                        return Err(err(head.line, head.col, "algebra declared twice"));
                    }
                    let kind = line.get(1).ok_or_else(|| err(head.line, head.col, "expected `algebra quiver n` or `algebra structure`"))?;
                    let alg = match kind.text {
                        "quiver" => {
                            Self::arity(&line, 3, "algebra quiver <vertices>")?;
                            self.quiver_block(&line[2])?
                        }
                        "structure" => {
                            Self::arity(&line, 2, "algebra structure")?;
                            self.structure_block(kind)?
                        }
                        _ => return Err(err(kind.line, kind.col, "expected `quiver` or `structure`")),
                    };
                    self.algebra = Some(Arc::new(alg));
                }
                "module" => {
                    let name = line.get(1).ok_or_else(|| err(head.line, head.col, "expected a module name"))?;
                    if self.index.contains_key(name.text) {
                        return Err(err(name.line, name.col, format!("module {:?} declared twice", name.text)));
                    }
                    let m = if line.get(2).map(|t| t.text) == Some("=") {
                        self.module_expr(&line[3..], &line[2])?
                    } else {
                        Self::arity(&line, 2, "module <name>")?;
                        self.module_block(head)?
                    };
                    self.index.insert(name.text.to_string(), self.modules.len());
                    self.modules.push(Probe::new(name.text, m));
                }
                "tilting" => {
                    Self::arity(&line, 2, "tilting <module>")?;
                    self.lookup(&line[1])?;
                    tilting.push(line[1].text.to_string());
                }
                "probes" => {
                    let mut names = Vec::new();
                    for t in &line[1..] {
                        self.lookup(t)?;
                        names.push(t.text.to_string());
                    }
                    probes = Some(names);
                }
                "complex" => {
                    Self::arity(&line, 3, "complex <name> <lowest degree>")?;
                    let lo = Self::i32(&line[2])?;
                    let c = self.complex_block(&line[1], lo)?;
                    complexes.push((line[1].text.to_string(), c));
                }
                other => return Err(err(head.line, head.col, format!("unknown directive {other:?}"))),
            }
        }
        let algebra = match self.algebra {
            Some(a) => a,
            None => return Err(err(self.last_line.max(1), 1, "no algebra declared")),
        };
        Ok(Document { algebra, modules: self.modules, tilting, probes, complexes })
    }

    fn lookup(&self, t: &Token) -> Result<&RightModule> {
        self.index
            .get(t.text)
            .map(|&i| &self.modules[i].module)
            .ok_or_else(|| err(t.line, t.col, format!("unknown module {:?}", t.text)))
    }

    fn quiver_block(&mut self, vt: &Token) -> Result<Algebra> {
        let f = self.field(vt)?;
        let n = Self::usize(vt)?;
        if n == 0 {
            return Err(err(vt.line, vt.col, "a quiver needs at least one vertex"));
        }
        let mut q = QuiverPresentation::new(n);
        let mut labels: Vec<String> = Vec::new();
        loop {
            let line = self.next_line().ok_or_else(|| self.eof("`end`"))?;
            let head = &line[0];
            match head.text {
                "end" => break,
                "arrow" => {
                    Self::arity(&line, 4, "arrow <label> <source> <target>")?;
                    if labels.iter().any(|l| l == line[1].text) {
                        return Err(err(line[1].line, line[1].col, "arrow label used twice"));
                    }
                    let mut ends = [0; 2];
                    for (k, t) in line[2..4].iter().enumerate() {
                        let v = Self::usize(t)?;
                        if v == 0 || v > n {
                            return Err(err(t.line, t.col, format!("vertex {v} out of range 1..{n}")));
                        }
                        ends[k] = v - 1;
                    }
                    labels.push(line[1].text.to_string());
                    q = q.arrow(ends[0], ends[1], line[1].text);
                }
                "relation" => {
                    let mut terms = Vec::new();
                    for chunk in line[1..].split(|t| t.text == "+") {
                        let (c, path) = chunk
                            .split_first()
                            .ok_or_else(|| err(head.line, head.col, "empty term in relation"))?;
                        if path.is_empty() {
                            return Err(err(c.line, c.col, "a relation term needs a path"));
                        }
                        let coef = self.scalar(c)?;
                        let mut word = Vec::new();
                        for t in path {
                            let a = labels
                                .iter()
                                .position(|l| l == t.text)
                                .ok_or_else(|| err(t.line, t.col, format!("unknown arrow {:?}", t.text)))?;
                            word.push(a);
                        }
                        terms.push((coef, word));
                    }
                    q = q.relation(terms);
                }
                other => return Err(err(head.line, head.col, format!("unexpected {other:?} in quiver block"))),
            }
        }
        Algebra::path_algebra(f, &q).map_err(|e| err(vt.line, vt.col, e.to_string()))
    }

    fn structure_block(&mut self, at: &Token) -> Result<Algebra> {
        let f = self.field(at)?;
        let mut basis: Option<Vec<String>> = None;
        let mut unit: Option<Vec<Scalar>> = None;
        let mut products: Vec<Product> = Vec::new();
        loop {
            let line = self.next_line().ok_or_else(|| self.eof("`end`"))?;
            let head = &line[0];
            let find = |b: &Option<Vec<String>>, t: &Token| -> Result<usize> {
                let b = b.as_ref().ok_or_else(|| err(t.line, t.col, "`basis` must come first"))?;
                b.iter().position(|l| l == t.text).ok_or_else(|| err(t.line, t.col, format!("unknown basis element {:?}", t.text)))
            };
            match head.text {
                "end" => break,
                "basis" => {
                    if line.len() < 2 {
                        return Err(err(head.line, head.col, "empty basis"));
                    }
                    basis = Some(line[1..].iter().map(|t| t.text.to_string()).collect());
                }
                "unit" => {
                    let n = basis.as_ref().map_or(0, |b| b.len());
                    Self::arity(&line, n + 1, "unit <one coefficient per basis element>")?;
                    unit = Some(line[1..].iter().map(|t| self.scalar(t)).collect::<Result<_>>()?);
                }
                "product" => {
                    if line.len() < 4 || line[3].text != "=" {
                        return Err(err(head.line, head.col, "expected `product x y = c z + …`"));
                    }
                    let i = find(&basis, &line[1])?;
                    let j = find(&basis, &line[2])?;
                    let mut terms = Vec::new();
                    for chunk in line[4..].split(|t| t.text == "+") {
                        if chunk.len() != 2 {
                            let t = chunk.first().unwrap_or(&line[3]);
                            return Err(err(t.line, t.col, "each term is `<coefficient> <basis element>`"));
                        }
                        terms.push((self.scalar(&chunk[0])?, find(&basis, &chunk[1])?));
                    }
                    products.push((i, j, terms));
                }
                other => return Err(err(head.line, head.col, format!("unexpected {other:?} in structure block"))),
            }
        }
        let basis = basis.ok_or_else(|| err(at.line, at.col, "structure block without `basis`"))?;
        let unit = unit.ok_or_else(|| err(at.line, at.col, "structure block without `unit`"))?;
        let n = basis.len();
        let mut c = vec![vec![vec![f.zero(); n]; n]; n];
        for (i, j, terms) in products {
            for (s, k) in terms {
                c[i][j][k] = c[i][j][k].add(&s);
            }
        }
        Algebra::from_structure_constants(f, basis, &c, &unit).map_err(|e| err(at.line, at.col, e.to_string()))
    }

    fn module_expr(&self, toks: &[Token], eq: &Token) -> Result<RightModule> {
        let head = toks.first().ok_or_else(|| err(eq.line, eq.col + 2, "expected a module expression"))?;
        let alg = self.algebra(head)?;
        let index = |t: &Token| -> Result<usize> {
            let i = Self::usize(t)?;
            let n = crate::homology::idempotents(&alg)?.classes();
            if i == 0 || i > n {
                return Err(err(t.line, t.col, format!("index {i} out of range 1..{n}")));
            }
            Ok(i - 1)
        };
        let one_arg = || -> Result<&Token> {
            if toks.len() != 2 {
                return Err(err(head.line, head.col, format!("`{}` takes one index", head.text)));
            }
            Ok(&toks[1])
        };
        match head.text {
            "projective" => projective_indecomposable(&alg, index(one_arg()?)?),
            "simple" => simple_module(&alg, index(one_arg()?)?),
            "injective" => injective_indecomposable(&alg, index(one_arg()?)?),
            "regular" => Ok(RightModule::regular(&alg)),
            "zero" => Ok(RightModule::zero(&alg)),
            "sum" => {
                let parts = toks[1..].iter().map(|t| self.lookup(t)).collect::<Result<Vec<_>>>()?;
                Ok(direct_sum(&alg, &parts)?.module)
            }
            other => Err(err(head.line, head.col, format!("unknown module constructor {other:?}"))),
        }
    }

    fn module_block(&mut self, at: &Token) -> Result<RightModule> {
        let alg = self.algebra(at)?;
        let quiver = alg.quiver().cloned();
        let mut dims: Option<Vec<usize>> = None;
        let mut mats: HashMap<usize, Mat> = HashMap::new();
        loop {
            let line = self.next_line().ok_or_else(|| self.eof("`end`"))?;
            let head = &line[0];
            match head.text {
                "end" => break,
                "dims" | "dim" => {
                    let v = line[1..].iter().map(Self::usize).collect::<Result<Vec<_>>>()?;
                    let want = match (&quiver, head.text) { (Some(q), "dims") => q.vertices, _ => 1 };
                    if v.len() != want {
                        return Err(err(head.line, head.col, format!("expected {want} dimension(s)")));
                    }
                    dims = Some(v);
                }
                "arrow" | "action" => {
                    Self::arity(&line, 2, "arrow <label> | action <label>")?;
                    let d = dims.clone().ok_or_else(|| err(head.line, head.col, "dimensions must come first"))?;
                    let t = &line[1];
                    let (k, shape) = match (&quiver, head.text) {
                        (Some(q), "arrow") if d.len() == q.vertices => {
                            let k = q
                                .arrows
                                .iter()
                                .position(|(l, _, _)| l == t.text)
                                .ok_or_else(|| err(t.line, t.col, format!("unknown arrow {:?}", t.text)))?;
                            let (_, s, tt) = &q.arrows[k];
                            (k, (d[*s], d[*tt]))
                        }
                        (_, "action") if d.len() == 1 => {
                            let k = alg
                                .label_index(t.text)
                                .ok_or_else(|| err(t.line, t.col, format!("unknown basis element {:?}", t.text)))?;
                            (k, (d[0], d[0]))
                        }
                        _ => return Err(err(head.line, head.col, "use `dims` with `arrow`, `dim` with `action`")),
                    };
                    if mats.contains_key(&k) {
                        return Err(err(t.line, t.col, "matrix given twice"));
                    }
                    let m = self.matrix(shape.0, shape.1, head)?;
                    mats.insert(k, m);
                }
                other => return Err(err(head.line, head.col, format!("unexpected {other:?} in module block"))),
            }
        }
        let f = alg.field();
        let d = dims.ok_or_else(|| err(at.line, at.col, "module block without dimensions"))?;
        let res = match &quiver {
            Some(q) if d.len() == q.vertices && !(q.vertices == 1 && mats.is_empty() && alg.dim() == 1) => {
                let arrows = q
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(k, (_, s, t))| mats.remove(&k).unwrap_or_else(|| Mat::zeros(f, d[*s], d[*t])))
                    .collect::<Vec<_>>();
                RightModule::from_representation(&alg, &d, &arrows)
            }
            _ => {
                let n = d[0];
                let action = (0..alg.dim())
                    .map(|k| {
                        mats.remove(&k)
                            .ok_or_else(|| err(at.line, at.col, format!("missing action of {}", alg.labels()[k])))
                    })
                    .collect::<Result<Vec<_>>>();
                let action = match action {
                    Ok(a) => a,
                    Err(_) if alg.dim() == 1 => vec![Mat::identity(f, n)],
                    Err(e) => return Err(e),
                };
                RightModule::new(&alg, action)
            }
        };
        res.map_err(|e| err(at.line, at.col, e.to_string()))
    }

    fn complex_block(&mut self, name: &Token, lo: i32) -> Result<Complex> {
        let alg = self.algebra(name)?;
        let mut terms: Vec<RightModule> = Vec::new();
        let mut diffs: HashMap<i32, (Mat, Token)> = HashMap::new();
        loop {
            let line = self.next_line().ok_or_else(|| self.eof("`end`"))?;
            let head = &line[0];
            match head.text {
                "end" => break,
                "term" => {
                    Self::arity(&line, 2, "term <module> | term 0")?;
                    if !diffs.is_empty() {
                        return Err(err(head.line, head.col, "terms must precede differentials"));
                    }
                    let m = if line[1].text == "0" { RightModule::zero(&alg) } else { self.lookup(&line[1])?.clone() };
                    terms.push(m);
                }
                "diff" => {
                    Self::arity(&line, 2, "diff <degree>")?;
                    let n = Self::i32(&line[1])?;
                    let i = n - lo;
                    if i < 0 || i + 1 >= terms.len() as i32 {
                        return Err(err(line[1].line, line[1].col, format!("no differential leaves degree {n}")));
                    }
                    if diffs.contains_key(&n) {
                        return Err(err(line[1].line, line[1].col, "differential given twice"));
                    }
                    let (r, c) = (terms[i as usize].dim(), terms[i as usize + 1].dim());
                    let m = self.matrix(r, c, head)?;
                    diffs.insert(n, (m, head.clone()));
                }
                other => return Err(err(head.line, head.col, format!("unexpected {other:?} in complex block"))),
            }
        }
        let f = alg.field();
        let mut ds = Vec::new();
        for i in 0..terms.len().saturating_sub(1) {
            let n = lo + i as i32;
            match diffs.remove(&n) {
                Some((m, _)) => ds.push(m),
                None => ds.push(Mat::zeros(f, terms[i].dim(), terms[i + 1].dim())),
            }
        }
        Complex::new(&alg, lo, terms, ds)
            .map_err(|e| err(name.line, name.col, format!("complex {}: {e}", name.text)))
    }
}

pub fn parse(src: &str) -> Result<Document> {
    let p = Parser {
        lines: tokenize(src),
        pos: 0,
        last_line: 0,
        field: None,
        algebra: None,
        modules: Vec::new(),
        index: HashMap::new(),
    };
    p.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "\
# A2
field Q
algebra quiver 2
  arrow a 1 2
end
module P1 = projective 1
module S1 = simple 1
module S2 = simple 2
module T = sum P1 S1
module M
  dims 1 1
  arrow a
    1
end
tilting T
complex X 0
  term P2
end
";

    #[test]
    fn parses_a2() {
        let src = A2.replace("term P2", "term S2");
        let d = parse(&src).unwrap();
        assert_eq!(d.modules.len(), 5);
        assert_eq!(d.module("T").unwrap().dim(), 3);
        assert!(crate::decompose::is_isomorphic(d.module("M").unwrap(), d.module("P1").unwrap()).unwrap());
        assert_eq!(d.probe_list().len(), 4);
        assert_eq!(d.complexes.len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse(A2).unwrap_err();
        assert_eq!(e, Error::Parse { line: 17, col: 8, msg: "unknown module \"P2\"".into() });
        let e = parse("field Q\nalgebra quiver 2\n  arrow a 1 3\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 13, .. }), "{e}");
        let e = parse("field F4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 8, .. }), "{e}");
    }

    #[test]
    fn d_squared_names_the_degree() {
        let src = "field Q\nalgebra quiver 1\nend\nmodule K = regular\n\
                   complex X 0\n  term K\n  term K\n  term K\n  diff 0\n    1\n  diff 1\n    1\nend\n";
        let e = parse(src).unwrap_err();
        let s = e.to_string();
        assert!(s.starts_with("5:9:") && s.contains("degree 0"), "{s}");
    }

    #[test]
    fn structure_constants() {
        let src = "field F2\nalgebra structure\n  basis e x f\n  unit 1 0 1\n  product e e = 1 e\n  product e x = 1 x\n\
                   product x f = 1 x\n  product f f = 1 f\nend\nmodule P = regular\nmodule S\n  dim 1\n  action e\n    1\n  \
                   action x\n    0\n  action f\n    0\nend\n";
        let d = parse(src).unwrap();
        assert_eq!(d.algebra.dim(), 3);
        assert_eq!(d.module("S").unwrap().dim(), 1);
    }
}
