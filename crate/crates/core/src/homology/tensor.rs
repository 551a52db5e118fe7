use crate::linalg::{Mat, QuotientMap, RowSpace};
use crate::module::{ModuleMorphism, RightModule};
use crate::{Error, Result};

use super::hom::Bimodule;
use super::projective::{syzygy, Syzygy};

/// `Y ⊗_B X` for a right `B`-module `Y` and a `B`-`A`-bimodule `X`: the
/// quotient of `Y ⊗_k X` by `yb ⊗ x - y ⊗ bx`, a right `A`-module.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: RightModule,
    pub quotient: QuotientMap,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl Tensor {
    /// The class of `y ⊗ x`.
    pub fn element(&self, y: &Mat, x: &Mat) -> Mat {
        &y.kron(x) * &self.quotient.proj
    }

    /// Induced map from a linear map on `Y ⊗_k X` that preserves the
    /// relations.
    pub fn induce_to(&self, target: &Tensor, kron_map: &Mat) -> Mat {
        &(&self.quotient.section * kron_map) * &target.quotient.proj
    }
}

pub fn tensor(y: &RightModule, x: &Bimodule) -> Result<Tensor> {
    if !crate::algebra::same_algebra(y.algebra(), x.left()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = y.field();
    let (ny, nx) = (y.dim(), x.dim());
    let n = ny * nx;
    let iy = Mat::identity(f, ny);
    let ix = Mat::identity(f, nx);
    let rel_rows: Vec<Mat> = y
        .algebra()
        .generators()
        .iter()
        .map(|&b| &y.action(b).kron(&ix) - &iy.kron(x.left_action(b)))
        .collect();
    let refs: Vec<&Mat> = rel_rows.iter().collect();
    let relations = RowSpace::span(&Mat::vstack(f, n, &refs));
    let quotient = relations.quotient_map();
    let action = x.module().actions().iter().map(|a| quotient.induced(&iy.kron(a))).collect();
    let module = RightModule::new_unchecked(x.right(), quotient.dim(), action);
    Ok(Tensor { module, quotient, left_dim: ny, right_dim: nx })
}

/// `g ⊗ 1: Y ⊗ X → Y' ⊗ X`.
pub fn tensor_map(g: &ModuleMorphism, src: &Tensor, dst: &Tensor) -> ModuleMorphism {
    let f = g.matrix().field();
    let m = src.induce_to(dst, &g.matrix().kron(&Mat::identity(f, src.right_dim)));
    ModuleMorphism::new_unchecked(&src.module, &dst.module, m)
}

/// `1 ⊗ h: Y ⊗ X → Y ⊗ X'` for a linear map `h: X → X'` commuting with the
/// left actions.
pub fn tensor_map_right(h: &Mat, src: &Tensor, dst: &Tensor) -> Mat {
    let f = h.field();
    src.induce_to(dst, &Mat::identity(f, src.left_dim).kron(h))
}

/// `Tor₁^B(Y, X) = ker(ΩY ⊗ X → P ⊗ X)`, a right `A`-module.
#[derive(Clone, Debug)]
pub struct Tor1 {
    pub module: RightModule,
    /// `Tor₁ → ΩY ⊗ X`.
    pub inclusion: ModuleMorphism,
    pub presentation: Syzygy,
    pub syzygy_tensor: Tensor,
    pub projective_tensor: Tensor,
    /// `ΩY ⊗ X → P ⊗ X`.
    pub comparison: ModuleMorphism,
}

pub fn tor1(y: &RightModule, x: &Bimodule) -> Result<Tor1> {
    let presentation = syzygy(y)?;
    let syzygy_tensor = tensor(&presentation.module, x)?;
    let projective_tensor = tensor(presentation.cover.module(), x)?;
    let comparison = tensor_map(&presentation.inclusion, &syzygy_tensor, &projective_tensor);
    let (module, inclusion) = comparison.kernel();
    Ok(Tor1 { module, inclusion, presentation, syzygy_tensor, projective_tensor, comparison })
}

/// `dim Tor₁` from a projective presentation `Q₁ → Q₀` of `X` as a left
/// module: the kernel of `Y ⊗ Q₁ → Y ⊗ Q₀`. `delta` is the matrix of
/// `Q₁ → Q₀` on row vectors.
pub fn tor1_dim_from_presentation(y: &RightModule, q1: &Bimodule, q0: &Bimodule, delta: &Mat) -> Result<usize> {
    let t1 = tensor(y, q1)?;
    let t0 = tensor(y, q0)?;
    let m = tensor_map_right(delta, &t1, &t0);
    Ok(t1.module.dim() - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, QuiverPresentation};
    use crate::homology::{simple_module, Bimodule};
    use crate::linalg::Field;
    use std::sync::Arc;

    #[test]
    fn tensor_with_regular_bimodule_is_identity() {
        let f = Field::Rational;
        let a = Arc::new(Algebra::path_algebra(f, &QuiverPresentation::linear(3)).unwrap());
        let reg = Bimodule::regular(&a);
        for c in 0..3 {
            let s = simple_module(&a, c).unwrap();
            let t = tensor(&s, &reg).unwrap();
            assert_eq!(t.module.dim(), 1);
            t.module.check_law().unwrap();
            assert_eq!(tor1(&s, &reg).unwrap().module.dim(), 0);
        }
    }

    #[test]
    fn tor_over_dual_numbers() {
        // Tor₁(k, k) = k over k[x]/x²
        let f = Field::Prime(3);
        let q = QuiverPresentation::new(1).arrow(0, 0, "x").relation(vec![(f.one(), vec![0, 0])]);
        let a = Arc::new(Algebra::path_algebra(f, &q).unwrap());
        let s = simple_module(&a, 0).unwrap();
        let left = Bimodule::left_only(&a, s.actions().to_vec()).unwrap();
        assert_eq!(tensor(&s, &left).unwrap().module.dim(), 1);
        assert_eq!(tor1(&s, &left).unwrap().module.dim(), 1);
    }
}
