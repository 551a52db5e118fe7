//! Brute-force reference values, computed straight from the definitions
//! with their own elimination routine. Nothing here uses the kernel or
//! resolution code of the main engines, so agreement is a real check.

use crate::algebra::Algebra;
use crate::homology::Bimodule;
use crate::linalg::{Mat, Scalar};
use crate::module::RightModule;
use crate::{Error, Result};

/// Largest number of unknowns an oracle system may have.
pub const UNKNOWN_CAP: usize = 2000;
/// Largest number of extension classes enumerated.
pub const CLASS_CAP: u64 = 1 << 10;

/// Row reduction on plain vectors of scalars.
fn naive_rank(mut rows: Vec<Vec<Scalar>>, width: usize) -> usize {
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot: Vec<Scalar> = rows[rank].iter().map(|s| s.mul(&inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.sub(&c.mul(y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn check_cap(unknowns: usize) -> Result<()> {
    if unknowns > UNKNOWN_CAP {
        return Err(Error::CapExceeded(format!("oracle system with {unknowns} unknowns (cap {UNKNOWN_CAP})")));
    }
    Ok(())
}

/// `dim Hom_A(M, N)`: matrices `F` with `A^M_a F = F A^N_a` for every
/// basis element `a`.
pub fn oracle_hom_dim(m: &RightModule, n: &RightModule) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    check_cap(unknowns)?;
    if unknowns == 0 {
        return Ok(0);
    }
    let mut rows = Vec::new();
    for a in 0..m.algebra().dim() {
        let (am, an) = (m.action(a), n.action(a));
        for r in 0..dm {
            for c in 0..dn {
                let mut row = vec![f.zero(); unknowns];
                for i in 0..dm {
                    row[i * dn + c] = row[i * dn + c].add(&am.get(r, i));
                }
                for j in 0..dn {
                    row[r * dn + j] = row[r * dn + j].sub(&an.get(j, c));
                }
                rows.push(row);
            }
        }
    }
    Ok(unknowns - naive_rank(rows, unknowns))
}

/// The cocycle equations for extensions `0 → N → E → M → 0` with
/// `E_a = [[N_a, 0], [D_a, M_a]]`: `D_a N_b + M_a D_b = Σ c_abk D_k` and
/// `Σ u_a D_a = 0`. Unknown `(a, i, j)` sits at `a·dm·dn + i·dn + j`.
fn cocycle_equations(m: &RightModule, n: &RightModule) -> Vec<Vec<Scalar>> {
    let alg = m.algebra();
    let f = m.field();
    let d = alg.dim();
    let (dm, dn) = (m.dim(), n.dim());
    let blk = dm * dn;
    let idx = |a: usize, i: usize, j: usize| a * blk + i * dn + j;
    let mut rows = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let consts: Vec<Scalar> = (0..d).map(|k| alg.structure_constant(a, b, k)).collect();
            for r in 0..dm {
                for c in 0..dn {
                    let mut row = vec![f.zero(); d * blk];
                    for j in 0..dn {
                        let v = n.action(b).get(j, c);
                        if !v.is_zero() {
                            row[idx(a, r, j)] = row[idx(a, r, j)].add(&v);
                        }
                    }
                    for i in 0..dm {
                        let v = m.action(a).get(r, i);
                        if !v.is_zero() {
                            row[idx(b, i, c)] = row[idx(b, i, c)].add(&v);
                        }
                    }
                    for (k, s) in consts.iter().enumerate() {
                        if !s.is_zero() {
                            row[idx(k, r, c)] = row[idx(k, r, c)].sub(s);
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let unit = alg.unit();
    for r in 0..dm {
        for c in 0..dn {
            let mut row = vec![f.zero(); d * blk];
            for a in 0..d {
                row[idx(a, r, c)] = unit.get(0, a);
            }
            rows.push(row);
        }
    }
    rows
}

/// `dim Ext¹_A(M, N)` as cocycles modulo coboundaries
/// `D_a = M_a X - X N_a`.
pub fn oracle_ext_dim(m: &RightModule, n: &RightModule) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let unknowns = m.algebra().dim() * m.dim() * n.dim();
    check_cap(unknowns)?;
    if unknowns == 0 {
        return Ok(0);
    }
    let z = unknowns - naive_rank(cocycle_equations(m, n), unknowns);
    let b = m.dim() * n.dim() - oracle_hom_dim(m, n)?;
    Ok(z - b)
}

fn middle_term(m: &RightModule, n: &RightModule, d: &Mat) -> Result<RightModule> {
    let alg = m.algebra();
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let blk = dm * dn;
    let action = (0..alg.dim())
        .map(|a| {
            let mut e = Mat::zeros(f, dn + dm, dn + dm);
            e.paste(0, 0, n.action(a));
            e.paste(dn, dn, m.action(a));
            e.paste(dn, 0, &d.submatrix(0, 1, a * blk, (a + 1) * blk).unflatten(dm, dn));
            e
        })
        .collect();
    RightModule::new(alg, action)
}

/// Every middle term `E` of an extension of `M` by `N`, one per class, over
/// a finite field. Isomorphic middle terms are not merged here.
pub fn oracle_all_extensions(m: &RightModule, n: &RightModule) -> Result<Vec<RightModule>> {
    let f = m.field();
    let Some(elements) = f.elements() else {
        return Err(Error::Undecided("extension enumeration needs a finite field".into()));
    };
    let unknowns = m.algebra().dim() * m.dim() * n.dim();
    check_cap(unknowns)?;
    if unknowns == 0 {
        return Ok(vec![crate::module::direct_sum(m.algebra(), &[n, m])?.module]);
    }
    let eqs = cocycle_equations(m, n);
    let rows: Vec<Mat> = eqs.iter().map(|r| Mat::row_vector(f, r)).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let z = Mat::vstack(f, unknowns, &refs).transpose().left_kernel();
    // coboundaries from the elementary X
    let (dm, dn) = (m.dim(), n.dim());
    let mut bs = Vec::new();
    for i in 0..dm {
        for j in 0..dn {
            let mut x = Mat::zeros(f, dm, dn);
            x.set(i, j, &f.one());
            let mut row = Mat::zeros(f, 1, unknowns);
            for a in 0..m.algebra().dim() {
                let da = &(m.action(a) * &x) - &(&x * n.action(a));
                row.paste(0, a * dm * dn, &da.flatten());
            }
            bs.push(row);
        }
    }
    let brefs: Vec<&Mat> = bs.iter().collect();
    let b = crate::linalg::RowSpace::span(&Mat::vstack(f, unknowns, &brefs));
    // complement of B inside Z
    let mut reps: Vec<Mat> = Vec::new();
    let mut span = b.clone();
    for r in 0..z.rows() {
        let v = z.row(r);
        if !span.contains(&v) {
            span = span.add_rows(&v);
            reps.push(v);
        }
    }
    let count = (elements.len() as u64).checked_pow(reps.len() as u32).unwrap_or(u64::MAX);
    if count > CLASS_CAP {
        return Err(Error::CapExceeded(format!("{count} extension classes (cap {CLASS_CAP})")));
    }
    let mut out = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut d = Mat::zeros(f, 1, unknowns);
        let mut c = code;
        for r in &reps {
            let s = &elements[(c % elements.len() as u64) as usize];
            c /= elements.len() as u64;
            d = &d + &r.scale(s);
        }
        out.push(middle_term(m, n, &d)?);
    }
    Ok(out)
}

/// `dim N ⊗_B X`: `dim N · dim X` minus the rank of the relations
/// `nb ⊗ x - n ⊗ bx` over every basis element `b`.
pub fn oracle_tensor_dim(n: &RightModule, x: &Bimodule) -> Result<usize> {
    let alg: &Algebra = n.algebra();
    if !crate::algebra::same_algebra(n.algebra(), x.left()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = n.field();
    let (dn, dx) = (n.dim(), x.dim());
    let width = dn * dx;
    check_cap(width)?;
    if width == 0 {
        return Ok(0);
    }
    let mut rows = Vec::new();
    for b in 0..alg.dim() {
        let (nb, lb) = (n.action(b), x.left_action(b));
        for i in 0..dn {
            for j in 0..dx {
                // (e_i b) ⊗ e_j - e_i ⊗ (b e_j)
                let mut row = vec![f.zero(); width];
                for k in 0..dn {
                    row[k * dx + j] = row[k * dx + j].add(&nb.get(i, k));
                }
                for l in 0..dx {
                    row[i * dx + l] = row[i * dx + l].sub(&lb.get(j, l));
                }
                rows.push(row);
            }
        }
    }
    Ok(width - naive_rank(rows, width))
}

/// `dim Tor₁^B(N, X)` through `D Tor₁(N, X) ≅ Ext¹(N, D X)`.
pub fn oracle_tor1_dim(n: &RightModule, x: &Bimodule) -> Result<usize> {
    oracle_ext_dim(n, &x.dual_right())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::algebra::QuiverPresentation;
    use crate::decompose::group_by_isomorphism;
    use crate::homology::{projective_indecomposable, simple_module};
    use std::sync::Arc;

    #[test]
    fn a2_tables() {
        let a = Arc::new(Algebra::path_algebra(Field::Rational, &QuiverPresentation::linear(2)).unwrap());
        let p1 = projective_indecomposable(&a, 0).unwrap();
        let p2 = projective_indecomposable(&a, 1).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        assert_eq!(oracle_hom_dim(&p1, &p1).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&p2, &p1).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&p1, &s1).unwrap(), 1);
        assert_eq!(oracle_hom_dim(&s1, &p1).unwrap(), 0);
        assert_eq!(oracle_ext_dim(&s1, &p2).unwrap(), 1);
        assert_eq!(oracle_ext_dim(&p1, &s1).unwrap(), 0);
        let zero = RightModule::zero(&a);
        assert_eq!(oracle_hom_dim(&zero, &p1).unwrap(), 0);
        assert_eq!(oracle_ext_dim(&s1, &zero).unwrap(), 0);
    }

    #[test]
    fn extensions_of_simples_over_f2() {
        let a = Arc::new(Algebra::path_algebra(Field::Prime(2), &QuiverPresentation::linear(2)).unwrap());
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let es = oracle_all_extensions(&s1, &s2).unwrap();
        assert_eq!(es.len(), 2);
        let (reps, _) = group_by_isomorphism(&es).unwrap();
        assert_eq!(reps.len(), 2);
        let p1 = projective_indecomposable(&a, 0).unwrap();
        assert!(es.iter().any(|e| crate::decompose::is_isomorphic(e, &p1).unwrap()));
    }
}
