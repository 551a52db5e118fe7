//! Randomized invariants, checked against the naive oracles where one
//! exists.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilting_core::corpus::{oracle_ext_dim, oracle_hom_dim};
use tilting_core::derived::{cone, random_complex, ChainMap};
use tilting_core::homology::{ext1, hom_space, projective_modules, simple_modules};
use tilting_core::input::parse;
use tilting_core::module::direct_sum;
use tilting_core::report::{Check, VerificationReport};
use tilting_core::{Algebra, Field, Mat, QuiverPresentation, RightModule};

fn field(k: u8) -> Field {
    match k % 3 {
        0 => Field::Rational,
        1 => Field::Prime(2),
        _ => Field::Prime(3),
    }
}

fn quiver(k: u8) -> QuiverPresentation {
    match k % 3 {
        0 => QuiverPresentation::linear(2),
        1 => QuiverPresentation::linear(3),
        _ => QuiverPresentation::new(2).arrow(0, 1, "a").arrow(0, 1, "b"),
    }
}

fn random_rep(alg: &Arc<Algebra>, q: &QuiverPresentation, rng: &mut ChaCha8Rng) -> RightModule {
    let f = alg.field();
    let dims: Vec<usize> = (0..q.vertices).map(|_| rng.gen_range(0..=2)).collect();
    let arrows: Vec<Mat> = q.arrows.iter().map(|(s, t, _)| Mat::random(f, dims[*s], dims[*t], rng, 2)).collect();
    RightModule::from_representation(alg, &dims, &arrows).unwrap()
}

fn setup(fk: u8, qk: u8) -> (Arc<Algebra>, QuiverPresentation) {
    let q = quiver(qk);
    (Arc::new(Algebra::path_algebra(field(fk), &q).unwrap()), q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_and_ext_match_the_oracles(fk in 0u8..3, qk in 0u8..3, seed in any::<u64>()) {
        let (alg, q) = setup(fk, qk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_rep(&alg, &q, &mut rng);
        let n = random_rep(&alg, &q, &mut rng);
        prop_assert_eq!(hom_space(&m, &n).unwrap().dim(), oracle_hom_dim(&m, &n).unwrap());
        prop_assert_eq!(ext1(&m, &n).unwrap().dim(), oracle_ext_dim(&m, &n).unwrap());
    }

    #[test]
    fn hom_is_additive(fk in 0u8..3, qk in 0u8..3, seed in any::<u64>()) {
        let (alg, q) = setup(fk, qk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_rep(&alg, &q, &mut rng), random_rep(&alg, &q, &mut rng), random_rep(&alg, &q, &mut rng));
        let ab = direct_sum(&alg, &[&a, &b]).unwrap().module;
        let lhs = hom_space(&ab, &c).unwrap().dim();
        prop_assert_eq!(lhs, hom_space(&a, &c).unwrap().dim() + hom_space(&b, &c).unwrap().dim());
        let lhs = ext1(&c, &ab).unwrap().dim();
        prop_assert_eq!(lhs, ext1(&c, &a).unwrap().dim() + ext1(&c, &b).unwrap().dim());
    }

    #[test]
    fn kernels_ranks_and_inverses(fk in 0u8..3, rows in 0usize..6, cols in 0usize..6, seed in any::<u64>()) {
        let f = field(fk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(f, rows, cols, &mut rng, 3);
        let k = a.left_kernel();
        prop_assert_eq!(k.rows() + a.rank(), rows);
        prop_assert!((&k * &a).is_zero());
        prop_assert_eq!(k.rank(), k.rows());
        prop_assert_eq!(a.transpose().rank(), a.rank());
        let sq = Mat::random(f, rows, rows, &mut rng, 3);
        match sq.inverse() {
            Some(inv) => prop_assert!((&sq * &inv).is_identity() && (&inv * &sq).is_identity()),
            None => prop_assert!(sq.rank() < rows),
        }
    }

    #[test]
    fn reduction_never_raises_rank(rows in 1usize..6, cols in 1usize..6, p in prop::sample::select(vec![2u32, 3, 5, 7]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(Field::Rational, rows, cols, &mut rng, 9);
        let ap = a.reduce_mod(p).unwrap();
        prop_assert!(ap.rank() <= a.rank());
        let k = a.left_kernel();
        if let Some(kp) = k.reduce_mod(p) {
            prop_assert!((&kp * &ap).is_zero());
        }
    }

    #[test]
    fn complexes_shift_cone_and_dual(fk in 0u8..3, qk in 0u8..3, shift in -3i32..3, seed in any::<u64>()) {
        let (alg, _) = setup(fk, qk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool = projective_modules(&alg).unwrap();
        pool.extend(simple_modules(&alg).unwrap());
        let x = random_complex(&alg, &pool, 4, 6, &mut rng).unwrap();
        let moved: BTreeMap<i32, usize> = x.cohomology_dims().into_iter().map(|(n, d)| (n - shift, d)).collect();
        prop_assert_eq!(x.shift(shift).cohomology_dims(), moved);
        prop_assert!(cone(&ChainMap::identity(&x)).unwrap().complex.is_acyclic());
        let flipped: BTreeMap<i32, usize> = x.cohomology_dims().into_iter().map(|(n, d)| (-n, d)).collect();
        prop_assert_eq!(x.dual().cohomology_dims(), flipped);
    }

    #[test]
    fn report_order_does_not_matter(seed in any::<u64>(), n in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let checks: Vec<Check> = (0..n)
            .map(|i| Check::new(["a", "b", "c"][i % 3], format!("s{}", rng.gen_range(0..4)), rng.gen_bool(0.5), format!("{i}")))
            .collect();
        let mut shuffled = checks.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let a = VerificationReport::new("t", b"x", seed, BTreeMap::new(), checks);
        let b = VerificationReport::new("t", b"x", seed, BTreeMap::new(), shuffled);
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert!(VerificationReport::from_json(&a.to_json()).is_ok());
    }

    #[test]
    fn parsed_modules_match_their_matrices(fk in 0u8..3, qk in 0u8..3, seed in any::<u64>()) {
        let (_, q) = setup(fk, qk);
        let f = field(fk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..q.vertices).map(|_| rng.gen_range(0..=2)).collect();
        let mats: Vec<Mat> = q.arrows.iter().map(|(s, t, _)| Mat::random(f, dims[*s], dims[*t], &mut rng, 2)).collect();
        let mut src = format!("field {f}\nalgebra quiver {}\n", q.vertices);
        for (s, t, l) in &q.arrows {
            src.push_str(&format!("  arrow {l} {} {}\n", s + 1, t + 1));
        }
        src.push_str("end\n");
        let dims_line: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        src.push_str(&format!("module X\n  dims {}\n", dims_line.join(" ")));
        for ((_, _, l), a) in q.arrows.iter().zip(&mats) {
            src.push_str(&format!("  arrow {l}\n"));
            for i in 0..if a.cols() == 0 { 0 } else { a.rows() } {
                let row: Vec<String> = (0..a.cols()).map(|j| a.get(i, j).to_string()).collect();
                src.push_str(&format!("    {}\n", row.join(" ")));
            }
        }
        src.push_str("end\n");
        let doc = parse(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        let parsed = doc.module("X").unwrap();
        let direct = RightModule::from_representation(&doc.algebra, &dims, &mats).unwrap();
        prop_assert_eq!(parsed.actions(), direct.actions());
    }
}
