mod common;

use affine_atlas::{evaluate_word, fixed_points, FixedPointSet, GroupPresentation, Letter, Word};
use common::*;
use proptest::prelude::*;

fn triple() -> impl Strategy<
    Value = (
        affine_atlas::AffineMap,
        affine_atlas::AffineMap,
        affine_atlas::AffineMap,
    ),
> {
    dims().prop_flat_map(|n| (affine(n), affine(n), affine(n)))
}

fn letters(generators: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (
            0..generators,
            prop::sample::select(vec![-2i32, -1, 1, 2, 3]),
        ),
        0..6,
    )
    .prop_map(|ls| {
        Word::new(
            ls.into_iter()
                .map(|(g, e)| Letter::new(g, e).unwrap())
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative((f, g, h) in triple()) {
        let left = f.compose(&g.compose(&h).unwrap()).unwrap();
        let right = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert!(close(&left, &right, 1e-9));
    }

    #[test]
    fn inverse_is_two_sided((f, _, _) in triple()) {
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity(1e-9));
        prop_assert!(inv.compose(&f).unwrap().is_identity(1e-9));
    }

    #[test]
    fn apply_respects_composition((f, g, p) in dims().prop_flat_map(|n| (affine(n), affine(n), vectors(n, 5.0)))) {
        let lhs = f.compose(&g).unwrap().apply(&p).unwrap();
        let rhs = f.apply(&g.apply(&p).unwrap()).unwrap();
        prop_assert!((&lhs - &rhs).amax() <= 1e-9 * rhs.amax().max(1.0));
    }

    #[test]
    fn words_evaluate_homomorphically(
        (f, g, h) in triple(),
        w1 in letters(3),
        w2 in letters(3),
    ) {
        let n = f.dim();
        let group = GroupPresentation::from_maps(n, [("f", f), ("g", g), ("h", h)]).unwrap();
        let whole = evaluate_word(&group, &w1.concat(&w2)).unwrap();
        let split = evaluate_word(&group, &w1).unwrap().compose(&evaluate_word(&group, &w2).unwrap()).unwrap();
        prop_assert!(close(&whole, &split, 1e-9), "{} vs {}", whole, split);
    }

    #[test]
    fn fixed_points_replay((f, _, _) in triple()) {
        match fixed_points(&f) {
            FixedPointSet::Unique { point } => {
                let point = v(&point);
                let q = f.apply(&point).unwrap();
                prop_assert!((&q - &point).amax() <= 1e-9 * point.amax().max(1.0));
            }
            FixedPointSet::Flat { point, directions } => {
                let point = v(&point);
                let q = f.apply(&point).unwrap();
                prop_assert!((&q - &point).amax() <= 1e-9 * point.amax().max(1.0));
                for u in directions {
                    let u = v(&u);
                    prop_assert!((f.linear() * &u - &u).amax() <= 1e-9);
                }
            }
            FixedPointSet::Empty => {}
        }
    }

    #[test]
    fn planted_fixed_flats_are_found(
        (f, p) in (2usize..5).prop_flat_map(|n| (affine(n), vectors(n, 3.0))),
    ) {
        // Conjugating a map fixing the first axis pointwise by f plants a fixed line through f(p).
        let n = f.dim();
        let mut diag = vec![1.0];
        diag.extend((1..n).map(|i| 2.0 + i as f64));
        let base = affine_atlas::AffineMap::linear_map(affine_atlas::Matrix::from_diagonal(&v(&diag))).unwrap();
        let shift = affine_atlas::AffineMap::translation_by(p.clone());
        let planted = base.conjugate_by(&f.compose(&shift).unwrap()).unwrap();
        match fixed_points(&planted) {
            FixedPointSet::Flat { point, directions } => {
                let point = v(&point);
                prop_assert_eq!(directions.len(), 1);
                let q = planted.apply(&point).unwrap();
                prop_assert!((&q - &point).amax() <= 1e-8 * point.amax().max(1.0));
            }
            other => prop_assert!(false, "expected a fixed line, got {:?}", other),
        }
    }
}
