mod common;

use proptest::prelude::*;

use common::{matrix, random_analytic, random_poly};
use freelocus::eval::{det_along_line, evaluate, evaluate_mod, AffineLine, EvalMode, MatrixTuple};
use freelocus::freealg::Alphabet;
use freelocus::linalg::random::{random_scalar, seeded};
use freelocus::linalg::{PrimeField, DEFAULT_PRIME};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), g in 1u32..4, n in 1usize..4) {
        let mut rng = seeded(seed);
        let a = Alphabet::involutive(g);
        let f = random_poly(&mut rng, a, 2, 4, true);
        let h = random_poly(&mut rng, a, 2, 4, true);
        let x = MatrixTuple::random(&mut rng, g as usize, n, 4, true, EvalMode::Star);
        let d = |p: &freelocus::freealg::FreePoly| evaluate(&matrix(p), &x).unwrap().det();
        let fh = &f * &h;
        prop_assert_eq!(d(&fh), &d(&f) * &d(&h));
    }

    #[test]
    fn determinant_of_direct_sum(seed in any::<u64>(), g in 1u32..4, n in 1usize..3, m in 1usize..3) {
        let mut rng = seeded(seed);
        let f = matrix(&random_poly(&mut rng, Alphabet::involutive(g), 3, 4, true));
        let x = MatrixTuple::random(&mut rng, g as usize, n, 4, true, EvalMode::Star);
        let y = MatrixTuple::random(&mut rng, g as usize, m, 4, true, EvalMode::Star);
        let lhs = evaluate(&f, &x.direct_sum(&y)).unwrap().det();
        prop_assert_eq!(lhs, &evaluate(&f, &x).unwrap().det() * &evaluate(&f, &y).unwrap().det());
    }

    #[test]
    fn line_polynomial_matches_points(seed in any::<u64>(), g in 1u32..4, n in 1usize..3) {
        let mut rng = seeded(seed);
        let f = matrix(&random_poly(&mut rng, Alphabet::involutive(g), 3, 4, true));
        let line = AffineLine::random(&mut rng, g as usize, n, 4, true, EvalMode::Star);
        let p = det_along_line(&f, &line).unwrap();
        let t = random_scalar(&mut rng, 9, true);
        prop_assert_eq!(p.eval(&t), evaluate(&f, &line.at(&t)).unwrap().det());
    }

    #[test]
    fn modular_evaluation_agrees(seed in any::<u64>(), g in 1u32..4, n in 1usize..4) {
        let mut rng = seeded(seed);
        let f = matrix(&random_poly(&mut rng, Alphabet::analytic(g), 3, 5, false));
        let x = MatrixTuple::random(&mut rng, g as usize, n, 9, false, EvalMode::Star);
        let field = PrimeField::new(DEFAULT_PRIME).unwrap();
        let exact = field.reduce_matrix(&evaluate(&f, &x).unwrap()).unwrap();
        let modular = evaluate_mod(&f, &x, &field).unwrap().unwrap();
        prop_assert_eq!(exact.det(), modular.det());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(exact.get(i, j), modular.get(i, j));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn line_degrees_are_superadditive(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = matrix(&random_analytic(&mut rng, g, 2, 3));
        let mut degree_at = |n: usize| {
            (0..4)
                .map(|_| {
                    let line = AffineLine::random(&mut rng, g as usize, n, 5, false, EvalMode::Star);
                    det_along_line(&f, &line).unwrap().degree().unwrap_or(0)
                })
                .max()
                .unwrap()
        };
        let (d1, d2, d3) = (degree_at(1), degree_at(2), degree_at(3));
        prop_assert!(d1 + d1 <= d2);
        prop_assert!(d1 + d2 <= d3);
    }
}
