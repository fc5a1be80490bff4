mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{random_analytic, random_poly};
use freelocus::freealg::{Alphabet, FreePoly};
use freelocus::linalg::random::{random_hermitian, random_scalar, seeded, SeededRng};
use freelocus::linalg::Scalar;
use freelocus::slack::{
    generator, is_member, is_normal, psatz_spot_check, reduce, reduce_randomized, sample_hard_zero_consistency,
    verify_psatz, Membership, PsatzCertificate,
};
use freelocus::Budget;

/// `Σ a_i (f − y*y) b_i` with random `a_i, b_i` over the slack alphabet.
fn ideal_element(rng: &mut SeededRng, f: &FreePoly, g: u32) -> FreePoly {
    let gen = generator(f);
    let mut h = FreePoly::zero(Alphabet::slack(g));
    for _ in 0..rng.gen_range(1..4) {
        let a = random_poly(rng, Alphabet::slack(g), 2, 3, true);
        let b = random_poly(rng, Alphabet::slack(g), 2, 3, true);
        h = &h + &(&(&a * &gen) * &b);
    }
    h
}

/// `α + Σ (c_j x_j + c̄_j x_j*) + Σ H_jk x_j* x_k` with `α > 0` and `H` hermitian.
fn hereditary_quadratic(rng: &mut SeededRng, g: u32) -> FreePoly {
    let a = Alphabet::involutive(g);
    let mut f = FreePoly::constant(Scalar::from_int(rng.gen_range(1..6)), a);
    let h = random_hermitian(rng, g as usize, 3);
    for j in 0..g {
        let c = random_scalar(rng, 3, true);
        f = &f + &(&FreePoly::x(j).scale(&c) + &FreePoly::x_star(j).scale(&c.conj()));
        for k in 0..g {
            f = &f + &(&FreePoly::x_star(j) * &FreePoly::x(k)).scale(&h[(j as usize, k as usize)]);
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ideal_elements_are_members(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = random_poly(&mut rng, Alphabet::involutive(g), 2, 3, true);
        prop_assume!(!f.is_constant());
        let h = ideal_element(&mut rng, &f, g);
        prop_assert_eq!(is_member(&h, &f).unwrap(), Membership::Yes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_is_confluent(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = random_poly(&mut rng, Alphabet::involutive(g), 2, 3, true);
        prop_assume!(!f.is_constant());
        let ysy = &FreePoly::y_star() * &FreePoly::y();
        let h = &random_poly(&mut rng, Alphabet::slack(g), 5, 6, true) + &(&(&ysy * &ysy) * &random_poly(&mut rng, Alphabet::slack(g), 2, 2, false));
        let nf = reduce(&h, &f).unwrap();
        prop_assert!(is_normal(&nf));
        for k in 0..10 {
            prop_assert_eq!(&reduce_randomized(&h, &f, seed ^ k).unwrap(), &nf);
        }
    }

    #[test]
    fn normal_forms_with_constants_are_not_members(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = random_poly(&mut rng, Alphabet::involutive(g), 2, 3, true);
        prop_assume!(!f.is_constant());
        let nf = reduce(&random_poly(&mut rng, Alphabet::slack(g), 4, 5, true), &f).unwrap();
        let c = nf.constant_term();
        let h = &nf + &FreePoly::constant(&Scalar::one() - &c, nf.alphabet());
        prop_assert!(is_normal(&h));
        prop_assert!(!is_member(&h, &f).unwrap().is_yes());
    }

    #[test]
    fn members_vanish_at_hard_zeros(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = random_analytic(&mut rng, g, 2, 3);
        let h = ideal_element(&mut rng, &f, g);
        let r = sample_hard_zero_consistency(&f, &h, 2, 3, seed).unwrap();
        prop_assert!(r.all_zero(), "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn accepted_certificates_are_positive(seed in any::<u64>(), g in 1u32..3) {
        let mut rng = seeded(seed);
        let f = hereditary_quadratic(&mut rng, g);
        let gen = generator(&f);
        let a = random_poly(&mut rng, Alphabet::slack(g), 1, 2, true);
        let b = random_poly(&mut rng, Alphabet::slack(g), 1, 2, true);
        let f0 = &(&(&a * &gen) * &b) + &gen;
        let fj: Vec<FreePoly> = (0..rng.gen_range(0..3)).map(|_| random_poly(&mut rng, Alphabet::slack(g), 2, 3, true)).collect();
        let cert = PsatzCertificate { fj };
        let h = cert.fj.iter().fold(f0, |acc, p| &acc + &(&p.adjoint() * p));
        let budget = Budget { n_max: 2, trials: 20, bound: 4, ..Budget::with_seed(seed) };
        prop_assert!(verify_psatz(&h, &f, &cert, &budget).unwrap().is_accept());
        let spot = psatz_spot_check(&h, &f, 50, &budget).unwrap();
        prop_assert_eq!(spot.points, 50);
        prop_assert!(spot.min_eigenvalue >= -1e-8, "{:?}", spot);
    }
}
