mod common;

use common::*;
use cotame::classify::{good_monomial_type, ngg_pattern};
use cotame::endo::{BoundPhi, Endo};
use cotame::poly::Poly;
use cotame::ring::{KSize, Ring};
use cotame::witness::{
    build_witness, delta_apply, delta_power, find_seed, verify_witness, DeltaSpec, SearchOptions,
    DEFAULT_MAX_DEGREE,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>()) {
        let r = Ring::fp(7).unwrap();
        let (phi, inv) = random_tame(&r, 3, 6, 2, 3, &mut rng(seed));
        prop_assert!(phi.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn composition_is_action(seed in any::<u64>()) {
        let r = Ring::rationals();
        let mut g = rng(seed);
        let (a, _) = random_tame(&r, 3, 4, 1, 2, &mut g);
        let (b, _) = random_tame(&r, 3, 4, 1, 2, &mut g);
        let f = random_poly(&r, 3, &[0, 1, 2], 2, 3, &mut g);
        prop_assert_eq!(a.compose(&b).unwrap().apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
    }

    #[test]
    fn polynomial_display_round_trips(seed in any::<u64>()) {
        for r in [Ring::rationals(), Ring::gf(3, 2).unwrap(), Ring::zmod(12).unwrap()] {
            let f = random_poly(&r, 3, &[0, 1, 2], 4, 4, &mut rng(seed));
            prop_assert_eq!(Poly::parse(&f.to_string(), &r, 3).unwrap(), f);
        }
    }

    #[test]
    fn delta_product_rule(seed in any::<u64>(), i in 0usize..3) {
        let r = Ring::fp(5).unwrap();
        let mut g = rng(seed);
        let f = random_poly(&r, 3, &[0, 1, 2], 3, 3, &mut g);
        let h = random_poly(&r, 3, &[0, 1, 2], 3, 3, &mut g);
        let a = nonzero_elem(&r, &mut g);
        // delta(fh) = delta(f) h + f delta(h) + delta(f) delta(h)
        let df = delta_apply(&f, i, &a);
        let dh = delta_apply(&h, i, &a);
        let lhs = delta_apply(&f.mul(&h), i, &a);
        prop_assert_eq!(lhs, df.mul(&h).add(&f.mul(&dh)).add(&df.mul(&dh)));
        prop_assert!(df.is_zero() || df.deg_var(i) < f.deg_var(i) || f.deg_var(i).finite() == Some(0));
    }

    #[test]
    fn delta_operators_commute(seed in any::<u64>()) {
        let r = Ring::fp(3).unwrap();
        let mut g = rng(seed);
        let f = random_poly(&r, 3, &[0, 1, 2], 4, 4, &mut g);
        let one = r.one();
        let ab = delta_apply(&delta_apply(&f, 1, &one), 2, &one);
        let ba = delta_apply(&delta_apply(&f, 2, &one), 1, &one);
        prop_assert_eq!(&ab, &ba);
        let spec = DeltaSpec::unit_shifts(&r, vec![0, 1, 1]).unwrap();
        prop_assert_eq!(delta_power(&f, &spec), ab);
    }

    #[test]
    fn delta_pth_power_vanishes_and_is_linear(seed in any::<u64>(), i in 0usize..3) {
        for p in [2u64, 3, 5] {
            let r = Ring::fp(p).unwrap();
            let mut g = rng(seed);
            let f = random_poly(&r, 3, &[0, 1, 2], 6, 4, &mut g);
            let a = nonzero_elem(&r, &mut g);
            let mut d = f.clone();
            for _ in 0..p {
                d = delta_apply(&d, i, &a);
            }
            prop_assert!(d.is_zero());
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let c = random_poly(&r, 3, &others, 3, 2, &mut g);
            prop_assert_eq!(delta_apply(&c.mul(&f), i, &a), c.mul(&delta_apply(&f, i, &a)));
        }
    }

    #[test]
    fn good_iff_outside_ngg_pattern(t in proptest::collection::vec(0u32..40, 3), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let pat = ngg_pattern(3, p).unwrap();
        prop_assert_eq!(good_monomial_type(&t, 3, p).unwrap().is_good(), !pat.contains_monomial(&t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compiled_words_are_sound(seed in any::<u64>()) {
        let r = Ring::fp(5).unwrap();
        let phi = Endo::elementary(&Poly::parse("x2*x3", &r, 3).unwrap()).unwrap();
        let cert = find_seed(&phi, &SearchOptions { k: Some(KSize::Finite(5)), budget: 64, seed: 0 })
            .unwrap()
            .unwrap();
        let bound = BoundPhi::structured(phi).unwrap();
        let f = random_poly(&r, 3, &[1, 2], 3, 3, &mut rng(seed));
        let w = build_witness(&cert, &f, DEFAULT_MAX_DEGREE).unwrap();
        prop_assert!(verify_witness(&bound, &w.word, &f).unwrap().ok);
    }
}
