use ggc_core::{CoefFn, DiffOp, Sampler};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn coefficient_ring_axioms(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = Sampler::new(seed);
        let (f, g, h) = (rng.coef(dim), rng.coef(dim), rng.coef(dim));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &CoefFn::one(dim), f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn partials_are_derivations(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = Sampler::new(seed);
        let (f, g) = (rng.coef(dim), rng.coef(dim));
        for j in 0..dim {
            let lhs = (&f * &g).diff(j).unwrap();
            let rhs = &(&f.diff(j).unwrap() * &g) + &(&f * &g.diff(j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn partials_commute(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = Sampler::new(seed);
        let f = rng.coef(dim);
        for i in 0..dim {
            for j in 0..dim {
                let ij = f.diff(j).unwrap().diff(i).unwrap();
                let ji = f.diff(i).unwrap().diff(j).unwrap();
                prop_assert_eq!(ij, ji);
            }
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = Sampler::new(seed);
        let (a, b, c) = (rng.diffop(dim), rng.diffop(dim), rng.diffop(dim));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn composition_matches_application(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = Sampler::new(seed);
        let a = rng.diffop(dim);
        let b = rng.diffop(dim);
        let psi = rng.coef(dim);
        let lhs = a.compose(&b).unwrap().apply(&psi).unwrap();
        let rhs = a.apply(&b.apply(&psi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);

        let f = rng.coef(dim);
        let lhs = a.compose(&DiffOp::mult(f.clone())).unwrap().apply(&psi).unwrap();
        prop_assert_eq!(lhs, a.apply(&(&f * &psi)).unwrap());
    }

    #[test]
    fn commutator_is_bilinear_and_antisymmetric(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = Sampler::new(seed);
        let (a, b, c) = (rng.diffop(dim), rng.diffop(dim), rng.diffop(dim));
        let k = rng.complex();
        prop_assert_eq!(a.qpb(&b).unwrap(), -&b.qpb(&a).unwrap());
        prop_assert!(a.qpb(&a).unwrap().is_zero());
        prop_assert_eq!((&a + &c).qpb(&b).unwrap(), &a.qpb(&b).unwrap() + &c.qpb(&b).unwrap());
        prop_assert_eq!(a.qpb(&b.scale(&k)).unwrap(), a.qpb(&b).unwrap().scale(&k));
    }

    #[test]
    fn commutator_leibniz(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = Sampler::new(seed);
        let (a, b, c) = (rng.diffop(dim), rng.diffop(dim), rng.diffop(dim));
        let lhs = a.qpb(&(&b * &c)).unwrap();
        let rhs = &(&b * &a.qpb(&c).unwrap()) + &(&a.qpb(&b).unwrap() * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_jacobi(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = Sampler::new(seed);
        let (a, b, c) = (rng.diffop(dim), rng.diffop(dim), rng.diffop(dim));
        let sum = &(&a.qpb(&b).unwrap().qpb(&c).unwrap() + &b.qpb(&c).unwrap().qpb(&a).unwrap())
            + &c.qpb(&a).unwrap().qpb(&b).unwrap();
        prop_assert!(sum.is_zero());
    }
}

#[test]
fn canonical_pair_lowers_to_identity() {
    let x = DiffOp::position(1, 0).unwrap();
    let d = DiffOp::partial(1, 0).unwrap();
    assert_eq!(&(&d * &x) - &(&x * &d), DiffOp::identity(1));
}
