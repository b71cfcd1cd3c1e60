use ggc_core::bracket::qcpb;
use ggc_core::scalar::rational;
use ggc_core::{CoefFn, ComplexRational, DiffOp, MultiIndex, Params, Sampler};
use ggc_oracle::{
    compare, conjugation_oracle, discretize, evolve, matrix_bracket, periodic_oscillator,
    BracketKind, EvolveConfig, GridSpec, Law, Scheme,
};
use num_complex::Complex64;

fn e(k: i64) -> CoefFn {
    CoefFn::exp_linear(vec![ComplexRational::imag(rational(k, 1))])
}

fn spectral(n: usize) -> GridSpec {
    GridSpec::new(n, Scheme::Spectral).unwrap()
}

/// A smooth periodic test state.
fn psi() -> CoefFn {
    let c = |a, b| ComplexRational::from_parts(a, b);
    &(&CoefFn::one(1) + &CoefFn::sin(1, 0, 1).unwrap().scale(&c((1, 2), (0, 1))))
        + &CoefFn::cos(1, 0, 3).unwrap().scale(&c((0, 1), (1, 3)))
}

fn worked_pair() -> (DiffOp, DiffOp) {
    let f = DiffOp::from_term(MultiIndex(vec![1]), e(1).scale(&-ComplexRational::i()));
    (f, DiffOp::mult(e(1)))
}

#[test]
fn worked_commutator_is_a_multiplication() {
    let g = spectral(256);
    let (f, gop) = worked_pair();
    let m = matrix_bracket(&CoefFn::zero(1), &f, &gop, &g, BracketKind::Qpb).unwrap();
    let r = compare(&DiffOp::mult(e(2)), &m, &psi()).unwrap();
    assert!(r.within(1e-8), "{r:?}");
}

#[test]
fn worked_covariant_bracket_for_cosine_structure() {
    let g = spectral(256);
    let (f, gop) = worked_pair();
    let s = CoefFn::cos(1, 0, 1).unwrap();
    let symbolic = qcpb(&s, &f, &gop).unwrap().total;
    let m = matrix_bracket(&s, &f, &gop, &g, BracketKind::Qcpb).unwrap();
    let r = compare(&symbolic, &m, &psi()).unwrap();
    assert!(r.within(1e-8), "{r:?}");
}

#[test]
fn random_periodic_brackets_commute_with_discretization() {
    let g = spectral(256);
    for trial in 0..6 {
        let mut rng = Sampler::new(100 + trial);
        let s = rng.periodic_real(2);
        let a = rng.periodic_diffop(2);
        let b = rng.periodic_diffop(2);
        let report = qcpb(&s, &a, &b).unwrap();
        let cases = [
            (BracketKind::Qpb, &report.qpb_part),
            (BracketKind::Geomutator, &report.geomutator_part),
            (BracketKind::Qcpb, &report.total),
        ];
        for (kind, symbolic) in cases {
            let m = matrix_bracket(&s, &a, &b, &g, kind).unwrap();
            let r = compare(symbolic, &m, &psi()).unwrap();
            assert!(r.within(1e-8), "trial {trial} {kind:?}: {r:?}");
        }
    }
}

#[test]
fn comparator_sees_itself_and_injected_faults() {
    let g = spectral(256);
    let (f, _) = worked_pair();
    let exact = discretize(&f, &g).unwrap();
    assert!(compare(&f, &exact, &psi()).unwrap().worst() <= 1e-12);
    // −i e^{ix} ∂ with 1e−3 added to its coefficient.
    let mut faulty = exact.clone();
    let bump = discretize(&DiffOp::partial(1, 0).unwrap(), &g)
        .unwrap()
        .matrix
        * Complex64::new(1e-3, 0.0);
    faulty.matrix += bump;
    let r = compare(&f, &faulty, &psi()).unwrap();
    assert!(r.action >= 1e-4 && r.spectral >= 1e-4, "{r:?}");
}

#[test]
fn central_scheme_with_polynomial_structure() {
    let g = GridSpec::new(256, Scheme::Central2).unwrap();
    let x = CoefFn::coord(1, 0).unwrap();
    let s = &x * &x;
    let d = DiffOp::partial(1, 0).unwrap();
    let symbolic = qcpb(&s, &d, &DiffOp::mult(x.clone())).unwrap().total;
    let m = matrix_bracket(&s, &d, &DiffOp::mult(x), &g, BracketKind::Qcpb).unwrap();
    let r = compare(&symbolic, &m, &psi()).unwrap();
    assert_eq!(r.rows, 192);
    assert!(r.action < 1e-2, "{r:?}");
}

fn heisenberg_error(n: usize, steps: usize) -> f64 {
    let g = spectral(n);
    let h = periodic_oscillator(Params::default());
    let f0 = DiffOp::mult(CoefFn::cos(1, 0, 1).unwrap());
    let cfg = EvolveConfig {
        stride: steps,
        ..EvolveConfig::new(1.0, steps, Law::GeneralizedHeisenberg)
    };
    let run = evolve(&CoefFn::zero(1), &h, &f0, &psi(), &g, &cfg).unwrap();
    let hm = discretize(&h.op, &g).unwrap().matrix;
    let exact = conjugation_oracle(&hm, &discretize(&f0, &g).unwrap().matrix, 1.0, 1.0);
    (&run.final_op.matrix - &exact).norm() / exact.norm()
}

#[test]
fn flat_generalized_law_matches_conjugation() {
    let err = heisenberg_error(64, 2000);
    assert!(err <= 1e-6, "{err}");
}

#[test]
fn runge_kutta_is_fourth_order() {
    let ratio = heisenberg_error(64, 250) / heisenberg_error(64, 500);
    assert!((12.0..=20.0).contains(&ratio), "{ratio}");
}

#[test]
fn hamiltonian_is_conserved_and_step_identity_holds() {
    let g = spectral(64);
    let h = periodic_oscillator(Params::default());
    let s = &CoefFn::cos(1, 0, 1).unwrap()
        + &CoefFn::sin(1, 0, 2).unwrap().scale(&rational(1, 3).into());
    let cfg = EvolveConfig {
        stride: 10,
        ..EvolveConfig::new(0.5, 200, Law::Covariant)
    };
    let run = evolve(&s, &h, &h.op, &psi(), &g, &cfg).unwrap();
    for sample in &run.samples {
        assert!(sample.rhs_norm <= 1e-12, "{sample:?}");
        assert!(sample.residual <= 1e-12, "{sample:?}");
    }

    let f0 = DiffOp::mult(CoefFn::cos(1, 0, 1).unwrap());
    let cfg = EvolveConfig {
        stride: 50,
        ..EvolveConfig::new(0.5, 200, Law::GeneralizedHeisenberg)
    };
    let run = evolve(&s, &h, &f0, &psi(), &g, &cfg).unwrap();
    assert!(run.samples.iter().all(|x| x.residual <= 1e-12));
    assert_eq!(run.samples.len(), 5);
}

#[test]
fn w_spectrum_is_available() {
    let g = spectral(32);
    let h = periodic_oscillator(Params::default());
    let s = CoefFn::cos(1, 0, 1).unwrap();
    let cfg = EvolveConfig::new(0.01, 1, Law::Covariant);
    let run = evolve(&s, &h, &h.op, &psi(), &g, &cfg).unwrap();
    let eig = run.w.eigenvalues().unwrap();
    assert_eq!(eig.len(), 32);
    let flat = evolve(&CoefFn::constant(1, 2.into()), &h, &h.op, &psi(), &g, &cfg).unwrap();
    assert_eq!(flat.w.matrix.camax(), 0.0);
}
