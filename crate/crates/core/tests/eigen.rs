mod common;

use common::*;
use gaudin_core::bethe::eigen_functions;
use gaudin_core::diffop::ScalarDiffOp;
use gaudin_core::eigen::*;
use gaudin_core::operators::ProjectorKind::*;
use gaudin_core::{
    bae_solve, build_operator, int, rat, verify_eigen, verify_eigen_float, Error, Family, HpFloat, LieAlgebraSpec,
    OperatorKind, RationalFunction, Solution, VerifyOptions, ZSeriesOp,
};
use itertools::Itertools;
use proptest::prelude::*;

type Op = ScalarDiffOp<RationalFunction>;

/// Distinct, noncommuting-with-∂ sample functions `c_k/(u − p_k) + k`.
fn sample_fs(n: usize, seed: i64) -> Vec<RationalFunction> {
    (0..n)
        .map(|k| {
            let k = k as i64;
            &RationalFunction::simple_pole(&rat(2 * k + seed, 3)).scale(&int(k + 1)) + &RationalFunction::constant(int(k - seed))
        })
        .collect()
}

fn x(f: &RationalFunction, sign: i64) -> Op {
    ScalarDiffOp::first_order(f.scale(&int(sign)))
}

fn d() -> Op {
    ScalarDiffOp::d()
}

fn prod(factors: &[&Op]) -> Op {
    factors.iter().fold(ScalarDiffOp::one(), |acc, f| &acc * *f)
}

/// Sum over index tuples obeying `admissible`, products in tuple order.
fn brute_ncsf(factors: &[Op], m: usize, admissible: impl Fn(usize, usize) -> bool) -> Op {
    if m == 0 {
        return ScalarDiffOp::one();
    }
    let mut total = ScalarDiffOp::zero();
    for t in (0..m).map(|_| 0..factors.len()).multi_cartesian_product() {
        if t.windows(2).all(|w| admissible(w[0], w[1])) {
            let p: Vec<&Op> = t.iter().map(|&i| &factors[i]).collect();
            total = &total + &prod(&p);
        }
    }
    total
}

#[test]
fn ncsf_matches_enumeration() {
    for p in 1..=4 {
        let factors: Vec<Op> = sample_fs(p, 1).iter().map(|f| x(f, 1)).collect();
        for m in 0..=3 {
            let h = ncsf(NcsfKind::Complete, m, &factors).unwrap();
            assert_eq!(h, brute_ncsf(&factors, m, |a, b| a <= b), "h p={p} m={m}");
            if m <= p {
                let e = ncsf(NcsfKind::Elementary, m, &factors).unwrap();
                assert_eq!(e, brute_ncsf(&factors, m, |a, b| a > b), "e p={p} m={m}");
            } else {
                assert!(matches!(ncsf(NcsfKind::Elementary, m, &factors), Err(Error::OutOfRange { .. })));
            }
        }
    }
}

#[test]
fn ncsf_examples() {
    let fs = sample_fs(3, 2);
    let (x1, x2, x3) = (x(&fs[0], 1), x(&fs[1], 1), x(&fs[2], 1));
    let two = [x1.clone(), x2.clone()];
    let h2 = &(&prod(&[&x1, &x1]) + &prod(&[&x1, &x2])) + &prod(&[&x2, &x2]);
    assert_eq!(ncsf(NcsfKind::Complete, 2, &two).unwrap(), h2);
    assert_eq!(ncsf(NcsfKind::Elementary, 2, &two).unwrap(), prod(&[&x2, &x1]));
    let three = [x1.clone(), x2.clone(), x3.clone()];
    assert_eq!(ncsf(NcsfKind::Elementary, 3, &three).unwrap(), prod(&[&x3, &x2, &x1]));
    assert_eq!(ncsf(NcsfKind::Elementary, 3, &three).unwrap(), eig_rdet_from(&fs));
}

#[test]
fn type_a_eigenvalues() {
    let fs = sample_fs(2, 3);
    assert_eq!(eig_rdet_from(&fs[..1]), x(&fs[0], 1));
    let (e1, e2) = (&fs[0], &fs[1]);
    let expect = ScalarDiffOp::from_coeffs([(2, RationalFunction::constant(int(1))), (1, e1 + e2), (0, &e1.derivative() + &(e2 * e1))]);
    assert_eq!(eig_rdet_from(&fs), expect);

    let m1 = &d().scale_rat(&int(2)) + &ScalarDiffOp::function(e1 + e2);
    for kind in [Antisymmetrizer, Symmetrizer] {
        assert_eq!(eig_projector_from(&fs, 1, kind).unwrap(), m1);
    }
    assert_eq!(eig_projector_from(&fs, 2, Antisymmetrizer).unwrap(), prod(&[&x(e2, 1), &x(e1, 1)]));
    assert_eq!(eig_projector_from(&fs, 2, Antisymmetrizer).unwrap(), eig_rdet_from(&fs));
    let (a, b) = (x(e1, 1), x(e2, 1));
    let h2 = &(&prod(&[&a, &a]) + &prod(&[&a, &b])) + &prod(&[&b, &b]);
    assert_eq!(eig_projector_from(&fs, 2, Symmetrizer).unwrap(), h2);

    assert_eq!(eig_trace_series_from(&fs, 0), ScalarDiffOp::function(RationalFunction::constant(int(2))));
    assert_eq!(eig_trace_series_from(&fs, 1), m1);
    assert_eq!(eig_trace_series_from(&fs[..1], 2), prod(&[&a, &a]));
    // z² coefficient: X1² + (X1² + X1X2 + X2²) − (X1 + X2)X1
    let k2 = &(&(&prod(&[&a, &a]) + &prod(&[&a, &b])) + &prod(&[&b, &b])) - &prod(&[&b, &a]);
    assert_eq!(eig_trace_series_from(&fs, 2), k2);
}

#[test]
fn cdet_eigenvalue() {
    let fs = sample_fs(3, 1);
    assert_eq!(eig_cdet_from(&fs), prod(&[&x(&fs[0], -1), &x(&fs[1], -1), &x(&fs[2], -1)]));
}

#[test]
fn orthogonal_and_symplectic_eigenvalues() {
    let f1 = sample_fs(1, 4);
    let (p, m) = (x(&f1[0], 1), x(&f1[0], -1));
    assert_eq!(eig_bd_from(Family::B, &f1, 1).unwrap(), d().scale_rat(&int(2)));
    let h2 = &(&prod(&[&p, &p]) + &prod(&[&p, &m])) + &prod(&[&m, &m]);
    assert_eq!(eig_bd_from(Family::B, &f1, 2).unwrap(), h2);

    let f2 = sample_fs(2, 5);
    let first = [x(&f2[0], 1), x(&f2[1], -1), x(&f2[0], -1)];
    let second = [x(&f2[0], 1), x(&f2[1], 1), x(&f2[0], -1)];
    let half = rat(1, 2);
    let expect = &brute_ncsf(&first, 2, |a, b| a <= b).scale_rat(&half) + &brute_ncsf(&second, 2, |a, b| a <= b).scale_rat(&half);
    assert_eq!(eig_bd_from(Family::D, &f2, 2).unwrap(), expect);
    // γ_1 normalization: the first D eigenvalue is (2n − 1)∂
    assert_eq!(eig_bd_from(Family::D, &f2, 1).unwrap(), d().scale_rat(&int(3)));

    assert_eq!(eig_c_from(&f1, 1).unwrap(), d().scale_rat(&int(3)));
    assert_eq!(eig_c_from(&f1, 3).unwrap(), prod(&[&m, &d(), &p]));
    assert!(matches!(eig_c_from(&f1, 4), Err(Error::OutOfRange { .. })));
    assert!(matches!(eig_c_from(&f1, 0), Err(Error::OutOfRange { .. })));
    let slots = [x(&f2[0], 1), x(&f2[1], 1), d(), x(&f2[1], -1), x(&f2[0], -1)];
    let mut ten = ScalarDiffOp::zero();
    let mut count = 0;
    for (i, j) in (0..5).tuple_combinations() {
        ten = &ten + &prod(&[&slots[j], &slots[i]]);
        count += 1;
    }
    assert_eq!(count, 10);
    assert_eq!(eig_c_from(&f2, 2).unwrap(), ten);
    assert!(matches!(eig_bd_from(Family::C, &f2, 1), Err(Error::WrongFamily { .. })));
}

#[test]
fn pfaffian_eigenvalues() {
    let f = sample_fs(2, 6);
    assert_eq!(eig_pfaffian_from(&f[..1]), f[0]);
    assert_eq!(eig_pfaffian_from(&f), &(&f[0] * &f[1]) - &f[1].derivative());
    let zero = instance(LieAlgebraSpec::o(4).unwrap(), &[&[0, 0]], &[int(0)], &[0, 0]);
    assert_eq!(eig_pfaffian(&config(&zero, &[], &[])).unwrap(), RationalFunction::constant(int(0)));
}

#[test]
fn generating_function_examples() {
    let f = sample_fs(1, 7);
    let g0 = eig_genfun_from(Family::B, &f, 0).unwrap();
    assert_eq!(g0.coeffs, vec![ScalarDiffOp::one()]);
    let g1 = eig_genfun_from(Family::B, &f, 1).unwrap();
    assert_eq!(g1.coeffs[1], d().scale_rat(&int(2)));
    assert_eq!(ZSeriesOp::geometric(&-&d(), 1).coeffs[1], -&d());
    let f2 = sample_fs(2, 1);
    assert_eq!(eig_genfun_from(Family::D, &f2, 1).unwrap().coeffs[1], d().scale_rat(&int(3)));
}

#[test]
fn generating_function_inverts_the_traces() {
    for (family, n) in [(Family::B, 1), (Family::B, 2), (Family::D, 2), (Family::D, 3)] {
        let f = sample_fs(n, 2);
        assert_eq!(eig_genfun_from(family, &f, 3).unwrap(), inverted_trace_series(family, &f, 3).unwrap(), "{family} n={n}");
    }
    for (spec, w) in [
        (LieAlgebraSpec::o(3).unwrap(), vec![1i64]),
        (LieAlgebraSpec::o(5).unwrap(), vec![1, 0]),
        (LieAlgebraSpec::o(4).unwrap(), vec![1, 0]),
    ] {
        let family = spec.family();
        let inst = instance(spec, &[&w, &w], &[int(0), int(1)], &vec![0; w.len()]);
        let fs = eigen_functions(&config(&inst, &[rat(1, 2)], &[0]));
        assert_eq!(eig_genfun_from(family, &fs, 3).unwrap(), inverted_trace_series(family, &fs, 3).unwrap(), "{family}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_inverse_roundtrip(seed in 1i64..50, order in 1usize..5) {
        let f = sample_fs(2, seed);
        let s = ZSeriesOp::linear(x(&f[0], 1), order).mul(&ZSeriesOp::geometric(&x(&f[1], -1), order));
        prop_assert_eq!(s.mul(&s.inverse().unwrap()), ZSeriesOp::one(order));
        prop_assert_eq!(s.inverse().unwrap().mul(&s), ZSeriesOp::one(order));
    }
}

#[test]
fn empty_configuration_is_an_eigenvector() {
    let inst = flagship();
    let cfg = config(&inst, &[], &[]);
    for kind in [OperatorKind::Rdet, OperatorKind::Projector(Symmetrizer, 2), OperatorKind::TracePower(2)] {
        let op = build_operator(&inst, kind).unwrap();
        assert!(verify_eigen(&op, &cfg, &eigenvalue(&cfg, kind).unwrap()).unwrap().pass);
    }
}

#[test]
fn perturbed_root_is_rejected() {
    let inst = flagship();
    let cfg = config(&inst, &[rat(1, 3)], &[0]);
    let op = build_operator(&inst, OperatorKind::Rdet).unwrap();
    let oracle = eigenvalue(&cfg, OperatorKind::Rdet).unwrap();
    match verify_eigen(&op, &cfg, &oracle) {
        Err(Error::BaeViolated { residuals }) => assert_eq!(residuals, vec!["3/2".to_string()]),
        other => panic!("{other:?}"),
    }
    let opts = VerifyOptions { require_bae: false, ..Default::default() };
    let rep = verify_eigen_with(&op, &cfg, &oracle, opts).unwrap();
    assert!(!rep.pass);
    assert!(rep.slices.iter().any(|s| !s.pass && s.residual_terms > 0 && s.max_deviation > 0.0));
}

#[test]
fn wrong_oracle_is_rejected() {
    let inst = flagship();
    let cfg = config(&inst, &[rat(1, 2)], &[0]);
    let op = build_operator(&inst, OperatorKind::Rdet).unwrap();
    let wrong = eigenvalue(&cfg, OperatorKind::Cdet).unwrap();
    assert!(!verify_eigen(&op, &cfg, &wrong).unwrap().pass);
}

#[test]
fn master_function_guards() {
    let twisted = instance(LieAlgebraSpec::gl(2).unwrap(), &[&[1, 0]], &[int(0)], &[1, 0]);
    assert!(matches!(masterfn_crosscheck(&config(&twisted, &[], &[])), Err(Error::Unsupported(_))));
    let spec = std::sync::Arc::new(LieAlgebraSpec::gl(2).unwrap());
    let half = gaudin_core::WeightVector(vec![rat(1, 2), int(0)]);
    let inst = std::sync::Arc::new(
        gaudin_core::GaudinInstance::new(spec, vec![half], vec![int(0)], gaudin_core::WeightVector::zero(2)).unwrap(),
    );
    assert!(matches!(masterfn_crosscheck(&config(&inst, &[], &[])), Err(Error::NonIntegerWeights)));
    let d = instance(LieAlgebraSpec::o(4).unwrap(), &[&[1, 0]], &[int(0)], &[0, 0]);
    assert!(matches!(masterfn_crosscheck(&config(&d, &[], &[])), Err(Error::Unsupported(_))));
    // no roots: Π(∂ + ln′T_a)
    let a = instance(LieAlgebraSpec::gl(3).unwrap(), &[&[2, 1, 0], &[1, 1, 1]], &[int(0), int(2)], &[0, 0, 0]);
    assert!(masterfn_crosscheck(&config(&a, &[], &[])).unwrap());
}

#[test]
fn float_verification_gl3() {
    let inst = instance(LieAlgebraSpec::gl(3).unwrap(), &[&[1, 0, 0], &[1, 0, 0]], &[int(0), int(1)], &[1, 0, -1]);
    let sol = bae_solve(inst.clone(), &[0, 1], &[HpFloat::from_f64(0.29), HpFloat::from_f64(1.29)]).unwrap();
    let Solution::Float { config: cfg, .. } = sol else { panic!("expected float solution") };
    for kind in [
        OperatorKind::Rdet,
        OperatorKind::Cdet,
        OperatorKind::Projector(Antisymmetrizer, 2),
        OperatorKind::Projector(Symmetrizer, 2),
        OperatorKind::TracePower(2),
    ] {
        let op = build_operator(&inst, kind).unwrap();
        let rep = verify_eigen_float(&op, &cfg, kind, VerifyOptions::default()).unwrap();
        assert!(rep.pass && rep.max_deviation() < FLOAT_SLICE_TOLERANCE, "{kind:?}: {rep:?}");
        assert!(rep.samples > 0);
    }
    // the wrong eigenvalue family fails in float mode too
    let op = build_operator(&inst, OperatorKind::Rdet).unwrap();
    let rep = verify_eigen_float(&op, &cfg, OperatorKind::Cdet, VerifyOptions::default()).unwrap();
    assert!(!rep.pass);
}
