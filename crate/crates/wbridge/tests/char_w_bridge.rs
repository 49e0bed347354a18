use gaudin_core::{int, rat, Family, OperatorKind, ProjectorKind, Rat};
use gaudin_wbridge::characters::curated;
use gaudin_wbridge::w::expand_truncated;
use gaudin_wbridge::*;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(ty: CartanType) -> CharacterRing {
    CharacterRing::new(ty).unwrap()
}

fn all_types() -> Vec<CartanType> {
    vec![
        CartanType::gl(2).unwrap(),
        CartanType::gl(3).unwrap(),
        CartanType::gl(4).unwrap(),
        CartanType::b(1).unwrap(),
        CartanType::b(2).unwrap(),
        CartanType::c(1).unwrap(),
        CartanType::c(2).unwrap(),
        CartanType::d(2).unwrap(),
        CartanType::d(3).unwrap(),
    ]
}

fn random_shift(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-12..12), rng.gen_range(1..5))
}

#[test]
fn relation_forced_kernels() {
    for n in 2..=4 {
        let r = ring(CartanType::gl(n).unwrap());
        for i in 0..n - 1 {
            let a = rat(3, 7);
            let x = &r.lambda(i, a.clone()).unwrap() + &r.lambda(i + 1, a.clone()).unwrap();
            assert!(r.screening_s(i, &x).unwrap().is_zero());
            for j in (0..n).filter(|&j| j != i && j != i + 1) {
                assert!(r.screening_s(i, &r.lambda(j, a.clone()).unwrap()).unwrap().is_zero());
            }
        }
    }
    for n in 1..=3 {
        let r = ring(CartanType::c(n).unwrap());
        let a = rat(-5, 2);
        // λ_n + λ_{n′}, raw and eliminated
        let raw = &r.raw_lambda(n - 1, a.clone()).unwrap() + &r.raw_lambda(n, a.clone()).unwrap();
        assert!(r.screening_s(n - 1, &raw).unwrap().is_zero());
        assert!(r.screening_s(n - 1, &r.eliminate(&raw)).unwrap().is_zero());
    }
}

#[test]
fn character_examples() {
    for n in 1..=4 {
        let r = ring(CartanType::gl(n).unwrap());
        assert!(r.is_character(&r.lambda_sum(&rat(1, 3))).unwrap());
        assert!(r.is_character(&LambdaElement::one()).unwrap());
        if n >= 2 {
            assert!(!r.is_character(&r.lambda(0, int(0)).unwrap()).unwrap());
        }
    }
    for ty in all_types() {
        let r = ring(ty);
        assert!(r.is_character(&r.lambda_sum(&rat(-2, 3))).unwrap(), "{ty}");
        assert!(!r.is_character(&r.lambda(0, int(0)).unwrap()).unwrap(), "{ty}");
    }
}

/// `S_1(λ_1(5/2))` for gl_2, reduced by hand to the representative `σ_1(1/2)`.
#[test]
fn sigma_reduction_by_hand() {
    let r = ring(CartanType::gl(2).unwrap());
    let l = |j: usize, a: Rat| r.lambda(j, a).unwrap();
    let got = r.screening_s(0, &l(0, rat(5, 2))).unwrap();
    let ratio = &(&l(0, rat(1, 2)) * &l(0, rat(3, 2))) * &(&l(1, rat(1, 2)) * &l(1, rat(3, 2))).pow(-1).unwrap();
    let expect = &l(0, rat(5, 2)) * &ratio;
    assert_eq!(got.terms().len(), 1);
    assert_eq!(got.terms().get(&(0, rat(1, 2))), Some(&expect));
    // λ_2(−1) ↦ −λ_2(−1) σ_1(0)
    let got = r.screening_s(0, &l(1, int(-1))).unwrap();
    assert_eq!(got.terms().get(&(0, int(0))), Some(&-&l(1, int(-1))));
}

/// Closed forms for `λ_{n+1}`, written out from the displayed products.
#[test]
fn middle_symbol_closed_forms() {
    let a = rat(1, 5);
    for n in 1..=3usize {
        let cases = [
            (CartanType::b(n).unwrap(), 0i64, rat(1, 2)),
            (CartanType::c(n).unwrap(), 1, rat(1, 1)),
            (CartanType::d(n.max(2)).unwrap(), -1, rat(1, 1)),
        ];
        for (ty, num_off, den_gap) in cases {
            let nn = ty.n;
            let r = ring(ty);
            let l = |j: usize, s: Rat| r.lambda(j, s).unwrap();
            // λ_{n+1}(a) = Π_i λ_i(a+n−i+off) / λ_i(a+n−i+off+gap), numerator i ≤ n (B) or i ≤ n−1
            let top = if ty.family == Family::B { nn } else { nn - 1 };
            let mut expect = LambdaElement::one();
            for i in 1..=top {
                expect = &expect * &l(i - 1, &a + int(nn as i64 - i as i64 + num_off));
            }
            for i in 1..=nn {
                let s = &a + int(nn as i64 - i as i64 + num_off) + &den_gap;
                expect = &expect * &l(i - 1, s).pow(-1).unwrap();
            }
            assert_eq!(r.lambda(nn, a.clone()).unwrap(), expect, "{ty}");
        }
    }
}

#[test]
fn screenings_respect_the_defining_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c2e);
    for ty in all_types().into_iter().filter(|t| t.family != Family::A) {
        let r = ring(ty);
        let top = if ty.family == Family::B { ty.n } else { ty.n - 1 };
        for _ in 0..4 {
            let a = random_shift(&mut rng);
            for i in 0..=top {
                let (lhs, rhs) = r.defining_relation(i, &a).unwrap();
                assert_eq!(r.eliminate(&lhs), r.eliminate(&rhs), "{ty} relation {i}");
                for color in 0..ty.screens() {
                    let sl = r.screening_s(color, &lhs).unwrap();
                    let sr = r.screening_s(color, &rhs).unwrap();
                    assert_eq!(sl, sr, "{ty} relation {i} color {color} a={a}");
                }
            }
        }
    }
}

/// Applying `S_i` before or after elimination gives the same result.
#[test]
fn raw_and_canonical_screenings_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ty in all_types() {
        let r = ring(ty);
        for _ in 0..6 {
            let mut x = LambdaElement::zero();
            for _ in 0..3 {
                let mut t = LambdaElement::constant(int(rng.gen_range(-3..4)));
                for _ in 0..2 {
                    let j = rng.gen_range(0..ty.big_n());
                    let e = if rng.gen_bool(0.3) { -1 } else { 1 };
                    t = &t * &r.raw_lambda(j, random_shift(&mut rng)).unwrap().pow(e).unwrap();
                }
                x = &x + &t;
            }
            for color in 0..ty.screens() {
                assert_eq!(r.screening_s(color, &x).unwrap(), r.screening_s(color, &r.eliminate(&x)).unwrap(), "{ty}");
            }
        }
    }
}

#[test]
fn gr_examples() {
    let r = ring(CartanType::gl(2).unwrap());
    let l = |j: usize, a: Rat| r.lambda(j, a).unwrap();
    assert_eq!(gr_map(&r, &l(0, rat(3, 2))).unwrap(), WPolynomial::one());
    assert_eq!(gr_map(&r, &(&l(0, rat(3, 2)) - &l(1, rat(3, 2)))).unwrap(), &mu(0, 0) - &mu(1, 0));
    let one = LambdaElement::one();
    let prod = &(&l(0, int(2)) - &one) * &(&l(1, int(-1)) - &one);
    assert_eq!(gr_map(&r, &prod).unwrap(), &mu(0, 0) * &mu(1, 0));
    assert_eq!(gr_map(&r, &(&l(0, int(0)).pow(-1).unwrap() - &one)).unwrap(), -&mu(0, 0));
    // λ(a) − λ(b): weight 2, (a − b) μ^(1)
    assert_eq!(gr_map(&r, &(&l(0, int(3)) - &l(0, int(1)))).unwrap(), mu(0, 1).scale(&int(2)));
    assert!(gr_map(&r, &LambdaElement::zero()).unwrap().is_zero());
}

#[test]
fn gr_gives_up_past_the_cap() {
    let r = ring(CartanType::gl(2).unwrap());
    // a 17th finite difference kills every component of weight ≤ 16
    let mut x = LambdaElement::zero();
    let mut c = Rat::one();
    for k in 0..=17i64 {
        x = &x + &r.lambda(0, int(k)).unwrap().scale(&c);
        c = -c * int(17 - k) / int(k + 1);
    }
    assert!(matches!(gr_map(&r, &x), Err(WError::NotSaturated { cap: GR_CAP })));
}

#[test]
fn gr_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a);
    let types = all_types();
    for k in 0..50 {
        let ty = types[k % types.len()];
        let r = ring(ty);
        let pick = |rng: &mut ChaCha8Rng| {
            let mut x = LambdaElement::constant(int(rng.gen_range(-2..3)));
            for _ in 0..2 {
                let j = rng.gen_range(0..ty.big_n());
                let c = int(rng.gen_range(-3..4));
                x = &x + &r.lambda(j, random_shift(rng)).unwrap().scale(&c);
            }
            x
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let lhs = gr_map(&r, &(&a * &b)).unwrap();
        assert_eq!(lhs, &gr_map(&r, &a).unwrap() * &gr_map(&r, &b).unwrap(), "{ty}: a={a} b={b}");
    }
}

#[test]
fn truncated_expansion_of_a_symbol() {
    // λ(a)^(-1) = 1 − μ(a) + μ(a)² − …, with μ(a) = μ^(0) + a μ^(1) + …
    let r = ring(CartanType::gl(1).unwrap());
    let x = r.lambda(0, int(2)).unwrap().pow(-1).unwrap();
    let got = expand_truncated(&x, 2);
    let m0 = mu(0, 0);
    let expect = &(&(&WPolynomial::one() - &m0) - &mu(0, 1).scale(&int(2))) + &(&m0 * &m0);
    assert_eq!(got, expect);
}

#[test]
fn v_coefficient_examples() {
    let a = CartanType::gl(3).unwrap();
    let v = v_coefficients(&a, 1, 2).unwrap();
    assert_eq!(v[0], WPolynomial::one());
    let c1 = &mu(1, 0) - &mu(2, 0);
    assert_eq!(v[1], c1);
    let c2 = &mu(1, 1) - &mu(2, 1);
    assert_eq!(v[2], (&(&c1 * &c1) + &c2).scale(&rat(1, 2)));
    let c = CartanType::c(2).unwrap();
    assert_eq!(v_coefficients(&c, 1, 1).unwrap()[1], mu(1, 0).scale(&int(2)));
    let b = CartanType::b(2).unwrap();
    assert_eq!(v_coefficients(&b, 1, 1).unwrap()[1], mu(1, 0));
    let d = CartanType::d(3).unwrap();
    assert_eq!(v_coefficients(&d, 2, 1).unwrap()[1], &mu(1, 0) + &mu(2, 0));
}

#[test]
fn screening_v_examples() {
    let a = CartanType::gl(3).unwrap();
    let total = &(&mu(0, 0) + &mu(1, 0)) + &mu(2, 0);
    for i in 0..2 {
        assert!(screening_v(&a, i, &WPolynomial::constant(int(5))).unwrap().is_zero());
        assert!(screening_v(&a, i, &total).unwrap().is_zero());
    }
    assert_eq!(screening_v(&a, 0, &mu(0, 0)).unwrap(), WPolynomial::one());
    assert!(is_w_element(&a, &total).unwrap());
    assert!(!is_w_element(&a, &mu(0, 0)).unwrap());
    assert!(matches!(screening_v(&a, 2, &total), Err(WError::InvalidColor { .. })));
}

/// The quadratic element left over from the exterior square, computed by hand.
#[test]
fn quadratic_w_element_for_gl3() {
    let ty = CartanType::gl(3).unwrap();
    let r = ring(ty);
    let x = curated(ty).unwrap().into_iter().find(|c| c.name == "reduced_exterior_square").unwrap().element;
    let m = |i: usize| mu(i, 0);
    let e2 = &(&(&m(0) * &m(1)) + &(&m(0) * &m(2))) + &(&m(1) * &m(2));
    let expect = &(&e2 - &mu(1, 1)) - &mu(2, 1).scale(&int(2));
    let g = gr_map(&r, &x).unwrap();
    assert_eq!(g, expect);
    assert!(is_w_element(&ty, &g).unwrap());
}

#[test]
fn curated_characters_land_in_the_dual_w_algebra() {
    for ty in all_types() {
        let r = ring(ty);
        for c in curated(ty).unwrap() {
            assert!(r.is_character(&c.element).unwrap(), "{ty} {}", c.name);
            let g = gr_map(&r, &c.element).unwrap();
            assert!(is_w_element(&ty.dual(), &g).unwrap(), "{ty} {}: {g}", c.name);
        }
    }
}

/// The B and C screenings really differ: the o_3 image is killed only by the sp_2 screening.
#[test]
fn duality_is_not_vacuous() {
    let b = CartanType::b(1).unwrap();
    let x = curated(b).unwrap().into_iter().find(|c| c.name == "reduced_lambda_sum").unwrap().element;
    let g = gr_map(&ring(b), &x).unwrap();
    assert!(g.as_constant().is_none());
    assert!(is_w_element(&b.dual(), &g).unwrap());
    assert!(!is_w_element(&b, &g).unwrap());
    // a non-character maps outside the W-algebra
    let r = ring(b);
    let x = &r.lambda(0, int(0)).unwrap() - &LambdaElement::one();
    assert!(!r.is_character(&x).unwrap());
    assert!(!is_w_element(&b.dual(), &gr_map(&r, &x).unwrap()).unwrap());
}

#[test]
fn hc_image_examples() {
    let a1 = CartanType::gl(1).unwrap();
    let img = hc_image_builder(&a1, OperatorKind::Rdet).unwrap();
    assert_eq!(img, &WDiffElement::d() + &WDiffElement::function(mu(0, 0)));
    let b1 = CartanType::b(1).unwrap();
    assert_eq!(hc_image_builder(&b1, OperatorKind::BcdTrace(1)).unwrap(), WDiffElement::d().scale_rat(&int(2)));
    let d1 = CartanType::d(1).unwrap();
    assert_eq!(hc_image_builder(&d1, OperatorKind::Pfaffian).unwrap(), WDiffElement::function(mu(0, 0)));
    // o_3, m = 2: 3τ² + (μ^(0))² − μ^(1)
    let m2 = hc_image_builder(&b1, OperatorKind::BcdTrace(2)).unwrap();
    let expect = WDiffElement::from_coeffs([(2, WPolynomial::constant(int(3))), (0, &(&mu(0, 0) * &mu(0, 0)) - &mu(0, 1))]);
    assert_eq!(m2, expect);
    assert!(hc_image_builder(&a1, OperatorKind::Cdet).is_err());
    assert!(hc_image_builder(&b1, OperatorKind::Rdet).is_err());
}

fn hc_kinds(ty: &CartanType) -> Vec<OperatorKind> {
    match ty.family {
        Family::A => {
            let mut v = vec![OperatorKind::Rdet];
            for m in 1..=3 {
                if m <= ty.n {
                    v.push(OperatorKind::Projector(ProjectorKind::Antisymmetrizer, m));
                }
                v.push(OperatorKind::Projector(ProjectorKind::Symmetrizer, m));
                v.push(OperatorKind::TracePower(m));
            }
            v
        }
        Family::D => vec![OperatorKind::BcdTrace(1), OperatorKind::BcdTrace(2), OperatorKind::Pfaffian],
        _ => vec![OperatorKind::BcdTrace(1), OperatorKind::BcdTrace(2)],
    }
}

#[test]
fn hc_images_lie_in_the_w_algebra() {
    let mut types: Vec<CartanType> = (1..=3).map(|n| CartanType::gl(n).unwrap()).collect();
    for n in 1..=2 {
        types.push(CartanType::b(n).unwrap());
        types.push(CartanType::c(n).unwrap());
    }
    types.push(CartanType::d(2).unwrap());
    for ty in types {
        let w = ty.dual();
        for kind in hc_kinds(&ty) {
            let img = hc_image_builder(&ty, kind).unwrap();
            for (k, c) in img.coeffs() {
                assert!(is_w_element(&w, c).unwrap(), "{ty} {kind:?} τ^{k}: {c}");
            }
        }
    }
}
