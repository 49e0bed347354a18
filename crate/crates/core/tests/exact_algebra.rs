use num_traits::{One, Zero};
use gaudin_core::diffop::{Letter, OperatorWord, RawFactor};
use gaudin_core::{int, rat, DiffPolyOperator, Poly, Rat, RationalFunction, ScalarDiffOp};
use proptest::prelude::*;

fn pole(z: i64) -> RationalFunction {
    RationalFunction::simple_pole(&int(z))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (poly(2), poly(2).prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn letter() -> impl Strategy<Value = Letter> {
    (0usize..4, 0usize..2).prop_map(|(basis, site)| Letter { basis, site })
}

fn operator() -> impl Strategy<Value = DiffPolyOperator> {
    prop::collection::vec((prop::collection::vec(letter(), 0..=2), 0usize..=2, ratfun()), 0..=3).prop_map(|terms| {
        let mut op = DiffPolyOperator::zero(2);
        for (w, k, c) in terms {
            op.add_term(OperatorWord(w), k, c);
        }
        op
    })
}

#[test]
fn rational_function_examples() {
    let sum = &pole(1) + &pole(-1);
    let expect = RationalFunction::new(Poly::new(vec![int(0), int(2)]), Poly::new(vec![int(-1), int(0), int(1)])).unwrap();
    assert_eq!(sum, expect);
    assert!((&sum * &RationalFunction::zero()).is_zero());
    let reduced = RationalFunction::new(Poly::new(vec![int(-1), int(0), int(1)]), Poly::linear_root(&int(1))).unwrap();
    assert_eq!(reduced, RationalFunction::from_poly(Poly::new(vec![int(1), int(1)])));
    assert!(pole(0).checked_div(&RationalFunction::zero()).is_err());
}

#[test]
fn derivative_examples() {
    assert_eq!(pole(3).derivative(), -(&pole(3) * &pole(3)));
    assert!(RationalFunction::constant(rat(7, 2)).derivative().is_zero());
    // u/(u−1) = 1 + 1/(u−1)
    let f = RationalFunction::new(Poly::u(), Poly::linear_root(&int(1))).unwrap();
    assert_eq!(f.derivative(), -(&pole(1) * &pole(1)));
}

#[test]
fn operator_product_examples() {
    let d = DiffPolyOperator::d(1);
    let f = DiffPolyOperator::function(1, pole(2));
    let mut expect = DiffPolyOperator::term(1, OperatorWord::empty(), 1, pole(2));
    expect.add_term(OperatorWord::empty(), 0, -(&pole(2) * &pole(2)));
    assert_eq!(&d * &f, expect);

    let x = Letter { basis: 0, site: 0 };
    let y = Letter { basis: 1, site: 1 };
    let a = DiffPolyOperator::term(2, OperatorWord(vec![x]), 0, RationalFunction::constant(int(3)));
    let b = DiffPolyOperator::term(2, OperatorWord(vec![y]), 0, pole(0));
    assert_eq!(&a * &b, DiffPolyOperator::term(2, OperatorWord(vec![x, y]), 0, pole(0).scale(&int(3))));
    assert!(DiffPolyOperator::one(1).try_mul(&DiffPolyOperator::one(2)).is_err());
}

#[test]
fn scalar_operator_examples() {
    let f = pole(0);
    let g = pole(1);
    let pf = ScalarDiffOp::first_order(f.clone());
    let pg = ScalarDiffOp::first_order(g.clone());
    let prod = &pf * &pg;
    let expect = ScalarDiffOp::from_coeffs([(2, RationalFunction::one()), (1, &f + &g), (0, &g.derivative() + &(&f * &g))]);
    assert_eq!(prod, expect);
    assert_eq!(&ScalarDiffOp::<RationalFunction>::d() * &ScalarDiffOp::d(), ScalarDiffOp::monomial(2, RationalFunction::one()));
    let minus = ScalarDiffOp::first_order(-f.clone());
    let expect = ScalarDiffOp::from_coeffs([(2, RationalFunction::one()), (0, &f.derivative() - &(&f * &f))]);
    assert_eq!(&minus * &pf, expect);
    assert_eq!(prod.coefficient(0), &g.derivative() + &(&f * &g));
    let op = ScalarDiffOp::from_coeffs([(2, RationalFunction::one()), (1, RationalFunction::constant(int(3))), (0, f.clone())]);
    assert_eq!(op.coefficient(1), RationalFunction::constant(int(3)));
    assert!(ScalarDiffOp::monomial(2, RationalFunction::one()).coefficient(0).is_zero());
}

#[test]
fn coefficient_slices_of_word_operators() {
    let x = Letter { basis: 2, site: 0 };
    let mut op = DiffPolyOperator::term(1, OperatorWord(vec![x]), 1, pole(0));
    op.add_term(OperatorWord::empty(), 0, pole(1));
    assert_eq!(op.coefficient(1), DiffPolyOperator::term(1, OperatorWord(vec![x]), 0, pole(0)));
    assert!(op.coefficient(3).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subtraction_cancels_and_denominators_are_monic(f in ratfun(), g in ratfun()) {
        prop_assert!((&f - &f).is_zero());
        for h in [&f + &g, &f * &g, &f - &g, f.derivative()] {
            prop_assert_eq!(h.den().leading().cloned(), Some(Rat::from_integer(1.into())));
            prop_assert!(Poly::gcd(h.num(), h.den()).is_constant());
        }
    }

    #[test]
    fn leibniz_rule(f in ratfun()) {
        let d = DiffPolyOperator::d(2);
        let fo = DiffPolyOperator::function(2, f.clone());
        prop_assert_eq!(&(&d * &fo) - &(&fo * &d), DiffPolyOperator::function(2, f.derivative()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_product_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn normal_ordering_is_idempotent(a in operator()) {
        let mut again = DiffPolyOperator::zero(2);
        for raw in a.to_raw_terms() {
            again = &again + &DiffPolyOperator::from_product(2, &raw).unwrap();
        }
        prop_assert_eq!(again, a);
    }

    #[test]
    fn unordered_products_normal_order_like_the_ring(f in ratfun(), x in letter()) {
        let raw = [RawFactor::D, RawFactor::Coeff(f.clone()), RawFactor::Letter(x), RawFactor::D];
        let via_ring = &(&(&DiffPolyOperator::d(2) * &DiffPolyOperator::function(2, f)) * &DiffPolyOperator::letter(2, x))
            * &DiffPolyOperator::d(2);
        prop_assert_eq!(DiffPolyOperator::from_product(2, &raw).unwrap(), via_ring);
    }
}
