use num_traits::Zero;
use plectic::random::{random_polynomial_expr, random_rational_expr, rng, PolyShape};
use plectic::scalar::{int, parse_expr, poly, rat, Chart, ScalarExpr};
use plectic::Error;
use proptest::prelude::*;

fn xyz() -> Chart {
    Chart::new(&["x", "y", "z"]).unwrap()
}

fn p(s: &str) -> ScalarExpr {
    parse_expr(s, &xyz()).unwrap()
}

#[test]
fn parse_polynomial() {
    let c = Chart::new(&["x", "y"]).unwrap();
    let e = parse_expr("x^2 + y", &c).unwrap();
    assert!(e.denominator().is_one());
    assert_eq!(e.to_string_in(&c), "x^2+y");
}

#[test]
fn parse_inverse_square_radius() {
    let e = p("1/(x^2+y^2+z^2)");
    assert!(e.numerator().is_one());
    assert_eq!(e.to_string_in(&xyz()), "1/(x^2+y^2+z^2)");
}

#[test]
fn parse_cancelling_difference_is_canonical_zero() {
    let e = p("(x-x)");
    assert!(e.is_zero());
    assert!(e.denominator().is_one());
    assert_eq!(e, ScalarExpr::zero());
}

#[test]
fn parse_errors() {
    let c = xyz();
    assert!(matches!(parse_expr("x + * y", &c), Err(Error::Syntax { pos: 4, .. })));
    assert!(matches!(
        parse_expr("x + w", &c),
        Err(Error::UnknownIdentifier { pos: 4, .. })
    ));
    assert!(matches!(parse_expr("x^-1", &c), Err(Error::BadExponent { .. })));
    assert!(matches!(parse_expr("x^y", &c), Err(Error::BadExponent { .. })));
    assert!(matches!(parse_expr("(x", &c), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("x/(y-y)", &c), Err(Error::DivisionByZero)));
}

#[test]
fn unary_minus_and_precedence() {
    assert_eq!(p("-x^2"), p("0-(x*x)"));
    assert_eq!(p("x*-y"), p("-(x*y)"));
    assert_eq!(p("2*x/3*y"), p("(2*x*y)/3"));
    assert_eq!(p(" x  +\ty "), p("y+x"));
}

#[test]
fn common_denominator() {
    assert_eq!(p("x/y").add(&p("1/y")), p("(x+1)/y"));
}

#[test]
fn division_of_polynomials() {
    let q = p("x^2-1").div(&p("x-1")).unwrap();
    assert_eq!(q, p("x+1"));
    // oracle: long division in Z[x] and re-multiplication
    let lq = p("x^2-1")
        .numerator()
        .exact_div(p("x-1").numerator())
        .unwrap();
    assert_eq!(lq.mul(p("x-1").numerator()), *p("x^2-1").numerator());
    assert_eq!(&lq, q.numerator());
}

#[test]
fn multiply_by_zero() {
    assert!(p("(x+y)/(z^2+1)").mul(&ScalarExpr::zero()).is_zero());
    assert!(matches!(p("x").div(&ScalarExpr::zero()), Err(Error::DivisionByZero)));
}

#[test]
fn partial_derivatives() {
    let c = Chart::new(&["x", "y"]).unwrap();
    let e = parse_expr("x^2*y", &c).unwrap();
    assert_eq!(e.partial(0), parse_expr("2*x*y", &c).unwrap());
    let f = parse_expr("1/(x^2+y^2)", &c).unwrap();
    // quotient rule by hand: (0*(x²+y²) - 1*2x)/(x²+y²)²
    let den = parse_expr("x^2+y^2", &c).unwrap();
    let oracle = parse_expr("-2*x", &c).unwrap().div(&den.mul(&den)).unwrap();
    assert_eq!(f.partial(0), oracle);
    assert_eq!(f.partial(0).to_string_in(&c), "-2*x/(x^4+2*x^2*y^2+y^4)");
    assert!(ScalarExpr::from_int(7).partial(1).is_zero());
}

#[test]
fn evaluation() {
    let c = Chart::new(&["x", "y"]).unwrap();
    assert_eq!(parse_expr("x+y", &c).unwrap().eval_at(&[int(1), int(2)]).unwrap(), int(3));
    let f = p("1/(x^2+y^2+z^2)");
    assert!(matches!(
        f.eval_at(&[int(0), int(0), int(0)]),
        Err(Error::SingularPoint(_))
    ));
    assert_eq!(f.eval_at(&[int(1), int(0), int(0)]).unwrap(), int(1));
    assert_eq!(f.eval_at(&[rat(1, 2), int(0), int(0)]).unwrap(), int(4));
}

#[test]
fn printer_shapes() {
    let c = xyz();
    assert_eq!(p("x/2").to_string_in(&c), "x/2");
    assert_eq!(p("(2*x+1)/(3*y)").to_string_in(&c), "(2*x+1)/(3*y)");
    assert_eq!(p("-x/y^2").to_string_in(&c), "-x/y^2");
    assert_eq!(p("6*x/(4*y)").to_string_in(&c), "3*x/(2*y)");
    assert_eq!(p("(x-y)/(y-x)").to_string_in(&c), "-1");
    assert_eq!(p("1/(-z)").to_string_in(&c), "-1/z");
}

#[test]
fn denominator_leading_coefficient_is_positive() {
    let e = p("1/(-x^2+y)");
    assert!(e.denominator().leading_is_positive());
    assert_eq!(e.to_string_in(&xyz()), "-1/(x^2-y)");
}

#[test]
fn multivariate_gcd_cases() {
    let a = p("(x+y)*(x-z)*(y+1)").numerator().clone();
    let b = p("(x+y)*(y+1)^2*z").numerator().clone();
    let g = poly::gcd(&a, &b);
    assert_eq!(g, p("(x+y)*(y+1)").numerator().clone());
    let a = p("6*x^2*y").numerator().clone();
    let b = p("4*x*y^3+2*x").numerator().clone();
    assert_eq!(poly::gcd(&a, &b), p("2*x").numerator().clone());
}

fn arb_expr() -> impl Strategy<Value = ScalarExpr> {
    any::<u64>().prop_map(|s| {
        let mut r = rng(s);
        random_rational_expr(&mut r, 3, PolyShape::default())
    })
}

/// Cross-multiplication oracle for equality of rational functions.
fn same_function(a: &ScalarExpr, b: &ScalarExpr) -> bool {
    a.numerator().mul(b.denominator()) == b.numerator().mul(a.denominator())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_of_products(s in any::<u64>(), big in 1i64..1_000_000) {
        let mut r = rng(s);
        let shape = PolyShape { max_degree: 3, max_coeff: big, max_terms: 3 };
        let mut draw = || random_polynomial_expr(&mut r, 3, shape).numerator().clone();
        let (a, b, c) = (draw(), draw(), draw());
        prop_assume!(!c.is_zero());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = poly::gcd(&ac, &bc);
        prop_assume!(!g.is_zero());
        prop_assert!(g.exact_div(&c).is_some() || g.exact_div(&c.neg()).is_some());
        let (qa, qb) = (ac.exact_div(&g).unwrap(), bc.exact_div(&g).unwrap());
        prop_assert!(poly::gcd(&qa, &qb).is_constant());
    }

    #[test]
    fn canonical_form_is_unique(a in arb_expr(), b in arb_expr()) {
        prop_assert_eq!(a.sub(&b).is_zero(), same_function(&a, &b));
        let b2 = a.add(&b).sub(&b);
        prop_assert_eq!(&b2, &a);
        prop_assert!(same_function(&b2, &a));
    }

    #[test]
    fn field_axioms(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn mixed_partials_commute(a in arb_expr(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn print_parse_roundtrip(a in arb_expr()) {
        let c = xyz();
        let s = a.to_string_in(&c);
        let b = parse_expr(&s, &c).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.to_string_in(&c), s);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_expr(), b in arb_expr(), x in -5i64..5, y in -5i64..5, z in 1i64..5) {
        let pt = [int(x), rat(y, 2), int(z)];
        let (va, vb) = (a.eval_at(&pt).unwrap(), b.eval_at(&pt).unwrap());
        prop_assert_eq!(a.add(&b).eval_at(&pt).unwrap(), &va + &vb);
        prop_assert_eq!(a.mul(&b).eval_at(&pt).unwrap(), &va * &vb);
        prop_assert!(a.sub(&a).eval_at(&pt).unwrap().is_zero());
    }
}
