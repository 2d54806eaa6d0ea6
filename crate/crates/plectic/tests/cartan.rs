use std::sync::Arc;

use plectic::cartan::{interior, lie_derivative, Form, MultiVector};
use plectic::fixtures::{hk_thetas, r4_chart, random_form, random_multivector};
use plectic::random::{rng, PolyShape};
use plectic::scalar::Chart;
use plectic::ScalarExpr;
use proptest::prelude::*;

fn r3() -> Arc<Chart> {
    Arc::new(Chart::new(&["x", "y", "z"]).unwrap())
}

fn f(c: &Arc<Chart>, s: &str) -> Form {
    Form::parse(s, c).unwrap()
}

fn vf(c: &Arc<Chart>, comps: &[&str]) -> MultiVector {
    let e: Vec<ScalarExpr> = comps
        .iter()
        .map(|s| plectic::scalar::parse_expr(s, c).unwrap())
        .collect();
    MultiVector::vector_field(c, &e).unwrap()
}

const SMALL: PolyShape = PolyShape {
    max_degree: 2,
    max_coeff: 3,
    max_terms: 2,
};

#[test]
fn wedge_examples() {
    let c = r3();
    assert!(f(&c, "dx").wedge(&f(&c, "dx")).unwrap().is_zero());
    let got = f(&c, "x*dy").wedge(&f(&c, "dz")).unwrap();
    let expected = Form::from_terms(&c, 2, [(vec![1, 2], ScalarExpr::var(0))]).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got.to_string(), "x*dy*dz");
}

#[test]
fn hyper_kahler_square_is_six_volume() {
    let c = r4_chart();
    let [t1, t2, t3] = hk_thetas(&c);
    let omega = t1
        .wedge(&t1)
        .unwrap()
        .add(&t2.wedge(&t2).unwrap())
        .add(&t3.wedge(&t3).unwrap());
    let expected = Form::from_terms(&c, 4, [(vec![0, 1, 2, 3], ScalarExpr::from_int(6))]).unwrap();
    assert_eq!(omega, expected);
}

#[test]
fn wedge_rejects_chart_mismatch() {
    let a = f(&r3(), "dx");
    let b = f(&r3(), "dy");
    // distinct but equal charts are compatible
    assert!(a.wedge(&b).is_ok());
    let other = Arc::new(Chart::new(&["u", "v"]).unwrap());
    assert!(a.wedge(&f(&other, "du")).is_err());
}

#[test]
fn exterior_derivative_examples() {
    let c = r3();
    assert_eq!(f(&c, "x*dy").d(), f(&c, "dx*dy"));
    assert!(f(&c, "7").d().is_zero());
    let b = plectic::fixtures::sphere3_b(&c);
    assert_eq!(b.d(), f(&c, "dx*dy*dz/(x^2+y^2+z^2)"));
}

#[test]
fn interior_examples() {
    let c = r3();
    let dz = MultiVector::coordinate(&c, 2).unwrap();
    assert_eq!(interior(&dz, &f(&c, "dx*dy*dz")).unwrap(), f(&c, "dx*dy"));
    let dxdy = MultiVector::basis(&c, &[0, 1]).unwrap();
    let full = interior(&dxdy, &f(&c, "dx*dy")).unwrap();
    assert_eq!(full.degree(), 0);
    assert!(full.as_scalar().is_one());
    // ι_{∂y} ι_{∂x}: ∂x is applied first
    let dx = MultiVector::coordinate(&c, 0).unwrap();
    let dy = MultiVector::coordinate(&c, 1).unwrap();
    let seq = interior(&dy, &interior(&dx, &f(&c, "dx*dy")).unwrap()).unwrap();
    assert_eq!(seq, full);
    assert!(interior(&MultiVector::zero(&c, 1), &f(&c, "x*dy")).unwrap().is_zero());
}

#[test]
fn lie_derivative_examples() {
    let c = r3();
    let dx = MultiVector::coordinate(&c, 0).unwrap();
    let dz = MultiVector::coordinate(&c, 2).unwrap();
    assert_eq!(lie_derivative(&dx, &f(&c, "x*dy")).unwrap(), f(&c, "dy"));
    assert!(lie_derivative(&dz, &f(&c, "y*dz")).unwrap().is_zero());
    assert!(lie_derivative(&MultiVector::zero(&c, 1), &f(&c, "x*dy"))
        .unwrap()
        .is_zero());
}

#[test]
fn schouten_examples() {
    let c = r3();
    let dx = vf(&c, &["1", "0", "0"]);
    let xdy = vf(&c, &["0", "x", "0"]);
    assert_eq!(dx.schouten(&xdy).unwrap(), vf(&c, &["0", "1", "0"]));
    let dy = MultiVector::coordinate(&c, 1).unwrap();
    assert!(dx.schouten(&dy).unwrap().is_zero());
    let dz = MultiVector::coordinate(&c, 2).unwrap();
    let vw = dy.wedge(&dz).unwrap();
    let br = dx.schouten(&vw).unwrap();
    assert!(br.is_zero());
}

#[test]
fn vector_field_bracket_matches_component_formula() {
    // oracle: [u,v]^i = u^j ∂_j v^i − v^j ∂_j u^i
    let c = r3();
    let u = vf(&c, &["x*y", "z", "x^2"]);
    let v = vf(&c, &["y", "x*z", "1"]);
    let (uc, vc) = (u.components(), v.components());
    let comps: Vec<ScalarExpr> = (0..3)
        .map(|i| {
            let mut acc = ScalarExpr::zero();
            for j in 0..3 {
                acc = acc.add(&uc[j].mul(&vc[i].partial(j)));
                acc = acc.sub(&vc[j].mul(&uc[i].partial(j)));
            }
            acc
        })
        .collect();
    assert_eq!(u.schouten(&v).unwrap(), MultiVector::vector_field(&c, &comps).unwrap());
}

#[test]
fn form_json_round_trips() {
    let c = r3();
    let a = f(&c, "x*dy*dz - 3/2*y^2*dx*dy");
    let j = a.to_json();
    assert_eq!(Form::from_json(&c, &j).unwrap(), a);
}

#[test]
fn form_evaluation_on_vectors() {
    use plectic::scalar::int;
    let c = r3();
    let a = f(&c, "x*dx*dy");
    let p = vec![int(2), int(0), int(0)];
    let v = a
        .evaluate_on(&p, &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]])
        .unwrap();
    assert_eq!(v, int(2));
}

fn sign(e: usize) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed<K: plectic::cartan::Kind>(g: plectic::cartan::Graded<K>, s: i32) -> plectic::cartan::Graded<K> {
    if s < 0 {
        g.neg()
    } else {
        g
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), deg in 0usize..3) {
        let c = r4_chart();
        let mut r = rng(seed);
        let a = random_form(&mut r, &c, deg, 3, PolyShape::default());
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), p in 0usize..3, q in 0usize..3) {
        let c = r4_chart();
        let mut r = rng(seed);
        let a = random_form(&mut r, &c, p, 2, SMALL);
        let b = random_form(&mut r, &c, q, 2, SMALL);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, signed(ba, sign(p * q)));
    }

    #[test]
    fn interior_is_antiderivation(seed in any::<u64>(), p in 1usize..3, q in 0usize..3) {
        let c = r4_chart();
        let mut r = rng(seed);
        let v = random_multivector(&mut r, &c, 1, 3, SMALL);
        let a = random_form(&mut r, &c, p, 2, SMALL);
        let b = random_form(&mut r, &c, q, 2, SMALL);
        let lhs = interior(&v, &a.wedge(&b).unwrap()).unwrap();
        let rhs = interior(&v, &a).unwrap().wedge(&b).unwrap()
            .add(&signed(a.wedge(&interior(&v, &b).unwrap()).unwrap(), sign(p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_magic_formula(seed in any::<u64>(), p in 0usize..4) {
        let c = r4_chart();
        let mut r = rng(seed);
        let v = random_multivector(&mut r, &c, 1, 3, PolyShape::default());
        let a = random_form(&mut r, &c, p, 2, PolyShape::default());
        let rhs = interior(&v, &a).unwrap().d().add(&interior(&v, &a.d()).unwrap());
        prop_assert_eq!(lie_derivative(&v, &a).unwrap(), rhs);
    }

    #[test]
    fn graded_commutator_identity(seed in any::<u64>(), du in 1usize..4, dv in 1usize..4, extra in 0usize..2) {
        let c = r4_chart();
        let mut r = rng(seed);
        let u = random_multivector(&mut r, &c, du, 2, SMALL);
        let v = random_multivector(&mut r, &c, dv, 2, SMALL);
        let deg_a = (du + dv - 1 + extra).min(4);
        let a = random_form(&mut r, &c, deg_a, 2, SMALL);
        let lhs = interior(&u.schouten(&v).unwrap(), &a).unwrap();
        let t1 = lie_derivative(&u, &interior(&v, &a).unwrap()).unwrap();
        let t2 = interior(&v, &lie_derivative(&u, &a).unwrap()).unwrap();
        let rhs = signed(t1, sign((du - 1) * dv)).sub(&t2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(seed in any::<u64>(), p in 1usize..3, q in 1usize..3, s in 1usize..3) {
        let c = r4_chart();
        let mut r = rng(seed);
        let u = random_multivector(&mut r, &c, p, 2, SMALL);
        let v = random_multivector(&mut r, &c, q, 2, SMALL);
        let w = random_multivector(&mut r, &c, s, 2, SMALL);
        let t1 = u.schouten(&v.schouten(&w).unwrap()).unwrap();
        let t2 = v.schouten(&w.schouten(&u).unwrap()).unwrap();
        let t3 = w.schouten(&u.schouten(&v).unwrap()).unwrap();
        let total = signed(t1, sign((p - 1) * (s - 1)))
            .add(&signed(t2, sign((q - 1) * (p - 1))))
            .add(&signed(t3, sign((s - 1) * (q - 1))));
        prop_assert!(total.is_zero(), "Jacobi residual {}", total);
    }

    #[test]
    fn schouten_graded_skew(seed in any::<u64>(), p in 1usize..4, q in 1usize..4) {
        let c = r4_chart();
        let mut r = rng(seed);
        let u = random_multivector(&mut r, &c, p, 2, SMALL);
        let v = random_multivector(&mut r, &c, q, 2, SMALL);
        let uv = u.schouten(&v).unwrap();
        let vu = v.schouten(&u).unwrap();
        prop_assert_eq!(uv, signed(vu, -sign((p - 1) * (q - 1))));
    }
}
