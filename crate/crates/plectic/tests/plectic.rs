use plectic::cartan::{interior, Form, MultiVector};
use plectic::fixtures::{
    degenerate4, dpdq6, hk4, r3vol, random_form, random_hamiltonian, random_point, sphere3,
};
use plectic::linalg::rank_rational;
use plectic::plectic::{check_nplectic, PointSubspace, SubspaceClass};
use plectic::random::{rng, PolyShape};
use plectic::scalar::{int, parse_expr, Rational};
use plectic::{PlecticStructure, ScalarExpr};
use proptest::prelude::*;
use rand::Rng;

fn vf(p: &PlecticStructure, comps: &[&str]) -> MultiVector {
    let e: Vec<ScalarExpr> = comps
        .iter()
        .map(|s| parse_expr(s, p.chart()).unwrap())
        .collect();
    MultiVector::vector_field(p.chart(), &e).unwrap()
}

fn ri(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn volume_form_is_accepted() {
    let p = r3vol();
    assert!(p.report().accepted);
    assert!(p.report().closed);
    assert_eq!(p.report().generic_rank, 3);
    assert_eq!(p.report().pointwise_ranks, vec![3, 3, 3]);
}

#[test]
fn volume_form_on_four_coordinates_is_rejected() {
    let (c, omega) = degenerate4();
    let r = check_nplectic(&c, &omega, 2, &[ri(&[1, 2, 3, 4])]).unwrap();
    assert!(r.closed);
    assert!(!r.accepted);
    assert_eq!(r.generic_rank, 3);
    assert_eq!(r.kernel_witness.as_deref(), Some("∂w"));
    let w = MultiVector::coordinate(&c, 3).unwrap();
    assert!(interior(&w, &omega).unwrap().is_zero());
    assert!(PlecticStructure::new(&c, omega, 2, &[]).is_err());
}

#[test]
fn multisymplectic_cotangent_form_is_accepted() {
    let p = dpdq6();
    assert!(p.report().accepted);
    assert_eq!(p.dim(), 6);
}

#[test]
fn check_rejects_wrong_degree_and_singular_samples() {
    let p = sphere3();
    assert!(check_nplectic(p.chart(), p.omega(), 3, &[]).is_err());
    assert!(check_nplectic(p.chart(), p.omega(), 2, &[ri(&[0, 0, 0])]).is_err());
}

#[test]
fn hamiltonian_vector_field_of_x_dy() {
    let p = r3vol();
    let pair = p.ham_str("x*dy").unwrap();
    assert_eq!(pair.vf, vf(&p, &["0", "0", "-1"]));
    // back-substitution oracle: ι_v ω = −dα
    assert_eq!(interior(&pair.vf, p.omega()).unwrap(), pair.alpha.d().neg());
    assert!(p.ham_str("dy").unwrap().vf.is_zero());
}

#[test]
fn hamiltonian_solve_on_cotangent_bundle_form() {
    let p = dpdq6();
    // d(q1 dq2) = dq1∧dq2 = ι_{∂p12} ω
    let pair = p.ham_str("q1*dq2").unwrap();
    assert_eq!(pair.vf, vf(&p, &["0", "0", "0", "-1", "0", "0"]));
    // dp12∧dq3 lies outside the image of v ↦ ι_v ω
    let alpha = p.form("p12*dq3").unwrap();
    assert!(p.hamiltonian_vf(&alpha).unwrap().is_none());
    let image: Vec<Vec<Rational>> = (0..6)
        .map(|j| {
            let col = interior(&MultiVector::coordinate(p.chart(), j).unwrap(), p.omega()).unwrap();
            two_form_coords(&col)
        })
        .collect();
    let mut aug = image.clone();
    aug.push(two_form_coords(&alpha.d()));
    assert_eq!(rank_rational(&image, 15), 6);
    assert_eq!(rank_rational(&aug, 15), 7);
}

fn two_form_coords(f: &Form) -> Vec<Rational> {
    let tuples = plectic::plectic::increasing_tuples(6, 2);
    tuples.iter().map(|t| f.coeff(t).as_rational().unwrap()).collect()
}

#[test]
fn hamiltonian_rejects_wrong_degree() {
    let p = r3vol();
    assert!(p.hamiltonian_vf(&p.form("dx*dy").unwrap()).is_err());
}

#[test]
fn bracket_examples() {
    let p = r3vol();
    let a = p.ham_str("x*dy").unwrap();
    let b = p.ham_str("y*dz").unwrap();
    assert_eq!(p.ham_bracket(&a, &b).unwrap(), p.form("dy").unwrap());
    let closed = p.ham_str("dz").unwrap();
    assert!(p.ham_bracket(&a, &closed).unwrap().is_zero());
    assert!(p.ham_bracket(&a, &a).unwrap().is_zero());
}

#[test]
fn jacobi_defect_examples() {
    let p = r3vol();
    let a = p.ham_str("x*dy").unwrap();
    let b = p.ham_str("y*dz").unwrap();
    let c = p.ham_str("z*dx").unwrap();
    let contraction = p.contract(&[&a.vf, &b.vf, &c.vf]).unwrap();
    assert_eq!(contraction.as_scalar(), ScalarExpr::from_int(-1));
    let jd = p.jacobi_defect(&a, &b, &c).unwrap();
    assert!(jd.holds());
    assert!(jd.lhs.is_zero());

    let a2 = p.ham_str("x^2*dy").unwrap();
    let jd = p.jacobi_defect(&a2, &b, &c).unwrap();
    assert!(jd.holds());
    assert_eq!(jd.lhs, p.form("2*dx").unwrap());
    assert_eq!(p.contract(&[&a2.vf, &b.vf, &c.vf]).unwrap(), p.form("-2*x").unwrap());

    let closed = p.ham_str("dx").unwrap();
    let jd = p.jacobi_defect(&a, &closed, &c).unwrap();
    assert!(jd.holds());
}

#[test]
fn multi_contraction_examples() {
    let p = r3vol();
    let v1 = vf(&p, &["0", "0", "-1"]);
    let v2 = vf(&p, &["-1", "0", "0"]);
    assert!(p.multi_contraction_identity(&[v1.clone(), v2]).unwrap().is_zero());

    let h = hk4();
    let fields: Vec<MultiVector> = ["x0*dx1*dx2", "x1*dx2*dx3", "x2*dx3*dx0"]
        .iter()
        .map(|s| h.ham_str(s).unwrap().vf)
        .collect();
    assert!(fields.iter().all(|v| !v.is_zero()));
    assert!(h.multi_contraction_identity(&fields).unwrap().is_zero());

    let with_zero = vec![v1, MultiVector::zero(p.chart(), 1)];
    assert!(p.multi_contraction_identity(&with_zero).unwrap().is_zero());
    assert!(p.multi_contraction_identity(&with_zero[..1]).is_err());
}

#[test]
fn orthogonal_complement_examples() {
    let p = r3vol();
    let w = PointSubspace::new(ri(&[1, 1, 1]), vec![ri(&[1, 0, 0]), ri(&[0, 1, 0])]).unwrap();
    let perp2 = p.orth_complement(&w, 2).unwrap();
    assert_eq!(perp2.dim(), 2);
    let mut joint = perp2.basis.clone();
    joint.extend(w.basis.clone());
    assert_eq!(rank_rational(&joint, 3), 2);
    assert_eq!(p.orth_complement(&w, 1).unwrap().dim(), 0);

    let full = PointSubspace::new(ri(&[1, 1, 1]), vec![ri(&[1, 0, 0]), ri(&[0, 1, 0]), ri(&[0, 0, 1])]).unwrap();
    for k in 1..=2 {
        assert_eq!(p.orth_complement(&full, k).unwrap().dim(), 0);
    }
    assert!(p.orth_complement(&w, 3).is_err());
    assert!(PointSubspace::new(ri(&[0, 0, 0]), vec![ri(&[1, 0, 0]), ri(&[2, 0, 0])]).is_err());
}

#[test]
fn classify_examples() {
    let p = r3vol();
    let pt = ri(&[1, 1, 1]);
    let w = PointSubspace::new(pt.clone(), vec![ri(&[1, 0, 0]), ri(&[0, 1, 0])]).unwrap();
    assert_eq!(p.classify_subspace(&w, 2).unwrap(), SubspaceClass::Lagrangian);
    // every line is 1-isotropic; in a volume form it is even 1-Lagrangian
    let line = PointSubspace::new(pt.clone(), vec![ri(&[1, 2, 3])]).unwrap();
    assert!(p.is_isotropic(&line, 1).unwrap());
    assert_eq!(p.classify_subspace(&line, 1).unwrap(), SubspaceClass::Lagrangian);
    let q = dpdq6();
    let line = PointSubspace::new(ri(&[1, 2, 3, 4, 5, 6]), vec![ri(&[1, 0, 0, 0, 0, 0])]).unwrap();
    assert_eq!(q.classify_subspace(&line, 1).unwrap(), SubspaceClass::Isotropic);
    assert_eq!(q.orth_complement(&line, 1).unwrap().dim(), 2);
    let dx = PointSubspace::new(pt, vec![ri(&[1, 0, 0])]).unwrap();
    assert_eq!(p.classify_subspace(&dx, 2).unwrap(), SubspaceClass::Isotropic);
    // with one basis vector every 2-tuple is degenerate, so nothing is constrained
    assert_eq!(p.orth_complement(&dx, 2).unwrap().dim(), 3);
}

fn fixture(i: usize) -> PlecticStructure {
    match i {
        0 => r3vol(),
        1 => sphere3(),
        _ => hk4(),
    }
}

const SHAPE: PolyShape = PolyShape {
    max_degree: 2,
    max_coeff: 3,
    max_terms: 2,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hamiltonian_fields_preserve_omega(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let a = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        prop_assert!(a.verify(&p).unwrap());
        prop_assert!(a.lie_derivative_of_omega(&p).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_hamiltonian_and_skew(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let a = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let b = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let ab = p.ham_bracket_pair(&a, &b).unwrap();
        let lhs = ab.alpha.d();
        let rhs = interior(&a.vf.schouten(&b.vf).unwrap(), p.omega()).unwrap().neg();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(ab.verify(&p).unwrap());
        let ba = p.ham_bracket(&b, &a).unwrap();
        prop_assert_eq!(ab.alpha, ba.neg());
    }

    #[test]
    fn bracket_with_exact_form_vanishes(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let a = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let beta = random_form(&mut r, p.chart(), p.n() - 2, 2, SHAPE);
        let db = p.ham(&beta.d()).unwrap();
        prop_assert!(p.ham_bracket(&a, &db).unwrap().is_zero());
    }

    #[test]
    fn jacobi_defect_sides_agree(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let a = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let b = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let c = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let jd = p.jacobi_defect(&a, &b, &c).unwrap();
        prop_assert_eq!(jd.lhs, jd.rhs);
    }

    #[test]
    fn lagrangian_iff_dimension_n(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let dim = p.dim();
        let point = random_point(&mut r, dim);
        let k = r.gen_range(1..=dim);
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        while basis.len() < k {
            let v: Vec<Rational> = (0..dim).map(|_| int(r.gen_range(-3..=3))).collect();
            let mut t = basis.clone();
            t.push(v.clone());
            if rank_rational(&t, dim) == t.len() {
                basis.push(v);
            }
        }
        let w = PointSubspace::new(point, basis).unwrap();
        let class = p.classify_subspace(&w, p.n()).unwrap();
        prop_assert_eq!(class == SubspaceClass::Lagrangian, k == p.n());
    }
}
