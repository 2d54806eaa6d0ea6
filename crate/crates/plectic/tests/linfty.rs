use plectic::fixtures::{hk4, r3vol, random_graded, random_hamiltonian, random_point, sphere3};
use plectic::linfty::{
    all_zero, bracket_k, ce_delta, check_gen_jacobi, check_morphism, check_weak_lie2, homology_finite,
    jacobiator_at, koszul_sign, l_k, path_cochain, unshuffles, GradedElement, HomotopyDirection, Morphism2,
    Permutation, SemistrictLie2,
};
use plectic::random::{rng, PolyShape};
use plectic::scalar::{int, Rational};
use plectic::{Form, HamiltonianPair, PlecticStructure, ScalarExpr};
use proptest::prelude::*;
use rand::Rng;

const SHAPE: PolyShape = PolyShape {
    max_degree: 2,
    max_coeff: 3,
    max_terms: 2,
};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn unshuffle_examples() {
    // (1), (23), (123) in cycle notation
    assert_eq!(unshuffles(2, 1), vec![perm(&[1, 2, 3]), perm(&[1, 3, 2]), perm(&[2, 3, 1])]);
    assert_eq!(unshuffles(1, 1), vec![perm(&[1, 2]), perm(&[2, 1])]);
    for p in 0..=4 {
        for q in 0..=4 {
            let sh = unshuffles(p, q);
            // brute-force filter over the symmetric group
            let brute: Vec<Permutation> = Permutation::all(p + q)
                .into_iter()
                .filter(|s| (1..p + q).filter(|&i| i != p).all(|i| s.images()[i - 1] < s.images()[i]))
                .collect();
            assert_eq!(sh.len(), binomial(p + q, p));
            let mut a = sh.clone();
            a.sort();
            assert_eq!(a, brute);
        }
    }
}

#[test]
fn koszul_examples() {
    for s in Permutation::all(4) {
        assert_eq!(koszul_sign(&s, &[0, 0, 0, 0]).unwrap(), 1);
    }
    assert_eq!(koszul_sign(&perm(&[2, 1]), &[1, 1]).unwrap(), -1);
    assert_eq!(koszul_sign(&Permutation::identity(3), &[1, 1, 1]).unwrap(), 1);
    assert_eq!(koszul_sign(&perm(&[2, 1]), &[1, 2]).unwrap(), 1);
    assert!(koszul_sign(&perm(&[2, 1]), &[1]).is_err());
    assert!(Permutation::new(vec![1, 1]).is_err());
}

fn pair(p: &PlecticStructure, s: &str) -> GradedElement {
    GradedElement::from_pair(p.ham_str(s).unwrap())
}

#[test]
fn l2_and_l3_examples() {
    let p = r3vol();
    let (a, b, c) = (pair(&p, "x*dy"), pair(&p, "y*dz"), pair(&p, "z*dx"));
    let l2 = l_k(&p, &[a.clone(), b.clone()]).unwrap();
    assert_eq!(l2.form(), &p.form("dy").unwrap());
    assert_eq!(l2.degree(), 0);
    let l3 = l_k(&p, &[a.clone(), b.clone(), c.clone()]).unwrap();
    assert_eq!(l3.degree(), 1);
    assert_eq!(l3.form().as_scalar(), ScalarExpr::one());
    // ι_{v_α} ι_{v_β} ι_{v_γ} ω of the semistrict structure
    use plectic::linfty::WeakLie2;
    let s = SemistrictLie2::new(&p).unwrap();
    let j = s
        .jacobiator(&a.pair().unwrap(), &b.pair().unwrap(), &c.pair().unwrap())
        .unwrap();
    assert_eq!(&j, l3.form());

    let f = GradedElement::from_form(&p, p.form("x*y").unwrap()).unwrap();
    let out = l_k(&p, &[a.clone(), f.clone()]).unwrap();
    assert!(out.is_zero());
    assert!(l_k(&p, &[a.clone(), b.clone(), f]).unwrap().is_zero());
    assert!(l_k(&p, &[a.clone()]).is_err());
    assert!(GradedElement::from_form(&p, p.form("x*dy").unwrap()).is_err());
}

#[test]
fn gen_jacobi_examples() {
    let p = r3vol();
    let (a, b, c) = (pair(&p, "x^2*dy"), pair(&p, "y*dz"), pair(&p, "z*x*dx"));
    assert!(check_gen_jacobi(&p, &[a.clone(), b.clone()]).unwrap().is_zero());
    assert!(check_gen_jacobi(&p, &[a, b, c]).unwrap().is_zero());
    let h = hk4();
    let xs: Vec<GradedElement> = ["x0*dx1*dx2", "x1^2*dx2*dx3", "x2*x3*dx3*dx0", "x3*dx0*dx1"]
        .iter()
        .map(|s| pair(&h, s))
        .collect();
    assert!(check_gen_jacobi(&h, &xs).unwrap().is_zero());
}

#[test]
fn dropping_a_sign_breaks_gen_jacobi() {
    // the l₃ term alone is the nonzero Jacobiator, so the identity is not vacuous
    let p = r3vol();
    let xs = [pair(&p, "x^2*dy"), pair(&p, "y*dz"), pair(&p, "z*dx")];
    let l3 = bracket_k(&p, &xs).unwrap().unwrap();
    let d_l3 = bracket_k(&p, &[l3]).unwrap().unwrap();
    assert!(!d_l3.form().is_zero());
}

fn identity_morphism<'a>(p: &'a PlecticStructure, scale_phi: i64) -> Morphism2<'a, SemistrictLie2<'a>, SemistrictLie2<'a>> {
    Morphism2 {
        phi0: Box::new(|x: &HamiltonianPair| Ok(x.clone())),
        phi1: Box::new(|f: &Form| Ok(f.clone())),
        big_phi: Box::new(move |x: &HamiltonianPair, y: &HamiltonianPair| {
            // a nonzero homotopy for the negative control
            if scale_phi == 0 {
                Ok(Form::zero(p.chart(), 0))
            } else {
                Ok(p.contract(&[&x.vf, &y.vf, &plectic::MultiVector::coordinate(p.chart(), 0)?])?
                    .scale_rational(&int(scale_phi)))
            }
        }),
        direction: HomotopyDirection::MapThenBracket,
    }
}

#[test]
fn identity_morphism_passes_and_corruption_fails() {
    let p = r3vol();
    let s = SemistrictLie2::new(&p).unwrap();
    let (x, y, z) = (p.ham_str("x*dy").unwrap(), p.ham_str("y^2*dz").unwrap(), p.ham_str("z*x*dx").unwrap());
    let f = p.form("x*y").unwrap();
    let good = check_morphism(&s, &s, &identity_morphism(&p, 0), [&x, &y, &z], &f).unwrap();
    assert!(all_zero(&good), "{good:?}");
    let bad = check_morphism(&s, &s, &identity_morphism(&p, 2), [&x, &y, &z], &f).unwrap();
    assert!(!all_zero(&bad));
}

#[test]
fn semistrict_structure_satisfies_lie2_axioms() {
    let p = r3vol();
    let s = SemistrictLie2::new(&p).unwrap();
    let xs: Vec<HamiltonianPair> = ["x^2*dy", "y*dz", "z*x*dx", "x*y*dz"]
        .iter()
        .map(|t| p.ham_str(t).unwrap())
        .collect();
    let (f, g) = (p.form("x*z").unwrap(), p.form("y^2").unwrap());
    let r = check_weak_lie2(&s, [&xs[0], &xs[1], &xs[2], &xs[3]], &f, &g).unwrap();
    assert!(all_zero(&r), "{r:?}");
    assert!(SemistrictLie2::new(&hk4()).is_err());
}

#[test]
fn ce_delta_examples() {
    let p = r3vol();
    let fields: Vec<_> = ["x^2*dy", "y*dz", "z*x*dx", "x*y*dz"]
        .iter()
        .map(|s| p.ham_str(s).unwrap().vf)
        .collect();
    let constant = |_: &[plectic::MultiVector]| Ok(int(5));
    assert_eq!(ce_delta(constant, &fields[..1], int(0)).unwrap(), int(0));
    let x = vec![int(1), int(1), int(1)];
    let jx = jacobiator_at(&p, &x);
    assert_eq!(ce_delta(&jx, &fields, int(0)).unwrap(), int(0));

    let (a, b) = ([1.0, 1.0, 1.0], [2.0, 1.0, 1.0]);
    let c = path_cochain(&p, &a, &b, 1e-12);
    let triple = &fields[..3];
    let dc = ce_delta(&c, triple, 0.0).unwrap();
    let ya = vec![int(2), int(1), int(1)];
    let diff = jacobiator_at(&p, &ya)(triple).unwrap() - jacobiator_at(&p, &x)(triple).unwrap();
    let diff = plectic::scalar::rational_to_f64(&diff);
    assert!((dc - diff).abs() < 1e-9, "δc = {dc}, J_y − J_x = {diff}");
    assert!(diff.abs() > 1e-3);
}

#[test]
fn homology_examples() {
    // ℝ → su(2)* with d = 0 placed as C₁ = ℝ, C₀ = 𝔤
    let zero = vec![vec![int(0)]; 3];
    assert_eq!(homology_finite(3, 1, &zero).unwrap(), (3, 1));
    assert_eq!(homology_finite(1, 1, &[vec![int(1)]]).unwrap(), (0, 0));
    let rank1 = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
    assert_eq!(homology_finite(2, 2, &rank1).unwrap(), (1, 1));
    assert!(homology_finite(2, 2, &zero).is_err());
}

fn fixture(i: usize) -> PlecticStructure {
    match i {
        0 => r3vol(),
        1 => sphere3(),
        _ => hk4(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gen_jacobi_vanishes_on_mixed_degrees(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        for m in 1..=p.n() + 2 {
            let xs: Vec<GradedElement> = (0..m)
                .map(|_| {
                    let deg = if r.gen_bool(0.6) { 0 } else { r.gen_range(0..p.n()) };
                    random_graded(&mut r, &p, deg, SHAPE).unwrap()
                })
                .collect();
            let res = check_gen_jacobi(&p, &xs).unwrap();
            prop_assert!(res.is_zero(), "m = {}: residual {}", m, res);
        }
    }

    #[test]
    fn l_k_is_skew_with_degree_k_minus_2(seed in any::<u64>(), fx in 0usize..3, k in 2usize..5) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let xs: Vec<GradedElement> = (0..k)
            .map(|_| GradedElement::from_pair(random_hamiltonian(&mut r, &p, SHAPE).unwrap()))
            .collect();
        let base = l_k(&p, &xs).unwrap();
        if !base.is_zero() {
            prop_assert_eq!(base.degree(), k - 2);
        }
        for s in Permutation::all(k) {
            let out = l_k(&p, &s.apply(&xs)).unwrap();
            let expected = if s.sign() > 0 { base.form().clone() } else { base.form().neg() };
            prop_assert_eq!(out.form(), &expected);
        }
    }

    #[test]
    fn big_j_and_axioms_hold_for_random_elements(seed in any::<u64>(), fx in 0usize..2) {
        let p = fixture(fx);
        let s = SemistrictLie2::new(&p).unwrap();
        let mut r = rng(seed);
        let xs: Vec<HamiltonianPair> = (0..4).map(|_| random_hamiltonian(&mut r, &p, SHAPE).unwrap()).collect();
        let f = plectic::fixtures::random_form(&mut r, p.chart(), 0, 2, SHAPE);
        let g = plectic::fixtures::random_form(&mut r, p.chart(), 0, 2, SHAPE);
        let res = check_weak_lie2(&s, [&xs[0], &xs[1], &xs[2], &xs[3]], &f, &g).unwrap();
        prop_assert!(all_zero(&res), "{:?}", res);
    }

    #[test]
    fn vector_field_map_preserves_brackets(seed in any::<u64>(), fx in 0usize..3) {
        let p = fixture(fx);
        let mut r = rng(seed);
        let a = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let b = random_hamiltonian(&mut r, &p, SHAPE).unwrap();
        let l2 = l_k(&p, &[GradedElement::from_pair(a.clone()), GradedElement::from_pair(b.clone())]).unwrap();
        let solved = p.ham(l2.form()).unwrap();
        prop_assert_eq!(&solved.vf, &a.vf.schouten(&b.vf).unwrap());
        prop_assert_eq!(l2.vf().unwrap(), &solved.vf);
    }

    #[test]
    fn jx_is_a_cocycle(seed in any::<u64>()) {
        let p = r3vol();
        let mut r = rng(seed);
        let x = random_point(&mut r, 3);
        let fields: Vec<_> = (0..4).map(|_| random_hamiltonian(&mut r, &p, SHAPE).unwrap().vf).collect();
        let v: Rational = ce_delta(jacobiator_at(&p, &x), &fields, int(0)).unwrap();
        prop_assert_eq!(v, int(0));
    }
}
