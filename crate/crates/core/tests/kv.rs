mod common;

use proptest::prelude::*;
use rand::Rng;

use rbx::deform::GaugeSeries;
use rbx::exactlin::{rank, rat, QMatrix};
use rbx::kv::{
    cyclic_sum_vanishes, delta_dual_apply, delta_dual_matrix, delta_dual_via_sharp, delta_scalar_matrix,
    dual_homomorphism_residual, hh_bracket, induced_dual_prelie, induced_dual_prelie_left, inverse_correspondence_check,
    is_kv, is_kv_deformation, kv_bracket, kv_cohomology, kv_dim, kv_extend, kv_gauge_transform, kv_obstruction,
    left_dual_rep, pseudo_hessian_check, psi, restricted_basis, sharp_bracket_residual, sharp_is_rb, upsilon,
    KvCochain, KvSetting, SymForm, SymTensor,
};
use rbx::liealg::{validate_rep, LieRepPair};
use rbx::prelie::{validate_prelie, PreLieAlgebra};
use rbx::rbcx::{graded_bracket, rb_cohomology};

use common::{base_prelie_algebras, random_kv, random_prelie, random_sym_tensor, rng, small_vec};

fn nilpotent2() -> PreLieAlgebra {
    let mut a = vec![rat(0); 8];
    a[1] = rat(-1);
    PreLieAlgebra::new(2, a).unwrap()
}

fn sym(rows: &[&[i64]]) -> SymTensor {
    SymTensor::new(QMatrix::from_i64(rows)).unwrap()
}

fn random_kv_cochain(r: &mut impl Rng, n: usize, k: usize) -> KvCochain {
    KvCochain::from_values(n, k, small_vec(r, kv_dim(n, k))).unwrap()
}

/// Columns of `sub` lie in the column span of `sup`.
fn spans_into(sub: &QMatrix, sup: &QMatrix) -> bool {
    rank(&sup.hconcat(sub).unwrap()) == rank(sup)
}

#[test]
fn dim2_examples() {
    let s = KvSetting::new(nilpotent2()).unwrap();
    assert!(is_kv(&s, &sym(&[&[0, 0], &[0, 1]])).unwrap());
    assert!(!is_kv(&s, &sym(&[&[1, 0], &[0, 1]])).unwrap());
    assert!(is_kv(&s, &SymTensor::zero(2)).unwrap());
    assert_eq!(hh_bracket(&s, &sym(&[&[1, 0], &[0, 1]])).unwrap().eval_basis(&[0, 1], 0), rat(1));
    let b = SymForm::new(QMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
    assert!(pseudo_hessian_check(&nilpotent2(), &b).unwrap());
    let b = SymForm::new(QMatrix::identity(2)).unwrap();
    assert!(!pseudo_hessian_check(&nilpotent2(), &b).unwrap());
    let deg = SymForm::new(QMatrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap();
    assert!(!pseudo_hessian_check(&PreLieAlgebra::zero(2), &deg).unwrap());
}

#[test]
fn left_dual_rep_is_a_representation() {
    for a in base_prelie_algebras() {
        let rep = left_dual_rep(&a).unwrap();
        let pair = LieRepPair::new(a.sub_adjacent(), rep).unwrap();
        assert!(validate_rep(&pair).unwrap().is_empty());
    }
}

#[test]
fn inverse_correspondence_on_the_grid() {
    let mut seen = [0usize; 2];
    for a in base_prelie_algebras().into_iter().filter(|a| a.dim() == 2) {
        let s = KvSetting::new(a).unwrap();
        for code in 0..125 {
            let (x, y, z) = (code % 5 - 2, (code / 5) % 5 - 2, code / 25 - 2);
            let h = sym(&[&[x, y], &[y, z]]);
            if x * z == y * y {
                assert!(inverse_correspondence_check(&s, &h).is_err());
                continue;
            }
            let c = inverse_correspondence_check(&s, &h).unwrap();
            assert!(c.agrees(), "{h:?}");
            seen[usize::from(c.is_kv)] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn restricted_subcomplex() {
    let mut g = rng(23);
    let mut nontrivial = 0;
    for _ in 0..30 {
        let (s, h) = random_kv(&mut g, 3);
        let n = s.dim();
        for k in 1..=3.min(n + 1) {
            let src = restricted_basis(&s, &h, k).unwrap();
            let tgt = restricted_basis(&s, &h, k + 1).unwrap();
            let image = &delta_dual_matrix(&s, &h, k).unwrap() * &src;
            assert!(spans_into(&image, &tgt), "δ leaves the restricted space in degree {k} for {h:?} on {:?}", s.algebra());
            nontrivial += usize::from(!image.is_zero());
            assert!(kv_cohomology(&s, &h, k, true).is_ok());
        }
    }
    assert!(nontrivial > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_bracket_is_twice_hh(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = random_prelie(&mut g, 3);
        let s = KvSetting::new(a).unwrap();
        let h = random_sym_tensor(&mut g, s.dim());
        let hc = h.as_kv_cochain();
        let hh = hh_bracket(&s, &h).unwrap();
        prop_assert_eq!(kv_bracket(&s, &hc, &hc).unwrap(), hh.scale(&rat(2)));
        prop_assert_eq!(is_kv(&s, &h).unwrap(), sharp_is_rb(&s, &h).unwrap());
        prop_assert_eq!(sharp_bracket_residual(&s, &h).unwrap(), hh);
    }

    #[test]
    fn kv_iff_sharp_is_rb_on_kv_instances(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (s, h) = random_kv(&mut g, 3);
        prop_assert!(is_kv(&s, &h).unwrap());
        prop_assert!(sharp_is_rb(&s, &h).unwrap());
    }

    #[test]
    fn psi_is_a_graded_lie_isomorphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = KvSetting::new(random_prelie(&mut g, 3)).unwrap();
        let n = s.dim();
        let (p, q) = (g.gen_range(1..=n + 1), g.gen_range(1..=n + 1));
        let a = random_kv_cochain(&mut g, n, p);
        let b = random_kv_cochain(&mut g, n, q);
        prop_assert_eq!(upsilon(&psi(&a)).unwrap(), a.clone());
        let lhs = psi(&kv_bracket(&s, &a, &b).unwrap());
        let rhs = graded_bracket(s.pair(), &psi(&a), &psi(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_is_psi_conjugate_of_dt(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (s, h) = random_kv(&mut g, 3);
        let n = s.dim();
        let dual = induced_dual_prelie(&s, &h).unwrap();
        prop_assert!(validate_prelie(&dual).is_empty());
        prop_assert!(dual_homomorphism_residual(&s, &h).unwrap().iter().all(|x| *x == rat(0)));
        prop_assert_eq!(dual.sub_adjacent(), induced_dual_prelie_left(&s, &h).unwrap().sub_adjacent());
        for k in 1..=n + 1 {
            let d = delta_dual_matrix(&s, &h, k).unwrap();
            prop_assert_eq!(&d, &delta_dual_via_sharp(&s, &h, k).unwrap());
            prop_assert_eq!(&d, &delta_scalar_matrix(&dual, k).unwrap());
            if k <= n {
                prop_assert!((&delta_dual_matrix(&s, &h, k + 1).unwrap() * &d).is_zero());
            }
            let full = kv_cohomology(&s, &h, k, false).unwrap().dim;
            prop_assert_eq!(full, rb_cohomology(&s.sharp(&h).unwrap(), k - 1).unwrap().dim);
        }
    }

    #[test]
    fn scalar_delta_squares_to_zero(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = random_prelie(&mut g, 3);
        let n = a.dim();
        for k in 1..=n {
            let prod = &delta_scalar_matrix(&a, k + 1).unwrap() * &delta_scalar_matrix(&a, k).unwrap();
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn obstruction_of_first_order_deformations(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (s, h) = if g.gen_bool(0.5) {
            (KvSetting::new(nilpotent2()).unwrap(), sym(&[&[0, 0], &[0, 1]]))
        } else {
            random_kv(&mut g, 3)
        };
        let n = s.dim();
        // a random symmetric δ-cocycle
        let symb = restricted_basis(&s, &h, 2).unwrap();
        let ker = (&delta_dual_matrix(&s, &h, 2).unwrap() * &symb).kernel_basis();
        let mut coeffs = vec![rat(0); symb.cols()];
        for z in &ker {
            let c = rat(g.gen_range(-2..=2));
            for (a, b) in coeffs.iter_mut().zip(z) {
                *a += &c * b;
            }
        }
        let h1 = SymTensor::new(QMatrix::new(n, n, symb.mul_vec(&coeffs)).unwrap()).unwrap();
        prop_assert!(is_kv_deformation(&s, &h, std::slice::from_ref(&h1)).unwrap());
        let obs = kv_obstruction(&s, &h, std::slice::from_ref(&h1)).unwrap();
        prop_assert!(obs.cyclic_sum_zero);
        prop_assert!(cyclic_sum_vanishes(&obs.theta));
        prop_assert!(obs.closed);
        prop_assert!(delta_dual_apply(&s, &h, &obs.theta).unwrap().is_zero());
        if let Some(h2) = kv_extend(&s, &h, std::slice::from_ref(&h1)).unwrap() {
            prop_assert!(h2.matrix().is_symmetric());
            prop_assert!(is_kv_deformation(&s, &h, &[h1.clone(), h2]).unwrap());
        }
        // the zero gauge leaves the series alone
        let x = GaugeSeries { terms: vec![vec![rat(0); n]] };
        let out = kv_gauge_transform(&s, &h, std::slice::from_ref(&h1), &x).unwrap();
        prop_assert_eq!(&out[0], h1.matrix());
    }

    #[test]
    fn zero_base_obstruction_is_the_square(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = KvSetting::new(random_prelie(&mut g, 3)).unwrap();
        let h1 = random_sym_tensor(&mut g, s.dim());
        let zero = SymTensor::zero(s.dim());
        let obs = kv_obstruction(&s, &zero, std::slice::from_ref(&h1)).unwrap();
        prop_assert_eq!(&obs.theta, &hh_bracket(&s, &h1).unwrap());
        prop_assert_eq!(obs.theta.is_zero(), is_kv(&s, &h1).unwrap());
    }
}
