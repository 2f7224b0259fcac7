mod common;

use proptest::prelude::*;
use rand::Rng;

use rbx::combinat::binomial;
use rbx::exactlin::{rat, Rational};
use rbx::liealg::unit;
use rbx::prelie::{
    ddef_matrix, ddef_matrix_explicit, def_cohomology, induced_prelie, mn_bracket, phi_map, phi_matrix, validate_prelie,
    Multiderivation, PreLieAlgebra,
};
use rbx::rbcx::{dt_matrix, graded_bracket, induced_lie};

use common::{random_cochain, random_multiderivation, random_pair, random_prelie, rb_instances, rng, small_vec};

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn mn(a: &Multiderivation, b: &Multiderivation) -> Multiderivation {
    mn_bracket(a, b).unwrap()
}

/// `2(π(π(u₁,u₂),u₃) − π(π(u₂,u₁),u₃) − π(u₁,π(u₂,u₃)) + π(u₂,π(u₁,u₃)))`
fn square_by_hand(p: &PreLieAlgebra, u1: usize, u2: usize, u3: usize) -> Vec<Rational> {
    let n = p.dim();
    let e = |i| unit(n, i);
    let terms = [
        p.product(&p.product(&e(u1), &e(u2)), &e(u3)),
        p.product(&p.product(&e(u2), &e(u1)), &e(u3)),
        p.product(&e(u1), &p.product(&e(u2), &e(u3))),
        p.product(&e(u2), &p.product(&e(u1), &e(u3))),
    ];
    (0..n).map(|k| rat(2) * (&terms[0][k] - &terms[1][k] - &terms[2][k] + &terms[3][k])).collect()
}

fn random_table(r: &mut impl Rng, n: usize) -> PreLieAlgebra {
    PreLieAlgebra::new(n, small_vec(r, n * n * n)).unwrap()
}

#[test]
fn invalid_square_example() {
    // e1∗e1 = e2, e2∗e2 = e1
    let mut a = vec![rat(0); 8];
    a[1] = rat(1);
    a[6] = rat(1);
    let p = PreLieAlgebra::new(2, a).unwrap();
    assert!(!validate_prelie(&p).is_empty());
    let pi = p.as_multiderivation();
    let sq = mn(&pi, &pi);
    assert_eq!(sq.eval_basis(&[0, 1], 1), vec![rat(0), rat(-2)]);
    assert_eq!(square_by_hand(&p, 0, 1, 1), vec![rat(0), rat(-2)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mn_antisymmetry(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let (p, q) = (g.gen_range(0..=3), g.gen_range(0..=3));
        let a = random_multiderivation(&mut g, n, p.min(n));
        let b = random_multiderivation(&mut g, n, q.min(n));
        let (p, q) = (a.degree(), b.degree());
        prop_assert_eq!(mn(&a, &b), mn(&b, &a).scale(&-sign(p * q)));
    }

    #[test]
    fn mn_jacobi(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let degs: Vec<usize> = (0..3).map(|_| g.gen_range(0..=2usize).min(n)).collect();
        let a = random_multiderivation(&mut g, n, degs[0]);
        let b = random_multiderivation(&mut g, n, degs[1]);
        let c = random_multiderivation(&mut g, n, degs[2]);
        let (p, q, r) = (a.degree(), b.degree(), c.degree());
        let t1 = mn(&mn(&a, &b), &c).scale(&sign(p * r));
        let t2 = mn(&mn(&b, &c), &a).scale(&sign(q * p));
        let t3 = mn(&mn(&c, &a), &b).scale(&sign(r * q));
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn square_matches_hand_expansion(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(2..=3);
        let p = random_table(&mut g, n);
        let pi = p.as_multiderivation();
        let sq = mn(&pi, &pi);
        for u1 in 0..n {
            for u2 in 0..n {
                for u3 in 0..n {
                    prop_assert_eq!(sq.eval_basis(&[u1, u2], u3), square_by_hand(&p, u1, u2, u3));
                }
            }
        }
        prop_assert_eq!(sq.is_zero(), validate_prelie(&p).is_empty());
    }

    #[test]
    fn ddef_two_code_paths(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p = random_prelie(&mut g, 3);
        let n = p.dim();
        for k in 1..=n + 1 {
            let d = ddef_matrix(&p, k).unwrap();
            prop_assert_eq!(&d, &ddef_matrix_explicit(&p, k).unwrap());
            if k <= n {
                prop_assert!((&ddef_matrix(&p, k + 1).unwrap() * &d).is_zero());
            }
        }
    }

    #[test]
    fn phi_is_a_bracket_morphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let pair = random_pair(&mut g, 3, 3);
        let ne = pair.dim_e();
        let (p, q) = (g.gen_range(0..=ne.min(2)), g.gen_range(0..=ne.min(2)));
        let a = random_cochain(&mut g, &pair, p);
        let b = random_cochain(&mut g, &pair, q);
        let lhs = phi_map(&pair, &graded_bracket(&pair, &a, &b).unwrap()).unwrap();
        let rhs = mn(&phi_map(&pair, &a).unwrap(), &phi_map(&pair, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn def_cohomology_euler_characteristic() {
    let mut g = rng(17);
    for _ in 0..12 {
        let p = random_prelie(&mut g, 3);
        let n = p.dim();
        let mut euler = 0i64;
        let mut expected = 0i64;
        for k in 0..=n {
            let h = def_cohomology(&p, k).unwrap();
            let s = if k % 2 == 0 { 1 } else { -1 };
            euler += s * h.dim as i64;
            expected += s * (binomial(n, k) * n * n) as i64;
        }
        assert_eq!(euler, expected);
    }
    for k in 0..=2 {
        assert_eq!(def_cohomology(&PreLieAlgebra::zero(2), k).unwrap().dim, binomial(2, k) * 4);
    }
}

#[test]
fn phi_intertwines_differentials_on_instances() {
    for t in rb_instances(2) {
        let pi = induced_prelie(&t).unwrap();
        assert!(validate_prelie(&pi).is_empty());
        assert_eq!(pi.sub_adjacent(), induced_lie(&t).unwrap());
        let pair = t.pair();
        for k in 0..=pair.dim_e() {
            let lhs = &ddef_matrix(&pi, k + 1).unwrap() * &phi_matrix(pair, k);
            let rhs = &phi_matrix(pair, k + 1) * &dt_matrix(&t, k).unwrap();
            assert_eq!(lhs, rhs, "k = {k}");
        }
        let tc = t.as_cochain();
        let phit = phi_map(pair, &tc).unwrap();
        assert!(mn(&phit, &phit).is_zero());
    }
}
