#![allow(dead_code)]

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use rbx::action::{ActionModel, Poly, PolySection, PolyVecField, RbLieAlgebra};
use rbx::exactlin::{rat, ratio, QMatrix, Rational};
use rbx::liealg::{dual_rep, unit, validate_lie, validate_rep, Cochain, LieAlgebra, LieRepPair, Representation};
use rbx::prelie::{induced_prelie, validate_prelie, Multiderivation, PreLieAlgebra};
use rbx::rbcx::RbOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut impl Rng) -> Rational {
    if r.gen_bool(0.3) {
        return Rational::zero();
    }
    ratio(r.gen_range(-3..=3), r.gen_range(1..=2))
}

pub fn small_vec(r: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rat(r)).collect()
}

fn lie(dim: usize, brackets: &[((usize, usize), &[i64])]) -> LieAlgebra {
    let b: Vec<_> = brackets.iter().map(|&(ij, v)| (ij, v.iter().map(|&x| rat(x)).collect())).collect();
    LieAlgebra::from_brackets(dim, &b)
}

pub fn aff1() -> LieAlgebra {
    lie(2, &[((0, 1), &[0, 1])])
}

pub fn base_lie_algebras() -> Vec<LieAlgebra> {
    vec![
        LieAlgebra::abelian(1),
        LieAlgebra::abelian(2),
        aff1(),
        LieAlgebra::abelian(3),
        lie(3, &[((0, 1), &[0, 0, 1])]),
        lie(3, &[((0, 1), &[0, 2, 0]), ((0, 2), &[0, 0, -2]), ((1, 2), &[1, 0, 0])]),
        lie(3, &[((0, 1), &[0, 0, 1]), ((1, 2), &[1, 0, 0]), ((0, 2), &[0, -1, 0])]),
        lie(3, &[((0, 1), &[0, 1, 0])]),
        lie(3, &[((0, 1), &[0, 1, 0]), ((0, 2), &[0, 0, 1])]),
        lie(4, &[((0, 1), &[0, 0, 1, 0]), ((0, 2), &[0, 0, 0, 1])]),
        lie(4, &[((0, 1), &[0, 1, 0, 0]), ((2, 3), &[0, 0, 0, 1])]),
    ]
}

pub fn random_invertible(r: &mut impl Rng, n: usize) -> QMatrix {
    loop {
        let m = QMatrix::new(n, n, (0..n * n).map(|_| rat(r.gen_range(-1..=1))).collect()).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// Structure constants in the basis given by the columns of `p`.
pub fn change_basis_lie(g: &LieAlgebra, p: &QMatrix) -> LieAlgebra {
    let n = g.dim();
    let pinv = p.inverse().unwrap();
    let mut c = Vec::new();
    for i in 0..n {
        for j in 0..n {
            c.extend(pinv.mul_vec(&g.bracket(&p.column(i), &p.column(j))));
        }
    }
    LieAlgebra::new(n, c).unwrap()
}

pub fn change_basis_prelie(a: &PreLieAlgebra, p: &QMatrix) -> PreLieAlgebra {
    let n = a.dim();
    let pinv = p.inverse().unwrap();
    let mut c = Vec::new();
    for i in 0..n {
        for j in 0..n {
            c.extend(pinv.mul_vec(&a.product(&p.column(i), &p.column(j))));
        }
    }
    PreLieAlgebra::new(n, c).unwrap()
}

pub fn random_lie(r: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    let bases: Vec<_> = base_lie_algebras().into_iter().filter(|g| g.dim() <= max_dim).collect();
    let g = bases.choose(r).unwrap().clone();
    let p = random_invertible(r, g.dim());
    let g = change_basis_lie(&g, &p);
    assert!(validate_lie(&g).is_empty());
    g
}

fn conjugate_rep(rep: &Representation, q: &QMatrix) -> Representation {
    let qinv = q.inverse().unwrap();
    Representation::new(rep.dim(), rep.matrices().iter().map(|m| &(&qinv * m) * q).collect()).unwrap()
}

fn direct_sum(a: &Representation, b: &Representation) -> Representation {
    let (da, db) = (a.dim(), b.dim());
    let ms = a
        .matrices()
        .iter()
        .zip(b.matrices())
        .map(|(x, y)| {
            let mut m = QMatrix::zeros(da + db, da + db);
            for i in 0..da {
                for j in 0..da {
                    m[(i, j)] = x[(i, j)].clone();
                }
            }
            for i in 0..db {
                for j in 0..db {
                    m[(da + i, da + j)] = y[(i, j)].clone();
                }
            }
            m
        })
        .collect();
    Representation::new(da + db, ms).unwrap()
}

pub fn random_pair(r: &mut impl Rng, max_a: usize, max_e: usize) -> LieRepPair {
    let g = random_lie(r, max_a);
    let n = g.dim();
    let adj = Representation::adjoint(&g);
    let mut options: Vec<Representation> = vec![Representation::trivial(n, r.gen_range(1..=max_e))];
    if n <= max_e {
        options.push(adj.clone());
        options.push(dual_rep(&LieRepPair::adjoint(g.clone())));
    }
    if n < max_e {
        options.push(direct_sum(&adj, &Representation::trivial(n, 1)));
    }
    let rep = options.choose(r).unwrap().clone();
    let q = random_invertible(r, rep.dim());
    let pair = LieRepPair::new(g, conjugate_rep(&rep, &q)).unwrap();
    assert!(validate_rep(&pair).unwrap().is_empty());
    pair
}

pub fn random_cochain(r: &mut impl Rng, pair: &LieRepPair, k: usize) -> Cochain {
    let (ne, na) = (pair.dim_e(), pair.dim_a());
    let len = rbx::liealg::space_dim(ne, na, k);
    Cochain::from_values(ne, na, k, small_vec(r, len)).unwrap()
}

pub fn random_multiderivation(r: &mut impl Rng, dim: usize, k: usize) -> Multiderivation {
    let len = Multiderivation::zero(dim, k).values().len();
    Multiderivation::from_values(dim, k, small_vec(r, len)).unwrap()
}

/// `[Tu,Tv] − T(ρ(Tu)v − ρ(Tv)u)` on basis pairs, computed directly.
pub fn rb_identity_holds(pair: &LieRepPair, t: &QMatrix) -> bool {
    let ne = pair.dim_e();
    for i in 0..ne {
        for j in i + 1..ne {
            let (ti, tj) = (t.column(i), t.column(j));
            let lhs = pair.algebra.bracket(&ti, &tj);
            let mut w = pair.rep.action(&ti).column(j);
            let other = pair.rep.action(&tj).column(i);
            for (a, b) in w.iter_mut().zip(&other) {
                *a -= b;
            }
            if lhs != t.mul_vec(&w) {
                return false;
            }
        }
    }
    true
}

/// All integer operators with entries in `range` passing [`rb_identity_holds`].
pub fn enumerate_rb(pair: &LieRepPair, range: std::ops::RangeInclusive<i64>) -> Vec<QMatrix> {
    let (na, ne) = (pair.dim_a(), pair.dim_e());
    let vals: Vec<i64> = range.collect();
    let cells = na * ne;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let m = QMatrix::new(na, ne, idx.iter().map(|&i| rat(vals[i])).collect()).unwrap();
        if rb_identity_holds(pair, &m) {
            out.push(m);
        }
        let mut p = 0;
        loop {
            if p == cells {
                return out;
            }
            idx[p] += 1;
            if idx[p] < vals.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

pub fn dim2_pairs() -> Vec<LieRepPair> {
    let g = aff1();
    vec![
        LieRepPair::adjoint(g.clone()),
        LieRepPair::new(g.clone(), dual_rep(&LieRepPair::adjoint(g.clone()))).unwrap(),
        LieRepPair::new(g, Representation::trivial(2, 2)).unwrap(),
    ]
}

/// The fixed Rota-Baxter instances shared by several criteria: zero operators
/// on random pairs, `T₀` on aff(1), and a brute-force enumeration on dim-2
/// pairs thinned to every `stride`-th hit.
pub fn rb_instances(stride: usize) -> Vec<RbOperator> {
    let mut out = Vec::new();
    let mut r = rng(7);
    for _ in 0..6 {
        let p = Arc::new(random_pair(&mut r, 3, 3));
        out.push(RbOperator::zero(p));
    }
    let adj = Arc::new(LieRepPair::adjoint(aff1()));
    out.push(RbOperator::new(adj, QMatrix::from_i64(&[&[0, 0], &[1, 0]])).unwrap());
    for pair in dim2_pairs() {
        let pair = Arc::new(pair);
        for (i, t) in enumerate_rb(&pair, -2..=2).into_iter().enumerate() {
            if i % stride == 0 {
                out.push(RbOperator::new(pair.clone(), t).unwrap());
            }
        }
    }
    out
}

pub fn base_prelie_algebras() -> Vec<PreLieAlgebra> {
    let table = |n: usize, entries: &[((usize, usize), &[i64])]| {
        let mut a = vec![Rational::zero(); n * n * n];
        for &((i, j), v) in entries {
            for k in 0..n {
                a[(i * n + j) * n + k] = rat(v[k]);
            }
        }
        PreLieAlgebra::new(n, a).unwrap()
    };
    let mut out = vec![
        PreLieAlgebra::zero(1),
        table(1, &[((0, 0), &[1])]),
        PreLieAlgebra::zero(2),
        table(2, &[((0, 0), &[0, -1])]),
        table(2, &[((0, 0), &[0, 1])]),
        table(2, &[((0, 0), &[1, 0]), ((1, 1), &[0, 1])]),
        table(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 1])]),
        table(2, &[((0, 1), &[0, 1])]),
        table(2, &[((0, 0), &[2, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 0])]),
        table(3, &[((0, 0), &[0, 1, 0]), ((0, 1), &[0, 0, 1]), ((1, 0), &[0, 0, 1])]),
        table(3, &[((0, 0), &[0, -1, 0])]),
    ];
    for pair in dim2_pairs() {
        let pair = Arc::new(pair);
        for t in enumerate_rb(&pair, -1..=1).into_iter().step_by(5) {
            out.push(induced_prelie(&RbOperator::new(pair.clone(), t).unwrap()).unwrap());
        }
    }
    out.retain(|a| validate_prelie(a).is_empty());
    out
}

pub fn random_prelie(r: &mut impl Rng, max_dim: usize) -> PreLieAlgebra {
    let bases: Vec<_> = base_prelie_algebras().into_iter().filter(|a| a.dim() <= max_dim).collect();
    let a = bases.choose(r).unwrap().clone();
    let p = random_invertible(r, a.dim());
    let a = change_basis_prelie(&a, &p);
    assert!(validate_prelie(&a).is_empty());
    a
}

pub fn random_symmetric(r: &mut impl Rng, n: usize, lo: i64, hi: i64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rat(r.gen_range(lo..=hi));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

pub fn random_poly(r: &mut impl Rng, m: usize, max_deg: u32) -> Poly {
    let mut p = Poly::zero(m);
    for _ in 0..r.gen_range(1..=4) {
        let mut e = vec![0u32; m];
        let mut left = r.gen_range(0..=max_deg);
        for slot in e.iter_mut() {
            let k = r.gen_range(0..=left);
            *slot = k;
            left -= k;
        }
        p = p.add(&Poly::monomial(m, e, ratio(r.gen_range(-3..=3), r.gen_range(1..=2))));
    }
    p
}

pub fn random_field(r: &mut impl Rng, m: usize, max_deg: u32) -> PolyVecField {
    PolyVecField::new((0..m).map(|_| random_poly(r, m, max_deg)).collect()).unwrap()
}

pub fn random_ker_section(r: &mut impl Rng, dim_g: usize, m: usize, max_deg: u32) -> PolySection {
    let mut s = PolySection::zero(dim_g, m);
    for i in 0..dim_g {
        if r.gen_bool(0.7) {
            s.g_part[i] = random_poly(r, m, max_deg);
        }
    }
    s
}

/// `Σ (A x)_i ∂_i`
fn linear_field(a: &QMatrix) -> PolyVecField {
    let m = a.rows();
    PolyVecField::new(
        (0..m)
            .map(|i| (0..m).fold(Poly::zero(m), |acc, j| acc.add(&Poly::var(m, j).scale(&a[(i, j)]))))
            .collect(),
    )
    .unwrap()
}

/// `p(q_1, .., q_m)`
fn compose(p: &Poly, qs: &[Poly]) -> Poly {
    let m = qs[0].base_dim();
    let mut out = Poly::zero(m);
    for (e, c) in p.terms() {
        let mut t = Poly::constant(m, c.clone());
        for (q, &k) in qs.iter().zip(e) {
            for _ in 0..k {
                t = t.mul(q);
            }
        }
        out = out.add(&t);
    }
    out
}

/// Push-forward of `x` along `F(x1, x2) = (x1 + c x2², x2)`.
fn push_forward(x: &PolyVecField, c: &Rational) -> PolyVecField {
    let m = 2;
    let x2 = Poly::var(m, 1);
    let inv = [Poly::var(m, 0).sub(&x2.mul(&x2).scale(c)), x2.clone()];
    let pulled: Vec<Poly> = x.components().iter().map(|p| compose(p, &inv)).collect();
    // DF = [[1, 2c x2], [0, 1]]
    let first = pulled[0].add(&x2.scale(&(c * rat(2))).mul(&pulled[1]));
    PolyVecField::new(vec![first, pulled[1].clone()]).unwrap()
}

/// A valid action model drawn from two constructions: `ℬ = 0` with `φ`
/// taking values in multiples of one random field, or a Rota-Baxter operator
/// on aff(1) whose descendent algebra acts by linear fields, pushed forward
/// along a polynomial automorphism of the plane.
pub fn random_action_model(r: &mut impl Rng) -> ActionModel {
    if r.gen_bool(0.5) {
        let g = random_lie(r, 3);
        let n = g.dim();
        let m = r.gen_range(1..=2);
        let x = random_field(r, m, 3);
        let phi = (0..n).map(|_| x.scale(&small_rat(r))).collect();
        let model = ActionModel::new(RbLieAlgebra::new(g, QMatrix::zeros(n, n)).unwrap(), m, phi).unwrap();
        assert!(model.validate().is_valid());
        model
    } else {
        let pair = LieRepPair::adjoint(aff1());
        let ops: Vec<_> = enumerate_rb(&pair, -1..=1).into_iter().filter(|t| !t.is_zero()).collect();
        let b = ops.choose(r).unwrap().clone();
        let rb = RbLieAlgebra::new(aff1(), b).unwrap();
        let desc = rb.descendent_algebra();
        let c = small_rat(r);
        let phi = (0..2).map(|i| push_forward(&linear_field(&-&desc.ad_matrix(i)), &c)).collect();
        let model = ActionModel::new(rb, 2, phi).unwrap();
        assert!(model.validate().is_valid(), "{:?}", model.validate());
        model
    }
}

pub fn random_morphism_cochain(r: &mut impl Rng, model: &ActionModel, k: usize) -> rbx::action::MorphismCochain {
    let m = model.base_dim();
    let n = rbx::combinat::binomial(model.dim_g(), k);
    let values = (0..n).map(|_| random_field(r, m, 2)).collect();
    rbx::action::MorphismCochain::new(model.dim_g(), k, values).unwrap()
}

pub fn basis_vectors(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Random element of `ker d_T` in degree `k`.
pub fn random_cocycle(r: &mut impl Rng, t: &RbOperator, k: usize) -> Cochain {
    let (ne, na) = (t.pair().dim_e(), t.pair().dim_a());
    let mut v = vec![Rational::zero(); rbx::liealg::space_dim(ne, na, k)];
    for z in rbx::rbcx::dt_matrix(t, k).unwrap().kernel_basis() {
        let c = small_rat(r);
        for (a, b) in v.iter_mut().zip(&z) {
            *a += &c * b;
        }
    }
    Cochain::from_values(ne, na, k, v).unwrap()
}

/// An order-1 deformation from a random 1-cocycle, or an order-2 one when
/// the first-order term extends; the second term is a particular solution
/// plus another cocycle.
pub fn random_deformation(r: &mut impl Rng, t: &RbOperator, order: usize) -> rbx::deform::DeformationSeries {
    use rbx::deform::{extend, DeformationSeries};
    let t1 = random_cocycle(r, t, 1).to_matrix();
    let d = DeformationSeries::new(t.clone(), vec![t1]).unwrap();
    if order < 2 {
        return d;
    }
    match extend(&d).unwrap() {
        Some(x) => d.push(&x + &random_cocycle(r, t, 1).to_matrix()).unwrap(),
        None => d,
    }
}

/// Symmetric integer tensors with entries in `range` that are KV on `a`.
pub fn enumerate_kv(s: &rbx::kv::KvSetting, range: std::ops::RangeInclusive<i64>) -> Vec<rbx::kv::SymTensor> {
    let n = s.dim();
    let vals: Vec<i64> = range.collect();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut m = QMatrix::zeros(n, n);
        for (&(i, j), &k) in slots.iter().zip(&idx) {
            m[(i, j)] = rat(vals[k]);
            m[(j, i)] = rat(vals[k]);
        }
        let h = rbx::kv::SymTensor::new(m).unwrap();
        if rbx::kv::is_kv(s, &h).unwrap() {
            out.push(h);
        }
        let mut p = 0;
        loop {
            if p == slots.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] < vals.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// A random pre-Lie algebra with a KV structure on it, nonzero whenever the
/// small integer grid contains one.
pub fn random_kv(r: &mut impl Rng, max_dim: usize) -> (rbx::kv::KvSetting, rbx::kv::SymTensor) {
    let a = random_prelie(r, max_dim);
    let s = rbx::kv::KvSetting::new(a).unwrap();
    let all = enumerate_kv(&s, -1..=1);
    let nonzero: Vec<_> = all.iter().filter(|h| !h.matrix().is_zero()).cloned().collect();
    let h = nonzero.choose(r).or_else(|| all.first()).cloned().expect("zero tensor is KV");
    (s, h)
}

pub fn random_sym_tensor(r: &mut impl Rng, n: usize) -> rbx::kv::SymTensor {
    rbx::kv::SymTensor::new(random_symmetric(r, n, -2, 2)).unwrap()
}
