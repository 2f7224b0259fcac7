//! Left-symmetric (pre-Lie) algebras, multiderivations with the
//! Matsushima-Nijenhuis bracket, the deformation complex and the map Φ from
//! `C*(E, A)` into multiderivations.

use num_traits::{One, Zero};

use crate::combinat::unshuffles;
use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, cohomology_dim, is_zero_vec, zero_vec, QMatrix, Rational};
use crate::liealg::{space_dim, Cochain, LieAlgebra, LieRepPair, Violation};
use crate::rbcx::{incoming, is_relative_rb, DegreeCohomology, RbOperator};

/// Product constants `a[(i*n + j)*n + k]`, the coefficient of `e_k` in
/// `e_i ∗ e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieAlgebra {
    dim: usize,
    a: Vec<Rational>,
}

impl PreLieAlgebra {
    pub fn new(dim: usize, a: Vec<Rational>) -> Result<Self> {
        if a.len() != dim * dim * dim {
            return input(format!("{} product constants for dimension {dim}", a.len()));
        }
        Ok(Self { dim, a })
    }

    pub fn from_table(table: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let n = table.len();
        let mut a = Vec::with_capacity(n * n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return input(format!("product[{i}] has length {}, expected {n}", row.len()));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return input(format!("product[{i}][{j}] has length {}, expected {n}", v.len()));
                }
                a.extend_from_slice(v);
            }
        }
        Self::new(n, a)
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, a: zero_vec(dim * dim * dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Rational] {
        &self.a
    }

    pub fn table(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.product_basis(i, j).to_vec()).collect()).collect()
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim;
        &self.a[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                axpy(&mut out, &(xi * yj), self.product_basis(i, j));
            }
        }
        out
    }

    /// Matrix of left multiplication `y ↦ e_i ∗ y`.
    pub fn left_matrix(&self, i: usize) -> QMatrix {
        QMatrix::from_column_fn(self.dim, self.dim, |j| self.product_basis(i, j).to_vec())
    }

    /// Matrix of right multiplication `y ↦ y ∗ e_i`.
    pub fn right_matrix(&self, i: usize) -> QMatrix {
        QMatrix::from_column_fn(self.dim, self.dim, |j| self.product_basis(j, i).to_vec())
    }

    /// `[x, y] = x∗y − y∗x`
    pub fn sub_adjacent(&self) -> LieAlgebra {
        let n = self.dim;
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                c.extend(self.product_basis(i, j).iter().zip(self.product_basis(j, i)).map(|(a, b)| a - b));
            }
        }
        LieAlgebra::new(n, c).expect("sized")
    }

    pub fn as_multiderivation(&self) -> Multiderivation {
        Multiderivation { dim: self.dim, inner: Cochain::from_values(self.dim, self.dim * self.dim, 1, self.a.clone()).expect("sized") }
    }

    pub fn from_multiderivation(d: &Multiderivation) -> Result<Self> {
        if d.degree() != 1 {
            return input("a product is a multiderivation of degree 1");
        }
        Self::new(d.dim, d.inner.values().to_vec())
    }
}

fn associator(a: &PreLieAlgebra, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let n = a.dim;
    let unit = |l: usize| crate::liealg::unit(n, l);
    let mut r = a.product(&unit(i), a.product_basis(j, k));
    axpy(&mut r, &-Rational::one(), &a.product(a.product_basis(i, j), &unit(k)));
    r
}

/// Lists triples where `(x,y,z) = (y,x,z)` fails for the associator
/// `(x,y,z) = x∗(y∗z) − (x∗y)∗z`.
pub fn validate_prelie(a: &PreLieAlgebra) -> Vec<Violation> {
    let n = a.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut r = associator(a, i, j, k);
                axpy(&mut r, &-Rational::one(), &associator(a, j, i, k));
                if !is_zero_vec(&r) {
                    out.push(Violation { kind: "left-symmetry", indices: vec![i, j, k], residual: r });
                }
            }
        }
    }
    out
}

fn require_prelie(a: &PreLieAlgebra) -> Result<()> {
    if validate_prelie(a).is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition("product is not left-symmetric".into()))
    }
}

/// An element of `Der^n(E) = Hom(Λ^n E ⊗ E, E)` over a point: skew in the
/// first `n` slots, arbitrary in the last. Stored as a cochain with values
/// in `Hom(E, E)`, so the value `D(e_I, e_l)` sits at
/// `(rank(I)*dim + l)*dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiderivation {
    dim: usize,
    inner: Cochain,
}

impl Multiderivation {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, inner: Cochain::zero(dim, dim * dim, degree) }
    }

    pub fn from_values(dim: usize, degree: usize, values: Vec<Rational>) -> Result<Self> {
        Ok(Self { dim, inner: Cochain::from_values(dim, dim * dim, degree, values)? })
    }

    pub fn basis(dim: usize, degree: usize, idx: usize) -> Self {
        Self { dim, inner: Cochain::basis(dim, dim * dim, degree, idx) }
    }

    /// Tabulates `f(first, last)` on increasing `first` tuples.
    pub fn from_fn<F>(dim: usize, degree: usize, f: F) -> Self
    where
        F: Fn(&[usize], usize) -> Vec<Rational>,
    {
        let inner = Cochain::from_fn(dim, dim * dim, degree, |first| {
            let mut block = Vec::with_capacity(dim * dim);
            for l in 0..dim {
                block.extend(f(first, l));
            }
            block
        });
        Self { dim, inner }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.inner.degree()
    }

    pub fn values(&self) -> &[Rational] {
        self.inner.values()
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.inner.into_values()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { dim: self.dim, inner: self.inner.add(&other.inner) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { dim: self.dim, inner: self.inner.sub(&other.inner) }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { dim: self.dim, inner: self.inner.scale(s) }
    }

    /// `D(e_{first…}, e_last)` with `first` in any order.
    pub fn eval_basis(&self, first: &[usize], last: usize) -> Vec<Rational> {
        let block = self.inner.eval_basis(first);
        block[last * self.dim..(last + 1) * self.dim].to_vec()
    }

    /// `D(w, e_rest…, e_last)`
    pub fn eval_first_vec(&self, w: &[Rational], rest: &[usize], last: usize) -> Vec<Rational> {
        let block = self.inner.eval_first_vec(w, rest);
        block[last * self.dim..(last + 1) * self.dim].to_vec()
    }

    /// `D(e_first…, w)`
    pub fn eval_last_vec(&self, first: &[usize], w: &[Rational]) -> Vec<Rational> {
        let block = self.inner.eval_basis(first);
        let mut out = zero_vec(self.dim);
        for (l, wl) in w.iter().enumerate() {
            axpy(&mut out, wl, &block[l * self.dim..(l + 1) * self.dim]);
        }
        out
    }
}

fn check_same(d1: &Multiderivation, d2: &Multiderivation) -> Result<()> {
    if d1.dim != d2.dim {
        return input(format!("multiderivations on spaces of dimension {} and {}", d1.dim, d2.dim));
    }
    Ok(())
}

/// `(D1 ∘ D2)(u_1..u_{m+n}, u_last)` on basis vectors in any order.
pub fn mn_compose_at(d1: &Multiderivation, d2: &Multiderivation, first: &[usize], last: usize) -> Vec<Rational> {
    let (m, n) = (d1.degree(), d2.degree());
    assert_eq!(first.len(), m + n);
    let (im, inn) = (m as isize, n as isize);
    let mut out = zero_vec(d1.dim);
    let mut args = Vec::with_capacity(m + n);
    for (sigma, s) in unshuffles(&[inn, 1, im - 1]) {
        args.clear();
        args.extend(sigma.iter().map(|&i| first[i]));
        let v = d2.eval_basis(&args[..n], args[n]);
        axpy(&mut out, &Rational::from_integer(s.into()), &d1.eval_first_vec(&v, &args[n + 1..], last));
    }
    let mn_even = (m * n) % 2 == 0;
    for (sigma, s) in unshuffles(&[im, inn]) {
        args.clear();
        args.extend(sigma.iter().map(|&i| first[i]));
        let w = d2.eval_basis(&args[m..], last);
        let c = if mn_even { s } else { -s };
        axpy(&mut out, &Rational::from_integer(c.into()), &d1.eval_last_vec(&args[..m], &w));
    }
    out
}

/// `[D1, D2]_MN = D1∘D2 − (−1)^{mn} D2∘D1`
pub fn mn_bracket(d1: &Multiderivation, d2: &Multiderivation) -> Result<Multiderivation> {
    check_same(d1, d2)?;
    let (m, n) = (d1.degree(), d2.degree());
    let dim = d1.dim;
    if m + n > dim {
        return Ok(Multiderivation::zero(dim, m + n));
    }
    let mn_even = (m * n) % 2 == 0;
    Ok(Multiderivation::from_fn(dim, m + n, |first, last| {
        let mut v = mn_compose_at(d1, d2, first, last);
        let w = mn_compose_at(d2, d1, first, last);
        let c = if mn_even { -Rational::one() } else { Rational::one() };
        axpy(&mut v, &c, &w);
        v
    }))
}

/// `d_def D = (−1)^{n−1} [π, D]` for `D ∈ Der^{n−1}`.
pub fn ddef_apply(pi: &PreLieAlgebra, d: &Multiderivation) -> Result<Multiderivation> {
    let b = mn_bracket(&pi.as_multiderivation(), d)?;
    Ok(if d.degree() % 2 == 0 { b } else { b.scale(&-Rational::one()) })
}

/// `d_def D` from its four-sum expansion.
pub fn ddef_apply_explicit(pi: &PreLieAlgebra, d: &Multiderivation) -> Result<Multiderivation> {
    if pi.dim != d.dim {
        return input("product and multiderivation live on different spaces");
    }
    let n = d.degree() + 1;
    let dim = pi.dim;
    let sign = |e: usize| if e % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(Multiderivation::from_fn(dim, n, |u, last| {
        // u = (u_1..u_n), last = u_{n+1}
        let mut out = zero_vec(dim);
        let mut rest = Vec::with_capacity(n);
        for i in 0..n {
            rest.clear();
            rest.extend(u.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &v)| v));
            let s = sign(i);
            let dv = d.eval_basis(&rest, last);
            axpy(&mut out, &s, &pi.product(&crate::liealg::unit(dim, u[i]), &dv));
            let dv = d.eval_basis(&rest, u[i]);
            axpy(&mut out, &s, &pi.product(&dv, &crate::liealg::unit(dim, last)));
            let p = pi.product_basis(u[i], last);
            axpy(&mut out, &-s, &d.eval_last_vec(&rest, p));
        }
        for i in 0..n {
            for j in i + 1..n {
                rest.clear();
                rest.extend(u.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &v)| v));
                let mut w = pi.product_basis(u[i], u[j]).to_vec();
                axpy(&mut w, &-Rational::one(), pi.product_basis(u[j], u[i]));
                axpy(&mut out, &sign(i + j), &d.eval_first_vec(&w, &rest, last));
            }
        }
        out
    }))
}

fn der_dim(dim: usize, degree: usize) -> usize {
    space_dim(dim, dim * dim, degree)
}

fn ddef_matrix_with<F>(pi: &PreLieAlgebra, n: usize, apply: F) -> Result<QMatrix>
where
    F: Fn(&PreLieAlgebra, &Multiderivation) -> Result<Multiderivation> + Sync,
{
    require_prelie(pi)?;
    let dim = pi.dim;
    if n == 0 || n > dim + 1 {
        return input(format!("d_def maps Der^(n-1) to Der^n for 1 <= n <= {}, got n = {n}", dim + 1));
    }
    Ok(QMatrix::from_column_fn(der_dim(dim, n), der_dim(dim, n - 1), |c| {
        apply(pi, &Multiderivation::basis(dim, n - 1, c)).expect("same space").into_values()
    }))
}

/// Matrix of `d_def: Der^{n−1} → Der^n`.
pub fn ddef_matrix(pi: &PreLieAlgebra, n: usize) -> Result<QMatrix> {
    ddef_matrix_with(pi, n, ddef_apply)
}

pub fn ddef_matrix_explicit(pi: &PreLieAlgebra, n: usize) -> Result<QMatrix> {
    ddef_matrix_with(pi, n, ddef_apply_explicit)
}

/// `H^k_def`
pub fn def_cohomology(pi: &PreLieAlgebra, k: usize) -> Result<DegreeCohomology<Multiderivation>> {
    let dim = pi.dim;
    let d_out = ddef_matrix(pi, k + 1)?;
    let d_in = incoming(k, der_dim(dim, k), |j| ddef_matrix(pi, j + 1))?;
    let raw = cohomology_dim(&d_out, &d_in)?;
    let representatives =
        raw.representatives.iter().map(|v| Multiderivation::from_values(dim, k, v.clone()).expect("sized")).collect();
    Ok(DegreeCohomology { degree: k, dim: raw.dim, representatives, raw })
}

/// `Φ(P)(u_1..u_k, u_{k+1}) = ρ(P(u_1..u_k)) u_{k+1}`
pub fn phi_map(pair: &LieRepPair, p: &Cochain) -> Result<Multiderivation> {
    if p.src_dim() != pair.dim_e() || p.tgt_dim() != pair.dim_a() {
        return input("cochain does not match the pair");
    }
    let dim = pair.dim_e();
    Ok(Multiderivation::from_fn(dim, p.degree(), |first, last| {
        let x = p.eval_basis(first);
        pair.rep.action(&x).column(last)
    }))
}

/// Matrix of `Φ: C^k(E, A) → Der^k(E)`.
pub fn phi_matrix(pair: &LieRepPair, k: usize) -> QMatrix {
    let (ne, na) = (pair.dim_e(), pair.dim_a());
    QMatrix::from_column_fn(der_dim(ne, k), space_dim(ne, na, k), |c| {
        phi_map(pair, &Cochain::basis(ne, na, k, c)).expect("same pair").into_values()
    })
}

/// `u ∗_T v = ρ(Tu) v`
pub fn induced_prelie(t: &RbOperator) -> Result<PreLieAlgebra> {
    if !is_relative_rb(t) {
        return Err(Error::Precondition("operator is not a relative Rota-Baxter operator".into()));
    }
    PreLieAlgebra::from_multiderivation(&phi_map(t.pair(), &t.as_cochain())?)
}
