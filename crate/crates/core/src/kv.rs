//! Koszul-Vinberg structures `H ∈ Sym²(A)` on a pre-Lie algebra `A`.
//!
//! `H♯: A* → A` is treated as an operator on the pair `(A^c; L)`, where `A^c`
//! is the sub-adjacent Lie algebra and `⟨L_x ξ, y⟩ = −⟨ξ, x∗y⟩`. Everything is
//! over a point, so every anchor term of the general algebroid formulas is
//! zero and omitted.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combinat::combinations;
use crate::deform::{gauge_transform, is_deformation, order_residuals, DeformationSeries, GaugeSeries};
use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, cohomology_dim, is_zero_vec, ratio, zero_vec, QMatrix, Rational};
use crate::liealg::{space_dim, unit, Cochain, LieRepPair, Representation};
use crate::prelie::{validate_prelie, PreLieAlgebra};
use crate::rbcx::{dt_matrix, graded_bracket, is_relative_rb, DegreeCohomology, RbOperator};

/// Symmetric 2-tensor on `A*`; `h[(i,j)] = H(ε_i, ε_j)`, so `h` is also the
/// matrix of `H♯`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    h: QMatrix,
}

impl SymTensor {
    pub fn new(h: QMatrix) -> Result<Self> {
        if !h.is_symmetric() {
            return input("tensor is not a symmetric square matrix");
        }
        Ok(Self { h })
    }

    pub fn zero(n: usize) -> Self {
        Self { h: QMatrix::zeros(n, n) }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn sharp(&self, alpha: &[Rational]) -> Vec<Rational> {
        self.h.mul_vec(alpha)
    }

    pub fn as_kv_cochain(&self) -> KvCochain {
        let n = self.dim();
        KvCochain::from_fn(n, 2, |first, last| self.h[(first[0], last)].clone())
    }
}

/// Symmetric bilinear form on `A`; `b[(i,j)] = 𝔅(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm {
    b: QMatrix,
}

impl SymForm {
    pub fn new(b: QMatrix) -> Result<Self> {
        if !b.is_symmetric() {
            return input("form is not a symmetric square matrix");
        }
        Ok(Self { b })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.b
    }

    pub fn as_cochain(&self) -> KvCochain {
        KvCochain::from_fn(self.b.rows(), 2, |first, last| self.b[(first[0], last)].clone())
    }
}

/// Scalar multilinear map of `k` vector arguments, skew in the first `k−1`
/// and arbitrary in the last: an element of `Λ^{k−1}V ⊗ V` for the dual
/// space `V`. With `V = A` these are the KV cochains on `A*`; with `V = A*`
/// they are the scalar cochains of a pre-Lie algebra on `A`.
///
/// The value on `(ε_I; ε_l)` is stored at `rank(I)*dim + l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KvCochain {
    dim: usize,
    degree: usize,
    values: Vec<Rational>,
}

impl KvCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree >= 1, "KV cochains start in degree 1");
        Self { dim, degree, values: zero_vec(kv_dim(dim, degree)) }
    }

    pub fn from_values(dim: usize, degree: usize, values: Vec<Rational>) -> Result<Self> {
        if degree == 0 {
            return input("KV cochains start in degree 1");
        }
        if values.len() != kv_dim(dim, degree) {
            return input(format!("degree-{degree} cochain on dim {dim} needs {} values", kv_dim(dim, degree)));
        }
        Ok(Self { dim, degree, values })
    }

    pub fn basis(dim: usize, degree: usize, idx: usize) -> Self {
        let mut c = Self::zero(dim, degree);
        c.values[idx] = Rational::one();
        c
    }

    pub fn from_fn<F>(dim: usize, degree: usize, f: F) -> Self
    where
        F: Fn(&[usize], usize) -> Rational,
    {
        let mut values = Vec::with_capacity(kv_dim(dim, degree));
        for first in combinations(dim, degree - 1) {
            for l in 0..dim {
                values.push(f(&first, l));
            }
        }
        Self { dim, degree, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(), ..*self }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { values: self.values.iter().map(|x| x * s).collect(), ..*self }
    }

    /// Value on basis vectors, `first` in any order.
    pub fn eval_basis(&self, first: &[usize], last: usize) -> Rational {
        match crate::combinat::sort_with_sign(first) {
            None => Rational::zero(),
            Some((sorted, s)) => {
                let v = &self.values[crate::combinat::comb_rank(&sorted, self.dim) * self.dim + last];
                if s > 0 {
                    v.clone()
                } else {
                    -v.clone()
                }
            }
        }
    }

    /// Value with vector arguments in the first slot and the last slot.
    pub fn eval_vecs(&self, first0: &[Rational], rest: &[usize], last: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        let mut idx = Vec::with_capacity(self.degree - 1);
        for (i, a) in first0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            idx.clear();
            idx.push(i);
            idx.extend_from_slice(rest);
            for (l, b) in last.iter().enumerate() {
                if !b.is_zero() {
                    acc += a * b * self.eval_basis(&idx, l);
                }
            }
        }
        acc
    }

    pub fn eval_last_vec(&self, first: &[usize], last: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (l, b) in last.iter().enumerate() {
            if !b.is_zero() {
                acc += b * self.eval_basis(first, l);
            }
        }
        acc
    }
}

/// `dim Λ^{k−1}V ⊗ V`
pub fn kv_dim(dim: usize, degree: usize) -> usize {
    if degree == 0 {
        0
    } else {
        space_dim(dim, dim, degree - 1)
    }
}

/// Matrices of `L_x` on `A*` for the basis `x = e_i`.
pub fn left_dual_rep(a: &PreLieAlgebra) -> Result<Representation> {
    if !validate_prelie(a).is_empty() {
        return Err(Error::Precondition("product is not left-symmetric".into()));
    }
    Ok(left_dual_unchecked(a))
}

fn left_dual_unchecked(a: &PreLieAlgebra) -> Representation {
    let n = a.dim();
    Representation::new(n, (0..n).map(|i| -&a.left_matrix(i).transpose()).collect()).expect("square")
}

/// Matrices of `R_x` on `A*`, `⟨R_x ξ, y⟩ = −⟨ξ, y∗x⟩`.
pub fn right_dual_matrices(a: &PreLieAlgebra) -> Vec<QMatrix> {
    (0..a.dim()).map(|i| -&a.right_matrix(i).transpose()).collect()
}

/// A pre-Lie algebra together with the pair `(A^c; L)`.
#[derive(Debug, Clone)]
pub struct KvSetting {
    algebra: PreLieAlgebra,
    pair: Arc<LieRepPair>,
    right: Vec<QMatrix>,
}

impl KvSetting {
    pub fn new(algebra: PreLieAlgebra) -> Result<Self> {
        let rep = left_dual_rep(&algebra)?;
        let pair = Arc::new(LieRepPair::new(algebra.sub_adjacent(), rep)?);
        let right = right_dual_matrices(&algebra);
        Ok(Self { algebra, pair, right })
    }

    pub fn algebra(&self) -> &PreLieAlgebra {
        &self.algebra
    }

    pub fn pair(&self) -> &Arc<LieRepPair> {
        &self.pair
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `H♯` as an operator `A* → A` on `(A^c; L)`.
    pub fn sharp(&self, h: &SymTensor) -> Result<RbOperator> {
        RbOperator::new(self.pair.clone(), h.h.clone())
    }

    fn check(&self, h: &SymTensor) -> Result<()> {
        if h.dim() != self.dim() {
            return input(format!("tensor has dimension {}, algebra has {}", h.dim(), self.dim()));
        }
        Ok(())
    }

    fn check_cochain(&self, c: &KvCochain) -> Result<()> {
        if c.dim != self.dim() {
            return input(format!("cochain has dimension {}, algebra has {}", c.dim, self.dim()));
        }
        Ok(())
    }
}

/// `[H,H](α1,α2,α3) = ⟨α1, H♯α2 ∗ H♯α3⟩ − ⟨α2, H♯α1 ∗ H♯α3⟩ − ⟨α3, [H♯α1, H♯α2]⟩`
pub fn hh_bracket(s: &KvSetting, h: &SymTensor) -> Result<KvCochain> {
    s.check(h)?;
    let a = &s.algebra;
    let n = s.dim();
    let hs = |i: usize| h.h.column(i);
    Ok(KvCochain::from_fn(n, 3, |first, l| {
        let (i, j) = (first[0], first[1]);
        let t1 = a.product(&hs(j), &hs(l))[i].clone();
        let t2 = a.product(&hs(i), &hs(l))[j].clone();
        let mut br = a.product(&hs(i), &hs(j));
        axpy(&mut br, &-Rational::one(), &a.product(&hs(j), &hs(i)));
        t1 - t2 - br[l].clone()
    }))
}

pub fn is_kv(s: &KvSetting, h: &SymTensor) -> Result<bool> {
    Ok(hh_bracket(s, h)?.is_zero())
}

fn require_kv(s: &KvSetting, h: &SymTensor) -> Result<()> {
    if is_kv(s, h)? {
        Ok(())
    } else {
        Err(Error::Precondition("tensor is not a Koszul-Vinberg structure".into()))
    }
}

/// `[α, β]_{H♯} = L_{H♯α}β − L_{H♯β}α` on `A*`, for any symmetric `H`.
pub fn dual_bracket(s: &KvSetting, h: &SymTensor, alpha: &[Rational], beta: &[Rational]) -> Vec<Rational> {
    let rep = &s.pair.rep;
    let mut v = rep.apply(&h.sharp(alpha), beta);
    axpy(&mut v, &-Rational::one(), &rep.apply(&h.sharp(beta), alpha));
    v
}

/// `H♯[α,β]_{H♯} − [H♯α, H♯β]` as a KV 3-cochain (its pairing with a third
/// covector in the last slot).
pub fn sharp_bracket_residual(s: &KvSetting, h: &SymTensor) -> Result<KvCochain> {
    s.check(h)?;
    let n = s.dim();
    Ok(KvCochain::from_fn(n, 3, |first, l| {
        let (ei, ej) = (unit(n, first[0]), unit(n, first[1]));
        let mut v = h.sharp(&dual_bracket(s, h, &ei, &ej));
        axpy(&mut v, &-Rational::one(), &s.pair.algebra.bracket(&h.sharp(&ei), &h.sharp(&ej)));
        v[l].clone()
    }))
}

/// `α ∗_{H♯} β = 𝓛_{H♯α}β − R_{H♯β}α` with `𝓛_x = L_x − R_x`.
pub fn induced_dual_prelie(s: &KvSetting, h: &SymTensor) -> Result<PreLieAlgebra> {
    require_kv(s, h)?;
    let n = s.dim();
    let right = |x: &[Rational]| {
        let mut m = QMatrix::zeros(n, n);
        for (xi, ri) in x.iter().zip(&s.right) {
            if !xi.is_zero() {
                m = &m + &ri.scale(xi);
            }
        }
        m
    };
    let mut a = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let hi = h.h.column(i);
            let hj = h.h.column(j);
            let lie_derivative = &s.pair.rep.action(&hi) - &right(&hi);
            let mut v = lie_derivative.column(j);
            axpy(&mut v, &-Rational::one(), &right(&hj).column(i));
            a.extend(v);
        }
    }
    PreLieAlgebra::new(n, a)
}

/// `α ·_{H♯} β = L_{H♯α} β`
pub fn induced_dual_prelie_left(s: &KvSetting, h: &SymTensor) -> Result<PreLieAlgebra> {
    require_kv(s, h)?;
    crate::prelie::induced_prelie(&s.sharp(h)?)
}

/// `H♯(α ∗_{H♯} β) − H♯α ∗ H♯β` on basis pairs, flattened `(i*n + j)*n + k`.
pub fn dual_homomorphism_residual(s: &KvSetting, h: &SymTensor) -> Result<Vec<Rational>> {
    let dual = induced_dual_prelie(s, h)?;
    let n = s.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = h.sharp(dual.product_basis(i, j));
            axpy(&mut v, &-Rational::one(), &s.algebra.product(&h.h.column(i), &h.h.column(j)));
            out.extend(v);
        }
    }
    Ok(out)
}

/// `⟨Ψ(φ)(α_1..α_k), α_{k+1}⟩ = φ(α_1..α_k; α_{k+1})`
pub fn psi(phi: &KvCochain) -> Cochain {
    let n = phi.dim;
    Cochain::from_fn(n, n, phi.degree - 1, |first| (0..n).map(|l| phi.eval_basis(first, l)).collect())
}

/// Inverse of [`psi`].
pub fn upsilon(p: &Cochain) -> Result<KvCochain> {
    if p.src_dim() != p.tgt_dim() {
        return input("Υ needs cochains A* → A");
    }
    Ok(KvCochain::from_fn(p.src_dim(), p.degree() + 1, |first, l| p.eval_basis(first)[l].clone()))
}

/// `⟦φ, ψ⟧_KV = Υ⟦Ψφ, Ψψ⟧`
pub fn kv_bracket(s: &KvSetting, phi: &KvCochain, chi: &KvCochain) -> Result<KvCochain> {
    s.check_cochain(phi)?;
    s.check_cochain(chi)?;
    upsilon(&graded_bracket(&s.pair, &psi(phi), &psi(chi))?)
}

/// `δ_{A*} φ = (−1)^{k−1} ⟦H, φ⟧_KV`
pub fn delta_dual_apply(s: &KvSetting, h: &SymTensor, phi: &KvCochain) -> Result<KvCochain> {
    let b = kv_bracket(s, &h.as_kv_cochain(), phi)?;
    Ok(if phi.degree % 2 == 1 { b } else { b.scale(&-Rational::one()) })
}

/// Matrix of `δ_{A*}: C^k_KV → C^{k+1}_KV`.
pub fn delta_dual_matrix(s: &KvSetting, h: &SymTensor, k: usize) -> Result<QMatrix> {
    require_kv(s, h)?;
    let n = s.dim();
    if k == 0 || k > n + 1 {
        return input(format!("KV degree must lie in 1..={}", n + 1));
    }
    Ok(QMatrix::from_column_fn(kv_dim(n, k + 1), kv_dim(n, k), |c| {
        delta_dual_apply(s, h, &KvCochain::basis(n, k, c)).expect("same setting").into_values()
    }))
}

/// Matrix of `Ψ: C^k_KV → C^{k−1}(A*, A)`.
pub fn psi_matrix(n: usize, k: usize) -> QMatrix {
    QMatrix::from_column_fn(space_dim(n, n, k - 1), kv_dim(n, k), |c| psi(&KvCochain::basis(n, k, c)).into_values())
}

/// Scalar pre-Lie coboundary `δ_A φ(x_1..x_{n+1})
/// = −Σ_{i≤n} (−1)^{i+1} φ(..x̂_i.., x_i∗x_{n+1}) + Σ_{i<j≤n} (−1)^{i+j} φ([x_i,x_j], ..)`.
pub fn delta_scalar_apply(a: &PreLieAlgebra, phi: &KvCochain) -> Result<KvCochain> {
    if phi.dim != a.dim() {
        return input("cochain and algebra dimensions differ");
    }
    let n = phi.degree;
    let dim = a.dim();
    let sign = |e: usize| if e % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(KvCochain::from_fn(dim, n + 1, |x, last| {
        let mut acc = Rational::zero();
        let mut rest = Vec::with_capacity(n);
        for i in 0..n {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &v)| v));
            acc -= sign(i) * phi.eval_last_vec(&rest, a.product_basis(x[i], last));
        }
        for i in 0..n {
            for j in i + 1..n {
                rest.clear();
                rest.extend(x.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &v)| v));
                let mut br = a.product_basis(x[i], x[j]).to_vec();
                axpy(&mut br, &-Rational::one(), a.product_basis(x[j], x[i]));
                acc += sign(i + j) * phi.eval_vecs(&br, &rest, &unit(dim, last));
            }
        }
        acc
    }))
}

/// Matrix of `δ_A: C^n(A) → C^{n+1}(A)`.
pub fn delta_scalar_matrix(a: &PreLieAlgebra, n: usize) -> Result<QMatrix> {
    if !validate_prelie(a).is_empty() {
        return Err(Error::Precondition("product is not left-symmetric".into()));
    }
    let dim = a.dim();
    if n == 0 || n > dim + 1 {
        return input(format!("degree must lie in 1..={}", dim + 1));
    }
    Ok(QMatrix::from_column_fn(kv_dim(dim, n + 1), kv_dim(dim, n), |c| {
        delta_scalar_apply(a, &KvCochain::basis(dim, n, c)).expect("same algebra").into_values()
    }))
}

/// Nondegenerate and `δ_A 𝔅 = 0`.
pub fn pseudo_hessian_check(a: &PreLieAlgebra, b: &SymForm) -> Result<bool> {
    if b.b.rows() != a.dim() {
        return input("form and algebra dimensions differ");
    }
    if b.b.determinant()?.is_zero() {
        return Ok(false);
    }
    Ok(delta_scalar_apply(a, &b.as_cochain())?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCorrespondence {
    pub is_kv: bool,
    pub inverse_closed: bool,
}

impl InverseCorrespondence {
    pub fn agrees(&self) -> bool {
        self.is_kv == self.inverse_closed
    }
}

/// Evaluates `[H,H] = 0` and `δ_A(H^{−1}) = 0` independently.
pub fn inverse_correspondence_check(s: &KvSetting, h: &SymTensor) -> Result<InverseCorrespondence> {
    s.check(h)?;
    let inv = match h.h.inverse() {
        Ok(m) => m,
        Err(_) => return Err(Error::Precondition("tensor is degenerate".into())),
    };
    let form = SymForm::new(inv)?;
    Ok(InverseCorrespondence {
        is_kv: is_kv(s, h)?,
        inverse_closed: delta_scalar_apply(&s.algebra, &form.as_cochain())?.is_zero(),
    })
}

/// Basis (as columns) of the restricted space `C̃^k_KV`.
pub fn restricted_basis(s: &KvSetting, h: &SymTensor, k: usize) -> Result<QMatrix> {
    let n = s.dim();
    let full = kv_dim(n, k);
    let constraints: Vec<Vec<Rational>> = match k {
        1 => {
            // R_x^T h − h R_x = 0, one row per matrix entry
            let mut rows = vec![zero_vec(n); n * n];
            for (xi, r) in s.right.iter().enumerate() {
                let m = &(&r.transpose() * &h.h) - &(&h.h * r);
                for (e, v) in m.entries().iter().enumerate() {
                    rows[e][xi] = v.clone();
                }
            }
            rows
        }
        2 => {
            let mut rows = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = zero_vec(full);
                    r[i * n + j] = Rational::one();
                    r[j * n + i] = -Rational::one();
                    rows.push(r);
                }
            }
            rows
        }
        3 => {
            let mut rows = Vec::new();
            let idx = |f: [usize; 2], l: usize| -> Option<(usize, i32)> {
                let (sorted, s) = crate::combinat::sort_with_sign(&f)?;
                Some((crate::combinat::comb_rank(&sorted, n) * n + l, s))
            };
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let mut r = zero_vec(full);
                        for (f, l) in [([a, b], c), ([c, a], b), ([b, c], a)] {
                            if let Some((p, sg)) = idx(f, l) {
                                r[p] += Rational::from_integer(sg.into());
                            }
                        }
                        if !is_zero_vec(&r) {
                            rows.push(r);
                        }
                    }
                }
            }
            rows
        }
        _ => Vec::new(),
    };
    if constraints.is_empty() {
        return Ok(QMatrix::identity(full));
    }
    let m = QMatrix::from_rows(&constraints)?;
    Ok(QMatrix::from_columns(full, &m.kernel_basis())?)
}

/// Cyclic sum `φ(1,2,3) + φ(3,1,2) + φ(2,3,1)` of a degree-3 cochain is zero.
pub fn cyclic_sum_vanishes(phi: &KvCochain) -> bool {
    let n = phi.dim;
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                (phi.eval_basis(&[a, b], c) + phi.eval_basis(&[c, a], b) + phi.eval_basis(&[b, c], a)).is_zero()
            })
        })
    })
}

/// `δ` restricted to `C̃^k → C̃^{k+1}` in basis coordinates.
fn restricted_delta(s: &KvSetting, h: &SymTensor, k: usize) -> Result<QMatrix> {
    let src = restricted_basis(s, h, k)?;
    let tgt = restricted_basis(s, h, k + 1)?;
    let image = &delta_dual_matrix(s, h, k)? * &src;
    let cols: Result<Vec<Vec<Rational>>> = (0..image.cols())
        .map(|c| {
            tgt.solve(&image.column(c))?.ok_or_else(|| {
                Error::Precondition(format!("δ does not map the restricted space in degree {k} into degree {}", k + 1))
            })
        })
        .collect();
    Ok(QMatrix::from_columns(tgt.cols(), &cols?)?)
}

/// `H^k_KV`, or its restricted version on `C̃*`.
pub fn kv_cohomology(s: &KvSetting, h: &SymTensor, k: usize, restricted: bool) -> Result<DegreeCohomology<KvCochain>> {
    require_kv(s, h)?;
    let n = s.dim();
    if k == 0 || k > n + 1 {
        return input(format!("KV degree must lie in 1..={}", n + 1));
    }
    let (d_out, d_in, basis) = if restricted {
        let basis = restricted_basis(s, h, k)?;
        let d_in = if k == 1 { QMatrix::zeros(basis.cols(), 0) } else { restricted_delta(s, h, k - 1)? };
        (restricted_delta(s, h, k)?, d_in, Some(basis))
    } else {
        let d_in = if k == 1 { QMatrix::zeros(kv_dim(n, 1), 0) } else { delta_dual_matrix(s, h, k - 1)? };
        (delta_dual_matrix(s, h, k)?, d_in, None)
    };
    let raw = cohomology_dim(&d_out, &d_in)?;
    let representatives = raw
        .representatives
        .iter()
        .map(|v| {
            let full = match &basis {
                Some(b) => b.mul_vec(v),
                None => v.clone(),
            };
            KvCochain::from_values(n, k, full).expect("sized")
        })
        .collect();
    Ok(DegreeCohomology { degree: k, dim: raw.dim, representatives, raw })
}

fn sharp_series(s: &KvSetting, h: &SymTensor, terms: &[SymTensor]) -> Result<DeformationSeries> {
    s.check(h)?;
    for t in terms {
        s.check(t)?;
    }
    DeformationSeries::new(s.sharp(h)?, terms.iter().map(|t| t.h.clone()).collect())
}

/// Whether `H + ℋ₁t + … + ℋₙtⁿ` is KV modulo `t^{n+1}`.
pub fn is_kv_deformation(s: &KvSetting, h: &SymTensor, terms: &[SymTensor]) -> Result<bool> {
    require_kv(s, h)?;
    Ok(is_deformation(&sharp_series(s, h, terms)?))
}

#[derive(Debug, Clone)]
pub struct KvObstruction {
    pub theta: KvCochain,
    pub cyclic_sum_zero: bool,
    pub closed: bool,
}

/// `Θ = ½ Σ_{i+j=n+1, i,j≥1} ⟦ℋ_i, ℋ_j⟧_KV`
pub fn kv_obstruction(s: &KvSetting, h: &SymTensor, terms: &[SymTensor]) -> Result<KvObstruction> {
    require_kv(s, h)?;
    let series = sharp_series(s, h, terms)?;
    if let Some(k) = order_residuals(&series).iter().position(|r| !r.is_zero()) {
        return Err(Error::Precondition(format!("not an order-{} KV deformation: residual at t^{}", terms.len(), k + 1)));
    }
    let n = terms.len();
    let mut theta = KvCochain::zero(s.dim(), 3);
    for i in 1..=n {
        let j = n + 1 - i;
        if j == 0 || j > n {
            continue;
        }
        theta = theta.add(&kv_bracket(s, &terms[i - 1].as_kv_cochain(), &terms[j - 1].as_kv_cochain())?);
    }
    let theta = theta.scale(&ratio(1, 2));
    let closed = delta_dual_apply(s, h, &theta)?.is_zero();
    Ok(KvObstruction { cyclic_sum_zero: cyclic_sum_vanishes(&theta), closed, theta })
}

/// A symmetric `ℋ_{n+1}` with `δ_{A*} ℋ_{n+1} = Θ`, searched only inside
/// `Sym²(A)`; `None` when no symmetric solution exists.
pub fn kv_extend(s: &KvSetting, h: &SymTensor, terms: &[SymTensor]) -> Result<Option<SymTensor>> {
    let obs = kv_obstruction(s, h, terms)?;
    let sym = restricted_basis(s, h, 2)?;
    let system = &delta_dual_matrix(s, h, 2)? * &sym;
    let Some(y) = system.solve(obs.theta.values())? else {
        return Ok(None);
    };
    let n = s.dim();
    let flat = sym.mul_vec(&y);
    let next = SymTensor::new(QMatrix::new(n, n, flat)?)?;
    let mut extended = terms.to_vec();
    extended.push(next.clone());
    assert!(is_deformation(&sharp_series(s, h, &extended)?), "KV extension leaves a nonzero residual");
    Ok(Some(next))
}

/// `exp(ad_𝒳)` with the KV bracket, computed through `Ψ`. The returned
/// coefficient matrices `ℋ'_1..ℋ'_n` are symmetric only when the gauge terms
/// lie in `C̃¹`.
pub fn kv_gauge_transform(s: &KvSetting, h: &SymTensor, terms: &[SymTensor], x: &GaugeSeries) -> Result<Vec<QMatrix>> {
    let series = sharp_series(s, h, terms)?;
    Ok(gauge_transform(&series, x)?.terms().to_vec())
}

/// `δ_{A*}` on the KV side equals the conjugate of `d_{H♯}` under `Ψ`.
pub fn delta_dual_via_sharp(s: &KvSetting, h: &SymTensor, k: usize) -> Result<QMatrix> {
    let n = s.dim();
    let d = dt_matrix(&s.sharp(h)?, k - 1)?;
    let psi_in = psi_matrix(n, k);
    let psi_out = psi_matrix(n, k + 1);
    Ok(&(&psi_out.inverse()? * &d) * &psi_in)
}

/// Whether `H♯` is a relative Rota-Baxter operator on `(A^c; L)`.
pub fn sharp_is_rb(s: &KvSetting, h: &SymTensor) -> Result<bool> {
    s.check(h)?;
    Ok(is_relative_rb(&s.sharp(h)?))
}
