//! Finite-dimensional Lie algebras, their representations, alternating
//! cochains and the Chevalley-Eilenberg differential.

use num_traits::{One, Zero};

use crate::combinat::{binomial, comb_rank, combinations, sort_with_sign};
use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, is_zero_vec, zero_vec, QMatrix, Rational};

/// Structure constants `c[(i*n + j)*n + k]`, the coefficient of `e_k` in
/// `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

impl LieAlgebra {
    pub fn new(dim: usize, c: Vec<Rational>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return input(format!("{} structure constants for dimension {dim}", c.len()));
        }
        Ok(Self { dim, c })
    }

    pub fn from_table(table: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let n = table.len();
        let mut c = Vec::with_capacity(n * n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return input(format!("bracket[{i}] has length {}, expected {n}", row.len()));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return input(format!("bracket[{i}][{j}] has length {}, expected {n}", v.len()));
                }
                c.extend_from_slice(v);
            }
        }
        Self::new(n, c)
    }

    pub fn abelian(dim: usize) -> Self {
        Self { dim, c: zero_vec(dim * dim * dim) }
    }

    /// Builds a skew algebra from the brackets `[e_i, e_j]` for `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[((usize, usize), Vec<Rational>)]) -> Self {
        let mut l = Self::abelian(dim);
        for ((i, j), v) in brackets {
            for k in 0..dim {
                l.c[(i * dim + j) * dim + k] = v[k].clone();
                l.c[(j * dim + i) * dim + k] = -v[k].clone();
            }
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Rational] {
        &self.c
    }

    pub fn table(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.bracket_basis(i, j).to_vec()).collect()).collect()
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `ad_{e_i}`; column `j` is `[e_i, e_j]`.
    pub fn ad_matrix(&self, i: usize) -> QMatrix {
        QMatrix::from_columns(self.dim, &(0..self.dim).map(|j| self.bracket_basis(i, j).to_vec()).collect::<Vec<_>>())
            .expect("square")
    }
}

/// A failed axiom on a basis tuple together with its residual vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: &'static str,
    pub indices: Vec<usize>,
    pub residual: Vec<Rational>,
}

/// Checks skew-symmetry on every pair and Jacobi on every triple `i<j<k`.
pub fn validate_lie(l: &LieAlgebra) -> Vec<Violation> {
    let n = l.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let r: Vec<Rational> = l.bracket_basis(i, j).iter().zip(l.bracket_basis(j, i)).map(|(a, b)| a + b).collect();
            if !is_zero_vec(&r) {
                out.push(Violation { kind: "skew", indices: vec![i, j], residual: r });
            }
        }
    }
    let e = |i: usize| unit(n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut r = l.bracket(&e(i), l.bracket_basis(j, k));
                let t2 = l.bracket(&e(j), l.bracket_basis(k, i));
                let t3 = l.bracket(&e(k), l.bracket_basis(i, j));
                axpy(&mut r, &Rational::one(), &t2);
                axpy(&mut r, &Rational::one(), &t3);
                if !is_zero_vec(&r) {
                    out.push(Violation { kind: "jacobi", indices: vec![i, j, k], residual: r });
                }
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

/// One `dim x dim` matrix per basis element of the acting algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    matrices: Vec<QMatrix>,
}

impl Representation {
    pub fn new(dim: usize, matrices: Vec<QMatrix>) -> Result<Self> {
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return input(format!("matrix {i} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols()));
            }
        }
        Ok(Self { dim, matrices })
    }

    pub fn trivial(algebra_dim: usize, dim: usize) -> Self {
        Self { dim, matrices: vec![QMatrix::zeros(dim, dim); algebra_dim] }
    }

    pub fn adjoint(l: &LieAlgebra) -> Self {
        Self { dim: l.dim, matrices: (0..l.dim).map(|i| l.ad_matrix(i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.matrices
    }

    /// `ρ(x)` for an element `x` of the acting algebra.
    pub fn action(&self, x: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (xi, mi) in x.iter().zip(&self.matrices) {
            if !xi.is_zero() {
                m = &m + &mi.scale(xi);
            }
        }
        m
    }

    /// `ρ(x)v`
    pub fn apply(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (xi, mi) in x.iter().zip(&self.matrices) {
            if !xi.is_zero() {
                axpy(&mut out, xi, &mi.mul_vec(v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRepPair {
    pub algebra: LieAlgebra,
    pub rep: Representation,
}

impl LieRepPair {
    pub fn new(algebra: LieAlgebra, rep: Representation) -> Result<Self> {
        if rep.matrices.len() != algebra.dim {
            return input(format!(
                "representation has {} matrices for an algebra of dimension {}",
                rep.matrices.len(),
                algebra.dim
            ));
        }
        Ok(Self { algebra, rep })
    }

    pub fn adjoint(algebra: LieAlgebra) -> Self {
        let rep = Representation::adjoint(&algebra);
        Self { algebra, rep }
    }

    /// Dimension of the algebra.
    pub fn dim_a(&self) -> usize {
        self.algebra.dim
    }

    /// Dimension of the representation space.
    pub fn dim_e(&self) -> usize {
        self.rep.dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepViolation {
    pub i: usize,
    pub j: usize,
    /// `ρ([e_i,e_j]) - [ρ(e_i), ρ(e_j)]`
    pub residual: QMatrix,
}

pub fn validate_rep(p: &LieRepPair) -> Result<Vec<RepViolation>> {
    let n = p.algebra.dim;
    if p.rep.matrices.len() != n {
        return input("representation does not match the algebra dimension");
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = p.rep.action(p.algebra.bracket_basis(i, j));
            let (a, b) = (&p.rep.matrices[i], &p.rep.matrices[j]);
            let comm = &(a * b) - &(b * a);
            let residual = &lhs - &comm;
            if !residual.is_zero() {
                out.push(RepViolation { i, j, residual });
            }
        }
    }
    Ok(out)
}

/// `ρ*(x) = -ρ(x)ᵀ`
pub fn dual_rep(p: &LieRepPair) -> Representation {
    Representation { dim: p.rep.dim, matrices: p.rep.matrices.iter().map(|m| -&m.transpose()).collect() }
}

/// Alternating multilinear map `Λ^degree S → T` with `S = ℚ^src_dim` and
/// `T = ℚ^tgt_dim`, stored on increasing tuples: the value on tuple number
/// `r` occupies `values[r*tgt_dim .. (r+1)*tgt_dim]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    src_dim: usize,
    tgt_dim: usize,
    degree: usize,
    values: Vec<Rational>,
}

impl Cochain {
    pub fn zero(src_dim: usize, tgt_dim: usize, degree: usize) -> Self {
        Self { src_dim, tgt_dim, degree, values: zero_vec(space_dim(src_dim, tgt_dim, degree)) }
    }

    pub fn from_values(src_dim: usize, tgt_dim: usize, degree: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space_dim(src_dim, tgt_dim, degree) {
            return input(format!(
                "cochain of degree {degree} from dim {src_dim} to dim {tgt_dim} needs {} values, got {}",
                space_dim(src_dim, tgt_dim, degree),
                values.len()
            ));
        }
        Ok(Self { src_dim, tgt_dim, degree, values })
    }

    /// Basis cochain number `idx` (tuple rank `idx / tgt_dim`, component
    /// `idx % tgt_dim`).
    pub fn basis(src_dim: usize, tgt_dim: usize, degree: usize, idx: usize) -> Self {
        let mut c = Self::zero(src_dim, tgt_dim, degree);
        c.values[idx] = Rational::one();
        c
    }

    /// Tabulates `f` on the increasing tuples.
    pub fn from_fn<F>(src_dim: usize, tgt_dim: usize, degree: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> Vec<Rational>,
    {
        let mut values = Vec::with_capacity(space_dim(src_dim, tgt_dim, degree));
        for t in combinations(src_dim, degree) {
            let v = f(&t);
            debug_assert_eq!(v.len(), tgt_dim);
            values.extend(v);
        }
        Self { src_dim, tgt_dim, degree, values }
    }

    /// Degree-1 cochain of a linear map given as a `tgt x src` matrix.
    pub fn from_matrix(m: &QMatrix) -> Self {
        Self::from_fn(m.cols(), m.rows(), 1, |t| m.column(t[0]))
    }

    /// Degree-0 cochain with the given value.
    pub fn constant(src_dim: usize, value: Vec<Rational>) -> Self {
        Self { src_dim, tgt_dim: value.len(), degree: 0, values: value }
    }

    /// The linear map of a degree-1 cochain as a `tgt x src` matrix.
    pub fn to_matrix(&self) -> QMatrix {
        assert_eq!(self.degree, 1, "to_matrix needs a degree-1 cochain");
        QMatrix::from_column_fn(self.tgt_dim, self.src_dim, |j| self.value_at(j).to_vec())
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
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

    pub fn same_space(&self, other: &Self) -> bool {
        self.src_dim == other.src_dim && self.tgt_dim == other.tgt_dim && self.degree == other.degree
    }

    /// Value on the increasing tuple with rank `r`.
    pub fn value_at(&self, r: usize) -> &[Rational] {
        &self.values[r * self.tgt_dim..(r + 1) * self.tgt_dim]
    }

    /// Value on basis vectors in any order; zero on repeats.
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Rational> {
        assert_eq!(idx.len(), self.degree, "wrong number of arguments");
        match sort_with_sign(idx) {
            None => zero_vec(self.tgt_dim),
            Some((sorted, sign)) => {
                let v = self.value_at(comb_rank(&sorted, self.src_dim));
                if sign > 0 {
                    v.to_vec()
                } else {
                    v.iter().map(|x| -x).collect()
                }
            }
        }
    }

    /// Value on arbitrary vector arguments, by multilinearity.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let mut out = zero_vec(self.tgt_dim);
        let mut idx = Vec::with_capacity(self.degree);
        self.eval_rec(args, &mut idx, Rational::one(), &mut out);
        out
    }

    fn eval_rec(&self, args: &[Vec<Rational>], idx: &mut Vec<usize>, coeff: Rational, out: &mut [Rational]) {
        let pos = idx.len();
        if pos == args.len() {
            if let Some((sorted, sign)) = sort_with_sign(idx) {
                let v = self.value_at(comb_rank(&sorted, self.src_dim));
                let c = if sign > 0 { coeff } else { -coeff };
                axpy(out, &c, v);
            }
            return;
        }
        for (i, a) in args[pos].iter().enumerate() {
            if a.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.eval_rec(args, idx, &coeff * a, out);
            idx.pop();
        }
    }

    /// Value with the first argument a vector and the rest basis indices.
    pub fn eval_first_vec(&self, first: &[Rational], rest: &[usize]) -> Vec<Rational> {
        let mut out = zero_vec(self.tgt_dim);
        let mut idx = Vec::with_capacity(self.degree);
        for (i, a) in first.iter().enumerate() {
            if a.is_zero() || rest.contains(&i) {
                continue;
            }
            idx.clear();
            idx.push(i);
            idx.extend_from_slice(rest);
            axpy(&mut out, a, &self.eval_basis(&idx));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_space(other), "adding cochains from different spaces");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self { values, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_space(other), "subtracting cochains from different spaces");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self { values, ..*self }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { values: self.values.iter().map(|x| x * s).collect(), ..*self }
    }

    pub fn neg(&self) -> Self {
        Self { values: self.values.iter().map(|x| -x).collect(), ..*self }
    }
}

/// `dim Hom(Λ^k ℚ^src, ℚ^tgt)`
pub fn space_dim(src_dim: usize, tgt_dim: usize, degree: usize) -> usize {
    binomial(src_dim, degree) * tgt_dim
}

/// Applies the Chevalley-Eilenberg differential of `p.algebra` with
/// coefficients in `p.rep` to a cochain on the algebra.
pub fn ce_apply(p: &LieRepPair, w: &Cochain) -> Cochain {
    let n = p.algebra.dim;
    let k = w.degree;
    assert_eq!(w.src_dim, n);
    assert_eq!(w.tgt_dim, p.rep.dim);
    Cochain::from_fn(n, p.rep.dim, k + 1, |x| {
        let mut out = zero_vec(p.rep.dim);
        let mut rest = Vec::with_capacity(k);
        for i in 0..=k {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &v)| v));
            let val = w.eval_basis(&rest);
            let s = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            axpy(&mut out, &s, &p.rep.matrices[x[i]].mul_vec(&val));
        }
        for i in 0..=k {
            for j in i + 1..=k {
                rest.clear();
                rest.extend(x.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &v)| v));
                let br = p.algebra.bracket_basis(x[i], x[j]);
                let val = w.eval_first_vec(br, &rest);
                let s = if (i + j) % 2 == 0 { Rational::one() } else { -Rational::one() };
                axpy(&mut out, &s, &val);
            }
        }
        out
    })
}

/// Matrix of `∂: C^k → C^{k+1}` in the tuple-major bases.
pub fn ce_matrix(p: &LieRepPair, k: usize) -> Result<QMatrix> {
    let n = p.algebra.dim;
    let m = p.rep.dim;
    if k > n {
        return Err(Error::Input(format!("degree {k} exceeds the algebra dimension {n}")));
    }
    Ok(QMatrix::from_column_fn(space_dim(n, m, k + 1), space_dim(n, m, k), |c| {
        ce_apply(p, &Cochain::basis(n, m, k, c)).into_values()
    }))
}
