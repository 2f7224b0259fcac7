//! Rota-Baxter Lie algebras acting on affine space by polynomial vector
//! fields, and the Rota-Baxter operator `R` on the action algebroid
//! `(M×g) ⊕ TM` with `M = ℚ^m`.

pub mod poly;

use num_traits::{One, Zero};

pub use poly::{poly_vf_bracket, Poly, PolyVecField};

use crate::combinat::{comb_rank, combinations, sort_with_sign};
use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, is_zero_vec, QMatrix, Rational};
use crate::liealg::{space_dim, unit, validate_lie, Cochain, LieAlgebra, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbLieAlgebra {
    algebra: LieAlgebra,
    bmap: QMatrix,
}

impl RbLieAlgebra {
    pub fn new(algebra: LieAlgebra, bmap: QMatrix) -> Result<Self> {
        let n = algebra.dim();
        if bmap.rows() != n || bmap.cols() != n {
            return input(format!("operator must be {n}×{n}"));
        }
        Ok(Self { algebra, bmap })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn bmap(&self) -> &QMatrix {
        &self.bmap
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn b(&self, u: &[Rational]) -> Vec<Rational> {
        self.bmap.mul_vec(u)
    }

    /// `[u,v]_ℬ = [ℬu,v] + [u,ℬv]`
    pub fn descendent_bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut w = self.algebra.bracket(&self.b(u), v);
        axpy(&mut w, &Rational::one(), &self.algebra.bracket(u, &self.b(v)));
        w
    }

    pub fn descendent_algebra(&self) -> LieAlgebra {
        let n = self.dim();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                c.extend(self.descendent_bracket(&unit(n, i), &unit(n, j)));
            }
        }
        LieAlgebra::new(n, c).expect("sized")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbLieReport {
    /// `[ℬu,ℬv] − ℬ([ℬu,v] + [u,ℬv])` per basis pair.
    pub identity: Vec<Violation>,
    /// Jacobi failures of `[·,·]_ℬ`.
    pub descendent: Vec<Violation>,
}

impl RbLieReport {
    pub fn is_valid(&self) -> bool {
        self.identity.is_empty() && self.descendent.is_empty()
    }
}

pub fn validate_rb_lie(r: &RbLieAlgebra) -> RbLieReport {
    let n = r.dim();
    let g = &r.algebra;
    let mut identity = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (u, v) = (unit(n, i), unit(n, j));
            let mut res = g.bracket(&r.b(&u), &r.b(&v));
            axpy(&mut res, &-Rational::one(), &r.b(&r.descendent_bracket(&u, &v)));
            if !is_zero_vec(&res) {
                identity.push(Violation { kind: "rota-baxter", indices: vec![i, j], residual: res });
            }
        }
    }
    let descendent = validate_lie(&r.descendent_algebra());
    RbLieReport { identity, descendent }
}

fn require_rb(r: &RbLieAlgebra) -> Result<()> {
    if !validate_lie(&r.algebra).is_empty() {
        return Err(Error::Precondition("bracket is not a Lie bracket".into()));
    }
    if validate_rb_lie(r).is_valid() {
        Ok(())
    } else {
        Err(Error::Precondition("operator is not a Rota-Baxter operator".into()))
    }
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn omit(args: &[usize], skip: &[usize]) -> Vec<usize> {
    args.iter().enumerate().filter(|(l, _)| !skip.contains(l)).map(|(_, &v)| v).collect()
}

/// `d_ℬ f` by the three-sum formula.
pub fn db_apply(r: &RbLieAlgebra, f: &Cochain) -> Result<Cochain> {
    let n = r.dim();
    if f.src_dim() != n || f.tgt_dim() != n {
        return input("cochain must be Hom(Λ^k g, g)");
    }
    let g = &r.algebra;
    let k = f.degree();
    Ok(Cochain::from_fn(n, n, k + 1, |u| {
        let mut acc = vec![Rational::zero(); n];
        for i in 0..=k {
            let fi = f.eval_basis(&omit(u, &[i]));
            let bu = r.b(&unit(n, u[i]));
            axpy(&mut acc, &sign(i), &g.bracket(&bu, &fi));
            axpy(&mut acc, &sign(i), &r.b(&g.bracket(&fi, &unit(n, u[i]))));
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let w = r.descendent_bracket(&unit(n, u[i]), &unit(n, u[j]));
                axpy(&mut acc, &sign(i + j), &f.eval_first_vec(&w, &omit(u, &[i, j])));
            }
        }
        acc
    }))
}

pub fn db_matrix(r: &RbLieAlgebra, k: usize) -> Result<QMatrix> {
    require_rb(r)?;
    let n = r.dim();
    if k > n {
        return input(format!("degree must lie in 0..={n}"));
    }
    Ok(QMatrix::from_column_fn(space_dim(n, n, k + 1), space_dim(n, n, k), |c| {
        db_apply(r, &Cochain::basis(n, n, k, c)).expect("sized").into_values()
    }))
}

/// Element of `Hom(Λ^k g, 𝔛(M))` with polynomial values, stored on
/// increasing tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismCochain {
    dim_g: usize,
    degree: usize,
    values: Vec<PolyVecField>,
}

impl MorphismCochain {
    pub fn new(dim_g: usize, degree: usize, values: Vec<PolyVecField>) -> Result<Self> {
        if values.len() != crate::combinat::binomial(dim_g, degree) {
            return input(format!("degree-{degree} cochain on dim {dim_g} needs {} values", crate::combinat::binomial(dim_g, degree)));
        }
        if values.windows(2).any(|w| w[0].base_dim() != w[1].base_dim()) {
            return input("vector fields on different spaces");
        }
        Ok(Self { dim_g, degree, values })
    }

    pub fn zero(dim_g: usize, base_dim: usize, degree: usize) -> Self {
        Self { dim_g, degree, values: vec![PolyVecField::zero(base_dim); crate::combinat::binomial(dim_g, degree)] }
    }

    pub fn from_fn(dim_g: usize, degree: usize, f: impl Fn(&[usize]) -> PolyVecField) -> Self {
        Self { dim_g, degree, values: combinations(dim_g, degree).iter().map(|t| f(t)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn values(&self) -> &[PolyVecField] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(PolyVecField::is_zero)
    }

    fn base_dim(&self, fallback: usize) -> usize {
        self.values.first().map_or(fallback, PolyVecField::base_dim)
    }

    pub fn eval_basis(&self, idx: &[usize], base_dim: usize) -> PolyVecField {
        match sort_with_sign(idx) {
            None => PolyVecField::zero(base_dim),
            Some((sorted, s)) => {
                let v = &self.values[comb_rank(&sorted, self.dim_g)];
                if s > 0 {
                    v.clone()
                } else {
                    v.scale(&-Rational::one())
                }
            }
        }
    }

    pub fn eval_first_vec(&self, w: &[Rational], rest: &[usize], base_dim: usize) -> PolyVecField {
        let mut acc = PolyVecField::zero(base_dim);
        let mut idx = Vec::with_capacity(rest.len() + 1);
        for (i, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx.clear();
            idx.push(i);
            idx.extend_from_slice(rest);
            acc = acc.add(&self.eval_basis(&idx, base_dim).scale(c));
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionModel {
    rb: RbLieAlgebra,
    base_dim: usize,
    phi: Vec<PolyVecField>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub rb: RbLieReport,
    /// `(i, j, φ([e_i,e_j]_ℬ) − [φe_i, φe_j])` for nonzero residuals.
    pub homomorphism: Vec<(usize, usize, PolyVecField)>,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.rb.is_valid() && self.homomorphism.is_empty()
    }
}

impl ActionModel {
    pub fn new(rb: RbLieAlgebra, base_dim: usize, phi: Vec<PolyVecField>) -> Result<Self> {
        if phi.len() != rb.dim() {
            return input(format!("φ needs one vector field per basis element ({})", rb.dim()));
        }
        if phi.iter().any(|x| x.base_dim() != base_dim) {
            return input(format!("φ must take values in vector fields on ℚ^{base_dim}"));
        }
        Ok(Self { rb, base_dim, phi })
    }

    pub fn rb(&self) -> &RbLieAlgebra {
        &self.rb
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn dim_g(&self) -> usize {
        self.rb.dim()
    }

    pub fn phi(&self) -> &[PolyVecField] {
        &self.phi
    }

    pub fn phi_of(&self, u: &[Rational]) -> PolyVecField {
        let mut acc = PolyVecField::zero(self.base_dim);
        for (c, x) in u.iter().zip(&self.phi) {
            if !c.is_zero() {
                acc = acc.add(&x.scale(c));
            }
        }
        acc
    }

    pub fn phi_cochain(&self) -> MorphismCochain {
        MorphismCochain { dim_g: self.dim_g(), degree: 1, values: self.phi.clone() }
    }

    pub fn validate(&self) -> ActionReport {
        let n = self.dim_g();
        let mut homomorphism = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.phi_of(&self.rb.descendent_bracket(&unit(n, i), &unit(n, j)));
                let rhs = poly_vf_bracket(&self.phi[i], &self.phi[j]).expect("same space");
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    homomorphism.push((i, j, res));
                }
            }
        }
        ActionReport { rb: validate_rb_lie(&self.rb), homomorphism }
    }

    fn require_valid(&self) -> Result<()> {
        require_rb(&self.rb)?;
        if self.validate().is_valid() {
            Ok(())
        } else {
            Err(Error::Precondition("φ is not a homomorphism from (g, [·,·]_ℬ)".into()))
        }
    }
}

/// `Σ f_i ⊗ e_i + X`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySection {
    pub g_part: Vec<Poly>,
    pub vf_part: PolyVecField,
}

impl PolySection {
    pub fn zero(dim_g: usize, base_dim: usize) -> Self {
        Self { g_part: vec![Poly::zero(base_dim); dim_g], vf_part: PolyVecField::zero(base_dim) }
    }

    /// `1 ⊗ u`
    pub fn constant(u: &[Rational], base_dim: usize) -> Self {
        Self { g_part: u.iter().map(|c| Poly::constant(base_dim, c.clone())).collect(), vf_part: PolyVecField::zero(base_dim) }
    }

    /// `f ⊗ e_i`
    pub fn pure(dim_g: usize, i: usize, f: Poly) -> Self {
        let mut s = Self::zero(dim_g, f.base_dim());
        s.g_part[i] = f;
        s
    }

    pub fn field(dim_g: usize, x: PolyVecField) -> Self {
        let mut s = Self::zero(dim_g, x.base_dim());
        s.vf_part = x;
        s
    }

    pub fn base_dim(&self) -> usize {
        self.vf_part.base_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.g_part.iter().all(Poly::is_zero) && self.vf_part.is_zero()
    }

    pub fn in_kernel(&self) -> bool {
        self.vf_part.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { g_part: self.g_part.iter().zip(&o.g_part).map(|(a, b)| a.add(b)).collect(), vf_part: self.vf_part.add(&o.vf_part) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { g_part: self.g_part.iter().map(|a| a.scale(s)).collect(), vf_part: self.vf_part.scale(s) }
    }

    pub fn mul_poly(&self, h: &Poly) -> Self {
        Self { g_part: self.g_part.iter().map(|a| a.mul(h)).collect(), vf_part: self.vf_part.mul_poly(h) }
    }
}

impl std::fmt::Display for PolySection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .g_part
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({p})⊗e{}", i + 1))
            .collect();
        if !self.vf_part.is_zero() {
            parts.push(self.vf_part.to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_section(model: &ActionModel, s: &PolySection) -> Result<()> {
    if s.g_part.len() != model.dim_g() || s.base_dim() != model.base_dim || s.g_part.iter().any(|p| p.base_dim() != model.base_dim) {
        return input("section does not belong to this model");
    }
    Ok(())
}

/// `[fu+X, gv+Y] = fg[u,v] + X(g)v − Y(f)u + [X,Y]`, extended bilinearly.
pub fn algebroid_bracket(model: &ActionModel, s: &PolySection, t: &PolySection) -> Result<PolySection> {
    check_section(model, s)?;
    check_section(model, t)?;
    let n = model.dim_g();
    let g = model.rb.algebra();
    let mut out = PolySection::zero(n, model.base_dim);
    for (a, fa) in s.g_part.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (b, gb) in t.g_part.iter().enumerate() {
            if gb.is_zero() {
                continue;
            }
            let fg = fa.mul(gb);
            for (c, k) in g.bracket_basis(a, b).iter().enumerate() {
                if !k.is_zero() {
                    out.g_part[c] = out.g_part[c].add(&fg.scale(k));
                }
            }
        }
    }
    for b in 0..n {
        out.g_part[b] = out.g_part[b].add(&s.vf_part.apply(&t.g_part[b])).sub(&t.vf_part.apply(&s.g_part[b]));
    }
    out.vf_part = poly_vf_bracket(&s.vf_part, &t.vf_part)?;
    Ok(out)
}

/// `R(f⊗u) = f⊗ℬu + f·φ(u)` on sections of `ker(a) = M×g`.
pub fn r_apply(model: &ActionModel, s: &PolySection) -> Result<PolySection> {
    check_section(model, s)?;
    if !s.in_kernel() {
        return input("R is defined on sections of M×g only (vector-field part must vanish)");
    }
    let n = model.dim_g();
    let mut out = PolySection::zero(n, model.base_dim);
    for (a, f) in s.g_part.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (c, k) in model.rb.bmap.column(a).iter().enumerate() {
            if !k.is_zero() {
                out.g_part[c] = out.g_part[c].add(&f.scale(k));
            }
        }
        out.vf_part = out.vf_part.add(&model.phi[a].mul_poly(f));
    }
    Ok(out)
}

/// `[Rs,Rt] − R([Rs,t] + [s,Rt])`
pub fn rb_identity_residual(model: &ActionModel, s: &PolySection, t: &PolySection) -> Result<PolySection> {
    let (rs, rt) = (r_apply(model, s)?, r_apply(model, t)?);
    let lhs = algebroid_bracket(model, &rs, &rt)?;
    let inner = algebroid_bracket(model, &rs, t)?.add(&algebroid_bracket(model, s, &rt)?);
    Ok(lhs.sub(&r_apply(model, &inner)?))
}

/// `d_φ P` on a tuple of basis indices.
pub fn dphi_apply(model: &ActionModel, p: &MorphismCochain, args: &[usize]) -> Result<PolyVecField> {
    let n = model.dim_g();
    let m = model.base_dim;
    if p.dim_g != n || p.base_dim(m) != m {
        return input("cochain does not belong to this model");
    }
    if args.len() != p.degree + 1 || args.iter().any(|&a| a >= n) {
        return input(format!("d_φ of a degree-{} cochain takes {} basis indices", p.degree, p.degree + 1));
    }
    let mut acc = PolyVecField::zero(m);
    for i in 0..args.len() {
        let pv = p.eval_basis(&omit(args, &[i]), m);
        acc = acc.add(&poly_vf_bracket(&model.phi[args[i]], &pv)?.scale(&sign(i)));
    }
    for i in 0..args.len() {
        for j in i + 1..args.len() {
            let w = model.rb.descendent_bracket(&unit(n, args[i]), &unit(n, args[j]));
            acc = acc.add(&p.eval_first_vec(&w, &omit(args, &[i, j]), m).scale(&sign(i + j)));
        }
    }
    Ok(acc)
}

/// `d_φ P` tabulated on all increasing tuples.
pub fn dphi_cochain(model: &ActionModel, p: &MorphismCochain) -> Result<MorphismCochain> {
    let values = combinations(model.dim_g(), p.degree + 1)
        .iter()
        .map(|t| dphi_apply(model, p, t))
        .collect::<Result<_>>()?;
    Ok(MorphismCochain { dim_g: model.dim_g(), degree: p.degree + 1, values })
}

fn check_pair(model: &ActionModel, p1: &Cochain, p2: &MorphismCochain) -> Result<()> {
    let n = model.dim_g();
    if p1.src_dim() != n || p1.tgt_dim() != n {
        return input("P1 must be Hom(Λ^k g, g)");
    }
    if p2.dim_g != n || p2.base_dim(model.base_dim) != model.base_dim {
        return input("P2 does not belong to this model");
    }
    if p1.degree() != p2.degree {
        return input(format!("degree mismatch: P1 has degree {}, P2 has {}", p1.degree(), p2.degree));
    }
    Ok(())
}

fn xi_basis(model: &ActionModel, p1: &Cochain, p2: &MorphismCochain, args: &[usize]) -> PolySection {
    let m = model.base_dim;
    let mut s = PolySection::constant(&p1.eval_basis(args), m);
    s.vf_part = p2.eval_basis(args, m);
    s
}

/// `Ξ(P1,P2)` on sections of `M×g`, extended multilinearly over polynomials.
pub fn xi_eval(model: &ActionModel, p1: &Cochain, p2: &MorphismCochain, sections: &[PolySection]) -> Result<PolySection> {
    check_pair(model, p1, p2)?;
    if sections.len() != p1.degree() {
        return input(format!("Ξ of degree {} takes {} sections", p1.degree(), p1.degree()));
    }
    for s in sections {
        check_section(model, s)?;
        if !s.in_kernel() {
            return input("Ξ takes sections of M×g");
        }
    }
    let n = model.dim_g();
    let m = model.base_dim;
    let mut out = PolySection::zero(n, m);
    let mut idx = vec![0usize; sections.len()];
    loop {
        let mut coef = Poly::one(m);
        for (s, &a) in sections.iter().zip(&idx) {
            coef = coef.mul(&s.g_part[a]);
            if coef.is_zero() {
                break;
            }
        }
        if !coef.is_zero() {
            out = out.add(&xi_basis(model, p1, p2, &idx).mul_poly(&coef));
        }
        // odometer over index tuples
        let mut pos = sections.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `Ξ(P1,P2)(1⊗u_1, …, 1⊗u_k) = 1⊗P1(u) + P2(u)`
pub fn xi_apply(model: &ActionModel, p1: &Cochain, p2: &MorphismCochain, args: &[usize]) -> Result<PolySection> {
    let n = model.dim_g();
    let sections: Vec<_> = args.iter().map(|&a| PolySection::constant(&unit(n, a), model.base_dim)).collect();
    xi_eval(model, p1, p2, &sections)
}

/// `d_R C(s_1..s_{k+1})` for `T = R` and `ρ = 𝓛`, where `C` is a cochain on
/// `M×g` given by its evaluation on sections.
pub fn dr_apply<F>(model: &ActionModel, c: F, sections: &[PolySection]) -> Result<PolySection>
where
    F: Fn(&[PolySection]) -> Result<PolySection>,
{
    let k1 = sections.len();
    let mut acc = PolySection::zero(model.dim_g(), model.base_dim);
    let rest = |skip: &[usize]| -> Vec<PolySection> {
        sections.iter().enumerate().filter(|(l, _)| !skip.contains(l)).map(|(_, s)| s.clone()).collect()
    };
    for i in 0..k1 {
        let ci = c(&rest(&[i]))?;
        let rs = r_apply(model, &sections[i])?;
        acc = acc.add(&algebroid_bracket(model, &rs, &ci)?.scale(&sign(i)));
        let inner = algebroid_bracket(model, &ci, &sections[i])?;
        acc = acc.add(&r_apply(model, &inner)?.scale(&sign(i)));
    }
    for i in 0..k1 {
        for j in i + 1..k1 {
            let ri = r_apply(model, &sections[i])?;
            let rj = r_apply(model, &sections[j])?;
            let w = algebroid_bracket(model, &ri, &sections[j])?.sub(&algebroid_bracket(model, &rj, &sections[i])?);
            let mut args = vec![w];
            args.extend(rest(&[i, j]));
            acc = acc.add(&c(&args)?.scale(&sign(i + j)));
        }
    }
    Ok(acc)
}

/// `d_R Ξ(P1,P2) − Ξ(d_ℬ P1, d_φ P2)` on constant sections `1⊗e_{args}`.
pub fn xi_chain_residual(model: &ActionModel, p1: &Cochain, p2: &MorphismCochain, args: &[usize]) -> Result<PolySection> {
    model.require_valid()?;
    check_pair(model, p1, p2)?;
    if args.len() != p1.degree() + 1 {
        return input(format!("residual of degree {} takes {} basis indices", p1.degree(), p1.degree() + 1));
    }
    let n = model.dim_g();
    let sections: Vec<_> = args.iter().map(|&a| PolySection::constant(&unit(n, a), model.base_dim)).collect();
    let lhs = dr_apply(model, |s| xi_eval(model, p1, p2, s), &sections)?;
    let rhs = xi_apply(model, &db_apply(&model.rb, p1)?, &dphi_cochain(model, p2)?, args)?;
    Ok(lhs.sub(&rhs))
}

/// `Σ_i (−1)^{i+1} φ([P1(u_1..û_i..u_{k+1}), u_i]_g)`: the part of
/// `R[Ξ(..), 1⊗u_i]` carried by `φ`, which `d_ℬ` and `d_φ` do not produce.
pub fn xi_phi_defect(model: &ActionModel, p1: &Cochain, args: &[usize]) -> PolyVecField {
    let n = model.dim_g();
    let mut acc = PolyVecField::zero(model.base_dim);
    for i in 0..args.len() {
        let w = model.rb.algebra().bracket(&p1.eval_basis(&omit(args, &[i])), &unit(n, args[i]));
        acc = acc.add(&model.phi_of(&w).scale(&sign(i)));
    }
    acc
}

pub mod examples {
    use super::*;
    use crate::exactlin::QMatrix;

    /// `g = aff(1)`, `ℬe1 = e2`, `ℬe2 = 0`, `φ(e1) = ∂x`, `φ(e2) = 0` on `ℚ¹`.
    pub fn aff1_model() -> ActionModel {
        let g = LieAlgebra::from_brackets(2, &[((0, 1), vec![Rational::zero(), Rational::one()])]);
        let rb = RbLieAlgebra::new(g, QMatrix::from_i64(&[&[0, 0], &[1, 0]])).unwrap();
        ActionModel::new(rb, 1, vec![PolyVecField::partial(1, 0), PolyVecField::zero(1)]).unwrap()
    }
}
