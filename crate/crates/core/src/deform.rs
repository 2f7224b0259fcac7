//! Truncated formal deformations `T + 𝒯₁t + … + 𝒯ₙtⁿ` of a relative
//! Rota-Baxter operator: residuals, gauge action, obstruction and extension.

use num_traits::One;

use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, ratio, zero_vec, QMatrix, Rational};
use crate::liealg::{Cochain, LieRepPair};
use crate::rbcx::{dt_apply, dt_matrix, graded_bracket, is_relative_rb, rb_cohomology, RbOperator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSeries {
    base: RbOperator,
    terms: Vec<QMatrix>,
}

impl DeformationSeries {
    pub fn new(base: RbOperator, terms: Vec<QMatrix>) -> Result<Self> {
        if !is_relative_rb(&base) {
            return Err(Error::Precondition("base of a deformation must be a relative Rota-Baxter operator".into()));
        }
        Self::unchecked(base, terms)
    }

    fn unchecked(base: RbOperator, terms: Vec<QMatrix>) -> Result<Self> {
        let (r, c) = (base.matrix().rows(), base.matrix().cols());
        for (i, t) in terms.iter().enumerate() {
            if (t.rows(), t.cols()) != (r, c) {
                return input(format!("term {} is {}x{}, expected {r}x{c}", i + 1, t.rows(), t.cols()));
            }
        }
        Ok(Self { base, terms })
    }

    pub fn base(&self) -> &RbOperator {
        &self.base
    }

    pub fn terms(&self) -> &[QMatrix] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    fn pair(&self) -> &LieRepPair {
        self.base.pair()
    }

    /// Coefficient of `t^i`, with `𝒯₀ = T`.
    pub fn coefficient(&self, i: usize) -> &QMatrix {
        if i == 0 {
            self.base.matrix()
        } else {
            &self.terms[i - 1]
        }
    }

    pub fn push(&self, term: QMatrix) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(term);
        Self::unchecked(self.base.clone(), terms)
    }
}

/// Coefficients `x₁..xₙ` of `𝒳_t = Σ x_i t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeSeries {
    pub terms: Vec<Vec<Rational>>,
}

impl GaugeSeries {
    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|x| x.iter().map(|v| -v).collect()).collect() }
    }
}

/// Residual at each power `k = 1..n` of
/// `Σ_{i+j=k} [𝒯_i u, 𝒯_j v] − 𝒯_j(ρ(𝒯_i u)v − ρ(𝒯_i v)u)`.
pub fn order_residuals(d: &DeformationSeries) -> Vec<Cochain> {
    (1..=d.order()).map(|k| residual_at(d, k)).collect()
}

fn residual_at(d: &DeformationSeries, k: usize) -> Cochain {
    let pair = d.pair();
    Cochain::from_fn(pair.dim_e(), pair.dim_a(), 2, |uv| {
        let (u, v) = (uv[0], uv[1]);
        let mut out = zero_vec(pair.dim_a());
        for i in 0..=k {
            let (ti, tj) = (d.coefficient(i), d.coefficient(k - i));
            axpy(&mut out, &Rational::one(), &pair.algebra.bracket(&ti.column(u), &tj.column(v)));
            let mut w = pair.rep.action(&ti.column(u)).column(v);
            axpy(&mut w, &-Rational::one(), &pair.rep.action(&ti.column(v)).column(u));
            axpy(&mut out, &-Rational::one(), &tj.mul_vec(&w));
        }
        out
    })
}

pub fn is_deformation(d: &DeformationSeries) -> bool {
    order_residuals(d).iter().all(Cochain::is_zero)
}

fn require_deformation(d: &DeformationSeries) -> Result<()> {
    match order_residuals(d).iter().position(|r| !r.is_zero()) {
        None => Ok(()),
        Some(k) => Err(Error::Precondition(format!("not an order-{} deformation: residual at t^{} is nonzero", d.order(), k + 1))),
    }
}

/// `½ Σ_{i+j=m, i,j≥1} ⟦𝒯_i, 𝒯_j⟧` over the coefficients of `d`.
fn half_square(d: &DeformationSeries, m: usize) -> Cochain {
    let pair = d.pair();
    let mut acc = Cochain::zero(pair.dim_e(), pair.dim_a(), 2);
    for i in 1..m {
        let j = m - i;
        if i > d.order() || j > d.order() {
            continue;
        }
        let b = graded_bracket(pair, &Cochain::from_matrix(d.coefficient(i)), &Cochain::from_matrix(d.coefficient(j)))
            .expect("same pair");
        acc = acc.add(&b);
    }
    acc.scale(&ratio(1, 2))
}

#[derive(Debug, Clone)]
pub struct Obstruction {
    pub theta: Cochain,
    /// `d_T Θ`; zero for every genuine deformation.
    pub coboundary: Cochain,
}

impl Obstruction {
    pub fn is_closed(&self) -> bool {
        self.coboundary.is_zero()
    }
}

/// `Θ = ½ Σ_{i+j=n+1, i,j≥1} ⟦𝒯_i, 𝒯_j⟧`
pub fn obstruction(d: &DeformationSeries) -> Result<Obstruction> {
    require_deformation(d)?;
    let theta = half_square(d, d.order() + 1);
    let coboundary = dt_apply(&d.base, &theta)?;
    Ok(Obstruction { theta, coboundary })
}

/// A next coefficient `𝒯_{n+1}` with `d_T 𝒯_{n+1} = Θ`, or `None` when
/// `[Θ] ≠ 0`.
pub fn extend(d: &DeformationSeries) -> Result<Option<QMatrix>> {
    let obs = obstruction(d)?;
    let d1 = dt_matrix(&d.base, 1)?;
    let Some(x) = d1.solve(obs.theta.values())? else {
        return Ok(None);
    };
    let pair = d.pair();
    let next = Cochain::from_values(pair.dim_e(), pair.dim_a(), 1, x)?.to_matrix();
    let extended = d.push(next.clone())?;
    assert!(
        residual_at(&extended, extended.order()).is_zero(),
        "extension leaves a nonzero top residual"
    );
    Ok(Some(next))
}

/// `exp(ad_𝒳) T_t mod t^{n+1}` with `ad_𝒳 Y = ⟦𝒳, Y⟧`. Gauge terms past
/// order `n` cannot reach the truncation and are ignored.
pub fn gauge_transform(d: &DeformationSeries, x: &GaugeSeries) -> Result<DeformationSeries> {
    let pair = d.pair();
    let n = d.order();
    for (i, xi) in x.terms.iter().enumerate() {
        if xi.len() != pair.dim_a() {
            return input(format!("gauge term {} has length {}, expected {}", i + 1, xi.len(), pair.dim_a()));
        }
    }
    let xs: Vec<Cochain> = x.terms.iter().take(n).map(|v| Cochain::constant(pair.dim_e(), v.clone())).collect();

    let mut current: Vec<Cochain> = (0..=n).map(|i| Cochain::from_matrix(d.coefficient(i))).collect();
    let mut total = current.clone();
    // m-th pass holds ad^m T_t / m!, which starts at t^m
    for m in 1..=n {
        let mut next: Vec<Cochain> = (0..=n).map(|_| Cochain::zero(pair.dim_e(), pair.dim_a(), 1)).collect();
        for (i, xi) in xs.iter().enumerate() {
            let ti = i + 1;
            for j in 0..=n - ti {
                if current[j].is_zero() {
                    continue;
                }
                let b = graded_bracket(pair, xi, &current[j])?;
                next[ti + j] = next[ti + j].add(&b);
            }
        }
        let inv_m = ratio(1, m as i64);
        current = next.into_iter().map(|c| c.scale(&inv_m)).collect();
        for (t, c) in total.iter_mut().zip(&current) {
            *t = t.add(c);
        }
    }
    let base = d.base.with_matrix(total[0].to_matrix())?;
    DeformationSeries::unchecked(base, total[1..].iter().map(Cochain::to_matrix).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitesimalClass {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    /// Coordinates in the representative basis of `H¹_T`; empty when the
    /// input is not a cocycle.
    pub class_coords: Vec<Rational>,
}

pub fn infinitesimal_class(t: &RbOperator, t1: &QMatrix) -> Result<InfinitesimalClass> {
    let series = DeformationSeries::new(t.clone(), vec![t1.clone()])?;
    let is_cocycle = is_deformation(&series);
    if !is_cocycle {
        return Ok(InfinitesimalClass { is_cocycle, is_coboundary: false, class_coords: Vec::new() });
    }
    let h1 = rb_cohomology(t, 1)?;
    let v = Cochain::from_matrix(t1);
    let class_coords = h1.raw.class_coordinates(v.values()).expect("cocycle lies in the kernel");
    Ok(InfinitesimalClass { is_cocycle, is_coboundary: h1.raw.is_coboundary(v.values()), class_coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbcx::examples::{aff1_adjoint, identity, t0, vec_i};
    use crate::rbcx::rb_defect;

    fn d_t(t: &RbOperator, x: &[i64]) -> QMatrix {
        dt_apply(t, &Cochain::constant(t.pair().dim_e(), vec_i(x))).unwrap().to_matrix()
    }

    #[test]
    fn residual_examples() {
        let zero = RbOperator::zero(aff1_adjoint());
        let d = DeformationSeries::new(zero.clone(), vec![QMatrix::from_i64(&[&[1, 2], &[3, 4]])]).unwrap();
        assert!(is_deformation(&d));

        let t = t0();
        let d = DeformationSeries::new(t.clone(), vec![d_t(&t, &[1, 0])]).unwrap();
        assert!(is_deformation(&d));

        let d = DeformationSeries::new(zero, vec![QMatrix::identity(2), QMatrix::zeros(2, 2)]).unwrap();
        let r = order_residuals(&d);
        assert!(r[0].is_zero());
        assert_eq!(r[1], rb_defect(&identity()).neg());
    }

    #[test]
    fn residual_is_minus_half_square() {
        let t = t0();
        let d = DeformationSeries::new(t, vec![QMatrix::from_i64(&[&[1, -1], &[2, 0]]), QMatrix::from_i64(&[&[0, 3], &[1, 1]])])
            .unwrap();
        let r = order_residuals(&d);
        for k in 1..=2 {
            let mut s = Cochain::zero(2, 2, 2);
            for i in 0..=k {
                let b = graded_bracket(
                    d.pair(),
                    &Cochain::from_matrix(d.coefficient(i)),
                    &Cochain::from_matrix(d.coefficient(k - i)),
                )
                .unwrap();
                s = s.add(&b);
            }
            assert_eq!(r[k - 1], s.scale(&ratio(-1, 2)));
        }
    }

    #[test]
    fn obstruction_examples() {
        let zero = RbOperator::zero(aff1_adjoint());
        let d = DeformationSeries::new(zero.clone(), vec![t0().matrix().clone()]).unwrap();
        let o = obstruction(&d).unwrap();
        assert!(o.theta.is_zero());

        let d = DeformationSeries::new(zero, vec![QMatrix::identity(2)]).unwrap();
        let o = obstruction(&d).unwrap();
        assert_eq!(o.theta.eval_basis(&[0, 1]), vec_i(&[0, 1]));
        assert!(o.is_closed());
        assert_eq!(extend(&d).unwrap(), None);

        let bad = DeformationSeries::new(
            RbOperator::zero(aff1_adjoint()),
            vec![QMatrix::identity(2), QMatrix::zeros(2, 2)],
        )
        .unwrap();
        assert!(matches!(obstruction(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn extension_of_coboundary() {
        let t = t0();
        let d = DeformationSeries::new(t.clone(), vec![d_t(&t, &[1, 0])]).unwrap();
        let next = extend(&d).unwrap().expect("extendable");
        assert!(is_deformation(&d.push(next).unwrap()));
    }

    #[test]
    fn gauge_examples() {
        let t = t0();
        let d = DeformationSeries::new(t.clone(), vec![QMatrix::zeros(2, 2)]).unwrap();
        let x = GaugeSeries { terms: vec![vec_i(&[1, 0])] };
        assert_eq!(gauge_transform(&d, &GaugeSeries { terms: vec![] }).unwrap(), d);
        let g = gauge_transform(&d, &x).unwrap();
        assert_eq!(g.terms()[0], -&d_t(&t, &[1, 0]));
        assert_eq!(g.base(), &t);

        let d = DeformationSeries::new(t, vec![QMatrix::zeros(2, 2); 3]).unwrap();
        let x = GaugeSeries { terms: vec![vec_i(&[1, 2]), vec_i(&[0, -1]), vec_i(&[3, 1])] };
        let g = gauge_transform(&d, &x).unwrap();
        assert!(is_deformation(&g));
        assert_eq!(gauge_transform(&g, &x.neg()).unwrap(), d);
    }

    #[test]
    fn infinitesimal_examples() {
        let t = t0();
        let c = infinitesimal_class(&t, &d_t(&t, &[1, 0])).unwrap();
        assert!(c.is_cocycle && c.is_coboundary);
        assert!(c.class_coords.iter().all(|x| x == &Rational::from_integer(0.into())));

        let zero = RbOperator::zero(aff1_adjoint());
        let c = infinitesimal_class(&zero, &QMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(c.is_cocycle && !c.is_coboundary);
        let c = infinitesimal_class(&zero, &QMatrix::zeros(2, 2)).unwrap();
        assert!(c.is_coboundary);
    }
}
