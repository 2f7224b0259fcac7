//! Relative Rota-Baxter operators `T: E → A` on a LieRep pair, the graded
//! Lie bracket on `C*(E, A) = ⊕ Hom(Λ^k E, A)` and the complex `d_T`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combinat::unshuffles;
use crate::error::{input, Error, Result};
use crate::exactlin::{axpy, cohomology_dim, ratio, zero_vec, Cohomology, QMatrix, Rational};
use crate::liealg::{space_dim, unit, Cochain, LieAlgebra, LieRepPair, Representation};

/// A linear map `E → A`, stored as an `n_A x n_E` matrix whose column `j`
/// is `T e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbOperator {
    pair: Arc<LieRepPair>,
    map: QMatrix,
}

impl RbOperator {
    pub fn new(pair: Arc<LieRepPair>, map: QMatrix) -> Result<Self> {
        if map.rows() != pair.dim_a() || map.cols() != pair.dim_e() {
            return input(format!(
                "operator is {}x{}, expected {}x{} (dim A x dim E)",
                map.rows(),
                map.cols(),
                pair.dim_a(),
                pair.dim_e()
            ));
        }
        Ok(Self { pair, map })
    }

    pub fn zero(pair: Arc<LieRepPair>) -> Self {
        let map = QMatrix::zeros(pair.dim_a(), pair.dim_e());
        Self { pair, map }
    }

    /// An operator `g → g` on a Lie algebra, i.e. relative to the adjoint
    /// representation.
    pub fn on_lie_algebra(g: LieAlgebra, map: QMatrix) -> Result<Self> {
        Self::new(Arc::new(LieRepPair::adjoint(g)), map)
    }

    pub fn pair(&self) -> &Arc<LieRepPair> {
        &self.pair
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.map
    }

    pub fn with_matrix(&self, map: QMatrix) -> Result<Self> {
        Self::new(self.pair.clone(), map)
    }

    pub fn as_cochain(&self) -> Cochain {
        Cochain::from_matrix(&self.map)
    }

    pub fn apply(&self, u: &[Rational]) -> Vec<Rational> {
        self.map.mul_vec(u)
    }
}

/// Column `j` of `ρ(x)`, i.e. `ρ(x) e_j`.
fn rho_on_basis(rep: &Representation, x: &[Rational], j: usize) -> Vec<Rational> {
    let mut out = zero_vec(rep.dim());
    for (xi, m) in x.iter().zip(rep.matrices()) {
        if !xi.is_zero() {
            axpy(&mut out, xi, &m.column(j));
        }
    }
    out
}

fn check_space(pair: &LieRepPair, c: &Cochain, what: &str) -> Result<()> {
    if c.src_dim() != pair.dim_e() || c.tgt_dim() != pair.dim_a() {
        return input(format!(
            "{what} maps dim {} to dim {}, but the pair has dim E = {} and dim A = {}",
            c.src_dim(),
            c.tgt_dim(),
            pair.dim_e(),
            pair.dim_a()
        ));
    }
    Ok(())
}

fn sign_of(even: bool) -> Rational {
    if even {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The graded bracket `⟦P, Q⟧` of degree `p + q`.
pub fn graded_bracket(pair: &LieRepPair, p: &Cochain, q: &Cochain) -> Result<Cochain> {
    check_space(pair, p, "P")?;
    check_space(pair, q, "Q")?;
    let (dp, dq) = (p.degree(), q.degree());
    let (ne, na) = (pair.dim_e(), pair.dim_a());
    let deg = dp + dq;
    if deg > ne {
        return Ok(Cochain::zero(ne, na, deg));
    }
    let (ip, iq) = (dp as isize, dq as isize);
    let s1 = unshuffles(&[iq, 1, ip - 1]);
    let s2 = unshuffles(&[ip, 1, iq - 1]);
    let s3 = unshuffles(&[ip, iq]);
    let pq = sign_of((dp * dq) % 2 == 0);
    let rep = &pair.rep;

    Ok(Cochain::from_fn(ne, na, deg, |u| {
        let mut out = zero_vec(na);
        let mut args = Vec::with_capacity(deg);
        for (sigma, s) in &s1 {
            args.clear();
            args.extend(sigma.iter().map(|&i| u[i]));
            let qv = q.eval_basis(&args[..dq]);
            let w = rho_on_basis(rep, &qv, args[dq]);
            axpy(&mut out, &Rational::from_integer((*s).into()), &p.eval_first_vec(&w, &args[dq + 1..]));
        }
        for (sigma, s) in &s2 {
            args.clear();
            args.extend(sigma.iter().map(|&i| u[i]));
            let pv = p.eval_basis(&args[..dp]);
            let w = rho_on_basis(rep, &pv, args[dp]);
            let c = -(&pq) * Rational::from_integer((*s).into());
            axpy(&mut out, &c, &q.eval_first_vec(&w, &args[dp + 1..]));
        }
        for (sigma, s) in &s3 {
            args.clear();
            args.extend(sigma.iter().map(|&i| u[i]));
            let pv = p.eval_basis(&args[..dp]);
            let qv = q.eval_basis(&args[dp..]);
            let c = &pq * Rational::from_integer((*s).into());
            axpy(&mut out, &c, &pair.algebra.bracket(&pv, &qv));
        }
        out
    }))
}

/// `½⟦T,T⟧(u,v) = T(ρ(Tu)v) − T(ρ(Tv)u) − [Tu,Tv]`; zero exactly when `T`
/// is a relative Rota-Baxter operator.
pub fn rb_defect(t: &RbOperator) -> Cochain {
    let tc = t.as_cochain();
    graded_bracket(&t.pair, &tc, &tc).expect("operator matches its own pair").scale(&ratio(1, 2))
}

/// `[Tu,Tv] − T(ρ(Tu)v − ρ(Tv)u)` evaluated directly on basis pairs.
pub fn definition_residual(t: &RbOperator) -> Cochain {
    let pair = &t.pair;
    Cochain::from_fn(pair.dim_e(), pair.dim_a(), 2, |uv| {
        let (tu, tv) = (t.map.column(uv[0]), t.map.column(uv[1]));
        let mut inner = rho_on_basis(&pair.rep, &tu, uv[1]);
        axpy(&mut inner, &-Rational::one(), &rho_on_basis(&pair.rep, &tv, uv[0]));
        let mut out = pair.algebra.bracket(&tu, &tv);
        axpy(&mut out, &-Rational::one(), &t.apply(&inner));
        out
    })
}

pub fn is_relative_rb(t: &RbOperator) -> bool {
    rb_defect(t).is_zero()
}

fn require_rb(t: &RbOperator) -> Result<()> {
    if is_relative_rb(t) {
        Ok(())
    } else {
        Err(Error::Precondition("operator is not a relative Rota-Baxter operator".into()))
    }
}

/// `[u,v]_T = ρ(Tu)v − ρ(Tv)u` on `E`.
pub fn induced_lie(t: &RbOperator) -> Result<LieAlgebra> {
    require_rb(t)?;
    Ok(induced_lie_unchecked(t))
}

fn induced_lie_unchecked(t: &RbOperator) -> LieAlgebra {
    let ne = t.pair.dim_e();
    let mut c = Vec::with_capacity(ne * ne * ne);
    for i in 0..ne {
        for j in 0..ne {
            let mut v = rho_on_basis(&t.pair.rep, &t.map.column(i), j);
            axpy(&mut v, &-Rational::one(), &rho_on_basis(&t.pair.rep, &t.map.column(j), i));
            c.extend(v);
        }
    }
    LieAlgebra::new(ne, c).expect("sized by construction")
}

/// `ϱ(u)x = [Tu,x] + Tρ(x)u`, a representation of the induced algebra on `A`.
pub fn induced_rep(t: &RbOperator) -> Result<Representation> {
    require_rb(t)?;
    let (ne, na) = (t.pair.dim_e(), t.pair.dim_a());
    let matrices = (0..ne)
        .map(|u| {
            let tu = t.map.column(u);
            QMatrix::from_column_fn(na, na, |x| {
                let ex = unit(na, x);
                let mut v = t.pair.algebra.bracket(&tu, &ex);
                axpy(&mut v, &Rational::one(), &t.apply(&rho_on_basis(&t.pair.rep, &ex, u)));
                v
            })
        })
        .collect();
    Representation::new(na, matrices)
}

/// The pair `(E, [·,·]_T; ϱ)`.
pub fn induced_pair(t: &RbOperator) -> Result<LieRepPair> {
    LieRepPair::new(induced_lie(t)?, induced_rep(t)?)
}

/// `d_T P = (−1)^k ⟦T, P⟧` without the Rota-Baxter check.
pub fn dt_apply(t: &RbOperator, p: &Cochain) -> Result<Cochain> {
    let b = graded_bracket(&t.pair, &t.as_cochain(), p)?;
    Ok(if p.degree() % 2 == 0 { b } else { b.neg() })
}

/// `d_T P` from the three-sum expansion, independent of the bracket code.
pub fn dt_apply_explicit(t: &RbOperator, p: &Cochain) -> Result<Cochain> {
    check_space(&t.pair, p, "P")?;
    let k = p.degree();
    let (ne, na) = (t.pair.dim_e(), t.pair.dim_a());
    let rep = &t.pair.rep;
    Ok(Cochain::from_fn(ne, na, k + 1, |u| {
        let mut out = zero_vec(na);
        let mut rest = Vec::with_capacity(k);
        for i in 0..=k {
            rest.clear();
            rest.extend(u.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &v)| v));
            let pv = p.eval_basis(&rest);
            let s = sign_of(i % 2 == 0);
            axpy(&mut out, &s, &t.pair.algebra.bracket(&t.map.column(u[i]), &pv));
            axpy(&mut out, &s, &t.apply(&rho_on_basis(rep, &pv, u[i])));
        }
        for i in 0..=k {
            for j in i + 1..=k {
                rest.clear();
                rest.extend(u.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &v)| v));
                let mut w = rho_on_basis(rep, &t.map.column(u[i]), u[j]);
                axpy(&mut w, &-Rational::one(), &rho_on_basis(rep, &t.map.column(u[j]), u[i]));
                axpy(&mut out, &sign_of((i + j) % 2 == 0), &p.eval_first_vec(&w, &rest));
            }
        }
        out
    }))
}

fn dt_matrix_with<F>(t: &RbOperator, k: usize, apply: F) -> Result<QMatrix>
where
    F: Fn(&RbOperator, &Cochain) -> Result<Cochain> + Sync,
{
    require_rb(t)?;
    let (ne, na) = (t.pair.dim_e(), t.pair.dim_a());
    if k > ne {
        return input(format!("degree {k} exceeds dim E = {ne}"));
    }
    Ok(QMatrix::from_column_fn(space_dim(ne, na, k + 1), space_dim(ne, na, k), |c| {
        apply(t, &Cochain::basis(ne, na, k, c)).expect("same pair").into_values()
    }))
}

/// Matrix of `d_T: C^k → C^{k+1}`.
pub fn dt_matrix(t: &RbOperator, k: usize) -> Result<QMatrix> {
    dt_matrix_with(t, k, dt_apply)
}

/// Same matrix assembled from the explicit three-sum expansion.
pub fn dt_matrix_explicit(t: &RbOperator, k: usize) -> Result<QMatrix> {
    dt_matrix_with(t, k, dt_apply_explicit)
}

/// Cohomology of a cochain complex at one degree, with representatives
/// converted back to the complex's cochain type.
#[derive(Debug, Clone)]
pub struct DegreeCohomology<C> {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<C>,
    pub raw: Cohomology,
}

/// `d_{k-1}` for the incoming differential, with the empty map at `k = 0`.
pub(crate) fn incoming(k: usize, rows: usize, prev: impl FnOnce(usize) -> Result<QMatrix>) -> Result<QMatrix> {
    if k == 0 {
        Ok(QMatrix::zeros(rows, 0))
    } else {
        prev(k - 1)
    }
}

/// `H^k_T`
pub fn rb_cohomology(t: &RbOperator, k: usize) -> Result<DegreeCohomology<Cochain>> {
    let (ne, na) = (t.pair.dim_e(), t.pair.dim_a());
    let d_out = dt_matrix(t, k)?;
    let d_in = incoming(k, space_dim(ne, na, k), |j| dt_matrix(t, j))?;
    let raw = cohomology_dim(&d_out, &d_in)?;
    let representatives =
        raw.representatives.iter().map(|v| Cochain::from_values(ne, na, k, v.clone()).expect("sized")).collect();
    Ok(DegreeCohomology { degree: k, dim: raw.dim, representatives, raw })
}


#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::combinat::binomial;
    use crate::exactlin::rat;
    use crate::liealg::{ce_matrix, validate_lie, validate_rep};

    #[test]
    fn degree_zero_bracket_is_the_lie_bracket() {
        let pair = aff1_adjoint();
        let x = Cochain::constant(2, vec_i(&[1, 0]));
        let y = Cochain::constant(2, vec_i(&[0, 1]));
        let b = graded_bracket(&pair, &x, &y).unwrap();
        assert_eq!(b.values(), &vec_i(&[0, 1])[..]);
    }

    #[test]
    fn t0_bracket_examples() {
        let t = t0();
        let tc = t.as_cochain();
        assert!(graded_bracket(t.pair(), &tc, &tc).unwrap().is_zero());
        let e1 = Cochain::constant(2, vec_i(&[1, 0]));
        let b = graded_bracket(t.pair(), &tc, &e1).unwrap();
        // e1 ↦ −e2, e2 ↦ 0
        assert_eq!(b.to_matrix(), QMatrix::from_i64(&[&[0, 0], &[-1, 0]]));
    }

    #[test]
    fn defect_examples() {
        assert!(rb_defect(&RbOperator::zero(aff1_adjoint())).is_zero());
        assert!(rb_defect(&t0()).is_zero());
        let d = rb_defect(&identity());
        assert_eq!(d.eval_basis(&[0, 1]), vec_i(&[0, 1]));
        assert_eq!(definition_residual(&identity()), d.neg());
        assert!(is_relative_rb(&t0()));
        assert!(!is_relative_rb(&identity()));
    }

    #[test]
    fn induced_structures() {
        let t = t0();
        let l = induced_lie(&t).unwrap();
        assert_eq!(l, LieAlgebra::abelian(2));
        let r = induced_rep(&t).unwrap();
        assert_eq!(r.matrices()[0], QMatrix::from_i64(&[&[0, 0], &[-1, 0]]));
        assert!(r.matrices()[1].is_zero());
        let z = RbOperator::zero(aff1_adjoint());
        assert!(induced_rep(&z).unwrap().matrices().iter().all(QMatrix::is_zero));
        assert!(matches!(induced_lie(&identity()), Err(Error::Precondition(_))));
        let pair = induced_pair(&t).unwrap();
        assert!(validate_lie(&pair.algebra).is_empty());
        assert!(validate_rep(&pair).unwrap().is_empty());
    }

    #[test]
    fn dt_examples() {
        let t = t0();
        let d0 = dt_matrix(&t, 0).unwrap();
        assert_eq!(d0, QMatrix::from_i64(&[&[0, 0], &[-1, 0], &[0, 0], &[0, 0]]));
        assert_eq!(d0.kernel_basis().len(), 1);
        let d1 = dt_matrix(&t, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (2, 4));
        assert!((&d1 * &d0).is_zero());
        for k in 0..=2 {
            assert_eq!(dt_matrix(&t, k).unwrap(), dt_matrix_explicit(&t, k).unwrap());
            assert_eq!(dt_matrix(&t, k).unwrap(), ce_matrix(&induced_pair(&t).unwrap(), k).unwrap());
            assert!(dt_matrix(&RbOperator::zero(aff1_adjoint()), k).unwrap().is_zero());
        }
        assert!(dt_matrix(&identity(), 0).is_err());
    }

    #[test]
    fn cohomology_examples() {
        let h0 = rb_cohomology(&t0(), 0).unwrap();
        assert_eq!(h0.dim, 1);
        assert_eq!(h0.representatives[0].values(), &vec_i(&[0, 1])[..]);
        let z = RbOperator::zero(aff1_adjoint());
        let mut euler = 0i64;
        for k in 0..=2 {
            assert_eq!(rb_cohomology(&z, k).unwrap().dim, binomial(2, k) * 2);
            let d = rb_cohomology(&t0(), k).unwrap().dim as i64;
            euler += if k % 2 == 0 { d } else { -d };
        }
        assert_eq!(euler, 2 - 4 + 2);
    }

    #[test]
    fn mismatched_pair_is_an_input_error() {
        let c = Cochain::zero(3, 2, 1);
        assert!(matches!(graded_bracket(&aff1_adjoint(), &c, &c), Err(Error::Input(_))));
        assert!(RbOperator::new(aff1_adjoint(), QMatrix::zeros(2, 3)).is_err());
        let _ = rat(0);
    }
}
