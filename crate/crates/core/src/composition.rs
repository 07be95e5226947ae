//! Octonion algebras over ℚ by Cayley–Dickson doubling.
//!
//! Basis order is (1, e₁, e₂, e₁e₂, e₃, e₁e₃, e₂e₃, (e₁e₂)e₃); an element
//! (u, v) of a doubled algebra stands for u + v·e with e the new unit.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{span_basis, Matrix};
use crate::random::Sampler;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("doubling parameters must be nonzero")]
    ZeroParameter,
    #[error("operands belong to different algebras")]
    MixedParents,
    #[error("supplied 4-space is not a subalgebra")]
    NotSubalgebra,
    #[error("supplied data does not give a decomposition C = H ⊕ He")]
    NotComplement,
    #[error("expected {expected} coordinates, got {found}")]
    BadLength { found: usize, expected: usize },
}

/// Cayley–Dickson product on vectors of length 2^k with parameters
/// `params[..k]`: (u,v)(w,z) = (uw + γ z̄v, zu + v w̄).
fn cd_mul(a: &[Q], b: &[Q], params: &[Q]) -> Vec<Q> {
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let inner = &params[..params.len() - 1];
    let gamma = &params[params.len() - 1];
    let (u, v) = a.split_at(h);
    let (w, z) = b.split_at(h);
    let uw = cd_mul(u, w, inner);
    let zbv = cd_mul(&cd_conj(z), v, inner);
    let zu = cd_mul(z, u, inner);
    let vwb = cd_mul(v, &cd_conj(w), inner);
    uw.iter().zip(&zbv).map(|(x, y)| x + gamma * y).chain(zu.iter().zip(&vwb).map(|(x, y)| x + y)).collect()
}

fn cd_conj(a: &[Q]) -> Vec<Q> {
    let n = a.len();
    if n == 1 {
        return a.to_vec();
    }
    let h = n / 2;
    let mut out = cd_conj(&a[..h]);
    out.extend(a[h..].iter().map(|c| -c));
    out
}

#[derive(Debug)]
pub struct CayleyAlgebra {
    params: [Q; 3],
    /// e_i·e_j = table[i][j].1 · e_{table[i][j].0}
    table: Vec<Vec<(usize, Q)>>,
    norm_diag: [Q; 8],
}

impl PartialEq for CayleyAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

impl CayleyAlgebra {
    pub fn new(alpha: Q, beta: Q, gamma: Q) -> Result<Arc<Self>, CompositionError> {
        if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
            return Err(CompositionError::ZeroParameter);
        }
        let params = [alpha, beta, gamma];
        let mut table = Vec::with_capacity(8);
        for i in 0..8 {
            let mut row = Vec::with_capacity(8);
            for j in 0..8 {
                let prod = cd_mul(&unit(i), &unit(j), &params);
                let (k, c) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .expect("basis products are nonzero");
                row.push((k, c));
            }
            table.push(row);
        }
        let [a, b, g] = &params;
        let norm_diag = [Q::one(), -a.clone(), -b.clone(), a * b, -g.clone(), a * g, b * g, -(a * b * g)];
        Ok(Arc::new(Self { params, table, norm_diag }))
    }

    pub fn params(&self) -> &[Q; 3] {
        &self.params
    }

    /// Diagonal coefficients of the norm form in the standard basis.
    pub fn norm_diagonal(&self) -> &[Q; 8] {
        &self.norm_diag
    }

    /// The norm form is positive definite, hence anisotropic over ℚ.
    pub fn norm_positive_definite(&self) -> bool {
        self.norm_diag.iter().all(|c| c > &Q::zero())
    }

    pub fn elem(self: &Arc<Self>, coords: Vec<Q>) -> Result<CayleyElem, CompositionError> {
        if coords.len() != 8 {
            return Err(CompositionError::BadLength { found: coords.len(), expected: 8 });
        }
        Ok(CayleyElem { alg: self.clone(), coords })
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> CayleyElem {
        CayleyElem { alg: self.clone(), coords: unit(i) }
    }

    pub fn one(self: &Arc<Self>) -> CayleyElem {
        self.basis(0)
    }

    pub fn zero(self: &Arc<Self>) -> CayleyElem {
        CayleyElem { alg: self.clone(), coords: vec![Q::zero(); 8] }
    }

    pub fn random(self: &Arc<Self>, s: &mut Sampler) -> CayleyElem {
        CayleyElem { alg: self.clone(), coords: s.vector(8) }
    }

    fn mul_coords(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); 8];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, c) = &self.table[i][j];
                out[*k] += x * y * c;
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mul(&self, a: &CayleyElem) -> Matrix {
        Matrix::from_cols(&(0..8).map(|j| self.mul_coords(&a.coords, &unit(j))).collect::<Vec<_>>())
    }

    /// Matrix of right multiplication by `a`.
    pub fn right_mul(&self, a: &CayleyElem) -> Matrix {
        Matrix::from_cols(&(0..8).map(|j| self.mul_coords(&unit(j), &a.coords)).collect::<Vec<_>>())
    }

    /// Matrix of x ↦ a(xa).
    pub fn u_op(&self, a: &CayleyElem) -> Matrix {
        let cols: Vec<Vec<Q>> =
            (0..8).map(|j| self.mul_coords(&a.coords, &self.mul_coords(&unit(j), &a.coords))).collect();
        Matrix::from_cols(&cols)
    }

    /// The reflection fixing the quaternion subalgebra H spanned by `h` and
    /// negating H·e, verified to be an automorphism of order two.
    pub fn reflection(self: &Arc<Self>, h: &[CayleyElem], e: &CayleyElem) -> Result<Matrix, CompositionError> {
        let hb = span_basis(&h.iter().map(|x| x.coords.clone()).collect::<Vec<_>>());
        if hb.len() != 4 {
            return Err(CompositionError::NotSubalgebra);
        }
        let mut gens = hb.clone();
        gens.push(unit(0));
        for x in &hb {
            for y in &hb {
                gens.push(self.mul_coords(x, y));
            }
        }
        if span_basis(&gens).len() != 4 {
            return Err(CompositionError::NotSubalgebra);
        }
        let he: Vec<Vec<Q>> = hb.iter().map(|x| self.mul_coords(x, &e.coords)).collect();
        let mut all = hb.clone();
        all.extend(he.iter().cloned());
        let p = Matrix::from_cols(&all);
        let p_inv = p.inverse().ok_or(CompositionError::NotComplement)?;
        let mut d = Matrix::identity(8);
        for i in 4..8 {
            d.set(i, i, -Q::one());
        }
        let tau = p.mul(&d).mul(&p_inv);
        if !tau.mul(&tau).is_identity() || !self.is_automorphism(&tau) {
            return Err(CompositionError::NotComplement);
        }
        Ok(tau)
    }

    /// Checks f(e_i e_j) = f(e_i) f(e_j) for all basis pairs.
    pub fn is_automorphism(&self, f: &Matrix) -> bool {
        let imgs: Vec<Vec<Q>> = (0..8).map(|j| f.col(j)).collect();
        (0..8).all(|i| {
            (0..8).all(|j| {
                let (k, c) = &self.table[i][j];
                let lhs: Vec<Q> = imgs[*k].iter().map(|x| x * c).collect();
                lhs == self.mul_coords(&imgs[i], &imgs[j])
            })
        })
    }
}

fn unit(i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); 8];
    v[i] = Q::one();
    v
}

#[derive(Clone, Debug)]
pub struct CayleyElem {
    alg: Arc<CayleyAlgebra>,
    coords: Vec<Q>,
}

impl PartialEq for CayleyElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_algebra(&self.alg, &other.alg)
    }
}

fn same_algebra(a: &Arc<CayleyAlgebra>, b: &Arc<CayleyAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CayleyElem {
    pub fn algebra(&self) -> &Arc<CayleyAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    fn with(&self, coords: Vec<Q>) -> Self {
        Self { alg: self.alg.clone(), coords }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CompositionError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(CompositionError::MixedParents);
        }
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with(self.alg.mul_coords(&self.coords, &other.coords))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        self.with(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, t: &Q) -> Self {
        self.with(self.coords.iter().map(|a| a * t).collect())
    }

    pub fn conj(&self) -> Self {
        let mut c: Vec<Q> = self.coords.iter().map(|a| -a).collect();
        c[0] = self.coords[0].clone();
        self.with(c)
    }

    pub fn norm(&self) -> Q {
        self.coords.iter().zip(&self.alg.norm_diag).fold(Q::zero(), |acc, (x, d)| acc + x * x * d)
    }

    pub fn trace(&self) -> Q {
        &self.coords[0] * Q::from_integer(2.into())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The scalar multiple t·1.
    pub fn scalar(alg: &Arc<CayleyAlgebra>, t: Q) -> Self {
        let mut c = vec![Q::zero(); 8];
        c[0] = t;
        CayleyElem { alg: alg.clone(), coords: c }
    }
}

/// The shipped algebras.
pub mod shipped {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    /// Split octonions, parameters (1, 1, 1).
    pub fn split() -> Arc<CayleyAlgebra> {
        CayleyAlgebra::new(q(1), q(1), q(1)).expect("nonzero parameters")
    }

    /// Parameters (−1, −1, −1): positive definite norm over ℚ.
    pub fn definite() -> Arc<CayleyAlgebra> {
        CayleyAlgebra::new(q(-1), q(-1), q(-1)).expect("nonzero parameters")
    }

    /// The quaternion subalgebra span(1, e₁, e₂, e₁e₂) and the unit e₃.
    pub fn standard_quaternion(c: &Arc<CayleyAlgebra>) -> (Vec<CayleyElem>, CayleyElem) {
        ((0..4).map(|i| c.basis(i)).collect(), c.basis(4))
    }
}

#[cfg(test)]
mod tests {
    use super::shipped::*;
    use super::*;

    #[test]
    fn unit_and_squares() {
        let c = CayleyAlgebra::new(Q::from_integer(2.into()), Q::from_integer(3.into()), Q::from_integer(5.into()))
            .unwrap();
        let mut s = Sampler::new(1);
        let a = c.random(&mut s);
        assert_eq!(a.mul(&c.one()), a);
        assert_eq!(c.one().mul(&a), a);
        assert_eq!(c.basis(1).mul(&c.basis(1)), CayleyElem::scalar(&c, Q::from_integer(2.into())));
        assert_eq!(c.basis(2).mul(&c.basis(2)), CayleyElem::scalar(&c, Q::from_integer(3.into())));
        assert_eq!(c.basis(4).mul(&c.basis(4)), CayleyElem::scalar(&c, Q::from_integer(5.into())));
    }

    #[test]
    fn basis_labels() {
        let c = definite();
        assert_eq!(c.basis(1).mul(&c.basis(2)), c.basis(3));
        assert_eq!(c.basis(1).mul(&c.basis(4)), c.basis(5));
        assert_eq!(c.basis(3).mul(&c.basis(4)), c.basis(7));
    }

    #[test]
    fn split_has_zero_divisors() {
        // Brute force over coordinates in {−1,0,1} on the span of 1 and e₁.
        let c = split();
        let mut found = false;
        for a0 in -1i64..=1 {
            for a1 in -1i64..=1 {
                for b0 in -1i64..=1 {
                    for b1 in -1i64..=1 {
                        let mut x = vec![Q::zero(); 8];
                        let mut y = vec![Q::zero(); 8];
                        x[0] = Q::from_integer(a0.into());
                        x[1] = Q::from_integer(a1.into());
                        y[0] = Q::from_integer(b0.into());
                        y[1] = Q::from_integer(b1.into());
                        let (x, y) = (c.elem(x).unwrap(), c.elem(y).unwrap());
                        if !x.is_zero() && !y.is_zero() && x.mul(&y).is_zero() {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
        assert!(definite().norm_positive_definite());
        assert!(!split().norm_positive_definite());
    }

    #[test]
    fn conjugation_identities() {
        let c = definite();
        let mut s = Sampler::new(2);
        for _ in 0..20 {
            let x = c.random(&mut s);
            assert_eq!(x.add(&x.conj()), CayleyElem::scalar(&c, x.trace()));
            assert_eq!(x.mul(&x.conj()), CayleyElem::scalar(&c, x.norm()));
        }
    }

    #[test]
    fn u_op_examples() {
        let c = definite();
        assert!(c.u_op(&c.one()).is_identity());
        let mut s = Sampler::new(3);
        let a = c.random(&mut s);
        let u = c.u_op(&a);
        assert_eq!(u.apply(&c.one().coords), a.mul(&a).coords);
        // Flexible law as a matrix identity: L_a R_a = R_a L_a.
        assert_eq!(u, c.right_mul(&a).mul(&c.left_mul(&a)));
        assert_eq!(u, c.left_mul(&a).mul(&c.right_mul(&a)));
        for _ in 0..50 {
            let x = c.random(&mut s);
            let ux = c.elem(u.apply(&x.coords)).unwrap();
            assert_eq!(ux.norm(), a.norm() * a.norm() * x.norm());
        }
    }

    #[test]
    fn reflection_is_involutive_automorphism() {
        for c in [split(), definite()] {
            let (h, e) = standard_quaternion(&c);
            let tau = c.reflection(&h, &e).unwrap();
            assert_eq!(tau.apply(&c.one().coords), c.one().coords);
            let mut s = Sampler::new(4);
            for _ in 0..100 {
                let x = c.random(&mut s);
                let y = c.random(&mut s);
                let tx = c.elem(tau.apply(&x.coords)).unwrap();
                let ty = c.elem(tau.apply(&y.coords)).unwrap();
                assert_eq!(tau.apply(&x.mul(&y).coords), tx.mul(&ty).coords);
            }
        }
    }

    #[test]
    fn reflection_acts_as_plus_minus() {
        let c = definite();
        let (h, e) = standard_quaternion(&c);
        let tau = c.reflection(&h, &e).unwrap();
        let mut s = Sampler::new(5);
        let hh = c.elem([s.vector(4), vec![Q::zero(); 4]].concat()).unwrap();
        let hp = c.elem([s.vector(4), vec![Q::zero(); 4]].concat()).unwrap();
        let x = hh.add(&hp.mul(&e));
        assert_eq!(tau.apply(&x.coords), hh.sub(&hp.mul(&e)).coords);
    }

    #[test]
    fn non_subalgebra_rejected() {
        let c = definite();
        let h = vec![c.basis(0), c.basis(1), c.basis(2), c.basis(4)];
        assert_eq!(c.reflection(&h, &c.basis(3)), Err(CompositionError::NotSubalgebra));
    }
}
