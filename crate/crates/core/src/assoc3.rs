//! Degree-3 associative algebras: 3×3 matrices over a number field and cyclic
//! algebras (L/ℚ, σ, γ), with reduced trace and norm, the adjoint a#, the
//! cross product a×b, ã, and unitary involutions on M₃(K).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::{same_field, FieldElem, FieldError, NumberField};
use crate::random::Sampler;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Assoc3Error {
    #[error("operands belong to different algebras")]
    MixedParents,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("reduced norm or trace does not lie in the center")]
    NotInCenter,
    #[error("cyclic backend needs a cyclic cubic field and σ of order 3")]
    NotCyclic,
    #[error("γ must be nonzero")]
    ZeroGamma,
    #[error("operation requires the {0} backend")]
    WrongBackend(&'static str),
    #[error("unitary involutions need M₃(K) with K quadratic and Galois")]
    NotQuadratic,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("element is not symmetric")]
    NotSymmetric,
    #[error("expected {expected} coordinates, got {found}")]
    BadLength { found: usize, expected: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug)]
pub enum Backend {
    Matrix3 {
        field: Arc<NumberField>,
    },
    /// L ⊕ Lz ⊕ Lz² with zℓ = σ(ℓ)z, z³ = γ. `powers[i]` indexes σ^i.
    Cyclic {
        l: Arc<NumberField>,
        powers: [usize; 3],
        gamma: Q,
    },
}

#[derive(Debug)]
pub struct Assoc3Algebra {
    label: String,
    backend: Backend,
    center: Arc<NumberField>,
}

impl PartialEq for Assoc3Algebra {
    fn eq(&self, other: &Self) -> bool {
        match (&self.backend, &other.backend) {
            (Backend::Matrix3 { field: a }, Backend::Matrix3 { field: b }) => same_field(a, b),
            (Backend::Cyclic { l: a, powers: pa, gamma: ga }, Backend::Cyclic { l: b, powers: pb, gamma: gb }) => {
                same_field(a, b) && pa == pb && ga == gb
            }
            _ => false,
        }
    }
}

fn same_alg(a: &Arc<Assoc3Algebra>, b: &Arc<Assoc3Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Assoc3Algebra {
    pub fn matrix3(label: impl Into<String>, field: Arc<NumberField>) -> Arc<Self> {
        Arc::new(Self { label: label.into(), center: field.clone(), backend: Backend::Matrix3 { field } })
    }

    /// The cyclic algebra (L/ℚ, σ, γ); `sigma` indexes L's automorphism list.
    pub fn cyclic(
        label: impl Into<String>,
        l: Arc<NumberField>,
        sigma: usize,
        gamma: Q,
    ) -> Result<Arc<Self>, Assoc3Error> {
        if l.degree() != 3 || !l.is_galois() || sigma >= 3 || l.auto_order(sigma) != 3 {
            return Err(Assoc3Error::NotCyclic);
        }
        if gamma.is_zero() {
            return Err(Assoc3Error::ZeroGamma);
        }
        let sigma2 = (0..3).find(|&k| k != 0 && k != sigma).expect("group of order 3");
        Ok(Arc::new(Self {
            label: label.into(),
            center: NumberField::rationals(),
            backend: Backend::Cyclic { l, powers: [0, sigma, sigma2], gamma },
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn center(&self) -> &Arc<NumberField> {
        &self.center
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.backend, Backend::Cyclic { .. })
    }

    /// Dimension over ℚ.
    pub fn dim_q(&self) -> usize {
        match &self.backend {
            Backend::Matrix3 { field } => 9 * field.degree(),
            Backend::Cyclic { .. } => 9,
        }
    }

    /// The field in which entries (Matrix3) or components (Cyclic) live.
    pub fn entry_field(&self) -> &Arc<NumberField> {
        match &self.backend {
            Backend::Matrix3 { field } => field,
            Backend::Cyclic { l, .. } => l,
        }
    }

    fn width(&self) -> usize {
        match self.backend {
            Backend::Matrix3 { .. } => 9,
            Backend::Cyclic { .. } => 3,
        }
    }

    fn make(self: &Arc<Self>, data: Vec<FieldElem>) -> AssocElem {
        debug_assert_eq!(data.len(), self.width());
        AssocElem { alg: self.clone(), data }
    }

    pub fn zero(self: &Arc<Self>) -> AssocElem {
        let z = FieldElem::zero(self.entry_field());
        self.make(vec![z; self.width()])
    }

    pub fn one(self: &Arc<Self>) -> AssocElem {
        self.scalar_q(Q::one())
    }

    pub fn scalar_q(self: &Arc<Self>, t: Q) -> AssocElem {
        self.scalar(&FieldElem::from_q(&self.center, t))
    }

    /// The central element c·1.
    pub fn scalar(self: &Arc<Self>, c: &FieldElem) -> AssocElem {
        let f = self.entry_field();
        let mut out = self.zero();
        match &self.backend {
            Backend::Matrix3 { .. } => {
                for i in 0..3 {
                    out.data[4 * i] = c.clone();
                }
            }
            Backend::Cyclic { .. } => {
                out.data[0] = FieldElem::from_q(f, c.constant_coeff().clone());
            }
        }
        out
    }

    pub fn from_entries(self: &Arc<Self>, data: Vec<FieldElem>) -> Result<AssocElem, Assoc3Error> {
        if data.len() != self.width() {
            return Err(Assoc3Error::BadLength { found: data.len(), expected: self.width() });
        }
        if data.iter().any(|d| !same_field(d.field(), self.entry_field())) {
            return Err(Assoc3Error::MixedParents);
        }
        Ok(self.make(data))
    }

    /// Matrix3 over ℚ from integer rows.
    pub fn from_int_rows(self: &Arc<Self>, rows: [[i64; 3]; 3]) -> AssocElem {
        let f = self.entry_field();
        self.make(rows.iter().flatten().map(|&v| FieldElem::from_int(f, v)).collect())
    }

    /// The matrix unit E_ij.
    pub fn matrix_unit(self: &Arc<Self>, i: usize, j: usize) -> Result<AssocElem, Assoc3Error> {
        if self.is_cyclic() {
            return Err(Assoc3Error::WrongBackend("matrix3"));
        }
        let mut out = self.zero();
        out.data[3 * i + j] = FieldElem::one(self.entry_field());
        Ok(out)
    }

    /// ℓ₀ + ℓ₁z + ℓ₂z².
    pub fn cyclic_elem(
        self: &Arc<Self>,
        l0: FieldElem,
        l1: FieldElem,
        l2: FieldElem,
    ) -> Result<AssocElem, Assoc3Error> {
        if !self.is_cyclic() {
            return Err(Assoc3Error::WrongBackend("cyclic"));
        }
        self.from_entries(vec![l0, l1, l2])
    }

    /// The distinguished element z of a cyclic algebra.
    pub fn z(self: &Arc<Self>) -> Result<AssocElem, Assoc3Error> {
        let f = self.entry_field();
        self.cyclic_elem(FieldElem::zero(f), FieldElem::one(f), FieldElem::zero(f))
    }

    /// The embedding L → D of a cyclic algebra.
    pub fn embed_l(self: &Arc<Self>, l: &FieldElem) -> Result<AssocElem, Assoc3Error> {
        let f = self.entry_field();
        self.cyclic_elem(l.clone(), FieldElem::zero(f), FieldElem::zero(f))
    }

    pub fn from_q_coords(self: &Arc<Self>, coords: &[Q]) -> Result<AssocElem, Assoc3Error> {
        if coords.len() != self.dim_q() {
            return Err(Assoc3Error::BadLength { found: coords.len(), expected: self.dim_q() });
        }
        let f = self.entry_field();
        let d = f.degree();
        let data = coords.chunks(d).map(|c| FieldElem::new(f, c.to_vec())).collect::<Result<Vec<_>, _>>()?;
        Ok(self.make(data))
    }

    /// The ℚ-basis element with index `i` of [`AssocElem::to_q_coords`].
    pub fn basis_q(self: &Arc<Self>, i: usize) -> AssocElem {
        let mut v = vec![Q::zero(); self.dim_q()];
        v[i] = Q::one();
        self.from_q_coords(&v).expect("length matches")
    }

    pub fn random(self: &Arc<Self>, s: &mut Sampler) -> AssocElem {
        self.from_q_coords(&s.vector(self.dim_q())).expect("length matches")
    }

    pub fn random_invertible(self: &Arc<Self>, s: &mut Sampler) -> AssocElem {
        loop {
            let a = self.random(s);
            if !a.norm().is_zero() {
                return a;
            }
        }
    }

    /// σ^k applied to an element of L (cyclic backend only).
    fn sigma_pow(&self, l: &FieldElem, k: usize) -> FieldElem {
        match &self.backend {
            Backend::Cyclic { powers, .. } => {
                if k.is_multiple_of(3) {
                    l.clone()
                } else {
                    l.apply_auto(powers[k % 3]).expect("valid index")
                }
            }
            Backend::Matrix3 { .. } => unreachable!("cyclic only"),
        }
    }
}

impl fmt::Display for Assoc3Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::Matrix3 { field } => write!(f, "M3({})", field.label()),
            Backend::Cyclic { l, gamma, .. } => write!(f, "({}/Q, sigma, {gamma})", l.label()),
        }
    }
}

/// An element of an [`Assoc3Algebra`]: nine matrix entries (row-major) or a
/// triple (ℓ₀, ℓ₁, ℓ₂) over L.
#[derive(Clone)]
pub struct AssocElem {
    alg: Arc<Assoc3Algebra>,
    data: Vec<FieldElem>,
}

impl PartialEq for AssocElem {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && same_alg(&self.alg, &other.alg)
    }
}

impl Eq for AssocElem {}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

impl AssocElem {
    pub fn algebra(&self) -> &Arc<Assoc3Algebra> {
        &self.alg
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    fn with(&self, data: Vec<FieldElem>) -> Self {
        Self { alg: self.alg.clone(), data }
    }

    pub fn to_q_coords(&self) -> Vec<Q> {
        self.data.iter().flat_map(|e| e.coeffs().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), Assoc3Error> {
        if same_alg(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Assoc3Error::MixedParents)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Assoc3Error> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Assoc3Error> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> Self {
        self.with(self.data.iter().map(FieldElem::neg).collect())
    }

    pub fn scale_q(&self, t: &Q) -> Self {
        self.with(self.data.iter().map(|a| a.scale(t)).collect())
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, c: &FieldElem) -> Self {
        match self.alg.backend {
            Backend::Matrix3 { .. } => self.with(self.data.iter().map(|a| a.mul(c)).collect()),
            Backend::Cyclic { .. } => self.scale_q(c.constant_coeff()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match &self.alg.backend {
            Backend::Matrix3 { .. } => {
                let a = &self.data;
                let b = &other.data;
                let data = (0..9)
                    .map(|k| {
                        let (i, j) = (k / 3, k % 3);
                        a[3 * i].mul(&b[j]).add(&a[3 * i + 1].mul(&b[3 + j])).add(&a[3 * i + 2].mul(&b[6 + j]))
                    })
                    .collect();
                self.with(data)
            }
            Backend::Cyclic { gamma, .. } => {
                let f = self.alg.entry_field();
                let mut out = vec![FieldElem::zero(f); 3];
                for (i, li) in self.data.iter().enumerate() {
                    if li.is_zero() {
                        continue;
                    }
                    for (j, mj) in other.data.iter().enumerate() {
                        if mj.is_zero() {
                            continue;
                        }
                        let mut t = li.mul(&self.alg.sigma_pow(mj, i));
                        if i + j >= 3 {
                            t = t.scale(gamma);
                        }
                        out[(i + j) % 3] = out[(i + j) % 3].add(&t);
                    }
                }
                self.with(out)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.alg.one(), |acc, _| acc.mul(self))
    }

    /// Matrix of left multiplication on D viewed as a right L-space with
    /// basis 1, z, z² (cyclic backend); the matrix itself for Matrix3.
    pub fn regular_matrix(&self) -> [[FieldElem; 3]; 3] {
        match &self.alg.backend {
            Backend::Matrix3 { .. } => std::array::from_fn(|i| std::array::from_fn(|j| self.data[3 * i + j].clone())),
            Backend::Cyclic { gamma, .. } => std::array::from_fn(|m| {
                std::array::from_fn(|j| {
                    let i = (m + 3 - j) % 3;
                    let mut c = self.data[i].clone();
                    if i + j >= 3 {
                        c = c.scale(gamma);
                    }
                    self.alg.sigma_pow(&c, (3 - m) % 3)
                })
            }),
        }
    }

    /// Reduced norm and trace, as elements of the center.
    pub fn reduced_norm_trace(&self) -> Result<(FieldElem, FieldElem), Assoc3Error> {
        let m = self.regular_matrix();
        let det = det3(&m);
        let tr = m[0][0].add(&m[1][1]).add(&m[2][2]);
        match &self.alg.backend {
            Backend::Matrix3 { .. } => Ok((det, tr)),
            Backend::Cyclic { .. } => {
                let c = &self.alg.center;
                let n = det.to_q().ok_or(Assoc3Error::NotInCenter)?;
                let t = tr.to_q().ok_or(Assoc3Error::NotInCenter)?;
                Ok((FieldElem::from_q(c, n), FieldElem::from_q(c, t)))
            }
        }
    }

    pub fn norm(&self) -> FieldElem {
        self.reduced_norm_trace().expect("reduced norm descends to the center").0
    }

    pub fn trace(&self) -> FieldElem {
        match &self.alg.backend {
            Backend::Matrix3 { .. } => self.data[0].add(&self.data[4]).add(&self.data[8]),
            Backend::Cyclic { .. } => {
                // Trace of the regular matrix: σ-orbit sum of ℓ₀.
                let (_, t) = self.data[0].galois_norm_trace().expect("cyclic field is Galois");
                FieldElem::from_q(&self.alg.center, t)
            }
        }
    }

    /// Norm and trace as rationals; `None` when the center is not ℚ.
    pub fn norm_q(&self) -> Option<Q> {
        self.norm().to_q().filter(|_| self.alg.center.degree() == 1)
    }

    pub fn trace_q(&self) -> Option<Q> {
        self.trace().to_q().filter(|_| self.alg.center.degree() == 1)
    }

    /// ã = ½(t(a)·1 − a).
    pub fn tilde(&self) -> Self {
        self.alg.scalar(&self.trace()).sub(self).scale_q(&half())
    }

    /// a# = a² − t(a)a + ½(t(a)² − t(a²))·1.
    pub fn adjoint(&self) -> Self {
        let t = self.trace();
        let a2 = self.mul(self);
        let s = t.mul(&t).sub(&a2.trace()).scale(&half());
        a2.sub(&self.scale(&t)).add(&self.alg.scalar(&s))
    }

    /// a×b = 2a·b − t(a)b − t(b)a + (t(a)t(b) − t(a·b))·1.
    pub fn cross(&self, other: &Self) -> Self {
        let ta = self.trace();
        let tb = other.trace();
        let two_dot = self.mul(other).add(&other.mul(self));
        let t_dot = two_dot.trace().scale(&half());
        let c = ta.mul(&tb).sub(&t_dot);
        two_dot.sub(&other.scale(&ta)).sub(&self.scale(&tb)).add(&self.alg.scalar(&c))
    }

    /// The Jordan product a·b = ½(ab + ba).
    pub fn jordan(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self)).scale_q(&half())
    }

    /// a⁻¹ = n(a)⁻¹·a#.
    pub fn inv(&self) -> Result<Self, Assoc3Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Assoc3Error::NotInvertible);
        }
        Ok(self.adjoint().scale(&n.inv()?))
    }

    /// Coefficients (t, s, n) of X³ − tX² + sX − n.
    pub fn charpoly(&self) -> (FieldElem, FieldElem, FieldElem) {
        (self.trace(), self.adjoint().trace(), self.norm())
    }

    /// True for central elements c·1.
    pub fn is_scalar(&self) -> bool {
        let c = match &self.alg.backend {
            Backend::Matrix3 { .. } => self.data[0].clone(),
            Backend::Cyclic { .. } => {
                if !self.data[0].is_rational() {
                    return false;
                }
                FieldElem::from_q(&self.alg.center, self.data[0].constant_coeff().clone())
            }
        };
        *self == self.alg.scalar(&c)
    }

    /// For the cyclic backend: ℓ if the element is ℓ + 0z + 0z².
    pub fn as_l(&self) -> Option<FieldElem> {
        match self.alg.backend {
            Backend::Cyclic { .. } if self.data[1].is_zero() && self.data[2].is_zero() => Some(self.data[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for AssocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AssocElem({}: {:?})", self.alg.label, self.data)
    }
}

impl fmt::Display for AssocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.data.iter().map(|e| format!("{e}")).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

fn det3(m: &[[FieldElem; 3]; 3]) -> FieldElem {
    let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t1.sub(&t2).add(&t3)
}

/// τ(x) = g⁻¹ x̄ᵀ g on M₃(K) for a hermitian invertible g; `conj` indexes the
/// nontrivial automorphism of K.
#[derive(Clone, Debug)]
pub struct UnitaryInvolution {
    alg: Arc<Assoc3Algebra>,
    g: AssocElem,
    g_inv: AssocElem,
    conj: usize,
}

impl UnitaryInvolution {
    pub fn new(g: &AssocElem) -> Result<Self, Assoc3Error> {
        let alg = g.alg.clone();
        let f = match &alg.backend {
            Backend::Matrix3 { field } => field,
            Backend::Cyclic { .. } => return Err(Assoc3Error::NotQuadratic),
        };
        if f.degree() != 2 || !f.is_galois() {
            return Err(Assoc3Error::NotQuadratic);
        }
        let inv = Self { alg: alg.clone(), g: g.clone(), g_inv: g.inv()?, conj: 1 };
        if inv.conj_transpose(g) != *g {
            return Err(Assoc3Error::NotHermitian);
        }
        Ok(inv)
    }

    pub fn algebra(&self) -> &Arc<Assoc3Algebra> {
        &self.alg
    }

    pub fn g(&self) -> &AssocElem {
        &self.g
    }

    pub fn conj_scalar(&self, c: &FieldElem) -> FieldElem {
        c.apply_auto(self.conj).expect("quadratic field has two automorphisms")
    }

    pub fn conj_transpose(&self, x: &AssocElem) -> AssocElem {
        let data = (0..9).map(|k| self.conj_scalar(&x.data[3 * (k % 3) + k / 3])).collect();
        x.with(data)
    }

    pub fn apply(&self, x: &AssocElem) -> AssocElem {
        self.g_inv.mul(&self.conj_transpose(x)).mul(&self.g)
    }

    /// Int(u)∘τ, again a unitary involution when τ(u) = u; its hermitian
    /// matrix is g·u⁻¹.
    pub fn twisted(&self, u: &AssocElem) -> Result<Self, Assoc3Error> {
        if self.apply(u) != *u {
            return Err(Assoc3Error::NotSymmetric);
        }
        Self::new(&self.g.mul(&u.inv()?))
    }

    pub fn unitary_data(&self, x: &AssocElem) -> UnitaryData {
        let n = x.norm();
        UnitaryData { is_symmetric: self.apply(x) == *x, in_sigma_prime: !n.is_zero() && n.is_rational() }
    }

    /// ℚ-basis of the symmetric elements: g⁻¹h for h running over the
    /// hermitian basis E_ii, E_ij·c + E_ji·c̄ (i < j, c ∈ {1, x}).
    pub fn sym_basis(&self) -> Vec<AssocElem> {
        (0..9)
            .map(|i| {
                let mut v = vec![Q::zero(); 9];
                v[i] = Q::one();
                self.sym_from_coords(&v).expect("length 9")
            })
            .collect()
    }

    /// Coordinates (h₁₁, h₂₂, h₃₃, h₁₂, h₁₃, h₂₃) of h = g·x, off-diagonal
    /// entries split over the basis 1, x of K.
    pub fn sym_coords(&self, x: &AssocElem) -> Result<Vec<Q>, Assoc3Error> {
        if self.apply(x) != *x {
            return Err(Assoc3Error::NotSymmetric);
        }
        let h = self.g.mul(x);
        let mut v: Vec<Q> = (0..3).map(|i| h.data[4 * i].constant_coeff().clone()).collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            v.extend(h.data[3 * i + j].coeffs().iter().cloned());
        }
        Ok(v)
    }

    pub fn sym_from_coords(&self, v: &[Q]) -> Result<AssocElem, Assoc3Error> {
        if v.len() != 9 {
            return Err(Assoc3Error::BadLength { found: v.len(), expected: 9 });
        }
        let f = self.alg.entry_field();
        let mut h = self.alg.zero();
        for i in 0..3 {
            h.data[4 * i] = FieldElem::from_q(f, v[i].clone());
        }
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let c = FieldElem::new(f, v[3 + 2 * k..5 + 2 * k].to_vec())?;
            h.data[3 * j + i] = self.conj_scalar(&c);
            h.data[3 * i + j] = c;
        }
        Ok(self.g_inv.mul(&h))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitaryData {
    pub is_symmetric: bool,
    pub in_sigma_prime: bool,
}

/// The shipped algebras.
pub mod shipped {
    use super::*;
    use crate::exactfield::shipped::{cyclic7, gaussian, CYCLIC7_SIGMA};

    /// M₃(ℚ).
    pub fn split_q() -> Arc<Assoc3Algebra> {
        Assoc3Algebra::matrix3("M3(Q)", NumberField::rationals())
    }

    /// D = (L/ℚ, σ, 2) over the conductor-7 cubic field.
    pub fn cyclic7_gamma2() -> Arc<Assoc3Algebra> {
        Assoc3Algebra::cyclic("D", cyclic7(), CYCLIC7_SIGMA, Q::from_integer(2.into())).expect("valid cyclic data")
    }

    /// B = M₃(ℚ(i)) with τ(x) = g⁻¹x̄ᵀg, g = diag(1, 1, 2).
    pub fn unitary_b() -> (Arc<Assoc3Algebra>, UnitaryInvolution) {
        let k = gaussian();
        let b = Assoc3Algebra::matrix3("B", k);
        let g = b.from_int_rows([[1, 0, 0], [0, 1, 0], [0, 0, 2]]);
        let tau = UnitaryInvolution::new(&g).expect("g is hermitian and invertible");
        (b, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::shipped::*;
    use super::*;
    use crate::exactfield::shipped::{cyclic7, gaussian};
    use crate::linalg::Matrix;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn cyclic_defining_relations() {
        let d = cyclic7_gamma2();
        let l = cyclic7();
        let z = d.z().unwrap();
        let ell = FieldElem::new(&l, vec![qi(1), qi(2), qi(-1)]).unwrap();
        let zl = z.mul(&d.embed_l(&ell).unwrap());
        let s = ell.apply_auto(1).unwrap();
        assert_eq!(zl, d.cyclic_elem(FieldElem::zero(&l), s, FieldElem::zero(&l)).unwrap());
        assert_eq!(z.mul(&z.mul(&z)), d.scalar_q(qi(2)));
    }

    #[test]
    fn matrix_units_multiply() {
        let m = split_q();
        assert_eq!(m.matrix_unit(0, 1).unwrap().mul(&m.matrix_unit(1, 2).unwrap()), m.matrix_unit(0, 2).unwrap());
    }

    #[test]
    fn norm_trace_examples() {
        let m = split_q();
        assert_eq!(m.one().reduced_norm_trace().unwrap().0.to_q(), Some(qi(1)));
        assert_eq!(m.one().trace_q(), Some(qi(3)));
        let d = m.from_int_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        assert_eq!((d.norm_q(), d.trace_q()), (Some(qi(6)), Some(qi(6))));
        let c = cyclic7_gamma2();
        let z = c.z().unwrap();
        assert_eq!((z.norm_q(), z.trace_q()), (Some(qi(2)), Some(qi(0))));
    }

    /// Left multiplication on D as a 9×9 ℚ-matrix.
    fn left_mul_q(a: &AssocElem) -> Matrix {
        let alg = a.algebra();
        let cols: Vec<Vec<Q>> = (0..alg.dim_q()).map(|i| a.mul(&alg.basis_q(i)).to_q_coords()).collect();
        Matrix::from_cols(&cols)
    }

    #[test]
    fn cyclic_norm_matches_rational_determinant() {
        // det over ℚ of left multiplication is Nrd³.
        let d = cyclic7_gamma2();
        let mut s = Sampler::new(11);
        for _ in 0..10 {
            let a = d.random(&mut s);
            let n = a.norm_q().unwrap();
            assert_eq!(left_mul_q(&a).det(), &n * &n * &n);
            // trace over ℚ of left multiplication is 3·Trd.
            let lm = left_mul_q(&a);
            let tr = (0..9).fold(Q::zero(), |acc, i| acc + lm.get(i, i));
            assert_eq!(tr, a.trace_q().unwrap() * qi(3));
        }
    }

    #[test]
    fn cyclic_closed_norm_formula() {
        // For a = ℓ₀ + ℓ₁z + ℓ₂z²: Nrd = N(ℓ₀) + γN(ℓ₁) + γ²N(ℓ₂) − γ·T(ℓ₀σ(ℓ₁)σ²(ℓ₂)).
        let d = cyclic7_gamma2();
        let mut s = Sampler::new(12);
        let g = qi(2);
        for _ in 0..10 {
            let a = d.random(&mut s);
            let [l0, l1, l2] = [&a.entries()[0], &a.entries()[1], &a.entries()[2]];
            let nt = |x: &FieldElem| x.galois_norm_trace().unwrap();
            let cross = l0.mul(&l1.apply_auto(1).unwrap()).mul(&l2.apply_auto(2).unwrap());
            let expect = nt(l0).0 + &g * nt(l1).0 + &g * &g * nt(l2).0 - &g * nt(&cross).1;
            assert_eq!(a.norm_q().unwrap(), expect);
        }
    }

    #[test]
    fn regular_embedding_is_homomorphism() {
        let d = cyclic7_gamma2();
        let mut s = Sampler::new(13);
        for _ in 0..10 {
            let a = d.random(&mut s);
            let b = d.random(&mut s);
            let (ma, mb, mab) = (a.regular_matrix(), b.regular_matrix(), a.mul(&b).regular_matrix());
            for i in 0..3 {
                for j in 0..3 {
                    let mut acc = FieldElem::zero(d.entry_field());
                    for k in 0..3 {
                        acc = acc.add(&ma[i][k].mul(&mb[k][j]));
                    }
                    assert_eq!(acc, mab[i][j]);
                }
            }
        }
    }

    #[test]
    fn adjoint_and_inverse() {
        for alg in [split_q(), cyclic7_gamma2()] {
            let one = alg.one();
            assert_eq!(one.adjoint(), one);
            // ½(t(1) − 1) = ½(3 − 1) = 1.
            assert_eq!(one.tilde(), one);
            let mut s = Sampler::new(14);
            for _ in 0..10 {
                let a = alg.random(&mut s);
                assert_eq!(a.mul(&a.adjoint()), alg.scalar(&a.norm()));
                let b = alg.random(&mut s);
                assert_eq!(a.cross(&b), b.cross(&a));
                assert_eq!(a.cross(&a), a.adjoint().scale_q(&qi(2)));
                if !a.norm().is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()), one);
                }
            }
        }
        let m = split_q();
        let d = m.from_int_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let expect = m
            .from_q_coords(&[
                qi(1),
                qi(0),
                qi(0),
                qi(0),
                Q::new(1.into(), 2.into()),
                qi(0),
                qi(0),
                qi(0),
                Q::new(1.into(), 3.into()),
            ])
            .unwrap();
        assert_eq!(d.inv().unwrap(), expect);
        assert_eq!(m.zero().inv(), Err(Assoc3Error::NotInvertible));
    }

    #[test]
    fn unitary_involution_axioms() {
        let (b, tau) = unitary_b();
        let mut s = Sampler::new(15);
        let k = gaussian();
        let i = FieldElem::generator(&k);
        assert_eq!(tau.apply(&b.scalar(&i)), b.scalar(&i.neg()));
        for _ in 0..10 {
            let x = b.random(&mut s);
            let y = b.random(&mut s);
            assert_eq!(tau.apply(&tau.apply(&x)), x);
            assert_eq!(tau.apply(&x.mul(&y)), tau.apply(&y).mul(&tau.apply(&x)));
            let h = x.add(&tau.apply(&x));
            assert!(tau.unitary_data(&h).is_symmetric);
            assert_eq!(tau.sym_from_coords(&tau.sym_coords(&h).unwrap()).unwrap(), h);
        }
        assert_eq!(tau.unitary_data(&b.one()), UnitaryData { is_symmetric: true, in_sigma_prime: true });
        let lam = b.scalar(&FieldElem::new(&k, vec![qi(1), qi(1)]).unwrap());
        assert_eq!(tau.unitary_data(&lam), UnitaryData { is_symmetric: false, in_sigma_prime: false });
        for e in tau.sym_basis() {
            assert!(tau.unitary_data(&e).is_symmetric);
        }
    }
}
