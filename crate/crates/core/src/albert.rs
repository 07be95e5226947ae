//! Albert algebras over ℚ in three presentations: the first Tits construction
//! J(D, μ), the second Tits construction J(B, τ, u, μ), and the reduced
//! algebra H₃(C, Γ).
//!
//! Coordinates are 27 rationals. First: the three D-slots, each in the ℚ-basis
//! of D. Second: nine coordinates of the τ-symmetric part (see
//! [`UnitaryInvolution::sym_coords`]) then the 18 ℚ-coordinates of B.
//! Reduced: ξ₁, ξ₂, ξ₃, then the octonions c₁, c₂, c₃.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::assoc3::{Assoc3Algebra, Assoc3Error, AssocElem, UnitaryInvolution};
use crate::composition::{CayleyAlgebra, CayleyElem, CompositionError};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::strmaps::LinOp;
use crate::Q;

pub const DIM: usize = 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlbertError {
    #[error("operands belong to different algebras")]
    MixedParents,
    #[error("operation requires the {0} construction")]
    WrongConstruction(&'static str),
    #[error("invalid construction parameters: {0}")]
    BadParameters(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("expected {expected} coordinates, got {found}")]
    BadLength { found: usize, expected: usize },
    #[error(transparent)]
    Assoc(#[from] Assoc3Error),
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

pub enum Construction {
    /// J(D, μ) = D₀ ⊕ D₁ ⊕ D₂ with D central simple of degree 3 over ℚ.
    First { d: Arc<Assoc3Algebra>, mu: Q },
    /// J(B, τ, u, μ) = H(B, τ) ⊕ B.
    Second {
        b: Arc<Assoc3Algebra>,
        tau: UnitaryInvolution,
        u: AssocElem,
        u_inv: AssocElem,
        mu: FieldElem,
        mu_bar: FieldElem,
    },
    /// Γ-hermitian 3×3 matrices over an octonion algebra C, Γ = diag(γ₁, γ₂, γ₃).
    Reduced { c: Arc<CayleyAlgebra>, gamma: [Q; 3] },
}

pub struct AlbertAlgebra {
    label: String,
    kind: Construction,
    pub(crate) cache: AlgebraCache,
}

/// Lazily computed tables shared by classification and fixed-point code.
#[derive(Default)]
pub(crate) struct AlgebraCache {
    pub(crate) gram: OnceLock<Matrix>,
    pub(crate) norm_tensor: OnceLock<Vec<Q>>,
}

impl fmt::Debug for AlbertAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlbertAlgebra({}: {})", self.label, self.kind_name())
    }
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

fn same(a: &Arc<AlbertAlgebra>, b: &Arc<AlbertAlgebra>) -> bool {
    Arc::ptr_eq(a, b)
}

impl AlbertAlgebra {
    pub fn first(label: impl Into<String>, d: Arc<Assoc3Algebra>, mu: Q) -> Result<Arc<Self>, AlbertError> {
        if d.center().degree() != 1 || d.dim_q() != 9 {
            return Err(AlbertError::BadParameters("D must be central simple over Q".into()));
        }
        if mu.is_zero() {
            return Err(AlbertError::BadParameters("mu must be nonzero".into()));
        }
        Ok(Arc::new(Self { label: label.into(), kind: Construction::First { d, mu }, cache: AlgebraCache::default() }))
    }

    /// Checks τ(u) = u, u invertible and N(u) = μμ̄.
    pub fn second(
        label: impl Into<String>,
        tau: UnitaryInvolution,
        u: AssocElem,
        mu: FieldElem,
    ) -> Result<Arc<Self>, AlbertError> {
        let b = tau.algebra().clone();
        if b.center().degree() != 2 || b.dim_q() != 18 {
            return Err(AlbertError::BadParameters("B must be M3(K) with K quadratic over Q".into()));
        }
        if tau.apply(&u) != u {
            return Err(AlbertError::BadParameters("tau(u) != u".into()));
        }
        let u_inv = u.inv().map_err(|_| AlbertError::BadParameters("u is not invertible".into()))?;
        if mu.is_zero() {
            return Err(AlbertError::BadParameters("mu must be nonzero".into()));
        }
        let mu_bar = tau.conj_scalar(&mu);
        if u.norm() != mu.mul(&mu_bar) {
            return Err(AlbertError::BadParameters("N(u) != mu * conj(mu)".into()));
        }
        Ok(Arc::new(Self {
            label: label.into(),
            kind: Construction::Second { b, tau, u, u_inv, mu, mu_bar },
            cache: AlgebraCache::default(),
        }))
    }

    pub fn reduced(label: impl Into<String>, c: Arc<CayleyAlgebra>, gamma: [Q; 3]) -> Result<Arc<Self>, AlbertError> {
        if gamma.iter().any(Zero::is_zero) {
            return Err(AlbertError::BadParameters("gamma entries must be nonzero".into()));
        }
        Ok(Arc::new(Self {
            label: label.into(),
            kind: Construction::Reduced { c, gamma },
            cache: AlgebraCache::default(),
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn construction(&self) -> &Construction {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Construction::First { .. } => "first",
            Construction::Second { .. } => "second",
            Construction::Reduced { .. } => "reduced",
        }
    }

    pub fn dim(&self) -> usize {
        DIM
    }

    /// The coordinate algebra D of a first construction.
    pub fn first_data(&self) -> Result<(&Arc<Assoc3Algebra>, &Q), AlbertError> {
        match &self.kind {
            Construction::First { d, mu } => Ok((d, mu)),
            _ => Err(AlbertError::WrongConstruction("first")),
        }
    }

    /// (B, τ, u, μ) of a second construction.
    pub fn second_data(
        &self,
    ) -> Result<(&Arc<Assoc3Algebra>, &UnitaryInvolution, &AssocElem, &FieldElem), AlbertError> {
        match &self.kind {
            Construction::Second { b, tau, u, mu, .. } => Ok((b, tau, u, mu)),
            _ => Err(AlbertError::WrongConstruction("second")),
        }
    }

    pub fn elem(self: &Arc<Self>, coords: Vec<Q>) -> Result<AlbertElem, AlbertError> {
        if coords.len() != DIM {
            return Err(AlbertError::BadLength { found: coords.len(), expected: DIM });
        }
        Ok(AlbertElem { alg: self.clone(), coords })
    }

    fn make(self: &Arc<Self>, coords: Vec<Q>) -> AlbertElem {
        debug_assert_eq!(coords.len(), DIM);
        AlbertElem { alg: self.clone(), coords }
    }

    pub fn zero(self: &Arc<Self>) -> AlbertElem {
        self.make(vec![Q::zero(); DIM])
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> AlbertElem {
        let mut v = vec![Q::zero(); DIM];
        v[i] = Q::one();
        self.make(v)
    }

    pub fn one(self: &Arc<Self>) -> AlbertElem {
        match &self.kind {
            Construction::First { d, .. } => self.pack_first(&d.one(), &d.zero(), &d.zero()),
            Construction::Second { b, .. } => self.pack_second(&b.one(), &b.zero()),
            Construction::Reduced { c, .. } => {
                let z = c.zero();
                self.pack_reduced(&[Q::one(), Q::one(), Q::one()], [&z, &z, &z])
            }
        }
    }

    pub fn scalar(self: &Arc<Self>, t: &Q) -> AlbertElem {
        self.one().scale(t)
    }

    pub fn random(self: &Arc<Self>, s: &mut Sampler) -> AlbertElem {
        self.make(s.vector(DIM))
    }

    /// Random element supported on few coordinates; cheaper to work with.
    pub fn random_sparse(self: &Arc<Self>, s: &mut Sampler, density: f64) -> AlbertElem {
        self.make(s.sparse_vector(DIM, density))
    }

    pub fn random_invertible(self: &Arc<Self>, s: &mut Sampler) -> AlbertElem {
        loop {
            let x = self.random(s);
            if !x.norm().is_zero() {
                return x;
            }
        }
    }

    fn pack_first(self: &Arc<Self>, x0: &AssocElem, x1: &AssocElem, x2: &AssocElem) -> AlbertElem {
        let mut v = x0.to_q_coords();
        v.extend(x1.to_q_coords());
        v.extend(x2.to_q_coords());
        self.make(v)
    }

    fn pack_second(self: &Arc<Self>, a0: &AssocElem, a: &AssocElem) -> AlbertElem {
        let Construction::Second { tau, .. } = &self.kind else { unreachable!("second only") };
        let mut v = tau.sym_coords(a0).expect("first component is symmetric");
        v.extend(a.to_q_coords());
        self.make(v)
    }

    fn pack_reduced(self: &Arc<Self>, xi: &[Q; 3], c: [&CayleyElem; 3]) -> AlbertElem {
        let mut v = xi.to_vec();
        for ci in c {
            v.extend(ci.coords().iter().cloned());
        }
        self.make(v)
    }

    /// (x₀, x₁, x₂) ↦ element of J(D, μ).
    pub fn from_first(
        self: &Arc<Self>,
        x0: &AssocElem,
        x1: &AssocElem,
        x2: &AssocElem,
    ) -> Result<AlbertElem, AlbertError> {
        let (d, _) = self.first_data()?;
        for x in [x0, x1, x2] {
            if !Arc::ptr_eq(x.algebra(), d) && **x.algebra() != **d {
                return Err(AlbertError::MixedParents);
            }
        }
        Ok(self.pack_first(x0, x1, x2))
    }

    /// (a₀, a) ↦ element of J(B, τ, u, μ); a₀ must be τ-symmetric.
    pub fn from_second(self: &Arc<Self>, a0: &AssocElem, a: &AssocElem) -> Result<AlbertElem, AlbertError> {
        let (_, tau, _, _) = self.second_data()?;
        let mut v = tau.sym_coords(a0)?;
        v.extend(a.to_q_coords());
        Ok(self.make(v))
    }

    pub fn from_reduced(self: &Arc<Self>, xi: [Q; 3], c: [CayleyElem; 3]) -> Result<AlbertElem, AlbertError> {
        if !matches!(self.kind, Construction::Reduced { .. }) {
            return Err(AlbertError::WrongConstruction("reduced"));
        }
        Ok(self.pack_reduced(&xi, [&c[0], &c[1], &c[2]]))
    }
}

#[derive(Clone)]
pub struct AlbertElem {
    alg: Arc<AlbertAlgebra>,
    coords: Vec<Q>,
}

impl PartialEq for AlbertElem {
    fn eq(&self, other: &Self) -> bool {
        same(&self.alg, &other.alg) && self.coords == other.coords
    }
}

impl Eq for AlbertElem {}

impl fmt::Debug for AlbertElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "AlbertElem({}: [{}])", self.alg.label, c.join(","))
    }
}

/// Native components, unpacked once per operation.
enum Native {
    First([AssocElem; 3]),
    Second(AssocElem, AssocElem),
    Reduced([Q; 3], [CayleyElem; 3]),
}

impl AlbertElem {
    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn with(&self, coords: Vec<Q>) -> Self {
        Self { alg: self.alg.clone(), coords }
    }

    fn check(&self, other: &Self) -> Result<(), AlbertError> {
        if same(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlbertError::MixedParents)
        }
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

    fn native(&self) -> Native {
        match &self.alg.kind {
            Construction::First { d, .. } => {
                let s = |k: usize| d.from_q_coords(&self.coords[9 * k..9 * k + 9]).expect("9 coordinates");
                Native::First([s(0), s(1), s(2)])
            }
            Construction::Second { b, tau, .. } => {
                let a0 = tau.sym_from_coords(&self.coords[..9]).expect("9 coordinates");
                let a = b.from_q_coords(&self.coords[9..]).expect("18 coordinates");
                Native::Second(a0, a)
            }
            Construction::Reduced { c, .. } => {
                let xi = [self.coords[0].clone(), self.coords[1].clone(), self.coords[2].clone()];
                let o = |k: usize| c.elem(self.coords[3 + 8 * k..11 + 8 * k].to_vec()).expect("8 coordinates");
                Native::Reduced(xi, [o(0), o(1), o(2)])
            }
        }
    }

    /// The slots (x₀, x₁, x₂) of a first-construction element.
    pub fn first_parts(&self) -> Result<[AssocElem; 3], AlbertError> {
        match self.native() {
            Native::First(x) => Ok(x),
            _ => Err(AlbertError::WrongConstruction("first")),
        }
    }

    /// The pair (a₀, a) of a second-construction element.
    pub fn second_parts(&self) -> Result<(AssocElem, AssocElem), AlbertError> {
        match self.native() {
            Native::Second(a0, a) => Ok((a0, a)),
            _ => Err(AlbertError::WrongConstruction("second")),
        }
    }

    /// (ξ, c) of a reduced element.
    pub fn reduced_parts(&self) -> Result<([Q; 3], [CayleyElem; 3]), AlbertError> {
        match self.native() {
            Native::Reduced(xi, c) => Ok((xi, c)),
            _ => Err(AlbertError::WrongConstruction("reduced")),
        }
    }

    pub fn try_jmul(&self, other: &Self) -> Result<Self, AlbertError> {
        self.check(other)?;
        Ok(self.jmul(other))
    }

    /// The Jordan product; operands must share an algebra.
    pub fn jmul(&self, other: &Self) -> Self {
        let alg = &self.alg;
        match (&alg.kind, self.native(), other.native()) {
            (Construction::First { mu, .. }, Native::First([a0, a1, a2]), Native::First([b0, b1, b2])) => {
                let s0 = a0.jordan(&b0).add(&a1.mul(&b2).tilde()).add(&b1.mul(&a2).tilde());
                let (ta0, tb0) = (a0.tilde(), b0.tilde());
                let inv2mu = (mu * Q::from_integer(2.into())).recip();
                let s1 = ta0.mul(&b1).add(&tb0.mul(&a1)).add(&a2.cross(&b2).scale_q(&inv2mu));
                let s2 = a2.mul(&tb0).add(&b2.mul(&ta0)).add(&a1.cross(&b1).scale_q(&(mu * half())));
                alg.pack_first(&s0, &s1, &s2)
            }
            (Construction::Second { tau, u, u_inv, mu_bar, .. }, Native::Second(a0, a), Native::Second(b0, b)) => {
                let w1 = a.mul(u).mul(&tau.apply(&b));
                let w2 = b.mul(u).mul(&tau.apply(&a));
                let s0 = a0.jordan(&b0).add(&w1.tilde()).add(&w2.tilde());
                let cr = tau.apply(&a).cross(&tau.apply(&b)).scale(mu_bar).mul(u_inv).scale_q(&half());
                let s1 = a0.tilde().mul(&b).add(&b0.tilde().mul(&a)).add(&cr);
                alg.pack_second(&s0, &s1)
            }
            (Construction::Reduced { .. }, _, _) => {
                let x = self.reduced_matrix();
                let y = other.reduced_matrix();
                let mut sum = [[None, None, None], [None, None, None], [None, None, None]];
                for i in 0..3 {
                    for j in 0..3 {
                        let mut acc: Option<CayleyElem> = None;
                        for k in 0..3 {
                            let t = x[i][k].mul(&y[k][j]).add(&y[i][k].mul(&x[k][j]));
                            acc = Some(match acc {
                                None => t,
                                Some(a) => a.add(&t),
                            });
                        }
                        sum[i][j] = acc.map(|a| a.scale(&half()));
                    }
                }
                let m = |i: usize, j: usize| sum[i][j].clone().expect("filled");
                let xi = [m(0, 0).coords()[0].clone(), m(1, 1).coords()[0].clone(), m(2, 2).coords()[0].clone()];
                alg.pack_reduced(&xi, [&m(1, 2), &m(2, 0), &m(0, 1)])
            }
            _ => unreachable!("native form matches construction"),
        }
    }

    /// The full 3×3 octonion matrix of a reduced element.
    pub fn reduced_matrix(&self) -> [[CayleyElem; 3]; 3] {
        let Construction::Reduced { c, gamma } = &self.alg.kind else { panic!("reduced construction only") };
        let Native::Reduced(xi, [c1, c2, c3]) = self.native() else { unreachable!("reduced") };
        let [g1, g2, g3] = gamma;
        let s = |t: &Q| CayleyElem::scalar(c, t.clone());
        [
            [s(&xi[0]), c3.clone(), c2.conj().scale(&(g3 / g1))],
            [c3.conj().scale(&(g1 / g2)), s(&xi[1]), c1.clone()],
            [c2.clone(), c1.conj().scale(&(g2 / g3)), s(&xi[2])],
        ]
    }

    /// T(x).
    pub fn trace(&self) -> Q {
        match self.native() {
            Native::First([x0, ..]) => x0.trace_q().expect("center Q"),
            Native::Second(a0, _) => a0.trace().to_q().expect("symmetric elements have rational trace"),
            Native::Reduced(xi, _) => &xi[0] + &xi[1] + &xi[2],
        }
    }

    /// N(x) from the construction's closed form (Newton identities for the
    /// reduced construction).
    pub fn norm(&self) -> Q {
        match (&self.alg.kind, self.native()) {
            (Construction::First { mu, .. }, Native::First([x0, x1, x2])) => {
                let n = |a: &AssocElem| a.norm_q().expect("center Q");
                n(&x0) + mu * n(&x1) + n(&x2) / mu - x0.mul(&x1).mul(&x2).trace_q().expect("center Q")
            }
            (Construction::Second { tau, u, mu, mu_bar, .. }, Native::Second(b0, b)) => {
                let tb = tau.apply(&b);
                let v = b0
                    .norm()
                    .add(&mu.mul(&b.norm()))
                    .add(&mu_bar.mul(&tb.norm()))
                    .sub(&b0.mul(&b).mul(u).mul(&tb).trace());
                v.to_q().expect("norm of a second construction lies in Q")
            }
            (Construction::Reduced { .. }, _) => self.newton_norm(),
            _ => unreachable!("native form matches construction"),
        }
    }

    pub fn trace_norm(&self) -> (Q, Q) {
        (self.trace(), self.norm())
    }

    /// N(x) = T(x)³/6 − T(x)T(x²)/2 + T(x³)/3, from powers under jmul.
    pub fn newton_norm(&self) -> Q {
        let x2 = self.jmul(self);
        let x3 = x2.jmul(self);
        let t1 = self.trace();
        let t2 = x2.trace();
        let t3 = x3.trace();
        &t1 * &t1 * &t1 / Q::from_integer(6.into()) - &t1 * &t2 / Q::from_integer(2.into())
            + t3 / Q::from_integer(3.into())
    }

    pub fn try_trace_form(&self, other: &Self) -> Result<Q, AlbertError> {
        self.check(other)?;
        Ok(self.trace_form(other))
    }

    /// The bilinear trace T(x, y).
    pub fn trace_form(&self, other: &Self) -> Q {
        match (&self.alg.kind, self.native(), other.native()) {
            (Construction::First { .. }, Native::First([x0, x1, x2]), Native::First([y0, y1, y2])) => {
                let t = |a: AssocElem| a.trace_q().expect("center Q");
                t(x0.mul(&y0)) + t(x1.mul(&y2)) + t(x2.mul(&y1))
            }
            (Construction::Second { tau, u, .. }, Native::Second(a0, a), Native::Second(b0, b)) => {
                let v = a0
                    .mul(&b0)
                    .trace()
                    .add(&a.mul(u).mul(&tau.apply(&b)).trace())
                    .add(&u.mul(&tau.apply(&a)).mul(&b).trace());
                v.to_q().expect("trace form lies in Q")
            }
            (Construction::Reduced { .. }, _, _) => self.jmul(other).trace(),
            _ => unreachable!("native form matches construction"),
        }
    }

    /// The adjoint x#.
    pub fn adjoint(&self) -> Self {
        let alg = &self.alg;
        match (&alg.kind, self.native()) {
            (Construction::First { mu, .. }, Native::First([x0, x1, x2])) => alg.pack_first(
                &x0.adjoint().sub(&x1.mul(&x2)),
                &x2.adjoint().scale_q(&mu.recip()).sub(&x0.mul(&x1)),
                &x1.adjoint().scale_q(mu).sub(&x2.mul(&x0)),
            ),
            (Construction::Second { tau, u, u_inv, mu_bar, .. }, Native::Second(a0, a)) => {
                let ta = tau.apply(&a);
                alg.pack_second(
                    &a0.adjoint().sub(&a.mul(u).mul(&ta)),
                    &ta.adjoint().scale(mu_bar).mul(u_inv).sub(&a0.mul(&a)),
                )
            }
            (Construction::Reduced { .. }, _) => {
                // x# = x² − T(x)x + ½(T(x)² − T(x²))·1
                let t = self.trace();
                let x2 = self.jmul(self);
                let s = (&t * &t - x2.trace()) * half();
                x2.sub(&self.scale(&t)).add(&alg.scalar(&s))
            }
            _ => unreachable!("native form matches construction"),
        }
    }

    pub fn try_cross(&self, other: &Self) -> Result<Self, AlbertError> {
        self.check(other)?;
        Ok(self.cross(other))
    }

    /// The Freudenthal cross product x×y, the linearization of #.
    pub fn cross(&self, other: &Self) -> Self {
        let alg = &self.alg;
        match (&alg.kind, self.native(), other.native()) {
            (Construction::First { mu, .. }, Native::First([x0, x1, x2]), Native::First([y0, y1, y2])) => alg
                .pack_first(
                    &x0.cross(&y0).sub(&x1.mul(&y2)).sub(&y1.mul(&x2)),
                    &x2.cross(&y2).scale_q(&mu.recip()).sub(&x0.mul(&y1)).sub(&y0.mul(&x1)),
                    &x1.cross(&y1).scale_q(mu).sub(&x2.mul(&y0)).sub(&y2.mul(&x0)),
                ),
            (Construction::Second { tau, u, u_inv, mu_bar, .. }, Native::Second(a0, a), Native::Second(b0, b)) => {
                let (ta, tb) = (tau.apply(&a), tau.apply(&b));
                alg.pack_second(
                    &a0.cross(&b0).sub(&a.mul(u).mul(&tb)).sub(&b.mul(u).mul(&ta)),
                    &ta.cross(&tb).scale(mu_bar).mul(u_inv).sub(&a0.mul(&b)).sub(&b0.mul(&a)),
                )
            }
            (Construction::Reduced { .. }, _, _) => {
                // 2x·y − T(x)y − T(y)x + (T(x)T(y) − T(x, y))·1
                let (tx, ty) = (self.trace(), other.trace());
                let xy = self.jmul(other);
                let c = &tx * &ty - xy.trace();
                xy.scale(&Q::from_integer(2.into())).sub(&other.scale(&tx)).sub(&self.scale(&ty)).add(&alg.scalar(&c))
            }
            _ => unreachable!("native form matches construction"),
        }
    }

    /// x⁻¹ = N(x)⁻¹·x#.
    pub fn inv(&self) -> Result<Self, AlbertError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(AlbertError::NotInvertible);
        }
        Ok(self.adjoint().scale(&n.recip()))
    }

    /// U_x(y) = T(x, y)x − x#×y.
    pub fn u_apply(&self, y: &Self) -> Self {
        self.u_apply_with(&self.adjoint(), y)
    }

    fn u_apply_with(&self, sharp: &Self, y: &Self) -> Self {
        self.scale(&self.trace_form(y)).sub(&sharp.cross(y))
    }

    /// The 27×27 matrix of U_x.
    pub fn u_op(&self) -> LinOp {
        let sharp = self.adjoint();
        let cols: Vec<Vec<Q>> = (0..DIM).map(|i| self.u_apply_with(&sharp, &self.alg.basis(i)).coords).collect();
        LinOp::from_columns(&self.alg, &cols)
    }

    /// Matrix of right multiplication y ↦ y·x.
    pub fn r_op(&self) -> LinOp {
        let cols: Vec<Vec<Q>> = (0..DIM).map(|i| self.alg.basis(i).jmul(self).coords).collect();
        LinOp::from_columns(&self.alg, &cols)
    }
}

/// The Jordan product from the cubic norm structure alone:
/// x·y = ½(x×y + T(x)y + T(y)x − (T(x)T(y) − T(x, y))·1).
pub fn product_from_norm_data(x: &AlbertElem, y: &AlbertElem) -> AlbertElem {
    let (tx, ty) = (x.trace(), y.trace());
    let c = &tx * &ty - x.trace_form(y);
    x.cross(y).add(&y.scale(&tx)).add(&x.scale(&ty)).sub(&x.algebra().scalar(&c)).scale(&half())
}

/// The shipped algebras.
pub mod shipped {
    use super::*;
    use crate::assoc3::shipped::{cyclic7_gamma2, split_q, unitary_b};
    use crate::composition::shipped::{definite, split};

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    /// J(M₃(ℚ), μ).
    pub fn split_first(mu: i64) -> Arc<AlbertAlgebra> {
        AlbertAlgebra::first(format!("J(M3(Q),{mu})"), split_q(), qi(mu)).expect("valid")
    }

    /// J((L/ℚ, σ, 2), 3).
    pub fn cyclic7_first() -> Arc<AlbertAlgebra> {
        AlbertAlgebra::first("J(D,3)", cyclic7_gamma2(), qi(3)).expect("valid")
    }

    /// J(B, τ, u, μ) with B = M₃(ℚ(i)), g = diag(1,1,2), u = g⁻¹h for
    /// h = [[1,i,0],[−i,3,0],[0,0,5]] (so N(u) = 5) and μ = 1 + 2i.
    pub fn unitary_second() -> Arc<AlbertAlgebra> {
        let (b, tau) = unitary_b();
        let k = b.entry_field().clone();
        let e = |re: i64, im: i64| FieldElem::new(&k, vec![qi(re), qi(im)]).expect("degree 2");
        let h = b
            .from_entries(vec![e(1, 0), e(0, 1), e(0, 0), e(0, -1), e(3, 0), e(0, 0), e(0, 0), e(0, 0), e(5, 0)])
            .expect("nine entries");
        let u = tau.g().inv().expect("g invertible").mul(&h);
        AlbertAlgebra::second("J(B,tau,u,1+2i)", tau, u, e(1, 2)).expect("admissible u, mu")
    }

    /// H₃(C, 1) over the split octonions.
    pub fn split_reduced() -> Arc<AlbertAlgebra> {
        AlbertAlgebra::reduced("H3(C_split)", split(), [qi(1), qi(1), qi(1)]).expect("valid")
    }

    /// H₃(C, 1) over the octonions with parameters (−1, −1, −1).
    pub fn definite_reduced() -> Arc<AlbertAlgebra> {
        AlbertAlgebra::reduced("H3(C_def)", definite(), [qi(1), qi(1), qi(1)]).expect("valid")
    }

    /// Reduced algebra with a nontrivial Γ, used to exercise the twist.
    pub fn twisted_reduced() -> Arc<AlbertAlgebra> {
        AlbertAlgebra::reduced("H3(C_def,diag(1,-1,2))", definite(), [qi(1), qi(-1), qi(2)]).expect("valid")
    }

    /// Every shipped algebra, for suites that range over constructions.
    pub fn all() -> Vec<Arc<AlbertAlgebra>> {
        vec![
            split_first(1),
            split_first(2),
            cyclic7_first(),
            unitary_second(),
            split_reduced(),
            definite_reduced(),
            twisted_reduced(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::shipped::*;
    use super::*;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn unit_and_commutativity() {
        let mut s = Sampler::new(21);
        for a in all() {
            let one = a.one();
            assert_eq!(one.trace_norm(), (qi(3), qi(1)), "{}", a.label());
            assert_eq!(one.adjoint(), one);
            for _ in 0..3 {
                let x = a.random(&mut s);
                let y = a.random(&mut s);
                assert_eq!(x.jmul(&one), x, "{}", a.label());
                assert_eq!(x.jmul(&y), y.jmul(&x), "{}", a.label());
            }
        }
    }

    #[test]
    fn product_agrees_with_norm_data() {
        let mut s = Sampler::new(22);
        for a in all() {
            for _ in 0..5 {
                let x = a.random(&mut s);
                let y = a.random(&mut s);
                assert_eq!(x.jmul(&y), product_from_norm_data(&x, &y), "{}", a.label());
            }
        }
    }

    #[test]
    fn newton_matches_closed_norm() {
        let mut s = Sampler::new(23);
        for a in all() {
            for _ in 0..5 {
                let x = a.random(&mut s);
                assert_eq!(x.newton_norm(), x.norm(), "{}", a.label());
                assert_eq!(x.jmul(&x.adjoint()), a.scalar(&x.norm()), "{}", a.label());
            }
        }
    }

    #[test]
    fn first_construction_examples() {
        let a = split_first(2);
        let (d, _) = a.first_data().unwrap();
        let dg = d.from_int_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let x = a.from_first(&dg, &d.zero(), &d.zero()).unwrap();
        assert_eq!(x.trace_norm(), (qi(6), qi(6)));
        let y = a.from_first(&d.zero(), &d.one(), &d.zero()).unwrap();
        assert_eq!(y.trace_norm(), (qi(0), qi(2)));
        let mut s = Sampler::new(24);
        let (p, q) = (d.random(&mut s), d.random(&mut s));
        let xp = a.from_first(&p, &d.zero(), &d.zero()).unwrap();
        let xq = a.from_first(&q, &d.zero(), &d.zero()).unwrap();
        assert_eq!(xp.jmul(&xq), a.from_first(&p.jordan(&q), &d.zero(), &d.zero()).unwrap());
        let b = a.from_first(&d.zero(), &p, &d.zero()).unwrap();
        let c = a.from_first(&d.zero(), &d.zero(), &q).unwrap();
        assert_eq!(b.trace_form(&c), p.mul(&q).trace_q().unwrap());
        assert_eq!(xp.adjoint(), a.from_first(&p.adjoint(), &d.zero(), &d.zero()).unwrap());
        assert_eq!(b.adjoint(), a.from_first(&d.zero(), &d.zero(), &p.adjoint().scale_q(&qi(2))).unwrap());
        assert_eq!(
            c.adjoint(),
            a.from_first(&d.zero(), &q.adjoint().scale_q(&Q::new(1.into(), 2.into())), &d.zero()).unwrap()
        );
    }

    #[test]
    fn reduced_closed_norm_candidate() {
        // ξ₁ξ₂ξ₃ − (γ₂/γ₃)ξ₁n(c₁) − (γ₃/γ₁)ξ₂n(c₂) − (γ₁/γ₂)ξ₃n(c₃) + t(c₁c₂c₃)
        let mut s = Sampler::new(25);
        for a in [split_reduced(), definite_reduced(), twisted_reduced()] {
            let Construction::Reduced { gamma: [g1, g2, g3], .. } = a.construction() else { unreachable!() };
            for _ in 0..5 {
                let x = a.random(&mut s);
                let (xi, [c1, c2, c3]) = x.reduced_parts().unwrap();
                let expect = &xi[0] * &xi[1] * &xi[2]
                    - g2 / g3 * &xi[0] * c1.norm()
                    - g3 / g1 * &xi[1] * c2.norm()
                    - g1 / g2 * &xi[2] * c3.norm()
                    + c1.mul(&c2).mul(&c3).trace();
                assert_eq!(x.norm(), expect, "{}", a.label());
            }
        }
    }

    #[test]
    fn u_op_matches_quadratic_representation() {
        let mut s = Sampler::new(26);
        for a in all() {
            let x = a.random(&mut s);
            let r = x.r_op();
            let two = qi(2);
            let expect = r.matrix().mul(r.matrix()).scale(&two).sub(x.jmul(&x).r_op().matrix());
            assert_eq!(*x.u_op().matrix(), expect, "{}", a.label());
        }
        for a in all() {
            assert!(a.one().u_op().matrix().is_identity());
        }
    }

    #[test]
    fn second_construction_u_closed_form() {
        let a = unitary_second();
        let (b, tau, _, _) = a.second_data().unwrap();
        let mut s = Sampler::new(27);
        for _ in 0..5 {
            let h = b.random(&mut s);
            let a0 = h.add(&tau.apply(&h));
            let c0 = b.random(&mut s);
            let c = c0.add(&tau.apply(&c0));
            let d = b.random(&mut s);
            let x = a.from_second(&a0, &b.zero()).unwrap();
            let y = a.from_second(&c, &d).unwrap();
            let expect = a.from_second(&a0.mul(&c).mul(&a0), &a0.adjoint().mul(&d)).unwrap();
            assert_eq!(x.u_apply(&y), expect);
        }
    }
}
