//! Structure-group machinery: linear operators on an Albert algebra, their
//! classification, the named automorphisms ψ_{a,b}, I_a, J_p, φ_{p,q}, the
//! scalar maps R_t, and words in U-operators.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::albert::{AlbertAlgebra, AlbertElem, AlbertError, DIM};
use crate::assoc3::{Assoc3Error, AssocElem};
use crate::linalg::Matrix;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrError {
    #[error("generator {0} of the word is not invertible")]
    NotInvertibleGenerator(usize),
    #[error("map is not a norm similarity")]
    NotSimilarity,
    #[error("N(a) and N(b) differ")]
    NormMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element does not have reduced norm one")]
    NormNotOne,
    #[error("element is not special unitary for the relevant involution")]
    NotSpecialUnitary,
    #[error("map is not an algebra isomorphism")]
    NotIsomorphism,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("matrix must be 27x27")]
    BadShape,
    #[error("operators belong to different algebras")]
    MixedParents,
    #[error(transparent)]
    Albert(#[from] AlbertError),
    #[error(transparent)]
    Assoc(#[from] Assoc3Error),
}

/// A ℚ-linear endomorphism of an Albert algebra, as a 27×27 matrix acting on
/// coordinate columns.
#[derive(Clone)]
pub struct LinOp {
    alg: Arc<AlbertAlgebra>,
    m: Matrix,
}

impl PartialEq for LinOp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.m == other.m
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp({}) {:?}", self.alg.label(), self.m)
    }
}

impl LinOp {
    pub fn from_columns(alg: &Arc<AlbertAlgebra>, cols: &[Vec<Q>]) -> Self {
        Self { alg: alg.clone(), m: Matrix::from_cols(cols) }
    }

    pub fn from_matrix(alg: &Arc<AlbertAlgebra>, m: Matrix) -> Result<Self, StrError> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(StrError::BadShape);
        }
        Ok(Self { alg: alg.clone(), m })
    }

    /// The linear map determined by its values on the basis.
    pub fn from_fn(alg: &Arc<AlbertAlgebra>, f: impl Fn(&AlbertElem) -> AlbertElem) -> Self {
        let cols: Vec<Vec<Q>> = (0..DIM).map(|i| f(&alg.basis(i)).coords().to_vec()).collect();
        Self::from_columns(alg, &cols)
    }

    pub fn identity(alg: &Arc<AlbertAlgebra>) -> Self {
        Self { alg: alg.clone(), m: Matrix::identity(DIM) }
    }

    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        &self.alg
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn apply(&self, x: &AlbertElem) -> AlbertElem {
        self.alg.elem(self.m.apply(x.coords())).expect("27 coordinates")
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        Self { alg: self.alg.clone(), m: self.m.mul(&other.m) }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self, StrError> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(StrError::MixedParents);
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.m.inverse().map(|m| Self { alg: self.alg.clone(), m })
    }

    pub fn sub_identity(&self) -> Matrix {
        self.m.sub(&Matrix::identity(DIM))
    }
}

/// Gram matrix of the bilinear trace on the coordinate basis.
pub fn gram(alg: &Arc<AlbertAlgebra>) -> &Matrix {
    alg.cache.gram.get_or_init(|| {
        let basis: Vec<AlbertElem> = (0..DIM).map(|i| alg.basis(i)).collect();
        let rows = (0..DIM).map(|i| (0..DIM).map(|j| basis[i].trace_form(&basis[j])).collect()).collect();
        Matrix::from_rows(rows)
    })
}

/// Values T(v_i × v_j, v_k) for i ≤ j ≤ k, six times the symmetric trilinear
/// form of N evaluated on the vectors `v`.
fn trilinear_table(alg: &Arc<AlbertAlgebra>, v: &[AlbertElem]) -> Vec<Q> {
    let g = gram(alg);
    let mut out = Vec::with_capacity(DIM * (DIM + 1) * (DIM + 2) / 6);
    for i in 0..DIM {
        for j in i..DIM {
            let w = g.apply(v[i].cross(&v[j]).coords());
            for vk in &v[j..] {
                let t = w
                    .iter()
                    .zip(vk.coords())
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b);
                out.push(t);
            }
        }
    }
    out
}

fn norm_tensor(alg: &Arc<AlbertAlgebra>) -> &Vec<Q> {
    alg.cache.norm_tensor.get_or_init(|| {
        let basis: Vec<AlbertElem> = (0..DIM).map(|i| alg.basis(i)).collect();
        trilinear_table(alg, &basis)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub automorphism: bool,
    pub isometry: bool,
    pub similarity_factor: Q,
}

/// True when f(e_i·e_j) = f(e_i)·f(e_j) for all 378 basis pairs i ≤ j.
pub fn is_automorphism(f: &LinOp) -> bool {
    let alg = &f.alg;
    let imgs: Vec<AlbertElem> = (0..DIM).map(|i| f.apply(&alg.basis(i))).collect();
    (0..DIM).all(|i| {
        (i..DIM).all(|j| {
            let prod = alg.basis(i).jmul(&alg.basis(j));
            f.apply(&prod) == imgs[i].jmul(&imgs[j])
        })
    })
}

/// Decides whether f is a norm similarity, with its multiplier, and whether it
/// is an isometry or automorphism. The multiplier λ = N(f(1)) is verified on
/// every coefficient of the cubic form.
pub fn classify(f: &LinOp) -> Result<Classification, StrError> {
    let alg = &f.alg;
    let lambda = f.apply(&alg.one()).norm();
    if lambda.is_zero() {
        return Err(StrError::NotSimilarity);
    }
    let imgs: Vec<AlbertElem> = (0..DIM).map(|i| f.apply(&alg.basis(i))).collect();
    let lhs = trilinear_table(alg, &imgs);
    let rhs = norm_tensor(alg);
    if lhs.iter().zip(rhs).any(|(a, b)| *a != &lambda * b) {
        return Err(StrError::NotSimilarity);
    }
    let isometry = lambda.is_one();
    let automorphism = isometry && f.apply(&alg.one()) == alg.one() && is_automorphism(f);
    Ok(Classification { automorphism, isometry, similarity_factor: lambda })
}

/// R_t: x ↦ t·x.
pub fn make_rt(alg: &Arc<AlbertAlgebra>, t: &Q) -> Result<LinOp, StrError> {
    if t.is_zero() {
        return Err(StrError::ZeroScalar);
    }
    Ok(LinOp { alg: alg.clone(), m: Matrix::scalar(DIM, t) })
}

/// ψ_{a,b}(x, y, z) = (axa⁻¹, ayb⁻¹, bza⁻¹) on J(D, μ).
pub fn make_psi(alg: &Arc<AlbertAlgebra>, a: &AssocElem, b: &AssocElem) -> Result<LinOp, StrError> {
    alg.first_data()?;
    let (na, nb) = (a.norm(), b.norm());
    if na.is_zero() || nb.is_zero() {
        return Err(StrError::NotInvertible);
    }
    if na != nb {
        return Err(StrError::NormMismatch);
    }
    let (ai, bi) = (a.inv()?, b.inv()?);
    Ok(LinOp::from_fn(alg, |e| {
        let [x, y, z] = e.first_parts().expect("first construction");
        alg.from_first(&a.mul(&x).mul(&ai), &a.mul(&y).mul(&bi), &b.mul(&z).mul(&ai)).expect("same D")
    }))
}

/// I_a = ψ_{a,a}.
pub fn make_ia(alg: &Arc<AlbertAlgebra>, a: &AssocElem) -> Result<LinOp, StrError> {
    make_psi(alg, a, a)
}

/// J_p(x, y, z) = (x, yp, p⁻¹z) for N(p) = 1.
pub fn make_jp(alg: &Arc<AlbertAlgebra>, p: &AssocElem) -> Result<LinOp, StrError> {
    alg.first_data()?;
    if !p.norm().is_one() {
        return Err(StrError::NormNotOne);
    }
    let pi = p.inv()?;
    Ok(LinOp::from_fn(alg, |e| {
        let [x, y, z] = e.first_parts().expect("first construction");
        alg.from_first(&x, &y.mul(p), &pi.mul(&z)).expect("same D")
    }))
}

/// φ_{p,q}(a₀, a) = (p a₀ τ(p), p a q) on J(B, τ, u, μ), for p ∈ SU(B, τ) and
/// q ∈ SU(B, τ′) with τ′ = Int(u)∘τ.
pub fn make_phi(alg: &Arc<AlbertAlgebra>, p: &AssocElem, q: &AssocElem) -> Result<LinOp, StrError> {
    let (b, tau, u, _) = alg.second_data()?;
    let one = b.one();
    let tau_prime = tau.twisted(u)?;
    let su = |x: &AssocElem, t: &crate::assoc3::UnitaryInvolution| x.mul(&t.apply(x)) == one && x.norm().is_one();
    if !su(p, tau) || !su(q, &tau_prime) {
        return Err(StrError::NotSpecialUnitary);
    }
    let tp = tau.apply(p);
    Ok(LinOp::from_fn(alg, |e| {
        let (a0, a) = e.second_parts().expect("second construction");
        alg.from_second(&p.mul(&a0).mul(&tp), &p.mul(&a).mul(q)).expect("symmetric image")
    }))
}

/// Named operators that a word may carry unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    /// J_p on a first construction.
    Jp(AssocElem),
    /// Any operator with a known similitude factor.
    Linear { name: String, op: Matrix, similitude: Q },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    U(AlbertElem),
    Scalar(Q),
    Prim(Primitive),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordItem {
    pub gen: Generator,
    /// Which result licenses this factor, for reports.
    pub origin: String,
}

/// A word g₁g₂⋯gₙ in generators, applied right to left: gₙ acts first.
#[derive(Clone, Debug)]
pub struct InstrWord {
    alg: Arc<AlbertAlgebra>,
    pub items: Vec<WordItem>,
}

pub struct Evaluated {
    pub op: LinOp,
    /// Product of N(a)² over U-generators and t³ over scalar generators.
    pub similitude: Q,
}

impl InstrWord {
    pub fn new(alg: &Arc<AlbertAlgebra>) -> Self {
        Self { alg: alg.clone(), items: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        &self.alg
    }

    pub fn push(&mut self, gen: Generator, origin: &str) {
        self.items.push(WordItem { gen, origin: origin.to_string() });
    }

    pub fn u(mut self, x: AlbertElem, origin: &str) -> Self {
        self.push(Generator::U(x), origin);
        self
    }

    pub fn scalar(mut self, t: Q, origin: &str) -> Self {
        self.push(Generator::Scalar(t), origin);
        self
    }

    pub fn prim(mut self, p: Primitive, origin: &str) -> Self {
        self.push(Generator::Prim(p), origin);
        self
    }

    /// The word for self ∘ other.
    pub fn then_after(mut self, other: InstrWord) -> Self {
        self.items.extend(other.items);
        self
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// True when only U- and scalar generators occur: a certificate of
    /// membership in C·Instr(A).
    pub fn is_inner_modulo_scalars(&self) -> bool {
        self.items.iter().all(|w| !matches!(w.gen, Generator::Prim(_)))
    }

    pub fn eval(&self) -> Result<Evaluated, StrError> {
        let mut op = LinOp::identity(&self.alg);
        let mut sim = Q::one();
        for (idx, item) in self.items.iter().enumerate() {
            let (m, s) = match &item.gen {
                Generator::U(x) => {
                    let n = x.norm();
                    if n.is_zero() {
                        return Err(StrError::NotInvertibleGenerator(idx));
                    }
                    (x.u_op(), &n * &n)
                }
                Generator::Scalar(t) => {
                    if t.is_zero() {
                        return Err(StrError::NotInvertibleGenerator(idx));
                    }
                    (make_rt(&self.alg, t)?, t * t * t)
                }
                Generator::Prim(Primitive::Jp(p)) => {
                    (make_jp(&self.alg, p).map_err(|_| StrError::NotInvertibleGenerator(idx))?, Q::one())
                }
                Generator::Prim(Primitive::Linear { op, similitude, .. }) => {
                    (LinOp::from_matrix(&self.alg, op.clone())?, similitude.clone())
                }
            };
            op = op.compose(&m);
            sim *= s;
        }
        Ok(Evaluated { op, similitude: sim })
    }
}

/// Replaces each generator g by θ⁻¹gθ; U_a becomes U_{θ⁻¹(a)}.
pub fn conjugate_word(w: &InstrWord, theta: &LinOp) -> Result<InstrWord, StrError> {
    if !Arc::ptr_eq(w.algebra(), theta.algebra()) {
        return Err(StrError::MixedParents);
    }
    if !is_automorphism(theta) {
        return Err(StrError::NotIsomorphism);
    }
    let ti = theta.inverse().ok_or(StrError::NotIsomorphism)?;
    let mut out = InstrWord::new(&w.alg);
    for item in &w.items {
        let gen = match &item.gen {
            Generator::U(a) => Generator::U(ti.apply(a)),
            Generator::Scalar(t) => Generator::Scalar(t.clone()),
            Generator::Prim(Primitive::Jp(p)) => {
                let j = make_jp(&w.alg, p)?;
                Generator::Prim(Primitive::Linear {
                    name: "conj(Jp)".into(),
                    op: ti.m.mul(&j.m).mul(&theta.m),
                    similitude: Q::one(),
                })
            }
            Generator::Prim(Primitive::Linear { name, op, similitude }) => Generator::Prim(Primitive::Linear {
                name: format!("conj({name})"),
                op: ti.m.mul(op).mul(&theta.m),
                similitude: similitude.clone(),
            }),
        };
        out.push(gen, &item.origin);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::shipped::*;
    use crate::random::Sampler;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn identity_and_scalars() {
        let a = split_first(1);
        let c = classify(&LinOp::identity(&a)).unwrap();
        assert_eq!(c, Classification { automorphism: true, isometry: true, similarity_factor: qi(1) });
        let r = classify(&make_rt(&a, &qi(2)).unwrap()).unwrap();
        assert_eq!(r.similarity_factor, qi(8));
        assert!(!r.automorphism && !r.isometry);
    }

    #[test]
    fn u_operator_similitude() {
        let mut s = Sampler::new(31);
        for a in [split_first(2), split_reduced()] {
            let x = a.random_invertible(&mut s);
            let n = x.norm();
            assert_eq!(classify(&x.u_op()).unwrap().similarity_factor, &n * &n);
        }
    }

    #[test]
    fn non_similarity_rejected() {
        let a = split_first(1);
        let mut m = Matrix::identity(DIM);
        m.set(0, 0, qi(2));
        let f = LinOp::from_matrix(&a, m).unwrap();
        assert_eq!(classify(&f), Err(StrError::NotSimilarity));
    }

    #[test]
    fn psi_family_laws() {
        let a = split_first(2);
        let (d, _) = a.first_data().unwrap();
        let mut s = Sampler::new(32);
        assert!(make_psi(&a, &d.one(), &d.one()).unwrap().is_identity());
        let x = d.random_invertible(&mut s);
        let y = d.random_invertible(&mut s);
        // N(b) = N(x)
        let b = x.mul(&y).mul(&x.inv().unwrap()).mul(&y.inv().unwrap()).mul(&x);
        let psi = make_psi(&a, &x, &b).unwrap();
        assert!(classify(&psi).unwrap().automorphism);
        let p = x.mul(&b.inv().unwrap());
        let expect = make_jp(&a, &p).unwrap().compose(&make_ia(&a, &x).unwrap());
        assert_eq!(psi, expect);
        assert_eq!(make_psi(&a, &x, &d.scalar_q(qi(5))), Err(StrError::NormMismatch));
    }
}
