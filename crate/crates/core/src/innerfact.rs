//! Factorizations of named automorphisms and similarities into words in
//! U-operators and scalar maps, together with the commutator witnesses in D*
//! that make J_p expressible.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::albert::{AlbertAlgebra, AlbertElem, AlbertError};
use crate::assoc3::{Assoc3Algebra, Assoc3Error, AssocElem, Backend, UnitaryInvolution};
use crate::exactfield::{hilbert90, is_irreducible, FieldError, Poly};
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::strmaps::{classify, make_phi, make_psi, Generator, InstrWord, LinOp, Primitive, StrError};
use crate::Q;

pub const DEFAULT_RETRIES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InnerError {
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element does not have reduced norm one")]
    NormNotOne,
    #[error("operation needs {0}")]
    WrongBackend(&'static str),
    #[error("k(a) is a cyclic cubic field")]
    CyclicElement,
    #[error("the reduced characteristic polynomial is not irreducible over Q")]
    NotCubicField,
    #[error("no verified factorization after {retries} conjugates (seed {seed})")]
    RetriesExhausted { retries: usize, seed: u64 },
    #[error("map does not stabilize the first slot")]
    NotStabilizing,
    #[error("could not recover the automorphism parameters")]
    RecoveryFailed,
    #[error("factor {0} is not symmetric")]
    NotSymmetric(usize),
    #[error("product of the factors is not special unitary")]
    NotSpecialUnitary,
    #[error("N(f(1)) = 0")]
    SingularImageOfOne,
    #[error("witness does not reproduce its target")]
    BadWitness,
    #[error(transparent)]
    Str(#[from] StrError),
    #[error(transparent)]
    Albert(#[from] AlbertError),
    #[error(transparent)]
    Assoc(#[from] Assoc3Error),
    #[error(transparent)]
    Field(#[from] FieldError),
}

type Result<T> = std::result::Result<T, InnerError>;

/// Pairs (i, j) whose commutators j i j⁻¹ i⁻¹ multiply, left to right, to
/// `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorWitness {
    pub target: AssocElem,
    pub pairs: Vec<(AssocElem, AssocElem)>,
}

/// j i j⁻¹ i⁻¹.
pub fn commutator(i: &AssocElem, j: &AssocElem) -> Result<AssocElem> {
    Ok(j.mul(i).mul(&j.inv()?).mul(&i.inv()?))
}

impl CommutatorWitness {
    pub fn product(&self) -> Result<AssocElem> {
        let mut acc = self.target.algebra().one();
        for (i, j) in &self.pairs {
            acc = acc.mul(&commutator(i, j)?);
        }
        Ok(acc)
    }

    pub fn verify(&self) -> bool {
        matches!(self.product(), Ok(p) if p == self.target)
    }
}

fn invertible(a: &AssocElem) -> Result<()> {
    if a.norm().is_zero() {
        Err(InnerError::NotInvertible)
    } else {
        Ok(())
    }
}

fn d_of(alg: &Arc<AlbertAlgebra>) -> Result<Arc<Assoc3Algebra>> {
    Ok(alg.first_data().map_err(|_| InnerError::WrongBackend("a first construction"))?.0.clone())
}

fn slot(alg: &Arc<AlbertAlgebra>, k: usize, a: &AssocElem) -> Result<AlbertElem> {
    let z = a.algebra().zero();
    let mut parts = [z.clone(), z.clone(), z];
    parts[k] = a.clone();
    Ok(alg.from_first(&parts[0], &parts[1], &parts[2])?)
}

/// Word of five U-operators whose value is J_p for p = j i j⁻¹ i⁻¹.
pub fn jp_word(alg: &Arc<AlbertAlgebra>, i: &AssocElem, j: &AssocElem) -> Result<InstrWord> {
    let d = d_of(alg)?;
    invertible(i)?;
    invertible(j)?;
    let ij_inv = i.mul(j).inv()?;
    let one = d.one();
    let origin = "J_p for a commutator p";
    Ok(InstrWord::new(alg)
        .u(slot(alg, 2, &one)?, origin)
        .u(slot(alg, 0, &ij_inv)?, origin)
        .u(slot(alg, 0, i)?, origin)
        .u(slot(alg, 0, j)?, origin)
        .u(slot(alg, 1, &one)?, origin))
}

/// Word for J_p from a witness: J_{c₁⋯cₙ} = J_{cₙ}⋯J_{c₁}.
pub fn jp_word_from_witness(alg: &Arc<AlbertAlgebra>, w: &CommutatorWitness) -> Result<InstrWord> {
    if !w.verify() {
        return Err(InnerError::BadWitness);
    }
    let mut out = InstrWord::new(alg);
    for (i, j) in w.pairs.iter().rev() {
        out = out.then_after(jp_word(alg, i, j)?);
    }
    Ok(out)
}

fn cyclic_data(d: &Arc<Assoc3Algebra>) -> Result<usize> {
    match d.backend() {
        Backend::Cyclic { powers, .. } => Ok(powers[1]),
        Backend::Matrix3 { .. } => Err(InnerError::WrongBackend("the cyclic backend")),
    }
}

/// p = q⁻¹ z q z⁻¹ for norm-one p ∈ L, with σ(q) = p q from Hilbert 90.
pub fn commutator_decomp_cyclic(p: &AssocElem) -> Result<CommutatorWitness> {
    let d = p.algebra();
    let sigma = cyclic_data(d)?;
    let l = p.as_l().ok_or(InnerError::WrongBackend("an element of L"))?;
    if !p.norm().is_one() {
        return Err(InnerError::NormNotOne);
    }
    let q = hilbert90(&l, sigma)?;
    let w = CommutatorWitness { target: p.clone(), pairs: vec![(d.z()?, d.embed_l(&q.inv()?)?)] };
    debug_assert!(w.verify());
    Ok(w)
}

/// a₀ = a and its conjugates a₁, a₂ with f(X) = (X − a₂)(X − a₁)(X − a₀) and
/// c = a₀a₁ − a₁a₀ cycling them.
#[derive(Clone, Debug, PartialEq)]
pub struct WedderburnData {
    pub a: [AssocElem; 3],
    pub c: AssocElem,
    pub gamma: Q,
}

fn rational_charpoly(a: &AssocElem) -> Result<(Q, Q, Q)> {
    let (t, s, n) = a.charpoly();
    match (t.to_q(), s.to_q(), n.to_q()) {
        (Some(t), Some(s), Some(n)) => Ok((t, s, n)),
        _ => Err(InnerError::WrongBackend("an algebra with center Q")),
    }
}

fn is_square(q: &Q) -> bool {
    let sq = |n: &BigInt| {
        !n.is_negative() && {
            let r = n.sqrt();
            &(&r * &r) == n
        }
    };
    sq(q.numer()) && sq(q.denom())
}

/// Rational cube root when one exists.
pub fn rational_cbrt(q: &Q) -> Option<Q> {
    let cb = |n: &BigInt| {
        let r = n.cbrt();
        (&(&r * &r * &r) == n).then_some(r)
    };
    Some(Q::new(cb(q.numer())?, cb(q.denom())?))
}

/// Whether the reduced characteristic polynomial of a is irreducible with
/// square discriminant.
pub fn is_cyclic_element(a: &AssocElem) -> Result<bool> {
    let (t, s, n) = rational_charpoly(a)?;
    let f = Poly::new(vec![-n.clone(), s.clone(), -t.clone(), Q::one()]);
    if !is_irreducible(&f) {
        return Err(InnerError::NotCubicField);
    }
    let (b, c, d) = (-t, s, -n);
    let qi = |k: i64| Q::from_integer(k.into());
    let disc =
        &b * &b * &c * &c - qi(4) * &c * &c * &c - qi(4) * &b * &b * &b * &d - qi(27) * &d * &d + qi(18) * &b * &c * &d;
    Ok(is_square(&disc))
}

impl WedderburnData {
    /// All defining relations, checked exactly.
    pub fn verify(&self) -> bool {
        let Ok((t, s, n)) = rational_charpoly(&self.a[0]) else { return false };
        let d = self.a[0].algebra();
        let [a0, a1, a2] = &self.a;
        let factors = a0.add(a1).add(a2) == d.scalar_q(t)
            && a2.mul(a1).add(&a2.mul(a0)).add(&a1.mul(a0)) == d.scalar_q(s)
            && a2.mul(a1).mul(a0) == d.scalar_q(n);
        if !factors || self.c.is_zero() || self.c != a0.mul(a1).sub(&a1.mul(a0)) {
            return false;
        }
        let Ok(ci) = self.c.inv() else { return false };
        let cycles = (0..3).all(|k| self.c.mul(&self.a[k]).mul(&ci) == self.a[(k + 1) % 3]);
        cycles && !self.gamma.is_zero() && self.c.pow(3) == d.scalar_q(self.gamma.clone())
    }
}

/// Finds a conjugate root λ = (b − a)b(b − a)⁻¹ of the right quotient of f by
/// X − a, for random conjugates b = dad⁻¹, and returns data only once every
/// relation has been verified.
pub fn wedderburn_factor(a: &AssocElem, seed: u64, retries: usize) -> Result<WedderburnData> {
    invertible(a)?;
    if is_cyclic_element(a)? {
        return Err(InnerError::CyclicElement);
    }
    let d = a.algebra();
    let (t, _, _) = rational_charpoly(a)?;
    let mut rng = Sampler::new(seed);
    for _ in 0..retries {
        let g = d.random_invertible(&mut rng);
        let b = g.mul(a).mul(&g.inv()?);
        let diff = b.sub(a);
        let Ok(diff_inv) = diff.inv() else { continue };
        let a1 = diff.mul(&b).mul(&diff_inv);
        let c = a.mul(&a1).sub(&a1.mul(a));
        let Ok(ci) = c.inv() else { continue };
        let a2 = c.mul(&a1).mul(&ci);
        if a2 != d.scalar_q(t.clone()).sub(a).sub(&a1) {
            continue;
        }
        let Some(gamma) = c.pow(3).is_scalar().then(|| c.pow(3).to_q_coords()[0].clone()) else { continue };
        let data = WedderburnData { a: [a.clone(), a1, a2], c, gamma };
        if data.verify() {
            return Ok(data);
        }
    }
    Err(InnerError::RetriesExhausted { retries, seed })
}

/// A witness for p³ as a product of commutators, for N(p) = 1.
pub fn cube_commutators(p: &AssocElem, seed: u64) -> Result<CommutatorWitness> {
    if !p.norm().is_one() {
        return Err(InnerError::NormNotOne);
    }
    let d = p.algebra();
    let target = p.pow(3);
    if *p == d.one() {
        return Ok(CommutatorWitness { target, pairs: vec![] });
    }
    if p.as_l().is_some() {
        let w = commutator_decomp_cyclic(p)?;
        let pair = w.pairs[0].clone();
        return Ok(CommutatorWitness { target, pairs: vec![pair.clone(), pair.clone(), pair] });
    }
    let data = wedderburn_factor(p, seed, DEFAULT_RETRIES)?;
    let [p0, _, p2] = &data.a;
    let w = CommutatorWitness { target, pairs: vec![(data.c.clone(), p0.clone()), (data.c.clone(), p2.inv()?)] };
    if !w.verify() {
        return Err(InnerError::BadWitness);
    }
    Ok(w)
}

/// How the J factor of an I_a word was handled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// J_{n(a)a⁻³} is the identity.
    Trivial,
    /// Replaced by U-operators through a commutator witness.
    Expanded,
    /// Left as a primitive factor; no decomposition was available.
    Unexpanded,
}

pub struct IaWord {
    pub word: InstrWord,
    pub expansion: Expansion,
}

/// Witness for s = n(a)a⁻³: Hilbert 90 for a ∈ L, or a cube decomposition of
/// m·a⁻¹ when n(a) = m³.
fn auto_witness(a: &AssocElem, s: &AssocElem, seed: u64) -> Option<CommutatorWitness> {
    if s.as_l().is_some() {
        return commutator_decomp_cyclic(s).ok();
    }
    let m = rational_cbrt(&a.norm_q()?)?;
    let p = a.inv().ok()?.scale_q(&m);
    cube_commutators(&p, seed).ok().filter(|w| w.target == *s)
}

/// The seven-factor word U_{n(a)⁻¹} U_{(0,0,1)} J_{n(a)a⁻³} U_{(0,a,0)}
/// U_{(0,0,a)} U_{(a,0,0)} U_{(0,1,0)} for I_a, with the J factor expanded when
/// a witness for n(a)a⁻³ is supplied or can be found.
pub fn ia_word(
    alg: &Arc<AlbertAlgebra>,
    a: &AssocElem,
    witness: Option<&CommutatorWitness>,
    seed: u64,
) -> Result<IaWord> {
    let d = d_of(alg)?;
    invertible(a)?;
    let n = a.norm_q().ok_or(InnerError::WrongBackend("an algebra with center Q"))?;
    let s = a.inv()?.pow(3).scale_q(&n);
    let one = d.one();
    let origin = "I_a as a product of U-operators";
    let head = InstrWord::new(alg).u(alg.scalar(&n.recip()), origin).u(slot(alg, 2, &one)?, origin);
    let tail = InstrWord::new(alg)
        .u(slot(alg, 1, a)?, origin)
        .u(slot(alg, 2, a)?, origin)
        .u(slot(alg, 0, a)?, origin)
        .u(slot(alg, 1, &one)?, origin);
    let (mid, expansion) = if s == one {
        (InstrWord::new(alg), Expansion::Trivial)
    } else {
        let found = match witness {
            Some(w) if w.target == s => Some(w.clone()),
            Some(_) => return Err(InnerError::BadWitness),
            None => auto_witness(a, &s, seed),
        };
        match found {
            Some(w) => (jp_word_from_witness(alg, &w)?, Expansion::Expanded),
            None => (InstrWord::new(alg).prim(Primitive::Jp(s), origin), Expansion::Unexpanded),
        }
    };
    Ok(IaWord { word: head.then_after(mid).then_after(tail), expansion })
}

/// ψ_{a,b} = I_a J_{b⁻¹a}, with J expanded when b⁻¹a lies in L of a cyclic
/// backend.
pub fn psi_word(alg: &Arc<AlbertAlgebra>, a: &AssocElem, b: &AssocElem, seed: u64) -> Result<IaWord> {
    let d = d_of(alg)?;
    invertible(b)?;
    let ia = ia_word(alg, a, None, seed)?;
    let p = b.inv()?.mul(a);
    if !p.norm().is_one() {
        return Err(InnerError::NormNotOne);
    }
    let (j, jexp) = if p == d.one() {
        (InstrWord::new(alg), Expansion::Trivial)
    } else {
        match commutator_decomp_cyclic(&p) {
            Ok(w) => (jp_word_from_witness(alg, &w)?, Expansion::Expanded),
            Err(_) => (InstrWord::new(alg).prim(Primitive::Jp(p), "psi_(a,b) = I_a J_(b^-1 a)"), Expansion::Unexpanded),
        }
    };
    let expansion = match (&ia.expansion, &jexp) {
        (Expansion::Unexpanded, _) | (_, Expansion::Unexpanded) => Expansion::Unexpanded,
        (Expansion::Trivial, Expansion::Trivial) => Expansion::Trivial,
        _ => Expansion::Expanded,
    };
    Ok(IaWord { word: ia.word.then_after(j), expansion })
}

/// χ = R_{N(a)⁻¹} U_{(0,0,1)} U_{(0,a#,0)}, which sends (x,0,0) to (ax,0,0).
pub fn chi_map(alg: &Arc<AlbertAlgebra>, a: &AssocElem) -> Result<InstrWord> {
    let d = d_of(alg)?;
    invertible(a)?;
    let n = a.norm_q().ok_or(InnerError::WrongBackend("an algebra with center Q"))?;
    let origin = "similarity moving (1,0,0) to (a,0,0)";
    Ok(InstrWord::new(alg)
        .scalar(n.recip(), origin)
        .u(slot(alg, 2, &d.one())?, origin)
        .u(slot(alg, 1, &a.adjoint())?, origin))
}

fn stabilizes_first_slot(f: &LinOp) -> bool {
    let alg = f.algebra();
    (0..9).all(|i| {
        let img = f.apply(&alg.basis(i));
        img.coords()[9..].iter().all(Zero::is_zero)
    })
}

fn first_slot(x: &AlbertElem) -> AssocElem {
    x.first_parts().expect("first construction")[0].clone()
}

/// Writes f = eval(χ)·ψ_{a,b} for a similarity f stabilizing the first slot.
pub fn reduce_similarity(f: &LinOp) -> Result<(InstrWord, (AssocElem, AssocElem))> {
    let alg = f.algebra();
    let d = d_of(alg)?;
    classify(f).map_err(|_| InnerError::RecoveryFailed)?;
    if !stabilizes_first_slot(f) {
        return Err(InnerError::NotStabilizing);
    }
    let c = first_slot(&f.apply(&alg.one()));
    let chi = chi_map(alg, &c)?;
    let chi_inv = chi.eval()?.op.inverse().ok_or(InnerError::NotInvertible)?;
    let phi = chi_inv.compose(f);
    if phi.apply(&alg.one()) != alg.one() {
        return Err(InnerError::RecoveryFailed);
    }
    // a x − φ₀(x) a = 0 for x over a ℚ-basis of D, linear in the coordinates of a.
    let dim = d.dim_q();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for k in 0..dim {
        let x = d.basis_q(k);
        let fx = first_slot(&phi.apply(&slot(alg, 0, &x)?));
        let cols: Vec<Vec<Q>> = (0..dim)
            .map(|m| {
                let e = d.basis_q(m);
                e.mul(&x).sub(&fx.mul(&e)).to_q_coords()
            })
            .collect();
        rows.extend(Matrix::from_cols(&cols).entries().chunks(dim).map(<[Q]>::to_vec));
    }
    let kernel = Matrix::from_rows(rows).kernel();
    let a = kernel
        .iter()
        .map(|v| d.from_q_coords(v).expect("length matches"))
        .find(|a| !a.norm().is_zero())
        .ok_or(InnerError::RecoveryFailed)?;
    let w = phi.apply(&slot(alg, 1, &d.one())?).first_parts()?[1].clone();
    let b = w.inv().map_err(|_| InnerError::RecoveryFailed)?.mul(&a);
    let psi = make_psi(alg, &a, &b).map_err(|_| InnerError::RecoveryFailed)?;
    if chi.eval()?.op.compose(&psi) != *f {
        return Err(InnerError::RecoveryFailed);
    }
    Ok((chi, (a, b)))
}

/// Word U_{(s₁,0)}⋯U_{(sₙ,0)} equal to φ_p for p = s₁⋯sₙ special unitary.
pub fn phi_p_word(alg: &Arc<AlbertAlgebra>, s: &[AssocElem]) -> Result<InstrWord> {
    let (b, tau, _, _) = alg.second_data().map_err(|_| InnerError::WrongBackend("a second construction"))?;
    let mut p = b.one();
    for (k, sk) in s.iter().enumerate() {
        if tau.apply(sk) != *sk {
            return Err(InnerError::NotSymmetric(k));
        }
        invertible(sk)?;
        p = p.mul(sk);
    }
    if p.mul(&tau.apply(&p)) != b.one() || !p.norm().is_one() {
        return Err(InnerError::NotSpecialUnitary);
    }
    let zero = b.zero();
    let mut w = InstrWord::new(alg);
    for sk in s {
        w = w.u(alg.from_second(sk, &zero)?, "phi_p from a symmetric factorization");
    }
    debug_assert!(w.eval().map(|e| e.op == make_phi(alg, &p, &b.one()).expect("special unitary")).unwrap_or(false));
    Ok(w)
}

/// The τ-orthogonal reflection 1 − 2 v v̄ᵀ g / (v̄ᵀ g v): symmetric, squares to
/// 1, reduced norm −1.
pub fn reflection(tau: &UnitaryInvolution, v: &[crate::exactfield::FieldElem; 3]) -> Result<AssocElem> {
    let b = tau.algebra();
    let k = b.entry_field();
    let g = tau.g().entries();
    let gv: Vec<_> = (0..3)
        .map(|r| (0..3).fold(crate::exactfield::FieldElem::zero(k), |acc, c| acc.add(&g[3 * r + c].mul(&v[c]))))
        .collect();
    let vbar: Vec<_> = v.iter().map(|x| tau.conj_scalar(x)).collect();
    let c = (0..3).fold(crate::exactfield::FieldElem::zero(k), |acc, r| acc.add(&vbar[r].mul(&gv[r])));
    if c.is_zero() {
        return Err(InnerError::NotInvertible);
    }
    let two_over_c = c.inv()?.scale(&Q::from_integer(2.into()));
    // row vector v̄ᵀ g
    let vg: Vec<_> = (0..3)
        .map(|col| (0..3).fold(crate::exactfield::FieldElem::zero(k), |acc, r| acc.add(&vbar[r].mul(&g[3 * r + col]))))
        .collect();
    let mut entries = Vec::with_capacity(9);
    for r in 0..3 {
        for col in 0..3 {
            let delta =
                if r == col { crate::exactfield::FieldElem::one(k) } else { crate::exactfield::FieldElem::zero(k) };
            entries.push(delta.sub(&v[r].mul(&vg[col]).mul(&two_over_c)));
        }
    }
    Ok(b.from_entries(entries)?)
}

/// N(g(1)) = 1 for g = R_{N(f(1))⁻¹} U_{f(1)} f.
pub fn reduce_to_isometry(f: &LinOp) -> Result<(InstrWord, LinOp)> {
    let alg = f.algebra();
    let a = f.apply(&alg.one());
    let alpha = a.norm();
    if alpha.is_zero() {
        return Err(InnerError::SingularImageOfOne);
    }
    let origin = "reduction of a similarity to an isometry";
    let chi = InstrWord::new(alg).scalar(alpha.recip(), origin).u(a, origin);
    let g = chi.eval()?.op.compose(f);
    debug_assert!(g.apply(&alg.one()).norm().is_one());
    Ok((chi, g))
}

/// Evaluates a word and reports whether it uses only U- and scalar generators.
pub fn certificate(w: &InstrWord) -> Result<(LinOp, Q, bool)> {
    let e = w.eval()?;
    Ok((e.op, e.similitude, w.items.iter().all(|i| !matches!(i.gen, Generator::Prim(_)))))
}
