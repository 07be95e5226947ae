//! Exact arithmetic in ℚ and in number fields ℚ[x]/(f) with explicit
//! automorphisms.

mod irreducible;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

pub use irreducible::is_irreducible;
pub use poly::Poly;

use crate::Q;

pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedParents,
    #[error("defining polynomial must be monic of degree 1..=6: {0}")]
    BadPolynomial(String),
    #[error("defining polynomial is reducible over Q: {0}")]
    Reducible(String),
    #[error("automorphism {0} does not map a root to a root")]
    BadAutomorphism(usize),
    #[error("automorphism closure exceeds the field degree")]
    TooManyAutomorphisms,
    #[error("field is not Galois: {found} automorphisms for degree {degree}")]
    NotGalois { found: usize, degree: usize },
    #[error("element does not have norm one")]
    NormNotOne,
    #[error("Hilbert 90 candidates exhausted")]
    ExhaustedCandidates,
    #[error("automorphism index {0} out of range")]
    UnknownAutomorphism(usize),
    #[error("automorphism does not generate a cyclic group of order 3")]
    NotCyclicCubic,
    #[error("coefficient vector has length {found}, expected {expected}")]
    BadLength { found: usize, expected: usize },
}

/// ℚ[x]/(f) together with a group of automorphisms, each stored as the
/// image of the generator x.
pub struct NumberField {
    label: String,
    poly: Poly,
    /// Full automorphism group; index 0 is the identity.
    autos: Vec<Vec<Q>>,
    /// x^k mod f as coefficient vectors, for k < 2·degree.
    powers: Vec<Vec<Q>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({}: {})", self.label, self.poly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.autos == other.autos
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Validates `poly` and closes the supplied automorphism generators
    /// (given as images of x) under composition.
    pub fn new(label: impl Into<String>, poly: Poly, generators: &[Poly]) -> Result<Arc<Self>, FieldError> {
        let d = match poly.degree() {
            Some(d) if (1..=MAX_DEGREE).contains(&d) && poly.is_monic() => d,
            _ => return Err(FieldError::BadPolynomial(poly.to_string())),
        };
        if !is_irreducible(&poly) {
            return Err(FieldError::Reducible(poly.to_string()));
        }
        let mut powers = Vec::with_capacity(2 * d);
        let mut cur = Poly::one();
        let x = Poly::monomial(Q::one(), 1);
        for _ in 0..2 * d {
            powers.push(pad(cur.coeffs(), d));
            cur = cur.mul(&x).rem(&poly);
        }
        let mut field = NumberField { label: label.into(), poly, autos: vec![pad(&[Q::zero(), Q::one()], d)], powers };
        if d == 1 {
            field.autos = vec![vec![Q::zero()]];
        }
        let mut gens = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let img = pad(g.rem(&field.poly).coeffs(), d);
            if !field.poly_at(&field.poly, &img).iter().all(Zero::is_zero) {
                return Err(FieldError::BadAutomorphism(i));
            }
            gens.push(img);
        }
        // Closure: keep composing known elements with generators.
        let mut k = 0;
        while k < field.autos.len() {
            for g in &gens {
                let comp = field.compose(&field.autos[k], g);
                if !field.autos.contains(&comp) {
                    if field.autos.len() == d {
                        return Err(FieldError::TooManyAutomorphisms);
                    }
                    field.autos.push(comp);
                }
            }
            k += 1;
        }
        Ok(Arc::new(field))
    }

    /// The field ℚ itself.
    pub fn rationals() -> Arc<Self> {
        Self::new("Q", Poly::new(vec![Q::zero(), Q::one()]), &[]).expect("x is irreducible")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn defining_poly(&self) -> &Poly {
        &self.poly
    }

    /// Images of x under the full automorphism group, identity first.
    pub fn automorphisms(&self) -> &[Vec<Q>] {
        &self.autos
    }

    pub fn is_galois(&self) -> bool {
        self.autos.len() == self.degree()
    }

    /// Order of the automorphism with index `idx`.
    pub fn auto_order(&self, idx: usize) -> usize {
        let mut cur = self.autos[idx].clone();
        let mut n = 1;
        while cur != self.autos[0] {
            cur = self.compose(&cur, &self.autos[idx]);
            n += 1;
        }
        n
    }

    /// Evaluates the polynomial `p` at the residue `r`, reduced mod f.
    fn poly_at(&self, p: &Poly, r: &[Q]) -> Vec<Q> {
        let d = self.degree();
        let mut acc = vec![Q::zero(); d];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_raw(&acc, r);
            acc[0] += c;
        }
        acc
    }

    /// Image of x under "first `b`, then `a`" is a evaluated at b(x);
    /// we store σ∘τ as τ(x) evaluated with x ↦ σ(x).
    fn compose(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.poly_at(&Poly::new(b.to_vec()), a)
    }

    fn mul_raw(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.degree();
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Q> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.powers[k]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }
}

fn pad(c: &[Q], d: usize) -> Vec<Q> {
    let mut v = c.to_vec();
    v.resize(d, Q::zero());
    v
}

/// An element of a [`NumberField`], as coefficients of 1, x, …, x^{d−1}.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coeffs: Vec<Q>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElem {}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElem {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Q>) -> Result<Self, FieldError> {
        let d = field.degree();
        if coeffs.len() != d {
            return Err(FieldError::BadLength { found: coeffs.len(), expected: d });
        }
        Ok(Self { field: field.clone(), coeffs })
    }

    /// Reduces an arbitrary polynomial into the field.
    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> Self {
        let coeffs = pad(p.rem(field.defining_poly()).coeffs(), field.degree());
        Self { field: field.clone(), coeffs }
    }

    pub fn from_q(field: &Arc<NumberField>, q: Q) -> Self {
        let mut coeffs = vec![Q::zero(); field.degree()];
        coeffs[0] = q;
        Self { field: field.clone(), coeffs }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_q(field, Q::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_q(field, Q::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_q(field, Q::one())
    }

    /// The class of x.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &Poly::monomial(Q::one(), 1))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn constant_coeff(&self) -> &Q {
        &self.coeffs[0]
    }

    /// The rational value, if the element lies in ℚ.
    pub fn to_q(&self) -> Option<Q> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::MixedParents)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul(&other.inv()?))
    }

    // The unchecked operations below assume a common parent.

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let coeffs = if self.field.degree() == 1 {
            vec![&self.coeffs[0] * &other.coeffs[0]]
        } else {
            self.field.mul_raw(&self.coeffs, &other.coeffs)
        };
        Self { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    /// Inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(Self::from_q(&self.field, self.coeffs[0].recip()));
        }
        let (g, s, _) = Poly::new(self.coeffs.clone()).ext_gcd(self.field.defining_poly());
        debug_assert!(g == Poly::one());
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Applies the automorphism with index `idx` in [`NumberField::automorphisms`].
    pub fn apply_auto(&self, idx: usize) -> Result<Self, FieldError> {
        let img = self.field.autos.get(idx).ok_or(FieldError::UnknownAutomorphism(idx))?;
        let coeffs = self.field.poly_at(&Poly::new(self.coeffs.clone()), img);
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// Norm and trace down to ℚ, as products and sums over the Galois group.
    pub fn galois_norm_trace(&self) -> Result<(Q, Q), FieldError> {
        let f = &self.field;
        if !f.is_galois() {
            return Err(FieldError::NotGalois { found: f.autos.len(), degree: f.degree() });
        }
        let mut norm = Self::one(f);
        let mut trace = Self::zero(f);
        for i in 0..f.autos.len() {
            let c = self.apply_auto(i)?;
            norm = norm.mul(&c);
            trace = trace.add(&c);
        }
        debug_assert!(norm.is_rational() && trace.is_rational());
        Ok((norm.coeffs[0].clone(), trace.coeffs[0].clone()))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Poly::new(self.coeffs.clone()))
    }
}

/// Multiplicative Hilbert 90 for a cyclic cubic field: returns q ≠ 0 with
/// σ(q) = α·q, that is α = q⁻¹σ(q).
pub fn hilbert90(alpha: &FieldElem, sigma: usize) -> Result<FieldElem, FieldError> {
    let f = alpha.field();
    if f.degree() != 3 || sigma >= f.autos.len() || f.auto_order(sigma) != 3 {
        return Err(FieldError::NotCyclicCubic);
    }
    let (n, _) = alpha.galois_norm_trace()?;
    if !n.is_one() {
        return Err(FieldError::NormNotOne);
    }
    let a1 = alpha.inv()?;
    let s_a1 = a1.apply_auto(sigma)?;
    let w1 = a1.clone();
    let w2 = a1.mul(&s_a1);
    // Basis vectors first, then a few sums, so α = 1 yields q = 1.
    let mut candidates: Vec<FieldElem> =
        (0..3).map(|k| FieldElem::from_poly(f, &Poly::monomial(Q::one(), k))).collect();
    for a in 1..=3 {
        for b in -3..=3 {
            candidates.push(FieldElem::from_poly(
                f,
                &Poly::new(vec![Q::from_integer(b.into()), Q::from_integer(a.into()), Q::one()]),
            ));
        }
    }
    for c in candidates {
        let sc = c.apply_auto(sigma)?;
        let ssc = sc.apply_auto(sigma)?;
        let q = c.add(&w1.mul(&sc)).add(&w2.mul(&ssc));
        if q.is_zero() {
            continue;
        }
        let lead = q.coeffs.iter().find(|c| !c.is_zero()).cloned().expect("nonzero");
        let q = q.scale(&lead.recip());
        if q.apply_auto(sigma)? == alpha.mul(&q) {
            return Ok(q);
        }
    }
    Err(FieldError::ExhaustedCandidates)
}

/// The shipped fields.
pub mod shipped {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    /// K = ℚ(i) = ℚ[x]/(x²+1) with complex conjugation.
    pub fn gaussian() -> Arc<NumberField> {
        NumberField::new("K", ints(&[1, 0, 1]), &[ints(&[0, -1])]).expect("valid field")
    }

    /// L = ℚ[x]/(x³+x²−2x−1), the cyclic cubic field of conductor 7, with σ: x ↦ x²−2.
    pub fn cyclic7() -> Arc<NumberField> {
        NumberField::new("L", ints(&[-1, -2, 1, 1]), &[ints(&[-2, 0, 1])]).expect("valid field")
    }

    /// Index of σ: x ↦ x²−2 in the automorphism list of [`cyclic7`].
    pub const CYCLIC7_SIGMA: usize = 1;
}

#[cfg(test)]
mod tests {
    use super::shipped::*;
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn elem(f: &Arc<NumberField>, v: &[i64]) -> FieldElem {
        FieldElem::new(f, v.iter().map(|&c| Q::from_integer(c.into())).collect()).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        let f = NumberField::rationals();
        let a = FieldElem::from_q(&f, q(2, 3));
        let b = FieldElem::from_q(&f, q(1, 6));
        assert_eq!(a.try_add(&b).unwrap().to_q(), Some(q(5, 6)));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let f = NumberField::new("Q(sqrt2)", Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]), &[]).unwrap();
        let x = FieldElem::generator(&f);
        assert_eq!(x.mul(&x).to_q(), Some(q(2, 1)));
    }

    #[test]
    fn inverse_in_cubic_field() {
        let l = cyclic7();
        let x = FieldElem::generator(&l);
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(FieldElem::zero(&l).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = FieldElem::one(&cyclic7());
        let b = FieldElem::one(&gaussian());
        assert_eq!(a.try_mul(&b), Err(FieldError::MixedParents));
    }

    #[test]
    fn closure_and_galois() {
        let l = cyclic7();
        assert_eq!(l.automorphisms().len(), 3);
        assert!(l.is_galois());
        assert_eq!(l.auto_order(CYCLIC7_SIGMA), 3);
        // x ↦ x+1 does not preserve the roots.
        let bad = NumberField::new("bad", l.defining_poly().clone(), &[Poly::new(vec![q(1, 1), q(1, 1)])]);
        assert_eq!(bad.unwrap_err(), FieldError::BadAutomorphism(0));
    }

    #[test]
    fn non_galois_detected() {
        let f = NumberField::new("cbrt2", Poly::new(vec![q(-2, 1), q(0, 1), q(0, 1), q(1, 1)]), &[]).unwrap();
        let x = FieldElem::generator(&f);
        assert_eq!(x.galois_norm_trace(), Err(FieldError::NotGalois { found: 1, degree: 3 }));
    }

    #[test]
    fn reducible_rejected() {
        let r = NumberField::new("r", Poly::new(vec![q(-1, 1), q(0, 1), q(1, 1)]), &[]);
        assert!(matches!(r, Err(FieldError::Reducible(_))));
    }

    #[test]
    fn norm_trace_examples() {
        let l = cyclic7();
        assert_eq!(FieldElem::one(&l).galois_norm_trace().unwrap(), (q(1, 1), q(3, 1)));
        // Resultant oracle: roots of x³+x²−2x−1 multiply to 1 and sum to −1.
        assert_eq!(FieldElem::generator(&l).galois_norm_trace().unwrap(), (q(1, 1), q(-1, 1)));
        let f = NumberField::new(
            "Q(sqrt2)",
            Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]),
            &[Poly::new(vec![q(0, 1), q(-1, 1)])],
        )
        .unwrap();
        assert_eq!(FieldElem::generator(&f).galois_norm_trace().unwrap(), (q(-2, 1), q(0, 1)));
    }

    #[test]
    fn hilbert90_examples() {
        let l = cyclic7();
        let one = FieldElem::one(&l);
        assert!(hilbert90(&one, CYCLIC7_SIGMA).unwrap().is_one());

        let x = FieldElem::generator(&l);
        let alpha = x.apply_auto(CYCLIC7_SIGMA).unwrap().div(&x).unwrap();
        let qv = hilbert90(&alpha, CYCLIC7_SIGMA).unwrap();
        assert_eq!(qv.inv().unwrap().mul(&qv.apply_auto(CYCLIC7_SIGMA).unwrap()), alpha);

        let two = FieldElem::from_int(&l, 2);
        assert_eq!(hilbert90(&two, CYCLIC7_SIGMA), Err(FieldError::NormNotOne));
    }

    #[test]
    fn automorphisms_fix_q_and_respect_products() {
        let l = cyclic7();
        let a = elem(&l, &[1, -2, 3]);
        let b = elem(&l, &[0, 5, -1]);
        for s in 0..3 {
            let lhs = a.mul(&b).apply_auto(s).unwrap();
            let rhs = a.apply_auto(s).unwrap().mul(&b.apply_auto(s).unwrap());
            assert_eq!(lhs, rhs);
            assert_eq!(FieldElem::from_int(&l, 7).apply_auto(s).unwrap(), FieldElem::from_int(&l, 7));
        }
    }
}
