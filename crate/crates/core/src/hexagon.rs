//! The root group U₊ of the hexagon of an Albert algebra: elements in normal
//! form x₁(a₁)x₂(t₂)x₃(a₃)x₄(t₄)x₅(a₅)x₆(t₆), multiplied by collection.
//!
//! Commutators are [g, h] = g⁻¹h⁻¹gh. An out-of-order pair is rewritten as
//! xⱼ(b)xᵢ(a) = xᵢ(a)xⱼ(b)[xᵢ(a), xⱼ(b)]⁻¹ for i < j, and every correction term
//! has index strictly between i and j, so collection terminates.

use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::albert::{AlbertAlgebra, AlbertElem};
use crate::random::Sampler;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HexError {
    #[error("elements live over different algebras")]
    MixedParents,
    #[error("root group index {0} out of range")]
    BadIndex(usize),
    #[error("parameter type does not match root group {0}")]
    BadParameter(usize),
    #[error("bad JSON component: {0}")]
    BadJson(String),
}

/// A root group parameter: an element of A for odd indices, of k for even.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Vec(AlbertElem),
    Scalar(Q),
}

impl Param {
    fn is_zero(&self) -> bool {
        match self {
            Param::Vec(a) => a.is_zero(),
            Param::Scalar(t) => t.is_zero(),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Param::Vec(a) => Param::Vec(a.neg()),
            Param::Scalar(t) => Param::Scalar(-t),
        }
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Param::Vec(a), Param::Vec(b)) => Param::Vec(a.add(b)),
            (Param::Scalar(s), Param::Scalar(t)) => Param::Scalar(s + t),
            _ => unreachable!("indices agree"),
        }
    }

    fn vec(&self) -> &AlbertElem {
        match self {
            Param::Vec(a) => a,
            Param::Scalar(_) => unreachable!("odd index"),
        }
    }

    fn scalar(&self) -> &Q {
        match self {
            Param::Scalar(t) => t,
            Param::Vec(_) => unreachable!("even index"),
        }
    }
}

/// One factor xᵢ(p), i ∈ 1..=6.
pub type Letter = (usize, Param);

/// [xᵢ(a), xⱼ(b)] for i < j, as a normal-form word.
pub fn commutator_rule(i: usize, a: &Param, j: usize, b: &Param) -> Vec<Letter> {
    let out = match (i, j) {
        (1, 3) => vec![(2, Param::Scalar(a.vec().trace_form(b.vec())))],
        (3, 5) => vec![(4, Param::Scalar(a.vec().trace_form(b.vec())))],
        (1, 5) => {
            let (x, y) = (a.vec(), b.vec());
            vec![
                (2, Param::Scalar(-x.adjoint().trace_form(y))),
                (3, Param::Vec(x.cross(y))),
                (4, Param::Scalar(x.trace_form(&y.adjoint()))),
            ]
        }
        (2, 6) => vec![(4, Param::Scalar(a.scalar() * b.scalar()))],
        (1, 6) => {
            let (x, t) = (a.vec(), b.scalar());
            let n = x.norm();
            vec![
                (2, Param::Scalar(-(t * &n))),
                (3, Param::Vec(x.adjoint().scale(t))),
                (4, Param::Scalar(t * t * &n)),
                (5, Param::Vec(x.scale(&-t))),
            ]
        }
        _ => vec![],
    };
    out.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

/// Collects a word into normal form.
fn collect(alg: &Arc<AlbertAlgebra>, mut w: Vec<Letter>) -> HexElem {
    w.retain(|(_, p)| !p.is_zero());
    let mut pos = 0;
    while pos + 1 < w.len() {
        let (i, j) = (w[pos + 1].0, w[pos].0);
        if i == j {
            let merged = w[pos].1.add(&w[pos + 1].1);
            w.remove(pos + 1);
            if merged.is_zero() {
                w.remove(pos);
                pos = pos.saturating_sub(1);
            } else {
                w[pos].1 = merged;
            }
        } else if i < j {
            let (b, a) = (w[pos].1.clone(), w[pos + 1].1.clone());
            let c = commutator_rule(i, &a, j, &b);
            let mut replacement = vec![(i, a), (j, b)];
            replacement.extend(c.into_iter().rev().map(|(k, p)| (k, p.neg())));
            w.splice(pos..pos + 2, replacement);
            pos = pos.saturating_sub(1);
        } else {
            pos += 1;
        }
    }
    let mut e = HexElem::identity(alg);
    for (k, p) in w {
        e.set(k, p).expect("valid letter");
    }
    e
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexJson {
    pub a1: Vec<String>,
    pub t2: String,
    pub a3: Vec<String>,
    pub t4: String,
    pub a5: Vec<String>,
    pub t6: String,
}

/// x₁(a1)x₂(t2)x₃(a3)x₄(t4)x₅(a5)x₆(t6).
#[derive(Clone, Debug, PartialEq)]
pub struct HexElem {
    pub a1: AlbertElem,
    pub t2: Q,
    pub a3: AlbertElem,
    pub t4: Q,
    pub a5: AlbertElem,
    pub t6: Q,
}

impl HexElem {
    pub fn identity(alg: &Arc<AlbertAlgebra>) -> Self {
        Self { a1: alg.zero(), t2: Q::zero(), a3: alg.zero(), t4: Q::zero(), a5: alg.zero(), t6: Q::zero() }
    }

    /// The single root element xᵢ(p).
    pub fn root(alg: &Arc<AlbertAlgebra>, i: usize, p: Param) -> Result<Self, HexError> {
        let mut e = Self::identity(alg);
        e.set(i, p)?;
        Ok(e)
    }

    fn set(&mut self, i: usize, p: Param) -> Result<(), HexError> {
        match (i, p) {
            (1, Param::Vec(a)) => self.a1 = a,
            (3, Param::Vec(a)) => self.a3 = a,
            (5, Param::Vec(a)) => self.a5 = a,
            (2, Param::Scalar(t)) => self.t2 = t,
            (4, Param::Scalar(t)) => self.t4 = t,
            (6, Param::Scalar(t)) => self.t6 = t,
            (i @ 1..=6, _) => return Err(HexError::BadParameter(i)),
            (i, _) => return Err(HexError::BadIndex(i)),
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        self.a1.algebra()
    }

    pub fn letters(&self) -> Vec<Letter> {
        vec![
            (1, Param::Vec(self.a1.clone())),
            (2, Param::Scalar(self.t2.clone())),
            (3, Param::Vec(self.a3.clone())),
            (4, Param::Scalar(self.t4.clone())),
            (5, Param::Vec(self.a5.clone())),
            (6, Param::Scalar(self.t6.clone())),
        ]
    }

    pub fn is_identity(&self) -> bool {
        self.letters().iter().all(|(_, p)| p.is_zero())
    }

    /// Indices with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        self.letters().into_iter().filter(|(_, p)| !p.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn random(alg: &Arc<AlbertAlgebra>, s: &mut Sampler) -> Self {
        Self {
            a1: alg.random_sparse(s, 0.3),
            t2: s.small_q(),
            a3: alg.random_sparse(s, 0.3),
            t4: s.small_q(),
            a5: alg.random_sparse(s, 0.3),
            t6: s.small_q(),
        }
    }

    pub fn to_json(&self) -> HexJson {
        let v = |a: &AlbertElem| a.coords().iter().map(|c| c.to_string()).collect();
        HexJson {
            a1: v(&self.a1),
            t2: self.t2.to_string(),
            a3: v(&self.a3),
            t4: self.t4.to_string(),
            a5: v(&self.a5),
            t6: self.t6.to_string(),
        }
    }

    pub fn from_json(alg: &Arc<AlbertAlgebra>, j: &HexJson) -> Result<Self, HexError> {
        let q = |s: &str| Q::from_str(s.trim()).map_err(|_| HexError::BadJson(format!("not a rational: {s:?}")));
        let v = |c: &[String]| -> Result<AlbertElem, HexError> {
            let c = c.iter().map(|s| q(s)).collect::<Result<Vec<_>, _>>()?;
            alg.elem(c).map_err(|e| HexError::BadJson(e.to_string()))
        };
        Ok(Self { a1: v(&j.a1)?, t2: q(&j.t2)?, a3: v(&j.a3)?, t4: q(&j.t4)?, a5: v(&j.a5)?, t6: q(&j.t6)? })
    }
}

pub fn hex_mul(g: &HexElem, h: &HexElem) -> Result<HexElem, HexError> {
    if !Arc::ptr_eq(g.algebra(), h.algebra()) {
        return Err(HexError::MixedParents);
    }
    let mut w = g.letters();
    w.extend(h.letters());
    Ok(collect(g.algebra(), w))
}

pub fn hex_inv(g: &HexElem) -> HexElem {
    let w = g.letters().into_iter().rev().map(|(i, p)| (i, p.neg())).collect();
    collect(g.algebra(), w)
}

/// g⁻¹h⁻¹gh.
pub fn hex_commutator(g: &HexElem, h: &HexElem) -> Result<HexElem, HexError> {
    let gi = hex_inv(g);
    let hi = hex_inv(h);
    hex_mul(&hex_mul(&gi, &hi)?, &hex_mul(g, h)?)
}

/// Product of root elements in the given order.
pub fn word(alg: &Arc<AlbertAlgebra>, letters: Vec<Letter>) -> HexElem {
    collect(alg, letters)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditLine {
    pub relation: String,
    pub passed: usize,
    pub total: usize,
}

impl AuditLine {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn random_param(alg: &Arc<AlbertAlgebra>, i: usize, s: &mut Sampler) -> Param {
    if i % 2 == 1 {
        Param::Vec(alg.random_sparse(s, 0.4))
    } else {
        Param::Scalar(s.small_q())
    }
}

/// Instantiates each commutator relation `count` times with random
/// parameters and compares both sides through hex_mul and hex_inv; also checks
/// the cubic norm identities the relations rely on.
pub fn relation_audit(alg: &Arc<AlbertAlgebra>, count: usize, seed: u64) -> Vec<AuditLine> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            let mut passed = 0;
            for _ in 0..count {
                let a = random_param(alg, i, &mut s);
                let b = random_param(alg, j, &mut s);
                let lhs = hex_commutator(
                    &HexElem::root(alg, i, a.clone()).expect("valid"),
                    &HexElem::root(alg, j, b.clone()).expect("valid"),
                )
                .expect("same algebra");
                let rhs = word(alg, commutator_rule(i, &a, j, &b));
                if lhs == rhs {
                    passed += 1;
                }
            }
            out.push(AuditLine { relation: format!("[x{i}, x{j}]"), passed, total: count });
        }
    }
    let mut identities = |name: &str, f: &dyn Fn(&AlbertElem, &AlbertElem, &Q) -> bool, s: &mut Sampler| {
        let passed = (0..count)
            .filter(|_| {
                let a = alg.random_sparse(s, 0.4);
                let b = alg.random_sparse(s, 0.4);
                let t = s.nonzero_q();
                f(&a, &b, &t)
            })
            .count();
        out.push(AuditLine { relation: name.to_string(), passed, total: count });
    };
    identities(
        "T bilinear and symmetric",
        &|a, b, t| {
            a.trace_form(b) == b.trace_form(a)
                && a.scale(t).add(b).trace_form(b) == t * a.trace_form(b) + b.trace_form(b)
        },
        &mut s,
    );
    identities(
        "cross product symmetric, a x a = 2a#",
        &|a, b, _| a.cross(b) == b.cross(a) && a.cross(a) == a.adjoint().scale(&Q::from_integer(2.into())),
        &mut s,
    );
    identities(
        "(a+b)# = a# + a x b + b#",
        &|a, b, t| {
            let b = b.scale(t);
            a.add(&b).adjoint() == a.adjoint().add(&a.cross(&b)).add(&b.adjoint())
        },
        &mut s,
    );
    identities(
        "a## = N(a)a and T(a, a#) = 3N(a)",
        &|a, _, _| {
            a.adjoint().adjoint() == a.scale(&a.norm())
                && a.trace_form(&a.adjoint()) == Q::from_integer(3.into()) * a.norm()
        },
        &mut s,
    );
    identities(
        "N(a+b) = N(a) + T(a#,b) + T(a,b#) + N(b)",
        &|a, b, _| a.add(b).norm() == a.norm() + a.adjoint().trace_form(b) + a.trace_form(&b.adjoint()) + b.norm(),
        &mut s,
    );
    out
}

/// Whether every element supported on i..=j stays so under products.
pub fn supported_in(g: &HexElem, i: usize, j: usize) -> bool {
    g.support().iter().all(|&k| (i..=j).contains(&k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::shipped::{split_first, split_reduced};

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn identity_and_additivity() {
        let alg = split_first(1);
        let mut s = Sampler::new(61);
        let g = HexElem::random(&alg, &mut s);
        let e = HexElem::identity(&alg);
        assert_eq!(hex_mul(&g, &e).unwrap(), g);
        assert_eq!(hex_mul(&e, &g).unwrap(), g);
        let a = alg.random(&mut s);
        let b = alg.random(&mut s);
        let xa = HexElem::root(&alg, 1, Param::Vec(a.clone())).unwrap();
        let xb = HexElem::root(&alg, 1, Param::Vec(b.clone())).unwrap();
        assert_eq!(hex_mul(&xa, &xb).unwrap(), HexElem::root(&alg, 1, Param::Vec(a.add(&b))).unwrap());
        assert_eq!(hex_inv(&xa), HexElem::root(&alg, 1, Param::Vec(a.neg())).unwrap());
        assert!(hex_inv(&e).is_identity());
    }

    #[test]
    fn x2_x6_commutator() {
        let alg = split_first(1);
        let g = HexElem::root(&alg, 2, Param::Scalar(qi(3))).unwrap();
        let h = HexElem::root(&alg, 6, Param::Scalar(qi(-5))).unwrap();
        let c = hex_commutator(&g, &h).unwrap();
        assert_eq!(c, HexElem::root(&alg, 4, Param::Scalar(qi(-15))).unwrap());
        let zero = HexElem::root(&alg, 2, Param::Scalar(qi(0))).unwrap();
        assert!(hex_commutator(&zero, &h).unwrap().is_identity());
    }

    #[test]
    fn inverses_and_associativity() {
        let mut s = Sampler::new(62);
        for alg in [split_first(1), split_reduced()] {
            for _ in 0..10 {
                let g = HexElem::random(&alg, &mut s);
                let h = HexElem::random(&alg, &mut s);
                let w = HexElem::random(&alg, &mut s);
                assert!(hex_mul(&g, &hex_inv(&g)).unwrap().is_identity());
                let l = hex_mul(&hex_mul(&g, &h).unwrap(), &w).unwrap();
                let r = hex_mul(&g, &hex_mul(&h, &w).unwrap()).unwrap();
                assert_eq!(l, r, "{}", alg.label());
            }
        }
    }

    #[test]
    fn audit_passes() {
        let alg = split_first(1);
        for line in relation_audit(&alg, 5, 63) {
            assert!(line.ok(), "{}", line.relation);
        }
    }

    #[test]
    fn zero_parameter_in_x1_x6() {
        let alg = split_first(1);
        let g = HexElem::root(&alg, 1, Param::Vec(alg.zero())).unwrap();
        let h = HexElem::root(&alg, 6, Param::Scalar(qi(2))).unwrap();
        assert!(hex_commutator(&g, &h).unwrap().is_identity());
    }

    #[test]
    fn interval_subgroups_closed() {
        let alg = split_first(1);
        let mut s = Sampler::new(64);
        let mut g = HexElem::random(&alg, &mut s);
        g.a1 = alg.zero();
        g.t6 = Q::zero();
        let mut h = HexElem::random(&alg, &mut s);
        h.a1 = alg.zero();
        h.t6 = Q::zero();
        assert!(supported_in(&hex_mul(&g, &h).unwrap(), 2, 5));
    }

    #[test]
    fn json_round_trip() {
        let alg = split_first(1);
        let g = HexElem::random(&alg, &mut Sampler::new(65));
        assert_eq!(HexElem::from_json(&alg, &g.to_json()).unwrap(), g);
        let mut bad = g.to_json();
        bad.t2 = "x".into();
        assert!(matches!(HexElem::from_json(&alg, &bad), Err(HexError::BadJson(_))));
    }
}
