//! JSON configuration: named fields, associative algebras, octonion algebras,
//! Albert algebras, elements and words, validated at load.
//!
//! Rationals are strings "p/q" or "p". A field element is a list of rational
//! strings in ascending powers of the generator; a bare string is accepted
//! for a rational. Matrices are nine entries in row-major order.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::albert::{AlbertAlgebra, AlbertElem, DIM};
use crate::assoc3::{Assoc3Algebra, AssocElem, UnitaryInvolution};
use crate::composition::CayleyAlgebra;
use crate::exactfield::{FieldElem, NumberField, Poly};
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::strmaps::{classify, Generator, InstrWord, Primitive};
use crate::suites::{Check, Tally};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WorkspaceError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{object}: invariant violated: {invariant}")]
    InvariantViolation { object: String, invariant: String },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{object}: unknown reference {label:?}")]
    UnknownReference { object: String, label: String },
}

type Result<T> = std::result::Result<T, WorkspaceError>;

fn violation(object: &str, invariant: impl ToString) -> WorkspaceError {
    WorkspaceError::InvariantViolation { object: object.to_string(), invariant: invariant.to_string() }
}

fn unknown(object: &str, label: &str) -> WorkspaceError {
    WorkspaceError::UnknownReference { object: object.to_string(), label: label.to_string() }
}

pub fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| WorkspaceError::Parse(format!("not a rational: {s:?}")))
}

pub fn parse_qs(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

pub fn q_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(Q::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rational(String),
    Coeffs(Vec<String>),
}

impl Scalar {
    fn to_elem(&self, f: &Arc<NumberField>) -> Result<FieldElem> {
        let mut c = match self {
            Scalar::Rational(s) => vec![parse_q(s)?],
            Scalar::Coeffs(v) => parse_qs(v)?,
        };
        if c.len() > f.degree() {
            return Err(WorkspaceError::Parse(format!(
                "{} coefficients for a field of degree {}",
                c.len(),
                f.degree()
            )));
        }
        c.resize(f.degree(), Q::zero());
        FieldElem::new(f, c).map_err(|e| WorkspaceError::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub label: String,
    pub poly: Vec<String>,
    #[serde(default)]
    pub automorphisms: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    #[serde(rename = "K", default)]
    pub k: Option<String>,
    pub g: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase", deny_unknown_fields)]
pub enum AssocSpec {
    Matrix3 {
        label: String,
        field: String,
        #[serde(default)]
        involution: Option<InvolutionSpec>,
    },
    Cyclic {
        label: String,
        #[serde(rename = "L")]
        l: String,
        /// Image of the generator of L under σ.
        sigma: Vec<String>,
        gamma: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleySpec {
    pub label: String,
    #[serde(default = "rationals_label")]
    pub base: String,
    pub params: [String; 3],
}

fn rationals_label() -> String {
    "Q".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlbertSpec {
    First {
        label: String,
        #[serde(rename = "D")]
        d: String,
        mu: String,
    },
    Second {
        label: String,
        #[serde(rename = "B")]
        b: String,
        u: Vec<Scalar>,
        mu: Scalar,
    },
    Reduced {
        label: String,
        #[serde(rename = "C")]
        c: String,
        gamma: [String; 3],
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElemSpec {
    pub label: String,
    pub algebra: String,
    pub coords: Vec<String>,
}

/// One generator of a serialized word.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gen", deny_unknown_fields)]
pub enum GenJson {
    U {
        elem: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        origin: Option<String>,
    },
    #[serde(rename = "scalar")]
    Scalar {
        t: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        origin: Option<String>,
    },
    /// `Jp` carries the 9 coordinates of p; any other name carries the
    /// 27×27 matrix row by row and its similitude factor.
    #[serde(rename = "prim")]
    Prim {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        similitude: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        origin: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordSpec {
    pub label: String,
    pub algebra: String,
    pub word: Vec<GenJson>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    #[serde(default)]
    pub cayley: Vec<CayleySpec>,
    #[serde(default)]
    pub assoc: Vec<AssocSpec>,
    #[serde(default)]
    pub albert: Vec<AlbertSpec>,
    #[serde(default)]
    pub elements: Vec<ElemSpec>,
    #[serde(default)]
    pub words: Vec<WordSpec>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| WorkspaceError::Parse(e.to_string()))
    }
}

pub fn elem_json(x: &AlbertElem) -> Vec<String> {
    q_strings(x.coords())
}

pub fn elem_from_json(alg: &Arc<AlbertAlgebra>, v: &[String]) -> Result<AlbertElem> {
    if v.len() != DIM {
        return Err(WorkspaceError::Parse(format!("expected {DIM} coordinates, got {}", v.len())));
    }
    alg.elem(parse_qs(v)?).map_err(|e| WorkspaceError::Parse(e.to_string()))
}

pub fn word_json(w: &InstrWord) -> Vec<GenJson> {
    w.items
        .iter()
        .map(|item| {
            let origin = Some(item.origin.clone());
            match &item.gen {
                Generator::U(x) => GenJson::U { elem: elem_json(x), origin },
                Generator::Scalar(t) => GenJson::Scalar { t: t.to_string(), origin },
                Generator::Prim(Primitive::Jp(p)) => GenJson::Prim {
                    name: "Jp".into(),
                    p: Some(q_strings(&p.to_q_coords())),
                    matrix: None,
                    similitude: None,
                    origin,
                },
                Generator::Prim(Primitive::Linear { name, op, similitude }) => GenJson::Prim {
                    name: name.clone(),
                    p: None,
                    matrix: Some(q_strings(op.entries())),
                    similitude: Some(similitude.to_string()),
                    origin,
                },
            }
        })
        .collect()
}

pub fn word_from_json(alg: &Arc<AlbertAlgebra>, items: &[GenJson]) -> Result<InstrWord> {
    let mut w = InstrWord::new(alg);
    let origin = |o: &Option<String>| o.clone().unwrap_or_else(|| "config".into());
    for g in items {
        match g {
            GenJson::U { elem, origin: o } => w.push(Generator::U(elem_from_json(alg, elem)?), &origin(o)),
            GenJson::Scalar { t, origin: o } => w.push(Generator::Scalar(parse_q(t)?), &origin(o)),
            GenJson::Prim { name, p, matrix, similitude, origin: o } => {
                let prim = if name == "Jp" {
                    let (d, _) = alg.first_data().map_err(|e| WorkspaceError::Parse(e.to_string()))?;
                    let p = p.as_ref().ok_or_else(|| WorkspaceError::Parse("Jp needs \"p\"".into()))?;
                    Primitive::Jp(d.from_q_coords(&parse_qs(p)?).map_err(|e| WorkspaceError::Parse(e.to_string()))?)
                } else {
                    let m = matrix.as_ref().ok_or_else(|| WorkspaceError::Parse(format!("{name} needs \"matrix\"")))?;
                    if m.len() != DIM * DIM {
                        return Err(WorkspaceError::Parse(format!("{name}: matrix needs {} entries", DIM * DIM)));
                    }
                    let rows = parse_qs(m)?.chunks(DIM).map(<[Q]>::to_vec).collect();
                    let sim = similitude
                        .as_ref()
                        .ok_or_else(|| WorkspaceError::Parse(format!("{name} needs \"similitude\"")))?;
                    Primitive::Linear { name: name.clone(), op: Matrix::from_rows(rows), similitude: parse_q(sim)? }
                };
                w.push(Generator::Prim(prim), &origin(o));
            }
        }
    }
    Ok(w)
}

pub struct AssocEntry {
    pub alg: Arc<Assoc3Algebra>,
    pub involution: Option<UnitaryInvolution>,
}

/// Per-object load report.
#[derive(Clone, Debug, Serialize)]
pub struct ObjectSummary {
    pub kind: &'static str,
    pub label: String,
    pub dim: usize,
    pub checks: Vec<Check>,
}

impl ObjectSummary {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

/// Everything loaded from one or more configs. Labels are unique across all
/// kinds; "Q" names the rationals.
#[derive(Default)]
pub struct Workspace {
    pub fields: BTreeMap<String, Arc<NumberField>>,
    pub cayley: BTreeMap<String, Arc<CayleyAlgebra>>,
    pub assoc: BTreeMap<String, AssocEntry>,
    pub albert: BTreeMap<String, Arc<AlbertAlgebra>>,
    pub elements: BTreeMap<String, AlbertElem>,
    pub words: BTreeMap<String, InstrWord>,
    pub summary: Vec<ObjectSummary>,
}

const SHIPPED: [&str; 4] = [
    include_str!("../../../configs/split.json"),
    include_str!("../../../configs/cyclic7.json"),
    include_str!("../../../configs/unitary.json"),
    include_str!("../../../configs/reduced.json"),
];

fn done(kind: &'static str, label: &str, dim: usize, t: Tally) -> ObjectSummary {
    ObjectSummary { kind, label: label.to_string(), dim, checks: t.checks }
}

impl Workspace {
    pub fn new() -> Self {
        let mut ws = Self::default();
        ws.fields.insert("Q".into(), NumberField::rationals());
        ws
    }

    /// The four shipped configs in one workspace.
    pub fn shipped() -> Self {
        Self::shipped_with(0, 0)
    }

    pub fn shipped_with(seed: u64, samples: usize) -> Self {
        let mut ws = Self::new();
        for text in SHIPPED {
            ws.load_str(text, seed, samples).expect("shipped configs are valid");
        }
        ws
    }

    pub fn from_str(text: &str, seed: u64, samples: usize) -> Result<Self> {
        let mut ws = Self::new();
        ws.load_str(text, seed, samples)?;
        Ok(ws)
    }

    /// Loads a config on top of what is already present. `samples` sets the
    /// number of seeded random cases behind each sampled check; 0 keeps only
    /// the constructor checks.
    pub fn load_str(&mut self, text: &str, seed: u64, samples: usize) -> Result<()> {
        self.load(&Config::parse(text)?, seed, samples)
    }

    fn taken(&self, label: &str) -> bool {
        self.fields.contains_key(label)
            || self.cayley.contains_key(label)
            || self.assoc.contains_key(label)
            || self.albert.contains_key(label)
            || self.elements.contains_key(label)
            || self.words.contains_key(label)
    }

    fn claim(&self, label: &str) -> Result<()> {
        if self.taken(label) {
            Err(WorkspaceError::DuplicateLabel(label.to_string()))
        } else {
            Ok(())
        }
    }

    fn field(&self, object: &str, label: &str) -> Result<Arc<NumberField>> {
        self.fields.get(label).cloned().ok_or_else(|| unknown(object, label))
    }

    pub fn algebra(&self, label: &str) -> Result<Arc<AlbertAlgebra>> {
        self.albert.get(label).cloned().ok_or_else(|| unknown("lookup", label))
    }

    pub fn load(&mut self, cfg: &Config, seed: u64, samples: usize) -> Result<()> {
        let mut s = Sampler::new(seed);
        for f in &cfg.fields {
            self.load_field(f)?;
        }
        for c in &cfg.cayley {
            self.load_cayley(c, &mut s, samples)?;
        }
        for a in &cfg.assoc {
            self.load_assoc(a, &mut s, samples)?;
        }
        for a in &cfg.albert {
            self.load_albert(a, &mut s, samples)?;
        }
        for e in &cfg.elements {
            self.claim(&e.label)?;
            let alg = self.albert.get(&e.algebra).ok_or_else(|| unknown(&e.label, &e.algebra))?;
            let x = elem_from_json(alg, &e.coords)?;
            self.elements.insert(e.label.clone(), x);
        }
        for w in &cfg.words {
            self.load_word(w)?;
        }
        Ok(())
    }

    fn load_field(&mut self, f: &FieldSpec) -> Result<()> {
        self.claim(&f.label)?;
        let poly = Poly::new(parse_qs(&f.poly)?);
        let gens = f.automorphisms.iter().map(|a| parse_qs(a).map(Poly::new)).collect::<Result<Vec<_>>>()?;
        let field = NumberField::new(f.label.clone(), poly, &gens).map_err(|e| violation(&f.label, e))?;
        let mut t = Tally::new();
        t.run("defining polynomial monic and irreducible over Q", 1, |_| true);
        t.run("supplied automorphisms map a root to a root", 1, |_| true);
        t.note(format!(
            "degree {}, automorphism group of order {}{}",
            field.degree(),
            field.automorphisms().len(),
            if field.is_galois() { ", Galois" } else { "" }
        ));
        self.summary.push(done("field", &f.label, field.degree(), t));
        self.fields.insert(f.label.clone(), field);
        Ok(())
    }

    fn load_cayley(&mut self, c: &CayleySpec, s: &mut Sampler, samples: usize) -> Result<()> {
        self.claim(&c.label)?;
        if self.field(&c.label, &c.base)?.degree() != 1 {
            return Err(violation(&c.label, "octonion algebras are built over Q"));
        }
        let [a, b, g] = [parse_q(&c.params[0])?, parse_q(&c.params[1])?, parse_q(&c.params[2])?];
        let alg = CayleyAlgebra::new(a, b, g).map_err(|e| violation(&c.label, e))?;
        let mut t = Tally::new();
        t.run("doubling parameters nonzero", 1, |_| true);
        t.run("n(xy) = n(x)n(y)", samples, |_| {
            let (x, y) = (alg.random(s), alg.random(s));
            x.mul(&y).norm() == x.norm() * y.norm()
        });
        if alg.norm_positive_definite() {
            t.note("norm form positive definite: a division algebra");
        }
        self.summary.push(done("cayley", &c.label, 8, t));
        self.cayley.insert(c.label.clone(), alg);
        Ok(())
    }

    fn load_assoc(&mut self, spec: &AssocSpec, s: &mut Sampler, samples: usize) -> Result<()> {
        let mut t = Tally::new();
        let (label, entry) = match spec {
            AssocSpec::Matrix3 { label, field, involution } => {
                self.claim(label)?;
                let f = self.field(label, field)?;
                let alg = Assoc3Algebra::matrix3(label.clone(), f.clone());
                let involution = match involution {
                    None => None,
                    Some(inv) => {
                        if let Some(k) = &inv.k {
                            if k != field {
                                return Err(violation(label, format!("involution field {k} differs from {field}")));
                            }
                        }
                        let g = matrix_from(&alg, label, &inv.g)?;
                        let tau = UnitaryInvolution::new(&g).map_err(|e| violation(label, e))?;
                        t.run("g hermitian and invertible", 1, |_| true);
                        t.run("tau is an involutive anti-automorphism", samples, |_| {
                            let (x, y) = (alg.random(s), alg.random(s));
                            tau.apply(&tau.apply(&x)) == x && tau.apply(&x.mul(&y)) == tau.apply(&y).mul(&tau.apply(&x))
                        });
                        Some(tau)
                    }
                };
                (label, AssocEntry { alg, involution })
            }
            AssocSpec::Cyclic { label, l, sigma, gamma } => {
                self.claim(label)?;
                let lf = self.field(label, l)?;
                let img = FieldElem::new(&lf, {
                    let mut c = parse_qs(sigma)?;
                    if c.len() > lf.degree() {
                        return Err(violation(label, "sigma has more coefficients than the degree of L"));
                    }
                    c.resize(lf.degree(), Q::zero());
                    c
                })
                .map_err(|e| violation(label, e))?;
                let idx = lf
                    .automorphisms()
                    .iter()
                    .position(|a| a.as_slice() == img.coeffs())
                    .ok_or_else(|| violation(label, format!("sigma is not an automorphism of {l}")))?;
                let alg =
                    Assoc3Algebra::cyclic(label.clone(), lf, idx, parse_q(gamma)?).map_err(|e| violation(label, e))?;
                t.run("L cyclic cubic, sigma of order 3, gamma nonzero", 1, |_| true);
                let count = 10 * samples;
                t.run("reduced norm nonzero on sampled nonzero elements", count, |_| loop {
                    let x = alg.random(s);
                    if !x.is_zero() {
                        break !x.norm().is_zero();
                    }
                });
                if count > 0 {
                    t.note(format!("sampled anisotropy on {count} elements; consistent with division, not a proof"));
                }
                (label, AssocEntry { alg, involution: None })
            }
        };
        let a = &entry.alg;
        t.run("a * a^-1 = 1 on sampled invertible elements", samples, |_| {
            let x = a.random_invertible(s);
            x.mul(&x.inv().expect("nonzero norm")) == a.one()
        });
        t.run("reduced norm multiplicative", samples, |_| {
            let (x, y) = (a.random(s), a.random(s));
            x.mul(&y).norm() == x.norm().mul(&y.norm())
        });
        self.summary.push(done("assoc", label, a.dim_q(), t));
        self.assoc.insert(label.clone(), entry);
        Ok(())
    }

    fn load_albert(&mut self, spec: &AlbertSpec, s: &mut Sampler, samples: usize) -> Result<()> {
        let mut t = Tally::new();
        let (label, alg) = match spec {
            AlbertSpec::First { label, d, mu } => {
                self.claim(label)?;
                let entry = self.assoc.get(d).ok_or_else(|| unknown(label, d))?;
                let alg = AlbertAlgebra::first(label.clone(), entry.alg.clone(), parse_q(mu)?)
                    .map_err(|e| violation(label, e))?;
                t.run("D central simple of degree 3 over Q, mu nonzero", 1, |_| true);
                if entry.alg.is_cyclic() {
                    t.note(
                        "over Q every rational is a reduced norm of a degree 3 division algebra, so J(D,mu) \
                         always has nonzero elements of norm 0; only D itself is sampled for anisotropy",
                    );
                }
                (label, alg)
            }
            AlbertSpec::Second { label, b, u, mu } => {
                self.claim(label)?;
                let entry = self.assoc.get(b).ok_or_else(|| unknown(label, b))?;
                let tau = entry.involution.clone().ok_or_else(|| violation(label, format!("{b} has no involution")))?;
                let u = matrix_from(&entry.alg, label, u)?;
                let mu = mu.to_elem(entry.alg.entry_field())?;
                let alg = AlbertAlgebra::second(label.clone(), tau, u, mu).map_err(|e| violation(label, e))?;
                t.run("tau(u) = u, u invertible, N(u) = mu * conj(mu)", 1, |_| true);
                (label, alg)
            }
            AlbertSpec::Reduced { label, c, gamma } => {
                self.claim(label)?;
                let ca = self.cayley.get(c).ok_or_else(|| unknown(label, c))?.clone();
                let g = [parse_q(&gamma[0])?, parse_q(&gamma[1])?, parse_q(&gamma[2])?];
                let alg = AlbertAlgebra::reduced(label.clone(), ca, g).map_err(|e| violation(label, e))?;
                t.run("gamma entries nonzero", 1, |_| true);
                (label, alg)
            }
        };
        t.run("x * 1 = x", samples, |_| {
            let x = alg.random(s);
            x.jmul(&alg.one()) == x
        });
        t.run("x * y = y * x", samples, |_| {
            let (x, y) = (alg.random(s), alg.random(s));
            x.jmul(&y) == y.jmul(&x)
        });
        t.run("Jordan identity (x^2 y) x = x^2 (y x)", samples, |_| {
            let (x, y) = (alg.random(s), alg.random(s));
            let x2 = x.jmul(&x);
            x2.jmul(&y).jmul(&x) == x2.jmul(&y.jmul(&x))
        });
        t.run("closed-form norm = Newton norm", samples, |_| {
            let x = alg.random(s);
            x.norm() == x.newton_norm()
        });
        t.run("x x# = N(x) 1", samples, |_| {
            let x = alg.random(s);
            x.jmul(&x.adjoint()) == alg.scalar(&x.norm())
        });
        self.summary.push(done("albert", label, alg.dim(), t));
        self.albert.insert(label.clone(), alg);
        Ok(())
    }

    fn load_word(&mut self, w: &WordSpec) -> Result<()> {
        self.claim(&w.label)?;
        let alg = self.albert.get(&w.algebra).ok_or_else(|| unknown(&w.label, &w.algebra))?;
        let word = word_from_json(alg, &w.word)?;
        let e = word.eval().map_err(|e| violation(&w.label, e))?;
        let c = classify(&e.op).map_err(|e| violation(&w.label, e))?;
        let mut t = Tally::new();
        t.run("every generator invertible", 1, |_| true);
        t.run("tracked similitude = similarity factor of the product", 1, |_| c.similarity_factor == e.similitude);
        if !t.checks.iter().all(Check::ok) {
            return Err(violation(&w.label, "tracked similitude differs from the similarity factor"));
        }
        self.summary.push(done("word", &w.label, word.len(), t));
        self.words.insert(w.label.clone(), word);
        Ok(())
    }

    pub fn ok(&self) -> bool {
        self.summary.iter().all(ObjectSummary::ok)
    }
}

fn matrix_from(alg: &Arc<Assoc3Algebra>, object: &str, entries: &[Scalar]) -> Result<AssocElem> {
    if entries.len() != 9 {
        return Err(WorkspaceError::Parse(format!("{object}: a 3x3 matrix needs 9 entries, got {}", entries.len())));
    }
    let f = alg.entry_field();
    let data = entries.iter().map(|e| e.to_elem(f)).collect::<Result<Vec<_>>>()?;
    alg.from_entries(data).map_err(|e| violation(object, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::shipped::{cyclic7_first, split_first, split_reduced, unitary_second};

    fn same_product(a: &Arc<AlbertAlgebra>, b: &Arc<AlbertAlgebra>, seed: u64) -> bool {
        let mut s = Sampler::new(seed);
        (0..5).all(|_| {
            let (x, y) = (a.random(&mut s), a.random(&mut s));
            let (x2, y2) = (b.elem(x.coords().to_vec()).unwrap(), b.elem(y.coords().to_vec()).unwrap());
            x.jmul(&y).coords() == x2.jmul(&y2).coords() && x.norm() == x2.norm()
        })
    }

    #[test]
    fn shipped_configs_match_builtin_algebras() {
        let ws = Workspace::shipped();
        assert!(same_product(&ws.algebra("split").unwrap(), &split_first(1), 1));
        assert!(same_product(&ws.algebra("split2").unwrap(), &split_first(2), 2));
        assert!(same_product(&ws.algebra("cyclic7").unwrap(), &cyclic7_first(), 3));
        assert!(same_product(&ws.algebra("unitary").unwrap(), &unitary_second(), 4));
        assert!(same_product(&ws.algebra("reduced").unwrap(), &split_reduced(), 5));
    }

    #[test]
    fn sampled_checks_pass() {
        let ws = Workspace::from_str(include_str!("../../../configs/cyclic7.json"), 3, 3).unwrap();
        assert!(ws.ok());
        assert!(ws.summary.iter().any(|o| o.checks.iter().any(|c| c.note.is_some())));
    }

    #[test]
    fn errors() {
        let bad_poly = r#"{"fields":[{"label":"F","poly":["1","x"]}]}"#;
        assert!(matches!(Workspace::from_str(bad_poly, 0, 0), Err(WorkspaceError::Parse(_))));
        let reducible = r#"{"fields":[{"label":"F","poly":["-1","0","1"]}]}"#;
        assert!(matches!(Workspace::from_str(reducible, 0, 0), Err(WorkspaceError::InvariantViolation { .. })));
        let dup = r#"{"fields":[{"label":"Q","poly":["1","1"]}]}"#;
        assert_eq!(Workspace::from_str(dup, 0, 0).err(), Some(WorkspaceError::DuplicateLabel("Q".into())));
        let missing = r#"{"albert":[{"construction":"first","label":"A","D":"nope","mu":"1"}]}"#;
        assert!(matches!(Workspace::from_str(missing, 0, 0), Err(WorkspaceError::UnknownReference { .. })));
        let bad_mu = r#"{"assoc":[{"backend":"matrix3","label":"M","field":"Q"}],
            "albert":[{"construction":"first","label":"A","D":"M","mu":"0"}]}"#;
        assert!(matches!(Workspace::from_str(bad_mu, 0, 0), Err(WorkspaceError::InvariantViolation { .. })));
        let zero_den = r#"{"assoc":[{"backend":"matrix3","label":"M","field":"Q"}],
            "albert":[{"construction":"first","label":"A","D":"M","mu":"1/0"}]}"#;
        assert!(matches!(Workspace::from_str(zero_den, 0, 0), Err(WorkspaceError::Parse(_))));
    }

    #[test]
    fn word_round_trip() {
        let alg = split_first(2);
        let mut s = Sampler::new(9);
        let d = alg.first_data().unwrap().0.clone();
        let p = {
            let a = d.random_invertible(&mut s);
            let b = d.random_invertible(&mut s);
            a.mul(&b).mul(&a.inv().unwrap()).mul(&b.inv().unwrap())
        };
        let w = InstrWord::new(&alg)
            .u(alg.random_invertible(&mut s), "t")
            .scalar(Q::new(3.into(), 2.into()), "t")
            .prim(Primitive::Jp(p), "t");
        let json = serde_json::to_string(&word_json(&w)).unwrap();
        let back = word_from_json(&alg, &serde_json::from_str::<Vec<GenJson>>(&json).unwrap()).unwrap();
        assert_eq!(word_json(&back), word_json(&w));
        assert_eq!(back.eval().unwrap().op, w.eval().unwrap().op);
    }
}
