//! Fixed subspaces, the trace-zero subspace and subalgebra closure, all by
//! exact elimination.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::albert::{AlbertAlgebra, AlbertElem, DIM};
use crate::linalg::{span_basis, Matrix};
use crate::strmaps::{is_automorphism, LinOp};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixError {
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("generator list is empty")]
    NoGenerators,
}

/// A subspace of A with a reduced echelon basis.
#[derive(Clone)]
pub struct Subspace {
    alg: Arc<AlbertAlgebra>,
    basis: Vec<Vec<Q>>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace({}, dim {})", self.alg.label(), self.basis.len())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.basis == other.basis
    }
}

fn pivot(v: &[Q]) -> usize {
    v.iter().position(|c| !c.is_zero()).expect("nonzero basis vector")
}

impl Subspace {
    pub fn span(alg: &Arc<AlbertAlgebra>, vectors: &[Vec<Q>]) -> Self {
        Self { alg: alg.clone(), basis: span_basis(vectors) }
    }

    pub fn full(alg: &Arc<AlbertAlgebra>) -> Self {
        Self { alg: alg.clone(), basis: Matrix::identity(DIM).entries().chunks(DIM).map(<[Q]>::to_vec).collect() }
    }

    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn elements(&self) -> Vec<AlbertElem> {
        self.basis.iter().map(|v| self.alg.elem(v.clone()).expect("27 coordinates")).collect()
    }

    /// Coordinates in the echelon basis, read off at the pivots.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.basis.iter().map(|b| v[pivot(b)].clone()).collect();
        let mut r = v.to_vec();
        for (b, x) in self.basis.iter().zip(&c) {
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= x * bi;
            }
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, x: &AlbertElem) -> bool {
        self.coordinates(x.coords()).is_some()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        // v = Σ xᵢbᵢ = Σ yⱼcⱼ, from the kernel of [B | −C].
        let n = self.basis.len();
        let mut cols: Vec<Vec<Q>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|c| c.iter().map(|x| -x).collect()));
        if cols.is_empty() {
            return Self { alg: self.alg.clone(), basis: vec![] };
        }
        let vs: Vec<Vec<Q>> = Matrix::from_cols(&cols)
            .kernel()
            .iter()
            .map(|k| {
                let mut v = vec![Q::zero(); DIM];
                for (x, b) in k[..n].iter().zip(&self.basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += x * bi;
                    }
                }
                v
            })
            .collect();
        Self::span(&self.alg, &vs)
    }

    /// Closed under the Jordan product.
    pub fn is_subalgebra(&self) -> bool {
        let e = self.elements();
        (0..e.len()).all(|i| (i..e.len()).all(|j| self.contains(&e[i].jmul(&e[j]))))
    }

    pub fn is_commutative_associative(&self) -> bool {
        let e = self.elements();
        e.iter().all(|x| e.iter().all(|y| e.iter().all(|z| x.jmul(y).jmul(z) == x.jmul(&y.jmul(z)))))
    }
}

/// ker(f − id).
pub fn fixed_subspace(f: &LinOp) -> Subspace {
    Subspace::span(f.algebra(), &f.sub_identity().kernel())
}

/// A₀ = ker T.
pub fn trace_zero(alg: &Arc<AlbertAlgebra>) -> Subspace {
    let row: Vec<Q> = (0..DIM).map(|i| alg.basis(i).trace()).collect();
    Subspace::span(alg, &Matrix::from_rows(vec![row]).kernel())
}

/// det(f|A₀ − id), for an automorphism f.
pub fn det_on_trace_zero(f: &LinOp) -> Result<Q, FixError> {
    let alg = f.algebra();
    if f.apply(&alg.one()) != alg.one() || !is_automorphism(f) {
        return Err(FixError::NotAutomorphism);
    }
    let a0 = trace_zero(alg);
    let cols: Vec<Vec<Q>> = a0
        .basis()
        .iter()
        .map(|b| a0.coordinates(&f.matrix().apply(b)).expect("automorphisms preserve the trace"))
        .collect();
    let m = Matrix::from_cols(&cols);
    Ok(m.sub(&Matrix::identity(m.rows())).det())
}

/// Whether an automorphism fixes a nonzero trace-zero element.
pub fn has_fixed_vector_in_a0(f: &LinOp) -> Result<bool, FixError> {
    Ok(det_on_trace_zero(f)?.is_zero())
}

/// The smallest unital subalgebra containing `gens`.
pub fn subalgebra_closure(gens: &[AlbertElem]) -> Result<Subspace, FixError> {
    let alg = gens.first().ok_or(FixError::NoGenerators)?.algebra().clone();
    let mut vecs: Vec<Vec<Q>> = vec![alg.one().coords().to_vec()];
    vecs.extend(gens.iter().map(|g| g.coords().to_vec()));
    let mut sub = Subspace::span(&alg, &vecs);
    loop {
        let e = sub.elements();
        let mut grown = sub.basis.clone();
        for i in 0..e.len() {
            for j in i..e.len() {
                let p = e[i].jmul(&e[j]);
                if !sub.contains(&p) {
                    grown.push(p.coords().to_vec());
                }
            }
        }
        let next = Subspace::span(&alg, &grown);
        if next.dim() == sub.dim() {
            return Ok(sub);
        }
        sub = next;
    }
}

/// The intersection of the fixed subspaces of `fs`; the whole algebra when
/// `fs` is empty.
pub fn element_fixed_set(alg: &Arc<AlbertAlgebra>, fs: &[LinOp]) -> Subspace {
    if fs.is_empty() {
        return Subspace::full(alg);
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for f in fs {
        rows.extend(f.sub_identity().entries().chunks(DIM).map(<[Q]>::to_vec));
    }
    Subspace::span(alg, &Matrix::from_rows(rows).kernel())
}

/// Whether 1 lies in the subspace.
pub fn contains_one(s: &Subspace) -> bool {
    s.contains(&s.algebra().one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::shipped::{cyclic7_first, split_first, split_reduced, unitary_second};
    use crate::assoc3::AssocElem;
    use crate::exactfield::FieldElem;
    use crate::random::Sampler;
    use crate::strmaps::{make_jp, make_phi, make_psi};
    use num_traits::One;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn unit_vector(i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); DIM];
        v[i] = Q::one();
        v
    }

    /// σ(w)/w embedded in L, a norm-one torus element.
    fn torus_element(d: &Arc<crate::assoc3::Assoc3Algebra>, w: [i64; 3]) -> AssocElem {
        let x = FieldElem::new(d.entry_field(), w.iter().map(|&c| qi(c)).collect()).unwrap();
        d.embed_l(&x.apply_auto(1).unwrap().div(&x).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_trace_zero() {
        for alg in [split_first(1), split_reduced(), unitary_second()] {
            assert_eq!(fixed_subspace(&LinOp::identity(&alg)).dim(), 27);
            let a0 = trace_zero(&alg);
            assert_eq!(a0.dim(), 26);
            assert!(a0.elements().iter().all(|x| x.trace().is_zero()));
            assert!(has_fixed_vector_in_a0(&LinOp::identity(&alg)).unwrap());
        }
    }

    #[test]
    fn closure_dimensions() {
        let alg = split_first(1);
        assert_eq!(subalgebra_closure(&[alg.one()]).unwrap().dim(), 1);
        let mut s = Sampler::new(51);
        let x = alg.random(&mut s);
        let c = subalgebra_closure(&[x]).unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.is_subalgebra() && c.is_commutative_associative());
    }

    #[test]
    fn jp_and_psi_fixed_sets() {
        let alg = cyclic7_first();
        let (d, _) = alg.first_data().unwrap();
        let d = d.clone();
        let p = torus_element(&d, [1, 1, 0]);
        let fixed = fixed_subspace(&make_jp(&alg, &p).unwrap());
        assert_eq!(fixed.dim(), 9);
        assert!(fixed.is_subalgebra());
        assert!(fixed.basis().iter().all(|v| v[9..].iter().all(Zero::is_zero)));
        let psi = fixed_subspace(&make_psi(&alg, &p, &d.one()).unwrap());
        assert_eq!(psi.dim(), 3);
        assert!(psi.is_commutative_associative());
    }

    #[test]
    fn torus_fixed_sets() {
        let alg = cyclic7_first();
        let d = alg.first_data().unwrap().0.clone();
        let ps: Vec<AssocElem> = [[1, 1, 0], [2, -1, 1], [0, 3, 1]].iter().map(|w| torus_element(&d, *w)).collect();
        let js: Vec<LinOp> = ps.iter().map(|p| make_jp(&alg, p).unwrap()).collect();
        assert_eq!(element_fixed_set(&alg, &js).dim(), 9);
        let psis: Vec<LinOp> = ps.iter().map(|p| make_psi(&alg, p, &d.one()).unwrap()).collect();
        assert_eq!(element_fixed_set(&alg, &psis).dim(), 3);
        assert_eq!(element_fixed_set(&alg, &[]).dim(), 27);
    }

    #[test]
    fn fixed_vectors_in_trace_zero() {
        let mut s = Sampler::new(52);
        let alg = split_first(2);
        let d = alg.first_data().unwrap().0.clone();
        let a = d.random_invertible(&mut s);
        let g = d.random_invertible(&mut s);
        let b = g.mul(&a).mul(&g.inv().unwrap());
        let f = make_psi(&alg, &a, &b).unwrap();
        assert!(has_fixed_vector_in_a0(&f).unwrap());
        let alg2 = unitary_second();
        let one = alg2.second_data().unwrap().0.one();
        assert!(has_fixed_vector_in_a0(&make_phi(&alg2, &one, &one).unwrap()).unwrap());
        let r = crate::strmaps::make_rt(&alg, &qi(2)).unwrap();
        assert_eq!(has_fixed_vector_in_a0(&r), Err(FixError::NotAutomorphism));
    }

    #[test]
    fn intersection_of_slots() {
        let alg = split_first(1);
        let s1 = Subspace::span(&alg, &(0..18).map(unit_vector).collect::<Vec<_>>());
        let s2 = Subspace::span(&alg, &(9..27).map(unit_vector).collect::<Vec<_>>());
        assert_eq!(s1.intersect(&s2).dim(), 9);
    }
}
