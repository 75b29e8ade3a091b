//! Finite free R-algebras presented by structure constants.
//!
//! The multiplication tensor c satisfies e_i * e_j = sum_k c[i][j][k] e_k
//! and every constant must lie in the base ring. The regular trace is the
//! trace of left multiplication; it is the single trace form used across
//! the crate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::Mat;
use crate::ring::RingSpec;

#[derive(Clone)]
pub struct FiniteAlgebra {
    ring: Arc<RingSpec>,
    rank: usize,
    /// Flat n^3 tensor, index (i*n + j)*n + k.
    mult: Vec<FieldElem>,
    unit: Vec<FieldElem>,
}

/// One named check failure from a validation pass.
#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub detail: String,
}

/// Outcome of a validation pass; empty failure list means all axioms hold.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, axiom: &'static str, detail: impl Into<String>) {
        self.failures.push(AxiomFailure {
            axiom,
            detail: detail.into(),
        });
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.failures.iter().map(|f| f.axiom).collect()
    }
}

impl FiniteAlgebra {
    pub fn new(
        ring: Arc<RingSpec>,
        rank: usize,
        mult: Vec<FieldElem>,
        unit: Vec<FieldElem>,
    ) -> Result<Arc<Self>> {
        if mult.len() != rank * rank * rank || unit.len() != rank {
            return Err(Error::DimensionMismatch(
                "multiplication tensor or unit has wrong length".into(),
            ));
        }
        let alg = FiniteAlgebra {
            ring,
            rank,
            mult,
            unit,
        };
        let report = alg.validate();
        if !report.is_ok() {
            return Err(Error::Validation(format!(
                "algebra axioms fail: {:?}",
                report.names()
            )));
        }
        Ok(Arc::new(alg))
    }

    /// Builds without checking the axioms; used by validation tests that
    /// want to inspect the failure report of a broken algebra.
    pub fn new_unchecked(
        ring: Arc<RingSpec>,
        rank: usize,
        mult: Vec<FieldElem>,
        unit: Vec<FieldElem>,
    ) -> Arc<Self> {
        Arc::new(FiniteAlgebra {
            ring,
            rank,
            mult,
            unit,
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[FieldElem] {
        &self.unit
    }

    pub fn mult_const(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        &self.mult[(i * self.rank + j) * self.rank + k]
    }

    pub fn mult_tensor(&self) -> &[FieldElem] {
        &self.mult
    }

    /// Structure-constant and unit-law checks.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.rank;
        for c in &self.mult {
            if !self.ring.contains(c) {
                report.push("structure-constants-in-ring", format!("{c:?}"));
                break;
            }
        }
        for u in &self.unit {
            if !self.ring.contains(u) {
                report.push("unit-in-ring", format!("{u:?}"));
                break;
            }
        }
        // unit laws
        for i in 0..n {
            let e = self.basis_elem(i);
            if self.multiply(&self.unit, &e) != e || self.multiply(&e, &self.unit) != e {
                report.push("unit-law", format!("basis element {i}"));
            }
        }
        // associativity on basis triples
        'assoc: for i in 0..n {
            for j in 0..n {
                let eij = self.multiply(&self.basis_elem(i), &self.basis_elem(j));
                for k in 0..n {
                    let left = self.multiply(&eij, &self.basis_elem(k));
                    let right = self.multiply(
                        &self.basis_elem(i),
                        &self.multiply(&self.basis_elem(j), &self.basis_elem(k)),
                    );
                    if left != right {
                        report.push("associativity", format!("triple ({i},{j},{k})"));
                        break 'assoc;
                    }
                }
            }
        }
        report
    }

    pub fn basis_elem(&self, i: usize) -> Vec<FieldElem> {
        let field = self.ring.field();
        let mut v = vec![FieldElem::zero(field); self.rank];
        v[i] = FieldElem::one(field);
        v
    }

    pub fn zero_elem(&self) -> Vec<FieldElem> {
        vec![FieldElem::zero(self.ring.field()); self.rank]
    }

    pub fn multiply(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(x.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let mut out = self.zero_elem();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].mul(&y[j]);
                for k in 0..self.rank {
                    let c = self.mult_const(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    out[k] = out[k].add(&f.mul(c));
                }
            }
        }
        out
    }

    /// Column j is x * e_j.
    pub fn left_mult_matrix(&self, x: &[FieldElem]) -> Mat {
        let field = self.ring.field();
        let mut m = Mat::zeros(field, self.rank, self.rank);
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let c = self.mult_const(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let v = m.get(k, j).add(&x[i].mul(c));
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, x: &[FieldElem]) -> Mat {
        let field = self.ring.field();
        let mut m = Mat::zeros(field, self.rank, self.rank);
        for j in 0..self.rank {
            if x[j].is_zero() {
                continue;
            }
            for i in 0..self.rank {
                for k in 0..self.rank {
                    let c = self.mult_const(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let v = m.get(k, i).add(&x[j].mul(c));
                    m.set(k, i, v);
                }
            }
        }
        m
    }

    /// Trace of the regular representation.
    pub fn regular_trace(&self, x: &[FieldElem]) -> FieldElem {
        let field = self.ring.field();
        let mut tr = FieldElem::zero(field);
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            // trace of left multiplication by e_i
            let mut ti = FieldElem::zero(field);
            for j in 0..self.rank {
                let c = self.mult_const(i, j, j);
                if !c.is_zero() {
                    ti = ti.add(c);
                }
            }
            tr = tr.add(&x[i].mul(&ti));
        }
        tr
    }

    /// Gram matrix of the trace form on the rescaled basis {s e_i}:
    /// G[i][j] = Tr((s e_i)(s e_j)).
    pub fn trace_gram(&self, lattice_scale: &FieldElem) -> Mat {
        let field = self.ring.field();
        let s2 = lattice_scale.mul(lattice_scale);
        Mat::from_fn(field, self.rank, self.rank, |i, j| {
            let prod = self.multiply(&self.basis_elem(i), &self.basis_elem(j));
            self.regular_trace(&prod).mul(&s2)
        })
    }

    /// The algebra structure on the tensor product A (x) B, with basis
    /// e_i (x) f_j at index i*rank(B) + j.
    pub fn tensor_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Arc<FiniteAlgebra>> {
        let field = a.ring.field();
        let n = a.rank * b.rank;
        let mut mult = vec![FieldElem::zero(field); n * n * n];
        for i1 in 0..a.rank {
            for j1 in 0..b.rank {
                for i2 in 0..a.rank {
                    for j2 in 0..b.rank {
                        for k1 in 0..a.rank {
                            let ca = a.mult_const(i1, i2, k1);
                            if ca.is_zero() {
                                continue;
                            }
                            for k2 in 0..b.rank {
                                let cb = b.mult_const(j1, j2, k2);
                                if cb.is_zero() {
                                    continue;
                                }
                                let row = i1 * b.rank + j1;
                                let col = i2 * b.rank + j2;
                                let dst = k1 * b.rank + k2;
                                mult[(row * n + col) * n + dst] = ca.mul(cb);
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![FieldElem::zero(field); n];
        for i in 0..a.rank {
            if a.unit[i].is_zero() {
                continue;
            }
            for j in 0..b.rank {
                if b.unit[j].is_zero() {
                    continue;
                }
                unit[i * b.rank + j] = a.unit[i].mul(&b.unit[j]);
            }
        }
        FiniteAlgebra::new(Arc::clone(&a.ring), n, mult, unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    /// Group algebra of Z/n over the rationals, basis t^k.
    fn cyclic_group_algebra(n: usize) -> Arc<FiniteAlgebra> {
        let ring = RingSpec::rationals_field();
        let field = ring.field();
        let mut mult = vec![FieldElem::zero(field); n * n * n];
        for i in 0..n {
            for j in 0..n {
                mult[(i * n + j) * n + (i + j) % n] = FieldElem::one(field);
            }
        }
        let mut unit = vec![FieldElem::zero(field); n];
        unit[0] = FieldElem::one(field);
        FiniteAlgebra::new(ring, n, mult, unit).unwrap()
    }

    /// Map(Z/n, Q) with the idempotent basis.
    fn map_algebra(n: usize) -> Arc<FiniteAlgebra> {
        let ring = RingSpec::rationals_field();
        let field = ring.field();
        let mut mult = vec![FieldElem::zero(field); n * n * n];
        for i in 0..n {
            mult[(i * n + i) * n + i] = FieldElem::one(field);
        }
        let unit = vec![FieldElem::one(field); n];
        FiniteAlgebra::new(ring, n, mult, unit).unwrap()
    }

    #[test]
    fn group_law_in_c2() {
        let a = cyclic_group_algebra(2);
        let sigma = a.basis_elem(1);
        assert_eq!(a.multiply(&sigma, &sigma), a.basis_elem(0));
    }

    #[test]
    fn orthogonal_idempotents() {
        let a = map_algebra(2);
        let d0 = a.basis_elem(0);
        let d1 = a.basis_elem(1);
        assert!(a.multiply(&d0, &d1).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn exponents_mod_five() {
        let a = cyclic_group_algebra(5);
        let t3 = a.basis_elem(3);
        let t4 = a.basis_elem(4);
        assert_eq!(a.multiply(&t3, &t4), a.basis_elem(2));
    }

    #[test]
    fn left_mult_of_unit_is_identity() {
        let a = cyclic_group_algebra(5);
        let m = a.left_mult_matrix(&a.basis_elem(0));
        assert_eq!(m, Mat::identity(a.ring().field(), 5));
        // sigma in Q[C2] is the basis swap
        let c2 = cyclic_group_algebra(2);
        let m = c2.left_mult_matrix(&c2.basis_elem(1));
        assert!(m.get(0, 0).is_zero());
        assert!(m.get(1, 0).is_one());
    }

    #[test]
    fn regular_trace_values() {
        let a = cyclic_group_algebra(5);
        // Tr(1 + t) = 5 + 0
        let x: Vec<FieldElem> = {
            let mut v = a.basis_elem(0);
            let t = a.basis_elem(1);
            for i in 0..5 {
                v[i] = v[i].add(&t[i]);
            }
            v
        };
        assert_eq!(
            a.regular_trace(&x),
            FieldElem::from_integer(a.ring().field(), 5)
        );
    }

    #[test]
    fn trace_commutes() {
        let a = cyclic_group_algebra(5);
        let x = a.basis_elem(2);
        let y = a.basis_elem(4);
        let xy = a.multiply(&x, &y);
        let yx = a.multiply(&y, &x);
        assert_eq!(a.regular_trace(&xy), a.regular_trace(&yx));
    }

    #[test]
    fn trace_gram_of_group_algebra() {
        let a = cyclic_group_algebra(2);
        let one = FieldElem::one(a.ring().field());
        let g = a.trace_gram(&one);
        // [[2,0],[0,2]] on {1, sigma}
        assert_eq!(*g.get(0, 0), FieldElem::from_integer(a.ring().field(), 2));
        assert!(g.get(0, 1).is_zero());
        assert_eq!(*g.get(1, 1), FieldElem::from_integer(a.ring().field(), 2));
        // Map(C2) has the identity Gram on idempotents
        let m = map_algebra(2);
        let g = m.trace_gram(&one);
        assert_eq!(g, Mat::identity(m.ring().field(), 2));
    }

    #[test]
    fn broken_associativity_reported() {
        let ring = RingSpec::rationals_field();
        let field = ring.field();
        let n = 2;
        let mut mult = vec![FieldElem::zero(field); 8];
        // e0 is a unit, but e1*e1 = e1 while e1*e0 = e1, e0*e1 = e1 ... make
        // a genuinely non-associative table: e1*e1 = e0 + e1 scaled badly
        mult[(0 * n + 0) * n + 0] = FieldElem::one(field);
        mult[(0 * n + 1) * n + 1] = FieldElem::one(field);
        mult[(1 * n + 0) * n + 1] = FieldElem::one(field);
        mult[(1 * n + 1) * n + 0] = FieldElem::one(field);
        mult[(1 * n + 1) * n + 1] = FieldElem::one(field);
        let mut unit = vec![FieldElem::zero(field); n];
        unit[0] = FieldElem::one(field);
        // x^2 = 1 + x is associative (it is Q[x]/(x^2-x-1)), so tweak to
        // break it: e1*e1 = e0, but e1*e0 = 2 e1
        let mut bad = mult.clone();
        bad[(1 * n + 0) * n + 1] = FieldElem::from_integer(field, 2);
        let alg = FiniteAlgebra::new_unchecked(ring, n, bad, unit);
        let report = alg.validate();
        assert!(!report.is_ok());
        assert!(report
            .names()
            .iter()
            .any(|n| *n == "unit-law" || *n == "associativity"));
    }
}
