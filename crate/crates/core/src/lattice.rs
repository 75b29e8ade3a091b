//! Lattices inside free modules over a localized order.
//!
//! A sublattice of R^m is handled through restriction of scalars: R^m is a
//! free module over Z_S of rank m*d, and Z_S is a principal ideal domain, so
//! Hermite normal form answers every span, membership and saturation
//! question exactly. An R-basis, when one exists among bounded candidate
//! combinations, is extracted afterwards; the examples in this crate all
//! admit one.

use std::sync::Arc;

use num::{BigInt, BigRational, BigUint, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::hnf::{int_kernel, row_hnf_tracked, IMat};
use crate::linalg::{ColumnSolver, Mat};
use crate::ring::RingSpec;

/// A finitely generated sublattice of R^ambient, stored as a Z_S row basis
/// in restricted (integral-basis) coordinates plus bookkeeping to express
/// lattice vectors in terms of the original generators.
pub struct Lattice {
    ring: Arc<RingSpec>,
    ambient: usize,
    /// Z_S-basis rows, integer entries, in Hermite normal form.
    zrows: Vec<Vec<BigInt>>,
    /// Each zrow as a combination of the original generators (rational
    /// coefficients with S-denominators).
    zrow_in_gens: Vec<Vec<BigRational>>,
    kdim: usize,
}

fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let ints = v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    (ints, l)
}

impl Lattice {
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Dimension over K of the spanned subspace.
    pub fn kdim(&self) -> usize {
        self.kdim
    }

    fn restrict(ring: &RingSpec, v: &[FieldElem]) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(v.len() * ring.degree());
        for x in v {
            out.extend(ring.to_integral_coords(x));
        }
        out
    }

    fn unrestrict(ring: &RingSpec, v: &[BigRational]) -> Vec<FieldElem> {
        let d = ring.degree();
        v.chunks(d).map(|c| ring.from_integral_coords(c)).collect()
    }

    /// The span of the given generators (which must lie in R^m).
    pub fn from_span(ring: &Arc<RingSpec>, ambient: usize, gens: &[Vec<FieldElem>]) -> Result<Self> {
        assert!(gens.iter().all(|g| g.len() == ambient));
        let d = ring.degree();
        let mut rows = Vec::new();
        let mut coeffs = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            if !g.iter().all(|x| ring.contains(x)) {
                return Err(Error::Validation(
                    "span generator lies outside R^m".into(),
                ));
            }
            // multiply g by every integral basis element to get Z_S-generators
            for b in 0..d {
                let mut coords = vec![BigRational::zero(); d];
                coords[b] = BigRational::one();
                let be = ring.from_integral_coords(&coords);
                let bg: Vec<FieldElem> = g.iter().map(|x| x.mul(&be)).collect();
                let restricted = Self::restrict(ring, &bg);
                // scale by an S-unit to reach integer entries
                let (ints, scale) = clear_denominators(&restricted);
                if !ring.is_field() {
                    let sp = non_s(ring, scale.magnitude());
                    if !sp.is_one() {
                        return Err(Error::Validation(
                            "span generator has a denominator outside S".into(),
                        ));
                    }
                }
                let mut coeff = vec![BigRational::zero(); gens.len() * d];
                coeff[gi * d + b] = BigRational::one() / BigRational::from_integer(scale);
                rows.push(ints);
                coeffs.push(coeff);
            }
        }
        Self::from_int_rows(ring, ambient, rows, coeffs, gens.len() * d)
    }

    fn from_int_rows(
        ring: &Arc<RingSpec>,
        ambient: usize,
        rows: Vec<Vec<BigInt>>,
        coeffs: Vec<Vec<BigRational>>,
        ncoeff: usize,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Lattice {
                ring: Arc::clone(ring),
                ambient,
                zrows: Vec::new(),
                zrow_in_gens: Vec::new(),
                kdim: 0,
            });
        }
        let m = IMat::from_rows(rows.clone());
        let (h, t) = row_hnf_tracked(&m);
        let mut zrows = Vec::new();
        let mut zrow_in_gens = Vec::new();
        for i in 0..h.rows {
            let row = h.row(i);
            if row.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut comb = vec![BigRational::zero(); ncoeff];
            for (j, tij) in t.row(i).iter().enumerate() {
                if tij.is_zero() {
                    continue;
                }
                let f = BigRational::from_integer(tij.clone());
                for (k, c) in coeffs[j].iter().enumerate() {
                    if !c.is_zero() {
                        comb[k] += c * &f;
                    }
                }
            }
            zrows.push(row);
            zrow_in_gens.push(comb);
        }
        let kdim = Self::kdim_of_rows(ring, ambient, &zrows);
        Ok(Lattice {
            ring: Arc::clone(ring),
            ambient,
            zrows,
            zrow_in_gens,
            kdim,
        })
    }

    fn kdim_of_rows(ring: &Arc<RingSpec>, ambient: usize, zrows: &[Vec<BigInt>]) -> usize {
        if zrows.is_empty() {
            return 0;
        }
        let field = ring.field();
        let rows: Vec<Vec<FieldElem>> = zrows
            .iter()
            .map(|r| {
                let rats: Vec<BigRational> =
                    r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                Self::unrestrict(ring, &rats)
            })
            .collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        Mat::from_rows(field, rows).rank()
    }

    /// The saturated lattice { x in R^m : C x = 0 } for a condition matrix
    /// over R.
    pub fn kernel(ring: &Arc<RingSpec>, cond: &Mat) -> Result<Self> {
        let ambient = cond.cols();
        let d = ring.degree();
        // Row-reduce over K first to keep the integer matrix small; the
        // Q-rowspace, hence the saturated kernel, is unchanged.
        let (rr, pivots) = cond.rref();
        let mut int_rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..pivots.len() {
            let row = rr.row(i);
            // each K-row yields d rational rows by restriction of scalars
            for b in 0..d {
                let mut coords = vec![BigRational::zero(); d];
                coords[b] = BigRational::one();
                let be = ring.from_integral_coords(&coords);
                let scaled: Vec<FieldElem> = row.iter().map(|x| x.mul(&be)).collect();
                let restricted = Self::restrict(ring, &scaled);
                let (ints, _) = clear_denominators(&restricted);
                if ints.iter().any(|x| !x.is_zero()) {
                    int_rows.push(ints);
                }
            }
        }
        let kernel_rows: Vec<Vec<BigInt>> = if int_rows.is_empty() {
            // whole space
            (0..ambient * d)
                .map(|i| {
                    let mut r = vec![BigInt::zero(); ambient * d];
                    r[i] = BigInt::one();
                    r
                })
                .collect()
        } else {
            let imat = IMat::from_rows(int_rows);
            int_kernel(&imat)
        };
        let n = kernel_rows.len();
        let coeffs: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut c = vec![BigRational::zero(); n];
                c[i] = BigRational::one();
                c
            })
            .collect();
        Self::from_int_rows(ring, ambient, kernel_rows, coeffs, n)
    }

    /// Membership of v in the lattice; returns the Z_S-coordinates on the
    /// HNF rows when it holds. Back-substitution is valid because the pivot
    /// column of each HNF row is zero in every later row.
    fn solve_membership(&self, v: &[FieldElem]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient);
        if !v.iter().all(|x| self.ring.contains(x)) {
            return None;
        }
        let mut w = Self::restrict(&self.ring, v);
        let n = self.ambient * self.ring.degree();
        let mut coeffs = vec![BigRational::zero(); self.zrows.len()];
        for (i, row) in self.zrows.iter().enumerate() {
            let Some(pc) = (0..n).find(|&j| !row[j].is_zero()) else {
                continue;
            };
            if w[pc].is_zero() {
                continue;
            }
            let q = &w[pc] / BigRational::from_integer(row[pc].clone());
            for j in 0..n {
                if row[j].is_zero() {
                    continue;
                }
                let d = &q * BigRational::from_integer(row[j].clone());
                w[j] -= d;
            }
            coeffs[i] = q;
        }
        if !w.iter().all(|x| x.is_zero()) {
            return None;
        }
        if !self.ring.is_field() {
            for c in &coeffs {
                if !non_s(&self.ring, c.denom().magnitude()).is_one() {
                    return None;
                }
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.solve_membership(v).is_some()
    }

    /// Expresses v as an R-combination of the original span generators,
    /// reassembling one ring element per generator.
    pub fn in_terms_of_gens(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let coeffs = self.solve_membership(v)?;
        let d = self.ring.degree();
        let ncoeff = self.zrow_in_gens.first().map_or(0, |c| c.len());
        let mut flat = vec![BigRational::zero(); ncoeff];
        for (c, comb) in coeffs.iter().zip(&self.zrow_in_gens) {
            if c.is_zero() {
                continue;
            }
            for (k, g) in comb.iter().enumerate() {
                if !g.is_zero() {
                    flat[k] += c * g;
                }
            }
        }
        // entry (gi*d + b) multiplies integral basis element b on generator gi
        let ngens = ncoeff / d;
        let mut out = Vec::with_capacity(ngens);
        for gi in 0..ngens {
            out.push(self.ring.from_integral_coords(&flat[gi * d..(gi + 1) * d]));
        }
        Some(out)
    }

    pub fn equals(&self, other: &Lattice) -> bool {
        if self.ambient != other.ambient || self.kdim != other.kdim {
            return false;
        }
        self.zs_generators()
            .iter()
            .all(|v| other.contains(v))
            && other.zs_generators().iter().all(|v| self.contains(v))
    }

    /// The HNF rows as vectors in K^m.
    pub fn zs_generators(&self) -> Vec<Vec<FieldElem>> {
        self.zrows
            .iter()
            .map(|r| {
                let rats: Vec<BigRational> =
                    r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                Self::unrestrict(&self.ring, &rats)
            })
            .collect()
    }

    /// Extracts an R-basis: kdim many K-independent Z_S-generators whose
    /// R-span contains every generator. Greedy first, then a bounded subset
    /// search.
    pub fn rbasis(&self) -> Result<Vec<Vec<FieldElem>>> {
        let gens = self.zs_generators();
        let r = self.kdim;
        if r == 0 {
            return Ok(Vec::new());
        }
        let field = self.ring.field();
        if self.ring.is_field() {
            // echelonized K-basis
            let m = Mat::from_rows(field, gens);
            let (rr, pivots) = m.rref();
            let basis = (0..pivots.len()).map(|i| rr.row(i)).collect();
            return Ok(basis);
        }
        // greedy K-independent subset
        let mut chosen: Vec<usize> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if chosen.len() == r {
                break;
            }
            let mut rows: Vec<Vec<FieldElem>> =
                chosen.iter().map(|&c| gens[c].clone()).collect();
            rows.push(g.clone());
            if Mat::from_rows(field, rows).rank() == chosen.len() + 1 {
                chosen.push(i);
            }
        }
        if chosen.len() == r && self.subset_spans(&gens, &chosen)? {
            return self.canonical_basis(chosen.iter().map(|&i| gens[i].clone()).collect());
        }
        // bounded search over r-subsets in lexicographic order
        let n = gens.len();
        let mut idx: Vec<usize> = (0..r).collect();
        let mut tries = 0usize;
        loop {
            tries += 1;
            if tries > 5000 {
                return Err(Error::LatticeNotFree);
            }
            let rows: Vec<Vec<FieldElem>> = idx.iter().map(|&i| gens[i].clone()).collect();
            if Mat::from_rows(field, rows).rank() == r && self.subset_spans(&gens, &idx)? {
                return self.canonical_basis(idx.iter().map(|&i| gens[i].clone()).collect());
            }
            // next combination
            let mut k = r;
            loop {
                if k == 0 {
                    return Err(Error::LatticeNotFree);
                }
                k -= 1;
                if idx[k] != k + n - r {
                    idx[k] += 1;
                    for j in k + 1..r {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn subset_spans(&self, gens: &[Vec<FieldElem>], subset: &[usize]) -> Result<bool> {
        let field = self.ring.field();
        let cols: Vec<Vec<FieldElem>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let mat = Mat::from_fn(field, self.ambient, cols.len(), |i, j| cols[j][i].clone());
        let solver = ColumnSolver::new(mat)?;
        for g in gens {
            let Some(x) = solver.solve(g) else {
                return Ok(false);
            };
            if !x.iter().all(|c| self.ring.contains(c)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Echelonizes the found basis over K and rescales to canonical
    /// primitive vectors; keeps the original basis when canonicalization
    /// leaves the lattice.
    fn canonical_basis(&self, basis: Vec<Vec<FieldElem>>) -> Result<Vec<Vec<FieldElem>>> {
        let field = self.ring.field();
        let m = Mat::from_rows(field, basis.clone());
        let (rr, pivots) = m.rref();
        let candidate: Vec<Vec<FieldElem>> = (0..pivots.len())
            .map(|i| self.ring.primitive_rescale(&rr.row(i)))
            .collect();
        let ok = candidate.iter().all(|v| self.contains(v))
            && basis
                .iter()
                .all(|g| in_rspan(&self.ring, &candidate, g).unwrap_or(false));
        if ok {
            Ok(candidate)
        } else {
            Ok(basis)
        }
    }
}

fn non_s(ring: &RingSpec, n: &BigUint) -> BigUint {
    // strip inverted primes
    let mut n = n.clone();
    if let crate::ring::InvertedPrimes::Set(s) = ring.primes() {
        for &p in s {
            let p = BigUint::from(p);
            while !n.is_zero() && (&n % &p).is_zero() {
                n /= &p;
            }
        }
        n
    } else {
        BigUint::one()
    }
}

/// Does v lie in the R-span of the (K-independent) basis?
pub fn in_rspan(ring: &Arc<RingSpec>, basis: &[Vec<FieldElem>], v: &[FieldElem]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(v.iter().all(|x| x.is_zero()));
    }
    let field = ring.field();
    let mat = Mat::from_fn(field, v.len(), basis.len(), |i, j| basis[j][i].clone());
    let solver = ColumnSolver::new(mat)?;
    match solver.solve(v) {
        None => Ok(false),
        Some(x) => Ok(x.iter().all(|c| ring.contains(c))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElem, NumberField};
    use crate::rational::rat_from_i64;

    fn qvec(ring: &Arc<RingSpec>, v: Vec<i64>) -> Vec<FieldElem> {
        v.into_iter()
            .map(|x| FieldElem::from_integer(ring.field(), x))
            .collect()
    }

    #[test]
    fn saturated_kernel_over_z() {
        // over Z_(odd): kernel of [1 1 -2] must contain (1,1,1)
        let ring = RingSpec::rationals_localized(&[2]).unwrap();
        let field = ring.field();
        let cond = Mat::from_rows(
            field,
            vec![vec![
                FieldElem::from_integer(field, 1),
                FieldElem::from_integer(field, 1),
                FieldElem::from_integer(field, -2),
            ]],
        );
        let lat = Lattice::kernel(&ring, &cond).unwrap();
        assert_eq!(lat.kdim(), 2);
        assert!(lat.contains(&qvec(&ring, vec![1, 1, 1])));
        let basis = lat.rbasis().unwrap();
        assert_eq!(basis.len(), 2);
        assert!(in_rspan(&ring, &basis, &qvec(&ring, vec![1, 1, 1])).unwrap());
    }

    #[test]
    fn span_membership() {
        let ring = RingSpec::rationals_localized(&[2]).unwrap();
        let gens = vec![qvec(&ring, vec![3, 0, 1]), qvec(&ring, vec![0, 3, 1])];
        let lat = Lattice::from_span(&ring, 3, &gens).unwrap();
        assert!(lat.contains(&qvec(&ring, vec![3, 3, 2])));
        // (1,1,2/3) needs the coefficient 1/3, which is not in Z_(2)
        assert!(!lat.contains(&qvec(&ring, vec![1, 1, 1])));
        // coefficients recovered in terms of the generators
        let c = lat.in_terms_of_gens(&qvec(&ring, vec![3, 3, 2])).unwrap();
        assert_eq!(c[0].as_rational().unwrap(), rat_from_i64(1));
        assert_eq!(c[1].as_rational().unwrap(), rat_from_i64(1));
    }

    #[test]
    fn span_over_cyclotomic_order() {
        let ring = RingSpec::power_order(NumberField::cyclotomic(5), &[2]).unwrap();
        let field = ring.field();
        let z = FieldElem::generator(field);
        // lattice generated by (z, 1); membership of (z^2, z)
        let gens = vec![vec![z.clone(), FieldElem::one(field)]];
        let lat = Lattice::from_span(&ring, 2, &gens).unwrap();
        let v = vec![z.mul(&z), z.clone()];
        assert!(lat.contains(&v));
        let w = vec![z.clone().mul_rat(&BigRational::new(1.into(), 5.into())), FieldElem::one(field)];
        assert!(!lat.contains(&w));
        let basis = lat.rbasis().unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn kernel_over_field_is_echelon() {
        let ring = RingSpec::rationals_field();
        let field = ring.field();
        let cond = Mat::from_rows(
            field,
            vec![vec![
                FieldElem::from_integer(field, 1),
                FieldElem::from_integer(field, 2),
            ]],
        );
        let lat = Lattice::kernel(&ring, &cond).unwrap();
        let basis = lat.rbasis().unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0][0].is_one());
        assert_eq!(basis[0][1].as_rational().unwrap(), -BigRational::new(1.into(), 2.into()));
    }
}
