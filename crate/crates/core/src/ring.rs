//! Base rings: S-localized orders in a number field.
//!
//! A ring is given by an invertible rational matrix whose columns are a
//! Z-basis of an order O, together with a finite set S of inverted rational
//! primes. Membership in R = O_S reduces to inspecting denominators of
//! integral-basis coordinates, which keeps every containment question in the
//! library decidable. The degenerate case "every prime inverted" presents
//! the field K itself.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvertedPrimes {
    /// Every rational prime is inverted: R = K.
    All,
    Set(BTreeSet<u64>),
}

#[derive(Debug)]
pub struct RingSpec {
    field: Arc<NumberField>,
    /// Columns are the Z-basis of the order, in power-basis coordinates.
    basis: Vec<Vec<BigRational>>,
    basis_inv: Vec<Vec<BigRational>>,
    primes: InvertedPrimes,
    generator_symbol: String,
}

fn rat_mat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for j in 0..2 * n {
            aug[c][j] = &aug[c][j] * &inv;
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for j in c..2 * n {
                let d = &f * &aug[c][j];
                aug[i][j] -= d;
            }
        }
    }
    Some((0..n).map(|i| aug[i][n..].to_vec()).collect())
}

impl RingSpec {
    pub fn new(
        field: Arc<NumberField>,
        basis_columns: Vec<Vec<BigRational>>,
        primes: InvertedPrimes,
    ) -> Result<Arc<Self>> {
        let d = field.degree();
        if basis_columns.len() != d || basis_columns.iter().any(|c| c.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "integral basis must be {d}x{d}"
            )));
        }
        if let InvertedPrimes::Set(s) = &primes {
            if !s.contains(&2) {
                return Err(Error::TwoNotInverted);
            }
            if s.iter().any(|&p| p < 2) {
                return Err(Error::Schema("inverted primes must be >= 2".into()));
            }
        }
        // row-major matrix with columns = basis vectors
        let rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|j| basis_columns[j][i].clone()).collect())
            .collect();
        let basis_inv = rat_mat_inverse(&rows).ok_or(Error::SingularBasis)?;
        let ring = RingSpec {
            field,
            basis: basis_columns,
            basis_inv,
            primes,
            generator_symbol: "a".to_string(),
        };
        if !ring.contains(&FieldElem::one(&ring.field)) {
            return Err(Error::Validation("1 is not in the ring".into()));
        }
        Ok(Arc::new(ring))
    }

    pub fn with_symbol(self: &Arc<Self>, symbol: &str) -> Arc<Self> {
        Arc::new(RingSpec {
            field: Arc::clone(&self.field),
            basis: self.basis.clone(),
            basis_inv: self.basis_inv.clone(),
            primes: self.primes.clone(),
            generator_symbol: symbol.to_string(),
        })
    }

    /// The whole field K as a ring (power basis, every prime inverted).
    pub fn field_ring(field: Arc<NumberField>) -> Arc<Self> {
        let d = field.degree();
        let basis = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(field, basis, InvertedPrimes::All).unwrap()
    }

    /// Order with the power basis Z[x], localized at the given primes.
    pub fn power_order(field: Arc<NumberField>, primes: &[u64]) -> Result<Arc<Self>> {
        let d = field.degree();
        let basis = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(
            field,
            basis,
            InvertedPrimes::Set(primes.iter().copied().collect()),
        )
    }

    /// The rationals localized at the given primes.
    pub fn rationals_localized(primes: &[u64]) -> Result<Arc<Self>> {
        Self::power_order(NumberField::rationals(), primes)
    }

    pub fn rationals_field() -> Arc<Self> {
        Self::field_ring(NumberField::rationals())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn primes(&self) -> &InvertedPrimes {
        &self.primes
    }

    pub fn generator_symbol(&self) -> &str {
        &self.generator_symbol
    }

    pub fn basis_columns(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn is_field(&self) -> bool {
        matches!(self.primes, InvertedPrimes::All)
    }

    /// Coordinates of x in the integral basis.
    pub fn to_integral_coords(&self, x: &FieldElem) -> Vec<BigRational> {
        let d = self.field.degree();
        let mut out = vec![BigRational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                if self.basis_inv[i][j].is_zero() || x.coords()[j].is_zero() {
                    continue;
                }
                out[i] += &self.basis_inv[i][j] * &x.coords()[j];
            }
        }
        out
    }

    pub fn from_integral_coords(&self, coords: &[BigRational]) -> FieldElem {
        let d = self.field.degree();
        let mut out = vec![BigRational::zero(); d];
        for j in 0..d {
            if coords[j].is_zero() {
                continue;
            }
            for i in 0..d {
                if self.basis[j][i].is_zero() {
                    continue;
                }
                out[i] += &self.basis[j][i] * &coords[j];
            }
        }
        FieldElem::new(Arc::clone(&self.field), out)
    }

    /// Strips the inverted primes from n; membership holds when the result
    /// is 1.
    fn non_s_part(&self, n: &BigUint) -> BigUint {
        let mut n = n.clone();
        if let InvertedPrimes::Set(s) = &self.primes {
            for &p in s {
                let p = BigUint::from(p);
                while !n.is_zero() && (&n % &p).is_zero() {
                    n /= &p;
                }
            }
        }
        n
    }

    fn denominator_is_s_unit(&self, r: &BigRational) -> bool {
        self.non_s_part(r.denom().magnitude()).is_one()
    }

    /// Membership test: x lies in the S-localized order.
    pub fn contains(&self, x: &FieldElem) -> bool {
        if self.is_field() {
            return true;
        }
        self.to_integral_coords(x)
            .iter()
            .all(|c| self.denominator_is_s_unit(c))
    }

    pub fn is_unit(&self, x: &FieldElem) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.is_field() {
            return Ok(true);
        }
        let inv = match x.inv() {
            Ok(v) => v,
            Err(Error::ZeroDivisor(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(self.contains(x) && self.contains(&inv))
    }

    /// True when lambda differs from the square of the witness by a unit.
    pub fn is_square_up_to_unit(&self, lambda: &FieldElem, witness: &FieldElem) -> Result<bool> {
        if lambda.is_zero() || witness.is_zero() {
            return Err(Error::ZeroElement);
        }
        let ratio = lambda.div(&witness.mul(witness))?;
        self.is_unit(&ratio)
    }

    /// Canonical rational rescaling of a nonzero vector over K: clears the
    /// denominators outside S, strips content outside S, and normalizes the
    /// sign of the leading coordinate. Over a field it scales the leading
    /// coordinate to 1.
    pub fn primitive_rescale(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let lead = v.iter().find(|x| !x.is_zero());
        let Some(lead) = lead else {
            return v.to_vec();
        };
        if self.is_field() {
            let inv = lead.inv().expect("nonzero");
            return v.iter().map(|x| x.mul(&inv)).collect();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for x in v {
            for c in self.to_integral_coords(x) {
                if c.is_zero() {
                    continue;
                }
                let dn = BigInt::from(self.non_s_part(c.denom().magnitude()));
                den_lcm = den_lcm.lcm(&dn);
            }
        }
        let scale = BigRational::from_integer(den_lcm);
        let scaled: Vec<FieldElem> = v.iter().map(|x| x.mul_rat(&scale)).collect();
        for x in &scaled {
            for c in self.to_integral_coords(x) {
                if c.is_zero() {
                    continue;
                }
                // denominator is supported on S; content comes from numerators
                num_gcd = num_gcd.gcd(c.numer());
            }
        }
        let content = BigInt::from(self.non_s_part(num_gcd.magnitude()));
        let scale = BigRational::new(BigInt::one(), content);
        let mut out: Vec<FieldElem> = scaled.iter().map(|x| x.mul_rat(&scale)).collect();
        let lead = out.iter().find(|x| !x.is_zero()).unwrap();
        let lead_coeff = lead
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap();
        if lead_coeff.is_negative() {
            out = out.iter().map(|x| x.neg()).collect();
        }
        out
    }
}

/// A principal (possibly fractional) ideal with an explicit generator.
#[derive(Debug, Clone)]
pub struct PrincipalIdeal {
    generator: FieldElem,
}

impl PrincipalIdeal {
    pub fn new(generator: FieldElem) -> Result<Self> {
        if generator.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(PrincipalIdeal { generator })
    }

    pub fn generator(&self) -> &FieldElem {
        &self.generator
    }

    /// Two generators present the same ideal iff their ratio is a unit.
    pub fn same_ideal(&self, other: &PrincipalIdeal, ring: &RingSpec) -> Result<bool> {
        let ratio = self.generator.div(&other.generator)?;
        ring.is_unit(&ratio)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;
    use crate::rational::rat_from_i64;

    #[test]
    fn membership_in_localized_z() {
        let r = RingSpec::rationals_localized(&[2]).unwrap();
        let f = r.field();
        let half = FieldElem::from_rational(f, BigRational::new(BigInt::from(1), BigInt::from(2)));
        let third = FieldElem::from_rational(f, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(r.contains(&half));
        assert!(!r.contains(&third));
    }

    #[test]
    fn units_in_localized_z() {
        let r = RingSpec::rationals_localized(&[2]).unwrap();
        let f = r.field();
        assert!(r.is_unit(&FieldElem::from_integer(f, 2)).unwrap());
        assert!(!r.is_unit(&FieldElem::from_integer(f, 5)).unwrap());
        assert!(matches!(
            r.is_unit(&FieldElem::zero(f)),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn sqrt5_is_integral_in_z_zeta5() {
        let r = RingSpec::power_order(NumberField::cyclotomic(5), &[2, 3]).unwrap();
        let f = r.field();
        let z = FieldElem::generator(f);
        let s = z
            .clone()
            .sub(&z.pow(2).unwrap())
            .sub(&z.pow(3).unwrap())
            .add(&z.pow(4).unwrap());
        assert!(r.contains(&s));
        assert!(!r.is_unit(&s).unwrap()); // norm 25, and 5 is not inverted
        // p = 5 equals the square of sqrt5 up to sign, a unit
        let five = FieldElem::from_integer(f, 5);
        assert!(r.is_square_up_to_unit(&five, &s).unwrap());
    }

    #[test]
    fn square_up_to_unit_examples() {
        let r3 = RingSpec::rationals_localized(&[2]).unwrap();
        let f = r3.field();
        let one = FieldElem::one(f);
        assert!(r3.is_square_up_to_unit(&one, &one).unwrap());
        let three = FieldElem::from_integer(f, 3);
        assert!(!r3.is_square_up_to_unit(&three, &one).unwrap());
    }

    #[test]
    fn two_must_be_inverted() {
        assert!(matches!(
            RingSpec::rationals_localized(&[3]),
            Err(Error::TwoNotInverted)
        ));
    }

    #[test]
    fn primitive_rescale_clears_denominators() {
        let r = RingSpec::rationals_localized(&[2]).unwrap();
        let f = r.field();
        let v = vec![
            FieldElem::from_rational(f, BigRational::new(BigInt::from(1), BigInt::from(6))),
            FieldElem::from_rational(f, BigRational::new(BigInt::from(-1), BigInt::from(2))),
        ];
        let p = r.primitive_rescale(&v);
        // multiply by 3: (1/2, -3/2); content outside S is 1; sign flips nothing
        assert_eq!(
            p[0].as_rational().unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(p[1].as_rational().unwrap(), rat_from_i64(-3) / rat_from_i64(2));
    }
}
