//! Number fields K = Q[x]/(m(x)) and exact arithmetic on their elements.
//!
//! The minimal polynomial is required to be monic and squarefree; elements
//! are coefficient vectors in the power basis and every product is reduced
//! modulo the minimal polynomial. Irreducibility is the caller's business:
//! a squarefree modulus already gives sound arithmetic, and inversion
//! reports a zero divisor when it meets one.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat_from_i64};

type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_deg(p: &Poly) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub(crate) fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Remainder of `a` modulo `b` (b need not be monic).
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let db = poly_deg(b);
    let lead = b[db].clone();
    let mut r = a.clone();
    poly_trim(&mut r);
    while poly_deg(&r) >= db && !poly_is_zero(&r) {
        let dr = poly_deg(&r);
        let factor = &r[dr] / &lead;
        for k in 0..=db {
            let delta = &factor * &b[k];
            r[dr - db + k] -= delta;
        }
        poly_trim(&mut r);
        if poly_deg(&r) < db {
            break;
        }
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !poly_is_zero(&b) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
        poly_trim(&mut b);
    }
    a
}

fn poly_derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// A number field presented by a monic squarefree minimal polynomial.
#[derive(Debug)]
pub struct NumberField {
    min_poly: Poly,
    degree: usize,
    // coords of x^(degree+k) mod min_poly, for k = 0..degree-1
    power_reductions: Vec<Vec<BigRational>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// `min_poly` lists coefficients from the constant term up, leading
    /// coefficient included.
    pub fn new(min_poly: Vec<BigRational>) -> Result<Arc<Self>> {
        let mut m = min_poly;
        poly_trim(&mut m);
        let degree = poly_deg(&m);
        if degree < 1 || !m[degree].is_one() {
            return Err(Error::BadMinPoly);
        }
        let g = poly_gcd(&m, &poly_derivative(&m));
        if poly_deg(&g) != 0 {
            return Err(Error::NotSquarefree);
        }
        let mut power_reductions = Vec::with_capacity(degree.max(1) - 1);
        // x^degree = -(m_0 + ... + m_{d-1} x^{d-1})
        let mut cur: Vec<BigRational> = (0..degree).map(|i| -&m[i]).collect();
        for _ in 0..degree.saturating_sub(1) {
            power_reductions.push(cur.clone());
            // multiply by x and reduce
            let carry = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !carry.is_zero() {
                for i in 0..degree {
                    cur[i] += &carry * &power_reductions[0][i];
                }
            }
        }
        power_reductions.push(cur);
        Ok(Arc::new(NumberField {
            min_poly: m,
            degree,
            power_reductions,
        }))
    }

    /// The rationals, presented as Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Self::new(vec![BigRational::zero(), BigRational::one()]).unwrap()
    }

    /// The n-th cyclotomic field Q[x]/(Phi_n(x)).
    pub fn cyclotomic(n: u64) -> Arc<Self> {
        Self::new(cyclotomic_poly(n)).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    fn reduce(&self, coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        let mut out = vec![BigRational::zero(); d];
        for (i, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < d {
                out[i] += c;
            } else {
                let red = &self.power_reductions[i - d];
                for k in 0..d {
                    if !red[k].is_zero() {
                        out[k] += &c * &red[k];
                    }
                }
            }
        }
        out
    }
}

/// Phi_n computed by dividing x^n - 1 by the cyclotomic polynomials of the
/// proper divisors of n.
fn cyclotomic_poly(n: u64) -> Poly {
    assert!(n >= 1);
    if n == 1 {
        return vec![-BigRational::one(), BigRational::one()];
    }
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut den = vec![BigRational::one()];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_exact(&num, &den)
}

fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    let da = poly_deg(a);
    let db = poly_deg(b);
    assert!(da >= db);
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &r[db + k] / &b[db];
        q[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            let delta = &c * &b[i];
            r[i + k] -= delta;
        }
    }
    assert!(poly_is_zero(&r), "inexact polynomial division");
    q
}

/// An element of a number field, as power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly_string("a"))
    }
}

impl FieldElem {
    pub fn new(field: Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let coords = field.reduce(coords);
        FieldElem { field, coords }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElem {
            coords: vec![BigRational::zero(); field.degree],
            field: Arc::clone(field),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[0] = BigRational::one();
        FieldElem {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[0] = r;
        FieldElem {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rat_from_i64(n))
    }

    /// The class of x, a root of the minimal polynomial.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree == 1 {
            // x = 0 in Q[x]/(x - c) style presentations reduces to the root.
            return Self::new(
                Arc::clone(field),
                vec![BigRational::zero(), BigRational::one()],
            );
        }
        let mut coords = vec![BigRational::zero(); field.degree];
        coords[1] = BigRational::one();
        FieldElem {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element is rational, else None.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, other.field);
        FieldElem {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, other.field);
        FieldElem {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return FieldElem::zero(&self.field);
        }
        let prod = poly_mul(&self.coords, &other.coords);
        FieldElem {
            field: Arc::clone(&self.field),
            coords: self.field.reduce(prod),
        }
    }

    pub fn mul_rat(&self, r: &BigRational) -> FieldElem {
        FieldElem {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.field.degree == 1 {
            return Ok(FieldElem::from_rational(
                &self.field,
                self.coords[0].recip(),
            ));
        }
        // extended gcd of coords and min_poly
        let mut r0 = self.field.min_poly.clone();
        let mut r1 = self.coords.clone();
        poly_trim(&mut r1);
        let mut t0: Poly = vec![BigRational::zero()];
        let mut t1: Poly = vec![BigRational::one()];
        while !poly_is_zero(&r1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt1 = poly_mul(&q, &t1);
            let mut t2: Poly = vec![BigRational::zero(); t0.len().max(qt1.len())];
            for (i, c) in t0.iter().enumerate() {
                t2[i] += c;
            }
            for (i, c) in qt1.iter().enumerate() {
                t2[i] -= c;
            }
            poly_trim(&mut t2);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if poly_deg(&r0) != 0 {
            return Err(Error::ZeroDivisor(format!("{self:?}")));
        }
        let scale = r0[0].recip();
        let coords: Poly = t0.iter().map(|c| c * &scale).collect();
        Ok(FieldElem::new(Arc::clone(&self.field), coords))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElem::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Polynomial string in the given generator symbol, for human output.
    pub fn to_poly_string(&self, symbol: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => format_rational(&mag),
                1 if mag.is_one() => symbol.to_string(),
                1 => format!("{}*{}", format_rational(&mag), symbol),
                _ if mag.is_one() => format!("{}^{}", symbol, i),
                _ => format!("{}*{}^{}", format_rational(&mag), symbol, i),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{}", body)
                } else {
                    body
                });
            } else {
                parts.push(format!(
                    " {} {}",
                    if c.is_negative() { "-" } else { "+" },
                    body
                ));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.concat()
        }
    }
}

fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let da = poly_deg(a);
    let db = poly_deg(b);
    if da < db || poly_is_zero(a) {
        return (vec![BigRational::zero()], a.clone());
    }
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        if r.len() <= db + k {
            continue;
        }
        let c = &r[db + k] / &b[db];
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            r[i + k] -= delta;
        }
    }
    poly_trim(&mut r);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_arithmetic() {
        // Q(sqrt 2)
        let f = NumberField::new(vec![
            rat_from_i64(-2),
            rat_from_i64(0),
            rat_from_i64(1),
        ])
        .unwrap();
        let s = FieldElem::generator(&f);
        assert!(s.mul(&s).sub(&FieldElem::from_integer(&f, 2)).is_zero());
        let inv = s.inv().unwrap();
        assert!(s.mul(&inv).is_one());
    }

    #[test]
    fn cyclotomic_polys() {
        let phi5 = cyclotomic_poly(5);
        assert_eq!(phi5.len(), 5);
        assert!(phi5.iter().all(|c| c.is_one()));
        let phi15 = cyclotomic_poly(15);
        assert_eq!(poly_deg(&phi15), 8);
        // Phi_15 = x^8 - x^7 + x^5 - x^4 + x^3 - x + 1
        let expect: Vec<i64> = vec![1, -1, 0, 1, -1, 1, 0, -1, 1];
        for (c, e) in phi15.iter().zip(expect) {
            assert_eq!(*c, rat_from_i64(e));
        }
    }

    #[test]
    fn gauss_sum_squares_to_five() {
        let f = NumberField::cyclotomic(5);
        let z = FieldElem::generator(&f);
        // sqrt 5 = z - z^2 - z^3 + z^4
        let s = z
            .pow(1)
            .unwrap()
            .sub(&z.pow(2).unwrap())
            .sub(&z.pow(3).unwrap())
            .add(&z.pow(4).unwrap());
        assert!(s.mul(&s).sub(&FieldElem::from_integer(&f, 5)).is_zero());
    }

    #[test]
    fn zero_divisor_detected() {
        // x^2 - 1 is squarefree but reducible; x - 1 is a zero divisor.
        let f = NumberField::new(vec![
            rat_from_i64(-1),
            rat_from_i64(0),
            rat_from_i64(1),
        ])
        .unwrap();
        let x = FieldElem::generator(&f);
        let d = x.sub(&FieldElem::one(&f));
        assert!(matches!(d.inv(), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn non_squarefree_rejected() {
        let r = NumberField::new(vec![
            rat_from_i64(0),
            rat_from_i64(0),
            rat_from_i64(1),
        ]);
        assert!(matches!(r, Err(Error::NotSquarefree)));
    }

    #[test]
    fn degree_one_field_is_q() {
        let f = NumberField::rationals();
        let x = FieldElem::new(
            Arc::clone(&f),
            vec![rat_from_i64(3), rat_from_i64(7)],
        );
        // x reduces to 0, leaving the constant part
        assert_eq!(x.as_rational().unwrap(), rat_from_i64(3));
    }
}
