//! Cyclotomic number fields `Q(ζ_n)` as `Q[x] / Φ_n(x)`.
//!
//! Elements are dense integer coefficient vectors of length `φ(n)` over a
//! single positive common denominator, always reduced modulo `Φ_n`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported cyclotomic order.
pub const MAX_ORDER: u32 = 128;

/// The field `Q(ζ_n)` with its defining polynomial and a table of reduced
/// powers of the generator.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Monic `Φ_n`, ascending coefficients, length `degree + 1`.
    modulus: Vec<BigInt>,
    /// `x^m mod Φ_n` for `m in 0..order`.
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

/// Integer coefficients of `Φ_n`, ascending.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 = prod_{d | n} Φ_d
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            poly = exact_monic_division(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let lead = rem[i + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (k, c) in den.iter().enumerate() {
            rem[i + k] -= &lead * c;
        }
        quot[i] = lead;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by x, then reduce the overflow coefficient
            let top = current[degree - 1].clone();
            for k in (1..degree).rev() {
                current[k] = current[k - 1].clone();
            }
            current[0] = BigInt::zero();
            if !top.is_zero() {
                for k in 0..degree {
                    current[k] -= &top * &modulus[k];
                }
            }
        }
        Ok(Arc::new(Self { order, degree, modulus, powers }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(n)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Exponents `k` in `1..n` coprime to `n`, indexing the automorphisms `ζ ↦ ζ^k`.
    pub fn galois_exponents(&self) -> Vec<u32> {
        (1..=self.order.max(1))
            .filter(|k| k.gcd(&self.order) == 1)
            .collect()
    }

    fn reduced_power(&self, exponent: i64) -> &[BigInt] {
        let idx = exponent.rem_euclid(self.order as i64) as usize;
        &self.powers[idx]
    }
}

/// An element of `Q(ζ_n)`: `(Σ coeffs[i] x^i) / den`.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicElement {
    fn normalized(field: Arc<CyclotomicField>, mut coeffs: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree);
        if den.is_negative() {
            den = -den;
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = den.clone();
        for c in &coeffs {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if coeffs.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in coeffs.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        Self { field, coeffs, den }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: field.clone(),
            coeffs: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: &BigRational) -> Self {
        let mut coeffs = vec![BigInt::zero(); field.degree];
        coeffs[0] = q.numer().clone();
        Self::normalized(field.clone(), coeffs, q.denom().clone())
    }

    /// `ζ^exponent`, reduced; negative exponents allowed.
    pub fn generator_power(field: &Arc<CyclotomicField>, exponent: i64) -> Self {
        Self {
            field: field.clone(),
            coeffs: field.reduced_power(exponent).to_vec(),
            den: BigInt::one(),
        }
    }

    /// Builds an element from an arbitrary-length rational polynomial in `ζ`.
    pub fn from_polynomial(field: &Arc<CyclotomicField>, poly: &[BigRational]) -> Self {
        let den = poly
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut coeffs = vec![BigInt::zero(); field.degree];
        for (m, q) in poly.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let scaled = q.numer() * (&den / q.denom());
            for (k, p) in field.reduced_power(m as i64).iter().enumerate() {
                if !p.is_zero() {
                    coeffs[k] += &scaled * p;
                }
            }
        }
        Self::normalized(field.clone(), coeffs, den)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coefficients of the reduced residue in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.coeffs[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: format!("{:?}", self.field),
                right: format!("{:?}", other.field),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(Self::normalized(self.field.clone(), coeffs, &self.den * &other.den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.field.clone(), coeffs, &self.den * q.denom())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let d = self.field.degree;
        let mut product = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    product[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigInt> = product[..d].to_vec();
        for (m, c) in product.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (k, p) in self.field.reduced_power(m as i64).iter().enumerate() {
                if !p.is_zero() {
                    coeffs[k] += c * p;
                }
            }
        }
        Ok(Self::normalized(self.field.clone(), coeffs, &self.den * &other.den))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let a = trim(to_q(&self.coeffs));
        let m = trim(to_q(&self.field.modulus));
        // invariant: s_i * a ≡ r_i (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_n is irreducible
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|s| s / &c).collect();
        let mut out = Self::from_polynomial(&self.field, &inv);
        // scale by den: (num/den)^{-1} = den * num^{-1}
        let den = CyclotomicElement::from_rational(&self.field, &BigRational::from_integer(self.den.clone()));
        out = out.try_mul(&den)?;
        Ok(out)
    }

    /// The Galois automorphism `ζ ↦ ζ^k`; `k` must be coprime to the order.
    pub fn galois(&self, k: u32) -> Result<Self> {
        if k.gcd(&self.field.order) != 1 {
            return Err(Error::DomainError(format!(
                "exponent {k} is not a unit modulo {}",
                self.field.order
            )));
        }
        let mut coeffs = vec![BigInt::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64) * (k as i64);
            for (slot, p) in self.field.reduced_power(e).iter().enumerate() {
                if !p.is_zero() {
                    coeffs[slot] += c * p;
                }
            }
        }
        Ok(Self::normalized(self.field.clone(), coeffs, self.den.clone()))
    }

    /// Complex value under the embedding `ζ ↦ exp(2πi/n)`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), trim(rem));
    }
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let coef = &rem[i + dd] / &lead;
        if coef.is_zero() {
            continue;
        }
        for (k, c) in den.iter().enumerate() {
            rem[i + k] -= &coef * c;
        }
        quot[i] = coef;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn generator_has_full_order() {
        for n in [2u32, 3, 8, 12, 20, 128] {
            let f = CyclotomicField::new(n).unwrap();
            let z = CyclotomicElement::generator_power(&f, 1);
            let mut acc = CyclotomicElement::generator_power(&f, 0);
            for k in 1..=n {
                acc = acc.try_mul(&z).unwrap();
                let is_one = acc.as_rational() == Some(BigRational::one());
                assert_eq!(is_one, k == n, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn order_bounds() {
        assert_eq!(CyclotomicField::new(0).unwrap_err(), Error::UnsupportedOrder(0));
        assert_eq!(CyclotomicField::new(129).unwrap_err(), Error::UnsupportedOrder(129));
    }

    #[test]
    fn inverse_round_trip() {
        let f = CyclotomicField::new(8).unwrap();
        let z = CyclotomicElement::generator_power(&f, 1);
        let one = CyclotomicElement::generator_power(&f, 0);
        let a = z.try_add(&one).unwrap().try_add(&z.try_mul(&z).unwrap()).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.try_mul(&inv).unwrap().as_rational(), Some(BigRational::one()));
        assert_eq!(CyclotomicElement::zero(&f).inverse().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mixing_orders_is_an_error() {
        let a = CyclotomicElement::generator_power(&CyclotomicField::new(8).unwrap(), 1);
        let b = CyclotomicElement::generator_power(&CyclotomicField::new(6).unwrap(), 1);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn complex_embedding() {
        let f = CyclotomicField::new(8).unwrap();
        let z2 = CyclotomicElement::generator_power(&f, 2);
        let v = z2.to_complex();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // ζ^6 - ζ^2 = -2i
        let d = CyclotomicElement::generator_power(&f, 6).try_sub(&z2).unwrap();
        assert!((d.to_complex() - Complex64::new(0.0, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn galois_conjugation_acts_on_generator() {
        let f = CyclotomicField::new(8).unwrap();
        let z = CyclotomicElement::generator_power(&f, 1);
        assert_eq!(z.galois(3).unwrap(), CyclotomicElement::generator_power(&f, 3));
        assert_eq!(f.galois_exponents(), vec![1, 3, 5, 7]);
        assert!(z.galois(2).is_err());
    }
}
