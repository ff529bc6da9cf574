use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclotomic::{CyclotomicElement, CyclotomicField};
use crate::error::{Error, Result};

/// Field tag shared by every entry of a matrix or subspace.
#[derive(Clone, PartialEq, Eq)]
pub enum Field {
    Rational,
    Cyclotomic(Arc<CyclotomicField>),
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(c) => write!(f, "{c:?}"),
        }
    }
}

impl Field {
    pub fn cyclotomic(order: u32) -> Result<Self> {
        Ok(Field::Cyclotomic(CyclotomicField::new(order)?))
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Cyclotomic(f) => FieldElement::Cyclotomic(CyclotomicElement::zero(f)),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(q),
            Field::Cyclotomic(f) => FieldElement::Cyclotomic(CyclotomicElement::from_rational(f, &q)),
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Moves `x` into this field: rationals embed everywhere, cyclotomic
    /// elements only into their own field.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        match (self, x) {
            (Field::Rational, FieldElement::Rational(_)) => Ok(x.clone()),
            (Field::Cyclotomic(f), FieldElement::Rational(q)) => {
                Ok(FieldElement::Cyclotomic(CyclotomicElement::from_rational(f, q)))
            }
            (Field::Cyclotomic(f), FieldElement::Cyclotomic(c)) if **f == **c.field() => Ok(x.clone()),
            _ => Err(Error::FieldMismatch {
                left: format!("{self:?}"),
                right: format!("{:?}", x.field()),
            }),
        }
    }

    /// Exponents of the Galois group; `[1]` for Q.
    pub fn galois_exponents(&self) -> Vec<u32> {
        match self {
            Field::Rational => vec![1],
            Field::Cyclotomic(f) => f.galois_exponents(),
        }
    }
}

/// An exact scalar: a reduced rational or an element of a cyclotomic field.
#[derive(Clone)]
pub enum FieldElement {
    Rational(BigRational),
    Cyclotomic(CyclotomicElement),
}

impl FieldElement {
    pub fn rational(num: i64, den: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Cyclotomic(c) => Field::Cyclotomic(c.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::Cyclotomic(c) => c.as_rational(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            FieldElement::Rational(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            FieldElement::Cyclotomic(c) => c.to_complex(),
        }
    }

    /// Lifts both operands into a common field, refusing distinct cyclotomic orders.
    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => Ok((self.clone(), other.clone())),
            (FieldElement::Cyclotomic(c), FieldElement::Rational(_)) => {
                let f = Field::Cyclotomic(c.field().clone());
                Ok((self.clone(), f.embed(other)?))
            }
            (FieldElement::Rational(_), FieldElement::Cyclotomic(c)) => {
                let f = Field::Cyclotomic(c.field().clone());
                Ok((f.embed(self)?, other.clone()))
            }
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(_)) => {
                let f = Field::Cyclotomic(a.field().clone());
                Ok((self.clone(), f.embed(other)?))
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if let (FieldElement::Rational(a), FieldElement::Rational(b)) = (self, other) {
            return Ok(FieldElement::Rational(a + b));
        }
        match self.unify(other)? {
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => Ok(FieldElement::Cyclotomic(a.try_add(&b)?)),
            _ => unreachable!("unify returns a cyclotomic pair"),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if let (FieldElement::Rational(a), FieldElement::Rational(b)) = (self, other) {
            return Ok(FieldElement::Rational(a * b));
        }
        match (self, other) {
            (FieldElement::Rational(q), FieldElement::Cyclotomic(c))
            | (FieldElement::Cyclotomic(c), FieldElement::Rational(q)) => {
                return Ok(FieldElement::Cyclotomic(c.scale(q)));
            }
            _ => {}
        }
        match self.unify(other)? {
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => Ok(FieldElement::Cyclotomic(a.try_mul(&b)?)),
            _ => unreachable!("unify returns a cyclotomic pair"),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            FieldElement::Rational(q) => Ok(FieldElement::Rational(q.recip())),
            FieldElement::Cyclotomic(c) => Ok(FieldElement::Cyclotomic(c.inverse()?)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Cyclotomic(c) => FieldElement::Cyclotomic(c.neg()),
        }
    }

    /// Applies `ζ ↦ ζ^k`; rationals are fixed.
    pub fn galois(&self, k: u32) -> Result<Self> {
        match self {
            FieldElement::Rational(_) => Ok(self.clone()),
            FieldElement::Cyclotomic(c) => Ok(FieldElement::Cyclotomic(c.galois(k)?)),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => a == b,
            (FieldElement::Rational(q), FieldElement::Cyclotomic(c))
            | (FieldElement::Cyclotomic(c), FieldElement::Rational(q)) => c.as_rational().as_ref() == Some(q),
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for FieldElement {
    fn from(q: BigRational) -> Self {
        FieldElement::Rational(q)
    }
}

// Operator sugar. These panic when the operands live in distinct cyclotomic
// fields or on division by zero; the `checked_*` methods report errors instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
