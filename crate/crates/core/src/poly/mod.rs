//! Dense univariate polynomials over a [`Field`].

mod modular;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Coefficients are stored low to high with no trailing zero; the zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn x(field: &Field) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(&field, coeffs)
    }

    /// `a*x + b`
    pub fn linear(a: FieldElement, b: FieldElement) -> Self {
        let field = a.field().clone();
        Poly::new(&field, vec![b, a])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub(crate) fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.inv().unwrap()),
            _ => self.clone(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.field != divisor.field {
            return Err(Error::MixedFields);
        }
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.lead().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let t = &rem[k] * &lead_inv;
            if t.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = &rem[k - dd + j] - &(&t * d);
            }
            quot[k - dd] = t;
        }
        rem.truncate(dd);
        Ok((Poly::new(&self.field, quot), Poly::new(&self.field, rem)))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub(crate) fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if modular::certainly_coprime(self, other) {
            return Ok(Poly::one(&self.field));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.from_i64(k as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Apply `f` coefficientwise into another field.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Poly {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Distinct roots lying in the coefficient field, sorted.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        roots::roots(self)
    }

    /// Write the polynomial as an expression in `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        crate::expr::format_poly(self, var)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.field)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_add(&-rhs).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different fields")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
