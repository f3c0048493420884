//! Coefficient fields: `Q`, `Q(i)`, `F_p` and `F_{p^n}`.
//!
//! A [`Field`] is a cheap, reference-counted handle. Every [`FieldElement`]
//! carries the handle of the field it lives in, so arithmetic between elements
//! of different fields is detected instead of silently producing garbage.
//! The operator impls panic on such a mismatch; the `checked_*` methods
//! return [`Error::MixedFields`].

mod finite;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use finite::ExtTables;

pub(crate) use finite::is_prime;

/// Which field a [`Field`] handle stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    GaussianRationals,
    Prime(u32),
    /// `F_p[a]/(modulus)`; `modulus` is monic, listed low to high.
    Extension { p: u32, n: u32, modulus: Vec<u32> },
}

#[derive(Debug)]
struct Inner {
    desc: FieldDescriptor,
    tables: Option<ExtTables>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.desc {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::GaussianRationals => write!(f, "Qi"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
            FieldDescriptor::Extension { p, n, modulus } => {
                let cs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "GF({p}^{n}; {})", cs.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Repr {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Fin(u32),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(Inner { desc: FieldDescriptor::Rationals, tables: None }))
    }

    pub fn gaussian_rationals() -> Self {
        Field(Arc::new(Inner { desc: FieldDescriptor::GaussianRationals, tables: None }))
    }

    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p > (1 << 31) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Field(Arc::new(Inner { desc: FieldDescriptor::Prime(p), tables: None })))
    }

    /// `F_p[a]/(modulus)` for a monic irreducible `modulus` (low to high).
    /// A degree-1 modulus yields the prime field itself.
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must lie in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let n = (modulus.len() - 1) as u32;
        if n == 1 {
            return Field::prime(p);
        }
        if !finite::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus is reducible over GF({p})")));
        }
        let tables = ExtTables::build(p, &modulus)?;
        Ok(Field(Arc::new(Inner {
            desc: FieldDescriptor::Extension { p, n, modulus },
            tables: Some(tables),
        })))
    }

    /// `F_{p^n}` with the first irreducible modulus in code order.
    pub fn galois(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        match n {
            0 => Err(Error::InvalidField("extension degree must be positive".into())),
            1 => Field::prime(p),
            _ => Field::extension(p, finite::first_irreducible(p, n)?),
        }
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let p = (2..=q).find(|d| q % d == 0).ok_or(Error::NotPrime(q))?;
        let mut n = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            n += 1;
        }
        if r != 1 || p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Field::galois(p as u32, n)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        match desc {
            FieldDescriptor::Rationals => Ok(Field::rationals()),
            FieldDescriptor::GaussianRationals => Ok(Field::gaussian_rationals()),
            FieldDescriptor::Prime(p) => Field::prime(*p),
            FieldDescriptor::Extension { p, modulus, .. } => Field::extension(*p, modulus.clone()),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.desc {
            FieldDescriptor::Rationals | FieldDescriptor::GaussianRationals => 0,
            FieldDescriptor::Prime(p) | FieldDescriptor::Extension { p, .. } => *p as u64,
        }
    }

    /// Number of elements, `None` for infinite fields.
    pub fn size(&self) -> Option<u64> {
        match &self.0.desc {
            FieldDescriptor::Rationals | FieldDescriptor::GaussianRationals => None,
            FieldDescriptor::Prime(p) => Some(*p as u64),
            FieldDescriptor::Extension { .. } => Some(self.tables().q as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Degree over the prime field (1 for `Q`, 2 for `Q(i)`).
    pub fn degree(&self) -> u32 {
        match &self.0.desc {
            FieldDescriptor::Rationals | FieldDescriptor::Prime(_) => 1,
            FieldDescriptor::GaussianRationals => 2,
            FieldDescriptor::Extension { n, .. } => *n,
        }
    }

    fn tables(&self) -> &ExtTables {
        self.0.tables.as_ref().expect("extension field tables")
    }

    fn elem(&self, repr: Repr) -> FieldElement {
        FieldElement { field: self.clone(), repr }
    }

    pub fn zero(&self) -> FieldElement {
        match self.0.desc {
            FieldDescriptor::Rationals => self.elem(Repr::Rat(BigRational::zero())),
            FieldDescriptor::GaussianRationals => {
                self.elem(Repr::Gauss(BigRational::zero(), BigRational::zero()))
            }
            _ => self.elem(Repr::Fin(0)),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the canonical ring map `Z -> K`.
    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match self.0.desc {
            FieldDescriptor::Rationals => self.elem(Repr::Rat(BigRational::from_integer(v.clone()))),
            FieldDescriptor::GaussianRationals => self.elem(Repr::Gauss(
                BigRational::from_integer(v.clone()),
                BigRational::zero(),
            )),
            FieldDescriptor::Prime(p) | FieldDescriptor::Extension { p, .. } => {
                let r = v.mod_floor(&BigInt::from(p)).to_u32().unwrap();
                self.elem(Repr::Fin(r))
            }
        }
    }

    /// A rational number as an element of `Q` or `Q(i)`; in a finite field the
    /// denominator must be invertible.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        match self.0.desc {
            FieldDescriptor::Rationals => Ok(self.elem(Repr::Rat(v.clone()))),
            FieldDescriptor::GaussianRationals => {
                Ok(self.elem(Repr::Gauss(v.clone(), BigRational::zero())))
            }
            _ => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                num.checked_div(&den)
                    .map_err(|_| Error::CoefficientNotInField(v.to_string()))
            }
        }
    }

    /// `re + im*i` in `Q(i)`.
    pub fn gaussian(&self, re: BigRational, im: BigRational) -> Result<FieldElement> {
        match self.0.desc {
            FieldDescriptor::GaussianRationals => Ok(self.elem(Repr::Gauss(re, im))),
            _ => Err(Error::CoefficientNotInField(format!("{re}+{im}i"))),
        }
    }

    /// The imaginary unit of `Q(i)`.
    pub fn imaginary_unit(&self) -> Result<FieldElement> {
        self.gaussian(BigRational::zero(), BigRational::one())
            .map_err(|_| Error::CoefficientNotInField(format!("i is not an element of {self}")))
    }

    /// The class `a` of the indeterminate in `F_p[a]/(modulus)`.
    pub fn generator(&self) -> Result<FieldElement> {
        match self.0.desc {
            FieldDescriptor::Extension { p, .. } => Ok(self.elem(Repr::Fin(p))),
            _ => Err(Error::CoefficientNotInField(format!("a is not an element of {self}"))),
        }
    }

    /// Finite-field element from its code (residue for `F_p`, base-`p` digit
    /// encoding of the residue polynomial for `F_{p^n}`).
    pub fn from_code(&self, code: u32) -> Result<FieldElement> {
        match self.size() {
            Some(q) if (code as u64) < q => Ok(self.elem(Repr::Fin(code))),
            Some(_) => Err(Error::InvalidField(format!("code {code} out of range for {self}"))),
            None => Err(Error::InfiniteField),
        }
    }

    /// Extension element from residue-polynomial coefficients (low to high).
    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        match &self.0.desc {
            FieldDescriptor::Prime(p) => {
                let mut acc = self.zero();
                for &d in digits.iter().rev() {
                    acc = &(&acc * &self.from_i64(*p as i64)) + &self.from_i64(d as i64);
                }
                Ok(acc)
            }
            FieldDescriptor::Extension { p, n, .. } => {
                let mut d: Vec<u32> = digits.iter().map(|c| c % p).collect();
                if d.len() > *n as usize {
                    return Err(Error::InvalidField("too many residue digits".into()));
                }
                d.resize(*n as usize, 0);
                Ok(self.elem(Repr::Fin(self.tables().from_digits(&d))))
            }
            _ => Err(Error::InfiniteField),
        }
    }

    /// Every element exactly once, in ascending code order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        let q = self.size().ok_or(Error::InfiniteField)?;
        Ok((0..q as u32).map(|c| self.elem(Repr::Fin(c))).collect())
    }

    /// All `alpha` in the field with `alpha^n = 1`, sorted.
    pub fn nth_roots_of_unity(&self, n: u64) -> Vec<FieldElement> {
        assert!(n >= 1, "root of unity order must be positive");
        let one = self.one();
        let mut out = match self.0.desc {
            FieldDescriptor::Rationals => {
                let mut v = vec![one.clone()];
                if n % 2 == 0 {
                    v.push(-&one);
                }
                v
            }
            FieldDescriptor::GaussianRationals => {
                let i = self.imaginary_unit().unwrap();
                [one.clone(), -&one, i.clone(), -&i]
                    .into_iter()
                    .filter(|z| z.pow(n) == one)
                    .collect()
            }
            _ => self
                .elements()
                .unwrap()
                .into_iter()
                .filter(|z| !z.is_zero() && z.pow(n) == one)
                .collect(),
        };
        out.sort();
        out
    }
}

// Integral operands skip the gcd normalization that `Ratio` always performs.
fn rat_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Least common multiple of the denominators of the rational or Gaussian
/// parts of `elems`; `1` over finite fields.
pub(crate) fn common_denominator<'a>(elems: impl IntoIterator<Item = &'a FieldElement>) -> BigInt {
    let mut acc = BigInt::one();
    for e in elems {
        match &e.repr {
            Repr::Rat(r) => acc = acc.lcm(r.denom()),
            Repr::Gauss(re, im) => acc = acc.lcm(re.denom()).lcm(im.denom()),
            Repr::Fin(_) => {}
        }
    }
    acc
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Gauss(a, b) => a.is_zero() && b.is_zero(),
            Repr::Fin(c) => *c == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Gauss(a, b) => a.is_one() && b.is_zero(),
            Repr::Fin(c) => *c == 1,
        }
    }

    /// The value as a rational number, when it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r.clone()),
            Repr::Gauss(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// Real and imaginary parts of an element of `Q` or `Q(i)`.
    pub fn gaussian_parts(&self) -> Option<(BigRational, BigRational)> {
        match &self.repr {
            Repr::Rat(r) => Some((r.clone(), BigRational::zero())),
            Repr::Gauss(a, b) => Some((a.clone(), b.clone())),
            Repr::Fin(_) => None,
        }
    }

    /// Finite-field code (see [`Field::from_code`]).
    pub fn code(&self) -> Option<u32> {
        match self.repr {
            Repr::Fin(c) => Some(c),
            _ => None,
        }
    }

    /// Residue-polynomial digits (low to high) of a finite-field element.
    pub fn digits(&self) -> Option<Vec<u32>> {
        let c = self.code()?;
        Some(match self.field.0.desc {
            FieldDescriptor::Prime(_) => vec![c],
            _ => self.field.tables().digits(c),
        })
    }

    /// Complex conjugate in `Q(i)`; identity elsewhere.
    pub fn conj(&self) -> FieldElement {
        match &self.repr {
            Repr::Gauss(a, b) => self.field.elem(Repr::Gauss(a.clone(), -b)),
            _ => self.clone(),
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(rat_add(a, b)),
            (Repr::Gauss(a, b), Repr::Gauss(c, d)) => Repr::Gauss(rat_add(a, c), rat_add(b, d)),
            (Repr::Fin(a), Repr::Fin(b)) => Repr::Fin(match &self.field.0.desc {
                FieldDescriptor::Prime(p) => ((*a as u64 + *b as u64) % *p as u64) as u32,
                _ => self.field.tables().add(*a, *b),
            }),
            _ => return Err(Error::MixedFields),
        };
        Ok(self.field.elem(repr))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(rat_mul(a, b)),
            (Repr::Gauss(a, b), Repr::Gauss(c, d)) => Repr::Gauss(
                rat_add(&rat_mul(a, c), &-rat_mul(b, d)),
                rat_add(&rat_mul(a, d), &rat_mul(b, c)),
            ),
            (Repr::Fin(a), Repr::Fin(b)) => Repr::Fin(match &self.field.0.desc {
                FieldDescriptor::Prime(p) => ((*a as u64 * *b as u64) % *p as u64) as u32,
                _ => self.field.tables().mul(*a, *b),
            }),
            _ => return Err(Error::MixedFields),
        };
        Ok(self.field.elem(repr))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(a.recip()),
            Repr::Gauss(a, b) => {
                let norm = a * a + b * b;
                Repr::Gauss(a / &norm, -b / &norm)
            }
            Repr::Fin(a) => Repr::Fin(match &self.field.0.desc {
                FieldDescriptor::Prime(p) => {
                    let p = *p as u64;
                    pow_mod(*a as u64, p - 2, p) as u32
                }
                _ => self.field.tables().inv(*a),
            }),
        };
        Ok(self.field.elem(repr))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
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

    /// Sign used when printing: `true` when the element reads as negative.
    pub(crate) fn is_negative_looking(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_negative(),
            Repr::Gauss(a, b) => {
                if a.is_zero() {
                    b.is_negative()
                } else {
                    b.is_zero() && a.is_negative()
                }
            }
            Repr::Fin(_) => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_extension(f: &mut fmt::Formatter<'_>, digits: &[u32]) -> fmt::Result {
    let mut terms = Vec::new();
    for (k, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let coeff = if d == 1 && k > 0 { String::new() } else { d.to_string() };
        let t = match k {
            0 => coeff,
            1 if coeff.is_empty() => "a".to_string(),
            1 => format!("{coeff}*a"),
            _ if coeff.is_empty() => format!("a^{k}"),
            _ => format!("{coeff}*a^{k}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", terms.join("+"))
    }
}

/// Exact string form: `-3/2`, `1+2i`, `a+1`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Gauss(a, b) => {
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                let im = if b.is_one() {
                    "i".to_string()
                } else if (-b).is_one() {
                    "-i".to_string()
                } else {
                    format!("{b}i")
                };
                if a.is_zero() {
                    write!(f, "{im}")
                } else if im.starts_with('-') {
                    write!(f, "{a}{im}")
                } else {
                    write!(f, "{a}+{im}")
                }
            }
            Repr::Fin(c) => match self.field.0.desc {
                FieldDescriptor::Prime(_) => write!(f, "{c}"),
                _ => write_extension(f, &self.field.tables().digits(*c)),
            },
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("field arithmetic: {e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
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
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Gauss(a, b) => Repr::Gauss(-a, -b),
            Repr::Fin(a) => Repr::Fin(match &self.field.0.desc {
                FieldDescriptor::Prime(p) => (*p - *a) % *p,
                _ => self.field.tables().neg(*a),
            }),
        };
        self.field.elem(repr)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
