//! Reduced rational functions `f = f_N / f_D` and their composition.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{common_denominator, Field, FieldElement};
use crate::linalg::nullspace;
use crate::moebius::MoebiusUnit;
use crate::poly::Poly;

/// A point of the projective line `K ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

/// A rational function with coprime numerator and monic denominator.
///
/// Structural equality coincides with equality in `K(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduce `num / den` to canonical form.
    pub fn make(num: Poly, den: Poly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::MixedFields);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun { den: Poly::one(num.field()), num });
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field().clone();
        RatFun { num: p, den: Poly::one(&field) }
    }

    pub fn constant(c: FieldElement) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The identity function `x`.
    pub fn identity(field: &Field) -> Self {
        RatFun::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `max(deg f_N, deg f_D)`; constants (including 0) have degree 0.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_add(&self, other: &RatFun) -> Result<RatFun> {
        if self.den == other.den {
            return RatFun::make(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFun::make(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &RatFun) -> Result<RatFun> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &RatFun) -> Result<RatFun> {
        RatFun::make(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::make(self.num.checked_mul(&other.den)?, self.den.checked_mul(&other.num)?)
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFun {
        // Powers of coprime polynomials stay coprime.
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `self ∘ inner`, i.e. `self(inner(x))`.
    pub fn compose(&self, inner: &RatFun) -> Result<RatFun> {
        if self.field() != inner.field() {
            return Err(Error::MixedFields);
        }
        if inner.is_constant() {
            return Err(Error::ConstantInner);
        }
        let (num, den) = homogeneous_compose(&self.num, &self.den, self.degree(), &inner.num, &inner.den);
        RatFun::make(num, den)
    }

    /// Value at a point of the projective line.
    pub fn eval_projective(&self, point: &ProjectivePoint) -> ProjectivePoint {
        match point {
            ProjectivePoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.deg0());
                match dn {
                    Some(n) if n > dd => ProjectivePoint::Infinity,
                    Some(n) if n == dd => {
                        ProjectivePoint::Finite(self.num.lead().unwrap() / self.den.lead().unwrap())
                    }
                    _ => ProjectivePoint::Finite(self.field().zero()),
                }
            }
            ProjectivePoint::Finite(x) => {
                let d = self.den.eval(x);
                if d.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&self.num.eval(x) / &d)
                }
            }
        }
    }

    /// `deg f_N > deg f_D` and `f_N(0) = 0`.
    pub fn is_normal_form(&self) -> bool {
        match self.num.degree() {
            Some(n) => n > self.den.deg0() && self.num.coeff(0).is_zero(),
            None => false,
        }
    }

    /// Units `u, v` with `u ∘ self ∘ v` in normal form.
    ///
    /// The search takes `p0 = ∞` and the first point `q0` (in the order
    /// `0, 1, -1, 2, -2, ...`, or code order over a finite field) with a
    /// different value, then sends `∞ ↦ p0`, `0 ↦ q0` and `f(p0) ↦ ∞`,
    /// `f(q0) ↦ 0`. If `f` is constant on the remaining points, every pair of
    /// points shares a value and no such units exist.
    pub fn normal_form(&self) -> Result<NormalForm> {
        if self.is_constant() {
            return Err(Error::ConstantInput);
        }
        let field = self.field().clone();
        let at_infinity = self.eval_projective(&ProjectivePoint::Infinity);
        let mut chosen = None;
        for q0 in affine_points(&field) {
            let value = self.eval_projective(&ProjectivePoint::Finite(q0.clone()));
            if value != at_infinity {
                chosen = Some((q0, value));
                break;
            }
        }
        let (q0, at_q0) = chosen.ok_or_else(|| Error::FieldTooSmall(field.size().unwrap_or(0)))?;
        let (zero, one) = (field.zero(), field.one());
        let right = MoebiusUnit::new(one.clone(), q0, zero.clone(), one.clone())?;
        let left = match (&at_infinity, &at_q0) {
            (ProjectivePoint::Infinity, ProjectivePoint::Finite(y0)) => {
                MoebiusUnit::new(one.clone(), -y0, zero, one)?
            }
            (ProjectivePoint::Finite(yi), ProjectivePoint::Infinity) => {
                MoebiusUnit::new(zero, one.clone(), one, -yi)?
            }
            (ProjectivePoint::Finite(yi), ProjectivePoint::Finite(y0)) => {
                MoebiusUnit::new(one.clone(), -y0, one, -yi)?
            }
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => unreachable!(),
        };
        let normalized = left.to_ratfun().compose(&self.compose(&right.to_ratfun())?)?;
        if !normalized.is_normal_form() || normalized.degree() != self.degree() {
            return Err(Error::Internal(format!("normalization produced {normalized}")));
        }
        Ok(NormalForm { left, right, normalized })
    }

    /// The unique `g` with `self = g ∘ h`, if one exists.
    ///
    /// With `k = deg f / deg h` the unknown coefficients of `g_N = Σ a_i x^i`
    /// and `g_D = Σ b_i x^i` satisfy the linear identity
    /// `f_N · Σ b_i h_N^i h_D^(k-i) = f_D · Σ a_i h_N^i h_D^(k-i)`.
    pub fn left_factor(&self, h: &RatFun) -> Option<RatFun> {
        if h.is_constant() || self.field() != h.field() || self.degree() % h.degree() != 0 {
            return None;
        }
        let field = self.field().clone();
        let k = self.degree() / h.degree();
        let hn_pows = powers(&h.num, k);
        let hd_pows = powers(&h.den, k);
        let basis: Vec<Poly> = (0..=k).map(|i| &hn_pows[i] * &hd_pows[k - i]).collect();
        // Columns 0..=k hold a_i, columns k+1..=2k+1 hold b_i.
        let mut columns: Vec<Poly> = basis.iter().map(|p| -(&self.den * p)).collect();
        columns.extend(basis.iter().map(|p| &self.num * p));
        let nrows = columns.iter().map(|c| c.deg0() + 1).max().unwrap();
        let rows: Vec<Vec<FieldElement>> =
            (0..nrows).map(|r| columns.iter().map(|c| c.coeff(r)).collect()).collect();
        for v in nullspace(&field, rows, 2 * k + 2) {
            let gn = Poly::new(&field, v[..=k].to_vec());
            let gd = Poly::new(&field, v[k + 1..].to_vec());
            if gd.is_zero() {
                continue;
            }
            let Ok(g) = RatFun::make(gn, gd) else { continue };
            if g.compose(h).as_ref() == Ok(self) {
                return Some(g);
            }
        }
        None
    }

    /// Whether `K(self) = K(other)`.
    pub fn same_field(&self, other: &RatFun) -> bool {
        !self.is_constant() && self.degree() == other.degree() && other.left_factor(self).is_some()
    }

    /// Coefficientwise image in another field.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Result<RatFun> {
        RatFun::make(self.num.map_coeffs(target, &f), self.den.map_coeffs(target, &f))
    }
}

/// Output of [`RatFun::normal_form`]: `normalized = left ∘ f ∘ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub left: MoebiusUnit,
    pub right: MoebiusUnit,
    pub normalized: RatFun,
}

fn powers(p: &Poly, k: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(Poly::one(p.field()));
    for i in 1..=k {
        let next = &out[i - 1] * p;
        out.push(next);
    }
    out
}

/// Numerator and denominator of `(gn/gd)(hn/hd)` homogenized to degree `k`.
pub(crate) fn homogeneous_compose(gn: &Poly, gd: &Poly, k: usize, hn: &Poly, hd: &Poly) -> (Poly, Poly) {
    // Scaling each pair by a common constant leaves the quotient unchanged and
    // keeps the arithmetic over Z or Z[i].
    let (gn, gd) = integral_pair(gn, gd);
    let (hn, hd) = integral_pair(hn, hd);
    let hn_pows = powers(&hn, k);
    let hd_pows = powers(&hd, k);
    let field = gn.field();
    let mut num = Poly::zero(field);
    let mut den = Poly::zero(field);
    for i in 0..=k {
        let (a, b) = (gn.coeff(i), gd.coeff(i));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let mixed = &hn_pows[i] * &hd_pows[k - i];
        if !a.is_zero() {
            num = &num + &mixed.scale(&a);
        }
        if !b.is_zero() {
            den = &den + &mixed.scale(&b);
        }
    }
    (num, den)
}

pub(crate) fn integral_pair(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let scale = common_denominator(a.coeffs().iter().chain(b.coeffs()));
    if scale.is_one() {
        return (a.clone(), b.clone());
    }
    let c = a.field().from_bigint(&scale);
    (a.scale(&c), b.scale(&c))
}

/// Finite points of the projective line in search order.
fn affine_points(field: &Field) -> Box<dyn Iterator<Item = FieldElement> + '_> {
    match field.elements() {
        Ok(all) => Box::new(all.into_iter()),
        Err(_) => Box::new(std::iter::once(field.zero()).chain((1..).flat_map(move |n: i64| {
            [field.from_i64(n), field.from_i64(-n)]
        }))),
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::format_ratfun(self, "x"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun[{}]({self})", self.field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(&q(), c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::make(p(n), p(d)).unwrap()
    }

    #[test]
    fn make_cancels() {
        assert_eq!(r(&[0, 0, 2], &[0, 2]), r(&[0, 1], &[1]));
        assert_eq!(r(&[-1, 0, 1], &[-1, 1]), r(&[1, 1], &[1]));
        let f = r(&[3, 3], &[6]);
        let half = q().from_rational(&num_rational::BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(f.num().coeffs(), &[half.clone(), half]);
        assert!(f.den().is_one());
        assert_eq!(RatFun::make(p(&[1]), p(&[])).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn compose_identity_and_constant() {
        let f = r(&[1, 0, 3], &[2, 1]);
        assert_eq!(f.compose(&RatFun::identity(&q())).unwrap(), f);
        assert_eq!(f.compose(&r(&[5], &[1])).unwrap_err(), Error::ConstantInner);
    }

    #[test]
    fn projective_values() {
        let f = r(&[1, 0, 3], &[2, 1]);
        assert_eq!(f.eval_projective(&ProjectivePoint::Infinity), ProjectivePoint::Infinity);
        assert_eq!(
            f.eval_projective(&ProjectivePoint::Finite(q().from_i64(-2))),
            ProjectivePoint::Infinity
        );
        let g = r(&[1, 2], &[0, 1]);
        assert_eq!(g.eval_projective(&ProjectivePoint::Infinity), ProjectivePoint::Finite(q().from_i64(2)));
        let h = r(&[1], &[0, 1]);
        assert_eq!(h.eval_projective(&ProjectivePoint::Infinity), ProjectivePoint::Finite(q().zero()));
    }

    #[test]
    fn normal_form_of_square() {
        let nf = r(&[0, 0, 1], &[1]).normal_form().unwrap();
        assert!(nf.normalized.is_normal_form());
        assert_eq!(nf.normalized.degree(), 2);
        assert_eq!(r(&[5], &[1]).normal_form().unwrap_err(), Error::ConstantInput);
    }

    #[test]
    fn left_factor_cases() {
        let f = r(&[1, 0, 3], &[2, 1]);
        assert_eq!(f.left_factor(&RatFun::identity(&q())), Some(f.clone()));
        assert_eq!(r(&[0, 0, 0, 1], &[1]).left_factor(&r(&[0, 0, 1], &[1])), None);
        let g = r(&[0, 0, 1], &[-1, 1]);
        let h = r(&[1, -3, 0, 1], &[0, -1, 1]);
        assert_eq!(g.compose(&h).unwrap().left_factor(&h), Some(g));
    }

    #[test]
    fn same_field_cases() {
        let f = r(&[0, 0, 1], &[1]);
        assert!(f.same_field(&r(&[1, 0, 1], &[1])));
        assert!(!f.same_field(&r(&[0, 0, 0, 1], &[1])));
        let u = r(&[1], &[3, 1]);
        assert!(f.same_field(&u.compose(&f).unwrap()));
    }
}
