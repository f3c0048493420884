//! Generators of the field fixed by a finite group of units.

use crate::error::{Error, Result};
use crate::field::{common_denominator, Field, FieldElement};
use crate::moebius::{MoebiusUnit, UnitGroup};
use crate::poly::Poly;
use crate::ratfun::{homogeneous_compose, integral_pair, RatFun};

/// Largest `q` accepted by [`finite_field_canonical_generators`].
pub const MAX_CANONICAL_ORDER: u64 = 16;

/// Elementary symmetric functions `σ_1, ..., σ_m` of the elements of `group`,
/// so that `∏ (t - g) = Σ (-1)^k σ_k t^(m-k)`.
///
/// With `g = N_g / D_g` the product is `∏ (D_g t - N_g) / ∏ D_g`, which is
/// expanded with polynomial coefficients and reduced once at the end.
pub fn symmetric_functions(group: &UnitGroup) -> Result<Vec<RatFun>> {
    let field = group.field();
    let mut product: Vec<Poly> = vec![Poly::one(field)];
    let mut den_product = Poly::one(field);
    for u in group.elements() {
        let [a, b, c, d] = integral_entries(u);
        let num = Poly::linear(a.clone(), b.clone());
        let den = Poly::linear(c.clone(), d.clone());
        let mut next = vec![Poly::zero(field); product.len() + 1];
        for (j, coeff) in product.iter().enumerate() {
            next[j + 1] = &next[j + 1] + &(coeff * &den);
            next[j] = &next[j] - &(coeff * &num);
        }
        product = next;
        den_product = &den_product * &den;
    }
    let m = group.order();
    (1..=m)
        .map(|k| {
            let coeff = &product[m - k];
            let signed = if k % 2 == 1 { -coeff } else { coeff.clone() };
            RatFun::make(signed, den_product.clone())
        })
        .collect()
}

/// Entries of `u` scaled to lie in `Z` or `Z[i]`, which keeps the expansion
/// free of fraction arithmetic.
fn integral_entries(u: &MoebiusUnit) -> [FieldElement; 4] {
    let entries = u.entries();
    let factor = u.field().from_bigint(&common_denominator(entries));
    entries.map(|e| e * &factor)
}

/// A Lüroth generator of `Fix(group)`: the first non-constant `σ_k`.
pub fn fixed_field_generator(group: &UnitGroup) -> Result<RatFun> {
    let sigma = symmetric_functions(group)?
        .into_iter()
        .find(|s| !s.is_constant())
        .ok_or(Error::AllCoefficientsConstant)?;
    if sigma.degree() != group.order() {
        return Err(Error::Internal(format!(
            "generator {sigma} has degree {} but the group has order {}",
            sigma.degree(),
            group.order()
        )));
    }
    let (sn, sd) = integral_pair(sigma.num(), sigma.den());
    for u in group.elements() {
        let image = u.to_ratfun();
        let (a, b) = homogeneous_compose(&sn, &sd, sigma.degree(), image.num(), image.den());
        if &a * &sd != &b * &sn {
            return Err(Error::Internal(format!("generator {sigma} is not fixed by {u}")));
        }
    }
    Ok(sigma)
}

/// Closed-form generators over `F_q`: `f0 = (x^q - x)^(q-1)` generating the
/// field fixed by the affine units, and `h ∘ f0` with
/// `h = (x^(q+1) + x + 1)/x^q` for the whole unit group.
pub fn finite_field_canonical_generators(field: &Field) -> Result<(RatFun, RatFun)> {
    let q = field.size().ok_or(Error::InfiniteField)?;
    if q > MAX_CANONICAL_ORDER {
        return Err(Error::TooLarge(format!("canonical generators over {field}")));
    }
    let q = q as usize;
    let one = field.one();
    let x = Poly::x(field);
    let artin = &Poly::monomial(one.clone(), q) - &x;
    let f0 = RatFun::from_poly(artin.pow(q as u32 - 1));
    let h_num = &(&Poly::monomial(one.clone(), q + 1) + &x) + &Poly::one(field);
    let h = RatFun::make(h_num, Poly::monomial(one, q))?;
    let g_full = h.compose(&f0)?;
    Ok((f0, g_full))
}
