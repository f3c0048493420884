//! Root finding in the coefficient field.
//!
//! Finite fields are searched exhaustively. Over `Q` and `Q(i)` the squarefree
//! part is cleared to integer coefficients, its simple roots modulo a good
//! prime `l` are lifted to `l^k` by Newton iteration, and candidates are read
//! off as symmetric residues and verified exactly. A root `z` of an integer
//! polynomial with leading coefficient `L` makes `L*z` an (Gaussian) integer
//! bounded by `|L| + max |a_j|`, which fixes how far to lift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldDescriptor, FieldElement};

pub(super) fn roots(p: &Poly) -> Result<Vec<FieldElement>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field().clone();
    let mut out = match field.descriptor() {
        FieldDescriptor::Prime(_) | FieldDescriptor::Extension { .. } => field
            .elements()?
            .into_iter()
            .filter(|x| p.eval(x).is_zero())
            .collect(),
        FieldDescriptor::Rationals | FieldDescriptor::GaussianRationals => char_zero_roots(p)?,
    };
    out.sort();
    out.dedup();
    Ok(out)
}

fn char_zero_roots(p: &Poly) -> Result<Vec<FieldElement>> {
    let field = p.field().clone();
    let mut out = Vec::new();
    let lowest = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        out.push(field.zero());
    }
    let stripped = Poly::new(&field, p.coeffs()[lowest..].to_vec());
    let g = stripped.gcd(&stripped.derivative())?;
    let sqf = stripped.exact_div(&g);
    match sqf.degree() {
        Some(0) => {}
        Some(1) => out.push(-(&sqf.coeff(0) / &sqf.coeff(1))),
        _ => {
            let candidates = match field.descriptor() {
                FieldDescriptor::Rationals => rational_candidates(&sqf)?,
                _ => gaussian_candidates(&sqf)?,
            };
            out.extend(candidates.into_iter().filter(|z| sqf.eval(z).is_zero()));
        }
    }
    Ok(out)
}

/// Multiply through by the lcm of all denominators.
fn clear_denominators(parts: &[BigRational]) -> Vec<BigInt> {
    let lcm = parts.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    parts.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

fn sym_mod(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Reduction of an integer polynomial into `F_l`; `None` when the leading
/// coefficient vanishes or the reduction is not squarefree.
fn good_reduction(coeffs: &[BigInt], fl: &Field, ell: u32) -> Option<Poly> {
    let m = BigInt::from(ell);
    let red = Poly::new(
        fl,
        coeffs.iter().map(|c| fl.from_i64(c.mod_floor(&m).to_i64().unwrap())).collect(),
    );
    if red.degree() != Some(coeffs.len() - 1) {
        return None;
    }
    let g = red.gcd(&red.derivative()).ok()?;
    (g.degree() == Some(0)).then_some(red)
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Lift the roots of `red` (the reduction of `coeffs` mod `l`, squarefree) to
/// roots of `coeffs` modulo `l^k`.
fn lift_roots(coeffs: &[BigInt], red: &Poly, ell: u32, k: u32) -> Vec<BigInt> {
    let l = BigInt::from(ell);
    let deriv = red.derivative();
    let mut out = Vec::new();
    for r0 in red.roots().unwrap_or_default() {
        let d = deriv.eval(&r0);
        let d_inv = BigInt::from(d.inv().expect("simple root").code().unwrap());
        let mut r = BigInt::from(r0.code().unwrap());
        let mut lj = l.clone();
        for _ in 1..k {
            let next = &lj * &l;
            let v = eval_mod(coeffs, &r, &next);
            let t = (-(v / &lj) * &d_inv).mod_floor(&l);
            r += t * &lj;
            lj = next;
        }
        out.push(r);
    }
    out
}

fn lift_exponent(ell: u32, bound: &BigInt) -> (u32, BigInt) {
    let l = BigInt::from(ell);
    let target: BigInt = bound * 2 + 1;
    let mut m = l.clone();
    let mut k = 1;
    while m <= target {
        m *= &l;
        k += 1;
    }
    (k, m)
}

fn primes_from(start: u32) -> impl Iterator<Item = u32> {
    (start..).filter(|&n| is_prime(n as u64))
}

const PRIME_SEARCH_LIMIT: usize = 20_000;

fn rational_candidates(p: &Poly) -> Result<Vec<FieldElement>> {
    let field = p.field().clone();
    let rats: Vec<BigRational> = p.coeffs().iter().map(|c| c.to_rational().unwrap()).collect();
    let mut ints = clear_denominators(&rats);
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in ints.iter_mut() {
        *c /= &content;
    }
    let lc = ints.last().unwrap().clone();
    let bound = lc.abs() + ints.iter().map(|c| c.abs()).max().unwrap();
    for ell in primes_from(101).take(PRIME_SEARCH_LIMIT) {
        let fl = Field::prime(ell)?;
        let Some(red) = good_reduction(&ints, &fl, ell) else { continue };
        let (k, m) = lift_exponent(ell, &bound);
        let out = lift_roots(&ints, &red, ell, k)
            .into_iter()
            .map(|rho| {
                let y = sym_mod(&(&lc * rho), &m);
                field.from_rational(&BigRational::new(y, lc.clone())).unwrap()
            })
            .collect();
        return Ok(out);
    }
    Err(Error::Internal("no good prime for rational root lifting".into()))
}

fn gaussian_candidates(p: &Poly) -> Result<Vec<FieldElement>> {
    let field = p.field().clone();
    let parts: Vec<(BigRational, BigRational)> =
        p.coeffs().iter().map(|c| c.gaussian_parts().unwrap()).collect();
    let flat: Vec<BigRational> = parts.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let ints = clear_denominators(&flat);
    let re: Vec<BigInt> = ints.iter().step_by(2).cloned().collect();
    let im: Vec<BigInt> = ints.iter().skip(1).step_by(2).cloned().collect();
    let n = re.len() - 1;
    let (lre, lim) = (re[n].clone(), im[n].clone());
    let norm1 = |a: &BigInt, b: &BigInt| a.abs() + b.abs();
    let bound = norm1(&lre, &lim) + (0..=n).map(|j| norm1(&re[j], &im[j])).max().unwrap();

    for ell in primes_from(101).filter(|l| l % 4 == 1).take(PRIME_SEARCH_LIMIT) {
        let fl = Field::prime(ell)?;
        let (k, m) = lift_exponent(ell, &bound);
        let unit_circle = [BigInt::one(), BigInt::zero(), BigInt::one()];
        let red_i = good_reduction(&unit_circle, &fl, ell).unwrap();
        let iota = lift_roots(&unit_circle, &red_i, ell, k).swap_remove(0);
        let image = |sign: i32| -> Vec<BigInt> {
            (0..=n).map(|j| (&re[j] + &im[j] * &iota * sign).mod_floor(&m)).collect()
        };
        let (plus, minus) = (image(1), image(-1));
        let Some(red_plus) = good_reduction(&plus, &fl, ell) else { continue };
        let Some(red_minus) = good_reduction(&minus, &fl, ell) else { continue };
        let lead_plus = plus[n].clone();
        let lead_minus = minus[n].clone();
        let roots_plus = lift_roots(&plus, &red_plus, ell, k);
        let roots_minus = lift_roots(&minus, &red_minus, ell, k);
        let half = inv_mod(&BigInt::from(2), &m);
        let lead = field.gaussian(
            BigRational::from_integer(lre.clone()),
            BigRational::from_integer(lim.clone()),
        )?;
        let mut out = Vec::new();
        for rp in &roots_plus {
            let yp = &lead_plus * rp;
            for rm in &roots_minus {
                let ym = &lead_minus * rm;
                let s = sym_mod(&((&yp + &ym) * &half), &m);
                let t = sym_mod(&(-(&yp - &ym) * &half * &iota), &m);
                if s.abs() > bound || t.abs() > bound {
                    continue;
                }
                let y = field.gaussian(BigRational::from_integer(s), BigRational::from_integer(t))?;
                out.push(&y / &lead);
            }
        }
        return Ok(out);
    }
    Err(Error::Internal("no good prime for Gaussian root lifting".into()))
}
