//! Coprimality certificates for polynomials over `Q` and `Q(i)` by reduction
//! modulo a word-sized prime.
//!
//! If no denominator vanishes mod `ℓ` (for `Q(i)`, through `i ↦ ι` with
//! `ι² = -1`) and both leading coefficients survive, the image of the gcd has
//! full degree and divides both images. A constant modular gcd therefore
//! proves the polynomials coprime. Otherwise nothing is concluded.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::Poly;
use crate::field::{is_prime, FieldDescriptor, FieldElement};

struct Modulus {
    ell: u64,
    iota: u64,
}

const ATTEMPTS: usize = 2;

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

fn moduli(gaussian: bool) -> &'static [Modulus] {
    static RATIONAL: OnceLock<Vec<Modulus>> = OnceLock::new();
    static GAUSSIAN: OnceLock<Vec<Modulus>> = OnceLock::new();
    let cell = if gaussian { &GAUSSIAN } else { &RATIONAL };
    cell.get_or_init(|| {
        (1u64 << 30..1u64 << 31)
            .rev()
            .filter(|&ell| (!gaussian || ell % 4 == 1) && is_prime(ell))
            .take(ATTEMPTS)
            .map(|ell| {
                let iota = if gaussian {
                    let g = (2..ell).find(|&g| pow_mod(g, (ell - 1) / 2, ell) == ell - 1).unwrap();
                    pow_mod(g, (ell - 1) / 4, ell)
                } else {
                    0
                };
                Modulus { ell, iota }
            })
            .collect()
    })
}

fn reduce_int(v: &BigInt, ell: u64) -> u64 {
    let r = (v % BigInt::from(ell)).to_i64().unwrap();
    r.rem_euclid(ell as i64) as u64
}

fn reduce_rational(v: &BigRational, ell: u64) -> Option<u64> {
    let den = reduce_int(v.denom(), ell);
    (den != 0).then(|| reduce_int(v.numer(), ell) * inv_mod(den, ell) % ell)
}

fn reduce(c: &FieldElement, m: &Modulus) -> Option<u64> {
    match c.gaussian_parts() {
        Some((re, im)) => Some((reduce_rational(&re, m.ell)? + reduce_rational(&im, m.ell)? * m.iota) % m.ell),
        None => reduce_rational(&c.to_rational()?, m.ell),
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, ell: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), ell);
        while a.len() >= b.len() {
            let t = a.last().unwrap() * inv % ell;
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + ell - t * bj % ell) % ell;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `true` only when `a` and `b` are certainly coprime.
pub(super) fn certainly_coprime(a: &Poly, b: &Poly) -> bool {
    let gaussian = match a.field().descriptor() {
        FieldDescriptor::Rationals => false,
        FieldDescriptor::GaussianRationals => true,
        _ => return false,
    };
    if a.is_zero() || b.is_zero() {
        return false;
    }
    moduli(gaussian).iter().any(|m| {
        let image = |p: &Poly| p.coeffs().iter().map(|c| reduce(c, m)).collect::<Option<Vec<u64>>>();
        let (Some(ra), Some(rb)) = (image(a), image(b)) else {
            return false;
        };
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            return false;
        }
        gcd_degree(ra, rb, m.ell) == 0
    })
}
