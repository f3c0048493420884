#![allow(dead_code)]

use fixgroup_core::expr::parse_unit_list;
use fixgroup_core::{Field, FieldElement, MoebiusUnit, Poly, RatFun, UnitGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut ChaCha8Rng, span: i64) -> BigRational {
    let num = rng.gen_range(-span..=span);
    let den = rng.gen_range(1..=3);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match field.size() {
        Some(q) => field.from_code(rng.gen_range(0..q as u32)).unwrap(),
        None if field.characteristic() == 0 && field.imaginary_unit().is_ok() => {
            let im = if rng.gen_bool(0.5) { small_rational(rng, 3) } else { BigRational::from_integer(0.into()) };
            field.gaussian(small_rational(rng, 4), im).unwrap()
        }
        None => field.from_rational(&small_rational(rng, 6)).unwrap(),
    }
}

pub fn nonzero(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let c = element(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn poly(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut coeffs: Vec<FieldElement> = (0..deg).map(|_| element(field, rng)).collect();
    coeffs.push(nonzero(field, rng));
    Poly::new(field, coeffs)
}

/// A reduced rational function whose degree lies in `lo..=hi`.
pub fn ratfun(field: &Field, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> RatFun {
    loop {
        let dn = rng.gen_range(0..=hi);
        let dd = rng.gen_range(0..=hi);
        let f = RatFun::make(poly(field, dn, rng), poly(field, dd, rng)).unwrap();
        if (lo..=hi).contains(&f.degree()) {
            return f;
        }
    }
}

pub fn unit(field: &Field, rng: &mut ChaCha8Rng) -> MoebiusUnit {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| element(field, rng));
        if let Ok(u) = MoebiusUnit::new(a, b, c, d) {
            return u;
        }
    }
}

/// Generator sets of finite unit groups.
pub fn finite_generator_sets(field: &Field) -> Vec<Vec<MoebiusUnit>> {
    let mut sources = vec!["-x", "1/x", "1-x", "1/(1-x)", "1/(1-x); 1/x", "-x; 1/x", "(x+1)/(1-x)", "(x+1)/(1-x); -x"];
    if field.imaginary_unit().is_ok() {
        sources.extend(["i*x", "i*x; 1/x", "-x; (x-i)/(x+i)", "i*(x+1)/(x-1); -x", "i*x; (x+1)/(x-1)"]);
    }
    sources.iter().map(|s| parse_unit_list(s, field).unwrap()).collect()
}

/// A random conjugate of a known finite group.
pub fn finite_group(field: &Field, rng: &mut ChaCha8Rng, cap: usize) -> UnitGroup {
    let sets = finite_generator_sets(field);
    loop {
        let gens = &sets[rng.gen_range(0..sets.len())];
        let w = unit(field, rng);
        let conj: Vec<MoebiusUnit> = gens.iter().map(|g| w.compose(g).compose(&w.inverse())).collect();
        if let Ok(g) = UnitGroup::closure(field, &conj, cap) {
            return g;
        }
    }
}

/// `g ∘ h` with `h` generating the field fixed by a random finite group, so
/// that the fixing group is nontrivial. The degree stays at most `max_deg`.
pub fn symmetric_instance(field: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> RatFun {
    loop {
        let group = if field.is_finite() {
            let u = unit(field, rng);
            match UnitGroup::closure(field, &[u], max_deg) {
                Ok(g) => g,
                Err(_) => continue,
            }
        } else {
            finite_group(field, rng, max_deg)
        };
        let order = group.order();
        if order < 2 || order > max_deg {
            continue;
        }
        let h = fixgroup_core::fixed_field_generator(&group).unwrap();
        let g = ratfun(field, 1, max_deg / order, rng);
        return g.compose(&h).unwrap();
    }
}
