//! Table-driven arithmetic for `F_{p^n}`.
//!
//! Elements are encoded as integers `c0 + c1 p + ... + c_{n-1} p^{n-1}` where
//! `c0 + c1 a + ...` is the residue modulo the defining polynomial. Ascending
//! code order is the lexicographic coefficient order used for enumeration.

use crate::error::{Error, Result};

/// Largest extension field for which log/exp tables are built.
pub(crate) const MAX_EXTENSION_SIZE: u64 = 1 << 20;

#[derive(Debug)]
pub(crate) struct ExtTables {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Residue digits (low to high) of `a * b` modulo the monic `modulus`.
fn mul_digits(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for k in (n..prod.len()).rev() {
        let t = prod[k];
        if t == 0 {
            continue;
        }
        prod[k] = 0;
        for (j, &m) in modulus[..n].iter().enumerate() {
            let sub = t * m as u64 % p64;
            prod[k - n + j] = (prod[k - n + j] + p64 - sub) % p64;
        }
    }
    prod.truncate(n);
    prod.into_iter().map(|v| v as u32).collect()
}

fn digits_of(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn code_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn eval_mod(poly: &[u32], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c as u64) % p)
}

/// Remainder of `num` divided by the monic `div` over `F_p`, low-to-high digits.
fn rem_mod(num: &[u32], div: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dn = div.len() - 1;
    while r.len() > dn {
        let t = *r.last().unwrap();
        let shift = r.len() - 1 - dn;
        for (j, &m) in div.iter().enumerate() {
            let sub = t * m as u64 % p64;
            r[shift + j] = (r[shift + j] + p64 - sub) % p64;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r.into_iter().map(|v| v as u32).collect()
}

/// Irreducibility over `F_p` of a monic polynomial of degree `n >= 2`: no root
/// when `n <= 3`, otherwise no monic divisor of degree `<= n/2`.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    if n <= 3 {
        return (0..p as u64).all(|x| eval_mod(modulus, x, p as u64) != 0);
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = digits_of(low as u32, p, d as u32);
            div.push(1);
            if rem_mod(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `n` over `F_p`, scanning the
/// lower coefficients in ascending code order.
pub(crate) fn first_irreducible(p: u32, n: u32) -> Result<Vec<u32>> {
    let size = (p as u64).checked_pow(n).filter(|&s| s <= MAX_EXTENSION_SIZE);
    let size = size.ok_or_else(|| Error::TooLarge(format!("GF({p}^{n})")))?;
    for low in 0..size {
        let mut m = digits_of(low as u32, p, n);
        m.push(1);
        if is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {n} over GF({p})")))
}

impl ExtTables {
    pub fn build(p: u32, modulus: &[u32]) -> Result<Self> {
        let n = (modulus.len() - 1) as u32;
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&s| s <= MAX_EXTENSION_SIZE)
            .ok_or_else(|| Error::TooLarge(format!("GF({p}^{n})")))? as u32;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let pow = |base: &[u32], mut e: u64| -> Vec<u32> {
            let mut acc = digits_of(1, p, n);
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_digits(&acc, &b, modulus, p);
                }
                b = mul_digits(&b, &b, modulus, p);
                e >>= 1;
            }
            acc
        };
        let one = digits_of(1, p, n);
        let generator = (2..q)
            .map(|c| digits_of(c, p, n))
            .find(|g| factors.iter().all(|&r| pow(g, order / r) != one))
            .ok_or_else(|| Error::InvalidField("modulus does not define a field".into()))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = one;
        for k in 0..order as u32 {
            let c = code_of(&cur, p);
            exp.push(c);
            log[c as usize] = k;
            cur = mul_digits(&cur, &generator, modulus, p);
        }
        Ok(ExtTables { p, n, q, exp, log })
    }

    pub fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, mut a: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order as u64;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    pub fn digits(&self, code: u32) -> Vec<u32> {
        digits_of(code, self.p, self.n)
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        code_of(digits, self.p)
    }
}
