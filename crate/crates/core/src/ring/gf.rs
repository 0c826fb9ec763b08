//! GF(p^e) as F_p[y]/(modulus), with log/exp tables.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` are the coefficients of the residue polynomial in `y`.

use crate::error::{Error, Result};

use super::nt;

/// Largest extension field order accepted.
pub const MAX_ORDER: u64 = 1 << 16;

/// Irreducible moduli used when the caller does not supply one
/// (coefficients low to high, monic).
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
];

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c) % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Trial-division irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                cand.push(c % p);
                c /= p;
            }
            cand.push(1);
            if poly_rem_monic(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Default monic irreducible of degree `e` over F_p.
pub fn default_modulus(p: u64, e: u32) -> Vec<u64> {
    if let Some((_, _, m)) = BUILTIN_MODULI.iter().find(|(q, f, _)| *q == p && *f == e) {
        return m.to_vec();
    }
    let count = p.pow(e);
    for code in 0..count {
        let mut cand = Vec::with_capacity(e as usize + 1);
        let mut c = code;
        for _ in 0..e {
            cand.push(c % p);
            c /= p;
        }
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over a prime field")
}

#[derive(Debug)]
pub struct GfTables {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl GfTables {
    pub fn new(p: u64, e: u32, modulus: Vec<u64>) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|q| *q <= MAX_ORDER)
            .ok_or_else(|| Error::Unsupported(format!("field order {p}^{e} exceeds {MAX_ORDER}")))?;
        if modulus.len() != e as usize + 1 || modulus.last() != Some(&1) {
            return Err(Error::InvalidModulus(format!(
                "expected a monic polynomial of degree {e}, got coefficients {modulus:?}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        let mut t = GfTables {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
        };
        t.build_log_tables();
        if q <= 256 {
            let mut add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = t.add_digits(a, b) as u16;
                }
            }
            t.add = Some(add);
        }
        Ok(t)
    }

    fn decode(&self, mut x: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            v.push(x % self.p);
            x /= self.p;
        }
        trim(v)
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly_mul(&self.decode(a), &self.decode(b), self.p);
        self.encode(&poly_rem_monic(&prod, &self.modulus, self.p))
    }

    fn build_log_tables(&mut self) {
        let order = (self.q - 1) as usize;
        for g in 1..self.q {
            let mut exp = Vec::with_capacity(order);
            let mut x = 1u64;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x as u32);
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn add_digits(&self, mut a: u64, mut b: u64) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut x = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize] as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as u64;
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize] as u64)
    }

    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut x = a;
        for _ in 0..self.e {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<u64> {
        if c.len() > self.e as usize {
            return Err(Error::Invalid(format!(
                "extension element has {} coefficients, field degree is {}",
                c.len(),
                self.e
            )));
        }
        Ok(self.encode(&c.iter().map(|x| x % self.p).collect::<Vec<_>>()))
    }
}
