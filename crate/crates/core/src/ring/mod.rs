//! Exact coefficient rings: Q, Z, Z/nZ, F_p and GF(p^e).
//!
//! A [`Ring`] is a cheap, shareable handle; ring elements ([`Elem`]) are plain
//! values whose meaning is fixed by the ring that produced them. Every element
//! is kept in canonical form, so structural equality is ring equality.

mod gf;
pub mod nt;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use gf::{default_modulus, is_irreducible, MAX_ORDER as MAX_EXTENSION_ORDER};
use gf::GfTables;

/// Description of a supported coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    Integers,
    IntegersModN(u64),
    PrimeField(u64),
    /// F_p[y]/(modulus); `modulus` is monic of degree `e`, coefficients low to high.
    ExtensionField { p: u64, e: u32, modulus: Vec<u64> },
}

impl RingSpec {
    /// GF(p^e) with the built-in (or first found) irreducible modulus.
    pub fn gf(p: u64, e: u32) -> Result<RingSpec> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        match p.checked_pow(e) {
            Some(q) if q <= MAX_EXTENSION_ORDER => {}
            _ => {
                return Err(Error::Unsupported(format!(
                    "field order {p}^{e} exceeds {MAX_EXTENSION_ORDER}"
                )))
            }
        }
        Ok(RingSpec::ExtensionField {
            p,
            e,
            modulus: default_modulus(p, e),
        })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersModN(n) => write!(f, "Zn:{n}"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
            RingSpec::ExtensionField { p, e, modulus } => {
                let m: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "GF:{p}^{e}:{}", m.join(","))
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Accepts `Q`, `Z`, `Zn:<n>`, `Fp:<p>`, `GF:<p>^<e>[:c0,c1,...,ce]`.
    fn from_str(s: &str) -> Result<RingSpec> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("bad ring spec {s:?}: {msg}"),
        };
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad("expected a positive integer"));
        match s {
            "Q" => return Ok(RingSpec::Rationals),
            "Z" => return Ok(RingSpec::Integers),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Zn:") {
            return Ok(RingSpec::IntegersModN(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            return Ok(RingSpec::PrimeField(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("GF:") {
            let (pe, modulus) = match rest.split_once(':') {
                Some((pe, m)) => (pe, Some(m)),
                None => (rest, None),
            };
            let (p, e) = pe.split_once('^').ok_or_else(|| bad("expected <p>^<e>"))?;
            let p = num(p)?;
            let e = num(e)? as u32;
            return match modulus {
                None => RingSpec::gf(p, e),
                Some(m) => {
                    let coeffs = m
                        .split(',')
                        .map(num)
                        .collect::<Result<Vec<u64>>>()?;
                    Ok(RingSpec::ExtensionField { p, e, modulus: coeffs })
                }
            };
        }
        Err(bad("unknown ring"))
    }
}

/// Exact ring element in canonical form.
///
/// `Fin` holds residues of Z/nZ and F_p, and encoded GF(p^e) elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fin(u64),
    Int(BigInt),
    Rat(BigRational),
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    gf: Option<GfTables>,
}

/// Shared handle to a coefficient ring.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.spec.fmt(f)
    }
}

/// Size of the structural base field `k` used by the degree condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KSize {
    Finite(u64),
    Infinite,
}

impl fmt::Display for KSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSize::Finite(q) => write!(f, "{q}"),
            KSize::Infinite => write!(f, "inf"),
        }
    }
}

impl Ring {
    /// Validates `spec` and builds the ring.
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let gf = match &spec {
            RingSpec::Rationals | RingSpec::Integers => None,
            RingSpec::IntegersModN(n) => {
                if *n < 2 {
                    return Err(Error::ModulusTooSmall(*n));
                }
                None
            }
            RingSpec::PrimeField(p) => {
                if !nt::is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                None
            }
            RingSpec::ExtensionField { p, e, modulus } => {
                Some(GfTables::new(*p, *e, modulus.clone())?)
            }
        };
        Ok(Ring(Arc::new(RingInner { spec, gf })))
    }

    pub fn parse(s: &str) -> Result<Ring> {
        Ring::new(s.parse()?)
    }

    pub fn rationals() -> Ring {
        Ring::new(RingSpec::Rationals).unwrap()
    }

    pub fn integers() -> Ring {
        Ring::new(RingSpec::Integers).unwrap()
    }

    pub fn zmod(n: u64) -> Result<Ring> {
        Ring::new(RingSpec::IntegersModN(n))
    }

    pub fn fp(p: u64) -> Result<Ring> {
        Ring::new(RingSpec::PrimeField(p))
    }

    pub fn gf(p: u64, e: u32) -> Result<Ring> {
        Ring::new(RingSpec::gf(p, e)?)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    /// Modulus for rings whose elements are plain residues.
    fn residue_modulus(&self) -> Option<u64> {
        match self.0.spec {
            RingSpec::IntegersModN(n) | RingSpec::PrimeField(n) => Some(n),
            _ => None,
        }
    }

    fn tables(&self) -> &GfTables {
        self.0.gf.as_ref().expect("extension field tables")
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.spec {
            RingSpec::Rationals | RingSpec::Integers => 0,
            RingSpec::IntegersModN(n) | RingSpec::PrimeField(n) => *n,
            RingSpec::ExtensionField { p, .. } => *p,
        }
    }

    /// Characteristic when it is zero or prime.
    pub fn char_zero_or_prime(&self) -> Result<u64> {
        let c = self.characteristic();
        if c == 0 || nt::is_prime(c) {
            Ok(c)
        } else {
            Err(Error::CompositeCharacteristic(c))
        }
    }

    /// Number of elements, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        match &self.0.spec {
            RingSpec::Rationals | RingSpec::Integers => None,
            RingSpec::IntegersModN(n) | RingSpec::PrimeField(n) => Some(*n),
            RingSpec::ExtensionField { .. } => Some(self.tables().q),
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.0.spec {
            RingSpec::Rationals | RingSpec::PrimeField(_) | RingSpec::ExtensionField { .. } => true,
            RingSpec::Integers => false,
            RingSpec::IntegersModN(n) => nt::is_prime(*n),
        }
    }

    /// Size of the ring viewed as its own base field, if it is a field.
    pub fn self_ksize(&self) -> Option<KSize> {
        if !self.is_field() {
            return None;
        }
        Some(match self.order() {
            Some(q) => KSize::Finite(q),
            None => KSize::Infinite,
        })
    }

    pub fn zero(&self) -> Elem {
        match &self.0.spec {
            RingSpec::Rationals => Elem::Rat(BigRational::zero()),
            RingSpec::Integers => Elem::Int(BigInt::zero()),
            _ => Elem::Fin(0),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the structure map Z -> R.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &self.0.spec {
            RingSpec::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            RingSpec::Integers => Elem::Int(n.clone()),
            RingSpec::IntegersModN(m) | RingSpec::PrimeField(m) => {
                Elem::Fin(n.mod_floor(&BigInt::from(*m)).to_u64().unwrap())
            }
            RingSpec::ExtensionField { p, .. } => {
                Elem::Fin(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap())
            }
        }
    }

    /// Rational number, if representable (denominator a unit).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match &self.0.spec {
            RingSpec::Rationals => Ok(Elem::Rat(BigRational::new(num.clone(), den.clone()))),
            RingSpec::Integers => {
                let (q, r) = num.div_rem(den);
                if r.is_zero() {
                    Ok(Elem::Int(q))
                } else {
                    Err(Error::NotAUnit(den.to_string()))
                }
            }
            _ => {
                let d = self.from_bigint(den);
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(x) => *x == 0,
            Elem::Int(x) => x.is_zero(),
            Elem::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(x) => *x == 1,
            Elem::Int(x) => x.is_one(),
            Elem::Rat(x) => x.is_one(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => match self.residue_modulus() {
                Some(m) => Elem::Fin(((*x as u128 + *y as u128) % m as u128) as u64),
                None => Elem::Fin(self.tables().add(*x, *y)),
            },
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("ring element kind mismatch in {}", self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => match self.residue_modulus() {
                Some(m) => Elem::Fin(if *x == 0 { 0 } else { m - x }),
                None => Elem::Fin(self.tables().neg(*x)),
            },
            Elem::Int(x) => Elem::Int(-x),
            Elem::Rat(x) => Elem::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => match self.residue_modulus() {
                Some(m) => Elem::Fin(nt::mul_mod(*x, *y, m)),
                None => Elem::Fin(self.tables().mul(*x, *y)),
            },
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("ring element kind mismatch in {}", self),
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse; `NotAUnit` otherwise.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        let fail = || Error::NotAUnit(self.format(a));
        match a {
            Elem::Fin(x) => match self.residue_modulus() {
                Some(m) => nt::inv_mod(*x, m).map(Elem::Fin).ok_or_else(fail),
                None => self.tables().inv(*x).map(Elem::Fin).ok_or_else(fail),
            },
            Elem::Int(x) => {
                if x.abs().is_one() {
                    Ok(Elem::Int(x.clone()))
                } else {
                    Err(fail())
                }
            }
            Elem::Rat(x) => {
                if x.is_zero() {
                    Err(fail())
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_ok()
    }

    /// `a^m = 0` for some `m >= 1`.
    pub fn is_nilpotent(&self, a: &Elem) -> bool {
        match (&self.0.spec, a) {
            (RingSpec::IntegersModN(n), Elem::Fin(x)) => *x % nt::radical(*n) == 0,
            _ => self.is_zero(a),
        }
    }

    /// All elements in a fixed deterministic order (finite rings only).
    pub fn elements(&self) -> Result<Vec<Elem>> {
        match self.order() {
            Some(q) => Ok((0..q).map(Elem::Fin).collect()),
            None => Err(Error::Unsupported(format!("{self} is infinite"))),
        }
    }

    pub fn enumerate_units(&self) -> Result<Vec<Elem>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|a| self.is_unit(a))
            .collect())
    }

    /// A unit `xi` such that `xi + 1` is also a unit.
    pub fn find_special_unit(&self) -> Result<Elem> {
        match &self.0.spec {
            RingSpec::Rationals => Ok(self.one()),
            RingSpec::Integers => Err(Error::NoSuchUnit),
            _ => {
                let one = self.one();
                self.enumerate_units()?
                    .into_iter()
                    .find(|x| self.is_unit(&self.add(x, &one)))
                    .ok_or(Error::NoSuchUnit)
            }
        }
    }

    /// Elements of the subfield of order `q` (GF(p^e) only has subfields of
    /// order `p^f` with `f | e`).
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<Elem>> {
        if !self.is_field() {
            return Err(Error::Unsupported(format!("{self} is not a field")));
        }
        let order = self
            .order()
            .ok_or_else(|| Error::Unsupported("subfields of an infinite field".into()))?;
        let all = self.elements()?;
        let sub: Vec<Elem> = all
            .into_iter()
            .filter(|a| self.pow(a, q) == *a)
            .collect();
        if sub.len() as u64 != q || q > order {
            return Err(Error::Invalid(format!("{self} has no subfield of order {q}")));
        }
        Ok(sub)
    }

    /// Integer representative of a residue (Z, Z/nZ, F_p).
    pub fn to_bigint(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Int(x) => Some(x.clone()),
            Elem::Fin(x) if self.residue_modulus().is_some() => Some(BigInt::from(*x)),
            Elem::Rat(x) if x.is_integer() => Some(x.to_integer()),
            _ => None,
        }
    }

    /// Coefficient vector of an extension-field element.
    pub fn ext_coeffs(&self, a: &Elem) -> Option<Vec<u64>> {
        match (&self.0.gf, a) {
            (Some(t), Elem::Fin(x)) => Some(t.coeffs(*x)),
            _ => None,
        }
    }

    /// Whether the printed form needs a leading minus sign stripped.
    pub fn is_negative(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.is_negative(),
            Elem::Rat(x) => x.is_negative(),
            Elem::Fin(_) => false,
        }
    }

    /// Canonical text for an element.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Rat(x) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Elem::Fin(x) => match &self.0.gf {
                None => x.to_string(),
                Some(t) => {
                    let mut c = t.coeffs(*x);
                    while c.len() > 1 && c.last() == Some(&0) {
                        c.pop();
                    }
                    if c.len() == 1 {
                        c[0].to_string()
                    } else {
                        let s: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        format!("[{}]", s.join(","))
                    }
                }
            },
        }
    }

    /// Parses an element literal: an integer, `a/b`, or `[c0,c1,...]`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let t = self
                .0
                .gf
                .as_ref()
                .ok_or_else(|| bad(format!("vector literal {s:?} outside an extension field")))?;
            let coeffs = inner
                .split(',')
                .map(|c| {
                    let v = c
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| bad(format!("bad coefficient {c:?}")))?;
                    Ok(v.mod_floor(&BigInt::from(t.p)).to_u64().unwrap())
                })
                .collect::<Result<Vec<u64>>>()?;
            return Ok(Elem::Fin(t.from_coeffs(&coeffs)?));
        }
        let int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| bad(format!("bad integer {t:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => self.from_ratio(&int(n)?, &int(d)?),
            None => Ok(self.from_bigint(&int(s)?)),
        }
    }

    /// Coefficients `c` with `sum c_i g_i = 1`, if the ideal `(g)` is the unit ideal.
    pub fn unit_combination(&self, gens: &[Elem]) -> Option<Vec<Elem>> {
        if self.is_field() {
            let idx = gens.iter().position(|g| !self.is_zero(g))?;
            let mut out = vec![self.zero(); gens.len()];
            out[idx] = self.inv(&gens[idx]).ok()?;
            return Some(out);
        }
        // Z or Z/nZ: extended Euclid over integer lifts.
        let modulus = self.residue_modulus().map(BigInt::from);
        let lifts: Vec<BigInt> = gens.iter().map(|g| self.to_bigint(g).unwrap()).collect();
        let mut g = modulus.clone().unwrap_or_else(BigInt::zero);
        let mut coeffs = vec![BigInt::zero(); gens.len()];
        let mut started = modulus.is_some();
        for (i, a) in lifts.iter().enumerate() {
            if !started {
                g = a.clone();
                coeffs[i] = BigInt::one();
                started = true;
                continue;
            }
            let e = g.extended_gcd(a);
            for c in coeffs.iter_mut() {
                *c = &*c * &e.x;
            }
            coeffs[i] = e.y.clone();
            g = e.gcd;
        }
        if g.is_negative() {
            g = -g;
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        if !g.is_one() {
            return None;
        }
        Some(coeffs.iter().map(|c| self.from_bigint(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let f9 = Ring::new(RingSpec::ExtensionField { p: 3, e: 2, modulus: vec![1, 0, 1] }).unwrap();
        assert_eq!(f9.order(), Some(9));
        assert_eq!(f9.characteristic(), 3);
        assert_eq!(Ring::zmod(6).unwrap().characteristic(), 6);
        assert_eq!(Ring::fp(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Ring::zmod(1).unwrap_err(), Error::ModulusTooSmall(1));
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = Ring::fp(7).unwrap();
        assert_eq!(f7.inv(&f7.from_i64(3)).unwrap(), f7.from_i64(5));
        let z4 = Ring::zmod(4).unwrap();
        assert!(matches!(z4.inv(&z4.from_i64(2)), Err(Error::NotAUnit(_))));
        let q = Ring::rationals();
        let a = q.parse_elem("1/2").unwrap();
        let b = q.parse_elem("2/3").unwrap();
        assert_eq!(q.mul(&a, &b), q.parse_elem("1/3").unwrap());
    }

    #[test]
    fn unit_and_nilpotent_examples() {
        let z4 = Ring::zmod(4).unwrap();
        assert!(!z4.is_unit(&z4.from_i64(2)));
        assert!(z4.is_nilpotent(&z4.from_i64(2)));
        assert!(z4.is_unit(&z4.from_i64(3)));
        let z12 = Ring::zmod(12).unwrap();
        // 6^2 = 36 = 0 mod 12
        assert!(z12.is_nilpotent(&z12.from_i64(6)));
        assert!(!z12.is_nilpotent(&z12.from_i64(2)));
    }

    #[test]
    fn unit_enumeration() {
        let f5 = Ring::fp(5).unwrap();
        assert_eq!(
            f5.enumerate_units().unwrap(),
            (1..5).map(|i| f5.from_i64(i)).collect::<Vec<_>>()
        );
        let z6 = Ring::zmod(6).unwrap();
        assert_eq!(z6.enumerate_units().unwrap(), vec![Elem::Fin(1), Elem::Fin(5)]);
        assert!(matches!(Ring::rationals().enumerate_units(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn special_units() {
        let f4 = Ring::gf(2, 2).unwrap();
        let g = f4.find_special_unit().unwrap();
        assert_eq!(f4.ext_coeffs(&g).unwrap(), vec![0, 1]);
        let f3 = Ring::fp(3).unwrap();
        assert_eq!(f3.find_special_unit().unwrap(), f3.one());
        assert_eq!(Ring::fp(2).unwrap().find_special_unit().unwrap_err(), Error::NoSuchUnit);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["Q", "Z", "Zn:6", "Fp:5", "GF:3^2:1,0,1", "GF:2^3:1,1,0,1"] {
            let r = Ring::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(Ring::parse("GF:2^2").unwrap().to_string(), "GF:2^2:1,1,1");
        assert!(Ring::parse("GF:2^2:1,0,1").is_err());
    }

    #[test]
    fn element_literals() {
        let f9 = Ring::gf(3, 2).unwrap();
        let y = f9.parse_elem("[0,1]").unwrap();
        assert_eq!(f9.format(&y), "[0,1]");
        assert_eq!(f9.format(&f9.mul(&y, &y)), "2");
        let f5 = Ring::fp(5).unwrap();
        assert_eq!(f5.parse_elem("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse_elem("-1").unwrap(), f5.from_i64(4));
    }

    #[test]
    fn subfields() {
        let f9 = Ring::gf(3, 2).unwrap();
        assert_eq!(f9.subfield_elements(3).unwrap().len(), 3);
        assert!(f9.subfield_elements(4).is_err());
    }

    #[test]
    fn bezout_combinations() {
        let z = Ring::integers();
        let gens = [z.from_i64(6), z.from_i64(10), z.from_i64(15)];
        let c = z.unit_combination(&gens).unwrap();
        let s = gens
            .iter()
            .zip(&c)
            .fold(z.zero(), |acc, (g, c)| z.add(&acc, &z.mul(g, c)));
        assert!(z.is_one(&s));
        let z6 = Ring::zmod(6).unwrap();
        assert!(z6.unit_combination(&[z6.from_i64(2)]).is_none());
        let c = z6.unit_combination(&[z6.from_i64(2), z6.from_i64(3)]).unwrap();
        let s = z6.add(&z6.mul(&c[0], &z6.from_i64(2)), &z6.mul(&c[1], &z6.from_i64(3)));
        assert!(z6.is_one(&s));
    }
}
