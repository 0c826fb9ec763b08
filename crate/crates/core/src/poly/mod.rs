//! Sparse exact multivariate polynomials.
//!
//! Variables are indexed from 0 in the API and printed as `x1..xn`.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{nt, Elem, Ring};

/// Exponent vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<[u32; 4]>>>()
            .map(Monomial)
    }

    pub fn fmt_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_vars(f)
    }
}

/// Graded lexicographic order with `x1 > x2 > ... > xn`.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has its own marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Zero,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Zero => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial over a ring in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; n={}]({})", self.ring, self.nvars, self)
    }
}

type Accum = FxHashMap<Monomial, Elem>;

impl Poly {
    pub fn zero(ring: &Ring, nvars: usize) -> Poly {
        Poly {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: Elem) -> Poly {
        Poly::term(ring, Monomial::one(nvars), c)
    }

    pub fn one(ring: &Ring, nvars: usize) -> Poly {
        Poly::constant(ring, nvars, ring.one())
    }

    pub fn var(ring: &Ring, nvars: usize, i: usize) -> Poly {
        assert!(i < nvars, "variable index out of range");
        Poly::term(ring, Monomial::var(nvars, i), ring.one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Elem) -> Poly {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            nvars,
            terms,
        }
    }

    /// Builds a polynomial from terms, combining duplicates and dropping zeros.
    pub fn from_terms(ring: &Ring, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Poly {
        let mut acc: Accum = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            add_into(ring, &mut acc, m, c);
        }
        Poly::from_accum(ring, nvars, acc)
    }

    fn from_accum(ring: &Ring, nvars: usize, acc: Accum) -> Poly {
        Poly {
            ring: ring.clone(),
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect(),
        }
    }

    pub fn parse(text: &str, ring: &Ring, nvars: usize) -> Result<Poly> {
        parse::parse(text, ring, nvars)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(&Monomial::one(self.nvars))
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    /// Checked sum.
    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    /// Checked product.
    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    let s = self.ring.add(v, c);
                    if self.ring.is_zero(&s) {
                        terms.remove(m);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &Elem) -> Poly {
        let r = &self.ring;
        Poly {
            ring: r.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), r.mul(a, c)))
                .filter(|(_, c)| !r.is_zero(c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, a: &Elem) -> Poly {
        let r = &self.ring;
        Poly {
            ring: r.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), r.mul(a, c)))
                .filter(|(_, c)| !r.is_zero(c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut acc: Accum = FxHashMap::default();
        acc.reserve(self.nterms() * other.nterms());
        mul_into(&self.ring, &mut acc, self, other, None);
        Poly::from_accum(&self.ring, self.nvars, acc)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f(images[0], ..., images[n-1])`; the result lives in the images' variable count.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let m = first.nvars;
        for g in images {
            if g.ring != self.ring {
                return Err(Error::RingMismatch(self.ring.to_string(), g.ring.to_string()));
            }
            if g.nvars != m {
                return Err(Error::ArityMismatch { expected: m, got: g.nvars });
            }
        }
        Ok(self.substitute_unchecked(images))
    }

    pub(crate) fn substitute_unchecked(&self, images: &[Poly]) -> Poly {
        let ring = &self.ring;
        let m = images.first().map_or(self.nvars, |g| g.nvars);
        let mut cache = PowerCache::new(images);
        let mut acc: Accum = FxHashMap::default();
        for (mono, c) in &self.terms {
            let mut prod: Option<Poly> = None;
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.get(i, e);
                prod = Some(match prod {
                    None => p.clone(),
                    Some(q) => q.mul(p),
                });
            }
            match prod {
                None => add_into(ring, &mut acc, Monomial::one(m), c.clone()),
                Some(q) => {
                    for (t, d) in &q.terms {
                        add_into(ring, &mut acc, t.clone(), ring.mul(c, d));
                    }
                }
            }
        }
        Poly::from_accum(ring, m, acc)
    }

    /// Embeds into `m >= nvars` variables (new variables unused).
    pub fn embed(&self, m: usize) -> Poly {
        assert!(m >= self.nvars);
        Poly {
            ring: self.ring.clone(),
            nvars: m,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    let mut e = t.0.clone();
                    e.resize(m, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables that must not occur.
    pub fn restrict(&self, m: usize) -> Result<Poly> {
        if self.terms.keys().any(|t| t.0[m..].iter().any(|&e| e > 0)) {
            return Err(Error::VariableSupport(format!(
                "{self} uses variables beyond x{m}"
            )));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            nvars: m,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (Monomial(SmallVec::from_slice(&t.0[..m])), c.clone()))
                .collect(),
        })
    }

    /// Whether variable `i` occurs.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|t| t.0[i] > 0)
    }

    pub fn deg_var(&self, i: usize) -> Degree {
        self.terms
            .keys()
            .map(|t| t.0[i])
            .max()
            .map_or(Degree::Zero, Degree::Finite)
    }

    pub fn total_deg(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::Zero, Degree::Finite)
    }

    /// Degree in `x_i` after removing the largest p-power dividing all its exponents.
    pub fn sep_deg_var(&self, i: usize) -> Result<Degree> {
        let p = self.ring.char_zero_or_prime().map_err(|_| {
            Error::Unsupported(format!(
                "separable degree in characteristic {}",
                self.ring.characteristic()
            ))
        })?;
        Ok(sep_deg(self.terms.keys().map(|t| t.0[i]), p))
    }

    pub fn is_affine(&self) -> bool {
        self.total_deg() <= Degree::Finite(1)
    }

    /// Terms of total degree at most one.
    pub fn affine_part(&self) -> Poly {
        self.filter_terms(|t| t.degree() <= 1)
    }

    /// Terms of total degree at least two.
    pub fn nonaffine_part(&self) -> Poly {
        self.filter_terms(|t| t.degree() >= 2)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| keep(t))
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x_i` (degree-one part).
    pub fn linear_coeff(&self, i: usize) -> Elem {
        self.coeff(&Monomial::var(self.nvars, i))
    }

    pub fn weighted_deg(&self, w: &[i64]) -> Result<i64> {
        self.terms
            .keys()
            .map(|t| weight(t, w))
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Sum of the terms of maximal weighted degree.
    pub fn top_w_part(&self, w: &[i64]) -> Result<Poly> {
        let d = self.weighted_deg(w)?;
        Ok(self.filter_terms(|t| weight(t, w) == d))
    }

    /// Applies a coefficient map into another ring (e.g. a quotient).
    pub fn map_coeffs(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Poly {
        Poly {
            ring: target.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), f(c)))
                .filter(|(_, c)| !target.is_zero(c))
                .collect(),
        }
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        let n = self.nvars;
        Poly {
            ring: self.ring.clone(),
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    let mut e: SmallVec<[u32; 4]> = SmallVec::from_elem(0, n);
                    for (i, &x) in t.0.iter().enumerate() {
                        e[perm[i]] = x;
                    }
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }
}

/// Separable degree of a univariate exponent set in characteristic `p`.
pub fn sep_deg(exps: impl Iterator<Item = u32>, p: u64) -> Degree {
    let mut max = None;
    let mut min_val: Option<u32> = None;
    for e in exps {
        max = Some(max.map_or(e, |m: u32| m.max(e)));
        if p != 0 && e > 0 {
            let v = nt::valuation(e as u64, p).unwrap();
            min_val = Some(min_val.map_or(v, |m| m.min(v)));
        }
    }
    match max {
        None => Degree::Zero,
        Some(d) => {
            let div = min_val.map_or(1, |v| p.pow(v)) as u32;
            Degree::Finite(d / div)
        }
    }
}

fn weight(t: &Monomial, w: &[i64]) -> i64 {
    t.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
}

fn add_into(ring: &Ring, acc: &mut Accum, m: Monomial, c: Elem) {
    match acc.get_mut(&m) {
        Some(v) => *v = ring.add(v, &c),
        None => {
            acc.insert(m, c);
        }
    }
}

fn mul_into(ring: &Ring, acc: &mut Accum, a: &Poly, b: &Poly, scale: Option<&Elem>) {
    for (ma, ca) in &a.terms {
        let ca = match scale {
            Some(s) => ring.mul(s, ca),
            None => ca.clone(),
        };
        for (mb, cb) in &b.terms {
            add_into(ring, acc, ma.mul(mb), ring.mul(&ca, cb));
        }
    }
}

struct PowerCache<'a> {
    images: &'a [Poly],
    powers: Vec<Vec<Poly>>,
}

impl<'a> PowerCache<'a> {
    fn new(images: &'a [Poly]) -> Self {
        PowerCache {
            images,
            powers: vec![Vec::new(); images.len()],
        }
    }

    /// `images[i]^e` for `e >= 1`.
    fn get(&mut self, i: usize, e: u32) -> &Poly {
        let list = &mut self.powers[i];
        if list.is_empty() {
            list.push(self.images[i].clone());
        }
        while list.len() < e as usize {
            let next = list.last().unwrap().mul(&self.images[i]);
            list.push(next);
        }
        &list[e as usize - 1]
    }
}

/// Substitutes the same images into several polynomials in parallel.
pub fn substitute_all(polys: &[Poly], images: &[Poly]) -> Result<Vec<Poly>> {
    polys.par_iter().map(|f| f.substitute(images)).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let r = &self.ring;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = r.is_negative(c);
            let abs = if neg { r.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{}", r.format(&abs))?;
            } else {
                if !r.is_one(&abs) {
                    write!(f, "{}*", r.format(&abs))?;
                }
                m.fmt_vars(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: &Ring, n: usize) -> Poly {
        Poly::parse(s, r, n).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let q = Ring::rationals();
        let a = p("x1 + x2", &q, 2);
        let b = p("x1 - x2", &q, 2);
        assert_eq!(a.mul(&b), p("x1^2 - x2^2", &q, 2));
        let f2 = Ring::fp(2).unwrap();
        let s = p("x1 + x2", &f2, 2);
        assert_eq!(s.mul(&s), p("x1^2 + x2^2", &f2, 2));
        assert!(a.scale(&q.zero()).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let q = Ring::rationals();
        let f = p("x1 + x2^2", &q, 2);
        let swapped = f.substitute(&[p("x2", &q, 2), p("x1", &q, 2)]).unwrap();
        assert_eq!(swapped, p("x2 + x1^2", &q, 2));
        let g = p("x1*x2", &q, 2);
        let shifted = g.substitute(&[p("x1 + 1", &q, 2), p("x2 + 1", &q, 2)]).unwrap();
        assert_eq!(shifted, p("x1*x2 + x1 + x2 + 1", &q, 2));
        let ids = [p("x1", &q, 2), p("x2", &q, 2)];
        assert_eq!(f.substitute(&ids).unwrap(), f);
        assert!(f.substitute(&ids[..1]).is_err());
    }

    #[test]
    fn degree_examples() {
        let q = Ring::rationals();
        let f = p("x1 + x2^3*x1", &q, 2);
        assert_eq!(f.deg_var(1), Degree::Finite(3));
        assert_eq!(p("7", &q, 2).deg_var(0), Degree::Finite(0));
        assert_eq!(p("x1^2*x3^4", &q, 3).total_deg(), Degree::Finite(6));
        assert_eq!(Poly::zero(&q, 2).deg_var(0), Degree::Zero);
    }

    #[test]
    fn separable_degree_examples() {
        let f3 = Ring::fp(3).unwrap();
        assert_eq!(p("x1^9 + x1^3", &f3, 1).sep_deg_var(0).unwrap(), Degree::Finite(3));
        assert_eq!(p("x1^4 + x1", &f3, 1).sep_deg_var(0).unwrap(), Degree::Finite(4));
        let q = Ring::rationals();
        assert_eq!(p("x1^2", &q, 1).sep_deg_var(0).unwrap(), Degree::Finite(2));
        let z6 = Ring::zmod(6).unwrap();
        assert!(matches!(p("x1", &z6, 1).sep_deg_var(0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn weighted_top_parts() {
        let q = Ring::rationals();
        let f = p("x1 - x3^2", &q, 3);
        assert_eq!(f.weighted_deg(&[2, 0, 1]).unwrap(), 2);
        assert_eq!(f.top_w_part(&[2, 0, 1]).unwrap(), f);
        let h2 = p("x2 - x1^2*(x1 - x3^2)^2", &q, 3);
        assert_eq!(h2.top_w_part(&[1, 0, 0]).unwrap(), p("-x1^4", &q, 3));
        assert_eq!(h2.top_w_part(&[0, 0, 1]).unwrap(), p("-x1^2*x3^4", &q, 3));
        assert_eq!(Poly::zero(&q, 3).weighted_deg(&[1, 1, 1]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn printing_and_parsing() {
        let f5 = Ring::fp(5).unwrap();
        let f = p("x1^2*x2 + 3", &f5, 2);
        assert_eq!(f.nterms(), 2);
        assert_eq!(f.to_string(), "x1^2*x2 + 3");
        assert!(Poly::parse("x4", &f5, 3).is_err());
        let q = Ring::rationals();
        let g = p("-1/2*x1*x2 + x2^2 - 3*x1 - 1", &q, 2);
        assert_eq!(g.to_string(), "-1/2*x1*x2 + x2^2 - 3*x1 - 1");
        let f9 = Ring::gf(3, 2).unwrap();
        let h = p("[0,1]*x1 + [1,1]", &f9, 1);
        assert_eq!(h.to_string(), "[0,1]*x1 + [1,1]");
        assert_eq!(p(&h.to_string(), &f9, 1), h);
    }
}
