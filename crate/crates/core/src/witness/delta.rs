//! Difference operators `delta_i = eta_i - id` with `eta_i(x_i) = x_i + a_i`,
//! the modules `M_l` and the route they give to a seed decomposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::endo::{AffineMap, Endo};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::{Elem, Ring};

use super::MphiDecomposition;

/// Exponent vector `l` and shifts `a` of `delta^l = prod_i delta_i^{l_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSpec {
    pub l: Vec<u32>,
    pub a: Vec<Elem>,
}

impl DeltaSpec {
    pub fn new(ring: &Ring, l: Vec<u32>, a: Vec<Elem>) -> Result<DeltaSpec> {
        let p = prime_char(ring)?;
        if l.len() != a.len() {
            return Err(Error::ArityMismatch { expected: l.len(), got: a.len() });
        }
        if let Some(&x) = l.iter().find(|&&x| x as u64 >= p) {
            return Err(Error::Precondition(format!("exponent {x} is at least p = {p}")));
        }
        if let Some(x) = a.iter().find(|x| !ring.is_unit(x)) {
            return Err(Error::NotAUnit(ring.format(x)));
        }
        Ok(DeltaSpec { l, a })
    }

    /// All shifts equal to one.
    pub fn unit_shifts(ring: &Ring, l: Vec<u32>) -> Result<DeltaSpec> {
        let a = vec![ring.one(); l.len()];
        DeltaSpec::new(ring, l, a)
    }
}

fn prime_char(ring: &Ring) -> Result<u64> {
    let p = ring.characteristic();
    if p == 0 || !crate::ring::nt::is_prime(p) {
        return Err(Error::Precondition(format!(
            "difference operators need prime characteristic, {ring} has {p}"
        )));
    }
    Ok(p)
}

fn shift(ring: &Ring, n: usize, i: usize, a: &Elem) -> AffineMap {
    let mut b = vec![ring.zero(); n];
    b[i] = a.clone();
    AffineMap::translation(ring, b)
}

/// `delta_i(f) = f(x_i + a) - f`.
pub fn delta_apply(f: &Poly, i: usize, a: &Elem) -> Poly {
    shift(f.ring(), f.nvars(), i, a).apply(f).sub(f)
}

/// `delta^l(f)`.
pub fn delta_power(f: &Poly, spec: &DeltaSpec) -> Poly {
    let mut g = f.clone();
    for (i, (&li, a)) in spec.l.iter().zip(&spec.a).enumerate() {
        for _ in 0..li {
            g = delta_apply(&g, i, a);
        }
    }
    g
}

/// `delta^l` applied to a decomposition, expanded into translates:
/// `delta_i^l = sum_k C(l, k) (-1)^(l-k) eta_i^k`.
pub fn delta_decomposition(dec: &MphiDecomposition, spec: &DeltaSpec) -> Result<MphiDecomposition> {
    let r = dec.ring.clone();
    let mut cur = dec.clone();
    for (i, (&li, a)) in spec.l.iter().zip(&spec.a).enumerate() {
        if li == 0 {
            continue;
        }
        let mut parts = Vec::new();
        let mut shift_by = r.zero();
        for k in 0..=li {
            let c = r.from_bigint(&binomial(BigInt::from(li), BigInt::from(k)));
            let c = if (li - k) % 2 == 1 { r.neg(&c) } else { c };
            parts.push((c, cur.apply_affine(&shift(&r, dec.n, i, &shift_by))));
            shift_by = r.add(&shift_by, a);
        }
        cur = MphiDecomposition::linear_combine(&parts)?;
    }
    Ok(cur)
}

/// Coordinates of `f` over `B = R[q_1, .., q_n]`, `q_i = x_i^p - a_i^(p-1) x_i`,
/// in the basis `x^r` with `r_i < p`: a map `(r, k) -> coefficient of q^k x^r`.
fn b_coordinates(f: &Poly, spec: &DeltaSpec, p: u64) -> BTreeMap<(Vec<u32>, Vec<u32>), Elem> {
    let r = f.ring();
    let n = f.nvars();
    let p32 = p as u32;
    let cs: Vec<Elem> = spec.a.iter().map(|a| r.pow(a, p - 1)).collect();
    // rep[i][t] = list of (k, r, coeff) with x_i^t = sum coeff q_i^k x_i^r
    let mut reps: Vec<Vec<Vec<(u32, u32, Elem)>>> = vec![Vec::new(); n];
    let max_t: Vec<u32> = (0..n).map(|i| f.deg_var(i).finite().unwrap_or(0)).collect();
    for i in 0..n {
        for t in 0..=max_t[i] {
            let entry = if t < p32 {
                vec![(0, t, r.one())]
            } else {
                let mut acc: BTreeMap<(u32, u32), Elem> = BTreeMap::new();
                for (k, rr, c) in &reps[i][(t - p32) as usize] {
                    let e = acc.entry((k + 1, *rr)).or_insert_with(|| r.zero());
                    *e = r.add(e, c);
                }
                for (k, rr, c) in &reps[i][(t - p32 + 1) as usize] {
                    let e = acc.entry((*k, *rr)).or_insert_with(|| r.zero());
                    *e = r.add(e, &r.mul(c, &cs[i]));
                }
                acc.into_iter()
                    .filter(|(_, c)| !r.is_zero(c))
                    .map(|((k, rr), c)| (k, rr, c))
                    .collect()
            };
            reps[i].push(entry);
        }
    }
    let mut out: BTreeMap<(Vec<u32>, Vec<u32>), Elem> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut partial: Vec<(Vec<u32>, Vec<u32>, Elem)> = vec![(Vec::new(), Vec::new(), c.clone())];
        for (i, &t) in m.exps().iter().enumerate() {
            let mut next = Vec::new();
            for (rv, kv, cv) in &partial {
                for (k, rr, c2) in &reps[i][t as usize] {
                    // only components with r >= l matter for membership
                    if *rr < spec.l[i] {
                        continue;
                    }
                    let mut rv2 = rv.clone();
                    rv2.push(*rr);
                    let mut kv2 = kv.clone();
                    kv2.push(*k);
                    next.push((rv2, kv2, r.mul(cv, c2)));
                }
            }
            partial = next;
        }
        for (rv, kv, cv) in partial {
            let e = out.entry((rv, kv)).or_insert_with(|| r.zero());
            *e = r.add(e, &cv);
        }
    }
    out.retain(|_, c| !r.is_zero(c));
    out
}

/// Membership in `M_l = sum_{i=0}^n R x_i x^l + sum_i sum_{j < l_i} A_i x_i^j`
/// with `x_0 = 1` and `A_i = ker delta_i`.
///
/// Over `B` the sum of the `A_i x_i^j` is spanned by the basis elements `x^r`
/// with some `r_i < l_i`; what remains must be an `R`-combination of `x^l`
/// and the `x_i x^l` with `l_i + 1 < p`.
pub fn ml_membership(f: &Poly, spec: &DeltaSpec) -> Result<bool> {
    let p = prime_char(f.ring())?;
    if spec.l.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), got: spec.l.len() });
    }
    let coords = b_coordinates(f, spec, p);
    for (rv, kv) in coords.keys() {
        if kv.iter().any(|&k| k > 0) {
            return Ok(false);
        }
        let diff: Vec<u32> = rv.iter().zip(&spec.l).map(|(r, l)| r - l).collect();
        let total: u32 = diff.iter().sum();
        if total > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which seed-shaped monomial `m` the route aims at (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaShape {
    /// `m = x_a x_b`, `a != b`.
    Product(usize, usize),
    /// `m = x_a^2`.
    Square(usize),
}

impl DeltaShape {
    pub fn monomial(self, n: usize) -> Monomial {
        let mut e = vec![0u32; n];
        match self {
            DeltaShape::Product(a, b) => {
                e[a] += 1;
                e[b] += 1;
            }
            DeltaShape::Square(a) => e[a] += 2,
        }
        Monomial::from_exps(&e)
    }
}

/// If `phi(x_j)` lies in `R^* m x^l + M_l`, returns a decomposition of `m`
/// obtained from `delta^l(phi(x_j))`.
pub fn delta_route(
    phi: &Endo,
    j: usize,
    spec: &DeltaSpec,
    shape: DeltaShape,
) -> Result<MphiDecomposition> {
    let r = phi.ring();
    let p = prime_char(r)?;
    let n = phi.n();
    if spec.l.len() != n || j >= n {
        return Err(Error::ArityMismatch { expected: n, got: spec.l.len() });
    }
    let l = &spec.l;
    match shape {
        DeltaShape::Product(a, b) => {
            if a == b || a >= n || b >= n || l[a] as u64 > p - 2 || l[b] as u64 > p - 2 {
                return Err(Error::Precondition(format!(
                    "product shape needs l_a, l_b <= p - 2, got l = {l:?}"
                )));
            }
        }
        DeltaShape::Square(a) => {
            if p < 3 || a >= n || l[a] as u64 > p - 3 {
                return Err(Error::Precondition(format!(
                    "square shape needs p >= 3 and l_a <= p - 3, got l = {l:?}"
                )));
            }
        }
    }
    if phi.is_affine() {
        return Err(Error::NoRoute("affine map".into()));
    }
    let m = shape.monomial(n);
    let lead = m.mul(&Monomial::from_exps(l));
    let g = phi.image(j);
    let u = g.coeff(&lead);
    if !r.is_unit(&u) {
        return Err(Error::NoRoute(format!("coefficient of the leading pattern term in phi(x{}) is not a unit", j + 1)));
    }
    let rest = g.sub(&Poly::term(r, lead, u));
    if !ml_membership(&rest, spec)? {
        return Err(Error::NoRoute(format!("phi(x{}) minus the pattern term is not in M_l", j + 1)));
    }
    let dec = delta_decomposition(&MphiDecomposition::basic(phi, j), spec)?;
    let nonaff = dec.target.nonaffine_part();
    let v = nonaff.coeff(&m);
    if nonaff != Poly::term(r, m.clone(), v.clone()) || !r.is_unit(&v) {
        return Err(Error::Invalid(format!("difference image {} has unexpected shape", dec.target)));
    }
    let aff = dec.target.affine_part();
    Ok(dec.add_affine(&aff.neg())?.scale(&r.inv(&v)?))
}

/// Searches `j`, `l` and the shape among the monomials of the images.
pub fn find_delta_route(phi: &Endo) -> Option<(usize, DeltaSpec, DeltaShape, MphiDecomposition)> {
    let r = phi.ring();
    let p = prime_char(r).ok()?;
    if phi.is_affine() {
        return None;
    }
    let n = phi.n();
    let mut tries: Vec<(usize, Vec<u32>, DeltaShape)> = Vec::new();
    for j in 0..n {
        for (t, c) in phi.image(j).terms().rev() {
            if !r.is_unit(c) || t.degree() < 2 {
                continue;
            }
            let e = t.exps();
            for a in 0..n {
                for b in a + 1..n {
                    if e[a] >= 1 && e[b] >= 1 {
                        let mut l = e.to_vec();
                        l[a] -= 1;
                        l[b] -= 1;
                        tries.push((j, l, DeltaShape::Product(a, b)));
                    }
                }
            }
            if p >= 3 {
                for a in 0..n {
                    if e[a] >= 2 {
                        let mut l = e.to_vec();
                        l[a] -= 2;
                        tries.push((j, l, DeltaShape::Square(a)));
                    }
                }
            }
        }
    }
    tries.sort_by_key(|(_, _, s)| matches!(s, DeltaShape::Square(_)));
    for (j, l, shape) in tries {
        if l.iter().any(|&x| x as u64 >= p) {
            continue;
        }
        let Ok(spec) = DeltaSpec::unit_shifts(r, l) else { continue };
        if let Ok(dec) = delta_route(phi, j, &spec, shape) {
            return Some((j, spec, shape, dec));
        }
    }
    None
}
