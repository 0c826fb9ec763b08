//! Good monomials, the ideals `I_phi` and `J_phi`, the degree condition,
//! monomial-pattern modules and the decision procedure.

mod decide;
mod pattern;

use std::fmt;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endo::{Endo, IdealHandle};
use crate::error::{Error, Result};
use crate::poly::{Degree, Monomial, Poly};
use crate::ring::{Elem, KSize, Ring, RingSpec};

pub use decide::{decide, DecideOptions, NegativeReason, Route, SeedCase, Verdict, VerdictAnswer};
pub use pattern::{ngg_membership, ngg_pattern, ModulePattern};

/// Which case of the good-monomial definition applies (first match in order I..V).
/// Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodType {
    /// `p = 0`, total degree at least two.
    I,
    /// Two exponents congruent to 1 mod p.
    II(usize, usize),
    /// An exponent not congruent to 0 or 1 mod p, `p >= 3`.
    III(usize),
    /// `n = p = 2`, `t_i = 1` and `t_j = 2` mod 4.
    IV(usize, usize),
    /// `n = p = 2`, `t_i = 3` mod 4.
    V(usize),
    NotGood,
}

impl GoodType {
    pub fn is_good(self) -> bool {
        self != GoodType::NotGood
    }

    pub fn tag(self) -> &'static str {
        match self {
            GoodType::I => "I",
            GoodType::II(..) => "II",
            GoodType::III(_) => "III",
            GoodType::IV(..) => "IV",
            GoodType::V(_) => "V",
            GoodType::NotGood => "not-good",
        }
    }
}

impl fmt::Display for GoodType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn check_char(p: u64) -> Result<()> {
    if p == 0 || crate::ring::nt::is_prime(p) {
        Ok(())
    } else {
        Err(Error::CompositeCharacteristic(p))
    }
}

/// Classifies the exponent vector `t` of a monomial in `n` variables over characteristic `p`.
pub fn good_monomial_type(t: &[u32], n: usize, p: u64) -> Result<GoodType> {
    check_char(p)?;
    let r = |x: u32| x as u64 % p.max(1);
    if p == 0 {
        let deg: u64 = t.iter().map(|&x| x as u64).sum();
        return Ok(if deg >= 2 { GoodType::I } else { GoodType::NotGood });
    }
    let ones: Vec<usize> = (0..t.len()).filter(|&i| r(t[i]) == 1 % p).collect();
    if ones.len() >= 2 {
        return Ok(GoodType::II(ones[0], ones[1]));
    }
    if p >= 3 {
        if let Some(i) = (0..t.len()).find(|&i| r(t[i]) > 1) {
            return Ok(GoodType::III(i));
        }
    }
    if n == 2 && p == 2 {
        for i in 0..2 {
            let j = 1 - i;
            if t[i] % 4 == 1 && t[j] % 4 == 2 {
                return Ok(GoodType::IV(i, j));
            }
        }
        if let Some(i) = (0..2).find(|&i| t[i] % 4 == 3) {
            return Ok(GoodType::V(i));
        }
    }
    Ok(GoodType::NotGood)
}

/// Good monomials of `f` with their coefficients and types, in descending term order.
pub fn good_terms(f: &Poly) -> Result<Vec<(Monomial, Elem, GoodType)>> {
    let p = f.ring().characteristic();
    let n = f.nvars();
    let mut out = Vec::new();
    for (m, c) in f.terms().rev() {
        let ty = good_monomial_type(m.exps(), n, p)?;
        if ty.is_good() {
            out.push((m.clone(), c.clone(), ty));
        }
    }
    Ok(out)
}

/// `C_f`: the distinct coefficients of good monomials of `f`.
pub fn good_coefficients(f: &Poly) -> Result<Vec<Elem>> {
    let mut out: Vec<Elem> = Vec::new();
    for (_, c, _) in good_terms(f)? {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// `I_phi`, generated by the good coefficients of all images.
pub fn ideal_i_phi(phi: &Endo) -> Result<IdealHandle> {
    let mut gens: Vec<Elem> = Vec::new();
    for g in phi.images() {
        for c in good_coefficients(g)? {
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    Ok(IdealHandle::new(phi.ring(), gens))
}

/// Separable degree in every variable at most `#k - 2`; vacuous for infinite `k`.
pub fn degree_condition(f: &Poly, k: KSize) -> Result<bool> {
    let KSize::Finite(q) = k else {
        return Ok(true);
    };
    let bound = q as i64 - 2;
    for i in 0..f.nvars() {
        if let Degree::Finite(d) = f.sep_deg_var(i)? {
            if d as i64 > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Base-field size for `ring`: the ring itself by default, or a caller-supplied
/// subfield order.
pub fn resolve_ksize(ring: &Ring, given: Option<KSize>) -> Result<KSize> {
    let own = ring
        .self_ksize()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not an algebra over a field")))?;
    match (given, own) {
        (None, _) => Ok(own),
        (Some(KSize::Infinite), KSize::Infinite) => Ok(own),
        (Some(KSize::Finite(q)), KSize::Finite(_)) => {
            ring.subfield_elements(q)?;
            Ok(KSize::Finite(q))
        }
        (Some(KSize::Finite(q)), KSize::Infinite) => Err(Error::Invalid(format!(
            "{ring} contains no field of order {q}"
        ))),
        (Some(KSize::Infinite), KSize::Finite(_)) => {
            Err(Error::Invalid(format!("{ring} contains no infinite field")))
        }
    }
}

/// Elements of the base field `k` (units only), in a fixed order.
pub fn base_field_units(ring: &Ring, k: KSize, needed: usize) -> Result<Vec<Elem>> {
    match k {
        KSize::Infinite => Ok((1..=needed as i64).map(|i| ring.from_i64(i)).collect()),
        KSize::Finite(q) => {
            let units: Vec<Elem> = ring
                .subfield_elements(q)?
                .into_iter()
                .filter(|a| !ring.is_zero(a))
                .collect();
            if units.len() < needed {
                return Err(Error::InsufficientField(format!(
                    "need {needed} distinct units of k, #k = {q}"
                )));
            }
            Ok(units.into_iter().take(needed).collect())
        }
    }
}

/// An element `sum c_i phi(x_i)` of the span, with its degree-one part removed.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub coeffs: Vec<Elem>,
    pub poly: Poly,
    pub good: Vec<(Monomial, Elem, GoodType)>,
}

/// Outcome of the `J_phi` candidate search.
#[derive(Clone, Debug)]
pub struct JSearch {
    /// Subideal of `J_phi` generated by the candidates found.
    pub ideal: IdealHandle,
    pub certified_full: bool,
    pub examined: usize,
    pub budget: usize,
    /// Candidates satisfying the degree condition that contain good monomials.
    pub contributing: Vec<Candidate>,
}

/// Span element `sum c_i phi(x_i)` minus its linear part.
pub fn span_element(phi: &Endo, coeffs: &[Elem]) -> Poly {
    let r = phi.ring();
    let n = phi.n();
    let mut f = Poly::zero(r, n);
    for (c, g) in coeffs.iter().zip(phi.images()) {
        if !r.is_zero(c) {
            f = f.add(&g.scale(c));
        }
    }
    f.filter_terms(|m| m.degree() != 1)
}

fn unit_vectors(r: &Ring, n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

/// Deterministic candidate coefficient vectors beyond the unit vectors.
fn more_coefficient_vectors(r: &Ring, n: usize, budget: usize, seed: u64) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let small: Vec<Elem> = match r.elements() {
        Ok(all) if (all.len() as f64).powi(n as i32) <= budget as f64 => all,
        Ok(_) => Vec::new(),
        Err(_) => [0, 1, -1, 2].iter().map(|&i| r.from_i64(i)).collect(),
    };
    if !small.is_empty() {
        let mut idx = vec![0usize; n];
        'outer: loop {
            let v: Vec<Elem> = idx.iter().map(|&i| small[i].clone()).collect();
            let nonzero = v.iter().filter(|c| !r.is_zero(c)).count();
            if nonzero >= 2 {
                out.push(v);
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < small.len() {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < budget {
        let v: Vec<Elem> = (0..n)
            .map(|_| match r.order() {
                Some(q) => Elem::Fin(rng.gen_range(0..q)),
                None => r.from_i64(rng.gen_range(-3..=3)),
            })
            .collect();
        if v.iter().any(|c| !r.is_zero(c)) {
            out.push(v);
        }
        if r.order().is_some_and(|q| (q as f64).powi(n as i32) <= out.len() as f64) {
            break;
        }
    }
    out.truncate(budget);
    out
}

/// Searches span elements for good coefficients under the degree condition.
///
/// The returned ideal is contained in `J_phi`; `certified_full` is one-sided.
pub fn ideal_j_phi(phi: &Endo, k: KSize, budget: usize, seed: u64) -> Result<JSearch> {
    let r = phi.ring();
    check_char(r.characteristic())?;
    let n = phi.n();
    let mut gens: Vec<Elem> = Vec::new();
    let mut contributing = Vec::new();
    let mut examined = 0;
    let mut full = false;
    let mut consider = |coeffs: Vec<Elem>, gens: &mut Vec<Elem>| -> Result<bool> {
        let poly = span_element(phi, &coeffs);
        if !degree_condition(&poly, k)? {
            return Ok(false);
        }
        let good = good_terms(&poly)?;
        if good.is_empty() {
            return Ok(false);
        }
        for (_, c, _) in &good {
            if !gens.contains(c) {
                gens.push(c.clone());
            }
        }
        contributing.push(Candidate { coeffs, poly, good });
        Ok(true)
    };
    for v in unit_vectors(r, n) {
        examined += 1;
        if consider(v, &mut gens)? {
            full = IdealHandle::new(r, gens.clone()).is_full();
        }
    }
    if !full && !phi.is_affine() {
        for v in more_coefficient_vectors(r, n, budget, seed) {
            examined += 1;
            if consider(v, &mut gens)? && IdealHandle::new(r, gens.clone()).is_full() {
                full = true;
                break;
            }
        }
    }
    Ok(JSearch {
        ideal: IdealHandle::new(r, gens),
        certified_full: full,
        examined,
        budget,
        contributing,
    })
}

/// Whether `R` is one of the rings for which the decision procedure is defined.
pub fn supported_ring(ring: &Ring) -> bool {
    !matches!(ring.spec(), RingSpec::ExtensionField { .. }) || ring.is_field()
}
