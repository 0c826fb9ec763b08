use crate::endo::{Endo, IdealHandle};
use crate::error::{Error, Result};
use crate::ring::nt::{is_prime, prime_divisors};
use crate::ring::{Elem, KSize, Ring, RingSpec};
use crate::witness::{find_seed, SearchOptions, SeedCertificate, SeedRoute};

pub use crate::witness::SeedCase;

use super::{ideal_i_phi, ideal_j_phi, ngg_membership, resolve_ksize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictAnswer {
    StablyCotame,
    NotStablyCotame,
    Unknown,
}

impl VerdictAnswer {
    pub fn tag(self) -> &'static str {
        match self {
            VerdictAnswer::StablyCotame => "stably-cotame",
            VerdictAnswer::NotStablyCotame => "not-stably-cotame",
            VerdictAnswer::Unknown => "unknown",
        }
    }
}

/// Why a map is not stably co-tame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NegativeReason {
    Affine,
    /// No good monomial appears in any image.
    Ngg,
    /// The ideal generated by good coefficients is proper.
    IphiProper(Vec<Elem>),
    /// The reduction modulo `(q)` has no good monomial.
    Reduction { modulus: u64, quotient: Ring },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Negative(NegativeReason),
    Positive(SeedRoute),
    Undecided,
}

impl Route {
    pub fn tag(&self) -> &'static str {
        match self {
            Route::Negative(NegativeReason::Affine) => "affine",
            Route::Negative(NegativeReason::Ngg) => "ngg",
            Route::Negative(NegativeReason::IphiProper(_)) => "i-phi-proper",
            Route::Negative(NegativeReason::Reduction { .. }) => "reduction",
            Route::Positive(r) => r.tag(),
            Route::Undecided => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: VerdictAnswer,
    pub route: Route,
    /// Seed decomposition backing a positive answer; revalidated before return.
    pub certificate: Option<SeedCertificate>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Base field size; defaults to the ring itself for fields.
    pub k: Option<KSize>,
    /// Number of span elements tried beyond `phi(x_1), .., phi(x_n)`.
    pub budget: usize,
    pub seed: u64,
    /// Largest prime tried for reductions of integer maps.
    pub max_reduction_prime: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            k: None,
            budget: 256,
            seed: 0,
            max_reduction_prime: 50,
        }
    }
}

fn negative(reason: NegativeReason, diagnostics: Vec<String>) -> Verdict {
    Verdict {
        answer: VerdictAnswer::NotStablyCotame,
        route: Route::Negative(reason),
        certificate: None,
        diagnostics,
    }
}

/// Reductions modulo primes `q` with `phi mod q` free of good monomials.
fn reduction_witness(phi: &Endo, primes: &[u64], diag: &mut Vec<String>) -> Result<Option<NegativeReason>> {
    let r = phi.ring();
    for &q in primes {
        let ideal = IdealHandle::new(r, vec![r.from_i64(q as i64)]);
        if ideal.is_full() {
            continue;
        }
        let red = phi.reduce_mod(&ideal)?;
        let quotient = red.ring().clone();
        if ngg_membership(&red)? {
            return Ok(Some(NegativeReason::Reduction { modulus: q, quotient }));
        }
        diag.push(format!("modulo {q}: a good monomial survives"));
    }
    Ok(None)
}

/// Decides whether `phi` is stably co-tame where one of the implemented
/// criteria applies, and returns `Unknown` with diagnostics otherwise.
pub fn decide(phi: &Endo, opts: &DecideOptions) -> Result<Verdict> {
    let r = phi.ring().clone();
    if phi.n() < 2 {
        return Err(Error::Precondition("need at least two variables".into()));
    }
    let mut diag = Vec::new();
    if phi.is_affine() {
        return Ok(negative(NegativeReason::Affine, diag));
    }
    let p = r.characteristic();
    let composite = p != 0 && !is_prime(p);
    if composite {
        diag.push(format!("characteristic {p} is composite; trying reductions modulo its prime divisors"));
        if let Some(reason) = reduction_witness(phi, &prime_divisors(p), &mut diag)? {
            return Ok(negative(reason, diag));
        }
    } else {
        if ngg_membership(phi)? {
            return Ok(negative(NegativeReason::Ngg, diag));
        }
        let i_phi = ideal_i_phi(phi)?;
        if !i_phi.is_full() {
            return Ok(negative(NegativeReason::IphiProper(i_phi.generators), diag));
        }
        if matches!(r.spec(), RingSpec::Integers) {
            let primes: Vec<u64> = (2..=opts.max_reduction_prime).filter(|&q| is_prime(q)).collect();
            if let Some(reason) = reduction_witness(phi, &primes, &mut diag)? {
                return Ok(negative(reason, diag));
            }
        }
    }
    let k = if r.is_field() { Some(resolve_ksize(&r, opts.k)?) } else { None };
    if let Some(k) = k {
        let js = ideal_j_phi(phi, k, opts.budget, opts.seed)?;
        diag.push(format!(
            "span search over k of size {k}: {} of {} candidates examined, J certified full: {}",
            js.examined,
            js.budget + phi.n(),
            js.certified_full
        ));
    }
    let search = SearchOptions {
        k,
        budget: opts.budget,
        seed: opts.seed,
    };
    match find_seed(phi, &search)? {
        Some(cert) => {
            if !cert.dec.validate(phi)? {
                return Err(Error::Invalid("seed decomposition failed revalidation".into()));
            }
            Ok(Verdict {
                answer: VerdictAnswer::StablyCotame,
                route: Route::Positive(cert.route.clone()),
                certificate: Some(cert),
                diagnostics: diag,
            })
        }
        None => {
            diag.push("no seed decomposition found by the span, direct or difference routes".into());
            Ok(Verdict {
                answer: VerdictAnswer::Unknown,
                route: Route::Undecided,
                certificate: None,
                diagnostics: diag,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn eps(r: &Ring, f: &str) -> Endo {
        Endo::elementary(&Poly::parse(f, r, 3).unwrap()).unwrap()
    }

    fn answer(phi: &Endo) -> VerdictAnswer {
        decide(phi, &DecideOptions::default()).unwrap().answer
    }

    #[test]
    fn square_over_f2_and_q() {
        let f2 = Ring::fp(2).unwrap();
        let v = decide(&eps(&f2, "x2^2"), &DecideOptions::default()).unwrap();
        assert_eq!(v.answer, VerdictAnswer::NotStablyCotame);
        assert_eq!(v.route, Route::Negative(NegativeReason::Ngg));
        let q = Ring::rationals();
        let v = decide(&eps(&q, "x2^2"), &DecideOptions::default()).unwrap();
        assert_eq!(v.answer, VerdictAnswer::StablyCotame);
        assert!(v.certificate.unwrap().dec.validate(&eps(&q, "x2^2")).unwrap());
    }

    #[test]
    fn fifth_power_depends_on_field() {
        let f3 = Ring::fp(3).unwrap();
        assert_eq!(answer(&eps(&f3, "x2^5")), VerdictAnswer::Unknown);
        let f9 = Ring::gf(3, 2).unwrap();
        assert_eq!(answer(&eps(&f9, "x2^5")), VerdictAnswer::StablyCotame);
        // restricting k to the prime field loses the degree condition
        let opts = DecideOptions { k: Some(KSize::Finite(3)), ..Default::default() };
        assert_ne!(decide(&eps(&f9, "x2^5"), &opts).unwrap().route.tag(), "j-full");
    }

    #[test]
    fn integer_and_modular_rings() {
        let z = Ring::integers();
        let v = decide(&eps(&z, "2*x2*x3"), &DecideOptions::default()).unwrap();
        assert_eq!(v.route.tag(), "i-phi-proper");
        let v = decide(&eps(&z, "2*x2*x3 + 3*x2^2"), &DecideOptions::default()).unwrap();
        assert_eq!(v.answer, VerdictAnswer::NotStablyCotame);
        assert_eq!(v.route.tag(), "reduction");
        assert_eq!(answer(&eps(&z, "x2*x3")), VerdictAnswer::StablyCotame);
        let z6 = Ring::zmod(6).unwrap();
        let v = decide(&eps(&z6, "2*x2*x3"), &DecideOptions::default()).unwrap();
        assert_eq!(v.answer, VerdictAnswer::NotStablyCotame);
        assert_eq!(answer(&eps(&z6, "x2*x3")), VerdictAnswer::StablyCotame);
    }

    #[test]
    fn affine_maps_are_negative() {
        let f5 = Ring::fp(5).unwrap();
        let aff = Endo::parse(&f5, &["x2 + 1", "x1", "x3"]).unwrap();
        assert_eq!(decide(&aff, &DecideOptions::default()).unwrap().route.tag(), "affine");
    }
}
