use crate::classify::{ideal_j_phi, GoodType};
use crate::endo::{AffineMap, BoundPhi, Endo, GeneratorWord};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::{Elem, KSize, Ring};

use super::convert::{convert_cube, convert_square, move_to_front, Seed};
use super::delta::{find_delta_route, DeltaShape, DeltaSpec};
use super::{compile_hat_word, vandermonde_extract, MphiDecomposition, TameCompiler};

/// How the seed decomposition was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedRoute {
    /// A single seed-shaped term in some `phi(x_j)` beyond its affine part.
    Direct { index: usize },
    /// A span element satisfying the degree condition with a good monomial.
    JFull { coeffs: Vec<Elem>, monomial: Monomial, good: GoodType, shifted: bool },
    /// Difference operators applied to `phi(x_j)`.
    Delta { index: usize, spec: DeltaSpec, shape: DeltaShape },
}

impl SeedRoute {
    pub fn tag(&self) -> &'static str {
        match self {
            SeedRoute::Direct { .. } => "direct",
            SeedRoute::JFull { .. } => "j-full",
            SeedRoute::Delta { .. } => "delta",
        }
    }
}

/// Which conversion produced the seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedCase {
    /// `x_i x_j` with `i != j`.
    A,
    /// `x_i^2` with 2 a unit.
    B,
    /// `x_i x_j^2`, `n = p = 2`.
    C,
    /// `x_i^3`, `n = p = 2`, with a unit `xi` such that `xi + 1` is a unit.
    D,
}

/// A checked decomposition of the seed polynomial.
#[derive(Clone, Debug)]
pub struct SeedCertificate {
    pub route: SeedRoute,
    pub case: SeedCase,
    pub seed: Seed,
    pub dec: MphiDecomposition,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Base field for the span route; `None` skips it.
    pub k: Option<KSize>,
    pub budget: usize,
    pub seed: u64,
}

/// Seed case and the variables to move to the front for a monomial, if any.
fn seed_shape(m: &Monomial, ring: &Ring) -> Option<(SeedCase, Vec<usize>)> {
    let e = m.exps();
    let n = e.len();
    let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
    let char2 = ring.characteristic() == 2;
    match (m.degree(), support.as_slice()) {
        (2, &[i, j]) => Some((SeedCase::A, vec![i, j])),
        (2, &[i]) if ring.is_unit(&ring.from_i64(2)) => Some((SeedCase::B, vec![i])),
        (3, &[i, j]) if n == 2 && char2 => {
            if e[i] == 1 {
                Some((SeedCase::C, vec![i, j]))
            } else {
                Some((SeedCase::C, vec![j, i]))
            }
        }
        (3, &[i]) if n == 2 && char2 && ring.find_special_unit().is_ok() => {
            Some((SeedCase::D, vec![i]))
        }
        _ => None,
    }
}

/// Turns a decomposition of `u * m` (`u` a unit, `m` seed-shaped) into one of the seed.
fn to_seed(dec: &MphiDecomposition) -> Result<Option<(SeedCase, Seed, MphiDecomposition)>> {
    let r = dec.ring.clone();
    let Some((m, u)) = single_term(&dec.target) else {
        return Ok(None);
    };
    if !r.is_unit(&u) {
        return Ok(None);
    }
    let Some((case, front)) = seed_shape(&m, &r) else {
        return Ok(None);
    };
    let eta = move_to_front(&r, dec.n, &front)?;
    let d = dec.scale(&r.inv(&u)?).apply_affine(&eta);
    let (seed, out) = match case {
        SeedCase::A | SeedCase::C => {
            let seed = if case == SeedCase::A { Seed::Product } else { Seed::ProductSquare };
            (seed, d)
        }
        SeedCase::B => (Seed::Product, convert_square(&d)?),
        SeedCase::D => (Seed::ProductSquare, convert_cube(&d)?),
    };
    if out.target != seed.poly(&r, dec.n) {
        return Err(Error::Invalid(format!("conversion produced {}", out.target)));
    }
    Ok(Some((case, seed, out)))
}

fn single_term(f: &Poly) -> Option<(Monomial, Elem)> {
    if f.nterms() != 1 {
        return None;
    }
    f.terms().next().map(|(m, c)| (m.clone(), c.clone()))
}

fn direct_route(phi: &Endo) -> Result<Option<SeedCertificate>> {
    for j in 0..phi.n() {
        let aff = phi.image(j).affine_part();
        let dec = MphiDecomposition::basic(phi, j).add_affine(&aff.neg())?;
        if let Some((case, seed, dec)) = to_seed(&dec)? {
            return Ok(Some(SeedCertificate {
                route: SeedRoute::Direct { index: j },
                case,
                seed,
                dec,
            }));
        }
    }
    Ok(None)
}

/// Ordering key for good monomials: seed shapes first, then low degree.
fn monomial_cost(m: &Monomial, ring: &Ring) -> (u32, u32) {
    (u32::from(seed_shape(m, ring).is_none()), m.degree())
}

/// Seed-shaped monomials of `f` with unit coefficients, cheapest first.
fn seed_terms(f: &Poly) -> Vec<Monomial> {
    let r = f.ring();
    let mut out: Vec<(SeedCase, Monomial)> = f
        .terms()
        .filter(|(_, c)| r.is_unit(c))
        .filter_map(|(m, _)| seed_shape(m, r).map(|(case, _)| (case, m.clone())))
        .collect();
    out.sort_by_key(|(case, m)| (*case as u8, m.degree()));
    out.into_iter().map(|(_, m)| m).collect()
}

fn isolate(dec: &MphiDecomposition, m: &Monomial, k: KSize) -> Result<MphiDecomposition> {
    let nonaff = dec.target.nonaffine_part();
    if nonaff.nterms() == 1 && m.degree() >= 2 {
        return dec.add_affine(&dec.target.affine_part().neg());
    }
    vandermonde_extract(dec, m, k)
}

fn span_route(phi: &Endo, opts: &SearchOptions) -> Result<Option<SeedCertificate>> {
    let Some(k) = opts.k else { return Ok(None) };
    let r = phi.ring().clone();
    let n = phi.n();
    let search = ideal_j_phi(phi, k, opts.budget, opts.seed)?;
    for cand in &search.contributing {
        let parts: Vec<(Elem, MphiDecomposition)> = cand
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !r.is_zero(c))
            .map(|(i, c)| (c.clone(), MphiDecomposition::basic(phi, i)))
            .collect();
        let sum = MphiDecomposition::linear_combine(&parts)?;
        let lin = sum.target.filter_terms(|m| m.degree() == 1);
        let g = sum.add_affine(&lin.neg())?;
        debug_assert_eq!(g.target, cand.poly);
        let mut goods = cand.good.clone();
        goods.sort_by_key(|(m, _, _)| monomial_cost(m, &r));
        for (m, a, ty) in goods {
            if !r.is_unit(&a) {
                continue;
            }
            let Ok(dm) = isolate(&g, &m, k) else { continue };
            let dm = dm.scale(&r.inv(&a)?);
            if let Some((case, seed, dec)) = to_seed(&dm)? {
                return Ok(Some(SeedCertificate {
                    route: SeedRoute::JFull { coeffs: cand.coeffs.clone(), monomial: m, good: ty, shifted: false },
                    case,
                    seed,
                    dec,
                }));
            }
            // shift every variable by one, then pull out a seed-shaped term
            let lam = AffineMap::translation(&r, vec![r.one(); n]);
            let shifted = dm.apply_affine(&lam);
            for m2 in seed_terms(&shifted.target) {
                let Ok(d2) = vandermonde_extract(&shifted, &m2, k) else { continue };
                if let Some((case, seed, dec)) = to_seed(&d2)? {
                    return Ok(Some(SeedCertificate {
                        route: SeedRoute::JFull { coeffs: cand.coeffs.clone(), monomial: m, good: ty, shifted: true },
                        case,
                        seed,
                        dec,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn delta_seed(phi: &Endo) -> Result<Option<SeedCertificate>> {
    let Some((index, spec, shape, dec)) = find_delta_route(phi) else {
        return Ok(None);
    };
    Ok(to_seed(&dec)?.map(|(case, seed, dec)| SeedCertificate {
        route: SeedRoute::Delta { index, spec, shape },
        case,
        seed,
        dec,
    }))
}

/// Tries the span route (when a base field is given), then a direct seed
/// term, then difference operators. Every returned decomposition is validated.
pub fn find_seed(phi: &Endo, opts: &SearchOptions) -> Result<Option<SeedCertificate>> {
    if phi.n() < 2 {
        return Err(Error::Precondition("need at least two variables".into()));
    }
    if phi.is_affine() {
        return Ok(None);
    }
    let routes: [&dyn Fn() -> Result<Option<SeedCertificate>>; 3] = [
        &|| span_route(phi, opts),
        &|| direct_route(phi),
        &|| delta_seed(phi),
    ];
    for route in routes {
        if let Some(cert) = route()? {
            if !cert.dec.validate(phi)? {
                return Err(Error::Invalid(format!(
                    "{} route produced an invalid decomposition",
                    cert.route.tag()
                )));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Default cap on the total degree of witness targets.
pub const DEFAULT_MAX_DEGREE: u32 = 4;

/// A generator word together with what it claims to equal.
#[derive(Clone, Debug)]
pub struct Witness {
    pub word: GeneratorWord,
    pub target: Poly,
    pub seed_word_len: usize,
}

/// Word for `x_1 -> x_1 + f` (extended by one fixed variable) over `phi` and affine maps.
pub fn build_witness(
    cert: &SeedCertificate,
    f: &Poly,
    max_degree: u32,
) -> Result<Witness> {
    let r = &cert.dec.ring;
    if let Some(d) = f.total_deg().finite() {
        if d > max_degree {
            return Err(Error::ResourceLimit(format!(
                "target degree {d} exceeds the cap {max_degree}"
            )));
        }
    }
    let hat = compile_hat_word(&cert.dec)?;
    let tc = TameCompiler::new(cert.seed, &hat, r)?;
    let word = tc.compile(f)?;
    Ok(Witness {
        word,
        target: f.clone(),
        seed_word_len: hat.len(),
    })
}

/// Outcome of checking a word against `x_1 -> x_1 + f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// First variable (0-based, in `n + 1` variables) whose image differs.
    pub first_mismatch: Option<usize>,
}

pub fn verify_witness(bound: &BoundPhi, word: &GeneratorWord, f: &Poly) -> Result<VerifyReport> {
    let expect = Endo::elementary(f)?.extend(word.ambient.saturating_sub(f.nvars()));
    let got = word.eval(bound)?;
    let first_mismatch = (0..expect.n()).find(|&i| got.image(i) != expect.image(i));
    Ok(VerifyReport {
        ok: first_mismatch.is_none(),
        first_mismatch,
    })
}
