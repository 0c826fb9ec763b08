use crate::classify::{base_field_units, degree_condition};
use crate::endo::AffineMap;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Monomial;
use crate::ring::nt;
use crate::ring::{Elem, KSize};

use super::MphiDecomposition;

/// Isolates the term `a*m` of `dec.target` by a combination of diagonal
/// rescalings `x_i -> xi * x_i` with `xi` in `k`, one variable at a time.
pub fn vandermonde_extract(
    dec: &MphiDecomposition,
    m: &Monomial,
    k: KSize,
) -> Result<MphiDecomposition> {
    let r = dec.ring.clone();
    let p = r.characteristic();
    if !degree_condition(&dec.target, k)? {
        return Err(Error::DegreeCondition(format!(
            "{} exceeds the separable degree bound for k",
            dec.target
        )));
    }
    let a = dec.target.coeff(m);
    if r.is_zero(&a) {
        return Err(Error::Precondition(format!("monomial not present in {}", dec.target)));
    }
    let mut cur = dec.clone();
    for i in 0..dec.n {
        let mut exps: Vec<u32> = cur.target.terms().map(|(t, _)| t.exps()[i]).collect();
        exps.sort_unstable();
        exps.dedup();
        if exps.len() <= 1 {
            continue;
        }
        let e = if p == 0 {
            0
        } else {
            exps.iter()
                .filter(|&&t| t > 0)
                .map(|&t| nt::valuation(t as u64, p).unwrap())
                .min()
                .unwrap_or(0)
        };
        let pe = if p == 0 { 1 } else { p.pow(e) };
        let s: Vec<u64> = exps.iter().map(|&t| t as u64 / pe).collect();
        let (s_min, s_max) = (s[0], *s.last().unwrap());
        let s_m = m.exps()[i] as u64 / pe;
        let d = (s_max - s_min + 1) as usize;
        let alphas = base_field_units(&r, k, d)?;
        let betas: Vec<Elem> = alphas.iter().map(|x| r.pow(x, pe)).collect();
        // sum_l lambda'_l beta_l^j = [j == s_m - s_min], j = 0..d-1
        let mat: Vec<Vec<Elem>> = (0..d)
            .map(|j| betas.iter().map(|b| r.pow(b, j as u64)).collect())
            .collect();
        let rhs: Vec<Elem> = (0..d)
            .map(|j| if j as u64 == s_m - s_min { r.one() } else { r.zero() })
            .collect();
        let sol = linalg::solve(&r, &mat, &rhs)
            .ok_or_else(|| Error::Invalid("singular Vandermonde system".into()))?;
        let mut parts = Vec::with_capacity(d);
        for (l, lam) in sol.iter().enumerate() {
            if r.is_zero(lam) {
                continue;
            }
            let lam = r.mul(lam, &r.inv(&r.pow(&betas[l], s_min))?);
            let mut diag = vec![r.one(); dec.n];
            diag[i] = alphas[l].clone();
            let eta = AffineMap::diagonal(&r, &diag)?;
            parts.push((lam, cur.apply_affine(&eta)));
        }
        cur = MphiDecomposition::linear_combine(&parts)?;
    }
    let expect = crate::poly::Poly::term(&r, m.clone(), a);
    if cur.target != expect {
        return Err(Error::Invalid(format!(
            "extraction left {} instead of a single term",
            cur.target
        )));
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::Endo;
    use crate::poly::Poly;
    use crate::ring::Ring;

    #[test]
    fn extracts_square_over_f5() {
        let f5 = Ring::fp(5).unwrap();
        let phi = Endo::parse(&f5, &["x1 + 2*x1^2", "x2"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 0);
        let m = Monomial::from_exps(&[2, 0]);
        let out = vandermonde_extract(&d, &m, KSize::Finite(5)).unwrap();
        assert_eq!(out.target, Poly::parse("2*x1^2", &f5, 2).unwrap());
        assert!(out.validate(&phi).unwrap());
        assert!(out.terms.len() <= 2);
    }

    #[test]
    fn respects_frobenius_powers() {
        let f3 = Ring::fp(3).unwrap();
        let phi = Endo::parse(&f3, &["x1 + x2^3*x3 + x3 + x2^3", "x2", "x3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 0);
        let m = Monomial::from_exps(&[0, 3, 1]);
        let out = vandermonde_extract(&d, &m, KSize::Finite(3)).unwrap();
        assert_eq!(out.target, Poly::parse("x2^3*x3", &f3, 3).unwrap());
        assert!(out.validate(&phi).unwrap());
    }

    #[test]
    fn degree_condition_enforced() {
        let f3 = Ring::fp(3).unwrap();
        let phi = Endo::parse(&f3, &["x1 + x2^2", "x2", "x3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 0);
        let m = Monomial::from_exps(&[0, 2, 0]);
        assert!(matches!(
            vandermonde_extract(&d, &m, KSize::Finite(3)),
            Err(Error::DegreeCondition(_))
        ));
    }
}
