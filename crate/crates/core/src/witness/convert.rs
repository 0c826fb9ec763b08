use crate::endo::AffineMap;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::Ring;

use super::MphiDecomposition;

/// Seed polynomial from which every tame target is compiled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// `x1*x2`.
    Product,
    /// `x1*x2^2`, for two variables in characteristic 2.
    ProductSquare,
}

impl Seed {
    pub fn monomial(self, n: usize) -> Monomial {
        let mut e = vec![0u32; n];
        e[0] = 1;
        e[1] = match self {
            Seed::Product => 1,
            Seed::ProductSquare => 2,
        };
        Monomial::from_exps(&e)
    }

    pub fn poly(self, ring: &Ring, n: usize) -> Poly {
        Poly::term(ring, self.monomial(n), ring.one())
    }
}

/// Permutation sending `x_from[k]` to `x_k` for each `k`, as a map with
/// `eta(x_from[k]) = x_k`.
pub fn move_to_front(ring: &Ring, n: usize, from: &[usize]) -> Result<AffineMap> {
    let mut sigma = vec![usize::MAX; n];
    for (k, &v) in from.iter().enumerate() {
        sigma[v] = k;
    }
    let mut next = from.len();
    for s in sigma.iter_mut() {
        if *s == usize::MAX {
            *s = next;
            next += 1;
        }
    }
    AffineMap::permutation(ring, &sigma)
}

fn expect_target(dec: &MphiDecomposition, want: &Poly) -> Result<()> {
    if &dec.target != want {
        return Err(Error::Precondition(format!("expected {want}, got {}", dec.target)));
    }
    Ok(())
}

/// `x1^2` to `x1*x2`, using that 2 is a unit.
pub fn convert_square(dec: &MphiDecomposition) -> Result<MphiDecomposition> {
    let r = dec.ring.clone();
    let n = dec.n;
    if n < 2 {
        return Err(Error::Precondition("need at least two variables".into()));
    }
    expect_target(dec, &Poly::term(&r, Monomial::from_exps(&square_exps(n)), r.one()))?;
    let half = r
        .inv(&r.from_i64(2))
        .map_err(|_| Error::Precondition("2 is not a unit".into()))?;
    let swap = move_to_front(&r, n, &[1, 0])?;
    let diff = MphiDecomposition::linear_combine(&[
        (r.one(), dec.clone()),
        (r.neg(&r.one()), dec.apply_affine(&swap)),
    ])?;
    let mut a = crate::linalg::identity(&r, n);
    a[0][0] = half.clone();
    a[1][0] = half.clone();
    a[0][1] = half.clone();
    a[1][1] = r.neg(&half);
    let psi = AffineMap::new(&r, a, vec![r.zero(); n])?;
    let out = diff.apply_affine(&psi);
    expect_target(&out, &Seed::Product.poly(&r, n))?;
    Ok(out)
}

fn square_exps(n: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[0] = 2;
    e
}

/// `x1^3` to `x1*x2^2` in two variables over characteristic 2, using a unit
/// `xi` with `xi + 1` a unit.
pub fn convert_cube(dec: &MphiDecomposition) -> Result<MphiDecomposition> {
    let r = dec.ring.clone();
    if dec.n != 2 || r.characteristic() != 2 {
        return Err(Error::Precondition("cube conversion needs n = 2 in characteristic 2".into()));
    }
    expect_target(dec, &Poly::parse("x1^3", &r, 2)?)?;
    let xi = r.find_special_unit()?;
    let swap = move_to_front(&r, 2, &[1, 0])?;
    let s = AffineMap::new(
        &r,
        vec![vec![r.one(), r.zero()], vec![r.one(), r.one()]],
        vec![r.zero(), r.zero()],
    )?;
    // (x1 + x2)^3 - x1^3 - x2^3 = x1^2*x2 + x1*x2^2
    let e = MphiDecomposition::linear_combine(&[
        (r.one(), dec.apply_affine(&s)),
        (r.neg(&r.one()), dec.clone()),
        (r.neg(&r.one()), dec.apply_affine(&swap)),
    ])?;
    let d = AffineMap::diagonal(&r, &[xi.clone(), r.one()])?;
    let xi2 = r.mul(&xi, &xi);
    let f = MphiDecomposition::linear_combine(&[(r.one(), e.apply_affine(&d)), (xi2, e)])?;
    let c = r.mul(&xi, &r.add(&xi, &r.one()));
    let out = f.scale(&r.inv(&c)?);
    expect_target(&out, &Seed::ProductSquare.poly(&r, 2))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::Endo;

    #[test]
    fn square_to_product_over_q() {
        let q = Ring::rationals();
        let phi = Endo::parse(&q, &["x1", "x2", "x3 + x1^2"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 2)
            .add_affine(&Poly::parse("-x3", &q, 3).unwrap())
            .unwrap();
        let out = convert_square(&d).unwrap();
        assert_eq!(out.target, Poly::parse("x1*x2", &q, 3).unwrap());
        assert!(out.validate(&phi).unwrap());
    }

    #[test]
    fn cube_to_product_square_over_f4() {
        let f4 = Ring::gf(2, 2).unwrap();
        let phi = Endo::parse(&f4, &["x1", "x2 + x1^3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 1)
            .add_affine(&Poly::parse("x2", &f4, 2).unwrap())
            .unwrap();
        let out = convert_cube(&d).unwrap();
        assert_eq!(out.target, Poly::parse("x1*x2^2", &f4, 2).unwrap());
        assert!(out.validate(&phi).unwrap());
        let f2 = Ring::fp(2).unwrap();
        let phi = Endo::parse(&f2, &["x1", "x2 + x1^3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 1)
            .add_affine(&Poly::parse("x2", &f2, 2).unwrap())
            .unwrap();
        assert_eq!(convert_cube(&d).unwrap_err(), Error::NoSuchUnit);
    }

    #[test]
    fn front_permutation() {
        let q = Ring::rationals();
        let eta = move_to_front(&q, 3, &[2, 1]).unwrap();
        let f = Poly::parse("x3*x2^2", &q, 3).unwrap();
        assert_eq!(eta.apply(&f), Poly::parse("x1*x2^2", &q, 3).unwrap());
    }
}
