//! Endomorphisms of `R[x1..xn]` as substitution tuples.
//!
//! Composition follows `phi ∘ psi = (g_1(f_1..f_n), ..., g_n(f_1..f_n))` for
//! `phi = (f_i)` and `psi = (g_i)`; as maps of polynomials this is
//! `(phi ∘ psi)(h) = phi(psi(h))`.

mod affine;
mod ideal;
pub mod json;
mod word;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

pub use affine::AffineMap;
pub use ideal::IdealHandle;
pub use word::{BoundPhi, GeneratorWord, Letter};

/// An `n`-tuple of polynomials in `n` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    ring: Ring,
    images: Vec<Poly>,
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// How to invert a map whose inverse is not otherwise known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseHint {
    Affine,
    /// `phi(x_i) = c_i x_i + g_i` where `g_i` only uses variables resolved
    /// earlier in some ordering and `c_i` is a unit.
    Triangular,
}

impl Endo {
    /// Validates that every image lives in `images.len()` variables over `ring`.
    pub fn new(ring: &Ring, images: Vec<Poly>) -> Result<Endo> {
        let n = images.len();
        for g in &images {
            if g.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), g.ring().to_string()));
            }
            if g.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, got: g.nvars() });
            }
        }
        Ok(Endo::from_parts(ring, images))
    }

    pub(crate) fn from_parts(ring: &Ring, images: Vec<Poly>) -> Endo {
        Endo {
            ring: ring.clone(),
            images,
        }
    }

    pub fn parse(ring: &Ring, images: &[&str]) -> Result<Endo> {
        let n = images.len();
        let polys = images
            .iter()
            .map(|s| Poly::parse(s, ring, n))
            .collect::<Result<Vec<_>>>()?;
        Endo::new(ring, polys)
    }

    pub fn identity(ring: &Ring, n: usize) -> Endo {
        Endo::from_parts(ring, (0..n).map(|i| Poly::var(ring, n, i)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        *self == Endo::identity(&self.ring, self.n())
    }

    pub fn is_affine(&self) -> bool {
        self.images.iter().all(Poly::is_affine)
    }

    pub fn nterms(&self) -> usize {
        self.images.iter().map(Poly::nterms).sum()
    }

    /// `phi(f) = f(phi(x_1), ..., phi(x_n))`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        f.substitute(&self.images)
    }

    /// `self ∘ other`: the images of `other` evaluated at the images of `self`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        self.check_compatible(other)?;
        let images = other
            .images
            .par_iter()
            .map(|g| g.substitute_unchecked(&self.images))
            .collect();
        Ok(Endo::from_parts(&self.ring, images))
    }

    /// `self ∘ a` for an affine map, computed as linear combinations of images.
    pub fn compose_affine(&self, a: &AffineMap) -> Result<Endo> {
        if a.n() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), got: a.n() });
        }
        if a.ring() != &self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), a.ring().to_string()));
        }
        let r = &self.ring;
        let n = self.n();
        let m = a.matrix();
        let b = a.translation_part();
        let images = (0..n)
            .map(|j| {
                let mut f = Poly::constant(r, n, b[j].clone());
                for i in 0..n {
                    if !r.is_zero(&m[i][j]) {
                        f = f.add(&self.images[i].scale(&m[i][j]));
                    }
                }
                f
            })
            .collect();
        Ok(Endo::from_parts(r, images))
    }

    fn check_compatible(&self, other: &Endo) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), got: other.n() });
        }
        Ok(())
    }

    /// Embeds into `n + r` variables fixing the new ones.
    pub fn extend(&self, r: usize) -> Endo {
        let n = self.n();
        let m = n + r;
        let mut images: Vec<Poly> = self.images.iter().map(|g| g.embed(m)).collect();
        images.extend((n..m).map(|i| Poly::var(&self.ring, m, i)));
        Endo::from_parts(&self.ring, images)
    }

    /// `ε(f) = (x1 + f, x2, ..., xn)` with `f` free of `x1`.
    pub fn elementary(f: &Poly) -> Result<Endo> {
        if f.nvars() == 0 {
            return Err(Error::VariableSupport("no variables".into()));
        }
        if f.uses_var(0) {
            return Err(Error::VariableSupport(format!("{f} involves x1")));
        }
        let n = f.nvars();
        let mut e = Endo::identity(f.ring(), n);
        e.images[0] = e.images[0].add(f);
        Ok(e)
    }

    /// `ε̂(f) = (x1, ..., xn, x_{n+1} + f)` for `f` in `n` variables.
    pub fn hat_elementary(f: &Poly) -> Endo {
        let n = f.nvars();
        let mut e = Endo::identity(f.ring(), n + 1);
        e.images[n] = e.images[n].add(&f.embed(n + 1));
        e
    }

    /// `(x_{sigma[0]}, ..., x_{sigma[n-1]})` (0-based).
    pub fn permutation(ring: &Ring, sigma: &[usize]) -> Result<Endo> {
        Ok(AffineMap::permutation(ring, sigma)?.to_endo())
    }

    /// `sigma^{-1} ∘ self ∘ sigma`.
    pub fn conjugate(&self, sigma: &[usize]) -> Result<Endo> {
        let s = AffineMap::permutation(&self.ring, sigma)?;
        s.inverse().to_endo().compose(self)?.compose_affine(&s)
    }

    /// Exact inverse of a structured map, verified by composition.
    pub fn invert_structured(&self, hint: InverseHint) -> Result<Endo> {
        let inv = match hint {
            InverseHint::Affine => AffineMap::from_endo(self)?.inverse().to_endo(),
            InverseHint::Triangular => self.invert_triangular()?,
        };
        if !self.compose(&inv)?.is_identity() || !inv.compose(self)?.is_identity() {
            return Err(Error::HintMismatch(format!("{hint:?}").to_lowercase()));
        }
        Ok(inv)
    }

    fn invert_triangular(&self) -> Result<Endo> {
        let n = self.n();
        let r = &self.ring;
        let mismatch = || Error::HintMismatch("triangular".into());
        let mut inverse: Vec<Option<Poly>> = vec![None; n];
        let mut resolved = vec![false; n];
        for _ in 0..n {
            let mut progress = false;
            for i in 0..n {
                if resolved[i] {
                    continue;
                }
                let img = &self.images[i];
                let c = img.linear_coeff(i);
                let g = img.sub(&Poly::var(r, n, i).scale(&c));
                if g.uses_var(i) || (0..n).any(|j| j != i && !resolved[j] && g.uses_var(j)) {
                    continue;
                }
                let cinv = r.inv(&c)?;
                // psi_i = c^{-1} (x_i - g(psi))
                let images: Vec<Poly> = (0..n)
                    .map(|j| inverse[j].clone().unwrap_or_else(|| Poly::var(r, n, j)))
                    .collect();
                let g_psi = g.substitute_unchecked(&images);
                inverse[i] = Some(Poly::var(r, n, i).sub(&g_psi).scale(&cinv));
                resolved[i] = true;
                progress = true;
            }
            if !progress {
                break;
            }
        }
        if resolved.iter().any(|x| !x) {
            return Err(mismatch());
        }
        Ok(Endo::from_parts(r, inverse.into_iter().map(Option::unwrap).collect()))
    }

    /// Coefficientwise image under a ring map.
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&crate::ring::Elem) -> crate::ring::Elem + Copy) -> Endo {
        Endo::from_parts(target, self.images.iter().map(|g| g.map_coeffs(target, f)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endo(r: &Ring, imgs: &[&str]) -> Endo {
        Endo::parse(r, imgs).unwrap()
    }

    #[test]
    fn composition_examples() {
        let q = Ring::rationals();
        let f = Poly::parse("x2^2", &q, 3).unwrap();
        let g = Poly::parse("x3 + x2*x3", &q, 3).unwrap();
        let ef = Endo::elementary(&f).unwrap();
        let eg = Endo::elementary(&g).unwrap();
        assert_eq!(ef.compose(&eg).unwrap(), Endo::elementary(&f.add(&g)).unwrap());
        let id = Endo::identity(&q, 3);
        assert_eq!(ef.compose(&id).unwrap(), ef);
        assert_eq!(id.compose(&ef).unwrap(), ef);
        let pi = endo(&q, &["x2", "x1", "x3"]);
        assert!(pi.compose(&pi).unwrap().is_identity());
    }

    #[test]
    fn composition_order() {
        // phi ∘ psi evaluates psi's images at phi's images.
        let q = Ring::rationals();
        let phi = endo(&q, &["x1 + x2^2", "x2"]);
        let psi = endo(&q, &["x2", "x1"]);
        assert_eq!(phi.compose(&psi).unwrap(), endo(&q, &["x2", "x1 + x2^2"]));
        let h = Poly::parse("x1", &q, 2).unwrap();
        let lhs = phi.compose(&psi).unwrap().apply(&h).unwrap();
        let rhs = phi.apply(&psi.apply(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_examples() {
        let q = Ring::rationals();
        let e = Endo::elementary(&Poly::parse("x2^2", &q, 2).unwrap()).unwrap();
        assert_eq!(e.extend(1), endo(&q, &["x1 + x2^2", "x2", "x3"]));
        assert_eq!(Endo::identity(&q, 2).extend(3), Endo::identity(&q, 5));
    }

    #[test]
    fn elementary_support() {
        let q = Ring::rationals();
        assert!(Endo::elementary(&Poly::parse("x1*x2", &q, 2).unwrap()).is_err());
        assert!(!Endo::elementary(&Poly::parse("x2^2", &q, 3).unwrap()).unwrap().is_affine());
    }

    #[test]
    fn hat_conjugations() {
        let f5 = Ring::fp(5).unwrap();
        let n = 3;
        let hat = Endo::hat_elementary(&Poly::parse("x1*x2", &f5, n).unwrap());
        for i in 2..=n {
            // (1, n+1)(2, i), 0-based
            let mut sigma: Vec<usize> = (0..=n).collect();
            sigma.swap(0, n);
            sigma.swap(1, i - 1);
            let target = Poly::parse(&format!("x{i}*x{}", n + 1), &f5, n + 1).unwrap();
            assert_eq!(hat.conjugate(&sigma).unwrap(), Endo::elementary(&target).unwrap());
        }
        let hat2 = Endo::hat_elementary(&Poly::parse("x1*x2^2", &f5, 2).unwrap());
        let target = Poly::parse("x2^2*x3", &f5, 3).unwrap();
        assert_eq!(hat2.conjugate(&[2, 1, 0]).unwrap(), Endo::elementary(&target).unwrap());
        assert_eq!(hat2.conjugate(&[0, 1, 2]).unwrap(), hat2);
    }

    #[test]
    fn triangular_inverse_of_beta() {
        let q = Ring::rationals();
        let beta = endo(&q, &["x1 + x2^2*(x2 + x3^2)^2", "x2 + x3^2", "x3"]);
        let inv = beta.invert_structured(InverseHint::Triangular).unwrap();
        assert_eq!(inv, endo(&q, &["x1 - (x2 - x3^2)^2*x2^2", "x2 - x3^2", "x3"]));
        let e = Endo::elementary(&Poly::parse("x2*x3", &q, 3).unwrap()).unwrap();
        let e_inv = Endo::elementary(&Poly::parse("-x2*x3", &q, 3).unwrap()).unwrap();
        assert_eq!(e.invert_structured(InverseHint::Triangular).unwrap(), e_inv);
        assert!(matches!(
            endo(&q, &["x1 + x2^2", "x2 + x1^2"]).invert_structured(InverseHint::Triangular),
            Err(Error::HintMismatch(_))
        ));
    }

    #[test]
    fn affine_inverse_consistency() {
        let f7 = Ring::fp(7).unwrap();
        let phi = endo(&f7, &["2*x1 + x2 + 1", "x2 + 3"]);
        let inv = phi.invert_structured(InverseHint::Affine).unwrap();
        assert_eq!(inv, AffineMap::from_endo(&phi).unwrap().inverse().to_endo());
        assert!(phi.invert_structured(InverseHint::Affine).is_ok());
        assert!(endo(&f7, &["x1^2", "x2"]).invert_structured(InverseHint::Affine).is_err());
    }
}
