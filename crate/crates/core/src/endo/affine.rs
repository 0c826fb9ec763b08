use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::ring::{Elem, Ring};

use super::Endo;

/// Invertible affine map `x -> xA + b`, so `x_j -> sum_i x_i A[i][j] + b[j]`.
///
/// The inverse matrix is computed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    ring: Ring,
    a: Matrix,
    b: Vec<Elem>,
    a_inv: Matrix,
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Affine{}", self.to_endo())
    }
}

impl AffineMap {
    pub fn new(ring: &Ring, a: Matrix, b: Vec<Elem>) -> Result<AffineMap> {
        let n = a.len();
        if b.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: b.len() });
        }
        let a_inv = linalg::inverse(ring, &a)?;
        Ok(AffineMap {
            ring: ring.clone(),
            a,
            b,
            a_inv,
        })
    }

    fn from_parts_unchecked(ring: &Ring, a: Matrix, b: Vec<Elem>, a_inv: Matrix) -> AffineMap {
        AffineMap {
            ring: ring.clone(),
            a,
            b,
            a_inv,
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> AffineMap {
        let id = linalg::identity(ring, n);
        AffineMap::from_parts_unchecked(ring, id.clone(), vec![ring.zero(); n], id)
    }

    /// `x_i -> x_i + b_i`.
    pub fn translation(ring: &Ring, b: Vec<Elem>) -> AffineMap {
        let id = linalg::identity(ring, b.len());
        AffineMap::from_parts_unchecked(ring, id.clone(), b, id)
    }

    /// `x_i -> d_i x_i` with unit `d_i`.
    pub fn diagonal(ring: &Ring, d: &[Elem]) -> Result<AffineMap> {
        let n = d.len();
        let mut a = vec![vec![ring.zero(); n]; n];
        let mut a_inv = a.clone();
        for i in 0..n {
            a[i][i] = d[i].clone();
            a_inv[i][i] = ring.inv(&d[i])?;
        }
        Ok(AffineMap::from_parts_unchecked(ring, a, vec![ring.zero(); n], a_inv))
    }

    /// `x_i -> x_{sigma[i]}` (0-based).
    pub fn permutation(ring: &Ring, sigma: &[usize]) -> Result<AffineMap> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(Error::Invalid(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        let mut a = vec![vec![ring.zero(); n]; n];
        for (j, &s) in sigma.iter().enumerate() {
            a[s][j] = ring.one();
        }
        let mut a_inv = vec![vec![ring.zero(); n]; n];
        for (j, &s) in sigma.iter().enumerate() {
            a_inv[j][s] = ring.one();
        }
        Ok(AffineMap::from_parts_unchecked(ring, a, vec![ring.zero(); n], a_inv))
    }

    /// Reads `(A, b)` off an endomorphism of total degree at most one.
    pub fn from_endo(phi: &Endo) -> Result<AffineMap> {
        if !phi.is_affine() {
            return Err(Error::HintMismatch("affine".into()));
        }
        let n = phi.n();
        let ring = phi.ring();
        let mut a = vec![vec![ring.zero(); n]; n];
        let mut b = Vec::with_capacity(n);
        for (j, img) in phi.images().iter().enumerate() {
            for (i, row) in a.iter_mut().enumerate() {
                row[j] = img.linear_coeff(i);
            }
            b.push(img.constant_term());
        }
        AffineMap::new(ring, a, b)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn translation_part(&self) -> &[Elem] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == linalg::identity(&self.ring, self.n()) && self.b.iter().all(|x| self.ring.is_zero(x))
    }

    /// Image of `x_j`.
    pub fn image(&self, j: usize) -> Poly {
        let r = &self.ring;
        let n = self.n();
        let mut f = Poly::constant(r, n, self.b[j].clone());
        for i in 0..n {
            if !r.is_zero(&self.a[i][j]) {
                f = f.add(&Poly::var(r, n, i).scale(&self.a[i][j]));
            }
        }
        f
    }

    pub fn to_endo(&self) -> Endo {
        Endo::from_parts(&self.ring, (0..self.n()).map(|j| self.image(j)).collect())
    }

    /// `self ∘ other` in the composition convention of [`Endo::compose`].
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let r = &self.ring;
        let a = linalg::mat_mul(r, &self.a, &other.a);
        let bb = linalg::vec_mat(r, &self.b, &other.a);
        let b = bb.iter().zip(&other.b).map(|(x, y)| r.add(x, y)).collect();
        let a_inv = linalg::mat_mul(r, &other.a_inv, &self.a_inv);
        AffineMap::from_parts_unchecked(r, a, b, a_inv)
    }

    pub fn inverse(&self) -> AffineMap {
        let r = &self.ring;
        let nb = linalg::vec_mat(r, &self.b, &self.a_inv);
        let b = nb.iter().map(|x| r.neg(x)).collect();
        AffineMap::from_parts_unchecked(r, self.a_inv.clone(), b, self.a.clone())
    }

    /// Fixes `r` extra trailing variables.
    pub fn extend(&self, r: usize) -> AffineMap {
        let ring = &self.ring;
        let n = self.n();
        let grow = |m: &Matrix| -> Matrix {
            let mut out = linalg::identity(ring, n + r);
            for i in 0..n {
                out[i][..n].clone_from_slice(&m[i]);
            }
            out
        };
        let mut b = self.b.clone();
        b.resize(n + r, ring.zero());
        AffineMap::from_parts_unchecked(ring, grow(&self.a), b, grow(&self.a_inv))
    }

    /// `f(x A + b)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.n()).map(|j| self.image(j)).collect();
        f.substitute_unchecked(&images)
    }

    /// Coefficientwise image under a ring map; the matrix must stay invertible.
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Result<AffineMap> {
        let a = self.a.iter().map(|row| row.iter().map(&f).collect()).collect();
        let b = self.b.iter().map(&f).collect();
        AffineMap::new(target, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_inverse() {
        let q = Ring::rationals();
        let lambda = AffineMap::translation(&q, vec![q.one(); 3]);
        let inv = lambda.inverse();
        let expected = Endo::parse(&q, &["x1 - 1", "x2 - 1", "x3 - 1"]).unwrap();
        assert_eq!(inv.to_endo(), expected);
    }

    #[test]
    fn compose_matches_endomorphism_composition() {
        let f5 = Ring::fp(5).unwrap();
        let m = |rows: [[i64; 2]; 2]| -> Matrix {
            rows.iter().map(|r| r.iter().map(|&x| f5.from_i64(x)).collect()).collect()
        };
        let s = AffineMap::new(&f5, m([[1, 2], [0, 3]]), vec![f5.from_i64(1), f5.zero()]).unwrap();
        let t = AffineMap::new(&f5, m([[2, 0], [1, 1]]), vec![f5.zero(), f5.from_i64(4)]).unwrap();
        assert_eq!(
            s.compose(&t).to_endo(),
            s.to_endo().compose(&t.to_endo()).unwrap()
        );
        assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn permutation_matrix() {
        let q = Ring::rationals();
        let pi = AffineMap::permutation(&q, &[1, 0, 2]).unwrap();
        assert_eq!(pi.to_endo(), Endo::parse(&q, &["x2", "x1", "x3"]).unwrap());
    }
}
