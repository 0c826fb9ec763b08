//! The maps `theta_N = (beta ∘ pi)^{-N} ∘ pi ∘ (beta ∘ pi)^N` in three variables.

use crate::endo::{BoundPhi, Endo, InverseHint};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

/// Largest `N` computed; the number of terms grows very quickly with `N`.
pub const MAX_THETA_N: u32 = 2;

pub fn beta(ring: &Ring) -> Endo {
    Endo::parse(ring, &["x1 + x2^2*(x2 + x3^2)^2", "x2 + x3^2", "x3"]).unwrap()
}

pub fn swap12(ring: &Ring) -> Endo {
    Endo::parse(ring, &["x2", "x1", "x3"]).unwrap()
}

/// `theta_N` together with its inverse (itself, as `pi` is an involution).
pub fn theta_bound(ring: &Ring, n_iter: u32) -> Result<BoundPhi> {
    let th = theta(ring, n_iter)?;
    BoundPhi::new(th.clone(), th)
}

pub fn theta(ring: &Ring, n_iter: u32) -> Result<Endo> {
    if n_iter == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    if n_iter > MAX_THETA_N {
        return Err(Error::ResourceLimit(format!(
            "theta_N is only computed for N <= {MAX_THETA_N}"
        )));
    }
    let b = beta(ring);
    let b_inv = b.invert_structured(InverseHint::Triangular)?;
    let pi = swap12(ring);
    let fwd = b.compose(&pi)?;
    let back = pi.compose(&b_inv)?;
    let mut left = Endo::identity(ring, 3);
    let mut right = Endo::identity(ring, 3);
    for _ in 0..n_iter {
        left = left.compose(&back)?;
        right = right.compose(&fwd)?;
    }
    left.compose(&pi)?.compose(&right)
}

/// `theta_N' = theta_N ∘ pi`.
pub fn theta_prime(theta: &Endo) -> Result<Endo> {
    theta.compose(&swap12(theta.ring()))
}

/// `h_2 = x_2 - x_1^2 (x_1 - x_3^2)^2`, the second image of `pi ∘ beta^{-1} ∘ pi`.
pub fn h2(ring: &Ring) -> Poly {
    Poly::parse("x2 - x1^2*(x1 - x3^2)^2", ring, 3).unwrap()
}

/// Weights for which the top-part claim is checked.
pub const TOP_WEIGHTS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 1]];

/// Whether `theta_N'(x_i)^w = ±(h_2^w)^(4^(2N - i))` for `i = 1, 2`.
pub fn top_part_holds(theta_p: &Endo, n_iter: u32, w: &[i64; 3]) -> Result<[bool; 2]> {
    let r = theta_p.ring();
    let top = h2(r).top_w_part(w)?;
    let mut out = [false; 2];
    for (i, slot) in out.iter_mut().enumerate() {
        let e = 4u32.pow(2 * n_iter - 1 - i as u32);
        let want = top.pow(e);
        let got = theta_p.image(i).top_w_part(w)?;
        *slot = got == want || got == want.neg();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn theta_one_over_f7() {
        let f7 = Ring::fp(7).unwrap();
        let th = theta(&f7, 1).unwrap();
        let tp = theta_prime(&th).unwrap();
        assert_eq!(tp.image(1), th.image(0));
        assert_eq!(
            *th.image(0),
            Poly::parse("-x1^4 + 2*x1^3*x3^2 - x1^2*x3^4 + x2 + x3^2", &f7, 3).unwrap()
        );
        assert_eq!(th.image(2), &Poly::var(&f7, 3, 2));
        let c = tp.image(1).coeff(&Monomial::from_exps(&[2, 0, 4]));
        assert!(!f7.is_zero(&c));
        for i in 0..3 {
            assert!(tp.image(1).deg_var(i).finite().unwrap() <= 4);
        }
        assert!(th.compose(&th).unwrap().is_identity());
        for w in &TOP_WEIGHTS {
            assert_eq!(top_part_holds(&tp, 1, w).unwrap(), [true, true], "w = {w:?}");
        }
    }

    #[test]
    fn guards() {
        let f2 = Ring::fp(2).unwrap();
        assert!(matches!(theta(&f2, 0), Err(Error::Precondition(_))));
        assert!(matches!(theta(&f2, 9), Err(Error::ResourceLimit(_))));
    }
}
