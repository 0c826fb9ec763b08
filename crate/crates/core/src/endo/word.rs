use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

use super::{AffineMap, Endo, InverseHint};

/// An automorphism `phi` together with its inverse, both in `n` variables and
/// extended to `n + 1` variables for word evaluation.
#[derive(Clone, Debug)]
pub struct BoundPhi {
    phi: Endo,
    phi_inv: Endo,
    ext: Endo,
    ext_inv: Endo,
}

impl BoundPhi {
    /// Binds `phi` with a claimed inverse, checked by composition in both orders.
    pub fn new(phi: Endo, phi_inv: Endo) -> Result<BoundPhi> {
        if !phi.compose(&phi_inv)?.is_identity() || !phi_inv.compose(&phi)?.is_identity() {
            return Err(Error::NotInvertible);
        }
        Ok(BoundPhi::trusted(phi, phi_inv))
    }

    fn trusted(phi: Endo, phi_inv: Endo) -> BoundPhi {
        let ext = phi.extend(1);
        let ext_inv = phi_inv.extend(1);
        BoundPhi {
            phi,
            phi_inv,
            ext,
            ext_inv,
        }
    }

    /// Binds a map whose inverse follows from its shape (affine or triangular).
    pub fn structured(phi: Endo) -> Result<BoundPhi> {
        for hint in [InverseHint::Affine, InverseHint::Triangular] {
            if let Ok(inv) = phi.invert_structured(hint) {
                return Ok(BoundPhi::trusted(phi, inv));
            }
        }
        Err(Error::HintMismatch(
            "structured (affine or triangular); supply the inverse explicitly".into(),
        ))
    }

    pub fn phi(&self) -> &Endo {
        &self.phi
    }

    pub fn inverse(&self) -> &Endo {
        &self.phi_inv
    }

    pub fn extended(&self) -> &Endo {
        &self.ext
    }

    pub fn extended_inverse(&self) -> &Endo {
        &self.ext_inv
    }

    pub fn n(&self) -> usize {
        self.phi.n()
    }

    pub fn ring(&self) -> &Ring {
        self.phi.ring()
    }
}

/// One letter of a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Affine(AffineMap),
    /// `phi` (exponent 1) or `phi^{-1}` (exponent -1), extended by one variable.
    Phi(i8),
}

impl Letter {
    pub fn inverse(&self) -> Letter {
        match self {
            Letter::Affine(a) => Letter::Affine(a.inverse()),
            Letter::Phi(e) => Letter::Phi(-e),
        }
    }
}

/// A product `L_1 ∘ L_2 ∘ ... ∘ L_k` of affine maps in `ambient` variables
/// and powers of the bound automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    pub ambient: usize,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn empty(ambient: usize) -> GeneratorWord {
        GeneratorWord {
            ambient,
            letters: Vec::new(),
        }
    }

    pub fn from_affine(a: AffineMap) -> GeneratorWord {
        GeneratorWord {
            ambient: a.n(),
            letters: vec![Letter::Affine(a)],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of `phi^{±1}` letters.
    pub fn phi_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::Phi(_))).count()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    /// `self ∘ other`.
    pub fn append(&mut self, other: &GeneratorWord) {
        debug_assert_eq!(self.ambient, other.ambient);
        self.letters.extend(other.letters.iter().cloned());
    }

    pub fn then(mut self, other: &GeneratorWord) -> GeneratorWord {
        self.append(other);
        self
    }

    /// Reverses the order and inverts every letter.
    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            ambient: self.ambient,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// `a ∘ self ∘ a^{-1}`.
    pub fn conjugate_by(&self, a: &AffineMap) -> GeneratorWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(Letter::Affine(a.clone()));
        letters.extend(self.letters.iter().cloned());
        letters.push(Letter::Affine(a.inverse()));
        GeneratorWord {
            ambient: self.ambient,
            letters,
        }
    }

    /// `self ∘ other ∘ self^{-1} ∘ other^{-1}`.
    pub fn commutator(&self, other: &GeneratorWord) -> GeneratorWord {
        self.clone()
            .then(other)
            .then(&self.inverse())
            .then(&other.inverse())
    }

    /// Merges adjacent affine letters, drops identities and cancels `phi phi^{-1}`.
    pub fn normalize(&self) -> GeneratorWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match (out.last(), l) {
                (Some(Letter::Affine(top)), Letter::Affine(a)) => {
                    let merged = top.compose(a);
                    out.pop();
                    if !merged.is_identity() {
                        out.push(Letter::Affine(merged));
                    }
                }
                (Some(Letter::Phi(e)), Letter::Phi(f)) if *e == -*f => {
                    out.pop();
                }
                (_, Letter::Affine(a)) if a.is_identity() => {}
                _ => out.push(l.clone()),
            }
        }
        GeneratorWord {
            ambient: self.ambient,
            letters: out,
        }
    }

    /// Evaluates the word with `phi` extended to `ambient` variables.
    ///
    /// Matching pairs `phi^e ... phi^{-e}` are evaluated as conjugations of
    /// their inner product; the result is the same map as the plain left to
    /// right product.
    pub fn eval(&self, bound: &BoundPhi) -> Result<Endo> {
        let ext = bound.extended();
        if ext.n() != self.ambient {
            return Err(Error::ArityMismatch {
                expected: self.ambient,
                got: ext.n(),
            });
        }
        let mut partner = vec![usize::MAX; self.letters.len()];
        let mut stack: Vec<(usize, i8)> = Vec::new();
        for (k, l) in self.letters.iter().enumerate() {
            if let Letter::Phi(e) = l {
                if *e != 1 && *e != -1 {
                    return Err(Error::Invalid(format!("phi exponent {e} is not ±1")));
                }
                match stack.last() {
                    Some(&(open, f)) if f == -*e => {
                        stack.pop();
                        partner[open] = k;
                    }
                    _ => stack.push((k, *e)),
                }
            }
        }
        self.eval_range(bound, &partner, 0, self.letters.len())
    }

    fn eval_range(&self, bound: &BoundPhi, partner: &[usize], lo: usize, hi: usize) -> Result<Endo> {
        let mut acc = Endo::identity(bound.ring(), self.ambient);
        let mut k = lo;
        while k < hi {
            match &self.letters[k] {
                Letter::Affine(a) => {
                    acc = acc.compose_affine(a)?;
                    k += 1;
                }
                Letter::Phi(e) if partner[k] != usize::MAX && partner[k] < hi => {
                    let close = partner[k];
                    let inner = self.eval_range(bound, partner, k + 1, close)?;
                    let block = conjugate_by_phi(bound, *e, &inner)?;
                    acc = acc.compose(&block)?;
                    k = close + 1;
                }
                Letter::Phi(e) => {
                    let m = if *e == 1 { bound.extended() } else { bound.extended_inverse() };
                    acc = acc.compose(m)?;
                    k += 1;
                }
            }
        }
        Ok(acc)
    }
}

/// `phi^e ∘ inner ∘ phi^{-e}` for the extended map.
fn conjugate_by_phi(bound: &BoundPhi, e: i8, inner: &Endo) -> Result<Endo> {
    let (fwd, back) = if e == 1 {
        (bound.extended(), bound.extended_inverse())
    } else {
        (bound.extended_inverse(), bound.extended())
    };
    let n = bound.n();
    // When inner fixes x_1..x_n and sends x_{n+1} to x_{n+1} + g(x_1..x_n),
    // the conjugate is the elementary map with g replaced by its image.
    if inner.n() == n + 1 {
        let last = inner.image(n);
        let var = Poly::var(bound.ring(), n + 1, n);
        let g = last.sub(&var);
        let fixes_base = (0..n).all(|i| *inner.image(i) == Poly::var(bound.ring(), n + 1, i));
        if fixes_base && !g.uses_var(n) {
            let h = fwd.apply(&g)?;
            let mut images: Vec<_> = (0..n).map(|i| Poly::var(bound.ring(), n + 1, i)).collect();
            images.push(var.add(&h));
            return Endo::new(bound.ring(), images);
        }
    }
    fwd.compose(&inner.compose(back)?)
}

#[cfg(test)]
mod tests {
    use super::*;


    fn bound_eps(r: &Ring) -> BoundPhi {
        let phi = Endo::elementary(&Poly::parse("x2*x3", r, 3).unwrap()).unwrap();
        BoundPhi::structured(phi).unwrap()
    }

    #[test]
    fn trivial_words() {
        let f5 = Ring::fp(5).unwrap();
        let b = bound_eps(&f5);
        assert!(GeneratorWord::empty(4).eval(&b).unwrap().is_identity());
        let w = GeneratorWord {
            ambient: 4,
            letters: vec![Letter::Phi(1), Letter::Phi(-1)],
        };
        assert!(w.eval(&b).unwrap().is_identity());
        assert!(w.normalize().is_empty());
    }

    #[test]
    fn conjugation_word() {
        let f5 = Ring::fp(5).unwrap();
        let b = bound_eps(&f5);
        let sigma = [1, 2, 0, 3];
        let s = AffineMap::permutation(&f5, &sigma).unwrap();
        let w = GeneratorWord {
            ambient: 4,
            letters: vec![Letter::Affine(s.clone()), Letter::Phi(1), Letter::Affine(s.inverse())],
        };
        let expected = s.to_endo().compose(b.extended()).unwrap().compose(&s.inverse().to_endo()).unwrap();
        assert_eq!(w.eval(&b).unwrap(), expected);
        let inv = w.inverse();
        assert!(w.eval(&b).unwrap().compose(&inv.eval(&b).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn ambient_mismatch() {
        let f5 = Ring::fp(5).unwrap();
        let b = bound_eps(&f5);
        assert!(GeneratorWord::empty(3).eval(&b).is_err());
    }

    #[test]
    fn explicit_inverse_is_checked() {
        let q = Ring::rationals();
        let phi = Endo::parse(&q, &["x1 + x2^2", "x2"]).unwrap();
        let wrong = Endo::parse(&q, &["x1 + x2^2", "x2"]).unwrap();
        assert!(BoundPhi::new(phi.clone(), wrong).is_err());
        let right = Endo::parse(&q, &["x1 - x2^2", "x2"]).unwrap();
        assert!(BoundPhi::new(phi, right).is_ok());
    }
}
