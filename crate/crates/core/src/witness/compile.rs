use crate::endo::{AffineMap, GeneratorWord, Letter};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly};
use crate::ring::{Elem, Ring};

use super::{MphiDecomposition, Seed};

/// Affine map on `n + 1` variables sending `x_{n+1}` to `x_{n+1} + h`.
pub fn hat_affine(h: &Poly) -> Result<AffineMap> {
    let r = h.ring();
    let n = h.nvars();
    if !h.is_affine() {
        return Err(Error::Precondition(format!("{h} is not affine")));
    }
    let mut a = linalg::identity(r, n + 1);
    for (i, row) in a.iter_mut().enumerate().take(n) {
        row[n] = h.linear_coeff(i);
    }
    let mut b = vec![r.zero(); n + 1];
    b[n] = h.constant_term();
    AffineMap::new(r, a, b)
}

/// Affine map on `n + 1` variables sending `x_{i+1}` to `x_{i+1} + h` where
/// `h` is affine in the other variables.
fn elementary_affine(r: &Ring, ambient: usize, i: usize, h: &Poly) -> Result<AffineMap> {
    let mut a = linalg::identity(r, ambient);
    for (j, row) in a.iter_mut().enumerate() {
        if j != i {
            row[i] = h.linear_coeff(j);
        }
    }
    let mut b = vec![r.zero(); ambient];
    b[i] = h.constant_term();
    AffineMap::new(r, a, b)
}

/// Word evaluating to `x_{n+1} -> x_{n+1} + dec.target`: one conjugate
/// `eta ∘ phi ∘ (x_{n+1} -> x_{n+1} + sum_i c_i x_i) ∘ phi^{-1} ∘ eta^{-1}` per
/// distinct `eta`, then one affine letter for the affine part.
pub fn compile_hat_word(dec: &MphiDecomposition) -> Result<GeneratorWord> {
    let r = &dec.ring;
    let n = dec.n;
    let mut groups: Vec<(AffineMap, Vec<Elem>)> = Vec::new();
    for t in &dec.terms {
        let slot = match groups.iter().position(|(eta, _)| *eta == t.eta) {
            Some(k) => k,
            None => {
                groups.push((t.eta.clone(), vec![r.zero(); n]));
                groups.len() - 1
            }
        };
        let c = &mut groups[slot].1[t.index];
        *c = r.add(c, &t.coeff);
    }
    let mut w = GeneratorWord::empty(n + 1);
    for (eta, coeffs) in groups {
        if coeffs.iter().all(|c| r.is_zero(c)) {
            continue;
        }
        let ell = Poly::from_terms(
            r,
            n,
            coeffs.into_iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c)),
        );
        let ext = eta.extend(1);
        w.push(Letter::Affine(ext.clone()));
        w.push(Letter::Phi(1));
        w.push(Letter::Affine(hat_affine(&ell)?));
        w.push(Letter::Phi(-1));
        w.push(Letter::Affine(ext.inverse()));
    }
    if !dec.affine.is_zero() {
        w.push(Letter::Affine(hat_affine(&dec.affine)?));
    }
    Ok(w.normalize())
}

/// Transposition of positions `i` and `j` in `ambient` variables.
fn transposition(r: &Ring, ambient: usize, i: usize, j: usize) -> Result<AffineMap> {
    let mut sigma: Vec<usize> = (0..ambient).collect();
    sigma.swap(i, j);
    AffineMap::permutation(r, &sigma)
}

/// Compiles words for `x_1 -> x_1 + f(x_2, ..., x_n)` (extended by a fixed
/// `x_{n+1}`) from a word for the seed in its hat form.
pub struct TameCompiler {
    ring: Ring,
    n: usize,
    seed: Seed,
    /// Words for `x_1 -> x_1 + x_i * x_{n+1}` (product seed) indexed by `i`, or
    /// the single word for `x_1 -> x_1 + x_2^2 * x_3` (square seed).
    e_words: Vec<Option<GeneratorWord>>,
    tau: AffineMap,
}

impl TameCompiler {
    pub fn new(seed: Seed, seed_word: &GeneratorWord, ring: &Ring) -> Result<TameCompiler> {
        let ambient = seed_word.ambient;
        let n = ambient - 1;
        if n < 2 || (seed == Seed::ProductSquare && n != 2) {
            return Err(Error::Precondition(format!("seed {seed:?} in {n} variables")));
        }
        let tau = transposition(ring, ambient, 0, n)?;
        let mut e_words = vec![None; n];
        match seed {
            Seed::Product => {
                for (i, slot) in e_words.iter_mut().enumerate().skip(1) {
                    // sigma = (1, n+1)(2, i+1); conjugating the seed by it
                    // gives x_1 -> x_1 + x_{i+1} x_{n+1}
                    let mut sigma: Vec<usize> = (0..ambient).collect();
                    sigma.swap(0, n);
                    sigma.swap(1, i);
                    let s = AffineMap::permutation(ring, &sigma)?;
                    *slot = Some(seed_word.conjugate_by(&s.inverse()).normalize());
                }
            }
            Seed::ProductSquare => {
                e_words[1] = Some(seed_word.conjugate_by(&tau).normalize());
            }
        }
        Ok(TameCompiler {
            ring: ring.clone(),
            n,
            seed,
            e_words,
            tau,
        })
    }

    /// Word for the monomial map `x_1 -> x_1 + c x^t`, `t` supported on `x_2..x_n`.
    fn monomial_word(&self, c: &Elem, t: &[u32]) -> Result<GeneratorWord> {
        let r = &self.ring;
        let ambient = self.n + 1;
        let deg: u32 = t.iter().sum();
        if deg <= 1 {
            let mut e = t.to_vec();
            e.push(0);
            let h = Poly::term(r, Monomial::from_exps(&e), c.clone());
            return Ok(GeneratorWord::from_affine(elementary_affine(r, ambient, 0, &h)?));
        }
        let (i, step) = match self.seed {
            Seed::Product => ((1..self.n).find(|&i| t[i] > 0).unwrap(), 1),
            Seed::ProductSquare => (1, 2),
        };
        if t[i] < step {
            return Err(Error::Invalid("square seed needs an x2 power of at least two".into()));
        }
        let mut rest = t.to_vec();
        rest[i] -= step;
        let inner = self.monomial_word(c, &rest)?.conjugate_by(&self.tau);
        let e = self.e_words[i].as_ref().unwrap();
        Ok(inner.commutator(e))
    }

    /// Word for `x_1 -> x_1 + f`, `f` in `n` variables not involving `x_1`.
    pub fn compile(&self, f: &Poly) -> Result<GeneratorWord> {
        if f.nvars() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: f.nvars() });
        }
        if f.uses_var(0) {
            return Err(Error::VariableSupport("target must not involve x1".into()));
        }
        let mut w = GeneratorWord::empty(self.n + 1);
        let aff = f.affine_part();
        if !aff.is_zero() {
            w.push(Letter::Affine(elementary_affine(
                &self.ring,
                self.n + 1,
                0,
                &aff.embed(self.n + 1),
            )?));
        }
        for (m, c) in f.nonaffine_part().terms() {
            w.append(&self.monomial_word(c, m.exps())?);
        }
        Ok(w.normalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{BoundPhi, Endo};

    #[test]
    fn hat_word_evaluates_to_target() {
        let f5 = Ring::fp(5).unwrap();
        let phi = Endo::parse(&f5, &["x1 + x2*x3", "x2", "x3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 0)
            .add_affine(&Poly::parse("-x1 + 2", &f5, 3).unwrap())
            .unwrap();
        let w = compile_hat_word(&d).unwrap();
        let b = BoundPhi::structured(phi).unwrap();
        let expect = Endo::hat_elementary(&Poly::parse("x2*x3 + 2", &f5, 3).unwrap());
        assert_eq!(w.eval(&b).unwrap(), expect);
    }

    #[test]
    fn tame_words_from_product_seed() {
        let f5 = Ring::fp(5).unwrap();
        let phi = Endo::parse(&f5, &["x1", "x2", "x3 + x1*x2"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 2)
            .add_affine(&Poly::parse("-x3", &f5, 3).unwrap())
            .unwrap();
        assert_eq!(d.target, Seed::Product.poly(&f5, 3));
        let b = BoundPhi::structured(phi).unwrap();
        let hat = compile_hat_word(&d).unwrap();
        let tc = TameCompiler::new(Seed::Product, &hat, &f5).unwrap();
        for f in ["x2", "x2*x3", "x2^2", "3*x2^2*x3 + x3 + 1", "x3^3"] {
            let f = Poly::parse(f, &f5, 3).unwrap();
            let w = tc.compile(&f).unwrap();
            let expect = Endo::elementary(&f).unwrap().extend(1);
            assert_eq!(w.eval(&b).unwrap(), expect, "target {f}");
        }
    }

    #[test]
    fn tame_words_from_square_seed() {
        let f4 = Ring::gf(2, 2).unwrap();
        let phi = Endo::parse(&f4, &["x1", "x2 + x1^3"]).unwrap();
        let d = MphiDecomposition::basic(&phi, 1)
            .add_affine(&Poly::parse("x2", &f4, 2).unwrap())
            .unwrap();
        let d = super::super::convert_cube(&d).unwrap();
        let b = BoundPhi::structured(phi).unwrap();
        let hat = compile_hat_word(&d).unwrap();
        let tc = TameCompiler::new(Seed::ProductSquare, &hat, &f4).unwrap();
        for f in ["x2^2", "x2^3 + x2", "[0,1]*x2^4"] {
            let f = Poly::parse(f, &f4, 2).unwrap();
            let w = tc.compile(&f).unwrap();
            let expect = Endo::elementary(&f).unwrap().extend(1);
            assert_eq!(w.eval(&b).unwrap(), expect, "target {f}");
        }
    }
}
