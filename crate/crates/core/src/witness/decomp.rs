use std::collections::BTreeMap;

use crate::endo::{AffineMap, BoundPhi, Endo};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Elem, Ring};

/// `coeff * eta(phi(x_index))`, where `eta(f)` substitutes the images of `eta` into `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Elem,
    pub eta: AffineMap,
    pub index: usize,
}

/// A claimed identity `target = sum_k terms[k] + affine` with `affine` of
/// degree at most one, witnessing `target ∈ M_phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MphiDecomposition {
    pub ring: Ring,
    pub n: usize,
    pub terms: Vec<Term>,
    pub affine: Poly,
    pub target: Poly,
}

impl MphiDecomposition {
    /// `phi(x_i)` itself.
    pub fn basic(phi: &Endo, i: usize) -> MphiDecomposition {
        let r = phi.ring();
        let n = phi.n();
        MphiDecomposition {
            ring: r.clone(),
            n,
            terms: vec![Term {
                coeff: r.one(),
                eta: AffineMap::identity(r, n),
                index: i,
            }],
            affine: Poly::zero(r, n),
            target: phi.image(i).clone(),
        }
    }

    /// An affine polynomial, which lies in `M_phi` for free.
    pub fn affine(h: &Poly) -> Result<MphiDecomposition> {
        if !h.is_affine() {
            return Err(Error::Precondition("affine part must have degree at most one".into()));
        }
        Ok(MphiDecomposition {
            ring: h.ring().clone(),
            n: h.nvars(),
            terms: Vec::new(),
            affine: h.clone(),
            target: h.clone(),
        })
    }

    /// Recomputes the right-hand side from `phi`.
    pub fn evaluate(&self, phi: &Endo) -> Result<Poly> {
        if phi.n() != self.n || phi.ring() != &self.ring {
            return Err(Error::ArityMismatch { expected: self.n, got: phi.n() });
        }
        let mut acc = self.affine.clone();
        for t in &self.terms {
            acc = acc.add(&t.eta.apply(phi.image(t.index)).scale(&t.coeff));
        }
        Ok(acc)
    }

    pub fn validate(&self, phi: &Endo) -> Result<bool> {
        Ok(self.evaluate(phi)? == self.target)
    }

    pub fn validate_bound(&self, bound: &BoundPhi) -> Result<bool> {
        self.validate(bound.phi())
    }

    /// Image under an affine map `lambda`.
    pub fn apply_affine(&self, lambda: &AffineMap) -> MphiDecomposition {
        MphiDecomposition {
            ring: self.ring.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    eta: lambda.compose(&t.eta),
                    index: t.index,
                })
                .collect(),
            affine: lambda.apply(&self.affine),
            target: lambda.apply(&self.target),
        }
    }

    pub fn scale(&self, a: &Elem) -> MphiDecomposition {
        let r = &self.ring;
        MphiDecomposition {
            ring: r.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter_map(|t| {
                    let c = r.mul(a, &t.coeff);
                    (!r.is_zero(&c)).then(|| Term { coeff: c, ..t.clone() })
                })
                .collect(),
            affine: self.affine.scale(a),
            target: self.target.scale(a),
        }
    }

    /// Adds an affine polynomial to both sides.
    pub fn add_affine(&self, h: &Poly) -> Result<MphiDecomposition> {
        if !h.is_affine() {
            return Err(Error::Precondition("affine part must have degree at most one".into()));
        }
        let mut out = self.clone();
        out.affine = out.affine.add(h);
        out.target = out.target.add(h);
        Ok(out)
    }

    /// `sum_k c_k D_k`, with identical terms merged.
    pub fn linear_combine(parts: &[(Elem, MphiDecomposition)]) -> Result<MphiDecomposition> {
        let first = &parts
            .first()
            .ok_or_else(|| Error::Invalid("empty linear combination".into()))?
            .1;
        let mut out = MphiDecomposition {
            ring: first.ring.clone(),
            n: first.n,
            terms: Vec::new(),
            affine: Poly::zero(&first.ring, first.n),
            target: Poly::zero(&first.ring, first.n),
        };
        for (c, d) in parts {
            if d.n != out.n || d.ring != out.ring {
                return Err(Error::ArityMismatch { expected: out.n, got: d.n });
            }
            let s = d.scale(c);
            out.terms.extend(s.terms);
            out.affine = out.affine.add(&s.affine);
            out.target = out.target.add(&s.target);
        }
        Ok(out.merge())
    }

    /// Collapses terms sharing `(eta, index)` and drops zero coefficients.
    pub fn merge(mut self) -> MphiDecomposition {
        let r = self.ring.clone();
        let mut order: Vec<(Vec<Vec<Elem>>, Vec<Elem>, usize)> = Vec::new();
        let mut acc: BTreeMap<(Vec<Vec<Elem>>, Vec<Elem>, usize), Term> = BTreeMap::new();
        for t in self.terms.drain(..) {
            let key = (t.eta.matrix().clone(), t.eta.translation_part().to_vec(), t.index);
            match acc.get_mut(&key) {
                Some(e) => e.coeff = r.add(&e.coeff, &t.coeff),
                None => {
                    order.push(key.clone());
                    acc.insert(key, t);
                }
            }
        }
        self.terms = order
            .into_iter()
            .filter_map(|k| acc.remove(&k))
            .filter(|t| !r.is_zero(&t.coeff))
            .collect();
        self
    }

    /// Number of distinct affine maps among the terms.
    pub fn distinct_maps(&self) -> usize {
        let mut seen: Vec<&AffineMap> = Vec::new();
        for t in &self.terms {
            if !seen.contains(&&t.eta) {
                seen.push(&t.eta);
            }
        }
        seen.len()
    }
}
