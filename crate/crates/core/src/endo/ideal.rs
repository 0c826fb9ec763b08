use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingSpec};

use super::Endo;

/// Finitely generated ideal of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealHandle {
    pub ring: Ring,
    pub generators: Vec<Elem>,
}

impl IdealHandle {
    pub fn new(ring: &Ring, generators: Vec<Elem>) -> IdealHandle {
        let generators = generators.into_iter().filter(|g| !ring.is_zero(g)).collect();
        IdealHandle {
            ring: ring.clone(),
            generators,
        }
    }

    pub fn zero(ring: &Ring) -> IdealHandle {
        IdealHandle::new(ring, Vec::new())
    }

    /// Whether the ideal is all of R.
    pub fn is_full(&self) -> bool {
        self.ring.unit_combination(&self.generators).is_some()
    }

    /// Coefficients expressing 1 in terms of the generators, if full.
    pub fn unit_combination(&self) -> Option<Vec<Elem>> {
        self.ring.unit_combination(&self.generators)
    }

    /// Non-negative integer generating the ideal, for Z and Z/nZ.
    fn integer_generator(&self) -> Option<BigInt> {
        let base = match self.ring.spec() {
            RingSpec::Integers => BigInt::zero(),
            RingSpec::IntegersModN(n) => BigInt::from(*n),
            RingSpec::PrimeField(p) => BigInt::from(*p),
            _ => return None,
        };
        Some(
            self.generators
                .iter()
                .map(|g| self.ring.to_bigint(g).unwrap())
                .fold(base, |acc, g| acc.gcd(&g)),
        )
    }

    /// The quotient ring R/I when it is in the supported tower.
    pub fn quotient(&self) -> Result<Ring> {
        if self.generators.is_empty() {
            return Ok(self.ring.clone());
        }
        let unsupported = || {
            Error::Unsupported(format!(
                "quotient of {} by ({})",
                self.ring,
                self.generators
                    .iter()
                    .map(|g| self.ring.format(g))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        };
        let d = self.integer_generator().ok_or_else(unsupported)?;
        if d.is_one() {
            return Err(unsupported());
        }
        if d.is_zero() {
            return Ok(self.ring.clone());
        }
        let d = d.to_u64().ok_or_else(unsupported)?;
        if let RingSpec::IntegersModN(n) | RingSpec::PrimeField(n) = self.ring.spec() {
            if d == *n {
                return Ok(self.ring.clone());
            }
        }
        Ring::zmod(d)
    }

    /// Image of an element in R/I.
    pub fn reduce_elem(&self, target: &Ring, a: &Elem) -> Elem {
        match self.ring.to_bigint(a) {
            Some(v) if target != &self.ring => target.from_bigint(&v),
            _ => a.clone(),
        }
    }
}

impl Endo {
    /// `phi_I`: coefficientwise reduction modulo `I`.
    pub fn reduce_mod(&self, ideal: &IdealHandle) -> Result<Endo> {
        if ideal.ring != *self.ring() {
            return Err(Error::RingMismatch(self.ring().to_string(), ideal.ring.to_string()));
        }
        let target = ideal.quotient()?;
        Ok(self.map_ring(&target, |a| ideal.reduce_elem(&target, a)))
    }
}
