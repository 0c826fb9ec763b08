//! Exact computations with polynomial automorphisms over concrete rings.
//!
//! The crate decides, where the available criteria permit, whether an
//! automorphism `phi` of `R[x1..xn]` is stably co-tame, meaning that the group
//! generated by `Aff_{n+1}(R)` and `phi` contains every tame automorphism of
//! `R[x1..xn]`. Positive answers come with a [`witness::GeneratorWord`]-level
//! certificate that an independent evaluator checks by exact composition.
//!
//! Layout:
//! - [`ring`]: coefficient rings (Q, Z, Z/nZ, F_p, GF(p^e));
//! - [`poly`]: sparse multivariate polynomials;
//! - [`endo`]: endomorphisms, affine and elementary maps, generator words;
//! - [`classify`]: good monomials, ideals, degree condition, decision procedure;
//! - [`witness`]: membership certificates and the word compiler.

pub mod classify;
pub mod endo;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod witness;

pub use error::{Error, Result};
pub use ring::{Elem, KSize, Ring, RingSpec};
