//! Membership certificates for `M_phi`, their conversion to a seed, and
//! compilation into generator words that realize tame targets.

mod compile;
mod convert;
mod decomp;
mod delta;
mod extract;
mod pipeline;
pub mod theta;

pub use compile::{compile_hat_word, hat_affine, TameCompiler};
pub use convert::{convert_cube, convert_square, move_to_front, Seed};
pub use decomp::{MphiDecomposition, Term};
pub use delta::{
    delta_apply, delta_decomposition, delta_power, delta_route, find_delta_route, ml_membership,
    DeltaShape, DeltaSpec,
};
pub use extract::vandermonde_extract;
pub use pipeline::{
    build_witness, find_seed, verify_witness, SearchOptions, SeedCase, SeedCertificate, SeedRoute,
    VerifyReport, Witness, DEFAULT_MAX_DEGREE,
};
