//! Exact spectral analysis of Boolean functions.
//!
//! The library computes Walsh–Hadamard spectra, total influence and spectral
//! entropy of Boolean functions on up to 24 variables, exactly where the
//! algebra permits (integer spectra, rational probabilities and influences)
//! and with certified floating-point error bounds elsewhere.
//!
//! On top of the core machinery it provides:
//!
//! * a small formula language (`&`, `|`, `!`, `x1..x24`) with the named
//!   constructions `g_m`, `G_m`, `tau`, and friends,
//! * the lexicographic function calculus: exact influence via Hart's formula,
//!   exact limit profiles for rational measures via the periodic-expansion
//!   fixed point, and certified truncation for irrational measures,
//! * the `(p, I, H)` profile algebra for disjoint conjunction/disjunction,
//!   duals and the `kappa = (lambda ⊓ kappa)^†` fixed point,
//! * biased Fourier analysis and the composition lemma for recursive
//!   constructions,
//! * the three entropy/influence lower-bound pipelines (`lb1`, `lb2`, `lb3`)
//!   together with the `beta`/`gamma` series machinery,
//! * single-flip Lipschitz checks for influence and entropy, the Δ-profile
//!   identity for entropy differences, and the Niho trace function over
//!   GF(2^n) as a near-tightness witness,
//! * exhaustive searches over small function spaces.

pub mod acceptance;
pub mod bf;
pub mod biased;
pub mod bounds;
pub mod error;
pub mod formula;
pub mod lex;
pub mod lipschitz;
pub mod niho;
pub mod numeric;
pub mod profile;
pub mod search;

pub use bf::{BooleanFunction, SpectralDistribution, Spectrum};
pub use error::Error;
pub use formula::FormulaAst;
pub use lex::{BinaryExpansion, LexProfile};
pub use profile::FunctionProfile;

/// Exact rational scalar used for probabilities and influences.
pub type Rat = num::BigRational;

/// Largest supported variable count; a truth table is `2^24` entries.
pub const MAX_VARS: u32 = 24;

/// Inverse golden ratio `(sqrt(5)-1)/2`, the bias fixed point of NAND.
#[allow(clippy::excessive_precision)]
pub const PHI: f64 = 0.618033988749894848204586834365638118_f64;

pub(crate) fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}
