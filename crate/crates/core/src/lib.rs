//! Exact Riemann solver, entropy pairs and first-order finite-volume schemes
//! for the reduced two-phase thin-film system
//!
//! ```text
//! f_t + (f^2 b / 2)_x          = 0
//! b_t + (f b^2 / 2)_x          = 0
//! g_t + (g^2 q / 2 + f b g)_x  = 0
//! q_t + (g q^2 / 2 + f b q)_x  = 0
//! ```
//!
//! (two film heights `f`, `g` and two concentration gradients `b`, `q`).
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy;
pub mod error;
pub mod fvm;
pub mod riemann;
pub mod roots;
pub mod scalar;
pub mod state;
pub mod system;
pub mod wavecurves;

pub use entropy::{
    compatibility_residual, convex_entropy, entropy, hessian_quadratic_forms,
    shock_entropy_production, ConvexGenerators, EntropyGenerators, PolynomialGenerators,
    ZeroGenerators,
};
pub use error::{Error, Result};
pub use fvm::{Grid1D, Scheme, SchemeConfig};
pub use riemann::{classify, solve, solve_with, CaseKind, CaseTag, OrderingPolicy, SolveOptions};
pub use scalar::Scalar;
pub use state::{is_admissible, AdmissibilityLevel, DEFAULT_HYPERBOLICITY_MARGIN};
pub use system::{eigen, flux, from_invariants, jacobian, to_invariants};
pub use wavecurves::{WaveFamily, WaveSpeed};

pub type State = state::State<f64>;
pub type State32 = state::State<f32>;
pub type FluxVector = state::FluxVector<f64>;
pub type EigenDecomposition = system::EigenDecomposition<f64>;
pub type InvariantCoords = system::InvariantCoords<f64>;
pub type EntropyPairValue = entropy::EntropyPairValue<f64>;
pub type WaveJump = wavecurves::WaveJump<f64>;
pub type RiemannFan = riemann::RiemannFan<f64>;
pub type RiemannFan32 = riemann::RiemannFan<f32>;
pub type CellField = fvm::CellField<f64>;
pub type RunDiagnostics = fvm::RunDiagnostics<f64>;
