//! Exact periodic traveling waves of the derivative nonlinear Schrödinger
//! equation on a torus, built from Jacobi elliptic functions.
//!
//! The crate constructs the dnoidal-form profiles
//! `Phi^2 = eta3 dn^2(x/2g) / (1 + beta^2 sn^2(x/2g))`, inverts the period
//! map to parameterize them by the torus half-length, evaluates their
//! whole-line soliton limits, and verifies the quantitative structure:
//! stationary-equation residuals, mass identities, monotonicity of the
//! modulus and period maps, and long-period convergence in Sobolev and
//! uniform norms.
//!
//! The numeric kernel is generic over the scalar type (`f32`/`f64`) through
//! [`scalar::Real`]; the aliases below pin the binary64 instantiation that
//! all documented tolerances refer to.

pub mod elliptic;
pub mod functionals;
pub mod grid;
pub mod params;
pub mod profiles;
pub mod scalar;
pub mod verify;

pub use scalar::Real;

/// Binary64 modulus.
pub type Modulus64 = elliptic::Modulus<f64>;
/// Binary64 Jacobi triple.
pub type JacobiTriple64 = elliptic::JacobiTriple<f64>;
/// Binary64 parameter context.
pub type WaveContext64 = params::WaveContext<f64>;
/// Binary64 periodic profile bundle.
pub type TorusProfile64 = params::TorusProfile<f64>;
/// Binary64 soliton profile.
pub type SolitonProfile64 = profiles::SolitonProfile<f64>;
/// Binary64 real periodic grid.
pub type RealGrid64 = grid::RealGrid<f64>;
/// Binary64 complex periodic grid.
pub type ComplexGrid64 = grid::ComplexGrid<f64>;
/// Binary64 convergence-study row.
pub type ConvergenceRow64 = functionals::ConvergenceRow<f64>;
