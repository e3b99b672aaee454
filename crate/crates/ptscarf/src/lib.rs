//! Numerical construction and verification of the C operator for the
//! PT-symmetric Scarf I potential.
//!
//! The potential lives on (-pi/2, pi/2) with complex conjugate parameters
//! (alpha, alpha*), alpha_R > 1/2. The library builds the eigensystem,
//! checks the alternating PT norm, evaluates the C(x, y) kernel three
//! independent ways (Abel-regularized eigenfunction series, closed
//! hypergeometric form, and the Appell-limit series), and verifies the
//! operator identities C psi_n = (-1)^n psi_n, C^2 = 1, completeness,
//! and the Hermitian parity limit.
//!
//! Entry points:
//! - [`scarf::ModelParams`] holds the model parameter alpha.
//! - [`scarf`] evaluates energies, eigenfunctions, and Schrodinger residuals.
//! - [`ptproduct`] builds quadrature rules and Gram matrices of the PT product.
//! - [`ckernel`] evaluates the C(x, y) kernel and applies it to functions.
//! - [`completeness`] runs delta-sequence reconstruction checks.
//! - [`suites`] bundles everything into machine-readable verification reports
//!   consumed by the `ptscarf` binary.
//!
//! Each major capability also has a runnable example under `examples/`.

pub mod ckernel;
pub mod completeness;
pub mod config;
pub mod ptproduct;
pub mod report;
pub mod scarf;
pub mod specfun;
pub mod suites;

pub use num_complex::Complex64;
