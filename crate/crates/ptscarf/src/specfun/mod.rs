//! Complex-parameter special functions the rest of the crate is built on:
//! log-gamma, Pochhammer symbols, Jacobi polynomials, the Gauss
//! hypergeometric function with analytic continuation, and the Appell F4
//! double series.
//!
//! Everything here is a pure function of its arguments and safe to call
//! from any number of threads.

mod appell;
mod gamma;
mod hyp2f1;
mod jacobi;

pub use appell::{appell_f4, f4_large_argument};
pub use gamma::{gamma, ln_sin_pi, log_gamma, pochhammer, recip_gamma};
pub(crate) use gamma::sin_pi;
pub use hyp2f1::gauss_2f1;
pub use jacobi::{jacobi_p, JacobiSeq};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma pole: argument {z} is within {tol} of a nonpositive integer")]
    GammaPole { z: Complex64, tol: f64 },
    #[error("2F1 parameter c = {c} is at or within 1e-12 of a nonpositive integer")]
    HypCNonpositiveInteger { c: Complex64 },
    #[error("2F1 parameter degeneracy unresolved near z = {z}: {detail}")]
    ParameterDegeneracy { z: Complex64, detail: String },
    #[error("2F1 branch point: z = {z} with Re(c-a-b) = {re_cab} <= 0")]
    BranchPoint { z: Complex64, re_cab: f64 },
    #[error("F4 arguments outside convergence domain: sqrt|U| + sqrt|V| = {measure} >= 1")]
    F4Divergent { measure: f64 },
    #[error("series did not converge within {max_terms} terms (last relative term {last_rel})")]
    NonConvergent { max_terms: usize, last_rel: f64 },
    #[error("term magnitude {magnitude} exceeded the overflow guard {guard}")]
    Overflow { magnitude: f64, guard: f64 },
    #[error("Jacobi recurrence denominator magnitude {magnitude} below 1e-14 at degree {degree}")]
    RecurrenceBreakdown { degree: usize, magnitude: f64 },
    #[error("non-finite value produced by {context}")]
    NonFinite { context: &'static str },
}

pub type SpecFunResult<T> = Result<T, SpecFunError>;

/// Truncation policy shared by the series evaluators.
#[derive(Debug, Clone, Copy)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub overflow_guard: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, overflow_guard: f64) -> Self {
        assert!(max_terms >= 1, "max_terms must be >= 1");
        assert!(rel_tol > 0.0 && rel_tol < 1.0, "rel_tol must lie in (0, 1)");
        assert!(overflow_guard > 0.0, "overflow_guard must be positive");
        Self {
            max_terms,
            rel_tol,
            overflow_guard,
        }
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 400_000,
            rel_tol: 1e-13,
            overflow_guard: 1e290,
        }
    }
}

/// Guard helper: reject NaN/Inf escaping a public operation.
pub(crate) fn ensure_finite(z: Complex64, context: &'static str) -> SpecFunResult<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(SpecFunError::NonFinite { context })
    }
}

/// w^p for positive real w via exp(p ln w) with the real logarithm.
pub fn real_pow(w: f64, p: Complex64) -> Complex64 {
    debug_assert!(w > 0.0);
    (p * w.ln()).exp()
}
