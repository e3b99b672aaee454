//! The C(x, y) operator kernel: Abel-regularized eigenfunction series,
//! closed hypergeometric form, the Appell-limit series route, kernel
//! action on functions, and the operator-identity checks built on them.
//!
//! The three kernel routes are deliberately independent code paths: the
//! Abel route sums the eigenfunction series termwise at t in (-1, 0) and
//! extrapolates t -> -1; the closed form evaluates a single 2F1; the
//! limit route sums the large-argument series with explicit gamma
//! factors. Their pairwise agreement is the core verification artifact.

mod abel;
mod action;
mod closed;
pub(crate) mod series;

pub use abel::{
    abel_constant, generating_rhs, kernel_abel, kernel_abel_values, kernel_constant,
    kernel_constant_calibration, KernelConstant,
};
pub use action::{c_apply, c_apply_checked, c_squared_check, parity_limit_check, singular_rule, ActionGrading};
pub use closed::{
    candidate_catalog, evaluate_candidate, f4_limit, kernel_closed, resolve_closed_form,
    singularity_slope, CandidateRecord, ClosedFormCandidate, ExponentBase, SecondParam,
    TypoResolution,
};
pub use series::{kernel_series, kernel_series_coefficient_form, series_is_nonconvergent};

use crate::scarf::{ModelParams, ScarfError};
use crate::specfun::SpecFunError;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("point ({x}, {y}) lies on the singular band |sin x + sin y| = {s:e} <= 1e-9 where the kernel is distribution-valued")]
    SingularLine { x: f64, y: f64, s: f64 },
    #[error("kernel point coordinates must lie strictly inside (-pi/2, pi/2); got ({x}, {y})")]
    OutsideDomain { x: f64, y: f64 },
    #[error("Abel schedule must decrease strictly toward -1 with all t in (-1, 0]")]
    InvalidSchedule,
    #[error("Richardson extrapolation unstable: successive extrapolants differ by {delta:e} > 100 x tolerance {tol:e}")]
    ExtrapolationUnstable { delta: f64, tol: f64 },
    #[error("no convergent route for the generating function at t = {t}")]
    NoConvergentRoute { t: f64 },
    #[error("graded quadrature levels disagree by {delta:e} > 10 x tolerance {tol:e}")]
    GradingDisagreement { delta: f64, tol: f64 },
    #[error("parity-limit check requires alpha_I = 0 exactly, got {alpha_i}")]
    HermitianRequired { alpha_i: f64 },
    #[error(transparent)]
    Scarf(#[from] ScarfError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

pub type KernelResult<T> = Result<T, KernelError>;

/// Derived hypergeometric parameters of the closed form, plus the
/// normalization constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub norm_const: Complex64,
}

impl KernelParams {
    pub fn new(p: &ModelParams) -> KernelResult<Self> {
        let ar = p.alpha_r();
        Ok(Self {
            a: Complex64::new(ar + 1.0, 0.0),
            b: Complex64::new(ar + 1.5, 0.0),
            c: Complex64::new(1.0, 0.0) + p.alpha(),
            d: Complex64::new(1.0, 0.0) + p.beta(),
            norm_const: kernel_constant(p)?.value,
        })
    }
}

/// An evaluation point (x, y) with its derived closed-form quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub x: f64,
    pub y: f64,
    sin_x: f64,
    sin_y: f64,
}

impl KernelPoint {
    pub fn new(x: f64, y: f64) -> KernelResult<Self> {
        if x.abs() >= FRAC_PI_2 || y.abs() >= FRAC_PI_2 {
            return Err(KernelError::OutsideDomain { x, y });
        }
        Ok(Self {
            x,
            y,
            sin_x: x.sin(),
            sin_y: y.sin(),
        })
    }

    pub fn sin_x(&self) -> f64 {
        self.sin_x
    }

    pub fn sin_y(&self) -> f64 {
        self.sin_y
    }

    /// (1 - sin x)(1 - sin y)
    pub fn a_product(&self) -> f64 {
        (1.0 - self.sin_x) * (1.0 - self.sin_y)
    }

    /// (1 + sin x)(1 + sin y)
    pub fn b_product(&self) -> f64 {
        (1.0 + self.sin_x) * (1.0 + self.sin_y)
    }

    /// z = (1 + sin x)(1 + sin y) / [(1 - sin x)(1 - sin y)], positive.
    pub fn z(&self) -> f64 {
        self.b_product() / self.a_product()
    }

    /// Distance measure to the singular line y = -x.
    pub fn singular_measure(&self) -> f64 {
        (self.sin_x + self.sin_y).abs()
    }

    pub fn reject_singular(&self) -> KernelResult<()> {
        let s = self.singular_measure();
        if s <= 1e-9 {
            return Err(KernelError::SingularLine {
                x: self.x,
                y: self.y,
                s,
            });
        }
        Ok(())
    }

    /// Generating-function arguments U(t), V(t).
    pub fn uv(&self, t: f64) -> (Complex64, Complex64) {
        let denom = (1.0 + t) * (1.0 + t);
        (
            Complex64::new(self.a_product() * t / denom, 0.0),
            Complex64::new(self.b_product() * t / denom, 0.0),
        )
    }

    pub fn reflected(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            sin_x: -self.sin_x,
            sin_y: -self.sin_y,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            sin_x: self.sin_y,
            sin_y: self.sin_x,
        }
    }
}

/// Abel schedule t_k -> -1 and the Richardson order used at the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelSchedule {
    pub t_values: Vec<f64>,
    pub extrapolation_order: usize,
}

impl AbelSchedule {
    /// t_k = -1 + 2^{-k} for k in [k_min, k_max].
    pub fn geometric(k_min: u32, k_max: u32, extrapolation_order: usize) -> Self {
        let t_values = (k_min..=k_max)
            .map(|k| -1.0 + 0.5f64.powi(k as i32))
            .collect();
        Self {
            t_values,
            extrapolation_order,
        }
    }

    pub fn validate(&self) -> KernelResult<()> {
        if self.t_values.is_empty() {
            return Err(KernelError::InvalidSchedule);
        }
        let mut prev = f64::INFINITY;
        for &t in &self.t_values {
            if !(t > -1.0 && t <= 0.0 && t < prev) {
                return Err(KernelError::InvalidSchedule);
            }
            prev = t;
        }
        Ok(())
    }
}

impl Default for AbelSchedule {
    fn default() -> Self {
        Self::geometric(4, 12, 2)
    }
}

/// Eigenfunction prefactor product over both coordinates:
/// prod_{w = x, y} (1 - sin w)^{alpha/2 + 1/4} (1 + sin w)^{alpha*/2 + 1/4}.
pub(crate) fn prefactor(pt: &KernelPoint, p: &ModelParams) -> Complex64 {
    let alpha = p.alpha();
    let e_minus = alpha * 0.5 + 0.25;
    let e_plus = alpha.conj() * 0.5 + 0.25;
    crate::specfun::real_pow(1.0 - pt.sin_x(), e_minus)
        * crate::specfun::real_pow(1.0 + pt.sin_x(), e_plus)
        * crate::specfun::real_pow(1.0 - pt.sin_y(), e_minus)
        * crate::specfun::real_pow(1.0 + pt.sin_y(), e_plus)
}
