//! The PT-symmetric Scarf I model on (-pi/2, pi/2): potential, real
//! spectrum, normalized eigenfunctions, and a finite-difference residual
//! check of the Schrodinger equation.
//!
//! The model parameter is a single complex alpha with Re(alpha) > 1/2; the
//! second Scarf parameter is always its conjugate, which is what makes the
//! Hamiltonian PT-symmetric and the spectrum real.

use crate::specfun::{log_gamma, real_pow, JacobiSeq, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, LN_2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScarfError {
    #[error("alpha = {alpha} violates Re(alpha) > 1/2 (got Re = {re})")]
    InvalidAlpha { alpha: Complex64, re: f64 },
    #[error("x = {x} is outside the potential domain (|x| < pi/2 - 1e-12)")]
    PotentialDomain { x: f64 },
    #[error("x = {x} is outside the closed interval [-pi/2, pi/2]")]
    OutsideInterval { x: f64 },
    #[error("stencil around x = {x} with step {h} leaves (-pi/2, pi/2); grid must stay >= 4h from the endpoints")]
    StencilOutOfDomain { x: f64, h: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Model parameter alpha; beta = alpha* is implied and never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: Complex64,
}

impl ModelParams {
    pub fn new(alpha: Complex64) -> Result<Self, ScarfError> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) || alpha.re <= 0.5 {
            return Err(ScarfError::InvalidAlpha {
                alpha,
                re: alpha.re,
            });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// beta = alpha*
    pub fn beta(&self) -> Complex64 {
        self.alpha.conj()
    }

    pub fn alpha_r(&self) -> f64 {
        self.alpha.re
    }

    pub fn alpha_i(&self) -> f64 {
        self.alpha.im
    }

    pub fn is_hermitian(&self) -> bool {
        self.alpha.im == 0.0
    }
}

/// One bound state: index, energy, and the normalization constant D_n
/// (including its i^n phase).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate {
    pub n: u32,
    pub energy: f64,
    pub norm_const: Complex64,
}

impl Eigenstate {
    pub fn new(n: u32, p: &ModelParams) -> Result<Self, ScarfError> {
        Ok(Self {
            n,
            energy: energy(n, p),
            norm_const: normalization(n, p)?,
        })
    }

    pub fn eval(&self, p: &ModelParams, x: f64) -> Result<Complex64, ScarfError> {
        eigenfunction(self.n, p, x)
    }
}

/// V(x) = ((alpha^2 + beta^2)/2 - 1/4) / cos^2 x + (alpha^2 - beta^2)/2 * sin x / cos^2 x.
pub fn potential(x: f64, p: &ModelParams) -> Result<Complex64, ScarfError> {
    if x.abs() >= FRAC_PI_2 - 1e-12 {
        return Err(ScarfError::PotentialDomain { x });
    }
    let a2 = p.alpha() * p.alpha();
    let b2 = p.beta() * p.beta();
    let cos2 = x.cos() * x.cos();
    Ok(((a2 + b2) * 0.5 - 0.25) / cos2 + (a2 - b2) * 0.5 * x.sin() / cos2)
}

/// E_n = (n + alpha_R + 1/2)^2, exactly real.
pub fn energy(n: u32, p: &ModelParams) -> f64 {
    let base = n as f64 + p.alpha_r() + 0.5;
    base * base
}

fn ln_norm_radicand(n: u32, p: &ModelParams) -> Result<f64, ScarfError> {
    let ar = p.alpha_r();
    let nf = n as f64;
    // (2n + 2aR + 1) n! Gamma(n + 2aR + 1) / (2^{2aR+1} |Gamma(n + alpha + 1)|^2)
    let ln = (2.0 * nf + 2.0 * ar + 1.0).ln()
        + log_gamma(Complex64::new(nf + 1.0, 0.0))?.re
        + log_gamma(Complex64::new(nf + 2.0 * ar + 1.0, 0.0))?.re
        - (2.0 * ar + 1.0) * LN_2
        - 2.0 * log_gamma(Complex64::new(nf + 1.0, 0.0) + p.alpha())?.re;
    Ok(ln)
}

/// D_n = i^n sqrt[(2n+2aR+1) n! G(n+2aR+1) / (2^{2aR+1} G(n+a+1) G(n+a*+1))].
///
/// The conjugate Gamma pair makes the radicand real and positive; the i^n
/// phase is kept because the alternating PT norm depends on it.
pub fn normalization(n: u32, p: &ModelParams) -> Result<Complex64, ScarfError> {
    let root = (0.5 * ln_norm_radicand(n, p)?).exp();
    Ok(i_pow(n) * root)
}

fn i_pow(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// psi_n(x) = D_n (1 - sin x)^{alpha/2 + 1/4} (1 + sin x)^{alpha*/2 + 1/4}
///            P_n^{(alpha, alpha*)}(sin x), with psi_n(+-pi/2) = 0 as a limit.
pub fn eigenfunction(n: u32, p: &ModelParams, x: f64) -> Result<Complex64, ScarfError> {
    if x.abs() > FRAC_PI_2 {
        return Err(ScarfError::OutsideInterval { x });
    }
    let u = x.sin();
    if 1.0 - u.abs() <= 0.0 {
        // both exponent real parts exceed 1/2, so the boundary limit is 0
        return Ok(Complex64::new(0.0, 0.0));
    }
    let dn = normalization(n, p)?;
    let alpha = p.alpha();
    let pref = real_pow(1.0 - u, alpha * 0.5 + 0.25) * real_pow(1.0 + u, alpha.conj() * 0.5 + 0.25);
    let pn = crate::specfun::jacobi_p(n, alpha, alpha.conj(), u)?;
    Ok(dn * pref * pn)
}

/// psi_0 .. psi_{count-1} at a single x, sharing one Jacobi recurrence and a
/// running D_n update; O(count) total.
pub fn eigenfunction_batch(
    p: &ModelParams,
    x: f64,
    count: usize,
) -> Result<Vec<Complex64>, ScarfError> {
    if x.abs() > FRAC_PI_2 {
        return Err(ScarfError::OutsideInterval { x });
    }
    let u = x.sin();
    if 1.0 - u.abs() <= 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); count]);
    }
    let alpha = p.alpha();
    let ar = p.alpha_r();
    let pref = real_pow(1.0 - u, alpha * 0.5 + 0.25) * real_pow(1.0 + u, alpha.conj() * 0.5 + 0.25);
    let mut jac = JacobiSeq::new(alpha, alpha.conj(), u);
    let mut dn = normalization(0, p)?;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        out.push(dn * pref * jac.next_value()?);
        let nf = n as f64;
        // radicand ratio D_{n+1}^2 / D_n^2 (real positive), phase advances by i
        let ratio = (2.0 * nf + 2.0 * ar + 3.0) / (2.0 * nf + 2.0 * ar + 1.0)
            * (nf + 1.0)
            * (nf + 2.0 * ar + 1.0)
            / (Complex64::new(nf + 1.0, 0.0) + alpha).norm_sqr();
        dn *= Complex64::new(0.0, 1.0) * ratio.sqrt();
    }
    Ok(out)
}

/// Max over the grid of |-psi'' + (V - E) psi| / max|psi|, with psi'' from
/// the 5-point central stencil of step h.
pub fn schrodinger_residual(
    n: u32,
    p: &ModelParams,
    interior_grid: &[f64],
    h: f64,
) -> Result<f64, ScarfError> {
    assert!(h > 0.0, "step must be positive");
    let en = energy(n, p);
    let mut max_res = 0.0f64;
    let mut max_psi = 0.0f64;
    for &x in interior_grid {
        if FRAC_PI_2 - x.abs() < 4.0 * h {
            return Err(ScarfError::StencilOutOfDomain { x, h });
        }
        let stencil = [
            eigenfunction(n, p, x - 2.0 * h)?,
            eigenfunction(n, p, x - h)?,
            eigenfunction(n, p, x)?,
            eigenfunction(n, p, x + h)?,
            eigenfunction(n, p, x + 2.0 * h)?,
        ];
        let second = (-stencil[0] + 16.0 * stencil[1] - 30.0 * stencil[2] + 16.0 * stencil[3]
            - stencil[4])
            / (12.0 * h * h);
        let res = (-second + (potential(x, p)? - en) * stencil[2]).norm();
        max_res = max_res.max(res);
        max_psi = max_psi.max(stencil[2].norm());
    }
    Ok(max_res / max_psi)
}

/// Uniform interior grid used by the residual suites: `count` points on
/// [-pi/2 + margin, pi/2 - margin].
pub fn interior_grid(count: usize, margin: f64) -> Vec<f64> {
    let lo = -FRAC_PI_2 + margin;
    let hi = FRAC_PI_2 - margin;
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count as f64 - 1.0))
        .collect()
}

/// Default residual grid: 41 uniform points staying 0.37 clear of the
/// endpoints (well beyond the 4h stencil requirement for h <= 2e-2).
pub fn default_residual_grid() -> Vec<f64> {
    interior_grid(41, 0.37)
}
