//! Abel regularization of the kernel series: termwise sums along a
//! schedule t_k -> -1 followed by polynomial extrapolation in (1 + t),
//! the bilinear generating-function evaluation that cross-checks them,
//! and the closed-form normalization constant.

use super::series::{weighted_series, CoefficientStream};
use super::{prefactor, AbelSchedule, KernelError, KernelPoint, KernelResult};
use crate::scarf::ModelParams;
use crate::specfun::{
    appell_f4, f4_large_argument, log_gamma, sin_pi, JacobiSeq, SeriesControl,
};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// The n-independent constant K = Gamma(2aR+1) / (2^{2aR+1} |Gamma(alpha+1)|^2)
/// linking the explicit series coefficients r_n to the generating-function
/// normalization: r_n = K * (2n+2aR+1) n! (2aR+1)_n / ((alpha+1)_n (alpha*+1)_n).
pub fn abel_constant(p: &ModelParams) -> KernelResult<f64> {
    let ar = p.alpha_r();
    let ln = log_gamma(Complex64::new(2.0 * ar + 1.0, 0.0))?.re
        - (2.0 * ar + 1.0) * LN_2
        - 2.0 * log_gamma(Complex64::new(1.0, 0.0) + p.alpha())?.re;
    Ok(ln.exp())
}

/// Right-hand side of the bilinear generating identity at parameter t:
///
///   sum_n (2n+2aR+1) n! (2aR+1)_n / ((alpha+1)_n (alpha*+1)_n) P_n P_n t^n
///     = (2aR+1) (1 - t) / (1 + t)^{2aR+2} * F4(a, b; c, d; U(t), V(t))
///
/// F4 goes through its classical series when sqrt|U| + sqrt|V| < 1 (small
/// |t|) and through the exact large-argument continuation when the ratio
/// domain sqrt|V/U| + sqrt|1/U| < 1 holds (t near -1), swapping the roles
/// of (U, c) and (V, d) as needed.
pub fn generating_rhs(
    pt: &KernelPoint,
    p: &ModelParams,
    t: f64,
    ctrl: &SeriesControl,
) -> KernelResult<Complex64> {
    let ar = p.alpha_r();
    let (u, v) = pt.uv(t);
    let a = Complex64::new(ar + 1.0, 0.0);
    let b = Complex64::new(ar + 1.5, 0.0);
    let c = Complex64::new(1.0, 0.0) + p.alpha();
    let d = Complex64::new(1.0, 0.0) + p.beta();
    let classical_ok = u.norm().sqrt() + v.norm().sqrt() < 1.0;
    let f4 = if classical_ok {
        appell_f4(a, b, c, d, u, v, ctrl)?
    } else if (v / u).norm().sqrt() + u.norm().recip().sqrt() < 1.0 {
        f4_large_argument(a, b, c, d, u, v, ctrl)?
    } else if (u / v).norm().sqrt() + v.norm().recip().sqrt() < 1.0 {
        // F4 is symmetric under (U, c) <-> (V, d)
        f4_large_argument(a, b, d, c, v, u, ctrl)?
    } else {
        return Err(KernelError::NoConvergentRoute { t });
    };
    let one_plus = 1.0 + t;
    let pref = (2.0 * ar + 1.0) * (1.0 - t) / one_plus.powf(2.0 * ar + 2.0);
    Ok(pref * f4)
}

/// Neville polynomial extrapolation of (eps_k, values) to eps = 0, using
/// up to `order` elimination columns. Returns (extrapolated, last-step
/// delta) where the delta measures stability of the final column.
fn extrapolate_to_zero(eps: &[f64], values: &[Complex64], order: usize) -> (Complex64, f64) {
    let n = values.len();
    let cols = order.min(n - 1);
    // table[j][i - j] = polynomial through points i-j..i evaluated at 0
    let mut table: Vec<Vec<Complex64>> = vec![values.to_vec()];
    for j in 1..=cols {
        let prev = &table[j - 1];
        let mut col = Vec::with_capacity(n - j);
        for i in j..n {
            let xi = eps[i];
            let xij = eps[i - j];
            let through_lower = prev[i - j]; // points i-j .. i-1
            let through_upper = prev[i - j + 1]; // points i-j+1 .. i
            col.push((xi * through_lower - xij * through_upper) / (xi - xij));
        }
        table.push(col);
    }
    let last_col = &table[cols];
    let final_value = *last_col.last().unwrap();
    let delta = if last_col.len() >= 2 {
        (final_value - last_col[last_col.len() - 2]).norm()
    } else {
        f64::INFINITY
    };
    (final_value, delta)
}

pub(crate) fn extrapolate_to_zero_public(
    eps: &[f64],
    values: &[Complex64],
    order: usize,
) -> (Complex64, f64) {
    extrapolate_to_zero(eps, values, order)
}

/// The termwise series values S(t_k) for each schedule point (the raw
/// material of the extrapolation); exposed for reports and diagnostics.
pub fn kernel_abel_values(
    pt: &KernelPoint,
    p: &ModelParams,
    sched: &AbelSchedule,
    ctrl: &SeriesControl,
) -> KernelResult<Vec<Complex64>> {
    sched.validate()?;
    sched
        .t_values
        .iter()
        .map(|&t| weighted_series(pt, p, t, ctrl))
        .collect()
}

/// Abel-regularized kernel value: Richardson limit of the termwise sums
/// as t -> -1. This is the oracle the closed form is judged against.
pub fn kernel_abel(
    pt: &KernelPoint,
    p: &ModelParams,
    sched: &AbelSchedule,
    ctrl: &SeriesControl,
) -> KernelResult<Complex64> {
    pt.reject_singular()?;
    let values = kernel_abel_values(pt, p, sched, ctrl)?;
    let eps: Vec<f64> = sched.t_values.iter().map(|&t| 1.0 + t).collect();
    let (value, delta) = extrapolate_to_zero(&eps, &values, sched.extrapolation_order);
    // the limit is trusted to ~1e-6 relative; two orders beyond that is
    // genuine instability
    let tol = 1e-6 * value.norm().max(1e-300);
    if delta > 100.0 * tol {
        return Err(KernelError::ExtrapolationUnstable { delta, tol });
    }
    Ok(value)
}

/// The closed-form normalization constant and whether the parameter set
/// sits in the Hermitian parity limit where the formula degenerates to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstant {
    pub value: Complex64,
    /// alpha_I = 0: sin(pi(1 - c + a)) vanishes identically and the kernel
    /// collapses to the parity distribution delta(x + y); the zero here is
    /// that degeneration, not a genuine zero kernel.
    pub parity_limit: bool,
}

/// N = 2 Gamma(aR+1) sin(pi(1-c+a)) Gamma(1-c+a) / (pi Gamma(alpha*+1)),
/// with 1 - c + a = 1 - i alpha_I.
pub fn kernel_constant(p: &ModelParams) -> KernelResult<KernelConstant> {
    let ar = p.alpha_r();
    let one_minus_c_plus_a = Complex64::new(1.0, -p.alpha_i());
    if p.is_hermitian() {
        return Ok(KernelConstant {
            value: Complex64::new(0.0, 0.0),
            parity_limit: true,
        });
    }
    let value = 2.0
        * (log_gamma(Complex64::new(ar + 1.0, 0.0))? + log_gamma(one_minus_c_plus_a)?
            - log_gamma(Complex64::new(1.0, 0.0) + p.beta())?)
        .exp()
        * sin_pi(one_minus_c_plus_a)
        / PI;
    Ok(KernelConstant {
        value,
        parity_limit: false,
    })
}

/// Single multiplicative calibration factor for the closed form, fixed at
/// one reference point against the Abel oracle and then held fixed. A
/// factor away from 1 beyond 1e-6 measures a discrepancy in the printed
/// constant.
pub fn kernel_constant_calibration(
    p: &ModelParams,
    reference: &KernelPoint,
    sched: &AbelSchedule,
    ctrl: &SeriesControl,
) -> KernelResult<Complex64> {
    let oracle = kernel_abel(reference, p, sched, ctrl)?;
    let closed = super::closed::kernel_closed(reference, p)?;
    Ok(oracle / closed)
}

/// Direct Abel partial sum: sum_n r_n (-1)^n |t|^n ... kept private to the
/// tests through `weighted_series`; re-exported here for the generating
/// identity checks.
#[allow(dead_code)]
pub(crate) fn lhs_termwise_reference(
    pt: &KernelPoint,
    p: &ModelParams,
    t: f64,
    count: usize,
) -> KernelResult<Complex64> {
    let alpha = p.alpha();
    let mut coeffs = CoefficientStream::new(p)?;
    let mut jx = JacobiSeq::new(alpha, alpha.conj(), pt.sin_x());
    let mut jy = JacobiSeq::new(alpha, alpha.conj(), pt.sin_y());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut t_pow = 1.0;
    for _ in 0..count {
        sum += coeffs.next_value() * t_pow * jx.next_value()? * jy.next_value()?;
        t_pow *= t;
    }
    Ok(prefactor(pt, p) * sum)
}
