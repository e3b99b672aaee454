//! Partial sums of the eigenfunction series for C(x, y), in both the
//! direct psi_n(x) psi_n(y) form and the explicit coefficient form, plus
//! the t-weighted sum the Abel regularization is built on.

use super::{prefactor, KernelPoint, KernelResult};
use crate::scarf::{eigenfunction_batch, ModelParams};
use crate::specfun::{log_gamma, JacobiSeq, SeriesControl, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::LN_2;

/// Streaming coefficients of the explicit series form: real numbers
/// r_n with C(x, y) = pref(x, y) * sum_n (-1)^n r_n P_n(sin x) P_n(sin y),
/// r_n = (2n + 2aR + 1) n! Gamma(n + 2aR + 1) / (2^{2aR+1} |Gamma(n + alpha + 1)|^2).
pub(crate) struct CoefficientStream {
    alpha: Complex64,
    alpha_r: f64,
    n: usize,
    /// n! Gamma(n + 2aR + 1) / (2^{2aR+1} |Gamma(n + alpha + 1)|^2), without
    /// the linear factor
    base: f64,
}

impl CoefficientStream {
    pub fn new(p: &ModelParams) -> Result<Self, SpecFunError> {
        let ar = p.alpha_r();
        let ln_base = log_gamma(Complex64::new(2.0 * ar + 1.0, 0.0))?.re
            - (2.0 * ar + 1.0) * LN_2
            - 2.0 * log_gamma(Complex64::new(1.0, 0.0) + p.alpha())?.re;
        Ok(Self {
            alpha: p.alpha(),
            alpha_r: ar,
            n: 0,
            base: ln_base.exp(),
        })
    }

    /// Magnitude r_n of the degree-n coefficient; the series sign is (-1)^n.
    pub fn next_value(&mut self) -> f64 {
        let nf = self.n as f64;
        let out = (2.0 * nf + 2.0 * self.alpha_r + 1.0) * self.base;
        self.base *= (nf + 1.0) * (nf + 2.0 * self.alpha_r + 1.0)
            / (Complex64::new(nf + 1.0, 0.0) + self.alpha).norm_sqr();
        self.n += 1;
        out
    }
}

/// Partial sum of C(x, y) through n < count, computed directly from the
/// normalized eigenfunctions (the defining series).
pub fn kernel_series(pt: &KernelPoint, p: &ModelParams, count: usize) -> KernelResult<Complex64> {
    assert!(count >= 1);
    let at_x = eigenfunction_batch(p, pt.x, count)?;
    let at_y = eigenfunction_batch(p, pt.y, count)?;
    Ok(at_x
        .iter()
        .zip(&at_y)
        .map(|(&fx, &fy)| fx * fy)
        .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v))
}

/// The same partial sum in the explicit coefficient form; an independent
/// code path used to pin the algebra between the two series shapes.
pub fn kernel_series_coefficient_form(
    pt: &KernelPoint,
    p: &ModelParams,
    count: usize,
) -> KernelResult<Complex64> {
    assert!(count >= 1);
    let alpha = p.alpha();
    let mut coeffs = CoefficientStream::new(p)?;
    let mut jx = JacobiSeq::new(alpha, alpha.conj(), pt.sin_x());
    let mut jy = JacobiSeq::new(alpha, alpha.conj(), pt.sin_y());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for _ in 0..count {
        sum += sign * coeffs.next_value() * jx.next_value()? * jy.next_value()?;
        sign = -sign;
    }
    Ok(prefactor(pt, p) * sum)
}

/// t-weighted series S(t) = pref * sum_n r_n t^n P_n P_n for t in (-1, 0];
/// converges for every |t| < 1 and is the workhorse behind the Abel limit.
///
/// Termination uses a window maximum so the oscillating Jacobi products
/// cannot fake convergence at an isolated zero, with the geometric tail
/// bound max_window / (1 - |t|) folded into the threshold.
pub(crate) fn weighted_series(
    pt: &KernelPoint,
    p: &ModelParams,
    t: f64,
    ctrl: &SeriesControl,
) -> KernelResult<Complex64> {
    debug_assert!((-1.0..=0.0).contains(&t));
    let alpha = p.alpha();
    let mut coeffs = CoefficientStream::new(p)?;
    let mut jx = JacobiSeq::new(alpha, alpha.conj(), pt.sin_x());
    let mut jy = JacobiSeq::new(alpha, alpha.conj(), pt.sin_y());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut t_pow = 1.0f64;
    let threshold_scale = 0.3 * (1.0 - t.abs());
    let mut window_max = 0.0f64;
    let mut window_len = 0usize;
    for n in 0..ctrl.max_terms {
        let term = coeffs.next_value() * t_pow * jx.next_value()? * jy.next_value()?;
        sum += term;
        t_pow *= t;
        window_max = window_max.max(term.norm());
        window_len += 1;
        if window_len == 30 {
            if n > 60 && window_max <= ctrl.rel_tol * threshold_scale * sum.norm() {
                return Ok(prefactor(pt, p) * sum);
            }
            window_max = 0.0;
            window_len = 0;
        }
    }
    Err(SpecFunError::NonConvergent {
        max_terms: ctrl.max_terms,
        last_rel: window_max / sum.norm().max(1e-300),
    }
    .into())
}

/// Diagnostic for the raw series at t = -1: inspects partial sums at
/// doubling depths and reports true when their oscillation amplitude
/// fails to decay (the pointwise series does not converge).
pub fn series_is_nonconvergent(
    pt: &KernelPoint,
    p: &ModelParams,
    depths: &[usize],
) -> KernelResult<bool> {
    assert!(depths.len() >= 3);
    let mut spreads = Vec::with_capacity(depths.len());
    for &depth in depths {
        // oscillation amplitude of partial sums across a short window
        let base = kernel_series(pt, p, depth)?;
        let mut lo = base.norm();
        let mut hi = base.norm();
        let mut partial = base;
        let at_x = eigenfunction_batch(p, pt.x, depth + 8)?;
        let at_y = eigenfunction_batch(p, pt.y, depth + 8)?;
        for n in depth..depth + 8 {
            partial += at_x[n] * at_y[n];
            lo = lo.min(partial.norm());
            hi = hi.max(partial.norm());
        }
        spreads.push(hi - lo);
    }
    // convergence requires the spread to die out with depth
    let first = spreads.first().copied().unwrap_or(0.0);
    let last = spreads.last().copied().unwrap_or(0.0);
    Ok(last > 0.1 * first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scarf::eigenfunction;

    fn params(re: f64, im: f64) -> ModelParams {
        ModelParams::new(Complex64::new(re, im)).unwrap()
    }

    fn point(x: f64, y: f64) -> KernelPoint {
        KernelPoint::new(x, y).unwrap()
    }

    #[test]
    fn single_term_is_psi0_product() {
        let p = params(1.0, 0.5);
        let pt = point(0.3, 0.7);
        let got = kernel_series(&pt, &p, 1).unwrap();
        let want = eigenfunction(0, &p, 0.3).unwrap() * eigenfunction(0, &p, 0.7).unwrap();
        assert!((got - want).norm() < 1e-15 * want.norm());
    }

    #[test]
    fn both_series_forms_agree_per_term() {
        let p = params(1.0, 0.5);
        let pt = point(0.3, 0.7);
        for count in [1usize, 2, 5, 10] {
            let direct = kernel_series(&pt, &p, count).unwrap();
            let coeff_form = kernel_series_coefficient_form(&pt, &p, count).unwrap();
            assert!(
                (direct - coeff_form).norm() <= 1e-12 * direct.norm().max(1.0),
                "count {count}: {direct} vs {coeff_form}"
            );
        }
        // second parameter set
        let p = params(0.8, 1.2);
        let pt = point(-0.4, 0.9);
        let direct = kernel_series(&pt, &p, 12).unwrap();
        let coeff_form = kernel_series_coefficient_form(&pt, &p, 12).unwrap();
        assert!((direct - coeff_form).norm() <= 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn raw_series_does_not_converge_pointwise() {
        let p = params(1.0, 0.5);
        let pt = point(0.3, 0.7);
        assert!(series_is_nonconvergent(&pt, &p, &[50, 100, 200, 400]).unwrap());
    }

    #[test]
    fn weighted_series_converges_inside_unit_disc() {
        let p = params(1.0, 0.5);
        let pt = point(0.3, 0.7);
        let ctrl = SeriesControl::default();
        // compare against a long explicit partial sum at the same t
        let t = -0.5;
        let fast = weighted_series(&pt, &p, t, &ctrl).unwrap();
        let alpha = p.alpha();
        let mut coeffs = CoefficientStream::new(&p).unwrap();
        let mut jx = JacobiSeq::new(alpha, alpha.conj(), pt.sin_x());
        let mut jy = JacobiSeq::new(alpha, alpha.conj(), pt.sin_y());
        let mut sum = Complex64::new(0.0, 0.0);
        let mut t_pow = 1.0;
        for _ in 0..400 {
            sum += coeffs.next_value() * t_pow * jx.next_value().unwrap() * jy.next_value().unwrap();
            t_pow *= t;
        }
        let slow = prefactor(&pt, &p) * sum;
        assert!((fast - slow).norm() < 1e-11 * slow.norm());
    }
}
