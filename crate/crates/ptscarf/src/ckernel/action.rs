//! Applying the C operator to functions through its kernel.
//!
//! Off the line y = -x the closed form is an ordinary function, but it
//! carries a simple pole there with an odd, imaginary-coefficient local
//! behavior, and the Abel limit additionally concentrates a
//! cosh(pi alpha_I) delta(x + y) component (the Hermitian limit of that
//! coefficient is 1, reproducing C = parity). The action is therefore
//!
//!   (C f)(x) = p.v. int kernel(x, y) f(y) dy + cosh(pi alpha_I) f(-x),
//!
//! with the principal value realized by panels placed mirror-symmetric
//! about the singular point in u = sin y. The delta coefficient is pinned
//! independently by the Cpsi_n = (-1)^n psi_n checks across n, x, and
//! both alpha values.

use super::closed::kernel_closed_unguarded;
use super::{AbelSchedule, KernelError, KernelPoint, KernelResult};
use crate::ptproduct::{gauss_legendre, Grading, QuadratureRule};
use crate::scarf::{eigenfunction_batch, ModelParams};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type ActionGrading = Grading;

/// Nodes and weights in u = sin y over (-1, 1), graded geometrically from
/// both sides toward the singular point u0 = -sin x with exactly mirrored
/// offsets (the mirror symmetry is what realizes the principal value),
/// and refined toward the endpoints where the integrand has algebraic
/// endpoint behavior.
pub fn singular_rule(x: f64, grading: &Grading) -> Vec<(f64, f64)> {
    let u0 = -x.sin();
    let (ref_nodes, ref_weights) = gauss_legendre(grading.order);
    let mut rule: Vec<(f64, f64)> = Vec::new();

    // mirrored geometric shells around u0
    let outer = 0.08f64.min((1.0 - u0) / 3.0).min((u0 + 1.0) / 3.0);
    let mut hi = outer;
    while hi > grading.min_width {
        let lo = (hi * grading.ratio).max(grading.min_width);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for (&t, &w) in ref_nodes.iter().zip(ref_weights.iter()) {
            let offset = mid + half * t;
            let weight = half * w;
            rule.push((u0 + offset, weight));
            rule.push((u0 - offset, weight));
        }
        hi = lo;
    }

    // smooth sections [-1, u0 - outer] and [u0 + outer, 1] with endpoint
    // refinement toward -1 / +1
    for (lo_end, hi_end, refine_lo) in [(-1.0, u0 - outer, true), (u0 + outer, 1.0, false)] {
        let span = hi_end - lo_end;
        if span <= 0.0 {
            continue;
        }
        let mut cuts = Vec::new();
        cuts.push(lo_end);
        let base = span / grading.backbone as f64;
        if refine_lo {
            for lvl in (1..=grading.endpoint_levels).rev() {
                cuts.push(lo_end + base * 0.5f64.powi(lvl as i32));
            }
        }
        for p in 1..grading.backbone {
            cuts.push(lo_end + span * p as f64 / grading.backbone as f64);
        }
        if !refine_lo {
            for lvl in 1..=grading.endpoint_levels {
                cuts.push(hi_end - base * 0.5f64.powi(lvl as i32));
            }
        }
        cuts.push(hi_end);
        for pair in cuts.windows(2) {
            let mid = 0.5 * (pair[0] + pair[1]);
            let half = 0.5 * (pair[1] - pair[0]);
            for (&t, &w) in ref_nodes.iter().zip(ref_weights.iter()) {
                rule.push((mid + half * t, half * w));
            }
        }
    }
    rule
}

/// (C f)(x) through the closed-form kernel plus the concentrated
/// delta component.
pub fn c_apply<F>(f: F, x: f64, p: &ModelParams, grading: &Grading) -> KernelResult<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let rule = singular_rule(x, grading);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(u, w) in &rule {
        if u.abs() >= 1.0 {
            continue;
        }
        let y = u.asin();
        let pt = KernelPoint::new(x, y)?;
        let kernel = kernel_closed_unguarded(&pt, p)?;
        acc += kernel * f(y) / (1.0 - u * u).sqrt() * w;
    }
    Ok(acc + (PI * p.alpha_i()).cosh() * f(-x))
}

/// `c_apply` at two grading levels; errors when they disagree beyond
/// 10x the requested tolerance.
pub fn c_apply_checked<F>(
    f: F,
    x: f64,
    p: &ModelParams,
    grading: &Grading,
    tol: f64,
) -> KernelResult<Complex64>
where
    F: Fn(f64) -> Complex64 + Copy,
{
    let fine = c_apply(f, x, p, grading)?;
    let coarse_grading = Grading {
        ratio: 1.0 / 3.0,
        min_width: grading.min_width * 100.0,
        order: grading.order.saturating_sub(4).max(8),
        backbone: grading.backbone,
        endpoint_levels: grading.endpoint_levels.saturating_sub(2).max(4),
    };
    let coarse = c_apply(f, x, p, &coarse_grading)?;
    let delta = (fine - coarse).norm();
    let scale = fine.norm().max(1e-12);
    if delta > 10.0 * tol * scale {
        return Err(KernelError::GradingDisagreement {
            delta: delta / scale,
            tol,
        });
    }
    Ok(fine)
}

/// Max over `grid` of |C(C f) - f| / max|f|. The inner application is
/// sampled on a dense uniform grid and interpolated linearly; both
/// endpoint values of C f vanish.
pub fn c_squared_check<F>(
    f: F,
    grid: &[f64],
    p: &ModelParams,
    grading: &Grading,
    master_points: usize,
) -> KernelResult<f64>
where
    F: Fn(f64) -> Complex64 + Copy + Sync,
{
    assert!(master_points >= 16);
    let lo = -PI / 2.0;
    let span = PI;
    let step = span / (master_points as f64 - 1.0);
    let mut samples = vec![Complex64::new(0.0, 0.0); master_points];
    let inner: Vec<(usize, KernelResult<Complex64>)> = {
        use rayon::prelude::*;
        (1..master_points - 1)
            .into_par_iter()
            .map(|i| (i, c_apply(f, lo + step * i as f64, p, grading)))
            .collect()
    };
    for (i, value) in inner {
        samples[i] = value?;
    }
    let interp = move |y: f64| -> Complex64 {
        let pos = (y - lo) / step;
        let idx = (pos.floor() as usize).min(master_points - 2);
        let frac = pos - idx as f64;
        samples[idx] * (1.0 - frac) + samples[idx + 1] * frac
    };
    let mut max_resid = 0.0f64;
    let mut max_f = 0.0f64;
    for &x in grid {
        let twice = c_apply(&interp, x, p, grading)?;
        max_resid = max_resid.max((twice - f(x)).norm());
        max_f = max_f.max(f(x).norm());
    }
    Ok(max_resid / max_f)
}

/// Hermitian-limit parity check: applies the Abel-regularized operator at
/// each schedule t through the eigenfunction expansion, extrapolates
/// t -> -1, and returns |(C f)(x) - f(-x)|.
pub fn parity_limit_check<F>(
    p: &ModelParams,
    f: F,
    x: f64,
    sched: &AbelSchedule,
    rule: &QuadratureRule,
) -> KernelResult<f64>
where
    F: Fn(f64) -> Complex64,
{
    if !p.is_hermitian() {
        return Err(KernelError::HermitianRequired {
            alpha_i: p.alpha_i(),
        });
    }
    sched.validate()?;
    const MODES: usize = 64;
    // coefficients a_n = int psi_n(y) f(y) dy
    let mut coeffs = vec![Complex64::new(0.0, 0.0); MODES];
    for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
        let psi = eigenfunction_batch(p, y, MODES)?;
        let fy = f(y);
        for (c, &pn) in coeffs.iter_mut().zip(&psi) {
            *c += pn * fy * w;
        }
    }
    let psi_x = eigenfunction_batch(p, x, MODES)?;
    // C_t(x, y) = sum_n t^n (-1)^n psi_n(x) psi_n(y): the alternating sign
    // is D_n^2 / |D_n|^2, and t^n (-1)^n -> +1 at the Abel point t = -1
    let values: Vec<Complex64> = sched
        .t_values
        .iter()
        .map(|&t| {
            let mut signed_t_pow = 1.0;
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..MODES {
                sum += coeffs[n] * psi_x[n] * signed_t_pow;
                signed_t_pow *= -t;
            }
            sum
        })
        .collect();
    let eps: Vec<f64> = sched.t_values.iter().map(|&t| 1.0 + t).collect();
    let (value, _) = super::abel::extrapolate_to_zero_public(&eps, &values, sched.extrapolation_order);
    Ok((value - f(-x)).norm())
}
