//! Gauss hypergeometric function 2F1(a, b; c; z) for complex parameters.
//!
//! Power series for |z| <= 0.9, linear transformations (z/(z-1), 1-z, 1/z,
//! 1/(1-z)) elsewhere. Real z >= 1 is evaluated as the limit from
//! Im(z) -> 0+ (principal branch from above). When a transformation's
//! gamma coefficients degenerate (parameter difference within 1e-8 of an
//! integer) the offending parameter is perturbed by +/- 1e-6 (1+i) and the
//! two evaluations averaged.

use super::gamma::{log_gamma, recip_gamma};
use super::{ensure_finite, SeriesControl, SpecFunError, SpecFunResult};
use num_complex::Complex64;
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 0.9;
const DEGENERACY_TOL: f64 = 1e-8;
const PERTURBATION: f64 = 1e-6;

fn near_integer(z: Complex64) -> bool {
    (z.re - z.re.round()).abs() < DEGENERACY_TOL && z.im.abs() < DEGENERACY_TOL
}

fn near_nonpositive_integer(z: Complex64) -> bool {
    near_integer(z) && z.re.round() <= 0.0
}

/// log(1 - z), taking the limit from Im(z) -> 0+ when z is real and > 1.
fn ln_one_minus(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 1.0 {
        Complex64::new((z.re - 1.0).ln(), -PI)
    } else {
        (Complex64::new(1.0, 0.0) - z).ln()
    }
}

/// log(-z), limit from Im(z) -> 0+ when z is real and positive.
fn ln_neg(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 0.0 {
        Complex64::new(z.re.ln(), -PI)
    } else {
        (-z).ln()
    }
}

fn cpow(ln_base: Complex64, p: Complex64) -> Complex64 {
    (p * ln_base).exp()
}

/// Maclaurin series of 2F1; requires |z| < 1 for convergence.
fn series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_streak = 0;
    for n in 0..ctrl.max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        let mag = term.norm();
        if mag > ctrl.overflow_guard {
            return Err(SpecFunError::Overflow {
                magnitude: mag,
                guard: ctrl.overflow_guard,
            });
        }
        if mag <= ctrl.rel_tol * sum.norm() {
            small_streak += 1;
            if small_streak >= 2 {
                return ensure_finite(sum, "2F1 series");
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergent {
        max_terms: ctrl.max_terms,
        last_rel: term.norm() / sum.norm().max(1e-300),
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Route {
    Pfaff,
    OneMinus,
    Inverse,
    InverseOneMinus,
}

fn route_argument(route: Route, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match route {
        Route::Pfaff => z / (z - one),
        Route::OneMinus => one - z,
        Route::Inverse => one / z,
        Route::InverseOneMinus => one / (one - z),
    }
}

fn eval_route(
    route: Route,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let w = route_argument(route, z);
    match route {
        Route::Pfaff => {
            let factor = cpow(ln_one_minus(z), -a);
            Ok(factor * series(a, c - b, c, w, ctrl)?)
        }
        Route::OneMinus => {
            // degenerate when c - a - b is an integer
            if near_integer(c - a - b) {
                return perturbed_average(route, a, b, c, z, ctrl);
            }
            let lg_c = log_gamma(c)?;
            let t1 = (lg_c + log_gamma(c - a - b)?).exp()
                * recip_gamma(c - a)
                * recip_gamma(c - b)
                * series(a, b, a + b - c + 1.0, w, ctrl)?;
            let t2 = (lg_c + log_gamma(a + b - c)?).exp()
                * recip_gamma(a)
                * recip_gamma(b)
                * cpow(ln_one_minus(z), c - a - b)
                * series(c - a, c - b, c - a - b + 1.0, w, ctrl)?;
            Ok(t1 + t2)
        }
        Route::Inverse => {
            if near_integer(a - b) {
                return perturbed_average(route, a, b, c, z, ctrl);
            }
            let lg_c = log_gamma(c)?;
            let lnz = ln_neg(z);
            let t1 = (lg_c + log_gamma(b - a)?).exp()
                * recip_gamma(b)
                * recip_gamma(c - a)
                * cpow(lnz, -a)
                * series(a, a - c + 1.0, a - b + 1.0, w, ctrl)?;
            let t2 = (lg_c + log_gamma(a - b)?).exp()
                * recip_gamma(a)
                * recip_gamma(c - b)
                * cpow(lnz, -b)
                * series(b, b - c + 1.0, b - a + 1.0, w, ctrl)?;
            Ok(t1 + t2)
        }
        Route::InverseOneMinus => {
            if near_integer(a - b) {
                return perturbed_average(route, a, b, c, z, ctrl);
            }
            let lg_c = log_gamma(c)?;
            let ln1m = ln_one_minus(z);
            let t1 = (lg_c + log_gamma(b - a)?).exp()
                * recip_gamma(b)
                * recip_gamma(c - a)
                * cpow(ln1m, -a)
                * series(a, c - b, a - b + 1.0, w, ctrl)?;
            let t2 = (lg_c + log_gamma(a - b)?).exp()
                * recip_gamma(a)
                * recip_gamma(c - b)
                * cpow(ln1m, -b)
                * series(b, c - a, b - a + 1.0, w, ctrl)?;
            Ok(t1 + t2)
        }
    }
}

/// Two-sided parameter perturbation for degenerate gamma coefficients.
fn perturbed_average(
    route: Route,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let delta = Complex64::new(PERTURBATION, PERTURBATION);
    let eval = |a: Complex64, b: Complex64, c: Complex64| -> SpecFunResult<Complex64> {
        let degenerate = match route {
            Route::OneMinus => near_integer(c - a - b),
            Route::Inverse | Route::InverseOneMinus => near_integer(a - b),
            _ => false,
        };
        if degenerate {
            return Err(SpecFunError::ParameterDegeneracy {
                z,
                detail: "perturbation failed to lift the integer degeneracy".into(),
            });
        }
        eval_route(route, a, b, c, z, ctrl)
    };
    let (plus, minus) = match route {
        // c - a - b degenerate: shift c
        Route::OneMinus => (eval(a, b, c + delta)?, eval(a, b, c - delta)?),
        // a - b degenerate: shift b
        _ => (eval(a, b + delta, c)?, eval(a, b - delta, c)?),
    };
    Ok((plus + minus) * 0.5)
}

/// Gauss hypergeometric function with the region map described above.
pub fn gauss_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> SpecFunResult<Complex64> {
    gauss_2f1_ctrl(a, b, c, z, &SeriesControl::default())
}

pub fn gauss_2f1_ctrl(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    if near_nonpositive_integer(c) {
        return Err(SpecFunError::HypCNonpositiveInteger { c });
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // terminating polynomial case
    if near_nonpositive_integer(a) || near_nonpositive_integer(b) {
        return series(a, b, c, z, ctrl);
    }
    if z.im == 0.0 && (z.re - 1.0).abs() < 1e-12 {
        let re_cab = (c - a - b).re;
        if re_cab <= 0.0 {
            return Err(SpecFunError::BranchPoint { z, re_cab });
        }
        // Gauss summation at z = 1
        let value = (log_gamma(c)? + log_gamma(c - a - b)?).exp()
            * recip_gamma(c - a)
            * recip_gamma(c - b);
        return ensure_finite(value, "2F1 at z = 1");
    }
    if z.norm() <= SERIES_RADIUS {
        return series(a, b, c, z, ctrl);
    }
    // pick the transformation with the smallest mapped argument
    let candidates = [
        Route::Pfaff,
        Route::OneMinus,
        Route::Inverse,
        Route::InverseOneMinus,
    ];
    let mut best: Option<(Route, f64)> = None;
    for route in candidates {
        let w = route_argument(route, z).norm();
        if w <= SERIES_RADIUS && best.is_none_or(|(_, bw)| w < bw) {
            best = Some((route, w));
        }
    }
    let value = if let Some((route, _)) = best {
        eval_route(route, a, b, c, z, ctrl)?
    } else if z.norm() < 1.0 {
        // annulus 0.9 < |z| < 1 with no good transform: direct series, slow but convergent
        series(a, b, c, z, ctrl)?
    } else if route_argument(Route::OneMinus, z).norm() < 1.0 {
        eval_route(Route::OneMinus, a, b, c, z, ctrl)?
    } else if route_argument(Route::Inverse, z).norm() < 1.0 {
        eval_route(Route::Inverse, a, b, c, z, ctrl)?
    } else {
        return Err(SpecFunError::NonConvergent {
            max_terms: ctrl.max_terms,
            last_rel: f64::NAN,
        });
    };
    ensure_finite(value, "2F1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(
            gauss_2f1(c64(1.3, 0.4), c64(0.2, -0.9), c64(2.0, 0.1), c64(0.0, 0.0)).unwrap(),
            c64(1.0, 0.0)
        );
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let got = gauss_2f1(c64(1.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(0.5, 0.0)).unwrap();
        assert!(rel_err(got, c64(1.3862943611198906188, 0.0)) < 1e-13);
    }

    #[test]
    fn frozen_complex_values() {
        // parameters of the kernel closed form at alpha = 1 + 0.5i
        let a = c64(2.0, 0.0);
        let b = c64(1.0, -0.5);
        let c = c64(2.0, -0.5);
        let got = gauss_2f1(a, b, c, c64(-0.3, 0.2)).unwrap();
        assert!(
            rel_err(got, c64(0.7576389382041672264, 0.17656865498585222325)) < 1e-12,
            "got {got}"
        );
        let got2 = gauss_2f1(a, b, c, c64(0.5263525491562421, 0.0)).unwrap();
        assert!(
            rel_err(got2, c64(2.1696086463575187275, -0.33418224948620065623)) < 1e-12,
            "got {got2}"
        );
    }

    #[test]
    fn region_overlap_consistency() {
        // points where two routes both apply must agree to 1e-9
        let a = c64(0.7, 0.3);
        let b = c64(1.4, -0.2);
        let c = c64(2.1, 0.5);
        let ctrl = SeriesControl::default();
        // |z| = 0.85: series vs Pfaff
        let z = c64(-0.6, 0.602);
        let via_series = series(a, b, c, z, &ctrl).unwrap();
        let via_pfaff = eval_route(Route::Pfaff, a, b, c, z, &ctrl).unwrap();
        assert!(rel_err(via_series, via_pfaff) < 1e-9);
        // z = -4: pfaff vs inverse vs inverse-one-minus
        let z = c64(-4.0, 0.0);
        let via_pf = eval_route(Route::Pfaff, a, b, c, z, &ctrl).unwrap();
        let via_inv = eval_route(Route::Inverse, a, b, c, z, &ctrl).unwrap();
        let via_inv1m = eval_route(Route::InverseOneMinus, a, b, c, z, &ctrl).unwrap();
        assert!(rel_err(via_inv, via_inv1m) < 1e-9, "{via_inv} vs {via_inv1m}");
        assert!(rel_err(via_pf, via_inv) < 1e-9, "{via_pf} vs {via_inv}");
        // real z = 2.5 above the cut: both routes must take the same
        // limit-from-above branch
        let z = c64(2.5, 0.0);
        let via_inv = eval_route(Route::Inverse, a, b, c, z, &ctrl).unwrap();
        let via_inv1m = eval_route(Route::InverseOneMinus, a, b, c, z, &ctrl).unwrap();
        assert!(rel_err(via_inv, via_inv1m) < 1e-9, "{via_inv} vs {via_inv1m}");
    }

    #[test]
    fn euler_transformation_holds() {
        // 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)
        let a = c64(0.9, 0.2);
        let b = c64(0.55, -0.4);
        let c = c64(1.8, 0.3);
        for &z in &[c64(0.35, 0.2), c64(-0.5, -0.3), c64(0.1, 0.75)] {
            let lhs = gauss_2f1(a, b, c, z).unwrap();
            let rhs = cpow(ln_one_minus(z), c - a - b) * gauss_2f1(c - a, c - b, c, z).unwrap();
            assert!(rel_err(lhs, rhs) < 1e-11, "z = {z}");
        }
    }

    #[test]
    fn gauss_summation_at_one() {
        // 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)) for Re(c-a-b) > 0
        let a = c64(0.3, 0.1);
        let b = c64(0.4, -0.2);
        let c = c64(2.5, 0.05);
        let got = gauss_2f1(a, b, c, c64(1.0, 0.0)).unwrap();
        let want = (log_gamma(c).unwrap() + log_gamma(c - a - b).unwrap()
            - log_gamma(c - a).unwrap()
            - log_gamma(c - b).unwrap())
        .exp();
        assert!(rel_err(got, want) < 1e-12);
        // branch-point error when Re(c-a-b) <= 0
        assert!(matches!(
            gauss_2f1(c64(1.0, 0.0), c64(1.5, 0.0), c64(2.0, 0.0), c64(1.0, 0.0)),
            Err(SpecFunError::BranchPoint { .. })
        ));
    }

    #[test]
    fn degenerate_guard_integer_c_minus_a_minus_b() {
        // c - a - b = 1 exactly: the 1-z transform needs the perturbation guard.
        // Oracle: Euler transform to parameters with c - a' - b' = -1... instead
        // compare against the direct series at a nearby convergent point mapped in:
        // use z = 0.95, reachable by the slow direct series too.
        let a = c64(0.5, 0.0);
        let b = c64(0.25, 0.0);
        let c = c64(1.75, 0.0);
        let z = c64(0.95, 0.0);
        let ctrl = SeriesControl {
            max_terms: 2_000_000,
            rel_tol: 1e-15,
            overflow_guard: 1e290,
        };
        let direct = series(a, b, c, z, &ctrl).unwrap();
        let via_transform = eval_route(Route::OneMinus, a, b, c, z, &SeriesControl::default()).unwrap();
        assert!(
            rel_err(direct, via_transform) < 1e-8,
            "direct {direct} vs transform {via_transform}"
        );
    }

    #[test]
    fn real_z_above_one_takes_limit_from_above() {
        // compare the real-axis fast path against an explicit z + i eps evaluation
        let a = c64(2.0, 0.0);
        let b = c64(1.0, 0.5);
        let c = c64(2.0, 0.5);
        let z = c64(3.0, 0.0);
        let on_axis = gauss_2f1(a, b, c, z).unwrap();
        let above = gauss_2f1(a, b, c, c64(3.0, 1e-9)).unwrap();
        assert!(rel_err(on_axis, above) < 1e-6, "on-axis {on_axis} vs above {above}");
        let below = gauss_2f1(a, b, c, c64(3.0, -1e-9)).unwrap();
        // the two sides of the cut genuinely differ
        assert!(rel_err(above, below) > 1e-3);
    }

    #[test]
    fn rejects_nonpositive_integer_c() {
        assert!(matches!(
            gauss_2f1(c64(1.0, 0.0), c64(2.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)),
            Err(SpecFunError::HypCNonpositiveInteger { .. })
        ));
    }
}
