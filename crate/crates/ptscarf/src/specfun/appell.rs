//! Appell F4 double hypergeometric series.
//!
//! `appell_f4` sums the classical iterated form (outer sum over the second
//! variable, inner 2F1 in the first) inside the convergence domain
//! sqrt|U| + sqrt|V| < 1. `f4_large_argument` evaluates the analytic
//! continuation for simultaneously large U, V with bounded ratio, which is
//! the regime the Abel limit t -> -1 produces.

use super::gamma::{log_gamma, recip_gamma};
use super::hyp2f1::gauss_2f1_ctrl;
use super::{ensure_finite, SeriesControl, SpecFunError, SpecFunResult};
use num_complex::Complex64;

/// Classical iterated series: sum_s (a)_s (b)_s / (s! (d)_s) V^s 2F1(a+s, b+s; c; U).
pub fn appell_f4(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    u: Complex64,
    v: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let measure = u.norm().sqrt() + v.norm().sqrt();
    if measure >= 1.0 {
        return Err(SpecFunError::F4Divergent { measure });
    }
    let mut coef = Complex64::new(1.0, 0.0); // (a)_s (b)_s / (s! (d)_s) V^s
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_streak = 0;
    for s in 0..ctrl.max_terms {
        let sf = s as f64;
        let inner = gauss_2f1_ctrl(a + sf, b + sf, c, u, ctrl)?;
        let term = coef * inner;
        sum += term;
        let mag = term.norm();
        if mag > ctrl.overflow_guard {
            return Err(SpecFunError::Overflow {
                magnitude: mag,
                guard: ctrl.overflow_guard,
            });
        }
        if s > 0 && mag <= ctrl.rel_tol * sum.norm() {
            small_streak += 1;
            if small_streak >= 2 {
                return ensure_finite(sum, "appell_f4");
            }
        } else {
            small_streak = 0;
        }
        coef *= (a + sf) * (b + sf) / ((d + sf) * (sf + 1.0)) * v;
    }
    Err(SpecFunError::NonConvergent {
        max_terms: ctrl.max_terms,
        last_rel: coef.norm() / sum.norm().max(1e-300),
    })
}

/// Exact two-term continuation of F4 for large arguments:
///
/// F4(a,b;c,d;U,V) = G(c)G(b-a)/(G(c-a)G(b)) (-U)^{-a} F4(a, a-c+1; d, a-b+1; V/U, 1/U)
///                 + G(c)G(a-b)/(G(c-b)G(a)) (-U)^{-b} F4(b, b-c+1; d, b-a+1; V/U, 1/U)
///
/// where the inner F4s are summed with the ratio V/U paired against the
/// original d and the small variable 1/U against the shifted parameter.
/// Requires sqrt|V/U| + sqrt|1/U| < 1; callers with |V| > |U| should swap
/// (U, c) <-> (V, d) first (F4 is symmetric under that exchange).
pub fn f4_large_argument(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    u: Complex64,
    v: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let ratio = v / u;
    let inv = 1.0 / u;
    let measure = ratio.norm().sqrt() + inv.norm().sqrt();
    if measure >= 1.0 {
        return Err(SpecFunError::F4Divergent { measure });
    }
    let ln_minus_u = (-u).ln();
    let lg_c = log_gamma(c)?;
    let t1 = (lg_c + log_gamma(b - a)?).exp()
        * recip_gamma(c - a)
        * recip_gamma(b)
        * ((-a) * ln_minus_u).exp()
        * f4_inner(a, a - c + 1.0, d, a - b + 1.0, ratio, inv, ctrl)?;
    let t2 = (lg_c + log_gamma(a - b)?).exp()
        * recip_gamma(c - b)
        * recip_gamma(a)
        * ((-b) * ln_minus_u).exp()
        * f4_inner(b, b - c + 1.0, d, b - a + 1.0, ratio, inv, ctrl)?;
    ensure_finite(t1 + t2, "f4_large_argument")
}

/// Inner double series: sum_s (aa)_s (bb)_s / (s! (dd)_s) y^s 2F1(aa+s, bb+s; cc; x).
/// y is tiny here (1/U near the Abel limit), so the outer sum is short.
fn f4_inner(
    aa: Complex64,
    bb: Complex64,
    cc: Complex64,
    dd: Complex64,
    x: Complex64,
    y: Complex64,
    ctrl: &SeriesControl,
) -> SpecFunResult<Complex64> {
    let mut coef = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_streak = 0;
    for s in 0..ctrl.max_terms {
        let sf = s as f64;
        let term = coef * gauss_2f1_ctrl(aa + sf, bb + sf, cc, x, ctrl)?;
        sum += term;
        if s > 0 && term.norm() <= ctrl.rel_tol * sum.norm() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
        coef *= (aa + sf) * (bb + sf) / ((dd + sf) * (sf + 1.0)) * y;
    }
    Err(SpecFunError::NonConvergent {
        max_terms: ctrl.max_terms,
        last_rel: coef.norm() / sum.norm().max(1e-300),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gauss_2f1, pochhammer};

    /// Brute-force double summation over the (r, s) grid; oracle only.
    /// Factors are grouped to keep intermediate magnitudes moderate.
    fn f4_brute_force(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        u: Complex64,
        v: Complex64,
        order: u32,
    ) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for s in 0..order {
            for r in 0..order {
                let term = (pochhammer(a, s).unwrap() / fact(s))
                    * (pochhammer(b, s).unwrap() / pochhammer(d, s).unwrap())
                    * (pochhammer(a + s as f64, r).unwrap() / fact(r))
                    * (pochhammer(b + s as f64, r).unwrap() / pochhammer(c, r).unwrap())
                    * u.powu(r)
                    * v.powu(s);
                sum += term;
            }
        }
        sum
    }

    fn fact(k: u32) -> f64 {
        (1..=k).map(|i| i as f64).product::<f64>().max(1.0)
    }

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn trivial_reductions() {
        let ctrl = SeriesControl::default();
        // U = V = 0 -> 1
        let got = appell_f4(
            c64(1.5, 0.2),
            c64(2.0, -0.3),
            c64(2.0, 0.0),
            c64(1.5, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            &ctrl,
        )
        .unwrap();
        assert_eq!(got, c64(1.0, 0.0));
    }

    #[test]
    fn reduces_to_2f1_at_v_zero() {
        let ctrl = SeriesControl::default();
        let (a, b, c, d) = (c64(1.1, 0.4), c64(0.8, -0.2), c64(2.2, 0.3), c64(1.7, -0.5));
        for &u in &[c64(0.3, 0.0), c64(-0.2, 0.35), c64(0.6, -0.1)] {
            let f4 = appell_f4(a, b, c, d, u, c64(0.0, 0.0), &ctrl).unwrap();
            let f21 = gauss_2f1(a, b, c, u).unwrap();
            assert!(rel_err(f4, f21) < 1e-12, "u = {u}");
        }
    }

    #[test]
    fn matches_brute_force_double_sum() {
        let ctrl = SeriesControl::default();
        let (a, b, c, d) = (c64(1.5, 0.0), c64(2.0, 0.0), c64(2.0, 0.0), c64(1.5, 0.0));
        let got = appell_f4(a, b, c, d, c64(0.04, 0.0), c64(0.09, 0.0), &ctrl).unwrap();
        let brute = f4_brute_force(a, b, c, d, c64(0.04, 0.0), c64(0.09, 0.0), 40);
        assert!(rel_err(got, brute) < 1e-12, "got {got} vs brute {brute}");
        // frozen arbitrary-precision value
        assert!(rel_err(got, c64(1.3104067537467498389, 0.0)) < 1e-12);
        // complex parameters
        let (a, b, c, d) = (c64(2.0, 0.0), c64(2.5, 0.0), c64(2.0, 0.5), c64(2.0, -0.5));
        let (u, v) = (c64(-0.05, 0.02), c64(0.08, 0.01));
        let got = appell_f4(a, b, c, d, u, v, &ctrl).unwrap();
        let brute = f4_brute_force(a, b, c, d, u, v, 40);
        assert!(rel_err(got, brute) < 1e-12, "got {got} vs brute {brute}");
    }

    #[test]
    fn rejects_arguments_outside_domain() {
        let ctrl = SeriesControl::default();
        let got = appell_f4(
            c64(1.0, 0.0),
            c64(1.0, 0.0),
            c64(2.0, 0.0),
            c64(2.0, 0.0),
            c64(0.5, 0.0),
            c64(0.4, 0.0),
            &ctrl,
        );
        assert!(matches!(got, Err(SpecFunError::F4Divergent { .. })));
    }

    #[test]
    fn large_argument_continuation_reduces_to_2f1_inversion_at_v_zero() {
        // with V = 0 the continuation is exactly the 1/z inversion of
        // 2F1(a, b; c; U); gauss_2f1 computes that by its own route
        let ctrl = SeriesControl::default();
        let (a, b, c, d) = (c64(2.0, 0.0), c64(2.5, 0.0), c64(2.0, 0.5), c64(2.0, -0.5));
        for &u in &[c64(-80.0, 0.0), c64(-300.0, 40.0)] {
            let cont = f4_large_argument(a, b, c, d, u, c64(0.0, 0.0), &ctrl).unwrap();
            let inv = gauss_2f1(a, b, c, u).unwrap();
            assert!(rel_err(cont, inv) < 1e-10, "u = {u}: {cont} vs {inv}");
        }
    }

    #[test]
    fn large_argument_domain_guard() {
        let ctrl = SeriesControl::default();
        // |V/U| > 1 must be rejected (caller swaps U and V instead)
        let got = f4_large_argument(
            c64(2.0, 0.0),
            c64(2.5, 0.0),
            c64(2.0, 0.5),
            c64(2.0, -0.5),
            c64(-10.0, 0.0),
            c64(-90.0, 0.0),
            &ctrl,
        );
        assert!(matches!(got, Err(SpecFunError::F4Divergent { .. })));
    }
}
