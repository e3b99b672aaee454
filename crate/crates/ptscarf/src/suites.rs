//! Verification suites: each command runs one family of identity checks
//! against a configuration and emits a structured report (plus CSV
//! payloads where the interface calls for them).

use crate::ckernel::{
    c_apply, c_squared_check, f4_limit, kernel_abel, kernel_closed,
    kernel_constant_calibration, parity_limit_check, resolve_closed_form, singularity_slope,
    KernelError, KernelPoint,
};
use crate::completeness::{
    convergence_grid, corpus, delta_convergence_report, endpoint_probe, reconstruct,
    reconstruct_dropping_alternation, reconstruct_via_jacobi_delta, sup_error, CompletenessError,
    TestFunction,
};
use crate::config::{ConfigError, RunConfig};
use crate::ptproduct::{
    build_endpoint_graded_rule, gram_deviation, gram_matrix, Grading, PtProductError,
    QuadratureRule,
};
use crate::report::{
    checks_csv, convergence_csv, kernel_samples_csv, CalibrationRecord, CandidateResidual,
    CheckRecord, KernelSampleRow, ReportError, TypoResolutionRecord, VerificationReport,
};
use crate::scarf::{
    self, default_residual_grid, eigenfunction, schrodinger_residual, ScarfError,
};
use crate::specfun::{
    appell_f4, gauss_2f1, ln_sin_pi, log_gamma, SeriesControl, SpecFunError,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    PtProduct(#[from] PtProductError),
    #[error(transparent)]
    Completeness(#[from] CompletenessError),
    #[error(transparent)]
    Scarf(#[from] ScarfError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

/// A suite's report plus any CSV payloads keyed by file stem.
#[derive(Debug)]
pub struct SuiteOutput {
    pub report: VerificationReport,
    pub csv_files: Vec<(String, String)>,
}

fn lower_bound_check(id: &str, measured: f64, bound: f64, note: &str) -> CheckRecord {
    CheckRecord {
        id: id.to_string(),
        residual: measured,
        tolerance: bound,
        pass: measured > bound,
        informational: false,
        detail: Some(format!("sentinel: measured value must exceed {bound}; {note}")),
    }
}

fn suite_rule(cfg: &RunConfig) -> QuadratureRule {
    build_endpoint_graded_rule(cfg.quad_panels, cfg.quad_order, 14)
}

/// Gram matrix of the PT inner product up to n_max, plus the
/// reflection-free integral path and a doubled-order stability probe.
pub fn cmd_verify_orthonormality(cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let start = Instant::now();
    let p = cfg.model()?;
    let rule = suite_rule(cfg);
    let size = cfg.n_max as usize + 1;
    let mut report = VerificationReport::new("verify-orthonormality", cfg);

    let g = gram_matrix(size, &p, &rule)?;
    report.push(CheckRecord::hard(
        "gram-alternating-norm",
        gram_deviation(&g),
        cfg.tol_orth,
    ));

    // plain integral path (no reflection code): same alternating norm
    let mut plain_dev = 0.0f64;
    for (m, n) in [(0usize, 0usize), (1, 1), (4, 4), (0, 3), (2, 5)] {
        let count = m.max(n) + 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let at_x = scarf::eigenfunction_batch(&p, x, count)?;
            acc += at_x[m] * at_x[n] * w;
        }
        let target = if m == n {
            Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        plain_dev = plain_dev.max((acc - target).norm());
    }
    report.push(CheckRecord::hard(
        "plain-integral-alternating-norm",
        plain_dev,
        cfg.tol_orth,
    ));

    // resolution adequacy: doubling the order must not move any entry
    let fine_rule = build_endpoint_graded_rule(cfg.quad_panels, cfg.quad_order * 2, 14);
    let g_fine = gram_matrix(size, &p, &fine_rule)?;
    let mut max_change = 0.0f64;
    for m in 0..size {
        for n in 0..size {
            max_change = max_change.max((g[m][n] - g_fine[m][n]).norm());
        }
    }
    report.push(CheckRecord::hard(
        "gram-order-doubling-stability",
        max_change,
        1e-10,
    ));

    // eigensystem residual checks ride along: they tie the potential to
    // the eigenfunctions the Gram matrix is built from
    let grid = default_residual_grid();
    let mut worst_low = 0.0f64;
    for n in 0..=3u32.min(cfg.n_max) {
        worst_low = worst_low.max(schrodinger_residual(n, &p, &grid, 1e-2)?);
    }
    report.push(CheckRecord::hard(
        "schrodinger-residual-low-modes",
        worst_low,
        1e-6,
    ));

    let mut csv = String::from("m,n,re,im,target_re,abs_dev\n");
    for (m, row) in g.iter().enumerate() {
        for (n, &entry) in row.iter().enumerate() {
            let target = if m == n {
                if n % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            } else {
                0.0
            };
            csv.push_str(&format!(
                "{m},{n},{:.9e},{:.9e},{target},{:.9e}\n",
                entry.re,
                entry.im,
                (entry - Complex64::new(target, 0.0)).norm()
            ));
        }
    }
    report.timing.total_ms = start.elapsed().as_millis() as u64;
    Ok(SuiteOutput {
        report,
        csv_files: vec![("orthonormality".into(), csv)],
    })
}

fn sample_grid(cfg: &RunConfig) -> Vec<f64> {
    let n = cfg.grid_points;
    (0..n)
        .map(|i| -1.35 + 2.7 * i as f64 / (n as f64 - 1.0))
        .collect()
}

/// Closed form against the Abel oracle and the limit route on a sample
/// grid, with the form resolution and constant calibration records.
pub fn cmd_compare_kernel(cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let start = Instant::now();
    let p = cfg.model()?;
    let sched = cfg.schedule();
    let ctrl = SeriesControl::default();
    let mut report = VerificationReport::new("compare-kernel", cfg);

    let axis = sample_grid(cfg);
    let mut pairs = Vec::new();
    let mut rows_meta = Vec::new();
    for &x in &axis {
        for &y in &axis {
            let pt = KernelPoint::new(x, y)?;
            if pt.singular_measure() <= 0.1 {
                rows_meta.push((pt, true));
            } else {
                rows_meta.push((pt, false));
                pairs.push(pt);
            }
        }
    }

    let evaluate = |pt: &KernelPoint| -> Result<(Complex64, Complex64, Complex64), SuiteError> {
        let closed = kernel_closed(pt, &p)?;
        let abel = kernel_abel(pt, &p, &sched, &ctrl)?;
        let limit = f4_limit(pt, &p, &ctrl)?;
        Ok((closed, abel, limit))
    };
    let values: Vec<(Complex64, Complex64, Complex64)> = if cfg.parallel {
        let results: Vec<_> = pairs.par_iter().map(evaluate).collect();
        results.into_iter().collect::<Result<_, _>>()?
    } else {
        pairs.iter().map(evaluate).collect::<Result<_, _>>()?
    };

    let mut max_closed_abel = 0.0f64;
    let mut max_limit_closed = 0.0f64;
    let mut max_limit_abel = 0.0f64;
    for (closed, abel, limit) in &values {
        let scale = abel.norm().max(1e-300);
        max_closed_abel = max_closed_abel.max((closed - abel).norm() / scale);
        max_limit_closed = max_limit_closed.max((limit - closed).norm() / closed.norm().max(1e-300));
        max_limit_abel = max_limit_abel.max((limit - abel).norm() / scale);
    }
    report.push(
        CheckRecord::hard("closed-vs-abel", max_closed_abel, cfg.tol_kernel)
            .with_detail(&format!("{} sample pairs", pairs.len())),
    );
    report.push(CheckRecord::hard(
        "limit-route-vs-closed",
        max_limit_closed,
        cfg.tol_kernel,
    ));
    report.push(CheckRecord::hard(
        "limit-route-vs-abel",
        max_limit_abel,
        cfg.tol_kernel,
    ));

    // kernel symmetry on a subsample of the closed form
    let mut max_sym = 0.0f64;
    for pt in pairs.iter().take(40) {
        let base = kernel_closed(pt, &p)?;
        let swapped = kernel_closed(&pt.swapped(), &p)?;
        max_sym = max_sym.max((base - swapped).norm() / base.norm().max(1e-300));
    }
    report.push(CheckRecord::hard("kernel-argument-symmetry", max_sym, 1e-12));

    // PT reflection C(-x, -y) = conj C(x, y), checked on the Abel route so
    // it is independent of how the closed form handles the two z regions
    let mut max_pt = 0.0f64;
    for pt in pairs.iter().take(6) {
        let base = kernel_abel(pt, &p, &sched, &ctrl)?;
        let reflected = kernel_abel(&pt.reflected(), &p, &sched, &ctrl)?;
        max_pt = max_pt.max((reflected - base.conj()).norm() / base.norm().max(1e-300));
    }
    report.push(CheckRecord::hard("kernel-pt-reflection", max_pt, 1e-7));

    // singularity exponent measured on the approach to the line; the
    // derived parameters give |1 - z|^{-1} exactly, so the measured slope
    // is reported against -1 here (the acceptance gate separately holds
    // this against the stated -1/2 and records the discrepancy)
    let slope = singularity_slope(&p, 0.4, &[0.1, 0.03, 0.01, 0.003, 0.001])?;
    report.push(
        CheckRecord::hard("singularity-exponent-vs-minus-one", (slope + 1.0).abs(), 0.05)
            .with_detail(&format!("measured log-log slope {slope:.6}")),
    );

    // form resolution on z < 1 points
    let resolution_points: Vec<KernelPoint> = pairs
        .iter()
        .filter(|pt| pt.z() < 1.0)
        .take(25)
        .copied()
        .collect();
    let resolution = resolve_closed_form(
        &[p],
        &resolution_points,
        &sched,
        &ctrl,
        cfg.tol_kernel,
    )?;
    report.push(CheckRecord {
        id: "typo-resolution-unique-survivor".into(),
        residual: resolution.survivor_count as f64,
        tolerance: 2.0,
        pass: resolution.survivor_count == 1,
        informational: false,
        detail: Some(format!(
            "{} candidates scanned over {} points",
            resolution.records.len(),
            resolution_points.len()
        )),
    });
    report.typo_resolution = Some(TypoResolutionRecord {
        selected: resolution.selected.map(|c| c.label()),
        survivor_count: resolution.survivor_count,
        tolerance: resolution.tolerance,
        candidates: resolution
            .records
            .iter()
            .map(|r| CandidateResidual {
                label: r.label.clone(),
                max_rel_err: r.max_rel_err,
                survived: r.survived,
            })
            .collect(),
    });

    // constant calibration at one reference point, then held fixed
    let reference = KernelPoint::new(-0.5, 0.2)?;
    let factor = kernel_constant_calibration(&p, &reference, &sched, &ctrl)?;
    let deviation = (factor - Complex64::new(1.0, 0.0)).norm();
    report.kernel_constant_calibration = Some(CalibrationRecord {
        factor_re: factor.re,
        factor_im: factor.im,
        deviation_from_one: deviation,
    });
    report.push(CheckRecord::informational(
        "kernel-constant-calibration",
        deviation,
        1e-6,
        "a factor off 1 beyond 1e-6 measures a discrepancy in the printed constant",
    ));

    // CSV rows in grid order
    let mut rows = Vec::with_capacity(rows_meta.len());
    let mut value_iter = values.iter();
    for (pt, excluded) in rows_meta {
        if excluded {
            rows.push(KernelSampleRow::Excluded { x: pt.x, y: pt.y });
        } else {
            let (closed, abel, _) = value_iter.next().expect("value per non-excluded row");
            rows.push(KernelSampleRow::Value {
                x: pt.x,
                y: pt.y,
                closed: *closed,
                abel: *abel,
                rel_err: (closed - abel).norm() / abel.norm().max(1e-300),
            });
        }
    }
    report.timing.total_ms = start.elapsed().as_millis() as u64;
    Ok(SuiteOutput {
        report,
        csv_files: vec![("kernel-samples".into(), kernel_samples_csv(&rows))],
    })
}

/// C psi_n = (-1)^n psi_n, C^2 = 1, and (for real alpha) the parity limit.
pub fn cmd_verify_c_action(cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let start = Instant::now();
    let p = cfg.model()?;
    let mut report = VerificationReport::new("verify-c-action", cfg);
    let grading = Grading::default();

    if p.is_hermitian() {
        // real alpha: route to the Abel-regularized parity check
        let rule = suite_rule(cfg);
        let sched = cfg.schedule();
        type Probe = (&'static str, fn(f64) -> Complex64);
        let probes: [Probe; 2] = [
            ("cos", |y| Complex64::new(y.cos(), 0.0)),
            ("cos2-sin", |y| Complex64::new(y.cos() * y.cos() * y.sin(), 0.0)),
        ];
        for (name, f) in &probes {
            let mut worst = 0.0f64;
            for &x in &[-0.7, 0.0, 0.3] {
                worst = worst.max(parity_limit_check(&p, f, x, &sched, &rule)?);
            }
            report.push(CheckRecord::hard(
                &format!("parity-limit-{name}"),
                worst,
                cfg.tol_action,
            ));
        }
        report.timing.total_ms = start.elapsed().as_millis() as u64;
        let csv = checks_csv(&report.checks);
        return Ok(SuiteOutput {
            report,
            csv_files: vec![("c-action".into(), csv)],
        });
    }

    let eval_points: Vec<f64> = (0..9).map(|i| -1.2 + 2.4 * i as f64 / 8.0).collect();
    for n in 0..=4u32 {
        let f = |y: f64| eigenfunction(n, &p, y).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let results: Vec<(f64, Complex64)> = if cfg.parallel {
            eval_points
                .par_iter()
                .map(|&x| c_apply(f, x, &p, &grading).map(|v| (x, v)))
                .collect::<Result<_, _>>()?
        } else {
            eval_points
                .iter()
                .map(|&x| c_apply(f, x, &p, &grading).map(|v| (x, v)))
                .collect::<Result<_, _>>()?
        };
        let mut max_err = 0.0f64;
        let mut max_psi = 0.0f64;
        for (x, got) in results {
            let want = sign * eigenfunction(n, &p, x)?;
            max_err = max_err.max((got - want).norm());
            max_psi = max_psi.max(want.norm());
        }
        report.push(CheckRecord::hard(
            &format!("c-action-psi{n}"),
            max_err / max_psi,
            cfg.tol_action,
        ));
    }

    // C^2 = 1 on two probes; double singular quadrature earns a looser bar
    let c2_grid = [-0.6, 0.1, 0.8];
    let p0 = p;
    let f_mix = move |y: f64| {
        eigenfunction(0, &p0, y).unwrap() + 0.5 * eigenfunction(2, &p0, y).unwrap()
    };
    let resid = c_squared_check(f_mix, &c2_grid, &p, &grading, 241)?;
    report.push(CheckRecord::hard(
        "c-squared-psi0-plus-half-psi2",
        resid,
        10.0 * cfg.tol_action,
    ));
    let f_bump = |y: f64| {
        let c2 = 1.0 - y.sin() * y.sin();
        Complex64::new(c2 * c2, 0.0)
    };
    let resid = c_squared_check(f_bump, &c2_grid, &p, &grading, 241)?;
    report.push(CheckRecord::hard(
        "c-squared-smooth-bump",
        resid,
        5.0 * 10.0 * cfg.tol_action,
    ));

    report.timing.total_ms = start.elapsed().as_millis() as u64;
    let csv = checks_csv(&report.checks);
    Ok(SuiteOutput {
        report,
        csv_files: vec![("c-action".into(), csv)],
    })
}

/// Completeness: corpus reconstruction convergence, single-mode
/// exactness, the alternation mutation sentinel, and the u-space route.
pub fn cmd_verify_completeness(cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let start = Instant::now();
    let p = cfg.model()?;
    let rule = suite_rule(cfg);
    let grid = convergence_grid();
    let n_list = [5usize, 10, 20, 40];
    let mut report = VerificationReport::new("verify-completeness", cfg);
    let mut csv_rows: Vec<(String, usize, f64)> = Vec::new();

    for f in corpus(&p) {
        let rows = delta_convergence_report(&f, &n_list, &p, &rule, &grid)?;
        let err10 = rows[1].1;
        let err40 = rows[3].1;
        for &(n, e) in &rows {
            csv_rows.push((f.name.clone(), n, e));
        }
        report.push(CheckRecord::hard(
            &format!("reconstruction-{}", f.name),
            err40,
            cfg.tol_complete,
        ));
        // finite expansions sit at the quadrature floor for both depths
        let at_floor = err40 < 1e-12;
        report.push(CheckRecord {
            id: format!("reconstruction-improves-{}", f.name),
            residual: err40 / err10.max(1e-300),
            tolerance: 1.0,
            pass: err40 < err10 || at_floor,
            informational: false,
            detail: Some(format!(
                "error(40) = {err40:.3e}, error(10) = {err10:.3e}{}",
                if at_floor { "; both at quadrature floor" } else { "" }
            )),
        });
    }

    // single-mode exactness
    let mut worst = 0.0f64;
    for n in 0..=10u32.min(cfg.n_max) {
        let f = TestFunction::new(&format!("psi{n}"), true, "bound state", move |y| {
            eigenfunction(n, &p, y).unwrap()
        });
        let values = reconstruct(&f, n as usize + 2, &p, &rule, &grid)?;
        worst = worst.max(sup_error(&f, &grid, &values));
    }
    report.push(CheckRecord::hard("single-mode-exactness", worst, 1e-9));

    // mutation sentinel: dropping (-1)^n must break psi_1 reconstruction
    let f1 = TestFunction::new("psi1", true, "bound state", move |y| {
        eigenfunction(1, &p, y).unwrap()
    });
    let mutated = reconstruct_dropping_alternation(&f1, 4, &p, &rule, &grid)?;
    report.push(lower_bound_check(
        "alternation-mutation-sentinel",
        sup_error(&f1, &grid, &mutated),
        0.1,
        "the expansion without the alternating sign must fail",
    ));

    // u-space delta-identity route agrees with the x-space expansion
    let probe = corpus(&p).remove(0);
    let small_grid = [-0.8, -0.2, 0.35, 1.0];
    let mut route_dev = 0.0f64;
    for count in [8usize, 20] {
        let via_delta = reconstruct_via_jacobi_delta(&probe, count, &p, &rule, &small_grid)?;
        let via_eigen = reconstruct(&probe, count, &p, &rule, &small_grid)?;
        for (a, b) in via_delta.iter().zip(&via_eigen) {
            route_dev = route_dev.max((a - b).norm());
        }
    }
    report.push(CheckRecord::hard(
        "jacobi-delta-route-consistency",
        route_dev,
        1e-8,
    ));

    // endpoint-nonvanishing probe: stalled convergence is expected and
    // reported, not failed
    let probe = endpoint_probe();
    let rows = delta_convergence_report(&probe, &n_list, &p, &rule, &grid)?;
    for &(n, e) in &rows {
        csv_rows.push((probe.name.clone(), n, e));
    }
    report.push(CheckRecord::informational(
        "endpoint-nonvanishing-probe",
        rows[3].1,
        cfg.tol_complete,
        "boundary mismatch stalls sup-norm convergence for f = 1; informational by design",
    ));

    report.timing.total_ms = start.elapsed().as_millis() as u64;
    Ok(SuiteOutput {
        report,
        csv_files: vec![("completeness-convergence".into(), convergence_csv(&csv_rows))],
    })
}

/// Special-function identity floor: gamma recurrence/reflection, 2F1
/// cross-region consistency, F4 reduction to 2F1.
pub fn specfun_floor_checks(report: &mut VerificationReport) -> Result<(), SuiteError> {
    // deterministic xorshift sweep
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut rec_worst = 0.0f64;
    let mut refl_worst = 0.0f64;
    let mut checked = 0;
    while checked < 100 {
        let z = Complex64::new(40.0 * next() - 20.0, 40.0 * next() - 20.0);
        if z.norm() > 20.0 {
            continue;
        }
        if z.im.abs() < 0.1 && (z.re - z.re.round()).abs() < 0.1 {
            continue;
        }
        let lhs = log_gamma(z + 1.0)?.exp();
        let rhs = z * log_gamma(z)?.exp();
        rec_worst = rec_worst.max((lhs - rhs).norm() / rhs.norm());
        if z.norm() < 6.0 {
            let refl = (log_gamma(z)? + log_gamma(1.0 - z)? + ln_sin_pi(z)).exp()
                / std::f64::consts::PI;
            refl_worst = refl_worst.max((refl - Complex64::new(1.0, 0.0)).norm());
        }
        checked += 1;
    }
    report.push(CheckRecord::hard("gamma-recurrence", rec_worst, 1e-11));
    report.push(CheckRecord::hard("gamma-reflection", refl_worst, 1e-11));

    // 2F1 cross-region consistency: Euler transform as the two-route probe
    let a = Complex64::new(0.9, 0.2);
    let b = Complex64::new(0.55, -0.4);
    let c = Complex64::new(1.8, 0.3);
    let mut hyp_worst = 0.0f64;
    for &z in &[
        Complex64::new(0.35, 0.2),
        Complex64::new(-0.5, -0.3),
        Complex64::new(-4.0, 0.0),
        Complex64::new(2.5, 0.0),
        Complex64::new(0.1, 0.75),
    ] {
        let lhs = gauss_2f1(a, b, c, z)?;
        let one_minus = Complex64::new(1.0, 0.0) - z;
        let factor = if z.im == 0.0 && z.re > 1.0 {
            ((c - a - b) * Complex64::new((z.re - 1.0).ln(), -std::f64::consts::PI)).exp()
        } else {
            ((c - a - b) * one_minus.ln()).exp()
        };
        let rhs = factor * gauss_2f1(c - a, c - b, c, z)?;
        hyp_worst = hyp_worst.max((lhs - rhs).norm() / lhs.norm());
    }
    report.push(CheckRecord::hard(
        "hyp2f1-cross-region-consistency",
        hyp_worst,
        1e-9,
    ));

    // F4 reduction at V = 0
    let ctrl = SeriesControl::default();
    let (fa, fb, fc, fd) = (
        Complex64::new(1.1, 0.4),
        Complex64::new(0.8, -0.2),
        Complex64::new(2.2, 0.3),
        Complex64::new(1.7, -0.5),
    );
    let mut f4_worst = 0.0f64;
    for &u in &[
        Complex64::new(0.3, 0.0),
        Complex64::new(-0.2, 0.35),
        Complex64::new(0.6, -0.1),
    ] {
        let f4 = appell_f4(fa, fb, fc, fd, u, Complex64::new(0.0, 0.0), &ctrl)?;
        let f21 = gauss_2f1(fa, fb, fc, u)?;
        f4_worst = f4_worst.max((f4 - f21).norm() / f21.norm());
    }
    report.push(CheckRecord::hard("f4-reduction-to-2f1", f4_worst, 1e-12));
    Ok(())
}

/// All suites aggregated into one report, with the special-function
/// floor checks included.
pub fn cmd_full_report(cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let start = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new("full-report", cfg);
    let mut csv_files = Vec::new();

    specfun_floor_checks(&mut report)?;
    for (output, _name) in [
        (cmd_verify_orthonormality(cfg)?, "orthonormality"),
        (cmd_compare_kernel(cfg)?, "kernel"),
        (cmd_verify_c_action(cfg)?, "c-action"),
        (cmd_verify_completeness(cfg)?, "completeness"),
    ] {
        report.merge(output.report);
        csv_files.extend(output.csv_files);
    }
    report.timing.total_ms = start.elapsed().as_millis() as u64;

    // index of the CSV payloads
    let mut index = String::from("file,rows\n");
    for (name, content) in &csv_files {
        index.push_str(&format!(
            "{name}.csv,{}\n",
            content.lines().count().saturating_sub(1)
        ));
    }
    csv_files.push(("index".into(), index));
    Ok(SuiteOutput { report, csv_files })
}
