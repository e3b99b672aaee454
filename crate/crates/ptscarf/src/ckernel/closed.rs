//! Closed form of the C(x, y) kernel, the candidate-form resolution that
//! pins its exponents and hypergeometric parameters against the Abel
//! oracle, the limit-series route, and the singularity-exponent fit.

use super::abel::{abel_constant, kernel_abel};
use super::{prefactor, AbelSchedule, KernelPoint, KernelResult};
use crate::scarf::ModelParams;
use crate::specfun::{gauss_2f1, log_gamma, real_pow, recip_gamma, SeriesControl};
use num_complex::Complex64;
use std::f64::consts::PI;

/// C(x, y) in closed form.
///
/// For z < 1 this is
///   N [(1+sin x)(1+sin y)]^{alpha*/2 + 1/4} / [(1-sin x)(1-sin y)]^{alpha*/2 + 3/4}
///     * 2F1(alpha_R + 1, 1 - i alpha_I; alpha* + 1; z),
/// the form selected by `resolve_closed_form` against the Abel oracle.
/// For z > 1 the kernel is evaluated through the exact reflection identity
/// C(x, y) = conj(C(-x, -y)), whose right side has 1/z < 1; the z-form
/// continued across the cut does not reproduce the kernel there on either
/// side of the cut (the report records this), so the reflected evaluation
/// is the correct and branch-free route.
pub fn kernel_closed(pt: &KernelPoint, p: &ModelParams) -> KernelResult<Complex64> {
    pt.reject_singular()?;
    kernel_closed_unguarded(pt, p)
}

/// Closed form without the singular-band rejection; the principal-value
/// quadrature needs finite values arbitrarily close to the line.
pub(crate) fn kernel_closed_unguarded(
    pt: &KernelPoint,
    p: &ModelParams,
) -> KernelResult<Complex64> {
    if pt.z() <= 1.0 {
        closed_small_z(pt, p)
    } else {
        Ok(closed_small_z(&pt.reflected(), p)?.conj())
    }
}

fn closed_small_z(pt: &KernelPoint, p: &ModelParams) -> KernelResult<Complex64> {
    let n = super::abel::kernel_constant(p)?;
    if n.parity_limit {
        // Hermitian case: the pointwise kernel vanishes off the line
        return Ok(Complex64::new(0.0, 0.0));
    }
    let alpha = p.alpha();
    let ar = p.alpha_r();
    let ai = p.alpha_i();
    let a = Complex64::new(ar + 1.0, 0.0);
    let second = Complex64::new(1.0, -ai); // 1 - c + a
    let d = Complex64::new(1.0, 0.0) + alpha.conj();
    let exp_num = alpha.conj() * 0.5 + 0.25;
    let exp_den = alpha.conj() * 0.5 + 0.75;
    let hyp = gauss_2f1(a, second, d, Complex64::new(pt.z(), 0.0))?;
    Ok(n.value * real_pow(pt.b_product(), exp_num) / real_pow(pt.a_product(), exp_den) * hyp)
}

/// Exponent bases the candidate enumeration draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentBase {
    AlphaHalf,
    AlphaStarHalf,
    AlphaRHalf,
}

impl ExponentBase {
    fn value(&self, p: &ModelParams) -> Complex64 {
        match self {
            ExponentBase::AlphaHalf => p.alpha() * 0.5,
            ExponentBase::AlphaStarHalf => p.alpha().conj() * 0.5,
            ExponentBase::AlphaRHalf => Complex64::new(p.alpha_r() * 0.5, 0.0),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            ExponentBase::AlphaHalf => "alpha/2",
            ExponentBase::AlphaStarHalf => "alpha*/2",
            ExponentBase::AlphaRHalf => "alpha_R/2",
        }
    }
}

/// Second 2F1 parameter choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondParam {
    OneMinusCPlusA,
    OneMinusCPlusB,
}

impl SecondParam {
    fn value(&self, p: &ModelParams) -> Complex64 {
        // c = 1 + alpha, a = alpha_R + 1, b = alpha_R + 3/2
        match self {
            SecondParam::OneMinusCPlusA => Complex64::new(1.0, -p.alpha_i()),
            SecondParam::OneMinusCPlusB => Complex64::new(1.5, -p.alpha_i()),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            SecondParam::OneMinusCPlusA => "1-c+a",
            SecondParam::OneMinusCPlusB => "1-c+b",
        }
    }
}

/// One candidate closed form: numerator exponent p1, denominator exponent
/// p2 (each base + {1/4, 3/4}), and the second 2F1 parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCandidate {
    pub p1_base: ExponentBase,
    pub p1_shift: f64,
    pub p2_base: ExponentBase,
    pub p2_shift: f64,
    pub second_param: SecondParam,
}

impl ClosedFormCandidate {
    pub fn label(&self) -> String {
        format!(
            "p1={}+{}, p2={}+{}, param={}",
            self.p1_base.label(),
            self.p1_shift,
            self.p2_base.label(),
            self.p2_shift,
            self.second_param.label()
        )
    }

    /// The candidate the derivation (and the oracle) single out.
    pub fn resolved() -> Self {
        Self {
            p1_base: ExponentBase::AlphaStarHalf,
            p1_shift: 0.25,
            p2_base: ExponentBase::AlphaStarHalf,
            p2_shift: 0.75,
            second_param: SecondParam::OneMinusCPlusA,
        }
    }
}

/// All 72 candidate forms the resolution procedure scans.
pub fn candidate_catalog() -> Vec<ClosedFormCandidate> {
    let bases = [
        ExponentBase::AlphaHalf,
        ExponentBase::AlphaStarHalf,
        ExponentBase::AlphaRHalf,
    ];
    let shifts = [0.25, 0.75];
    let params = [SecondParam::OneMinusCPlusA, SecondParam::OneMinusCPlusB];
    let mut out = Vec::with_capacity(72);
    for &p1b in &bases {
        for &p1s in &shifts {
            for &p2b in &bases {
                for &p2s in &shifts {
                    for &sp in &params {
                        out.push(ClosedFormCandidate {
                            p1_base: p1b,
                            p1_shift: p1s,
                            p2_base: p2b,
                            p2_shift: p2s,
                            second_param: sp,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Evaluate a candidate form at a z < 1 point (the resolution domain,
/// where the printed structure needs no continuation across the cut).
pub fn evaluate_candidate(
    cand: &ClosedFormCandidate,
    pt: &KernelPoint,
    p: &ModelParams,
) -> KernelResult<Complex64> {
    assert!(pt.z() < 1.0, "candidate evaluation requires z < 1");
    let n = super::abel::kernel_constant(p)?;
    let ar = p.alpha_r();
    let a = Complex64::new(ar + 1.0, 0.0);
    let d = Complex64::new(1.0, 0.0) + p.beta();
    let p1 = cand.p1_base.value(p) + cand.p1_shift;
    let p2 = cand.p2_base.value(p) + cand.p2_shift;
    let hyp = gauss_2f1(
        a,
        cand.second_param.value(p),
        d,
        Complex64::new(pt.z(), 0.0),
    )?;
    Ok(n.value * real_pow(pt.b_product(), p1) / real_pow(pt.a_product(), p2) * hyp)
}

/// Residual record for one candidate across the resolution sample.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRecord {
    pub label: String,
    pub max_rel_err: f64,
    pub survived: bool,
}

/// Outcome of the form resolution: every candidate's residual plus the
/// surviving form when it is unique.
#[derive(Debug, Clone, PartialEq)]
pub struct TypoResolution {
    pub records: Vec<CandidateRecord>,
    pub survivor_count: usize,
    pub selected: Option<ClosedFormCandidate>,
    pub tolerance: f64,
}

/// Scan the candidate catalog against the Abel oracle over the given
/// points (all with z < 1) for every parameter set; a candidate survives
/// only if it matches everywhere for every alpha.
pub fn resolve_closed_form(
    params: &[ModelParams],
    points: &[KernelPoint],
    sched: &AbelSchedule,
    ctrl: &SeriesControl,
    tolerance: f64,
) -> KernelResult<TypoResolution> {
    let mut oracle = Vec::new();
    for p in params {
        for pt in points {
            oracle.push((p, pt, kernel_abel(pt, p, sched, ctrl)?));
        }
    }
    let catalog = candidate_catalog();
    let mut records = Vec::with_capacity(catalog.len());
    let mut survivors = Vec::new();
    for cand in &catalog {
        let mut max_rel = 0.0f64;
        for (p, pt, want) in &oracle {
            let got = evaluate_candidate(cand, pt, p)?;
            max_rel = max_rel.max((got - want).norm() / want.norm().max(1e-300));
        }
        let survived = max_rel < tolerance;
        if survived {
            survivors.push(*cand);
        }
        records.push(CandidateRecord {
            label: cand.label(),
            max_rel_err: max_rel,
            survived,
        });
    }
    Ok(TypoResolution {
        survivor_count: survivors.len(),
        selected: if survivors.len() == 1 {
            Some(survivors[0])
        } else {
            None
        },
        records,
        tolerance,
    })
}

/// Third kernel route: the limit series with explicit gamma factors,
///
///   C = pref(x,y) K 2(2aR+1) A^{-a}
///       sum_s Gamma(c) Gamma(1/2) / (Gamma(b+s) Gamma(c-a-s))
///             (-z)^s (a)_s (b)_s / (s! (d)_s)
///
/// for z < 1; for z > 1 the roles of the two coordinates swap
/// (A <-> B, c <-> d, z -> 1/z). Terms are built by ratio updates from
/// the s = 0 value Gamma(c) Gamma(1/2) / (Gamma(b) Gamma(c-a)).
pub fn f4_limit(pt: &KernelPoint, p: &ModelParams, ctrl: &SeriesControl) -> KernelResult<Complex64> {
    pt.reject_singular()?;
    let ar = p.alpha_r();
    let a = Complex64::new(ar + 1.0, 0.0);
    let b = Complex64::new(ar + 1.5, 0.0);
    let (c, d, base, ratio_arg) = if pt.z() < 1.0 {
        (
            Complex64::new(1.0, 0.0) + p.alpha(),
            Complex64::new(1.0, 0.0) + p.beta(),
            pt.a_product(),
            pt.z(),
        )
    } else {
        (
            Complex64::new(1.0, 0.0) + p.beta(),
            Complex64::new(1.0, 0.0) + p.alpha(),
            pt.b_product(),
            1.0 / pt.z(),
        )
    };
    let mut term = log_gamma(c)?.exp() * PI.sqrt() * recip_gamma(b) * recip_gamma(c - a);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut converged = false;
    for s in 0..ctrl.max_terms {
        sum += term;
        if s > 4 && term.norm() <= ctrl.rel_tol * sum.norm() {
            converged = true;
            break;
        }
        let sf = s as f64;
        term *= -ratio_arg * (a + sf) * (c - a - sf - 1.0) / ((sf + 1.0) * (d + sf));
    }
    if !converged && !p.is_hermitian() {
        return Err(crate::specfun::SpecFunError::NonConvergent {
            max_terms: ctrl.max_terms,
            last_rel: term.norm() / sum.norm().max(1e-300),
        }
        .into());
    }
    let k = abel_constant(p)?;
    Ok(prefactor(pt, p) * k * 2.0 * (2.0 * ar + 1.0) * real_pow(base, -a) * sum)
}

/// Least-squares slope of ln|kernel_closed| against ln|1 - z| along the
/// approach y -> -x at fixed x; `offsets` are the y + x values sampled.
pub fn singularity_slope(p: &ModelParams, x: f64, offsets: &[f64]) -> KernelResult<f64> {
    assert!(offsets.len() >= 2);
    let mut pts = Vec::with_capacity(offsets.len());
    for &delta in offsets {
        let pt = KernelPoint::new(x, -x + delta)?;
        let one_minus_z = (1.0 - pt.z()).abs();
        let value = kernel_closed(&pt, p)?;
        pts.push((one_minus_z.ln(), value.norm().ln()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}
