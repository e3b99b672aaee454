//! Composite Gauss-Legendre quadrature on [-pi/2, pi/2] and the indefinite
//! PT inner product <phi, psi> = int (PT phi)(x) psi(x) dx, whose Gram
//! matrix on the eigenfunctions is diag(1, -1, 1, -1, ...).

use crate::scarf::{eigenfunction_batch, ModelParams, ScarfError};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PtProductError {
    #[error("rule with {panels} panels x order {order} cannot resolve degree {degree}; need order*panels >= {needed}")]
    Resolution {
        panels: usize,
        order: usize,
        degree: u32,
        needed: usize,
    },
    #[error(transparent)]
    Scarf(#[from] ScarfError),
}

/// Geometric-grading descriptor toward the kernel's singular line; consumed
/// by the C-action quadrature, which derives the split location from x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grading {
    /// geometric shrink factor of successive panels approaching the split
    pub ratio: f64,
    /// width of the deepest panel pair straddling the split
    pub min_width: f64,
    /// Gauss-Legendre order per panel
    pub order: usize,
    /// coarse panels across each smooth section
    pub backbone: usize,
    /// geometric refinements toward u = -1 and u = +1
    pub endpoint_levels: usize,
}

impl Default for Grading {
    fn default() -> Self {
        Self {
            ratio: 0.25,
            min_width: 1e-10,
            order: 16,
            backbone: 10,
            endpoint_levels: 10,
        }
    }
}

/// Quadrature nodes and weights on [-pi/2, pi/2].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
    pub order_per_panel: usize,
    pub grading: Option<Grading>,
}

impl QuadratureRule {
    pub fn integrate<F>(&self, mut f: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v)
    }

    pub fn with_grading(mut self, grading: Grading) -> Self {
        self.grading = Some(grading);
        self
    }
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
pub(crate) fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule: `panels` uniform panels of `order` points
/// each on [-pi/2, pi/2].
pub fn build_rule(panels: usize, order: usize) -> QuadratureRule {
    assert!(panels >= 1 && order >= 2);
    let (ref_nodes, ref_weights) = gauss_legendre(order);
    let width = PI / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = -FRAC_PI_2 + p as f64 * width;
        let mid = lo + width / 2.0;
        let half = width / 2.0;
        for (&t, &w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(mid + half * t);
            weights.push(half * w);
        }
    }
    QuadratureRule {
        nodes,
        weights,
        panels,
        order_per_panel: order,
        grading: None,
    }
}

/// Composite rule whose outermost panels are geometrically refined toward
/// +-pi/2 (ratio 1/2, `levels` halvings per side). The eigenfunction
/// products behave like dist^{2 alpha_R + 1} at the endpoints, which a
/// uniform rule resolves too slowly for the 1e-8 orthonormality budget
/// once alpha_R drops toward 1/2.
pub fn build_endpoint_graded_rule(panels: usize, order: usize, levels: usize) -> QuadratureRule {
    assert!(panels >= 3 && order >= 2);
    let (ref_nodes, ref_weights) = gauss_legendre(order);
    let width = PI / panels as f64;
    // panel breakpoints: graded near -pi/2, uniform in the middle, graded near pi/2
    let mut cuts: Vec<f64> = Vec::new();
    cuts.push(-FRAC_PI_2);
    for lvl in (1..=levels).rev() {
        cuts.push(-FRAC_PI_2 + width * 0.5f64.powi(lvl as i32));
    }
    for p in 1..panels {
        cuts.push(-FRAC_PI_2 + p as f64 * width);
    }
    for lvl in 1..=levels {
        cuts.push(FRAC_PI_2 - width * 0.5f64.powi(lvl as i32));
    }
    cuts.push(FRAC_PI_2);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for (&t, &w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(mid + half * t);
            weights.push(half * w);
        }
    }
    let panel_count = cuts.len() - 1;
    QuadratureRule {
        nodes,
        weights,
        panels: panel_count,
        order_per_panel: order,
        grading: None,
    }
}

/// Default rule for the orthonormality suite: the 8 x 32 backbone with
/// endpoint refinement.
pub fn default_rule() -> QuadratureRule {
    build_endpoint_graded_rule(8, 32, 14)
}

fn check_resolution(rule: &QuadratureRule, degree: u32) -> Result<(), PtProductError> {
    let needed = 4 * degree as usize + 32;
    if rule.order_per_panel * rule.panels < needed {
        return Err(PtProductError::Resolution {
            panels: rule.panels,
            order: rule.order_per_panel,
            degree,
            needed,
        });
    }
    Ok(())
}

/// <psi_m, psi_n>_PT = int psi_m*(-x) psi_n(x) dx; equals (-1)^n delta_mn.
pub fn pt_inner_product(
    m: u32,
    n: u32,
    p: &ModelParams,
    rule: &QuadratureRule,
) -> Result<Complex64, PtProductError> {
    check_resolution(rule, m.max(n))?;
    let count = (m.max(n) + 1) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let at_x = eigenfunction_batch(p, x, count)?;
        let at_neg = eigenfunction_batch(p, -x, count)?;
        acc += at_neg[m as usize].conj() * at_x[n as usize] * w;
    }
    Ok(acc)
}

/// Full Gram matrix G[m][n] = <psi_m, psi_n>_PT for m, n < size.
pub fn gram_matrix(
    size: usize,
    p: &ModelParams,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<Complex64>>, PtProductError> {
    assert!(size >= 1);
    check_resolution(rule, (size - 1) as u32)?;
    let mut g = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let at_x = eigenfunction_batch(p, x, size)?;
        let at_neg = eigenfunction_batch(p, -x, size)?;
        for m in 0..size {
            let pt_m = at_neg[m].conj();
            for n in 0..size {
                g[m][n] += pt_m * at_x[n] * w;
            }
        }
    }
    Ok(g)
}

/// Max entrywise deviation of G from diag((-1)^n).
pub fn gram_deviation(g: &[Vec<Complex64>]) -> f64 {
    let mut max = 0.0f64;
    for (m, row) in g.iter().enumerate() {
        for (n, &entry) in row.iter().enumerate() {
            let target = if m == n {
                Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            max = max.max((entry - target).norm());
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;

    fn params(re: f64, im: f64) -> ModelParams {
        ModelParams::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let rule = build_rule(8, 32);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - PI).abs() < 1e-12);
        // constant integrand
        let one = rule.integrate(|_| Complex64::new(1.0, 0.0));
        assert!((one.re - PI).abs() < 1e-14 && one.im == 0.0);
    }

    #[test]
    fn integrates_cosine_exactly_enough() {
        let rule = build_rule(8, 32);
        let got = rule.integrate(|x| Complex64::new(x.cos(), 0.0));
        assert!((got.re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn integrates_cos_power_to_beta_value() {
        // int cos^{2 aR} x dx = sqrt(pi) G(aR + 1/2) / G(aR + 1)
        let ar: f64 = 1.0;
        let rule = build_rule(8, 32);
        let got = rule
            .integrate(|x| Complex64::new(x.cos().powf(2.0 * ar), 0.0))
            .re;
        let want = PI.sqrt()
            * (log_gamma(Complex64::new(ar + 0.5, 0.0)).unwrap()
                - log_gamma(Complex64::new(ar + 1.0, 0.0)).unwrap())
            .exp()
            .re;
        assert!((got - want).abs() < 1e-10 * want.abs());
        // self-convergence at doubled order
        let fine = build_rule(8, 64)
            .integrate(|x| Complex64::new(x.cos().powf(2.0 * ar), 0.0))
            .re;
        assert!((got - fine).abs() < 1e-10);
    }

    #[test]
    fn pt_inner_product_alternating_norm() {
        let p = params(1.0, 0.5);
        let rule = default_rule();
        let g00 = pt_inner_product(0, 0, &p, &rule).unwrap();
        assert!((g00 - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        let g33 = pt_inner_product(3, 3, &p, &rule).unwrap();
        assert!((g33 - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
        let g25 = pt_inner_product(2, 5, &p, &rule).unwrap();
        assert!(g25.norm() < 1e-10);
    }

    #[test]
    fn gram_matrix_structure() {
        let rule = default_rule();
        // N = 1: the 1x1 matrix [1]
        let g1 = gram_matrix(1, &params(1.0, 0.5), &rule).unwrap();
        assert!((g1[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        // N = 6 for both default parameter sets
        for p in [params(1.0, 0.5), params(0.8, 1.2)] {
            let g = gram_matrix(6, &p, &rule).unwrap();
            let dev = gram_deviation(&g);
            assert!(dev < 1e-9, "alpha = {:?}: deviation {dev}", p.alpha());
        }
    }

    #[test]
    fn orthonormality_to_n_twelve() {
        let rule = default_rule();
        for p in [params(1.0, 0.5), params(0.8, 1.2)] {
            let g = gram_matrix(13, &p, &rule).unwrap();
            let dev = gram_deviation(&g);
            assert!(dev < 1e-8, "alpha = {:?}: deviation {dev}", p.alpha());
        }
    }

    #[test]
    fn plain_integral_path_gives_same_alternating_norm() {
        // since PT psi_n = psi_n, int psi_m psi_n dx = (-1)^n delta_mn as well;
        // this path never calls the reflection code
        let p = params(1.0, 0.5);
        let rule = default_rule();
        for (m, n) in [(0usize, 0usize), (1, 1), (4, 4), (0, 3), (2, 5)] {
            let count = m.max(n) + 1;
            let mut acc = Complex64::new(0.0, 0.0);
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let at_x = eigenfunction_batch(&p, x, count).unwrap();
                acc += at_x[m] * at_x[n] * w;
            }
            let target = if m == n {
                Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!((acc - target).norm() < 1e-9, "({m},{n}) -> {acc}");
        }
    }

    #[test]
    fn doubling_order_is_stable() {
        for p in [params(1.0, 0.5), params(0.8, 1.2)] {
            let g32 = gram_matrix(13, &p, &build_endpoint_graded_rule(8, 32, 14)).unwrap();
            let g64 = gram_matrix(13, &p, &build_endpoint_graded_rule(8, 64, 14)).unwrap();
            let mut max_change = 0.0f64;
            for m in 0..13 {
                for n in 0..13 {
                    max_change = max_change.max((g32[m][n] - g64[m][n]).norm());
                }
            }
            assert!(max_change < 1e-10, "max change {max_change}");
        }
    }

    #[test]
    fn resolution_guard() {
        let p = params(1.0, 0.5);
        let rule = build_rule(1, 8);
        assert!(matches!(
            pt_inner_product(5, 5, &p, &rule),
            Err(PtProductError::Resolution { .. })
        ));
    }
}
