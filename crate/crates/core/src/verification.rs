//! Numeric oracles for tests: dense Hermite fitting, Gauss-Legendre
//! quadrature, finite-difference Jacobians, compensated sums and the
//! convergence-order audit.

use nalgebra::{DMatrix, DVector};

use crate::error::{HwenoError, Result};

/// `d^order p / dx^order (point) = value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteCondition {
    pub point: f64,
    pub order: usize,
    pub value: f64,
}

impl HermiteCondition {
    pub fn new(point: f64, order: usize, value: f64) -> Self {
        Self { point, order, value }
    }
}

/// Polynomial stored in powers of `s = (x - center) / scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedPolynomial {
    pub center: f64,
    pub scale: f64,
    pub scaled_coefficients: Vec<f64>,
}

impl FittedPolynomial {
    pub fn degree(&self) -> usize {
        self.scaled_coefficients.len().saturating_sub(1)
    }

    /// `k`-th derivative at `x`.
    pub fn derivative(&self, x: f64, k: usize) -> f64 {
        let s = (x - self.center) / self.scale;
        let mut acc = 0.0;
        for (p, &c) in self.scaled_coefficients.iter().enumerate().skip(k).rev() {
            acc = acc * s + c * falling(p, k);
        }
        acc / self.scale.powi(k as i32)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(x, 0)
    }

    /// Coefficients in powers of `x`.
    pub fn monomial_coefficients(&self) -> Vec<f64> {
        let n = self.scaled_coefficients.len();
        let mut out = vec![0.0; n];
        // expand sum c_p ((x - c)/s)^p
        for (p, &cp) in self.scaled_coefficients.iter().enumerate() {
            let f = cp / self.scale.powi(p as i32);
            for q in 0..=p {
                out[q] += f * binomial(p, q) * (-self.center).powi((p - q) as i32);
            }
        }
        out
    }
}

fn falling(p: usize, k: usize) -> f64 {
    ((p + 1 - k)..=p).map(|m| m as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Largest tolerated ratio of extreme singular values.
const MAX_CONDITION: f64 = 1e12;

/// Solves the square confluent Vandermonde system for the polynomial of
/// degree `conditions.len() - 1` meeting every condition. Points are mapped
/// to `[-1, 1]` first.
pub fn fit_hermite_polynomial(conditions: &[HermiteCondition]) -> Result<FittedPolynomial> {
    let n = conditions.len();
    if n == 0 {
        return Err(HwenoError::Singular("no conditions".into()));
    }
    let lo = conditions.iter().map(|c| c.point).fold(f64::INFINITY, f64::min);
    let hi = conditions.iter().map(|c| c.point).fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (lo + hi);
    let scale = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };

    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DVector::<f64>::zeros(n);
    for (r, c) in conditions.iter().enumerate() {
        let s = (c.point - center) / scale;
        for p in c.order..n {
            a[(r, p)] = falling(p, c.order) * s.powi((p - c.order) as i32);
        }
        // condition on d^k/ds^k = scale^k d^k/dx^k
        b[r] = c.value * scale.powi(c.order as i32);
    }
    let sv = a.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if !(smin > 0.0) || smax / smin > MAX_CONDITION {
        return Err(HwenoError::Singular(format!(
            "confluent Vandermonde system has condition number {:e}",
            smax / smin
        )));
    }
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| HwenoError::Singular("LU solve failed".into()))?;
    Ok(FittedPolynomial {
        center,
        scale,
        scaled_coefficients: x.iter().copied().collect(),
    })
}

/// Central-difference Jacobian `J[r][c] = d f_r / d x_c` with step
/// `h * max(1, |x_c|)`.
pub fn finite_difference_jacobian<const M: usize>(f: impl Fn(&[f64; M]) -> [f64; M], x: &[f64; M], h: f64) -> [[f64; M]; M] {
    let mut jac = [[0.0; M]; M];
    for c in 0..M {
        let step = h * x[c].abs().max(1.0);
        let mut xp = *x;
        let mut xm = *x;
        xp[c] += step;
        xm[c] -= step;
        let fp = f(&xp);
        let fm = f(&xm);
        for r in 0..M {
            jac[r][c] = (fp[r] - fm[r]) / (2.0 * step);
        }
    }
    jac
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// `n`-point Gauss-Legendre approximation of the integral of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    kahan_sum(x.iter().zip(&w).map(|(xi, wi)| wi * f(mid + half * xi))) * half
}

/// Compensated (Neumaier) summation.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Observed orders between successive rows of an error table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceAudit {
    pub orders: Vec<f64>,
    pub passed: bool,
    pub diagnostic: Option<String>,
}

/// `log(e_k / e_{k+1}) / log(n_{k+1} / n_k)` for each pair.
pub fn convergence_orders(resolutions: &[usize], errors: &[f64]) -> Vec<f64> {
    resolutions
        .windows(2)
        .zip(errors.windows(2))
        .map(|(n, e)| (e[0] / e[1]).ln() / (n[1] as f64 / n[0] as f64).ln())
        .collect()
}

/// Passes when errors decrease monotonically and the finest pair reaches
/// `threshold`.
pub fn audit_convergence(resolutions: &[usize], errors: &[f64], threshold: f64) -> Result<ConvergenceAudit> {
    if resolutions.len() != errors.len() || resolutions.len() < 2 {
        return Err(HwenoError::InvalidConfig(
            "an error table needs at least two rows with one error per resolution".into(),
        ));
    }
    if resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HwenoError::InvalidConfig("resolutions must increase".into()));
    }
    let orders = convergence_orders(resolutions, errors);
    let growth: Vec<String> = errors
        .windows(2)
        .zip(resolutions.windows(2))
        .filter(|(e, _)| !(e[1] < e[0]))
        .map(|(e, n)| format!("error grows from {:e} (N = {}) to {:e} (N = {})", e[0], n[0], e[1], n[1]))
        .collect();
    let finest = *orders.last().expect("at least one pair");
    let mut diagnostic = None;
    let mut passed = true;
    if !growth.is_empty() {
        passed = false;
        diagnostic = Some(growth.join("; "));
    } else if !(finest >= threshold) {
        passed = false;
        diagnostic = Some(format!("finest-pair order {finest:.3} below {threshold}"));
    }
    Ok(ConvergenceAudit {
        orders,
        passed,
        diagnostic,
    })
}
