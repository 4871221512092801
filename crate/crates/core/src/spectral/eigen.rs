use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::power::{pf_eigenvalue_with, PowerOptions};
use crate::algebra::Truncation;
use crate::error::{Error, Result};

/// Largest cutoff handled by dense complex factorizations.
pub const DENSE_CAP: usize = 1500;

const RESIDUAL_BOUND: f64 = 1e-8;
const NORMALIZATION_TOL: f64 = 1e-10;

/// Normalized left/right eigenvectors for one eigenvalue ζ^s λ.
#[derive(Clone, Debug, Serialize)]
pub struct EigenPair {
    pub s: usize,
    pub eigenvalue: Complex64,
    pub right: Vec<Complex64>,
    /// Scaled so that `leftᵀ·right = 1` (no conjugation).
    pub left: Vec<Complex64>,
}

impl EigenPair {
    /// Sum of the first column of `right · leftᵀ`: `left[0] · Σ right`.
    pub fn kappa(&self) -> Complex64 {
        self.left[0] * self.right.iter().sum::<Complex64>()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenData {
    pub lambda: f64,
    pub period: usize,
    pub pairs: Vec<EigenPair>,
}

fn root_of_unity(s: usize, h: usize) -> Complex64 {
    let r = s % h;
    match (r, h) {
        (0, _) => Complex64::new(1.0, 0.0),
        _ if 2 * r == h => Complex64::new(-1.0, 0.0),
        _ if 4 * r == h => Complex64::new(0.0, 1.0),
        _ if 4 * r == 3 * h => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / h as f64),
    }
}

pub(crate) fn zeta_power(s: usize, h: usize) -> Complex64 {
    root_of_unity(s, h)
}

fn inverse_iteration(a: &DMatrix<Complex64>, mu: Complex64) -> Vec<Complex64> {
    let n = a.nrows();
    let shift = mu * (1.0 + 1e-9) + Complex64::new(1e-14, 0.0);
    let mut b = a.clone();
    for i in 0..n {
        b[(i, i)] -= shift;
    }
    let lu = b.lu();
    let mut x = nalgebra::DVector::<Complex64>::from_element(n, Complex64::new(1.0, 0.0));
    for i in 0..n {
        x[i] += Complex64::new(0.0, 1e-3 * (i as f64 + 1.0).sqrt());
    }
    for _ in 0..4 {
        let y = match lu.solve(&x) {
            Some(y) => y,
            None => break,
        };
        let scale = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(scale.is_finite() && scale > 0.0) {
            break;
        }
        x = y / Complex64::new(scale, 0.0);
    }
    x.iter().copied().collect()
}

fn residual(a: &DMatrix<Complex64>, v: &[Complex64], mu: Complex64) -> f64 {
    let x = nalgebra::DVector::from_column_slice(v);
    let r = a * &x - &x * mu;
    let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    r.iter().map(|z| z.norm()).fold(0.0, f64::max) / vmax.max(f64::MIN_POSITIVE)
}

/// Normalized eigenpairs for ζ^s λ, s = 0..h.
pub fn leading_eigendata(t: &Truncation, h: usize) -> Result<EigenData> {
    if h == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let lambda = pf_eigenvalue_with(&t.matrix, &PowerOptions::default())?;
    if lambda <= 0.0 {
        return Err(Error::NonPositiveRate(format!("{lambda}")));
    }
    let n = t.len();
    if n > DENSE_CAP {
        if h != 1 {
            return Err(Error::SizeOverCap { size: n, cap: DENSE_CAP });
        }
        return sparse_leading(t, lambda);
    }
    let real = t.matrix.to_dense_f64();
    let a: DMatrix<Complex64> = real.map(|x| Complex64::new(x, 0.0));
    let at = a.transpose();
    let lambda = rayleigh(&a, &at, lambda);
    let mut pairs = Vec::with_capacity(h);
    for s in 0..h {
        let mu = root_of_unity(s, h) * lambda;
        let v = inverse_iteration(&a, mu);
        let w = inverse_iteration(&at, mu);
        pairs.push(normalize(s, mu, v, w, lambda, |v| residual(&a, v, mu))?);
    }
    Ok(EigenData { lambda, period: h, pairs })
}

/// Two-sided Rayleigh quotient `wᵀAv / wᵀv` at the Perron root; its error is quadratic in the
/// eigenvector error, so it sharpens the bracket midpoint. Falls back to `lambda` if it drifts.
fn rayleigh(a: &DMatrix<Complex64>, at: &DMatrix<Complex64>, lambda: f64) -> f64 {
    let mu = Complex64::new(lambda, 0.0);
    let v = nalgebra::DVector::from_vec(inverse_iteration(a, mu));
    let w = nalgebra::DVector::from_vec(inverse_iteration(at, mu));
    let num = w.transpose() * (a * &v);
    let den = w.transpose() * &v;
    let q = (num[(0, 0)] / den[(0, 0)]).re;
    if q.is_finite() && (q - lambda).abs() <= 1e-9 * lambda.max(1.0) {
        q
    } else {
        lambda
    }
}

fn normalize(
    s: usize,
    mu: Complex64,
    v: Vec<Complex64>,
    w: Vec<Complex64>,
    lambda: f64,
    res: impl Fn(&[Complex64]) -> f64,
) -> Result<EigenPair> {
    let r = res(&v);
    if !(r <= RESIDUAL_BOUND * lambda) {
        return Err(Error::Residual { residual: r, bound: RESIDUAL_BOUND * lambda });
    }
    let dot: Complex64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
    let vn = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let wn = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(dot.norm() > NORMALIZATION_TOL * vn * wn) {
        return Err(Error::Normalization(dot.norm()));
    }
    let left = w.iter().map(|z| z / dot).collect();
    Ok(EigenPair { s, eigenvalue: mu, right: v, left })
}

/// Power iteration on M + εI for the right vector and on Mᵀ + εI for the left one (h = 1 only).
fn sparse_leading(t: &Truncation, lambda: f64) -> Result<EigenData> {
    let cols = t.matrix.to_f64_columns();
    let n = t.len();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (j, col) in cols.iter().enumerate() {
        for &(i, w) in col {
            rows[i].push((j, w));
        }
    }
    let right = power_vector(&cols, n)?;
    let left = power_vector(&rows, n)?;
    let apply = |x: &[Complex64]| -> f64 {
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (j, col) in cols.iter().enumerate() {
            for &(i, w) in col {
                y[i] += x[j] * w;
            }
        }
        let vmax = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        y.iter().zip(x).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max) / vmax
    };
    let v: Vec<Complex64> = right.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let w: Vec<Complex64> = left.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let pair = normalize(0, Complex64::new(lambda, 0.0), v, w, lambda, apply)?;
    Ok(EigenData { lambda, period: 1, pairs: vec![pair] })
}

fn power_vector(cols: &[Vec<(usize, f64)>], n: usize) -> Result<Vec<f64>> {
    let eps = super::power::EPSILON_SHIFT;
    let mut x = vec![1.0f64; n];
    let max_iter = super::power::DEFAULT_MAX_ITER;
    for _ in 0..max_iter {
        let mut y: Vec<f64> = x.iter().map(|v| eps * v).collect();
        for (j, col) in cols.iter().enumerate() {
            for &(i, w) in col {
                y[i] += w * x[j];
            }
        }
        let top = y.iter().copied().fold(0.0, f64::max);
        if top == 0.0 {
            return Err(Error::NoConvergence { iterations: 0 });
        }
        let mut change = 0.0f64;
        for (xi, yi) in x.iter_mut().zip(&y) {
            let v = yi / top;
            change = change.max((v - *xi).abs());
            *xi = v;
        }
        if change < 1e-14 {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence { iterations: max_iter })
}
