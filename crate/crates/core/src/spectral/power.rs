use nalgebra::DMatrix;
use num_complex::Complex64;

use super::scc::{class_has_cycle, scc_of_adjacency, SccDecomposition};
use crate::algebra::SparseMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_PF_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;
/// Diagonal shift that makes periodic classes primitive without moving the spectral radius.
pub const EPSILON_SHIFT: f64 = 1e-3;

const STALL_ITERATIONS: usize = 2000;
const STALL_FACTOR: f64 = 1e3;

#[derive(Clone, Copy, Debug)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub epsilon: f64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions { tol: DEFAULT_PF_TOL, max_iter: DEFAULT_MAX_ITER, epsilon: EPSILON_SHIFT }
    }
}

/// Float matrix restricted to one class, in column lists with local indices.
struct ClassMatrix {
    columns: Vec<Vec<(usize, f64)>>,
}

fn restrict(cols: &[Vec<(usize, f64)>], scc: &SccDecomposition, class: usize) -> ClassMatrix {
    let members = &scc.classes[class];
    let mut local = std::collections::HashMap::with_capacity(members.len());
    for (i, &v) in members.iter().enumerate() {
        local.insert(v, i);
    }
    let columns = members
        .iter()
        .map(|&j| cols[j].iter().filter_map(|(i, w)| local.get(i).map(|&li| (li, *w))).collect())
        .collect();
    ClassMatrix { columns }
}

/// Spectral radius of an irreducible class via shifted power iteration, stopped on the
/// Collatz–Wielandt bracket `max(Ax/x) − min(Ax/x) ≤ tol·max(Ax/x)`.
fn class_radius(m: &ClassMatrix, opts: &PowerOptions) -> Result<f64> {
    let n = m.columns.len();
    if n == 1 {
        return Ok(m.columns[0].iter().map(|(_, w)| *w).sum());
    }
    let eps = opts.epsilon;
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut best = f64::INFINITY;
    let mut since_best = 0usize;
    for _ in 0..opts.max_iter {
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = eps * xi;
        }
        for (j, col) in m.columns.iter().enumerate() {
            let xj = x[j];
            for &(i, w) in col {
                y[i] += w * xj;
            }
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut top = 0.0f64;
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
            top = top.max(*yi);
        }
        let gap = hi - lo;
        if gap <= opts.tol * hi {
            return Ok(((lo + hi) / 2.0 - eps).max(0.0));
        }
        if gap < best * 0.999 {
            best = gap;
            since_best = 0;
        } else {
            since_best += 1;
            // The float iteration has reached its fixed point; the bracket is roundoff-limited.
            if since_best > STALL_ITERATIONS && best <= STALL_FACTOR * opts.tol * hi {
                return Ok(((lo + hi) / 2.0 - eps).max(0.0));
            }
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (yi / top).max(f64::MIN_POSITIVE);
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_iter })
}

/// PF value of every class; acyclic singletons get 0.
pub fn class_pf_values(
    cols: &[Vec<(usize, f64)>],
    scc: &SccDecomposition,
    opts: &PowerOptions,
) -> Result<Vec<f64>> {
    let adj: Vec<Vec<usize>> = cols.iter().map(|c| c.iter().map(|(i, _)| *i).collect()).collect();
    (0..scc.len())
        .map(|c| {
            if !class_has_cycle(&adj, &scc.classes[c]) {
                Ok(0.0)
            } else {
                class_radius(&restrict(cols, scc, c), opts)
            }
        })
        .collect()
}

/// Spectral radius of a nonnegative matrix: the largest class PF value.
pub fn pf_eigenvalue(m: &SparseMatrix, tol: f64) -> Result<f64> {
    pf_eigenvalue_with(m, &PowerOptions { tol, ..PowerOptions::default() })
}

pub fn pf_eigenvalue_with(m: &SparseMatrix, opts: &PowerOptions) -> Result<f64> {
    let cols = m.to_f64_columns();
    let adj: Vec<Vec<usize>> = cols.iter().map(|c| c.iter().map(|(i, _)| *i).collect()).collect();
    let scc = scc_of_adjacency(&adj);
    Ok(class_pf_values(&cols, &scc, opts)?.into_iter().fold(0.0, f64::max))
}

/// Dense eigenvalues of one class block. The full spectrum is the union over classes.
pub fn class_spectrum(cols: &[Vec<(usize, f64)>], scc: &SccDecomposition, class: usize) -> Vec<Complex64> {
    let cm = restrict(cols, scc, class);
    let n = cm.columns.len();
    if n == 1 {
        return vec![Complex64::new(cm.columns[0].iter().map(|(_, w)| *w).sum(), 0.0)];
    }
    let mut d = DMatrix::<f64>::zeros(n, n);
    for (j, col) in cm.columns.iter().enumerate() {
        for &(i, w) in col {
            d[(i, j)] += w;
        }
    }
    d.complex_eigenvalues().iter().copied().collect()
}
