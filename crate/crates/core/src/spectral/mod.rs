//! Finite-matrix eigenanalysis of cutoffs.
//!
//! Cutoffs are block triangular over their strongly connected classes, so every spectral
//! quantity is assembled class by class.

mod eigen;
mod filtration;
mod power;
mod scc;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{GrowthProblem, Truncation, VertexKey};
use crate::error::{Error, Result};

pub use eigen::{leading_eigendata, EigenData, EigenPair, DENSE_CAP};
pub(crate) use eigen::zeta_power;
pub use filtration::{pfdim_filtration, FiltrationEstimate, FiltrationOptions, Verdict};
pub use power::{
    class_pf_values, class_spectrum, pf_eigenvalue, pf_eigenvalue_with, PowerOptions, DEFAULT_MAX_ITER,
    DEFAULT_PF_TOL, EPSILON_SHIFT,
};
pub use scc::{class_has_cycle, class_period, period, scc_decomposition, scc_of_adjacency, SccDecomposition};

/// Relative slack under which two class PF values count as equal.
pub const DEFAULT_BASIC_TOL: f64 = 1e-9;

/// Class structure and leading spectral data of a cutoff.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub lambda: f64,
    /// Largest modulus after removing the `period` eigenvalues on the circle of radius λ;
    /// absent when a class exceeds the dense cap.
    pub second_modulus: Option<f64>,
    /// Period of the first final basic class, 1 when it has none.
    pub period: usize,
    pub scc: SccDecomposition,
    pub class_pf: Vec<f64>,
    pub class_period: Vec<Option<usize>>,
    pub basic: Vec<bool>,
    pub final_basic: Vec<bool>,
}

impl SpectralSummary {
    pub fn basic_classes(&self) -> Vec<usize> {
        (0..self.basic.len()).filter(|&c| self.basic[c]).collect()
    }

    pub fn final_basic_classes(&self) -> Vec<usize> {
        (0..self.final_basic.len()).filter(|&c| self.final_basic[c]).collect()
    }
}

/// Per-class PF values, basic and final-basic flags, period and subdominant modulus.
pub fn classify_classes(t: &Truncation, tol: f64) -> Result<SpectralSummary> {
    classify_with(t, tol, &PowerOptions::default())
}

pub fn classify_with(t: &Truncation, tol: f64, opts: &PowerOptions) -> Result<SpectralSummary> {
    let cols = t.matrix.to_f64_columns();
    let adj = t.adjacency();
    let scc = scc_of_adjacency(&adj);
    let class_pf = class_pf_values(&cols, &scc, opts)?;
    let lambda = class_pf.iter().copied().fold(0.0, f64::max);
    let basic: Vec<bool> = class_pf.iter().map(|&p| lambda - p <= tol * lambda).collect();

    let mut reaches_basic = vec![false; scc.len()];
    for &c in scc.topological_order().iter().rev() {
        reaches_basic[c] = scc.dag[c].iter().any(|&d| basic[d] || reaches_basic[d]);
    }
    let final_basic: Vec<bool> = (0..scc.len()).map(|c| basic[c] && !reaches_basic[c]).collect();
    let class_period: Vec<Option<usize>> =
        (0..scc.len()).map(|c| class_period(&adj, &scc, c).ok()).collect();
    let period = (0..scc.len())
        .find(|&c| final_basic[c])
        .and_then(|c| class_period[c])
        .unwrap_or(1);
    let second_modulus = match subdominant_from_classes(&cols, &scc, lambda, period) {
        Ok(v) => Some(v),
        Err(Error::SizeOverCap { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SpectralSummary { lambda, second_modulus, period, scc, class_pf, class_period, basic, final_basic })
}

fn subdominant_from_classes(
    cols: &[Vec<(usize, f64)>],
    scc: &SccDecomposition,
    lambda: f64,
    h: usize,
) -> Result<f64> {
    if let Some(big) = scc.classes.iter().map(Vec::len).max() {
        if big > DENSE_CAP {
            return Err(Error::SizeOverCap { size: big, cap: DENSE_CAP });
        }
    }
    let mut spectrum: Vec<Complex64> = (0..scc.len()).flat_map(|c| class_spectrum(cols, scc, c)).collect();
    if lambda > 0.0 {
        for s in 0..h {
            let target = Complex64::from_polar(lambda, 2.0 * std::f64::consts::PI * s as f64 / h as f64);
            if let Some((idx, _)) = spectrum
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
            {
                spectrum.swap_remove(idx);
            }
        }
    }
    Ok(spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max).min(lambda))
}

/// Largest eigenvalue modulus of the cutoff after removing the h eigenvalues λζ^s.
pub fn subdominant_modulus(t: &Truncation) -> Result<f64> {
    let summary = classify_classes(t, DEFAULT_BASIC_TOL)?;
    summary
        .second_modulus
        .ok_or(Error::SizeOverCap { size: t.len(), cap: DENSE_CAP })
}

/// Final basic classes seen at each depth and the class common to all of them, if any.
#[derive(Clone, Debug, Serialize)]
pub struct FbcStability {
    pub depths: Vec<usize>,
    /// Vertex keys of every final basic class at each depth.
    pub per_depth: Vec<Vec<Vec<VertexKey>>>,
    /// PF value of the cutoff at each depth.
    pub lambdas: Vec<f64>,
    /// The final basic class, when it is unique at every depth and identical across depths.
    pub stable: Option<Vec<VertexKey>>,
}

/// Tracks the final basic classes along naive cutoffs.
pub fn final_basic_stability(gp: &GrowthProblem, depths: &[usize], tol: f64) -> Result<FbcStability> {
    let mut per_depth = Vec::with_capacity(depths.len());
    let mut lambdas = Vec::with_capacity(depths.len());
    for &k in depths {
        let t = gp.expand_to_depth(k)?;
        let s = classify_classes(&t, tol)?;
        let mut fbcs: Vec<Vec<VertexKey>> = s
            .final_basic_classes()
            .into_iter()
            .filter(|&c| s.class_pf[c] > 0.0)
            .map(|c| {
                let mut keys: Vec<VertexKey> = s.scc.classes[c].iter().map(|&v| t.vertices[v].clone()).collect();
                keys.sort();
                keys
            })
            .collect();
        fbcs.sort();
        per_depth.push(fbcs);
        lambdas.push(s.lambda);
    }
    let stable = match per_depth.first() {
        Some(first) if first.len() == 1 && per_depth.iter().all(|f| f == first) => Some(first[0].clone()),
        _ => None,
    };
    Ok(FbcStability { depths: depths.to_vec(), per_depth, lambdas, stable })
}
