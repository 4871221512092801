use serde::Serialize;

use super::power::{pf_eigenvalue_with, PowerOptions};
use crate::algebra::{GrowthProblem, Strategy};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FiltrationOptions {
    /// Increments below this count as converged.
    pub tol: f64,
    /// Number of trailing increments inspected by the verdict.
    pub window: usize,
    /// λ_k above this is reported as divergence.
    pub divergence_threshold: f64,
    /// Tolerance of each PF eigenvalue.
    pub pf_tol: f64,
}

impl Default for FiltrationOptions {
    fn default() -> Self {
        FiltrationOptions { tol: 1e-6, window: 5, divergence_threshold: 50.0, pf_tol: 1e-12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Verdict {
    Finite(f64),
    Infinite,
    Undecided,
}

/// PF eigenvalues along a filtration, with a verdict on the limit.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationEstimate {
    /// `(step, λ_step)`; for the naive strategy the step is the cutoff depth.
    pub sequence: Vec<(usize, f64)>,
    pub verdict: Verdict,
    pub tol: f64,
    pub window: usize,
    pub divergence_threshold: f64,
    /// Vertex count of each cutoff.
    pub sizes: Vec<usize>,
    pub notes: Vec<String>,
}

/// PF eigenvalues of the cutoffs at the scheduled steps.
///
/// For [`Strategy::Explicit`] the schedule lists positions in the vertex-set schedule;
/// an empty schedule means every position.
pub fn pfdim_filtration(
    gp: &GrowthProblem,
    strategy: Strategy,
    schedule: &[usize],
    opts: &FiltrationOptions,
) -> Result<FiltrationEstimate> {
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("filtration schedule must be strictly increasing".into()));
    }
    let steps: Vec<usize> = match (&strategy, schedule.is_empty()) {
        (Strategy::Explicit(sets), true) => (0..sets.len()).collect(),
        _ => schedule.to_vec(),
    };
    let filtration = gp.filtration(strategy)?;
    let power = PowerOptions { tol: opts.pf_tol, ..PowerOptions::default() };
    let mut sequence = Vec::with_capacity(steps.len());
    let mut sizes = Vec::with_capacity(steps.len());
    let mut notes = Vec::new();
    let mut capped = false;
    for &k in &steps {
        let t = match filtration.at(k) {
            None => break,
            Some(Err(Error::CapExceeded { cap })) => {
                notes.push(format!("vertex cap {cap} reached before step {k}; partial data"));
                capped = true;
                break;
            }
            Some(Err(e)) => return Err(e),
            Some(Ok(t)) => t,
        };
        let lambda = pf_eigenvalue_with(&t.matrix, &power)?;
        sizes.push(t.len());
        sequence.push((k, lambda));
        if lambda > opts.divergence_threshold {
            notes.push(format!("lambda_{k} = {lambda} exceeds divergence threshold {}", opts.divergence_threshold));
            break;
        }
    }
    let verdict = decide(&sequence, opts, capped, &mut notes);
    Ok(FiltrationEstimate {
        sequence,
        verdict,
        tol: opts.tol,
        window: opts.window,
        divergence_threshold: opts.divergence_threshold,
        sizes,
        notes,
    })
}

fn decide(seq: &[(usize, f64)], opts: &FiltrationOptions, capped: bool, notes: &mut Vec<String>) -> Verdict {
    let Some(&(last_k, last)) = seq.last() else {
        return Verdict::Undecided;
    };
    if last > opts.divergence_threshold {
        return Verdict::Infinite;
    }
    if seq.len() <= opts.window {
        notes.push(format!("only {} cutoffs, window is {}", seq.len(), opts.window));
        return Verdict::Undecided;
    }
    let increments: Vec<f64> = seq[seq.len() - opts.window - 1..].windows(2).map(|w| w[1].1 - w[0].1).collect();
    if !capped && increments.iter().all(|d| d.abs() < opts.tol) {
        return Verdict::Finite(last);
    }
    let half = seq.iter().rev().find(|(k, _)| *k <= last_k / 2).map(|&(_, v)| v);
    if increments.iter().all(|&d| d >= opts.tol) {
        if let Some(h) = half {
            if last > 2.0 * h {
                notes.push(format!("lambda at step {last_k} exceeds twice the value at step {}", last_k / 2));
                return Verdict::Infinite;
            }
        }
    }
    Verdict::Undecided
}
