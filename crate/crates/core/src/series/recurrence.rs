use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{vertex_id, ExactVector, Series};
use crate::algebra::{GrowthProblem, VertexKey};
use crate::error::{Error, Result};
use crate::spectral::{final_basic_stability, DEFAULT_BASIC_TOL};
use crate::weight::{format_rational, log2_big, rational_to_f64};

/// Growth rate λ used to weight return series.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum GrowthRate {
    #[serde(serialize_with = "ser_rational")]
    Exact(BigRational),
    Approx(f64),
    Infinite,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl GrowthRate {
    pub fn to_f64(&self) -> f64 {
        match self {
            GrowthRate::Exact(r) => rational_to_f64(r),
            GrowthRate::Approx(x) => *x,
            GrowthRate::Infinite => f64::INFINITY,
        }
    }

    fn log2(&self) -> f64 {
        match self {
            GrowthRate::Exact(r) => log2_big(r.numer()) - log2_big(r.denom()),
            other => other.to_f64().log2(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RecurrenceThresholds {
    /// F_N within δ of 1 means recurrent; F_N stabilized below 1 − δ means transient.
    pub delta: f64,
    /// μ_N above this without stabilizing means null-recurrent.
    pub mu_threshold: f64,
    /// Log-log growth exponent of μ_N over the second half of the terms that also counts as divergence.
    pub mu_growth_exponent: f64,
    /// Depths at which the final basic class is tracked for the finite-class shortcut.
    pub fbc_depths: [usize; 3],
}

impl Default for RecurrenceThresholds {
    fn default() -> Self {
        RecurrenceThresholds { delta: 0.02, mu_threshold: 1e3, mu_growth_exponent: 0.25, fbc_depths: [8, 16, 32] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceVerdict {
    PositiveRecurrent,
    NullRecurrent,
    Transient,
    Superexponential,
    Unknown,
}

/// Verdict and the partial sums it rests on.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub verdict: RecurrenceVerdict,
    pub lambda: f64,
    /// Label of the vertex whose returns were counted.
    pub vertex: String,
    /// Number of series terms computed.
    pub terms: usize,
    /// G_N = Σ_{n≤N} m_ii^{(n)} λ^{-n}.
    pub green_partial: f64,
    /// F_N = Σ_{n≤N} l_ii(n) λ^{-n}.
    pub first_return_partial: f64,
    /// F at three quarters of the terms.
    pub first_return_earlier: f64,
    /// μ_N = λ^{-1} Σ_{n≤N} n·l_ii(n) λ^{-(n-1)}.
    pub mean_return_partial: f64,
    /// μ at three quarters of the terms.
    pub mean_return_earlier: f64,
    /// ln(μ_N/μ_{N/2}) / ln 2.
    pub mean_return_growth_exponent: f64,
    /// Heuristic float error of F_N.
    pub float_error_bound: f64,
    /// Vertex labels of the final basic class when it is finite and stable across depths.
    pub final_basic_class: Option<Vec<String>>,
    pub notes: Vec<String>,
}

/// Exact first-return weights l_ii(1..=N) by iterating walks that are killed on reaching i.
///
/// Fails with the cap error if the walks reach more vertices than the cap allows.
pub fn taboo_first_return(gp: &GrowthProblem, i: &VertexKey, n_max: usize) -> Result<Series> {
    let (terms, _) = taboo_terms(gp, i, n_max, false)?;
    Ok(Series { start: 1, terms })
}

fn taboo_terms(gp: &GrowthProblem, i: &VertexKey, n_max: usize, tolerate_cap: bool) -> Result<(Vec<BigRational>, bool)> {
    let id = vertex_id(gp, i)?;
    let mut v = ExactVector::indicator(gp, id);
    let mut terms = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        match v.step() {
            Ok(()) => {}
            Err(Error::CapExceeded { .. }) if tolerate_cap => return Ok((terms, true)),
            Err(e) => return Err(e),
        }
        terms.push(v.take(id));
        if v.is_zero() {
            terms.resize(n_max, BigRational::zero());
            break;
        }
    }
    Ok((terms, false))
}

/// Recurrence verdict of the walk weighted by λ^{-1}, at the unit or, when one is detected, at a
/// vertex of the finite final basic class.
pub fn classify_recurrence(
    gp: &GrowthProblem,
    rate: &GrowthRate,
    n_max: usize,
    thresholds: &RecurrenceThresholds,
) -> Result<ClassificationReport> {
    let lambda = rate.to_f64();
    if !(lambda > 0.0) {
        let shown = match rate {
            GrowthRate::Exact(r) => format_rational(r),
            other => other.to_f64().to_string(),
        };
        return Err(Error::NonPositiveRate(shown));
    }
    if n_max < 4 {
        return Err(Error::InvalidParameter("classification needs N >= 4".into()));
    }
    let mut notes = Vec::new();
    if matches!(rate, GrowthRate::Infinite) {
        notes.push("growth rate is infinite: summand counts outgrow every exponential".into());
        return Ok(empty_report(gp, RecurrenceVerdict::Superexponential, lambda, notes));
    }

    let mut vertex = gp.unit();
    let mut fbc_labels = None;
    let mut finite_fbc = gp.is_finite();
    if let Some(size) = gp.rule().finite_size() {
        notes.push("finite problem: positive recurrence is exact".into());
        let depth = gp.saturation_depth(size)?.unwrap_or(size);
        let t = gp.expand_to_depth(depth)?;
        let s = crate::spectral::classify_classes(&t, DEFAULT_BASIC_TOL)?;
        if let Some(c) = s.final_basic_classes().into_iter().find(|&c| s.class_pf[c] > 0.0) {
            let mut class: Vec<VertexKey> = s.scc.classes[c].iter().map(|&v| t.vertices[v].clone()).collect();
            class.sort();
            vertex = class[0].clone();
            fbc_labels = Some(class.iter().map(|k| gp.label(k)).collect());
        }
    } else {
        match final_basic_stability(gp, &thresholds.fbc_depths, DEFAULT_BASIC_TOL) {
            Ok(st) => {
                if let Some(class) = st.stable {
                    let last_lambda = *st.lambdas.last().unwrap();
                    if (last_lambda - lambda).abs() <= 1e-9 * lambda.max(1.0) {
                        notes.push(format!(
                            "final basic class of {} vertices is identical at depths {:?}: positive recurrence is exact",
                            class.len(),
                            st.depths
                        ));
                        vertex = class[0].clone();
                        fbc_labels = Some(class.iter().map(|k| gp.label(k)).collect());
                        finite_fbc = true;
                    } else {
                        notes.push(format!(
                            "stable final basic class has PF value {last_lambda}, not the supplied rate {lambda}"
                        ));
                    }
                }
            }
            Err(Error::CapExceeded { .. }) => notes.push("vertex cap reached while tracking final basic classes".into()),
            Err(e) => return Err(e),
        }
    }

    let (l, capped) = taboo_terms(gp, &vertex, n_max, true)?;
    if capped {
        notes.push(format!("vertex cap reached: only {} of {n_max} terms computed", l.len()));
    }
    let n = l.len();
    if n < 4 {
        notes.push("too few terms for a verdict".into());
        let mut r = empty_report(gp, RecurrenceVerdict::Unknown, lambda, notes);
        r.vertex = gp.label(&vertex);
        return Ok(r);
    }

    let log2_lambda = rate.log2();
    let f: Vec<f64> = l
        .iter()
        .enumerate()
        .map(|(k, t)| {
            if t.is_zero() {
                0.0
            } else {
                let l2 = log2_big(&t.numer().abs()) - log2_big(t.denom());
                (l2 - log2_lambda * (k + 1) as f64).exp2()
            }
        })
        .collect();
    let prefix = |upto: usize| -> (f64, f64) {
        let mut fs = 0.0;
        let mut mu = 0.0;
        for (k, x) in f[..upto].iter().enumerate() {
            fs += x;
            mu += (k + 1) as f64 * x;
        }
        (fs, mu)
    };
    let earlier = n - n / 4;
    let (f_n, mu_n) = prefix(n);
    let (f_e, mu_e) = prefix(earlier);
    let (_, mu_half) = prefix(n / 2);
    let growth = if mu_half > 0.0 && mu_n > 0.0 { (mu_n / mu_half).ln() / (n as f64 / (n / 2) as f64).ln() } else { 0.0 };

    // g(n) = Σ_{k=1}^{n} f(k) g(n−k), g(0) = 1.
    let mut g = vec![0.0f64; n + 1];
    g[0] = 1.0;
    for m in 1..=n {
        let mut s = 0.0;
        for k in 1..=m {
            if f[k - 1] != 0.0 {
                s += f[k - 1] * g[m - k];
            }
        }
        g[m] = s;
    }
    let green: f64 = g.iter().sum();
    let float_error_bound = f
        .iter()
        .enumerate()
        .map(|(k, x)| x * (4.0 + (k + 1) as f64 * log2_lambda.abs()) * f64::EPSILON)
        .sum();

    let d = thresholds.delta;
    let verdict = if finite_fbc {
        RecurrenceVerdict::PositiveRecurrent
    } else if (f_n - 1.0).abs() <= d {
        let mu_stable = (mu_n - mu_e).abs() < d / 10.0 * mu_n.abs().max(1.0);
        if mu_stable {
            RecurrenceVerdict::PositiveRecurrent
        } else if mu_n > thresholds.mu_threshold {
            RecurrenceVerdict::NullRecurrent
        } else if growth >= thresholds.mu_growth_exponent {
            notes.push(format!(
                "mu_N = {mu_n:.4} is below the threshold {} but grows like N^{growth:.3}; divergence extrapolated",
                thresholds.mu_threshold
            ));
            RecurrenceVerdict::NullRecurrent
        } else {
            notes.push("mean return time neither stabilized nor diverged".into());
            RecurrenceVerdict::Unknown
        }
    } else if f_n < 1.0 - d && (f_n - f_e).abs() < d / 10.0 {
        RecurrenceVerdict::Transient
    } else if f_n > 1.0 + d {
        notes.push("F_N exceeds 1: the supplied rate is below the growth rate of returns".into());
        RecurrenceVerdict::Unknown
    } else {
        notes.push("first-return sum has not stabilized".into());
        RecurrenceVerdict::Unknown
    };

    Ok(ClassificationReport {
        verdict,
        lambda,
        vertex: gp.label(&vertex),
        terms: n,
        green_partial: green,
        first_return_partial: f_n,
        first_return_earlier: f_e,
        mean_return_partial: mu_n,
        mean_return_earlier: mu_e,
        mean_return_growth_exponent: growth,
        float_error_bound,
        final_basic_class: fbc_labels,
        notes,
    })
}

fn empty_report(gp: &GrowthProblem, verdict: RecurrenceVerdict, lambda: f64, notes: Vec<String>) -> ClassificationReport {
    ClassificationReport {
        verdict,
        lambda,
        vertex: gp.label(&gp.unit()),
        terms: 0,
        green_partial: f64::NAN,
        first_return_partial: f64::NAN,
        first_return_earlier: f64::NAN,
        mean_return_partial: f64::NAN,
        mean_return_earlier: f64::NAN,
        mean_return_growth_exponent: f64::NAN,
        float_error_bound: 0.0,
        final_basic_class: None,
        notes,
    }
}
