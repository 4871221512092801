//! Asymptotic models a(n) = (Σ_s κ_s ζ^{sn}) λ^n and their agreement with exact counts.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{GrowthProblem, Truncation, VertexKey};
use crate::error::{Error, Result};
use crate::series::bn_sequence;
use crate::spectral::{classify_classes, leading_eigendata, zeta_power, EigenData, SpectralSummary, DEFAULT_BASIC_TOL};
use crate::weight::{format_rational, rational_to_f64};

const REALNESS_BOUND: f64 = 1e-9;
/// Relative deviations below this are float noise of a(n) and are left out of the ratio fit.
const RESOLUTION: f64 = 1e-12;

/// Where a model's coefficients came from.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    /// Cutoff depths whose eigendata were computed.
    pub depths: Vec<usize>,
    /// κ_0 at each depth.
    pub kappa0_history: Vec<f64>,
    /// max_s |κ_s^{(k)} − κ_s^{(k')}| between successive depths.
    pub deltas: Vec<f64>,
    /// Subdominant modulus of the last cutoff.
    pub second_modulus: Option<f64>,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticModel {
    pub lambda: f64,
    pub h: usize,
    #[serde(serialize_with = "serialize_complex")]
    pub kappa: Vec<Complex64>,
    pub provenance: Provenance,
}

fn serialize_complex<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl AsymptoticModel {
    /// Cutoff model a_k(n) from the first-column sums of the spectral projectors: κ_s = w_s[unit]·Σ v_s.
    pub fn from_truncation(t: &Truncation, h: usize) -> Result<Self> {
        let summary = classify_classes(t, DEFAULT_BASIC_TOL)?;
        let data = leading_eigendata(t, h)?;
        Ok(Self::from_eigendata(&data, summary.second_modulus, t.depth, "cutoff first-column sum"))
    }

    /// Model of the entry m_{unit,unit}^{(n)}: κ_s = w_s[unit]·v_s[unit].
    pub fn entry_model(t: &Truncation, h: usize) -> Result<Self> {
        let summary = classify_classes(t, DEFAULT_BASIC_TOL)?;
        let data = leading_eigendata(t, h)?;
        let kappa = data.pairs.iter().map(|p| p.left[0] * p.right[0]).collect::<Vec<_>>();
        Ok(AsymptoticModel {
            lambda: data.lambda,
            h,
            provenance: Provenance {
                depths: vec![t.depth],
                kappa0_history: vec![kappa[0].re],
                deltas: Vec::new(),
                second_modulus: summary.second_modulus,
                source: "cutoff unit entry".into(),
            },
            kappa,
        })
    }

    fn from_eigendata(data: &EigenData, second: Option<f64>, depth: usize, source: &str) -> Self {
        let kappa: Vec<Complex64> = data.pairs.iter().map(|p| p.kappa()).collect();
        AsymptoticModel {
            lambda: data.lambda,
            h: data.period,
            provenance: Provenance {
                depths: vec![depth],
                kappa0_history: vec![kappa[0].re],
                deltas: Vec::new(),
                second_modulus: second,
                source: source.into(),
            },
            kappa,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Largest change of any κ_s between two coefficient vectors.
fn kappa_delta(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn unique_final_class(t: &Truncation, s: &SpectralSummary) -> Option<Vec<VertexKey>> {
    let fbcs: Vec<usize> = s.final_basic_classes().into_iter().filter(|&c| s.class_pf[c] > 0.0).collect();
    let basics = s.basic_classes().into_iter().filter(|&c| s.class_pf[c] > 0.0).count();
    if fbcs.len() != 1 || basics != 1 {
        return None;
    }
    let mut keys: Vec<VertexKey> = s.scc.classes[fbcs[0]].iter().map(|&v| t.vertices[v].clone()).collect();
    keys.sort();
    Some(keys)
}

/// Fits κ_s along the cutoff schedule, requiring one basic class that is final and the same
/// at every depth, and successive κ changes below `tol` at the end of the schedule.
///
/// Finite problems use the single cutoff that contains every vertex.
pub fn fit_asymptotic_model(gp: &GrowthProblem, schedule: &[usize], tol: f64) -> Result<AsymptoticModel> {
    if let Some(size) = gp.rule().finite_size() {
        let depth = gp.saturation_depth(size)?.unwrap_or(size);
        let t = gp.expand_to_depth(depth)?;
        let s = classify_classes(&t, DEFAULT_BASIC_TOL)?;
        if unique_final_class(&t, &s).is_none() {
            return Err(Error::NoFinalBasicClass("finite graph without a unique basic class".into()));
        }
        let data = leading_eigendata(&t, s.period)?;
        let mut m = AsymptoticModel::from_eigendata(&data, s.second_modulus, depth, "exhaustive cutoff");
        m.provenance.source = "finite problem, exact-depth cutoff".into();
        return Ok(m);
    }
    if schedule.len() < 2 {
        return Err(Error::InvalidParameter("an infinite problem needs at least two cutoff depths".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("cutoff schedule must be strictly increasing".into()));
    }
    let mut fbc: Option<Vec<VertexKey>> = None;
    let mut prov = Provenance { source: "cutoff schedule".into(), ..Provenance::default() };
    let mut last: Option<(Vec<Complex64>, f64, usize)> = None;
    for &k in schedule {
        let t = gp.expand_to_depth(k)?;
        let s = classify_classes(&t, DEFAULT_BASIC_TOL)?;
        let class = unique_final_class(&t, &s).ok_or_else(|| {
            Error::NoFinalBasicClass(format!("cutoff at depth {k} has no unique final basic class"))
        })?;
        match &fbc {
            Some(prev) if *prev != class => {
                return Err(Error::NoFinalBasicClass(format!(
                    "final basic class changes between depths (size {} to {}); the problem is not positively recurrent",
                    prev.len(),
                    class.len()
                )))
            }
            _ => fbc = Some(class),
        }
        let data = leading_eigendata(&t, s.period)?;
        let kappa: Vec<Complex64> = data.pairs.iter().map(|p| p.kappa()).collect();
        if let Some((prev, _, h)) = &last {
            if *h != s.period {
                return Err(Error::NoFinalBasicClass("period of the final basic class changes with depth".into()));
            }
            prov.deltas.push(kappa_delta(prev, &kappa));
        }
        prov.depths.push(k);
        prov.kappa0_history.push(kappa[0].re);
        prov.second_modulus = s.second_modulus;
        last = Some((kappa, data.lambda, s.period));
    }
    let (kappa, lambda, h) = last.expect("schedule is nonempty");
    let final_delta = *prov.deltas.last().expect("at least two depths");
    if !(final_delta < tol) {
        return Err(Error::NotStabilized(final_delta));
    }
    Ok(AsymptoticModel { lambda, h, kappa, provenance: prov })
}

/// Real value of a(n); fails if the imaginary part exceeds 1e-9 relative to the size of the terms.
pub fn evaluate_model(m: &AsymptoticModel, n: usize) -> Result<f64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (s, k) in m.kappa.iter().enumerate() {
        let term = k * zeta_power(s * n, m.h);
        scale += term.norm();
        sum += term;
    }
    let pow = m.lambda.powi(n as i32);
    let value = sum.re * pow;
    let residue = sum.im.abs() * pow;
    let reference = value.abs().max(scale * pow);
    if residue > REALNESS_BOUND * reference {
        return Err(Error::ImaginaryResidue { residue, value });
    }
    Ok(value)
}

#[derive(Clone, Debug, Serialize)]
pub struct VarianceRow {
    pub n: usize,
    pub b: String,
    pub a: f64,
    pub abs_diff: f64,
    pub ratio: f64,
}

/// Exact counts against the model, with the fitted geometric rate of |b_n/a_n − 1|.
#[derive(Clone, Debug, Serialize)]
pub struct VarianceReport {
    pub rows: Vec<VarianceRow>,
    /// exp of the least-squares slope of ln|b_n/a_n − 1| over the n where the deviation exceeds 1e-12.
    pub fitted_ratio: Option<f64>,
    /// |λ^sec/λ|.
    pub reference_ratio: Option<f64>,
    /// Least-squares slope of ln|b_n − a_n| over the second half of the usable n.
    pub difference_log_slope: Option<f64>,
}

impl VarianceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,b,a,abs_diff,ratio\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{:e},{:e},{:e}\n", r.n, r.b, r.a, r.abs_diff, r.ratio));
        }
        out
    }
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn variance_report(gp: &GrowthProblem, m: &AsymptoticModel, n_max: usize) -> Result<VarianceReport> {
    let b = bn_sequence(gp, n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut rel_points = Vec::new();
    let mut diff_points = Vec::new();
    for (n, bn) in b.indexed() {
        let a = evaluate_model(m, n)?;
        let bf = rational_to_f64(bn);
        let abs_diff = (bf - a).abs();
        let ratio = bf / a;
        if a != 0.0 && ratio.is_finite() && (ratio - 1.0).abs() > RESOLUTION {
            rel_points.push((n as f64, (ratio - 1.0).abs().ln()));
        }
        if abs_diff > 0.0 && abs_diff.is_finite() {
            diff_points.push((n as f64, abs_diff.ln()));
        }
        rows.push(VarianceRow { n, b: format_rational(bn), a, abs_diff, ratio });
    }
    let fitted_ratio = slope(&rel_points).map(f64::exp);
    let reference_ratio = m.provenance.second_modulus.map(|s| s / m.lambda);
    let difference_log_slope = slope(&diff_points[diff_points.len() / 2..]);
    Ok(VarianceReport { rows, fitted_ratio, reference_ratio, difference_log_slope })
}
