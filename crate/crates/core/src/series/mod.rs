//! Exact summand counts, matrix-power entries, first returns and Green partial sums.

mod engine;
mod recurrence;

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Vector3};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{GrowthProblem, VertexKey};
use crate::error::{Error, Result};
use crate::weight::{format_rational, log2_big, rational_to_f64};

pub(crate) use engine::ExactVector;
pub use recurrence::{
    classify_recurrence, taboo_first_return, ClassificationReport, GrowthRate, RecurrenceThresholds,
    RecurrenceVerdict,
};

/// Exact terms `a(start), a(start+1), …`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Series {
    pub start: usize,
    #[serde(serialize_with = "serialize_terms")]
    pub terms: Vec<BigRational>,
}

fn serialize_terms<S: serde::Serializer>(terms: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(terms.iter().map(format_rational))
}

impl Series {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term with index `n`, if present.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        n.checked_sub(self.start).and_then(|i| self.terms.get(i))
    }

    pub fn indexed(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.terms.iter().enumerate().map(move |(i, t)| (self.start + i, t))
    }

    /// Integer terms; `None` if any term is fractional.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.terms.iter().map(|t| t.is_integer().then(|| t.to_integer())).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.terms.iter().map(rational_to_f64).collect()
    }

    /// CSV with columns n, value (exact), float.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value,float\n");
        for (n, t) in self.indexed() {
            out.push_str(&format!("{n},{},{:e}\n", format_rational(t), rational_to_f64(t)));
        }
        out
    }
}

fn vertex_id(gp: &GrowthProblem, key: &VertexKey) -> Result<usize> {
    gp.rule().check_key(key)?;
    gp.intern(key)
}

/// Exact b_0..b_N: total mass of M^n applied to the unit indicator.
pub fn bn_sequence(gp: &GrowthProblem, n_max: usize) -> Result<Series> {
    let mut v = ExactVector::indicator(gp, 0);
    let mut terms = Vec::with_capacity(n_max + 1);
    terms.push(v.total());
    for _ in 0..n_max {
        v.step()?;
        terms.push(v.total());
    }
    Ok(Series { start: 0, terms })
}

/// Exact m_ij^{(n)}, n = 0..N: the i-th entry of M^n applied to the indicator of j.
pub fn power_entry_series(gp: &GrowthProblem, i: &VertexKey, j: &VertexKey, n_max: usize) -> Result<Series> {
    let jd = vertex_id(gp, j)?;
    let id = vertex_id(gp, i)?;
    let mut v = ExactVector::indicator(gp, jd);
    let mut terms = Vec::with_capacity(n_max + 1);
    terms.push(v.entry(id));
    for _ in 0..n_max {
        v.step()?;
        terms.push(v.entry(id));
    }
    Ok(Series { start: 0, terms })
}

/// Weighted endpoint counts of length-n walks from the unit; the total is b_n.
pub fn endpoint_distribution(gp: &GrowthProblem, n: usize) -> Result<BTreeMap<VertexKey, BigRational>> {
    let mut v = ExactVector::indicator(gp, 0);
    for _ in 0..n {
        v.step()?;
    }
    let ids: Vec<usize> = v.support().to_vec();
    let keys = gp.keys_of(&ids);
    Ok(ids.iter().zip(keys).map(|(&id, k)| (k, v.entry(id))).collect())
}

/// First-return weights l_ii(1..=N) by inverting m^{(n)} = Σ_{k=1}^{n} l(k)·m^{(n−k)}.
pub fn first_return_series(gp: &GrowthProblem, i: &VertexKey, n_max: usize) -> Result<Series> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("first-return series needs N >= 1".into()));
    }
    let m = power_entry_series(gp, i, i, n_max)?.terms;
    Ok(Series { start: 1, terms: invert_returns(&m) })
}

/// l(1..=N) from m(0..=N) with m(0) = 1.
pub(crate) fn invert_returns(m: &[BigRational]) -> Vec<BigRational> {
    let n_max = m.len() - 1;
    let mut l: Vec<BigRational> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = m[n].clone();
        for k in 1..n {
            let lk = &l[k - 1];
            if lk.is_zero() || m[n - k].is_zero() {
                continue;
            }
            acc -= lk * &m[n - k];
        }
        l.push(acc);
    }
    l
}

/// Σ_{n=0}^{N} m_ii^{(n)} z^n, exactly.
pub fn green_partial(gp: &GrowthProblem, i: &VertexKey, z: &BigRational, n_max: usize) -> Result<BigRational> {
    if z.is_negative() {
        return Err(Error::InvalidParameter("z must be nonnegative".into()));
    }
    let m = power_entry_series(gp, i, i, n_max)?.terms;
    Ok(evaluate_polynomial(&m, z))
}

/// Σ a_n z^n with one final reduction: accumulate over the denominator q^N.
fn evaluate_polynomial(coeffs: &[BigRational], z: &BigRational) -> BigRational {
    let common = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let (p, q) = (z.numer(), z.denom());
    let mut acc = BigInt::zero();
    let mut p_pow = BigInt::one();
    let mut q_pows = Vec::with_capacity(coeffs.len());
    let mut qp = BigInt::one();
    for _ in 0..coeffs.len() {
        q_pows.push(qp.clone());
        qp *= q;
    }
    let n_max = coeffs.len().saturating_sub(1);
    for (n, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let scaled = c.numer() * (&common / c.denom());
            acc += scaled * &p_pow * &q_pows[n_max - n];
        }
        p_pow *= p;
    }
    BigRational::new(acc, common * &q_pows[n_max])
}

/// Vere–Jones estimate from the return weights at a vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VjEstimate {
    /// Gcd of the return times seen up to N.
    pub period: usize,
    /// `(n, (m_ii^{(n)})^{1/n})` for the nonzero multiples n of the period.
    pub sequence: Vec<(usize, f64)>,
    /// exp(c) from the least-squares fit ln m(n) ≈ a + b·ln n + c·n over the second half.
    pub estimate: f64,
}

pub fn vj_pfdim_estimate(gp: &GrowthProblem, i: &VertexKey, n_max: usize) -> Result<VjEstimate> {
    let m = power_entry_series(gp, i, i, n_max)?.terms;
    let mut period = 0usize;
    for (n, t) in m.iter().enumerate().skip(1) {
        if !t.is_zero() {
            period = period.gcd(&n);
        }
    }
    if period == 0 {
        return Err(Error::ZeroSeries);
    }
    let points: Vec<(usize, f64)> = m
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(n, t)| n % period == 0 && !t.is_zero())
        .map(|(n, t)| (n, ln_rational(t)))
        .collect();
    let sequence: Vec<(usize, f64)> = points.iter().map(|&(n, l)| (n, (l / n as f64).exp())).collect();
    let tail = &points[points.len() / 2..];
    let estimate = if tail.len() >= 4 {
        fit_log_corrected(tail).unwrap_or_else(|| sequence.last().unwrap().1)
    } else {
        sequence.last().unwrap().1
    };
    Ok(VjEstimate { period, sequence, estimate })
}

fn ln_rational(r: &BigRational) -> f64 {
    (log2_big(r.numer()) - log2_big(r.denom())) * std::f64::consts::LN_2
}

/// Least squares for ln m = a + b ln n + c n; returns exp(c).
fn fit_log_corrected(points: &[(usize, f64)]) -> Option<f64> {
    let scale = points.last()?.0 as f64;
    let mut ata = Matrix3::<f64>::zeros();
    let mut aty = Vector3::<f64>::zeros();
    for &(n, y) in points {
        let x = n as f64;
        let row = Vector3::new(1.0, x.ln(), x / scale);
        ata += row * row.transpose();
        aty += row * y;
    }
    let sol = ata.lu().solve(&aty)?;
    let c = sol[2] / scale;
    c.is_finite().then(|| c.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::big;
    use crate::families::{build_family, load_explicit_str, FamilySpec};

    fn ints(s: &Series) -> Vec<i64> {
        s.integers().unwrap().iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn fibonacci_counts() {
        let gp = build_family(&FamilySpec::Fibonacci).unwrap();
        assert_eq!(ints(&bn_sequence(&gp, 6).unwrap()), vec![1, 1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn jordan_half_is_rational() {
        let gp = build_family(&FamilySpec::Jordan { alpha: "1/2".into() }).unwrap();
        let b = bn_sequence(&gp, 4).unwrap();
        assert_eq!(b.terms[4], BigRational::new(81.into(), 16.into()));
    }

    #[test]
    fn sl2_entries() {
        let gp = build_family(&FamilySpec::Sl2 { lambda: 1 }).unwrap();
        let z = VertexKey::scalar(0);
        assert_eq!(ints(&power_entry_series(&gp, &z, &z, 8).unwrap()), vec![1, 0, 1, 0, 2, 0, 5, 0, 14]);
        assert_eq!(ints(&bn_sequence(&gp, 6).unwrap()), vec![1, 1, 2, 3, 6, 10, 20]);
        let l = first_return_series(&gp, &z, 8).unwrap();
        assert_eq!(ints(&l), vec![0, 1, 0, 1, 0, 2, 0, 5]);
    }

    #[test]
    fn endpoint_totals() {
        let gp = build_family(&FamilySpec::LineZ).unwrap();
        let d = endpoint_distribution(&gp, 2).unwrap();
        let got: Vec<(i64, BigRational)> = d.into_iter().map(|(k, v)| (k.0[0], v)).collect();
        assert_eq!(got, vec![(-2, big(1)), (0, big(2)), (2, big(1))]);
    }

    #[test]
    fn green_partial_small() {
        let gp = build_family(&FamilySpec::Sl2 { lambda: 1 }).unwrap();
        let g = green_partial(&gp, &VertexKey::scalar(0), &BigRational::new(1.into(), 2.into()), 4).unwrap();
        assert_eq!(g, BigRational::new(11.into(), 8.into()));
    }

    #[test]
    fn single_loop() {
        let gp = load_explicit_str("loop", "[[3]]", None, Default::default()).unwrap();
        let z = VertexKey::scalar(0);
        let l = first_return_series(&gp, &z, 5).unwrap();
        assert_eq!(ints(&l), vec![3, 0, 0, 0, 0]);
        let vj = vj_pfdim_estimate(&gp, &z, 20).unwrap();
        assert_eq!(vj.period, 1);
        assert!(vj.sequence.iter().all(|&(_, r)| (r - 3.0).abs() < 1e-12));
        assert!((vj.estimate - 3.0).abs() < 1e-9);
    }

    #[test]
    fn vj_of_acyclic_vertex_is_an_error() {
        let gp = build_family(&FamilySpec::Gl2Vector).unwrap();
        assert!(matches!(vj_pfdim_estimate(&gp, &VertexKey::pair(0, 0), 10), Err(Error::ZeroSeries)));
    }

    #[test]
    fn csv_columns() {
        let s = Series { start: 0, terms: vec![big(1), BigRational::new(1.into(), 2.into())] };
        assert_eq!(s.to_csv(), "n,value,float\n0,1,1e0\n1,1/2,5e-1\n");
    }
}
