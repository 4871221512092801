//! Weight-lattice families: SL2 highest weights, SL3 and GL2 vector representations, the Z line.

use crate::algebra::{normalize_edges, w, FusionRule, VertexKey};
use crate::error::{Error, Result};
use crate::weight::ScalarWeight;

/// Highest weights of the summands of L(λ) ⊗ L(μ): |λ−μ|, |λ−μ|+2, …, λ+μ.
pub fn sl2_clebsch_gordan(lambda: u64, mu: u64) -> Vec<u64> {
    let lo = lambda.abs_diff(mu);
    (0..=lambda.min(mu)).map(|t| lo + 2 * t).collect()
}

fn invalid(key: &VertexKey, family: &str) -> Error {
    Error::InvalidKey { key: key.to_string(), family: family.to_string() }
}

/// Tensoring with L(λ) on the highest weights ℤ≥0.
#[derive(Debug, Clone)]
pub struct Sl2 {
    pub lambda: u32,
}

impl Sl2 {
    pub fn new(lambda: u32) -> Self {
        Sl2 { lambda }
    }
}

impl FusionRule for Sl2 {
    fn name(&self) -> String {
        format!("sl2(lambda={})", self.lambda)
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [m] if *m >= 0 => Ok(()),
            _ => Err(invalid(key, "sl2")),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        sl2_clebsch_gordan(self.lambda as u64, key.0[0] as u64)
            .into_iter()
            .map(|nu| (VertexKey::scalar(nu as i64), w(1)))
            .collect()
    }

    fn degree_bound(&self, key: &VertexKey) -> usize {
        (self.lambda as i64).min(key.0[0]) as usize + 1
    }
}

/// Tensoring with the vector representation of SL3 on column-stripped partitions (a, b), a ≥ b ≥ 0.
#[derive(Debug, Clone, Copy)]
pub struct Sl3Vector;

impl FusionRule for Sl3Vector {
    fn name(&self) -> String {
        "sl3-vector".into()
    }

    fn unit(&self) -> VertexKey {
        VertexKey::pair(0, 0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [a, b] if *a >= *b && *b >= 0 => Ok(()),
            _ => Err(invalid(key, "sl3-vector")),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let (a, b) = (key.0[0], key.0[1]);
        let mut out = vec![(VertexKey::pair(a + 1, b), w(1))];
        if b < a {
            out.push((VertexKey::pair(a, b + 1), w(1)));
        }
        if b > 0 {
            out.push((VertexKey::pair(a - 1, b - 1), w(1)));
        }
        normalize_edges(out)
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        3
    }
}

/// Tensoring with the vector representation of GL2 on pairs a ≥ b ≥ 0.
#[derive(Debug, Clone, Copy)]
pub struct Gl2Vector;

impl FusionRule for Gl2Vector {
    fn name(&self) -> String {
        "gl2-vector".into()
    }

    fn unit(&self) -> VertexKey {
        VertexKey::pair(0, 0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [a, b] if *a >= *b && *b >= 0 => Ok(()),
            _ => Err(invalid(key, "gl2-vector")),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let (a, b) = (key.0[0], key.0[1]);
        let mut out = vec![(VertexKey::pair(a + 1, b), w(1))];
        if a > b {
            out.push((VertexKey::pair(a, b + 1), w(1)));
        }
        normalize_edges(out)
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        2
    }
}

/// Simple random walk on ℤ.
#[derive(Debug, Clone, Copy)]
pub struct LineZ;

impl FusionRule for LineZ {
    fn name(&self) -> String {
        "line-Z".into()
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [_] => Ok(()),
            _ => Err(invalid(key, "line-Z")),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let i = key.0[0];
        vec![(VertexKey::scalar(i - 1), w(1)), (VertexKey::scalar(i + 1), w(1))]
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        2
    }
}
