//! Star graphs, the Jordan chain and the Fibonacci matrix.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{big, normalize_edges, w, FusionRule, VertexKey};
use crate::error::{Error, Result};
use crate::weight::ScalarWeight;

/// Action matrix of c with c·c = 1 + c, basis (1, c).
pub fn fibonacci_matrix() -> Vec<Vec<BigRational>> {
    vec![vec![big(0), big(1)], vec![big(1), big(1)]]
}

/// Center 0 joined to leaves 1..=N in both directions.
#[derive(Debug, Clone)]
pub struct Star {
    pub n: u32,
}

impl Star {
    pub fn new(n: u32) -> Self {
        Star { n }
    }
}

impl FusionRule for Star {
    fn name(&self) -> String {
        format!("star(N={})", self.n)
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [v] if *v >= 0 && *v <= self.n as i64 => Ok(()),
            _ => Err(Error::InvalidKey { key: key.to_string(), family: self.name() }),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        if key.0[0] == 0 {
            (1..=self.n as i64).map(|i| (VertexKey::scalar(i), w(1))).collect()
        } else {
            vec![(VertexKey::scalar(0), w(1))]
        }
    }

    fn degree_bound(&self, key: &VertexKey) -> usize {
        if key.0[0] == 0 {
            self.n as usize
        } else {
            1
        }
    }

    fn label(&self, key: &VertexKey) -> String {
        if key.0[0] == 0 {
            "center".into()
        } else {
            key.to_string()
        }
    }

    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        if label.trim() == "center" {
            return Ok(VertexKey::scalar(0));
        }
        let key = crate::algebra::parse_key(label)?;
        self.check_key(&key)?;
        Ok(key)
    }

    fn finite_size(&self) -> Option<usize> {
        Some(self.n as usize + 1)
    }
}

/// i → i with weight α (omitted when α = 0) and i → i+1 with weight 1.
#[derive(Debug, Clone)]
pub struct Jordan {
    alpha: ScalarWeight,
}

impl Jordan {
    pub fn new(alpha: BigRational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParameter("jordan alpha must be >= 0".into()));
        }
        Ok(Jordan { alpha: ScalarWeight::new(alpha)? })
    }

    pub fn alpha(&self) -> &ScalarWeight {
        &self.alpha
    }
}

impl FusionRule for Jordan {
    fn name(&self) -> String {
        format!("jordan(alpha={})", self.alpha)
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(0)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [v] if *v >= 0 => Ok(()),
            _ => Err(Error::InvalidKey { key: key.to_string(), family: "jordan".into() }),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let i = key.0[0];
        let mut out = vec![(VertexKey::scalar(i + 1), w(1))];
        if !self.alpha.value().is_zero() {
            out.push((key.clone(), self.alpha.clone()));
        }
        normalize_edges(out)
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_center_column() {
        let s = Star::new(3);
        let t: Vec<i64> = s.out_edges(&VertexKey::scalar(0)).into_iter().map(|e| e.0 .0[0]).collect();
        assert_eq!(t, vec![1, 2, 3]);
        assert!(s.check_key(&VertexKey::scalar(4)).is_err());
        assert_eq!(s.parse_label("center").unwrap(), VertexKey::scalar(0));
    }

    #[test]
    fn jordan_loop_dropped_at_zero() {
        let j0 = Jordan::new(big(0)).unwrap();
        assert_eq!(j0.out_edges(&VertexKey::scalar(2)).len(), 1);
        let j = Jordan::new(BigRational::new(1.into(), 2.into())).unwrap();
        let e = j.out_edges(&VertexKey::scalar(2));
        assert_eq!(e[0], (VertexKey::scalar(2), "1/2".parse().unwrap()));
        assert_eq!(e[1], (VertexKey::scalar(3), w(1)));
    }
}
