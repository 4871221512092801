use crate::algebra::{w, FusionRule, VertexKey};
use crate::error::{Error, Result};
use crate::weight::ScalarWeight;

/// Young's lattice: a partition is joined to every partition obtained by adding or removing one box.
///
/// Keys are weakly decreasing positive parts; the empty partition is the unit.
#[derive(Debug, Clone, Copy)]
pub struct YoungLattice;

impl FusionRule for YoungLattice {
    fn name(&self) -> String {
        "young-lattice".into()
    }

    fn unit(&self) -> VertexKey {
        VertexKey(Vec::new())
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        let p = key.parts();
        let ok = p.iter().all(|&x| x >= 1) && p.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidKey { key: key.to_string(), family: "young-lattice".into() })
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let p = key.parts();
        let mut out = Vec::new();
        for r in 0..=p.len() {
            let cur = p.get(r).copied().unwrap_or(0);
            let above = if r == 0 { i64::MAX } else { p[r - 1] };
            if cur < above {
                let mut q = p.to_vec();
                if r == p.len() {
                    q.push(1);
                } else {
                    q[r] += 1;
                }
                out.push((VertexKey(q), w(1)));
            }
            let below = p.get(r + 1).copied().unwrap_or(0);
            if r < p.len() && cur > below {
                let mut q = p.to_vec();
                q[r] -= 1;
                if q[r] == 0 {
                    q.pop();
                }
                out.push((VertexKey(q), w(1)));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn degree_bound(&self, key: &VertexKey) -> usize {
        2 * key.parts().len() + 1
    }

    fn label(&self, key: &VertexKey) -> String {
        let inner: Vec<String> = key.parts().iter().map(|p| p.to_string()).collect();
        format!("({})", inner.join(","))
    }

    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        let s = label.trim();
        let key = if s == "()" || s == "0" {
            VertexKey(Vec::new())
        } else {
            crate::algebra::parse_key(s)?
        };
        self.check_key(&key)?;
        Ok(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_remove_boxes() {
        let e: Vec<VertexKey> = YoungLattice.out_edges(&VertexKey(vec![2, 1])).into_iter().map(|e| e.0).collect();
        assert_eq!(
            e,
            vec![
                VertexKey(vec![1, 1]),
                VertexKey(vec![2]),
                VertexKey(vec![2, 1, 1]),
                VertexKey(vec![2, 2]),
                VertexKey(vec![3, 1]),
            ]
        );
        let e0: Vec<VertexKey> = YoungLattice.out_edges(&VertexKey(vec![])).into_iter().map(|e| e.0).collect();
        assert_eq!(e0, vec![VertexKey(vec![1])]);
        assert!(YoungLattice.check_key(&VertexKey(vec![1, 2])).is_err());
        assert!(YoungLattice.check_key(&VertexKey(vec![1, 0])).is_err());
        assert_eq!(YoungLattice.label(&VertexKey(vec![1])), "(1)");
    }
}
