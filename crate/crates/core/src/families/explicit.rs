use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::algebra::{parse_key, FusionRule, GrowthOptions, GrowthProblem, VertexKey};
use crate::error::{Error, Result};
use crate::interchange::{parse_interchange, weight_text};
use crate::weight::{parse_rational, ScalarWeight};

/// Finite problem read from a matrix; vertex `i` has key `[i]`.
#[derive(Debug, Clone)]
pub struct ExplicitRule {
    name: String,
    unit: usize,
    labels: Vec<String>,
    columns: Vec<Vec<(VertexKey, ScalarWeight)>>,
}

impl ExplicitRule {
    /// From dense rows, `rows[i][j]` = multiplicity of vertex i in c·(vertex j).
    pub fn from_dense(
        name: &str,
        rows: &[Vec<BigRational>],
        unit: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("matrix is not square: row {i} has {} entries", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    edges.push((j, i, ScalarWeight::new(v.clone())?));
                }
            }
        }
        Self::from_edges(name, n, unit, labels, edges)
    }

    pub fn from_edges(
        name: &str,
        n: usize,
        unit: usize,
        labels: Option<Vec<String>>,
        edges: Vec<(usize, usize, ScalarWeight)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        if unit >= n {
            return Err(Error::MissingUnit { index: unit, size: n });
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Malformed(format!("{} labels for {n} vertices", labels.len())));
        }
        let mut columns: Vec<Vec<(VertexKey, ScalarWeight)>> = vec![Vec::new(); n];
        for (src, dst, weight) in edges {
            if src >= n || dst >= n {
                return Err(Error::Malformed(format!("edge {src}->{dst} out of range")));
            }
            if !weight.is_zero() {
                columns[src].push((VertexKey::scalar(dst as i64), weight));
            }
        }
        let columns = columns.into_iter().map(crate::algebra::normalize_edges).collect();
        Ok(ExplicitRule { name: name.to_string(), unit, labels, columns })
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl FusionRule for ExplicitRule {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(self.unit as i64)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [i] if *i >= 0 && (*i as usize) < self.columns.len() => Ok(()),
            _ => Err(Error::InvalidKey { key: key.to_string(), family: self.name.clone() }),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        self.columns[key.0[0] as usize].clone()
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        self.columns.len()
    }

    fn label(&self, key: &VertexKey) -> String {
        self.labels[key.0[0] as usize].clone()
    }

    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        if let Some(i) = self.labels.iter().position(|l| l == label.trim()) {
            return Ok(VertexKey::scalar(i as i64));
        }
        let key = parse_key(label)?;
        self.check_key(&key)?;
        Ok(key)
    }

    fn finite_size(&self) -> Option<usize> {
        Some(self.columns.len())
    }
}

/// Loads a finite problem from a JSON file holding either the graph interchange object or a
/// square array of rows. `unit` overrides the file's unit index.
pub fn load_explicit(path: &Path, unit: Option<usize>, options: GrowthOptions) -> Result<GrowthProblem> {
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "explicit".into());
    load_explicit_str(&name, &text, unit, options)
}

pub fn load_explicit_str(name: &str, text: &str, unit: Option<usize>, options: GrowthOptions) -> Result<GrowthProblem> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rule = match &value {
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Malformed("matrix rows must be arrays".into()))?
                        .iter()
                        .map(|v| parse_rational(&weight_text(v)?))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            ExplicitRule::from_dense(name, &rows, unit.unwrap_or(0), None)?
        }
        Value::Object(_) => {
            let g = parse_interchange(&value)?;
            let edges = g
                .edges
                .iter()
                .map(|(s, d, w)| Ok((*s, *d, w.parse::<ScalarWeight>()?)))
                .collect::<Result<Vec<_>>>()?;
            ExplicitRule::from_edges(name, g.vertices.len(), unit.unwrap_or(g.unit), Some(g.vertices), edges)?
        }
        _ => return Err(Error::Malformed("expected a matrix array or an interchange object".into())),
    };
    GrowthProblem::new(Arc::new(rule), options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_loads_and_reads_columns() {
        let gp = load_explicit_str("fib", "[[0,1],[1,1]]", Some(0), GrowthOptions::default()).unwrap();
        let e = gp.out_edges(&VertexKey::scalar(0)).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].target, VertexKey::scalar(1));
        assert!(gp.is_finite());
    }

    #[test]
    fn loader_errors() {
        let opts = GrowthOptions::default;
        assert!(matches!(load_explicit_str("x", "[[1,-1],[0,1]]", None, opts()), Err(Error::NegativeWeight(_))));
        assert!(matches!(load_explicit_str("x", "[[1]]", Some(1), opts()), Err(Error::MissingUnit { .. })));
        assert!(matches!(load_explicit_str("x", "[[1,0]]", None, opts()), Err(Error::Malformed(_))));
        assert!(matches!(load_explicit_str("x", "[[1,", None, opts()), Err(Error::Parse(_))));
        assert!(matches!(load_explicit_str("x", "[[\"a\"]]", None, opts()), Err(Error::Parse(_))));
    }

    #[test]
    fn interchange_object_loads() {
        let gp = load_explicit_str(
            "g",
            r#"{"vertices":["one","x"],"unit":0,"edges":[[0,1,"1"],[1,0,"1"],[1,1,"1"]]}"#,
            None,
            GrowthOptions::default(),
        )
        .unwrap();
        assert_eq!(gp.label(&VertexKey::scalar(1)), "x");
        assert_eq!(gp.expand_to_depth(5).unwrap().len(), 2);
    }
}
