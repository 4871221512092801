//! Non-semisimple examples: Klein four group in characteristic 2, tilting modules of SL2 in
//! characteristic 2, and the finite cutoff of PSL2(F7) in characteristic 7.

use num_rational::BigRational;

use crate::algebra::{big, normalize_edges, parse_key, w, FusionRule, VertexKey};
use crate::error::{Error, Result};
use crate::weight::ScalarWeight;

/// Key of the projective indecomposable P_4; chain modules I_k use key k (k odd, I_1 the unit).
const KLEIN_PROJECTIVE: i64 = 0;

/// Tensoring with the 3-dimensional module I_3 over the Klein four group in characteristic 2.
#[derive(Debug, Clone, Copy)]
pub struct KleinFour;

impl KleinFour {
    pub fn projective() -> VertexKey {
        VertexKey::scalar(KLEIN_PROJECTIVE)
    }

    pub fn chain(k: i64) -> VertexKey {
        VertexKey::scalar(k)
    }

    /// Dimension of the module with the given key.
    pub fn dimension(key: &VertexKey) -> i64 {
        match key.0[0] {
            KLEIN_PROJECTIVE => 4,
            k => k,
        }
    }
}

impl FusionRule for KleinFour {
    fn name(&self) -> String {
        "klein-four".into()
    }

    fn unit(&self) -> VertexKey {
        Self::chain(1)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [KLEIN_PROJECTIVE] => Ok(()),
            [k] if *k >= 1 && k % 2 == 1 => Ok(()),
            _ => Err(Error::InvalidKey { key: key.to_string(), family: "klein-four".into() }),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let k = key.0[0];
        if k == KLEIN_PROJECTIVE {
            return vec![(Self::projective(), w(3))];
        }
        let half = (k - 1) / 2;
        let mut out = vec![(Self::chain(k + 2), w(1))];
        if half >= 1 {
            out.push((Self::projective(), w(half as u64)));
        }
        normalize_edges(out)
    }

    fn degree_bound(&self, _key: &VertexKey) -> usize {
        2
    }

    fn label(&self, key: &VertexKey) -> String {
        match key.0[0] {
            KLEIN_PROJECTIVE => "P4".into(),
            1 => "1".into(),
            k => format!("I{k}"),
        }
    }

    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        let s = label.trim();
        let key = if s == "P4" {
            Self::projective()
        } else if let Some(rest) = s.strip_prefix('I') {
            parse_key(rest)?
        } else {
            parse_key(s)?
        };
        self.check_key(&key)?;
        Ok(key)
    }
}

/// Tensoring with T(1) on the tilting modules T(i−1), keyed by i ≥ 1, of SL2 in characteristic 2.
///
/// c·T(i−1) = T(i) ⊕ 2·⊕_{1≤j≤v₂(i+1)} T(i−2^j), summands with negative index omitted.
#[derive(Debug, Clone, Copy)]
pub struct Sl2F2;

impl FusionRule for Sl2F2 {
    fn name(&self) -> String {
        "sl2-f2".into()
    }

    fn unit(&self) -> VertexKey {
        VertexKey::scalar(1)
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        match key.parts() {
            [i] if *i >= 1 && *i < i64::MAX / 2 => Ok(()),
            _ => Err(Error::InvalidKey { key: key.to_string(), family: "sl2-f2".into() }),
        }
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        let i = key.0[0];
        let mut out = vec![(VertexKey::scalar(i + 1), w(1))];
        let v2 = (i + 1).trailing_zeros();
        for j in 1..=v2 {
            let target = i + 1 - (1i64 << j);
            if target >= 1 {
                out.push((VertexKey::scalar(target), w(2)));
            }
        }
        normalize_edges(out)
    }

    fn degree_bound(&self, key: &VertexKey) -> usize {
        1 + (key.0[0] + 1).trailing_zeros() as usize
    }
}

/// Index of the trivial representation in the PSL2(F7) cutoff (0-based).
pub const PSL2_F7_UNIT: usize = 4;

/// Dimensions of the 16 cutoff vertices, in matrix order.
pub const PSL2_F7_DIMENSIONS: [i64; 16] = [8, 16, 16, 8, 1, 3, 9, 11, 17, 35, 25, 43, 49, 51, 57, 75];

const PSL2_F7_ROWS: [[i64; 16]; 16] = [
    [1, 3, 2, 1, 0, 0, 2, 2, 2, 6, 4, 6, 8, 8, 8, 12],
    [0, 1, 2, 0, 0, 0, 0, 0, 0, 2, 0, 2, 4, 4, 4, 4],
    [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
];

/// The 16×16 cutoff action matrix, M[i][j] = multiplicity of vertex i in c·(vertex j).
///
/// Rows 0..4 are the projective cell. Row 11 is zero, so vertices 11..16 are unreachable from the unit.
pub fn psl2_f7_matrix() -> Vec<Vec<BigRational>> {
    PSL2_F7_ROWS.iter().map(|row| row.iter().map(|&v| big(v)).collect()).collect()
}
