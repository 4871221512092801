//! Lazily expanded fusion graphs and their finite cutoffs.
//!
//! Edge convention: an out-edge `j -> i` of weight `m` records that `c_i` occurs in
//! `c * c_j` with multiplicity `m`, so column `j` of the action matrix lists the
//! out-edges of `j`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::ScalarWeight;

pub const DEFAULT_VERTEX_CAP: usize = 200_000;
pub const VERTEX_CAP_ENV: &str = "GROWTH_VERTEX_CAP";

/// Canonical integer-tuple label of a basis element. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexKey(pub Vec<i64>);

impl VertexKey {
    pub fn scalar(v: i64) -> Self {
        VertexKey(vec![v])
    }

    pub fn pair(a: i64, b: i64) -> Self {
        VertexKey(vec![a, b])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [v] => write!(f, "{v}"),
            parts => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", inner.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub source: VertexKey,
    pub target: VertexKey,
    pub weight: ScalarWeight,
}

/// Neighbor oracle of a growth problem: the decomposition of `c * c_v` for every basis element.
pub trait FusionRule: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn unit(&self) -> VertexKey;

    /// Rejects keys that are not canonical labels of this family.
    fn check_key(&self, key: &VertexKey) -> Result<()>;

    /// Out-edges of a valid key, sorted by target, targets distinct, weights positive.
    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)>;

    /// Upper bound on the out-degree of `key`.
    fn degree_bound(&self, key: &VertexKey) -> usize;

    fn label(&self, key: &VertexKey) -> String {
        key.to_string()
    }

    /// Inverse of `label`.
    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        let key = parse_key(label)?;
        self.check_key(&key)?;
        Ok(key)
    }

    /// Number of basis elements when the algebra is finite-dimensional.
    fn finite_size(&self) -> Option<usize> {
        None
    }
}

/// Parses "3", "-2", "(2,1)", "()" into a key.
pub fn parse_key(label: &str) -> Result<VertexKey> {
    let s = label.trim();
    let bad = || Error::Parse(format!("bad vertex label {label:?}"));
    let inner = match s.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').ok_or_else(bad)?,
        None => {
            return s.parse::<i64>().map(VertexKey::scalar).map_err(|_| bad());
        }
    };
    if inner.trim().is_empty() {
        return Ok(VertexKey(Vec::new()));
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()
        .map(VertexKey)
}

#[derive(Clone, Debug)]
pub struct GrowthOptions {
    pub vertex_cap: usize,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions { vertex_cap: DEFAULT_VERTEX_CAP }
    }
}

impl GrowthOptions {
    /// Default options with the cap overridden by `GROWTH_VERTEX_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = GrowthOptions::default();
        if let Ok(v) = std::env::var(VERTEX_CAP_ENV) {
            opts.vertex_cap = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{VERTEX_CAP_ENV} must be a positive integer, got {v:?}"))
            })?;
            if opts.vertex_cap == 0 {
                return Err(Error::InvalidParameter(format!("{VERTEX_CAP_ENV} must be positive")));
            }
        }
        Ok(opts)
    }
}

/// One materialized out-edge, with the target interned.
#[derive(Clone, Debug)]
pub(crate) struct Link {
    pub target: usize,
    pub weight: BigRational,
}

pub(crate) type Column = Arc<[Link]>;

#[derive(Debug, Default)]
struct Store {
    keys: Vec<VertexKey>,
    ids: HashMap<VertexKey, usize>,
    columns: Vec<Option<Column>>,
    /// BFS levels from the unit; `levels[k]` holds the ids at distance exactly k, sorted by key.
    levels: Vec<Vec<usize>>,
    level_of: HashMap<usize, usize>,
}

/// A pair (R, c) presented by its neighbor oracle, expanded on demand.
#[derive(Debug)]
pub struct GrowthProblem {
    rule: Arc<dyn FusionRule>,
    options: GrowthOptions,
    store: Mutex<Store>,
}

impl GrowthProblem {
    pub fn new(rule: Arc<dyn FusionRule>, options: GrowthOptions) -> Result<Self> {
        let unit = rule.unit();
        rule.check_key(&unit)?;
        let mut store = Store::default();
        store.keys.push(unit.clone());
        store.ids.insert(unit, 0);
        store.columns.push(None);
        store.levels.push(vec![0]);
        store.level_of.insert(0, 0);
        Ok(GrowthProblem { rule, options, store: Mutex::new(store) })
    }

    /// Independent instance over the same rule with an empty memo store.
    pub fn fresh(&self) -> Self {
        GrowthProblem::new(self.rule.clone(), self.options.clone()).expect("unit already validated")
    }

    /// The same problem with every structure constant multiplied by `s > 0`.
    pub fn scaled(&self, s: ScalarWeight) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidParameter("scale factor must be positive".into()));
        }
        let rule = ScaledRule { inner: self.rule.clone(), factor: s };
        GrowthProblem::new(Arc::new(rule), self.options.clone())
    }

    pub fn rule(&self) -> &Arc<dyn FusionRule> {
        &self.rule
    }

    pub fn name(&self) -> String {
        self.rule.name()
    }

    pub fn unit(&self) -> VertexKey {
        self.rule.unit()
    }

    pub fn options(&self) -> &GrowthOptions {
        &self.options
    }

    pub fn is_finite(&self) -> bool {
        self.rule.finite_size().is_some()
    }

    pub fn label(&self, key: &VertexKey) -> String {
        self.rule.label(key)
    }

    /// Number of vertices interned so far (expanded vertices and their targets).
    pub fn interned(&self) -> usize {
        self.lock().keys.len()
    }

    fn lock(&self) -> MutexGuard<'_, Store> {
        self.store.lock().unwrap_or_else(|p| p.into_inner())
    }

    pub fn out_edges(&self, v: &VertexKey) -> Result<Vec<WeightedEdge>> {
        self.rule.check_key(v)?;
        let id = self.intern(v)?;
        let column = self.column(id)?;
        let store = self.lock();
        Ok(column
            .iter()
            .map(|a| WeightedEdge {
                source: v.clone(),
                target: store.keys[a.target].clone(),
                weight: ScalarWeight::new(a.weight.clone()).expect("oracle weights are nonnegative"),
            })
            .collect())
    }

    pub(crate) fn keys_of(&self, ids: &[usize]) -> Vec<VertexKey> {
        let store = self.lock();
        ids.iter().map(|&i| store.keys[i].clone()).collect()
    }

    pub(crate) fn intern(&self, key: &VertexKey) -> Result<usize> {
        let mut store = self.lock();
        Self::intern_locked(&mut store, key, self.options.vertex_cap)
    }

    fn intern_locked(store: &mut Store, key: &VertexKey, cap: usize) -> Result<usize> {
        if let Some(&id) = store.ids.get(key) {
            return Ok(id);
        }
        if store.keys.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        let id = store.keys.len();
        store.keys.push(key.clone());
        store.ids.insert(key.clone(), id);
        store.columns.push(None);
        Ok(id)
    }

    /// Memoized interned column of vertex `id`.
    pub(crate) fn column(&self, id: usize) -> Result<Column> {
        let key = {
            let store = self.lock();
            if let Some(c) = &store.columns[id] {
                return Ok(c.clone());
            }
            store.keys[id].clone()
        };
        let edges = self.rule.out_edges(&key);
        let mut store = self.lock();
        if let Some(c) = &store.columns[id] {
            return Ok(c.clone());
        }
        let mut arcs = Vec::with_capacity(edges.len());
        for (target, w) in edges {
            debug_assert!(!w.is_zero());
            let t = Self::intern_locked(&mut store, &target, self.options.vertex_cap)?;
            arcs.push(Link { target: t, weight: w.into_inner() });
        }
        let column: Column = arcs.into();
        store.columns[id] = Some(column.clone());
        Ok(column)
    }

    /// Extends the memoized BFS levels to distance `k`, returning the number of levels known.
    fn ensure_levels(&self, k: usize) -> Result<()> {
        loop {
            let (depth, frontier) = {
                let store = self.lock();
                if store.levels.len() > k {
                    return Ok(());
                }
                (store.levels.len(), store.levels.last().cloned().unwrap_or_default())
            };
            let mut next: Vec<usize> = Vec::new();
            let mut seen: HashSet<usize> = HashSet::new();
            for &v in &frontier {
                let column = self.column(v)?;
                let store = self.lock();
                for a in column.iter() {
                    if !store.level_of.contains_key(&a.target) && seen.insert(a.target) {
                        next.push(a.target);
                    }
                }
            }
            let mut store = self.lock();
            next.sort_by(|a, b| store.keys[*a].cmp(&store.keys[*b]));
            for &v in &next {
                store.level_of.insert(v, depth);
            }
            store.levels.push(next);
        }
    }

    /// Ids at distance ≤ k from the unit, in truncation order.
    pub(crate) fn ball(&self, k: usize) -> Result<Vec<usize>> {
        self.ensure_levels(k)?;
        let store = self.lock();
        Ok(store.levels[..=k].iter().flatten().copied().collect())
    }

    /// The naive cutoff Γ_k: vertices reachable from the unit in at most k steps.
    pub fn expand_to_depth(&self, k: usize) -> Result<Truncation> {
        let ids = self.ball(k)?;
        self.truncation_on(&ids, k)
    }

    /// Whether the naive cutoff of depth `k` already contains every reachable vertex.
    pub fn saturated_at(&self, k: usize) -> Result<bool> {
        self.ensure_levels(k + 1)?;
        Ok(self.lock().levels[k + 1].is_empty())
    }

    /// Smallest depth whose cutoff contains every reachable vertex, searching up to `max_depth`.
    pub fn saturation_depth(&self, max_depth: usize) -> Result<Option<usize>> {
        for k in 0..=max_depth {
            if self.saturated_at(k)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Induced truncation on the given ids (order preserved, first must be the unit).
    pub(crate) fn truncation_on(&self, ids: &[usize], depth: usize) -> Result<Truncation> {
        let local: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut columns = Vec::with_capacity(ids.len());
        for &g in ids {
            let column = self.column(g)?;
            let col: Vec<(usize, BigRational)> = column
                .iter()
                .filter_map(|a| local.get(&a.target).map(|&i| (i, a.weight.clone())))
                .collect();
            columns.push(col);
        }
        Ok(Truncation {
            depth,
            vertices: self.keys_of(ids),
            matrix: SparseMatrix { n: ids.len(), columns },
        })
    }

    /// Lazily produced increasing sequence of truncations.
    pub fn filtration(&self, strategy: Strategy) -> Result<Filtration<'_>> {
        if let Strategy::Explicit(sets) = &strategy {
            self.validate_schedule(sets)?;
        }
        Ok(Filtration { gp: self, strategy, step: 0 })
    }

    fn validate_schedule(&self, sets: &[Vec<VertexKey>]) -> Result<()> {
        let unit = self.unit();
        match sets.first() {
            Some(first) if first.len() == 1 && first[0] == unit => {}
            _ => return Err(Error::ScheduleMissingUnit),
        }
        let mut previous: HashSet<&VertexKey> = HashSet::new();
        for (step, set) in sets.iter().enumerate() {
            let current: HashSet<&VertexKey> = set.iter().collect();
            if current.len() != set.len() || !previous.is_subset(&current) || !current.contains(&unit) {
                return Err(Error::NonNestedSchedule { step });
            }
            for key in set {
                self.rule.check_key(key)?;
            }
            previous = current;
        }
        if let Some(size) = self.rule.finite_size() {
            let depth = self.saturation_depth(size)?.unwrap_or(size);
            let all = self.ball(depth)?;
            let all_keys = self.keys_of(&all);
            let missing = all_keys.iter().filter(|k| !previous.contains(k)).count();
            if missing > 0 {
                return Err(Error::ScheduleNotExhaustive { missing });
            }
        }
        Ok(())
    }
}

/// Choice of finite cutoffs for a filtration.
#[derive(Clone, Debug)]
pub enum Strategy {
    Naive,
    /// Nested vertex sets, the first being exactly the unit.
    Explicit(Vec<Vec<VertexKey>>),
}

/// Stream of truncations; the naive stream is unbounded, explicit ones end with the schedule.
pub struct Filtration<'a> {
    gp: &'a GrowthProblem,
    strategy: Strategy,
    step: usize,
}

impl<'a> Filtration<'a> {
    /// The truncation at position `step` of the filtration.
    pub fn at(&self, step: usize) -> Option<Result<Truncation>> {
        match &self.strategy {
            Strategy::Naive => Some(self.gp.expand_to_depth(step)),
            Strategy::Explicit(sets) => {
                let set = sets.get(step)?;
                let mut ids = Vec::with_capacity(set.len());
                let unit = self.gp.unit();
                let mut ordered: Vec<&VertexKey> = vec![&unit];
                ordered.extend(set.iter().filter(|k| **k != unit));
                for key in ordered {
                    match self.gp.intern(key) {
                        Ok(id) => ids.push(id),
                        Err(e) => return Some(Err(e)),
                    }
                }
                Some(self.gp.truncation_on(&ids, step))
            }
        }
    }
}

impl<'a> Iterator for Filtration<'a> {
    type Item = Result<Truncation>;

    fn next(&mut self) -> Option<Self::Item> {
        let item = self.at(self.step);
        self.step += 1;
        item
    }
}

/// Column-major sparse matrix of exact nonnegative rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub n: usize,
    /// `columns[j]` lists `(i, m_ij)` with `m_ij > 0`, sorted by `i` only when built from a rule.
    pub columns: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn from_dense(rows: &[Vec<BigRational>]) -> Result<Self> {
        let n = rows.len();
        let mut columns = vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v < &BigRational::zero() {
                    return Err(Error::NegativeWeight(v.to_string()));
                }
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        Ok(SparseMatrix { n, columns })
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, w) in col {
                m[(*i, j)] += crate::weight::rational_to_f64(w);
            }
        }
        m
    }

    pub fn to_dense_rational(&self) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.n]; self.n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, w) in col {
                m[*i][j] += w;
            }
        }
        m
    }

    /// Float copy: `cols[j]` lists `(i, m_ij)`.
    pub fn to_f64_columns(&self) -> Vec<Vec<(usize, f64)>> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|(i, w)| (*i, crate::weight::rational_to_f64(w))).collect())
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Exact first-column sums of M^0..M^n, by dense exact iteration.
    pub fn first_column_power_sums(&self, n: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.n];
        if self.n == 0 {
            return vec![BigRational::zero(); n + 1];
        }
        v[0] = BigRational::one();
        let mut out = Vec::with_capacity(n + 1);
        for step in 0..=n {
            out.push(v.iter().fold(BigRational::zero(), |acc, x| acc + x));
            if step == n {
                break;
            }
            let mut next = vec![BigRational::zero(); self.n];
            for (j, col) in self.columns.iter().enumerate() {
                if v[j].is_zero() {
                    continue;
                }
                for (i, w) in col {
                    next[*i] += w * &v[j];
                }
            }
            v = next;
        }
        out
    }
}

/// A finite cutoff: ordered vertices (unit first) and the induced action matrix.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub depth: usize,
    pub vertices: Vec<VertexKey>,
    pub matrix: SparseMatrix,
}

impl Truncation {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, key: &VertexKey) -> Option<usize> {
        self.vertices.iter().position(|k| k == key)
    }

    /// Action matrix restricted to the listed vertices; column order equals vertex order.
    pub fn truncation_matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// Out-neighbour lists as local indices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.matrix.columns.iter().map(|c| c.iter().map(|(i, _)| *i).collect()).collect()
    }

    /// Same cutoff with every weight multiplied by `s`.
    pub fn scaled(&self, s: &BigRational) -> Truncation {
        let mut t = self.clone();
        for col in &mut t.matrix.columns {
            for (_, w) in col.iter_mut() {
                *w = &*w * s;
            }
        }
        t
    }
}

/// Convenience free function mirroring [`GrowthProblem::expand_to_depth`].
pub fn expand_to_depth(gp: &GrowthProblem, k: usize) -> Result<Truncation> {
    gp.expand_to_depth(k)
}

/// Convenience free function mirroring [`Truncation::truncation_matrix`].
pub fn truncation_matrix(t: &Truncation) -> &SparseMatrix {
    t.truncation_matrix()
}

#[derive(Debug)]
struct ScaledRule {
    inner: Arc<dyn FusionRule>,
    factor: ScalarWeight,
}

impl FusionRule for ScaledRule {
    fn name(&self) -> String {
        format!("{}*{}", self.inner.name(), self.factor)
    }

    fn unit(&self) -> VertexKey {
        self.inner.unit()
    }

    fn check_key(&self, key: &VertexKey) -> Result<()> {
        self.inner.check_key(key)
    }

    fn out_edges(&self, key: &VertexKey) -> Vec<(VertexKey, ScalarWeight)> {
        self.inner
            .out_edges(key)
            .into_iter()
            .map(|(k, w)| (k, w.mul(&self.factor)))
            .collect()
    }

    fn degree_bound(&self, key: &VertexKey) -> usize {
        self.inner.degree_bound(key)
    }

    fn label(&self, key: &VertexKey) -> String {
        self.inner.label(key)
    }

    fn parse_label(&self, label: &str) -> Result<VertexKey> {
        self.inner.parse_label(label)
    }

    fn finite_size(&self) -> Option<usize> {
        self.inner.finite_size()
    }
}

/// Integer weight helper for rule implementations.
pub(crate) fn w(n: u64) -> ScalarWeight {
    ScalarWeight::from_integer(n)
}

/// Sorts out-edges by target and merges duplicate targets.
pub(crate) fn normalize_edges(mut edges: Vec<(VertexKey, ScalarWeight)>) -> Vec<(VertexKey, ScalarWeight)> {
    edges.retain(|(_, w)| !w.is_zero());
    edges.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(VertexKey, ScalarWeight)> = Vec::with_capacity(edges.len());
    for (k, w) in edges {
        match out.last_mut() {
            Some((lk, lw)) if *lk == k => *lw = lw.add(&w),
            _ => out.push((k, w)),
        }
    }
    out
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};

    #[test]
    fn key_display_and_parse() {
        assert_eq!(VertexKey::scalar(-3).to_string(), "-3");
        assert_eq!(VertexKey::pair(2, 1).to_string(), "(2,1)");
        assert_eq!(VertexKey(vec![]).to_string(), "()");
        assert_eq!(parse_key("(2, 1)").unwrap(), VertexKey::pair(2, 1));
        assert_eq!(parse_key("()").unwrap(), VertexKey(vec![]));
        assert_eq!(parse_key("7").unwrap(), VertexKey::scalar(7));
        assert!(parse_key("(1,").is_err());
    }

    #[test]
    fn lazy_problem_starts_with_unit_only() {
        let gp = build_family(&FamilySpec::Sl2 { lambda: 1 }).unwrap();
        assert_eq!(gp.interned(), 1);
        let t = gp.expand_to_depth(0).unwrap();
        assert_eq!(t.vertices, vec![VertexKey::scalar(0)]);
        assert_eq!(t.matrix.nnz(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let gp = GrowthProblem::new(
            build_family(&FamilySpec::LineZ).unwrap().rule().clone(),
            GrowthOptions { vertex_cap: 10 },
        )
        .unwrap();
        assert!(gp.expand_to_depth(3).is_ok());
        assert!(matches!(gp.expand_to_depth(6), Err(Error::CapExceeded { cap: 10 })));
    }

    #[test]
    fn ball_ordering_is_levelwise_by_key() {
        let gp = build_family(&FamilySpec::LineZ).unwrap();
        let t = gp.expand_to_depth(2).unwrap();
        let got: Vec<i64> = t.vertices.iter().map(|k| k.0[0]).collect();
        assert_eq!(got, vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn explicit_schedule_validation() {
        let gp = build_family(&FamilySpec::Fibonacci).unwrap();
        let one = VertexKey::scalar(0);
        let x = VertexKey::scalar(1);
        assert!(matches!(
            gp.filtration(Strategy::Explicit(vec![vec![x.clone()]])),
            Err(Error::ScheduleMissingUnit)
        ));
        assert!(matches!(
            gp.filtration(Strategy::Explicit(vec![vec![one.clone()], vec![x.clone()]])),
            Err(Error::NonNestedSchedule { step: 1 })
        ));
        assert!(matches!(
            gp.filtration(Strategy::Explicit(vec![vec![one.clone()]])),
            Err(Error::ScheduleNotExhaustive { missing: 1 })
        ));
        let f = gp
            .filtration(Strategy::Explicit(vec![vec![one.clone()], vec![one, x]]))
            .unwrap();
        let ts: Vec<Truncation> = f.map(|t| t.unwrap()).collect();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[1].matrix.to_dense_rational(), vec![vec![big(0), big(1)], vec![big(1), big(1)]]);
    }

    #[test]
    fn scaled_problem_scales_weights() {
        let gp = build_family(&FamilySpec::Fibonacci).unwrap();
        let s = gp.scaled("1/3".parse().unwrap()).unwrap();
        let e = s.out_edges(&VertexKey::scalar(1)).unwrap();
        assert!(e.iter().all(|e| e.weight.to_string() == "1/3"));
    }
}
