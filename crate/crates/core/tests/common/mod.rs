//! Brute-force oracles shared by the integration tests. None of them touches the fusion rules
//! of the library; each recomputes the counts from a different description of the same objects.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

pub fn motzkin(n: usize) -> Vec<BigInt> {
    let mut m = vec![BigInt::one(); n.max(1) + 1];
    for k in 2..=n {
        let mut s = m[k - 1].clone();
        for j in 0..=k - 2 {
            s += &m[j] * &m[k - 2 - j];
        }
        m[k] = s;
    }
    m.truncate(n + 1);
    m
}

/// Riordan numbers from their three-term recurrence.
pub fn riordan(n: usize) -> Vec<BigInt> {
    let mut r = vec![BigInt::one(), BigInt::zero()];
    for k in 2..=n {
        let next = (BigInt::from(k as u64 - 1) * (BigInt::from(2) * &r[k - 1] + BigInt::from(3) * &r[k - 2]))
            / BigInt::from(k as u64 + 1);
        r.push(next);
    }
    r.truncate(n + 1);
    r
}

pub fn double_factorial_odd(n: u64) -> BigInt {
    // (2n − 1)!!
    (1..=n).fold(BigInt::one(), |acc, k| acc * (2 * k - 1))
}

/// Weight multiplicities of L(λ)^{⊗n} for SL2, computed from characters: weight w ↦ count.
pub fn sl2_weights(lambda: i64, n: usize) -> BTreeMap<i64, BigInt> {
    let mut ch: BTreeMap<i64, BigInt> = BTreeMap::from([(0, BigInt::one())]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (w, c) in &ch {
            for s in (-lambda..=lambda).step_by(2) {
                *next.entry(w + s).or_insert_with(BigInt::zero) += c;
            }
        }
        ch = next;
    }
    ch
}

/// Decomposition of L(λ)^{⊗n} in characteristic zero: highest weight μ ↦ multiplicity,
/// read off as mult(μ) − mult(μ + 2).
pub fn sl2_decomposition(lambda: i64, n: usize) -> BTreeMap<i64, BigInt> {
    let ch = sl2_weights(lambda, n);
    let zero = BigInt::zero();
    ch.iter()
        .filter(|(w, _)| **w >= 0)
        .filter_map(|(w, c)| {
            let d = c - ch.get(&(w + 2)).unwrap_or(&zero);
            (!d.is_zero()).then_some((*w, d))
        })
        .collect()
}

/// Lattice words of length n in `rows` letters, grouped by final row lengths.
pub fn lattice_words(rows: usize, n: usize) -> BTreeMap<Vec<usize>, BigInt> {
    fn go(shape: &mut Vec<usize>, left: usize, out: &mut BTreeMap<Vec<usize>, BigInt>) {
        if left == 0 {
            *out.entry(shape.clone()).or_insert_with(BigInt::zero) += 1;
            return;
        }
        for r in 0..shape.len() {
            if r == 0 || shape[r] < shape[r - 1] {
                shape[r] += 1;
                go(shape, left - 1, out);
                shape[r] -= 1;
            }
        }
    }
    let mut out = BTreeMap::new();
    go(&mut vec![0; rows], n, &mut out);
    out
}

/// Walks of length n from 0 that return to 0 for the first time at step n.
pub fn first_returns_by_dfs(step: &dyn Fn(i64) -> Vec<i64>, n: usize) -> u64 {
    fn go(step: &dyn Fn(i64) -> Vec<i64>, at: i64, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == 0);
        }
        if at == 0 {
            return 0;
        }
        // A walk that cannot get back in time contributes nothing.
        if at.unsigned_abs() as usize > left {
            return 0;
        }
        step(at).into_iter().map(|b| go(step, b, left - 1)).sum()
    }
    step(0).into_iter().map(|b| go(step, b, n - 1)).sum()
}

/// Closed walks of length `len` on Young's lattice from ∅, adding or removing one box per step.
pub fn young_closed_walks(len: usize) -> BigInt {
    fn neighbours(p: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for r in 0..=p.len() {
            let cur = p.get(r).copied().unwrap_or(0);
            if r == 0 || p[r - 1] > cur {
                let mut q = p.to_vec();
                if r == q.len() {
                    q.push(1);
                } else {
                    q[r] += 1;
                }
                out.push(q);
            }
        }
        for r in 0..p.len() {
            if p.get(r + 1).copied().unwrap_or(0) < p[r] {
                let mut q = p.to_vec();
                q[r] -= 1;
                if q[r] == 0 {
                    q.pop();
                }
                out.push(q);
            }
        }
        out
    }
    fn go(p: Vec<u32>, left: usize, memo: &mut HashMap<(Vec<u32>, usize), BigInt>) -> BigInt {
        let size: u32 = p.iter().sum();
        if size as usize > left {
            return BigInt::zero();
        }
        if left == 0 {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&(p.clone(), left)) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for q in neighbours(&p) {
            total += go(q, left - 1, memo);
        }
        memo.insert((p, left), total.clone());
        total
    }
    go(Vec::new(), len, &mut HashMap::new())
}

/// Characters of the SL2 tilting modules in characteristic 2, from T(1) = L(1),
/// T(2) = T(1)⊗T(1) and the twisted tensor product T(r + 2m) = T(r)⊗T(m)^{[1]} for r ∈ {1, 2}.
pub struct TiltingCharacters {
    cache: HashMap<i64, BTreeMap<i64, i64>>,
}

impl TiltingCharacters {
    pub fn new() -> Self {
        TiltingCharacters { cache: HashMap::new() }
    }

    pub fn get(&mut self, n: i64) -> BTreeMap<i64, i64> {
        if let Some(c) = self.cache.get(&n) {
            return c.clone();
        }
        let ch = match n {
            0 => BTreeMap::from([(0, 1)]),
            1 => BTreeMap::from([(-1, 1), (1, 1)]),
            2 => product(&self.get(1), &self.get(1)),
            _ => {
                let r = if n % 2 == 1 { 1 } else { 2 };
                let m = (n - r) / 2;
                let twisted: BTreeMap<i64, i64> = self.get(m).into_iter().map(|(w, c)| (2 * w, c)).collect();
                product(&self.get(r), &twisted)
            }
        };
        self.cache.insert(n, ch.clone());
        ch
    }

    /// Multiplicities of tilting modules in a tilting character, peeled off by highest weight.
    pub fn decompose(&mut self, mut ch: BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        while let Some((&top, &c)) = ch.iter().next_back() {
            assert!(c > 0, "not a tilting character");
            let t = self.get(top);
            for (w, m) in t {
                let e = ch.entry(w).or_insert(0);
                *e -= c * m;
                if *e == 0 {
                    ch.remove(&w);
                }
            }
            out.insert(top, c);
        }
        out
    }
}

fn product(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x + y).or_insert(0) += c * d;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Exact arithmetic in Q(√5): a + b√5.
#[derive(Clone, Debug, PartialEq)]
pub struct QSqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt5 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt5 { a, b: BigRational::zero() }
    }

    pub fn phi() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QSqrt5 { a: half.clone(), b: half }
    }

    pub fn mul(&self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 { a: &self.a * &o.a + int(5) * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }

    pub fn sub(&self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn add(&self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn pow(&self, n: usize) -> QSqrt5 {
        (0..n).fold(QSqrt5::rational(int(1)), |acc, _| acc.mul(self))
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with 5b².
        let lhs = &self.a * &self.a;
        let rhs = int(5) * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else if lhs < rhs {
            sb
        } else {
            0
        }
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
