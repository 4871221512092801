//! Exact iteration v ← M·v over a lazily expanded problem.
//!
//! Vectors are BigInt numerators over one common denominator; integer-weighted families
//! never leave the integers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::GrowthProblem;
use crate::error::Result;

#[derive(Debug)]
enum Coef {
    One,
    Small(u32),
    Big(BigInt),
}

#[derive(Debug)]
struct EngineColumn {
    /// Lcm of the weight denominators.
    lcm: BigInt,
    /// `(target, numerator, denominator)`.
    arcs: Vec<(usize, BigInt, BigInt)>,
}

pub(crate) struct ExactVector<'a> {
    gp: &'a GrowthProblem,
    cur: Vec<BigInt>,
    next: Vec<BigInt>,
    mark: Vec<bool>,
    support: Vec<usize>,
    den: BigInt,
    cache: Vec<Option<Arc<EngineColumn>>>,
}

impl<'a> ExactVector<'a> {
    /// Indicator vector of vertex `id`.
    pub fn indicator(gp: &'a GrowthProblem, id: usize) -> Self {
        let n = gp.interned().max(id + 1);
        let mut cur = vec![BigInt::zero(); n];
        cur[id] = BigInt::one();
        ExactVector {
            gp,
            cur,
            next: vec![BigInt::zero(); n],
            mark: vec![false; n],
            support: vec![id],
            den: BigInt::one(),
            cache: Vec::new(),
        }
    }

    fn column(&mut self, id: usize) -> Result<Arc<EngineColumn>> {
        if self.cache.len() <= id {
            self.cache.resize(id + 1, None);
        }
        if let Some(c) = &self.cache[id] {
            return Ok(c.clone());
        }
        let column = self.gp.column(id)?;
        let mut lcm = BigInt::one();
        let arcs = column
            .iter()
            .map(|l| {
                let den = l.weight.denom().clone();
                if !den.is_one() {
                    lcm = lcm.lcm(&den);
                }
                (l.target, l.weight.numer().clone(), den)
            })
            .collect();
        let c = Arc::new(EngineColumn { lcm, arcs });
        self.cache[id] = Some(c.clone());
        Ok(c)
    }

    fn grow(&mut self) {
        let n = self.gp.interned();
        if self.cur.len() < n {
            self.cur.resize(n, BigInt::zero());
            self.next.resize(n, BigInt::zero());
            self.mark.resize(n, false);
        }
    }

    /// One multiplication by the action matrix. On error the vector is left unchanged.
    pub fn step(&mut self) -> Result<()> {
        let support = std::mem::take(&mut self.support);
        let mut columns = Vec::with_capacity(support.len());
        let mut lcm = BigInt::one();
        for &j in &support {
            match self.column(j) {
                Ok(c) => {
                    if !c.lcm.is_one() {
                        lcm = lcm.lcm(&c.lcm);
                    }
                    columns.push(c);
                }
                Err(e) => {
                    self.support = support;
                    return Err(e);
                }
            }
        }
        self.grow();
        let mut new_support = Vec::with_capacity(support.len() * 2);
        for (&j, col) in support.iter().zip(&columns) {
            let x = std::mem::take(&mut self.cur[j]);
            for (i, num, den) in &col.arcs {
                let coef = if lcm.is_one() { coef_of(num.clone()) } else { coef_of(num * (&lcm / den)) };
                let slot = &mut self.next[*i];
                match coef {
                    Coef::One => *slot += &x,
                    Coef::Small(s) => *slot += &x * s,
                    Coef::Big(b) => *slot += &x * &b,
                }
                if !self.mark[*i] {
                    self.mark[*i] = true;
                    new_support.push(*i);
                }
            }
        }
        new_support.retain(|&i| {
            self.mark[i] = false;
            !self.next[i].is_zero()
        });
        new_support.sort_unstable();
        std::mem::swap(&mut self.cur, &mut self.next);
        self.support = new_support;
        if !lcm.is_one() {
            self.den *= &lcm;
            self.reduce();
        }
        Ok(())
    }

    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for &i in &self.support {
            if g.is_one() {
                return;
            }
            g = g.gcd(&self.cur[i]);
        }
        if g.is_one() || g.is_zero() {
            return;
        }
        for &i in &self.support {
            self.cur[i] /= &g;
        }
        self.den /= &g;
    }

    pub fn entry(&self, id: usize) -> BigRational {
        match self.cur.get(id) {
            Some(v) if !v.is_zero() => BigRational::new(v.clone(), self.den.clone()),
            _ => BigRational::zero(),
        }
    }

    /// Removes the entry at `id` and returns it (taboo step).
    pub fn take(&mut self, id: usize) -> BigRational {
        match self.cur.get_mut(id) {
            Some(v) if !v.is_zero() => {
                let value = std::mem::take(v);
                self.support.retain(|&i| i != id);
                BigRational::new(value, self.den.clone())
            }
            _ => BigRational::zero(),
        }
    }

    pub fn total(&self) -> BigRational {
        let mut s = BigInt::zero();
        for &i in &self.support {
            s += &self.cur[i];
        }
        BigRational::new(s, self.den.clone())
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

fn coef_of(b: BigInt) -> Coef {
    if b.is_one() {
        Coef::One
    } else if let Some(s) = b.to_u32() {
        Coef::Small(s)
    } else {
        Coef::Big(b)
    }
}
