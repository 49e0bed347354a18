//! Truncated Taylor expansions `Σ c_k t^k`, `t = u - u_0`, at a fixed sample point.
//!
//! Each jet records how many leading coefficients are trustworthy. Constants are
//! exact to every order; differentiation costs one order of accuracy.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::diffop::FunctionRing;
use crate::scalar::{Rat, Scalar};

#[derive(Clone)]
pub struct Jet<K> {
    coeffs: Vec<K>,
    /// Number of valid coefficients; `None` for exact values.
    prec: Option<usize>,
}

impl<K: Scalar> Jet<K> {
    pub fn constant(c: K) -> Self {
        Jet { coeffs: vec![c], prec: None }.trim()
    }

    /// Expansion of `1 / (u - a)` at `u_0` to `order` coefficients.
    pub fn simple_pole(u0: &K, a: &K, order: usize) -> Self {
        let d = u0.clone() - a.clone();
        let inv = K::one() / d;
        let mut coeffs = Vec::with_capacity(order);
        let mut p = inv.clone();
        for k in 0..order {
            coeffs.push(if k % 2 == 0 { p.clone() } else { -p.clone() });
            p = p * inv.clone();
        }
        Jet { coeffs, prec: Some(order) }
    }

    /// The function `u` itself.
    pub fn identity(u0: &K) -> Self {
        Jet { coeffs: vec![u0.clone(), K::one()], prec: None }
    }

    pub fn value(&self) -> K {
        self.coeffs.first().cloned().unwrap_or_else(K::zero)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn precision(&self) -> Option<usize> {
        self.prec
    }

    fn trim(mut self) -> Self {
        if let Some(p) = self.prec {
            self.coeffs.truncate(p);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn get(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }
}

fn min_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<K: Scalar> PartialEq for Jet<K> {
    fn eq(&self, other: &Self) -> bool {
        let p = min_prec(self.prec, other.prec);
        let n = p.unwrap_or(self.coeffs.len().max(other.coeffs.len()));
        (0..n).all(|k| self.get(k) == other.get(k))
    }
}

impl<K: Scalar> fmt::Debug for Jet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet{:?}@{:?}", self.coeffs, self.prec)
    }
}

impl<K: Scalar> Zero for Jet<K> {
    fn zero() -> Self {
        Jet { coeffs: Vec::new(), prec: None }
    }
    fn is_zero(&self) -> bool {
        self.prec.is_none() && self.coeffs.is_empty()
    }
}

impl<K: Scalar> One for Jet<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
}

impl<K: Scalar> Add for Jet<K> {
    type Output = Jet<K>;
    fn add(self, rhs: Jet<K>) -> Jet<K> {
        let prec = min_prec(self.prec, rhs.prec);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let n = prec.map_or(n, |p| n.min(p));
        let coeffs = (0..n).map(|k| self.get(k) + rhs.get(k)).collect();
        Jet { coeffs, prec }.trim()
    }
}

impl<K: Scalar> Neg for Jet<K> {
    type Output = Jet<K>;
    fn neg(self) -> Jet<K> {
        Jet { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), prec: self.prec }
    }
}

impl<K: Scalar> Sub for Jet<K> {
    type Output = Jet<K>;
    fn sub(self, rhs: Jet<K>) -> Jet<K> {
        self + (-rhs)
    }
}

impl<K: Scalar> Mul for Jet<K> {
    type Output = Jet<K>;
    fn mul(self, rhs: Jet<K>) -> Jet<K> {
        if self.is_zero() || rhs.is_zero() {
            return Jet::zero();
        }
        let prec = min_prec(self.prec, rhs.prec);
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let n = prec.map_or(full, |p| full.min(p));
        let mut coeffs = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet { coeffs, prec }.trim()
    }
}

impl<K: Scalar> FunctionRing for Jet<K> {
    fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * K::from_rat(&Rat::from_integer((k as i64).into())))
            .collect();
        Jet { coeffs, prec: self.prec.map(|p| p.saturating_sub(1)) }.trim()
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(K::from_rat(r))
    }
}
