//! Dense univariate polynomials in `u` over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{fmt_rat, Rat};

/// Coefficients are stored lowest degree first; trailing zeros are never kept.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `u`.
    pub fn u() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// The monic linear polynomial `u - root`.
    pub fn linear_root(root: &Rat) -> Self {
        Self::new(vec![-root.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> Rat {
        self.coeffs.first().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            if y.is_constant() {
                return Poly::one();
            }
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = fmt_rat(c);
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if *c == -Rat::one() {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        let mut s = parts.join(" + ");
        s = s.replace("+ -", "- ");
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("u"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("u"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
