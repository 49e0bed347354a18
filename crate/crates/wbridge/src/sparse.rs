//! Sparse multivariate Laurent polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use gaudin_core::Rat;
use num_traits::{One, Signed, Zero};

/// A product of variables with nonzero integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<V: Ord>(BTreeMap<V, i32>);

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: V, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(v, e);
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<V, i32> {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let slot = out.entry(v.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.remove(v);
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }
}

/// `Σ c_m · m` over monomials `m`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<V: Ord> {
    terms: BTreeMap<Monomial<V>, Rat>,
}

impl<V: Ord + Clone> SparsePoly<V> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::term(Monomial::var(v, 1), Rat::one())
    }

    pub fn term(m: Monomial<V>, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial<V>, Rat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial<V>, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.mul(m), x * c);
        }
        out
    }

    /// Integer power; negative powers exist only for single terms.
    pub fn pow(&self, k: i32) -> Option<Self> {
        if k < 0 {
            let (m, c) = self.as_monomial()?;
            let inv = Rat::one() / c;
            let mut acc = Rat::one();
            for _ in 0..-k {
                acc *= &inv;
            }
            return Some(Self::term(m.pow(k), acc));
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Some(acc)
    }

    /// `∂/∂v`.
    pub fn partial(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(&e) = m.0.get(v) {
                out.add_term(m.mul(&Monomial::var(v.clone(), -1)), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Replaces every variable by a polynomial; negative exponents need single-term images.
    pub fn substitute<W: Ord + Clone>(&self, f: impl Fn(&V) -> SparsePoly<W>) -> Option<SparsePoly<W>> {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(c.clone());
            for (v, e) in &m.0 {
                t = &t * &f(v).pow(*e)?;
            }
            out = &out + &t;
        }
        Some(out)
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial<V>) -> bool) -> Self {
        SparsePoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl<'a, V: Ord + Clone> Add<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn add(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::one());
        out
    }
}

impl<'a, V: Ord + Clone> Sub<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn sub(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl<'a, V: Ord + Clone> Mul<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn mul(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let mut out = SparsePoly::zero();
        for (m, c) in &rhs.terms {
            for (k, x) in &self.terms {
                out.add_term(k.mul(m), x * c);
            }
        }
        out
    }
}

impl<V: Ord + Clone> Neg for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        self.scale(&-Rat::one())
    }
}

macro_rules! owned_op {
    ($tr:ident, $f:ident) => {
        impl<V: Ord + Clone> $tr for SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $f(self, rhs: SparsePoly<V>) -> SparsePoly<V> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl<V: Ord + Clone> Neg for SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        -&self
    }
}

impl<V: Ord + Clone> Zero for SparsePoly<V> {
    fn zero() -> Self {
        SparsePoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<V: Ord + Clone> One for SparsePoly<V> {
    fn one() -> Self {
        SparsePoly::one()
    }
}

impl<V: Ord + fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Debug for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
