//! Normal-ordered differential operators in `∂ = ∂_u`.
//!
//! Two flavours share the same product rule `∂ ∘ f = f ∂ + f'`:
//!
//! * [`ScalarDiffOp`] has commuting coefficients drawn from any [`FunctionRing`]
//!   (rational functions, Taylor jets, polynomials in W-algebra generators).
//! * [`DiffPolyOperator`] multiplies each rational-function coefficient by a word of
//!   site-indexed Lie algebra generators. Letters in a word are never reordered; they
//!   commute with `u` and with `∂`.
//!
//! Every stored operator is normal ordered: coefficients stand to the left of `∂^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::ratfun::RationalFunction;
use crate::scalar::{int, Rat};

/// A commutative coefficient ring equipped with the derivation `d/du`.
pub trait FunctionRing:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn derivative(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
}

impl FunctionRing for RationalFunction {
    fn derivative(&self) -> Self {
        RationalFunction::derivative(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RationalFunction::constant(r.clone())
    }
}

/// Minimal ring interface shared by the operator kinds that the trace and
/// determinant expanders are generic over.
pub trait OperatorRing: Clone {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    /// The derivation element (`∂_u` or `τ`).
    fn ring_d(&self) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_scale(&self, c: &Rat) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add_assign(&mut self, rhs: &Self) {
        *self = self.ring_add(rhs);
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Rat {
    let mut acc = num_bigint::BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rat::from_integer(acc)
}

/// Differential operator `Σ_k c_k(u) ∂^k` with commuting coefficients.
#[derive(Clone, PartialEq)]
pub struct ScalarDiffOp<C> {
    coeffs: BTreeMap<usize, C>,
}

impl<C: FunctionRing> ScalarDiffOp<C> {
    pub fn zero() -> Self {
        ScalarDiffOp { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::function(C::one())
    }

    /// The bare `∂`.
    pub fn d() -> Self {
        Self::monomial(1, C::one())
    }

    pub fn monomial(order: usize, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(order, c);
        }
        ScalarDiffOp { coeffs }
    }

    pub fn function(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// `∂ + c`.
    pub fn first_order(c: C) -> Self {
        &Self::d() + &Self::function(c)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: usize, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(k, s);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `∂^k`.
    pub fn coefficient(&self, k: usize) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, C> {
        &self.coeffs
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Applies the operator to the constant function `1`: only the `∂^0` part survives.
    pub fn apply_to_one(&self) -> C {
        self.coefficient(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(&C::from_rat(c))
    }

    pub fn map_coeffs<D: FunctionRing>(&self, f: impl Fn(&C) -> D) -> ScalarDiffOp<D> {
        ScalarDiffOp::from_coeffs(self.coeffs.iter().map(|(k, v)| (*k, f(v))))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<'a, C: FunctionRing> Add<&'a ScalarDiffOp<C>> for &'a ScalarDiffOp<C> {
    type Output = ScalarDiffOp<C>;
    fn add(self, rhs: &ScalarDiffOp<C>) -> ScalarDiffOp<C> {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a, C: FunctionRing> Sub<&'a ScalarDiffOp<C>> for &'a ScalarDiffOp<C> {
    type Output = ScalarDiffOp<C>;
    fn sub(self, rhs: &ScalarDiffOp<C>) -> ScalarDiffOp<C> {
        self + &(-rhs)
    }
}

impl<C: FunctionRing> Neg for &ScalarDiffOp<C> {
    type Output = ScalarDiffOp<C>;
    fn neg(self) -> ScalarDiffOp<C> {
        ScalarDiffOp { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl<'a, C: FunctionRing> Mul<&'a ScalarDiffOp<C>> for &'a ScalarDiffOp<C> {
    type Output = ScalarDiffOp<C>;
    /// `(f ∂^a)(g ∂^b) = Σ_k C(a,k) f g^{(k)} ∂^{a-k+b}`.
    fn mul(self, rhs: &ScalarDiffOp<C>) -> ScalarDiffOp<C> {
        let mut out = ScalarDiffOp::zero();
        let max_a = self.order().unwrap_or(0);
        for (b, g) in &rhs.coeffs {
            let mut derivs = Vec::with_capacity(max_a + 1);
            derivs.push(g.clone());
            for k in 1..=max_a {
                let next = derivs[k - 1].derivative();
                derivs.push(next);
            }
            for (a, f) in &self.coeffs {
                for (k, gk) in derivs.iter().enumerate().take(a + 1) {
                    if gk.is_zero() {
                        continue;
                    }
                    let c = f.clone() * gk.clone();
                    let c = if k == 0 { c } else { c * C::from_rat(&binomial(*a, k)) };
                    out.add_term(a - k + b, c);
                }
            }
        }
        out
    }
}

impl<C: FunctionRing> OperatorRing for ScalarDiffOp<C> {
    fn ring_zero(&self) -> Self {
        Self::zero()
    }
    fn ring_one(&self) -> Self {
        Self::one()
    }
    fn ring_d(&self) -> Self {
        Self::d()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale_rat(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<C: FunctionRing + fmt::Display> fmt::Display for ScalarDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})∂"),
                _ => format!("({c})∂^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: fmt::Debug> fmt::Debug for ScalarDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

/// A Lie algebra basis element acting on one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    /// Index into the basis of the Lie algebra.
    pub basis: usize,
    /// Zero-based tensor factor.
    pub site: usize,
}

/// Ordered product of letters; the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorWord(pub Vec<Letter>);

impl OperatorWord {
    pub fn empty() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &OperatorWord) -> OperatorWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        OperatorWord(v)
    }
}

/// One factor of an unordered product, for [`DiffPolyOperator::from_product`].
#[derive(Clone, Debug)]
pub enum RawFactor {
    Coeff(RationalFunction),
    Letter(Letter),
    D,
}

/// `Σ c_{w,k}(u) · w · ∂^k` over words `w` in site-indexed generators.
#[derive(Clone, PartialEq)]
pub struct DiffPolyOperator {
    sites: usize,
    terms: BTreeMap<(OperatorWord, usize), RationalFunction>,
}

impl DiffPolyOperator {
    pub fn zero(sites: usize) -> Self {
        DiffPolyOperator { sites, terms: BTreeMap::new() }
    }

    pub fn one(sites: usize) -> Self {
        Self::term(sites, OperatorWord::empty(), 0, RationalFunction::one())
    }

    pub fn d(sites: usize) -> Self {
        Self::term(sites, OperatorWord::empty(), 1, RationalFunction::one())
    }

    pub fn function(sites: usize, f: RationalFunction) -> Self {
        Self::term(sites, OperatorWord::empty(), 0, f)
    }

    pub fn constant(sites: usize, c: Rat) -> Self {
        Self::function(sites, RationalFunction::constant(c))
    }

    pub fn letter(sites: usize, letter: Letter) -> Self {
        Self::term(sites, OperatorWord(vec![letter]), 0, RationalFunction::one())
    }

    pub fn term(sites: usize, word: OperatorWord, order: usize, c: RationalFunction) -> Self {
        let mut op = Self::zero(sites);
        op.add_term(word, order, c);
        op
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn terms(&self) -> &BTreeMap<(OperatorWord, usize), RationalFunction> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    pub fn add_term(&mut self, word: OperatorWord, order: usize, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let key = (word, order);
        match self.terms.remove(&key) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_sites(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.sites != rhs.sites {
            return Err(AlgebraError::SiteMismatch { left: self.sites, right: rhs.sites });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_sites(rhs)?;
        let mut out = self.clone();
        for ((w, k), c) in &rhs.terms {
            out.add_term(w.clone(), *k, c.clone());
        }
        Ok(out)
    }

    /// Normal-ordered product `self ∘ rhs`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_sites(rhs)?;
        let mut out = Self::zero(self.sites);
        let max_a = self.order().unwrap_or(0);
        for ((w2, b), g) in &rhs.terms {
            let mut derivs = Vec::with_capacity(max_a + 1);
            derivs.push(g.clone());
            for k in 1..=max_a {
                let next = derivs[k - 1].derivative();
                derivs.push(next);
            }
            for ((w1, a), f) in &self.terms {
                let word = w1.concat(w2);
                for (k, gk) in derivs.iter().enumerate().take(a + 1) {
                    if gk.is_zero() {
                        continue;
                    }
                    let mut c = f * gk;
                    if k > 0 {
                        c = c.scale(&binomial(*a, k));
                    }
                    out.add_term(word.clone(), a - k + b, c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.sites);
        for ((w, k), f) in &self.terms {
            out.add_term(w.clone(), *k, f.scale(c));
        }
        out
    }

    pub fn scale_fn(&self, g: &RationalFunction) -> Self {
        let mut out = Self::zero(self.sites);
        for ((w, k), f) in &self.terms {
            out.add_term(w.clone(), *k, f * g);
        }
        out
    }

    /// The `∂`-free operator multiplying `∂^k`.
    pub fn coefficient(&self, k: usize) -> Self {
        let mut out = Self::zero(self.sites);
        for ((w, j), f) in &self.terms {
            if *j == k {
                out.add_term(w.clone(), 0, f.clone());
            }
        }
        out
    }

    /// Applies `letter ↦ ±letter` according to `sign(letter)` (used to flip currents).
    pub fn map_letters(&self, f: impl Fn(&Letter) -> Vec<(Letter, Rat)>) -> Self {
        let mut out = Self::zero(self.sites);
        for ((w, k), c) in &self.terms {
            let mut partial: Vec<(Vec<Letter>, Rat)> = vec![(Vec::new(), Rat::one())];
            for l in &w.0 {
                let images = f(l);
                let mut next = Vec::new();
                for (prefix, pc) in &partial {
                    for (img, ic) in &images {
                        let mut v = prefix.clone();
                        v.push(*img);
                        next.push((v, pc * ic));
                    }
                }
                partial = next;
            }
            for (v, pc) in partial {
                out.add_term(OperatorWord(v), *k, c.scale(&pc));
            }
        }
        out
    }

    /// Normal-orders an arbitrary product of coefficient, letter and `∂` factors.
    pub fn from_product(sites: usize, factors: &[RawFactor]) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(sites);
        for f in factors {
            let op = match f {
                RawFactor::Coeff(c) => Self::function(sites, c.clone()),
                RawFactor::Letter(l) => Self::letter(sites, *l),
                RawFactor::D => Self::d(sites),
            };
            acc = acc.try_mul(&op)?;
        }
        Ok(acc)
    }

    /// Each stored term written back as a raw product `c · w · ∂^k`.
    pub fn to_raw_terms(&self) -> Vec<Vec<RawFactor>> {
        self.terms
            .iter()
            .map(|((w, k), c)| {
                let mut v = vec![RawFactor::Coeff(c.clone())];
                v.extend(w.0.iter().map(|l| RawFactor::Letter(*l)));
                v.extend(std::iter::repeat_n(RawFactor::D, *k));
                v
            })
            .collect()
    }
}

impl<'a> Add<&'a DiffPolyOperator> for &'a DiffPolyOperator {
    type Output = DiffPolyOperator;
    fn add(self, rhs: &DiffPolyOperator) -> DiffPolyOperator {
        self.try_add(rhs).expect("operator site counts differ")
    }
}

impl<'a> Sub<&'a DiffPolyOperator> for &'a DiffPolyOperator {
    type Output = DiffPolyOperator;
    fn sub(self, rhs: &DiffPolyOperator) -> DiffPolyOperator {
        self.try_add(&-rhs).expect("operator site counts differ")
    }
}

impl Neg for &DiffPolyOperator {
    type Output = DiffPolyOperator;
    fn neg(self) -> DiffPolyOperator {
        self.scale(&int(-1))
    }
}

impl<'a> Mul<&'a DiffPolyOperator> for &'a DiffPolyOperator {
    type Output = DiffPolyOperator;
    fn mul(self, rhs: &DiffPolyOperator) -> DiffPolyOperator {
        self.try_mul(rhs).expect("operator site counts differ")
    }
}

impl OperatorRing for DiffPolyOperator {
    fn ring_zero(&self) -> Self {
        Self::zero(self.sites)
    }
    fn ring_one(&self) -> Self {
        Self::one(self.sites)
    }
    fn ring_d(&self) -> Self {
        Self::d(self.sites)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.sites, rhs.sites, "operator site counts differ");
        for ((w, k), c) in &rhs.terms {
            self.add_term(w.clone(), *k, c.clone());
        }
    }
}

impl fmt::Debug for DiffPolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, k), c)| {
                let word: Vec<String> =
                    w.0.iter().map(|l| format!("X{}@{}", l.basis, l.site)).collect();
                format!("({c})[{}]∂^{k}", word.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
