//! Rational functions of `u` in reduced canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::scalar::{fmt_rat, Rat, Scalar};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = d.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn constant(c: Rat) -> Self {
        RationalFunction { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `1 / (u - z)`.
    pub fn simple_pole(z: &Rat) -> Self {
        RationalFunction { num: Poly::one(), den: Poly::linear_root(z) }
    }

    /// `(u - z)^power` for any integer power.
    pub fn linear_power(z: &Rat, power: i64) -> Self {
        let base = Poly::linear_root(z).pow(power.unsigned_abs() as u32);
        if power >= 0 {
            Self::from_poly(base)
        } else {
            RationalFunction { num: Poly::one(), den: base }
        }
    }

    pub fn u() -> Self {
        Self::from_poly(Poly::u())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn derivative(&self) -> Self {
        if self.num.is_constant() && self.den.is_constant() {
            return Self::zero();
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Value at `u = x`; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Degree bound `max(deg num, deg den)`.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::constant(Rat::one())
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let (a_cof, b_cof) = if g.is_constant() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (rhs.den.div_rem(&g).0, self.den.div_rem(&g).0)
        };
        let num = &(&self.num * &a_cof) + &(&rhs.num * &b_cof);
        RationalFunction::reduce(num, &self.den * &a_cof)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RationalFunction { num: &self.num * &rhs.num, den: Poly::one() };
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// Panics on division by the zero function; use [`RationalFunction::checked_div`] to handle it.
impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        self.checked_div(&rhs).expect("division by the zero rational function")
    }
}

impl Scalar for RationalFunction {
    fn from_rat(r: &Rat) -> Self {
        Self::constant(r.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.is_constant() {
            fmt_rat(&self.num.constant_term())
        } else {
            format!("({})", self.num)
        };
        write!(f, "{}/({})", n, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
