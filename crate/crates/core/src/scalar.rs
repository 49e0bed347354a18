//! Coefficient fields: exact rationals and a high-precision binary float.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rat = BigRational;

/// Working precision of [`HpFloat`] in bits (about 77 significant decimal digits).
pub const PRECISION_BITS: usize = 256;

/// A field of coefficients usable in module states and operator sums.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rat(r: &Rat) -> Self;
}

/// Scalars with an absolute value, used for pivoting and residual norms.
pub trait Magnitude {
    fn magnitude(&self) -> f64;
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Magnitude for Rat {
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.125"` into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole = if ip.is_empty() { BigInt::zero() } else { BigInt::from_str(ip).ok()? };
        let frac = BigInt::from_str(fp).ok()?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mut r = Rat::new(whole * &scale + frac, scale);
        if negative {
            r = -r;
        }
        return Some(r);
    }
    BigInt::from_str(s).ok().map(Rat::from_integer)
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

type Fb = FBig<HalfEven, 2>;

/// Binary floating-point number carried at [`PRECISION_BITS`] bits.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct HpFloat(Fb);

fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    match sign {
        num_bigint::Sign::Minus => IBig::from_parts(Sign::Negative, mag),
        _ => IBig::from(mag),
    }
}

impl HpFloat {
    fn wrap(x: Fb) -> Self {
        HpFloat(x.with_precision(PRECISION_BITS).value())
    }

    pub fn from_f64(x: f64) -> Self {
        Self::wrap(Fb::try_from(x).expect("finite f64"))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn abs(&self) -> Self {
        if self.0 < Fb::ZERO {
            HpFloat(-self.0.clone())
        } else {
            self.clone()
        }
    }

    pub fn sqrt(&self) -> Self {
        HpFloat(self.0.sqrt())
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let dec = self.0.clone().with_base_and_precision::<10>(digits).value();
        let s = format!("{}", dec);
        s
    }

    /// Parses a decimal or rational literal exactly, then rounds.
    pub fn parse(s: &str) -> Option<Self> {
        parse_rat(s).map(|r| Self::from_rat(&r))
    }
}

impl fmt::Debug for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(60))
    }
}

impl Zero for HpFloat {
    fn zero() -> Self {
        Self::wrap(Fb::ZERO)
    }
    fn is_zero(&self) -> bool {
        *self.0.repr().significand() == IBig::ZERO
    }
}

impl One for HpFloat {
    fn one() -> Self {
        Self::wrap(Fb::ONE)
    }
}

impl Neg for HpFloat {
    type Output = Self;
    fn neg(self) -> Self {
        HpFloat(-self.0)
    }
}

macro_rules! hp_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: HpFloat) -> HpFloat {
                HpFloat(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a HpFloat> for &'a HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: &'a HpFloat) -> HpFloat {
                HpFloat(&self.0 $op &rhs.0)
            }
        }
    };
}

hp_binop!(Add, add, +);
hp_binop!(Sub, sub, -);
hp_binop!(Mul, mul, *);
hp_binop!(Div, div, /);

impl Scalar for HpFloat {
    fn from_rat(r: &Rat) -> Self {
        let n = Self::wrap(Fb::from(to_ibig(r.numer())));
        let d = Self::wrap(Fb::from(to_ibig(r.denom())));
        n / d
    }
}

impl Magnitude for HpFloat {
    fn magnitude(&self) -> f64 {
        self.abs().0.to_f64().value()
    }
}
