//! The additive character ring `L` and the screening operators `S_i`.
//!
//! Symbols are `λ_j(a)` with a zero-based index `j < N` and a rational shift `a`. For types
//! B, C and D the symbols with `j ≥ n` are eliminated through the defining relations, so a
//! canonical element is a Laurent polynomial in `λ_0..λ_{n−1}` only.
//!
//! Text forms use one-based labels: `l1(1/2)` is `λ_0(1/2)`.

use std::collections::BTreeMap;
use std::fmt;

use gaudin_core::{parse_rat, rat, Family, Rat};
use num_traits::{One, Zero};

use crate::cartan::CartanType;
use crate::sparse::SparsePoly;
use crate::{Result, WError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaSym {
    pub index: usize,
    pub shift: Rat,
}

impl fmt::Display for LambdaSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}({})", self.index + 1, self.shift)
    }
}

pub type LambdaElement = SparsePoly<LambdaSym>;

/// `Σ c · σ_i(a)` with every argument reduced to its orbit representative in `[0, step)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SigmaElement {
    terms: BTreeMap<(usize, Rat), LambdaElement>,
}

impl SigmaElement {
    pub fn zero() -> Self {
        SigmaElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients keyed by `(color, representative)`.
    pub fn terms(&self) -> &BTreeMap<(usize, Rat), LambdaElement> {
        &self.terms
    }

    fn add(&mut self, key: (usize, Rat), c: &LambdaElement) {
        let slot = self.terms.entry(key.clone()).or_insert_with(SparsePoly::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Display for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, a), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*s{}({a})", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The ring `L` for one Lie type, with elimination and the screening operators.
#[derive(Clone, Debug)]
pub struct CharacterRing {
    ty: CartanType,
    kappa: Rat,
}

impl CharacterRing {
    pub fn new(ty: CartanType) -> Result<Self> {
        if ty.family == Family::D && ty.n < 2 {
            return Err(WError::InvalidType("the character ring of type D needs n ≥ 2".into()));
        }
        Ok(CharacterRing { kappa: ty.kappa(), ty })
    }

    pub fn cartan(&self) -> CartanType {
        self.ty
    }

    /// The free symbol `λ_j(a)`, with no elimination.
    pub fn raw_lambda(&self, j: usize, a: Rat) -> Result<LambdaElement> {
        let bound = self.ty.big_n();
        if j >= bound {
            return Err(WError::InvalidIndex { index: j, bound });
        }
        Ok(SparsePoly::var(LambdaSym { index: j, shift: a }))
    }

    /// `λ_j(a)` in canonical form.
    pub fn lambda(&self, j: usize, a: Rat) -> Result<LambdaElement> {
        Ok(self.eliminate(&self.raw_lambda(j, a)?))
    }

    fn sym(&self, p: usize, a: Rat) -> LambdaElement {
        // one-based `p`, as in the defining formulas
        SparsePoly::var(LambdaSym { index: p - 1, shift: a })
    }

    /// Closed form of a symbol as a Laurent monomial in `λ_1..λ_n` (one-based `p`).
    fn closed_form(&self, p: usize, a: &Rat) -> LambdaElement {
        let n = self.ty.n;
        if self.ty.family == Family::A || p <= n {
            return self.sym(p, a.clone());
        }
        let big_n = self.ty.big_n();
        let mut out = LambdaElement::one();
        if self.ty.family == Family::B && p == n + 1 {
            for i in 1..=n {
                let num = self.sym(i, a + rat((n - i) as i64, 1));
                let den = self.sym(i, a + rat((n - i) as i64, 1) + rat(1, 2));
                out = &(&out * &num) * &den.pow(-1).expect("monomial");
            }
            return out;
        }
        // p = k′ = N − k + 1
        let k = big_n + 1 - p;
        let kap = &self.kappa;
        for i in 1..k {
            out = &out * &self.sym(i, a + kap - rat(i as i64, 1));
        }
        for i in 1..=k {
            let den = self.sym(i, a + kap - rat(i as i64, 1) + rat(1, 1));
            out = &out * &den.pow(-1).expect("monomial");
        }
        out
    }

    /// Rewrites every primed or middle symbol through its closed form.
    pub fn eliminate(&self, x: &LambdaElement) -> LambdaElement {
        x.substitute(|s| self.closed_form(s.index + 1, &s.shift)).expect("closed forms are monomials")
    }

    /// `S̃_i(λ_p(a)) = λ_p(a) · Σ c σ_i(a + δ)`: the list of `(c, δ)` (one-based `i`, `p`).
    fn table(&self, i: usize, p: usize) -> Vec<(Rat, Rat)> {
        let n = self.ty.n;
        let big_n = self.ty.big_n();
        let one = || rat(1, 1);
        let zero = Rat::zero;
        if self.ty.family == Family::A || i < n {
            let mut out = Vec::new();
            if p == i {
                out.push((one(), zero()));
            }
            if p == i + 1 {
                out.push((-one(), one()));
            }
            if self.ty.family != Family::A {
                let kap = &self.kappa;
                if p == big_n + 1 - i {
                    out.push((-one(), kap - rat(i as i64, 1) + one()));
                }
                if p == big_n - i {
                    out.push((one(), kap - rat(i as i64, 1)));
                }
            }
            return out;
        }
        let half = || rat(1, 2);
        match self.ty.family {
            Family::B if p == n => vec![(one(), zero()), (one(), -half())],
            Family::B if p == n + 1 => vec![(one(), -half()), (-one(), half())],
            Family::B if p == n + 2 => vec![(-one(), zero()), (-one(), half())],
            Family::C if p == n => vec![(one(), zero())],
            Family::C if p == n + 1 => vec![(-one(), rat(2, 1))],
            Family::D if p == n - 1 || p == n => vec![(one(), zero())],
            Family::D if p == n + 1 || p == n + 2 => vec![(-one(), one())],
            _ => Vec::new(),
        }
    }

    /// `σ_i(a + step) / σ_i(a)` from the relation `L(a) σ_i(a) = R(a) σ_i(a + step)`.
    fn sigma_ratio(&self, color: usize, a: &Rat) -> LambdaElement {
        let i = color + 1;
        let n = self.ty.n;
        let (l, r) = if self.ty.family == Family::A || i < n {
            (i, i + 1)
        } else if self.ty.family == Family::D {
            (n - 1, n + 1)
        } else {
            (n, n + 1)
        };
        let num = self.closed_form(l, a);
        let den = self.closed_form(r, a);
        &num * &den.pow(-1).expect("monomial")
    }

    /// `σ_i(b) = factor · σ_i(rep)`.
    fn reduce_sigma(&self, color: usize, b: &Rat) -> (Rat, LambdaElement) {
        let step = self.ty.sigma_step(color);
        let k = (b / &step).floor();
        let rep = b - &k * &step;
        let k = i64::try_from(k.to_integer()).expect("shift fits in i64");
        let mut factor = LambdaElement::one();
        if k > 0 {
            for t in 0..k {
                factor = &factor * &self.sigma_ratio(color, &(&rep + &step * rat(t, 1)));
            }
        } else {
            for t in 1..=-k {
                let r = self.sigma_ratio(color, &(&rep - &step * rat(t, 1)));
                factor = &factor * &r.pow(-1).expect("monomial");
            }
        }
        (rep, factor)
    }

    /// `S_i(A)` reduced to canonical σ-form. Works on raw elements as well, using the full
    /// generator tables including primed and middle symbols.
    pub fn screening_s(&self, color: usize, x: &LambdaElement) -> Result<SigmaElement> {
        self.ty.check_color(color)?;
        let i = color + 1;
        let mut out = SigmaElement::zero();
        for (m, c) in x.terms() {
            let base = self.eliminate(&SparsePoly::term(m.clone(), c.clone()));
            for (s, e) in m.exponents() {
                for (coef, delta) in self.table(i, s.index + 1) {
                    let (rep, factor) = self.reduce_sigma(color, &(&s.shift + &delta));
                    let scale = coef * Rat::from_integer((*e).into());
                    out.add((color, rep), &(&base * &factor).scale(&scale));
                }
            }
        }
        Ok(out)
    }

    /// True iff every screening operator annihilates `x`.
    pub fn is_character(&self, x: &LambdaElement) -> Result<bool> {
        for color in 0..self.ty.screens() {
            if !self.screening_s(color, x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Σ_{j<N} λ_j(a)`, canonical.
    pub fn lambda_sum(&self, a: &Rat) -> LambdaElement {
        let mut out = LambdaElement::zero();
        for j in 0..self.ty.big_n() {
            out = &out + &self.lambda(j, a.clone()).expect("index in range");
        }
        out
    }

    /// Both sides of the relation `λ_i(a+κ−i) λ_{i′}(a) = λ_{i+1}(a+κ−i) λ_{(i+1)′}(a)` as raw
    /// elements, for one-based `i` in `0..n` (`0..=n` for type B), with `λ_0 = λ_{0′} = 1`.
    pub fn defining_relation(&self, i: usize, a: &Rat) -> Result<(LambdaElement, LambdaElement)> {
        let top = if self.ty.family == Family::B { self.ty.n } else { self.ty.n - 1 };
        if self.ty.family == Family::A || i > top {
            return Err(WError::Unsupported(format!("no defining relation {i} for {}", self.ty)));
        }
        let big_n = self.ty.big_n();
        let b = a + &self.kappa - rat(i as i64, 1);
        let raw = |p: usize, s: Rat| if p == 0 { LambdaElement::one() } else { self.sym(p, s) };
        let prime = |p: usize| if p == 0 { 0 } else { big_n + 1 - p };
        let lhs = &raw(i, b.clone()) * &raw(prime(i), a.clone());
        let rhs = &raw(i + 1, b) * &raw(prime(i + 1), a.clone());
        Ok((lhs, rhs))
    }
}

/// Parses sums of products such as `l1(0) + 2*l2(1/2)^-1*l3(0) - 3/4`. Labels are one-based.
pub fn parse_lambda(text: &str) -> Result<LambdaElement> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> WError {
        WError::Parse { pos: self.pos, reason: reason.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LambdaElement> {
        let mut sign = Rat::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        let mut acc = self.product()?.scale(&sign);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<LambdaElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<LambdaElement> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                self.power(inner)
            }
            Some(b'l') => {
                self.pos += 1;
                let label = self.number()?;
                let index: usize = label.parse().map_err(|_| self.err("bad symbol label"))?;
                if index == 0 {
                    return Err(self.err("symbol labels start at 1"));
                }
                if self.peek() != Some(b'(') {
                    return Err(self.err("expected '('"));
                }
                self.pos += 1;
                let shift = parse_rat(&self.number()?).ok_or_else(|| self.err("bad rational"))?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                self.power(SparsePoly::var(LambdaSym { index: index - 1, shift }))
            }
            Some(c) if c.is_ascii_digit() => {
                let c = parse_rat(&self.number()?).ok_or_else(|| self.err("bad rational"))?;
                Ok(SparsePoly::constant(c))
            }
            _ => Err(self.err("expected a symbol, number or '('")),
        }
    }

    fn power(&mut self, base: LambdaElement) -> Result<LambdaElement> {
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e: i32 = self.number()?.parse().map_err(|_| self.err("bad exponent"))?;
        base.pow(e).ok_or_else(|| self.err("negative powers need a single term"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let x = parse_lambda("l1(0) + 2*l2(1/2)^-1*l3(0) - 3/4").unwrap();
        assert_eq!(parse_lambda(&x.to_string()).unwrap(), x);
        assert!(parse_lambda("l0(1)").is_err());
        assert!(parse_lambda("(l1(0)+l2(0))^-1").is_err());
    }

    #[test]
    fn sigma_representatives() {
        let ring = CharacterRing::new(CartanType::c(1).unwrap()).unwrap();
        let (rep, _) = ring.reduce_sigma(0, &rat(-7, 2));
        assert_eq!(rep, rat(1, 2));
        let ring = CharacterRing::new(CartanType::b(1).unwrap()).unwrap();
        let (rep, _) = ring.reduce_sigma(0, &rat(5, 3));
        assert_eq!(rep, rat(1, 6));
    }
}
