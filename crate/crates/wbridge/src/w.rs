//! Polynomials in `μ_i^(r)` (identified with `E_ii[−r−1] = μ_i^(r)/r!`, or `F_ii[…]`), the
//! `gr` map, the W-algebra screenings `V_i`, and `τ`-images of the Hamiltonian families.

use std::collections::BTreeMap;
use std::fmt;

use gaudin_core::diffop::{FunctionRing, ScalarDiffOp};
use gaudin_core::eigen::eigenvalue_from;
use gaudin_core::{int, Family, OperatorKind, Rat};
use num_traits::One;

use crate::cartan::CartanType;
use crate::lambda::{CharacterRing, LambdaElement};
use crate::sparse::{Monomial, SparsePoly};
use crate::{Result, WError};

/// `μ_index^(r)`, zero-based index, degree `−r−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuVar {
    pub index: usize,
    pub r: usize,
}

impl fmt::Display for MuVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu{}^({})", self.index + 1, self.r)
    }
}

pub type WPolynomial = SparsePoly<MuVar>;

/// Polynomials in `μ` and `τ`, normal ordered with `τ` on the right; `[τ, μ^(r)] = μ^(r+1)`.
pub type WDiffElement = ScalarDiffOp<WPolynomial>;

impl FunctionRing for WPolynomial {
    fn derivative(&self) -> Self {
        let mut out = WPolynomial::zero();
        for v in self.variables() {
            let shifted = mu(v.index, v.r + 1);
            out = &out + &(&self.partial(&v) * &shifted);
        }
        out
    }

    fn from_rat(r: &Rat) -> Self {
        WPolynomial::constant(r.clone())
    }
}

pub fn mu(index: usize, r: usize) -> WPolynomial {
    WPolynomial::var(MuVar { index, r })
}

fn factorial(k: usize) -> Rat {
    (1..=k).fold(Rat::one(), |acc, j| acc * int(j as i64))
}

/// `X_ii[−m] = μ_i^(m−1)/(m−1)!` for `m ≥ 1`.
pub fn current_var(index: usize, m: usize) -> WPolynomial {
    mu(index, m - 1).scale(&(Rat::one() / factorial(m - 1)))
}

/// `−deg`: a monomial in `μ^(r)` has weight `Σ e (r + 1)`.
pub fn weight(m: &Monomial<MuVar>) -> i64 {
    m.exponents().iter().map(|(v, e)| i64::from(*e) * (v.r as i64 + 1)).sum()
}

/// Largest weight that `gr` examines before giving up.
pub const GR_CAP: usize = 16;

fn truncate(p: &WPolynomial, w: i64) -> WPolynomial {
    p.filter(|m| weight(m) <= w)
}

fn mul_trunc(a: &WPolynomial, b: &WPolynomial, w: i64) -> WPolynomial {
    let mut out = WPolynomial::zero();
    for (m, c) in b.terms() {
        let wm = weight(m);
        for (k, x) in a.terms() {
            if weight(k) + wm <= w {
                out.add_term(k.mul(m), x * c);
            }
        }
    }
    out
}

fn gen_binomial(e: i32, k: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc = acc * int(i64::from(e) - j as i64) / int(j as i64 + 1);
    }
    acc
}

/// `(1 + μ_j(a))^e` with `μ_j(a) = Σ_r μ_j^(r) a^r / r!`, up to weight `w`.
fn symbol_series(index: usize, a: &Rat, e: i32, w: i64) -> WPolynomial {
    let mut x = WPolynomial::zero();
    let mut apow = Rat::one();
    for r in 0..w.max(0) as usize {
        x = &x + &mu(index, r).scale(&(&apow / factorial(r)));
        apow *= a;
    }
    let mut out = WPolynomial::one();
    let mut xk = WPolynomial::one();
    for k in 1..=w.max(0) as usize {
        xk = mul_trunc(&xk, &x, w);
        if xk.is_zero() {
            break;
        }
        out.add_scaled(&xk, &gen_binomial(e, k));
    }
    out
}

/// Image of `A` in `ℚ[[μ]]`, truncated at weight `w`.
pub fn expand_truncated(x: &LambdaElement, w: i64) -> WPolynomial {
    let mut out = WPolynomial::zero();
    for (m, c) in x.terms() {
        let mut t = WPolynomial::constant(c.clone());
        for (s, e) in m.exponents() {
            t = mul_trunc(&t, &symbol_series(s.index, &s.shift, *e, w), w);
        }
        out = &out + &t;
    }
    truncate(&out, w)
}

/// The homogeneous component of maximal degree (minimal weight) of the image of `A`.
pub fn gr_map(ring: &CharacterRing, x: &LambdaElement) -> Result<WPolynomial> {
    let x = ring.eliminate(x);
    if x.is_zero() {
        return Ok(WPolynomial::zero());
    }
    let mut checked = -1i64;
    let mut w = 2i64;
    loop {
        let w_eff = w.min(GR_CAP as i64);
        let full = expand_truncated(&x, w_eff);
        let mut by_weight: BTreeMap<i64, WPolynomial> = BTreeMap::new();
        for (m, c) in full.terms() {
            by_weight.entry(weight(m)).or_insert_with(WPolynomial::zero).add_term(m.clone(), c.clone());
        }
        if let Some((_, p)) = by_weight.into_iter().find(|(k, p)| *k > checked && !p.is_zero()) {
            return Ok(p);
        }
        checked = w_eff;
        if w_eff >= GR_CAP as i64 {
            return Err(WError::NotSaturated { cap: GR_CAP });
        }
        w *= 2;
    }
}

/// The derivative slots of `V_i`: `(index, sign)` pairs.
fn v_slots(ty: &CartanType, color: usize) -> Result<Vec<(usize, i64)>> {
    ty.check_color(color)?;
    let n = ty.n;
    if ty.family == Family::A || color + 1 < n {
        return Ok(vec![(color, 1), (color + 1, -1)]);
    }
    match ty.family {
        Family::B | Family::C => Ok(vec![(n - 1, 1)]),
        _ if n >= 2 => Ok(vec![(n - 2, 1), (n - 1, 1)]),
        _ => Err(WError::Unsupported("V_n for o_2".into())),
    }
}

/// `c_m` in `Σ_r V_{i[r]} z^r = exp Σ_m c_m z^m / m`.
fn v_generator(ty: &CartanType, color: usize, m: usize) -> Result<WPolynomial> {
    let n = ty.n;
    let x = |i: usize| current_var(i, m);
    if ty.family == Family::A || color + 1 < n {
        return Ok(&x(color) - &x(color + 1));
    }
    Ok(match ty.family {
        Family::B => x(n - 1),
        Family::C => x(n - 1).scale(&int(2)),
        _ => &x(n - 2) + &x(n - 1),
    })
}

/// `V_{i[0]}, …, V_{i[r_max]}`.
pub fn v_coefficients(ty: &CartanType, color: usize, r_max: usize) -> Result<Vec<WPolynomial>> {
    v_slots(ty, color)?;
    let c: Vec<WPolynomial> = (1..=r_max).map(|m| v_generator(ty, color, m)).collect::<Result<_>>()?;
    // e_k = (1/k) Σ_{j=1..k} c_j e_{k−j}
    let mut e = vec![WPolynomial::one()];
    for k in 1..=r_max {
        let mut acc = WPolynomial::zero();
        for j in 1..=k {
            acc = &acc + &(&c[j - 1] * &e[k - j]);
        }
        e.push(acc.scale(&(Rat::one() / int(k as i64))));
    }
    Ok(e)
}

/// `V_i(P) = Σ_r V_{i[r]} Σ_slots ± ∂P/∂X[−r−1]`, with `∂/∂X[−r−1] = r! ∂/∂μ^(r)`.
pub fn screening_v(ty: &CartanType, color: usize, p: &WPolynomial) -> Result<WPolynomial> {
    let slots = v_slots(ty, color)?;
    let vars = p.variables();
    for v in &vars {
        if v.index >= ty.vars() {
            return Err(WError::InvalidIndex { index: v.index, bound: ty.vars() });
        }
    }
    let r_max = vars.iter().map(|v| v.r).max().unwrap_or(0);
    let coeffs = v_coefficients(ty, color, r_max)?;
    let mut out = WPolynomial::zero();
    for (r, vr) in coeffs.iter().enumerate() {
        let mut d = WPolynomial::zero();
        for (index, sign) in &slots {
            d.add_scaled(&p.partial(&MuVar { index: *index, r }), &(factorial(r) * int(*sign)));
        }
        if !d.is_zero() {
            out = &out + &(vr * &d);
        }
    }
    Ok(out)
}

pub fn is_w_element(ty: &CartanType, p: &WPolynomial) -> Result<bool> {
    for color in 0..ty.screens() {
        if !screening_v(ty, color, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The eigenvalue formula of `kind` with `∂ ↦ τ` and `ℰ_ii, ℱ_ii ↦ μ_i^(0)`.
pub fn hc_image_builder(ty: &CartanType, kind: OperatorKind) -> Result<WDiffElement> {
    if kind == OperatorKind::Cdet {
        return Err(WError::Unsupported("no τ-image is defined for cdet".into()));
    }
    let fs: Vec<WPolynomial> = (0..ty.vars()).map(|i| mu(i, 0)).collect();
    Ok(eigenvalue_from(ty.family, kind, &fs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_commutes_through_mu() {
        let t = WDiffElement::d();
        let m = WDiffElement::function(mu(0, 0));
        let prod = &t * &m;
        assert_eq!(prod.coefficient(0), mu(0, 1));
        assert_eq!(prod.coefficient(1), mu(0, 0));
    }

    #[test]
    fn binomials() {
        assert_eq!(gen_binomial(-1, 3), int(-1));
        assert_eq!(gen_binomial(2, 3), int(0));
        assert_eq!(gen_binomial(-2, 2), int(3));
    }
}
