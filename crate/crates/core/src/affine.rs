//! Elements of `U(t⁻¹g[t⁻¹]) ⊗ C[τ]` written as words in `X[r]` (`r < 0`) with `τ`
//! moved to the right, the anti-automorphism `ς`, and the evaluation map `Ψ`
//! into operators on the Gaudin tensor product.
//!
//! Words are kept free; relations of `U(g)` only enter after `Ψ`, when the
//! images act on module states.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::bethe::GaudinInstance;
use crate::diffop::{binomial, DiffPolyOperator, Letter, OperatorRing, OperatorWord};
use crate::error::Result;
use crate::lie::LieAlgebraSpec;
use crate::operators::{
    act_equal, brauer_symmetrizer, chi_of, gamma, omega, pfaffian_with, shifted_matrix, sym_group_projector,
    tilde_matrix, trace_with, ProjectorKind,
};
use crate::ratfun::RationalFunction;
use crate::scalar::{int, Rat};
use crate::verma::TensorState;

/// The loop generator `X[r]` for a basis element `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineLetter {
    pub basis: usize,
    pub r: i64,
}

/// `Σ c · X_1[r_1]⋯X_k[r_k] τ^p`.
#[derive(Clone, PartialEq, Default)]
pub struct AffineOperator {
    terms: BTreeMap<(Vec<AffineLetter>, usize), Rat>,
}

impl AffineOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), 0, Rat::one())
    }

    pub fn tau() -> Self {
        Self::term(Vec::new(), 1, Rat::one())
    }

    pub fn letter(l: AffineLetter) -> Self {
        Self::term(vec![l], 0, Rat::one())
    }

    pub fn term(word: Vec<AffineLetter>, tau: usize, c: Rat) -> Self {
        let mut op = Self::zero();
        op.add_term(word, tau, c);
        op
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<AffineLetter>, usize), Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Vec<AffineLetter>, tau: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (word, tau);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for ((w, k), v) in &self.terms {
            out.terms.insert((w.clone(), *k), v * c);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((w, k), v) in &rhs.terms {
            out.add_term(w.clone(), *k, v.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((w1, k), c1) in &self.terms {
            for ((w2, l), c2) in &rhs.terms {
                // τ^k w2 = Σ_j C(k, j) D^j(w2) τ^{k−j}
                let mut dj: BTreeMap<Vec<AffineLetter>, Rat> = BTreeMap::from([(w2.clone(), Rat::one())]);
                for j in 0..=*k {
                    let b = binomial(*k, j);
                    for (w, c) in &dj {
                        let mut word = w1.clone();
                        word.extend_from_slice(w);
                        out.add_term(word, k - j + l, c1 * c2 * &b * c);
                    }
                    if j < *k {
                        dj = derive(&dj);
                    }
                }
            }
        }
        out
    }

    /// `ς`: reverse each word and negate its letters; `τ` is fixed.
    pub fn sigma(&self) -> Self {
        let mut out = Self::zero();
        for ((w, k), c) in &self.terms {
            let mut rev = w.clone();
            rev.reverse();
            let sign = if w.len() % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.add_term(rev, *k, c * sign);
        }
        out
    }

    /// `Ψ`: `X[r] ↦ Σ_a X_a (z_a − u)^r + δ_{r,−1} χ(X)`, `τ ↦ ∂_u`.
    pub fn psi(&self, instance: &GaudinInstance) -> Result<DiffPolyOperator> {
        let sites = instance.sites();
        let spec = instance.spec();
        let mut images: BTreeMap<AffineLetter, DiffPolyOperator> = BTreeMap::new();
        let mut out = DiffPolyOperator::zero(sites);
        for ((w, k), c) in &self.terms {
            let mut acc = DiffPolyOperator::constant(sites, c.clone());
            for l in w {
                let img = images.entry(*l).or_insert_with(|| letter_image(instance, spec, *l));
                acc = acc.try_mul(img)?;
            }
            for _ in 0..*k {
                acc = acc.try_mul(&DiffPolyOperator::d(sites))?;
            }
            out.ring_add_assign(&acc);
        }
        Ok(out)
    }
}

fn derive(words: &BTreeMap<Vec<AffineLetter>, Rat>) -> BTreeMap<Vec<AffineLetter>, Rat> {
    let mut out: BTreeMap<Vec<AffineLetter>, Rat> = BTreeMap::new();
    for (w, c) in words {
        for p in 0..w.len() {
            let r = w[p].r;
            if r == 0 {
                continue;
            }
            let mut v = w.clone();
            v[p].r = r - 1;
            let e = out.entry(v).or_insert_with(Rat::zero);
            *e += c * int(-r);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn letter_image(instance: &GaudinInstance, spec: &LieAlgebraSpec, l: AffineLetter) -> DiffPolyOperator {
    let sites = instance.sites();
    let mut op = DiffPolyOperator::zero(sites);
    let sign = if l.r % 2 == 0 { Rat::one() } else { -Rat::one() };
    for (site, z) in instance.z().iter().enumerate() {
        let f = RationalFunction::linear_power(z, l.r).scale(&sign);
        op.add_term(OperatorWord(vec![Letter { basis: l.basis, site }]), 0, f);
    }
    if l.r == -1 {
        let ch = chi_of(spec, &instance.chi().0, &vec![(l.basis, Rat::one())]);
        if !ch.is_zero() {
            op.add_term(OperatorWord::empty(), 0, RationalFunction::constant(ch));
        }
    }
    op
}

impl OperatorRing for AffineOperator {
    fn ring_zero(&self) -> Self {
        Self::zero()
    }
    fn ring_one(&self) -> Self {
        Self::one()
    }
    fn ring_d(&self) -> Self {
        Self::tau()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add_assign(&mut self, rhs: &Self) {
        for ((w, k), v) in &rhs.terms {
            self.add_term(w.clone(), *k, v.clone());
        }
    }
}

impl fmt::Debug for AffineOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, k), c)| {
                let ws: Vec<String> = w.iter().map(|l| format!("X{}[{}]", l.basis, l.r)).collect();
                format!("({}) {} τ^{}", c, ws.join(" "), k)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The matrix `[X_ij[−1]]` of `E_ij[−1]` or `F_ij[−1]`.
pub fn affine_current(spec: &LieAlgebraSpec) -> Vec<Vec<AffineOperator>> {
    let n = spec.big_n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut op = AffineOperator::zero();
                    for (x, c) in spec.label(i, j).expect("label in range") {
                        op.add_term(vec![AffineLetter { basis: x, r: -1 }], 0, c);
                    }
                    op
                })
                .collect()
        })
        .collect()
}

/// `tr A^(m)(τ + E[−1])_1⋯(τ + E[−1])_m` or the `H^(m)` version.
pub fn affine_projector_trace(spec: &LieAlgebraSpec, m: usize, kind: ProjectorKind) -> Result<AffineOperator> {
    let n = spec.big_n();
    let s = sym_group_projector(n, m, kind)?;
    let t = AffineOperator::zero();
    Ok(trace_with(&s, n, m, &shifted_matrix(&affine_current(spec), &t, 1), &t))
}

/// `γ_m(ω) tr S^(m)(τ + F[−1])_1⋯(τ + F[−1])_m`.
pub fn affine_bcd_trace(spec: &LieAlgebraSpec, m: usize) -> Result<AffineOperator> {
    let s = brauer_symmetrizer(spec, m)?;
    let g = gamma(&omega(spec), m)?;
    let t = AffineOperator::zero();
    let tr = trace_with(&s.matrix, spec.big_n(), m, &shifted_matrix(&affine_current(spec), &t, 1), &t);
    Ok(tr.scale(&g))
}

/// `Pf F̃[−1]`.
pub fn affine_pfaffian(spec: &LieAlgebraSpec) -> AffineOperator {
    pfaffian_with(&tilde_matrix(spec, &affine_current(spec)), &AffineOperator::zero())
}

/// Type A: `Ψ(ς(tr A(τ+E[−1])⋯))` acts as `tr A(∂+E(u))⋯` on `states`.
pub fn sigma_check_projector(
    instance: &GaudinInstance,
    m: usize,
    kind: ProjectorKind,
    states: &[TensorState<Rat>],
) -> Result<bool> {
    let t = affine_projector_trace(instance.spec(), m, kind)?;
    let lhs = t.sigma().psi(instance)?;
    let rhs = crate::operators::projector_trace_operator(instance, m, kind)?;
    act_equal(instance, &lhs, &rhs, states)
}

/// Types B, C, D: `Ψ(ς T) = Ψ(T)` on `states` for the symmetrizer trace `T`.
pub fn sigma_check_bcd(instance: &GaudinInstance, m: usize, states: &[TensorState<Rat>]) -> Result<bool> {
    let t = affine_bcd_trace(instance.spec(), m)?;
    act_equal(instance, &t.sigma().psi(instance)?, &t.psi(instance)?, states)
}

/// Type D: `Ψ(ς Pf) = (−1)^n Ψ(Pf)` on `states`.
pub fn sigma_check_pfaffian(instance: &GaudinInstance, states: &[TensorState<Rat>]) -> Result<bool> {
    let spec = instance.spec();
    if spec.family() != crate::lie::Family::D {
        return Err(crate::error::Error::WrongFamily { op: "Pfaffian", family: spec.family() });
    }
    let pf = affine_pfaffian(spec);
    let sign = if spec.size() % 2 == 0 { int(1) } else { int(-1) };
    act_equal(instance, &pf.sigma().psi(instance)?, &pf.psi(instance)?.scale(&sign), states)
}
