//! Predicted eigenvalues on Bethe vectors, the slice-by-slice verifier, and the
//! master-function cross-check.

use std::collections::BTreeMap;
use std::ops::Add;

use num_traits::{One, Zero};

use crate::bethe::{bae_residual, bethe_vector, eigen_functions, eigen_jets, BetheConfig, BAE_TOLERANCE};
use crate::diffop::{DiffPolyOperator, FunctionRing, ScalarDiffOp};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lie::Family;
use crate::operators::{OperatorKind, ProjectorKind};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::scalar::{int, rat, HpFloat, Magnitude, Rat, Scalar};
use crate::verma::{TensorState, Tuple};

/// Complete (`h_m`) or elementary (`e_m`) noncommutative symmetric function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcsfKind {
    Complete,
    Elementary,
}

/// `h_m`: sum over `i_1 ≤ ⋯ ≤ i_m`; `e_m`: sum over `i_1 > ⋯ > i_m`; products in index order.
pub fn ncsf<C: FunctionRing>(kind: NcsfKind, m: usize, factors: &[ScalarDiffOp<C>]) -> Result<ScalarDiffOp<C>> {
    let p = factors.len();
    if kind == NcsfKind::Elementary && m > p {
        return Err(Error::OutOfRange { what: "elementary degree m", value: m, min: 0, max: p });
    }
    if m == 0 {
        return Ok(ScalarDiffOp::one());
    }
    // tail[i]: sum of admissible words of the current length starting with index i
    let mut tail: Vec<ScalarDiffOp<C>> = factors.to_vec();
    for _ in 1..m {
        let next = (0..p)
            .map(|i| {
                let range = match kind {
                    NcsfKind::Complete => i..p,
                    NcsfKind::Elementary => 0..i,
                };
                let rest = range.fold(ScalarDiffOp::zero(), |acc, j| &acc + &tail[j]);
                &factors[i] * &rest
            })
            .collect();
        tail = next;
    }
    Ok(tail.iter().fold(ScalarDiffOp::zero(), |acc, t| &acc + t))
}

fn shifted<C: FunctionRing>(f: &C, sign: i64) -> ScalarDiffOp<C> {
    ScalarDiffOp::first_order(f.clone() * C::from_rat(&int(sign)))
}

/// `(∂+ℰ_NN)⋯(∂+ℰ_11)`.
pub fn eig_rdet_from<C: FunctionRing>(fs: &[C]) -> ScalarDiffOp<C> {
    fs.iter().rev().fold(ScalarDiffOp::one(), |acc, f| &acc * &shifted(f, 1))
}

/// `(∂−ℰ_11)⋯(∂−ℰ_NN)`, the eigenvalue of `cdet(∂ − E(u))`.
pub fn eig_cdet_from<C: FunctionRing>(fs: &[C]) -> ScalarDiffOp<C> {
    fs.iter().fold(ScalarDiffOp::one(), |acc, f| &acc * &shifted(f, -1))
}

pub fn eig_projector_from<C: FunctionRing>(fs: &[C], m: usize, kind: ProjectorKind) -> Result<ScalarDiffOp<C>> {
    let factors: Vec<ScalarDiffOp<C>> = fs.iter().map(|f| shifted(f, 1)).collect();
    let k = match kind {
        ProjectorKind::Antisymmetrizer => NcsfKind::Elementary,
        ProjectorKind::Symmetrizer => NcsfKind::Complete,
    };
    ncsf(k, m, &factors)
}

/// Truncated power series in a central variable `z` with operator coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeriesOp<C> {
    pub coeffs: Vec<ScalarDiffOp<C>>,
}

impl<C: FunctionRing> ZSeriesOp<C> {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![ScalarDiffOp::zero(); order + 1];
        coeffs[0] = ScalarDiffOp::one();
        ZSeriesOp { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `1 + s z`, truncated.
    pub fn linear(s: ScalarDiffOp<C>, order: usize) -> Self {
        let mut out = Self::one(order);
        if order >= 1 {
            out.coeffs[1] = s;
        }
        out
    }

    /// `(1 − s z)^{-1} = Σ s^j z^j`.
    pub fn geometric(s: &ScalarDiffOp<C>, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = ScalarDiffOp::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = &p * s;
        }
        ZSeriesOp { coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![ScalarDiffOp::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        ZSeriesOp { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        ZSeriesOp { coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }

    /// Inverse of a series with constant term `1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0] != ScalarDiffOp::one() {
            return Err(Error::Unsupported("series inverse needs constant term 1".into()));
        }
        let order = self.order();
        let mut t: Vec<ScalarDiffOp<C>> = vec![ScalarDiffOp::one()];
        for k in 1..=order {
            let mut acc = ScalarDiffOp::zero();
            for j in 0..k {
                acc = &acc + &(&t[j] * &self.coeffs[k - j]);
            }
            t.push(-&acc);
        }
        Ok(ZSeriesOp { coeffs: t })
    }
}

/// Coefficient of `z^k` in `Σ_i (1−zX_1)^{-1}⋯(1−zX_i)^{-1}(1−zX_{i−1})⋯(1−zX_1)`, `X_a = ∂+ℰ_aa`.
pub fn eig_trace_series_from<C: FunctionRing>(fs: &[C], k: usize) -> ScalarDiffOp<C> {
    let xs: Vec<ScalarDiffOp<C>> = fs.iter().map(|f| shifted(f, 1)).collect();
    let mut total = ZSeriesOp::<C> { coeffs: vec![ScalarDiffOp::zero(); k + 1] };
    for i in 0..xs.len() {
        let mut s = ZSeriesOp::one(k);
        for x in &xs[..=i] {
            s = s.mul(&ZSeriesOp::geometric(x, k));
        }
        for x in xs[..i].iter().rev() {
            s = s.mul(&ZSeriesOp::linear(-x, k));
        }
        total = total.add(&s);
    }
    total.coeffs[k].clone()
}

/// The factor lists of the B and D eigenvalue formulas (one list for B, two for D).
fn bd_factor_lists<C: FunctionRing>(family: Family, fs: &[C]) -> Vec<Vec<ScalarDiffOp<C>>> {
    let n = fs.len();
    let plus = |k: usize| shifted(&fs[k], 1);
    let minus = |k: usize| shifted(&fs[k], -1);
    match family {
        Family::B => vec![(0..n).map(plus).chain((0..n).rev().map(minus)).collect()],
        _ => {
            let first = (0..n - 1).map(plus).chain((0..n).rev().map(minus)).collect();
            let second = (0..n).map(plus).chain((0..n - 1).rev().map(minus)).collect();
            vec![first, second]
        }
    }
}

pub fn eig_bd_from<C: FunctionRing>(family: Family, fs: &[C], m: usize) -> Result<ScalarDiffOp<C>> {
    match family {
        Family::B | Family::D => {}
        f => return Err(Error::WrongFamily { op: "B/D eigenvalue", family: f }),
    }
    let lists = bd_factor_lists(family, fs);
    let weight = Rat::one() / int(lists.len() as i64);
    let mut total = ScalarDiffOp::zero();
    for l in &lists {
        total = &total + &ncsf(NcsfKind::Complete, m, l)?.scale_rat(&weight);
    }
    Ok(total)
}

/// `e_m(∂+ℱ_11,…,∂+ℱ_nn, ∂, ∂−ℱ_nn,…,∂−ℱ_11)`.
pub fn eig_c_from<C: FunctionRing>(fs: &[C], m: usize) -> Result<ScalarDiffOp<C>> {
    let n = fs.len();
    if m == 0 || m > 2 * n + 1 {
        return Err(Error::OutOfRange { what: "type C degree m", value: m, min: 1, max: 2 * n + 1 });
    }
    let factors: Vec<ScalarDiffOp<C>> = (0..n)
        .map(|k| shifted(&fs[k], 1))
        .chain(std::iter::once(ScalarDiffOp::d()))
        .chain((0..n).rev().map(|k| shifted(&fs[k], -1)))
        .collect();
    ncsf(NcsfKind::Elementary, m, &factors)
}

/// `(ℱ_11 − ∂)⋯(ℱ_nn − ∂)·1`.
pub fn eig_pfaffian_from<C: FunctionRing>(fs: &[C]) -> C {
    let prod = fs.iter().fold(ScalarDiffOp::one(), |acc, f| &acc * &(-&shifted(f, -1)));
    prod.apply_to_one()
}

/// The displayed product of the generating-function eigenvalue, to order `order` in `z`.
pub fn eig_genfun_from<C: FunctionRing>(family: Family, fs: &[C], order: usize) -> Result<ZSeriesOp<C>> {
    let n = fs.len();
    let mut s = ZSeriesOp::one(order);
    for f in fs {
        s = s.mul(&ZSeriesOp::linear(shifted(f, -1), order));
    }
    match family {
        Family::B => {}
        Family::D => s = s.mul(&ZSeriesOp::geometric(&-&ScalarDiffOp::d(), order)),
        f => return Err(Error::WrongFamily { op: "generating function", family: f }),
    }
    for k in (0..n).rev() {
        s = s.mul(&ZSeriesOp::linear(shifted(&fs[k], 1), order));
    }
    Ok(s)
}

/// The eigenvalue predicted for `kind`, from the functions `ℰ_ii` / `ℱ_ii`.
pub fn eigenvalue_from<C: FunctionRing>(family: Family, kind: OperatorKind, fs: &[C]) -> Result<ScalarDiffOp<C>> {
    let type_a = |op: &'static str| {
        if family == Family::A {
            Ok(())
        } else {
            Err(Error::WrongFamily { op, family })
        }
    };
    match kind {
        OperatorKind::Rdet => type_a("rdet").map(|_| eig_rdet_from(fs)),
        OperatorKind::Cdet => type_a("cdet").map(|_| eig_cdet_from(fs)),
        OperatorKind::Projector(p, m) => {
            type_a("projector trace")?;
            eig_projector_from(fs, m, p)
        }
        OperatorKind::TracePower(k) => type_a("trace power").map(|_| eig_trace_series_from(fs, k)),
        OperatorKind::BcdTrace(m) => match family {
            Family::C => eig_c_from(fs, m),
            _ => eig_bd_from(family, fs, m),
        },
        OperatorKind::Pfaffian => {
            if family != Family::D {
                return Err(Error::WrongFamily { op: "Pfaffian", family });
            }
            Ok(ScalarDiffOp::function(eig_pfaffian_from(fs)))
        }
    }
}

/// Exact eigenvalue for a rational configuration.
pub fn eigenvalue(config: &BetheConfig<Rat>, kind: OperatorKind) -> Result<ScalarDiffOp<RationalFunction>> {
    eigenvalue_from(config.spec().family(), kind, &eigen_functions(config))
}

pub fn eig_type_a_rdet(config: &BetheConfig<Rat>) -> Result<ScalarDiffOp<RationalFunction>> {
    eigenvalue(config, OperatorKind::Rdet)
}

pub fn eig_type_a_projector(config: &BetheConfig<Rat>, m: usize, kind: ProjectorKind) -> Result<ScalarDiffOp<RationalFunction>> {
    eigenvalue(config, OperatorKind::Projector(kind, m))
}

pub fn eig_type_a_trace_series(config: &BetheConfig<Rat>, k: usize) -> Result<ScalarDiffOp<RationalFunction>> {
    eigenvalue(config, OperatorKind::TracePower(k))
}

pub fn eig_type_bd(config: &BetheConfig<Rat>, m: usize) -> Result<ScalarDiffOp<RationalFunction>> {
    eig_bd_from(config.spec().family(), &eigen_functions(config), m)
}

pub fn eig_type_c(config: &BetheConfig<Rat>, m: usize) -> Result<ScalarDiffOp<RationalFunction>> {
    let family = config.spec().family();
    if family != Family::C {
        return Err(Error::WrongFamily { op: "type C eigenvalue", family });
    }
    eig_c_from(&eigen_functions(config), m)
}

pub fn eig_pfaffian(config: &BetheConfig<Rat>) -> Result<RationalFunction> {
    let family = config.spec().family();
    if family != Family::D {
        return Err(Error::WrongFamily { op: "Pfaffian", family });
    }
    Ok(eig_pfaffian_from(&eigen_functions(config)))
}

pub fn eig_genfun_bd(config: &BetheConfig<Rat>, order: usize) -> Result<ZSeriesOp<RationalFunction>> {
    eig_genfun_from(config.spec().family(), &eigen_functions(config), order)
}

/// `(Σ_m (−z)^m eig_m)^{-1}` with `eig_0 = 1` and `eig_m` from the B/D trace formulas.
pub fn inverted_trace_series<C: FunctionRing>(family: Family, fs: &[C], order: usize) -> Result<ZSeriesOp<C>> {
    let mut coeffs = vec![ScalarDiffOp::one()];
    for m in 1..=order {
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        coeffs.push(eig_bd_from(family, fs, m)?.scale_rat(&sign));
    }
    ZSeriesOp { coeffs }.inverse()
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceReport {
    /// Power of `∂`.
    pub k: usize,
    pub pass: bool,
    /// Basis tuples where the two sides differ.
    pub residual_terms: usize,
    /// Largest absolute coefficient of the residual (at the sample points).
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub slices: Vec<SliceReport>,
    pub pass: bool,
    /// Largest absolute BAE residual.
    pub bae_residual: f64,
    pub bethe_terms: usize,
    pub samples: usize,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.slices.iter().map(|s| s.max_deviation).fold(0.0, f64::max)
    }
}

/// Float-mode pass threshold on every slice.
pub const FLOAT_SLICE_TOLERANCE: f64 = 1e-20;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Refuse to certify when the Bethe equations fail.
    pub require_bae: bool,
    pub float_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { require_bae: true, float_tolerance: FLOAT_SLICE_TOLERANCE }
    }
}

fn check_bae<S: Scalar + Magnitude + std::fmt::Display>(config: &BetheConfig<S>, exact: bool, require: bool) -> Result<f64> {
    let res = bae_residual(config)?;
    let worst = res.iter().map(Magnitude::magnitude).fold(0.0, f64::max);
    let ok = if exact { res.iter().all(|r| r.is_zero()) } else { worst < BAE_TOLERANCE };
    if require && !ok {
        return Err(Error::BaeViolated { residuals: res.iter().map(|r| r.to_string()).collect() });
    }
    Ok(worst)
}

fn sample_point_rat(poles: &[Rat], avoid: &[f64], idx: usize) -> Rat {
    let mut s = idx;
    loop {
        let cand = rat(2 * s as i64 + 1, 7) + rat(1, 11 + s as i64);
        let f = cand.magnitude() * if cand < Rat::zero() { -1.0 } else { 1.0 };
        let near_rat = poles.iter().any(|p| (p - &cand).magnitude() < 1e-3);
        let near_float = avoid.iter().any(|p| (p - f).abs() < 1e-3);
        if !near_rat && !near_float {
            return cand;
        }
        s += 1000;
    }
}

/// The guard both verifiers apply to the Bethe vector before comparing slices.
pub fn ensure_nonzero<S: Scalar>(phi: &TensorState<S>) -> Result<()> {
    if phi.is_zero() {
        return Err(Error::ZeroBetheVector);
    }
    Ok(())
}

/// Checks `A φ = Λ φ` one `∂`-slice at a time, exactly.
pub fn verify_eigen(op: &DiffPolyOperator, config: &BetheConfig<Rat>, oracle: &ScalarDiffOp<RationalFunction>) -> Result<VerifyReport> {
    verify_eigen_with(op, config, oracle, VerifyOptions::default())
}

pub fn verify_eigen_with(
    op: &DiffPolyOperator,
    config: &BetheConfig<Rat>,
    oracle: &ScalarDiffOp<RationalFunction>,
    options: VerifyOptions,
) -> Result<VerifyReport> {
    let bae = check_bae(config, true, options.require_bae)?;
    let phi = bethe_vector(config)?;
    ensure_nonzero(&phi)?;
    let tp = config.instance().tensor_product()?;
    let lhs = tp.apply_diffop(op, &phi)?;
    let mut poles: Vec<Rat> = config.instance().z().to_vec();
    poles.extend(config.roots().iter().cloned());
    let u0 = sample_point_rat(&poles, &[], 1);
    let mut slices = Vec::new();
    for k in degrees(&lhs, oracle) {
        let mut diff: BTreeMap<Tuple, RationalFunction> = lhs.get(&k).cloned().unwrap_or_default();
        let c = oracle.coefficient(k);
        if !c.is_zero() {
            for (t, x) in phi.terms() {
                let e = diff.entry(t.clone()).or_insert_with(RationalFunction::zero);
                *e = &*e - &c.scale(x);
            }
        }
        diff.retain(|_, v| !v.is_zero());
        let dev = diff.values().filter_map(|f| f.eval(&u0)).map(|v| v.magnitude()).fold(0.0, f64::max);
        slices.push(SliceReport { k, pass: diff.is_empty(), residual_terms: diff.len(), max_deviation: dev });
    }
    let pass = slices.iter().all(|s| s.pass);
    Ok(VerifyReport { mode: VerifyMode::Exact, slices, pass, bae_residual: bae, bethe_terms: phi.len(), samples: 0 })
}

fn degrees<C, D: FunctionRing>(lhs: &BTreeMap<usize, C>, oracle: &ScalarDiffOp<D>) -> Vec<usize> {
    let top = lhs.keys().chain(oracle.coeffs().keys()).copied().max().unwrap_or(0);
    (0..=top).collect()
}

#[derive(Clone, Debug)]
struct Samples(Vec<HpFloat>);

impl Add for Samples {
    type Output = Samples;
    fn add(self, rhs: Samples) -> Samples {
        if self.0.is_empty() {
            return rhs;
        }
        if rhs.0.is_empty() {
            return self;
        }
        Samples(self.0.into_iter().zip(rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Zero for Samples {
    fn zero() -> Self {
        Samples(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

/// Float-mode verification: both sides are sampled at `2·bound + 1` points `u` away from
/// every pole, where `bound` bounds the degree of the residual's numerator.
pub fn verify_eigen_float(
    op: &DiffPolyOperator,
    config: &BetheConfig<HpFloat>,
    kind: OperatorKind,
    options: VerifyOptions,
) -> Result<VerifyReport> {
    let bae = check_bae(config, false, options.require_bae)?;
    let phi = bethe_vector(config)?;
    ensure_nonzero(&phi)?;
    let inst = config.instance();
    let family = inst.spec().family();
    let order = op.order().unwrap_or(0);
    let height = op.terms().values().map(|c| c.height()).max().unwrap_or(0);
    let bound = height + (order + 1) * (inst.sites() + config.roots().len() + 1);
    let n_samples = 2 * bound + 1;
    let avoid: Vec<f64> = config.roots().iter().map(|w| w.to_f64()).collect();
    let us: Vec<Rat> = (0..n_samples).map(|i| sample_point_rat(inst.z(), &avoid, i + 1)).collect();
    let tp = inst.tensor_product()?;
    let lhs = tp.apply_diffop_with(op, &phi, |c, x| {
        Samples(us.iter().map(|u| HpFloat::from_rat(&c.eval(u).expect("sample avoids poles")) * x.clone()).collect())
    })?;
    let mut oracles = Vec::with_capacity(us.len());
    for u in &us {
        let u0 = HpFloat::from_rat(u);
        let jets: Vec<Jet<HpFloat>> = eigen_jets(config, &u0, order + 2);
        oracles.push(eigenvalue_from(family, kind, &jets)?);
    }
    let top = lhs.keys().chain(oracles.iter().flat_map(|o| o.coeffs().keys())).copied().max().unwrap_or(0);
    let mut slices = Vec::new();
    for k in 0..=top {
        let empty = BTreeMap::new();
        let side = lhs.get(&k).unwrap_or(&empty);
        let mut worst = 0.0f64;
        let mut bad = 0;
        let mut tuples: Vec<&Tuple> = side.keys().collect();
        tuples.extend(phi.terms().keys().filter(|t| !side.contains_key(*t)));
        for t in tuples {
            let x = phi.coefficient(t);
            let mut tuple_worst = 0.0f64;
            for (s, o) in oracles.iter().enumerate() {
                let l = side.get(t).and_then(|v| v.0.get(s).cloned()).unwrap_or_else(HpFloat::zero);
                let r = o.coefficient(k).value() * x.clone();
                tuple_worst = tuple_worst.max((l - r).magnitude());
            }
            if tuple_worst >= options.float_tolerance {
                bad += 1;
            }
            worst = worst.max(tuple_worst);
        }
        slices.push(SliceReport { k, pass: worst < options.float_tolerance, residual_terms: bad, max_deviation: worst });
    }
    let pass = slices.iter().all(|s| s.pass);
    Ok(VerifyReport { mode: VerifyMode::Float, slices, pass, bae_residual: bae, bethe_terms: phi.len(), samples: us.len() })
}

// ---------------------------------------------------------------------------
// Master functions

fn integer_weights(config: &BetheConfig<Rat>) -> Result<Vec<Vec<i64>>> {
    config
        .instance()
        .weights()
        .iter()
        .map(|w| {
            w.0.iter()
                .map(|x| if x.is_integer() { x.to_integer().try_into().map_err(|_| Error::NonIntegerWeights) } else { Err(Error::NonIntegerWeights) })
                .collect()
        })
        .collect()
}

fn t_poly(z: &[Rat], exps: impl Iterator<Item = i64>) -> RationalFunction {
    exps.zip(z).fold(RationalFunction::one(), |acc, (e, z)| &acc * &RationalFunction::linear_power(z, e))
}

fn ln_derivative(f: &RationalFunction) -> Result<RationalFunction> {
    Ok(f.derivative().checked_div(f)?)
}

/// `Π_{a=N..1} (∂ + ln′(T_a y_{a−1}/y_a))` for the identified `gl_N` data, compared with the
/// type A, B or C eigenvalue.
pub fn masterfn_crosscheck(config: &BetheConfig<Rat>) -> Result<bool> {
    let inst = config.instance();
    if !inst.chi().is_zero() {
        return Err(Error::Unsupported("the master-function comparison requires χ = 0".into()));
    }
    let lam = integer_weights(config)?;
    let spec = config.spec();
    let family = spec.family();
    let n = spec.size();
    let z = inst.z();
    let roots_of = |c: usize| -> Poly {
        config
            .roots()
            .iter()
            .zip(config.colors())
            .filter(|(_, &col)| col == c)
            .fold(Poly::one(), |acc, (w, _)| &acc * &Poly::linear_root(w))
    };
    let t_base = |a: usize| t_poly(z, lam.iter().map(|l| l[a]));
    // t[a], y[a] with 1-based `a`; y[0] = y[N] = 1
    let (big_n, t, y): (usize, Vec<RationalFunction>, Vec<Poly>) = match family {
        Family::A => {
            let big_n = spec.big_n();
            let t = (0..big_n).map(t_base).collect();
            let mut y = vec![Poly::one()];
            y.extend((0..big_n - 1).map(roots_of));
            y.push(Poly::one());
            (big_n, t, y)
        }
        Family::B => {
            let big_n = 2 * n;
            let mut t: Vec<RationalFunction> = (0..n).map(t_base).collect();
            for a in (0..n).rev() {
                t.push(RationalFunction::one().checked_div(&t_base(a))?);
            }
            let yb: Vec<Poly> = (0..n).map(roots_of).collect();
            let mut y = vec![Poly::one()];
            for a in 1..big_n {
                y.push(yb[a.min(big_n - a) - 1].clone());
            }
            y.push(Poly::one());
            (big_n, t, y)
        }
        Family::C => {
            let big_n = 2 * n + 1;
            let mut t: Vec<RationalFunction> = (0..n).map(t_base).collect();
            t.push(RationalFunction::one());
            for a in (0..n).rev() {
                t.push(RationalFunction::one().checked_div(&t_base(a))?);
            }
            let yc: Vec<Poly> = (0..n).map(roots_of).collect();
            let ya = |a: usize| if a == n { yc[n - 1].pow(2) } else { yc[a - 1].clone() };
            let mut y = vec![Poly::one()];
            for a in 1..big_n {
                y.push(ya(a.min(2 * n + 1 - a)));
            }
            y.push(Poly::one());
            (big_n, t, y)
        }
        Family::D => return Err(Error::Unsupported("no master-function identification for type D".into())),
    };
    let mut prod = ScalarDiffOp::<RationalFunction>::one();
    for a in (1..=big_n).rev() {
        let g = (&t[a - 1] * &RationalFunction::from_poly(y[a - 1].clone()))
            .checked_div(&RationalFunction::from_poly(y[a].clone()))?;
        prod = &prod * &ScalarDiffOp::first_order(ln_derivative(&g)?);
    }
    let fs = eigen_functions(config);
    let reference = match family {
        Family::A => eig_rdet_from(&fs),
        Family::B => eig_genfun_from(Family::B, &fs, 2 * n)?.coeffs[2 * n].clone(),
        _ => eig_c_from(&fs, 2 * n + 1)?,
    };
    Ok(prod == reference)
}

/// The exact residual state `A φ − Λ φ` on slice `k`, for diagnostics.
pub fn residual_slice(
    op: &DiffPolyOperator,
    config: &BetheConfig<Rat>,
    oracle: &ScalarDiffOp<RationalFunction>,
    k: usize,
) -> Result<TensorState<RationalFunction>> {
    let phi = bethe_vector(config)?;
    let tp = config.instance().tensor_product()?;
    let lhs = tp.apply_diffop(op, &phi)?;
    let mut out = TensorState::zero();
    if let Some(sl) = lhs.get(&k) {
        for (t, v) in sl {
            out.add_term(t.clone(), v.clone());
        }
    }
    let c = oracle.coefficient(k);
    for (t, x) in phi.terms() {
        out.add_term(t.clone(), -c.scale(x));
    }
    Ok(out)
}
