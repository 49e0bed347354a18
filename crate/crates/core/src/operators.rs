//! Hamiltonian-side operators: current matrices, noncommutative determinants,
//! projector and Brauer-symmetrizer traces, trace powers and the Pfaffian.
//!
//! The expanders are generic over [`OperatorRing`] so the same code builds the
//! `u`-dependent operators and their affine counterparts in `τ` and `X[-1]`.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::bethe::GaudinInstance;
use crate::diffop::{DiffPolyOperator, Letter, OperatorRing};
use crate::error::{Error, Result};
use crate::lie::{Combo, Family, LieAlgebraSpec};
use crate::ratfun::RationalFunction;
use crate::scalar::{int, Rat};
use crate::verma::TensorState;

/// Largest tensor dimension `N^m` handled by the symmetrizer builders.
pub const MAX_TENSOR_DIM: usize = 1024;

/// Exact sparse square matrix; indices encode multi-indices in base `N`, copy 1 most significant.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix {
    dim: usize,
    rows: BTreeMap<usize, BTreeMap<usize, Rat>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { dim, rows: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.add_entry(i, i, Rat::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let row = self.rows.entry(r).or_default();
        let e = row.entry(c).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            row.remove(&c);
            if row.is_empty() {
                self.rows.remove(&r);
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows.get(&r).and_then(|row| row.get(&c)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero entries as `(row, column, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.rows.iter().flat_map(|(r, row)| row.iter().map(move |(c, v)| (*r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn trace(&self) -> Rat {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, col, v) in self.entries() {
            out.add_entry(r, col, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let mut out = Self::zero(self.dim);
        for (r, row) in &self.rows {
            for (k, a) in row {
                if let Some(orow) = other.rows.get(k) {
                    for (c, b) in orow {
                        out.add_entry(*r, *c, a * b);
                    }
                }
            }
        }
        out
    }
}

fn digits(mut idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut d = vec![0; m];
    for a in (0..m).rev() {
        d[a] = idx % n;
        idx /= n;
    }
    d
}

fn encode(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

fn tensor_dim(n: usize, m: usize) -> Result<usize> {
    let dim = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match dim {
        Some(d) if d <= MAX_TENSOR_DIM => Ok(d),
        _ => Err(Error::OutOfRange { what: "tensor power m", value: m, min: 1, max: max_power(n) }),
    }
}

fn max_power(n: usize) -> usize {
    let mut m = 0;
    let mut d = 1usize;
    while d.saturating_mul(n) <= MAX_TENSOR_DIM && m < 64 {
        d = d.saturating_mul(n);
        m += 1;
    }
    m
}

/// `P_σ` on `(C^N)^{⊗m}`: the tensor factor in copy `a` moves to copy `perm[a]`.
pub fn permutation_matrix(n: usize, perm: &[usize]) -> Result<SparseMatrix> {
    let m = perm.len();
    let dim = tensor_dim(n, m)?;
    let mut out = SparseMatrix::zero(dim);
    let mut o = vec![0; m];
    for col in 0..dim {
        let d = digits(col, n, m);
        for a in 0..m {
            o[perm[a]] = d[a];
        }
        out.add_entry(encode(&o, n), col, Rat::one());
    }
    Ok(out)
}

/// The transposition `P_ab` (zero-based copies).
pub fn p_matrix(n: usize, m: usize, a: usize, b: usize) -> Result<SparseMatrix> {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.swap(a, b);
    permutation_matrix(n, &perm)
}

/// `Q_ab` for the orthogonal or symplectic form of `spec` (zero-based copies).
pub fn q_matrix(spec: &LieAlgebraSpec, m: usize, a: usize, b: usize) -> Result<SparseMatrix> {
    if spec.family() == Family::A {
        return Err(Error::WrongFamily { op: "Q matrix", family: Family::A });
    }
    let n = spec.big_n();
    let dim = tensor_dim(n, m)?;
    let mut out = SparseMatrix::zero(dim);
    for col in 0..dim {
        let d = digits(col, n, m);
        if d[b] != spec.prime(d[a]) {
            continue;
        }
        let k = d[a];
        for p in 0..n {
            let mut o = d.clone();
            o[a] = p;
            o[b] = spec.prime(p);
            out.add_entry(encode(&o, n), col, spec.eps_sign(p) * spec.eps_sign(k));
        }
    }
    Ok(out)
}

fn factorial(m: usize) -> Rat {
    (1..=m).fold(Rat::one(), |acc, k| acc * int(k as i64))
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which projector of the symmetric group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectorKind {
    Antisymmetrizer,
    Symmetrizer,
}

/// `A^(m)` or `H^(m)` on `(C^N)^{⊗m}`, from the regular representation of `Sym_m`.
pub fn sym_group_projector(n: usize, m: usize, kind: ProjectorKind) -> Result<SparseMatrix> {
    let dim = tensor_dim(n, m)?;
    let mut acc = SparseMatrix::zero(dim);
    for perm in (0..m).permutations(m) {
        let s = match kind {
            ProjectorKind::Antisymmetrizer => perm_sign(&perm),
            ProjectorKind::Symmetrizer => 1,
        };
        acc = acc.add(&permutation_matrix(n, &perm)?.scale(&int(s)));
    }
    Ok(acc.scale(&(Rat::one() / factorial(m))))
}

/// The symmetrizer `S^(m)` of the Brauer algebra, as a product over pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizerMatrix {
    pub family: Family,
    pub big_n: usize,
    pub m: usize,
    pub matrix: SparseMatrix,
}

pub fn brauer_symmetrizer(spec: &LieAlgebraSpec, m: usize) -> Result<SymmetrizerMatrix> {
    let family = spec.family();
    if family == Family::A {
        return Err(Error::WrongFamily { op: "Brauer symmetrizer", family });
    }
    let n_big = spec.big_n();
    let max = if family == Family::C { spec.size() } else { max_power(n_big) };
    if m == 0 || m > max {
        return Err(Error::OutOfRange { what: "symmetrizer degree m", value: m, min: 1, max });
    }
    let dim = tensor_dim(n_big, m)?;
    let mut s = SparseMatrix::identity(dim);
    for a in 0..m {
        for b in a + 1..m {
            let (ap, bp) = (a + 1, b + 1);
            let gap = int((bp - ap) as i64);
            let (p_coef, den) = match family {
                Family::C => (-Rat::one() / &gap, int(spec.size() as i64) - &gap + int(1)),
                _ => (Rat::one() / &gap, int(n_big as i64) / int(2) + &gap - int(1)),
            };
            if den.is_zero() {
                return Err(Error::VanishingDenominator { a: ap, b: bp });
            }
            let factor = SparseMatrix::identity(dim)
                .add(&p_matrix(n_big, m, a, b)?.scale(&p_coef))
                .sub(&q_matrix(spec, m, a, b)?.scale(&(Rat::one() / den)));
            s = s.mul(&factor);
        }
    }
    Ok(SymmetrizerMatrix { family, big_n: n_big, m, matrix: s.scale(&(Rat::one() / factorial(m))) })
}

/// `γ_m(ω) = (ω + m − 2) / (ω + 2m − 2)`.
pub fn gamma(omega: &Rat, m: usize) -> Result<Rat> {
    let m = int(m as i64);
    let den = omega + int(2) * &m - int(2);
    if den.is_zero() {
        return Err(Error::Algebra(crate::error::AlgebraError::DivisionByZero));
    }
    Ok((omega + m - int(2)) / den)
}

/// `ω = N` for types B and D, `ω = −2n` for type C.
pub fn omega(spec: &LieAlgebraSpec) -> Rat {
    match spec.family() {
        Family::C => int(-2 * spec.size() as i64),
        _ => int(spec.big_n() as i64),
    }
}

// ---------------------------------------------------------------------------
// Generic expanders

/// `δ_ij d + sign · X_ij`.
pub fn shifted_matrix<R: OperatorRing>(x: &[Vec<R>], template: &R, sign: i64) -> Vec<Vec<R>> {
    let s = int(sign);
    x.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| {
                    let e = e.ring_scale(&s);
                    if i == j {
                        e.ring_add(&template.ring_d())
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect()
}

/// `Σ_{I,J} S_{J,I} M_{i_1 j_1} ⋯ M_{i_m j_m}` with products in copy order.
pub fn trace_with<R: OperatorRing>(s: &SparseMatrix, n: usize, m: usize, mat: &[Vec<R>], template: &R) -> R {
    let mut memo: HashMap<Vec<(usize, usize)>, Option<R>> = HashMap::new();
    memo.insert(Vec::new(), Some(template.ring_one()));
    let mut total = template.ring_zero();
    for (row, col, c) in s.entries() {
        let jd = digits(row, n, m);
        let id = digits(col, n, m);
        let pairs: Vec<(usize, usize)> = id.into_iter().zip(jd).collect();
        if let Some(p) = prefix_product(&pairs, mat, &mut memo) {
            total.ring_add_assign(&p.ring_scale(c));
        }
    }
    total
}

fn prefix_product<R: OperatorRing>(
    pairs: &[(usize, usize)],
    mat: &[Vec<R>],
    memo: &mut HashMap<Vec<(usize, usize)>, Option<R>>,
) -> Option<R> {
    if let Some(v) = memo.get(pairs) {
        return v.clone();
    }
    let (last, head) = pairs.split_last().unwrap();
    let value = prefix_product(head, mat, memo).and_then(|p| {
        let e = &mat[last.0][last.1];
        if e.ring_is_zero() {
            None
        } else {
            let q = p.ring_mul(e);
            (!q.ring_is_zero()).then_some(q)
        }
    });
    memo.insert(pairs.to_vec(), value.clone());
    value
}

/// Row determinant (`row_order = true`) or column determinant of a square matrix.
pub fn determinant_with<R: OperatorRing>(mat: &[Vec<R>], template: &R, row_order: bool) -> R {
    let n = mat.len();
    let mut total = template.ring_zero();
    for perm in (0..n).permutations(n) {
        let mut p = template.ring_one();
        for (k, &s) in perm.iter().enumerate() {
            let e = if row_order { &mat[k][s] } else { &mat[s][k] };
            if e.ring_is_zero() {
                p = template.ring_zero();
                break;
            }
            p = p.ring_mul(e);
        }
        if !p.ring_is_zero() {
            total.ring_add_assign(&p.ring_scale(&int(perm_sign(&perm))));
        }
    }
    total
}

/// `tr M^k`.
pub fn trace_power_with<R: OperatorRing>(mat: &[Vec<R>], template: &R, k: usize) -> R {
    let n = mat.len();
    if k == 0 {
        return template.ring_one().ring_scale(&int(n as i64));
    }
    let mut pow: Vec<Vec<R>> = mat.to_vec();
    for _ in 1..k {
        let mut next = vec![vec![template.ring_zero(); n]; n];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for l in 0..n {
                    if !pow[i][l].ring_is_zero() && !mat[l][j].ring_is_zero() {
                        cell.ring_add_assign(&pow[i][l].ring_mul(&mat[l][j]));
                    }
                }
            }
        }
        pow = next;
    }
    let mut total = template.ring_zero();
    for (i, row) in pow.iter().enumerate() {
        total.ring_add_assign(&row[i]);
    }
    total
}

/// `(1/2^n n!) Σ_{σ ∈ Sym_2n} sgn σ · A_{σ1σ2} ⋯ A_{σ(2n−1)σ(2n)}`, products in the written order.
pub fn pfaffian_with<R: OperatorRing>(mat: &[Vec<R>], template: &R) -> R {
    let size = mat.len();
    assert!(size % 2 == 0, "Pfaffian of an odd-size matrix");
    let n = size / 2;
    let mut total = template.ring_zero();
    for perm in (0..size).permutations(size) {
        let mut p = template.ring_one();
        for pair in perm.chunks(2) {
            let e = &mat[pair[0]][pair[1]];
            if e.ring_is_zero() {
                p = template.ring_zero();
                break;
            }
            p = p.ring_mul(e);
        }
        if !p.ring_is_zero() {
            total.ring_add_assign(&p.ring_scale(&int(perm_sign(&perm))));
        }
    }
    let norm = (0..n).fold(Rat::one(), |acc, _| acc * int(2)) * factorial(n);
    total.ring_scale(&(Rat::one() / norm))
}

// ---------------------------------------------------------------------------
// Gaudin currents

/// `χ(X)` for a combination of basis elements.
pub fn chi_of(spec: &LieAlgebraSpec, chi: &[Rat], combo: &Combo) -> Rat {
    let mut acc = Rat::zero();
    for (x, c) in combo {
        if let Some(d) = (0..spec.diag_len()).find(|&d| spec.diag_index(d) == *x) {
            acc += c * &chi[d];
        }
    }
    acc
}

/// The matrix of `E_ij(u)` or `F_ij(u)`: `Σ_a (X_ij)_a/(u − z_a) − χ(X_ij)`.
pub fn current_matrix(instance: &GaudinInstance) -> Vec<Vec<DiffPolyOperator>> {
    let spec = instance.spec();
    let sites = instance.sites();
    let n = spec.big_n();
    let poles: Vec<RationalFunction> = instance.z().iter().map(RationalFunction::simple_pole).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let combo = spec.label(i, j).expect("label in range");
                    let mut op = DiffPolyOperator::zero(sites);
                    for (site, pole) in poles.iter().enumerate() {
                        for (x, c) in &combo {
                            let w = crate::diffop::OperatorWord(vec![Letter { basis: *x, site }]);
                            op.add_term(w, 0, pole.scale(c));
                        }
                    }
                    let ch = chi_of(spec, &instance.chi().0, &combo);
                    if !ch.is_zero() {
                        op.add_term(crate::diffop::OperatorWord::empty(), 0, RationalFunction::constant(-ch));
                    }
                    op
                })
                .collect()
        })
        .collect()
}

fn require(spec: &LieAlgebraSpec, op: &'static str, ok: impl Fn(Family) -> bool) -> Result<()> {
    if ok(spec.family()) {
        Ok(())
    } else {
        Err(Error::WrongFamily { op, family: spec.family() })
    }
}

/// `rdet(∂ + E(u))`.
pub fn rdet_operator(instance: &GaudinInstance) -> Result<DiffPolyOperator> {
    require(instance.spec(), "rdet", |f| f == Family::A)?;
    let t = DiffPolyOperator::zero(instance.sites());
    Ok(determinant_with(&shifted_matrix(&current_matrix(instance), &t, 1), &t, true))
}

/// `cdet(∂ − E(u))`.
pub fn cdet_operator(instance: &GaudinInstance) -> Result<DiffPolyOperator> {
    require(instance.spec(), "cdet", |f| f == Family::A)?;
    let t = DiffPolyOperator::zero(instance.sites());
    Ok(determinant_with(&shifted_matrix(&current_matrix(instance), &t, -1), &t, false))
}

/// `tr A^(m)(∂+E(u))_1⋯(∂+E(u))_m` or the `H^(m)` version.
pub fn projector_trace_operator(instance: &GaudinInstance, m: usize, kind: ProjectorKind) -> Result<DiffPolyOperator> {
    let spec = instance.spec();
    require(spec, "projector trace", |f| f == Family::A)?;
    let n = spec.big_n();
    let max = match kind {
        ProjectorKind::Antisymmetrizer => n,
        ProjectorKind::Symmetrizer => max_power(n),
    };
    if m == 0 || m > max {
        return Err(Error::OutOfRange { what: "trace degree m", value: m, min: 1, max });
    }
    let s = sym_group_projector(n, m, kind)?;
    let t = DiffPolyOperator::zero(instance.sites());
    let mat = shifted_matrix(&current_matrix(instance), &t, 1);
    Ok(trace_with(&s, n, m, &mat, &t))
}

/// `tr(∂ + Eᵗ(u))^k`.
pub fn trace_power_operator(instance: &GaudinInstance, k: usize) -> Result<DiffPolyOperator> {
    require(instance.spec(), "trace power", |f| f == Family::A)?;
    let t = DiffPolyOperator::zero(instance.sites());
    let e = current_matrix(instance);
    let n = e.len();
    let et: Vec<Vec<DiffPolyOperator>> = (0..n).map(|i| (0..n).map(|j| e[j][i].clone()).collect()).collect();
    Ok(trace_power_with(&shifted_matrix(&et, &t, 1), &t, k))
}

/// `γ_m(ω) tr S^(m)(∂ + sign·F(u))_1⋯(∂ + sign·F(u))_m`.
pub fn bcd_trace_operator_signed(instance: &GaudinInstance, m: usize, sign: i64) -> Result<DiffPolyOperator> {
    let spec = instance.spec();
    require(spec, "symmetrizer trace", |f| f != Family::A)?;
    let s = brauer_symmetrizer(spec, m)?;
    let g = gamma(&omega(spec), m)?;
    let t = DiffPolyOperator::zero(instance.sites());
    let mat = shifted_matrix(&current_matrix(instance), &t, sign);
    Ok(trace_with(&s.matrix, spec.big_n(), m, &mat, &t).scale(&g))
}

pub fn bcd_trace_operator(instance: &GaudinInstance, m: usize) -> Result<DiffPolyOperator> {
    bcd_trace_operator_signed(instance, m, 1)
}

/// `F̃_ij = F_{ij′}` for any matrix of currents.
pub fn tilde_matrix<R: Clone>(spec: &LieAlgebraSpec, f: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = f.len();
    (0..n).map(|i| (0..n).map(|j| f[i][spec.prime(j)].clone()).collect()).collect()
}

/// `Pf F̃(u)` with currents scaled by `sign`.
pub fn pfaffian_operator_signed(instance: &GaudinInstance, sign: i64) -> Result<DiffPolyOperator> {
    let spec = instance.spec();
    require(spec, "Pfaffian", |f| f == Family::D)?;
    let t = DiffPolyOperator::zero(instance.sites());
    let f: Vec<Vec<DiffPolyOperator>> = current_matrix(instance)
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.scale(&int(sign))).collect())
        .collect();
    Ok(pfaffian_with(&tilde_matrix(spec, &f), &t))
}

pub fn pfaffian_operator(instance: &GaudinInstance) -> Result<DiffPolyOperator> {
    pfaffian_operator_signed(instance, 1)
}

/// Every Hamiltonian family the builders produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Rdet,
    Cdet,
    Projector(ProjectorKind, usize),
    TracePower(usize),
    BcdTrace(usize),
    Pfaffian,
}

pub fn build_operator(instance: &GaudinInstance, kind: OperatorKind) -> Result<DiffPolyOperator> {
    match kind {
        OperatorKind::Rdet => rdet_operator(instance),
        OperatorKind::Cdet => cdet_operator(instance),
        OperatorKind::Projector(p, m) => projector_trace_operator(instance, m, p),
        OperatorKind::TracePower(k) => trace_power_operator(instance, k),
        OperatorKind::BcdTrace(m) => bcd_trace_operator(instance, m),
        OperatorKind::Pfaffian => pfaffian_operator(instance),
    }
}

/// True iff `a` and `b` act identically on every state.
pub fn act_equal(instance: &GaudinInstance, a: &DiffPolyOperator, b: &DiffPolyOperator, states: &[TensorState<Rat>]) -> Result<bool> {
    let tp = instance.tensor_product()?;
    let diff = a - b;
    for s in states {
        let slices = tp.apply_diffop(&diff, s)?;
        if slices.values().any(|sl| !sl.is_empty()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The trace built with `−F(u)` acts like the one built with `+F(u)` on `states`.
pub fn sigma_stability_check(instance: &GaudinInstance, m: usize, states: &[TensorState<Rat>]) -> Result<bool> {
    let plus = bcd_trace_operator_signed(instance, m, 1)?;
    let minus = bcd_trace_operator_signed(instance, m, -1)?;
    act_equal(instance, &plus, &minus, states)
}

/// `Pf` built with `−F` acts as `(−1)^n Pf` on `states`.
pub fn pfaffian_sign_check(instance: &GaudinInstance, states: &[TensorState<Rat>]) -> Result<bool> {
    let n = instance.spec().size();
    let plus = pfaffian_operator_signed(instance, 1)?;
    let minus = pfaffian_operator_signed(instance, -1)?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    act_equal(instance, &minus, &plus.scale(&int(sign)), states)
}
