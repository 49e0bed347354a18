//! Gaudin instances, Bethe roots, the Bethe equations and Bethe vectors.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lie::{Combo, LieAlgebraSpec, WeightVector};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::scalar::{HpFloat, Magnitude, Rat, Scalar};
use crate::verma::{TensorProduct, TensorState};
use crate::diffop::Letter;

/// Residual tolerance for float solutions of the Bethe equations.
pub const BAE_TOLERANCE: f64 = 1e-30;
/// Newton iteration cap.
pub const MAX_NEWTON_ITERATIONS: usize = 200;
const COLLISION_DISTANCE: f64 = 1e-20;
const PIVOT_FLOOR: f64 = 1e-60;

/// Highest weights `λ_a` at distinct points `z_a`, plus the twist `χ`.
#[derive(Clone, Debug)]
pub struct GaudinInstance {
    spec: Arc<LieAlgebraSpec>,
    weights: Vec<WeightVector>,
    z: Vec<Rat>,
    chi: WeightVector,
}

impl GaudinInstance {
    pub fn new(spec: Arc<LieAlgebraSpec>, weights: Vec<WeightVector>, z: Vec<Rat>, chi: WeightVector) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpec("at least one site is required".into()));
        }
        if weights.len() != z.len() {
            return Err(Error::InvalidSpec(format!("{} weights but {} points", weights.len(), z.len())));
        }
        for w in weights.iter().chain(std::iter::once(&chi)) {
            spec.check_weight(w)?;
        }
        for a in 0..z.len() {
            for b in 0..a {
                if z[a] == z[b] {
                    return Err(Error::CoincidentPoints("evalPoints not distinct".into()));
                }
            }
        }
        Ok(GaudinInstance { spec, weights, z, chi })
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn sites(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    pub fn z(&self) -> &[Rat] {
        &self.z
    }

    pub fn chi(&self) -> &WeightVector {
        &self.chi
    }

    pub fn tensor_product(&self) -> Result<TensorProduct> {
        TensorProduct::new(self.spec.clone(), &self.weights)
    }
}

/// Bethe roots `w_j` with colors `i_j` (zero-based simple-root indices).
#[derive(Clone, Debug)]
pub struct BetheConfig<S> {
    instance: Arc<GaudinInstance>,
    roots: Vec<S>,
    colors: Vec<usize>,
}

impl<S: Scalar> BetheConfig<S> {
    pub fn new(instance: Arc<GaudinInstance>, roots: Vec<S>, colors: Vec<usize>) -> Result<Self> {
        if roots.len() != colors.len() {
            return Err(Error::InvalidSpec(format!("{} roots but {} colors", roots.len(), colors.len())));
        }
        let rank = instance.spec.rank();
        for &c in &colors {
            if c >= rank {
                return Err(Error::InvalidIndex { what: "color", index: c, bound: rank });
            }
        }
        for j in 0..roots.len() {
            for s in 0..j {
                if roots[j] == roots[s] {
                    return Err(Error::CoincidentPoints(format!("roots {} and {} coincide", s + 1, j + 1)));
                }
            }
            for z in &instance.z {
                if roots[j] == S::from_rat(z) {
                    return Err(Error::CoincidentPoints("root collides with evaluation point".into()));
                }
            }
        }
        Ok(BetheConfig { instance, roots, colors })
    }

    pub fn instance(&self) -> &Arc<GaudinInstance> {
        &self.instance
    }

    pub fn roots(&self) -> &[S] {
        &self.roots
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.instance.spec
    }

    /// Weight `Σ λ_a - Σ α_{i_j}` that the Bethe vector must carry.
    pub fn expected_weight(&self) -> WeightVector {
        let spec = self.spec();
        let mut w = self.instance.weights.iter().fold(WeightVector::zero(spec.diag_len()), |acc, l| acc.add(l));
        for &c in &self.colors {
            w = w.sub(&WeightVector(spec.chevalley(c).unwrap().alpha.clone()));
        }
        w
    }
}

fn coroot_values(instance: &GaudinInstance, color: usize) -> (Vec<Rat>, Rat) {
    let spec = &instance.spec;
    let lam = instance.weights.iter().map(|l| spec.pairing_coroot_weight(color, l).unwrap()).collect();
    let chi = spec.pairing_coroot_weight(color, &instance.chi).unwrap();
    (lam, chi)
}

/// `Σ_i ⟨α̌,λ_i⟩/(w_j - z_i) - Σ_{s≠j} a/(w_j - w_s) - ⟨α̌,χ⟩`, one entry per root.
pub fn bae_residual<S: Scalar>(config: &BetheConfig<S>) -> Result<Vec<S>> {
    let inst = &config.instance;
    let spec = &inst.spec;
    let m = config.roots.len();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let c = config.colors[j];
        let (lam, chi) = coroot_values(inst, c);
        let w = &config.roots[j];
        let mut r = -S::from_rat(&chi);
        for (l, z) in lam.iter().zip(&inst.z) {
            if l.is_zero() {
                continue;
            }
            let d = w.clone() - S::from_rat(z);
            if d.is_zero() {
                return Err(Error::CoincidentPoints("root collides with evaluation point".into()));
            }
            r = r + S::from_rat(l) / d;
        }
        for s in 0..m {
            if s == j {
                continue;
            }
            let a = spec.pairing_coroot_root(c, config.colors[s])?;
            if a == 0 {
                continue;
            }
            let d = w.clone() - config.roots[s].clone();
            if d.is_zero() {
                return Err(Error::CoincidentPoints(format!("roots {} and {} coincide", s + 1, j + 1)));
            }
            r = r - S::from_rat(&Rat::from_integer(a.into())) / d;
        }
        out.push(r);
    }
    Ok(out)
}

/// Outcome of [`bae_solve`]: exact when the shortcut applies, float otherwise.
#[derive(Clone, Debug)]
pub enum Solution {
    Exact(BetheConfig<Rat>),
    Float { config: BetheConfig<HpFloat>, iterations: usize, residual: f64 },
}

/// Refines `seeds` to a solution of the Bethe equations with the given colors.
pub fn bae_solve(instance: Arc<GaudinInstance>, colors: &[usize], seeds: &[HpFloat]) -> Result<Solution> {
    if colors.len() != seeds.len() {
        return Err(Error::InvalidSpec(format!("{} colors but {} seeds", colors.len(), seeds.len())));
    }
    if colors.is_empty() {
        return Ok(Solution::Exact(BetheConfig::new(instance, Vec::new(), Vec::new())?));
    }
    if colors.len() == 1 {
        if let Some(w) = single_root_exact(&instance, colors[0])? {
            return Ok(Solution::Exact(BetheConfig::new(instance, vec![w], colors.to_vec())?));
        }
    }
    newton(instance, colors, seeds)
}

/// With one root the equation is `P(w) / Q(w) = 0`; solve directly when `deg P ≤ 1`.
fn single_root_exact(instance: &GaudinInstance, color: usize) -> Result<Option<Rat>> {
    let p = single_root_numerator(instance, color);
    match p.degree() {
        None => Err(Error::DegenerateSystem),
        Some(0) => Err(Error::NoFiniteSolution),
        Some(1) => {
            let c = p.coeffs();
            Ok(Some(-&c[0] / &c[1]))
        }
        _ => Ok(None),
    }
}

fn newton(instance: Arc<GaudinInstance>, colors: &[usize], seeds: &[HpFloat]) -> Result<Solution> {
    let m = colors.len();
    let spec = instance.spec.clone();
    let zf: Vec<HpFloat> = instance.z.iter().map(HpFloat::from_rat).collect();
    let pair: Vec<(Vec<HpFloat>, HpFloat)> = colors
        .iter()
        .map(|&c| {
            let (l, x) = coroot_values(&instance, c);
            (l.iter().map(HpFloat::from_rat).collect(), HpFloat::from_rat(&x))
        })
        .collect();
    let mut cartan = vec![vec![HpFloat::zero(); m]; m];
    for j in 0..m {
        for s in 0..m {
            let a = spec.pairing_coroot_root(colors[j], colors[s])?;
            cartan[j][s] = HpFloat::from_rat(&Rat::from_integer(a.into()));
        }
    }
    let mut w = seeds.to_vec();
    let mut polish = 0;
    let mut best = f64::INFINITY;
    for it in 0..=MAX_NEWTON_ITERATIONS {
        check_collisions(&w, &zf)?;
        let mut f = vec![HpFloat::zero(); m];
        let mut jac = vec![vec![HpFloat::zero(); m]; m];
        for j in 0..m {
            let (lam, chi) = &pair[j];
            let mut r = -chi.clone();
            let mut djj = HpFloat::zero();
            for (l, z) in lam.iter().zip(&zf) {
                let inv = HpFloat::one() / (&w[j] - z);
                r = r + l * &inv;
                djj = djj - l * &(&inv * &inv);
            }
            for s in 0..m {
                if s == j {
                    continue;
                }
                let inv = HpFloat::one() / (&w[j] - &w[s]);
                let a = &cartan[j][s];
                r = r - a * &inv;
                let sq = a * &(&inv * &inv);
                djj = djj + sq.clone();
                jac[j][s] = -sq;
            }
            jac[j][j] = djj;
            f[j] = r;
        }
        let res = f.iter().map(Magnitude::magnitude).fold(0.0, f64::max);
        if res < BAE_TOLERANCE {
            // a few extra steps drive the residual to working precision
            if polish >= 3 || res == 0.0 || res >= best {
                let config = BetheConfig::new(instance, w, colors.to_vec())?;
                return Ok(Solution::Float { config, iterations: it, residual: res.min(best) });
            }
            polish += 1;
        }
        best = best.min(res);
        if it == MAX_NEWTON_ITERATIONS {
            return Err(Error::Divergence { iterations: it, residual: res });
        }
        let delta = solve_linear(jac, f.into_iter().map(|x| -x).collect()).ok_or(Error::SingularJacobian { iteration: it })?;
        for (wj, dj) in w.iter_mut().zip(delta) {
            *wj = &*wj + &dj;
        }
    }
    unreachable!()
}

fn check_collisions(w: &[HpFloat], z: &[HpFloat]) -> Result<()> {
    for j in 0..w.len() {
        for s in 0..j {
            if (&w[j] - &w[s]).magnitude() < COLLISION_DISTANCE {
                return Err(Error::RootCollision(format!("roots {} and {}", s + 1, j + 1)));
            }
        }
        for (a, za) in z.iter().enumerate() {
            if (&w[j] - za).magnitude() < COLLISION_DISTANCE {
                return Err(Error::RootCollision(format!("root {} and point z_{}", j + 1, a + 1)));
            }
        }
    }
    Ok(())
}

/// Gaussian elimination with partial pivoting; `None` if a pivot is negligible.
fn solve_linear(mut a: Vec<Vec<HpFloat>>, mut b: Vec<HpFloat>) -> Option<Vec<HpFloat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].magnitude().total_cmp(&a[y][col].magnitude()))?;
        if a[piv][col].magnitude() < PIVOT_FLOOR {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &v;
            }
            let v = &factor * &b[col];
            b[r] = &b[r] - &v;
        }
    }
    let mut x = vec![HpFloat::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - &a[r][c] * &x[c];
        }
        x[r] = acc / a[r][r].clone();
    }
    Some(x)
}

/// Every way to distribute `0..m` into `sites` ordered blocks.
pub fn ordered_partitions(m: usize, sites: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![vec![Vec::new(); sites]];
    for j in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..sites {
                for pos in 0..=p[k].len() {
                    let mut q = p.clone();
                    q[k].insert(pos, j);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn act_combo<K: Scalar>(tp: &TensorProduct, state: &TensorState<K>, combo: &Combo, site: usize) -> TensorState<K> {
    let mut out = TensorState::zero();
    for (x, c) in combo {
        let part = tp.act_letter(state, Letter { basis: *x, site }).expect("valid letter");
        out = out.add(&part.scale(&K::from_rat(c)));
    }
    out
}

/// The Bethe vector: a sum over ordered partitions of the roots into the sites.
pub fn bethe_vector<S: Scalar>(config: &BetheConfig<S>) -> Result<TensorState<S>> {
    let inst = &config.instance;
    let tp = inst.tensor_product()?;
    let spec = &inst.spec;
    let sites = inst.sites();
    let mut total = TensorState::zero();
    for part in ordered_partitions(config.roots.len(), sites) {
        let mut coeff = S::one();
        let mut state = TensorState::highest(sites);
        for (k, block) in part.iter().enumerate() {
            for (s, &j) in block.iter().enumerate() {
                let next = match block.get(s + 1) {
                    Some(&j2) => config.roots[j2].clone(),
                    None => S::from_rat(&inst.z[k]),
                };
                coeff = coeff / (config.roots[j].clone() - next);
            }
            for &j in block.iter().rev() {
                let f = &spec.chevalley(config.colors[j])?.f;
                state = act_combo(&tp, &state, f, k);
            }
        }
        total = total.add(&state.scale(&coeff));
    }
    Ok(total)
}

/// `ℰ_ii(u)` / `ℱ_ii(u)` for every diagonal index, exactly.
pub fn eigen_functions(config: &BetheConfig<Rat>) -> Vec<RationalFunction> {
    let inst = &config.instance;
    let spec = &inst.spec;
    (0..spec.diag_len())
        .map(|i| {
            let mut f = RationalFunction::constant(-inst.chi.0[i].clone());
            for (l, z) in inst.weights.iter().zip(&inst.z) {
                f = &f + &RationalFunction::simple_pole(z).scale(&l.0[i]);
            }
            for (w, &c) in config.roots.iter().zip(&config.colors) {
                let a = spec.root_on_diagonal(c, i).unwrap();
                f = &f - &RationalFunction::simple_pole(w).scale(&a);
            }
            f
        })
        .collect()
}

/// The same functions as Taylor jets at `u0`, for roots that are not rational.
pub fn eigen_jets<S: Scalar>(config: &BetheConfig<S>, u0: &S, order: usize) -> Vec<Jet<S>> {
    let inst = &config.instance;
    let spec = &inst.spec;
    (0..spec.diag_len())
        .map(|i| {
            let mut f = Jet::constant(-S::from_rat(&inst.chi.0[i]));
            for (l, z) in inst.weights.iter().zip(&inst.z) {
                if !l.0[i].is_zero() {
                    let p = Jet::simple_pole(u0, &S::from_rat(z), order);
                    f = f + p * Jet::constant(S::from_rat(&l.0[i]));
                }
            }
            for (w, &c) in config.roots.iter().zip(&config.colors) {
                let a = spec.root_on_diagonal(c, i).unwrap();
                if !a.is_zero() {
                    let p = Jet::simple_pole(u0, w, order);
                    f = f - p * Jet::constant(S::from_rat(&a));
                }
            }
            f
        })
        .collect()
}

/// Numerator of the single-root residual as a function of `w`.
pub fn single_root_numerator(instance: &GaudinInstance, color: usize) -> Poly {
    let (lam, chi) = coroot_values(instance, color);
    let mut r = RationalFunction::constant(-chi);
    for (l, z) in lam.iter().zip(&instance.z) {
        r = &r + &RationalFunction::simple_pole(z).scale(l);
    }
    r.num().clone()
}
