//! The classical Lie algebras `gl_N`, `o_N` and `sp_2n` realized inside `gl_N`.
//!
//! All matrix labels are zero-based internally. For types B, C and D the basis
//! consists of `F_ij` with `i + j < N - 1` (and `i + j = N - 1` in type C, where
//! `F_{i i'} = 2 E_{i i'}`); every other `F_ij` is a multiple of one of these.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        }
    }

    /// The family carrying the Langlands dual root system.
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::B | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// Values of a functional on the diagonal basis: `E_11..E_NN` (type A) or `F_11..F_nn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeightVector(pub Vec<Rat>);

impl WeightVector {
    pub fn zero(len: usize) -> Self {
        WeightVector(vec![Rat::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    Lowering,
    Cartan,
    Raising,
}

/// A basis element, labelled by the matrix position `(i, j)` of `E_ij` or `F_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub i: usize,
    pub j: usize,
    pub kind: RootKind,
    /// Weight in the coordinates of the diagonal basis.
    pub weight: WeightVector,
}

/// Linear combination of basis indices.
pub type Combo = Vec<(usize, Rat)>;

/// Chevalley generators of one simple root.
#[derive(Clone, Debug, PartialEq)]
pub struct ChevalleyTriple {
    pub e: Combo,
    pub f: Combo,
    /// Coefficients of `h = [e, f]` on the diagonal basis.
    pub h: Vec<Rat>,
    /// The simple root on the diagonal basis.
    pub alpha: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    family: Family,
    big_n: usize,
    n: usize,
    basis: Vec<BasisElement>,
    index: HashMap<(usize, usize), usize>,
    matrices: Vec<Vec<(usize, usize, Rat)>>,
    brackets: Vec<Vec<Combo>>,
    chevalley: Vec<ChevalleyTriple>,
    cartan: Vec<Vec<i64>>,
    lowering_order: Vec<usize>,
    pbw_rank: Vec<Option<usize>>,
    diag: Vec<usize>,
}

impl PartialEq for LieAlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.big_n == other.big_n
    }
}

impl LieAlgebraSpec {
    /// `gl_N`.
    pub fn gl(big_n: usize) -> Result<Self> {
        Self::new(Family::A, big_n)
    }

    /// `o_N`; `N = 2` is the abelian `o_2`, kept only for the `n = 1` Pfaffian.
    pub fn o(big_n: usize) -> Result<Self> {
        if big_n % 2 == 1 {
            Self::new(Family::B, big_n / 2)
        } else {
            Self::new(Family::D, big_n / 2)
        }
    }

    /// `sp_2n`.
    pub fn sp(n: usize) -> Result<Self> {
        Self::new(Family::C, n)
    }

    /// Builds the algebra of the given family: `gl_N` for `A` (argument `N`),
    /// `o_{2n+1}`, `sp_2n`, `o_2n` for `B`, `C`, `D` (argument `n`).
    pub fn new(family: Family, size: usize) -> Result<Self> {
        let (big_n, n) = match family {
            Family::A => (size, size),
            Family::B => (2 * size + 1, size),
            Family::C | Family::D => (2 * size, size),
        };
        if size == 0 {
            return Err(Error::InvalidSpec(format!("type {family} needs a positive size")));
        }
        if size > 8 {
            return Err(Error::OutOfRange { what: "size", value: size, min: 1, max: 8 });
        }
        let mut spec = LieAlgebraSpec {
            family,
            big_n,
            n,
            basis: Vec::new(),
            index: HashMap::new(),
            matrices: Vec::new(),
            brackets: Vec::new(),
            chevalley: Vec::new(),
            cartan: Vec::new(),
            lowering_order: Vec::new(),
            pbw_rank: Vec::new(),
            diag: Vec::new(),
        };
        spec.build_basis();
        spec.build_brackets();
        spec.build_chevalley();
        spec.build_pbw_order();
        Ok(spec)
    }

    fn eps(&self, i: usize) -> Rat {
        if self.family == Family::C && i >= self.n {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    fn is_representative(&self, i: usize, j: usize) -> bool {
        match self.family {
            Family::A => true,
            Family::C => i + j < self.big_n,
            _ => i + j + 1 < self.big_n,
        }
    }

    /// Weight of the standard basis vector `e_i` of `C^N`.
    fn unit_weight(&self, i: usize) -> WeightVector {
        let mut w = WeightVector::zero(self.diag_len());
        match self.family {
            Family::A => w.0[i] = Rat::one(),
            _ => {
                if i < self.n {
                    w.0[i] = Rat::one();
                } else if self.family == Family::B && i == self.n {
                } else {
                    w.0[self.big_n - 1 - i] = -Rat::one();
                }
            }
        }
        w
    }

    fn build_basis(&mut self) {
        for i in 0..self.big_n {
            for j in 0..self.big_n {
                if !self.is_representative(i, j) {
                    continue;
                }
                let kind = match i.cmp(&j) {
                    std::cmp::Ordering::Greater => RootKind::Lowering,
                    std::cmp::Ordering::Equal => RootKind::Cartan,
                    std::cmp::Ordering::Less => RootKind::Raising,
                };
                let weight = self.unit_weight(i).sub(&self.unit_weight(j));
                let matrix = self.label_matrix(i, j);
                self.index.insert((i, j), self.basis.len());
                self.basis.push(BasisElement { i, j, kind, weight });
                self.matrices.push(matrix);
            }
        }
        self.diag = (0..self.diag_len()).map(|d| self.index[&(d, d)]).collect();
    }

    /// Matrix of `E_ij` or `F_ij` as a list of nonzero entries.
    fn label_matrix(&self, i: usize, j: usize) -> Vec<(usize, usize, Rat)> {
        if self.family == Family::A {
            return vec![(i, j, Rat::one())];
        }
        let (jp, ip) = (self.prime(j), self.prime(i));
        let c = -(self.eps(i) * self.eps(j));
        if (jp, ip) == (i, j) {
            let total = Rat::one() + c;
            return if total.is_zero() { Vec::new() } else { vec![(i, j, total)] };
        }
        vec![(i, j, Rat::one()), (jp, ip, c)]
    }

    fn build_brackets(&mut self) {
        let dim = self.basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for x in 0..dim {
            for y in 0..dim {
                let prod = self.commutator_matrix(&self.matrices[x], &self.matrices[y]);
                table[x][y] = self.decompose_matrix(&prod);
            }
        }
        self.brackets = table;
    }

    fn commutator_matrix(
        &self,
        a: &[(usize, usize, Rat)],
        b: &[(usize, usize, Rat)],
    ) -> HashMap<(usize, usize), Rat> {
        let mut out: HashMap<(usize, usize), Rat> = HashMap::new();
        for (i, k, c) in a {
            for (k2, j, d) in b {
                if k == k2 {
                    *out.entry((*i, *j)).or_insert_with(Rat::zero) += c * d;
                }
            }
        }
        for (i, k, c) in b {
            for (k2, j, d) in a {
                if k == k2 {
                    *out.entry((*i, *j)).or_insert_with(Rat::zero) -= c * d;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Expresses a matrix lying in the algebra in the basis.
    pub fn decompose_matrix(&self, m: &HashMap<(usize, usize), Rat>) -> Combo {
        let mut out = Vec::new();
        for (idx, b) in self.basis.iter().enumerate() {
            let Some(v) = m.get(&(b.i, b.j)) else { continue };
            let c = if self.family == Family::C && b.i + b.j + 1 == self.big_n {
                v / int(2)
            } else {
                v.clone()
            };
            if !c.is_zero() {
                out.push((idx, c));
            }
        }
        out
    }

    fn build_chevalley(&mut self) {
        let r = self.rank();
        let mut triples = Vec::with_capacity(r);
        for l in 0..r {
            let (e, f) = self.chevalley_ef(l);
            let mut h = vec![Rat::zero(); self.diag_len()];
            for (hx, c) in self.bracket_combo(&e, &f) {
                let d = self.diag.iter().position(|&x| x == hx).expect("[e,f] lies in the Cartan");
                h[d] += c;
            }
            let alpha = self.weight_of_combo(&e);
            triples.push(ChevalleyTriple { e, f, h, alpha });
        }
        let cartan = (0..r)
            .map(|l| {
                (0..r)
                    .map(|s| {
                        let v = dot(&triples[l].h, &triples[s].alpha);
                        assert!(v.is_integer());
                        i64::try_from(v.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect();
        self.chevalley = triples;
        self.cartan = cartan;
    }

    fn chevalley_ef(&self, l: usize) -> (Combo, Combo) {
        let n = self.n;
        let one = Rat::one;
        let idx = |i: usize, j: usize| self.index[&(i, j)];
        match self.family {
            Family::A => (vec![(idx(l, l + 1), one())], vec![(idx(l + 1, l), one())]),
            _ if l + 1 < n => (vec![(idx(l, l + 1), one())], vec![(idx(l + 1, l), one())]),
            Family::B => (vec![(idx(n - 1, n), one())], vec![(idx(n, n - 1), int(2))]),
            Family::C => {
                let half = Rat::new(1.into(), 2.into());
                (vec![(idx(n - 1, n), half.clone())], vec![(idx(n, n - 1), half)])
            }
            Family::D => (vec![(idx(n - 2, n), one())], vec![(idx(n, n - 2), one())]),
        }
    }

    fn weight_of_combo(&self, c: &Combo) -> Vec<Rat> {
        self.basis[c[0].0].weight.0.clone()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Matrix size `N`.
    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// `n` for types B, C, D; `N` for type A.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.big_n - 1,
            Family::D if self.n == 1 => 0,
            _ => self.n,
        }
    }

    /// Length of a [`WeightVector`]: `N` for type A, `n` otherwise.
    pub fn diag_len(&self) -> usize {
        match self.family {
            Family::A => self.big_n,
            _ => self.n,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, x: usize) -> &BasisElement {
        &self.basis[x]
    }

    /// `i' = N - 1 - i` (zero-based).
    pub fn prime(&self, i: usize) -> usize {
        self.big_n - 1 - i
    }

    /// `ε_i`: `-1` for the second half of the indices in type C, `+1` otherwise.
    pub fn eps_sign(&self, i: usize) -> Rat {
        self.eps(i)
    }

    /// Basis index of the representative label `(i, j)`.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Basis index of the diagonal element `E_dd` / `F_dd`.
    pub fn diag_index(&self, d: usize) -> usize {
        self.diag[d]
    }

    /// `E_ij` (type A) or `F_ij` (types B, C, D) for any zero-based label, in the basis.
    pub fn label(&self, i: usize, j: usize) -> Result<Combo> {
        if i >= self.big_n || j >= self.big_n {
            return Err(Error::InvalidIndex { what: "matrix", index: i.max(j), bound: self.big_n });
        }
        if let Some(x) = self.index_of(i, j) {
            return Ok(vec![(x, Rat::one())]);
        }
        let (jp, ip) = (self.prime(j), self.prime(i));
        match self.index_of(jp, ip) {
            Some(x) => Ok(vec![(x, -(self.eps(i) * self.eps(j)))]),
            None => Ok(Vec::new()),
        }
    }

    pub fn bracket(&self, x: usize, y: usize) -> Result<&Combo> {
        let dim = self.dim();
        for v in [x, y] {
            if v >= dim {
                return Err(Error::InvalidIndex { what: "basis", index: v, bound: dim });
            }
        }
        Ok(&self.brackets[x][y])
    }

    pub(crate) fn bracket_unchecked(&self, x: usize, y: usize) -> &Combo {
        &self.brackets[x][y]
    }

    pub fn bracket_combo(&self, a: &Combo, b: &Combo) -> Combo {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (x, c) in a {
            for (y, d) in b {
                for (z, e) in &self.brackets[*x][*y] {
                    *acc.entry(*z).or_insert_with(Rat::zero) += c * d * e;
                }
            }
        }
        let mut out: Combo = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn chevalley(&self, l: usize) -> Result<&ChevalleyTriple> {
        self.chevalley
            .get(l)
            .ok_or(Error::InvalidIndex { what: "simple root", index: l, bound: self.rank() })
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `⟨α̌_l, λ⟩ = λ(h_l)`.
    pub fn pairing_coroot_weight(&self, l: usize, lambda: &WeightVector) -> Result<Rat> {
        Ok(dot(&self.chevalley(l)?.h, &lambda.0))
    }

    /// `⟨α̌_l, α_s⟩ = a_ls`.
    pub fn pairing_coroot_root(&self, l: usize, s: usize) -> Result<i64> {
        self.chevalley(l)?;
        self.chevalley(s)?;
        Ok(self.cartan[l][s])
    }

    /// `α_l` evaluated on the `d`-th diagonal basis element.
    pub fn root_on_diagonal(&self, l: usize, d: usize) -> Result<Rat> {
        let t = self.chevalley(l)?;
        t.alpha
            .get(d)
            .cloned()
            .ok_or(Error::InvalidIndex { what: "diagonal", index: d, bound: self.diag_len() })
    }

    /// Lowering basis elements in PBW order (height, then label).
    pub fn lowering_order(&self) -> &[usize] {
        &self.lowering_order
    }

    /// Position of a lowering element in the PBW order.
    pub fn pbw_rank(&self, x: usize) -> Option<usize> {
        self.pbw_rank[x]
    }

    /// Height of the root `-wt(x)` for a lowering element.
    pub fn height(&self, x: usize) -> Rat {
        let rho = self.rho_check();
        -dot(&rho, &self.basis[x].weight.0)
    }

    /// A functional taking the value 1 on every simple root.
    fn rho_check(&self) -> Vec<Rat> {
        let len = self.diag_len();
        match self.family {
            Family::A => (0..len).map(|d| int((len - 1 - d) as i64)).collect(),
            _ => {
                let last = match self.family {
                    Family::B => Rat::one(),
                    Family::C => Rat::new(1.into(), 2.into()),
                    _ => Rat::zero(),
                };
                let mut c = vec![Rat::zero(); len];
                c[len - 1] = last;
                if self.family == Family::D && len >= 2 {
                    c[len - 2] = Rat::one();
                    for d in (0..len.saturating_sub(2)).rev() {
                        c[d] = &c[d + 1] + Rat::one();
                    }
                } else {
                    for d in (0..len - 1).rev() {
                        c[d] = &c[d + 1] + Rat::one();
                    }
                }
                c
            }
        }
    }

    fn build_pbw_order(&mut self) {
        let mut lows: Vec<usize> = (0..self.dim())
            .filter(|&x| self.basis[x].kind == RootKind::Lowering)
            .collect();
        lows.sort_by(|&a, &b| {
            let (ha, hb) = (self.height(a), self.height(b));
            ha.cmp(&hb)
                .then((self.basis[a].i, self.basis[a].j).cmp(&(self.basis[b].i, self.basis[b].j)))
        });
        let mut rank = vec![None; self.dim()];
        for (r, &x) in lows.iter().enumerate() {
            rank[x] = Some(r);
        }
        self.lowering_order = lows;
        self.pbw_rank = rank;
    }

    /// Value of a weight on a Cartan basis element.
    pub fn weight_on(&self, lambda: &WeightVector, x: usize) -> Rat {
        let b = &self.basis[x];
        debug_assert_eq!(b.kind, RootKind::Cartan);
        lambda.0[b.i].clone()
    }

    pub fn check_weight(&self, lambda: &WeightVector) -> Result<()> {
        if lambda.len() != self.diag_len() {
            return Err(Error::InvalidSpec(format!(
                "weight has {} entries, expected {}",
                lambda.len(),
                self.diag_len()
            )));
        }
        Ok(())
    }

    /// Human-readable name such as `gl_3`, `o_5`, `sp_4`.
    pub fn name(&self) -> String {
        match self.family {
            Family::A => format!("gl_{}", self.big_n),
            Family::B | Family::D => format!("o_{}", self.big_n),
            Family::C => format!("sp_{}", self.big_n),
        }
    }

    /// Printable label of a basis element, one-based.
    pub fn basis_name(&self, x: usize) -> String {
        let b = &self.basis[x];
        let letter = if self.family == Family::A { "E" } else { "F" };
        format!("{letter}{},{}", b.i + 1, b.j + 1)
    }

    /// Dense matrix of a basis element, for tests and the trace builders.
    pub fn matrix(&self, x: usize) -> &[(usize, usize, Rat)] {
        &self.matrices[x]
    }
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<LieAlgebraSpec> {
        let mut v = Vec::new();
        for n in 1..=6 {
            v.push(LieAlgebraSpec::gl(n).unwrap());
        }
        for big in 2..=6 {
            v.push(LieAlgebraSpec::o(big).unwrap());
        }
        for n in 1..=3 {
            v.push(LieAlgebraSpec::sp(n).unwrap());
        }
        v
    }

    fn combo_add(a: &mut HashMap<usize, Rat>, c: &Combo, s: &Rat) {
        for (k, v) in c {
            *a.entry(*k).or_insert_with(Rat::zero) += v * s;
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(LieAlgebraSpec::gl(3).unwrap().dim(), 9);
        assert_eq!(LieAlgebraSpec::o(3).unwrap().dim(), 3);
        assert_eq!(LieAlgebraSpec::o(4).unwrap().dim(), 6);
        assert_eq!(LieAlgebraSpec::o(5).unwrap().dim(), 10);
        assert_eq!(LieAlgebraSpec::sp(1).unwrap().dim(), 3);
        assert_eq!(LieAlgebraSpec::sp(2).unwrap().dim(), 10);
        assert_eq!(LieAlgebraSpec::o(2).unwrap().rank(), 0);
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        for spec in all_specs() {
            let d = spec.dim();
            for x in 0..d {
                for y in 0..d {
                    let mut s = HashMap::new();
                    combo_add(&mut s, spec.bracket(x, y).unwrap(), &Rat::one());
                    combo_add(&mut s, spec.bracket(y, x).unwrap(), &Rat::one());
                    assert!(s.values().all(Zero::is_zero), "{} antisymmetry", spec.name());
                }
            }
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let mut acc = HashMap::new();
                        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                            let inner = spec.bracket(b, c).unwrap().clone();
                            let outer = spec.bracket_combo(&vec![(a, Rat::one())], &inner);
                            combo_add(&mut acc, &outer, &Rat::one());
                        }
                        assert!(acc.values().all(Zero::is_zero), "{} Jacobi", spec.name());
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_relations() {
        for spec in all_specs() {
            let r = spec.rank();
            for i in 0..r {
                let ti = spec.chevalley(i).unwrap();
                let hi: Combo = ti
                    .h
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(d, c)| (spec.diag_index(d), c.clone()))
                    .collect();
                for j in 0..r {
                    let tj = spec.chevalley(j).unwrap();
                    let ef = spec.bracket_combo(&ti.e, &tj.f);
                    if i == j {
                        assert_eq!(ef, {
                            let mut h = hi.clone();
                            h.sort_by_key(|p| p.0);
                            h
                        });
                    } else {
                        assert!(ef.is_empty(), "{} [e{i},f{j}]", spec.name());
                    }
                    let he = spec.bracket_combo(&hi, &tj.e);
                    let a = int(spec.cartan_matrix()[i][j]);
                    let expected: Combo = tj.e.iter().map(|(k, c)| (*k, c * &a)).collect();
                    let expected: Combo = expected.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    assert_eq!(he, expected, "{} [h{i},e{j}]", spec.name());
                }
                assert_eq!(spec.cartan_matrix()[i][i], 2);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let gl2 = LieAlgebraSpec::gl(2).unwrap();
        let (e12, e21) = (gl2.index_of(0, 1).unwrap(), gl2.index_of(1, 0).unwrap());
        let mut b = gl2.bracket(e12, e21).unwrap().clone();
        b.sort_by_key(|p| p.0);
        assert_eq!(b, vec![(gl2.diag_index(0), int(1)), (gl2.diag_index(1), int(-1))]);

        let o3 = LieAlgebraSpec::o(3).unwrap();
        let b = o3.bracket(o3.index_of(0, 1).unwrap(), o3.index_of(1, 0).unwrap()).unwrap();
        assert_eq!(b, &vec![(o3.diag_index(0), int(1))]);

        let sp2 = LieAlgebraSpec::sp(1).unwrap();
        let b = sp2.bracket(sp2.diag_index(0), sp2.index_of(0, 1).unwrap()).unwrap();
        assert_eq!(b, &vec![(sp2.index_of(0, 1).unwrap(), int(2))]);
        assert!(gl2.bracket(0, 17).is_err());
    }

    #[test]
    fn pairings() {
        let gl2 = LieAlgebraSpec::gl(2).unwrap();
        assert_eq!(gl2.pairing_coroot_weight(0, &WeightVector::from_ints(&[1, 0])).unwrap(), int(1));
        let b2 = LieAlgebraSpec::new(Family::B, 2).unwrap();
        assert_eq!(b2.pairing_coroot_weight(1, &WeightVector::from_ints(&[1, 0])).unwrap(), int(0));
        assert_eq!(b2.pairing_coroot_weight(1, &WeightVector::from_ints(&[0, 1])).unwrap(), int(2));
        assert_eq!(b2.pairing_coroot_weight(0, &WeightVector::zero(2)).unwrap(), int(0));
        let a2 = LieAlgebraSpec::gl(3).unwrap();
        assert_eq!(a2.pairing_coroot_root(0, 1).unwrap(), -1);
        let c2 = LieAlgebraSpec::sp(2).unwrap();
        assert_eq!(c2.cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(b2.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        let d3 = LieAlgebraSpec::o(6).unwrap();
        assert_eq!(d3.cartan_matrix(), &[vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]);
    }

    #[test]
    fn roots_on_diagonal() {
        let gl4 = LieAlgebraSpec::gl(4).unwrap();
        for l in 0..3 {
            for k in 0..4 {
                let expected = int((k == l) as i64 - (k == l + 1) as i64);
                assert_eq!(gl4.root_on_diagonal(l, k).unwrap(), expected);
            }
        }
        let b2 = LieAlgebraSpec::new(Family::B, 2).unwrap();
        assert_eq!(b2.root_on_diagonal(1, 1).unwrap(), int(1));
        let d2 = LieAlgebraSpec::o(4).unwrap();
        assert_eq!(d2.root_on_diagonal(1, 0).unwrap(), int(1));
        assert_eq!(d2.root_on_diagonal(1, 1).unwrap(), int(1));
        let c2 = LieAlgebraSpec::sp(2).unwrap();
        assert_eq!(c2.root_on_diagonal(1, 1).unwrap(), int(2));
    }

    #[test]
    fn prime_involution_and_label_identities() {
        for spec in all_specs() {
            let nn = spec.big_n();
            for i in 0..nn {
                assert_eq!(spec.prime(spec.prime(i)), i);
                for j in 0..nn {
                    if spec.family() == Family::A {
                        continue;
                    }
                    let a = spec.label(spec.prime(i), spec.prime(j)).unwrap();
                    let b = spec.label(j, i).unwrap();
                    let s = -(spec.eps_sign(i) * spec.eps_sign(j));
                    let scaled: Combo = b.iter().map(|(k, c)| (*k, c * &s)).collect();
                    assert_eq!(a, scaled);
                }
            }
        }
    }

    #[test]
    fn heights_are_positive_integers() {
        for spec in all_specs() {
            for &x in spec.lowering_order() {
                let h = spec.height(x);
                assert!(h.is_integer() && h >= Rat::one(), "{} {}", spec.name(), spec.basis_name(x));
            }
            let c = spec.lowering_order();
            for w in c.windows(2) {
                assert!(spec.height(w[0]) <= spec.height(w[1]));
            }
        }
        let sp4 = LieAlgebraSpec::sp(2).unwrap();
        let top = *sp4.lowering_order().last().unwrap();
        assert_eq!(sp4.height(top), int(3));
    }
}
