//! Verma modules `M_λ` in the PBW basis of `U(n_-)` and their tensor products.
//!
//! A PBW monomial is a list of lowering basis indices sorted weakly increasingly by
//! [`LieAlgebraSpec::pbw_rank`]; the monomial `y_1 ⋯ y_k` stands for `y_1 ⋯ y_k 1_λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::diffop::{DiffPolyOperator, Letter, OperatorWord};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraSpec, RootKind, WeightVector};
use crate::ratfun::RationalFunction;
use crate::scalar::{Magnitude, Rat, Scalar};

pub type Mono = Vec<usize>;
pub type Tuple = Vec<Mono>;
type Lin = Vec<(Mono, Rat)>;

fn accumulate(map: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

/// One Verma module with a memo table for `x · monomial`.
#[derive(Debug)]
pub struct VermaModule {
    spec: Arc<LieAlgebraSpec>,
    lambda: WeightVector,
    cache: RwLock<HashMap<(usize, Mono), Arc<Lin>>>,
}

impl VermaModule {
    pub fn new(spec: Arc<LieAlgebraSpec>, lambda: WeightVector) -> Result<Self> {
        spec.check_weight(&lambda)?;
        Ok(VermaModule { spec, lambda, cache: RwLock::new(HashMap::new()) })
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn highest_weight(&self) -> &WeightVector {
        &self.lambda
    }

    /// Weight of `mono · 1_λ`.
    pub fn weight(&self, mono: &[usize]) -> WeightVector {
        mono.iter().fold(self.lambda.clone(), |w, &y| w.add(&self.spec.element(y).weight))
    }

    fn rank(&self, x: usize) -> usize {
        self.spec.pbw_rank(x).expect("lowering element")
    }

    /// `x · (mono · 1_λ)` in the PBW basis.
    pub fn act(&self, x: usize, mono: &[usize]) -> Arc<Lin> {
        let key = (x, mono.to_vec());
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.act_uncached(x, mono));
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    fn act_uncached(&self, x: usize, mono: &[usize]) -> Lin {
        let el = self.spec.element(x);
        match el.kind {
            RootKind::Cartan => {
                let c = self.weight(mono).0[el.i].clone();
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(mono.to_vec(), c)]
                }
            }
            _ if mono.is_empty() => {
                if el.kind == RootKind::Lowering {
                    vec![(vec![x], Rat::one())]
                } else {
                    Vec::new()
                }
            }
            RootKind::Lowering if self.rank(x) <= self.rank(mono[0]) => {
                let mut m = Vec::with_capacity(mono.len() + 1);
                m.push(x);
                m.extend_from_slice(mono);
                vec![(m, Rat::one())]
            }
            _ => {
                // x y rest = y (x rest) + [x, y] rest
                let y = mono[0];
                let rest = &mono[1..];
                let mut acc = BTreeMap::new();
                for (m1, c1) in self.act(x, rest).iter() {
                    for (m2, c2) in self.act(y, m1).iter() {
                        accumulate(&mut acc, m2.clone(), c1 * c2);
                    }
                }
                for (z, cz) in self.spec.bracket_unchecked(x, y) {
                    for (m2, c2) in self.act(*z, rest).iter() {
                        accumulate(&mut acc, m2.clone(), cz * c2);
                    }
                }
                acc.into_iter().collect()
            }
        }
    }

    /// Image of `word · 1_λ` in the PBW basis; the rightmost letter acts first.
    pub fn straighten(&self, word: &[usize]) -> BTreeMap<Mono, Rat> {
        let mut cur: BTreeMap<Mono, Rat> = BTreeMap::new();
        cur.insert(Vec::new(), Rat::one());
        for &x in word.iter().rev() {
            let mut next = BTreeMap::new();
            for (m, c) in &cur {
                for (m2, c2) in self.act(x, m).iter() {
                    accumulate(&mut next, m2.clone(), c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    fn letter_key(&self, x: usize) -> (u8, usize) {
        let el = self.spec.element(x);
        match el.kind {
            RootKind::Lowering => (0, self.rank(x)),
            RootKind::Cartan => (1, x),
            RootKind::Raising => (2, x),
        }
    }

    /// Straightens a raw word by rewriting on words directly, with `choose(k)` picking
    /// which of the `k` available rewrites to apply next. Any choice sequence must give
    /// the same result as [`VermaModule::straighten`].
    pub fn straighten_with(
        &self,
        word: &[usize],
        choose: &mut dyn FnMut(usize) -> usize,
    ) -> BTreeMap<Mono, Rat> {
        let mut pending: Vec<(Vec<usize>, Rat)> = vec![(word.to_vec(), Rat::one())];
        let mut done = BTreeMap::new();
        while let Some((w, c)) = pending.pop() {
            // candidate rewrites: adjacent inversions, or evaluating the rightmost letter
            let mut moves: Vec<Option<usize>> = (0..w.len().saturating_sub(1))
                .filter(|&p| self.letter_key(w[p]) > self.letter_key(w[p + 1]))
                .map(Some)
                .collect();
            let last_kind = w.last().map(|&x| self.spec.element(x).kind);
            if matches!(last_kind, Some(RootKind::Cartan | RootKind::Raising)) {
                moves.push(None);
            }
            if moves.is_empty() {
                accumulate(&mut done, w, c);
                continue;
            }
            match moves[choose(moves.len()) % moves.len()] {
                None => {
                    let x = *w.last().unwrap();
                    if self.spec.element(x).kind == RootKind::Cartan {
                        let v = self.lambda.0[self.spec.element(x).i].clone();
                        if !v.is_zero() {
                            pending.push((w[..w.len() - 1].to_vec(), c * v));
                        }
                    }
                }
                Some(p) => {
                    let (a, b) = (w[p], w[p + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    pending.push((swapped, c.clone()));
                    for (z, cz) in self.spec.bracket_unchecked(a, b) {
                        let mut v = w[..p].to_vec();
                        v.push(*z);
                        v.extend_from_slice(&w[p + 2..]);
                        pending.push((v, &c * cz));
                    }
                }
            }
        }
        done
    }
}

/// A finite linear combination of tuples of PBW monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorState<K> {
    terms: BTreeMap<Tuple, K>,
}

impl<K: Scalar> TensorState<K> {
    pub fn zero() -> Self {
        TensorState { terms: BTreeMap::new() }
    }

    pub fn basis(tuple: Tuple) -> Self {
        let mut s = Self::zero();
        s.add_term(tuple, K::one());
        s
    }

    /// `1_{λ_1} ⊗ ⋯ ⊗ 1_{λ_ℓ}`.
    pub fn highest(sites: usize) -> Self {
        Self::basis(vec![Vec::new(); sites])
    }

    pub fn add_term(&mut self, tuple: Tuple, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                self.terms.insert(tuple, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Tuple, K> {
        &self.terms
    }

    pub fn coefficient(&self, t: &Tuple) -> K {
        self.terms.get(t).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero();
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(t.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(t.clone(), -v.clone());
        }
        out
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> TensorState<L> {
        let mut out = TensorState::zero();
        for (t, v) in &self.terms {
            out.add_term(t.clone(), f(v));
        }
        out
    }
}

impl<K: Scalar + Magnitude> TensorState<K> {
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Magnitude::magnitude).fold(0.0, f64::max)
    }
}

/// `M_{λ_1} ⊗ ⋯ ⊗ M_{λ_ℓ}`.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    spec: Arc<LieAlgebraSpec>,
    modules: Vec<Arc<VermaModule>>,
}

/// Result of applying a [`DiffPolyOperator`]: one state per power of `∂`.
pub type Slices<C> = BTreeMap<usize, BTreeMap<Tuple, C>>;

impl TensorProduct {
    pub fn new(spec: Arc<LieAlgebraSpec>, weights: &[WeightVector]) -> Result<Self> {
        let modules = weights
            .iter()
            .map(|w| VermaModule::new(spec.clone(), w.clone()).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorProduct { spec, modules })
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn sites(&self) -> usize {
        self.modules.len()
    }

    pub fn module(&self, a: usize) -> &VermaModule {
        &self.modules[a]
    }

    fn check_letter(&self, letter: &Letter) -> Result<()> {
        if letter.site >= self.sites() {
            return Err(Error::InvalidIndex { what: "site", index: letter.site, bound: self.sites() });
        }
        if letter.basis >= self.spec.dim() {
            return Err(Error::InvalidIndex { what: "basis", index: letter.basis, bound: self.spec.dim() });
        }
        Ok(())
    }

    /// `X_a · state` with `X` a basis element acting on factor `a`.
    pub fn act_letter<K: Scalar>(&self, state: &TensorState<K>, letter: Letter) -> Result<TensorState<K>> {
        self.check_letter(&letter)?;
        Ok(self.act_letter_unchecked(state, letter))
    }

    fn act_letter_unchecked<K: Scalar>(&self, state: &TensorState<K>, letter: Letter) -> TensorState<K> {
        let module = &self.modules[letter.site];
        let mut out = TensorState::zero();
        for (tuple, c) in &state.terms {
            for (m, r) in module.act(letter.basis, &tuple[letter.site]).iter() {
                let mut t = tuple.clone();
                t[letter.site] = m.clone();
                let coeff = if r.is_one() { c.clone() } else { c.clone() * K::from_rat(r) };
                out.add_term(t, coeff);
            }
        }
        out
    }

    /// Applies a word; the rightmost letter acts first.
    pub fn act_word<K: Scalar>(&self, state: &TensorState<K>, word: &OperatorWord) -> Result<TensorState<K>> {
        for l in &word.0 {
            self.check_letter(l)?;
        }
        let mut cur = state.clone();
        for l in word.0.iter().rev() {
            cur = self.act_letter_unchecked(&cur, *l);
        }
        Ok(cur)
    }

    /// Applies every distinct word of an operator once, sharing common suffixes.
    pub fn act_words<K: Scalar>(
        &self,
        words: impl IntoIterator<Item = OperatorWord>,
        state: &TensorState<K>,
    ) -> Result<HashMap<OperatorWord, TensorState<K>>> {
        let mut memo: HashMap<Vec<Letter>, TensorState<K>> = HashMap::new();
        memo.insert(Vec::new(), state.clone());
        let mut out = HashMap::new();
        for w in words {
            for l in &w.0 {
                self.check_letter(l)?;
            }
            // longest memoized suffix; the empty suffix always is
            let start = (0..=w.0.len()).find(|&p| memo.contains_key(&w.0[p..])).unwrap();
            let mut cur = memo[&w.0[start..]].clone();
            for p in (0..start).rev() {
                cur = self.act_letter_unchecked(&cur, w.0[p]);
                memo.insert(w.0[p..].to_vec(), cur.clone());
            }
            out.insert(w, cur);
        }
        Ok(out)
    }

    /// Applies `A = Σ c(u) w ∂^k` to a `u`-independent state, one slice per `k`.
    /// `combine(c, x)` forms the coefficient contributed by a function `c` and a state
    /// coefficient `x`.
    pub fn apply_diffop_with<K: Scalar, C: Clone + Zero>(
        &self,
        op: &DiffPolyOperator,
        state: &TensorState<K>,
        combine: impl Fn(&RationalFunction, &K) -> C,
    ) -> Result<Slices<C>> {
        if op.sites() != self.sites() {
            return Err(crate::error::AlgebraError::SiteMismatch { left: op.sites(), right: self.sites() }.into());
        }
        let mut words: Vec<OperatorWord> = op.terms().keys().map(|(w, _)| w.clone()).collect();
        words.dedup();
        let images = self.act_words(words, state)?;
        let mut out: Slices<C> = BTreeMap::new();
        for ((w, k), c) in op.terms() {
            let slice = out.entry(*k).or_default();
            for (t, x) in images[w].terms() {
                let v = combine(c, x);
                match slice.get_mut(t) {
                    Some(acc) => *acc = acc.clone() + v,
                    None => {
                        slice.insert(t.clone(), v);
                    }
                }
            }
        }
        for slice in out.values_mut() {
            slice.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    /// Exact application with rational-function coefficients.
    pub fn apply_diffop(&self, op: &DiffPolyOperator, state: &TensorState<Rat>) -> Result<Slices<RationalFunction>> {
        self.apply_diffop_with(op, state, |c, x| c.scale(x))
    }

    /// The common weight of all terms.
    pub fn weight_of<K: Scalar>(&self, state: &TensorState<K>) -> Result<WeightVector> {
        let mut found: Option<WeightVector> = None;
        for tuple in state.terms.keys() {
            let w = tuple
                .iter()
                .zip(&self.modules)
                .fold(WeightVector::zero(self.spec.diag_len()), |acc, (m, module)| acc.add(&module.weight(m)));
            match &found {
                None => found = Some(w),
                Some(f) if *f == w => {}
                Some(_) => return Err(Error::InhomogeneousState),
            }
        }
        found.ok_or(Error::EmptyState)
    }

    /// All basis tuples with at most `depth` lowering letters in total.
    pub fn tuples_up_to(&self, depth: usize) -> Vec<Tuple> {
        let lows = self.spec.lowering_order().to_vec();
        let mut monos_by_len: Vec<Vec<Mono>> = vec![vec![Vec::new()]];
        for len in 1..=depth {
            let mut next = Vec::new();
            for m in &monos_by_len[len - 1] {
                for &x in &lows {
                    let ok = m.first().is_none_or(|&y| self.spec.pbw_rank(x) <= self.spec.pbw_rank(y));
                    if ok {
                        let mut v = vec![x];
                        v.extend_from_slice(m);
                        next.push(v);
                    }
                }
            }
            monos_by_len.push(next);
        }
        let mut out = Vec::new();
        fn rec(
            site: usize,
            sites: usize,
            left: usize,
            cur: &mut Tuple,
            by_len: &[Vec<Mono>],
            out: &mut Vec<Tuple>,
        ) {
            if site == sites {
                out.push(cur.clone());
                return;
            }
            for len in 0..=left {
                for m in &by_len[len] {
                    cur.push(m.clone());
                    rec(site + 1, sites, left - len, cur, by_len, out);
                    cur.pop();
                }
            }
        }
        rec(0, self.sites(), depth, &mut Vec::new(), &monos_by_len, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn gl2() -> Arc<LieAlgebraSpec> {
        Arc::new(LieAlgebraSpec::gl(2).unwrap())
    }

    #[test]
    fn sl2_relations() {
        let spec = gl2();
        let (e, f) = (spec.index_of(0, 1).unwrap(), spec.index_of(1, 0).unwrap());
        let lam = WeightVector(vec![Rat::new(7.into(), 3.into()), int(-1)]);
        let lh = &lam.0[0] - &lam.0[1];
        let m = VermaModule::new(spec.clone(), lam).unwrap();
        let r = m.straighten(&[e, f]);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(vec![], lh.clone())]);
        let r = m.straighten(&[e, f, f]);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(vec![f], int(2) * &lh - int(2))]);
        let r = m.straighten(&[f, f]);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(vec![f, f], int(1))]);
        for k in 1..6usize {
            let mut w = vec![e];
            w.extend(std::iter::repeat_n(f, k));
            let expected = int(k as i64) * (&lh - int(k as i64) + int(1));
            let r = m.straighten(&w);
            assert_eq!(r.get(&vec![f; k - 1]).cloned().unwrap_or_default(), expected);
        }
    }

    #[test]
    fn letters_on_tensor_states() {
        let spec = gl2();
        let l1 = WeightVector::from_ints(&[2, 1]);
        let l2 = WeightVector::from_ints(&[3, -1]);
        let tp = TensorProduct::new(spec.clone(), &[l1.clone(), l2.clone()]).unwrap();
        let (e, f) = (spec.index_of(0, 1).unwrap(), spec.index_of(1, 0).unwrap());
        let h1 = spec.diag_index(0);
        let hw: TensorState<Rat> = TensorState::highest(2);
        let s = tp.act_letter(&hw, Letter { basis: h1, site: 1 }).unwrap();
        assert_eq!(s, hw.scale(&int(3)));
        let low = tp.act_letter(&hw, Letter { basis: f, site: 0 }).unwrap();
        assert_eq!(low, TensorState::basis(vec![vec![f], vec![]]));
        let back = tp.act_letter(&low, Letter { basis: e, site: 0 }).unwrap();
        assert_eq!(back, hw.scale(&int(1)));
        assert!(tp.act_letter(&hw, Letter { basis: e, site: 2 }).is_err());
        assert_eq!(tp.weight_of(&hw).unwrap(), l1.add(&l2));
        assert_eq!(
            tp.weight_of(&low).unwrap(),
            l1.add(&l2).sub(&WeightVector::from_ints(&[1, -1]))
        );
        assert_eq!(tp.weight_of(&TensorState::<Rat>::zero()), Err(Error::EmptyState));
        assert_eq!(tp.weight_of(&hw.add(&low)), Err(Error::InhomogeneousState));
    }

    #[test]
    fn diffop_application_slices() {
        let spec = gl2();
        let tp = TensorProduct::new(spec.clone(), &[WeightVector::from_ints(&[1, 0]), WeightVector::from_ints(&[2, 0])]).unwrap();
        let hw: TensorState<Rat> = TensorState::highest(2);
        let id = DiffPolyOperator::one(2);
        let r = tp.apply_diffop(&id, &hw).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&0][&vec![vec![], vec![]]], RationalFunction::one());
        let f = RationalFunction::simple_pole(&int(5));
        let op = DiffPolyOperator::term(2, OperatorWord(vec![Letter { basis: spec.diag_index(0), site: 0 }]), 0, f.clone());
        let r = tp.apply_diffop(&op, &hw).unwrap();
        assert_eq!(r[&0][&vec![vec![], vec![]]], f);
        assert!(tp.apply_diffop(&DiffPolyOperator::one(3), &hw).is_err());
    }

    #[test]
    fn tuple_enumeration_counts() {
        let spec = Arc::new(LieAlgebraSpec::gl(3).unwrap());
        let tp = TensorProduct::new(spec, &[WeightVector::zero(3), WeightVector::zero(3)]).unwrap();
        // 3 lowering elements: monomials of length 0,1,2 number 1,3,6
        // tuples of total length <= 2 over two sites: 1 + 2*3 + (2*6 + 3*3) = 28
        assert_eq!(tp.tuples_up_to(2).len(), 28);
    }
}
