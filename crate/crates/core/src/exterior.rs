//! The quantum exterior algebra of `C_q^n`: subset bases, tensor products of
//! wedge powers and their duals, the `U_q(sl_n)` action, and the generating
//! morphisms `M`, `M'`, `D`, cup and cap.
//!
//! All maps here are built with `q = u` (root order one); callers needing a
//! finer root embed them with [`LinearMap::embed`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::scalar::{RootOrder, Scalar};

const Q: RootOrder = RootOrder::ONE;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("generator index {i} out of range for n = {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("label {k} out of range for n = {n}")]
    LabelOutOfRange { k: usize, n: usize },
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },
}

/// A subset of `{1..n}`, stored as a bitmask (element `i` is bit `i - 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements(elems: &[usize]) -> Subset {
        let mut bits = 0u32;
        for &e in elems {
            assert!((1..=32).contains(&e), "subset element {e} out of range");
            bits |= 1 << (e - 1);
        }
        Subset(bits)
    }

    pub fn from_bits(bits: u32) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Subset {
        Subset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Subset {
        Subset::from_elements(&[i])
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).minus(self)
    }

    /// All `k`-element subsets of `{1..n}`, in increasing bitmask order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        if k > n {
            return Vec::new();
        }
        (0..(1u64 << n))
            .map(|b| Subset(b as u32))
            .filter(|s| s.len() == k)
            .collect()
    }

    /// All `k`-element subsets of `self`.
    pub fn subsets_of_size(self, k: usize) -> Vec<Subset> {
        let elems = self.elements();
        Subset::all_of_size(elems.len(), k)
            .into_iter()
            .map(|pick| {
                let chosen: Vec<usize> = pick.elements().iter().map(|&j| elems[j - 1]).collect();
                Subset::from_elements(&chosen)
            })
            .collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `|{(i, j) : i in S, j in T, i < j}|`.
pub fn ell(s: Subset, t: Subset) -> usize {
    s.elements()
        .into_iter()
        .map(|i| {
            let above = if i >= 32 { 0 } else { !((1u32 << i) - 1) };
            (t.0 & above).count_ones() as usize
        })
        .sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One tensor factor: `Λ^k` for `+`, its dual for `-`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub k: usize,
    pub sign: Sign,
}

impl Factor {
    pub fn new(k: usize, sign: Sign) -> Self {
        Factor { k, sign }
    }

    pub fn up(k: usize) -> Self {
        Factor::new(k, Sign::Plus)
    }

    pub fn down(k: usize) -> Self {
        Factor::new(k, Sign::Minus)
    }

    pub fn dual(self) -> Self {
        Factor::new(self.k, self.sign.flip())
    }

    /// Labels `0` and `n` index one-dimensional factors.
    pub fn is_trivial(self, n: usize) -> bool {
        self.k == 0 || self.k == n
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.k, self.sign.symbol())
    }
}

/// A tensor product of wedge powers and duals over a fixed `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpaceObject {
    pub n: usize,
    pub factors: Vec<Factor>,
}

pub type Basis = Vec<Subset>;

impl SpaceObject {
    pub fn new(n: usize, factors: Vec<Factor>) -> Self {
        SpaceObject { n, factors }
    }

    pub fn empty(n: usize) -> Self {
        SpaceObject::new(n, Vec::new())
    }

    pub fn up(n: usize, labels: &[usize]) -> Self {
        SpaceObject::new(n, labels.iter().map(|&k| Factor::up(k)).collect())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn concat(&self, other: &SpaceObject) -> SpaceObject {
        assert_eq!(self.n, other.n);
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        SpaceObject::new(self.n, factors)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> SpaceObject {
        SpaceObject::new(self.n, self.factors[range].to_vec())
    }

    pub fn validate(&self) -> Result<(), ExteriorError> {
        for f in &self.factors {
            if f.k > self.n {
                return Err(ExteriorError::LabelOutOfRange { k: f.k, n: self.n });
            }
        }
        Ok(())
    }

    /// Every basis vector, lexicographic in the factor order.
    pub fn basis(&self) -> Vec<Basis> {
        let mut out: Vec<Basis> = vec![Vec::new()];
        for f in &self.factors {
            let subs = Subset::all_of_size(self.n, f.k);
            let mut next = Vec::with_capacity(out.len() * subs.len());
            for b in &out {
                for s in &subs {
                    let mut nb = b.clone();
                    nb.push(*s);
                    next.push(nb);
                }
            }
            out = next;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| binomial(self.n, f.k)).product()
    }

    /// The same object with `0`- and `n`-labelled factors deleted.
    pub fn stripped(&self) -> SpaceObject {
        SpaceObject::new(
            self.n,
            self.factors
                .iter()
                .copied()
                .filter(|f| !f.is_trivial(self.n))
                .collect(),
        )
    }

    pub fn conforms(&self, b: &Basis) -> bool {
        b.len() == self.factors.len()
            && b.iter()
                .zip(&self.factors)
                .all(|(s, f)| s.len() == f.k && s.is_subset_of(Subset::full(self.n)))
    }
}

impl fmt::Display for SpaceObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Renders a basis vector of `obj`, e.g. `({1,3},{2}*)`; duals carry a `*`.
pub fn render_basis(obj: &SpaceObject, b: &Basis) -> String {
    let parts: Vec<String> = b
        .iter()
        .zip(&obj.factors)
        .map(|(s, f)| match f.sign {
            Sign::Plus => s.to_string(),
            Sign::Minus => format!("{s}*"),
        })
        .collect();
    format!("({})", parts.join(","))
}

/// A sparse vector: basis vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Vector {
    terms: BTreeMap<Basis, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(b: Basis) -> Self {
        Vector::term(b, Scalar::one())
    }

    pub fn term(b: Basis, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(b, c);
        v
    }

    pub fn add_term(&mut self, b: Basis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
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

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Basis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn embed(&self, factor: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c.embed(factor)))
                .collect(),
        }
    }
}

impl std::ops::Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

/// A sparse linear map stored column by column; only nonzero columns are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    pub src: SpaceObject,
    pub tgt: SpaceObject,
    cols: BTreeMap<Basis, Vector>,
}

impl LinearMap {
    pub fn zero(src: SpaceObject, tgt: SpaceObject) -> Self {
        LinearMap {
            src,
            tgt,
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(obj: SpaceObject) -> Self {
        let cols = obj
            .basis()
            .into_iter()
            .map(|b| (b.clone(), Vector::basis(b)))
            .collect();
        LinearMap {
            src: obj.clone(),
            tgt: obj,
            cols,
        }
    }

    /// Builds a map from its action on each source basis vector.
    pub fn from_fn(
        src: SpaceObject,
        tgt: SpaceObject,
        mut f: impl FnMut(&Basis) -> Vector,
    ) -> Self {
        let mut map = LinearMap::zero(src.clone(), tgt);
        for b in src.basis() {
            let v = f(&b);
            map.set_column(b, v);
        }
        map
    }

    pub fn set_column(&mut self, b: Basis, v: Vector) {
        if v.is_zero() {
            self.cols.remove(&b);
        } else {
            self.cols.insert(b, v);
        }
    }

    pub fn column(&self, b: &Basis) -> Vector {
        self.cols.get(b).cloned().unwrap_or_default()
    }

    pub fn columns(&self) -> impl Iterator<Item = (&Basis, &Vector)> {
        self.cols.iter()
    }

    /// Nonzero entries as `(row, col, value)`, ordered by column then row.
    pub fn entries(&self) -> Vec<(Basis, Basis, Scalar)> {
        let mut out = Vec::new();
        for (c, v) in &self.cols {
            for (r, x) in v.iter() {
                out.push((r.clone(), c.clone(), x.clone()));
            }
        }
        out
    }

    pub fn entry(&self, row: &Basis, col: &Basis) -> Scalar {
        self.cols.get(col).map(|v| v.coeff(row)).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (b, c) in v.iter() {
            if let Some(col) = self.cols.get(b) {
                out.add_scaled(col, c);
            }
        }
        out
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &LinearMap) -> Result<LinearMap, ExteriorError> {
        if self.tgt != g.src {
            return Err(ExteriorError::ObjectMismatch {
                expected: self.tgt.to_string(),
                found: g.src.to_string(),
            });
        }
        let mut out = LinearMap::zero(self.src.clone(), g.tgt.clone());
        for (b, v) in &self.cols {
            out.set_column(b.clone(), g.apply(v));
        }
        Ok(out)
    }

    pub fn tensor(&self, g: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zero(self.src.concat(&g.src), self.tgt.concat(&g.tgt));
        for (b1, v1) in &self.cols {
            for (b2, v2) in &g.cols {
                let mut col = Vector::zero();
                for (r1, x1) in v1.iter() {
                    for (r2, x2) in v2.iter() {
                        let mut r = r1.clone();
                        r.extend_from_slice(r2);
                        col.add_term(r, x1 * x2);
                    }
                }
                let mut b = b1.clone();
                b.extend_from_slice(b2);
                out.set_column(b, col);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> LinearMap {
        let mut out = LinearMap::zero(self.src.clone(), self.tgt.clone());
        for (b, v) in &self.cols {
            out.set_column(b.clone(), v.scaled(c));
        }
        out
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, ExteriorError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (b, v) in &other.cols {
            let sum = &out.column(b) + v;
            out.set_column(b.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, ExteriorError> {
        self.add(&other.scaled(&Scalar::from_int(-1)))
    }

    fn check_shape(&self, other: &LinearMap) -> Result<(), ExteriorError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(ExteriorError::ObjectMismatch {
                expected: format!("{} -> {}", self.src, self.tgt),
                found: format!("{} -> {}", other.src, other.tgt),
            });
        }
        Ok(())
    }

    pub fn embed(&self, factor: u32) -> LinearMap {
        LinearMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            cols: self
                .cols
                .iter()
                .map(|(b, v)| (b.clone(), v.embed(factor)))
                .collect(),
        }
    }

    /// Deletes `0`- and `n`-labelled factors from source and target. Their
    /// unique basis vectors are identified with `1`.
    pub fn stripped(&self) -> LinearMap {
        let n = self.src.n;
        let keep = |obj: &SpaceObject, b: &Basis| -> Basis {
            b.iter()
                .zip(&obj.factors)
                .filter(|(_, f)| !f.is_trivial(n))
                .map(|(s, _)| *s)
                .collect()
        };
        let mut out = LinearMap::zero(self.src.stripped(), self.tgt.stripped());
        for (b, v) in &self.cols {
            let mut col = Vector::zero();
            for (r, x) in v.iter() {
                col.add_term(keep(&self.tgt, r), x.clone());
            }
            out.set_column(keep(&self.src, b), col);
        }
        out
    }

    /// Shape-checked entrywise equality.
    pub fn equals(&self, other: &LinearMap) -> Result<bool, ExteriorError> {
        self.check_shape(other)?;
        Ok(self.cols == other.cols)
    }

    /// The first entry where `self` and `other` differ, as `(row, col, self, other)`.
    pub fn first_difference(&self, other: &LinearMap) -> Option<(Basis, Basis, Scalar, Scalar)> {
        let diff = self.sub(other).ok()?;
        let (r, c, _) = diff.entries().into_iter().next()?;
        Some((
            r.clone(),
            c.clone(),
            self.entry(&r, &c),
            other.entry(&r, &c),
        ))
    }

    /// The unique entry of an endomorphism of the empty object.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if !self.src.is_empty() || !self.tgt.is_empty() {
            return None;
        }
        Some(self.entry(&Vec::new(), &Vec::new()))
    }
}

/// Generators of `U_q(sl_n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    E,
    F,
    K,
    KInv,
}

/// `x_{w1} ∧ ... ∧ x_{wa}` rewritten as `c * x_S`, or `None` when it vanishes.
///
/// Uses `x_i ∧ x_j = -q x_j ∧ x_i` for `i < j`: each ascending pair costs `-q`.
pub fn wedge_normalize(word: &[usize]) -> Option<(Scalar, Subset)> {
    let mut set = Subset::EMPTY;
    for &w in word {
        if set.contains(w) {
            return None;
        }
        set = set.union(Subset::singleton(w));
    }
    let mut inversions = 0i64;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] < word[b] {
                inversions += 1;
            }
        }
    }
    Some((Scalar::neg_q_pow(inversions, Q), set))
}

/// The descending word of `x_S`.
fn descending(s: Subset) -> Vec<usize> {
    let mut e = s.elements();
    e.reverse();
    e
}

fn k_weight(i: usize, x: usize) -> i64 {
    if x == i {
        1
    } else if x == i + 1 {
        -1
    } else {
        0
    }
}

/// `g` on one vector of `C_q^n`.
fn act_letter(g: Gen, i: usize, x: usize) -> Option<(Scalar, usize)> {
    match g {
        Gen::E => (x == i + 1).then(|| (Scalar::one(), i)),
        Gen::F => (x == i).then(|| (Scalar::one(), i + 1)),
        Gen::K => Some((Scalar::q_pow(k_weight(i, x), Q), x)),
        Gen::KInv => Some((Scalar::q_pow(-k_weight(i, x), Q), x)),
    }
}

type ActionTable = HashMap<Subset, Vec<(Subset, Scalar)>>;
type ActionKey = (usize, usize, Sign, Gen, usize);

fn action_cache() -> &'static RwLock<HashMap<ActionKey, Arc<ActionTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<ActionKey, Arc<ActionTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The action of `g` on `Λ^k` by iterated coproduct on the descending tensor word.
fn wedge_action(n: usize, k: usize, g: Gen, i: usize) -> ActionTable {
    let mut table = ActionTable::new();
    for s in Subset::all_of_size(n, k) {
        let word = descending(s);
        let mut acc: BTreeMap<Subset, Scalar> = BTreeMap::new();
        let a = word.len();
        match g {
            Gen::K | Gen::KInv => {
                let c: Scalar = word
                    .iter()
                    .map(|&x| act_letter(g, i, x).unwrap().0)
                    .product();
                acc.insert(s, c);
            }
            Gen::E | Gen::F => {
                // E acts as sum_j 1^(j-1) ⊗ E ⊗ K^(a-j); F as sum_j (K^-1)^(j-1) ⊗ F ⊗ 1^(a-j).
                for j in 0..a {
                    let Some((c0, y)) = act_letter(g, i, word[j]) else {
                        continue;
                    };
                    let mut c = c0;
                    let (range, dressing) = match g {
                        Gen::E => (j + 1..a, Gen::K),
                        _ => (0..j, Gen::KInv),
                    };
                    for p in range {
                        c = c * act_letter(dressing, i, word[p]).unwrap().0;
                    }
                    let mut w = word.clone();
                    w[j] = y;
                    if let Some((sgn, t)) = wedge_normalize(&w) {
                        *acc.entry(t).or_default() += &(c * sgn);
                    }
                }
            }
        }
        let entries: Vec<(Subset, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        table.insert(s, entries);
    }
    table
}

/// The action on `(Λ^k)^*` through the antipode: `(g f)(v) = f(S(g) v)`.
fn dual_action(n: usize, k: usize, g: Gen, i: usize) -> ActionTable {
    // S(E) = -E K^-1, S(F) = -K F, S(K) = K^-1.
    let (first, second, sign) = match g {
        Gen::E => (Gen::KInv, Some(Gen::E), -1),
        Gen::F => (Gen::F, Some(Gen::K), -1),
        Gen::K => (Gen::KInv, None, 1),
        Gen::KInv => (Gen::K, None, 1),
    };
    let t1 = cached_action(n, k, Sign::Plus, first, i);
    let t2 = second.map(|g2| cached_action(n, k, Sign::Plus, g2, i));
    let mut table: BTreeMap<Subset, BTreeMap<Subset, Scalar>> = BTreeMap::new();
    for u in Subset::all_of_size(n, k) {
        // S(g) x_U = sum_T c_T x_T, so g x_T^* picks up c_T on x_U^*.
        let mut image: BTreeMap<Subset, Scalar> = BTreeMap::new();
        for (v, c) in &t1[&u] {
            match &t2 {
                None => *image.entry(*v).or_default() += c,
                Some(t2) => {
                    for (w, d) in &t2[v] {
                        *image.entry(*w).or_default() += &(c * d);
                    }
                }
            }
        }
        for (t, c) in image {
            if !c.is_zero() {
                table
                    .entry(t)
                    .or_default()
                    .insert(u, c * Scalar::from_int(sign));
            }
        }
    }
    Subset::all_of_size(n, k)
        .into_iter()
        .map(|t| {
            let row = table.remove(&t).unwrap_or_default();
            (t, row.into_iter().collect())
        })
        .collect()
}

fn cached_action(n: usize, k: usize, sign: Sign, g: Gen, i: usize) -> Arc<ActionTable> {
    let key = (n, k, sign, g, i);
    if let Some(t) = action_cache().read().unwrap().get(&key) {
        return t.clone();
    }
    let table = Arc::new(match sign {
        Sign::Plus => wedge_action(n, k, g, i),
        Sign::Minus => dual_action(n, k, g, i),
    });
    action_cache().write().unwrap().insert(key, table.clone());
    table
}

/// The `U_q(sl_n)` action of `g = E_i, F_i, K_i` or `K_i^{-1}` on a vector of `obj`.
pub fn act_generator(
    g: Gen,
    i: usize,
    obj: &SpaceObject,
    v: &Vector,
) -> Result<Vector, ExteriorError> {
    let n = obj.n;
    if i == 0 || i >= n {
        return Err(ExteriorError::IndexOutOfRange { i, n });
    }
    obj.validate()?;
    let tables: Vec<[Arc<ActionTable>; 2]> = obj
        .factors
        .iter()
        .map(|f| {
            [
                cached_action(n, f.k, f.sign, g, i),
                cached_action(
                    n,
                    f.k,
                    f.sign,
                    match g {
                        Gen::E => Gen::K,
                        Gen::F => Gen::KInv,
                        other => other,
                    },
                    i,
                ),
            ]
        })
        .collect();
    let mut out = Vector::zero();
    for (b, c) in v.iter() {
        if !obj.conforms(b) {
            return Err(ExteriorError::ObjectMismatch {
                expected: obj.to_string(),
                found: format!("{b:?}"),
            });
        }
        match g {
            Gen::K | Gen::KInv => {
                let mut coeff = c.clone();
                for (s, t) in b.iter().zip(&tables) {
                    coeff *= &t[0][s][0].1;
                }
                out.add_term(b.clone(), coeff);
            }
            Gen::E | Gen::F => {
                for j in 0..b.len() {
                    // E: K on factors right of j; F: K^-1 on factors left of j
                    let mut dress = c.clone();
                    let others: Box<dyn Iterator<Item = usize>> = match g {
                        Gen::E => Box::new(j + 1..b.len()),
                        _ => Box::new(0..j),
                    };
                    for p in others {
                        dress *= &tables[p][1][&b[p]][0].1;
                    }
                    for (t, x) in &tables[j][0][&b[j]] {
                        let mut nb = b.clone();
                        nb[j] = *t;
                        out.add_term(nb, &dress * x);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The matrix of `g` on the whole of `obj`.
pub fn generator_map(g: Gen, i: usize, obj: &SpaceObject) -> Result<LinearMap, ExteriorError> {
    let mut out = LinearMap::zero(obj.clone(), obj.clone());
    for b in obj.basis() {
        let v = act_generator(g, i, obj, &Vector::basis(b.clone()))?;
        out.set_column(b, v);
    }
    Ok(out)
}

fn check_label(k: usize, n: usize) -> Result<(), ExteriorError> {
    if k > n {
        Err(ExteriorError::LabelOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// `M_{k,l}: Λ^k ⊗ Λ^l → Λ^{k+l}`, `x_S ⊗ x_T ↦ (-q)^{ℓ(S,T)} x_{S∪T}` on disjoint pairs.
pub fn merge_map(k: usize, l: usize, n: usize) -> Result<LinearMap, ExteriorError> {
    check_label(k + l, n)?;
    let src = SpaceObject::up(n, &[k, l]);
    let tgt = SpaceObject::up(n, &[k + l]);
    Ok(LinearMap::from_fn(src, tgt, |b| {
        let (s, t) = (b[0], b[1]);
        if s.is_disjoint(t) {
            Vector::term(vec![s.union(t)], Scalar::neg_q_pow(ell(s, t) as i64, Q))
        } else {
            Vector::zero()
        }
    }))
}

/// `M'_{k,l}: Λ^{k+l} → Λ^k ⊗ Λ^l`,
/// `x_S ↦ (-1)^{kl} Σ_{T⊂S,|T|=k} (-q)^{-ℓ(S∖T,T)} x_T ⊗ x_{S∖T}`.
pub fn split_map(k: usize, l: usize, n: usize) -> Result<LinearMap, ExteriorError> {
    check_label(k + l, n)?;
    let src = SpaceObject::up(n, &[k + l]);
    let tgt = SpaceObject::up(n, &[k, l]);
    let sign = Scalar::sign((k * l) as i64);
    Ok(LinearMap::from_fn(src, tgt, |b| {
        let s = b[0];
        let mut v = Vector::zero();
        for t in s.subsets_of_size(k) {
            let rest = s.minus(t);
            v.add_term(
                vec![t, rest],
                &sign * Scalar::neg_q_pow(-(ell(rest, t) as i64), Q),
            );
        }
        v
    }))
}

/// Which side of the upward strand a tag's stub sits on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

fn side_sign(k: usize, n: usize, side: Side) -> Scalar {
    match side {
        Side::Left => Scalar::one(),
        Side::Right => Scalar::sign((k * (n - k)) as i64),
    }
}

/// The sink tag `k⁺ → (n-k)⁻`: `D_k` on the left side, `(-1)^{k(n-k)} D_k` on the right,
/// where `D_k(x_S)(x_T) = (-q)^{ℓ(S,T)}` for disjoint `S, T`.
pub fn tag_map(k: usize, n: usize, side: Side) -> Result<LinearMap, ExteriorError> {
    check_label(k, n)?;
    let src = SpaceObject::new(n, vec![Factor::up(k)]);
    let tgt = SpaceObject::new(n, vec![Factor::down(n - k)]);
    let sign = side_sign(k, n, side);
    Ok(LinearMap::from_fn(src, tgt, |b| {
        let s = b[0];
        let t = s.complement(n);
        Vector::term(vec![t], &sign * Scalar::neg_q_pow(ell(s, t) as i64, Q))
    }))
}

/// The source tag `k⁻ → (n-k)⁺`. Its right-side form inverts the left-side sink tag
/// `D_{n-k}`, so that a left sink tag followed by a right source tag is the identity;
/// the left-side form carries the switching sign `(-1)^{k(n-k)}`.
pub fn tag_in_map(k: usize, n: usize, side: Side) -> Result<LinearMap, ExteriorError> {
    check_label(k, n)?;
    let src = SpaceObject::new(n, vec![Factor::down(k)]);
    let tgt = SpaceObject::new(n, vec![Factor::up(n - k)]);
    let sign = side_sign(k, n, side.flip());
    Ok(LinearMap::from_fn(src, tgt, |b| {
        // D_{n-k}(x_U) = (-q)^{ℓ(U,U^c)} x_{U^c}^*, so x_T^* ↦ (-q)^{-ℓ(T^c,T)} x_{T^c}.
        let t = b[0];
        let u = t.complement(n);
        Vector::term(vec![u], &sign * Scalar::neg_q_pow(-(ell(u, t) as i64), Q))
    }))
}

/// Orientation of a cup or cap: the signs of its two legs, left to right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Orient {
    /// `(k⁻, k⁺)`
    MinusPlus,
    /// `(k⁺, k⁻)`
    PlusMinus,
}

impl Orient {
    pub fn legs(self, k: usize) -> [Factor; 2] {
        match self {
            Orient::MinusPlus => [Factor::down(k), Factor::up(k)],
            Orient::PlusMinus => [Factor::up(k), Factor::down(k)],
        }
    }

    pub fn flip(self) -> Orient {
        match self {
            Orient::MinusPlus => Orient::PlusMinus,
            Orient::PlusMinus => Orient::MinusPlus,
        }
    }
}

/// `q^{k(n-k) - 2ℓ(T,T^c)}`: the eigenvalue of `K_{2ρ}^{-1}` on `x_T`.
fn pivot_inv(t: Subset, n: usize) -> Scalar {
    let k = t.len() as i64;
    Scalar::q_pow(k * (n as i64 - k) - 2 * ell(t, t.complement(n)) as i64, Q)
}

/// Cap `(k⁻,k⁺) → 1`, `x_T^* ⊗ x_U ↦ δ_{T,U}`; the opposite orientation
/// `(k⁺,k⁻) → 1` is twisted by `K_{2ρ}`: `x_S ⊗ x_T^* ↦ δ_{S,T} q^{-k(n-k)+2ℓ(S,S^c)}`.
pub fn cap_map(k: usize, n: usize, orient: Orient) -> Result<LinearMap, ExteriorError> {
    check_label(k, n)?;
    let src = SpaceObject::new(n, orient.legs(k).to_vec());
    Ok(LinearMap::from_fn(src, SpaceObject::empty(n), |b| {
        if b[0] != b[1] {
            return Vector::zero();
        }
        let c = match orient {
            Orient::MinusPlus => Scalar::one(),
            Orient::PlusMinus => pivot_inv(b[0], n).bar(),
        };
        Vector::term(Vec::new(), c)
    }))
}

/// Cup `1 → (k⁻,k⁺)`, `1 ↦ Σ_T q^{k(n-k)-2ℓ(T,T^c)} x_T^* ⊗ x_T`; the opposite
/// orientation is the plain copairing `1 ↦ Σ_T x_T ⊗ x_T^*`.
pub fn cup_map(k: usize, n: usize, orient: Orient) -> Result<LinearMap, ExteriorError> {
    check_label(k, n)?;
    let tgt = SpaceObject::new(n, orient.legs(k).to_vec());
    Ok(LinearMap::from_fn(SpaceObject::empty(n), tgt, |_| {
        let mut v = Vector::zero();
        for t in Subset::all_of_size(n, k) {
            let c = match orient {
                Orient::MinusPlus => pivot_inv(t, n),
                Orient::PlusMinus => Scalar::one(),
            };
            v.add_term(vec![t, t], c);
        }
        v
    }))
}
