//! The idempotented quantum group of `gl_m` truncated at `n`, ladders, the
//! passage word → ladder → web, and the direct skew-Howe action as an oracle.

use std::fmt;

use thiserror::Error;

use crate::exterior::{ell, Basis, Factor, LinearMap, SpaceObject, Subset, Vector};
use crate::functor::{eval, FunctorError};
use crate::scalar::{quantum_binomial, quantum_factorial, RootOrder, Scalar};
use crate::web::{Cell, WebBuilder, WebIR};

const Q: RootOrder = RootOrder::ONE;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("weight {weight} is not {n}-bounded")]
    NotBounded { weight: GlWeight, n: usize },
    #[error("index {i} out of range for {m} uprights")]
    IndexOutOfRange { i: usize, m: usize },
    #[error("vector does not lie in the weight space {0}")]
    WeightMismatch(GlWeight),
    #[error("divided power does not divide exactly")]
    Inexact,
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GlWeight(pub Vec<i64>);

impl GlWeight {
    pub fn new(entries: Vec<i64>) -> Self {
        GlWeight(entries)
    }

    pub fn from_labels(labels: &[usize]) -> Self {
        GlWeight(labels.iter().map(|&k| k as i64).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn is_bounded(&self, n: usize) -> bool {
        self.0.iter().all(|&k| (0..=n as i64).contains(&k))
    }

    /// `⟨k, α_i⟩ = k_i - k_{i+1}`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    pub fn labels(&self, n: usize) -> Result<Vec<usize>, QError> {
        if !self.is_bounded(n) {
            return Err(QError::NotBounded {
                weight: self.clone(),
                n,
            });
        }
        Ok(self.0.iter().map(|&k| k as usize).collect())
    }

    pub fn space(&self, n: usize) -> Result<SpaceObject, QError> {
        Ok(SpaceObject::up(n, &self.labels(n)?))
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All `n`-bounded weights with `m` entries, lexicographically.
    pub fn all_bounded(n: usize, m: usize) -> Vec<GlWeight> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|w: Vec<i64>| {
                    (0..=n as i64).map(move |k| {
                        let mut v = w.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GlWeight).collect()
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum UGen {
    E,
    F,
}

impl UGen {
    pub fn other(self) -> UGen {
        match self {
            UGen::E => UGen::F,
            UGen::F => UGen::E,
        }
    }
}

/// `E_i^{(r)}` or `F_i^{(r)}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: UGen,
    pub i: usize,
    pub r: usize,
}

impl Letter {
    pub fn new(gen: UGen, i: usize, r: usize) -> Self {
        Letter { gen, i, r }
    }

    pub fn e(i: usize, r: usize) -> Self {
        Letter::new(UGen::E, i, r)
    }

    pub fn f(i: usize, r: usize) -> Self {
        Letter::new(UGen::F, i, r)
    }

    /// `E_i^{(r)}` adds `r α_i`, `F_i^{(r)}` subtracts it.
    pub fn shift(&self, k: &GlWeight) -> GlWeight {
        let mut v = k.0.clone();
        let r = self.r as i64;
        let (a, b) = match self.gen {
            UGen::E => (r, -r),
            UGen::F => (-r, r),
        };
        v[self.i - 1] += a;
        v[self.i] += b;
        GlWeight(v)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.gen {
            UGen::E => 'E',
            UGen::F => 'F',
        };
        if self.r == 1 {
            write!(f, "{g}{}", self.i)
        } else {
            write!(f, "{g}{}^{}", self.i, self.r)
        }
    }
}

/// A word in divided powers acting on `1_k`. Letters are stored as written;
/// the rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UWord {
    pub source: GlWeight,
    pub letters: Vec<Letter>,
}

impl UWord {
    pub fn new(source: GlWeight, letters: Vec<Letter>) -> Self {
        UWord {
            source,
            letters: letters.into_iter().filter(|l| l.r > 0).collect(),
        }
    }

    /// Letters in the order they act.
    pub fn acting(&self) -> impl Iterator<Item = &Letter> {
        self.letters.iter().rev()
    }

    /// Weights before each letter acts and after the last.
    pub fn weights(&self) -> Vec<GlWeight> {
        let mut cur = self.source.clone();
        let mut out = vec![cur.clone()];
        for l in self.acting() {
            cur = l.shift(&cur);
            out.push(cur.clone());
        }
        out
    }

    pub fn target(&self) -> GlWeight {
        self.weights().pop().unwrap()
    }

    fn check_indices(&self) -> Result<(), QError> {
        let m = self.source.m();
        for l in &self.letters {
            if l.i == 0 || l.i >= m {
                return Err(QError::IndexOutOfRange { i: l.i, m });
            }
        }
        Ok(())
    }

    /// Parses e.g. `F1^2 E2` or `E1^(3)`; the empty string is the empty word.
    pub fn parse(text: &str, source: GlWeight) -> Result<UWord, QError> {
        let mut letters = Vec::new();
        let mut col = 1;
        for word in text.split_whitespace() {
            let start = text[col - 1..].find(word).map(|p| p + col).unwrap_or(col);
            col = start + word.len();
            let err = |msg: &str| QError::Parse {
                col: start,
                msg: msg.to_string(),
            };
            let mut chars = word.chars();
            let gen = match chars.next() {
                Some('E') => UGen::E,
                Some('F') => UGen::F,
                _ => return Err(err("expected E or F")),
            };
            let rest = chars.as_str();
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i, Some(p)),
                None => (rest, None),
            };
            let i: usize = idx.parse().map_err(|_| err("expected an index"))?;
            let r: usize = match pow {
                None => 1,
                Some(p) => {
                    let p = p
                        .strip_prefix('(')
                        .and_then(|p| p.strip_suffix(')'))
                        .unwrap_or(p);
                    p.parse().map_err(|_| err("expected a power"))?
                }
            };
            letters.push(Letter::new(gen, i, r));
        }
        let w = UWord::new(source, letters);
        w.check_indices()?;
        Ok(w)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} 1_{}", self.render(), self.source)
    }
}

/// A rung between uprights `i` and `i+1`. An `E` rung carries `r` from upright
/// `i+1` to upright `i`; an `F` rung carries it the other way.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rung {
    pub i: usize,
    pub gen: UGen,
    pub r: usize,
}

impl Rung {
    fn letter(&self) -> Letter {
        Letter::new(self.gen, self.i, self.r)
    }
}

/// Uprights with bottom labels `source` and rungs listed bottom to top.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ladder {
    pub n: usize,
    pub source: Vec<usize>,
    pub rungs: Vec<Rung>,
}

impl Ladder {
    pub fn new(n: usize, source: Vec<usize>, rungs: Vec<Rung>) -> Self {
        Ladder { n, source, rungs }
    }

    pub fn m(&self) -> usize {
        self.source.len()
    }

    /// Labels between consecutive rungs, or `None` if some interval leaves `{0..n}`.
    pub fn weights(&self) -> Option<Vec<Vec<usize>>> {
        let mut cur = GlWeight::from_labels(&self.source);
        let mut out = vec![self.source.clone()];
        for rung in &self.rungs {
            if rung.i == 0 || rung.i >= self.m() {
                return None;
            }
            cur = rung.letter().shift(&cur);
            out.push(cur.labels(self.n).ok()?);
        }
        Some(out)
    }

    pub fn is_valid(&self) -> bool {
        self.source.iter().all(|&k| k <= self.n) && self.weights().is_some()
    }

    pub fn target(&self) -> Option<Vec<usize>> {
        self.weights().map(|mut w| w.pop().unwrap())
    }

    /// The word read right to left from the bottom rung.
    pub fn to_word(&self) -> UWord {
        let letters = self.rungs.iter().rev().map(|r| r.letter()).collect();
        UWord::new(GlWeight::from_labels(&self.source), letters)
    }

    pub fn render(&self) -> String {
        let src: Vec<String> = self.source.iter().map(|k| k.to_string()).collect();
        let mut out = format!("ladder n={} src=({})\n", self.n, src.join(","));
        for r in &self.rungs {
            let g = match r.gen {
                UGen::E => 'E',
                UGen::F => 'F',
            };
            out.push_str(&format!("{g} {} {}\n", r.i, r.r));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Ladder, QError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let err = |msg: &str| QError::Parse {
            col: 1,
            msg: msg.to_string(),
        };
        let header = lines.next().ok_or_else(|| err("empty input"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("ladder") {
            return Err(err("expected 'ladder'"));
        }
        let mut n = None;
        let mut source = None;
        for w in words {
            if let Some(v) = w.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| err("bad n"))?);
            } else if let Some(v) = w.strip_prefix("src=") {
                let inner = v
                    .strip_prefix('(')
                    .and_then(|v| v.strip_suffix(')'))
                    .ok_or_else(|| err("src must be parenthesized"))?;
                let labels: Result<Vec<usize>, _> = inner
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect();
                source = Some(labels.map_err(|_| err("bad label"))?);
            } else {
                return Err(err("unexpected header field"));
            }
        }
        let n = n.ok_or_else(|| err("missing n"))?;
        let source = source.ok_or_else(|| err("missing src"))?;
        let mut rungs = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [g, i, r] = parts[..] else {
                return Err(err("rung lines are '<E|F> <i> <r>'"));
            };
            let gen = match g {
                "E" => UGen::E,
                "F" => UGen::F,
                _ => return Err(err("rung direction must be E or F")),
            };
            let i = i.parse().map_err(|_| err("bad rung index"))?;
            let r = r.parse().map_err(|_| err("bad rung multiplicity"))?;
            rungs.push(Rung { i, gen, r });
        }
        let ladder = Ladder::new(n, source, rungs);
        if !ladder.is_valid() {
            return Err(err("ladder leaves the n-bounded range"));
        }
        Ok(ladder)
    }
}

/// One rung per letter, or `None` when the truncation kills the word.
pub fn word_to_ladder(w: &UWord, n: usize) -> Result<Option<Ladder>, QError> {
    w.check_indices()?;
    let source = w.source.labels(n)?;
    if w.weights().iter().any(|k| !k.is_bounded(n)) {
        return Ok(None);
    }
    let rungs = w
        .acting()
        .map(|l| Rung {
            i: l.i,
            gen: l.gen,
            r: l.r,
        })
        .collect();
    Ok(Some(Ladder::new(n, source, rungs)))
}

/// Each rung becomes a split on the donor upright followed by a merge on the
/// receiving one. `0` and `n` uprights stay in the web.
pub fn ladder_to_web(l: &Ladder) -> WebIR {
    let n = l.n;
    let mut b = WebBuilder::new(SpaceObject::up(n, &l.source));
    let mut cur = l.source.clone();
    for rung in &l.rungs {
        if rung.r == 0 {
            continue;
        }
        let (i, r) = (rung.i - 1, rung.r);
        let (a, c) = (cur[i], cur[i + 1]);
        match rung.gen {
            UGen::E => {
                b.apply(i + 1, Cell::Split(r, c - r))
                    .expect("ladder boundary");
                b.apply(i, Cell::Merge(a, r)).expect("ladder boundary");
                cur[i] += r;
                cur[i + 1] -= r;
            }
            UGen::F => {
                b.apply(i, Cell::Split(a - r, r)).expect("ladder boundary");
                b.apply(i + 1, Cell::Merge(r, c)).expect("ladder boundary");
                cur[i] -= r;
                cur[i + 1] += r;
            }
        }
    }
    b.build()
}

/// The evaluation of a ladder on reduced objects.
pub fn ladder_eval(l: &Ladder) -> Result<LinearMap, QError> {
    Ok(eval(&ladder_to_web(l))?)
}

/// The map of `w` on `Λ^{k_1} ⊗ ... ⊗ Λ^{k_m}` through ladders and webs, on
/// reduced objects; zero when an intermediate weight is truncated.
pub fn word_matrix(w: &UWord, n: usize) -> Result<LinearMap, QError> {
    let src = w.source.space(n)?;
    let tgt = w.target().space(n)?;
    match word_to_ladder(w, n)? {
        Some(l) => ladder_eval(&l),
        None => Ok(LinearMap::zero(src.stripped(), tgt.stripped())),
    }
}

fn single_letter(l: Letter, b: &Basis) -> Vec<(Basis, Scalar)> {
    let p = l.i - 1;
    let (from, to) = match l.gen {
        UGen::E => (p + 1, p),
        UGen::F => (p, p + 1),
    };
    let donor = b[from];
    let size = donor.len() as i64;
    let mut out = Vec::new();
    for r in donor.elements() {
        let rs = Subset::singleton(r);
        let recv = b[to];
        if recv.contains(r) {
            continue;
        }
        let rest = donor.minus(rs);
        let (sign, before, reorder) = match l.gen {
            UGen::E => (size + 1, ell(rest, rs), ell(recv, rs)),
            UGen::F => (size + 1, ell(rs, rest), ell(rs, recv)),
        };
        let c = Scalar::sign(sign) * Scalar::neg_q_pow(reorder as i64 - before as i64, Q);
        let mut nb = b.clone();
        nb[from] = rest;
        nb[to] = recv.union(rs);
        out.push((nb, c));
    }
    out
}

/// The skew-Howe action of `w` on `v`, letter by letter from the signed sums,
/// with divided powers obtained by exact division of `r`-fold composites.
pub fn phi_action(w: &UWord, n: usize, v: &Vector) -> Result<Vector, QError> {
    w.check_indices()?;
    let src = w.source.space(n)?;
    if v.iter().any(|(b, _)| !src.conforms(b)) {
        return Err(QError::WeightMismatch(w.source.clone()));
    }
    let mut cur = v.clone();
    for l in w.acting() {
        for _ in 0..l.r {
            let mut next = Vector::zero();
            for (b, c) in cur.iter() {
                for (nb, x) in single_letter(Letter::new(l.gen, l.i, 1), b) {
                    next.add_term(nb, c * &x);
                }
            }
            cur = next;
        }
        if l.r > 1 {
            let fact = quantum_factorial(l.r as i64, Q);
            let mut divided = Vector::zero();
            for (b, c) in cur.iter() {
                divided.add_term(b.clone(), c.exact_div(&fact).ok_or(QError::Inexact)?);
            }
            cur = divided;
        }
    }
    Ok(cur)
}

/// The matrix of [`phi_action`] on reduced objects.
pub fn phi_matrix(w: &UWord, n: usize) -> Result<LinearMap, QError> {
    let src = w.source.space(n)?;
    let tgt = w.target().space(n)?;
    let mut out = LinearMap::zero(src.clone(), tgt);
    for b in src.basis() {
        let v = phi_action(w, n, &Vector::basis(b.clone()))?;
        out.set_column(b, v);
    }
    Ok(out.stripped())
}

/// A formal sum of words with a common source.
pub type WordSum = Vec<(Scalar, UWord)>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum URelation {
    /// `E^{(r)}F^{(s)} = Σ_t [⟨k,α_i⟩+r-s, t] F^{(s-t)}E^{(r-t)}`
    EF,
    /// `E_i^{(r)}F_j^{(s)} = F_j^{(s)}E_i^{(r)}`, `i ≠ j`
    Commute,
    /// `E_iE_jE_i = E_i^{(2)}E_j + E_jE_i^{(2)}` for adjacent `i, j`, and with `F`
    Serre,
    /// `E_i^{(r)}E_j^{(s)} = E_j^{(s)}E_i^{(r)}` for distant `i, j`, and with `F`
    Distant,
    /// `E_i^{(s)}E_i^{(r)} = [r+s, r] E_i^{(r+s)}`, and with `F`
    Divided,
}

impl URelation {
    pub const ALL: [URelation; 5] = [
        URelation::EF,
        URelation::Commute,
        URelation::Serre,
        URelation::Distant,
        URelation::Divided,
    ];

    pub fn label(self) -> &'static str {
        match self {
            URelation::EF => "4.1",
            URelation::Commute => "4.2",
            URelation::Serre => "4.3",
            URelation::Distant => "4.4",
            URelation::Divided => "4.5",
        }
    }
}

/// One instance of a relation: both sides as word sums at a fixed source weight.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub relation: String,
    pub params: String,
    pub lhs: WordSum,
    pub rhs: WordSum,
}

fn word(k: &GlWeight, letters: Vec<Letter>) -> UWord {
    UWord::new(k.clone(), letters)
}

fn one() -> Scalar {
    Scalar::one()
}

/// Every instance of `rel` over all `n`-bounded weights with `m` entries and
/// divided powers up to `n`.
pub fn u_relation_instances(rel: URelation, n: usize, m: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let weights = GlWeight::all_bounded(n, m);
    let pairs = |adjacent: Option<bool>| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 1..m {
            for j in 1..m {
                let ok = match adjacent {
                    None => i != j,
                    Some(true) => i.abs_diff(j) == 1,
                    Some(false) => i.abs_diff(j) > 1,
                };
                if ok {
                    v.push((i, j));
                }
            }
        }
        v
    };
    for k in &weights {
        let params = |extra: String| format!("k={k} {extra}");
        match rel {
            URelation::EF => {
                for i in 1..m {
                    for r in 0..=n {
                        for s in 0..=n {
                            let top = k.pairing(i) + r as i64 - s as i64;
                            let rhs = (0..=r.min(s))
                                .map(|t| {
                                    (
                                        quantum_binomial(top, t as i64, Q),
                                        word(k, vec![Letter::f(i, s - t), Letter::e(i, r - t)]),
                                    )
                                })
                                .collect();
                            out.push(RelationInstance {
                                relation: rel.label().into(),
                                params: params(format!("i={i} r={r} s={s}")),
                                lhs: vec![(one(), word(k, vec![Letter::e(i, r), Letter::f(i, s)]))],
                                rhs,
                            });
                        }
                    }
                }
            }
            URelation::Commute => {
                for (i, j) in pairs(None) {
                    for r in 1..=n {
                        for s in 1..=n {
                            out.push(RelationInstance {
                                relation: rel.label().into(),
                                params: params(format!("i={i} j={j} r={r} s={s}")),
                                lhs: vec![(one(), word(k, vec![Letter::e(i, r), Letter::f(j, s)]))],
                                rhs: vec![(one(), word(k, vec![Letter::f(j, s), Letter::e(i, r)]))],
                            });
                        }
                    }
                }
            }
            URelation::Serre => {
                for (i, j) in pairs(Some(true)) {
                    for g in [UGen::E, UGen::F] {
                        let x = |idx: usize, r: usize| Letter::new(g, idx, r);
                        out.push(RelationInstance {
                            relation: rel.label().into(),
                            params: params(format!("{g:?} i={i} j={j}")),
                            lhs: vec![(one(), word(k, vec![x(i, 1), x(j, 1), x(i, 1)]))],
                            rhs: vec![
                                (one(), word(k, vec![x(i, 2), x(j, 1)])),
                                (one(), word(k, vec![x(j, 1), x(i, 2)])),
                            ],
                        });
                    }
                }
            }
            URelation::Distant => {
                for (i, j) in pairs(Some(false)) {
                    for g in [UGen::E, UGen::F] {
                        for r in 1..=n {
                            for s in 1..=n {
                                let x = |idx: usize, p: usize| Letter::new(g, idx, p);
                                out.push(RelationInstance {
                                    relation: rel.label().into(),
                                    params: params(format!("{g:?} i={i} j={j} r={r} s={s}")),
                                    lhs: vec![(one(), word(k, vec![x(i, r), x(j, s)]))],
                                    rhs: vec![(one(), word(k, vec![x(j, s), x(i, r)]))],
                                });
                            }
                        }
                    }
                }
            }
            URelation::Divided => {
                for i in 1..m {
                    for g in [UGen::E, UGen::F] {
                        for r in 1..=n {
                            for s in 1..=n - r.min(n) {
                                let x = |p: usize| Letter::new(g, i, p);
                                out.push(RelationInstance {
                                    relation: rel.label().into(),
                                    params: params(format!("{g:?} i={i} r={r} s={s}")),
                                    lhs: vec![(one(), word(k, vec![x(s), x(r)]))],
                                    rhs: vec![(
                                        quantum_binomial((r + s) as i64, r as i64, Q),
                                        word(k, vec![x(r + s)]),
                                    )],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Evaluates a word sum through ladders and webs; `None` if the common target
/// weight is not `n`-bounded (both sides then vanish in the truncation).
pub fn eval_word_sum(sum: &WordSum, n: usize) -> Result<Option<LinearMap>, QError> {
    let Some((_, first)) = sum.first() else {
        return Ok(None);
    };
    let target = first.target();
    if !target.is_bounded(n) {
        return Ok(None);
    }
    let mut acc = LinearMap::zero(
        first.source.space(n)?.stripped(),
        target.space(n)?.stripped(),
    );
    for (c, w) in sum {
        let m = word_matrix(w, n)?;
        acc = acc.add(&m.scaled(c)).map_err(FunctorError::from)?;
    }
    Ok(Some(acc))
}

/// Evaluates both sides; `Ok(true)` when they agree.
pub fn check_instance(inst: &RelationInstance, n: usize) -> Result<bool, QError> {
    let l = eval_word_sum(&inst.lhs, n)?;
    let r = eval_word_sum(&inst.rhs, n)?;
    Ok(match (l, r) {
        (None, None) => true,
        (Some(a), Some(b)) => a == b,
        (Some(a), None) | (None, Some(a)) => a.is_zero(),
    })
}

/// Checks every instance of `rel` for the given `n` and `m`.
pub fn check_u_relation(rel: URelation, n: usize, m: usize) -> Result<bool, QError> {
    for inst in u_relation_instances(rel, n, m) {
        if !check_instance(&inst, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A formal sum of ladders with common boundary.
pub type LadderSum = Vec<(Scalar, Ladder)>;

/// The ladder relations: the two mixed commutations, stacked rungs, the
/// square switch and the Serre relation for both rung directions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LadderRelation {
    /// `F_1^{(r)}` then `E_2^{(s)}` equals the other order.
    MixedFE,
    /// `E_1^{(r)}` then `F_2^{(s)}` equals the other order.
    MixedEF,
    Stack,
    SquareSwitch,
    Serre,
}

impl LadderRelation {
    pub const ALL: [LadderRelation; 5] = [
        LadderRelation::MixedFE,
        LadderRelation::MixedEF,
        LadderRelation::Stack,
        LadderRelation::SquareSwitch,
        LadderRelation::Serre,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LadderRelation::MixedFE => "5.1",
            LadderRelation::MixedEF => "5.2",
            LadderRelation::Stack => "5.3",
            LadderRelation::SquareSwitch => "5.4",
            LadderRelation::Serre => "5.5",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LadderInstance {
    pub relation: String,
    pub params: String,
    pub lhs: LadderSum,
    pub rhs: LadderSum,
}

fn rung(gen: UGen, i: usize, r: usize) -> Rung {
    Rung { i, gen, r }
}

/// All instances of a ladder relation over `n`-bounded sources.
pub fn ladder_relation_instances(rel: LadderRelation, n: usize) -> Vec<LadderInstance> {
    let mut out = Vec::new();
    let m = match rel {
        LadderRelation::Stack | LadderRelation::SquareSwitch => 2,
        _ => 3,
    };
    for k in GlWeight::all_bounded(n, m) {
        let src = k.labels(n).unwrap();
        let lad = |rungs: Vec<Rung>| Ladder::new(n, src.clone(), rungs);
        let name = rel.label().to_string();
        match rel {
            LadderRelation::MixedFE | LadderRelation::MixedEF => {
                let (g1, g2) = if rel == LadderRelation::MixedFE {
                    (UGen::F, UGen::E)
                } else {
                    (UGen::E, UGen::F)
                };
                for r in 1..=n {
                    for s in 1..=n {
                        out.push(LadderInstance {
                            relation: name.clone(),
                            params: format!("k={k} r={r} s={s}"),
                            lhs: vec![(one(), lad(vec![rung(g1, 1, r), rung(g2, 2, s)]))],
                            rhs: vec![(one(), lad(vec![rung(g2, 2, s), rung(g1, 1, r)]))],
                        });
                    }
                }
            }
            LadderRelation::Stack => {
                for g in [UGen::E, UGen::F] {
                    for r in 1..=n {
                        for s in 1..=n {
                            out.push(LadderInstance {
                                relation: name.clone(),
                                params: format!("k={k} {g:?} r={r} s={s}"),
                                lhs: vec![(one(), lad(vec![rung(g, 1, s), rung(g, 1, r)]))],
                                rhs: vec![(
                                    quantum_binomial((r + s) as i64, r as i64, Q),
                                    lad(vec![rung(g, 1, r + s)]),
                                )],
                            });
                        }
                    }
                }
            }
            LadderRelation::SquareSwitch => {
                let (kk, l) = (src[0] as i64, src[1] as i64);
                for r in 0..=n {
                    for s in 0..=n {
                        let rhs = (0..=r.min(s))
                            .map(|t| {
                                (
                                    quantum_binomial(kk - l + r as i64 - s as i64, t as i64, Q),
                                    lad(vec![rung(UGen::E, 1, r - t), rung(UGen::F, 1, s - t)]),
                                )
                            })
                            .collect();
                        out.push(LadderInstance {
                            relation: name.clone(),
                            params: format!("k={k} r={r} s={s}"),
                            lhs: vec![(one(), lad(vec![rung(UGen::F, 1, s), rung(UGen::E, 1, r)]))],
                            rhs,
                        });
                    }
                }
            }
            LadderRelation::Serre => {
                for g in [UGen::E, UGen::F] {
                    for (i, j) in [(1, 2), (2, 1)] {
                        let two = Scalar::from_int(-1) * quantum_binomial(2, 1, Q);
                        out.push(LadderInstance {
                            relation: name.clone(),
                            params: format!("k={k} {g:?} i={i} j={j}"),
                            lhs: vec![
                                (
                                    one(),
                                    lad(vec![rung(g, i, 1), rung(g, i, 1), rung(g, j, 1)]),
                                ),
                                (two, lad(vec![rung(g, i, 1), rung(g, j, 1), rung(g, i, 1)])),
                                (
                                    one(),
                                    lad(vec![rung(g, j, 1), rung(g, i, 1), rung(g, i, 1)]),
                                ),
                            ],
                            rhs: vec![],
                        });
                    }
                }
            }
        }
    }
    out
}

/// Evaluates a ladder sum; invalid (truncated) ladders contribute zero.
/// With `mirrored`, every ladder web is reflected before evaluation.
pub fn eval_ladder_sum(sum: &LadderSum, mirrored: bool) -> Result<Option<LinearMap>, QError> {
    let mut acc: Option<LinearMap> = None;
    for (c, l) in sum {
        if !l.is_valid() {
            continue;
        }
        let mut w = ladder_to_web(l);
        if mirrored {
            w = w.mirror();
        }
        let m = eval(&w)?.scaled(c);
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m).map_err(FunctorError::from)?,
        });
    }
    Ok(acc)
}

pub fn check_ladder_instance(inst: &LadderInstance, mirrored: bool) -> Result<bool, QError> {
    let l = eval_ladder_sum(&inst.lhs, mirrored)?;
    let r = eval_ladder_sum(&inst.rhs, mirrored)?;
    Ok(match (l, r) {
        (None, None) => true,
        (Some(a), Some(b)) => a == b,
        (Some(a), None) | (None, Some(a)) => a.is_zero(),
    })
}

/// An identity factor list for a weight, used by callers assembling webs.
pub fn upright_factors(labels: &[usize]) -> Vec<Factor> {
    labels.iter().map(|&k| Factor::up(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e)
    }

    #[test]
    fn phi_single_letters() {
        let e = UWord::new(GlWeight::new(vec![0, 1]), vec![Letter::e(1, 1)]);
        let v = phi_action(&e, 2, &Vector::basis(vec![Subset::EMPTY, s(&[1])])).unwrap();
        assert_eq!(v, Vector::basis(vec![s(&[1]), Subset::EMPTY]));
        let f = UWord::new(GlWeight::new(vec![1, 0]), vec![Letter::f(1, 1)]);
        let v = phi_action(&f, 2, &Vector::basis(vec![s(&[1]), Subset::EMPTY])).unwrap();
        assert_eq!(v, Vector::basis(vec![Subset::EMPTY, s(&[1])]));
        let e0 = UWord::new(GlWeight::new(vec![0, 0]), vec![Letter::e(1, 1)]);
        assert!(
            phi_action(&e0, 2, &Vector::basis(vec![Subset::EMPTY, Subset::EMPTY]))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn word_parsing_and_truncation() {
        let w = UWord::parse("F1^2 E2 E1^(3)", GlWeight::new(vec![2, 1, 0])).unwrap();
        assert_eq!(
            w.letters,
            vec![Letter::f(1, 2), Letter::e(2, 1), Letter::e(1, 3)]
        );
        assert_eq!(w.render(), "F1^2 E2 E1^3");
        assert!(UWord::parse("G1", GlWeight::new(vec![1, 1])).is_err());
        assert!(UWord::parse("E3", GlWeight::new(vec![1, 1])).is_err());
        let empty = UWord::parse("", GlWeight::new(vec![1, 1])).unwrap();
        let l = word_to_ladder(&empty, 2).unwrap().unwrap();
        assert!(l.rungs.is_empty() && l.m() == 2);
        let ok = UWord::parse("E1", GlWeight::new(vec![0, 1])).unwrap();
        assert_eq!(
            word_to_ladder(&ok, 1).unwrap().unwrap().target(),
            Some(vec![1, 0])
        );
        let dead = UWord::parse("E1", GlWeight::new(vec![2, 1])).unwrap();
        assert_eq!(word_to_ladder(&dead, 2).unwrap(), None);
    }

    #[test]
    fn figure_word_becomes_three_rungs() {
        let w = UWord::parse("F1^1 F2^1 E1^1", GlWeight::new(vec![1, 2, 1])).unwrap();
        let l = word_to_ladder(&w, 3).unwrap().unwrap();
        let kinds: Vec<(UGen, usize)> = l.rungs.iter().map(|r| (r.gen, r.i)).collect();
        assert_eq!(kinds, vec![(UGen::E, 1), (UGen::F, 2), (UGen::F, 1)]);
        assert_eq!(l.weights().unwrap()[1], vec![2, 1, 1]);
        let text = l.render();
        assert_eq!(Ladder::parse(&text).unwrap(), l);
    }

    #[test]
    fn single_rung_web_shape() {
        let l = Ladder::new(
            3,
            vec![1, 2],
            vec![Rung {
                i: 1,
                gen: UGen::E,
                r: 1,
            }],
        );
        let w = ladder_to_web(&l);
        assert_eq!(w.rows.len(), 2);
        assert_eq!(w.target().unwrap(), SpaceObject::up(3, &[2, 1]));
        let id = ladder_to_web(&Ladder::new(3, vec![1, 2], vec![]));
        assert_eq!(id, WebIR::identity(SpaceObject::up(3, &[1, 2])));
    }
}
