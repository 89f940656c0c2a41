//! Rewriting upward-boundary webs as ladders.
//!
//! Every boundary strand gets an upright: `k⁺` an upright labelled `k`, and
//! `k⁻` an upright labelled `n - k` (identified through the inverse tag). Extra
//! uprights labelled `0` or `n` ("phantoms") are appended at the right end,
//! where no rung can cross them, and travel to wherever a cell needs them.
//! Each cell then becomes a single rung, up to a sign that is tracked.

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{render_basis, Factor, Orient, Side, Sign};
use crate::functor::{eval, FunctorError};
use crate::qgroup::{ladder_to_web, Ladder, QError, Rung, UGen};
use crate::scalar::{RootOrder, Scalar};
use crate::web::{Cell, Validation, WebIR};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LadderizeError {
    #[error("boundary strand {0} is not oriented upward")]
    NotUpward(String),
    #[error("web is malformed: {0}")]
    Invalid(String),
    #[error("web is identically zero: {0}")]
    Zero(String),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Ladder(#[from] QError),
}

/// A ladder with an overall sign.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedLadder {
    pub negative: bool,
    pub ladder: Ladder,
}

impl SignedLadder {
    pub fn coefficient(&self) -> Scalar {
        Scalar::sign(self.negative as i64)
    }

    /// The ladder text format, with `sign=-1` added to the header when negative.
    pub fn render(&self) -> String {
        let text = self.ladder.render();
        if !self.negative {
            return text;
        }
        match text.split_once('\n') {
            Some((head, rest)) => format!("{head} sign=-1\n{rest}"),
            None => format!("{text} sign=-1"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Up {
    Strand,
    Zero,
    Full,
}

struct State {
    n: usize,
    source: Vec<usize>,
    cur: Vec<usize>,
    ups: Vec<Up>,
    rungs: Vec<Rung>,
    negative: bool,
}

fn odd(a: usize, n: usize) -> bool {
    a * (n - a) % 2 == 1
}

impl State {
    fn rung(&mut self, i: usize, gen: UGen, r: usize) {
        if r == 0 {
            return;
        }
        self.rungs.push(Rung { i: i + 1, gen, r });
        match gen {
            UGen::E => {
                self.cur[i] += r;
                self.cur[i + 1] -= r;
            }
            UGen::F => {
                self.cur[i] -= r;
                self.cur[i + 1] += r;
            }
        }
    }

    fn flip(&mut self, yes: bool) {
        self.negative ^= yes;
    }

    /// Exchanges uprights `i` and `i + 1`, at least one of which is a phantom.
    fn swap(&mut self, i: usize) {
        let n = self.n;
        let (a, b) = (self.cur[i], self.cur[i + 1]);
        let (ua, ub) = (self.ups[i], self.ups[i + 1]);
        debug_assert!(ua != Up::Strand || ub != Up::Strand);
        if a != b {
            if ub == Up::Zero {
                self.rung(i, UGen::F, a);
            } else if ua == Up::Zero {
                self.rung(i, UGen::E, b);
            } else if ub == Up::Full {
                self.rung(i, UGen::E, n - a);
                self.flip(odd(a, n));
            } else {
                self.rung(i, UGen::F, n - b);
                self.flip(odd(b, n));
            }
        }
        self.ups.swap(i, i + 1);
    }

    /// A new phantom upright at the right end, present from the bottom.
    fn append(&mut self, kind: Up) -> usize {
        let label = if kind == Up::Full { self.n } else { 0 };
        self.source.push(label);
        self.cur.push(label);
        self.ups.push(kind);
        self.cur.len() - 1
    }

    /// Brings a fresh phantom to index `t`.
    fn bring(&mut self, kind: Up, t: usize) {
        let mut p = self.append(kind);
        while p > t {
            self.swap(p - 1);
            p -= 1;
        }
    }

    /// Index of the `j`-th strand upright.
    fn strand(&self, j: usize) -> usize {
        self.ups
            .iter()
            .enumerate()
            .filter(|(_, u)| **u == Up::Strand)
            .nth(j)
            .map(|(p, _)| p)
            .expect("strand index within the boundary")
    }

    /// Moves phantoms out from between strands `j..j+w` so they become adjacent.
    fn gather(&mut self, j: usize, w: usize) {
        for t in 1..w {
            loop {
                let p = self.strand(j + t - 1);
                if self.ups[p + 1] == Up::Strand {
                    break;
                }
                let last = self.strand(j + w - 1);
                let mut q = p + 1;
                while q < last {
                    self.swap(q);
                    q += 1;
                }
            }
        }
    }

    /// Cancels a pending sign by passing an `n` phantom over exactly one
    /// upright `a` with `a(n - a)` odd, if there is one.
    fn fix_sign(&mut self) {
        let n = self.n;
        if !self.negative || !self.cur.iter().any(|&a| odd(a, n)) {
            return;
        }
        let mut p = self.append(Up::Full);
        loop {
            let passed = self.cur[p - 1];
            self.swap(p - 1);
            p -= 1;
            if odd(passed, n) {
                break;
            }
        }
    }

    fn apply(&mut self, j: usize, cell: Cell) {
        let n = self.n;
        match cell {
            Cell::Id(_) => {}
            Cell::Merge(_, l) => {
                self.gather(j, 2);
                let p = self.strand(j);
                self.rung(p, UGen::E, l);
                self.ups[p + 1] = Up::Zero;
            }
            Cell::Split(_, l) => {
                let p = self.strand(j);
                self.bring(Up::Zero, p + 1);
                self.rung(p, UGen::F, l);
                self.ups[p + 1] = Up::Strand;
            }
            Cell::TagOut(k, s) => self.flip(s == Side::Right && odd(k, n)),
            Cell::TagIn(k, s) => self.flip(s == Side::Left && odd(k, n)),
            Cell::Cup(k, o) => {
                let t = if j == 0 { 0 } else { self.strand(j - 1) + 1 };
                self.bring(Up::Full, t);
                self.bring(Up::Zero, t + 1);
                match o {
                    Orient::MinusPlus => self.rung(t, UGen::F, k),
                    Orient::PlusMinus => {
                        self.rung(t, UGen::F, n - k);
                        self.flip(odd(k, n));
                    }
                }
                self.ups[t] = Up::Strand;
                self.ups[t + 1] = Up::Strand;
            }
            Cell::Cap(k, o) => {
                self.gather(j, 2);
                let p = self.strand(j);
                match o {
                    Orient::MinusPlus => self.rung(p, UGen::E, k),
                    Orient::PlusMinus => {
                        self.rung(p, UGen::E, n - k);
                        self.flip(odd(k, n));
                    }
                }
                self.ups[p] = Up::Full;
                self.ups[p + 1] = Up::Zero;
            }
        }
    }
}

fn check_upward(factors: &[Factor]) -> Result<(), LadderizeError> {
    match factors.iter().find(|f| f.sign == Sign::Minus) {
        Some(f) => Err(LadderizeError::NotUpward(f.to_string())),
        None => Ok(()),
    }
}

/// A ladder whose web has the same evaluation as `w`, up to the returned sign.
///
/// The sign is positive whenever the top boundary has a strand whose label `k`
/// has `k(n - k)` odd, or no sign arises in the first place.
pub fn ladderize(w: &WebIR) -> Result<SignedLadder, LadderizeError> {
    match w.validate() {
        Validation::Valid => {}
        Validation::Zero(d) => return Err(LadderizeError::Zero(d.to_string())),
        Validation::Invalid(d) => return Err(LadderizeError::Invalid(d.to_string())),
    }
    let target = w
        .target()
        .map_err(|e| LadderizeError::Invalid(e.to_string()))?;
    check_upward(&w.source.factors)?;
    check_upward(&target.factors)?;
    let n = w.n();
    let labels: Vec<usize> = w.source.factors.iter().map(|f| f.k).collect();
    let mut st = State {
        n,
        source: labels.clone(),
        cur: labels,
        ups: vec![Up::Strand; w.source.len()],
        rungs: Vec::new(),
        negative: false,
    };
    for row in &w.rows {
        let mut starts = Vec::with_capacity(row.len());
        let mut j = 0;
        for &cell in row {
            starts.push((j, cell));
            j += cell.inputs().len();
        }
        for &(j, cell) in starts.iter().rev() {
            st.apply(j, cell);
        }
    }
    st.fix_sign();
    Ok(SignedLadder {
        negative: st.negative,
        ladder: Ladder::new(n, st.source, st.rungs),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LadderWitness {
    pub row: String,
    pub col: String,
    pub web: String,
    pub ladder: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub equal: bool,
    pub uprights: usize,
    pub rungs: usize,
    pub negative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LadderWitness>,
}

/// Ladderizes `w` and compares both evaluations entry by entry.
pub fn ladderize_verify(w: &WebIR) -> Result<(SignedLadder, VerifyReport), LadderizeError> {
    let sl = ladderize(w)?;
    let lhs = eval(w)?;
    let rhs = eval(&ladder_to_web(&sl.ladder))?.scaled(&sl.coefficient());
    let witness = if lhs.src != rhs.src || lhs.tgt != rhs.tgt {
        Some(LadderWitness {
            row: rhs.tgt.to_string(),
            col: rhs.src.to_string(),
            web: format!("{} -> {}", lhs.src, lhs.tgt),
            ladder: format!("{} -> {}", rhs.src, rhs.tgt),
        })
    } else {
        lhs.first_difference(&rhs)
            .map(|(r, c, x, y)| LadderWitness {
                row: render_basis(&lhs.tgt, &r),
                col: render_basis(&lhs.src, &c),
                web: x.render(RootOrder::ONE),
                ladder: y.render(RootOrder::ONE),
            })
    };
    let report = VerifyReport {
        equal: witness.is_none(),
        uprights: sl.ladder.m(),
        rungs: sl.ladder.rungs.len(),
        negative: sl.negative,
        witness,
    };
    Ok((sl, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::SpaceObject;

    #[test]
    fn identity_is_rungless() {
        let w = WebIR::identity(SpaceObject::up(3, &[2]));
        let l = ladderize(&w).unwrap();
        assert_eq!(l.ladder.m(), 1);
        assert!(l.ladder.rungs.is_empty());
    }

    #[test]
    fn merge_is_one_maximal_rung() {
        let w = WebIR::cell(3, Cell::Merge(1, 2));
        let l = ladderize(&w).unwrap();
        assert_eq!(l.ladder.source, vec![1, 2]);
        assert_eq!(
            l.ladder.rungs,
            vec![Rung {
                i: 1,
                gen: UGen::E,
                r: 2
            }]
        );
        assert_eq!(l.ladder.target(), Some(vec![3, 0]));
        assert!(ladderize_verify(&w).unwrap().1.equal);
    }

    #[test]
    fn bigon_is_split_rung_then_merge_rung() {
        let w = WebIR::parse("web n=3 src=(3+)\n split 2 1\n merge 2 1").unwrap();
        let (l, rep) = ladderize_verify(&w).unwrap();
        assert!(rep.equal);
        assert_eq!(l.ladder.source, vec![3, 0]);
        assert_eq!(
            l.ladder.rungs,
            vec![
                Rung {
                    i: 1,
                    gen: UGen::F,
                    r: 1
                },
                Rung {
                    i: 1,
                    gen: UGen::E,
                    r: 1
                }
            ]
        );
    }

    #[test]
    fn rejects_downward_boundaries() {
        let w = WebIR::cell(3, Cell::TagOut(1, Side::Left));
        assert!(matches!(ladderize(&w), Err(LadderizeError::NotUpward(_))));
    }
}
