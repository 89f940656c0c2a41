//! Relation checking, random webs and the Howe duality rank comparison.

mod howe;
mod random;
mod relations;

use rayon::prelude::*;
use serde::Serialize;

use crate::exterior::{render_basis, LinearMap};
use crate::functor::{eval, FunctorError};
use crate::ladderize::ladderize_verify;
use crate::scalar::RootOrder;
use crate::web::{WebError, WebIR};

pub use howe::{howe_rank, HoweReport, SPECIALIZATIONS};
pub use random::random_web;
pub use relations::{perturb, relation_cases, relation_name, RelationCase, WebSum, RELATIONS};

/// How a relation is transformed before checking.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Plain,
    Mirror,
    Reverse,
    MirrorReverse,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Plain,
        Variant::Mirror,
        Variant::Reverse,
        Variant::MirrorReverse,
    ];

    pub fn apply(self, w: &WebIR) -> Result<WebIR, WebError> {
        match self {
            Variant::Plain => Ok(w.clone()),
            Variant::Mirror => Ok(w.mirror()),
            Variant::Reverse => w.arrow_reverse(),
            Variant::MirrorReverse => w.mirror().arrow_reverse(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Mirror => "mirror",
            Variant::Reverse => "reverse",
            Variant::MirrorReverse => "mirror+reverse",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first matrix entry where the two sides disagree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckRecord {
    pub relation: String,
    pub name: String,
    pub variant: Variant,
    pub n: usize,
    pub params: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct RelcheckOptions {
    pub n: usize,
    pub max_label: usize,
    /// Relation identifiers to check; all of them when empty.
    pub relations: Vec<String>,
    pub variants: Vec<Variant>,
    /// Multiply the opposite-bigon coefficient by `q`.
    pub perturb: bool,
}

impl RelcheckOptions {
    pub fn new(n: usize, max_label: usize) -> Self {
        RelcheckOptions {
            n,
            max_label,
            relations: Vec::new(),
            variants: Variant::ALL.to_vec(),
            perturb: false,
        }
    }
}

/// `None` for an empty sum.
fn eval_sum(sum: &WebSum, variant: Variant) -> Result<Option<LinearMap>, FunctorError> {
    let mut acc: Option<LinearMap> = None;
    for (c, w) in sum {
        let w = variant.apply(w).map_err(|e| match e {
            WebError::Invalid(d) => FunctorError::Invalid(d),
            other => panic!("transformed relation web: {other}"),
        })?;
        let m = eval(&w)?.scaled(c);
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m)?,
        });
    }
    Ok(acc)
}

fn witness(a: &LinearMap, b: &LinearMap) -> Option<Witness> {
    let (r, c, x, y) = a.first_difference(b)?;
    Some(Witness {
        row: render_basis(&a.tgt, &r),
        col: render_basis(&a.src, &c),
        lhs: x.render(RootOrder::ONE),
        rhs: y.render(RootOrder::ONE),
    })
}

/// Compares both sides; the witness is the first differing entry.
pub fn check_case(case: &RelationCase, variant: Variant) -> Result<Option<Witness>, FunctorError> {
    let l = eval_sum(&case.lhs, variant)?;
    let r = eval_sum(&case.rhs, variant)?;
    Ok(match (l, r) {
        (None, None) => None,
        (Some(a), None) => witness(&a, &LinearMap::zero(a.src.clone(), a.tgt.clone())),
        (None, Some(b)) => witness(&LinearMap::zero(b.src.clone(), b.tgt.clone()), &b),
        (Some(a), Some(b)) => {
            if a.src != b.src || a.tgt != b.tgt {
                Some(Witness {
                    row: b.tgt.to_string(),
                    col: b.src.to_string(),
                    lhs: format!("{} -> {}", a.src, a.tgt),
                    rhs: format!("{} -> {}", b.src, b.tgt),
                })
            } else {
                witness(&a, &b)
            }
        }
    })
}

/// Checks every selected relation on every admissible labelling.
pub fn relcheck(opts: &RelcheckOptions) -> Result<Vec<CheckRecord>, FunctorError> {
    let mut jobs = Vec::new();
    for id in RELATIONS {
        if !opts.relations.is_empty() && !opts.relations.iter().any(|r| r == id) {
            continue;
        }
        for mut case in relation_cases(id, opts.n, opts.max_label) {
            if opts.perturb && id == "2.3" {
                perturb(&mut case);
            }
            for &v in &opts.variants {
                jobs.push((case.clone(), v));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(case, variant)| {
            let w = check_case(&case, variant)?;
            Ok(CheckRecord {
                relation: case.relation.to_string(),
                name: relation_name(case.relation).to_string(),
                variant,
                n: opts.n,
                params: case.params.clone(),
                status: if w.is_none() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                witness: w,
            })
        })
        .collect()
}

/// Evaluates a formal sum under the plain variant.
pub fn eval_web_sum(sum: &WebSum) -> Result<Option<LinearMap>, FunctorError> {
    eval_sum(sum, Variant::Plain)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FuzzFailure {
    pub seed: u64,
    pub n: usize,
    pub web: String,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FuzzReport {
    pub webs: usize,
    pub equal: usize,
    /// Ladders returned with an overall sign `-1`.
    pub negative: usize,
    pub failures: Vec<FuzzFailure>,
}

/// Ladderizes `count` random webs with seeds `seed..seed+count`, cycling
/// through `ns`, and compares evaluations.
pub fn fuzz_ladderize(ns: &[usize], count: u64, budget: usize, seed: u64) -> FuzzReport {
    let results: Vec<Result<bool, FuzzFailure>> = (seed..seed + count)
        .into_par_iter()
        .map(|s| {
            let n = ns[(s - seed) as usize % ns.len()];
            let w = random_web(n, budget, s);
            let fail = |reason: String| FuzzFailure {
                seed: s,
                n,
                web: w.render(),
                reason,
            };
            match ladderize_verify(&w) {
                Ok((l, rep)) if rep.equal => Ok(l.negative),
                Ok((_, rep)) => Err(fail(format!("{:?}", rep.witness))),
                Err(e) => Err(fail(e.to_string())),
            }
        })
        .collect();
    let mut report = FuzzReport {
        webs: results.len(),
        equal: 0,
        negative: 0,
        failures: Vec::new(),
    };
    for r in results {
        match r {
            Ok(neg) => {
                report.equal += 1;
                report.negative += neg as usize;
            }
            Err(f) => report.failures.push(f),
        }
    }
    report
}
