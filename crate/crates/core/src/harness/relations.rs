//! Both sides of every spider relation as explicit webs.

use crate::exterior::{Factor, Orient, Side, SpaceObject};
use crate::qgroup::{ladder_to_web, Ladder, Rung, UGen};
use crate::scalar::{quantum_binomial, quantum_int, RootOrder, Scalar};
use crate::web::{Cell, WebBuilder, WebIR};

const Q: RootOrder = RootOrder::ONE;

/// A formal sum of webs sharing a boundary.
pub type WebSum = Vec<(Scalar, WebIR)>;

#[derive(Clone, Debug)]
pub struct RelationCase {
    pub relation: &'static str,
    pub params: String,
    pub lhs: WebSum,
    pub rhs: WebSum,
}

/// Relation identifiers in the order they are checked.
pub const RELATIONS: [&str; 11] = [
    "2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8", "2.9", "2.10", "2.11",
];

pub fn relation_name(id: &str) -> &'static str {
    match id {
        "2.1" => "switch",
        "2.2" => "bigon",
        "2.3" => "bigon-opposite",
        "2.4" => "I=H",
        "2.5" => "tag-migration",
        "2.6" => "tag-migration-2",
        "2.7" => "square-removal",
        "2.8" => "square-switch",
        "2.9" => "loop",
        "2.10" => "cancel-tags",
        "2.11" => "serre",
        _ => "unknown",
    }
}

fn one() -> Scalar {
    Scalar::one()
}

fn sign(e: usize) -> Scalar {
    Scalar::sign(e as i64)
}

fn up(n: usize, labels: &[usize]) -> SpaceObject {
    SpaceObject::up(n, labels)
}

fn single(w: WebIR) -> WebSum {
    vec![(one(), w)]
}

/// Rows applied through a builder; every construction here is well formed.
fn build(source: SpaceObject, steps: &[(usize, Vec<Cell>)]) -> WebIR {
    let mut b = WebBuilder::new(source);
    for (pos, cells) in steps {
        b.apply_row(*pos, cells)
            .expect("relation web is well formed");
    }
    b.build()
}

fn ladder_web(n: usize, src: &[usize], rungs: &[(UGen, usize)]) -> Option<WebIR> {
    let l = Ladder::new(
        n,
        src.to_vec(),
        rungs
            .iter()
            .map(|&(gen, r)| Rung { i: 1, gen, r })
            .collect(),
    );
    l.is_valid().then(|| ladder_to_web(&l))
}

fn ladder_web3(n: usize, src: &[usize], rungs: &[(UGen, usize)]) -> Option<WebIR> {
    let l = Ladder::new(
        n,
        src.to_vec(),
        rungs
            .iter()
            .map(|&(gen, i)| Rung { i, gen, r: 1 })
            .collect(),
    );
    l.is_valid().then(|| ladder_to_web(&l))
}

/// All cases of relation `id` with labels at most `max_label`.
pub fn relation_cases(id: &str, n: usize, max_label: usize) -> Vec<RelationCase> {
    let top = max_label.min(n);
    let mut out = Vec::new();
    let name: &'static str = RELATIONS.iter().find(|r| **r == id).copied().unwrap_or("?");
    let mut push = |params: String, lhs: WebSum, rhs: WebSum| {
        out.push(RelationCase {
            relation: name,
            params,
            lhs,
            rhs,
        })
    };
    match id {
        "2.1" => {
            for k in 0..=top {
                let s = sign(k * (n - k));
                push(
                    format!("out k={k}"),
                    single(WebIR::cell(n, Cell::TagOut(k, Side::Left))),
                    vec![(s.clone(), WebIR::cell(n, Cell::TagOut(k, Side::Right)))],
                );
                push(
                    format!("in k={k}"),
                    single(WebIR::cell(n, Cell::TagIn(k, Side::Left))),
                    vec![(s, WebIR::cell(n, Cell::TagIn(k, Side::Right)))],
                );
            }
        }
        "2.2" => {
            for k in 0..=top {
                for l in 0..=top {
                    if k + l > n {
                        continue;
                    }
                    let w = build(
                        up(n, &[k + l]),
                        &[(0, vec![Cell::Split(k, l)]), (0, vec![Cell::Merge(k, l)])],
                    );
                    let c = quantum_binomial((k + l) as i64, l as i64, Q);
                    push(
                        format!("k={k} l={l}"),
                        single(w),
                        vec![(c, WebIR::identity(up(n, &[k + l])))],
                    );
                }
            }
        }
        "2.3" => {
            for k in 0..=top {
                for l in 0..=top {
                    if k + l > n {
                        continue;
                    }
                    let w = build(
                        up(n, &[k]),
                        &[
                            (0, vec![Cell::Cup(l, Orient::MinusPlus)]),
                            (1, vec![Cell::Merge(l, k)]),
                            (1, vec![Cell::Split(l, k)]),
                            (0, vec![Cell::Cap(l, Orient::MinusPlus)]),
                        ],
                    );
                    let c = quantum_binomial((n - k) as i64, l as i64, Q);
                    push(
                        format!("k={k} l={l}"),
                        single(w),
                        vec![(c, WebIR::identity(up(n, &[k])))],
                    );
                }
            }
        }
        "2.4" => {
            for k in 0..=top {
                for l in 0..=top {
                    for m in 0..=top {
                        if k + l + m > n {
                            continue;
                        }
                        let src = up(n, &[k, l, m]);
                        let left = build(
                            src.clone(),
                            &[
                                (0, vec![Cell::Merge(k, l)]),
                                (0, vec![Cell::Merge(k + l, m)]),
                            ],
                        );
                        let right = build(
                            src,
                            &[
                                (1, vec![Cell::Merge(l, m)]),
                                (0, vec![Cell::Merge(k, l + m)]),
                            ],
                        );
                        push(
                            format!("merge k={k} l={l} m={m}"),
                            single(left),
                            single(right),
                        );
                        let whole = up(n, &[k + l + m]);
                        let left = build(
                            whole.clone(),
                            &[
                                (0, vec![Cell::Split(k + l, m)]),
                                (0, vec![Cell::Split(k, l)]),
                            ],
                        );
                        let right = build(
                            whole,
                            &[
                                (0, vec![Cell::Split(k, l + m)]),
                                (1, vec![Cell::Split(l, m)]),
                            ],
                        );
                        push(
                            format!("split k={k} l={l} m={m}"),
                            single(left),
                            single(right),
                        );
                    }
                }
            }
        }
        "2.5" => {
            for k in 0..=top {
                for l in 0..=top {
                    if k + l > n {
                        continue;
                    }
                    let m = n - k - l;
                    let src = up(n, &[k, l]);
                    let lhs = build(
                        src.clone(),
                        &[
                            (0, vec![Cell::Merge(k, l)]),
                            (0, vec![Cell::TagOut(k + l, Side::Right)]),
                        ],
                    );
                    let rhs = build(
                        src,
                        &[
                            (1, vec![Cell::TagOut(l, Side::Right)]),
                            (0, vec![Cell::Cup(m, Orient::MinusPlus)]),
                            (1, vec![Cell::Merge(m, k)]),
                            (1, vec![Cell::Cap(n - l, Orient::PlusMinus)]),
                        ],
                    );
                    push(format!("k={k} l={l}"), single(lhs), single(rhs));
                }
            }
        }
        "2.6" => {
            for k in 0..=top {
                for l in 0..=top {
                    if k + l > n {
                        continue;
                    }
                    let src = SpaceObject::new(n, vec![Factor::up(k + l), Factor::down(k)]);
                    let lhs = build(
                        src.clone(),
                        &[
                            (0, vec![Cell::Split(l, k)]),
                            (1, vec![Cell::Cap(k, Orient::PlusMinus)]),
                            (0, vec![Cell::TagOut(l, Side::Left)]),
                        ],
                    );
                    let turn = WebIR::cell(n, Cell::Split(k, n - k - l))
                        .rotate(false)
                        .expect("rotation of a cell");
                    let mut b = WebBuilder::new(src);
                    b.apply(0, Cell::TagOut(k + l, Side::Left))
                        .expect("well formed");
                    b.apply_web(0, &turn).expect("well formed");
                    push(format!("k={k} l={l}"), single(lhs), single(b.build()));
                }
            }
        }
        "2.7" => {
            for k in 0..=top {
                for l in 0..=top {
                    for r in 1..=n {
                        for s in 1..=n {
                            let src = [k, l];
                            let Some(lhs) = ladder_web(n, &src, &[(UGen::F, s), (UGen::F, r)])
                            else {
                                continue;
                            };
                            let rhs =
                                ladder_web(n, &src, &[(UGen::F, r + s)]).expect("same endpoints");
                            let c = quantum_binomial((r + s) as i64, r as i64, Q);
                            push(
                                format!("k={k} l={l} r={r} s={s}"),
                                single(lhs),
                                vec![(c, rhs)],
                            );
                        }
                    }
                }
            }
        }
        "2.8" => {
            for k in 0..=top {
                for l in 0..=top {
                    for r in 0..=n {
                        for s in 0..=n {
                            let src = [k, l];
                            let lhs: WebSum = ladder_web(n, &src, &[(UGen::F, s), (UGen::E, r)])
                                .map(|w| vec![(one(), w)])
                                .unwrap_or_default();
                            let mut rhs = WebSum::new();
                            for t in 0..=r.min(s) {
                                let c = quantum_binomial(
                                    k as i64 - l as i64 + r as i64 - s as i64,
                                    t as i64,
                                    Q,
                                );
                                if let Some(w) =
                                    ladder_web(n, &src, &[(UGen::E, r - t), (UGen::F, s - t)])
                                {
                                    if !c.is_zero() {
                                        rhs.push((c, w));
                                    }
                                }
                            }
                            push(format!("k={k} l={l} r={r} s={s}"), lhs, rhs);
                        }
                    }
                }
            }
        }
        "2.9" => {
            for k in 0..=top {
                for o in [Orient::MinusPlus, Orient::PlusMinus] {
                    let w = WebIR::new(
                        SpaceObject::empty(n),
                        vec![vec![Cell::Cup(k, o)], vec![Cell::Cap(k, o)]],
                    );
                    let c = quantum_binomial(n as i64, k as i64, Q);
                    push(
                        format!("k={k} {o:?}"),
                        single(w),
                        vec![(c, WebIR::identity(SpaceObject::empty(n)))],
                    );
                }
            }
        }
        "2.10" => {
            for k in 0..=top {
                let w = build(
                    up(n, &[k]),
                    &[
                        (0, vec![Cell::TagOut(k, Side::Left)]),
                        (0, vec![Cell::TagIn(n - k, Side::Right)]),
                    ],
                );
                push(
                    format!("k={k}"),
                    single(w),
                    single(WebIR::identity(up(n, &[k]))),
                );
            }
        }
        "2.11" => {
            let two = quantum_int(2, Q);
            for k1 in 0..=top {
                for k2 in 0..=top {
                    for k3 in 0..=top {
                        for g in [UGen::E, UGen::F] {
                            for (i, j) in [(1, 2), (2, 1)] {
                                let src = [k1, k2, k3];
                                let mut lhs = WebSum::new();
                                let terms = [
                                    (one(), [(g, i), (g, i), (g, j)]),
                                    (-two.clone(), [(g, i), (g, j), (g, i)]),
                                    (one(), [(g, j), (g, i), (g, i)]),
                                ];
                                for (c, rungs) in terms {
                                    if let Some(w) = ladder_web3(n, &src, &rungs) {
                                        lhs.push((c, w));
                                    }
                                }
                                push(
                                    format!("k=({k1},{k2},{k3}) {g:?} i={i} j={j}"),
                                    lhs,
                                    WebSum::new(),
                                );
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Multiplies the coefficient of the opposite-bigon relation by `q`, as a
/// negative control.
pub fn perturb(case: &mut RelationCase) {
    for (c, _) in case.rhs.iter_mut() {
        *c = &*c * &Scalar::q_pow(1, Q);
    }
}
