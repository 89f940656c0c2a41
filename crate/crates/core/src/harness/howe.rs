use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exterior::{generator_map, Gen};
use crate::linalg::{rat, specialize, to_dense, Echelon};
use crate::qgroup::{word_matrix, GlWeight, Letter, QError, UGen, UWord};

/// The two specialization points; both must agree.
pub const SPECIALIZATIONS: [(i64, i64); 2] = [(7, 5), (13, 9)];

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PointReport {
    pub u0: String,
    pub span_dim: usize,
    pub commutant_dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HoweReport {
    pub n: usize,
    pub m: usize,
    pub total: i64,
    pub weights: usize,
    pub points: Vec<PointReport>,
    pub equal: bool,
}

type Mat = Vec<Vec<BigRational>>;

fn mul(a: &Mat, b: &Mat) -> Mat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for (t, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[t][j].is_zero() {
                            acc += x * &b[t][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn flat(m: &Mat) -> Vec<BigRational> {
    m.iter().flatten().cloned().collect()
}

fn identity(d: usize) -> Mat {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Dimension of the span of all words `1_{k'} x 1_k` acting on weights of total `K`.
fn span_dim(n: usize, weights: &[GlWeight], u0: &BigRational) -> Result<usize, QError> {
    let m = weights.first().map_or(0, |w| w.m());
    let index: BTreeMap<&GlWeight, usize> =
        weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut dims = Vec::new();
    for w in weights {
        dims.push(w.space(n)?.stripped().dim());
    }
    // generators[src] = (tgt, matrix) for every letter E_i, F_i out of src
    let mut generators: Vec<Vec<(usize, Mat)>> = vec![Vec::new(); weights.len()];
    for (s, k) in weights.iter().enumerate() {
        for i in 1..m {
            for gen in [UGen::E, UGen::F] {
                let w = UWord::new(k.clone(), vec![Letter::new(gen, i, 1)]);
                let t = w.target();
                let Some(&ti) = index.get(&t) else { continue };
                let (_, _, dense) = to_dense(&word_matrix(&w, n)?);
                let at = specialize(&dense, u0).map_err(|_| QError::Inexact)?;
                generators[s].push((ti, at));
            }
        }
    }
    let mut spans: BTreeMap<(usize, usize), Echelon> = BTreeMap::new();
    let mut frontier: Vec<(usize, usize, Mat)> = Vec::new();
    for (s, &d) in dims.iter().enumerate() {
        let id = identity(d);
        spans.entry((s, s)).or_default().insert(flat(&id));
        frontier.push((s, s, id));
    }
    while let Some((s, t, x)) = frontier.pop() {
        for (t2, g) in &generators[t] {
            let y = mul(g, &x);
            if spans.entry((s, *t2)).or_default().insert(flat(&y)) {
                frontier.push((s, *t2, y));
            }
        }
    }
    Ok(spans.values().map(Echelon::rank).sum())
}

/// Dimension of `⊕ Hom_{U_q(sl_n)}(V_k, V_k')`, solving `X g = g X` blockwise.
fn commutant_dim(n: usize, weights: &[GlWeight], u0: &BigRational) -> Result<usize, QError> {
    let mut gens: Vec<Vec<Mat>> = Vec::new();
    for w in weights {
        let obj = w.space(n)?;
        let mut list = Vec::new();
        for i in 1..n {
            for g in [Gen::E, Gen::F, Gen::K] {
                let map = generator_map(g, i, &obj)
                    .map_err(|e| QError::Functor(e.into()))?
                    .stripped();
                let (_, _, dense) = to_dense(&map);
                list.push(specialize(&dense, u0).map_err(|_| QError::Inexact)?);
            }
        }
        gens.push(list);
    }
    let dims: Vec<usize> = weights
        .iter()
        .map(|w| w.space(n).map(|s| s.stripped().dim()))
        .collect::<Result<_, _>>()?;
    let mut total = 0;
    for (a, &da) in dims.iter().enumerate() {
        for (b, &db) in dims.iter().enumerate() {
            // X: V_a -> V_b has db * da unknowns x[r][c] at r * da + c
            let width = db * da;
            let mut eqs = Echelon::new();
            for (ga, gb) in gens[a].iter().zip(&gens[b]) {
                for r in 0..db {
                    for c in 0..da {
                        let mut row = vec![BigRational::zero(); width];
                        for t in 0..da {
                            if !ga[t][c].is_zero() {
                                row[r * da + t] += &ga[t][c];
                            }
                        }
                        for t in 0..db {
                            if !gb[r][t].is_zero() {
                                row[t * da + c] -= &gb[r][t];
                            }
                        }
                        eqs.insert(row);
                    }
                }
            }
            total += width - eqs.rank();
        }
    }
    Ok(total)
}

/// Compares the span of evaluated words with the commutant of the quantum group
/// action, over all `n`-bounded weights with `m` entries summing to `total`.
pub fn howe_rank(n: usize, m: usize, total: i64) -> Result<HoweReport, QError> {
    let weights: Vec<GlWeight> = GlWeight::all_bounded(n, m)
        .into_iter()
        .filter(|w| w.total() == total)
        .collect();
    let mut points = Vec::new();
    for (p, q) in SPECIALIZATIONS {
        let u0 = rat(p, q);
        points.push(PointReport {
            u0: format!("{p}/{q}"),
            span_dim: span_dim(n, &weights, &u0)?,
            commutant_dim: commutant_dim(n, &weights, &u0)?,
        });
    }
    let first = (points[0].span_dim, points[0].commutant_dim);
    let equal = points
        .iter()
        .all(|p| (p.span_dim, p.commutant_dim) == first)
        && first.0 == first.1;
    Ok(HoweReport {
        n,
        m,
        total,
        weights: weights.len(),
        points,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_only_at_total_zero() {
        let r = howe_rank(2, 2, 0).unwrap();
        assert_eq!(r.points[0].span_dim, 1);
        assert!(r.equal);
    }
}
