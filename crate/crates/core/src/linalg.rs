//! Exact dense linear algebra over `Q` and over Laurent polynomials.

use num_rational::BigRational;
use num_traits::Zero;

use crate::exterior::{Basis, LinearMap, SpaceObject, Vector};
use crate::scalar::{Scalar, ScalarError};

/// Row-reduced span of rational vectors, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: impl IntoIterator<Item = Vec<BigRational>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense form of a map: `out[row][col]` in the source and target basis orders.
pub fn to_dense(m: &LinearMap) -> (Vec<Basis>, Vec<Basis>, Vec<Vec<Scalar>>) {
    let rows = m.tgt.basis();
    let cols = m.src.basis();
    let dense = rows
        .iter()
        .map(|r| cols.iter().map(|c| m.entry(r, c)).collect())
        .collect();
    (rows, cols, dense)
}

pub fn from_dense(src: SpaceObject, tgt: SpaceObject, dense: &[Vec<Scalar>]) -> LinearMap {
    let rows = tgt.basis();
    let cols = src.basis();
    let mut out = LinearMap::zero(src, tgt);
    for (j, c) in cols.into_iter().enumerate() {
        let mut v = Vector::zero();
        for (i, r) in rows.iter().enumerate() {
            v.add_term(r.clone(), dense[i][j].clone());
        }
        out.set_column(c, v);
    }
    out
}

/// Entrywise specialization `u = u0`.
pub fn specialize(
    dense: &[Vec<Scalar>],
    u0: &BigRational,
) -> Result<Vec<Vec<BigRational>>, ScalarError> {
    dense
        .iter()
        .map(|row| row.iter().map(|x| x.specialize(u0)).collect())
        .collect()
}

/// Inverse of a square matrix over `Q[u, u^-1]`, when it exists there.
///
/// Fraction-free Gauss-Jordan elimination turns `[A | I]` into `[d I | d A^-1]`
/// with `d = det A`; every intermediate division is exact.
pub fn laurent_inverse(a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    let mut prev = Scalar::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            let pivot_row = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x = (&(&pivot * &*x) - &(&f * y)).exact_div(&prev)?;
            }
        }
        prev = pivot;
    }
    // every diagonal entry is now det A
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        let d = &m[i][i];
        for j in 0..n {
            out[i][j] = m[i][n + j].exact_div(d)?;
        }
    }
    Some(out)
}

pub fn is_identity(m: &[Vec<Scalar>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Dimension of the solution space of `rows · x = 0` with `width` unknowns.
pub fn nullity(rows: impl IntoIterator<Item = Vec<BigRational>>, width: usize) -> usize {
    width - rank(rows)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RootOrder;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text, RootOrder::ONE).unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        let r = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        assert_eq!(rank(vec![r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rank(vec![r(&[1, 2, 0]), r(&[0, 1, 1]), r(&[1, 3, 1])]), 2);
        assert_eq!(nullity(vec![r(&[1, 1, 1])], 3), 2);
    }

    #[test]
    fn inverse_of_unimodular_matrix() {
        let a = vec![vec![s("q"), s("1")], vec![s("q^2 + 1"), s("q^-1 + q + 1")]];
        let inv = laurent_inverse(&a).unwrap();
        assert!(is_identity(&mat_mul(&a, &inv)));
        assert!(is_identity(&mat_mul(&inv, &a)));
    }

    #[test]
    fn no_inverse_over_laurent_polynomials() {
        let a = vec![vec![s("q + 1")]];
        assert!(laurent_inverse(&a).is_none());
    }
}
