//! Evaluation of webs as linear maps between tensor products of wedge powers.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::exterior::{
    cap_map, cup_map, merge_map, split_map, tag_in_map, tag_map, Basis, ExteriorError, LinearMap,
    SpaceObject, Vector,
};
use crate::scalar::Scalar;
use crate::web::{Cell, Diagnostic, Validation, WebIR, WebLinComb};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("malformed web: {0}")]
    Invalid(Diagnostic),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("web is not closed: {src} -> {tgt}")]
    NotClosed { src: String, tgt: String },
}

type CellKey = (usize, Cell);

fn cell_cache() -> &'static RwLock<HashMap<CellKey, Arc<LinearMap>>> {
    static CACHE: OnceLock<RwLock<HashMap<CellKey, Arc<LinearMap>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The image of a single cell.
pub fn cell_map(n: usize, cell: Cell) -> Result<Arc<LinearMap>, ExteriorError> {
    if let Some(m) = cell_cache().read().unwrap().get(&(n, cell)) {
        return Ok(m.clone());
    }
    let m = Arc::new(match cell {
        Cell::Id(f) => LinearMap::identity(SpaceObject::new(n, vec![f])),
        Cell::Merge(k, l) => merge_map(k, l, n)?,
        Cell::Split(k, l) => split_map(k, l, n)?,
        Cell::TagOut(k, s) => tag_map(k, n, s)?,
        Cell::TagIn(k, s) => tag_in_map(k, n, s)?,
        Cell::Cup(k, o) => cup_map(k, n, o)?,
        Cell::Cap(k, o) => cap_map(k, n, o)?,
    });
    cell_cache().write().unwrap().insert((n, cell), m.clone());
    Ok(m)
}

/// One row applied to one basis vector.
fn apply_row(row: &[(usize, Option<Arc<LinearMap>>)], b: &Basis) -> Vector {
    let mut partial: Vec<(Basis, Scalar)> = vec![(Vec::new(), Scalar::one())];
    let mut pos = 0;
    for (width, map) in row {
        let chunk = &b[pos..pos + width];
        pos += width;
        match map {
            None => {
                for (acc, _) in partial.iter_mut() {
                    acc.extend_from_slice(chunk);
                }
            }
            Some(m) => {
                let image = m.column(&chunk.to_vec());
                if image.is_zero() {
                    return Vector::zero();
                }
                let mut next = Vec::with_capacity(partial.len() * image.len());
                for (acc, c) in &partial {
                    for (r, x) in image.iter() {
                        let mut nb = acc.clone();
                        nb.extend_from_slice(r);
                        next.push((nb, c * x));
                    }
                }
                partial = next;
            }
        }
    }
    let mut out = Vector::zero();
    for (b, c) in partial {
        out.add_term(b, c);
    }
    out
}

/// Evaluates `w` keeping `0`- and `n`-labelled factors (root order one).
pub fn eval_unreduced(w: &WebIR) -> Result<LinearMap, FunctorError> {
    let n = w.n();
    let target = match w.validate() {
        Validation::Invalid(d) => return Err(FunctorError::Invalid(d)),
        Validation::Zero(_) => {
            let t = w.target().expect("validated web has a target");
            return Ok(LinearMap::zero(w.source.clone(), t));
        }
        Validation::Valid => w.target().expect("validated web has a target"),
    };
    let mut rows = Vec::with_capacity(w.rows.len());
    for row in &w.rows {
        let mut compiled = Vec::with_capacity(row.len());
        for &cell in row {
            let width = cell.inputs().len();
            let map = if cell.is_identity() {
                None
            } else {
                Some(cell_map(n, cell)?)
            };
            compiled.push((width, map));
        }
        rows.push(compiled);
    }
    let columns: Vec<(Basis, Vector)> = w
        .source
        .basis()
        .into_par_iter()
        .map(|b| {
            let mut v = Vector::basis(b.clone());
            for row in &rows {
                let mut next = Vector::zero();
                for (bb, c) in v.iter() {
                    next.add_scaled(&apply_row(row, bb), c);
                }
                v = next;
                if v.is_zero() {
                    break;
                }
            }
            (b, v)
        })
        .collect();
    let mut out = LinearMap::zero(w.source.clone(), target);
    for (b, v) in columns {
        out.set_column(b, v);
    }
    Ok(out)
}

/// The image of `w` on reduced objects: `0`- and `n`-labelled strands deleted.
pub fn eval(w: &WebIR) -> Result<LinearMap, FunctorError> {
    Ok(eval_unreduced(w)?.stripped())
}

/// Evaluates a linear combination; the result lives at the combination's root order.
pub fn eval_lincomb(c: &WebLinComb) -> Result<LinearMap, FunctorError> {
    let factor = c.root.get();
    let mut out = LinearMap::zero(c.source.stripped(), c.target.stripped());
    for (w, coeff) in c.terms() {
        let m = eval(w)?.embed(factor).scaled(coeff);
        out = out.add(&m)?;
    }
    Ok(out)
}

/// The value of a closed web.
pub fn eval_closed(w: &WebIR) -> Result<Scalar, FunctorError> {
    let m = eval(w)?;
    m.scalar_value().ok_or_else(|| FunctorError::NotClosed {
        src: m.src.to_string(),
        tgt: m.tgt.to_string(),
    })
}

/// Entrywise equality of two maps with the same source and target.
pub fn maps_equal(a: &LinearMap, b: &LinearMap) -> Result<bool, ExteriorError> {
    a.equals(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Factor, Orient};
    use crate::scalar::{quantum_binomial, quantum_int, RootOrder};

    const Q: RootOrder = RootOrder::ONE;

    fn circle(n: usize, k: usize, o: Orient) -> WebIR {
        WebIR::new(
            SpaceObject::empty(n),
            vec![vec![Cell::Cup(k, o)], vec![Cell::Cap(k, o)]],
        )
    }

    #[test]
    fn circles_give_binomials() {
        for n in 2..=6 {
            for k in 0..=n {
                let want = quantum_binomial(n as i64, k as i64, Q);
                for o in [Orient::MinusPlus, Orient::PlusMinus] {
                    assert_eq!(
                        eval_closed(&circle(n, k, o)).unwrap(),
                        want,
                        "n={n} k={k} {o:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bigon_is_scalar() {
        let w = WebIR::parse("web n=3 src=(2+)\n split 1 1\n merge 1 1").unwrap();
        let id = LinearMap::identity(SpaceObject::up(3, &[2]));
        assert_eq!(eval(&w).unwrap(), id.scaled(&quantum_int(2, Q)));
    }

    #[test]
    fn empty_web_is_identity() {
        let w = WebIR::identity(SpaceObject::empty(3));
        assert_eq!(eval_closed(&w).unwrap(), Scalar::one());
    }

    #[test]
    fn two_circles_multiply() {
        let c = circle(2, 1, Orient::MinusPlus);
        let w = c.tensor(&c).unwrap();
        let two = quantum_int(2, Q);
        assert_eq!(eval_closed(&w).unwrap(), &two * &two);
    }

    #[test]
    fn zero_flagged_webs_vanish() {
        let w = WebIR::parse("web n=3 src=(2+,2+)\n merge 2 2\n split 2 2").unwrap();
        let m = eval(&w).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.src, SpaceObject::up(3, &[2, 2]));
    }

    #[test]
    fn invalid_webs_are_errors() {
        let w = WebIR::new(
            SpaceObject::new(3, vec![Factor::down(1)]),
            vec![vec![Cell::Id(Factor::up(1))]],
        );
        assert!(matches!(eval(&w), Err(FunctorError::Invalid(_))));
        let open = WebIR::identity(SpaceObject::up(3, &[1]));
        assert!(matches!(
            eval_closed(&open),
            Err(FunctorError::NotClosed { .. })
        ));
    }

    #[test]
    fn identity_differs_from_zero() {
        let obj = SpaceObject::up(3, &[1]);
        let id = LinearMap::identity(obj.clone());
        assert!(!maps_equal(&id, &LinearMap::zero(obj.clone(), obj)).unwrap());
    }
}
