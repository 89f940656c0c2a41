//! Fixtures shared by the benchmarks.

use webcalc_core::braiding::{Closure, ColoredBraid};
use webcalc_core::exterior::Orient;
use webcalc_core::web::{Cell, WebIR};
use webcalc_core::SpaceObject;

/// A closed `k`-labelled loop.
pub fn circle(n: usize, k: usize) -> WebIR {
    WebIR::new(
        SpaceObject::empty(n),
        vec![
            vec![Cell::Cup(k, Orient::MinusPlus)],
            vec![Cell::Cap(k, Orient::MinusPlus)],
        ],
    )
}

/// The bigon on a `(k+l)`-labelled strand.
pub fn bigon(n: usize, k: usize, l: usize) -> WebIR {
    WebIR::new(
        SpaceObject::up(n, &[k + l]),
        vec![vec![Cell::Split(k, l)], vec![Cell::Merge(k, l)]],
    )
}

/// The trace closure of `(σ_1 ... σ_{s-1})^r` on `s` strands colored 1.
pub fn torus_braid(s: usize, r: usize) -> ColoredBraid {
    let word = (0..r).flat_map(|_| (1..s).map(|i| (i, true))).collect();
    ColoredBraid::new(vec![1; s], word, Closure::Trace)
}
