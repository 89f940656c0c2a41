//! A standalone Kauffman bracket of braid closures, by summing over all
//! smoothings. Polynomials in `A` are maps from exponent to coefficient.

use std::collections::BTreeMap;

pub type Poly = BTreeMap<i64, i64>;

fn add(acc: &mut Poly, e: i64, c: i64) {
    let slot = acc.entry(e).or_insert(0);
    *slot += c;
    if *slot == 0 {
        acc.remove(&e);
    }
}

fn mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, c) in x {
        for (b, d) in y {
            add(&mut out, a + b, c * d);
        }
    }
    out
}

/// `d = -A^2 - A^-2`, the value of a loop.
fn loop_value() -> Poly {
    Poly::from([(2, -1), (-2, -1)])
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// `⟨D⟩` with every loop (including the last) worth `d`; a positive generator
/// `σ_i` is `A · id + A^{-1} · e_i` and `σ_i^{-1}` swaps the two weights.
pub fn bracket(strands: usize, word: &[(usize, bool)], plat: bool) -> Poly {
    let c = word.len();
    let point = |level: usize, j: usize| level * strands + j;
    let mut total = Poly::new();
    for state in 0..1u64 << c {
        let mut dsu = Dsu((0..(c + 1) * strands).collect());
        let mut exp = 0;
        for (t, &(i, positive)) in word.iter().enumerate() {
            let smooth_e = state >> t & 1 == 1;
            exp += match (smooth_e, positive) {
                (false, true) | (true, false) => 1,
                _ => -1,
            };
            for j in 0..strands {
                if !smooth_e || (j != i - 1 && j != i) {
                    dsu.union(point(t, j), point(t + 1, j));
                }
            }
            if smooth_e {
                dsu.union(point(t, i - 1), point(t, i));
                dsu.union(point(t + 1, i - 1), point(t + 1, i));
            }
        }
        if plat {
            for j in (0..strands).step_by(2) {
                dsu.union(point(0, j), point(0, j + 1));
                dsu.union(point(c, j), point(c, j + 1));
            }
        } else {
            for j in 0..strands {
                dsu.union(point(0, j), point(c, j));
            }
        }
        let mut roots: Vec<usize> = (0..(c + 1) * strands).map(|p| dsu.find(p)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut term = Poly::from([(exp, 1)]);
        for _ in 0..roots.len() {
            term = mul(&term, &loop_value());
        }
        for (e, x) in term {
            add(&mut total, e, x);
        }
    }
    total
}
