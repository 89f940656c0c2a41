use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Factor, Orient, Side, Sign, SpaceObject};
use crate::web::{Cell, WebBuilder, WebIR};

fn side(rng: &mut ChaCha8Rng) -> Side {
    if rng.gen_bool(0.5) {
        Side::Left
    } else {
        Side::Right
    }
}

fn orient(rng: &mut ChaCha8Rng) -> Orient {
    if rng.gen_bool(0.5) {
        Orient::MinusPlus
    } else {
        Orient::PlusMinus
    }
}

/// A web with upward source and target and at most `budget` non-identity cells.
///
/// Moves are chosen at random among merges, splits, tags, cups and caps; any
/// downward strands left at the end are turned upward with tags. The same seed
/// always gives the same web.
pub fn random_web(n: usize, budget: usize, seed: u64) -> WebIR {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = rng.gen_range(1..=3);
    let labels: Vec<usize> = (0..width).map(|_| rng.gen_range(0..=n)).collect();
    let mut b = WebBuilder::new(SpaceObject::up(n, &labels));
    let mut used = 0;
    let downs = |b: &WebBuilder| {
        b.boundary()
            .iter()
            .filter(|f| f.sign == Sign::Minus)
            .count()
    };
    let mut attempts = 0;
    while used + downs(&b) < budget && attempts < 64 * (budget + 1) {
        attempts += 1;
        let cur: Vec<Factor> = b.boundary().to_vec();
        let spare = budget - used - downs(&b);
        let len = cur.len();
        let cell_at = match rng.gen_range(0..6) {
            0 if len >= 2 => {
                let p = rng.gen_range(0..len - 1);
                let (a, c) = (cur[p], cur[p + 1]);
                (a.sign == Sign::Plus && c.sign == Sign::Plus && a.k + c.k <= n)
                    .then_some((p, Cell::Merge(a.k, c.k)))
            }
            1 if len > 0 && len < 5 => {
                let p = rng.gen_range(0..len);
                let f = cur[p];
                (f.sign == Sign::Plus).then(|| {
                    let a = rng.gen_range(0..=f.k);
                    (p, Cell::Split(a, f.k - a))
                })
            }
            2 if len > 0 && spare >= 2 => {
                let p = rng.gen_range(0..len);
                let f = cur[p];
                (f.sign == Sign::Plus).then(|| (p, Cell::TagOut(f.k, side(&mut rng))))
            }
            3 if len > 0 => {
                let p = rng.gen_range(0..len);
                let f = cur[p];
                (f.sign == Sign::Minus).then(|| (p, Cell::TagIn(f.k, side(&mut rng))))
            }
            4 if spare >= 2 && len < 5 => {
                let p = rng.gen_range(0..=len);
                Some((p, Cell::Cup(rng.gen_range(0..=n), orient(&mut rng))))
            }
            5 if len >= 2 => {
                let p = rng.gen_range(0..len - 1);
                let (a, c) = (cur[p], cur[p + 1]);
                let o = match (a.sign, c.sign) {
                    (Sign::Minus, Sign::Plus) => Some(Orient::MinusPlus),
                    (Sign::Plus, Sign::Minus) => Some(Orient::PlusMinus),
                    _ => None,
                };
                o.filter(|_| a.k == c.k).map(|o| (p, Cell::Cap(a.k, o)))
            }
            _ => None,
        };
        if let Some((p, cell)) = cell_at {
            b.apply(p, cell).expect("move fits the boundary");
            used += 1;
        }
    }
    while let Some(p) = b.boundary().iter().position(|f| f.sign == Sign::Minus) {
        let k = b.boundary()[p].k;
        let s = side(&mut rng);
        b.apply(p, Cell::TagIn(k, s))
            .expect("tag fits the boundary");
    }
    b.build()
}
