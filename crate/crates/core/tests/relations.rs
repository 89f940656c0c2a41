use webcalc_core::exterior::{Factor, Orient, Side, SpaceObject};
use webcalc_core::functor::eval;
use webcalc_core::harness::{
    check_case, random_web, relation_cases, relcheck, RelcheckOptions, Status, Variant,
};
use webcalc_core::web::{Cell, WebIR};

fn all_cells(n: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.push(Cell::Id(Factor::up(k)));
        out.push(Cell::Id(Factor::down(k)));
        for s in [Side::Left, Side::Right] {
            out.push(Cell::TagOut(k, s));
            out.push(Cell::TagIn(k, s));
        }
        for o in [Orient::MinusPlus, Orient::PlusMinus] {
            out.push(Cell::Cup(k, o));
            out.push(Cell::Cap(k, o));
        }
        for l in 0..=n - k {
            out.push(Cell::Merge(k, l));
            out.push(Cell::Split(k, l));
        }
    }
    out
}

#[test]
fn spider_relations_hold_for_small_n() {
    for n in 2..=3 {
        let recs = relcheck(&RelcheckOptions::new(n, n)).unwrap();
        assert!(recs.len() > 100);
        for r in &recs {
            assert_eq!(
                r.status,
                Status::Pass,
                "{} {} {:?} n={n}: {:?}",
                r.relation,
                r.params,
                r.variant,
                r.witness
            );
        }
    }
}

#[test]
fn square_switch_at_rank_four() {
    let case = relation_cases("2.8", 4, 4)
        .into_iter()
        .find(|c| c.params == "k=2 l=1 r=1 s=1")
        .unwrap();
    for v in Variant::ALL {
        assert_eq!(check_case(&case, v).unwrap(), None);
    }
}

#[test]
fn tag_migration_at_rank_four_needs_side_flip_under_reversal() {
    let mut opts = RelcheckOptions::new(4, 4);
    opts.relations = vec!["2.5".into(), "2.6".into(), "2.1".into(), "2.10".into()];
    for r in relcheck(&opts).unwrap() {
        assert_eq!(
            r.status,
            Status::Pass,
            "{} {} {:?}",
            r.relation,
            r.params,
            r.variant
        );
    }
}

#[test]
fn perturbed_bigon_fails_with_witness() {
    let mut opts = RelcheckOptions::new(3, 3);
    opts.relations = vec!["2.3".into()];
    opts.perturb = true;
    let recs = relcheck(&opts).unwrap();
    assert!(!recs.is_empty());
    for r in recs {
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.unwrap();
        assert_ne!(w.lhs, w.rhs);
    }
}

#[test]
fn rotations_agree_on_both_sides() {
    for n in 2..=4 {
        for cell in all_cells(n) {
            let w = WebIR::cell(n, cell);
            let right = w.rotate(false).unwrap();
            let left = w.rotate(true).unwrap();
            assert_eq!(eval(&right).unwrap(), eval(&left).unwrap(), "{cell} n={n}");
        }
    }
}

#[test]
fn full_turn_is_trivial() {
    for n in 2..=3 {
        for cell in all_cells(n) {
            let w = WebIR::cell(n, cell);
            let twice = w.rotate(false).unwrap().rotate(false).unwrap();
            assert_eq!(eval(&twice).unwrap(), eval(&w).unwrap(), "{cell} n={n}");
        }
    }
}

#[test]
fn mirror_and_reversal_are_involutive_on_boundaries() {
    let w = WebIR::cell(3, Cell::Merge(1, 2));
    assert_eq!(w.mirror().mirror(), w);
    let rr = w.arrow_reverse().unwrap().arrow_reverse().unwrap();
    assert_eq!(rr.source, w.source);
    assert_eq!(eval(&rr).unwrap(), eval(&w).unwrap());
    assert_eq!(w.target().unwrap(), SpaceObject::up(3, &[3]));
}

#[test]
fn random_webs_are_valid_and_reproducible() {
    for seed in 0..100 {
        let w = random_web(3, 8, seed);
        assert!(w.validate().is_ok(), "seed {seed}");
        assert!(w.cell_count() <= 8);
        assert_eq!(w, random_web(3, 8, seed));
    }
    assert_eq!(random_web(3, 0, 11).cell_count(), 0);
}
