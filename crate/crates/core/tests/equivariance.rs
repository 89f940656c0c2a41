use webcalc_core::exterior::{
    cap_map, cup_map, generator_map, merge_map, split_map, tag_in_map, tag_map, Gen,
};
use webcalc_core::{Factor, LinearMap, Orient, RootOrder, Scalar, Side, SpaceObject};

const Q: RootOrder = RootOrder::ONE;

fn generating_maps(n: usize) -> Vec<(String, LinearMap)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for l in 0..=n - k {
            out.push((format!("merge({k},{l})"), merge_map(k, l, n).unwrap()));
            out.push((format!("split({k},{l})"), split_map(k, l, n).unwrap()));
        }
        for side in [Side::Left, Side::Right] {
            out.push((format!("tag({k},{side:?})"), tag_map(k, n, side).unwrap()));
            out.push((
                format!("tag_in({k},{side:?})"),
                tag_in_map(k, n, side).unwrap(),
            ));
        }
        for o in [Orient::MinusPlus, Orient::PlusMinus] {
            out.push((format!("cup({k},{o:?})"), cup_map(k, n, o).unwrap()));
            out.push((format!("cap({k},{o:?})"), cap_map(k, n, o).unwrap()));
        }
    }
    out
}

#[test]
fn generating_maps_commute_with_the_action() {
    for n in 2..=4 {
        for (name, f) in generating_maps(n) {
            for g in [Gen::E, Gen::F, Gen::K] {
                for i in 1..n {
                    let gs = generator_map(g, i, &f.src).unwrap();
                    let gt = generator_map(g, i, &f.tgt).unwrap();
                    let lhs = f.then(&gt).unwrap();
                    let rhs = gs.then(&f).unwrap();
                    assert_eq!(lhs, rhs, "{name} fails {g:?}_{i} at n={n}");
                }
            }
        }
    }
}

fn mixed_objects(n: usize) -> Vec<SpaceObject> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n {
            out.push(SpaceObject::new(n, vec![Factor::up(a), Factor::down(b)]));
            out.push(SpaceObject::new(
                n,
                vec![Factor::down(a), Factor::up(b), Factor::down(1)],
            ));
        }
    }
    out
}

#[test]
fn action_satisfies_the_quantum_group_relations() {
    let q = Scalar::q_pow(1, Q);
    let qi = Scalar::q_pow(-1, Q);
    for n in 2..=4 {
        for obj in mixed_objects(n) {
            for i in 1..n {
                let e = generator_map(Gen::E, i, &obj).unwrap();
                let f = generator_map(Gen::F, i, &obj).unwrap();
                let k = generator_map(Gen::K, i, &obj).unwrap();
                let ki = generator_map(Gen::KInv, i, &obj).unwrap();
                let one = LinearMap::identity(obj.clone());
                assert_eq!(k.then(&ki).unwrap(), one);
                // K E K^-1 = q^2 E and K F K^-1 = q^-2 F
                let q2 = &q * &q;
                assert_eq!(ki.then(&e).unwrap().then(&k).unwrap(), e.scaled(&q2));
                assert_eq!(
                    ki.then(&f).unwrap().then(&k).unwrap(),
                    f.scaled(&(&qi * &qi))
                );
                // (q - q^-1)[E, F] = K - K^-1
                let comm = f.then(&e).unwrap().sub(&e.then(&f).unwrap()).unwrap();
                assert_eq!(comm.scaled(&(&q - &qi)), k.sub(&ki).unwrap(), "{obj} i={i}");
                for j in 1..n {
                    if i.abs_diff(j) == 1 {
                        // E_i^2 E_j - [2] E_i E_j E_i + E_j E_i^2 = 0
                        let ej = generator_map(Gen::E, j, &obj).unwrap();
                        let two = &q + &qi;
                        let a = ej.then(&e).unwrap().then(&e).unwrap();
                        let b = e.then(&ej).unwrap().then(&e).unwrap().scaled(&two);
                        let c = e.then(&e).unwrap().then(&ej).unwrap();
                        assert!(a.sub(&b).unwrap().add(&c).unwrap().is_zero());
                    } else if i != j {
                        let ej = generator_map(Gen::E, j, &obj).unwrap();
                        assert_eq!(e.then(&ej).unwrap(), ej.then(&e).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn zigzags_are_identities() {
    for n in 2..=4 {
        for k in 0..=n {
            let up = SpaceObject::new(n, vec![Factor::up(k)]);
            let down = SpaceObject::new(n, vec![Factor::down(k)]);
            let id_up = LinearMap::identity(up.clone());
            let id_down = LinearMap::identity(down.clone());
            // (cap-+ ⊗ id) ∘ (id ⊗ cup+-) on k⁻
            let z1 = id_down
                .tensor(&cup_map(k, n, Orient::PlusMinus).unwrap())
                .then(&cap_map(k, n, Orient::MinusPlus).unwrap().tensor(&id_down))
                .unwrap();
            assert_eq!(z1, id_down);
            // (id ⊗ cap-+) ∘ (cup+- ⊗ id) on k⁺
            let z2 = cup_map(k, n, Orient::PlusMinus)
                .unwrap()
                .tensor(&id_up)
                .then(&id_up.tensor(&cap_map(k, n, Orient::MinusPlus).unwrap()))
                .unwrap();
            assert_eq!(z2, id_up);
            // (cap+- ⊗ id) ∘ (id ⊗ cup-+) on k⁺
            let z3 = id_up
                .tensor(&cup_map(k, n, Orient::MinusPlus).unwrap())
                .then(&cap_map(k, n, Orient::PlusMinus).unwrap().tensor(&id_up))
                .unwrap();
            assert_eq!(z3, id_up);
            // (id ⊗ cap+-) ∘ (cup-+ ⊗ id) on k⁻
            let z4 = cup_map(k, n, Orient::MinusPlus)
                .unwrap()
                .tensor(&id_down)
                .then(&id_down.tensor(&cap_map(k, n, Orient::PlusMinus).unwrap()))
                .unwrap();
            assert_eq!(z4, id_down);
        }
    }
}

#[test]
fn split_is_coassociative_and_merge_associative() {
    for n in 2..=5 {
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    let ia = LinearMap::identity(SpaceObject::up(n, &[a]));
                    let ic = LinearMap::identity(SpaceObject::up(n, &[c]));
                    let left = merge_map(a, b, n)
                        .unwrap()
                        .tensor(&ic)
                        .then(&merge_map(a + b, c, n).unwrap())
                        .unwrap();
                    let right = ia
                        .tensor(&merge_map(b, c, n).unwrap())
                        .then(&merge_map(a, b + c, n).unwrap())
                        .unwrap();
                    assert_eq!(left, right);
                    let left = split_map(a + b, c, n)
                        .unwrap()
                        .then(&split_map(a, b, n).unwrap().tensor(&ic))
                        .unwrap();
                    let right = split_map(a, b + c, n)
                        .unwrap()
                        .then(&ia.tensor(&split_map(b, c, n).unwrap()))
                        .unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn sink_then_source_tag_cancels() {
    for n in 2..=5 {
        for k in 0..=n {
            let id = LinearMap::identity(SpaceObject::up(n, &[k]));
            let there = tag_map(k, n, Side::Left)
                .unwrap()
                .then(&tag_in_map(n - k, n, Side::Right).unwrap())
                .unwrap();
            assert_eq!(there, id);
            let mirrored = tag_map(k, n, Side::Right)
                .unwrap()
                .then(&tag_in_map(n - k, n, Side::Left).unwrap())
                .unwrap();
            assert_eq!(mirrored, id);
        }
    }
}
