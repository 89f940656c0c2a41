use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use webcalc_core::qgroup::{
    check_instance, check_ladder_instance, ladder_relation_instances, phi_matrix,
    u_relation_instances, word_matrix, GlWeight, LadderRelation, Letter, UGen, URelation, UWord,
};

fn single_letters(n: usize, m: usize) -> Vec<UWord> {
    let mut out = Vec::new();
    for k in GlWeight::all_bounded(n, m) {
        for i in 1..m {
            for gen in [UGen::E, UGen::F] {
                for r in 1..=n {
                    let w = UWord::new(k.clone(), vec![Letter::new(gen, i, r)]);
                    if w.target().is_bounded(n) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn single_letters_match_the_oracle() {
    for n in 2..=3 {
        for m in 2..=3 {
            for w in single_letters(n, m) {
                assert_eq!(
                    word_matrix(&w, n).unwrap(),
                    phi_matrix(&w, n).unwrap(),
                    "{w} at n={n}"
                );
            }
        }
    }
}

#[test]
fn random_words_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(2..=3);
        let k = GlWeight::new((0..m).map(|_| rng.gen_range(0..=n as i64)).collect());
        let len = rng.gen_range(0..=4);
        let letters = (0..len)
            .map(|_| {
                let gen = if rng.gen_bool(0.5) { UGen::E } else { UGen::F };
                Letter::new(gen, rng.gen_range(1..m), rng.gen_range(1..=2))
            })
            .collect();
        let w = UWord::new(k, letters);
        if !w.target().is_bounded(n) {
            continue;
        }
        assert_eq!(
            word_matrix(&w, n).unwrap(),
            phi_matrix(&w, n).unwrap(),
            "{w} at n={n}"
        );
        checked += 1;
    }
}

#[test]
fn u_relations_hold() {
    for rel in URelation::ALL {
        for n in 1..=3 {
            for m in 2..=3 {
                for inst in u_relation_instances(rel, n, m) {
                    assert!(
                        check_instance(&inst, n).unwrap(),
                        "{} {} n={n}",
                        inst.relation,
                        inst.params
                    );
                }
            }
        }
    }
}

#[test]
fn distant_relation_with_four_uprights() {
    let insts = u_relation_instances(URelation::Distant, 2, 4);
    assert!(!insts.is_empty());
    for inst in insts {
        assert!(check_instance(&inst, 2).unwrap(), "{}", inst.params);
    }
}

#[test]
fn ladder_relations_hold_with_mirrors() {
    for rel in LadderRelation::ALL {
        for n in 2..=3 {
            for inst in ladder_relation_instances(rel, n) {
                for mirrored in [false, true] {
                    assert!(
                        check_ladder_instance(&inst, mirrored).unwrap(),
                        "{} {} n={n} mirrored={mirrored}",
                        inst.relation,
                        inst.params
                    );
                }
            }
        }
    }
}
