//! The acceptance suite: ten criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed;
//! the process exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::kauffman::{bracket, Poly};
use webcalc_core::braiding::{
    braid_invariant, check_braid_axioms, check_eigenvalues, check_hexagons, check_single_sum,
    crossing_web, lusztig_t, BraidCheck, Closure, ColoredBraid, CrossingSign,
};
use webcalc_core::exterior::{
    cap_map, cup_map, ell, generator_map, merge_map, split_map, tag_in_map, tag_map, Gen, Subset,
};
use webcalc_core::functor::{eval_closed, eval_lincomb};
use webcalc_core::harness::{fuzz_ladderize, howe_rank, relcheck, RelcheckOptions, Status};
use webcalc_core::qgroup::{
    check_instance, check_ladder_instance, ladder_relation_instances, phi_matrix,
    u_relation_instances, word_matrix, GlWeight, LadderRelation, Letter, UGen, URelation, UWord,
};
use webcalc_core::web::{Cell, WebIR};
use webcalc_core::{quantum_binomial, LinearMap, Orient, RootOrder, Scalar, Side, SpaceObject};

const Q: RootOrder = RootOrder::ONE;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn loop_value() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=6 {
        for k in 0..=n {
            let expected = quantum_binomial(n as i64, k as i64, Q);
            for o in [Orient::MinusPlus, Orient::PlusMinus] {
                let w = WebIR::new(
                    SpaceObject::empty(n),
                    vec![vec![Cell::Cup(k, o)], vec![Cell::Cap(k, o)]],
                );
                let v = eval_closed(&w).map_err(|e| e.to_string())?;
                ensure(v == expected, || {
                    format!(
                        "n={n} k={k} {o:?}: {} vs {}",
                        v.render(Q),
                        expected.render(Q)
                    )
                })?;
                count += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{count} loops, n = 2..6"))
}

fn relation_suite() -> Outcome {
    let mut total = 0;
    for n in 2..=4 {
        let recs = relcheck(&RelcheckOptions::new(n, n)).map_err(|e| e.to_string())?;
        if let Some(r) = recs.iter().find(|r| r.status == Status::Fail) {
            return Err(format!(
                "{} {} n={n} {} [{}]: {:?}",
                r.relation,
                r.name,
                r.params,
                r.variant.name(),
                r.witness
            ));
        }
        total += recs.len();
    }
    Ok(format!(
        "{total} checks over 11 relations and 4 variants, n = 2..4"
    ))
}

fn binomial_identity() -> Outcome {
    let mut count = 0;
    for n in 1..=8 {
        for k in 0..=n {
            let sum: Scalar = Subset::all_of_size(n, k)
                .into_iter()
                .map(|s| Scalar::q_pow(2 * ell(s, s.complement(n)) as i64, Q))
                .sum();
            let lhs = quantum_binomial(n as i64, k as i64, Q);
            let rhs = Scalar::q_pow(-((k * (n - k)) as i64), Q) * sum;
            ensure(lhs == rhs, || format!("n={n} k={k}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (n, k), n = 1..8"))
}

fn generating_maps(n: usize) -> Vec<(String, LinearMap)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for l in 0..=n - k {
            out.push((format!("merge({k},{l})"), merge_map(k, l, n).unwrap()));
            out.push((format!("split({k},{l})"), split_map(k, l, n).unwrap()));
        }
        for side in [Side::Left, Side::Right] {
            out.push((
                format!("sink tag({k},{side:?})"),
                tag_map(k, n, side).unwrap(),
            ));
            out.push((
                format!("source tag({k},{side:?})"),
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

fn equivariance() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for (name, f) in generating_maps(n) {
            for g in [Gen::E, Gen::F, Gen::K] {
                for i in 1..n {
                    let gs = generator_map(g, i, &f.src).map_err(|e| e.to_string())?;
                    let gt = generator_map(g, i, &f.tgt).map_err(|e| e.to_string())?;
                    ensure(f.then(&gt).unwrap() == gs.then(&f).unwrap(), || {
                        format!("{name} and {g:?}_{i}, n={n}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} commutation checks, n = 2..4"))
}

fn ladder_and_u_relations() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for m in 2..=3 {
            for rel in URelation::ALL {
                for inst in u_relation_instances(rel, n, m) {
                    let ok = check_instance(&inst, n).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("{} {} n={n}", inst.relation, inst.params))?;
                    count += 1;
                }
            }
        }
    }
    for n in 2..=3 {
        for rel in LadderRelation::ALL {
            for inst in ladder_relation_instances(rel, n) {
                for mirrored in [false, true] {
                    let ok = check_ladder_instance(&inst, mirrored).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("{} {} n={n}", inst.relation, inst.params))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!(
        "{count} instances of the 5 algebra and 5 ladder relations"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut letters = 0;
    for n in 2..=3 {
        for m in 2..=3 {
            for k in GlWeight::all_bounded(n, m) {
                for i in 1..m {
                    for gen in [UGen::E, UGen::F] {
                        for r in 1..=n {
                            let w = UWord::new(k.clone(), vec![Letter::new(gen, i, r)]);
                            if !w.target().is_bounded(n) {
                                continue;
                            }
                            let a = word_matrix(&w, n).map_err(|e| e.to_string())?;
                            let b = phi_matrix(&w, n).map_err(|e| e.to_string())?;
                            ensure(a == b, || format!("{w} at n={n}"))?;
                            letters += 1;
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut words = 0;
    while words < 200 {
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
        let a = word_matrix(&w, n).map_err(|e| e.to_string())?;
        let b = phi_matrix(&w, n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{w} at n={n}"))?;
        words += 1;
    }
    Ok(format!("{letters} single letters, {words} random words"))
}

fn laddering() -> Outcome {
    let r = fuzz_ladderize(&[2, 3], 500, 8, 0);
    if let Some(f) = r.failures.first() {
        return Err(format!("seed {} n={}: {}", f.seed, f.n, f.reason));
    }
    ensure(r.equal == 500, || format!("{} of 500 equal", r.equal))?;
    Ok(format!(
        "500 random webs equal, {} carry sign -1",
        r.negative
    ))
}

fn all_pass(checks: Vec<BraidCheck>) -> Result<usize, String> {
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(format!("{} {}", c.check, c.params)),
        None => Ok(checks.len()),
    }
}

fn braiding() -> Outcome {
    let err = |e: webcalc_core::BraidError| e.to_string();
    let mut sums = 0;
    let mut axioms = 0;
    for n in 2..=3 {
        for m in 2..=3 {
            sums += all_pass(check_single_sum(n, m).map_err(err)?)?;
        }
        axioms += all_pass(check_braid_axioms(n, 3).map_err(err)?)?;
        axioms += all_pass(check_hexagons(n).map_err(err)?)?;
    }
    let mut eig = 0;
    for n in 2..=4 {
        eig += all_pass(check_eigenvalues(n).map_err(err)?)?;
    }
    let mut webs = 0;
    for n in 2..=4 {
        for k in 1..n {
            for l in 1..n {
                let c = crossing_web(k, l, n, CrossingSign::Positive).map_err(err)?;
                let a = eval_lincomb(&c).map_err(|e| e.to_string())?;
                let b =
                    lusztig_t(1, &GlWeight::from_labels(&[k, l]), n).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("crossing ({k},{l}) n={n}"))?;
                webs += 1;
            }
        }
    }
    Ok(format!(
        "(a) {sums} weights, (b) {eig} eigenvalue checks, (c) {axioms} braid/naturality/hexagon checks, (d) {webs} crossings"
    ))
}

fn as_poly(s: &Scalar) -> Poly {
    s.terms().map(|(e, c)| (e, c.to_i64().unwrap())).collect()
}

fn knot_invariants() -> Outcome {
    let err = |e: webcalc_core::BraidError| e.to_string();
    for n in 2..=4 {
        let dim = |k: usize| quantum_binomial(n as i64, k as i64, Q).embed(n as u32);
        for k in 1..n {
            let v = braid_invariant(&ColoredBraid::new(vec![k], vec![], Closure::Trace), n)
                .map_err(err)?;
            ensure(v == dim(k), || format!("unknot n={n} k={k}"))?;
        }
        // one component: the plat closure joins the two strands into a single loop
        let b = ColoredBraid::new(vec![1, n - 1], vec![(1, true), (1, false)], Closure::Plat);
        let v = braid_invariant(&b, n).map_err(err)?;
        ensure(v == dim(1), || format!("plat closure of s1 s1^-1, n={n}"))?;
        // two components under the trace closure
        let b = ColoredBraid::new(vec![1, 1], vec![(1, true), (1, false)], Closure::Trace);
        let v = braid_invariant(&b, n).map_err(err)?;
        ensure(v == &dim(1) * &dim(1), || {
            format!("trace closure of s1 s1^-1, n={n}")
        })?;
    }
    // n = 2, color 1, A = u: ours = (-1)^strands <D>
    let word = ColoredBraid::parse_word("s1 s1 s1").map_err(err)?;
    let ours = braid_invariant(
        &ColoredBraid::new(vec![1, 1], word.clone(), Closure::Trace),
        2,
    )
    .map_err(err)?;
    let oracle = bracket(2, &word, false);
    ensure(as_poly(&ours) == oracle, || {
        format!("trefoil {} vs {oracle:?}", ours.render(RootOrder::new(2)))
    })?;
    Ok(format!(
        "trefoil = {} (N=2)",
        ours.render(RootOrder::new(2))
    ))
}

fn howe_fullness() -> Outcome {
    let mut count = 0;
    for n in 2..=3 {
        for total in 0..=4 {
            let r = howe_rank(n, 2, total).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("n={n} m=2 K={total}: {:?}", r.points))?;
            count += 1;
        }
    }
    Ok(format!("{count} grids (n, 2, K) at u = 7/5 and 13/9"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("loop value", loop_value),
        ("relation suite", relation_suite),
        ("binomial identity", binomial_identity),
        ("equivariance", equivariance),
        ("ladder and algebra relations", ladder_and_u_relations),
        ("oracle equivalence", oracle_equivalence),
        ("laddering", laddering),
        ("braiding", braiding),
        ("knot invariants", knot_invariants),
        ("skew Howe fullness", howe_fullness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
