//! Acceptance run: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use gpq_core::chartab::{
    fixed_dim, frobenius_schur, induce, inner_product, irreducible_table, restrict, ClassFunction,
};
use gpq_core::gpq::{explicit_characters, setup, table_agreement, verify_theorem, GpqContext, Q_TWO_RATIONALE};
use gpq_core::groups::{
    all_subgroups, construct_group, is_isomorphic, is_nilpotent, is_oliver, large_subgroups, normal_subgroups,
    quotient, GroupRef, Subgroup,
};
use gpq_core::oliver::{
    exhaustive_gap_search, feasibility_problem, gap_feasibility, laitinen_condition_check, solve,
    sumi_not_gap_criterion,
};
use gpq_core::smith::{induction_mono_check, induction_rank, p_matched, weak_gap_check};
use gpq_core::Settings;

fn group(spec: &str) -> GroupRef {
    construct_group(spec).unwrap()
}

fn sorted_orders(subs: &[Subgroup]) -> Vec<usize> {
    let mut v: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    v.sort_unstable();
    v
}

fn verify_passes(p: u64, q: u64, prim: usize, limit: Duration) -> GpqContext {
    let start = Instant::now();
    let ctx = setup(p, q).unwrap();
    let report = verify_theorem(&ctx, &Settings::default()).unwrap();
    let took = start.elapsed();
    assert!(report.summary.all_passed, "failed: {:?}", report.failure());
    assert_eq!(report.summary.prim, Some(prim));
    assert!(took < limit, "verify {p} {q} took {took:?}");
    ctx
}

fn criterion_1() {
    let ctx = verify_passes(7, 3, 3, Duration::from_secs(60));
    let g = &ctx.group;
    assert_eq!(sorted_orders(&normal_subgroups(g)), vec![1, 3, 7, 21, 21, 42, 63, 126]);
    let s = &ctx.subgroups;
    let iso = |n: &Subgroup, spec: &str| is_isomorphic(&quotient(g, n).unwrap().group, &group(spec)).is_some();
    assert!(iso(&s.n1_pq, "cyclic:6"));
    assert!(iso(&s.n2_pq, "dihedral:3"));
    assert!(iso(&s.n_p, "product:cyclic:3xdihedral:3"));
    let q42 = quotient(g, &s.n_q).unwrap().group;
    assert_eq!(q42.order(), 42);
    assert!(!is_nilpotent(&q42));
    assert_eq!(sorted_orders(&large_subgroups(g, 1000).unwrap()), vec![42, 63, 126]);
}

fn criterion_2() {
    let ctx = setup(7, 3).unwrap();
    let s = Settings::default();
    let whole = Subgroup::whole(&ctx.group);
    for h in [&ctx.subgroups.n1_pq, &ctx.subgroups.n_2pq, &ctx.subgroups.n_pq2, &whole] {
        let v = gap_feasibility(&h.as_group(), &s).unwrap();
        assert!(!v.feasible, "order {}", h.order());
        assert!(v.certificate.is_some());
    }
    let c = sumi_not_gap_criterion(&ctx.group, &s).unwrap();
    assert!(c.applies);
    let w = c.witness.unwrap();
    assert_eq!(w.element, ctx.element(1, 0, 0));
    assert_eq!(w.label, "b");
    assert_eq!(w.centralizer_order, 6);
}

fn criterion_3() {
    let ctx = setup(7, 3).unwrap();
    let s = Settings::default();
    let ch = explicit_characters(&ctx).unwrap();
    let w = ch.witness_pair(1, 1).unwrap();
    assert!(p_matched(&w.u, &w.v).unwrap());
    assert_ne!(w.u, w.v);
    assert!(weak_gap_check(&w.u, &s).unwrap().holds);
    assert!(weak_gap_check(&w.v, &s).unwrap().holds);
    let ng = ch.n.as_group();
    for l in large_subgroups(&ng, 1000).unwrap() {
        assert_eq!(fixed_dim(&w.u, &l).unwrap(), 0);
        assert_eq!(fixed_dim(&w.v, &l).unwrap(), 0);
    }
    assert!(induction_mono_check(&ch.n).holds);
    assert_ne!(induce(&w.u, &ch.n).unwrap(), induce(&w.v, &ch.n).unwrap());
}

fn criterion_4() {
    verify_passes(13, 3, 5, Duration::from_secs(300));
    let ctx = verify_passes(11, 5, 6, Duration::from_secs(900));
    assert_eq!(ctx.group.order(), 550);
}

fn criterion_5() {
    for spec in ["frobenius:7,3", "frobenius:13,3"] {
        let t = irreducible_table(&group(spec), 1000).unwrap();
        let nonlinear: Vec<usize> = (0..t.len()).filter(|&i| t.degrees()[i] > 1).collect();
        assert!(!nonlinear.is_empty());
        for i in nonlinear {
            assert!(frobenius_schur(&t.character(i)).is_zero(), "{spec} row {i}");
            assert_eq!(t.indicator(i), 0);
        }
    }
    for (p, q) in [(7, 3), (13, 3)] {
        for chi in &explicit_characters(&setup(p, q).unwrap()).unwrap().chi {
            assert!(frobenius_schur(chi).is_zero());
        }
    }
}

/// Groups used by the other criteria, beyond the order-60 constructor set.
const SUITE: &[&str] = &[
    "gpq:7,3",
    "gpq:13,3",
    "gpq:11,5",
    "frobenius:7,3",
    "frobenius:13,3",
    "frobenius:11,5",
    "dihedral:3",
    "dihedral:15",
    "dihedral:21",
    "cyclic:8",
    "cyclic:30",
    "product:cyclic:3xdihedral:3",
    "product:cyclic:3xdihedral:5",
    "product:cyclic:2xfrobenius:7,3",
    "semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3",
];

fn criterion_6() {
    let ctx = setup(7, 3).unwrap();
    let ch = explicit_characters(&ctx).unwrap();
    let table = irreducible_table(&ch.n.as_group(), 1000).unwrap();
    assert!(table_agreement(&ch.n_irreducibles(), &table).unwrap().matches);
    let mut groups: Vec<GroupRef> = SUITE.iter().map(|s| group(s)).collect();
    groups.push(ch.n.as_group());
    groups.extend(ctx.subgroups.named().iter().map(|(_, h)| h.as_group()));
    groups.extend(constructor_set_up_to_60());
    for g in groups {
        let t = irreducible_table(&g, 1000).unwrap();
        let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sq, g.order() as i64, "{}", g.name());
        t.verify().unwrap();
    }
}

fn constructor_set_up_to_60() -> Vec<GroupRef> {
    let mut specs: Vec<String> = (1..=60).map(|n| format!("cyclic:{n}")).collect();
    specs.extend((2..=30).map(|n| format!("dihedral:{n}")));
    for (p, q) in [(7, 3), (5, 4), (13, 3), (11, 5), (19, 3)] {
        specs.push(format!("frobenius:{p},{q}"));
    }
    let small = [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:6",
        "dihedral:3",
        "dihedral:4",
        "dihedral:5",
    ];
    for a in small {
        for b in small {
            specs.push(format!("product:{a}x{b}"));
        }
    }
    for b in ["frobenius:7,3", "dihedral:6"] {
        specs.push(format!("product:cyclic:2x{b}"));
    }
    specs.push("semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3".into());
    specs.iter().map(|s| group(s)).filter(|g| g.order() <= 60).collect()
}

fn criterion_7() {
    let s = Settings::default();
    let groups = constructor_set_up_to_60();
    assert!(groups.len() > 100);
    let mut feasible = 0;
    for g in &groups {
        let problem = feasibility_problem(g, &s).unwrap();
        let lp = solve(g, &problem).unwrap().feasible;
        let brute = exhaustive_gap_search(&problem, 3);
        assert_eq!(lp, brute.is_some(), "{}", g.name());
        feasible += lp as usize;
    }
    assert!(feasible > 0, "the oracle comparison should see both verdicts");

    // injectivity by class intersections against the rank of the induction map
    let mut pairs = 0;
    let mut verdicts = [0usize; 2];
    for spec in [
        "gpq:7,3",
        "dihedral:15",
        "product:cyclic:3xdihedral:5",
        "product:cyclic:2xfrobenius:7,3",
    ] {
        let g = group(spec);
        for h in all_subgroups(&g, 1000).unwrap().orbit_representatives() {
            let rank = induction_rank(&h, &s).unwrap();
            if rank.t == 0 {
                continue;
            }
            let mono = induction_mono_check(&h).holds;
            assert_eq!(mono, rank.r == rank.t, "{spec}, subgroup of order {}", h.order());
            verdicts[mono as usize] += 1;
            pairs += 1;
        }
    }
    assert!(pairs >= 10, "{pairs} pairs");
    assert!(verdicts[0] > 0 && verdicts[1] > 0, "both verdicts occur: {verdicts:?}");

    // Frobenius reciprocity on pseudo-random pairs from a fixed-seed generator
    let pool: Vec<GroupRef> = [
        "gpq:7,3",
        "frobenius:13,3",
        "dihedral:15",
        "product:cyclic:3xdihedral:3",
        "cyclic:30",
    ]
    .iter()
    .map(|s| group(s))
    .collect();
    let lattices: Vec<Vec<Subgroup>> = pool
        .iter()
        .map(|g| all_subgroups(g, 1000).unwrap().subgroups())
        .collect();
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (0..pool.len(), 0usize..10_000, 0usize..10_000, 0usize..10_000);
    for _ in 0..100 {
        let (gi, hi, ci, pi) = strategy.new_tree(&mut runner).unwrap().current();
        let g = &pool[gi];
        let h = &lattices[gi][hi % lattices[gi].len()];
        let tg = irreducible_table(g, 1000).unwrap();
        let th = irreducible_table(&h.as_group(), 1000).unwrap();
        let chi: ClassFunction = tg.character(ci % tg.len());
        let psi: ClassFunction = th.character(pi % th.len());
        let lhs = inner_product(&induce(&psi, h).unwrap(), &chi).unwrap();
        let rhs = inner_product(&psi, &restrict(&chi, h).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{} subgroup of order {}", g.name(), h.order());
    }
}

fn criterion_8() {
    for n in 1..=60 {
        assert!(!is_oliver(&group(&format!("cyclic:{n}"))), "cyclic:{n}");
    }
    assert!(!is_oliver(&group("dihedral:21")));
    let e = setup(7, 2).unwrap_err().to_string();
    assert!(e.contains(Q_TWO_RATIONALE), "{e}");
    assert!(!laitinen_condition_check(&group("cyclic:8")).holds);
    assert!(laitinen_condition_check(&setup(7, 3).unwrap().group).holds);
}

fn main() {
    let criteria: [(&str, fn()); 8] = [
        (
            "verify 7 3: prim, normal subgroups, quotients, large subgroups",
            criterion_1,
        ),
        (
            "gap LP infeasible on N1_21, D_42, N_63, G_126; involution criterion with (b,1)",
            criterion_2,
        ),
        (
            "witness pair U = 2Re psi_11, V = 2Re psi_21 on N_63 and induction to G",
            criterion_3,
        ),
        ("verify 13 3 and verify 11 5 within their time limits", criterion_4),
        (
            "Frobenius-Schur indicator 0 on nonlinear irreducibles of F_7,3 and F_13,3",
            criterion_5,
        ),
        (
            "explicit characters of N_63 equal the computed table; orthonormality",
            criterion_6,
        ),
        (
            "oracle equivalence: LP vs exhaustive, mono vs rank, Frobenius reciprocity",
            criterion_7,
        ),
        ("negative controls", criterion_8),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        failed += !ok as usize;
        println!(
            "criterion {}: {} ({name}) [{:.2?}]",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
