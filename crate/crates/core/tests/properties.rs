use proptest::prelude::*;

use gpq_core::chartab::{induce, inner_product, irreducible_table, restrict};
use gpq_core::gpq::{census_table, setup, verify_theorem};
use gpq_core::groups::{all_subgroups, construct_group, GroupRef};
use gpq_core::oliver::{exhaustive_gap_search, feasibility_problem, solve};
use gpq_core::Settings;

const POOL: &[&str] = &[
    "cyclic:12",
    "dihedral:6",
    "frobenius:7,3",
    "product:cyclic:3xdihedral:3",
    "product:cyclic:2xfrobenius:7,3",
    "semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3",
];

fn group(spec: &str) -> GroupRef {
    construct_group(spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn frobenius_reciprocity(gi in 0..POOL.len(), hi in any::<usize>(), ci in any::<usize>(), pi in any::<usize>()) {
        let g = group(POOL[gi]);
        let subs = all_subgroups(&g, 1000).unwrap().subgroups();
        let h = &subs[hi % subs.len()];
        let tg = irreducible_table(&g, 1000).unwrap();
        let th = irreducible_table(&h.as_group(), 1000).unwrap();
        let chi = tg.character(ci % tg.len());
        let psi = th.character(pi % th.len());
        let lhs = inner_product(&induce(&psi, h).unwrap(), &chi).unwrap();
        let rhs = inner_product(&psi, &restrict(&chi, h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_law_is_associative(gi in 0..POOL.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let g = group(POOL[gi]);
        let n = g.order() as u32;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
    }
}

#[test]
fn lp_and_exhaustive_search_agree_on_the_pool() {
    let s = Settings::default();
    for spec in POOL {
        let g = group(spec);
        let problem = feasibility_problem(&g, &s).unwrap();
        let verdict = solve(&g, &problem).unwrap();
        let brute = exhaustive_gap_search(&problem, 3);
        assert_eq!(verdict.feasible, brute.is_some(), "{spec}");
        if let Some(m) = brute {
            for row in &problem.rows {
                let total: i64 = row.coefficients.iter().zip(&m).map(|(a, x)| a * x).sum();
                assert!(total > 0);
            }
        }
    }
}

#[test]
fn trivial_prime_power_toggle_changes_row_count() {
    let g = group("dihedral:3");
    let with = feasibility_problem(&g, &Settings::default()).unwrap();
    let without = feasibility_problem(
        &g,
        &Settings {
            include_trivial_prime_power: false,
            ..Settings::default()
        },
    )
    .unwrap();
    assert!(with.rows.len() > without.rows.len());
}

#[test]
fn census_holds_for_thirteen_three() {
    let ctx = setup(13, 3).unwrap();
    let c = census_table(&ctx).unwrap();
    assert!(c.matches);
    let sizes: u64 = c.rows.iter().map(|r| r.class_size * r.observed_classes).sum();
    assert_eq!(sizes, 234);
}

#[test]
fn exhaustive_witness_scan_covers_every_pair() {
    let ctx = setup(13, 3).unwrap();
    let s = Settings {
        exhaustive_witness_scan: true,
        ..Settings::default()
    };
    let report = verify_theorem(&ctx, &s).unwrap();
    assert!(report.summary.all_passed);
    let wp = report.checks.iter().find(|c| c.id == "witness-pair").unwrap();
    // (q - 1) * r = 2 * 4
    assert_eq!(wp.witnesses["pairs"].as_array().unwrap().len(), 8);
}
