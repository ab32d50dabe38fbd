use super::*;
use crate::chartab::fixed_dim;
use crate::groups::{construct_group, normal_subgroups, Subgroup};

fn group(spec: &str) -> GroupRef {
    construct_group(spec).unwrap()
}

fn settings() -> Settings {
    Settings::default()
}

#[test]
fn gap_lp_rejects_gpq_family_members() {
    let g = group("gpq:7,3");
    let v = gap_feasibility(&g, &settings()).unwrap();
    assert!(!v.feasible);
    assert!(v.certificate.is_some() && v.witness.is_none());
    let normals = normal_subgroups(&g);
    let cyclic21 = normals
        .iter()
        .find(|n| n.order() == 21 && n.as_group().is_abelian())
        .unwrap();
    let n42 = normals.iter().find(|n| n.order() == 42).unwrap();
    let n63 = normals.iter().find(|n| n.order() == 63).unwrap();
    for h in [cyclic21, n42, n63] {
        assert!(
            !gap_feasibility(&h.as_group(), &settings()).unwrap().feasible,
            "order {}",
            h.order()
        );
    }
    assert!(!gap_feasibility(&group("dihedral:21"), &settings()).unwrap().feasible);
}

#[test]
fn cyclic_two_is_not_gap() {
    // the trivial subgroup is large, so every variable is forced to zero and
    // the pair 1 < C_2 leaves 0 > 0
    let g = group("cyclic:2");
    let problem = feasibility_problem(&g, &settings()).unwrap();
    assert!(problem.variables.is_empty());
    assert_eq!(problem.rows.len(), 1);
    assert!(!solve(&g, &problem).unwrap().feasible);
}

#[test]
fn forced_zeros_follow_the_order_seven_subgroup() {
    let g = group("gpq:7,3");
    let n63 = Subgroup::new(&g, (0..63).collect()).unwrap().as_group();
    let problem = feasibility_problem(&n63, &settings()).unwrap();
    let n7 = normal_subgroups(&n63).into_iter().find(|n| n.order() == 7).unwrap();
    for (i, r) in problem.real.iter().enumerate() {
        if fixed_dim(&r.character, &n7).unwrap() > 0 {
            assert!(problem.forced_zero.contains(&i));
        }
    }
    // the three degree-6 real characters vanish on N_7 but not all on N_3 x N_7
    assert!(!problem.variables.is_empty());
}

#[test]
fn rows_are_kept_unpruned() {
    let g = group("dihedral:3");
    let problem = feasibility_problem(&g, &settings()).unwrap();
    // P ranges over 1, three C_2 and C_3; pairs P < H:
    // 1 < {three C_2, C_3, G} = 5, each C_2 < G = 3, C_3 < G = 1
    assert_eq!(problem.rows.len(), 9);
    let v = solve(&g, &problem).unwrap();
    assert!(v.distinct_constraints <= v.constraints);
    let mut without_trivial = settings();
    without_trivial.include_trivial_prime_power = false;
    assert_eq!(feasibility_problem(&g, &without_trivial).unwrap().rows.len(), 4);
}

#[test]
fn lp_matches_exhaustive_search_on_small_groups() {
    for spec in [
        "cyclic:1",
        "cyclic:6",
        "cyclic:15",
        "dihedral:3",
        "dihedral:5",
        "frobenius:7,3",
        "product:cyclic:2xfrobenius:7,3",
        "product:cyclic:2xcyclic:2",
        "semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3",
    ] {
        let g = group(spec);
        let problem = feasibility_problem(&g, &settings()).unwrap();
        let lp = solve(&g, &problem).unwrap().feasible;
        let brute = exhaustive_gap_search(&problem, 3).is_some();
        assert_eq!(lp, brute, "{spec}");
    }
}

#[test]
fn c2_times_frobenius_is_gap() {
    // free: triv x X, sign x X, sign x (lambda + conj lambda) with X = 2 Re chi_1;
    // the pairs force b > a > 0, c > 0, 6b + 2c > 6a and 6a + 6b > 2c
    let g = group("product:cyclic:2xfrobenius:7,3");
    let v = gap_feasibility(&g, &settings()).unwrap();
    assert!(v.feasible);
    assert_eq!(v.variables.len(), 3);
    let w = v.witness.unwrap();
    let problem = feasibility_problem(&g, &settings()).unwrap();
    for c in &problem.rows {
        let s: i64 = c.coefficients.iter().zip(&w.multiplicities).map(|(a, m)| a * m).sum();
        assert!(s > 0);
    }
}

#[test]
fn stated_sumi_hypotheses_admit_a_gap_group() {
    // every listed hypothesis holds for C_2 x F_21 (g = z central, O^2(G) = F_21,
    // 2 * 21 >= 42), yet the module above exists, so the hypotheses as listed
    // are not sufficient on their own
    let g = group("product:cyclic:2xfrobenius:7,3");
    let c = sumi_not_gap_criterion(&g, &settings()).unwrap();
    assert!(c.applies);
    assert_eq!(c.witness.unwrap().centralizer_order, 42);
    assert!(gap_feasibility(&g, &settings()).unwrap().feasible);
}

#[test]
fn sumi_criterion_on_gpq() {
    let g = group("gpq:7,3");
    let c = sumi_not_gap_criterion(&g, &settings()).unwrap();
    assert!(c.applies, "{:?}", c.hypotheses);
    let w = c.witness.unwrap();
    assert_eq!(w.label, "b");
    assert_eq!(w.element, 63);
    assert_eq!(w.centralizer_order, 6);
    assert_eq!(w.residual_order, 3);
    assert!(centralizer(&g, 63).as_group().is_abelian());
}

#[test]
fn sumi_criterion_negative_cases() {
    let c8 = sumi_not_gap_criterion(&group("cyclic:8"), &settings()).unwrap();
    assert!(!c8.applies);
    assert!(!c8.hypotheses[3].holds);
    let d42 = sumi_not_gap_criterion(&group("dihedral:21"), &settings()).unwrap();
    assert!(!d42.applies);
    assert!(!d42.hypotheses[2].holds);
}

#[test]
fn criterion_implies_lp_infeasible() {
    for spec in [
        "gpq:7,3",
        "gpq:13,3",
        "dihedral:15",
        "product:cyclic:3xdihedral:5",
        "dihedral:6",
        "cyclic:30",
    ] {
        let g = group(spec);
        let c = sumi_not_gap_criterion(&g, &settings()).unwrap();
        if c.applies {
            assert!(!gap_feasibility(&g, &settings()).unwrap().feasible, "{spec}");
        }
    }
}

#[test]
fn gnil_condition() {
    let g = group("gpq:7,3");
    let v = sumi_gnil_condition(&g, &settings()).unwrap();
    assert!(!v.holds);
    assert_eq!(v.residual_order, 21);
    assert!(v.pairs_checked > 0);
    // nilpotent groups have trivial residual, so a = b
    let c = sumi_gnil_condition(&group("cyclic:12"), &settings()).unwrap();
    assert!(!c.holds);
    assert_eq!(c.pairs_checked, 0);
}

#[test]
fn gnil_condition_through_conjugate_involutions() {
    // (w, z, beta) and (w, z, beta^3) share a coset of C_7 but are not real
    // conjugate; both have the central involution z
    let g = group("product:cyclic:6xfrobenius:7,3");
    let v = sumi_gnil_condition(&g, &settings()).unwrap();
    assert!(v.holds);
    assert!(matches!(v.witness.unwrap().bullet, GnilBullet::ConjugateInvolutions));
    assert!(!special_oliver_check(&g, &settings()).unwrap().holds);
}

#[test]
fn even_order_pairs_in_one_coset_are_conjugate() {
    let g = group("gpq:7,3");
    let nil = crate::groups::nilpotent_residual(&g);
    let cd = g.classes();
    for x in 0..126u32 {
        if !g.element_order(x).is_multiple_of(2) {
            continue;
        }
        for &y in nil.elements() {
            let z = g.mul(x, y);
            if g.element_order(z).is_multiple_of(2) {
                assert_eq!(cd.class_of(x), cd.class_of(z));
            }
        }
    }
}

#[test]
fn special_oliver() {
    let r = special_oliver_check(&group("gpq:7,3"), &settings()).unwrap();
    assert!(r.holds);
    assert!(r.conjuncts.iter().all(|c| c.holds));
    let odd = special_oliver_check(&group("frobenius:7,3"), &settings()).unwrap();
    assert!(!odd.holds);
    assert!(!odd.conjuncts[1].holds);
    let a4 = special_oliver_check(
        &group("semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3"),
        &settings(),
    )
    .unwrap();
    let oliver = a4.conjuncts.iter().find(|c| c.name == "oliver").unwrap();
    assert!(!oliver.holds);
    assert_eq!(oliver.evidence["h"]["order"], 4);
}

#[test]
fn no_odd_composite_cyclic_quotient() {
    for spec in ["gpq:7,3", "gpq:13,3"] {
        assert!(odd_composite_cyclic_quotient(&group(spec)).0.is_none());
    }
    let (n, _) = odd_composite_cyclic_quotient(&group("cyclic:15"));
    assert_eq!(n.unwrap().order(), 1);
}

#[test]
fn laitinen() {
    assert!(laitinen_condition_check(&group("gpq:7,3")).holds);
    assert!(!laitinen_condition_check(&group("cyclic:8")).holds);
    assert!(!laitinen_condition_check(&group("cyclic:24")).holds);
    assert!(laitinen_condition_check(&group("cyclic:4")).holds);
}

#[test]
fn verdicts_serialize() {
    let v = gap_feasibility(&group("cyclic:2"), &settings()).unwrap();
    let json = serde_json::to_string(&v).unwrap();
    assert!(json.contains(r#""feasible":false"#));
    assert!(json.contains(r#""weight":"1/1""#), "{json}");
}
