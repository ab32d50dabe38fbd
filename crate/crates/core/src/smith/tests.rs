use super::*;
use crate::chartab::fixed_dims;
use crate::groups::{construct_group, normal_subgroups};

fn n63(g: &GroupRef) -> Subgroup {
    Subgroup::new(g, (0..63).collect()).unwrap()
}

fn c21(g: &GroupRef) -> Subgroup {
    normal_subgroups(g)
        .into_iter()
        .find(|h| h.order() == 21 && h.as_group().is_abelian())
        .unwrap()
}

#[test]
fn p_matched_basics() {
    let d = construct_group("dihedral:21").unwrap();
    let t = irreducible_table(&d, 1000).unwrap();
    let trivial = t.character(0);
    assert!(p_matched(&trivial, &trivial).unwrap());
    // the sign character is -1 on reflections
    let sign = t.character(1);
    assert_eq!(sign.degree_int(), 1);
    assert!(!p_matched(&trivial, &sign).unwrap());
}

#[test]
fn weak_gap_basics() {
    let s = Settings::default();
    let g = construct_group("gpq:7,3").unwrap();
    assert!(weak_gap_check(&ClassFunction::zero(&g), &s).unwrap().holds);
    let v = weak_gap_check(&ClassFunction::trivial(&g), &s).unwrap();
    assert!(!v.holds);
    assert!(v.violation.is_some());
}

#[test]
fn degree_six_reals_on_n63() {
    let s = Settings::default();
    let g = construct_group("gpq:7,3").unwrap();
    let h = n63(&g).as_group();
    let t = irreducible_table(&h, 1000).unwrap();
    let real = real_irreducibles(&t);
    let six: Vec<ClassFunction> = real
        .iter()
        .filter(|r| r.character.degree_int() == 6)
        .map(|r| r.character.clone())
        .collect();
    assert_eq!(six.len(), 3);
    let n7 = normal_subgroups(&h).into_iter().find(|k| k.order() == 7).unwrap();
    assert!(fixed_dims(&six, &n7).unwrap().iter().all(|&d| d == 0));
    let center = normal_subgroups(&h).into_iter().find(|k| k.order() == 3).unwrap();
    let dims = fixed_dims(&six, &center).unwrap();
    // exactly one of them is trivial on the central C_3
    let free: Vec<&ClassFunction> = six.iter().zip(&dims).filter(|(_, &d)| d == 0).map(|(c, _)| c).collect();
    assert_eq!(free.len(), 2);
    let verdict = po_lw_witness_check(free[0], free[1], &s).unwrap();
    assert!(verdict.holds(), "{verdict:?}");
    assert!(verdict.distinct);
    let inflated = six.iter().zip(&dims).find(|(_, &d)| d > 0).unwrap().0;
    assert!(!weak_gap_check(inflated, &s).unwrap().holds);
}

#[test]
fn po_ranks() {
    let s = Settings::default();
    let g = construct_group("gpq:7,3").unwrap();
    let po = po_basis(&g, &s).unwrap();
    assert_eq!(po.rank, 3);
    let cd = g.classes();
    for b in &po.basis {
        for k in 0..cd.len() {
            if is_prime_power(cd.element_order(k) as u64) {
                assert!(b.character.value(k).is_zero());
            }
        }
        let u = b.positive_part(&po.real).unwrap();
        let v = b.negative_part(&po.real).unwrap();
        assert!(p_matched(&u, &v).unwrap());
        assert_eq!(u.sub(&v).unwrap(), b.character);
    }
    assert_eq!(po_basis(&construct_group("cyclic:8").unwrap(), &s).unwrap().rank, 0);
    assert_eq!(po_basis(&n63(&g).as_group(), &s).unwrap().rank, 2);
    assert_eq!(po_basis(&construct_group("cyclic:15").unwrap(), &s).unwrap().rank, 4);
}

#[test]
fn induction_examples() {
    let s = Settings::default();
    let g = construct_group("gpq:7,3").unwrap();
    let n = n63(&g);
    assert!(induction_mono_check(&n).holds);
    assert_eq!(induction_rank(&n, &s).unwrap(), InductionRank { r: 2, s: 2, t: 2 });
    let whole = Subgroup::whole(&g);
    assert!(induction_mono_check(&whole).holds);
    assert_eq!(induction_rank(&whole, &s).unwrap(), InductionRank { r: 3, s: 3, t: 3 });
    let c = c21(&g);
    let mono = induction_mono_check(&c);
    assert!(!mono.holds);
    let rank = induction_rank(&c, &s).unwrap();
    assert_eq!((rank.s, rank.t), (2, 6));
    assert!(rank.r <= 2);
}

#[test]
fn order_21_real_class_fusion() {
    // (h)_G ∩ <a> has 6 elements for h of order 21, while (h)^±_<a> has 2
    let g = construct_group("gpq:7,3").unwrap();
    let c = c21(&g);
    let h = *c.elements().iter().find(|&&x| g.element_order(x) == 21).unwrap();
    let cd = g.classes();
    let meet = cd
        .class(cd.class_of(h))
        .members
        .iter()
        .filter(|&&y| c.contains(y))
        .count();
    assert_eq!(meet, 6);
}
