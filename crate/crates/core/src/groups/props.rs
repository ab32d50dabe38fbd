use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{factorize, is_prime_power, prime_divisors};
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, normal_subgroups, FiniteGroup, GroupRef, Homomorphism, Subgroup};

/// A coset group `G/N` with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupRef,
    pub projection: Homomorphism,
    /// Smallest element of each coset, indexed by quotient element.
    pub coset_representatives: Vec<u32>,
}

/// `G/N` for a normal subgroup `N`. Cosets are numbered by their smallest element.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<Quotient> {
    if !crate::groups::same_group(g, n.parent()) {
        return Err(Error::GroupMismatch("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &h in n.elements() {
            coset_of[g.mul(x, h) as usize] = id;
        }
    }
    let m = reps.len();
    let mut mul = vec![0u32; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * m + j] = coset_of[g.mul(a, b) as usize];
        }
    }
    let labels = reps
        .iter()
        .map(|&r| {
            if r == 0 {
                "1".to_string()
            } else {
                format!("{}N", g.label(r))
            }
        })
        .collect();
    let mut gens: Vec<u32> = g
        .generators()
        .iter()
        .map(|&x| coset_of[x as usize])
        .filter(|&c| c != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    let name = format!("{}/[order {}]", g.name(), n.order());
    let qg = Arc::new(FiniteGroup::from_table(name, m, mul, labels, gens)?);
    let projection = Homomorphism::new(g, &qg, coset_of)?;
    Ok(Quotient {
        group: qg,
        projection,
        coset_representatives: reps,
    })
}

fn commutator_closure(g: &FiniteGroup, elements: &[u32]) -> Vec<u32> {
    let mut comms = Vec::new();
    let mut seen = vec![false; g.order()];
    for &a in elements {
        for &b in elements {
            let c = g.commutator(a, b);
            if !seen[c as usize] {
                seen[c as usize] = true;
                comms.push(c);
            }
        }
    }
    g.closure(&comms)
}

/// The commutator subgroup `G'`.
pub fn derived_subgroup(g: &GroupRef) -> Subgroup {
    let all: Vec<u32> = (0..g.order() as u32).collect();
    Subgroup::from_closed(g, commutator_closure(g, &all))
}

/// Derived series `G = G^(0) > G^(1) > ...` until it stabilizes.
pub fn derived_series(g: &GroupRef) -> Vec<Subgroup> {
    let mut current: Vec<u32> = (0..g.order() as u32).collect();
    let mut out = vec![Subgroup::from_closed(g, current.clone())];
    loop {
        let next = commutator_closure(g, &current);
        if next.len() == current.len() {
            break;
        }
        out.push(Subgroup::from_closed(g, next.clone()));
        current = next;
    }
    out
}

pub fn is_solvable(g: &GroupRef) -> bool {
    derived_series(g).last().map(|s| s.order()) == Some(1)
}

/// Every Sylow subgroup is normal, i.e. for each prime the set of
/// elements of that prime's power order has exactly `|G|_p` members.
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    let n = g.order() as u64;
    factorize(n).into_iter().all(|(p, e)| {
        let sylow = p.pow(e);
        let count = g.element_orders().iter().filter(|&&o| sylow % o as u64 == 0).count() as u64;
        count == sylow
    })
}

/// Which residual to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualKind {
    /// `O^p(G)`: smallest normal subgroup with a `p`-group quotient.
    Prime(u64),
    /// `G^nil`: smallest normal subgroup with a nilpotent quotient.
    Nilpotent,
}

/// `O^p(G)`, generated by the elements of order prime to `p`.
pub fn p_residual(g: &GroupRef, p: u64) -> Subgroup {
    let gens: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| !(g.element_order(x) as u64).is_multiple_of(p))
        .collect();
    Subgroup::generated(g, &gens)
}

/// `G^nil`, the intersection of all normal subgroups with nilpotent quotient.
pub fn nilpotent_residual(g: &GroupRef) -> Subgroup {
    let mut current = Subgroup::whole(g);
    for n in normal_subgroups(g) {
        let q = quotient(g, &n).expect("normal subgroup");
        if is_nilpotent(&q.group) {
            current = current.intersection(&n);
        }
    }
    current
}

pub fn residual(g: &GroupRef, kind: ResidualKind) -> Subgroup {
    match kind {
        ResidualKind::Prime(p) => p_residual(g, p),
        ResidualKind::Nilpotent => nilpotent_residual(g),
    }
}

/// Subgroups containing `O^p(G)` for some prime `p` dividing `|G|`, plus `G`.
pub fn large_subgroups(g: &GroupRef, bound: usize) -> Result<Vec<Subgroup>> {
    let residuals: Vec<Subgroup> = prime_divisors(g.order() as u64)
        .into_iter()
        .map(|p| p_residual(g, p))
        .collect();
    let lattice = all_subgroups(g, bound)?;
    Ok(lattice
        .iter()
        .filter(|h| h.is_whole() || residuals.iter().any(|r| r.is_subset_of(h)))
        .collect())
}

/// A chain `P ⊴ H ⊴ G` with `P` and `G/H` of prime power order and `H/P` cyclic.
#[derive(Debug, Clone)]
pub struct OliverChain {
    pub p: Subgroup,
    pub h: Subgroup,
    /// An element of `H` whose image generates `H/P`.
    pub generator: u32,
}

/// Searches for a chain that prevents `G` from being an Oliver group.
/// Prime power orders include `1`.
pub fn oliver_chain(g: &GroupRef) -> Option<OliverChain> {
    for h in normal_subgroups(g) {
        if !is_prime_power(h.index() as u64) {
            continue;
        }
        let hg = h.as_group();
        for local_p in normal_subgroups(&hg) {
            if !is_prime_power(local_p.order() as u64) {
                continue;
            }
            let target = (h.order() / local_p.order()) as u32;
            let found = (0..hg.order() as u32).find(|&x| {
                // order of x P in H/P
                let mut k = 1;
                let mut y = x;
                while !local_p.contains(y) {
                    y = hg.mul(y, x);
                    k += 1;
                }
                k == target
            });
            if let Some(x) = found {
                return Some(OliverChain {
                    p: h.lift_subgroup(&local_p),
                    h: h.clone(),
                    generator: h.lift(&[x])[0],
                });
            }
        }
    }
    None
}

pub fn is_oliver(g: &GroupRef) -> bool {
    oliver_chain(g).is_none()
}

/// Elementary structural facts about a group.
#[derive(Debug, Clone, Serialize)]
pub struct GroupPredicates {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    /// Number of elements of each order.
    pub order_census: BTreeMap<u32, usize>,
}

impl GroupPredicates {
    pub fn has_element_of_order_divisible_by(&self, k: u32) -> bool {
        self.order_census.keys().any(|&o| o % k == 0)
    }
}

pub fn predicates(g: &GroupRef) -> GroupPredicates {
    let mut order_census = BTreeMap::new();
    for &o in g.element_orders() {
        *order_census.entry(o).or_insert(0) += 1;
    }
    GroupPredicates {
        is_solvable: is_solvable(g),
        is_nilpotent: is_nilpotent(g),
        order_census,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct_group, is_isomorphic};

    fn n63(g: &GroupRef) -> Subgroup {
        Subgroup::new(g, (0..126u32).filter(|&x| x < 63).collect()).unwrap()
    }

    #[test]
    fn quotients_of_gpq() {
        let g = construct_group("gpq:7,3").unwrap();
        let normals = normal_subgroups(&g);
        let n7 = normals.iter().find(|h| h.order() == 7).unwrap();
        let q = quotient(&g, n7).unwrap();
        let c3d6 = construct_group("product:cyclic:3xdihedral:3").unwrap();
        assert!(is_isomorphic(&q.group, &c3d6).is_some());
        assert_eq!(q.projection.kernel(), *n7);
        let cyclic21 = normals
            .iter()
            .find(|h| h.order() == 21 && h.as_group().is_abelian())
            .unwrap();
        let q = quotient(&g, cyclic21).unwrap();
        assert!(is_isomorphic(&q.group, &construct_group("cyclic:6").unwrap()).is_some());
        let q = quotient(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn quotient_functoriality() {
        let g = construct_group("dihedral:6").unwrap();
        for n in normal_subgroups(&g) {
            let q = quotient(&g, &n).unwrap();
            for x in 0..12 {
                for y in 0..12 {
                    assert_eq!(
                        q.projection.apply(g.mul(x, y)),
                        q.group.mul(q.projection.apply(x), q.projection.apply(y))
                    );
                }
            }
        }
        let s = Subgroup::generated(&g, &[6]);
        assert!(!s.is_normal());
        assert_eq!(quotient(&g, &s).err(), Some(Error::NotNormal));
    }

    #[test]
    fn residuals_of_n63() {
        let g = construct_group("gpq:7,3").unwrap();
        let n = n63(&g);
        let ng = n.as_group();
        assert_eq!(p_residual(&ng, 3).order(), 7);
        assert_eq!(p_residual(&ng, 7).order(), 63);
        let gnil = nilpotent_residual(&g);
        assert_eq!(gnil.order(), 21);
        assert!(gnil.as_group().is_abelian());
    }

    #[test]
    fn residual_minimality() {
        for spec in ["gpq:7,3", "dihedral:6", "frobenius:7,3", "cyclic:12"] {
            let g = construct_group(spec).unwrap();
            for p in prime_divisors(g.order() as u64) {
                let r = p_residual(&g, p);
                assert!(r.is_normal());
                for n in normal_subgroups(&g) {
                    let idx = n.index() as u64;
                    let p_quot = factorize(idx).iter().all(|&(pp, _)| pp == p);
                    if p_quot {
                        assert!(r.is_subset_of(&n), "{spec} p={p}");
                    }
                }
            }
            let gnil = nilpotent_residual(&g);
            assert!(is_nilpotent(&quotient(&g, &gnil).unwrap().group));
        }
    }

    #[test]
    fn large_subgroups_gpq() {
        let g = construct_group("gpq:7,3").unwrap();
        let orders: Vec<usize> = large_subgroups(&g, 1000).unwrap().iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![42, 63, 126]);
        let trivial = construct_group("cyclic:1").unwrap();
        assert_eq!(large_subgroups(&trivial, 1000).unwrap().len(), 1);
    }

    #[test]
    fn oliver_examples() {
        let g = construct_group("gpq:7,3").unwrap();
        assert!(is_oliver(&g));
        for n in 1..=20 {
            let c = construct_group(&format!("cyclic:{n}")).unwrap();
            assert!(!is_oliver(&c));
        }
        let d = construct_group("dihedral:21").unwrap();
        let chain = oliver_chain(&d).unwrap();
        assert_eq!(chain.h.index(), 2);
        let a4 = construct_group("semidirect:product:cyclic:2xcyclic:2,cyclic:3,auto:1;3").unwrap();
        assert!(!is_oliver(&a4));
    }

    #[test]
    fn predicate_examples() {
        let g = construct_group("gpq:7,3").unwrap();
        let pr = predicates(&g);
        assert!(pr.is_solvable && !pr.is_nilpotent);
        assert!(!pr.has_element_of_order_divisible_by(8));
        assert!(predicates(&construct_group("cyclic:8").unwrap()).has_element_of_order_divisible_by(8));
        let f = predicates(&construct_group("frobenius:7,3").unwrap());
        assert!(f.is_solvable && !f.is_nilpotent);
        assert!(is_nilpotent(&construct_group("product:cyclic:4xdihedral:2").unwrap()));
    }
}
