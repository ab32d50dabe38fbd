use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{is_prime_power, prime_divisors};
use crate::config::{CompositeOrderMode, Settings};
use crate::error::Result;
use crate::groups::{
    all_subgroups, large_subgroups, nilpotent_residual, p_residual, GroupRef, Subgroup, SubgroupSummary,
};

use super::gap::gap_feasibility;

/// One hypothesis of a criterion with the evidence behind its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionWitness {
    pub element: u32,
    pub label: String,
    pub centralizer_order: usize,
    /// `|O^2(C_G(g))|`.
    pub residual_order: usize,
}

/// Sufficient condition for `G` not to be a gap group: no large subgroup of
/// prime power order, `[G : O^2(G)] = 2`, a unique odd prime `p0` with
/// `O^{p0}(G) != G`, no element of order divisible by 4, and an involution
/// `g` outside `O^2(G)` with `2 |O^2(C_G(g))| >= |C_G(g)|`.
#[derive(Debug, Clone, Serialize)]
pub struct SumiCriterion {
    pub applies: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub witness: Option<InvolutionWitness>,
}

pub fn centralizer(g: &GroupRef, x: u32) -> Subgroup {
    let elems = (0..g.order() as u32).filter(|&y| g.mul(x, y) == g.mul(y, x)).collect();
    Subgroup::new(g, elems).expect("centralizers are subgroups")
}

pub fn sumi_not_gap_criterion(g: &GroupRef, settings: &Settings) -> Result<SumiCriterion> {
    let n = g.order();
    let mut hyps = Vec::new();

    let prime_power_large: Vec<Subgroup> = large_subgroups(g, settings.subgroup_bound)?
        .into_iter()
        .filter(|l| l.order() == 1 || is_prime_power(l.order() as u64))
        .collect();
    hyps.push(Hypothesis {
        name: "no-large-subgroup-of-prime-power-order",
        holds: prime_power_large.is_empty(),
        detail: match prime_power_large.first() {
            Some(l) => format!("large subgroup of order {}", l.order()),
            None => "every large subgroup checked".into(),
        },
    });

    let o2 = p_residual(g, 2);
    hyps.push(Hypothesis {
        name: "index-of-2-residual-is-2",
        holds: o2.index() == 2,
        detail: format!("[G : O^2(G)] = {}", o2.index()),
    });

    let odd: Vec<u64> = prime_divisors(n as u64)
        .into_iter()
        .filter(|&p| p != 2 && p_residual(g, p).order() != n)
        .collect();
    hyps.push(Hypothesis {
        name: "unique-odd-prime-with-proper-residual",
        holds: odd.len() == 1,
        detail: format!("odd primes p with O^p(G) != G: {odd:?}"),
    });

    let four = (0..n as u32).find(|&x| g.element_order(x).is_multiple_of(4));
    hyps.push(Hypothesis {
        name: "no-element-of-order-divisible-by-4",
        holds: four.is_none(),
        detail: match four {
            Some(x) => format!("{} has order {}", g.label(x), g.element_order(x)),
            None => "all element orders checked".into(),
        },
    });

    let mut witness = None;
    for x in 0..n as u32 {
        if g.element_order(x) != 2 || o2.contains(x) {
            continue;
        }
        let c = centralizer(g, x);
        let cg = c.as_group();
        let r = p_residual(&cg, 2).order();
        if 2 * r >= c.order() {
            witness = Some(InvolutionWitness {
                element: x,
                label: g.label(x).to_string(),
                centralizer_order: c.order(),
                residual_order: r,
            });
            break;
        }
    }
    hyps.push(Hypothesis {
        name: "involution-outside-2-residual-with-large-centralizer-residual",
        holds: witness.is_some(),
        detail: match &witness {
            Some(w) => format!(
                "g = {}: |C_G(g)| = {}, |O^2(C_G(g))| = {}",
                w.label, w.centralizer_order, w.residual_order
            ),
            None => "every involution outside O^2(G) checked".into(),
        },
    });

    Ok(SumiCriterion {
        applies: hyps.iter().all(|h| h.holds),
        hypotheses: hyps,
        witness,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GnilBullet {
    ConjugateInvolutions,
    CommonGapSubgroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct GnilWitness {
    pub a: String,
    pub b: String,
    pub bullet: GnilBullet,
    /// The gap subgroup containing both, for the second bullet.
    pub subgroup: Option<SubgroupSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GnilVerdict {
    pub holds: bool,
    pub mode: CompositeOrderMode,
    pub residual_order: usize,
    pub witness: Option<GnilWitness>,
    /// Pairs `(a, b)` with `a` a class representative examined.
    pub pairs_checked: usize,
    /// Subgroup conjugacy orbits whose gap status was decided.
    pub orbits_gap_tested: usize,
}

/// Searches for `a, b` of composite order, not real conjugate, with
/// `a G^nil = b G^nil`, whose involutions are conjugate (both orders even)
/// or which lie in a common gap subgroup. Since every condition is
/// invariant under simultaneous conjugation, `a` runs over class
/// representatives only.
pub fn sumi_gnil_condition(g: &GroupRef, settings: &Settings) -> Result<GnilVerdict> {
    let mode = settings.composite_order_mode;
    let nil = nilpotent_residual(g);
    let cd = g.classes();
    let lattice = all_subgroups(g, settings.subgroup_bound)?;
    let mut gap_by_orbit: HashMap<usize, bool> = HashMap::new();
    let mut pairs = 0;

    let involution = |x: u32| g.pow(x, (g.element_order(x) / 2) as i64);

    for class in cd.classes() {
        let a = class.representative;
        if !mode.accepts(g.element_order(a) as u64) {
            continue;
        }
        let ra = cd.real_class_of(a);
        for &y in nil.elements() {
            let b = g.mul(a, y);
            if !mode.accepts(g.element_order(b) as u64) || cd.real_class_of(b) == ra {
                continue;
            }
            pairs += 1;
            let (oa, ob) = (g.element_order(a), g.element_order(b));
            if oa % 2 == 0 && ob % 2 == 0 && cd.class_of(involution(a)) == cd.class_of(involution(b)) {
                return Ok(GnilVerdict {
                    holds: true,
                    mode,
                    residual_order: nil.order(),
                    witness: Some(GnilWitness {
                        a: g.label(a).to_string(),
                        b: g.label(b).to_string(),
                        bullet: GnilBullet::ConjugateInvolutions,
                        subgroup: None,
                    }),
                    pairs_checked: pairs,
                    orbits_gap_tested: gap_by_orbit.len(),
                });
            }
            let k = Subgroup::generated(g, &[a, b]);
            for (idx, over) in lattice.iter().enumerate() {
                if !k.is_subset_of(&over) {
                    continue;
                }
                let orbit = lattice.orbit_of(idx);
                let is_gap = match gap_by_orbit.get(&orbit) {
                    Some(&v) => v,
                    None => {
                        let rep = lattice.get(lattice.orbits()[orbit][0]);
                        let v = gap_feasibility(&rep.as_group(), settings)?.feasible;
                        gap_by_orbit.insert(orbit, v);
                        v
                    }
                };
                if is_gap {
                    return Ok(GnilVerdict {
                        holds: true,
                        mode,
                        residual_order: nil.order(),
                        witness: Some(GnilWitness {
                            a: g.label(a).to_string(),
                            b: g.label(b).to_string(),
                            bullet: GnilBullet::CommonGapSubgroup,
                            subgroup: Some(over.summary()),
                        }),
                        pairs_checked: pairs,
                        orbits_gap_tested: gap_by_orbit.len(),
                    });
                }
            }
        }
    }
    Ok(GnilVerdict {
        holds: false,
        mode,
        residual_order: nil.order(),
        witness: None,
        pairs_checked: pairs,
        orbits_gap_tested: gap_by_orbit.len(),
    })
}
