//! Classification predicates: gap groups by exact LP, Sumi's sufficient
//! condition for not being a gap group, the Sumi `G^nil`-condition, special
//! Oliver groups and the Laitinen condition.

mod gap;
mod sumi;

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::arith::is_prime_power;
use crate::config::Settings;
use crate::error::Result;
use crate::groups::{derived_series, is_solvable, normal_subgroups, oliver_chain, GroupRef, Subgroup};

pub use gap::{
    exhaustive_gap_search, feasibility_problem, gap_feasibility, solve, Constraint, FeasibilityProblem, GapVerdict,
    GapWitness, Infeasibility, WeightedConstraint,
};
pub use sumi::{
    centralizer, sumi_gnil_condition, sumi_not_gap_criterion, GnilBullet, GnilVerdict, GnilWitness, Hypothesis,
    InvolutionWitness, SumiCriterion,
};

/// One conjunct of a classification with its evidence: a counterexample
/// when false, the searched space when true.
#[derive(Debug, Clone, Serialize)]
pub struct Conjunct {
    pub name: &'static str,
    pub holds: bool,
    pub evidence: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierReport {
    pub group: String,
    pub order: usize,
    pub holds: bool,
    pub conjuncts: Vec<Conjunct>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

/// Order of `xN` in `G/N`.
fn coset_order(g: &GroupRef, n: &Subgroup, x: u32) -> usize {
    let mut k = 1;
    let mut y = x;
    while !n.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// A normal subgroup `N` with `G/N` cyclic of odd order that is not a prime
/// power, if one exists. Returns the number of normal subgroups searched.
pub fn odd_composite_cyclic_quotient(g: &GroupRef) -> (Option<Subgroup>, usize) {
    let normals = normal_subgroups(g);
    let count = normals.len();
    for n in normals {
        let idx = n.index();
        if idx % 2 == 0 || idx == 1 || is_prime_power(idx as u64) {
            continue;
        }
        if (0..g.order() as u32).any(|x| coset_order(g, &n, x) == idx) {
            return (Some(n), count);
        }
    }
    (None, count)
}

/// Solvable, even order, Oliver, every cyclic quotient of even or prime
/// power order, and no Sumi `G^nil`-condition.
pub fn special_oliver_check(g: &GroupRef, settings: &Settings) -> Result<ClassifierReport> {
    let start = Instant::now();
    let mut conjuncts = Vec::new();

    let series: Vec<usize> = derived_series(g).iter().map(|s| s.order()).collect();
    conjuncts.push(Conjunct {
        name: "solvable",
        holds: is_solvable(g),
        evidence: json!({ "derived_series_orders": series }),
    });

    conjuncts.push(Conjunct {
        name: "even-order",
        holds: g.order().is_multiple_of(2),
        evidence: json!({ "order": g.order() }),
    });

    let chain = oliver_chain(g);
    conjuncts.push(Conjunct {
        name: "oliver",
        holds: chain.is_none(),
        evidence: match &chain {
            Some(c) => json!({
                "p": c.p.summary(),
                "h": c.h.summary(),
                "generator": g.label(c.generator),
            }),
            None => json!({ "searched": "all chains P ⊴ H ⊴ G with H normal of prime power index" }),
        },
    });

    let (bad, searched) = odd_composite_cyclic_quotient(g);
    conjuncts.push(Conjunct {
        name: "cyclic-quotients-even-or-prime-power",
        holds: bad.is_none(),
        evidence: match &bad {
            Some(n) => json!({ "kernel": n.summary(), "quotient_order": n.index() }),
            None => json!({ "normal_subgroups_searched": searched }),
        },
    });

    let gnil = sumi_gnil_condition(g, settings)?;
    conjuncts.push(Conjunct {
        name: "no-sumi-gnil-condition",
        holds: !gnil.holds,
        evidence: serde_json::to_value(&gnil).expect("verdict serializes"),
    });

    Ok(ClassifierReport {
        group: g.name().to_string(),
        order: g.order(),
        holds: conjuncts.iter().all(|c| c.holds),
        conjuncts,
        millis: Some(start.elapsed().as_millis() as u64),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LaitinenVerdict {
    pub holds: bool,
    /// An element of order divisible by 8.
    pub counterexample: Option<String>,
    pub elements_checked: usize,
}

/// No element of order divisible by 8; this makes every element of 2-power
/// order have order at most 4, so the Laitinen condition holds vacuously.
pub fn laitinen_condition_check(g: &GroupRef) -> LaitinenVerdict {
    let bad = (0..g.order() as u32).find(|&x| g.element_order(x).is_multiple_of(8));
    LaitinenVerdict {
        holds: bad.is_none(),
        counterexample: bad.map(|x| format!("{} (order {})", g.label(x), g.element_order(x))),
        elements_checked: g.order(),
    }
}

#[cfg(test)]
mod tests;
