use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chartab::{fixed_dims, irreducible_table, real_irreducibles, ClassFunction, RealIrreducible};
use crate::config::Settings;
use crate::cyclo::fmt_rational;
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, large_subgroups, GroupRef, SubgroupSummary};
use crate::lp::strict_feasibility;
use crate::smith::prime_power_subgroup;

/// One strict inequality `dim V^P > 2 dim V^H`, as coefficients over the
/// real irreducibles.
#[derive(Debug, Clone, Serialize)]
pub struct Constraint {
    pub p: SubgroupSummary,
    pub h: SubgroupSummary,
    pub coefficients: Vec<i64>,
}

/// The gap-group system for one group, before any reduction.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityProblem {
    #[serde(skip)]
    pub real: Vec<RealIrreducible>,
    /// Real irreducibles free to take positive multiplicity.
    pub variables: Vec<usize>,
    /// Real irreducibles with a nonzero fixed space on some large subgroup.
    pub forced_zero: Vec<usize>,
    /// Every pair `P < H` with `|P|` a prime power, in lattice order.
    pub rows: Vec<Constraint>,
    pub large_subgroups: Vec<SubgroupSummary>,
}

pub fn feasibility_problem(g: &GroupRef, settings: &Settings) -> Result<FeasibilityProblem> {
    let lattice = all_subgroups(g, settings.subgroup_bound)?;
    let table = irreducible_table(g, settings.subgroup_bound)?;
    let real = real_irreducibles(&table);
    let chars: Vec<ClassFunction> = real.iter().map(|r| r.character.clone()).collect();
    let subs = lattice.subgroups();
    let dims = subs
        .iter()
        .map(|h| fixed_dims(&chars, h))
        .collect::<Result<Vec<Vec<u64>>>>()?;

    let large = large_subgroups(g, settings.subgroup_bound)?;
    let mut forced = vec![false; real.len()];
    for l in &large {
        let k = lattice
            .index_of(l)
            .ok_or_else(|| Error::Invariant("large subgroup missing from the lattice".into()))?;
        for (f, &d) in forced.iter_mut().zip(&dims[k]) {
            *f |= d > 0;
        }
    }

    let mut rows = Vec::new();
    for (i, p) in subs.iter().enumerate() {
        if !prime_power_subgroup(p, settings) {
            continue;
        }
        for (j, h) in subs.iter().enumerate() {
            if h.order() <= p.order() || !p.is_subset_of(h) {
                continue;
            }
            let coefficients = dims[i]
                .iter()
                .zip(&dims[j])
                .map(|(&a, &b)| a as i64 - 2 * b as i64)
                .collect();
            rows.push(Constraint {
                p: p.summary(),
                h: h.summary(),
                coefficients,
            });
        }
    }
    Ok(FeasibilityProblem {
        variables: (0..real.len()).filter(|&i| !forced[i]).collect(),
        forced_zero: (0..real.len()).filter(|&i| forced[i]).collect(),
        real,
        rows,
        large_subgroups: large.iter().map(|l| l.summary()).collect(),
    })
}

/// A multiplicity vector over all real irreducibles that satisfies every
/// constraint strictly.
#[derive(Debug, Clone, Serialize)]
pub struct GapWitness {
    /// Optimal LP point, exact rationals rendered as `num/den`.
    pub rational: Vec<String>,
    /// The same point scaled to integers.
    pub multiplicities: Vec<i64>,
    pub dimension: i64,
}

/// A constraint used with positive weight in an infeasibility certificate.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedConstraint {
    pub p: SubgroupSummary,
    pub h: SubgroupSummary,
    pub weight: String,
}

/// Nonnegative weights whose combination of the constraint rows has no
/// positive coefficient on any free variable, so no multiplicity vector can
/// make every row positive.
#[derive(Debug, Clone, Serialize)]
pub struct Infeasibility {
    pub combination: Vec<WeightedConstraint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapVerdict {
    pub group: String,
    pub order: usize,
    pub feasible: bool,
    pub real_irreducibles: usize,
    pub variables: Vec<usize>,
    pub forced_zero: Vec<usize>,
    pub constraints: usize,
    pub distinct_constraints: usize,
    pub witness: Option<GapWitness>,
    pub certificate: Option<Infeasibility>,
}

impl GapVerdict {
    pub fn verdict(&self) -> &'static str {
        if self.feasible {
            "gap group"
        } else {
            "not a gap group"
        }
    }
}

/// Decides whether `G` is a gap group by exact LP over the multiplicities of
/// the real irreducibles. Identical rows are merged before solving.
pub fn gap_feasibility(g: &GroupRef, settings: &Settings) -> Result<GapVerdict> {
    let problem = feasibility_problem(g, settings)?;
    solve(g, &problem)
}

pub fn solve(g: &GroupRef, problem: &FeasibilityProblem) -> Result<GapVerdict> {
    let free = &problem.variables;
    // projected row -> first constraint producing it
    let mut distinct: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (k, c) in problem.rows.iter().enumerate() {
        let projected: Vec<i64> = free.iter().map(|&i| c.coefficients[i]).collect();
        distinct.entry(projected).or_insert(k);
    }
    let keys: Vec<(&Vec<i64>, &usize)> = distinct.iter().collect();
    let lp_rows: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|(r, _)| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let sol = strict_feasibility(&lp_rows, free.len());

    let (witness, certificate) = if sol.feasible() {
        let denom = sol.point.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut full = vec![BigRational::zero(); problem.real.len()];
        let mut ints = vec![0i64; problem.real.len()];
        for (x, &i) in sol.point.iter().zip(free) {
            full[i] = x.clone();
            let scaled = (x * BigRational::from_integer(denom.clone())).to_integer();
            ints[i] = i64::try_from(&scaled).map_err(|_| Error::Invariant("witness overflow".into()))?;
        }
        for (row, _) in &keys {
            let v: i64 = row.iter().zip(free).map(|(&a, &i)| a * ints[i]).sum();
            if v <= 0 {
                return Err(Error::Invariant("LP witness violates a strict constraint".into()));
            }
        }
        let dimension = ints
            .iter()
            .zip(&problem.real)
            .map(|(m, r)| m * r.character.degree_int())
            .sum();
        let witness = GapWitness {
            rational: full.iter().map(fmt_rational).collect(),
            multiplicities: ints,
            dimension,
        };
        (Some(witness), None)
    } else {
        let mut combo = vec![BigRational::zero(); free.len()];
        let mut total = BigRational::zero();
        let mut combination = Vec::new();
        for ((row, &k), y) in keys.iter().zip(&sol.duals) {
            if y.is_negative() {
                return Err(Error::Invariant("negative dual weight".into()));
            }
            if y.is_zero() {
                continue;
            }
            total += y;
            for (c, &a) in combo.iter_mut().zip(row.iter()) {
                *c += y * BigRational::from_integer(a.into());
            }
            let c = &problem.rows[k];
            combination.push(WeightedConstraint {
                p: c.p.clone(),
                h: c.h.clone(),
                weight: fmt_rational(y),
            });
        }
        if total < BigRational::one() || combo.iter().any(|c| c.is_positive()) {
            return Err(Error::Invariant("infeasibility certificate does not verify".into()));
        }
        (None, Some(Infeasibility { combination }))
    };

    Ok(GapVerdict {
        group: g.name().to_string(),
        order: g.order(),
        feasible: sol.feasible(),
        real_irreducibles: problem.real.len(),
        variables: problem.variables.clone(),
        forced_zero: problem.forced_zero.clone(),
        constraints: problem.rows.len(),
        distinct_constraints: keys.len(),
        witness,
        certificate,
    })
}

/// Exhaustive search over integer multiplicities `0..=max` on the free
/// variables; an independent check of [`gap_feasibility`] for small groups.
///
/// Exact reductions keep it tractable: variables with identical constraint
/// columns are merged (their sum ranges over `0..=max * copies`), duplicate
/// rows are dropped, and a branch is cut once some row can no longer become
/// positive.
pub fn exhaustive_gap_search(problem: &FeasibilityProblem, max: i64) -> Option<Vec<i64>> {
    let free = &problem.variables;
    let rows: Vec<Vec<i64>> = problem
        .rows
        .iter()
        .map(|c| free.iter().map(|&i| c.coefficients[i]).collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // merged columns: (coefficients per row, original variable positions)
    let mut merged: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for j in 0..free.len() {
        merged.entry(rows.iter().map(|r| r[j]).collect()).or_default().push(j);
    }
    let cols: Vec<(Vec<i64>, Vec<usize>)> = merged.into_iter().collect();
    let bounds: Vec<i64> = cols.iter().map(|(_, js)| max * js.len() as i64).collect();
    // best[d][r]: the largest amount columns d.. can still add to row r
    let mut best = vec![vec![0i64; rows.len()]; cols.len() + 1];
    for d in (0..cols.len()).rev() {
        best[d] = best[d + 1]
            .iter()
            .zip(&cols[d].0)
            .map(|(b, c)| b + c.max(&0) * bounds[d])
            .collect();
    }

    fn dfs(
        d: usize,
        sums: &mut [i64],
        cols: &[(Vec<i64>, Vec<usize>)],
        bounds: &[i64],
        best: &[Vec<i64>],
        pick: &mut [i64],
    ) -> bool {
        if sums.iter().all(|&s| s > 0) {
            pick[d..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
        if d == cols.len() || sums.iter().zip(&best[d]).any(|(s, b)| s + b <= 0) {
            return false;
        }
        for x in 0..=bounds[d] {
            pick[d] = x;
            if x > 0 {
                for (s, c) in sums.iter_mut().zip(&cols[d].0) {
                    *s += c;
                }
            }
            if dfs(d + 1, sums, cols, bounds, best, pick) {
                return true;
            }
        }
        for (s, c) in sums.iter_mut().zip(&cols[d].0) {
            *s -= c * bounds[d];
        }
        false
    }

    let mut sums = vec![0i64; rows.len()];
    let mut pick = vec![0i64; cols.len()];
    if !dfs(0, &mut sums, &cols, &bounds, &best, &mut pick) {
        return None;
    }
    let mut full = vec![0i64; problem.real.len()];
    for ((_, js), &total) in cols.iter().zip(&pick) {
        let mut left = total;
        for &j in js {
            let x = left.min(max);
            full[free[j]] = x;
            left -= x;
        }
    }
    Some(full)
}
