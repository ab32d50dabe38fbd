use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith::omega;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{same_group, FiniteGroup, GroupRef, Subgroup};

use super::{CharacterTable, ClassFunction};

/// Exact `(1/|G|) sum_g chi(g^2)`.
pub fn frobenius_schur(chi: &ClassFunction) -> Cyclotomic {
    indicator_value(chi.group(), chi.values())
}

fn indicator_value(g: &FiniteGroup, row: &[Cyclotomic]) -> Cyclotomic {
    let cd = g.classes();
    let mut acc = Cyclotomic::zero(1);
    for c in cd.classes() {
        let sq = cd.class_of(g.mul(c.representative, c.representative));
        acc += &row[sq].scale_int(c.size() as i64);
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(g.order())))
}

/// Indicator of an irreducible row as `1`, `0` or `-1`.
pub(crate) fn indicator_of_values(g: &FiniteGroup, row: &[Cyclotomic]) -> Result<i64> {
    let v = indicator_value(g, row);
    match v.as_integer().and_then(|i| i64::try_from(i).ok()) {
        Some(i) if (-1..=1).contains(&i) => Ok(i),
        _ => Err(Error::Invariant(format!("Frobenius-Schur indicator {v}"))),
    }
}

/// A real irreducible character: `chi` (indicator 1), `chi + conj(chi)`
/// (indicator 0) or `2 chi` (indicator -1).
#[derive(Debug, Clone, Serialize)]
pub struct RealIrreducible {
    pub character: ClassFunction,
    /// Rows of the complex table that make up this character.
    pub components: Vec<usize>,
    pub indicator: i64,
}

/// The canonical basis of `RO(G)`, in order of first complex component.
pub fn real_irreducibles(table: &CharacterTable) -> Vec<RealIrreducible> {
    let mut out = Vec::new();
    for i in 0..table.len() {
        let chi = table.character(i);
        match table.indicator(i) {
            1 => out.push(RealIrreducible {
                character: chi,
                components: vec![i],
                indicator: 1,
            }),
            -1 => out.push(RealIrreducible {
                character: chi.scale_int(2),
                components: vec![i],
                indicator: -1,
            }),
            _ => {
                let j = table.conjugate_row(i);
                if i < j {
                    out.push(RealIrreducible {
                        character: chi.real_double(),
                        components: vec![i, j],
                        indicator: 0,
                    });
                }
            }
        }
    }
    out
}

/// `|H ∩ K|` for every class `K` of the parent.
pub(crate) fn intersection_counts(h: &Subgroup) -> Vec<i64> {
    let cd = h.parent().classes();
    let mut counts = vec![0i64; cd.len()];
    for &x in h.elements() {
        counts[cd.class_of(x)] += 1;
    }
    counts
}

fn fixed_dim_from_counts(chi: &ClassFunction, counts: &[i64], order: usize) -> Result<u64> {
    let mut acc = Cyclotomic::zero(1);
    for (v, &c) in chi.values().iter().zip(counts) {
        if c != 0 {
            acc += &v.scale_int(c);
        }
    }
    let v = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(order)));
    v.as_integer()
        .and_then(|i| u64::try_from(i).ok())
        .ok_or_else(|| Error::NotIntegral(format!("fixed-point dimension {v}")))
}

/// `dim V^H = (1/|H|) sum_{h in H} chi(h)`, certified to be a nonnegative integer.
pub fn fixed_dim(chi: &ClassFunction, h: &Subgroup) -> Result<u64> {
    if !same_group(chi.group(), h.parent()) {
        return Err(Error::GroupMismatch("subgroup of a different group".into()));
    }
    fixed_dim_from_counts(chi, &intersection_counts(h), h.order())
}

/// Fixed dimensions of several characters on one subgroup.
pub fn fixed_dims(chis: &[ClassFunction], h: &Subgroup) -> Result<Vec<u64>> {
    let counts = intersection_counts(h);
    chis.iter()
        .map(|chi| {
            if !same_group(chi.group(), h.parent()) {
                return Err(Error::GroupMismatch("subgroup of a different group".into()));
            }
            fixed_dim_from_counts(chi, &counts, h.order())
        })
        .collect()
}

/// Number of real classes whose element order has at least two distinct prime divisors.
pub fn prim(g: &GroupRef) -> usize {
    let cd = g.classes();
    cd.real_classes()
        .iter()
        .filter(|rc| omega(cd.element_order(rc.class_of_g) as u64) >= 2)
        .count()
}
