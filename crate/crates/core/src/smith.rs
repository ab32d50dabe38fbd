//! Real representation rings, `P`-matched modules, the weak gap condition
//! and the induction map on `PO(G)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{is_prime_power, omega};
use crate::chartab::{fixed_dim, induce, irreducible_table, prim, real_irreducibles, ClassFunction, RealIrreducible};
use crate::config::Settings;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, large_subgroups, same_group, GroupRef, Subgroup, SubgroupSummary};
use crate::linalg::{integer_kernel, rational_rank};

fn ensure_same(u: &ClassFunction, v: &ClassFunction) -> Result<()> {
    if same_group(u.group(), v.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch("characters of different groups".into()))
    }
}

/// `U` and `V` agree on every element of prime power order, i.e. their
/// restrictions to every prime power order subgroup are isomorphic.
pub fn p_matched(u: &ClassFunction, v: &ClassFunction) -> Result<bool> {
    ensure_same(u, v)?;
    let cd = u.group().classes();
    Ok((0..cd.len())
        .filter(|&k| is_prime_power(cd.element_order(k) as u64))
        .all(|k| u.value(k) == v.value(k)))
}

/// Outcome of the weak gap test `dim V^P >= 2 dim V^H`.
#[derive(Debug, Clone, Serialize)]
pub struct WeakGapVerdict {
    pub holds: bool,
    /// First pair `(P, H)` with `dim V^P < 2 dim V^H`.
    pub violation: Option<(SubgroupSummary, SubgroupSummary)>,
    pub pairs_checked: usize,
}

/// Checks `dim V^P >= 2 dim V^H` for every `P < H <= G` with `|P|` a prime
/// power (`P = 1` included when the setting says so).
pub fn weak_gap_check(v: &ClassFunction, settings: &Settings) -> Result<WeakGapVerdict> {
    let g = v.group();
    let lattice = all_subgroups(g, settings.subgroup_bound)?;
    let subs = lattice.subgroups();
    let dims = subs.iter().map(|h| fixed_dim(v, h)).collect::<Result<Vec<u64>>>()?;
    let mut pairs = 0;
    for (i, p) in subs.iter().enumerate() {
        if !prime_power_subgroup(p, settings) {
            continue;
        }
        for (j, h) in subs.iter().enumerate() {
            if j == i || h.order() <= p.order() || !p.is_subset_of(h) {
                continue;
            }
            pairs += 1;
            if dims[i] < 2 * dims[j] {
                return Ok(WeakGapVerdict {
                    holds: false,
                    violation: Some((p.summary(), h.summary())),
                    pairs_checked: pairs,
                });
            }
        }
    }
    Ok(WeakGapVerdict {
        holds: true,
        violation: None,
        pairs_checked: pairs,
    })
}

pub(crate) fn prime_power_subgroup(p: &Subgroup, settings: &Settings) -> bool {
    if p.order() == 1 {
        settings.include_trivial_prime_power
    } else {
        is_prime_power(p.order() as u64)
    }
}

/// Outcome of the test that `U - V` represents an element of `PO^L_w(G)`.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessVerdict {
    pub p_matched: bool,
    pub distinct: bool,
    pub weak_gap_u: WeakGapVerdict,
    pub weak_gap_v: WeakGapVerdict,
    /// First large subgroup with a nonzero fixed space, if any.
    pub large_violation: Option<SubgroupSummary>,
    pub large_subgroups_checked: usize,
}

impl WitnessVerdict {
    /// The defining conditions (distinctness is reported separately).
    pub fn holds(&self) -> bool {
        self.p_matched && self.weak_gap_u.holds && self.weak_gap_v.holds && self.large_violation.is_none()
    }
}

pub fn po_lw_witness_check(u: &ClassFunction, v: &ClassFunction, settings: &Settings) -> Result<WitnessVerdict> {
    ensure_same(u, v)?;
    let g = u.group();
    let large = large_subgroups(g, settings.subgroup_bound)?;
    let mut large_violation = None;
    for l in &large {
        if fixed_dim(u, l)? != 0 || fixed_dim(v, l)? != 0 {
            large_violation = Some(l.summary());
            break;
        }
    }
    Ok(WitnessVerdict {
        p_matched: p_matched(u, v)?,
        distinct: u != v,
        weak_gap_u: weak_gap_check(u, settings)?,
        weak_gap_v: weak_gap_check(v, settings)?,
        large_violation,
        large_subgroups_checked: large.len(),
    })
}

/// Outcome of the real-class intersection test for `Ind_H^G` on `PO(H)`.
#[derive(Debug, Clone, Serialize)]
pub struct MonoVerdict {
    pub holds: bool,
    /// Element `h` with `(h)^±_G ∩ H != (h)^±_H`, as a label.
    pub violation: Option<String>,
    pub elements_checked: usize,
}

/// Checks `(h)^±_G ∩ H = (h)^±_H` for every `h in H` not of prime power order.
pub fn induction_mono_check(h: &Subgroup) -> MonoVerdict {
    let g = h.parent();
    let cg = g.classes();
    let hg = h.as_group();
    let ch = hg.classes();
    let mut checked = 0;
    let mut seen = BTreeSet::new();
    for &x in h.elements() {
        if is_prime_power(g.element_order(x) as u64) {
            continue;
        }
        let local = h.position(x).unwrap();
        if !seen.insert(ch.real_class_of(local)) {
            continue;
        }
        checked += 1;
        let in_g: Vec<u32> = cg
            .real_class_members(x)
            .into_iter()
            .filter(|&y| h.contains(y))
            .collect();
        let in_h = h.lift(&ch.real_class_members(local));
        let mut in_h = in_h;
        in_h.sort_unstable();
        if in_g != in_h {
            return MonoVerdict {
                holds: false,
                violation: Some(g.label(x).to_string()),
                elements_checked: checked,
            };
        }
    }
    MonoVerdict {
        holds: true,
        violation: None,
        elements_checked: checked,
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(i) => seq.serialize_element(&i)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// An element of `RO(G)`: integer multiplicities over the real irreducibles.
#[derive(Debug, Clone, Serialize)]
pub struct VirtualCharacter {
    #[serde(serialize_with = "serialize_bigints")]
    pub multiplicities: Vec<BigInt>,
    #[serde(skip)]
    pub character: ClassFunction,
}

impl VirtualCharacter {
    pub fn from_multiplicities(real: &[RealIrreducible], mult: Vec<BigInt>) -> Result<VirtualCharacter> {
        let g = real
            .first()
            .map(|r| r.character.group().clone())
            .ok_or_else(|| Error::Invariant("empty real basis".into()))?;
        let mut acc = ClassFunction::zero(&g);
        for (m, r) in mult.iter().zip(real) {
            if !m.is_zero() {
                let k = i64::try_from(m).map_err(|_| Error::Invariant("multiplicity overflow".into()))?;
                acc = acc.add(&r.character.scale_int(k))?;
            }
        }
        Ok(VirtualCharacter {
            multiplicities: mult,
            character: acc,
        })
    }

    fn part(&self, real: &[RealIrreducible], positive: bool) -> Result<ClassFunction> {
        let mult = self
            .multiplicities
            .iter()
            .map(|m| {
                if m.is_positive() == positive && !m.is_zero() {
                    m.abs()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        Ok(VirtualCharacter::from_multiplicities(real, mult)?.character)
    }

    /// `U` in the decomposition `U - V` into genuine characters.
    pub fn positive_part(&self, real: &[RealIrreducible]) -> Result<ClassFunction> {
        self.part(real, true)
    }

    /// `V` in the decomposition `U - V` into genuine characters.
    pub fn negative_part(&self, real: &[RealIrreducible]) -> Result<ClassFunction> {
        self.part(real, false)
    }
}

/// Integer basis of `PO(G)` in Hermite normal form.
#[derive(Debug, Clone, Serialize)]
pub struct PoLattice {
    #[serde(skip)]
    pub real: Vec<RealIrreducible>,
    pub basis: Vec<VirtualCharacter>,
    pub rank: usize,
}

/// Value coordinates in `Q(zeta_e)`, as integers (character values are algebraic integers).
fn integer_coordinates(v: &Cyclotomic, e: u64) -> Result<Vec<BigInt>> {
    let v = v.embed(num_integer::lcm(v.conductor(), e));
    if v.conductor() != e {
        return Err(Error::Invariant("value outside the group's cyclotomic field".into()));
    }
    if !v.denominator().is_positive() || *v.denominator() != BigInt::from(1) {
        return Err(Error::NotIntegral(format!("character value {v}")));
    }
    Ok(v.numerators().to_vec())
}

/// Kernel of the evaluation map `RO(G) -> values on prime power order classes`.
/// Fails with an invariant breach when its rank differs from `prim(G)`.
pub fn po_basis(g: &GroupRef, settings: &Settings) -> Result<PoLattice> {
    let table = irreducible_table(g, settings.subgroup_bound)?;
    let real = real_irreducibles(&table);
    let cd = g.classes();
    let e = g.exponent();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for k in 0..cd.len() {
        if !is_prime_power(cd.element_order(k) as u64) {
            continue;
        }
        let coords = real
            .iter()
            .map(|r| integer_coordinates(r.character.value(k), e))
            .collect::<Result<Vec<_>>>()?;
        for j in 0..coords[0].len() {
            rows.push(coords.iter().map(|c| c[j].clone()).collect());
        }
    }
    let kernel = integer_kernel(&rows, real.len());
    let rank = kernel.len();
    let expected = prim(g);
    if rank != expected {
        return Err(Error::Invariant(format!(
            "rank PO(G) = {rank} differs from prim(G) = {expected}"
        )));
    }
    let basis = kernel
        .into_iter()
        .map(|m| VirtualCharacter::from_multiplicities(&real, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoLattice { real, basis, rank })
}

/// Ranks attached to `Ind_H^G : PO(H) -> PO(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InductionRank {
    /// Rank of the induced basis evaluated on the non-prime-power real classes of `G`.
    pub r: usize,
    /// Real classes of `G` meeting `H` in elements not of prime power order.
    pub s: usize,
    /// `prim(H)`.
    pub t: usize,
}

pub fn induction_rank(h: &Subgroup, settings: &Settings) -> Result<InductionRank> {
    let g = h.parent();
    let cg = g.classes();
    let hg = h.as_group();
    let po_h = po_basis(&hg, settings)?;
    let t = prim(&hg);
    let meets: BTreeSet<usize> = h
        .elements()
        .iter()
        .filter(|&&x| omega(g.element_order(x) as u64) >= 2)
        .map(|&x| cg.real_class_of(x))
        .collect();
    let s = meets.len();
    let targets: Vec<usize> = cg
        .real_classes()
        .iter()
        .filter(|rc| omega(cg.element_order(rc.class_of_g) as u64) >= 2)
        .map(|rc| rc.class_of_g)
        .collect();
    let e = g.exponent();
    let mut rows = Vec::new();
    for b in &po_h.basis {
        let ind = induce(&b.character, h)?;
        let mut row: Vec<BigRational> = Vec::new();
        for &k in &targets {
            let v = ind.value(k).embed(num_integer::lcm(ind.value(k).conductor(), e));
            row.extend(v.coefficients());
        }
        rows.push(row);
    }
    let r = rational_rank(&rows);
    if s > t {
        return Err(Error::Invariant(format!("s = {s} exceeds t = {t}")));
    }
    Ok(InductionRank { r, s, t })
}

#[cfg(test)]
mod tests;
