//! Finite groups given by explicit multiplication tables.
//!
//! Every group in this crate is materialized as a Cayley table over the
//! element indices `0..order`, with the identity always at index `0`.
//! Structure such as conjugacy classes, the subgroup lattice and the
//! character table is derived from the table on demand and cached.

mod classes;
mod construct;
mod hom;
mod props;
mod subgroups;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::chartab::TableData;
use crate::error::{Error, Result};
use subgroups::{LatticeData, SubgroupData};

pub use classes::{ClassData, ConjugacyClass, RealClass};
pub use construct::{construct_group, gpq_element_mul, gpq_twist, GpqElement};
pub(crate) use construct::{cyclic, direct_product, frobenius_with, gpq_with};
pub use hom::{is_isomorphic, Homomorphism};
pub use props::{
    derived_series, derived_subgroup, is_nilpotent, is_oliver, is_solvable, large_subgroups, nilpotent_residual,
    oliver_chain, p_residual, predicates, quotient, residual, GroupPredicates, OliverChain, Quotient, ResidualKind,
};
pub use subgroups::{all_subgroups, normal_subgroups, Subgroup, SubgroupLattice, SubgroupSummary};

pub type GroupRef = Arc<FiniteGroup>;

/// A finite group stored as a full multiplication table.
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<u32>,
    element_orders: Vec<u32>,
    name: String,
    classes: OnceLock<Arc<ClassData>>,
    lattice: OnceLock<Arc<LatticeData>>,
    normals: OnceLock<Vec<Arc<SubgroupData>>>,
    chartab: OnceLock<Arc<TableData>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// JSON form of a group: row-major multiplication table plus labels.
#[derive(Debug, Serialize)]
pub struct GroupDocument<'a> {
    pub order: usize,
    pub labels: &'a [String],
    pub generators: &'a [u32],
    pub table: &'a [u32],
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// The table must be a Latin square with two-sided identity at index 0,
    /// associative (checked with Light's test against the generators), and
    /// the generators must generate every element.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<u32>,
    ) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidGroup("table has wrong size".into()));
        }
        if labels.len() != order {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        if generators.iter().any(|&g| g as usize >= order) {
            return Err(Error::InvalidGroup("generator out of range".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![false; order];
        for x in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..order {
                let z = mul[x * order + y] as usize;
                if seen[z] {
                    return Err(Error::InvalidGroup(format!("row {x} repeats an entry")));
                }
                seen[z] = true;
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    inv[x] = y as u32;
                    break;
                }
            }
            if mul[inv[x] as usize * order + x] != 0 {
                return Err(Error::InvalidGroup(format!("element {x} has no two-sided inverse")));
            }
        }
        // Light's associativity test: (xg)y = x(gy) for all x, y and generators g.
        for &g in &generators {
            let g = g as usize;
            for x in 0..order {
                let xg = mul[x * order + g] as usize;
                for y in 0..order {
                    let gy = mul[g * order + y] as usize;
                    if mul[xg * order + y] != mul[x * order + gy] {
                        return Err(Error::InvalidGroup(format!(
                            "table is not associative at ({x}, {g}, {y})"
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            order,
            mul,
            inv,
            labels,
            generators,
            element_orders: Vec::new(),
            name: name.into(),
            classes: OnceLock::new(),
            lattice: OnceLock::new(),
            normals: OnceLock::new(),
            chartab: OnceLock::new(),
        };
        if group.closure(&group.generators.clone()).len() != order {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        group.element_orders = (0..order as u32).map(|g| group.compute_order(g)).collect();
        Ok(group)
    }

    fn compute_order(&self, g: u32) -> u32 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `x g x^-1`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: u32, k: i64) -> u32 {
        let ord = self.element_order(g) as i64;
        let e = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> u32 {
        self.element_orders[g as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
    }

    pub fn label(&self, g: u32) -> &str {
        &self.labels[g as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut out = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn document(&self) -> GroupDocument<'_> {
        GroupDocument {
            order: self.order,
            labels: &self.labels,
            generators: &self.generators,
            table: &self.mul,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.document()).expect("group serialization")
    }

    /// Conjugacy classes, real-class pairing and centralizer orders (cached).
    pub fn classes(&self) -> Arc<ClassData> {
        self.classes.get_or_init(|| Arc::new(ClassData::compute(self))).clone()
    }

    pub(crate) fn cached_lattice(&self) -> &OnceLock<Arc<LatticeData>> {
        &self.lattice
    }

    pub(crate) fn cached_normals(&self) -> &OnceLock<Vec<Arc<SubgroupData>>> {
        &self.normals
    }

    pub(crate) fn cached_chartab(&self) -> &OnceLock<Arc<TableData>> {
        &self.chartab
    }

    /// Same multiplication table (used when group references are not shared).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

/// Whether two group references denote the same group.
pub fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || a.same_table(b)
}
