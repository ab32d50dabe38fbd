use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupRef};

fn mask_of(n: usize, elements: &[u32]) -> Vec<u64> {
    let mut m = vec![0u64; n.div_ceil(64)];
    for &e in elements {
        m[e as usize / 64] |= 1 << (e % 64);
    }
    m
}

#[inline]
fn mask_has(mask: &[u64], e: u32) -> bool {
    mask[e as usize / 64] >> (e % 64) & 1 == 1
}

fn mask_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Element set of a subgroup, independent of any parent reference.
#[derive(Debug)]
pub(crate) struct SubgroupData {
    elements: Vec<u32>,
    mask: Vec<u64>,
    group: OnceLock<GroupRef>,
}

impl SubgroupData {
    fn new(n: usize, mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mask = mask_of(n, &elements);
        SubgroupData {
            elements,
            mask,
            group: OnceLock::new(),
        }
    }
}

/// A subgroup `H <= G`: a sorted element set of the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    data: Arc<SubgroupData>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        crate::groups::same_group(&self.parent, &other.parent) && self.data.elements == other.data.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.elements.hash(state);
    }
}

impl Subgroup {
    /// Checks closure and builds the subgroup from an element list.
    pub fn new(parent: &GroupRef, elements: Vec<u32>) -> Result<Subgroup> {
        let n = parent.order();
        if elements.iter().any(|&e| e as usize >= n) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        let data = SubgroupData::new(n, elements);
        if !mask_has(&data.mask, 0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &data.elements {
            if !mask_has(&data.mask, parent.inv(a)) {
                return Err(Error::NotSubgroup("not closed under inverses".into()));
            }
            for &b in &data.elements {
                if !mask_has(&data.mask, parent.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under multiplication".into()));
                }
            }
        }
        Ok(Subgroup::from_data(parent, Arc::new(data)))
    }

    pub(crate) fn from_data(parent: &GroupRef, data: Arc<SubgroupData>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            data,
        }
    }

    pub(crate) fn from_closed(parent: &GroupRef, elements: Vec<u32>) -> Subgroup {
        Subgroup::from_data(parent, Arc::new(SubgroupData::new(parent.order(), elements)))
    }

    pub fn generated(parent: &GroupRef, gens: &[u32]) -> Subgroup {
        Subgroup::from_closed(parent, parent.closure(gens))
    }

    pub fn whole(parent: &GroupRef) -> Subgroup {
        Subgroup::from_closed(parent, (0..parent.order() as u32).collect())
    }

    pub fn trivial(parent: &GroupRef) -> Subgroup {
        Subgroup::from_closed(parent, vec![0])
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[u32] {
        &self.data.elements
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: u32) -> bool {
        (g as usize) < self.parent.order() && mask_has(&self.data.mask, g)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        mask_subset(&self.data.mask, &other.data.mask)
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators()
            .iter()
            .all(|&x| self.elements().iter().all(|&h| self.contains(g.conj(x, h))))
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn conjugate(&self, x: u32) -> Subgroup {
        let els = self.elements().iter().map(|&h| self.parent.conj(x, h)).collect();
        Subgroup::from_closed(&self.parent, els)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let els = self.elements().iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup::from_closed(&self.parent, els)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.small_generating_set();
        gens.extend(other.small_generating_set());
        Subgroup::generated(&self.parent, &gens)
    }

    /// Order and generator labels, for reports.
    pub fn summary(&self) -> SubgroupSummary {
        SubgroupSummary {
            order: self.order(),
            generators: self
                .small_generating_set()
                .into_iter()
                .map(|g| self.parent.label(g).to_string())
                .collect(),
        }
    }

    /// Position of a parent element inside [`Subgroup::as_group`].
    pub fn position(&self, g: u32) -> Option<u32> {
        self.data.elements.binary_search(&g).ok().map(|i| i as u32)
    }

    /// Greedy generating set in increasing element order.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let n = self.parent.order();
        let mut gens = Vec::new();
        let mut span = mask_of(n, &[0]);
        let mut span_len = 1;
        // prefer elements of large order
        let mut candidates: Vec<u32> = self.elements().to_vec();
        candidates.sort_by_key(|&e| (std::cmp::Reverse(self.parent.element_order(e)), e));
        for e in candidates {
            if span_len == self.order() {
                break;
            }
            if mask_has(&span, e) {
                continue;
            }
            gens.push(e);
            let c = self.parent.closure(&gens);
            span_len = c.len();
            span = mask_of(n, &c);
        }
        gens
    }

    /// The subgroup as a group in its own right; element `k` is `elements()[k]`.
    pub fn as_group(&self) -> GroupRef {
        self.data
            .group
            .get_or_init(|| {
                let els = &self.data.elements;
                let m = els.len();
                let mut mul = vec![0u32; m * m];
                for (i, &a) in els.iter().enumerate() {
                    for (j, &b) in els.iter().enumerate() {
                        mul[i * m + j] = self.position(self.parent.mul(a, b)).expect("closed");
                    }
                }
                let labels = els.iter().map(|&e| self.parent.label(e).to_string()).collect();
                let gens = self
                    .small_generating_set()
                    .into_iter()
                    .map(|g| self.position(g).unwrap())
                    .collect();
                let name = format!("{}[order {}]", self.parent.name(), m);
                Arc::new(FiniteGroup::from_table(name, m, mul, labels, gens).expect("subgroup table is a group"))
            })
            .clone()
    }

    /// Maps a subset of `as_group()` back to parent indices.
    pub fn lift(&self, local: &[u32]) -> Vec<u32> {
        local.iter().map(|&k| self.data.elements[k as usize]).collect()
    }

    /// Maps a subgroup of `as_group()` to a subgroup of the parent.
    pub fn lift_subgroup(&self, local: &Subgroup) -> Subgroup {
        Subgroup::from_closed(&self.parent, self.lift(local.elements()))
    }

    /// Re-expresses a parent subgroup contained in `self` as a subgroup of `as_group()`.
    pub fn localize(&self, sub: &Subgroup) -> Option<Subgroup> {
        let local: Option<Vec<u32>> = sub.elements().iter().map(|&e| self.position(e)).collect();
        local.map(|l| Subgroup::from_closed(&self.as_group(), l))
    }
}

/// Serializable description of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<String>,
}

/// Subgroup lattice data stored in the group cache (no parent references).
#[derive(Debug)]
pub(crate) struct LatticeData {
    subgroups: Vec<Arc<SubgroupData>>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    index: HashMap<Vec<u64>, usize>,
}

/// All subgroups of a group, sorted by order then element list, grouped into
/// conjugacy orbits.
#[derive(Clone)]
pub struct SubgroupLattice {
    parent: GroupRef,
    data: Arc<LatticeData>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.data.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> Subgroup {
        Subgroup::from_data(&self.parent, self.data.subgroups[i].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = Subgroup> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn subgroups(&self) -> Vec<Subgroup> {
        self.iter().collect()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.data.index.get(&h.data.mask).copied()
    }

    /// Canonical subgroup object (sharing the cached `as_group`) for `h`.
    pub fn canonical(&self, h: &Subgroup) -> Option<Subgroup> {
        self.index_of(h).map(|i| self.get(i))
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.data.orbit_of[i]
    }

    /// Conjugacy orbits as lists of lattice indices; the first entry is the representative.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.data.orbits
    }

    pub fn orbit_representatives(&self) -> Vec<Subgroup> {
        self.data.orbits.iter().map(|o| self.get(o[0])).collect()
    }

    pub fn containing(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.iter().filter(|k| h.is_subset_of(k)).collect()
    }

    pub fn contained_in(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.iter().filter(|k| k.is_subset_of(h)).collect()
    }
}

/// Closure of `base` (already a subgroup) together with the extra generators.
fn extend_closure(g: &FiniteGroup, base: &[u32], gens: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut member = vec![false; n];
    let mut out = base.to_vec();
    for &b in base {
        member[b as usize] = true;
    }
    let mut queue: VecDeque<u32> = base.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
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

/// Every subgroup of `g`, found by cyclic extension up to conjugacy.
pub fn all_subgroups(g: &GroupRef, bound: usize) -> Result<SubgroupLattice> {
    if let Some(d) = g.cached_lattice().get() {
        return Ok(SubgroupLattice {
            parent: g.clone(),
            data: d.clone(),
        });
    }
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let data = g.cached_lattice().get_or_init(|| Arc::new(compute_lattice(g))).clone();
    Ok(SubgroupLattice {
        parent: g.clone(),
        data,
    })
}

fn compute_lattice(g: &FiniteGroup) -> LatticeData {
    let n = g.order();
    // one generator per cyclic subgroup
    let mut cyclic_seen = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for x in 0..n as u32 {
        let c = g.closure(&[x]);
        if cyclic_seen.insert(mask_of(n, &c)) {
            cyclic_gens.push(x);
        }
    }
    let mut known: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut orbit_lists: Vec<Vec<usize>> = Vec::new();

    let mut add_orbit = |els: Vec<u32>, known: &mut HashMap<Vec<u64>, usize>, all: &mut Vec<Vec<u32>>| {
        let mut orbit = Vec::new();
        let mask = mask_of(n, &els);
        known.insert(mask, all.len());
        orbit.push(all.len());
        all.push(els.clone());
        for x in 0..n as u32 {
            let mut c: Vec<u32> = els.iter().map(|&h| g.conj(x, h)).collect();
            c.sort_unstable();
            let m = mask_of(n, &c);
            if let std::collections::hash_map::Entry::Vacant(e) = known.entry(m) {
                e.insert(all.len());
                orbit.push(all.len());
                all.push(c);
            }
        }
        orbit_lists.push(orbit);
    };

    add_orbit(vec![0], &mut known, &mut all);
    let mut queue: VecDeque<(Vec<u32>, Vec<u32>)> = VecDeque::from([(vec![0u32], Vec::new())]);
    while let Some((els, gens)) = queue.pop_front() {
        let mask = mask_of(n, &els);
        for &c in &cyclic_gens {
            if mask_has(&mask, c) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(c);
            let t = extend_closure(g, &els, &new_gens);
            if known.contains_key(&mask_of(n, &t)) {
                continue;
            }
            add_orbit(t.clone(), &mut known, &mut all);
            queue.push_back((t, new_gens));
        }
    }

    // canonical order: by order, then element list
    let mut perm: Vec<usize> = (0..all.len()).collect();
    perm.sort_by(|&a, &b| (all[a].len(), &all[a]).cmp(&(all[b].len(), &all[b])));
    let mut new_index = vec![0usize; all.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let subgroups: Vec<Arc<SubgroupData>> = perm
        .iter()
        .map(|&old| Arc::new(SubgroupData::new(n, all[old].clone())))
        .collect();
    let mut orbits: Vec<Vec<usize>> = orbit_lists
        .into_iter()
        .map(|o| {
            let mut v: Vec<usize> = o.into_iter().map(|i| new_index[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    orbits.sort_by_key(|o| o[0]);
    let mut orbit_of = vec![0usize; subgroups.len()];
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let index = subgroups.iter().enumerate().map(|(i, s)| (s.mask.clone(), i)).collect();
    LatticeData {
        subgroups,
        orbit_of,
        orbits,
        index,
    }
}

/// All normal subgroups, as joins of normal closures of conjugacy classes.
pub fn normal_subgroups(g: &GroupRef) -> Vec<Subgroup> {
    let data = g.cached_normals().get_or_init(|| {
        let n = g.order();
        let cd = g.classes();
        let class_closures: Vec<Vec<u32>> = cd.classes().iter().map(|c| g.closure(&c.members)).collect();
        let mut found: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
        let mut queue = VecDeque::new();
        for c in std::iter::once(vec![0u32]).chain(class_closures.iter().cloned()) {
            let m = mask_of(n, &c);
            if let std::collections::hash_map::Entry::Vacant(e) = found.entry(m) {
                e.insert(c.clone());
                queue.push_back(c);
            }
        }
        while let Some(nsub) = queue.pop_front() {
            let mask = mask_of(n, &nsub);
            for k in 0..class_closures.len() {
                if mask_has(&mask, cd.class(k).representative) {
                    continue;
                }
                let t = extend_closure(g, &nsub, &cd.class(k).members);
                let tm = mask_of(n, &t);
                if let std::collections::hash_map::Entry::Vacant(e) = found.entry(tm) {
                    e.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        let mut all: Vec<Vec<u32>> = found.into_values().collect();
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        all.into_iter().map(|els| Arc::new(SubgroupData::new(n, els))).collect()
    });
    data.iter().map(|d| Subgroup::from_data(g, d.clone())).collect()
}
