use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{derived_subgroup, GroupRef, Subgroup};

/// A homomorphism between table groups, stored as the full image list.
#[derive(Clone)]
pub struct Homomorphism {
    source: GroupRef,
    target: GroupRef,
    images: Vec<u32>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism({} -> {})", self.source.name(), self.target.name())
    }
}

impl Homomorphism {
    /// Builds the map and checks `images[xy] = images[x] images[y]` exhaustively.
    pub fn new(source: &GroupRef, target: &GroupRef, images: Vec<u32>) -> Result<Homomorphism> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism("image list has wrong length".into()));
        }
        if images.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        let n = source.order() as u32;
        for x in 0..n {
            for y in 0..n {
                let lhs = images[source.mul(x, y) as usize];
                let rhs = target.mul(images[x as usize], images[y as usize]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "f({} * {}) differs from f({}) * f({})",
                        source.label(x),
                        source.label(y),
                        source.label(x),
                        source.label(y)
                    )));
                }
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Extends generator images to the whole source, failing if the
    /// assignment does not respect the relations.
    pub fn from_generator_images(
        source: &GroupRef,
        target: &GroupRef,
        gens: &[u32],
        gen_images: &[u32],
    ) -> Result<Homomorphism> {
        if gens.len() != gen_images.len() {
            return Err(Error::NotHomomorphism("generator and image counts differ".into()));
        }
        let images = extend_images(source, target, gens, gen_images)
            .ok_or_else(|| Error::NotHomomorphism("generator images violate a relation".into()))?;
        if images.contains(&u32::MAX) {
            return Err(Error::NotHomomorphism("generators do not generate the source".into()));
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn kernel(&self) -> Subgroup {
        let els = (0..self.source.order() as u32)
            .filter(|&x| self.images[x as usize] == 0)
            .collect();
        Subgroup::from_closed(&self.source, els)
    }

    pub fn image(&self) -> Subgroup {
        let mut els = self.images.clone();
        els.sort_unstable();
        els.dedup();
        Subgroup::from_closed(&self.target, els)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Images of `⟨gens⟩` under the assignment, or `None` on an inconsistency.
/// Elements outside `⟨gens⟩` are left as `u32::MAX`.
fn extend_images(source: &GroupRef, target: &GroupRef, gens: &[u32], gen_images: &[u32]) -> Option<Vec<u32>> {
    let mut images = vec![u32::MAX; source.order()];
    images[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let fx = images[x as usize];
        for (&g, &fg) in gens.iter().zip(gen_images) {
            let y = source.mul(x, g);
            let fy = target.mul(fx, fg);
            match images[y as usize] {
                u32::MAX => {
                    images[y as usize] = fy;
                    queue.push_back(y);
                }
                old if old != fy => return None,
                _ => {}
            }
        }
    }
    Some(images)
}

fn class_profile(g: &GroupRef) -> BTreeMap<(u32, usize), usize> {
    let mut out = BTreeMap::new();
    for c in g.classes().classes() {
        *out.entry((c.element_order, c.size())).or_insert(0) += 1;
    }
    out
}

/// Decides `A ≅ B`, returning an isomorphism `A -> B` when one exists.
pub fn is_isomorphic(a: &GroupRef, b: &GroupRef) -> Option<Homomorphism> {
    if a.order() != b.order() {
        return None;
    }
    if class_profile(a) != class_profile(b) {
        return None;
    }
    if derived_subgroup(a).order() != derived_subgroup(b).order() {
        return None;
    }
    let gens = Subgroup::whole(a).small_generating_set();
    let ca = a.classes();
    let cb = b.classes();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let key = (a.element_order(g), ca.size(ca.class_of(g)));
            (0..b.order() as u32)
                .filter(|&h| (b.element_order(h), cb.size(cb.class_of(h))) == key)
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut chosen)
}

fn search(
    a: &GroupRef,
    b: &GroupRef,
    gens: &[u32],
    candidates: &[Vec<u32>],
    chosen: &mut Vec<u32>,
) -> Option<Homomorphism> {
    let j = chosen.len();
    if j == gens.len() {
        let images = extend_images(a, b, gens, chosen)?;
        let hom = Homomorphism {
            source: a.clone(),
            target: b.clone(),
            images,
        };
        return hom.is_bijective().then_some(hom);
    }
    for &h in &candidates[j] {
        chosen.push(h);
        // partial map on ⟨g_1..g_j⟩ must be a well-defined injection
        if let Some(images) = extend_images(a, b, &gens[..=j], chosen) {
            let mut seen = vec![false; b.order()];
            let injective = images
                .iter()
                .filter(|&&y| y != u32::MAX)
                .all(|&y| !std::mem::replace(&mut seen[y as usize], true));
            if injective {
                if let Some(hom) = search(a, b, gens, candidates, chosen) {
                    return Some(hom);
                }
            }
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct_group;

    #[test]
    fn cyclic_and_klein() {
        let c6 = construct_group("cyclic:6").unwrap();
        let c6b = construct_group("product:cyclic:2xcyclic:3").unwrap();
        let iso = is_isomorphic(&c6, &c6b).unwrap();
        assert!(iso.is_bijective());
        let c4 = construct_group("cyclic:4").unwrap();
        let v4 = construct_group("product:cyclic:2xcyclic:2").unwrap();
        assert!(is_isomorphic(&c4, &v4).is_none());
    }

    #[test]
    fn dihedral_three_is_frobenius_three_two() {
        let d = construct_group("dihedral:3").unwrap();
        let s = construct_group("semidirect:cyclic:3,cyclic:2,pow:2").unwrap();
        assert!(is_isomorphic(&d, &s).is_some());
        let c6 = construct_group("cyclic:6").unwrap();
        assert!(is_isomorphic(&d, &c6).is_none());
    }

    #[test]
    fn homomorphism_validation() {
        let c4 = construct_group("cyclic:4").unwrap();
        let c2 = construct_group("cyclic:2").unwrap();
        let h = Homomorphism::from_generator_images(&c4, &c2, &[1], &[1]).unwrap();
        assert_eq!(h.kernel().order(), 2);
        assert!(h.is_surjective());
        assert!(!h.is_injective());
        // a generator of C_2 cannot map to a generator of C_4
        assert!(Homomorphism::from_generator_images(&c2, &c4, &[1], &[1]).is_err());
        assert!(Homomorphism::new(&c2, &c4, vec![0, 1]).is_err());
        assert!(Homomorphism::new(&c2, &c4, vec![0, 2]).is_ok());
    }
}
