use serde::Serialize;

use crate::groups::FiniteGroup;

/// A conjugacy class `(g) = {x g x^-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: u32,
    pub members: Vec<u32>,
    pub element_order: u32,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The real class `(g)^+- = (g) u (g^-1)` as a pair of class indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealClass {
    pub class_of_g: usize,
    pub class_of_g_inverse: usize,
}

impl RealClass {
    pub fn is_self_paired(&self) -> bool {
        self.class_of_g == self.class_of_g_inverse
    }

    pub fn classes(&self) -> Vec<usize> {
        if self.is_self_paired() {
            vec![self.class_of_g]
        } else {
            vec![self.class_of_g, self.class_of_g_inverse]
        }
    }
}

/// Conjugacy classes ordered by smallest member index (the identity class first).
#[derive(Debug, Clone)]
pub struct ClassData {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    real_classes: Vec<RealClass>,
    real_class_of: Vec<usize>,
    group_order: usize,
}

impl ClassData {
    pub(crate) fn compute(g: &FiniteGroup) -> ClassData {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n as u32 {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = Vec::new();
            for y in 0..n as u32 {
                let c = g.conj(y, x);
                if class_of[c as usize] == usize::MAX {
                    class_of[c as usize] = idx;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: x,
                members,
                element_order: g.element_order(x),
            });
        }
        let inverse_class: Vec<usize> = classes
            .iter()
            .map(|c| class_of[g.inv(c.representative) as usize])
            .collect();
        let mut real_classes = Vec::new();
        let mut real_class_of = vec![usize::MAX; classes.len()];
        for (i, &j) in inverse_class.iter().enumerate() {
            if real_class_of[i] != usize::MAX {
                continue;
            }
            real_class_of[i] = real_classes.len();
            real_class_of[j] = real_classes.len();
            real_classes.push(RealClass {
                class_of_g: i,
                class_of_g_inverse: j,
            });
        }
        ClassData {
            classes,
            class_of,
            inverse_class,
            real_classes,
            real_class_of,
            group_order: n,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &ConjugacyClass {
        &self.classes[k]
    }

    /// Class index of element `g`.
    pub fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize]
    }

    /// Class index of the inverses of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }

    pub fn size(&self, k: usize) -> usize {
        self.classes[k].size()
    }

    /// `|C_G(g)|` for `g` in class `k`.
    pub fn centralizer_order(&self, k: usize) -> usize {
        self.group_order / self.classes[k].size()
    }

    pub fn element_order(&self, k: usize) -> u32 {
        self.classes[k].element_order
    }

    pub fn real_classes(&self) -> &[RealClass] {
        &self.real_classes
    }

    pub fn real_class_of_class(&self, k: usize) -> usize {
        self.real_class_of[k]
    }

    pub fn real_class_of(&self, g: u32) -> usize {
        self.real_class_of[self.class_of(g)]
    }

    /// Class of `g^e` for `g` in class `k`.
    pub fn power_class(&self, group: &FiniteGroup, k: usize, e: i64) -> usize {
        self.class_of(group.pow(self.classes[k].representative, e))
    }

    /// Members of the real class `(g)^+-` of element `g`.
    pub fn real_class_members(&self, g: u32) -> Vec<u32> {
        let rc = self.real_classes[self.real_class_of(g)];
        let mut out: Vec<u32> = rc
            .classes()
            .into_iter()
            .flat_map(|k| self.classes[k].members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::groups::construct_group;
    use std::collections::BTreeMap;

    fn census(spec: &str) -> BTreeMap<(u32, usize), usize> {
        let g = construct_group(spec).unwrap();
        let cd = g.classes();
        let mut out = BTreeMap::new();
        for c in cd.classes() {
            *out.entry((c.element_order, c.size())).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn cyclic_three() {
        let g = construct_group("cyclic:3").unwrap();
        let cd = g.classes();
        assert_eq!(cd.len(), 3);
        assert!(cd.classes().iter().all(|c| c.size() == 1));
        assert_eq!(cd.real_classes().len(), 2);
        assert_eq!(cd.inverse_class(1), 2);
        assert_eq!(cd.inverse_class(0), 0);
    }

    #[test]
    fn frobenius_seven_three() {
        let c = census("frobenius:7,3");
        let expect = BTreeMap::from([((1, 1), 1), ((7, 3), 2), ((3, 7), 2)]);
        assert_eq!(c, expect);
    }

    #[test]
    fn gpq_seven_three_census() {
        let c = census("gpq:7,3");
        let expect = BTreeMap::from([
            ((1, 1), 1),
            ((2, 21), 1),
            ((7, 6), 1),
            ((3, 7), 2),
            ((3, 14), 2),
            ((3, 2), 1),
            ((6, 21), 2),
            ((21, 6), 2),
        ]);
        assert_eq!(c, expect);
        assert_eq!(c.values().sum::<usize>(), 12);
    }

    #[test]
    fn class_equation_and_centralizers() {
        for spec in [
            "gpq:7,3",
            "dihedral:10",
            "frobenius:13,3",
            "product:cyclic:3xdihedral:3",
        ] {
            let g = construct_group(spec).unwrap();
            let cd = g.classes();
            let total: usize = cd.classes().iter().map(|c| c.size()).sum();
            assert_eq!(total, g.order());
            for (k, c) in cd.classes().iter().enumerate() {
                assert_eq!(g.order() % c.size(), 0);
                // brute-force centralizer of the representative
                let cent = (0..g.order() as u32)
                    .filter(|&x| g.mul(x, c.representative) == g.mul(c.representative, x))
                    .count();
                assert_eq!(cent, cd.centralizer_order(k));
                assert!(c.members.iter().all(|&m| g.element_order(m) == c.element_order));
                let inv = cd.inverse_class(k);
                assert!(cd.class(inv).members.contains(&g.inv(c.representative)));
                assert_eq!(cd.inverse_class(inv), k);
            }
        }
    }
}
