//! Conjugacy classes by conjugation-orbit search, and class arithmetic
//! for direct powers.

use super::{ClassData, EnumBudgetError, PermGroup, Permutation};
use crate::nat::{nat, Nat};
use std::collections::BTreeMap;

/// Complete conjugacy class decomposition of a fully enumerable group.
pub struct Classes {
    pub group_order: Nat,
    /// One representative per class; index = class id. Class 0 is the
    /// identity's.
    pub reps: Vec<Permutation>,
    pub sizes: Vec<u64>,
    /// element rank → class id.
    class_map: Vec<u32>,
}

impl Classes {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn class_of_rank(&self, rank: u64) -> u32 {
        self.class_map[rank as usize]
    }

    pub fn class_of(&self, group: &PermGroup, g: &Permutation) -> Option<u32> {
        group.rank_of(g).map(|r| self.class_of_rank(r))
    }

    /// The arithmetic view consumed by centraliser bounds.
    pub fn class_data(&self) -> ClassData {
        ClassData::new(self.group_order.clone(), self.sizes.iter().map(|&s| nat(s)).collect())
    }

    /// Ranks of every element in the given class.
    pub fn ranks_in_class(&self, class: u32) -> Vec<u64> {
        self.class_map
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(r, _)| r as u64)
            .collect()
    }
}

/// Breadth-first conjugation orbits over the whole (enumerable) group.
pub fn conjugacy_classes(group: &PermGroup, budget: u64) -> Result<Classes, EnumBudgetError> {
    let n = match group.order_u64() {
        Some(n) if n <= budget => n,
        _ => return Err(EnumBudgetError { order: group.order(), budget }),
    };
    const UNSEEN: u32 = u32::MAX;
    let mut class_map = vec![UNSEEN; n as usize];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let gens = group.generators();
    for start in 0..n {
        if class_map[start as usize] != UNSEEN {
            continue;
        }
        let id = reps.len() as u32;
        let x = group.element_at(start);
        class_map[start as usize] = id;
        let mut queue = vec![x.clone()];
        let mut size = 1u64;
        while let Some(y) = queue.pop() {
            for s in gens {
                let z = y.conjugate_by(s);
                let zr = group.rank_of(&z).expect("conjugate stays in the group");
                if class_map[zr as usize] == UNSEEN {
                    class_map[zr as usize] = id;
                    size += 1;
                    queue.push(z);
                }
            }
        }
        reps.push(x);
        sizes.push(size);
    }
    Ok(Classes { group_order: group.order(), reps, sizes, class_map })
}

/// Multiset of class sizes of the r-th direct power: every r-tuple of
/// classes is one class with the product size. Returns (size, multiplicity)
/// pairs, ascending in size.
pub fn product_class_sizes(cd: &ClassData, r: u32) -> Vec<(Nat, u64)> {
    assert!(r >= 1);
    let mut acc: BTreeMap<Nat, u64> = BTreeMap::new();
    acc.insert(Nat::from(1u32), 1);
    for _ in 0..r {
        let mut next: BTreeMap<Nat, u64> = BTreeMap::new();
        for (size, mult) in &acc {
            for factor in &cd.sizes {
                *next.entry(size * factor).or_insert(0) += mult;
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating, mathieu11};

    #[test]
    fn alt5_classes_match_the_textbook_sizes() {
        let a5 = alternating(5);
        let cls = conjugacy_classes(&a5, 1 << 20).unwrap();
        let mut sizes = cls.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert!(cls.class_data().is_complete());
    }

    #[test]
    fn alt6_has_seven_classes() {
        let a6 = alternating(6);
        let cls = conjugacy_classes(&a6, 1 << 20).unwrap();
        let mut sizes = cls.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 40, 40, 45, 72, 72, 90]);
    }

    #[test]
    fn m11_classes_sum_to_the_group_order() {
        let m11 = mathieu11();
        let cls = conjugacy_classes(&m11, 1 << 20).unwrap();
        assert_eq!(cls.num_classes(), 10);
        assert_eq!(cls.sizes.iter().sum::<u64>(), 7920);
        // the smallest nontrivial class (the 2A involutions) has size 165
        let mut nontrivial: Vec<u64> = cls.sizes[1..].to_vec();
        nontrivial.sort();
        assert_eq!(nontrivial[0], 165);
    }

    #[test]
    fn class_map_constant_on_classes_and_respects_conjugation() {
        let a5 = alternating(5);
        let cls = conjugacy_classes(&a5, 1 << 20).unwrap();
        let g = a5.element_at(37);
        let c = cls.class_of(&a5, &g).unwrap();
        for s in a5.generators() {
            assert_eq!(cls.class_of(&a5, &g.conjugate_by(s)), Some(c));
        }
        let in_class = cls.ranks_in_class(c);
        assert_eq!(in_class.len() as u64, cls.sizes[c as usize]);
    }

    #[test]
    fn element_order_counts_match_direct_computation_for_alt7() {
        // number of elements of each order in Alt7, counted two ways
        let a7 = alternating(7);
        let cls = conjugacy_classes(&a7, 1 << 20).unwrap();
        let mut by_order_classes: BTreeMap<u32, u64> = BTreeMap::new();
        for (rep, size) in cls.reps.iter().zip(&cls.sizes) {
            let mut k = 1u32;
            let mut p = rep.clone();
            while !p.is_identity() {
                p = p.compose(rep);
                k += 1;
            }
            *by_order_classes.entry(k).or_insert(0) += size;
        }
        let mut by_order_direct: BTreeMap<u32, u64> = BTreeMap::new();
        for g in a7.enumerate(1 << 20).unwrap() {
            let mut k = 1u32;
            let mut p = g.clone();
            while !p.is_identity() {
                p = p.compose(&g);
                k += 1;
            }
            *by_order_direct.entry(k).or_insert(0) += 1;
        }
        assert_eq!(by_order_classes, by_order_direct);
    }

    #[test]
    fn product_class_sizes_square_and_identity_cases() {
        let a5 = alternating(5);
        let cd = conjugacy_classes(&a5, 1 << 20).unwrap().class_data();
        let r1 = product_class_sizes(&cd, 1);
        assert_eq!(r1.iter().map(|(_, m)| m).sum::<u64>(), 5);
        let r2 = product_class_sizes(&cd, 2);
        let total: Nat = r2.iter().map(|(s, m)| s * Nat::from(*m)).sum();
        assert_eq!(total, Nat::from(3600u32));
        assert_eq!(r2.iter().map(|(_, m)| m).sum::<u64>(), 25);
        // nontrivial product classes: all but the (1,1) pair
        let nontrivial: u64 = r2.iter().filter(|(s, _)| s > &Nat::from(1u32)).map(|(_, m)| m).sum();
        assert_eq!(nontrivial, 24);
    }
}
