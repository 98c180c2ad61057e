//! Conjugacy classes of an enumerable permutation group.
//!
//! Classes are computed by exhaustive orbit partition under conjugation by
//! the group generators, then sorted into the canonical order
//! (element order, class size, lexicographically least member).

use crate::error::Result;
use crate::permgroup::group::{ElementTable, PermGroup};
use crate::permgroup::perm::Permutation;

pub struct ClassData {
    /// Lexicographically least member of the class.
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

pub struct ConjugacyClasses {
    elements: ElementTable,
    /// Class index of each enumerated element.
    class_of: Vec<u32>,
    classes: Vec<ClassData>,
    /// Element indices of each class, ascending.
    members: Vec<Vec<u32>>,
    /// Class of the inverse of each class representative.
    inverse_class: Vec<usize>,
    group_order: u64,
    exponent: u64,
}

impl ConjugacyClasses {
    pub fn compute(group: &PermGroup, cap: u64) -> Result<Self> {
        let elements = group.elements(cap)?;
        let degree = elements.degree();
        let count = elements.count();
        const UNASSIGNED: u32 = u32::MAX;
        let mut class_of = vec![UNASSIGNED; count];
        let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
        let gen_images: Vec<&[u16]> = gens.iter().map(|g| g.images()).collect();

        let mut raw_members: Vec<Vec<u32>> = Vec::new();
        let mut scratch = vec![0u16; degree];
        for start in 0..count {
            if class_of[start] != UNASSIGNED {
                continue;
            }
            let class_index = raw_members.len() as u32;
            class_of[start] = class_index;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let idx = members[head] as usize;
                head += 1;
                let row = elements.row(idx);
                for g in &gen_images {
                    // scratch = g^-1 * row * g
                    for i in 0..degree {
                        scratch[g[i] as usize] = g[row[i] as usize];
                    }
                    let target = elements
                        .index_of(&scratch)
                        .expect("conjugate of a member stays in the group");
                    if class_of[target] == UNASSIGNED {
                        class_of[target] = class_index;
                        members.push(target as u32);
                    }
                }
            }
            members.sort_unstable();
            raw_members.push(members);
        }

        // Canonical order: (element order, size, least member).
        let mut keyed: Vec<(u64, u64, usize, usize)> = raw_members
            .iter()
            .enumerate()
            .map(|(ci, members)| {
                let least = members
                    .iter()
                    .map(|&m| m as usize)
                    .min_by(|&a, &b| elements.row(a).cmp(elements.row(b)))
                    .expect("class is nonempty");
                let order = elements.permutation(least).order();
                (order, members.len() as u64, least, ci)
            })
            .collect();
        keyed.sort_unstable_by(|a, b| {
            (a.0, a.1, elements.row(a.2)).cmp(&(b.0, b.1, elements.row(b.2)))
        });

        let mut relabel = vec![0u32; raw_members.len()];
        let mut classes = Vec::with_capacity(raw_members.len());
        let mut members = Vec::with_capacity(raw_members.len());
        for (new_index, &(order, size, least, old_index)) in keyed.iter().enumerate() {
            relabel[old_index] = new_index as u32;
            classes.push(ClassData {
                representative: elements.permutation(least),
                size,
                element_order: order,
            });
            members.push(std::mem::take(&mut raw_members[old_index]));
        }
        for c in class_of.iter_mut() {
            *c = relabel[*c as usize];
        }

        let exponent = classes
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.element_order));
        let inverse_class = classes
            .iter()
            .map(|c| {
                let inv = c.representative.inverse();
                let idx = elements
                    .index_of_perm(&inv)
                    .expect("inverse of a member stays in the group");
                class_of[idx] as usize
            })
            .collect();

        let result = ConjugacyClasses {
            elements,
            class_of,
            classes,
            members,
            inverse_class,
            group_order: count as u64,
            exponent,
        };
        debug_assert_eq!(result.classes[0].element_order, 1);
        debug_assert_eq!(result.classes[0].size, 1);
        Ok(result)
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn class(&self, index: usize) -> &ClassData {
        &self.classes[index]
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn elements(&self) -> &ElementTable {
        &self.elements
    }

    /// Element indices belonging to a class.
    pub fn members(&self, index: usize) -> &[u32] {
        &self.members[index]
    }

    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }

    pub fn class_of(&self, p: &Permutation) -> Option<usize> {
        self.elements
            .index_of_perm(p)
            .map(|i| self.class_of[i] as usize)
    }

    pub fn inverse_class(&self, index: usize) -> usize {
        self.inverse_class[index]
    }

    /// Class of the `exponent`-th power of the representative of class `index`.
    pub fn power_map(&self, index: usize, exponent: u64) -> usize {
        let order = self.classes[index].element_order;
        let e = exponent % order;
        let p = self.classes[index].representative.power(e);
        self.class_of(&p).expect("powers of a member stay in the group")
    }
}
