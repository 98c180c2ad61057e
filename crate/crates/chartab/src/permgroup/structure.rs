//! Structural subroutines: normal closure, derived subgroup, Sylow
//! 2-subgroup, simplicity, center and coset actions.

use crate::error::{Error, Result};
use crate::permgroup::classes::ConjugacyClasses;
use crate::permgroup::group::{ElementTable, PermGroup};
use crate::permgroup::perm::Permutation;

/// Smallest normal subgroup of `group` containing `seed`.
pub fn normal_closure(group: &PermGroup, seed: &[Permutation]) -> Result<PermGroup> {
    for s in seed {
        if !group.contains(s) {
            return Err(Error::NotAMember);
        }
    }
    let mut gens: Vec<Permutation> = seed.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut closure = PermGroup::from_generators(group.degree(), gens.clone())?;
    loop {
        let mut added = false;
        for g in group.generators() {
            for s in gens.clone() {
                let conj = s.conjugated_by(g);
                if !closure.contains(&conj) {
                    gens.push(conj);
                    closure = PermGroup::from_generators(group.degree(), gens.clone())?;
                    added = true;
                }
            }
        }
        if !added {
            return Ok(closure);
        }
    }
}

/// Normal closure of the commutators of the generator pairs.
pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens = group.generators();
    let mut commutators = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.inverse().then(&b.inverse()).then(a).then(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure(group, &commutators)
}

/// Repeated derived subgroups reach the trivial group exactly for solvable
/// groups.
pub fn is_solvable(group: &PermGroup) -> Result<bool> {
    let mut current = derived_subgroup(group)?;
    let mut order = current.order();
    if order == group.order() {
        return Ok(order == 1);
    }
    loop {
        if order == 1 {
            return Ok(true);
        }
        let next = derived_subgroup(&current)?;
        if next.order() == order {
            return Ok(false);
        }
        order = next.order();
        current = next;
    }
}

/// True when every nonidentity class generates the whole group as a normal
/// subgroup.
pub fn is_simple(group: &PermGroup, classes: &ConjugacyClasses) -> Result<bool> {
    if group.order() <= 1 {
        return Err(Error::TrivialGroup);
    }
    for i in 1..classes.count() {
        let closure = normal_closure(group, &[classes.class(i).representative.clone()])?;
        if closure.order() != group.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub struct Sylow2 {
    pub subgroup: PermGroup,
    pub is_normal: bool,
    pub is_abelian: bool,
}

fn two_part(mut n: u64) -> u64 {
    let mut t = 1;
    while n % 2 == 0 {
        t *= 2;
        n /= 2;
    }
    t
}

/// Sylow 2-subgroup by greedy normalizer extension.
///
/// Starts from a cyclic 2-subgroup of maximal order and repeatedly adjoins a
/// 2-element of the normalizer outside the current subgroup; a 2-subgroup
/// below full 2-power order always has one.
pub fn sylow_2(group: &PermGroup, elements: &ElementTable) -> Sylow2 {
    let order = elements.count() as u64;
    let target = two_part(order);
    let degree = group.degree();

    let finish = |subgroup: PermGroup| {
        let is_normal = group.generators().iter().all(|g| {
            subgroup
                .generators()
                .iter()
                .all(|s| subgroup.contains(&s.conjugated_by(g)))
        });
        let is_abelian = subgroup.is_abelian();
        Sylow2 {
            subgroup,
            is_normal,
            is_abelian,
        }
    };

    if target == 1 {
        return finish(PermGroup::trivial(degree));
    }

    let orders: Vec<u64> = (0..elements.count())
        .map(|i| elements.permutation(i).order())
        .collect();

    // Seed: first element whose order has the largest 2-part, raised to its
    // odd part.
    let mut best = (0, 0usize);
    for (i, &o) in orders.iter().enumerate() {
        let t = two_part(o);
        if t > best.0 {
            best = (t, i);
        }
    }
    let seed_element = elements.permutation(best.1);
    let odd = orders[best.1] / best.0;
    let mut gens = vec![seed_element.power(odd)];
    let mut subgroup =
        PermGroup::from_generators(degree, gens.clone()).expect("generators share the degree");

    while subgroup.order() < target as u128 {
        let mut extended = false;
        for i in 0..elements.count() {
            if !orders[i].is_power_of_two() || orders[i] == 1 {
                continue;
            }
            let y = elements.permutation(i);
            if subgroup.contains(&y) {
                continue;
            }
            let normalizes = subgroup
                .generators()
                .iter()
                .all(|s| subgroup.contains(&s.conjugated_by(&y)));
            if normalizes {
                gens.push(y);
                subgroup = PermGroup::from_generators(degree, gens.clone())
                    .expect("generators share the degree");
                extended = true;
                break;
            }
        }
        assert!(extended, "a proper 2-subgroup extends inside its normalizer");
    }
    finish(subgroup)
}

/// Elements whose conjugacy class is a singleton.
pub fn center(group: &PermGroup, classes: &ConjugacyClasses) -> PermGroup {
    let gens: Vec<Permutation> = classes
        .classes()
        .iter()
        .filter(|c| c.size == 1 && c.element_order > 1)
        .map(|c| c.representative.clone())
        .collect();
    PermGroup::from_generators(group.degree(), gens).expect("generators share the degree")
}

/// Action of `group` on the right cosets of `subgroup`, as a permutation
/// group on the coset indices.
pub fn coset_action(
    group: &PermGroup,
    elements: &ElementTable,
    subgroup: &PermGroup,
    cap: u64,
) -> Result<PermGroup> {
    let sub_elements = subgroup.elements(cap)?;
    let count = elements.count();
    const UNASSIGNED: u32 = u32::MAX;
    let mut coset_of = vec![UNASSIGNED; count];
    let mut reps: Vec<usize> = Vec::new();
    for idx in 0..count {
        if coset_of[idx] != UNASSIGNED {
            continue;
        }
        let coset = reps.len() as u32;
        reps.push(idx);
        let x = elements.permutation(idx);
        for h in 0..sub_elements.count() {
            let hx = sub_elements.permutation(h).then(&x);
            let target = elements
                .index_of_perm(&hx)
                .ok_or(Error::Internal("coset member escaped the group".into()))?;
            coset_of[target] = coset;
        }
    }
    let mut gens = Vec::new();
    for g in group.generators() {
        let images: Vec<u16> = reps
            .iter()
            .map(|&r| {
                let moved = elements.permutation(r).then(g);
                let idx = elements
                    .index_of_perm(&moved)
                    .expect("group is closed under multiplication");
                coset_of[idx] as u16
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::from_generators(reps.len().max(1), gens)
}
