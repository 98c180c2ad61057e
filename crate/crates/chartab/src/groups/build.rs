//! Constructors for the catalog groups, as permutation groups with labels.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groups::field::FiniteField;
use crate::permgroup::{PermGroup, Permutation};

/// A constructed group with its canonical label and construction-level tags.
pub struct GroupSpecResult {
    pub group: PermGroup,
    pub label: String,
    /// Known from the construction, e.g. "psl2", "frobenius-c2", "solvable".
    pub family_tags: BTreeSet<String>,
}

impl GroupSpecResult {
    pub fn solvable(&self) -> bool {
        self.family_tags.contains("solvable")
    }
}

fn tags(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn expect_order(group: PermGroup, expected: u128, what: &str) -> Result<PermGroup> {
    if group.order() != expected {
        return Err(Error::Internal(format!(
            "{what}: built order {} but expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

/// PSL(2,q) acting on the projective line: points `[1:x]` for `x` in field
/// order, then `[0:1]` last.
pub fn build_psl2(q: u64) -> Result<GroupSpecResult> {
    let field = FiniteField::new(q)?;
    let degree = (q + 1) as usize;
    let infinity = q as u16;
    // action of [[a,b],[c,d]] on column vectors (u, v)
    let act = |m: [u64; 4]| -> Permutation {
        let images: Vec<u16> = (0..=q)
            .map(|point| {
                let (u, v) = if point == q { (0, 1) } else { (1, point) };
                let nu = field.add(field.mul(m[0], u), field.mul(m[1], v));
                let nv = field.add(field.mul(m[2], u), field.mul(m[3], v));
                if nu == 0 {
                    infinity
                } else {
                    field.mul(nv, field.inv(nu)) as u16
                }
            })
            .collect();
        Permutation::from_images(images).expect("projective maps are bijections")
    };
    let mut gens = Vec::new();
    // upper unitriangular matrices for an additive basis of the field
    let mut basis_element = 1u64;
    for _ in 0..field.degree() {
        gens.push(act([1, basis_element, 0, 1]));
        basis_element *= field.characteristic();
    }
    let minus_one = field.neg(1);
    gens.push(act([0, 1, minus_one, 0]));
    let group = PermGroup::from_generators(degree, gens)?;
    let expected = (q * (q * q - 1) / if q % 2 == 0 { 1 } else { 2 }) as u128;
    let group = expect_order(group, expected, "PSL(2,q)")?;
    debug_assert!(group.is_transitive());
    let mut t = tags(&["psl2"]);
    if q <= 3 {
        t.insert("solvable".into());
    } else {
        t.insert("nonsolvable".into());
        t.insert("simple".into());
    }
    Ok(GroupSpecResult {
        group,
        label: format!("PSL(2,{q})"),
        family_tags: t,
    })
}

/// SL(2,q) acting on the q^2 - 1 nonzero vectors.
pub fn build_sl2(q: u64) -> Result<GroupSpecResult> {
    let field = FiniteField::new(q)?;
    let degree = (q * q - 1) as usize;
    let index = |u: u64, v: u64| -> u16 { (u * q + v - 1) as u16 };
    let act = |m: [u64; 4]| -> Permutation {
        let mut images = vec![0u16; degree];
        for u in 0..q {
            for v in 0..q {
                if u == 0 && v == 0 {
                    continue;
                }
                let nu = field.add(field.mul(m[0], u), field.mul(m[1], v));
                let nv = field.add(field.mul(m[2], u), field.mul(m[3], v));
                images[index(u, v) as usize] = index(nu, nv);
            }
        }
        Permutation::from_images(images).expect("invertible matrices act bijectively")
    };
    let mut gens = Vec::new();
    let mut basis_element = 1u64;
    for _ in 0..field.degree() {
        gens.push(act([1, basis_element, 0, 1]));
        basis_element *= field.characteristic();
    }
    gens.push(act([0, 1, field.neg(1), 0]));
    let group = PermGroup::from_generators(degree, gens)?;
    let group = expect_order(group, (q * (q * q - 1)) as u128, "SL(2,q)")?;
    let mut t = tags(&["sl2"]);
    if q <= 3 {
        t.insert("solvable".into());
    } else {
        t.insert("nonsolvable".into());
    }
    Ok(GroupSpecResult {
        group,
        label: format!("SL(2,{q})"),
        family_tags: t,
    })
}

pub fn build_alternating(n: u64) -> Result<GroupSpecResult> {
    if n == 0 {
        return Err(Error::Domain("alternating groups need n >= 1".into()));
    }
    let degree = n as usize;
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Permutation::from_cycles(degree, &[vec![0, 1, 2]])?);
        let big: Vec<u16> = if n % 2 == 1 {
            (0..n as u16).collect()
        } else {
            (1..n as u16).collect()
        };
        gens.push(Permutation::from_cycles(degree, &[big])?);
    }
    let expected = if n >= 2 { factorial(n) / 2 } else { 1 };
    let group = expect_order(PermGroup::from_generators(degree, gens)?, expected, "A(n)")?;
    let mut t = tags(&["alternating"]);
    if n <= 4 {
        t.insert("solvable".into());
    } else {
        t.insert("nonsolvable".into());
        t.insert("simple".into());
    }
    Ok(GroupSpecResult {
        group,
        label: format!("A({n})"),
        family_tags: t,
    })
}

pub fn build_symmetric(n: u64) -> Result<GroupSpecResult> {
    if n == 0 {
        return Err(Error::Domain("symmetric groups need n >= 1".into()));
    }
    let degree = n as usize;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(degree, &[vec![0, 1]])?);
        gens.push(Permutation::from_cycles(degree, &[(0..n as u16).collect()])?);
    }
    let group = expect_order(PermGroup::from_generators(degree, gens)?, factorial(n), "S(n)")?;
    let mut t = tags(&["symmetric"]);
    t.insert(if n <= 4 { "solvable" } else { "nonsolvable" }.into());
    Ok(GroupSpecResult {
        group,
        label: format!("S({n})"),
        family_tags: t,
    })
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

pub fn build_cyclic(n: u64) -> Result<GroupSpecResult> {
    if n == 0 {
        return Err(Error::Domain("cyclic groups need n >= 1".into()));
    }
    let degree = n as usize;
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(degree, &[(0..n as u16).collect()])?]
    } else {
        vec![]
    };
    let group = expect_order(PermGroup::from_generators(degree, gens)?, n as u128, "C(n)")?;
    Ok(GroupSpecResult {
        group,
        label: format!("C({n})"),
        family_tags: tags(&["cyclic", "solvable"]),
    })
}

/// Dihedral group of the given order `n = 2m`, acting on the m-gon.
pub fn build_dihedral(n: u64) -> Result<GroupSpecResult> {
    if n < 6 || n % 2 != 0 {
        return Err(Error::Domain(format!(
            "dihedral constructor needs an even order of at least 6, got {n}"
        )));
    }
    let m = n / 2;
    let degree = m as usize;
    let rotation = Permutation::from_cycles(degree, &[(0..m as u16).collect()])?;
    let reflection = Permutation::from_images(
        (0..m as u16).map(|i| ((m as u16) - i) % m as u16).collect(),
    )?;
    let group = expect_order(
        PermGroup::from_generators(degree, vec![rotation, reflection])?,
        n as u128,
        "D(n)",
    )?;
    Ok(GroupSpecResult {
        group,
        label: format!("D({n})"),
        family_tags: tags(&["dihedral", "solvable"]),
    })
}

/// Frobenius group with a complement of order 2: the abelian group with the
/// given odd invariant factors, inverted by an involution. Acts on the
/// disjoint union of one cycle per factor.
pub fn build_frobenius_c2(invariants: &[u64]) -> Result<GroupSpecResult> {
    if invariants.is_empty() {
        return Err(Error::Domain("at least one invariant factor is needed".into()));
    }
    for &m in invariants {
        if m < 3 || m % 2 == 0 {
            return Err(Error::Domain(format!(
                "invariant factors must be odd and at least 3, got {m}"
            )));
        }
    }
    let degree: usize = invariants.iter().map(|&m| m as usize).sum();
    let mut gens = Vec::new();
    let mut offset = 0u16;
    let mut inversion: Vec<u16> = (0..degree as u16).collect();
    for &m in invariants {
        let block: Vec<u16> = (offset..offset + m as u16).collect();
        gens.push(Permutation::from_cycles(degree, &[block])?);
        for i in 0..m as u16 {
            inversion[(offset + i) as usize] = offset + (m as u16 - i) % m as u16;
        }
        offset += m as u16;
    }
    gens.push(Permutation::from_images(inversion)?);
    let kernel_order: u128 = invariants.iter().map(|&m| m as u128).product();
    // The blockwise action is faithful for odd factors; the order check
    // guards the construction.
    let group = expect_order(
        PermGroup::from_generators(degree, gens)?,
        2 * kernel_order,
        "Frob",
    )?;
    let label = format!(
        "Frob({})",
        invariants
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(GroupSpecResult {
        group,
        label,
        family_tags: tags(&["frobenius-c2", "solvable"]),
    })
}

/// The quaternion group in its regular action.
pub fn build_q8() -> Result<GroupSpecResult> {
    let i = Permutation::from_cycles(8, &[vec![0, 1, 2, 3], vec![4, 7, 6, 5]])?;
    let j = Permutation::from_cycles(8, &[vec![0, 4, 2, 6], vec![1, 5, 3, 7]])?;
    let group = expect_order(PermGroup::from_generators(8, vec![i, j])?, 8, "Q8")?;
    Ok(GroupSpecResult {
        group,
        label: "Q8".into(),
        family_tags: tags(&["named", "solvable"]),
    })
}

/// The semidihedral group of order 16: an 8-cycle r and the involution
/// x -> 3x, which conjugates r to r^3.
pub fn build_sd16() -> Result<GroupSpecResult> {
    let r = Permutation::from_cycles(8, &[(0..8).collect()])?;
    let s = Permutation::from_images((0..8u16).map(|i| (3 * i) % 8).collect())?;
    let group = expect_order(PermGroup::from_generators(8, vec![r, s])?, 16, "SD16")?;
    Ok(GroupSpecResult {
        group,
        label: "SD16".into(),
        family_tags: tags(&["named", "solvable"]),
    })
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: GroupSpecResult, b: GroupSpecResult) -> Result<GroupSpecResult> {
    let da = a.group.degree();
    let db = b.group.degree();
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.group.generators() {
        let mut images: Vec<u16> = g.images().to_vec();
        images.extend((da as u16..degree as u16).collect::<Vec<u16>>());
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.group.generators() {
        let mut images: Vec<u16> = (0..da as u16).collect();
        images.extend(g.images().iter().map(|&x| x + da as u16));
        gens.push(Permutation::from_images(images)?);
    }
    let expected = a.group.order().checked_mul(b.group.order()).ok_or(Error::OrderOverflow)?;
    let group = expect_order(PermGroup::from_generators(degree, gens)?, expected, "product")?;
    let mut t = tags(&["product"]);
    if a.solvable() && b.solvable() {
        t.insert("solvable".into());
    } else {
        t.insert("nonsolvable".into());
    }
    Ok(GroupSpecResult {
        group,
        label: format!("{} x {}", a.label, b.label),
        family_tags: t,
    })
}
