//! Permutations of `{0..degree-1}`, stored as image arrays.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `0..degree-1`.
///
/// `images[i]` is the image of point `i`. Products compose left to right:
/// `(a * b)(x) = b(a(x))`, so points are acted on from the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from an image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let degree = images.len();
        if degree > u16::MAX as usize {
            return Err(Error::MalformedPermutation(format!(
                "degree {degree} exceeds the supported maximum of {}",
                u16::MAX
            )));
        }
        let mut seen = vec![false; degree];
        for &img in &images {
            let img = img as usize;
            if img >= degree {
                return Err(Error::MalformedPermutation(format!(
                    "image {img} out of range for degree {degree}"
                )));
            }
            if seen[img] {
                return Err(Error::MalformedPermutation(format!(
                    "image {img} appears twice"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-based points. Cycles must not share points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                let pt = pt as usize;
                if pt >= degree {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if moved[pt] {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} appears in more than one cycle"
                    )));
                }
                moved[pt] = true;
                images[pt] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u16 == img)
    }

    /// `self * other` in left-to-right order: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&img| other.images[img as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Conjugate `g^-1 * self * g`.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), g.degree());
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[img as usize];
        }
        Permutation { images }
    }

    pub fn power(&self, exponent: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// Order as an element: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut order: u128 = 1;
        for cycle in self.cycles_with_fixed(false) {
            let len = cycle.len() as u128;
            order = num_integer::lcm(order, len);
        }
        debug_assert!(order <= u64::MAX as u128);
        order as u64
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i as u16 == img)
            .count()
    }

    /// Number of 2-cycles in the disjoint cycle decomposition.
    pub fn two_cycles(&self) -> usize {
        self.cycles_with_fixed(false)
            .iter()
            .filter(|c| c.len() == 2)
            .count()
    }

    /// Disjoint cycles, each rotated to start at its least point, ordered by
    /// least point. Fixed points are included only when `with_fixed` is set.
    pub fn cycles_with_fixed(&self, with_fixed: bool) -> Vec<Vec<u16>> {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 0..degree {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u16];
            seen[start] = true;
            let mut pt = self.images[start] as usize;
            while pt != start {
                seen[pt] = true;
                cycle.push(pt as u16);
                pt = self.images[pt] as usize;
            }
            if cycle.len() > 1 || with_fixed {
                cycles.push(cycle);
            }
        }
        cycles
    }

    pub fn cycles(&self) -> Vec<Vec<u16>> {
        self.cycles_with_fixed(false)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = perm(&[1, 0, 2]); // (1,2) in 1-based notation
        let b = perm(&[1, 2, 0]); // (1,2,3)
        let ab = a.then(&b);
        // x=0: a sends 0->1, b sends 1->2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab, perm(&[2, 1, 0]));
    }

    #[test]
    fn identity_laws_and_inverse() {
        let a = perm(&[2, 0, 1, 4, 3]);
        let id = Permutation::identity(5);
        assert_eq!(a.then(&id), a);
        assert_eq!(id.then(&a), a);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn conjugation_matches_product() {
        let a = perm(&[1, 0, 3, 2, 4]);
        let g = perm(&[4, 2, 0, 1, 3]);
        let direct = g.inverse().then(&a).then(&g);
        assert_eq!(a.conjugated_by(&g), direct);
    }

    #[test]
    fn order_and_cycle_structure() {
        let a = Permutation::from_cycles(7, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.fixed_points(), 2);
        assert_eq!(a.two_cycles(), 1);
        assert_eq!(a.power(6), Permutation::identity(7));
        assert_eq!(a.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn from_cycles_rejects_overlap() {
        assert!(Permutation::from_cycles(5, &[vec![0, 1], vec![1, 2]]).is_err());
    }
}
