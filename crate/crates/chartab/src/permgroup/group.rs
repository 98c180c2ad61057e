//! Permutation groups with a base and strong generating set.
//!
//! The chain is built with a deterministic Schreier-Sims: no randomization,
//! fixed generator order, so the base, transversals and element enumeration
//! order are reproducible for a fixed input.

use crate::error::{Error, Result};
use crate::permgroup::perm::Permutation;

/// Default cap on full element enumeration.
pub const ENUMERATION_CAP: u64 = 2_000_000;

struct Level {
    base_point: u16,
    /// Indices into the strong generator list of the generators fixing all
    /// earlier base points.
    gen_indices: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    /// Orbit of the base point in discovery order; `orbit[0]` is the base.
    orbit: Vec<u16>,
}

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong_gens: Vec<Permutation>,
    chain: Vec<Level>,
    order: u128,
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let strong_gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut group = PermGroup {
            degree,
            generators,
            strong_gens,
            chain: Vec::new(),
            order: 1,
        };
        group.schreier_sims()?;
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_generators(degree, Vec::new()).expect("degree >= 1")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<u16> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(0, g.clone());
        residue.is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if a.then(b) != b.then(a) {
                    return false;
                }
            }
        }
        true
    }

    fn sift_from(&self, start: usize, mut g: Permutation) -> (Permutation, usize) {
        for (j, level) in self.chain.iter().enumerate().skip(start) {
            let pt = g.apply(level.base_point) as usize;
            match &level.transversal[pt] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, j),
            }
        }
        (g, self.chain.len())
    }

    fn rebuild_levels(&mut self) {
        for i in 0..self.chain.len() {
            // A strong generator belongs to every level whose earlier base
            // points it fixes.
            let base_prefix: Vec<u16> = self.chain[..i].iter().map(|l| l.base_point).collect();
            let gen_indices: Vec<usize> = self
                .strong_gens
                .iter()
                .enumerate()
                .filter(|(_, g)| base_prefix.iter().all(|&b| g.apply(b) == b))
                .map(|(idx, _)| idx)
                .collect();
            let level = &mut self.chain[i];
            level.gen_indices = gen_indices;
            let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
            let mut orbit = vec![level.base_point];
            transversal[level.base_point as usize] = Some(Permutation::identity(self.degree));
            let mut head = 0;
            while head < orbit.len() {
                let pt = orbit[head];
                head += 1;
                for &gi in &level.gen_indices {
                    let g = &self.strong_gens[gi];
                    let img = g.apply(pt);
                    if transversal[img as usize].is_none() {
                        let u = transversal[pt as usize]
                            .as_ref()
                            .expect("orbit point has a transversal element")
                            .then(g);
                        transversal[img as usize] = Some(u);
                        orbit.push(img);
                    }
                }
            }
            level.transversal = transversal;
            level.orbit = orbit;
        }
    }

    fn push_level_for(&mut self, g: &Permutation) {
        let base_point = (0..self.degree as u16)
            .find(|&p| g.apply(p) != p)
            .expect("non-identity permutation moves a point");
        self.chain.push(Level {
            base_point,
            gen_indices: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        });
    }

    fn schreier_sims(&mut self) -> Result<()> {
        if !self.strong_gens.is_empty() && self.chain.is_empty() {
            let first = self.strong_gens[0].clone();
            self.push_level_for(&first);
        }
        loop {
            self.rebuild_levels();
            let mut added = false;
            'levels: for i in 0..self.chain.len() {
                let orbit = self.chain[i].orbit.clone();
                let gen_indices = self.chain[i].gen_indices.clone();
                for &pt in &orbit {
                    for &gi in &gen_indices {
                        let s = self.strong_gens[gi].clone();
                        let u = self.chain[i].transversal[pt as usize]
                            .as_ref()
                            .expect("orbit point has a transversal element")
                            .clone();
                        let h = u.then(&s);
                        let target = h.apply(self.chain[i].base_point) as usize;
                        let u_target = self.chain[i].transversal[target]
                            .as_ref()
                            .expect("orbit is closed under generators")
                            .clone();
                        let schreier = h.then(&u_target.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (residue, j) = self.sift_from(i + 1, schreier);
                        if !residue.is_identity() {
                            if j == self.chain.len() {
                                self.push_level_for(&residue);
                            }
                            self.strong_gens.push(residue);
                            added = true;
                            break 'levels;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut order: u128 = 1;
        for level in &self.chain {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)?;
        }
        self.order = order;
        Ok(())
    }

    /// Orbit of a point under the whole group.
    pub fn orbit_of(&self, point: u16) -> Vec<u16> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply(pt);
                if !seen[img as usize] {
                    seen[img as usize] = true;
                    orbit.push(img);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_of(0).len() == self.degree
    }

    /// Enumerates all elements, index 0 being the identity.
    ///
    /// Elements are the products `h * u` along the stabilizer chain, walked in
    /// transversal discovery order, which is deterministic for a fixed input.
    pub fn elements(&self, cap: u64) -> Result<ElementTable> {
        if self.order > cap as u128 {
            return Err(Error::CapacityExceeded {
                order: self.order,
                cap,
            });
        }
        let count = self.order as usize;
        let degree = self.degree;
        // Walk the chain bottom-up: L_i = { h * u : u in transversal_i,
        // h in L_{i+1} }, with the identity transversal element first so the
        // identity ends up at index 0.
        let mut flat: Vec<u16> = (0..degree as u16).collect();
        for level in self.chain.iter().rev() {
            let prev_count = flat.len() / degree;
            let mut next = Vec::with_capacity(prev_count * level.orbit.len() * degree);
            for &pt in &level.orbit {
                let u = level.transversal[pt as usize]
                    .as_ref()
                    .expect("orbit point has a transversal element");
                let u_images = u.images();
                for h in 0..prev_count {
                    let row = &flat[h * degree..(h + 1) * degree];
                    for &x in row {
                        next.push(u_images[x as usize]);
                    }
                }
            }
            flat = next;
        }
        debug_assert_eq!(flat.len(), count * degree);
        let mut sorted: Vec<u32> = (0..count as u32).collect();
        let packed = if degree <= PACKED_DEGREE_LIMIT {
            let keys: Vec<u128> = (0..count)
                .map(|i| pack_images(&flat[i * degree..(i + 1) * degree]))
                .collect();
            sorted.sort_unstable_by_key(|&a| keys[a as usize]);
            Some(sorted.iter().map(|&a| keys[a as usize]).collect())
        } else {
            sorted.sort_unstable_by(|&a, &b| {
                let ra = &flat[a as usize * degree..(a as usize + 1) * degree];
                let rb = &flat[b as usize * degree..(b as usize + 1) * degree];
                ra.cmp(rb)
            });
            None
        };
        Ok(ElementTable {
            degree,
            count,
            flat,
            sorted,
            packed,
        })
    }
}

/// Image arrays of degree up to 16 fit one u128 key, byte per point, with
/// the key order matching the lexicographic row order.
const PACKED_DEGREE_LIMIT: usize = 16;

fn pack_images(images: &[u16]) -> u128 {
    let mut key = 0u128;
    for &img in images {
        key = (key << 8) | img as u128;
    }
    key << (8 * (PACKED_DEGREE_LIMIT - images.len()))
}

/// Flat table of all elements of an enumerable group.
pub struct ElementTable {
    degree: usize,
    count: usize,
    flat: Vec<u16>,
    sorted: Vec<u32>,
    /// Packed keys aligned with `sorted`, for degrees up to 16.
    packed: Option<Vec<u128>>,
}

impl ElementTable {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn row(&self, index: usize) -> &[u16] {
        &self.flat[index * self.degree..(index + 1) * self.degree]
    }

    pub fn permutation(&self, index: usize) -> Permutation {
        Permutation::from_images(self.row(index).to_vec()).expect("table rows are bijections")
    }

    /// Index of the element with the given image array, if present.
    pub fn index_of(&self, images: &[u16]) -> Option<usize> {
        if images.len() != self.degree {
            return None;
        }
        if let Some(packed) = &self.packed {
            let key = pack_images(images);
            return packed
                .binary_search(&key)
                .ok()
                .map(|pos| self.sorted[pos] as usize);
        }
        self.sorted
            .binary_search_by(|&idx| self.row(idx as usize).cmp(images))
            .ok()
            .map(|pos| self.sorted[pos] as usize)
    }

    pub fn index_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.index_of(p.images())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> {
        (0..self.count).map(move |i| self.row(i))
    }
}
