//! Exact character tables by the class-matrix method: simultaneous
//! diagonalization of the class-multiplication matrices over a prime field,
//! then an exact lift of the eigenvector data to cyclotomic integers.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::cyclo::{Cyclotomic, PowerTable};
use crate::error::{Error, Result};
use crate::permgroup::{ConjugacyClasses, PermGroup};

/// Structure constants of the class algebra for one class.
pub struct ClassMatrix {
    pub class_index: usize,
    /// `entries[j][l]` counts pairs `(x, y)` with `x` in class `i`, `y` in
    /// class `j` and `x * y` equal to the fixed representative of class `l`.
    pub entries: Vec<Vec<u64>>,
}

/// Computes the structure constants `a(i, j, l)` for class `i`.
///
/// For one fixed representative `z` of each class `l`, every `x` in class
/// `i` contributes the pair `(x, x^-1 z)`; streaming over the members keeps
/// this at `O(k |C_i|)` products without materializing product tables.
pub fn class_matrix(classes: &ConjugacyClasses, i: usize) -> ClassMatrix {
    let k = classes.count();
    let elements = classes.elements();
    let degree = elements.degree();
    let reps: Vec<Vec<u16>> = (0..k)
        .map(|l| classes.class(l).representative.images().to_vec())
        .collect();
    let mut entries = vec![vec![0u64; k]; k];
    let mut inv = vec![0u16; degree];
    let mut product = vec![0u16; degree];
    for &x_idx in classes.members(i) {
        let x = elements.row(x_idx as usize);
        for (pt, &img) in x.iter().enumerate() {
            inv[img as usize] = pt as u16;
        }
        for (l, z) in reps.iter().enumerate() {
            // product = x^-1 * z, applied left to right
            for pt in 0..degree {
                product[pt] = z[inv[pt] as usize];
            }
            let idx = elements
                .index_of(&product)
                .expect("products of members stay in the group");
            let j = classes.class_of_index(idx);
            entries[j][l] += 1;
        }
    }
    ClassMatrix {
        class_index: i,
        entries,
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p` with `p = 1 (mod exponent)` and `p > 2 sqrt(|G|)`.
pub fn choose_prime(classes: &ConjugacyClasses) -> u64 {
    let exponent = classes.exponent();
    let order = classes.group_order();
    // every integer is congruent to 1 mod 1
    let mut p = if exponent == 1 { 2 } else { 1 + exponent };
    loop {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            // the field helpers multiply in u64
            assert!(p < u32::MAX as u64, "working prime exceeds 32 bits");
            return p;
        }
        p += exponent;
    }
}

// --- GF(p) helpers -------------------------------------------------------

fn gf_mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn gf_sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

fn gf_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = gf_mul(acc, base, p);
        }
        base = gf_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn gf_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    gf_pow(a, p - 2, p)
}

/// Reduced row echelon form; returns the pivot column of each row.
fn gf_rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows.len() {
            break;
        }
        let Some(pivot_row) = (row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(row, pivot_row);
        let inv = gf_inv(rows[row][col], p);
        for c in col..cols {
            rows[row][c] = gf_mul(rows[row][c], inv, p);
        }
        for r in 0..rows.len() {
            if r != row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..cols {
                    let delta = gf_mul(factor, rows[row][c], p);
                    rows[r][c] = gf_sub(rows[r][c], delta, p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    rows.truncate(row);
    pivots
}

/// Kernel basis of a square matrix, in reduced echelon form.
fn gf_kernel(matrix: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = matrix.len();
    let mut rows: Vec<Vec<u64>> = matrix.to_vec();
    let pivots = gf_rref(&mut rows, p);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = gf_sub(0, rows[r][free], p);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial coefficients (ascending, monic) of a square
/// matrix over GF(p), via Hessenberg reduction. Needs only field divisions,
/// so it works for any prime, including primes at or below the dimension.
fn gf_charpoly(matrix: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = matrix.len();
    let mut h: Vec<Vec<u64>> = matrix.to_vec();
    // Hessenberg form by similarity transformations.
    for col in 0..n.saturating_sub(2) {
        let Some(pivot) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if pivot != col + 1 {
            h.swap(pivot, col + 1);
            for row in h.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let inv = gf_inv(h[col + 1][col], p);
        for r in col + 2..n {
            if h[r][col] == 0 {
                continue;
            }
            let factor = gf_mul(h[r][col], inv, p);
            for c in 0..n {
                let delta = gf_mul(factor, h[col + 1][c], p);
                h[r][c] = gf_sub(h[r][c], delta, p);
            }
            // inverse column operation keeps the spectrum
            for r2 in 0..n {
                let delta = gf_mul(factor, h[r2][r], p);
                h[r2][col + 1] = (h[r2][col + 1] + delta) % p;
            }
        }
    }
    // d_m(x) = det(xI - H[0..m][0..m]) by expansion along the last column.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut poly = vec![0u64; m + 1];
        // (x - h[m-1][m-1]) * d_{m-1}
        let prev = &polys[m - 1];
        for (i, &c) in prev.iter().enumerate() {
            poly[i + 1] = (poly[i + 1] + c) % p;
            let delta = gf_mul(h[m - 1][m - 1], c, p);
            poly[i] = gf_sub(poly[i], delta, p);
        }
        let mut subdiag = 1u64;
        for i in (0..m.saturating_sub(1)).rev() {
            // term: h[i][m-1] * prod of subdiagonal * d_i
            subdiag = gf_mul(subdiag, h[i + 1][i], p);
            if subdiag == 0 {
                break;
            }
            let factor = gf_mul(h[i][m - 1], subdiag, p);
            if factor == 0 {
                continue;
            }
            for (t, &c) in polys[i].iter().enumerate() {
                let delta = gf_mul(factor, c, p);
                poly[t] = gf_sub(poly[t], delta, p);
            }
        }
        polys.push(poly);
    }
    polys.pop().expect("n >= 0")
}

fn gf_poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (gf_mul(acc, x, p) + c) % p;
    }
    acc
}

/// Simultaneous one-dimensional eigenvectors of the class matrices over
/// GF(p), normalized so the identity-class coordinate is 1. These are the
/// mod-p central characters.
pub fn eigen_split(classes: &ConjugacyClasses, p: u64) -> Result<Vec<Vec<u64>>> {
    let k = classes.count();
    if k == 1 {
        return Ok(vec![vec![1]]);
    }
    let mut finished: Vec<Vec<u64>> = Vec::new();
    // Invariant subspaces still to be split, each basis in echelon form.
    let mut spaces: Vec<(Vec<Vec<u64>>, Vec<usize>)> = {
        let mut id = vec![vec![0u64; k]; k];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = 1;
        }
        vec![(id, (0..k).collect())]
    };

    for i in 1..k {
        if spaces.is_empty() {
            break;
        }
        let cm = class_matrix(classes, i);
        let matrix: Vec<Vec<u64>> = cm
            .entries
            .iter()
            .map(|row| row.iter().map(|&e| e % p).collect())
            .collect();
        let mut next_spaces = Vec::new();
        for (basis, pivots) in spaces {
            let d = basis.len();
            // image of each basis vector under the class matrix
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|j| {
                            let mut acc = 0u64;
                            for l in 0..k {
                                if matrix[j][l] != 0 && b[l] != 0 {
                                    acc = (acc + gf_mul(matrix[j][l], b[l], p)) % p;
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            // coordinates of the images in the echelon basis
            let mut restricted = vec![vec![0u64; d]; d];
            for (m, w) in images.iter().enumerate() {
                let mut w = w.clone();
                for (m2, &pc) in pivots.iter().enumerate() {
                    let c = w[pc];
                    restricted[m2][m] = c;
                    if c != 0 {
                        for t in 0..k {
                            let delta = gf_mul(c, basis[m2][t], p);
                            w[t] = gf_sub(w[t], delta, p);
                        }
                    }
                }
                if w.iter().any(|&c| c != 0) {
                    return Err(Error::Internal(
                        "class matrix does not preserve a common eigenspace".into(),
                    ));
                }
            }
            // eigenvalues of the restricted operator
            let charpoly = gf_charpoly(&restricted, p);
            let mut split = Vec::new();
            for lambda in 0..p {
                if gf_poly_eval(&charpoly, lambda, p) != 0 {
                    continue;
                }
                let mut shifted = restricted.clone();
                for (r, row) in shifted.iter_mut().enumerate() {
                    row[r] = gf_sub(row[r], lambda, p);
                }
                let kernel = gf_kernel(&shifted, p);
                if kernel.is_empty() {
                    return Err(Error::Internal("eigenvalue without eigenvector".into()));
                }
                // back to ambient coordinates
                let mut ambient: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|coords| {
                        let mut v = vec![0u64; k];
                        for (m, &c) in coords.iter().enumerate() {
                            if c != 0 {
                                for t in 0..k {
                                    v[t] = (v[t] + gf_mul(c, basis[m][t], p)) % p;
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let sub_pivots = gf_rref(&mut ambient, p);
                split.push((ambient, sub_pivots));
            }
            let total: usize = split.iter().map(|(b, _)| b.len()).sum();
            if total != d {
                return Err(Error::Internal(
                    "restricted class matrix is not diagonalizable".into(),
                ));
            }
            for (sub_basis, sub_pivots) in split {
                if sub_basis.len() == 1 {
                    finished.push(sub_basis.into_iter().next().expect("one vector"));
                } else {
                    next_spaces.push((sub_basis, sub_pivots));
                }
            }
        }
        spaces = next_spaces;
    }

    if !spaces.is_empty() || finished.len() != k {
        return Err(Error::Internal(
            "class matrices failed to split into one-dimensional eigenspaces".into(),
        ));
    }
    for v in finished.iter_mut() {
        if v[0] == 0 {
            return Err(Error::Internal(
                "central character vanishes on the identity class".into(),
            ));
        }
        let inv = gf_inv(v[0], p);
        for c in v.iter_mut() {
            *c = gf_mul(*c, inv, p);
        }
    }
    Ok(finished)
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&r| factors.iter().all(|&q| gf_pow(r, (p - 1) / q, p) != 1))
        .expect("primitive roots exist for every prime")
}

/// Exact character table of an enumerable group.
pub struct CharacterTable {
    classes: Arc<ConjugacyClasses>,
    degrees: Vec<u64>,
    rows: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.count()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.degrees[row]
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &[Cyclotomic] {
        &self.rows[index]
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.rows[row][class]
    }

    /// Exact check of `sum_l |C_l| a_i(l) conj(a_j(l)) = |G| delta_ij` for
    /// all row pairs.
    pub fn verify_row_orthogonality(&self) -> Result<()> {
        let k = self.class_count();
        let exponent = self.classes.exponent();
        let table = PowerTable::new(exponent)?;
        let conjugated: Vec<Vec<Cyclotomic>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|v| v.conjugate()).collect())
            .collect();
        let order = BigInt::from(self.classes.group_order());
        for i in 0..k {
            'pairs: for j in i..k {
                let mut terms: Vec<(u64, i128)> = Vec::new();
                for l in 0..k {
                    let size = self.classes.class(l).size as i128;
                    let prod = self.rows[i][l].mul(&conjugated[j][l])?;
                    let conductor = prod.conductor();
                    let scale = exponent / conductor;
                    for (t, c) in prod.coeffs().iter().enumerate() {
                        match to_i128(c).and_then(|c| c.checked_mul(size)) {
                            Some(c) => {
                                if c != 0 {
                                    terms.push((t as u64 * scale, c));
                                }
                            }
                            None => {
                                self.verify_row_orthogonality_slow(i, j, &conjugated[j])?;
                                continue 'pairs;
                            }
                        }
                    }
                }
                let reduced = table.reduce_terms(&terms);
                let expected = if i == j { order.clone() } else { BigInt::from(0) };
                if BigInt::from(reduced[0]) != expected
                    || reduced[1..].iter().any(|&c| c != 0)
                {
                    return Err(Error::Internal(format!(
                        "row orthogonality fails for rows {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Fallback for coefficient magnitudes beyond i128; not expected to run
    /// at the supported scales.
    fn verify_row_orthogonality_slow(
        &self,
        i: usize,
        j: usize,
        conj_row: &[Cyclotomic],
    ) -> Result<()> {
        let exponent = self.classes.exponent();
        let mut acc = Cyclotomic::zero(exponent)?;
        for l in 0..self.class_count() {
            let prod = self.rows[i][l].mul(&conj_row[l])?;
            let scaled = prod.scale(&BigInt::from(self.classes.class(l).size));
            acc = acc.add(&scaled.lift(exponent)?)?;
        }
        let expected = if i == j {
            Cyclotomic::integer(exponent, self.classes.group_order())?
        } else {
            Cyclotomic::zero(exponent)?
        };
        if acc != expected {
            return Err(Error::Internal(format!(
                "row orthogonality fails for rows {i} and {j}"
            )));
        }
        Ok(())
    }

    /// Exact check of `sum_i a_i(l) conj(a_i(m)) = delta_lm |C_G(g_l)|` for
    /// all column pairs.
    pub fn verify_column_orthogonality(&self) -> Result<()> {
        let k = self.class_count();
        let order = self.classes.group_order();
        for l in 0..k {
            for m in l..k {
                let conductor = num_integer::lcm(
                    self.rows[0][l].conductor(),
                    self.rows[0][m].conductor(),
                );
                let mut acc = Cyclotomic::zero(conductor)?;
                for i in 0..k {
                    let prod = self.rows[i][l]
                        .lift(conductor)?
                        .mul(&self.rows[i][m].conjugate().lift(conductor)?)?;
                    acc = acc.add(&prod)?;
                }
                let expected = if l == m {
                    Cyclotomic::integer(conductor, order / self.classes.class(l).size)?
                } else {
                    Cyclotomic::zero(conductor)?
                };
                if acc != expected {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails for classes {l} and {m}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let order = self.classes.group_order();
        let sum_sq: u128 = self.degrees.iter().map(|&d| d as u128 * d as u128).sum();
        if sum_sq != order as u128 {
            return Err(Error::Internal(format!(
                "degree squares sum to {sum_sq}, group order is {order}"
            )));
        }
        for &d in &self.degrees {
            if order % d != 0 {
                return Err(Error::Internal(format!(
                    "degree {d} does not divide the group order {order}"
                )));
            }
        }
        // conductors divide the element orders columnwise
        for row in &self.rows {
            for (l, v) in row.iter().enumerate() {
                let o = self.classes.class(l).element_order;
                if o % v.conductor() != 0 {
                    return Err(Error::Internal(
                        "entry conductor does not divide the class element order".into(),
                    ));
                }
            }
        }
        self.verify_row_orthogonality()?;
        // column orthogonality against the identity column
        for l in 1..self.class_count() {
            let conductor = self.rows[0][l].conductor();
            let mut acc = Cyclotomic::zero(conductor)?;
            for (i, row) in self.rows.iter().enumerate() {
                acc = acc.add(&row[l].scale(&BigInt::from(self.degrees[i])))?;
            }
            if !acc.is_zero() {
                return Err(Error::Internal(format!(
                    "identity-column orthogonality fails at class {l}"
                )));
            }
        }
        // a nonlinear character has a zero somewhere
        for (i, row) in self.rows.iter().enumerate() {
            if self.degrees[i] > 1 && !row.iter().any(|v| v.is_zero()) {
                return Err(Error::Internal(format!(
                    "nonlinear row {i} has no zero entry"
                )));
            }
        }
        Ok(())
    }
}

fn to_i128(v: &BigInt) -> Option<i128> {
    use num_traits::ToPrimitive;
    v.to_i128()
}

/// Lifts the mod-p central characters to exact cyclotomic character values.
pub fn lift_table(
    eigenvectors: &[Vec<u64>],
    classes: &Arc<ConjugacyClasses>,
    p: u64,
) -> Result<CharacterTable> {
    let k = classes.count();
    let order = classes.group_order();
    let order_mod = order % p;
    let sizes: Vec<u64> = classes.classes().iter().map(|c| c.size % p).collect();
    let size_inv: Vec<u64> = sizes.iter().map(|&s| gf_inv(s, p)).collect();
    let root = smallest_primitive_root(p);

    let mut degrees = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    for omega in eigenvectors {
        // sum_l w(l) w(l*) / |C_l| = |G| / d^2 in GF(p)
        let mut s = 0u64;
        for l in 0..k {
            let li = classes.inverse_class(l);
            s = (s + gf_mul(gf_mul(omega[l], omega[li], p), size_inv[l], p)) % p;
        }
        if s == 0 {
            return Err(Error::Internal("degenerate central character norm".into()));
        }
        let d_squared = gf_mul(order_mod, gf_inv(s, p), p);
        let degree = (1..=p / 2)
            .find(|&d| gf_mul(d, d, p) == d_squared)
            .ok_or_else(|| Error::Internal("no degree matches the recovered square".into()))?;

        // character values mod p
        let chibar: Vec<u64> = (0..k)
            .map(|l| gf_mul(gf_mul(omega[l], degree, p), size_inv[l], p))
            .collect();

        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let o = classes.class(l).element_order;
            debug_assert_eq!((p - 1) % o, 0);
            let z = gf_pow(root, (p - 1) / o, p);
            let z_inv = gf_inv(z, p);
            let o_inv = gf_inv(o % p, p);
            let powers: Vec<u64> = (0..o).map(|s| chibar[classes.power_map(l, s)]).collect();
            let mut raw = Vec::with_capacity(o as usize);
            for j in 0..o {
                let mut m = 0u64;
                let step = gf_pow(z_inv, j, p);
                let mut w = 1u64;
                for &cb in &powers {
                    m = (m + gf_mul(cb, w, p)) % p;
                    w = gf_mul(w, step, p);
                }
                m = gf_mul(m, o_inv, p);
                if m > degree {
                    return Err(Error::Internal(
                        "root-of-unity multiplicity exceeds the degree".into(),
                    ));
                }
                raw.push(BigInt::from(m));
            }
            row.push(Cyclotomic::reduce(o, &raw)?);
        }
        degrees.push(degree);
        rows.push(row);
    }

    // canonical row order: by degree, then by the serialized values
    let mut perm: Vec<usize> = (0..k).collect();
    perm.sort_by(|&a, &b| (degrees[a], &rows[a]).cmp(&(degrees[b], &rows[b])));
    let degrees: Vec<u64> = perm.iter().map(|&i| degrees[i]).collect();
    let rows: Vec<Vec<Cyclotomic>> = perm.iter().map(|&i| rows[i].clone()).collect();

    let table = CharacterTable {
        classes: classes.clone(),
        degrees,
        rows,
    };
    table.validate()?;
    Ok(table)
}

/// Character table of `classes`, all stages composed.
pub fn character_table_from_classes(classes: &Arc<ConjugacyClasses>) -> Result<CharacterTable> {
    let p = choose_prime(classes);
    let eigenvectors = eigen_split(classes, p)?;
    lift_table(&eigenvectors, classes, p)
}

/// Character table of a group, deterministic in canonical class and row
/// order.
pub fn character_table(group: &PermGroup, cap: u64) -> Result<CharacterTable> {
    let classes = Arc::new(ConjugacyClasses::compute(group, cap)?);
    character_table_from_classes(&classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{PermGroup, Permutation, ENUMERATION_CAP};

    fn group(degree: usize, spec: &[&[&[u16]]]) -> PermGroup {
        let gens: Vec<Permutation> = spec
            .iter()
            .map(|cycles| {
                let cycles: Vec<Vec<u16>> = cycles.iter().map(|c| c.to_vec()).collect();
                Permutation::from_cycles(degree, &cycles).unwrap()
            })
            .collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    fn classes_of(g: &PermGroup) -> Arc<ConjugacyClasses> {
        Arc::new(ConjugacyClasses::compute(g, ENUMERATION_CAP).unwrap())
    }

    fn s3() -> PermGroup {
        group(3, &[&[&[0, 1, 2]], &[&[0, 1]]])
    }

    #[test]
    fn identity_class_matrix_is_the_identity() {
        let cc = classes_of(&s3());
        let m = class_matrix(&cc, 0);
        for j in 0..cc.count() {
            for l in 0..cc.count() {
                assert_eq!(m.entries[j][l], u64::from(j == l));
            }
        }
    }

    #[test]
    fn transposition_pairs_multiplying_to_identity() {
        let cc = classes_of(&s3());
        // class 1 is the transpositions; three pairs (t, t) give the identity
        let m = class_matrix(&cc, 1);
        assert_eq!(m.entries[1][0], 3);
    }

    #[test]
    fn class_matrix_row_sums() {
        let cc = classes_of(&group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]));
        for i in 0..cc.count() {
            let m = class_matrix(&cc, i);
            for j in 0..cc.count() {
                let total: u64 = (0..cc.count())
                    .map(|l| m.entries[j][l] * cc.class(l).size)
                    .sum();
                assert_eq!(total, cc.class(i).size * cc.class(j).size);
            }
        }
    }

    #[test]
    fn abelian_class_matrices_are_convolutions() {
        let cc = classes_of(&group(4, &[&[&[0, 1, 2, 3]]]));
        for i in 0..4 {
            let m = class_matrix(&cc, i);
            for j in 0..4 {
                let product = cc
                    .class(i)
                    .representative
                    .then(&cc.class(j).representative);
                let expect = cc.class_of(&product).unwrap();
                for l in 0..4 {
                    assert_eq!(m.entries[j][l], u64::from(l == expect));
                }
            }
        }
    }

    #[test]
    fn chosen_primes() {
        assert_eq!(choose_prime(&classes_of(&s3())), 7);
        assert_eq!(choose_prime(&classes_of(&group(2, &[&[&[0, 1]]]))), 3);
        let a5 = group(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]]);
        assert_eq!(choose_prime(&classes_of(&a5)), 31);
    }

    /// Exhaustive oracle: search all vectors with first coordinate 1 over
    /// GF(p) that are simultaneous eigenvectors of every class matrix.
    fn brute_force_eigenvectors(cc: &ConjugacyClasses, p: u64) -> Vec<Vec<u64>> {
        let k = cc.count();
        let matrices: Vec<ClassMatrix> = (0..k).map(|i| class_matrix(cc, i)).collect();
        let mut found = Vec::new();
        let mut v = vec![0u64; k];
        v[0] = 1;
        fn search(
            v: &mut Vec<u64>,
            pos: usize,
            p: u64,
            matrices: &[ClassMatrix],
            found: &mut Vec<Vec<u64>>,
        ) {
            let k = v.len();
            if pos == k {
                let is_eigen = matrices.iter().all(|m| {
                    // (M v) = lambda v with lambda = (M v)[0] since v[0] = 1
                    let image: Vec<u64> = (0..k)
                        .map(|j| {
                            (0..k).fold(0u64, |acc, l| {
                                (acc + m.entries[j][l] % p * v[l]) % p
                            })
                        })
                        .collect();
                    let lambda = image[0];
                    (0..k).all(|j| image[j] == lambda * v[j] % p)
                });
                if is_eigen {
                    found.push(v.clone());
                }
                return;
            }
            for c in 0..p {
                v[pos] = c;
                search(v, pos + 1, p, matrices, found);
            }
            v[pos] = 0;
        }
        search(&mut v, 1, p, &matrices, &mut found);
        found
    }

    #[test]
    fn eigen_split_matches_exhaustive_search_for_s3() {
        let cc = classes_of(&s3());
        let p = choose_prime(&cc);
        let mut ours = eigen_split(&cc, p).unwrap();
        let mut brute = brute_force_eigenvectors(&cc, p);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute);
        assert_eq!(ours.len(), 3);
    }

    #[test]
    fn eigen_split_counts() {
        let c2 = group(2, &[&[&[0, 1]]]);
        let cc = classes_of(&c2);
        let p = choose_prime(&cc);
        let mut vecs = eigen_split(&cc, p).unwrap();
        vecs.sort();
        // (1, 1) and (1, -1) mod p
        assert_eq!(vecs, vec![vec![1, 1], vec![1, p - 1]]);

        let c4 = group(4, &[&[&[0, 1, 2, 3]]]);
        let cc = classes_of(&c4);
        let vecs = eigen_split(&cc, choose_prime(&cc)).unwrap();
        assert_eq!(vecs.len(), 4);
    }

    #[test]
    fn s3_table_is_exact() {
        let table = character_table(&s3(), ENUMERATION_CAP).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 2]);
        // class order: identity, transpositions, 3-cycles
        let two = table.row(2);
        assert_eq!(two[0].as_integer().unwrap(), &BigInt::from(2));
        assert!(two[1].is_zero());
        assert!(two[2].eq_value(&Cyclotomic::integer(1, -1).unwrap()));
    }

    #[test]
    fn trivial_group_table() {
        let table = character_table(&PermGroup::trivial(1), ENUMERATION_CAP).unwrap();
        assert_eq!(table.degrees(), &[1]);
        assert_eq!(table.value(0, 0).as_integer().unwrap(), &BigInt::from(1));
    }

    #[test]
    fn c2_table_rows() {
        let c2 = group(2, &[&[&[0, 1]]]);
        let table = character_table(&c2, ENUMERATION_CAP).unwrap();
        assert_eq!(table.degrees(), &[1, 1]);
        let minus = Cyclotomic::integer(1, -1).unwrap();
        let one = Cyclotomic::one(1).unwrap();
        // canonical order sorts the sign character first
        assert!(table.value(0, 1).eq_value(&minus));
        assert!(table.value(1, 1).eq_value(&one));
        assert!(table.value(0, 0).eq_value(&one));
    }

    #[test]
    fn quaternion_table() {
        // regular action of Q8; right multiplication by i and j
        let i = Permutation::from_cycles(8, &[vec![0, 1, 2, 3], vec![4, 7, 6, 5]]).unwrap();
        let j = Permutation::from_cycles(8, &[vec![0, 4, 2, 6], vec![1, 5, 3, 7]]).unwrap();
        let q8 = PermGroup::from_generators(8, vec![i, j]).unwrap();
        assert_eq!(q8.order(), 8);
        let table = character_table(&q8, ENUMERATION_CAP).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 1, 1, 2]);
        let two = table.row(4);
        assert_eq!(two[0].as_integer().unwrap(), &BigInt::from(2));
        assert_eq!(two[1].as_integer().unwrap(), &BigInt::from(-2));
        for l in 2..5 {
            assert!(two[l].is_zero());
        }
    }

    #[test]
    fn a5_table_degrees_and_golden_entries() {
        let a5 = group(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]]);
        let table = character_table(&a5, ENUMERATION_CAP).unwrap();
        assert_eq!(table.degrees(), &[1, 3, 3, 4, 5]);
        // (1 + sqrt 5)/2 = 1 + z5 + z5^4 appears in a degree-3 row at an
        // order-5 class
        let golden = Cyclotomic::reduce(
            5,
            &[1, 1, 0, 0, 1]
                .iter()
                .map(|&c| BigInt::from(c))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let order5_classes: Vec<usize> = (0..table.class_count())
            .filter(|&l| table.classes().class(l).element_order == 5)
            .collect();
        assert_eq!(order5_classes.len(), 2);
        let found = (0..5).any(|r| {
            table.degree(r) == 3
                && order5_classes
                    .iter()
                    .any(|&l| table.value(r, l).eq_value(&golden))
        });
        assert!(found);
        table.verify_column_orthogonality().unwrap();
    }

    /// Determinant mod p by plain elimination, for checking the Hessenberg
    /// characteristic polynomial along an independent route.
    fn gf_det(matrix: &[Vec<u64>], p: u64) -> u64 {
        let n = matrix.len();
        let mut m: Vec<Vec<u64>> = matrix.to_vec();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                m.swap(pivot, col);
                det = gf_sub(0, det, p);
            }
            det = gf_mul(det, m[col][col], p);
            let inv = gf_inv(m[col][col], p);
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let factor = gf_mul(m[r][col], inv, p);
                    for c in col..n {
                        let delta = gf_mul(factor, m[col][c], p);
                        m[r][c] = gf_sub(m[r][c], delta, p);
                    }
                }
            }
        }
        det
    }

    #[test]
    fn charpoly_matches_determinants() {
        let p = 101;
        // a fixed seed stream keeps this reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in 1..=6 {
            for _ in 0..10 {
                let matrix: Vec<Vec<u64>> =
                    (0..n).map(|_| (0..n).map(|_| next() % p).collect()).collect();
                let poly = gf_charpoly(&matrix, p);
                assert_eq!(poly.len(), n + 1);
                assert_eq!(poly[n], 1, "monic");
                for lambda in 0..p {
                    // det(lambda I - M)
                    let shifted: Vec<Vec<u64>> = (0..n)
                        .map(|r| {
                            (0..n)
                                .map(|c| {
                                    if r == c {
                                        gf_sub(lambda, matrix[r][c], p)
                                    } else {
                                        gf_sub(0, matrix[r][c], p)
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(
                        gf_poly_eval(&poly, lambda, p),
                        gf_det(&shifted, p),
                        "n={n} lambda={lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn s4_table_is_the_classical_one() {
        let s4 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        let table = character_table(&s4, ENUMERATION_CAP).unwrap();
        // canonical class order: identity, double transpositions,
        // transpositions, 3-cycles, 4-cycles
        let profile: Vec<(u64, u64)> = table
            .classes()
            .classes()
            .iter()
            .map(|c| (c.element_order, c.size))
            .collect();
        assert_eq!(profile, vec![(1, 1), (2, 3), (2, 6), (3, 8), (4, 6)]);
        let expected: [[i64; 5]; 5] = [
            [1, 1, -1, 1, -1],
            [1, 1, 1, 1, 1],
            [2, 2, 0, -1, 0],
            [3, -1, -1, 0, 1],
            [3, -1, 1, 0, -1],
        ];
        for (row, want) in expected.iter().enumerate() {
            for (class, &value) in want.iter().enumerate() {
                let entry = Cyclotomic::integer(1, value).unwrap();
                assert!(
                    table.value(row, class).eq_value(&entry),
                    "row {row} class {class}"
                );
            }
        }
    }

    #[test]
    fn known_degree_sets() {
        use crate::groups::{build_psl2, build_symmetric};
        let cases: [(&str, PermGroup, &[u64]); 4] = [
            ("PSL(2,11)", build_psl2(11).unwrap().group, &[1, 5, 5, 10, 10, 11, 12, 12]),
            (
                "PSL(2,13)",
                build_psl2(13).unwrap().group,
                &[1, 7, 7, 12, 12, 12, 13, 14, 14],
            ),
            ("S(5)", build_symmetric(5).unwrap().group, &[1, 1, 4, 4, 5, 5, 6]),
            (
                "S(6)",
                build_symmetric(6).unwrap().group,
                &[1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16],
            ),
        ];
        for (name, group, degrees) in cases {
            let table = character_table(&group, ENUMERATION_CAP).unwrap();
            assert_eq!(table.degrees(), degrees, "{name}");
        }
    }

    #[test]
    fn table_row_order_is_deterministic() {
        let g1 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        let g2 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        let t1 = character_table(&g1, ENUMERATION_CAP).unwrap();
        let t2 = character_table(&g2, ENUMERATION_CAP).unwrap();
        assert_eq!(t1.degrees(), t2.degrees());
        for r in 0..t1.class_count() {
            assert_eq!(t1.row(r), t2.row(r));
        }
    }
}

#[cfg(test)]
mod random_group_tests {
    use super::*;
    use crate::permgroup::{PermGroup, Permutation, ENUMERATION_CAP};
    use proptest::prelude::*;

    /// Argsort of arbitrary keys gives a permutation.
    fn perm_from_keys(keys: &[u64]) -> Permutation {
        let mut order: Vec<u16> = (0..keys.len() as u16).collect();
        order.sort_by_key(|&i| (keys[i as usize], i));
        Permutation::from_images(order).expect("argsort is a bijection")
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // The constructor re-derives degree squares, orthogonality, identity
        // column sums and zero existence; any lift defect on these random
        // groups turns into a hard error here.
        #[test]
        fn random_small_groups_lift_exactly(
            a in prop::collection::vec(any::<u64>(), 6),
            b in prop::collection::vec(any::<u64>(), 6),
        ) {
            let gens = vec![perm_from_keys(&a), perm_from_keys(&b)];
            let group = PermGroup::from_generators(6, gens).unwrap();
            let table = character_table(&group, ENUMERATION_CAP).unwrap();
            prop_assert_eq!(table.class_count(), table.degrees().len());
            prop_assert_eq!(
                table.classes().group_order() as u128,
                group.order()
            );
            table.verify_column_orthogonality().unwrap();
        }
    }
}
