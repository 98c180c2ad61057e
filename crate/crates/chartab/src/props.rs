//! Zero-class predicates and classifiers over exact character tables:
//! which conjugacy classes each irreducible character vanishes on, the two
//! vanishing properties on even-degree characters, the four-case classifier
//! for the one-zero property, defect-zero searches, the lambda/rho pair of
//! alternating-group characters, and cyclic-torus class counting.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclo::{Cyclotomic, PowerTable};
use crate::dixon::{character_table_from_classes, CharacterTable};
use crate::error::{Error, Result};
use crate::groups::{build_alternating, build_psl2, build_sl2, build_symmetric};
use crate::permgroup::{
    center, coset_action, is_simple, sylow_2, ConjugacyClasses, ElementTable, PermGroup,
    Permutation,
};

/// A class function with exact cyclotomic values.
pub struct ClassFunction {
    classes: Arc<ConjugacyClasses>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(classes: Arc<ConjugacyClasses>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != classes.count() {
            return Err(Error::Domain(
                "class function length differs from the class count".into(),
            ));
        }
        Ok(ClassFunction { classes, values })
    }

    pub fn from_integers(
        classes: Arc<ConjugacyClasses>,
        values: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let values = values
            .into_iter()
            .map(|v| Cyclotomic::integer(1, v))
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(classes, values)
    }

    pub fn constant_one(classes: Arc<ConjugacyClasses>) -> Result<Self> {
        let k = classes.count();
        ClassFunction::from_integers(classes, std::iter::repeat(1).take(k))
    }

    /// Fixed-point count of each class representative: the permutation
    /// character of the natural action.
    pub fn permutation_character(classes: Arc<ConjugacyClasses>) -> Result<Self> {
        let values: Vec<i64> = classes
            .classes()
            .iter()
            .map(|c| c.representative.fixed_points() as i64)
            .collect();
        ClassFunction::from_integers(classes, values)
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn from_table_row(table: &CharacterTable, row: usize) -> Self {
        ClassFunction {
            classes: table.classes().clone(),
            values: table.row(row).to_vec(),
        }
    }

    /// True when the function agrees with a table row entrywise.
    pub fn matches_row(&self, table: &CharacterTable, row: usize) -> bool {
        Arc::ptr_eq(&self.classes, table.classes())
            && self
                .values
                .iter()
                .zip(table.row(row))
                .all(|(a, b)| a.eq_value(b))
    }
}

fn divide_exact(coeffs: Vec<BigInt>, divisor: u64, conductor: u64) -> Result<Cyclotomic> {
    let div = BigInt::from(divisor);
    let mut raw = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if (&c % &div).is_zero() {
            raw.push(c / &div);
        } else {
            return Err(Error::NonIntegralInnerProduct);
        }
    }
    Cyclotomic::reduce(conductor, &raw)
}

/// `(1/|G|) sum_l |C_l| a(l) conj(b(l))`, exact.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    if !Arc::ptr_eq(&a.classes, &b.classes) {
        return Err(Error::ClassesMismatch);
    }
    let classes = &a.classes;
    let k = classes.count();
    let order = classes.group_order();

    let mut products = Vec::with_capacity(k);
    let mut common = 1u64;
    for l in 0..k {
        let conductor = num_integer::lcm(a.values[l].conductor(), b.values[l].conductor());
        let prod = a.values[l]
            .lift(conductor)?
            .mul(&b.values[l].conjugate().lift(conductor)?)?;
        common = num_integer::lcm(common, conductor);
        products.push(prod);
    }

    if common == 1 {
        let mut total = BigInt::zero();
        for (l, prod) in products.iter().enumerate() {
            total += prod.coeffs()[0].clone() * BigInt::from(classes.class(l).size);
        }
        return divide_exact(vec![total], order, 1);
    }

    let table = PowerTable::new(common)?;
    let mut terms: Vec<(u64, i128)> = Vec::new();
    let mut oversized = false;
    'collect: for (l, prod) in products.iter().enumerate() {
        let size = classes.class(l).size as i128;
        let scale = common / prod.conductor();
        for (t, c) in prod.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match c.to_i128().and_then(|c| c.checked_mul(size)) {
                Some(c) => terms.push((t as u64 * scale, c)),
                None => {
                    oversized = true;
                    break 'collect;
                }
            }
        }
    }
    if oversized {
        // slow exact path for out-of-range coefficients
        let mut acc = Cyclotomic::zero(common)?;
        for (l, prod) in products.iter().enumerate() {
            let scaled = prod.scale(&BigInt::from(classes.class(l).size));
            acc = acc.add(&scaled.lift(common)?)?;
        }
        return divide_exact(acc.coeffs().to_vec(), order, common);
    }
    let reduced = table.reduce_terms(&terms);
    divide_exact(reduced.iter().map(|&c| BigInt::from(c)).collect(), order, common)
}

/// Class indices on which a table row vanishes.
pub fn zero_classes(table: &CharacterTable, row: usize) -> Vec<usize> {
    table
        .row(row)
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(l, _)| l)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    /// First violating row, if any.
    pub witness: Option<usize>,
}

/// Every even-degree row vanishes on exactly one class; vacuously true
/// without even-degree rows.
pub fn check_property_star(table: &CharacterTable) -> PropertyVerdict {
    for row in 0..table.class_count() {
        if table.degree(row) % 2 == 0 && zero_classes(table, row).len() != 1 {
            return PropertyVerdict {
                holds: false,
                witness: Some(row),
            };
        }
    }
    PropertyVerdict {
        holds: true,
        witness: None,
    }
}

/// Every even-degree row vanishes on at most two classes.
pub fn check_property_star_star(table: &CharacterTable) -> PropertyVerdict {
    for row in 0..table.class_count() {
        if table.degree(row) % 2 == 0 && zero_classes(table, row).len() > 2 {
            return PropertyVerdict {
                holds: false,
                witness: Some(row),
            };
        }
    }
    PropertyVerdict {
        holds: true,
        witness: None,
    }
}

/// Group invariants compared in place of isomorphism testing: order, the
/// (element order, class size) profile, the degree multiset and the
/// zero-class-count multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub class_profile: Vec<(u64, u64)>,
    pub degrees: Vec<u64>,
    pub zero_counts: Vec<u64>,
}

pub fn fingerprint(table: &CharacterTable) -> Fingerprint {
    let classes = table.classes();
    let mut class_profile: Vec<(u64, u64)> = classes
        .classes()
        .iter()
        .map(|c| (c.element_order, c.size))
        .collect();
    class_profile.sort_unstable();
    let mut degrees = table.degrees().to_vec();
    degrees.sort_unstable();
    let mut zero_counts: Vec<u64> = (0..table.class_count())
        .map(|row| zero_classes(table, row).len() as u64)
        .collect();
    zero_counts.sort_unstable();
    Fingerprint {
        order: classes.group_order(),
        class_profile,
        degrees,
        zero_counts,
    }
}

fn with_central_two(base: crate::groups::GroupSpecResult) -> Result<crate::groups::GroupSpecResult> {
    crate::groups::direct_product(base, crate::groups::build_cyclic(2)?)
}

/// Fingerprints of the classifier's reference groups, cached by label.
fn reference_fingerprint(label: &str, cap: u64) -> Result<Fingerprint> {
    static CACHE: OnceLock<Mutex<HashMap<String, Fingerprint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(label) {
        return Ok(f.clone());
    }
    let built = match label {
        "SL(2,3)" => build_sl2(3)?,
        "S(4)" => build_symmetric(4)?,
        "PSL(2,4)" => build_psl2(4)?,
        "PSL(2,7)" => build_psl2(7)?,
        "PSL(2,8)" => build_psl2(8)?,
        "PSL(2,16)" => build_psl2(16)?,
        "PSL(2,32)" => build_psl2(32)?,
        "PSL(2,4) x C(2)" => with_central_two(build_psl2(4)?)?,
        "PSL(2,8) x C(2)" => with_central_two(build_psl2(8)?)?,
        "PSL(2,16) x C(2)" => with_central_two(build_psl2(16)?)?,
        "PSL(2,32) x C(2)" => with_central_two(build_psl2(32)?)?,
        _ => return Err(Error::Internal(format!("unknown reference group {label}"))),
    };
    let classes = Arc::new(ConjugacyClasses::compute(&built.group, cap)?);
    let table = character_table_from_classes(&classes)?;
    let f = fingerprint(&table);
    cache.lock().unwrap().insert(label.to_string(), f.clone());
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremBCase {
    #[serde(rename = "normal-abelian-sylow2")]
    NormalAbelianSylow2,
    #[serde(rename = "frobenius-c2")]
    FrobeniusC2,
    #[serde(rename = "sl23")]
    Sl23,
    #[serde(rename = "psl2-even")]
    Psl2Even,
    #[serde(rename = "none")]
    None,
}

impl TheoremBCase {
    pub fn label(self) -> &'static str {
        match self {
            TheoremBCase::NormalAbelianSylow2 => "normal-abelian-sylow2",
            TheoremBCase::FrobeniusC2 => "frobenius-c2",
            TheoremBCase::Sl23 => "sl23",
            TheoremBCase::Psl2Even => "psl2-even",
            TheoremBCase::None => "none",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "normal-abelian-sylow2" => TheoremBCase::NormalAbelianSylow2,
            "frobenius-c2" => TheoremBCase::FrobeniusC2,
            "sl23" => TheoremBCase::Sl23,
            "psl2-even" => TheoremBCase::Psl2Even,
            "none" => TheoremBCase::None,
            _ => return None,
        })
    }
}

/// Builds the subgroup generated by the elements at the given indices.
fn subgroup_from_indices<I: IntoIterator<Item = usize>>(
    elements: &ElementTable,
    indices: I,
) -> Result<PermGroup> {
    let degree = elements.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut subgroup = PermGroup::trivial(degree);
    for idx in indices {
        let p = elements.permutation(idx);
        if !subgroup.contains(&p) {
            gens.push(p);
            subgroup = PermGroup::from_generators(degree, gens.clone())?;
        }
    }
    Ok(subgroup)
}

/// Looks for an index-2 normal subgroup avoiding an involution with
/// centralizer of order 2. For such an involution t the set
/// `{s t : s conjugate to t}` is the required subgroup when it closes.
fn frobenius_c2_kernel(
    group: &PermGroup,
    classes: &ConjugacyClasses,
) -> Result<Option<(PermGroup, Permutation)>> {
    let order = classes.group_order();
    if order % 2 != 0 {
        return Ok(None);
    }
    let elements = classes.elements();
    for i in 0..classes.count() {
        let class = classes.class(i);
        if class.element_order != 2 || class.size * 2 != order {
            continue;
        }
        let t = class.representative.clone();
        let candidates = classes.members(i).iter().map(|&s| {
            let p = elements.permutation(s as usize).then(&t);
            elements
                .index_of_perm(&p)
                .expect("products of members stay in the group")
        });
        let kernel = subgroup_from_indices(elements, candidates)?;
        if kernel.order() == (order / 2) as u128 && !kernel.contains(&t) {
            debug_assert!(group.contains(&t));
            return Ok(Some((kernel, t)));
        }
    }
    Ok(None)
}

/// True when the group is Frobenius with a cyclic complement of prime order
/// `c`: some class of order-c elements has centralizer of order c, and the
/// elements away from the powers' classes form a subgroup of index c.
fn is_frobenius_with_prime_complement(classes: &ConjugacyClasses, c: u64) -> Result<bool> {
    let order = classes.group_order();
    if order % c != 0 || order == c {
        return Ok(false);
    }
    let elements = classes.elements();
    for i in 0..classes.count() {
        let class = classes.class(i);
        if class.element_order != c || class.size * c != order {
            continue;
        }
        let mut complement_classes = BTreeSet::new();
        for j in 1..c {
            complement_classes.insert(classes.power_map(i, j));
        }
        let covered: u64 = complement_classes
            .iter()
            .map(|&l| classes.class(l).size)
            .sum();
        if covered != (c - 1) * order / c {
            continue;
        }
        let kernel_indices = (0..elements.count())
            .filter(|&idx| !complement_classes.contains(&classes.class_of_index(idx)));
        let kernel = subgroup_from_indices(elements, kernel_indices)?;
        if kernel.order() == (order / c) as u128 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// First matching case of the one-zero classification, in listing order.
pub fn classify_theorem_b(
    group: &PermGroup,
    classes: &ConjugacyClasses,
    table: &CharacterTable,
    cap: u64,
) -> Result<TheoremBCase> {
    let syl = sylow_2(group, classes.elements());
    if syl.is_normal && syl.is_abelian {
        return Ok(TheoremBCase::NormalAbelianSylow2);
    }
    if frobenius_c2_kernel(group, classes)?.is_some() {
        return Ok(TheoremBCase::FrobeniusC2);
    }
    let own = fingerprint(table);
    if own.order == 24 && own == reference_fingerprint("SL(2,3)", cap)? {
        return Ok(TheoremBCase::Sl23);
    }
    for f in 2u32..=5 {
        let q = 1u64 << f;
        if own.order == q * (q * q - 1) {
            if own == reference_fingerprint(&format!("PSL(2,{q})"), cap)?
                && is_simple(group, classes)?
            {
                return Ok(TheoremBCase::Psl2Even);
            }
            break;
        }
    }
    Ok(TheoremBCase::None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Proposition3Case {
    #[serde(rename = "frobenius-c2-or-c3")]
    FrobeniusC2OrC3,
    #[serde(rename = "center-frobenius-c2")]
    CenterFrobeniusC2,
    #[serde(rename = "s4")]
    S4,
    #[serde(rename = "psl2(4)-or-psl2(7)")]
    Psl24OrPsl27,
    #[serde(rename = "abelian")]
    Abelian,
    #[serde(rename = "unmatched")]
    Unmatched,
}

impl Proposition3Case {
    pub fn label(self) -> &'static str {
        match self {
            Proposition3Case::FrobeniusC2OrC3 => "frobenius-c2-or-c3",
            Proposition3Case::CenterFrobeniusC2 => "center-frobenius-c2",
            Proposition3Case::S4 => "s4",
            Proposition3Case::Psl24OrPsl27 => "psl2(4)-or-psl2(7)",
            Proposition3Case::Abelian => "abelian",
            Proposition3Case::Unmatched => "unmatched",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Proposition3Verdict {
    pub holds: bool,
    pub case: Proposition3Case,
    pub witness: Option<usize>,
}

/// Every nonlinear row has at most two zero classes; on success also reports
/// which shape of group this is.
pub fn check_proposition3(
    group: &PermGroup,
    classes: &Arc<ConjugacyClasses>,
    table: &CharacterTable,
    cap: u64,
) -> Result<Proposition3Verdict> {
    for row in 0..table.class_count() {
        if table.degree(row) > 1 && zero_classes(table, row).len() > 2 {
            return Ok(Proposition3Verdict {
                holds: false,
                case: Proposition3Case::Unmatched,
                witness: Some(row),
            });
        }
    }
    let case = proposition3_case(group, classes, table, cap)?;
    Ok(Proposition3Verdict {
        holds: true,
        case,
        witness: None,
    })
}

fn proposition3_case(
    group: &PermGroup,
    classes: &Arc<ConjugacyClasses>,
    table: &CharacterTable,
    cap: u64,
) -> Result<Proposition3Case> {
    if table.degrees().iter().all(|&d| d == 1) {
        return Ok(Proposition3Case::Abelian);
    }
    if is_frobenius_with_prime_complement(classes, 2)?
        || is_frobenius_with_prime_complement(classes, 3)?
    {
        return Ok(Proposition3Case::FrobeniusC2OrC3);
    }
    let z = center(group, classes);
    if z.order() == 2 {
        let quotient = coset_action(group, classes.elements(), &z, cap)?;
        let quotient_classes = ConjugacyClasses::compute(&quotient, cap)?;
        if frobenius_c2_kernel(&quotient, &quotient_classes)?.is_some() {
            return Ok(Proposition3Case::CenterFrobeniusC2);
        }
    }
    let own = fingerprint(table);
    if own.order == 24 && own == reference_fingerprint("S(4)", cap)? {
        return Ok(Proposition3Case::S4);
    }
    if (own.order == 60 && own == reference_fingerprint("PSL(2,4)", cap)?)
        || (own.order == 168 && own == reference_fingerprint("PSL(2,7)", cap)?)
    {
        return Ok(Proposition3Case::Psl24OrPsl27);
    }
    Ok(Proposition3Case::Unmatched)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// Even-degree rows whose degree carries the full p-part of the group order,
/// for each prime divisor p.
pub fn defect_zero_search(table: &CharacterTable) -> Vec<(usize, u64)> {
    let order = table.classes().group_order();
    let primes = prime_factors(order);
    let mut found = Vec::new();
    for row in 0..table.class_count() {
        let degree = table.degree(row);
        if degree % 2 != 0 {
            continue;
        }
        for &p in &primes {
            if p_part(degree, p) == p_part(order, p) {
                found.push((row, p));
            }
        }
    }
    found
}

/// The pair of class functions built from the fixed-point count pi and the
/// 2-cycle count delta on the natural alternating action:
/// `(pi-1)(pi-2)/2 - delta` and `pi(pi-3)/2 + delta`.
pub fn lambda_rho(classes: &Arc<ConjugacyClasses>) -> Result<(ClassFunction, ClassFunction)> {
    let mut lambda = Vec::with_capacity(classes.count());
    let mut rho = Vec::with_capacity(classes.count());
    for c in classes.classes() {
        let pi = c.representative.fixed_points() as i64;
        let delta = c.representative.two_cycles() as i64;
        lambda.push((pi - 1) * (pi - 2) / 2 - delta);
        rho.push(pi * (pi - 3) / 2 + delta);
    }
    Ok((
        ClassFunction::from_integers(classes.clone(), lambda)?,
        ClassFunction::from_integers(classes.clone(), rho)?,
    ))
}

pub struct Step1Report {
    pub n: u64,
    pub lambda_degree: i64,
    pub rho_degree: i64,
    pub lambda_vanishes: [bool; 3],
    pub rho_vanishes: [bool; 3],
    pub a_classes: [usize; 3],
    pub b_classes: [usize; 3],
    pub holds: bool,
}

fn range_cycle(from: u16, to_exclusive: u16) -> Vec<u16> {
    (from..to_exclusive).collect()
}

/// The six listed elements, 0-based: three where the first function must
/// vanish and three for the second, split by the parity of n.
fn step1_elements(n: u64) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    if n < 8 {
        return Err(Error::Domain("the construction needs n >= 8".into()));
    }
    let deg = n as usize;
    let n = n as u16;
    let cycles = |spec: &[Vec<u16>]| Permutation::from_cycles(deg, spec);
    if n % 2 == 0 {
        let a = vec![
            cycles(&[range_cycle(0, n - 1)])?,
            cycles(&[range_cycle(0, n - 2), vec![n - 2, n - 1]])?,
            cycles(&[range_cycle(0, n - 5), vec![n - 5, n - 4, n - 3]])?,
        ];
        let b = vec![
            cycles(&[range_cycle(0, n - 3)])?,
            cycles(&[range_cycle(0, n - 3), vec![n - 3, n - 2, n - 1]])?,
            cycles(&[range_cycle(0, n - 4), vec![n - 4, n - 3]])?,
        ];
        Ok((a, b))
    } else {
        let a = vec![
            cycles(&[range_cycle(0, n - 2)])?,
            cycles(&[range_cycle(0, n - 4), vec![n - 4, n - 3, n - 2]])?,
            cycles(&[range_cycle(0, n - 5), vec![n - 5, n - 4]])?,
        ];
        let b = vec![
            cycles(&[range_cycle(0, n)])?,
            cycles(&[range_cycle(0, n - 3), vec![n - 3, n - 2]])?,
            cycles(&[range_cycle(0, n - 6), vec![n - 6, n - 5, n - 4]])?,
        ];
        Ok((a, b))
    }
}

/// Checks that the first function vanishes at the three a-elements and the
/// second at the three b-elements, with each triple in distinct classes.
pub fn verify_step1_vanishing(n: u64, cap: u64) -> Result<Step1Report> {
    let alt = build_alternating(n)?;
    let classes = Arc::new(ConjugacyClasses::compute(&alt.group, cap)?);
    step1_on_classes(n, &classes)
}

fn step1_on_classes(n: u64, classes: &Arc<ConjugacyClasses>) -> Result<Step1Report> {
    let (a_elems, b_elems) = step1_elements(n)?;
    let (lambda, rho) = lambda_rho(classes)?;

    let locate = |p: &Permutation| -> Result<usize> {
        classes
            .class_of(p)
            .ok_or_else(|| Error::Internal("listed element escapes the group".into()))
    };
    let mut a_classes = [0usize; 3];
    let mut b_classes = [0usize; 3];
    let mut lambda_vanishes = [false; 3];
    let mut rho_vanishes = [false; 3];
    for i in 0..3 {
        a_classes[i] = locate(&a_elems[i])?;
        b_classes[i] = locate(&b_elems[i])?;
        lambda_vanishes[i] = lambda.value(a_classes[i]).is_zero();
        rho_vanishes[i] = rho.value(b_classes[i]).is_zero();
    }
    let distinct = |cs: &[usize; 3]| cs[0] != cs[1] && cs[0] != cs[2] && cs[1] != cs[2];
    let holds = lambda_vanishes.iter().all(|&v| v)
        && rho_vanishes.iter().all(|&v| v)
        && distinct(&a_classes)
        && distinct(&b_classes);
    let as_int = |v: &Cyclotomic| v.as_integer().and_then(|b| b.to_i64()).unwrap_or(i64::MIN);
    Ok(Step1Report {
        n,
        lambda_degree: as_int(lambda.degree()),
        rho_degree: as_int(rho.degree()),
        lambda_vanishes,
        rho_vanishes,
        a_classes,
        b_classes,
        holds,
    })
}

pub struct Step1Extras {
    pub lambda_norm_one: bool,
    pub rho_norm_one: bool,
    pub lambda_is_row: bool,
    pub rho_is_row: bool,
}

/// The vanishing checks together with the norm and table-row checks, sharing
/// one class computation.
pub fn verify_step1_with_table(n: u64, cap: u64) -> Result<(Step1Report, Step1Extras)> {
    let alt = build_alternating(n)?;
    let classes = Arc::new(ConjugacyClasses::compute(&alt.group, cap)?);
    let report = step1_on_classes(n, &classes)?;
    let (lambda, rho) = lambda_rho(&classes)?;
    let one = Cyclotomic::one(1)?;
    let lambda_norm_one = inner_product(&lambda, &lambda)?.eq_value(&one);
    let rho_norm_one = inner_product(&rho, &rho)?.eq_value(&one);
    let table = character_table_from_classes(&classes)?;
    let lambda_is_row = (0..table.class_count()).any(|r| lambda.matches_row(&table, r));
    let rho_is_row = (0..table.class_count()).any(|r| rho.matches_row(&table, r));
    Ok((
        report,
        Step1Extras {
            lambda_norm_one,
            rho_norm_one,
            lambda_is_row,
            rho_is_row,
        },
    ))
}

/// True when every class of element order divisible by the prime carries an
/// exact zero of the row, for each returned pair.
pub fn defect_zero_vanishing_holds(table: &CharacterTable, pairs: &[(usize, u64)]) -> bool {
    let classes = table.classes();
    pairs.iter().all(|&(row, p)| {
        (0..classes.count()).all(|l| {
            classes.class(l).element_order % p != 0 || table.value(row, l).is_zero()
        })
    })
}

/// Membership in the two-zero classification list: the order-168 simple
/// group, or an even-characteristic PSL(2,q) possibly times a central C2.
pub fn theorem_c_member(table: &CharacterTable, cap: u64) -> Result<bool> {
    let own = fingerprint(table);
    if own.order == 168 {
        return Ok(own == reference_fingerprint("PSL(2,7)", cap)?);
    }
    for f in 2u32..=5 {
        let q = 1u64 << f;
        let base = q * (q * q - 1);
        if own.order == base {
            return Ok(own == reference_fingerprint(&format!("PSL(2,{q})"), cap)?);
        }
        if own.order == 2 * base {
            return Ok(own == reference_fingerprint(&format!("PSL(2,{q}) x C(2)"), cap)?);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusSide {
    Plus,
    Minus,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub q: u64,
    pub side: TorusSide,
    /// Order of the maximal cyclic subgroup used.
    pub torus_order: u64,
    /// Classes meeting the conjugates of the torus away from the identity.
    pub torus_classes: usize,
    /// Classes of elements whose order is divisible by the torus order, the
    /// other reading of the same set.
    pub full_order_classes: usize,
    /// `(q - 1) / 4` when integral.
    pub formula_value: Option<u64>,
    pub matches_formula: Option<bool>,
    pub note: Option<String>,
}

/// Counts the classes meeting the union of conjugates of a maximal cyclic
/// subgroup of order `(q +/- 1) / gcd(2, q - 1)` in PSL(2,q).
pub fn torus_class_count(q: u64, side: TorusSide, cap: u64) -> Result<TorusReport> {
    let psl = build_psl2(q)?;
    let classes = ConjugacyClasses::compute(&psl.group, cap)?;
    let divisor = if q % 2 == 0 { 1 } else { 2 };
    let torus_order = match side {
        TorusSide::Plus => (q + 1) / divisor,
        TorusSide::Minus => (q - 1) / divisor,
    };
    if torus_order < 2 {
        return Err(Error::Domain(format!(
            "the chosen torus is trivial for q = {q}"
        )));
    }
    let generator_class = (0..classes.count())
        .find(|&i| classes.class(i).element_order == torus_order)
        .ok_or_else(|| Error::Internal("no cyclic subgroup of the torus order".into()))?;
    let mut met = BTreeSet::new();
    for j in 1..torus_order {
        met.insert(classes.power_map(generator_class, j));
    }
    let torus_classes = met.len();
    let full_order_classes = (0..classes.count())
        .filter(|&i| {
            let o = classes.class(i).element_order;
            o % torus_order == 0
        })
        .count();
    let formula_value = if (q - 1) % 4 == 0 { Some((q - 1) / 4) } else { None };
    let matches_formula = formula_value.map(|v| v as usize == torus_classes);
    let note = if formula_value.is_none() {
        Some(format!(
            "(q-1)/4 = {}/4 is not an integer; the computed counts are reported without comparison",
            q - 1
        ))
    } else {
        None
    };
    Ok(TorusReport {
        q,
        side,
        torus_order,
        torus_classes,
        full_order_classes,
        formula_value,
        matches_formula,
        note,
    })
}

/// Everything the report emitters need about one verified group.
pub struct VerdictReport {
    pub group_label: String,
    pub order: u64,
    pub class_count: usize,
    pub degrees: Vec<u64>,
    pub zero_class_sets: Vec<Vec<usize>>,
    pub star: bool,
    pub star_witness: Option<usize>,
    pub star_star: bool,
    pub star_star_witness: Option<usize>,
    pub theorem_b_case: TheoremBCase,
    pub proposition3: bool,
    pub proposition3_case: Proposition3Case,
    pub timing_ms: u128,
}

/// Runs the whole verdict pipeline on a built group.
pub fn verdict(
    label: &str,
    group: &PermGroup,
    cap: u64,
) -> Result<(VerdictReport, Arc<ConjugacyClasses>, CharacterTable)> {
    let start = std::time::Instant::now();
    let classes = Arc::new(ConjugacyClasses::compute(group, cap)?);
    let table = character_table_from_classes(&classes)?;
    let star = check_property_star(&table);
    let star_star = check_property_star_star(&table);
    debug_assert!(!star.holds || star_star.holds);
    let case = classify_theorem_b(group, &classes, &table, cap)?;
    let prop3 = check_proposition3(group, &classes, &table, cap)?;
    let zero_class_sets: Vec<Vec<usize>> = (0..table.class_count())
        .map(|row| zero_classes(&table, row))
        .collect();
    let report = VerdictReport {
        group_label: label.to_string(),
        order: classes.group_order(),
        class_count: classes.count(),
        degrees: table.degrees().to_vec(),
        zero_class_sets,
        star: star.holds,
        star_witness: star.witness,
        star_star: star_star.holds,
        star_star_witness: star_star.witness,
        theorem_b_case: case,
        proposition3: prop3.holds,
        proposition3_case: prop3.case,
        timing_ms: start.elapsed().as_millis(),
    };
    Ok((report, classes, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixon::character_table;
    use crate::groups::{build_cyclic, build_dihedral, build_q8, direct_product};
    use crate::permgroup::ENUMERATION_CAP;

    fn table_of(group: &PermGroup) -> (Arc<ConjugacyClasses>, CharacterTable) {
        let classes = Arc::new(ConjugacyClasses::compute(group, ENUMERATION_CAP).unwrap());
        let table = character_table_from_classes(&classes).unwrap();
        (classes, table)
    }

    #[test]
    fn zero_classes_of_s3() {
        let s3 = build_symmetric(3).unwrap();
        let table = character_table(&s3.group, ENUMERATION_CAP).unwrap();
        // linear rows have no zeros
        assert!(zero_classes(&table, 0).is_empty());
        assert!(zero_classes(&table, 1).is_empty());
        // the degree-2 row vanishes exactly on the transpositions
        assert_eq!(zero_classes(&table, 2), vec![1]);
    }

    #[test]
    fn zero_classes_of_psl27_even_rows() {
        let psl = build_psl2(7).unwrap();
        let (classes, table) = table_of(&psl.group);
        assert_eq!(table.degrees(), &[1, 3, 3, 6, 7, 8]);
        let six = zero_classes(&table, 3);
        let orders: BTreeSet<u64> = six
            .iter()
            .map(|&l| classes.class(l).element_order)
            .collect();
        assert_eq!(orders, BTreeSet::from([3, 4]));
        let eight = zero_classes(&table, 5);
        assert_eq!(eight.len(), 2);
        let orders: BTreeSet<u64> = eight
            .iter()
            .map(|&l| classes.class(l).element_order)
            .collect();
        assert_eq!(orders, BTreeSet::from([2, 4]));
    }

    #[test]
    fn psl27_degree_three_rows_carry_quadratic_irrationalities() {
        // at the order-7 classes the degree-3 rows take the two roots of
        // x^2 + x + 2, so norm 2 and trace -1, exactly
        let psl = build_psl2(7).unwrap();
        let (classes, table) = table_of(&psl.group);
        let two = Cyclotomic::integer(7, 2).unwrap();
        let minus_one = Cyclotomic::integer(7, -1).unwrap();
        let order7: Vec<usize> = (0..classes.count())
            .filter(|&l| classes.class(l).element_order == 7)
            .collect();
        assert_eq!(order7.len(), 2);
        for row in 0..table.class_count() {
            if table.degree(row) != 3 {
                continue;
            }
            for &l in &order7 {
                let v = table.value(row, l);
                assert_eq!(v.conductor(), 7);
                assert!(v.as_integer().is_none());
                assert!(v.abs_square().eq_value(&two));
                assert!(v.add(&v.conjugate()).unwrap().eq_value(&minus_one));
            }
        }
    }

    #[test]
    fn star_verdicts() {
        let psl8 = build_psl2(8).unwrap();
        let (_, table) = table_of(&psl8.group);
        assert!(check_property_star(&table).holds);

        let sl23 = build_sl2(3).unwrap();
        let (_, table) = table_of(&sl23.group);
        assert!(check_property_star(&table).holds);

        let q8 = build_q8().unwrap();
        let (_, table) = table_of(&q8.group);
        let verdict = check_property_star(&table);
        assert!(!verdict.holds);
        let witness = verdict.witness.unwrap();
        assert_eq!(table.degree(witness), 2);
        assert_eq!(zero_classes(&table, witness).len(), 3);
    }

    #[test]
    fn star_star_verdicts() {
        let psl7 = build_psl2(7).unwrap();
        let (_, table) = table_of(&psl7.group);
        assert!(!check_property_star(&table).holds);
        assert!(check_property_star_star(&table).holds);

        let product = direct_product(build_psl2(4).unwrap(), build_cyclic(2).unwrap()).unwrap();
        let (_, table) = table_of(&product.group);
        assert!(check_property_star_star(&table).holds);

        let a6 = build_alternating(6).unwrap();
        let (_, table) = table_of(&a6.group);
        let verdict = check_property_star_star(&table);
        assert!(!verdict.holds);
        assert!(table.degree(verdict.witness.unwrap()) % 2 == 0);
    }

    #[test]
    fn theorem_b_cases() {
        let d10 = build_dihedral(10).unwrap();
        let (classes, table) = table_of(&d10.group);
        assert_eq!(
            classify_theorem_b(&d10.group, &classes, &table, ENUMERATION_CAP).unwrap(),
            TheoremBCase::FrobeniusC2
        );

        let c6 = build_cyclic(6).unwrap();
        let (classes, table) = table_of(&c6.group);
        assert_eq!(
            classify_theorem_b(&c6.group, &classes, &table, ENUMERATION_CAP).unwrap(),
            TheoremBCase::NormalAbelianSylow2
        );

        let s4 = build_symmetric(4).unwrap();
        let (classes, table) = table_of(&s4.group);
        assert_eq!(
            classify_theorem_b(&s4.group, &classes, &table, ENUMERATION_CAP).unwrap(),
            TheoremBCase::None
        );
        // degree multisets separate S4 from SL(2,3)
        assert_eq!(table.degrees(), &[1, 1, 2, 3, 3]);

        let sl23 = build_sl2(3).unwrap();
        let (classes, table) = table_of(&sl23.group);
        assert_eq!(table.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(
            classify_theorem_b(&sl23.group, &classes, &table, ENUMERATION_CAP).unwrap(),
            TheoremBCase::Sl23
        );

        let a5 = build_alternating(5).unwrap();
        let (classes, table) = table_of(&a5.group);
        assert_eq!(
            classify_theorem_b(&a5.group, &classes, &table, ENUMERATION_CAP).unwrap(),
            TheoremBCase::Psl2Even
        );
    }

    #[test]
    fn proposition3_cases() {
        let s4 = build_symmetric(4).unwrap();
        let (classes, table) = table_of(&s4.group);
        let v = check_proposition3(&s4.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.case, Proposition3Case::S4);

        let l24 = build_psl2(4).unwrap();
        let (classes, table) = table_of(&l24.group);
        let v = check_proposition3(&l24.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.case, Proposition3Case::Psl24OrPsl27);

        let a6 = build_alternating(6).unwrap();
        let (classes, table) = table_of(&a6.group);
        let v = check_proposition3(&a6.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(!v.holds);
        assert!(v.witness.is_some());

        let d6 = build_dihedral(6).unwrap();
        let (classes, table) = table_of(&d6.group);
        let v = check_proposition3(&d6.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.case, Proposition3Case::FrobeniusC2OrC3);

        let central = direct_product(build_cyclic(2).unwrap(), build_dihedral(10).unwrap()).unwrap();
        let (classes, table) = table_of(&central.group);
        let v = check_proposition3(&central.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.case, Proposition3Case::CenterFrobeniusC2);

        let a4 = build_alternating(4).unwrap();
        let (classes, table) = table_of(&a4.group);
        let v = check_proposition3(&a4.group, &classes, &table, ENUMERATION_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.case, Proposition3Case::FrobeniusC2OrC3);
    }

    #[test]
    fn defect_zero_pairs() {
        let a5 = build_alternating(5).unwrap();
        let (_, table) = table_of(&a5.group);
        let pairs = defect_zero_search(&table);
        assert!(pairs
            .iter()
            .any(|&(row, p)| table.degree(row) == 4 && p == 2));

        let a7 = build_alternating(7).unwrap();
        let (_, table) = table_of(&a7.group);
        let pairs = defect_zero_search(&table);
        assert!(pairs
            .iter()
            .any(|&(row, p)| table.degree(row) == 14 && p == 7));

        let l28 = build_psl2(8).unwrap();
        let (_, table) = table_of(&l28.group);
        let pairs = defect_zero_search(&table);
        assert!(pairs
            .iter()
            .any(|&(row, p)| table.degree(row) == 8 && p == 2));
    }

    #[test]
    fn lambda_rho_for_a8() {
        let a8 = build_alternating(8).unwrap();
        let classes = Arc::new(ConjugacyClasses::compute(&a8.group, ENUMERATION_CAP).unwrap());
        let (lambda, rho) = lambda_rho(&classes).unwrap();
        assert_eq!(lambda.degree().as_integer().unwrap(), &BigInt::from(21));
        assert_eq!(rho.degree().as_integer().unwrap(), &BigInt::from(20));
        let norm = inner_product(&lambda, &lambda).unwrap();
        assert_eq!(norm.as_integer().unwrap(), &BigInt::from(1));
        let norm = inner_product(&rho, &rho).unwrap();
        assert_eq!(norm.as_integer().unwrap(), &BigInt::from(1));
        // both are rows of the computed table
        let table = character_table_from_classes(&classes).unwrap();
        assert!((0..table.class_count()).any(|r| lambda.matches_row(&table, r)));
        assert!((0..table.class_count()).any(|r| rho.matches_row(&table, r)));
    }

    #[test]
    fn step1_vanishing_at_eight() {
        let report = verify_step1_vanishing(8, ENUMERATION_CAP).unwrap();
        assert!(report.holds);
        assert_eq!(report.lambda_degree, 21);
        assert_eq!(report.rho_degree, 20);
        assert!(verify_step1_vanishing(7, ENUMERATION_CAP).is_err());
    }

    #[test]
    fn torus_counts() {
        let r = torus_class_count(9, TorusSide::Plus, ENUMERATION_CAP).unwrap();
        assert_eq!(r.torus_order, 5);
        assert_eq!(r.torus_classes, 2);
        assert_eq!(r.formula_value, Some(2));
        assert_eq!(r.matches_formula, Some(true));

        let r = torus_class_count(13, TorusSide::Plus, ENUMERATION_CAP).unwrap();
        assert_eq!(r.torus_order, 7);
        assert_eq!(r.torus_classes, 3);
        assert_eq!(r.formula_value, Some(3));

        let r = torus_class_count(7, TorusSide::Plus, ENUMERATION_CAP).unwrap();
        assert_eq!(r.torus_order, 4);
        assert_eq!(r.torus_classes, 2);
        assert_eq!(r.formula_value, None);
        assert!(r.note.is_some());

        // the split torus of PSL(2,7) has order 3: a single class
        let r = torus_class_count(7, TorusSide::Minus, ENUMERATION_CAP).unwrap();
        assert_eq!(r.torus_order, 3);
        assert_eq!(r.torus_classes, 1);

        // at q = 8 the two readings of the order-9 torus differ: its
        // nontrivial elements meet four classes, the order-9 elements three
        let r = torus_class_count(8, TorusSide::Plus, ENUMERATION_CAP).unwrap();
        assert_eq!(r.torus_order, 9);
        assert_eq!(r.torus_classes, 4);
        assert_eq!(r.full_order_classes, 3);
    }

    #[test]
    fn inner_products() {
        let a5 = build_alternating(5).unwrap();
        let classes = Arc::new(ConjugacyClasses::compute(&a5.group, ENUMERATION_CAP).unwrap());
        let one = ClassFunction::constant_one(classes.clone()).unwrap();
        assert_eq!(
            inner_product(&one, &one).unwrap().as_integer().unwrap(),
            &BigInt::from(1)
        );
        let pi = ClassFunction::permutation_character(classes.clone()).unwrap();
        assert_eq!(
            inner_product(&pi, &one).unwrap().as_integer().unwrap(),
            &BigInt::from(1)
        );
        let table = character_table_from_classes(&classes).unwrap();
        for row in 0..table.class_count() {
            let f = ClassFunction::from_table_row(&table, row);
            let norm = inner_product(&f, &f).unwrap();
            assert!(norm.eq_value(&Cyclotomic::one(1).unwrap()), "row {row}");
        }
        // pi - 1 is an irreducible row for the natural action
        let values: Vec<Cyclotomic> = pi
            .values()
            .iter()
            .map(|v| v.sub(&Cyclotomic::one(1).unwrap()).unwrap())
            .collect();
        let deleted = ClassFunction::new(classes.clone(), values).unwrap();
        assert!((0..table.class_count()).any(|r| deleted.matches_row(&table, r)));

        let other = Arc::new(ConjugacyClasses::compute(&a5.group, ENUMERATION_CAP).unwrap());
        let foreign = ClassFunction::constant_one(other).unwrap();
        assert!(matches!(
            inner_product(&one, &foreign),
            Err(Error::ClassesMismatch)
        ));
    }

    #[test]
    fn fingerprint_identities() {
        let l24 = build_psl2(4).unwrap();
        let a5 = build_alternating(5).unwrap();
        let l25 = build_psl2(5).unwrap();
        let (_, t1) = table_of(&l24.group);
        let (_, t2) = table_of(&a5.group);
        let (_, t3) = table_of(&l25.group);
        assert_eq!(fingerprint(&t1), fingerprint(&t2));
        assert_eq!(fingerprint(&t2), fingerprint(&t3));

        let l29 = build_psl2(9).unwrap();
        let a6 = build_alternating(6).unwrap();
        let (_, t4) = table_of(&l29.group);
        let (_, t5) = table_of(&a6.group);
        assert_eq!(fingerprint(&t4), fingerprint(&t5));

        // direct product with the trivial group preserves the fingerprint
        let padded = direct_product(build_psl2(4).unwrap(), build_cyclic(1).unwrap()).unwrap();
        let (_, t6) = table_of(&padded.group);
        assert_eq!(fingerprint(&t1), fingerprint(&t6));

        // the classic near-collision is separated by element orders
        let q8 = build_q8().unwrap();
        let d8 = build_dihedral(8).unwrap();
        let (_, t7) = table_of(&q8.group);
        let (_, t8) = table_of(&d8.group);
        assert_ne!(fingerprint(&t7), fingerprint(&t8));
        assert_eq!(fingerprint(&t7).degrees, fingerprint(&t8).degrees);
    }

    #[test]
    fn verdict_pipeline() {
        let sl23 = build_sl2(3).unwrap();
        let (report, _, _) = verdict("SL(2,3)", &sl23.group, ENUMERATION_CAP).unwrap();
        assert!(report.star);
        assert!(report.star_star);
        assert_eq!(report.theorem_b_case, TheoremBCase::Sl23);
        assert!(!report.proposition3); // a degree-3 row vanishes on four classes
        assert_eq!(report.order, 24);
        assert_eq!(report.class_count, 7);
    }
}
