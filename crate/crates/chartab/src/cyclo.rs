//! Exact arithmetic in rings of cyclotomic integers.
//!
//! Elements are residues modulo the n-th cyclotomic polynomial in the power
//! basis `1, z, ..., z^(phi(n)-1)`, with arbitrary-precision integer
//! coefficients. Reduction is canonical, so the zero test is a plain
//! coefficient check and never touches floating point.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Quotient and remainder with respect to a monic divisor.
    pub fn divrem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPolynomial::zero(), IntPolynomial::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[top], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs[..d].iter().enumerate() {
                rem[top - d + i] -= &c * dc;
            }
            quot[top - d] = c;
        }
        rem.truncate(d);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }
}

/// Cached data for one conductor: phi(n) and the cyclotomic polynomial
/// written as `x^phi + tail`.
struct Modulus {
    phi: usize,
    tail: Vec<BigInt>,
}

fn modulus_cache() -> &'static Mutex<HashMap<u64, Arc<Modulus>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Modulus>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn modulus(n: u64) -> Result<Arc<Modulus>> {
    if n == 0 {
        return Err(Error::Domain("conductor must be positive".into()));
    }
    if let Some(m) = modulus_cache().lock().unwrap().get(&n) {
        return Ok(m.clone());
    }
    let poly = cyclotomic_polynomial(n)?;
    let phi = poly.degree().expect("cyclotomic polynomials are nonzero");
    let tail = poly.coeffs()[..phi].to_vec();
    let m = Arc::new(Modulus { phi, tail });
    modulus_cache().lock().unwrap().insert(n, m.clone());
    Ok(m)
}

/// The n-th cyclotomic polynomial: divide `x^n - 1` by the cyclotomic
/// polynomials of the proper divisors of n.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic polynomial needs n >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut num = IntPolynomial::new(coeffs);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = num.divrem_monic(&cyclotomic_polynomial(d)?);
            debug_assert!(r.coeffs().is_empty());
            num = q;
        }
    }
    Ok(num)
}

pub fn euler_phi(n: u64) -> Result<usize> {
    Ok(modulus(n)?.phi)
}

/// An element of the ring of integers of the n-th cyclotomic field, in
/// canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    /// Canonical residue of `sum raw[j] * z^j` modulo the n-th cyclotomic
    /// polynomial. Exponents at or beyond n wrap around.
    pub fn reduce(conductor: u64, raw: &[BigInt]) -> Result<Cyclotomic> {
        let m = modulus(conductor)?;
        let n = conductor as usize;
        let mut folded = vec![BigInt::zero(); n.max(1)];
        for (j, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[j % n] += c;
            }
        }
        reduce_folded(conductor, &m, folded)
    }

    pub fn zero(conductor: u64) -> Result<Cyclotomic> {
        let m = modulus(conductor)?;
        Ok(Cyclotomic {
            conductor,
            coeffs: vec![BigInt::zero(); m.phi],
        })
    }

    pub fn integer(conductor: u64, value: impl Into<BigInt>) -> Result<Cyclotomic> {
        let mut out = Cyclotomic::zero(conductor)?;
        out.coeffs[0] = value.into();
        Ok(out)
    }

    pub fn one(conductor: u64) -> Result<Cyclotomic> {
        Cyclotomic::integer(conductor, 1)
    }

    /// The root of unity `z^exponent` of the given conductor.
    pub fn root_of_unity(conductor: u64, exponent: u64) -> Result<Cyclotomic> {
        let n = conductor;
        let e = (exponent % n) as usize;
        let mut raw = vec![BigInt::zero(); n as usize];
        raw[e] = BigInt::one();
        Cyclotomic::reduce(n, &raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_conductor(&self, other: &Cyclotomic) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_same_conductor(other)?;
        let m = modulus(self.conductor)?;
        if m.phi == 0 {
            return Cyclotomic::zero(self.conductor);
        }
        let mut prod = vec![BigInt::zero(); 2 * m.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_folded(self.conductor, &m, prod)
    }

    pub fn scale(&self, factor: &BigInt) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conjugate(&self) -> Cyclotomic {
        let n = self.conductor as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - j) % n] += c;
            }
        }
        Cyclotomic::reduce(self.conductor, &raw).expect("conductor is valid")
    }

    /// `self * conjugate(self)`; fixed by conjugation.
    pub fn abs_square(&self) -> Cyclotomic {
        self.mul(&self.conjugate()).expect("conductors agree")
    }

    /// Rewrites the value in a conductor that is a multiple of the current
    /// one. Zero tests and equality are unaffected.
    pub fn lift(&self, conductor: u64) -> Result<Cyclotomic> {
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        if conductor % self.conductor != 0 {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: conductor,
            });
        }
        let scale = (conductor / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); conductor as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[j * scale] += c;
            }
        }
        Cyclotomic::reduce(conductor, &raw)
    }

    /// Equality as complex numbers, lifting to a common conductor if needed.
    pub fn eq_value(&self, other: &Cyclotomic) -> bool {
        if self.conductor == other.conductor {
            return self == other;
        }
        let common = num_integer::lcm(self.conductor, other.conductor);
        match (self.lift(common), other.lift(common)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Numeric evaluation at `z = exp(2 pi i / n)`; display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = TAU * j as f64 / n;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            re += cf * angle.cos();
            im += cf * angle.sin();
        }
        (re, im)
    }
}

fn reduce_folded(conductor: u64, m: &Modulus, mut folded: Vec<BigInt>) -> Result<Cyclotomic> {
    let phi = m.phi;
    for top in (phi..folded.len()).rev() {
        let c = std::mem::replace(&mut folded[top], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (i, t) in m.tail.iter().enumerate() {
            if !t.is_zero() {
                folded[top - phi + i] -= &c * t;
            }
        }
    }
    folded.truncate(phi);
    folded.resize(phi, BigInt::zero());
    Ok(Cyclotomic {
        conductor,
        coeffs: folded,
    })
}

/// Reduction table for one conductor: the canonical form of every power
/// `z^e`, used to collapse sparse sums of roots of unity without repeated
/// polynomial division.
pub struct PowerTable {
    conductor: u64,
    phi: usize,
    /// `rows[e - phi]` holds the coefficients of `z^e` for `e` in `phi..n`.
    rows: Vec<Vec<i128>>,
}

impl PowerTable {
    pub fn new(conductor: u64) -> Result<PowerTable> {
        let m = modulus(conductor)?;
        let phi = m.phi;
        let n = conductor as usize;
        let tail: Vec<i128> = m
            .tail
            .iter()
            .map(|c| {
                c.to_i128()
                    .ok_or_else(|| Error::Internal("cyclotomic modulus coefficient overflow".into()))
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(n.saturating_sub(phi));
        if n > phi {
            // x^phi = -tail
            let mut current: Vec<i128> = tail.iter().map(|&c| -c).collect();
            rows.push(current.clone());
            for _ in phi + 1..n {
                let top = current[phi - 1];
                let mut next = vec![0i128; phi];
                for i in 1..phi {
                    next[i] = current[i - 1];
                }
                if top != 0 {
                    for i in 0..phi {
                        next[i] = next[i]
                            .checked_sub(
                                top.checked_mul(tail[i])
                                    .ok_or_else(|| Error::Internal("power table overflow".into()))?,
                            )
                            .ok_or_else(|| Error::Internal("power table overflow".into()))?;
                    }
                }
                rows.push(next.clone());
                current = next;
            }
        }
        Ok(PowerTable {
            conductor,
            phi,
            rows,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical coefficients of `sum coeff * z^exponent` over the terms.
    pub fn reduce_terms(&self, terms: &[(u64, i128)]) -> Vec<i128> {
        let mut acc = vec![0i128; self.phi];
        for &(exponent, coeff) in terms {
            if coeff == 0 {
                continue;
            }
            let e = (exponent % self.conductor) as usize;
            if e < self.phi {
                acc[e] += coeff;
            } else {
                let row = &self.rows[e - self.phi];
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a += coeff * r;
                }
            }
        }
        acc
    }
}
