//! Small finite fields GF(p^f) with a fixed modulus table.

use crate::error::{Error, Result};

/// Fixed irreducible moduli, written as the tail of a monic polynomial:
/// x^f = -(tail[0] + tail[1] x + ...). Degree-1 fields need no modulus.
fn modulus_tail(p: u64, f: u32) -> Result<Vec<u64>> {
    let q = p.pow(f);
    match (p, f) {
        (_, 1) => Ok(vec![]),
        (2, 2) => Ok(vec![1, 1]),          // x^2 + x + 1
        (2, 3) => Ok(vec![1, 1, 0]),       // x^3 + x + 1
        (2, 4) => Ok(vec![1, 1, 0, 0]),    // x^4 + x + 1
        (2, 5) => Ok(vec![1, 0, 1, 0, 0]), // x^5 + x^2 + 1
        (3, 2) => Ok(vec![1, 0]),          // x^2 + 1
        _ => Err(Error::UnsupportedField(q)),
    }
}

/// Splits a prime power into (p, f); errors otherwise.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotAPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut f = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                f += 1;
            }
            if rest != 1 {
                return Err(Error::NotAPrimePower(q));
            }
            return Ok((p, f));
        }
        p += 1;
    }
    Ok((q, 1))
}

/// GF(p^f) with elements indexed 0..p^f-1 by their coefficient digits in
/// base p, ascending powers of the field generator polynomial.
pub struct FiniteField {
    p: u64,
    f: u32,
    q: u64,
    tail: Vec<u64>,
    generator: u64,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, f) = prime_power(q)?;
        let tail = modulus_tail(p, f)?;
        let mut field = FiniteField {
            p,
            f,
            q,
            tail,
            generator: 0,
        };
        field.generator = field.find_generator();
        Ok(field)
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// A cached generator of the cyclic multiplicative group.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    fn digits(&self, x: u64) -> Vec<u64> {
        let mut digits = vec![0; self.f as usize];
        let mut x = x;
        for d in digits.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        digits
    }

    fn pack_digits(&self, digits: &[u64]) -> u64 {
        let mut x = 0;
        for &d in digits.iter().rev() {
            x = x * self.p + d % self.p;
        }
        x
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack_digits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack_digits(&neg)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let f = self.f as usize;
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for top in (f..2 * f).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &t) in self.tail.iter().enumerate() {
                if t != 0 {
                    let low = top - f + i;
                    prod[low] = (prod[low] + (self.p - t % self.p) * c) % self.p;
                }
            }
        }
        prod.truncate(f);
        self.pack_digits(&prod)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, self.q - 2)
    }

    fn find_generator(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        let mut factors = Vec::new();
        let mut m = self.q - 1;
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
        (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.pow(g, (self.q - 1) / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(32).unwrap(), (2, 5));
        assert_eq!(prime_power(13).unwrap(), (13, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn unsupported_extensions_are_rejected() {
        assert!(matches!(FiniteField::new(64), Err(Error::UnsupportedField(64))));
        assert!(matches!(FiniteField::new(25), Err(Error::UnsupportedField(25))));
    }

    #[test]
    fn generators_have_full_order() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 32] {
            let field = FiniteField::new(q).unwrap();
            let g = field.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = field.mul(x, g);
            }
            assert_eq!(x, 1);
            assert_eq!(seen.len(), (q - 1) as usize, "q = {q}");
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 32]),
            seed in any::<u64>(),
        ) {
            let field = FiniteField::new(q).unwrap();
            let a = seed % q;
            let b = (seed / q) % q;
            let c = (seed / q / q) % q;
            prop_assert_eq!(field.add(a, field.add(b, c)), field.add(field.add(a, b), c));
            prop_assert_eq!(field.mul(a, field.mul(b, c)), field.mul(field.mul(a, b), c));
            prop_assert_eq!(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)));
            prop_assert_eq!(field.add(a, field.neg(a)), 0);
            prop_assert_eq!(field.mul(a, 1), a);
            if a != 0 {
                prop_assert_eq!(field.mul(a, field.inv(a)), 1);
            }
        }
    }
}
