use rand::Rng;

use super::{is_prime, Field, FieldSpec};
use crate::error::{Error, Result};

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Legendre symbol test.
    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || self.pow(&a, (self.p - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue.
    pub fn smallest_non_square(&self) -> u64 {
        (2..self.p)
            .find(|&r| !self.is_square(r))
            .expect("odd prime has a non-square")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i64(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn mul_add(&self, acc: &u64, a: &u64, b: &u64) -> u64 {
        (acc + a * b) % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn element_index(&self, a: &u64) -> u64 {
        *a
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad F_{} element {s:?}", self.p)))?;
        Ok(self.reduce_i64(v))
    }
    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        // residues are < 2^31 so a few products fit before reducing
        let mut acc = 0u64;
        for (x, y) in a.iter().zip(b) {
            acc = (acc + x * y) % self.p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.add(&7, &6), 2);
        assert_eq!(f.sub(&3, &5), 9);
        assert_eq!(f.mul(&4, &6), 2);
        assert_eq!(f.inv(&3), Some(4));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.parse("-1").unwrap(), 10);
        assert_eq!(f.smallest_non_square(), 2);
        for a in 1..11 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
    }
}
