use rand::Rng;

use super::{Field, FieldSpec, PrimeField};
use crate::error::{Error, Result};

/// `F_{p^2} = F_p[s]/(s^2 - r)` with `r` the smallest non-square mod `p`.
///
/// Elements are pairs `(a, b)` meaning `a + b*s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticExtension {
    base: PrimeField,
    r: u64,
}

impl QuadraticExtension {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidInput(
                "quadratic extension needs odd p".into(),
            ));
        }
        let base = PrimeField::new(p)?;
        let r = base.smallest_non_square();
        Ok(QuadraticExtension { base, r })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// The non-residue `r` with `s^2 = r`.
    pub fn non_residue(&self) -> u64 {
        self.r
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a % self.base.modulus(), 0)
    }

    /// Frobenius `x -> x^p`, i.e. conjugation `a + b s -> a - b s`.
    pub fn conjugate(&self, x: &(u64, u64)) -> (u64, u64) {
        (x.0, self.base.neg(&x.1))
    }

    pub fn is_base(&self, x: &(u64, u64)) -> bool {
        x.1 == 0
    }
}

impl Field for QuadraticExtension {
    type Elem = (u64, u64);

    fn spec(&self) -> FieldSpec {
        FieldSpec::QuadraticExtension(self.base.modulus())
    }
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn from_i64(&self, v: i64) -> (u64, u64) {
        (self.base.reduce_i64(v), 0)
    }
    #[inline]
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    #[inline]
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    #[inline]
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let p = self.base.modulus();
        let re = (a.0 * b.0 + (a.1 * b.1 % p) * self.r) % p;
        let im = (a.0 * b.1 + a.1 * b.0) % p;
        (re, im)
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u64, u64)) -> Option<(u64, u64)> {
        // (a + b s)^{-1} = (a - b s) / (a^2 - r b^2)
        let f = &self.base;
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&self.r, &f.mul(&a.1, &a.1)));
        let ni = f.inv(&norm)?;
        Some((f.mul(&a.0, &ni), f.mul(&f.neg(&a.1), &ni)))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> (u64, u64) {
        (self.base.random(rng), self.base.random(rng))
    }
    fn element(&self, index: u64) -> (u64, u64) {
        let p = self.base.modulus();
        let index = index % (p * p);
        (index % p, index / p)
    }
    fn element_index(&self, a: &(u64, u64)) -> u64 {
        a.0 + a.1 * self.base.modulus()
    }
    fn format(&self, a: &(u64, u64)) -> String {
        format!("{}+{}*s", a.0, a.1)
    }
    fn parse(&self, s: &str) -> Result<(u64, u64)> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad F_p^2 element {s:?}"));
        if let Some(body) = t.strip_suffix("*s") {
            // "a+b*s", "a-b*s" or "b*s"
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            let (a, b) = match split {
                Some(i) => {
                    let (a, b) = body.split_at(i);
                    let b = b.strip_prefix('+').unwrap_or(b);
                    (a, b)
                }
                None => ("0", body),
            };
            let a = self.base.parse(a).map_err(|_| bad())?;
            let b = self.base.parse(b).map_err(|_| bad())?;
            Ok((a, b))
        } else {
            Ok((self.base.parse(&t).map_err(|_| bad())?, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_r() {
        let f = QuadraticExtension::new(11).unwrap();
        assert_eq!(f.non_residue(), 2);
        let s = (0, 1);
        assert_eq!(f.mul(&s, &s), (2, 0));
    }

    #[test]
    fn inverses_and_parsing() {
        let f = QuadraticExtension::new(7).unwrap();
        for i in 1..49 {
            let x = f.element(i);
            let y = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &y), f.one());
            assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
        }
        assert_eq!(f.parse("3").unwrap(), (3, 0));
        assert_eq!(f.parse("2*s").unwrap(), (0, 2));
        assert_eq!(f.parse("1-1*s").unwrap(), (1, 6));
    }

    #[test]
    fn frobenius_fixes_base() {
        let f = QuadraticExtension::new(13).unwrap();
        for i in 0..169 {
            let x = f.element(i);
            let xp = f.pow(&x, 13);
            assert_eq!(xp, f.conjugate(&x));
        }
    }
}
