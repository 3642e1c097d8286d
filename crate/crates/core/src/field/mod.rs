//! Exact scalar fields and dense linear algebra over them.
//!
//! Three kinds of field are supported: the rationals, prime fields `F_p`
//! and quadratic extensions `F_{p^2}`. A field is a small `Copy` value that
//! carries its parameters; elements are plain data and every arithmetic
//! operation goes through the field value.

mod matrix;
mod prime;
mod quadratic;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use matrix::Matrix;
pub use prime::PrimeField;
pub use quadratic::QuadraticExtension;
pub use rational::Rationals;

use crate::error::{Error, Result};

/// Default prime for random sampling experiments.
pub const SAMPLING_PRIME: u64 = 10007;
/// Default prime for exhaustive scans of projective space.
pub const SCAN_PRIME: u64 = 101;
/// Default prime for exhaustive scans that also visit the quadratic extension.
pub const SMALL_SCAN_PRIME: u64 = 11;

/// Runtime description of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    QuadraticExtension(u64),
}

impl FieldSpec {
    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::QuadraticExtension(p) => Some(p * p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) | FieldSpec::QuadraticExtension(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::QuadraticExtension(p) => write!(f, "fp2:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let parse_p = |t: &str| -> Result<u64> {
            let p: u64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field spec {s:?}")))?;
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if p >= 1 << 31 {
                return Err(Error::InvalidInput(format!("prime {p} too large")));
            }
            Ok(p)
        };
        if let Some(rest) = s.strip_prefix("fp2:") {
            let p = parse_p(rest)?;
            if p == 2 {
                return Err(Error::InvalidInput(
                    "quadratic extension needs odd p".into(),
                ));
            }
            return Ok(FieldSpec::QuadraticExtension(p));
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            return Ok(FieldSpec::Prime(parse_p(rest)?));
        }
        Err(Error::Parse(format!("unknown field spec {s:?}")))
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// An exact field. Implementations are cheap `Copy` handles.
pub trait Field: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform element for finite fields; small integers for the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// The `index`-th element in a fixed enumeration (finite fields only).
    fn element(&self, index: u64) -> Self::Elem;

    /// Inverse of [`Field::element`] on its range.
    fn element_index(&self, a: &Self::Elem) -> u64;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn order(&self) -> Option<u64> {
        self.spec().order()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// acc + a * b
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }

    /// Random element that is not zero.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    fn random_vec<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<Self::Elem> {
        (0..n).map(|_| self.random(rng)).collect()
    }

    fn parse_vec(&self, items: &[String]) -> Result<Vec<Self::Elem>> {
        items.iter().map(|s| self.parse(s)).collect()
    }

    fn format_vec(&self, items: &[Self::Elem]) -> Vec<String> {
        items.iter().map(|x| self.format(x)).collect()
    }

    /// Inner product of two equally long slices.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.mul_add(&acc, x, y))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
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

/// Calls `$body` with `$f` bound to the concrete field described by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p)?;
                $body
            }
            $crate::field::FieldSpec::QuadraticExtension(p) => {
                let $f = $crate::field::QuadraticExtension::new(p)?;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_round_trip() {
        for s in ["q", "fp:101", "fp2:11", "fp:10007"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("fp:100".parse::<FieldSpec>().is_err());
        assert!("fp2:2".parse::<FieldSpec>().is_err());
        assert!("gf:7".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(FieldSpec::Prime(11).order(), Some(11));
        assert_eq!(FieldSpec::QuadraticExtension(11).order(), Some(121));
        assert_eq!(FieldSpec::Rationals.order(), None);
    }
}
