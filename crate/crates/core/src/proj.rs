//! Projective points: normalization, comparison and enumeration of
//! `P^(n-1)(F_q)`.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix};

/// Largest field order accepted by exhaustive scans.
pub const MAX_SCAN_ORDER: u64 = 211;

pub fn is_zero<F: Field>(f: F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// Scales `v` so its first nonzero coordinate is one.
pub fn normalize<F: Field>(f: F, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !f.is_zero(x)).ok_or(Error::ZeroPoint)?;
    let inv = f.inv(lead).expect("nonzero");
    Ok(v.iter().map(|x| f.mul(x, &inv)).collect())
}

/// Projective equality; zero vectors are equal only to zero vectors.
pub fn proj_eq<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    match (normalize(f, a), normalize(f, b)) {
        (Ok(x), Ok(y)) => x == y,
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

pub fn check_point<F: Field>(f: F, v: &[F::Elem], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Shape(format!(
            "point of length {} expected {n}",
            v.len()
        )));
    }
    if is_zero(f, v) {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

pub fn random_point<F: Field, R: Rng + ?Sized>(f: F, rng: &mut R, n: usize) -> Vec<F::Elem> {
    loop {
        let v = f.random_vec(rng, n);
        if !is_zero(f, &v) {
            return v;
        }
    }
}

/// Dimension of the span of some vectors.
pub fn span_rank<F: Field>(f: F, vs: &[Vec<F::Elem>]) -> usize {
    let Some(n) = vs.first().map(|v| v.len()) else {
        return 0;
    };
    Matrix::from_rows(f, n, vs.to_vec())
        .map(|m| m.rank())
        .unwrap_or(0)
}

/// The points of `P^(n-1)` over a finite field, indexed `0..len()`.
///
/// Points are normalized with leading coordinate one; index order groups
/// them by the position of that coordinate.
#[derive(Clone, Copy, Debug)]
pub struct ProjectiveSpace<F: Field> {
    field: F,
    n: usize,
    q: u64,
}

impl<F: Field> ProjectiveSpace<F> {
    pub fn new(field: F, n: usize) -> Result<Self> {
        let q = field.order().ok_or_else(|| {
            Error::UnsupportedField("exhaustive scan needs a finite field".into())
        })?;
        if q > MAX_SCAN_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "field of order {q} exceeds the scan limit {MAX_SCAN_ORDER}"
            )));
        }
        Ok(ProjectiveSpace { field, n, q })
    }

    pub fn len(&self) -> u64 {
        (0..self.n)
            .map(|k| self.q.pow((self.n - 1 - k) as u32))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn point(&self, mut index: u64) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = vec![f.zero(); self.n];
        for k in 0..self.n {
            let block = self.q.pow((self.n - 1 - k) as u32);
            if index < block {
                v[k] = f.one();
                for j in (k + 1..self.n).rev() {
                    v[j] = f.element(index % self.q);
                    index /= self.q;
                }
                return v;
            }
            index -= block;
        }
        panic!("point index out of range");
    }

    /// Collects `map(point)` over all points where it returns `Some`, in
    /// index order. Work is split into fixed chunks so results do not depend
    /// on the thread count.
    pub fn scan<T: Send>(&self, map: impl Fn(&[F::Elem]) -> Option<T> + Sync) -> Vec<T> {
        const CHUNK: u64 = 4096;
        let len = self.len();
        let chunks = len.div_ceil(CHUNK);
        let parts: Vec<Vec<T>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(len);
                let mut out = Vec::new();
                let mut pt = self.point(c * CHUNK);
                for i in c * CHUNK..end {
                    if let Some(t) = map(&pt) {
                        out.push(t);
                    }
                    if i + 1 < end {
                        self.advance(&mut pt);
                    }
                }
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    }

    /// Step to the next point in index order.
    fn advance(&self, pt: &mut [F::Elem]) {
        let f = self.field;
        let lead = pt.iter().position(|x| !f.is_zero(x)).expect("nonzero");
        // odometer on the free tail
        for j in (lead + 1..self.n).rev() {
            let idx = f.element_index(&pt[j]);
            if idx + 1 < self.q {
                pt[j] = f.element(idx + 1);
                return;
            }
            pt[j] = f.zero();
        }
        pt[lead] = f.zero();
        pt[lead + 1] = f.one();
    }
}
