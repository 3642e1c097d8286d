//! Zero-dimensional projective schemes cut out by homogeneous forms.
//!
//! Once the Hilbert function of `S/J` is constant, say `n`, multiplication
//! by the variables gives maps `S_d/J_d -> S_(d+1)/J_(d+1)` between
//! `n`-dimensional spaces. Dividing by a linear form that misses the scheme
//! yields commuting operators whose joint eigenvalues are the affine
//! coordinates of the points.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::poly::{monomials, GradedIdeal, MonomialBasis};
use crate::proj;

/// Upper bound on the field size for brute-force root finding.
const ROOT_SEARCH_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroScheme<E> {
    Finite {
        /// length counted with multiplicity
        length: usize,
        /// number of geometric points
        distinct: usize,
        /// points defined over the base field, normalized
        rational: Vec<Vec<E>>,
    },
    /// Hilbert function never became constant up to the degree bound.
    Positive,
}

impl<E> ZeroScheme<E> {
    pub fn distinct(&self) -> Option<usize> {
        match self {
            ZeroScheme::Finite { distinct, .. } => Some(*distinct),
            ZeroScheme::Positive => None,
        }
    }
}

/// Coefficients low to high, trailing zeros removed.
pub(crate) fn trim<F: Field>(f: F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

fn poly_rem<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = trim(f, a.to_vec());
    let lead_inv = f.inv(b.last().expect("nonzero divisor")).expect("trimmed");
    while r.len() >= b.len() {
        let c = f.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] = f.sub(&r[shift + k], &f.mul(&c, bk));
        }
        r = trim(f, r);
    }
    r
}

pub(crate) fn poly_gcd<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative<F: Field>(f: F, p: &[F::Elem]) -> Vec<F::Elem> {
    let d = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| f.mul(&f.from_i64(k as i64), c))
        .collect();
    trim(f, d)
}

fn eval_poly<F: Field>(f: F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.mul_add(c, &acc, x))
}

/// `det(t I - m)` by interpolation at `n + 1` field elements.
pub(crate) fn char_poly<F: Field>(f: F, m: &Matrix<F>) -> Result<Vec<F::Elem>> {
    let n = m.rows();
    if f.order().is_some_and(|q| q <= n as u64) {
        return Err(Error::FieldTooLarge(format!(
            "field too small to interpolate a degree {n} characteristic polynomial"
        )));
    }
    let xs: Vec<F::Elem> = (0..=n as u64).map(|k| f.element(k)).collect();
    let ys = xs
        .iter()
        .map(|x| Matrix::scalar(f, n, x.clone()).sub(m)?.det())
        .collect::<Result<Vec<_>>>()?;
    // Lagrange interpolation
    let mut out = vec![f.zero(); n + 1];
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = vec![f.one()];
        let mut denom = f.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![f.zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = f.add(&next[k + 1], c);
                next[k] = f.sub(&next[k], &f.mul(c, xj));
            }
            basis = next;
            denom = f.mul(&denom, &f.sub(xi, xj));
        }
        let scale = f.div(&ys[i], &denom).expect("distinct nodes");
        for (k, c) in basis.iter().enumerate() {
            out[k] = f.mul_add(&out[k], c, &scale);
        }
    }
    Ok(trim(f, out))
}

fn distinct_roots<F: Field>(f: F, chi: &[F::Elem]) -> usize {
    let deg = chi.len().saturating_sub(1);
    let g = poly_gcd(f, chi, &derivative(f, chi));
    deg - g.len().saturating_sub(1)
}

/// Degree-`d` quotient data: reduced echelon rows of `J_d` and the
/// standard (non-pivot) monomial columns.
struct Quotient<F: Field> {
    basis: MonomialBasis,
    rref: Matrix<F>,
    pivots: Vec<usize>,
    standard: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    fn new(ideal: &GradedIdeal<F>, d: u32) -> Self {
        let basis = MonomialBasis::new(ideal.nvars(), d);
        let (rref, pivots) = ideal.graded_basis(d);
        let standard = (0..basis.len()).filter(|c| !pivots.contains(c)).collect();
        Quotient {
            basis,
            rref,
            pivots,
            standard,
        }
    }

    /// Normal form of a monomial, in the coordinates of `standard`.
    fn reduce_monomial(&self, f: F, e: &[u32]) -> Vec<F::Elem> {
        let col = self
            .basis
            .index_of(e)
            .expect("monomial of the right degree");
        let mut v = vec![f.zero(); self.basis.len()];
        v[col] = f.one();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if !f.is_zero(&v[pc]) {
                let c = v[pc].clone();
                for (k, x) in self.rref.row(row).iter().enumerate() {
                    v[k] = f.sub(&v[k], &f.mul(&c, x));
                }
            }
        }
        self.standard.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Analyzes the projective scheme of `ideal`, searching for a stable
/// Hilbert function up to degree `max_degree`.
pub fn analyze<F: Field, R: Rng + ?Sized>(
    ideal: &GradedIdeal<F>,
    max_degree: u32,
    rng: &mut R,
) -> Result<ZeroScheme<F::Elem>> {
    let f = ideal.field();
    let nv = ideal.nvars();
    let start = ideal
        .generators()
        .iter()
        .map(|g| g.degree())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut stable = None;
    let mut h: Vec<i64> = Vec::new();
    for d in start..=max_degree {
        h.push(ideal.hilbert_function(d));
        let k = h.len();
        if k >= 3 && h[k - 1] == h[k - 2] && h[k - 2] == h[k - 3] {
            stable = Some((d - 2, h[k - 1] as usize));
            break;
        }
    }
    let Some((d, n)) = stable else {
        return Ok(ZeroScheme::Positive);
    };
    if n == 0 {
        return Ok(ZeroScheme::Finite {
            length: 0,
            distinct: 0,
            rational: Vec::new(),
        });
    }
    let q0 = Quotient::new(ideal, d);
    let q1 = Quotient::new(ideal, d + 1);
    debug_assert_eq!(q0.standard.len(), n);
    debug_assert_eq!(q1.standard.len(), n);
    // multiplication by x_i from degree d to d + 1
    let mult: Vec<Matrix<F>> = (0..nv)
        .map(|i| {
            let mut m = Matrix::zeros(f, n, n);
            for (a, &c) in q0.standard.iter().enumerate() {
                let mut e = monomials(nv, d)[c].clone();
                e[i] += 1;
                for (b, x) in q1.reduce_monomial(f, &e).into_iter().enumerate() {
                    m.set(b, a, x);
                }
            }
            m
        })
        .collect();
    let combo = |coef: &[F::Elem], ms: &[Matrix<F>]| {
        ms.iter()
            .zip(coef)
            .fold(Matrix::zeros(f, n, n), |acc, (m, c)| {
                acc.add(&m.scale(c)).expect("same shape")
            })
    };
    let mut nh_inv = None;
    for _ in 0..50 {
        let hcoef = proj::random_point(f, rng, nv);
        if let Some(inv) = combo(&hcoef, &mult).inverse()? {
            nh_inv = Some(inv);
            break;
        }
    }
    let nh_inv =
        nh_inv.ok_or_else(|| Error::Degenerate("no linear form avoids the scheme".into()))?;
    let t: Vec<Matrix<F>> = mult.iter().map(|m| nh_inv.mul(m)).collect::<Result<_>>()?;
    let mut distinct = 0;
    let mut best_l = None;
    for _ in 0..8 {
        let l = f.random_vec(rng, nv);
        let tl = combo(&l, &t);
        let chi = char_poly(f, &tl)?;
        let k = distinct_roots(f, &chi);
        if k > distinct || best_l.is_none() {
            distinct = k;
            best_l = Some((tl, chi));
        }
        if distinct == n {
            break;
        }
    }
    let (mut tl, mut chi) = best_l.expect("at least one trial");
    let mut rational = Vec::new();
    if let Some(q) = f.order().filter(|&q| q <= ROOT_SEARCH_LIMIT) {
        // an eigenvalue with a larger eigenspace hides its point; retry
        // with other combinations
        for _ in 0..8 {
            let mut hidden = false;
            for idx in 0..q {
                let e = f.element(idx);
                if !f.is_zero(&eval_poly(f, &chi, &e)) {
                    continue;
                }
                let ker = tl.sub(&Matrix::scalar(f, n, e))?.kernel_basis();
                if ker.len() != 1 {
                    hidden = true;
                    continue;
                }
                let v = &ker[0];
                let k = v.iter().position(|x| !f.is_zero(x)).expect("nonzero");
                let coords: Vec<F::Elem> = t
                    .iter()
                    .map(|ti| {
                        let w = ti.mul_vec(v).expect("shape");
                        f.div(&w[k], &v[k]).expect("nonzero")
                    })
                    .collect();
                if let Ok(p) = proj::normalize(f, &coords) {
                    if ideal.vanishes_at(&p)? {
                        rational.push(p);
                    }
                }
            }
            if !hidden {
                break;
            }
            tl = combo(&f.random_vec(rng, nv), &t);
            chi = char_poly(f, &tl)?;
        }
    }
    rational.sort();
    rational.dedup();
    Ok(ZeroScheme::Finite {
        length: n,
        distinct,
        rational,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::HomogPoly;
    use crate::rng::rng_for;

    fn lin(f: PrimeField, c: &[u64]) -> HomogPoly<PrimeField> {
        HomogPoly::linear(f, c)
    }

    #[test]
    fn two_points_in_the_plane() {
        let f = PrimeField::new(101).unwrap();
        // points (1,0,0) and (0,1,0): ideal (x2, x0 x1)
        let x2 = lin(f, &[0, 0, 1]);
        let x0x1 = lin(f, &[1, 0, 0]).mul(&lin(f, &[0, 1, 0])).unwrap();
        let i = GradedIdeal::new(f, 3, vec![x2, x0x1]).unwrap();
        let mut rng = rng_for(0, "zs", 0);
        let z = analyze(&i, 8, &mut rng).unwrap();
        assert_eq!(
            z,
            ZeroScheme::Finite {
                length: 2,
                distinct: 2,
                rational: vec![vec![0, 1, 0], vec![1, 0, 0]],
            }
        );
    }

    #[test]
    fn double_point_and_conjugate_pair() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_for(0, "zs", 1);
        let x0 = lin(f, &[1, 0, 0]);
        let x1 = lin(f, &[0, 1, 0]);
        let x2 = lin(f, &[0, 0, 1]);
        // x2, x1^2: double point at (1,0,0)
        let i = GradedIdeal::new(f, 3, vec![x2.clone(), x1.pow(2).unwrap()]).unwrap();
        let z = analyze(&i, 8, &mut rng).unwrap();
        assert_eq!(z.distinct(), Some(1));
        assert!(matches!(z, ZeroScheme::Finite { length: 2, .. }));
        // x2, x0^2 - 2 x1^2 with 2 a non-square mod 101
        let q = x0
            .pow(2)
            .unwrap()
            .sub(&x1.pow(2).unwrap().scale(&2))
            .unwrap();
        let i = GradedIdeal::new(f, 3, vec![x2, q]).unwrap();
        let z = analyze(&i, 8, &mut rng).unwrap();
        assert_eq!(
            z,
            ZeroScheme::Finite {
                length: 2,
                distinct: 2,
                rational: vec![],
            }
        );
    }

    #[test]
    fn curve_is_positive_dimensional() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_for(0, "zs", 2);
        let i = GradedIdeal::new(f, 3, vec![lin(f, &[1, 2, 3])]).unwrap();
        assert_eq!(analyze(&i, 6, &mut rng).unwrap(), ZeroScheme::Positive);
    }

    #[test]
    fn char_poly_of_companion() {
        let f = PrimeField::new(101).unwrap();
        // companion of t^2 - 3t + 2
        let m = Matrix::new(f, 2, 2, vec![0, f.neg(&2), 1, 3]).unwrap();
        assert_eq!(char_poly(f, &m).unwrap(), vec![2, f.neg(&3), 1]);
        assert_eq!(distinct_roots(f, &[1, f.neg(&2), 1]), 1);
        assert_eq!(poly_gcd(f, &[f.neg(&1), 0, 1], &[1, 1]), vec![1, 1]);
    }
}
