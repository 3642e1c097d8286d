//! Sparse homogeneous polynomials, graded pieces of ideals and matrices of
//! linear forms.

mod binary;
mod ideal;
mod linmat;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Matrix};

pub use binary::{restrict_to_line, BinaryForm};
pub use ideal::{GradedIdeal, HilbertFit};
pub use linmat::{signed_row_deletion_minors_scalar, subsets, LinearFormMatrix, PolyMatrix};

pub type Exponent = Vec<u32>;

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// lexicographic order (so `x0^d` comes first).
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `binom(d + n - 1, n - 1)`, the number of monomials of degree `d`.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binom(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lookup from exponent vector to position in `monomials(n, d)`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// A homogeneous polynomial with sparse storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly<F: Field> {
    field: F,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, F::Elem>,
}

impl<F: Field> HomogPoly<F> {
    pub fn zero(field: F, nvars: usize, degree: u32) -> Self {
        HomogPoly {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms, summing repeats and dropping zeros.
    pub fn from_terms(
        field: F,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Shape(format!(
                    "exponent of length {} in {nvars} variables",
                    e.len()
                )));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!(
                    "exponent {e:?} does not have degree {degree}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars, 0);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn monomial(field: F, e: Exponent, c: F::Elem) -> Self {
        let nvars = e.len();
        let degree = e.iter().sum();
        let mut p = Self::zero(field, nvars, degree);
        p.add_term(e, c);
        p
    }

    /// The linear form `sum coeffs[i] x_i`.
    pub fn linear(field: F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Polynomial with coefficient vector `coeffs` in `monomials(nvars, degree)`.
    pub fn from_coeffs(field: F, nvars: usize, degree: u32, coeffs: &[F::Elem]) -> Result<Self> {
        let basis = monomials(nvars, degree);
        if basis.len() != coeffs.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                basis.len()
            )));
        }
        Self::from_terms(
            field,
            nvars,
            degree,
            basis.into_iter().zip(coeffs.iter().cloned()),
        )
    }

    fn add_term(&mut self, e: Exponent, c: F::Elem) {
        let f = self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = f.add(v, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F::Elem)> {
        self.terms.iter()
    }
    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.spec().to_string(),
                other.field.spec().to_string(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::Shape(
                "polynomials in different numbers of variables".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::InvalidInput(
                "sum of forms of different degrees".into(),
            ));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        let mut out = Self::zero(f, self.nvars, self.degree);
        if f.is_zero(c) {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), f.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut out = Self::zero(f, self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &[u32]) -> Self {
        let mut out = Self::zero(self.field, self.nvars, self.degree + m.iter().sum::<u32>());
        for (e, c) in &self.terms {
            let e: Exponent = e.iter().zip(m).map(|(x, y)| x + y).collect();
            out.terms.insert(e, c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.field, self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Coefficient vector in `basis` (which must have this degree).
    pub fn coeff_vector(&self, basis: &MonomialBasis) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); basis.len()];
        if self.is_zero() {
            return v;
        }
        debug_assert_eq!(basis.degree, self.degree);
        for (e, c) in &self.terms {
            v[basis.index_of(e).expect("monomial in basis")] = c.clone();
        }
        v
    }

    /// Substitutes `x_i -> images[i]`; all images must share one degree.
    pub fn substitute(&self, images: &[HomogPoly<F>]) -> Result<HomogPoly<F>> {
        if images.len() != self.nvars {
            return Err(Error::Shape(
                "substitution needs one image per variable".into(),
            ));
        }
        let f = self.field;
        let m = images[0].nvars;
        let k = images[0].degree;
        if images.iter().any(|g| g.nvars != m || g.field != f) {
            return Err(Error::Shape("substitution images differ in ring".into()));
        }
        // cache powers of each image
        let mut powers: Vec<Vec<HomogPoly<F>>> = images
            .iter()
            .map(|g| vec![HomogPoly::constant(f, m, f.one()), g.clone()])
            .collect();
        let mut out = HomogPoly::zero(f, m, self.degree * k);
        for (e, c) in &self.terms {
            let mut t = HomogPoly::constant(f, m, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                while powers[i].len() <= ei as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][ei as usize])?;
            }
            // force degree on zero-like images
            t.degree = self.degree * k;
            out = out.add(&t)?;
        }
        out.degree = self.degree * k;
        Ok(out)
    }

    /// Applies the linear change of variables `x -> g x` (`g` is `nvars x nvars`).
    pub fn linear_change(&self, g: &Matrix<F>) -> Result<HomogPoly<F>> {
        if g.rows() != self.nvars || g.cols() != self.nvars {
            return Err(Error::Shape("change of variables must be square".into()));
        }
        let images: Vec<_> = (0..self.nvars)
            .map(|i| HomogPoly::linear(self.field, g.row(i)))
            .collect();
        self.substitute(&images)
    }

    /// Maps the coefficients into another field.
    pub fn map_field<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> G::Elem) -> HomogPoly<G> {
        let mut out = HomogPoly::zero(field, self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// First nonzero coefficient in lexicographic order.
    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.values().next()
    }
}

/// Fast repeated evaluation of several forms of one degree.
#[derive(Clone, Debug)]
pub struct FormEvaluator<F: Field> {
    field: F,
    nvars: usize,
    degree: u32,
    monomials: Vec<Exponent>,
    /// coefficients, one row per form
    coeffs: Vec<Vec<F::Elem>>,
}

impl<F: Field> FormEvaluator<F> {
    pub fn new(field: F, nvars: usize, degree: u32, forms: &[HomogPoly<F>]) -> Result<Self> {
        let basis = MonomialBasis::new(nvars, degree);
        let mut coeffs = Vec::with_capacity(forms.len());
        for p in forms {
            if p.nvars != nvars || (!p.is_zero() && p.degree != degree) {
                return Err(Error::Shape("forms of mixed degree in evaluator".into()));
            }
            coeffs.push(p.coeff_vector(&basis));
        }
        Ok(FormEvaluator {
            field,
            nvars,
            degree,
            monomials: basis.monomials,
            coeffs,
        })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn monomial_values(&self, point: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let d = self.degree as usize;
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(d + 1);
                p.push(f.one());
                for k in 0..d {
                    let next = f.mul(&p[k], x);
                    p.push(next);
                }
                p
            })
            .collect();
        self.monomials
            .iter()
            .map(|e| {
                let mut t = f.one();
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t = f.mul(&t, &powers[i][k as usize]);
                    }
                }
                t
            })
            .collect()
    }

    /// Value of form `i` given precomputed monomial values.
    pub fn eval_one(&self, i: usize, mono: &[F::Elem]) -> F::Elem {
        self.field.dot(&self.coeffs[i], mono)
    }

    pub fn eval_all(&self, point: &[F::Elem]) -> Vec<F::Elem> {
        debug_assert_eq!(point.len(), self.nvars);
        let mono = self.monomial_values(point);
        (0..self.coeffs.len())
            .map(|i| self.eval_one(i, &mono))
            .collect()
    }

    /// True iff every form vanishes at `point`, stopping at the first nonzero.
    pub fn all_vanish(&self, point: &[F::Elem]) -> bool {
        let mono = self.monomial_values(point);
        (0..self.coeffs.len()).all(|i| self.field.is_zero(&self.eval_one(i, &mono)))
    }
}
