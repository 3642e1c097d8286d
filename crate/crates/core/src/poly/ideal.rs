use super::{monomial_count, monomials, HomogPoly, MonomialBasis};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};

/// Homogeneous ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal<F: Field> {
    field: F,
    nvars: usize,
    gens: Vec<HomogPoly<F>>,
}

/// Result of fitting a linear Hilbert polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertFit {
    /// `h(d) = a d + b` on the whole range.
    Linear {
        a: i64,
        b: i64,
    },
    NoFit,
}

impl HilbertFit {
    pub fn pair(&self) -> Option<(i64, i64)> {
        match *self {
            HilbertFit::Linear { a, b } => Some((a, b)),
            HilbertFit::NoFit => None,
        }
    }
}

impl<F: Field> GradedIdeal<F> {
    /// Drops zero generators and generators proportional to an earlier one.
    pub fn new(field: F, nvars: usize, gens: Vec<HomogPoly<F>>) -> Result<Self> {
        let mut kept: Vec<HomogPoly<F>> = Vec::new();
        for g in gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(
                    g.field().spec().to_string(),
                    field.spec().to_string(),
                ));
            }
            if g.nvars() != nvars {
                return Err(Error::Shape(
                    "generator in the wrong number of variables".into(),
                ));
            }
            if g.is_zero() {
                continue;
            }
            if kept.iter().any(|k| proportional(k, &g)) {
                continue;
            }
            kept.push(g);
        }
        Ok(GradedIdeal {
            field,
            nvars,
            gens: kept,
        })
    }

    pub fn zero(field: F, nvars: usize) -> Self {
        GradedIdeal {
            field,
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn generators(&self) -> &[HomogPoly<F>] {
        &self.gens
    }

    pub fn with_generator(&self, g: HomogPoly<F>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Self::new(self.field, self.nvars, gens)
    }

    /// Spanning rows of the degree-`d` piece: every monomial multiple of
    /// every generator of degree at most `d`.
    pub fn graded_span(&self, d: u32) -> Matrix<F> {
        let basis = MonomialBasis::new(self.nvars, d);
        let mut data = Vec::new();
        let mut rows = 0;
        for g in &self.gens {
            if g.degree() > d {
                continue;
            }
            for m in monomials(self.nvars, d - g.degree()) {
                data.extend(g.mul_monomial(&m).coeff_vector(&basis));
                rows += 1;
            }
        }
        Matrix::new(self.field, rows, basis.len(), data).expect("consistent shape")
    }

    /// Reduced echelon basis of the degree-`d` piece and its pivot columns.
    pub fn graded_basis(&self, d: u32) -> (Matrix<F>, Vec<usize>) {
        self.graded_span(d).rref()
    }

    pub fn graded_dim(&self, d: u32) -> usize {
        self.graded_span(d).rank()
    }

    /// `dim S_d - dim I_d`.
    pub fn hilbert_function(&self, d: u32) -> i64 {
        monomial_count(self.nvars, d) as i64 - self.graded_dim(d) as i64
    }

    /// Fits `h(d) = a d + b` exactly on `[dmin, dmax]`.
    pub fn hilbert_poly_fit(&self, dmin: u32, dmax: u32) -> Result<HilbertFit> {
        if dmax < dmin + 2 {
            return Err(Error::InvalidInput(format!(
                "need at least three degrees, got [{dmin}, {dmax}]"
            )));
        }
        let h: Vec<i64> = (dmin..=dmax).map(|d| self.hilbert_function(d)).collect();
        let a = h[1] - h[0];
        let b = h[0] - a * dmin as i64;
        let fits = h
            .iter()
            .zip(dmin..=dmax)
            .all(|(&v, d)| v == a * d as i64 + b);
        Ok(if fits {
            HilbertFit::Linear { a, b }
        } else {
            HilbertFit::NoFit
        })
    }

    /// True iff every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[F::Elem]) -> Result<bool> {
        for g in &self.gens {
            if !self.field.is_zero(&g.evaluate(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn linear_change(&self, g: &Matrix<F>) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|p| p.linear_change(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.field, self.nvars, gens)
    }
}

fn proportional<F: Field>(a: &HomogPoly<F>, b: &HomogPoly<F>) -> bool {
    if a.degree() != b.degree() || a.num_terms() != b.num_terms() {
        return false;
    }
    let f = a.field();
    let (Some(la), Some(lb)) = (a.leading_coeff(), b.leading_coeff()) else {
        return false;
    };
    let r = f.div(lb, la).expect("leading coefficient nonzero");
    a.terms().all(|(e, c)| f.mul(c, &r) == b.coeff(e))
}
