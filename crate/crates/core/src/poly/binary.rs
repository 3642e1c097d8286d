use super::HomogPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::proj;

/// Binary form of degree `n` with coefficients in the basis
/// `x^n, x^(n-1) t, ..., t^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape(
                "binary form needs at least one coefficient".into(),
            ));
        }
        Ok(BinaryForm { field, coeffs })
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        BinaryForm {
            field,
            coeffs: coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        }
    }

    pub fn zero(field: F, degree: usize) -> Self {
        BinaryForm {
            field,
            coeffs: vec![field.zero(); degree + 1],
        }
    }

    /// `a x + b t`
    pub fn linear(field: F, a: F::Elem, b: F::Elem) -> Self {
        BinaryForm {
            field,
            coeffs: vec![a, b],
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(&out[i + j], a, b);
            }
        }
        BinaryForm {
            field: f,
            coeffs: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Shape(
                "sum of binary forms of different degree".into(),
            ));
        }
        let f = self.field;
        Ok(BinaryForm {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        BinaryForm {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    pub fn evaluate(&self, x: &F::Elem, t: &F::Elem) -> F::Elem {
        let f = self.field;
        let n = self.degree();
        let mut acc = f.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = f.mul(&f.mul(c, &f.pow(x, (n - i) as u64)), &f.pow(t, i as u64));
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Substitutes `x -> a x + b t`, `t -> c x + d t`.
    pub fn substitute(&self, a: &F::Elem, b: &F::Elem, c: &F::Elem, d: &F::Elem) -> Self {
        let f = self.field;
        let n = self.degree();
        let lx = BinaryForm::linear(f, a.clone(), b.clone());
        let lt = BinaryForm::linear(f, c.clone(), d.clone());
        let one = BinaryForm {
            field: f,
            coeffs: vec![f.one()],
        };
        let pow = |l: &BinaryForm<F>, k: usize| (0..k).fold(one.clone(), |acc, _| acc.mul(l));
        let mut out = BinaryForm::zero(f, n);
        for (i, co) in self.coeffs.iter().enumerate() {
            if f.is_zero(co) {
                continue;
            }
            let term = pow(&lx, n - i).mul(&pow(&lt, i)).scale(co);
            out = out.add(&term).expect("same degree");
        }
        out
    }

    /// True iff `self` divides `other` (solved as a linear system).
    pub fn divides(&self, other: &Self) -> bool {
        let f = self.field;
        if self.is_zero() {
            return other.is_zero();
        }
        if self.degree() > other.degree() {
            return other.is_zero();
        }
        let k = other.degree() - self.degree();
        // columns: coefficients of self * x^(k-j) t^j
        let m = Matrix::from_fn(f, other.coeffs.len(), k + 1, |i, j| {
            if i >= j && i - j < self.coeffs.len() {
                self.coeffs[i - j].clone()
            } else {
                f.zero()
            }
        });
        matches!(m.solve(&other.coeffs), Ok(Some(_)))
    }

    /// Discriminant of a quadratic or cubic form.
    pub fn discriminant(&self) -> Result<F::Elem> {
        let f = self.field;
        let c = &self.coeffs;
        let i = |v: i64| f.from_i64(v);
        match self.degree() {
            2 => Ok(f.sub(&f.mul(&c[1], &c[1]), &f.mul(&i(4), &f.mul(&c[0], &c[2])))),
            3 => {
                let (a, b, cc, d) = (&c[0], &c[1], &c[2], &c[3]);
                let m = |xs: &[&F::Elem]| xs.iter().fold(f.one(), |acc, x| f.mul(&acc, x));
                let terms = [
                    m(&[b, b, cc, cc]),
                    f.mul(&i(-4), &m(&[a, cc, cc, cc])),
                    f.mul(&i(-4), &m(&[b, b, b, d])),
                    f.mul(&i(-27), &m(&[a, a, d, d])),
                    f.mul(&i(18), &m(&[a, b, cc, d])),
                ];
                Ok(terms.iter().fold(f.zero(), |acc, t| f.add(&acc, t)))
            }
            n => Err(Error::InvalidInput(format!(
                "discriminant of degree {n} not supported"
            ))),
        }
    }
}

/// Restriction of `p` to the line through `a` and `b`: the binary form
/// `p(s a + t b)` in `(s, t)`.
pub fn restrict_to_line<F: Field>(
    p: &HomogPoly<F>,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<BinaryForm<F>> {
    let f = p.field();
    if a.len() != p.nvars() || b.len() != p.nvars() {
        return Err(Error::Shape("point length".into()));
    }
    if proj::is_zero(f, a) || proj::is_zero(f, b) {
        return Err(Error::ZeroPoint);
    }
    if proj::proj_eq(f, a, b) {
        return Err(Error::ParallelPoints);
    }
    let lines: Vec<BinaryForm<F>> = a
        .iter()
        .zip(b)
        .map(|(x, y)| BinaryForm::linear(f, x.clone(), y.clone()))
        .collect();
    let one = BinaryForm {
        field: f,
        coeffs: vec![f.one()],
    };
    let n = p.degree() as usize;
    let mut powers: Vec<Vec<BinaryForm<F>>> = lines.iter().map(|_| vec![one.clone()]).collect();
    let mut out = BinaryForm::zero(f, n);
    for (e, c) in p.terms() {
        let mut t = one.scale(c);
        for (i, &k) in e.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&lines[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        out = out.add(&t)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn products() {
        let q = Rationals;
        let x = BinaryForm::from_i64(q, &[1, 0]);
        let t = BinaryForm::from_i64(q, &[0, 1]);
        assert_eq!(x.mul(&t), BinaryForm::from_i64(q, &[0, 1, 0]));
        let a = BinaryForm::from_i64(q, &[1, 1]);
        let b = BinaryForm::from_i64(q, &[1, -1]);
        assert_eq!(a.mul(&b), BinaryForm::from_i64(q, &[1, 0, -1]));
        let c = BinaryForm::from_i64(q, &[1, 0, 1]);
        let d = BinaryForm::from_i64(q, &[1, 2]);
        assert_eq!(c.mul(&d), BinaryForm::from_i64(q, &[1, 2, 1, 2]));
    }

    #[test]
    fn divisibility() {
        let q = Rationals;
        let f = BinaryForm::from_i64(q, &[0, 1, -1, 0]); // x t (x - t)
        assert!(BinaryForm::from_i64(q, &[0, 1, 0]).divides(&f));
        assert!(BinaryForm::from_i64(q, &[1, -1, 0]).divides(&f));
        assert!(!BinaryForm::from_i64(q, &[1, 0, -1]).divides(&f));
    }

    #[test]
    fn restriction_examples() {
        let q = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let x0 = HomogPoly::var(q, 4, 0);
        let r = restrict_to_line(&x0, &v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap();
        assert_eq!(r, BinaryForm::from_i64(q, &[1, 0]));

        let quad = HomogPoly::from_terms(
            q,
            4,
            2,
            vec![
                (vec![1, 0, 0, 1], q.one()),
                (vec![0, 1, 1, 0], q.from_i64(-1)),
            ],
        )
        .unwrap();
        let r = restrict_to_line(&quad, &v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap();
        assert!(r.is_zero());

        let cube = HomogPoly::monomial(q, vec![3, 0, 0, 0], q.one());
        let r = restrict_to_line(&cube, &v(&[1, 0, 0, 0]), &v(&[1, 1, 0, 0])).unwrap();
        assert_eq!(r, BinaryForm::from_i64(q, &[1, 3, 3, 1]));

        assert!(matches!(
            restrict_to_line(&x0, &v(&[1, 0, 0, 0]), &v(&[2, 0, 0, 0])),
            Err(Error::ParallelPoints)
        ));
    }

    #[test]
    fn cubic_discriminant() {
        let q = Rationals;
        // x t (x - t) has distinct roots
        let f = BinaryForm::from_i64(q, &[0, 1, -1, 0]);
        assert_ne!(f.discriminant().unwrap(), q.zero());
        let g = BinaryForm::from_i64(q, &[1, 0, 0, 0]);
        assert_eq!(g.discriminant().unwrap(), q.zero());
    }
}
