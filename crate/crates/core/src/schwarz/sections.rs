//! Global sections of `F(1)`, written as elements of `S_4-dual ⊗ S^2`
//! (five quadrics in the coordinates `z` of `P(S_3)`), and the linear
//! identification of plane cubics with sections.

use rand::Rng;

use super::{check_cubic, ternary_cubic, triplet_ideal_of_cubic};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::poly::{BinaryForm, FormEvaluator, HomogPoly, MonomialBasis};
use crate::proj;
use crate::rng::rng_for;

/// `coeffs[k][m]`: coefficient of the `m`-th quadric monomial in the
/// `k`-th coordinate of `S_4-dual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionF1<F: Field> {
    field: F,
    coeffs: Vec<Vec<F::Elem>>,
}

impl<F: Field> SectionF1<F> {
    /// Checks the shape and the 40 kernel conditions.
    pub fn new(field: F, coeffs: Vec<Vec<F::Elem>>) -> Result<Self> {
        if coeffs.len() != 5 || coeffs.iter().any(|r| r.len() != 10) {
            return Err(Error::Shape("a section is a 5x10 coefficient array".into()));
        }
        let s = SectionF1 { field, coeffs };
        if !s.residual().iter().all(|c| field.is_zero(c)) {
            return Err(Error::InvalidInput(
                "array does not satisfy the section conditions".into(),
            ));
        }
        Ok(s)
    }

    fn from_flat(field: F, v: &[F::Elem]) -> Self {
        SectionF1 {
            field,
            coeffs: v.chunks(10).map(|c| c.to_vec()).collect(),
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn coeffs(&self) -> &[Vec<F::Elem>] {
        &self.coeffs
    }
    pub fn flat(&self) -> Vec<F::Elem> {
        self.coeffs.concat()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| self.field.is_zero(c))
    }

    /// The 40 condition values (zero for a genuine section).
    pub fn residual(&self) -> Vec<F::Elem> {
        condition_matrix(self.field)
            .mul_vec(&self.flat())
            .expect("50 unknowns")
    }

    pub fn quadrics(&self) -> Vec<HomogPoly<F>> {
        self.coeffs
            .iter()
            .map(|c| HomogPoly::from_coeffs(self.field, 4, 2, c).expect("10 coefficients"))
            .collect()
    }

    pub fn evaluate(&self, z: &[F::Elem]) -> Result<Vec<F::Elem>> {
        proj::check_point(self.field, z, 4)?;
        let ev = FormEvaluator::new(self.field, 4, 2, &self.quadrics())?;
        Ok(ev.eval_all(z))
    }

    /// `sum_i c_i s_i`.
    pub fn combination(field: F, sections: &[Self], c: &[F::Elem]) -> Result<Self> {
        if sections.len() != c.len() {
            return Err(Error::Shape("one coefficient per section".into()));
        }
        let mut acc = vec![field.zero(); 50];
        for (s, ci) in sections.iter().zip(c) {
            for (a, x) in acc.iter_mut().zip(s.flat()) {
                *a = field.mul_add(a, ci, &x);
            }
        }
        Ok(Self::from_flat(field, &acc))
    }

    pub fn random<R: Rng + ?Sized>(field: F, rng: &mut R) -> Self {
        let basis = sections_of_f1_basis(field);
        loop {
            let c = field.random_vec(rng, basis.len());
            let s = Self::combination(field, &basis, &c).expect("matching lengths");
            if !s.is_zero() {
                return s;
            }
        }
    }
}

/// Rank of a family of sections as vectors.
pub(crate) fn sections_rank<F: Field>(field: F, s: &[SectionF1<F>]) -> usize {
    proj::span_rank(field, &s.iter().map(|x| x.flat()).collect::<Vec<_>>())
}

/// The 40 x 50 system: for `f(z) = sum z_k x^(3-k) t^k`, pairing `sigma(z)`
/// with `f x` and `f t` must vanish identically as cubics in `z`.
fn condition_matrix<F: Field>(field: F) -> Matrix<F> {
    let quad = MonomialBasis::new(4, 2);
    let cubic = MonomialBasis::new(4, 3);
    let mut m = Matrix::zeros(field, 40, 50);
    for shift in 0..2 {
        for k in 0..4 {
            for (mi, e) in quad.monomials.iter().enumerate() {
                let mut e3 = e.clone();
                e3[k] += 1;
                let row = shift * 20 + cubic.index_of(&e3).expect("cubic monomial");
                let col = (k + shift) * 10 + mi;
                let v = field.add(m.get(row, col), &field.one());
                m.set(row, col, v);
            }
        }
    }
    m
}

/// Basis of the 10-dimensional space of sections.
pub fn sections_of_f1_basis<F: Field>(field: F) -> Vec<SectionF1<F>> {
    condition_matrix(field)
        .kernel_basis()
        .into_iter()
        .map(|v| SectionF1::from_flat(field, &v))
        .collect()
}

/// The linear isomorphism from plane cubics to sections under which the
/// section of `X` vanishes exactly at the cubics `f` whose triplet lies
/// on `X`. It is solved for from that property on random cubics `f`.
#[derive(Clone, Debug)]
pub struct CubicCorrespondence<F: Field> {
    field: F,
    basis: Vec<SectionF1<F>>,
    /// `h[i][j]`: coefficient of basis section `i` for cubic monomial `j`
    h: Matrix<F>,
}

impl<F: Field> CubicCorrespondence<F> {
    pub fn new(field: F) -> Result<Self> {
        let basis = sections_of_f1_basis(field);
        let dq = MonomialBasis::new(4, 2);
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut rng = rng_for(0, "cubic-correspondence", 0);
        let mut used = 0;
        for attempt in 0..200 {
            let z = proj::random_point(field, &mut rng, 4);
            let f = BinaryForm::new(field, z.clone())?;
            let ideal = triplet_ideal_of_cubic(&f)?;
            let (i3, pivots) = ideal.graded_basis(3);
            if pivots.len() != 7 {
                continue;
            }
            used += 1;
            let mono: Vec<F::Elem> = dq
                .monomials
                .iter()
                .map(|e| HomogPoly::monomial(field, e.clone(), field.one()).evaluate(&z))
                .collect::<Result<_>>()?;
            let sv: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|s| s.coeffs.iter().map(|c| field.dot(c, &mono)).collect())
                .collect();
            for r in 0..pivots.len() {
                let c = i3.row(r);
                for k in 0..5 {
                    let mut row = vec![field.zero(); 100];
                    for i in 0..10 {
                        for j in 0..10 {
                            row[i * 10 + j] = field.mul(&c[j], &sv[i][k]);
                        }
                    }
                    rows.push(row);
                }
            }
            if used >= 12 && (used % 4 == 0 || attempt == 199) {
                let ker = Matrix::from_rows(field, 100, rows.clone())?.kernel_basis();
                if ker.len() == 1 {
                    let h = Matrix::new(field, 10, 10, ker[0].clone())?;
                    return Ok(CubicCorrespondence { field, basis, h });
                }
                if ker.is_empty() {
                    break;
                }
            }
        }
        Err(Error::Degenerate(
            "cubics-to-sections correspondence is not unique".into(),
        ))
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.h
    }
    pub fn basis(&self) -> &[SectionF1<F>] {
        &self.basis
    }

    pub fn section_of_cubic(&self, x: &HomogPoly<F>) -> Result<SectionF1<F>> {
        if x.nvars() != 3 || x.degree() != 3 || x.field() != self.field {
            return Err(Error::Shape(
                "expected a ternary cubic over the same field".into(),
            ));
        }
        let coeffs = x.coeff_vector(&MonomialBasis::new(3, 3));
        let c = self.h.mul_vec(&coeffs)?;
        SectionF1::combination(self.field, &self.basis, &c)
    }

    pub fn cubic_of_section(&self, s: &SectionF1<F>) -> Result<HomogPoly<F>> {
        let f = self.field;
        let b =
            Matrix::from_rows(f, 50, self.basis.iter().map(|x| x.flat()).collect())?.transpose();
        let c = b
            .solve(&s.flat())?
            .ok_or_else(|| Error::InvalidInput("not a section".into()))?;
        let inv = self
            .h
            .inverse()?
            .ok_or_else(|| Error::Degenerate("singular correspondence".into()))?;
        ternary_cubic(f, &inv.mul_vec(&c)?)
    }

    /// The section vanishes at `f` iff the triplet of `f` lies on `x`.
    pub fn section_vanishes(&self, x: &HomogPoly<F>, f: &BinaryForm<F>) -> Result<bool> {
        check_cubic(f)?;
        let s = self.section_of_cubic(x)?;
        Ok(s.evaluate(f.coeffs())?
            .iter()
            .all(|v| self.field.is_zero(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::schwarz::{random_ternary_cubic, triplet_lies_on_cubic};

    #[test]
    fn ten_sections_of_rank_three() {
        let f = PrimeField::new(10007).unwrap();
        let b = sections_of_f1_basis(f);
        assert_eq!(b.len(), 10);
        for s in &b {
            assert!(s.residual().iter().all(|c| *c == 0));
        }
        let mut rng = rng_for(0, "sections", 0);
        let z = proj::random_point(f, &mut rng, 4);
        let ev: Vec<_> = b.iter().map(|s| s.evaluate(&z).unwrap()).collect();
        assert_eq!(proj::span_rank(f, &ev), 3);
        let mut bad = b[0].coeffs().to_vec();
        bad[0][0] = f.add(&bad[0][0], &1);
        assert!(SectionF1::new(f, bad).is_err());
    }

    #[test]
    fn correspondence_matches_triplet_test() {
        let f = PrimeField::new(101).unwrap();
        let corr = CubicCorrespondence::new(f).unwrap();
        assert_eq!(corr.matrix().rank(), 10);
        let mut rng = rng_for(0, "sections", 1);
        let x = random_ternary_cubic(f, &mut rng);
        let s = corr.section_of_cubic(&x).unwrap();
        assert_eq!(corr.cubic_of_section(&s).unwrap(), x);
        // a cubic through the triplet of a random f
        for _ in 0..5 {
            let z = proj::random_point(f, &mut rng, 4);
            let bf = BinaryForm::new(f, z).unwrap();
            let (i3, piv) = triplet_ideal_of_cubic(&bf).unwrap().graded_basis(3);
            let mut c = vec![0; 10];
            for r in 0..piv.len() {
                let s = f.random(&mut rng);
                for (a, b) in c.iter_mut().zip(i3.row(r)) {
                    *a = f.mul_add(a, &s, b);
                }
            }
            let through = ternary_cubic(f, &c).unwrap();
            assert!(triplet_lies_on_cubic(&bf, &through).unwrap());
            assert!(corr.section_vanishes(&through, &bf).unwrap());
            assert!(!corr.section_vanishes(&x, &bf).unwrap());
        }
    }
}
