//! Space curves built from sections of `F(1)`: the degeneracy locus of a
//! pencil (degree 7, genus 2) and of a 4-dimensional family (degree 9,
//! genus 6).

use super::sections::{sections_rank, SectionF1};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::poly::{FormEvaluator, GradedIdeal, HilbertFit, HomogPoly, MonomialBasis};
use crate::proj::ProjectiveSpace;

/// Fewest sampled points accepted for quartic interpolation.
pub const MIN_CURVE9_POINTS: usize = 60;

/// Ideal of the ten 2x2 minors of the 2x5 matrix of quadrics `[s1; s2]`.
pub fn curve7_from_pencil<F: Field>(
    s1: &SectionF1<F>,
    s2: &SectionF1<F>,
) -> Result<GradedIdeal<F>> {
    let f = s1.field();
    if sections_rank(f, &[s1.clone(), s2.clone()]) < 2 {
        return Err(Error::InvalidInput("pencil sections are dependent".into()));
    }
    let a = s1.quadrics();
    let b = s2.quadrics();
    let mut minors = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            minors.push(a[i].mul(&b[j])?.sub(&a[j].mul(&b[i])?)?);
        }
    }
    GradedIdeal::new(f, 4, minors)
}

#[derive(Clone, Debug)]
pub struct Curve9<F: Field> {
    /// basis of the quartics through the sampled points
    pub quartics: Vec<HomogPoly<F>>,
    pub ideal: GradedIdeal<F>,
    pub sampled_points: usize,
}

/// Points of `P^3` over the (finite) field where the 4x5 matrix of the
/// sections has rank at most 2, interpolated by quartics.
pub fn curve9_from_quadruple<F: Field>(s: &[SectionF1<F>; 4]) -> Result<Curve9<F>> {
    let f = s[0].field();
    if sections_rank(f, s) < 4 {
        return Err(Error::InvalidInput("sections are dependent".into()));
    }
    let ps = ProjectiveSpace::new(f, 4)?;
    let quads: Vec<HomogPoly<F>> = s.iter().flat_map(|x| x.quadrics()).collect();
    let ev = FormEvaluator::new(f, 4, 2, &quads)?;
    let pts = ps.scan(|p| {
        let m = Matrix::new(f, 4, 5, ev.eval_all(p)).expect("20 values");
        (m.rank() <= 2).then(|| p.to_vec())
    });
    if pts.len() < MIN_CURVE9_POINTS {
        return Err(Error::Degenerate(format!(
            "only {} degeneracy points found, need {MIN_CURVE9_POINTS}",
            pts.len()
        )));
    }
    let basis = MonomialBasis::new(4, 4);
    let unit: Vec<HomogPoly<F>> = basis
        .monomials
        .iter()
        .map(|e| HomogPoly::monomial(f, e.clone(), f.one()))
        .collect();
    let mono = FormEvaluator::new(f, 4, 4, &unit)?;
    let rows: Vec<Vec<F::Elem>> = pts.iter().map(|p| mono.eval_all(p)).collect();
    let ker = Matrix::from_rows(f, basis.len(), rows)?.kernel_basis();
    if ker.len() != 4 {
        return Err(Error::Degenerate(format!(
            "quartics through the degeneracy locus form a space of dimension {}",
            ker.len()
        )));
    }
    let quartics = ker
        .iter()
        .map(|c| HomogPoly::from_coeffs(f, 4, 4, c))
        .collect::<Result<Vec<_>>>()?;
    let ideal = GradedIdeal::new(f, 4, quartics.clone())?;
    Ok(Curve9 {
        quartics,
        ideal,
        sampled_points: pts.len(),
    })
}

/// `2g + 2` for a curve of arithmetic genus `g` read off a Hilbert
/// polynomial `d n + 1 - g`: the branch points of a double cover of `P^1`.
pub fn branch_points_from_fit(fit: &HilbertFit) -> Option<i64> {
    fit.pair().map(|(_, b)| 2 * (1 - b) + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rng::rng_for;

    #[test]
    fn pencil_curve_has_degree_seven_genus_two() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = rng_for(0, "curve7", 0);
        let s1 = SectionF1::random(f, &mut rng);
        let s2 = SectionF1::random(f, &mut rng);
        let i = curve7_from_pencil(&s1, &s2).unwrap();
        assert_eq!(i.graded_dim(4), 8);
        let fit = i.hilbert_poly_fit(4, 8).unwrap();
        assert_eq!(fit, HilbertFit::Linear { a: 7, b: -1 });
        assert_eq!(branch_points_from_fit(&fit), Some(6));
        let dup = SectionF1::combination(f, &[s1.clone()], &[2]).unwrap();
        assert!(curve7_from_pencil(&s1, &dup).is_err());
        // another basis of the same pencil gives the same ideal
        let t1 = SectionF1::combination(f, &[s1.clone(), s2.clone()], &[3, 5]).unwrap();
        let t2 = SectionF1::combination(f, &[s1, s2], &[1, 9]).unwrap();
        let j = curve7_from_pencil(&t1, &t2).unwrap();
        for d in 4..=6 {
            let both = GradedIdeal::new(f, 4, [i.generators(), j.generators()].concat()).unwrap();
            assert_eq!(both.graded_dim(d), i.graded_dim(d));
            assert_eq!(j.graded_dim(d), i.graded_dim(d));
        }
    }
}
