//! The involution of `P^3` attached to a curve `X` lying on exactly four
//! quartics: the quartics through `X` and a point `P` meet again in one
//! more point `P'`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, PrimeField, QuadraticExtension};
use crate::poly::{FormEvaluator, HomogPoly, MonomialBasis};
use crate::proj::{self, ProjectiveSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSystem<F: Field> {
    field: F,
    quartics: Vec<HomogPoly<F>>,
}

impl<F: Field> QuarticSystem<F> {
    pub fn new(field: F, quartics: Vec<HomogPoly<F>>) -> Result<Self> {
        if quartics.len() != 4 || quartics.iter().any(|q| q.nvars() != 4 || q.degree() != 4) {
            return Err(Error::Shape(
                "a quartic system is four quartics in four variables".into(),
            ));
        }
        if quartics.iter().any(|q| q.field() != field) {
            return Err(Error::FieldMismatch(
                field.spec().to_string(),
                "quartic".into(),
            ));
        }
        let basis = MonomialBasis::new(4, 4);
        let rows: Vec<_> = quartics.iter().map(|q| q.coeff_vector(&basis)).collect();
        if proj::span_rank(field, &rows) < 4 {
            return Err(Error::InvalidInput("quartics are dependent".into()));
        }
        Ok(QuarticSystem { field, quartics })
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn quartics(&self) -> &[HomogPoly<F>] {
        &self.quartics
    }

    pub fn values(&self, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
        proj::check_point(self.field, p, 4)?;
        self.quartics.iter().map(|q| q.evaluate(p)).collect()
    }

    /// True iff all four quartics vanish at `p`.
    pub fn contains(&self, p: &[F::Elem]) -> Result<bool> {
        Ok(self.values(p)?.iter().all(|v| self.field.is_zero(v)))
    }

    fn map_field<G: Field>(
        &self,
        g: G,
        f: impl Fn(&F::Elem) -> G::Elem + Copy,
    ) -> QuarticSystem<G> {
        QuarticSystem {
            field: g,
            quartics: self.quartics.iter().map(|q| q.map_field(g, f)).collect(),
        }
    }
}

fn combine<F: Field>(f: F, qs: &[HomogPoly<F>], c: &[F::Elem]) -> Result<HomogPoly<F>> {
    let mut acc = HomogPoly::zero(f, 4, 4);
    for (q, ci) in qs.iter().zip(c) {
        acc = acc.add(&q.scale(ci))?;
    }
    Ok(acc)
}

/// Basis of the quartics of the system vanishing at `p`.
pub fn quartics_through_point<F: Field>(
    s: &QuarticSystem<F>,
    p: &[F::Elem],
) -> Result<Vec<HomogPoly<F>>> {
    let f = s.field;
    let v = s.values(p)?;
    if proj::is_zero(f, &v) {
        return Err(Error::OnCurve);
    }
    Matrix::new(f, 1, 4, v)?
        .kernel_basis()
        .iter()
        .map(|c| combine(f, &s.quartics, c))
        .collect()
}

/// Common zeros of `three` off the base locus of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual<E> {
    pub points: Vec<Vec<E>>,
    /// more than two points: the system is special at this point
    pub degenerate: bool,
}

pub fn residual_points<F: Field>(
    s: &QuarticSystem<F>,
    three: &[HomogPoly<F>],
) -> Result<Residual<F::Elem>> {
    let f = s.field;
    if three.len() != 3 {
        return Err(Error::Shape("expected three quartics".into()));
    }
    let ps = ProjectiveSpace::new(f, 4)?;
    let sub = FormEvaluator::new(f, 4, 4, three)?;
    let all = FormEvaluator::new(f, 4, 4, &s.quartics)?;
    let points = ps.scan(|p| {
        let mono = sub.monomial_values(p);
        let on_three = (0..3).all(|i| f.is_zero(&sub.eval_one(i, &mono)));
        let on_x = on_three && (0..4).all(|i| f.is_zero(&all.eval_one(i, &mono)));
        (on_three && !on_x).then(|| p.to_vec())
    });
    Ok(Residual {
        degenerate: points.len() > 2,
        points,
    })
}

/// Residual points over `F_(p^2)` for a system over `F_p` (small `p`).
pub fn residual_points_extension(
    s: &QuarticSystem<PrimeField>,
    three: &[HomogPoly<PrimeField>],
) -> Result<Residual<(u64, u64)>> {
    let k = QuadraticExtension::new(s.field.modulus())?;
    let emb = |c: &u64| k.embed(*c);
    let three: Vec<_> = three.iter().map(|q| q.map_field(k, emb)).collect();
    residual_points(&s.map_field(k, emb), &three)
}

/// `sigma(P)`: the residual point other than `P`, or `P` itself when it
/// is the only one.
pub fn involution_apply<F: Field>(s: &QuarticSystem<F>, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let f = s.field;
    let three = quartics_through_point(s, p)?;
    let res = residual_points(s, &three)?;
    if res.degenerate {
        return Err(Error::Degenerate(format!(
            "{} residual points",
            res.points.len()
        )));
    }
    let p = proj::normalize(f, p)?;
    match res.points.iter().find(|q| **q != p) {
        Some(q) => Ok(q.clone()),
        None if res.points.contains(&p) => Ok(p),
        None => Err(Error::Degenerate(
            "point is not among its residual points".into(),
        )),
    }
}

/// All pairs `{P, P'}` at once: points off `X` grouped by their image
/// under the four quartics.
#[derive(Clone, Debug)]
pub struct InvolutionIndex<F: Field> {
    classes: HashMap<Vec<F::Elem>, Vec<Vec<F::Elem>>>,
}

impl<F: Field> InvolutionIndex<F>
where
    F::Elem: std::hash::Hash,
{
    pub fn build(s: &QuarticSystem<F>) -> Result<Self> {
        let f = s.field;
        let ps = ProjectiveSpace::new(f, 4)?;
        let all = FormEvaluator::new(f, 4, 4, &s.quartics)?;
        let images = ps.scan(|p| {
            let v = all.eval_all(p);
            proj::normalize(f, &v).ok().map(|img| (img, p.to_vec()))
        });
        let mut classes: HashMap<Vec<F::Elem>, Vec<Vec<F::Elem>>> = HashMap::new();
        for (img, p) in images {
            classes.entry(img).or_default().push(p);
        }
        Ok(InvolutionIndex { classes })
    }

    /// The other point of the fiber of `p`; `None` when `p` is on `X` or
    /// its fiber does not have exactly two points.
    pub fn partner(&self, s: &QuarticSystem<F>, p: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        let f = s.field;
        let Ok(img) = proj::normalize(f, &s.values(p)?) else {
            return Ok(None);
        };
        let p = proj::normalize(f, p)?;
        Ok(match self.classes.get(&img).map(|c| c.as_slice()) {
            Some([a, b]) if *a == p => Some(b.clone()),
            Some([a, b]) if *b == p => Some(a.clone()),
            Some([a]) if *a == p => Some(p),
            _ => None,
        })
    }

    pub fn fiber_sizes(&self) -> HashMap<usize, usize> {
        let mut out = HashMap::new();
        for c in self.classes.values() {
            *out.entry(c.len()).or_default() += 1;
        }
        out
    }
}

/// Two families of quartics span the same subspace.
pub fn same_span<F: Field>(f: F, a: &[HomogPoly<F>], b: &[HomogPoly<F>]) -> bool {
    let basis = MonomialBasis::new(4, 4);
    let va: Vec<_> = a.iter().map(|q| q.coeff_vector(&basis)).collect();
    let vb: Vec<_> = b.iter().map(|q| q.coeff_vector(&basis)).collect();
    let ra = proj::span_rank(f, &va);
    ra == proj::span_rank(f, &vb) && ra == proj::span_rank(f, &[va, vb].concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;

    fn random_quartic(f: PrimeField, rng: &mut crate::rng::Rng) -> HomogPoly<PrimeField> {
        HomogPoly::from_coeffs(f, 4, 4, &f.random_vec(rng, 35)).unwrap()
    }

    #[test]
    fn quartics_through_a_point() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_for(0, "inv", 0);
        let qs: Vec<_> = (0..4).map(|_| random_quartic(f, &mut rng)).collect();
        let s = QuarticSystem::new(f, qs.clone()).unwrap();
        let p = proj::random_point(f, &mut rng, 4);
        let three = quartics_through_point(&s, &p).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.iter().all(|q| q.evaluate(&p).unwrap() == 0));
        assert!(same_span(
            f,
            &three,
            &three[..].iter().rev().cloned().collect::<Vec<_>>()
        ));
        assert!(QuarticSystem::new(
            f,
            vec![qs[0].clone(), qs[0].clone(), qs[1].clone(), qs[2].clone()]
        )
        .is_err());
    }

    #[test]
    fn on_curve_is_rejected() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_for(0, "inv", 1);
        // four quartics through e_0
        let qs: Vec<_> = (0..4)
            .map(|_| {
                let mut q = random_quartic(f, &mut rng);
                let c = q.coeff(&[4, 0, 0, 0]);
                q = q.sub(&HomogPoly::monomial(f, vec![4, 0, 0, 0], c)).unwrap();
                q
            })
            .collect();
        let s = QuarticSystem::new(f, qs).unwrap();
        assert!(matches!(
            quartics_through_point(&s, &[1, 0, 0, 0]),
            Err(Error::OnCurve)
        ));
        assert!(matches!(
            involution_apply(&s, &[1, 0, 0, 0]),
            Err(Error::OnCurve)
        ));
    }

    #[test]
    fn extension_contains_base_points() {
        let f = PrimeField::new(3).unwrap();
        let k = QuadraticExtension::new(3).unwrap();
        let mut rng = rng_for(0, "inv", 2);
        let qs: Vec<_> = (0..4).map(|_| random_quartic(f, &mut rng)).collect();
        let s = QuarticSystem::new(f, qs).unwrap();
        let p = loop {
            let p = proj::random_point(f, &mut rng, 4);
            if !s.contains(&p).unwrap() {
                break p;
            }
        };
        let three = quartics_through_point(&s, &p).unwrap();
        let base = residual_points(&s, &three).unwrap();
        let ext = residual_points_extension(&s, &three).unwrap();
        assert!(base.points.contains(&proj::normalize(f, &p).unwrap()));
        for q in &base.points {
            let e: Vec<_> = q.iter().map(|c| k.embed(*c)).collect();
            assert!(ext.points.contains(&e));
        }
        assert!(ext.points.len() >= base.points.len());
    }
}
