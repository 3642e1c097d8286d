//! Binary cubics, their triplets on the plane of binary quadrics, and the
//! rank-3 bundle `F(1)` on `P^3 = P(S_3)`.
//!
//! A point of the plane is a quadric `q = q0 x^2 + q1 x t + q2 t^2`. The
//! triplet of a cubic `f` is the set of quadrics dividing `f`, and the
//! canonical conic is the locus of squares `q1^2 - 4 q0 q2 = 0`.

mod curves;
mod locus;
mod sections;

pub use curves::{branch_points_from_fit, curve7_from_pencil, curve9_from_quadruple, Curve9};
pub use locus::{
    classify_triplet_locus, conic_with_tangent_line, count_points_with_triplet_on_cubic,
    find_unique_triplet_cubic, pencil_triplet_profile, pencil_triplet_profile_scan, poncelet_cubic,
    tangent_line, triplet_count_algebraic, triplet_locus_points, triplet_locus_points_unfiltered,
    PencilEntry, TripletCount, TripletLocus,
};
pub use sections::{sections_of_f1_basis, CubicCorrespondence, SectionF1};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{BinaryForm, GradedIdeal, HomogPoly, PolyMatrix};

/// A cubic in the plane coordinates `(q0, q1, q2)` from its ten
/// coefficients in descending lexicographic monomial order.
pub fn ternary_cubic<F: Field>(field: F, coeffs: &[F::Elem]) -> Result<HomogPoly<F>> {
    let p = HomogPoly::from_coeffs(field, 3, 3, coeffs)?;
    if p.is_zero() {
        return Err(Error::InvalidInput("zero cubic".into()));
    }
    Ok(p)
}

pub fn random_ternary_cubic<F: Field, R: rand::Rng + ?Sized>(
    field: F,
    rng: &mut R,
) -> HomogPoly<F> {
    loop {
        let c = field.random_vec(rng, 10);
        if let Ok(p) = ternary_cubic(field, &c) {
            return p;
        }
    }
}

pub fn binary_mul<F: Field>(f: &BinaryForm<F>, g: &BinaryForm<F>) -> BinaryForm<F> {
    f.mul(g)
}

fn check_cubic<F: Field>(f: &BinaryForm<F>) -> Result<()> {
    if f.degree() != 3 {
        return Err(Error::Shape(format!(
            "expected a binary cubic, got degree {}",
            f.degree()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

/// The four signed maximal minors of `[q x | q t | f]`, conics in `q`
/// vanishing exactly on the quadrics dividing `f`.
pub fn triplet_ideal_of_cubic<F: Field>(f: &BinaryForm<F>) -> Result<GradedIdeal<F>> {
    check_cubic(f)?;
    let field = f.field();
    let q = |i: usize| HomogPoly::var(field, 3, i);
    let z1 = HomogPoly::zero(field, 3, 1);
    let c = |k: usize| HomogPoly::constant(field, 3, f.coeffs()[k].clone());
    let rows = vec![
        vec![q(0), z1.clone(), c(0)],
        vec![q(1), q(0), c(1)],
        vec![q(2), q(1), c(2)],
        vec![z1, q(2), c(3)],
    ];
    let m = PolyMatrix::new(field, 3, rows)?;
    GradedIdeal::new(field, 3, m.signed_row_deletion_minors()?)
}

/// `q1^2 - 4 q0 q2`; zero iff `q` is a square.
pub fn canonical_conic_disc<F: Field>(field: F, q: &[F::Elem]) -> Result<F::Elem> {
    if q.len() != 3 {
        return Err(Error::Shape("plane point needs three coordinates".into()));
    }
    BinaryForm::new(field, q.to_vec())?.discriminant()
}

/// True iff `x` lies in the degree-3 piece of the triplet ideal of `f`.
pub fn triplet_lies_on_cubic<F: Field>(f: &BinaryForm<F>, x: &HomogPoly<F>) -> Result<bool> {
    let ideal = triplet_ideal_of_cubic(f)?;
    triplet_ideal_contains(&ideal, x)
}

fn triplet_ideal_contains<F: Field>(ideal: &GradedIdeal<F>, x: &HomogPoly<F>) -> Result<bool> {
    if x.nvars() != 3 || x.degree() != 3 {
        return Err(Error::Shape("expected a ternary cubic".into()));
    }
    if x.field() != ideal.field() {
        return Err(Error::FieldMismatch(
            ideal.field().spec().to_string(),
            x.field().spec().to_string(),
        ));
    }
    let base = ideal.graded_dim(3);
    Ok(ideal.with_generator(x.clone())?.graded_dim(3) == base)
}

/// The quadrics `l_i l_j` for a cubic given by its three linear factors.
pub fn triplet_of_split_cubic<F: Field>(factors: &[BinaryForm<F>; 3]) -> Vec<Vec<F::Elem>> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    pairs
        .iter()
        .map(|&(i, j)| factors[i].mul(&factors[j]).into_coeffs())
        .collect()
}
