//! The locus of cubics `f` whose triplet lies on a plane cubic `X`: scans,
//! algebraic counts, classification and special cubics.

use std::collections::BTreeMap;

use rand::Rng;

use super::sections::CubicCorrespondence;
use super::{
    ternary_cubic, triplet_ideal_contains, triplet_ideal_of_cubic, triplet_of_split_cubic,
};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, PrimeField, QuadraticExtension};
use crate::poly::{BinaryForm, FormEvaluator, GradedIdeal, HomogPoly, MonomialBasis};
use crate::proj::{self, ProjectiveSpace};
use crate::zeroscheme::{self, ZeroScheme};

/// Degree bound when searching for a stable Hilbert function.
const ZERO_SCHEME_MAX_DEGREE: u32 = 8;

/// Number of random hyperplanes used to estimate a degree.
const HYPERPLANE_TRIALS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripletCount {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripletLocus {
    Finite(usize),
    InfiniteOfDegree(usize),
}

/// Points of `P^3` over the field of `x` whose triplet lies on `x`.
///
/// Candidates are the zeros of the section attached to `x`; each is
/// confirmed by the graded membership test.
pub fn triplet_locus_points<F: Field>(x: &HomogPoly<F>) -> Result<Vec<Vec<F::Elem>>> {
    let f = x.field();
    let ps = ProjectiveSpace::new(f, 4)?;
    let corr = CubicCorrespondence::new(f)?;
    let quads = corr.section_of_cubic(x)?.quadrics();
    let ev = FormEvaluator::new(f, 4, 2, &quads)?;
    let hits = ps.scan(|p| ev.all_vanish(p).then(|| p.to_vec()));
    let mut out = Vec::with_capacity(hits.len());
    for p in hits {
        let bf = BinaryForm::new(f, p.clone())?;
        if triplet_ideal_contains(&triplet_ideal_of_cubic(&bf)?, x)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Same set computed by the graded test at every point. Slow; used to
/// validate the filtered scan.
pub fn triplet_locus_points_unfiltered<F: Field>(x: &HomogPoly<F>) -> Result<Vec<Vec<F::Elem>>> {
    let f = x.field();
    let ps = ProjectiveSpace::new(f, 4)?;
    let res: Vec<Result<Option<Vec<F::Elem>>>> = ps.scan(|p| {
        Some((|| {
            let bf = BinaryForm::new(f, p.to_vec())?;
            Ok(triplet_ideal_contains(&triplet_ideal_of_cubic(&bf)?, x)?.then(|| p.to_vec()))
        })())
    });
    res.into_iter().filter_map(|r| r.transpose()).collect()
}

fn embed_cubic(k: QuadraticExtension, x: &HomogPoly<PrimeField>) -> HomogPoly<QuadraticExtension> {
    x.map_field(k, |c| k.embed(*c))
}

/// Number of `[f]` over `F_p` (or over `F_(p^2)` with `scan_extension`)
/// whose triplet lies on `x`.
pub fn count_points_with_triplet_on_cubic(
    x: &HomogPoly<PrimeField>,
    scan_extension: bool,
) -> Result<usize> {
    if scan_extension {
        let k = QuadraticExtension::new(x.field().modulus())?;
        Ok(triplet_locus_points(&embed_cubic(k, x))?.len())
    } else {
        Ok(triplet_locus_points(x)?.len())
    }
}

/// Geometric count via the zero scheme of the section of `x`.
pub fn triplet_count_algebraic<F: Field, R: Rng + ?Sized>(
    corr: &CubicCorrespondence<F>,
    x: &HomogPoly<F>,
    rng: &mut R,
) -> Result<TripletCount> {
    let f = x.field();
    let ideal = GradedIdeal::new(f, 4, corr.section_of_cubic(x)?.quadrics())?;
    Ok(
        match zeroscheme::analyze(&ideal, ZERO_SCHEME_MAX_DEGREE, rng)? {
            ZeroScheme::Finite { distinct, .. } => TripletCount::Finite(distinct),
            ZeroScheme::Positive => TripletCount::Infinite,
        },
    )
}

/// Finite when the extension-scan count is below `p / 2`; otherwise the
/// degree is the most frequent number of locus points on hyperplanes
/// defined over `F_p`.
pub fn classify_triplet_locus<R: Rng + ?Sized>(
    x: &HomogPoly<PrimeField>,
    rng: &mut R,
) -> Result<TripletLocus> {
    let fp = x.field();
    let p = fp.modulus();
    let k = QuadraticExtension::new(p)?;
    let pts = triplet_locus_points(&embed_cubic(k, x))?;
    if (pts.len() as u64) * 2 < p {
        return Ok(TripletLocus::Finite(pts.len()));
    }
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    let mut trials = 0;
    while trials < HYPERPLANE_TRIALS {
        let h: Vec<_> = proj::random_point(fp, rng, 4)
            .iter()
            .map(|c| k.embed(*c))
            .collect();
        let n = pts.iter().filter(|pt| k.is_zero(&k.dot(&h, pt))).count();
        // hyperplanes containing a component are skipped
        if n as u64 > p {
            continue;
        }
        trials += 1;
        *freq.entry(n).or_default() += 1;
    }
    let (deg, _) = freq
        .iter()
        .max_by_key(|&(n, c)| (*c, std::cmp::Reverse(*n)))
        .expect("nonempty");
    Ok(TripletLocus::InfiniteOfDegree(*deg))
}

/// Linear form of the tangent line `{l m}` to the canonical conic at `l^2`.
pub fn tangent_line<F: Field>(l: &BinaryForm<F>) -> Result<HomogPoly<F>> {
    if l.degree() != 1 || l.is_zero() {
        return Err(Error::InvalidInput(
            "tangent line needs a nonzero linear form".into(),
        ));
    }
    let f = l.field();
    let (a, b) = (&l.coeffs()[0], &l.coeffs()[1]);
    Ok(HomogPoly::linear(
        f,
        &[f.mul(b, b), f.neg(&f.mul(a, b)), f.mul(a, a)],
    ))
}

/// `K T_l` for a conic `K` and the tangent line at `l^2`.
pub fn conic_with_tangent_line<F: Field>(
    k: &HomogPoly<F>,
    l: &BinaryForm<F>,
) -> Result<HomogPoly<F>> {
    if k.nvars() != 3 || k.degree() != 2 || k.is_zero() {
        return Err(Error::InvalidInput("expected a plane conic".into()));
    }
    k.mul(&tangent_line(l)?)
}

/// `K M` where `K` is a conic through the six vertices of the triplets of
/// two split cubics and `M` a line. Returns the cubic and the conic.
pub fn poncelet_cubic<F: Field>(
    f0: &[BinaryForm<F>; 3],
    f1: &[BinaryForm<F>; 3],
    m: &HomogPoly<F>,
) -> Result<(HomogPoly<F>, HomogPoly<F>)> {
    let field = m.field();
    if m.nvars() != 3 || m.degree() != 1 || m.is_zero() {
        return Err(Error::InvalidInput("expected a plane line".into()));
    }
    let mut pts = triplet_of_split_cubic(f0);
    pts.extend(triplet_of_split_cubic(f1));
    let basis = MonomialBasis::new(3, 2);
    let rows = pts
        .iter()
        .map(|p| {
            basis
                .monomials
                .iter()
                .map(|e| HomogPoly::monomial(field, e.clone(), field.one()).evaluate(p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let ker = Matrix::from_rows(field, 6, rows)?.kernel_basis();
    let conic_coeffs = ker
        .first()
        .ok_or_else(|| Error::Degenerate("no conic through the six vertices".into()))?;
    if ker.len() > 1 {
        return Err(Error::Degenerate(
            "the six vertices do not determine a conic".into(),
        ));
    }
    let k = HomogPoly::from_coeffs(field, 3, 2, conic_coeffs)?;
    Ok((k.mul(m)?, k))
}

/// Random search for a cubic with exactly one geometric triplet.
pub fn find_unique_triplet_cubic<F: Field, R: Rng + ?Sized>(
    field: F,
    rng: &mut R,
    max_tries: usize,
) -> Result<Option<HomogPoly<F>>> {
    let corr = CubicCorrespondence::new(field)?;
    for _ in 0..max_tries {
        let x = super::random_ternary_cubic(field, rng);
        if triplet_count_algebraic(&corr, &x, rng)? == TripletCount::Finite(1) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// One member `X0 + t X1` of a pencil; `t = None` is the member `X1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilEntry<E> {
    pub t: Option<E>,
    pub count: TripletCount,
}

fn pencil_members<F: Field>(
    x0: &HomogPoly<F>,
    x1: &HomogPoly<F>,
) -> Result<Vec<(Option<F::Elem>, HomogPoly<F>)>> {
    let f = x0.field();
    let q = f
        .order()
        .ok_or_else(|| Error::UnsupportedField("pencil profile needs a finite field".into()))?;
    let basis = MonomialBasis::new(3, 3);
    let c0 = x0.coeff_vector(&basis);
    let c1 = x1.coeff_vector(&basis);
    if proj::span_rank(f, &[c0.clone(), c1.clone()]) < 2 {
        return Err(Error::InvalidInput("pencil members are dependent".into()));
    }
    let mut out = Vec::with_capacity(q as usize + 1);
    for i in 0..q {
        let t = f.element(i);
        let c: Vec<_> = c0
            .iter()
            .zip(&c1)
            .map(|(a, b)| f.mul_add(a, &t, b))
            .collect();
        out.push((Some(t), ternary_cubic(f, &c)?));
    }
    out.push((None, x1.clone()));
    Ok(out)
}

/// Geometric triplet count of every member of the pencil over the finite
/// field of the cubics, computed algebraically.
pub fn pencil_triplet_profile<F: Field, R: Rng + ?Sized>(
    x0: &HomogPoly<F>,
    x1: &HomogPoly<F>,
    rng: &mut R,
) -> Result<Vec<PencilEntry<F::Elem>>> {
    let corr = CubicCorrespondence::new(x0.field())?;
    pencil_members(x0, x1)?
        .into_iter()
        .map(|(t, x)| {
            Ok(PencilEntry {
                t,
                count: triplet_count_algebraic(&corr, &x, rng)?,
            })
        })
        .collect()
}

/// The same profile by extension scans (small `p` only).
pub fn pencil_triplet_profile_scan(
    x0: &HomogPoly<PrimeField>,
    x1: &HomogPoly<PrimeField>,
) -> Result<Vec<PencilEntry<u64>>> {
    let p = x0.field().modulus();
    pencil_members(x0, x1)?
        .into_iter()
        .map(|(t, x)| {
            let n = count_points_with_triplet_on_cubic(&x, true)?;
            let count = if (n as u64) * 2 < p {
                TripletCount::Finite(n)
            } else {
                TripletCount::Infinite
            };
            Ok(PencilEntry { t, count })
        })
        .collect()
}
