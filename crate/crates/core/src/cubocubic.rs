//! Cubo-cubic transformations of `P^3` given by a tensor in `Hom(R ⊗ V, W)`.
//!
//! Coefficients are stored as `a[r][w][v]` with `r < 3`, `w < 4`, `v < 4`.
//! The source space has coordinates `y_v`, the target space `z_w`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::poly::{restrict_to_line, GradedIdeal, HomogPoly, LinearFormMatrix};
use crate::proj;

pub const DIM_R: usize = 3;
pub const DIM_V: usize = 4;
pub const DIM_W: usize = 4;

/// Value of a rational map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapValue<T> {
    Point(T),
    BaseLocus,
}

impl<T> MapValue<T> {
    pub fn point(self) -> Option<T> {
        match self {
            MapValue::Point(p) => Some(p),
            MapValue::BaseLocus => None,
        }
    }
    pub fn is_base_locus(&self) -> bool {
        matches!(self, MapValue::BaseLocus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuboCubicTensor<F: Field> {
    field: F,
    a: Vec<F::Elem>,
}

#[inline]
fn idx(r: usize, w: usize, v: usize) -> usize {
    (r * DIM_W + w) * DIM_V + v
}

impl<F: Field> CuboCubicTensor<F> {
    /// From nested coefficients `a[r][w][v]`.
    pub fn new(field: F, a: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        if a.len() != DIM_R
            || a.iter()
                .any(|s| s.len() != DIM_W || s.iter().any(|r| r.len() != DIM_V))
        {
            return Err(Error::Shape("tensor must have shape 3x4x4".into()));
        }
        Self::from_flat(field, a.into_iter().flatten().flatten().collect())
    }

    pub fn from_flat(field: F, a: Vec<F::Elem>) -> Result<Self> {
        if a.len() != DIM_R * DIM_W * DIM_V {
            return Err(Error::Shape("tensor needs 48 coefficients".into()));
        }
        if a.iter().all(|x| field.is_zero(x)) {
            return Err(Error::InvalidInput("tensor is identically zero".into()));
        }
        Ok(CuboCubicTensor { field, a })
    }

    pub fn from_fn(field: F, f: impl Fn(usize, usize, usize) -> F::Elem) -> Result<Self> {
        let mut a = Vec::with_capacity(48);
        for r in 0..DIM_R {
            for w in 0..DIM_W {
                for v in 0..DIM_V {
                    a.push(f(r, w, v));
                }
            }
        }
        Self::from_flat(field, a)
    }

    pub fn random<R: Rng + ?Sized>(field: F, rng: &mut R) -> Self {
        loop {
            if let Ok(t) = Self::from_flat(field, field.random_vec(rng, 48)) {
                return t;
            }
        }
    }

    /// Tensor of a net of quadrics: `a[r][w][v] = Q_r[w][v]`.
    pub fn from_net(q: &[Matrix<F>]) -> Result<Self> {
        check_net(q)?;
        let field = q[0].field();
        Self::from_fn(field, |r, w, v| q[r].get(w, v).clone())
    }

    pub fn field(&self) -> F {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, w: usize, v: usize) -> &F::Elem {
        &self.a[idx(r, w, v)]
    }

    pub fn nested(&self) -> Vec<Vec<Vec<F::Elem>>> {
        (0..DIM_R)
            .map(|r| {
                (0..DIM_W)
                    .map(|w| (0..DIM_V).map(|v| self.get(r, w, v).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn flat(&self) -> &[F::Elem] {
        &self.a
    }

    /// `C_r`, the `W x V` matrix `a[r][.][.]`.
    pub fn r_component(&self, r: usize) -> Matrix<F> {
        Matrix::from_fn(self.field, DIM_W, DIM_V, |w, v| self.get(r, w, v).clone())
    }

    /// Exchanges the roles of `V` and `W`.
    pub fn transpose(&self) -> Self {
        CuboCubicTensor {
            field: self.field,
            a: (0..48)
                .map(|i| {
                    let (r, w, v) = (i / 16, (i / 4) % 4, i % 4);
                    self.get(r, v, w).clone()
                })
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..DIM_R).all(|r| (0..4).all(|w| (0..w).all(|v| self.get(r, w, v) == self.get(r, v, w))))
    }

    pub fn scale(&self, c: &F::Elem) -> Result<Self> {
        Self::from_flat(
            self.field,
            self.a.iter().map(|x| self.field.mul(x, c)).collect(),
        )
    }

    /// Row `w`, column `r`: the linear form `sum_v a[r][w][v] y_v`.
    pub fn source_matrix(&self) -> LinearFormMatrix<F> {
        let entries = (0..DIM_W)
            .map(|w| {
                (0..DIM_R)
                    .map(|r| (0..DIM_V).map(|v| self.get(r, w, v).clone()).collect())
                    .collect()
            })
            .collect();
        LinearFormMatrix::new(self.field, DIM_V, entries).expect("fixed shape")
    }

    /// Row `v`, column `r`: the linear form `sum_w a[r][w][v] z_w`.
    pub fn target_matrix(&self) -> LinearFormMatrix<F> {
        self.transpose().source_matrix()
    }

    /// Entry `(w, v)` is the vector `(a[0][w][v], a[1][w][v], a[2][w][v])`.
    pub fn r_slice(&self) -> Vec<Vec<Vec<F::Elem>>> {
        (0..DIM_W)
            .map(|w| {
                (0..DIM_V)
                    .map(|v| (0..DIM_R).map(|r| self.get(r, w, v).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn from_source_matrix(m: &LinearFormMatrix<F>) -> Result<Self> {
        if m.rows() != DIM_W || m.cols() != DIM_R || m.nvars() != DIM_V {
            return Err(Error::Shape(
                "source matrix must be 4x3 in 4 variables".into(),
            ));
        }
        Self::from_fn(m.field(), |r, w, v| m.coeffs(w, r)[v].clone())
    }

    pub fn from_target_matrix(m: &LinearFormMatrix<F>) -> Result<Self> {
        Ok(Self::from_source_matrix(m)?.transpose())
    }

    pub fn from_r_slice(field: F, s: &[Vec<Vec<F::Elem>>]) -> Result<Self> {
        if s.len() != DIM_W
            || s.iter()
                .any(|row| row.len() != DIM_V || row.iter().any(|e| e.len() != DIM_R))
        {
            return Err(Error::Shape(
                "r-slice must be 4x4 of length-3 vectors".into(),
            ));
        }
        Self::from_fn(field, |r, w, v| s[w][v][r].clone())
    }

    /// Ideal of the base curve `Y`: the four signed maximal minors of the
    /// source matrix.
    pub fn curve_ideal_y(&self) -> Result<GradedIdeal<F>> {
        minors_ideal(&self.source_matrix())
    }

    /// Ideal of `Y'`, the base curve of the inverse map.
    pub fn curve_ideal_y_prime(&self) -> Result<GradedIdeal<F>> {
        minors_ideal(&self.target_matrix())
    }

    /// The signed maximal minors of the source matrix at `y`.
    pub fn forward_map(&self, y: &[F::Elem]) -> Result<MapValue<Vec<F::Elem>>> {
        proj::check_point(self.field, y, DIM_V)?;
        let z = self.source_matrix().maximal_minors_at(y)?;
        Ok(if proj::is_zero(self.field, &z) {
            MapValue::BaseLocus
        } else {
            MapValue::Point(z)
        })
    }

    pub fn inverse_map(&self, z: &[F::Elem]) -> Result<MapValue<Vec<F::Elem>>> {
        self.transpose().forward_map(z)
    }

    /// Fraction of sampled non-base points whose round trip returns the
    /// input. Returns `(fraction, compared samples)`.
    pub fn check_birational_inverse<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<(f64, usize)> {
        if n == 0 {
            return Err(Error::InvalidInput("sample count must be positive".into()));
        }
        self.curve_ideal_y()?;
        self.curve_ideal_y_prime()?;
        let mut good = 0;
        let mut compared = 0;
        for _ in 0..n {
            let y = proj::random_point(self.field, rng, DIM_V);
            let MapValue::Point(z) = self.forward_map(&y)? else {
                continue;
            };
            compared += 1;
            if let MapValue::Point(back) = self.inverse_map(&z)? {
                if proj::proj_eq(self.field, &back, &y) {
                    good += 1;
                }
            }
        }
        let frac = if compared == 0 {
            0.0
        } else {
            good as f64 / compared as f64
        };
        Ok((frac, compared))
    }

    /// True iff all 2x2 minors of the source matrix vanish at `p`, i.e. the
    /// evaluated matrix has rank at most one.
    pub fn has_triple_point_at(&self, p: &[F::Elem]) -> Result<bool> {
        proj::check_point(self.field, p, DIM_V)?;
        Ok(self.source_matrix().evaluate(p)?.rank() <= 1)
    }

    /// A point of `Y` over a finite field, found by intersecting the
    /// degeneracy locus with a random pencil in `R`.
    pub fn sample_curve_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<Vec<F::Elem>>> {
        let f = self.field;
        let q = f
            .order()
            .ok_or_else(|| Error::UnsupportedField("curve sampling needs a finite field".into()))?;
        let limit = q.min(1 << 16);
        for _ in 0..8 {
            let c0 = f.random_vec(rng, DIM_R);
            let c1 = f.random_vec(rng, DIM_R);
            let start = rng.gen_range(0..q);
            for k in 0..limit {
                let lam = f.element((start + k) % q);
                let c: Vec<_> = (0..DIM_R)
                    .map(|r| f.mul_add(&c0[r], &lam, &c1[r]))
                    .collect();
                if proj::is_zero(f, &c) {
                    continue;
                }
                // (w, v) entry: sum_r a[r][w][v] c_r, so m y = S(y) c
                let m = Matrix::from_fn(f, DIM_W, DIM_V, |w, v| {
                    (0..DIM_R).fold(f.zero(), |acc, r| f.mul_add(&acc, self.get(r, w, v), &c[r]))
                });
                if let Some(y) = m.kernel_basis().into_iter().next() {
                    return Ok(Some(y));
                }
            }
        }
        Ok(None)
    }
}

fn minors_ideal<F: Field>(m: &LinearFormMatrix<F>) -> Result<GradedIdeal<F>> {
    let mins = m.maximal_minors()?;
    if mins.iter().all(|p| p.is_zero()) {
        return Err(Error::DegenerateMinors);
    }
    GradedIdeal::new(m.field(), m.nvars(), mins)
}

pub fn check_net<F: Field>(q: &[Matrix<F>]) -> Result<()> {
    if q.len() != 3 {
        return Err(Error::Shape("a net needs three quadrics".into()));
    }
    let field = q[0].field();
    for m in q {
        if m.field() != field {
            return Err(Error::FieldMismatch(
                field.spec().to_string(),
                m.field().spec().to_string(),
            ));
        }
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Shape("quadrics must be 4x4".into()));
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidInput(
                "quadric matrix is not symmetric".into(),
            ));
        }
    }
    let rows: Vec<Vec<F::Elem>> = q.iter().map(|m| m.entries().to_vec()).collect();
    if proj::span_rank(field, &rows) < 3 {
        return Err(Error::Degenerate(
            "quadrics of the net are dependent".into(),
        ));
    }
    Ok(())
}

/// A vector in `R-dual`, i.e. the three coefficients `(a[0], a[1], a[2])`.
pub type RVec<E> = Vec<E>;

fn check_rvec<E>(v: &[E]) -> Result<()> {
    if v.len() != DIM_R {
        return Err(Error::Shape(
            "entries of the r-slice are length-3 vectors".into(),
        ));
    }
    Ok(())
}

/// Tensor whose r-slice is `[[A3, 0], [C, D]]` with `A3` of size 3x3.
///
/// The source matrix then has rank at most one at `e_3 = (0, 0, 0, 1)`, so
/// the base curve has a triple point there.
pub fn triple_point_tensor<F: Field>(
    field: F,
    a3: &[Vec<RVec<F::Elem>>],
    c: &[RVec<F::Elem>],
    d: &RVec<F::Elem>,
    symmetric: bool,
) -> Result<CuboCubicTensor<F>> {
    if a3.len() != 3 || a3.iter().any(|r| r.len() != 3) || c.len() != 3 {
        return Err(Error::Shape("A3 must be 3x3 and C must be 1x3".into()));
    }
    for v in a3
        .iter()
        .flatten()
        .chain(c.iter())
        .chain(std::iter::once(d))
    {
        check_rvec(v)?;
    }
    if symmetric && (0..3).any(|i| (0..i).any(|j| a3[i][j] != a3[j][i])) {
        return Err(Error::InvalidInput("A3 is not symmetric".into()));
    }
    CuboCubicTensor::from_fn(field, |r, w, v| match (w < 3, v < 3) {
        (true, true) => a3[w][v][r].clone(),
        (true, false) => field.zero(),
        (false, true) => c[v][r].clone(),
        (false, false) => d[r].clone(),
    })
}

/// Tensor whose source matrix is `[[N, *], [0, 0, H]]`.
///
/// `N` is the 3x2 matrix of a twisted cubic, `H` a plane. The third column
/// `*` restricted to rows `w < 3` is `sum_j D[w][j] y_{v_j}` where `v_j`
/// runs over the coordinates other than the pivot (first nonzero
/// coordinate) of `H`; a pivot component could be removed by column
/// operations. With `symmetric` the block `D` must be symmetric.
pub fn twisted_cubic_tensor<F: Field>(
    n: &LinearFormMatrix<F>,
    h: &[F::Elem],
    d: &Matrix<F>,
    symmetric: bool,
) -> Result<CuboCubicTensor<F>> {
    let field = n.field();
    if n.rows() != 3 || n.cols() != 2 || n.nvars() != 4 {
        return Err(Error::Shape(
            "N must be a 3x2 matrix of linear forms in 4 variables".into(),
        ));
    }
    if h.len() != 4 {
        return Err(Error::Shape(
            "H must be a linear form in 4 variables".into(),
        ));
    }
    if d.rows() != 3 || d.cols() != 3 || d.field() != field {
        return Err(Error::Shape("D must be 3x3 over the same field".into()));
    }
    let Some(pivot) = h.iter().position(|x| !field.is_zero(x)) else {
        return Err(Error::InvalidInput("H is zero".into()));
    };
    if symmetric && !d.is_symmetric() {
        return Err(Error::InvalidInput("D is not symmetric".into()));
    }
    // independent 2x2 minors force generic rank 2
    let nm = n.maximal_minors()?;
    if proj::span_rank(
        field,
        &nm.iter().map(|p| quad_coeffs(p)).collect::<Vec<_>>(),
    ) < 3
    {
        return Err(Error::Degenerate(
            "minors of N do not span a net of quadrics".into(),
        ));
    }
    let others: Vec<usize> = (0..4).filter(|&v| v != pivot).collect();
    CuboCubicTensor::from_fn(field, |r, w, v| {
        if w < 3 {
            if r < 2 {
                n.coeffs(w, r)[v].clone()
            } else {
                match others.iter().position(|&x| x == v) {
                    Some(j) => d.get(w, j).clone(),
                    None => field.zero(),
                }
            }
        } else if r == 2 {
            h[v].clone()
        } else {
            field.zero()
        }
    })
}

fn quad_coeffs<F: Field>(p: &HomogPoly<F>) -> Vec<F::Elem> {
    p.coeff_vector(&crate::poly::MonomialBasis::new(p.nvars(), 2))
}

/// The standard twisted cubic matrix `[[y0, y1], [y1, y2], [y2, y3]]`.
pub fn standard_twisted_cubic<F: Field>(field: F) -> LinearFormMatrix<F> {
    let e = |i: usize| {
        let mut c = vec![field.zero(); 4];
        c[i] = field.one();
        c
    };
    LinearFormMatrix::new(
        field,
        4,
        vec![vec![e(0), e(1)], vec![e(1), e(2)], vec![e(2), e(3)]],
    )
    .expect("fixed shape")
}

/// Outcome of restricting the four cubics to a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrisecantResult {
    NotTrisecant,
    Trisecant,
    /// All restrictions vanish: the line lies in every cubic.
    ContainedOrDegenerate,
}

impl TrisecantResult {
    pub fn is_trisecant(&self) -> bool {
        !matches!(self, TrisecantResult::NotTrisecant)
    }
}

/// Rank test on the restrictions of the generators to the line `(a, b)`.
pub fn trisecant_test<F: Field>(
    ideal: &GradedIdeal<F>,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<TrisecantResult> {
    let gens = ideal.generators();
    if gens.is_empty() {
        return Err(Error::InvalidInput("ideal has no generators".into()));
    }
    let deg = gens[0].degree() as usize;
    let rows = gens
        .iter()
        .map(|g| Ok(restrict_to_line(g, a, b)?.into_coeffs()))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(ideal.field(), deg + 1, rows)?;
    Ok(match m.rank() {
        0 => TrisecantResult::ContainedOrDegenerate,
        1 => TrisecantResult::Trisecant,
        _ => TrisecantResult::NotTrisecant,
    })
}

/// Dimension of the stratum `F_i` (`i < 4`) or of `F_4`.
pub fn strata_dimension(i: u32) -> Result<u32> {
    match i {
        1..=3 => {
            let s2_im = i * (i + 1) / 2;
            let s2_ker = (4 - i) * (5 - i) / 2;
            let mixed = i * (4 - i);
            Ok(14 + 3 * (s2_im + s2_ker + mixed) - 1)
        }
        4 => Ok(15 + 3 * 10 - 1),
        _ => Err(Error::InvalidInput(format!(
            "stratum index {i} outside 1..=4"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::HilbertFit;
    use crate::rng::rng_for;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn vandermonde_net<F: Field>(f: F) -> Vec<Matrix<F>> {
        (0..3)
            .map(|k| {
                let d: Vec<_> = (1..=4).map(|x: i64| f.from_i64(x.pow(k))).collect();
                Matrix::diagonal(f, &d)
            })
            .collect()
    }

    #[test]
    fn strata_dimensions() {
        let d: Vec<_> = (1..=4).map(|i| strata_dimension(i).unwrap()).collect();
        assert_eq!(d, vec![43, 43, 43, 44]);
        assert!(strata_dimension(0).is_err());
        assert!(strata_dimension(5).is_err());
    }

    #[test]
    fn from_net_is_diagonal_and_symmetric() {
        let q = Rationals;
        let t = CuboCubicTensor::from_net(&vandermonde_net(q)).unwrap();
        assert!(t.is_symmetric());
        for r in 0..3 {
            for w in 0..4 {
                for v in 0..4 {
                    if w != v {
                        assert_eq!(*t.get(r, w, v), q.zero());
                    }
                }
            }
        }
        let mut bad = vandermonde_net(q);
        bad[0].set(0, 1, q.one());
        assert!(CuboCubicTensor::from_net(&bad).is_err());
        let mut dep = vandermonde_net(q);
        dep[2] = dep[0].clone();
        assert!(CuboCubicTensor::from_net(&dep).is_err());
    }

    #[test]
    fn slicings_round_trip() {
        let f = fp();
        let mut rng = rng_for(1, "slice", 0);
        let t = CuboCubicTensor::random(f, &mut rng);
        assert_eq!(
            CuboCubicTensor::from_source_matrix(&t.source_matrix()).unwrap(),
            t
        );
        assert_eq!(
            CuboCubicTensor::from_target_matrix(&t.target_matrix()).unwrap(),
            t
        );
        assert_eq!(CuboCubicTensor::from_r_slice(f, &t.r_slice()).unwrap(), t);
        assert_eq!(t.transpose().transpose(), t);
    }

    #[test]
    fn generic_curve_is_six_three() {
        let f = fp();
        let mut rng = rng_for(2, "curve", 0);
        let t = CuboCubicTensor::random(f, &mut rng);
        let i = t.curve_ideal_y().unwrap();
        assert_eq!(i.generators().len(), 4);
        assert_eq!(
            i.hilbert_poly_fit(3, 7).unwrap(),
            HilbertFit::Linear { a: 6, b: -2 }
        );
        let ip = t.curve_ideal_y_prime().unwrap();
        assert_eq!(
            ip.hilbert_poly_fit(3, 7).unwrap(),
            HilbertFit::Linear { a: 6, b: -2 }
        );
    }

    #[test]
    fn degenerate_tensor_errors() {
        let f = fp();
        // only r = 0 nonzero: the 4x3 matrix has rank <= 1 everywhere
        let t =
            CuboCubicTensor::from_fn(f, |r, w, v| if r == 0 { ((w + v) % 3) as u64 } else { 0 })
                .unwrap();
        assert!(matches!(t.curve_ideal_y(), Err(Error::DegenerateMinors)));
        assert!(t
            .check_birational_inverse(5, &mut rng_for(0, "x", 0))
            .is_err());
        assert!(CuboCubicTensor::from_fn(f, |_, _, _| 0).is_err());
    }

    #[test]
    fn base_points_and_round_trip() {
        let f = fp();
        let mut rng = rng_for(3, "roundtrip", 0);
        let t = CuboCubicTensor::random(f, &mut rng);
        let y = t.sample_curve_point(&mut rng).unwrap().unwrap();
        assert!(t.forward_map(&y).unwrap().is_base_locus());
        assert!(t.curve_ideal_y().unwrap().vanishes_at(&y).unwrap());
        let (frac, n) = t.check_birational_inverse(100, &mut rng).unwrap();
        assert_eq!(frac, 1.0);
        assert!(n > 90);
        assert!(t.check_birational_inverse(0, &mut rng).is_err());
        // homogeneity
        let y = proj::random_point(f, &mut rng, 4);
        let cy: Vec<_> = y.iter().map(|x| f.mul(x, &7)).collect();
        let a = t.forward_map(&y).unwrap().point().unwrap();
        let b = t.forward_map(&cy).unwrap().point().unwrap();
        assert!(proj::proj_eq(f, &a, &b));
        // image of Y' points is the base locus of the inverse
        let z = t.transpose().sample_curve_point(&mut rng).unwrap().unwrap();
        assert!(t.inverse_map(&z).unwrap().is_base_locus());
    }

    #[test]
    fn symmetric_tensor_is_involutive() {
        let f = fp();
        let mut rng = rng_for(4, "sym", 0);
        let net: Vec<_> = (0..3)
            .map(|_| Matrix::random_symmetric(f, 4, &mut rng))
            .collect();
        let t = CuboCubicTensor::from_net(&net).unwrap();
        for _ in 0..20 {
            let y = proj::random_point(f, &mut rng, 4);
            let z = t.forward_map(&y).unwrap().point().unwrap();
            assert_eq!(t.inverse_map(&y).unwrap(), t.forward_map(&y).unwrap());
            let back = t.forward_map(&z).unwrap().point().unwrap();
            assert!(proj::proj_eq(f, &back, &y));
        }
        let iy: Vec<_> = t.curve_ideal_y().unwrap().generators().to_vec();
        let iyp: Vec<_> = t.curve_ideal_y_prime().unwrap().generators().to_vec();
        assert_eq!(iy, iyp);
    }

    fn random_rvecs(f: PrimeField, rng: &mut crate::rng::Rng, n: usize) -> Vec<Vec<u64>> {
        (0..n).map(|_| f.random_vec(rng, 3)).collect()
    }

    #[test]
    fn triple_point_tensor_has_triple_point() {
        let f = fp();
        let mut rng = rng_for(5, "triple-point", 0);
        let mut a3 = vec![vec![vec![0u64; 3]; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v = f.random_vec(&mut rng, 3);
                a3[i][j] = v.clone();
                a3[j][i] = v;
            }
        }
        let c = random_rvecs(f, &mut rng, 3);
        let d = f.random_vec(&mut rng, 3);
        let t = triple_point_tensor(f, &a3, &c, &d, true).unwrap();
        let e3 = vec![0, 0, 0, 1];
        assert!(t.has_triple_point_at(&e3).unwrap());
        assert!(t.has_triple_point_at(&[0, 0, 0, 5]).unwrap());
        assert!(t.scale(&3).unwrap().has_triple_point_at(&e3).unwrap());
        assert!(t.has_triple_point_at(&[0, 0, 0, 0]).is_err());
        let i = t.curve_ideal_y().unwrap();
        assert_eq!(
            i.hilbert_poly_fit(3, 7).unwrap(),
            HilbertFit::Linear { a: 6, b: -2 }
        );

        let asym = random_rvecs(f, &mut rng, 9)
            .chunks(3)
            .map(|c| c.to_vec())
            .collect::<Vec<_>>();
        assert!(triple_point_tensor(f, &asym, &c, &d, true).is_err());
        assert!(triple_point_tensor(f, &asym, &c, &d, false).is_ok());

        let g = CuboCubicTensor::random(f, &mut rng);
        let p = proj::random_point(f, &mut rng, 4);
        assert!(!g.has_triple_point_at(&p).unwrap());
    }

    #[test]
    fn trisecants_through_the_triple_point() {
        let f = fp();
        let mut rng = rng_for(6, "triple-point-lines", 0);
        let a3: Vec<Vec<Vec<u64>>> = (0..3).map(|_| random_rvecs(f, &mut rng, 3)).collect();
        let c = random_rvecs(f, &mut rng, 3);
        let d = f.random_vec(&mut rng, 3);
        let t = triple_point_tensor(f, &a3, &c, &d, false).unwrap();
        let i = t.curve_ideal_y().unwrap();
        let e3 = vec![0, 0, 0, 1];
        for _ in 0..5 {
            let y = t.sample_curve_point(&mut rng).unwrap().unwrap();
            if proj::proj_eq(f, &y, &e3) {
                continue;
            }
            assert!(trisecant_test(&i, &e3, &y).unwrap().is_trisecant());
        }
        let a = proj::random_point(f, &mut rng, 4);
        let b = proj::random_point(f, &mut rng, 4);
        assert_eq!(
            trisecant_test(&i, &a, &b).unwrap(),
            TrisecantResult::NotTrisecant
        );
        assert!(trisecant_test(&i, &a, &a).is_err());
    }

    #[test]
    fn contained_line_flagged() {
        let q = Rationals;
        // cubics x0^3, x0^2 x1, ... all vanish on the line x0 = x1 = 0
        let gens = vec![
            HomogPoly::monomial(q, vec![3, 0, 0, 0], q.one()),
            HomogPoly::monomial(q, vec![2, 1, 0, 0], q.one()),
            HomogPoly::monomial(q, vec![1, 0, 2, 0], q.one()),
            HomogPoly::monomial(q, vec![0, 1, 0, 2], q.one()),
        ];
        let i = GradedIdeal::new(q, 4, gens).unwrap();
        let a: Vec<_> = [0, 0, 1, 0].iter().map(|&x| q.from_i64(x)).collect();
        let b: Vec<_> = [0, 0, 0, 1].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(
            trisecant_test(&i, &a, &b).unwrap(),
            TrisecantResult::ContainedOrDegenerate
        );
    }

    #[test]
    fn twisted_cubic_tensor_contains_the_cubic() {
        let f = fp();
        let mut rng = rng_for(7, "twisted-cubic", 0);
        let n = standard_twisted_cubic(f);
        let d = Matrix::random_symmetric(f, 3, &mut rng);
        let t = twisted_cubic_tensor(&n, &[1, 0, 0, 0], &d, true).unwrap();
        let i = t.curve_ideal_y().unwrap();
        assert_eq!(
            i.hilbert_poly_fit(3, 7).unwrap(),
            HilbertFit::Linear { a: 6, b: -2 }
        );
        for _ in 0..10 {
            let s = f.random(&mut rng);
            let u = f.random(&mut rng);
            let pt = vec![
                f.pow(&s, 3),
                f.mul(&f.mul(&s, &s), &u),
                f.mul(&s, &f.mul(&u, &u)),
                f.pow(&u, 3),
            ];
            if proj::is_zero(f, &pt) {
                continue;
            }
            assert!(i.vanishes_at(&pt).unwrap());
        }
        let asym = Matrix::random(f, 3, 3, &mut rng);
        assert!(twisted_cubic_tensor(&n, &[1, 0, 0, 0], &asym, true).is_err());
        assert!(twisted_cubic_tensor(&n, &[0, 0, 0, 0], &d, true).is_err());
        let flat =
            LinearFormMatrix::new(f, 4, vec![vec![vec![1, 0, 0, 0], vec![0; 4]]; 3]).unwrap();
        assert!(twisted_cubic_tensor(&flat, &[1, 0, 0, 0], &d, true).is_err());
    }
}
