//! Triples `(phi, psi, psi')` generalizing nets of quadrics.
//!
//! `phi` is a [`CuboCubicTensor`], `psi: W -> V-dual` is stored as
//! `psi[v][w]` and `psi': V-dual -> W` as `psi_prime[w][v]`. Writing
//! `C_r = phi(r ⊗ .)` for the `W x V` slices, the two symmetry conditions
//! are that
//!
//! * `B_r[v][v'] = sum_w a[r][w][v] psi[v'][w]`, i.e. `(psi C_r)^T`, and
//! * `D_r[w][w'] = sum_v a[r][w][v] psi_prime[w'][v]`, i.e. `psi' C_r^T`,
//!
//! are symmetric for every `r`.

use rand::Rng;

use crate::cubocubic::{check_net, CuboCubicTensor, RVec, DIM_R};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::proj;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetTriple<F: Field> {
    pub phi: CuboCubicTensor<F>,
    pub psi: Matrix<F>,
    pub psi_prime: Matrix<F>,
}

impl<F: Field> NetTriple<F> {
    pub fn new(phi: CuboCubicTensor<F>, psi: Matrix<F>, psi_prime: Matrix<F>) -> Result<Self> {
        for m in [&psi, &psi_prime] {
            if m.rows() != 4 || m.cols() != 4 {
                return Err(Error::Shape("psi and psi' must be 4x4".into()));
            }
            if m.field() != phi.field() {
                return Err(Error::FieldMismatch(
                    phi.field().spec().to_string(),
                    m.field().spec().to_string(),
                ));
            }
        }
        Ok(NetTriple {
            phi,
            psi,
            psi_prime,
        })
    }

    /// `(fromNet(q), id, id)`.
    pub fn from_net(q: &[Matrix<F>]) -> Result<Self> {
        let phi = CuboCubicTensor::from_net(q)?;
        let f = phi.field();
        Self::new(phi, Matrix::identity(f, 4), Matrix::identity(f, 4))
    }
}

fn check_square4<F: Field>(m: &Matrix<F>, phi: &CuboCubicTensor<F>) -> Result<()> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape("expected a 4x4 matrix".into()));
    }
    if m.field() != phi.field() {
        return Err(Error::FieldMismatch(
            phi.field().spec().to_string(),
            m.field().spec().to_string(),
        ));
    }
    Ok(())
}

fn antisymmetric_part<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.sub(&m.transpose()).expect("square")
}

/// `B_r - B_r^T` for `r = 0, 1, 2`.
pub fn symmetry_defect_psi<F: Field>(
    phi: &CuboCubicTensor<F>,
    psi: &Matrix<F>,
) -> Result<Vec<Matrix<F>>> {
    check_square4(psi, phi)?;
    (0..DIM_R)
        .map(|r| {
            let b = psi.mul(&phi.r_component(r))?.transpose();
            Ok(antisymmetric_part(&b))
        })
        .collect()
}

/// `D_r - D_r^T` for `r = 0, 1, 2`.
pub fn symmetry_defect_psi_prime<F: Field>(
    phi: &CuboCubicTensor<F>,
    psi_prime: &Matrix<F>,
) -> Result<Vec<Matrix<F>>> {
    check_square4(psi_prime, phi)?;
    (0..DIM_R)
        .map(|r| {
            let d = psi_prime.mul(&phi.r_component(r).transpose())?;
            Ok(antisymmetric_part(&d))
        })
        .collect()
}

fn all_zero<F: Field>(ms: &[Matrix<F>]) -> bool {
    ms.iter().all(|m| m.is_zero())
}

/// Basis of the space of `psi` making every `B_r` symmetric
/// (16 unknowns, 18 equations).
pub fn solve_symmetry_psi<F: Field>(phi: &CuboCubicTensor<F>) -> Vec<Matrix<F>> {
    let f = phi.field();
    // unknown psi[v'][w] at column v' * 4 + w
    let mut rows = Vec::new();
    for r in 0..DIM_R {
        for v in 0..4 {
            for vp in v + 1..4 {
                // B[v][vp] - B[vp][v] = sum_w a[r][w][v] psi[vp][w] - a[r][w][vp] psi[v][w]
                let mut row = vec![f.zero(); 16];
                for w in 0..4 {
                    row[vp * 4 + w] = f.add(&row[vp * 4 + w], phi.get(r, w, v));
                    row[v * 4 + w] = f.sub(&row[v * 4 + w], phi.get(r, w, vp));
                }
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_rows(f, 16, rows).expect("fixed shape");
    m.kernel_basis()
        .into_iter()
        .map(|k| Matrix::new(f, 4, 4, k).expect("16 entries"))
        .collect()
}

/// `(lambda, mu)` with `psi' psi = lambda 1_W` and `psi psi' = mu 1_{V-dual}`.
pub fn composition_scalars<F: Field>(
    psi: &Matrix<F>,
    psi_prime: &Matrix<F>,
) -> Result<Option<(F::Elem, F::Elem)>> {
    let lam = psi_prime.mul(psi)?.as_scalar();
    let mu = psi.mul(psi_prime)?.as_scalar();
    Ok(lam.zip(mu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    ZeroComponent,
    /// `rank psi = i != 4` but `rank psi' = j > 4 - i`.
    RankConstraint {
        i: usize,
        j: usize,
    },
    PsiSymmetry,
    PsiPrimeSymmetry,
    NotScalar,
}

impl std::fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvalidReason::ZeroComponent => write!(f, "a component is zero"),
            InvalidReason::RankConstraint { i, j } => {
                write!(f, "ranks ({i}, {j}) violate j <= 4 - i")
            }
            InvalidReason::PsiSymmetry => write!(f, "psi symmetry defect is nonzero"),
            InvalidReason::PsiPrimeSymmetry => write!(f, "psi' symmetry defect is nonzero"),
            InvalidReason::NotScalar => write!(f, "compositions are not scalar"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Stratum `(rank psi, rank psi')`.
    Valid {
        i: usize,
        j: usize,
    },
    Invalid(InvalidReason),
}

impl Membership {
    pub fn is_valid(&self) -> bool {
        matches!(self, Membership::Valid { .. })
    }
    pub fn stratum(&self) -> Option<(usize, usize)> {
        match *self {
            Membership::Valid { i, j } => Some((i, j)),
            Membership::Invalid(_) => None,
        }
    }
}

pub fn is_in_f<F: Field>(t: &NetTriple<F>) -> Result<Membership> {
    use InvalidReason::*;
    if t.psi.is_zero() || t.psi_prime.is_zero() {
        return Ok(Membership::Invalid(ZeroComponent));
    }
    let i = t.psi.rank();
    let j = t.psi_prime.rank();
    if i != 4 && j > 4 - i {
        return Ok(Membership::Invalid(RankConstraint { i, j }));
    }
    if !all_zero(&symmetry_defect_psi(&t.phi, &t.psi)?) {
        return Ok(Membership::Invalid(PsiSymmetry));
    }
    if !all_zero(&symmetry_defect_psi_prime(&t.phi, &t.psi_prime)?) {
        return Ok(Membership::Invalid(PsiPrimeSymmetry));
    }
    if composition_scalars(&t.psi, &t.psi_prime)?.is_none() {
        return Ok(Membership::Invalid(NotScalar));
    }
    Ok(Membership::Valid { i, j })
}

/// Blocks of the degeneration family: `A` symmetric `i x i`, `C` of size
/// `(4-i) x i`, `D` symmetric `(4-i) x (4-i)`, entries in `R-dual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformBlocks<E> {
    pub i: usize,
    pub a: Vec<Vec<RVec<E>>>,
    pub c: Vec<Vec<RVec<E>>>,
    pub d: Vec<Vec<RVec<E>>>,
}

fn random_symmetric_block<F: Field, R: Rng + ?Sized>(
    f: F,
    n: usize,
    rng: &mut R,
) -> Vec<Vec<RVec<F::Elem>>> {
    let mut b = vec![vec![vec![f.zero(); 3]; n]; n];
    for x in 0..n {
        for y in x..n {
            let v = f.random_vec(rng, 3);
            b[x][y] = v.clone();
            b[y][x] = v;
        }
    }
    b
}

impl<E: Clone + PartialEq> DeformBlocks<E> {
    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(
        f: F,
        i: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidInput(format!("block size {i} outside 1..=3")));
        }
        let a = random_symmetric_block(f, i, rng);
        let c = (0..4 - i)
            .map(|_| (0..i).map(|_| f.random_vec(rng, 3)).collect())
            .collect();
        let d = random_symmetric_block(f, 4 - i, rng);
        Ok(DeformBlocks { i, a, c, d })
    }

    fn validate(&self) -> Result<()> {
        let i = self.i;
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidInput(format!("block size {i} outside 1..=3")));
        }
        let k = 4 - i;
        let shape_ok = |b: &Vec<Vec<RVec<E>>>, r: usize, c: usize| {
            b.len() == r
                && b.iter()
                    .all(|row| row.len() == c && row.iter().all(|e| e.len() == 3))
        };
        if !shape_ok(&self.a, i, i) || !shape_ok(&self.c, k, i) || !shape_ok(&self.d, k, k) {
            return Err(Error::Shape("deformation blocks have wrong shapes".into()));
        }
        let sym = |b: &Vec<Vec<RVec<E>>>| (0..b.len()).all(|x| (0..x).all(|y| b[x][y] == b[y][x]));
        if !sym(&self.a) {
            return Err(Error::InvalidInput("block A is not symmetric".into()));
        }
        if !sym(&self.d) {
            return Err(Error::InvalidInput("block D is not symmetric".into()));
        }
        Ok(())
    }
}

/// The one-parameter family `((A, a C^T), (C, D))`, `diag(I, a I)`,
/// `diag(a I, I)`.
pub fn deform_family<F: Field>(
    f: F,
    blocks: &DeformBlocks<F::Elem>,
    a: &F::Elem,
) -> Result<NetTriple<F>> {
    blocks.validate()?;
    let i = blocks.i;
    let phi = CuboCubicTensor::from_fn(f, |r, w, v| match (w < i, v < i) {
        (true, true) => blocks.a[w][v][r].clone(),
        (true, false) => f.mul(a, &blocks.c[v - i][w][r]),
        (false, true) => blocks.c[w - i][v][r].clone(),
        (false, false) => blocks.d[w - i][v - i][r].clone(),
    })?;
    let psi = Matrix::diagonal(
        f,
        &(0..4)
            .map(|k| if k < i { f.one() } else { a.clone() })
            .collect::<Vec<_>>(),
    );
    let psi_prime = Matrix::diagonal(
        f,
        &(0..4)
            .map(|k| if k < i { a.clone() } else { f.one() })
            .collect::<Vec<_>>(),
    );
    NetTriple::new(phi, psi, psi_prime)
}

/// Dimension of the space of `(h, lambda, mu, nu)` with `h C_r = lambda C_r`,
/// `psi h = mu psi` and `h psi' = nu psi'`. One means only scalars.
pub fn stabilizer_dimension<F: Field>(t: &NetTriple<F>) -> Result<usize> {
    if let Membership::Invalid(reason) = is_in_f(t)? {
        return Err(Error::InvalidInput(format!("triple is not in F: {reason}")));
    }
    let f = t.phi.field();
    // unknowns: h[w][w'] at w * 4 + w', then lambda 16, mu 17, nu 18
    const N: usize = 19;
    let mut rows = Vec::new();
    for r in 0..DIM_R {
        for w in 0..4 {
            for v in 0..4 {
                let mut row = vec![f.zero(); N];
                for wp in 0..4 {
                    row[w * 4 + wp] = t.phi.get(r, wp, v).clone();
                }
                row[16] = f.neg(t.phi.get(r, w, v));
                rows.push(row);
            }
        }
    }
    for v in 0..4 {
        for w in 0..4 {
            let mut row = vec![f.zero(); N];
            for wp in 0..4 {
                row[wp * 4 + w] = t.psi.get(v, wp).clone();
            }
            row[17] = f.neg(t.psi.get(v, w));
            rows.push(row);
        }
    }
    for w in 0..4 {
        for v in 0..4 {
            let mut row = vec![f.zero(); N];
            for wp in 0..4 {
                row[w * 4 + wp] = t.psi_prime.get(wp, v).clone();
            }
            row[18] = f.neg(t.psi_prime.get(w, v));
            rows.push(row);
        }
    }
    let m = Matrix::from_rows(f, N, rows)?;
    Ok(N - m.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonadFiber {
    pub rank_phi: usize,
    pub rank_psi: usize,
    /// `dim ker psi_xi - rank phi_xi`
    pub middle_rank: i64,
    pub complex_ok: bool,
}

/// The fiber at `xi` of `R ⊗ Ω²(2) -> W ⊗ Ω¹(1) -> O`, written on
/// `H = ker xi`: `phi_xi: R ⊗ Λ²H -> W ⊗ H` (9 -> 12) and
/// `psi_xi: W ⊗ H -> k`.
pub fn monad_fiber<F: Field>(
    phi: &CuboCubicTensor<F>,
    psi: &Matrix<F>,
    xi: &[F::Elem],
) -> Result<MonadFiber> {
    let f = phi.field();
    check_square4(psi, phi)?;
    proj::check_point(f, xi, 4)?;
    let xi_m = Matrix::new(f, 1, 4, xi.to_vec())?;
    let h = xi_m.kernel_basis();
    debug_assert_eq!(h.len(), 3);
    // phi(r ⊗ u) as a W-vector
    let phi_u = |r: usize, u: &[F::Elem]| -> Vec<F::Elem> {
        (0..4)
            .map(|w| (0..4).fold(f.zero(), |acc, v| f.mul_add(&acc, phi.get(r, w, v), &u[v])))
            .collect()
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];
    // target index (w, k) -> w * 3 + k; source index (r, pair) -> r * 3 + p
    let mut phi_xi = Matrix::zeros(f, 12, 9);
    for r in 0..DIM_R {
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let col = r * 3 + p;
            let pi = phi_u(r, &h[i]);
            let pj = phi_u(r, &h[j]);
            for w in 0..4 {
                let a = f.add(phi_xi.get(w * 3 + j, col), &pi[w]);
                phi_xi.set(w * 3 + j, col, a);
                let b = f.sub(phi_xi.get(w * 3 + i, col), &pj[w]);
                phi_xi.set(w * 3 + i, col, b);
            }
        }
    }
    let mut psi_xi = Matrix::zeros(f, 1, 12);
    for w in 0..4 {
        for (k, u) in h.iter().enumerate() {
            let val = (0..4).fold(f.zero(), |acc, v| f.mul_add(&acc, psi.get(v, w), &u[v]));
            psi_xi.set(0, w * 3 + k, val);
        }
    }
    let rank_phi = phi_xi.rank();
    let rank_psi = psi_xi.rank();
    let complex_ok = psi_xi.mul(&phi_xi)?.is_zero();
    Ok(MonadFiber {
        rank_phi,
        rank_psi,
        middle_rank: (12 - rank_psi) as i64 - rank_phi as i64,
        complex_ok,
    })
}

/// Result of the polarity map of a net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolarValue<T> {
    Point(T),
    Indeterminate,
}

impl<T> PolarValue<T> {
    pub fn point(self) -> Option<T> {
        match self {
            PolarValue::Point(p) => Some(p),
            PolarValue::Indeterminate => None,
        }
    }
}

/// The point orthogonal to `p` for all three quadrics, if unique.
pub fn net_involution<F: Field>(
    q: &[Matrix<F>],
    p: &[F::Elem],
) -> Result<PolarValue<Vec<F::Elem>>> {
    check_net(q)?;
    let f = q[0].field();
    proj::check_point(f, p, 4)?;
    let pm = Matrix::new(f, 1, 4, p.to_vec())?;
    let rows: Vec<Vec<F::Elem>> = q
        .iter()
        .map(|qi| Ok(pm.mul(qi)?.row(0).to_vec()))
        .collect::<Result<_>>()?;
    let k = Matrix::from_rows(f, 4, rows)?.kernel_basis();
    Ok(if k.len() == 1 {
        PolarValue::Point(proj::normalize(f, &k[0])?)
    } else {
        PolarValue::Indeterminate
    })
}

/// Determinant of the coefficients of `Q_i(s a + t b)`; zero iff the line
/// lies on a quadric of the net.
pub fn line_in_net_quadric<F: Field>(
    q: &[Matrix<F>],
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<F::Elem> {
    check_net(q)?;
    let f = q[0].field();
    proj::check_point(f, a, 4)?;
    proj::check_point(f, b, 4)?;
    if proj::proj_eq(f, a, b) {
        return Err(Error::ParallelPoints);
    }
    let bil = |m: &Matrix<F>, x: &[F::Elem], y: &[F::Elem]| -> Result<F::Elem> {
        Ok(f.dot(x, &m.mul_vec(y)?))
    };
    let two = f.from_i64(2);
    let rows = q
        .iter()
        .map(|m| {
            Ok(vec![
                bil(m, a, a)?,
                f.mul(&two, &bil(m, a, b)?),
                bil(m, b, b)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, 3, rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubocubic::{standard_twisted_cubic, twisted_cubic_tensor};
    use crate::field::{PrimeField, Rationals};
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

    fn random_net(f: PrimeField, rng: &mut crate::rng::Rng) -> Vec<Matrix<PrimeField>> {
        (0..3)
            .map(|_| Matrix::random_symmetric(f, 4, rng))
            .collect()
    }

    #[test]
    fn net_triple_is_in_f4() {
        let f = fp();
        let mut rng = rng_for(1, "nets", 0);
        let t = NetTriple::from_net(&random_net(f, &mut rng)).unwrap();
        assert!(all_zero(&symmetry_defect_psi(&t.phi, &t.psi).unwrap()));
        assert!(all_zero(
            &symmetry_defect_psi_prime(&t.phi, &t.psi_prime).unwrap()
        ));
        assert_eq!(
            composition_scalars(&t.psi, &t.psi_prime).unwrap(),
            Some((1, 1))
        );
        assert_eq!(is_in_f(&t).unwrap(), Membership::Valid { i: 4, j: 4 });
        let ids = solve_symmetry_psi(&t.phi);
        let span: Vec<_> = ids.iter().map(|m| m.entries().to_vec()).collect();
        let mut with_id = span.clone();
        with_id.push(Matrix::identity(f, 4).entries().to_vec());
        assert_eq!(proj::span_rank(f, &span), proj::span_rank(f, &with_id));
    }

    #[test]
    fn random_data_has_defects() {
        let f = fp();
        let mut rng = rng_for(2, "nets", 0);
        let phi = CuboCubicTensor::random(f, &mut rng);
        let psi = Matrix::random(f, 4, 4, &mut rng);
        assert!(!all_zero(&symmetry_defect_psi(&phi, &psi).unwrap()));
        assert!(!all_zero(&symmetry_defect_psi_prime(&phi, &psi).unwrap()));
        assert!(all_zero(
            &symmetry_defect_psi(&phi, &Matrix::zeros(f, 4, 4)).unwrap()
        ));
        assert!(all_zero(
            &symmetry_defect_psi_prime(&phi, &Matrix::zeros(f, 4, 4)).unwrap()
        ));
        assert!(solve_symmetry_psi(&phi).is_empty());
        let psi2 = Matrix::random(f, 4, 4, &mut rng);
        assert_eq!(composition_scalars(&psi, &psi2).unwrap(), None);
    }

    #[test]
    fn composition_examples() {
        let q = Rationals;
        let id = Matrix::identity(q, 4);
        let two = Matrix::scalar(q, 4, q.from_i64(2));
        assert_eq!(
            composition_scalars(&id, &two).unwrap(),
            Some((q.from_i64(2), q.from_i64(2)))
        );
        let p3 = Matrix::diagonal(q, &[q.one(), q.one(), q.one(), q.zero()]);
        let p1 = Matrix::diagonal(q, &[q.zero(), q.zero(), q.zero(), q.one()]);
        assert_eq!(
            composition_scalars(&p3, &p1).unwrap(),
            Some((q.zero(), q.zero()))
        );
    }

    #[test]
    fn twisted_cubic_tensors_have_unique_psi() {
        let f = fp();
        let mut rng = rng_for(3, "nets", 0);
        for _ in 0..3 {
            let d = Matrix::random_symmetric(f, 3, &mut rng);
            let phi =
                twisted_cubic_tensor(&standard_twisted_cubic(f), &[1, 0, 0, 0], &d, true).unwrap();
            let sols = solve_symmetry_psi(&phi);
            assert_eq!(sols.len(), 1);
            assert_eq!(sols[0].rank(), 1);
        }
    }

    #[test]
    fn deformation_family_strata() {
        let f = fp();
        let mut rng = rng_for(4, "nets", 0);
        for i in 1..=3 {
            let b = DeformBlocks::random(f, i, &mut rng).unwrap();
            for a in 0..4u64 {
                let t = deform_family(f, &b, &a).unwrap();
                let want = if a == 0 { (i, 4 - i) } else { (4, 4) };
                assert_eq!(is_in_f(&t).unwrap().stratum(), Some(want));
            }
        }
        let mut b = DeformBlocks::random(f, 3, &mut rng).unwrap();
        b.a[0][1] = vec![1, 2, 3];
        b.a[1][0] = vec![3, 2, 1];
        assert!(deform_family(f, &b, &1).is_err());
    }

    #[test]
    fn rank_constraint_rejected() {
        let f = fp();
        let mut rng = rng_for(5, "nets", 0);
        let b = DeformBlocks::random(f, 3, &mut rng).unwrap();
        let mut t = deform_family(f, &b, &0).unwrap();
        t.psi_prime = Matrix::diagonal(f, &[0, 1, 1, 1]);
        assert_eq!(
            is_in_f(&t).unwrap(),
            Membership::Invalid(InvalidReason::RankConstraint { i: 3, j: 3 })
        );
        t.psi_prime = Matrix::zeros(f, 4, 4);
        assert_eq!(
            is_in_f(&t).unwrap(),
            Membership::Invalid(InvalidReason::ZeroComponent)
        );
    }

    #[test]
    fn stabilizers() {
        let f = fp();
        let mut rng = rng_for(6, "nets", 0);
        let b = DeformBlocks::random(f, 3, &mut rng).unwrap();
        assert_eq!(
            stabilizer_dimension(&deform_family(f, &b, &1).unwrap()).unwrap(),
            1
        );
        assert_eq!(
            stabilizer_dimension(&deform_family(f, &b, &0).unwrap()).unwrap(),
            1
        );
        let b1 = DeformBlocks::random(f, 1, &mut rng).unwrap();
        assert_eq!(
            stabilizer_dimension(&deform_family(f, &b1, &0).unwrap()).unwrap(),
            1
        );
        // A blocks with a common kernel direction admit extra stabilizers
        let mut deg = b.clone();
        for k in 0..3 {
            deg.a[2][k] = vec![0; 3];
            deg.a[k][2] = vec![0; 3];
        }
        assert!(stabilizer_dimension(&deform_family(f, &deg, &0).unwrap()).unwrap() > 1);
        let bad = NetTriple::new(
            CuboCubicTensor::random(f, &mut rng),
            Matrix::identity(f, 4),
            Matrix::identity(f, 4),
        )
        .unwrap();
        assert!(stabilizer_dimension(&bad).is_err());
    }

    #[test]
    fn monad_fibers() {
        let f = fp();
        let mut rng = rng_for(7, "nets", 0);
        let b = DeformBlocks::random(f, 2, &mut rng).unwrap();
        let t = deform_family(f, &b, &1).unwrap();
        let mut good = 0;
        for _ in 0..20 {
            let xi = proj::random_point(f, &mut rng, 4);
            let m = monad_fiber(&t.phi, &t.psi, &xi).unwrap();
            assert!(m.complex_ok);
            if m.middle_rank == 2 {
                good += 1;
            }
        }
        assert!(good >= 19);
        let mut off = t.psi.clone();
        off.set(0, 1, f.add(off.get(0, 1), &1));
        let xi = proj::random_point(f, &mut rng, 4);
        assert!(!monad_fiber(&t.phi, &off, &xi).unwrap().complex_ok);
        assert!(monad_fiber(&t.phi, &t.psi, &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn polarity_on_vandermonde_net() {
        let q = Rationals;
        let net = vandermonde_net(q);
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let img = net_involution(&net, &v(&[1, 1, 1, 1]))
            .unwrap()
            .point()
            .unwrap();
        assert!(proj::proj_eq(q, &img, &v(&[-1, 3, -3, 1])));
        let back = net_involution(&net, &v(&[-1, 3, -3, 1]))
            .unwrap()
            .point()
            .unwrap();
        assert!(proj::proj_eq(q, &back, &v(&[1, 1, 1, 1])));
        // e_0 is orthogonal to everything with vanishing first coordinate
        assert_eq!(
            net_involution(&net, &v(&[1, 0, 0, 0])).unwrap(),
            PolarValue::Indeterminate
        );
        let t = CuboCubicTensor::from_net(&net).unwrap();
        let z = t.forward_map(&v(&[1, 1, 1, 1])).unwrap().point().unwrap();
        assert!(proj::proj_eq(q, &z, &img));
    }

    #[test]
    fn line_complex() {
        let q = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let net = vandermonde_net(q);
        let a = v(&[1, 2, 0, 1]);
        let b = v(&[0, 1, 3, -1]);
        assert_ne!(line_in_net_quadric(&net, &a, &b).unwrap(), q.zero());
        assert!(line_in_net_quadric(&net, &a, &a).is_err());
        // x0 x1 + x2 x3 contains the line x0 = x2 = 0
        let mut q1 = Matrix::zeros(q, 4, 4);
        q1.set(0, 1, q.one());
        q1.set(1, 0, q.one());
        q1.set(2, 3, q.one());
        q1.set(3, 2, q.one());
        let net2 = vec![q1, net[0].clone(), net[1].clone()];
        let d = line_in_net_quadric(&net2, &v(&[0, 1, 0, 0]), &v(&[0, 0, 0, 1])).unwrap();
        assert_eq!(d, q.zero());
    }
}
