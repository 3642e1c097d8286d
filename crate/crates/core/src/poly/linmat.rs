use super::HomogPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};

/// Matrix whose entries are linear forms, stored as coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix<F: Field> {
    field: F,
    nvars: usize,
    rows: usize,
    cols: usize,
    /// entries[i][j][k] = coefficient of x_k in entry (i, j)
    entries: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> LinearFormMatrix<F> {
    pub fn new(field: F, nvars: usize, entries: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        for r in &entries {
            if r.len() != cols {
                return Err(Error::Shape("ragged matrix of linear forms".into()));
            }
            if r.iter().any(|e| e.len() != nvars) {
                return Err(Error::Shape(
                    "linear form with wrong number of variables".into(),
                ));
            }
        }
        Ok(LinearFormMatrix {
            field,
            nvars,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_polys(field: F, nvars: usize, entries: &[Vec<HomogPoly<F>>]) -> Result<Self> {
        let mut out = Vec::with_capacity(entries.len());
        for row in entries {
            let mut r = Vec::with_capacity(row.len());
            for p in row {
                if !p.is_zero() && p.degree() != 1 {
                    return Err(Error::InvalidInput("entry is not a linear form".into()));
                }
                if p.nvars() != nvars {
                    return Err(Error::Shape("entry in wrong number of variables".into()));
                }
                let c = (0..nvars)
                    .map(|k| {
                        let mut e = vec![0; nvars];
                        e[k] = 1;
                        p.coeff(&e)
                    })
                    .collect();
                r.push(c);
            }
            out.push(r);
        }
        Self::new(field, nvars, out)
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn coeffs(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.entries[i][j]
    }

    pub fn entry(&self, i: usize, j: usize) -> HomogPoly<F> {
        HomogPoly::linear(self.field, &self.entries[i][j])
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        if point.len() != self.nvars {
            return Err(Error::Shape("point length".into()));
        }
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.dot(&self.entries[i][j], point)
        }))
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix<F> {
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect();
        PolyMatrix {
            field: self.field,
            nvars: self.nvars,
            entries,
        }
    }

    /// Signed maximal minors `m_w = (-1)^w det(M without row w)` of a
    /// `(c+1) x c` matrix, so that `sum_w m_w M[w][j] = 0` for every column.
    pub fn maximal_minors(&self) -> Result<Vec<HomogPoly<F>>> {
        if self.rows != self.cols + 1 {
            return Err(Error::Shape(format!(
                "maximal minors need rows = cols + 1, got {}x{}",
                self.rows, self.cols
            )));
        }
        self.to_poly_matrix().signed_row_deletion_minors()
    }

    /// Signed maximal minors evaluated at a point.
    pub fn maximal_minors_at(&self, point: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if self.rows != self.cols + 1 {
            return Err(Error::Shape("maximal minors need rows = cols + 1".into()));
        }
        let m = self.evaluate(point)?;
        signed_row_deletion_minors_scalar(&m)
    }

    /// All `k x k` minors (rows and columns in increasing order).
    pub fn minors(&self, k: usize) -> Result<Vec<HomogPoly<F>>> {
        self.to_poly_matrix().minors(k)
    }

    /// Generic rank, estimated from the maximal rank at a few random points.
    pub fn generic_rank<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let mut best = 0;
        for _ in 0..4 {
            let pt = self.field.random_vec(rng, self.nvars);
            best = best.max(self.evaluate(&pt)?.rank());
        }
        Ok(best)
    }
}

/// `m_w = (-1)^w det(m without row w)` for a `(c+1) x c` scalar matrix.
pub fn signed_row_deletion_minors_scalar<F: Field>(m: &Matrix<F>) -> Result<Vec<F::Elem>> {
    let f = m.field();
    let (r, c) = (m.rows(), m.cols());
    if r != c + 1 {
        return Err(Error::Shape("rows must equal cols + 1".into()));
    }
    let mut out = Vec::with_capacity(r);
    for w in 0..r {
        let sub = Matrix::from_fn(f, c, c, |i, j| {
            let ii = if i < w { i } else { i + 1 };
            m.get(ii, j).clone()
        });
        let d = sub.det()?;
        out.push(if w % 2 == 1 { f.neg(&d) } else { d });
    }
    Ok(out)
}

/// Matrix of homogeneous polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    nvars: usize,
    entries: Vec<Vec<HomogPoly<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: F, nvars: usize, entries: Vec<Vec<HomogPoly<F>>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix {
            field,
            nvars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }
    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }
    pub fn entry(&self, i: usize, j: usize) -> &HomogPoly<F> {
        &self.entries[i][j]
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        let mut data = Vec::with_capacity(self.rows() * self.cols());
        for r in &self.entries {
            for p in r {
                data.push(p.evaluate(point)?);
            }
        }
        Matrix::new(self.field, self.rows(), self.cols(), data)
    }

    /// Determinant of the square submatrix on the given rows and columns,
    /// by cofactor expansion along the first row.
    pub fn sub_det(&self, rows: &[usize], cols: &[usize]) -> Result<HomogPoly<F>> {
        let f = self.field;
        match rows.len() {
            0 => Ok(HomogPoly::constant(f, self.nvars, f.one())),
            1 => Ok(self.entries[rows[0]][cols[0]].clone()),
            _ => {
                let mut acc: Option<HomogPoly<F>> = None;
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self.entries[rows[0]][c];
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let minor = self.sub_det(&rows[1..], &rest)?;
                    let mut t = a.mul(&minor)?;
                    if k % 2 == 1 {
                        t = t.neg();
                    }
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s.add(&t)?,
                    });
                }
                Ok(acc.unwrap_or_else(|| {
                    let deg = rows
                        .iter()
                        .zip(cols)
                        .map(|(&i, &j)| self.entries[i][j].degree())
                        .sum();
                    HomogPoly::zero(f, self.nvars, deg)
                }))
            }
        }
    }

    pub fn signed_row_deletion_minors(&self) -> Result<Vec<HomogPoly<F>>> {
        let (r, c) = (self.rows(), self.cols());
        if r != c + 1 {
            return Err(Error::Shape("rows must equal cols + 1".into()));
        }
        let cols: Vec<usize> = (0..c).collect();
        (0..r)
            .map(|w| {
                let rows: Vec<usize> = (0..r).filter(|&i| i != w).collect();
                let d = self.sub_det(&rows, &cols)?;
                Ok(if w % 2 == 1 { d.neg() } else { d })
            })
            .collect()
    }

    pub fn minors(&self, k: usize) -> Result<Vec<HomogPoly<F>>> {
        let mut out = Vec::new();
        for rows in subsets(self.rows(), k) {
            for cols in subsets(self.cols(), k) {
                out.push(self.sub_det(&rows, &cols)?);
            }
        }
        Ok(out)
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn unit<F: Field>(f: F, n: usize, i: usize) -> Vec<F::Elem> {
        let mut c = vec![f.zero(); n];
        c[i] = f.one();
        c
    }

    #[test]
    fn two_by_one_minors() {
        let q = Rationals;
        let m =
            LinearFormMatrix::new(q, 2, vec![vec![unit(q, 2, 0)], vec![unit(q, 2, 1)]]).unwrap();
        let mins = m.maximal_minors().unwrap();
        assert_eq!(mins[0], HomogPoly::var(q, 2, 1));
        assert_eq!(mins[1], HomogPoly::var(q, 2, 0).neg());
    }

    #[test]
    fn twisted_cubic_minors() {
        let q = Rationals;
        let x = |i| unit(q, 4, i);
        let m = LinearFormMatrix::new(
            q,
            4,
            vec![vec![x(0), x(1)], vec![x(1), x(2)], vec![x(2), x(3)]],
        )
        .unwrap();
        let mins = m.maximal_minors().unwrap();
        let t = |terms: Vec<(Vec<u32>, i64)>| {
            HomogPoly::from_terms(q, 4, 2, terms.into_iter().map(|(e, c)| (e, q.from_i64(c))))
                .unwrap()
        };
        assert_eq!(
            mins[0],
            t(vec![(vec![0, 1, 0, 1], 1), (vec![0, 0, 2, 0], -1)])
        );
        assert_eq!(
            mins[1],
            t(vec![(vec![1, 0, 0, 1], -1), (vec![0, 1, 1, 0], 1)])
        );
        assert_eq!(
            mins[2],
            t(vec![(vec![1, 0, 1, 0], 1), (vec![0, 2, 0, 0], -1)])
        );
        assert!(LinearFormMatrix::new(q, 4, vec![vec![x(0), x(1)]])
            .unwrap()
            .maximal_minors()
            .is_err());
    }

    #[test]
    fn random_four_by_three_gives_cubics() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = crate::rng::rng_for(0, "linmat", 0);
        let entries = (0..4)
            .map(|_| (0..3).map(|_| f.random_vec(&mut rng, 4)).collect())
            .collect();
        let m = LinearFormMatrix::new(f, 4, entries).unwrap();
        let mins = m.maximal_minors().unwrap();
        assert_eq!(mins.len(), 4);
        assert!(mins.iter().all(|p| p.degree() == 3 && !p.is_zero()));
        // minors are orthogonal to each column
        let pt = f.random_vec(&mut rng, 4);
        let vals = m.maximal_minors_at(&pt).unwrap();
        let sym: Vec<_> = mins.iter().map(|p| p.evaluate(&pt).unwrap()).collect();
        assert_eq!(vals, sym);
        let mp = m.evaluate(&pt).unwrap();
        for j in 0..3 {
            assert_eq!(f.dot(&vals, &mp.column(j)), 0);
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
