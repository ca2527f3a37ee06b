//! Dense exact linear algebra.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point or direction; coordinates in one exact field.
pub type Vector<S> = Vec<S>;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vector<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector<S>]) -> Result<Self> {
        Ok(Self::from_rows(columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[S]) -> Vector<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = S::one() / m.get(row, col);
            for c in col..m.cols {
                let v = m.get(row, c).clone() * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - &(factor.clone() * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in
    /// that column.
    pub fn nullspace(&self) -> Vec<Vector<S>> {
        let (r, pivots) = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
    }

    /// Some solution of `A x = rhs` (free variables zero), or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Option<Vector<S>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side dimension mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (r, b) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y)
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn scale<S: Scalar>(c: &S, a: &[S]) -> Vector<S> {
    a.iter().map(|x| c.clone() * x).collect()
}

pub fn is_zero_vector<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `sum_j coeffs[j] * points[j]`.
pub fn combine<S: Scalar>(coeffs: &[S], points: &[Vector<S>]) -> Vector<S> {
    assert_eq!(coeffs.len(), points.len(), "coefficient count mismatch");
    let dim = points.first().map_or(0, Vec::len);
    let mut out = vec![S::zero(); dim];
    for (c, p) in coeffs.iter().zip(points) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(p) {
            *o = o.clone() + c.clone() * x;
        }
    }
    out
}

/// Arithmetic mean of a nonempty point list.
pub fn centroid<S: Scalar>(points: &[Vector<S>]) -> Vector<S> {
    let w = S::one() / S::from_i64(points.len() as i64);
    combine(&vec![w; points.len()], points)
}

/// Rank of `{p - p_0}`; `None` for an empty list.
pub fn affine_rank<S: Scalar>(points: &[Vector<S>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    let diffs: Vec<_> = rest.iter().map(|p| sub(p, first)).collect();
    Some(Matrix::from_rows(&diffs).map_or(0, |m| m.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect();
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&ns[0])));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[r(3), r(1)]).unwrap(), vec![r(2), r(1)]);
        let s = mat(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[r(1), r(3)]).is_none());
        let x = s.solve(&[r(1), r(2)]).unwrap();
        assert_eq!(s.mul_vec(&x), vec![r(1), r(2)]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![r(1), r(2)], vec![r(1)]];
        assert!(Matrix::from_rows(&rows).is_err());
    }

    #[test]
    fn affine_rank_cases() {
        assert_eq!(affine_rank::<Rational>(&[]), None);
        assert_eq!(affine_rank(&[vec![r(1), r(1)]]), Some(0));
        let collinear = vec![vec![r(0), r(0)], vec![r(1), r(1)], vec![r(2), r(2)]];
        assert_eq!(affine_rank(&collinear), Some(1));
    }
}
