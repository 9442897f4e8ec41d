use std::fmt::Debug;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rat, RatFunc};

/// Exact field arithmetic for the matrix routines.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl Field for Rat {}
impl Field for RatFunc {}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn with_column(&self, col: &[F]) -> Self {
        assert_eq!(col.len(), self.rows);
        Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                col[r].clone()
            }
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = factor.clone() * m[(row, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - delta;
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

    /// Rank and a basis of the right kernel `{v : M v = 0}`, one basis vector
    /// per free column of the echelon form.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<F>>) {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Rank and kernel basis of an exact matrix.
pub fn matrix_rank_kernel<F: Field>(m: &Matrix<F>) -> (usize, Vec<Vec<F>>) {
    m.rank_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, UniPoly};

    fn diag(entries: &[i64]) -> Matrix<Rat> {
        Matrix::from_fn(entries.len(), entries.len(), |r, c| {
            if r == c {
                rat(entries[r])
            } else {
                Rat::zero()
            }
        })
    }

    fn unit(n: usize, k: usize) -> Vec<Rat> {
        (0..n).map(|i| if i == k { Rat::one() } else { Rat::zero() }).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = matrix_rank_kernel(&Matrix::<Rat>::identity(4));
        assert_eq!(r, 4);
        assert!(k.is_empty());
    }

    #[test]
    fn diagonal_normal_form() {
        let (r, k) = matrix_rank_kernel(&diag(&[1, 1, 0, 0]));
        assert_eq!(r, 2);
        assert_eq!(k, vec![unit(4, 2), unit(4, 3)]);
    }

    #[test]
    fn function_field_block() {
        let t = RatFunc::from_poly(UniPoly::x());
        let o = RatFunc::one();
        let z = RatFunc::zero();
        let m = Matrix::from_rows(vec![
            vec![t.clone(), o.clone(), z.clone(), z.clone()],
            vec![o, t, z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z],
        ]);
        let (r, k) = matrix_rank_kernel(&m);
        assert_eq!(r, 2);
        let e = |i: usize| -> Vec<RatFunc> {
            (0..4).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()
        };
        assert_eq!(k, vec![e(2), e(3)]);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
        ]);
        let (r, k) = matrix_rank_kernel(&m);
        assert_eq!(r + k.len(), 3);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}
