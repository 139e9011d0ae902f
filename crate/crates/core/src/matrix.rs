use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major integer matrix. Products are overflow-checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// A matrix with `rows` rows of width `cols`; used when `rows` may be empty.
    pub fn from_rows_with_width(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let p = self[(i, k)]
                        .checked_mul(rhs[(k, j)])
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc
                        .checked_add(p)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let overflow = || Error::Overflow("determinant");
        let mut a: Vec<i128> = self.data.iter().map(|&x| i128::from(x)).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j]
                        .checked_mul(a[k * n + k])
                        .and_then(|x| x.checked_sub(a[i * n + k].checked_mul(a[k * n + j])?))
                        .ok_or_else(overflow)?;
                    a[i * n + j] = v / prev;
                }
            }
            prev = a[k * n + k];
        }
        i64::try_from(sign * a[n * n - 1]).map_err(|_| overflow())
    }

    pub fn checked_mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(
            self.cols,
            v.len(),
            "shape mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (a, b)| {
                    a.checked_mul(*b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntegerMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let i = IntegerMatrix::identity(2);
        assert_eq!(a.checked_mul(&i).unwrap(), a);
        assert_eq!(
            a.checked_mul(&a).unwrap(),
            IntegerMatrix::from_rows(vec![vec![7, 10], vec![15, 22]])
        );
        assert!(i.is_identity());
        assert_eq!(a.determinant().unwrap(), -2);
        let sing = IntegerMatrix::from_rows(vec![vec![0, 2, 1], vec![0, 4, 2], vec![0, 1, 7]]);
        assert_eq!(sing.determinant().unwrap(), 0);
        let p = IntegerMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]);
        assert_eq!(p.determinant().unwrap(), -3);
        assert!(!a.is_identity());
        assert_eq!(a.checked_mul_vec(&[1, 1]).unwrap(), vec![3, 7]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntegerMatrix::from_rows(vec![vec![i64::MAX, 1], vec![1, 1]]);
        assert_eq!(
            big.checked_mul(&big),
            Err(Error::Overflow("matrix product"))
        );
    }
}
