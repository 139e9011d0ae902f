//! Smith normal form over the integers with overflow-checked arithmetic.

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

const OVERFLOW: Error = Error::Overflow("smith normal form");

fn sub_mul(x: i64, q: i64, y: i64) -> Result<i64> {
    q.checked_mul(y)
        .and_then(|p| x.checked_sub(p))
        .ok_or(OVERFLOW)
}

/// Invariant factors `d1 | d2 | ...` (length `min(rows, cols)`), each `≥ 0`,
/// with zeros last.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<Vec<i64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let k = rows.min(cols);
    let mut diag = Vec::with_capacity(k);

    for t in 0..k {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize, u64)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    let v = x.unsigned_abs();
                    if v != 0 && pivot.is_none_or(|(_, _, best)| v < best) {
                        pivot = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                diag.resize(k, 0);
                return Ok(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, &y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x = sub_mul(*x, q, y)?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = sub_mul(row[j], q, row[t])?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and go again with a smaller pivot.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, &y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x = x.checked_add(y).ok_or(OVERFLOW)?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].checked_abs().ok_or(OVERFLOW)?);
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            smith_normal_form(&IntegerMatrix::identity(3)).unwrap(),
            vec![1, 1, 1]
        );
        let m = IntegerMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).unwrap(), vec![2, 4]);
        assert_eq!(
            smith_normal_form(&IntegerMatrix::zeros(2, 3)).unwrap(),
            vec![0, 0]
        );
        assert_eq!(
            smith_normal_form(&IntegerMatrix::zeros(0, 4)).unwrap(),
            Vec::<i64>::new()
        );
        let m = IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).unwrap(), vec![1, 6]);
        let m = IntegerMatrix::from_rows(vec![vec![0, 0, 5]]);
        assert_eq!(smith_normal_form(&m).unwrap(), vec![5]);
    }

    #[test]
    fn overflow_detected() {
        let m = IntegerMatrix::from_rows(vec![vec![i64::MIN]]);
        assert_eq!(smith_normal_form(&m), Err(OVERFLOW));
    }
}
