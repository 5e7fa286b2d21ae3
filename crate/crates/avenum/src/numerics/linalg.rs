use super::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is singular")]
pub struct Singular;

/// Solve `M x = b` for square `M` by Gaussian elimination with partial
/// pivoting.
///
/// Under the rational backend the result is exact and only an exactly zero
/// pivot column is reported singular. Floats use the scale-relative
/// threshold of [`Scalar::pivot_vanishes`].
pub fn solve_linear<S: Scalar>(m: &[Vec<S>], b: &[S]) -> Result<Vec<S>, Singular> {
    let n = m.len();
    assert_eq!(b.len(), n, "rhs length");
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut scale = S::zero();
    for row in m {
        for x in row {
            let a = x.abs();
            if a > scale {
                scale = a;
            }
        }
    }
    if scale.is_zero() {
        return Err(Singular);
    }
    let mut a: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();

    for col in 0..n {
        let mut best = col;
        let mut best_abs = a[col][col].abs();
        for (r, row) in a.iter().enumerate().skip(col + 1) {
            let v = row[col].abs();
            if v > best_abs {
                best = r;
                best_abs = v;
            }
        }
        if S::pivot_vanishes(&best_abs, &scale) {
            return Err(Singular);
        }
        a.swap(col, best);
        let pivot = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            for c in col..=n {
                let t = f.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - t;
            }
        }
    }

    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = a[r][n].clone();
        for c in r + 1..n {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    Ok(x)
}

/// Matrix-vector product.
pub fn mat_vec<S: Scalar>(m: &[Vec<S>], x: &[S]) -> Vec<S> {
    m.iter().map(|row| super::dot(row, x)).collect()
}

/// Cross product in three dimensions.
pub fn cross3<S: Scalar>(a: &[S], b: &[S]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;
    use num_rational::BigRational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| ratio(v, 1)).collect()).collect()
    }

    #[test]
    fn identity() {
        let m = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = vec![ratio(1, 1), ratio(2, 1), ratio(3, 1)];
        assert_eq!(solve_linear(&m, &b).unwrap(), b);
    }

    #[test]
    fn needs_row_swap() {
        let m = q(&[&[0, -2], &[1, 1]]);
        let x = solve_linear(&m, &[ratio(1, 1), ratio(1, 1)]).unwrap();
        assert_eq!(x, vec![ratio(3, 2), ratio(-1, 2)]);
    }

    #[test]
    fn rank_one_is_singular() {
        let m = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&m, &[ratio(1, 1), ratio(1, 1)]), Err(Singular));
        let mf = vec![vec![1.0, 1.0], vec![2.0, 2.0 + 1e-14]];
        assert_eq!(solve_linear(&mf, &[1.0, 1.0]), Err(Singular));
    }
}
