//! Exact linear algebra over ℚ and ℤ: row reduction, rational solves,
//! null spaces and saturated integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{lcm_of_denominators, to_i64, Rational};
use crate::error::Result;

pub type Matrix = Vec<Vec<Rational>>;

pub fn to_rational_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

/// Reduced row echelon form. Columns are tried as pivots in the order given
/// by `column_order`; returns the reduced rows (zero rows dropped) and the
/// pivot column of each.
pub fn rref_with_order(rows: &Matrix, column_order: &[usize]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in column_order {
        if r == m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rref(rows: &Matrix) -> (Matrix, Vec<usize>) {
    let width = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..width).collect();
    rref_with_order(rows, &order)
}

pub fn rank(rows: &Matrix) -> usize {
    rref(rows).1.len()
}

/// Some solution of `M x = b` (free variables set to zero), or `None`.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let width = m.first().map_or(0, |r| r.len());
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..=width).collect();
    let (red, piv) = rref_with_order(&aug, &order);
    if piv.contains(&width) {
        return None;
    }
    let mut x = vec![Rational::zero(); width];
    for (row, &c) in red.iter().zip(&piv) {
        x[c] = row[width].clone();
    }
    Some(x)
}

/// Basis of `{x : M x = 0}` over ℚ.
pub fn nullspace(m: &Matrix, width: usize) -> Matrix {
    let (red, piv) = rref(m);
    let free: Vec<usize> = (0..width).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); width];
            v[f] = Rational::one();
            for (row, &pc) in red.iter().zip(&piv) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let Some(first) = m.first() else {
        return Vec::new();
    };
    (0..first.len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[i64], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(&x, y)| y * Rational::from_integer(x.into()))
        .sum()
}

/// Saturated basis of the integer kernel `{l ∈ ℤ^N : Σ_j l_j c_j = 0}` of the
/// `n × N` matrix whose columns are `cols`, returned in row Hermite normal form.
pub fn integer_kernel(cols: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    let big_n = cols.len();
    // column operations on A, mirrored on U
    let mut a: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..big_n)
        .map(|j| {
            (0..big_n)
                .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut start = 0;
    for row in 0..n {
        loop {
            let nonzero: Vec<usize> = (start..big_n).filter(|&j| !a[j][row].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    a.swap(start, j);
                    u.swap(start, j);
                    start += 1;
                }
                break;
            }
            let k = *nonzero
                .iter()
                .min_by_key(|&&j| a[j][row].abs())
                .expect("nonempty");
            for &j in &nonzero {
                if j == k {
                    continue;
                }
                let q = a[j][row].div_floor(&a[k][row]);
                let (ak, uk) = (a[k].clone(), u[k].clone());
                for (x, y) in a[j].iter_mut().zip(&ak) {
                    *x -= &q * y;
                }
                for (x, y) in u[j].iter_mut().zip(&uk) {
                    *x -= &q * y;
                }
            }
        }
    }
    let kernel: Vec<Vec<BigInt>> = u[start..].to_vec();
    let hnf = row_hermite(kernel);
    hnf.iter()
        .map(|row| row.iter().map(|x| to_i64(x, "relation lattice basis")).collect())
        .collect()
}

/// Row Hermite normal form of a full-row-rank integer matrix.
pub fn row_hermite(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = m.first().map(|r| r.len()) else {
        return m;
    };
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let k = *nonzero
                .iter()
                .min_by_key(|&&i| m[i][col].abs())
                .expect("nonempty");
            let pivot = m[k].clone();
            for &i in &nonzero {
                if i != k {
                    let q = m[i][col].div_floor(&pivot[col]);
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= &q * y;
                    }
                }
            }
        }
        let Some(sel) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = m[r].clone();
        for i in 0..r {
            let q = m[i][col].div_floor(&pivot[col]);
            if !q.is_zero() {
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn kernel_of_example_one() {
        let cols = vec![vec![3, 0], vec![0, 3], vec![2, 2]];
        assert_eq!(integer_kernel(&cols, 2).unwrap(), vec![vec![2, 2, -3]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let cols = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(integer_kernel(&cols, 3).unwrap().is_empty());
    }

    #[test]
    fn kernel_is_saturated() {
        // columns 2, 4: the rational kernel is spanned by (2, -1) but the
        // integer kernel also by (2, -1); columns 2, 3 give (3, -2)
        let cols = vec![vec![2], vec![3]];
        assert_eq!(integer_kernel(&cols, 1).unwrap(), vec![vec![3, -2]]);
        let cols = vec![vec![4, 0], vec![6, 0], vec![0, 1]];
        assert_eq!(integer_kernel(&cols, 2).unwrap(), vec![vec![3, -2, 0]]);
    }

    #[test]
    fn solve_and_nullspace() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(&m, &[int(3), int(6)]).unwrap(), vec![int(3), int(0)]);
        assert!(solve(&m, &[int(3), int(5)]).is_none());
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
        assert_eq!(primitive(&[rat(1, 2), rat(-3, 4)]), vec![2.into(), BigInt::from(-3)]);
    }
}
