//! Exact linear algebra over the rationals by fraction-free (Bareiss) elimination.
//!
//! Rational rows are first scaled to integer rows; elimination then runs over
//! `BigInt` with exact divisions by the previous pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn integer_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let scale = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&scale / x.denom()))
        .collect();
    (ints, scale)
}

fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..ncols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots, swaps }
}

fn echelon_of(rows: &[Vec<Scalar>], ncols: usize) -> (Echelon, Vec<BigInt>) {
    let (ints, scales): (Vec<_>, Vec<_>) = rows.iter().map(|r| integer_row(r)).unzip();
    (bareiss(ints, ncols), scales)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    echelon_of(rows, ncols).0.pivots.len()
}

/// Determinant of a square matrix.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let (ech, scales) = echelon_of(rows, n);
    if ech.pivots.len() < n {
        return Scalar::zero();
    }
    let mut det = ech.rows[n - 1][n - 1].clone();
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    BigRational::new(det, scale)
}

/// Some solution of `a·x = b` (free variables set to zero), or `None` when the
/// system is inconsistent. `a` may be rectangular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len(), "right-hand side length must match row count");
    let ncols = match a.first() {
        Some(r) => r.len(),
        None => return Some(Vec::new()),
    };
    let augmented: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (ech, _) = echelon_of(&augmented, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (r, &c) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut acc = BigRational::from_integer(row[ncols].clone());
        for j in (c + 1)..ncols {
            if !row[j].is_zero() {
                acc -= BigRational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / BigRational::from_integer(row[c].clone());
    }
    Some(x)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    if rank(rows) < n {
        return None;
    }
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Scalar> = (0..n)
            .map(|i| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect();
        columns.push(solve(rows, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect())
}

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Scalar::zero(), |acc, (a, b)| scalar::add(&acc, &scalar::mul(a, b)))
        })
        .collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn leibniz(m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        if n == 0 {
            return Scalar::one();
        }
        let mut total = Scalar::zero();
        for c in 0..n {
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * leibniz(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn rational_matrix() -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(
                proptest::collection::vec((-5i64..6, 1i64..4).prop_map(|(a, b)| ratio(a, b)), n),
                n,
            )
        })
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(&m), int(1));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&singular), int(0));
        let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&swap), int(-1));
    }

    #[test]
    fn solve_rectangular_and_inconsistent() {
        // overdetermined but consistent
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]];
        let x = solve(&a, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve(&a, &[int(2), int(3), int(6)]).is_none());
        // underdetermined: free variable pinned to zero
        let a = vec![vec![int(1), int(1)]];
        assert_eq!(solve(&a, &[int(4)]).unwrap(), vec![int(4), int(0)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![int(2), ratio(1, 3)], vec![int(-1), int(5)]];
        let inv = inverse(&m).unwrap();
        for (j, col) in (0..2).map(|j| (j, inv.iter().map(|r| r[j].clone()).collect::<Vec<_>>())) {
            let image = mat_vec(&m, &col);
            for (i, v) in image.iter().enumerate() {
                assert_eq!(*v, if i == j { int(1) } else { int(0) });
            }
        }
        assert!(inverse(&[vec![int(1), int(1)], vec![int(1), int(1)]]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_determinant_matches_cofactor_expansion(m in rational_matrix()) {
            prop_assert_eq!(determinant(&m), leibniz(&m));
        }

        #[test]
        fn solutions_satisfy_the_system(m in rational_matrix(), seed in proptest::collection::vec(-4i64..5, 4)) {
            let n = m.len();
            let x: Vec<Scalar> = seed.iter().take(n).map(|&v| int(v)).collect();
            let b = mat_vec(&m, &x);
            let y = solve(&m, &b).expect("consistent by construction");
            prop_assert_eq!(mat_vec(&m, &y), b);
            prop_assert_eq!(rank(&m) == n, !leibniz(&m).is_zero());
        }
    }
}
