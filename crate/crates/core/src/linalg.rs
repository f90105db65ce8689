//! Small exact linear-algebra helpers: Gaussian elimination and determinants
//! over the rationals. Matrices here stay tiny (dimension <= ~20).

use crate::rat::Rat;
use num_traits::Zero;

/// Solve `A x = b` by fraction-free-ish Gaussian elimination with partial
/// pivoting on nonzero entries. Returns None if the system is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone().recip();
        for c in col..=n {
            let v = &m[col][c] * &inv;
            m[col][c] = v;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant by elimination.
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut det = Rat::from_integer(1.into());
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone().recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn solve_2x2() {
        let a = vec![vec![rint(2), rint(1)], vec![rint(1), rint(3)]];
        let b = vec![rint(5), rint(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![rint(1), rint(3)]);
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![rint(1), rint(2)], vec![rint(2), rint(4)]];
        assert!(solve(&a, &vec![rint(1), rint(2)]).is_none());
        assert_eq!(determinant(&a), rint(0));
    }

    #[test]
    fn det_3x3() {
        let a = vec![
            vec![rint(1), rat(1, 2), rint(0)],
            vec![rint(0), rint(1), rint(4)],
            vec![rint(5), rint(6), rint(0)],
        ];
        // det = 1*(0-24) - 1/2*(0-20) + 0 = -24 + 10 = -14
        assert_eq!(determinant(&a), rint(-14));
    }
}
