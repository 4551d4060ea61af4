//! Exact linear algebra over the rationals.

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// `particular + span(kernel)`.
    Parametrized { particular: Vec<Rational>, kernel: Vec<Vec<Rational>> },
    Inconsistent,
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solve `A x = b` exactly.
pub fn linear_solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), n, "ragged matrix");
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rational::ZERO; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    if pivots.len() == n {
        return Solution::Unique(x);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::ZERO; n];
            v[f] = Rational::ONE;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&aug[i][f];
            }
            v
        })
        .collect();
    Solution::Parametrized { particular: x, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn identity_returns_rhs() {
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(linear_solve(&a, &[q(3), Rational::new(-2, 7)]), Solution::Unique(vec![q(3), Rational::new(-2, 7)]));
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(linear_solve(&a, &[q(1), q(2)]), Solution::Inconsistent);
    }

    #[test]
    fn scalar() {
        assert_eq!(linear_solve(&[vec![q(2)]], &[q(1)]), Solution::Unique(vec![Rational::new(1, 2)]));
    }

    #[test]
    fn parametrized_family() {
        let a = vec![vec![q(1), q(2), q(3)]];
        match linear_solve(&a, &[q(6)]) {
            Solution::Parametrized { particular, kernel } => {
                assert_eq!(kernel.len(), 2);
                let dot = |v: &Vec<Rational>| v.iter().zip(&a[0]).map(|(x, y)| x * y).sum::<Rational>();
                assert_eq!(dot(&particular), q(6));
                for k in &kernel {
                    assert!(dot(k).is_zero());
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
