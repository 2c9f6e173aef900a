//! Row reduction over the coefficient field and over the base algebra.
//!
//! Over A = ℚ[x₁,…,x_N] only unit pivots (nonzero constants) are used. When the
//! reduction runs to completion this proves freeness and invertibility claims
//! exactly; otherwise the outcome is reported as inconclusive.

use crate::poly::Poly;
use crate::scalar::Scalar;

/// Rank of a matrix over the field, by Gaussian elimination.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        let pivot: Vec<S> = rows[r].iter().map(|v| v.clone() * inv.clone()).collect();
        for i in (r + 1)..rows.len() {
            let f = rows[i][c].clone();
            if !f.is_zero() {
                for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Basis of {v : M v = 0} over the field.
pub fn nullspace<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize) -> Vec<Vec<S>> {
    let polys = rows
        .into_iter()
        .map(|r| r.into_iter().map(|c| Poly::constant(0, c)).collect())
        .collect();
    let red = UnitPivotReduction::new(polys, ncols, 0);
    red.kernel()
        .expect("field elimination always completes")
        .into_iter()
        .map(|v| v.into_iter().map(|p| p.constant_term()).collect())
        .collect()
}

/// Reduced row echelon form over A using only constant pivots.
#[derive(Clone, Debug)]
pub struct UnitPivotReduction<S> {
    nvars: usize,
    ncols: usize,
    rows: Vec<Vec<Poly<S>>>,
    /// (row, column) of each pivot; pivot rows are normalised to 1.
    pivots: Vec<(usize, usize)>,
}

impl<S: Scalar> UnitPivotReduction<S> {
    pub fn new(mut rows: Vec<Vec<Poly<S>>>, ncols: usize, nvars: usize) -> Self {
        rows.retain(|r| r.iter().any(|p| !p.is_zero()));
        let mut pivots = Vec::new();
        let mut used = vec![false; rows.len()];
        loop {
            let found = (0..ncols).find_map(|c| {
                if pivots.iter().any(|&(_, pc)| pc == c) {
                    return None;
                }
                (0..rows.len()).find_map(|r| {
                    let v = rows[r][c].constant_value()?;
                    (!used[r] && !v.is_zero()).then_some((r, c, v))
                })
            });
            let Some((r, c, v)) = found else { break };
            let inv = S::one() / v;
            for p in rows[r].iter_mut() {
                *p = p.scale(&inv);
            }
            let pivot_row = rows[r].clone();
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for (p, q) in rows[i].iter_mut().zip(&pivot_row) {
                    if !q.is_zero() {
                        *p = &*p - &(&f * q);
                    }
                }
            }
            used[r] = true;
            pivots.push((r, c));
        }
        UnitPivotReduction { nvars, ncols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True when every row outside the pivot rows has been reduced to zero.
    pub fn is_complete(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            self.pivots.iter().any(|&(pr, _)| pr == i) || r.iter().all(Poly::is_zero)
        })
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        cols.sort_unstable();
        cols
    }

    /// A-basis of the kernel, one vector per free column; `None` if inconclusive.
    pub fn kernel(&self) -> Option<Vec<Vec<Poly<S>>>> {
        if !self.is_complete() {
            return None;
        }
        let pivot_cols = self.pivot_columns();
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Poly::zero(self.nvars); self.ncols];
            v[f] = Poly::one(self.nvars);
            for &(r, c) in &self.pivots {
                v[c] = -&self.rows[r][f];
            }
            basis.push(v);
        }
        Some(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank::<Rational>(vec![]), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let ker = nullspace(m.clone(), 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ker[0]).map(|(a, b)| a * b).sum();
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn unit_pivots_over_polynomials() {
        let t = Poly::<Rational>::var(1, 0);
        let one = Poly::one(1);
        // [[1, t], [t, t²]] has kernel spanned by (−t, 1).
        let rows = vec![vec![one.clone(), t.clone()], vec![t.clone(), t.pow(2)]];
        let red = UnitPivotReduction::new(rows, 2, 1);
        assert!(red.is_complete());
        assert_eq!(red.kernel().unwrap(), vec![vec![-&t, one.clone()]]);
        // [[t]] has no unit pivot: inconclusive.
        let red = UnitPivotReduction::new(vec![vec![t.clone()]], 1, 1);
        assert!(!red.is_complete());
        assert!(red.kernel().is_none());
    }
}
