//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::Rational;

/// A sparse column-major matrix over `Rational`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, Rational>>,
}

/// Reduced row echelon form of an augmented system.
struct Echelon {
    /// `(row, column)` of every pivot, in column order.
    pivots: Vec<(usize, usize)>,
    rows: Vec<BTreeMap<usize, Rational>>,
    rhs: Vec<Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<BTreeMap<usize, Rational>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&r| r < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, Rational> {
        &self.columns[j]
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (&i, v) in col {
                y[i] += v * &x[j];
            }
        }
        y
    }

    /// Full elimination. Pivot choice is the first column with a nonzero
    /// entry in an unused row, and among those rows the smallest index.
    fn eliminate(&self, rhs: Option<&[Rational]>) -> Echelon {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, v) in col {
                if !v.is_zero() {
                    rows[i].insert(j, v.clone());
                }
            }
        }
        let mut rhs: Vec<Rational> = match rhs {
            Some(b) => b.to_vec(),
            None => vec![Rational::zero(); self.rows],
        };
        // column -> rows holding a nonzero entry there
        let mut occupancy: Vec<std::collections::BTreeSet<usize>> =
            vec![Default::default(); self.columns.len()];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                occupancy[j].insert(i);
            }
        }
        let mut used = vec![false; self.rows];
        let mut pivots = Vec::new();
        for col in 0..self.columns.len() {
            let Some(&pr) = occupancy[col].iter().find(|&&r| !used[r]) else {
                continue;
            };
            used[pr] = true;
            let inv = Rational::one() / &rows[pr][&col];
            if !inv.is_one() {
                for v in rows[pr].values_mut() {
                    *v *= &inv;
                }
                rhs[pr] *= &inv;
            }
            let pivot_row = rows[pr].clone();
            let pivot_rhs = rhs[pr].clone();
            let targets: Vec<usize> = occupancy[col].iter().copied().filter(|&r| r != pr).collect();
            for r in targets {
                let factor = rows[r][&col].clone();
                for (&j, v) in &pivot_row {
                    let entry = rows[r].entry(j).or_insert_with(Rational::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[r].remove(&j);
                        occupancy[j].remove(&r);
                    } else {
                        occupancy[j].insert(r);
                    }
                }
                rhs[r] -= &factor * &pivot_rhs;
            }
            pivots.push((pr, col));
        }
        Echelon { pivots, rows, rhs }
    }

    pub fn rank(&self) -> usize {
        self.eliminate(None).pivots.len()
    }

    /// Solve `self · x = b`. Free variables are set to zero. Returns `None`
    /// if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Solution> {
        assert_eq!(b.len(), self.rows);
        let ech = self.eliminate(Some(b));
        let pivot_rows: std::collections::BTreeSet<usize> = ech.pivots.iter().map(|&(r, _)| r).collect();
        let consistent = (0..self.rows)
            .filter(|r| !pivot_rows.contains(r))
            .all(|r| ech.rows[r].is_empty() && ech.rhs[r].is_zero());
        if !consistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.columns.len()];
        for &(r, c) in &ech.pivots {
            x[c] = ech.rhs[r].clone();
        }
        Some(Solution { x, rank: ech.pivots.len() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub rank: usize,
}
