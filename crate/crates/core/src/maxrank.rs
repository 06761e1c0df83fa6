//! Maximum rank of a sign pattern: the size of a maximum matching in the
//! bipartite graph of its nonzero entries.

use alloc::vec::Vec;

use crate::sign::SignMatrix;

/// Rows on the left, columns on the right, an edge per nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroBipartiteGraph {
    rows: usize,
    cols: usize,
    /// Row-major adjacency: `adjacency[i]` lists the columns of row `i`.
    adjacency: Vec<Vec<usize>>,
}

impl NonzeroBipartiteGraph {
    pub fn new(s: &SignMatrix) -> Self {
        let adjacency = (0..s.rows())
            .map(|i| (0..s.cols()).filter(|&j| !s.get(i, j).is_zero()).collect())
            .collect();
        NonzeroBipartiteGraph {
            rows: s.rows(),
            cols: s.cols(),
            adjacency,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, cols)| cols.iter().map(move |&j| (i, j)))
    }

    /// A maximum matching as `(row, column)` pairs, by augmenting paths.
    /// Rows are processed in order and each row scans its columns in order,
    /// so the result is deterministic.
    pub fn maximum_matching(&self) -> Vec<(usize, usize)> {
        let mut owner: Vec<Option<usize>> = alloc::vec![None; self.cols];
        for row in 0..self.rows {
            let mut seen = alloc::vec![false; self.cols];
            self.augment(row, &mut seen, &mut owner);
        }
        let mut pairs: Vec<(usize, usize)> = owner
            .iter()
            .enumerate()
            .filter_map(|(j, o)| o.map(|i| (i, j)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    fn augment(&self, row: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &col in &self.adjacency[row] {
            if seen[col] {
                continue;
            }
            seen[col] = true;
            let free = match owner[col] {
                None => true,
                Some(other) => self.augment(other, seen, owner),
            };
            if free {
                owner[col] = Some(row);
                return true;
            }
        }
        false
    }
}

/// Largest rank of a real matrix with sign pattern `s`.
pub fn maxrank(s: &SignMatrix) -> usize {
    NonzeroBipartiteGraph::new(s).maximum_matching().len()
}
