//! Reduction of a generalized sign pattern (zeros allowed) to a strict one
//! with the same minimum rank, or a certificate that the minimum rank
//! exceeds two.
//!
//! The steps, applied in order:
//!
//! 1. drop all-zero rows and columns;
//! 2. bring a column with zeros to the front and permute/flip rows so it
//!    reads `k` zeros followed by `m - k` pluses;
//! 3. take the first column whose first entry is nonzero; its first `k`
//!    entries must all be nonzero, and those rows are flipped to make them `+`;
//! 4. for a column with at least two zeros at rows `U`, require `U = [k]` or
//!    `U` disjoint from `[k]`, require the rows in `U` to be identical, and
//!    keep only one of them; repeat;
//! 5. split each column with a single zero into the two columns obtained by
//!    replacing the zero with `+` and with `-`.
//!
//! The trace keeps enough bookkeeping to lift a rank-2 witness of the reduced
//! matrix back to the original one.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::chain::{self, ChainFailure, Rank2Decision, Rank2Witness};
use crate::error::Result;
use crate::rational::Rational;
use crate::sign::{Sign, SignMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    DroppedZeroRows(Vec<usize>),
    DroppedZeroColumns(Vec<usize>),
    /// Column (original index) moved to the front; `zeros` rows lead it.
    Normalized {
        column: usize,
        zeros: usize,
        flipped_rows: Vec<usize>,
    },
    /// Rows of the zero prefix flipped to make `column` positive there.
    PrefixFlipped {
        column: usize,
        flipped_rows: Vec<usize>,
    },
    /// Identical rows merged into `kept` because of the zeros of `column`.
    MergedRows {
        column: usize,
        kept: usize,
        removed: Vec<usize>,
    },
    SplitColumn { column: usize, zero_row: usize },
}

/// Which step certified `minrank > 2`, and on what evidence. Row and column
/// indices refer to the original matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFailure {
    /// The chosen column has a zero inside the zero prefix of the
    /// normalized column.
    PrefixHasZero {
        normalized_column: usize,
        column: usize,
        rows: Vec<usize>,
    },
    /// Zero rows of `column` straddle the zero prefix of the normalized
    /// column.
    ZerosStraddlePrefix { column: usize, rows: Vec<usize> },
    /// Zero rows of `column` are not identical.
    ZeroRowsDiffer { column: usize, rows: Vec<usize> },
}

impl ReductionFailure {
    pub fn step(&self) -> usize {
        match self {
            ReductionFailure::PrefixHasZero { .. } => 3,
            _ => 4,
        }
    }
}

/// Where a column of the reduced matrix comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnOrigin {
    pub source: usize,
    /// For split columns, the sign that replaced the zero.
    pub split: Option<Sign>,
}

/// Maps the reduced matrix back onto the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub original_rows: usize,
    pub original_cols: usize,
    pub steps: Vec<TraceStep>,
    /// For each reduced row, the original rows it stands for.
    pub row_groups: Vec<Vec<usize>>,
    /// Per original row: whether it is flipped relative to the reduced row.
    pub row_flipped: Vec<bool>,
    pub column_origins: Vec<ColumnOrigin>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// Strict matrix with the same minimum rank.
    Strict {
        matrix: SignMatrix,
        trace: ReductionTrace,
    },
    /// Everything vanished in step 1: the input is all zero, minimum rank 0.
    AllZero { trace: ReductionTrace },
    /// Certified `minrank > 2`.
    GreaterThanTwo {
        failure: ReductionFailure,
        trace: ReductionTrace,
    },
}

impl ReductionOutcome {
    pub fn trace(&self) -> &ReductionTrace {
        match self {
            ReductionOutcome::Strict { trace, .. }
            | ReductionOutcome::AllZero { trace }
            | ReductionOutcome::GreaterThanTwo { trace, .. } => trace,
        }
    }

    pub fn strict_matrix(&self) -> Option<&SignMatrix> {
        match self {
            ReductionOutcome::Strict { matrix, .. } => Some(matrix),
            _ => None,
        }
    }
}

struct Work {
    rows: Vec<Vec<Sign>>,
    trace: ReductionTrace,
}

impl Work {
    fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn zeros_in(&self, col: usize) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i][col].is_zero())
            .collect()
    }

    fn originals(&self, rows: &[usize]) -> Vec<usize> {
        rows.iter()
            .flat_map(|&r| self.trace.row_groups[r].iter().copied())
            .collect()
    }

    fn flip(&mut self, row: usize) {
        for s in self.rows[row].iter_mut() {
            *s = -*s;
        }
        for &o in &self.trace.row_groups[row] {
            self.trace.row_flipped[o] = !self.trace.row_flipped[o];
        }
    }

    fn has_zero(&self) -> bool {
        self.rows.iter().flatten().any(|s| s.is_zero())
    }
}

/// Runs the reduction. Returns a strict matrix with equal minimum rank, a
/// distinguished all-zero outcome, or a certificate for `minrank > 2`.
pub fn reduce_generalized(s: &SignMatrix) -> ReductionOutcome {
    let (m, n) = (s.rows(), s.cols());
    let mut w = Work {
        rows: Vec::new(),
        trace: ReductionTrace {
            original_rows: m,
            original_cols: n,
            steps: Vec::new(),
            row_groups: Vec::new(),
            row_flipped: alloc::vec![false; m],
            column_origins: Vec::new(),
        },
    };

    // Step 1.
    let zero_rows: Vec<usize> = (0..m).filter(|&i| s.row(i).iter().all(|x| x.is_zero())).collect();
    let zero_cols: Vec<usize> = (0..n)
        .filter(|&j| (0..m).all(|i| s.get(i, j).is_zero()))
        .collect();
    if !zero_rows.is_empty() {
        w.trace.steps.push(TraceStep::DroppedZeroRows(zero_rows.clone()));
    }
    if !zero_cols.is_empty() {
        w.trace.steps.push(TraceStep::DroppedZeroColumns(zero_cols.clone()));
    }
    let keep_cols: Vec<usize> = (0..n).filter(|j| !zero_cols.contains(j)).collect();
    for i in (0..m).filter(|i| !zero_rows.contains(i)) {
        w.rows.push(keep_cols.iter().map(|&j| s.get(i, j)).collect());
        w.trace.row_groups.push(alloc::vec![i]);
    }
    w.trace.column_origins = keep_cols
        .iter()
        .map(|&j| ColumnOrigin {
            source: j,
            split: None,
        })
        .collect();
    if w.rows.is_empty() {
        return ReductionOutcome::AllZero { trace: w.trace };
    }
    if !w.has_zero() {
        return finish(w);
    }

    // Step 2.
    let c = (0..w.cols())
        .find(|&j| w.rows.iter().any(|r| r[j].is_zero()))
        .expect("a zero exists");
    let mut flipped_rows = Vec::new();
    for i in 0..w.rows.len() {
        if w.rows[i][c] == Sign::Minus {
            flipped_rows.extend(w.trace.row_groups[i].iter().copied());
            w.flip(i);
        }
    }
    for row in w.rows.iter_mut() {
        let v = row.remove(c);
        row.insert(0, v);
    }
    let origin = w.trace.column_origins.remove(c);
    w.trace.column_origins.insert(0, origin);
    let mut order: Vec<usize> = (0..w.rows.len()).collect();
    order.sort_by_key(|&i| !w.rows[i][0].is_zero());
    w.rows = order.iter().map(|&i| w.rows[i].clone()).collect();
    w.trace.row_groups = order.iter().map(|&i| w.trace.row_groups[i].clone()).collect();
    let mut k = w.rows.iter().filter(|r| r[0].is_zero()).count();
    let normalized_column = origin.source;
    w.trace.steps.push(TraceStep::Normalized {
        column: normalized_column,
        zeros: k,
        flipped_rows,
    });

    // Step 3. Row 0 is not all zero, so such a column exists.
    let y = (0..w.cols())
        .find(|&j| !w.rows[0][j].is_zero())
        .expect("row 0 has a nonzero entry");
    let prefix_zeros: Vec<usize> = (0..k).filter(|&i| w.rows[i][y].is_zero()).collect();
    if !prefix_zeros.is_empty() {
        let failure = ReductionFailure::PrefixHasZero {
            normalized_column,
            column: w.trace.column_origins[y].source,
            rows: w.originals(&prefix_zeros),
        };
        return ReductionOutcome::GreaterThanTwo {
            failure,
            trace: w.trace,
        };
    }
    let mut flipped_rows = Vec::new();
    for i in 0..k {
        if w.rows[i][y] == Sign::Minus {
            flipped_rows.extend(w.trace.row_groups[i].iter().copied());
            w.flip(i);
        }
    }
    if !flipped_rows.is_empty() {
        w.trace.steps.push(TraceStep::PrefixFlipped {
            column: w.trace.column_origins[y].source,
            flipped_rows,
        });
    }

    // Step 4.
    while let Some(j) = (0..w.cols()).find(|&j| w.zeros_in(j).len() >= 2) {
        let u = w.zeros_in(j);
        let column = w.trace.column_origins[j].source;
        let is_prefix = u.len() == k && u.iter().enumerate().all(|(p, &i)| p == i);
        let avoids_prefix = u.iter().all(|&i| i >= k);
        if !is_prefix && !avoids_prefix {
            let failure = ReductionFailure::ZerosStraddlePrefix {
                column,
                rows: w.originals(&u),
            };
            return ReductionOutcome::GreaterThanTwo {
                failure,
                trace: w.trace,
            };
        }
        if u.iter().any(|&i| w.rows[i] != w.rows[u[0]]) {
            let failure = ReductionFailure::ZeroRowsDiffer {
                column,
                rows: w.originals(&u),
            };
            return ReductionOutcome::GreaterThanTwo {
                failure,
                trace: w.trace,
            };
        }
        let kept = u[0];
        let mut removed = Vec::new();
        for &i in u[1..].iter().rev() {
            removed.extend(w.trace.row_groups[i].iter().copied());
            let group = w.trace.row_groups.remove(i);
            w.trace.row_groups[kept].extend(group);
            w.rows.remove(i);
        }
        w.trace.row_groups[kept].sort_unstable();
        removed.sort_unstable();
        w.trace.steps.push(TraceStep::MergedRows {
            column,
            kept: w.trace.row_groups[kept][0],
            removed,
        });
        if is_prefix {
            k = 1;
        }
    }

    // Step 5.
    let mut j = 0;
    while j < w.cols() {
        let zeros = w.zeros_in(j);
        if zeros.len() == 1 {
            let zero_row = zeros[0];
            let origin = w.trace.column_origins[j];
            for row in w.rows.iter_mut() {
                let v = row[j];
                row.insert(j + 1, v);
            }
            w.rows[zero_row][j] = Sign::Plus;
            w.rows[zero_row][j + 1] = Sign::Minus;
            w.trace.column_origins[j].split = Some(Sign::Plus);
            w.trace.column_origins.insert(
                j + 1,
                ColumnOrigin {
                    source: origin.source,
                    split: Some(Sign::Minus),
                },
            );
            w.trace.steps.push(TraceStep::SplitColumn {
                column: origin.source,
                zero_row: w.trace.row_groups[zero_row][0],
            });
            j += 2;
        } else {
            j += 1;
        }
    }
    finish(w)
}

fn finish(w: Work) -> ReductionOutcome {
    let matrix = SignMatrix::from_rows(&w.rows).expect("reduced matrix is nonempty");
    assert!(matrix.is_strict(), "reduction left a zero behind");
    ReductionOutcome::Strict {
        matrix,
        trace: w.trace,
    }
}

/// Lifts a witness for the reduced strict matrix to the original matrix.
///
/// Merged rows get the coordinates of their representative, flipped rows
/// the negated coordinates, dropped rows zero. A split column `C` is the
/// point on the segment between its `C+` and `C-` realizations where the
/// split coordinate vanishes.
pub fn lift_witness(trace: &ReductionTrace, reduced: &Rank2Witness) -> Rank2Witness {
    let m = trace.original_rows;
    let mut x = alloc::vec![Rational::zero(); m];
    let mut y = alloc::vec![Rational::zero(); m];
    for (r, group) in trace.row_groups.iter().enumerate() {
        for &o in group {
            let (xv, yv) = (reduced.x[r].clone(), reduced.y[r].clone());
            if trace.row_flipped[o] {
                x[o] = -xv;
                y[o] = -yv;
            } else {
                x[o] = xv;
                y[o] = yv;
            }
        }
    }

    let mut combos = alloc::vec![(Rational::zero(), Rational::zero()); trace.original_cols];
    let mut j = 0;
    while j < trace.column_origins.len() {
        let origin = trace.column_origins[j];
        match origin.split {
            None => {
                combos[origin.source] = reduced.column_combos[j].clone();
                j += 1;
            }
            Some(_) => {
                let (ap, bp) = &reduced.column_combos[j];
                let (am, bm) = &reduced.column_combos[j + 1];
                // The split row is where the two reduced columns differ.
                let plus = reduced.column(j);
                let minus = reduced.column(j + 1);
                let r = (0..plus.len())
                    .find(|&r| Sign::of(&plus[r]) != Sign::of(&minus[r]))
                    .expect("split columns differ in one row");
                let (vp, vm) = (&plus[r], &minus[r]);
                // t vp + (1 - t) vm = 0
                let t = -vm / (vp - vm);
                let one_minus_t = Rational::from_integer(1.into()) - &t;
                combos[origin.source] = (&t * ap + &one_minus_t * am, &t * bp + &one_minus_t * bm);
                j += 2;
            }
        }
    }
    Rank2Witness {
        x,
        y,
        column_combos: combos,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minrank2Answer {
    /// `minrank <= 2`; the witness realizes the original matrix.
    Yes {
        witness: Rank2Witness,
        reduction: ReductionOutcome,
    },
    No {
        reduction: ReductionOutcome,
        chain_failure: Option<ChainFailure>,
    },
}

impl Minrank2Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Minrank2Answer::Yes { .. })
    }

    pub fn reduction(&self) -> &ReductionOutcome {
        match self {
            Minrank2Answer::Yes { reduction, .. } | Minrank2Answer::No { reduction, .. } => {
                reduction
            }
        }
    }
}

/// Decides `minrank(S) <= 2` for any sign pattern.
pub fn minrank_le2(s: &SignMatrix) -> Result<Minrank2Answer> {
    let reduction = reduce_generalized(s);
    let answer = match &reduction {
        ReductionOutcome::AllZero { trace } => {
            let zero = || alloc::vec![Rational::zero(); trace.original_rows];
            let witness = Rank2Witness {
                x: zero(),
                y: zero(),
                column_combos: alloc::vec![(Rational::zero(), Rational::zero()); trace.original_cols],
            };
            Minrank2Answer::Yes { witness, reduction }
        }
        ReductionOutcome::GreaterThanTwo { .. } => Minrank2Answer::No {
            reduction,
            chain_failure: None,
        },
        ReductionOutcome::Strict { matrix, trace } => match chain::minrank_le2_strict(matrix)? {
            Rank2Decision::Realizable(reduced) => {
                let witness = lift_witness(trace, &reduced);
                assert!(
                    chain::verify_rank2_witness(s, &witness)?,
                    "lifted witness failed exact verification"
                );
                Minrank2Answer::Yes { witness, reduction }
            }
            Rank2Decision::NotRealizable(reason) => Minrank2Answer::No {
                reduction,
                chain_failure: Some(reason),
            },
        },
    };
    Ok(answer)
}
