//! Covector sets of arrangements as sign data: reorientation, isomorphism up
//! to reorientation, recovery of vertex and edge covectors from the regions,
//! and the sign matrices whose minimum rank encodes stretchability.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{enumerate_covectors, Arrangement, CovectorSet};
use crate::rational::{Rational, RationalMatrix};
pub use crate::rational::rational_rank;
use crate::sign::{sign_of_rational_matrix, Sign, SignMatrix, SignVector};

pub type Covectors = BTreeSet<SignVector>;

/// Negates coordinates `a` of every vector.
pub fn reorient(cov: &Covectors, a: &[usize]) -> Result<Covectors> {
    if let Some(n) = cov.iter().next().map(SignVector::len) {
        if let Some(&bad) = a.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, bound: n });
        }
    }
    Ok(cov.iter().map(|v| v.reoriented(a)).collect())
}

fn profile(cov: &Covectors) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for v in cov {
        *out.entry(v.zero_positions()).or_insert(0) += 1;
    }
    out
}

/// Finds `A` with `reorient(l1, A) = l2`. Among all such sets, returns the
/// lexicographically least one (as a sorted index list).
///
/// Coordinates where every vector of `l1` vanishes are never put in `A`.
pub fn find_reorientation(l1: &Covectors, l2: &Covectors) -> Option<Vec<usize>> {
    if l1.len() != l2.len() || profile(l1) != profile(l2) {
        return None;
    }
    let Some(n) = l1.iter().next().map(SignVector::len) else {
        return Some(Vec::new());
    };
    if l2.iter().any(|v| v.len() != n) {
        return None;
    }

    // Vectors of l1 that cover new coordinates, largest support first.
    let mut by_support: Vec<&SignVector> = l1.iter().collect();
    by_support.sort_by_key(|v| v.zero_count());
    let mut covered = alloc::vec![false; n];
    let mut pivots: Vec<&SignVector> = Vec::new();
    for v in by_support {
        if v.iter().enumerate().any(|(i, s)| !s.is_zero() && !covered[i]) {
            for (i, s) in v.iter().enumerate() {
                if !s.is_zero() {
                    covered[i] = true;
                }
            }
            pivots.push(v);
        }
    }

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut assignment: Vec<Option<bool>> = alloc::vec![None; n];
    search(l1, l2, &pivots, 0, &mut assignment, &mut found);
    found.into_iter().min()
}

fn search(
    l1: &Covectors,
    l2: &Covectors,
    pivots: &[&SignVector],
    k: usize,
    assignment: &mut Vec<Option<bool>>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some(v) = pivots.get(k) else {
        let a: Vec<usize> = (0..assignment.len())
            .filter(|&i| assignment[i] == Some(true))
            .collect();
        if reorient(l1, &a).ok().as_ref() == Some(l2) {
            found.push(a);
        }
        return;
    };
    let zeros = v.zero_positions();
    for w in l2.iter().filter(|w| w.zero_positions() == zeros) {
        let saved = assignment.clone();
        let consistent = v.iter().zip(w.iter()).enumerate().all(|(i, (x, y))| {
            if x.is_zero() {
                return true;
            }
            let flip = x != y;
            match assignment[i] {
                Some(f) => f == flip,
                None => {
                    assignment[i] = Some(flip);
                    true
                }
            }
        });
        if consistent {
            search(l1, l2, pivots, k + 1, assignment, found);
        }
        *assignment = saved;
    }
}

/// Vertex and edge covectors recovered from the region covectors of a
/// uniform arrangement of `n` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub c0: Covectors,
    pub c1: Covectors,
}

/// Recovers `(C0, C1)` from `C2`.
///
/// A vector with zeros exactly at `i < j` is a vertex when all four ways of
/// filling `i, j` with signs are regions. Edges are the vectors obtained from
/// a vertex by filling one of its two zeros, together with the vectors sitting
/// between two regions that differ in a single coordinate.
pub fn reconstruct_from_c2(c2: &Covectors, n: usize) -> Result<Reconstruction> {
    for v in c2 {
        if v.len() != n {
            return Err(Error::LengthMismatch(n, v.len()));
        }
        if !v.is_full_support() {
            return Err(Error::NotStrict);
        }
    }
    let mut c0 = Covectors::new();
    for v in c2 {
        for i in 0..n {
            for j in i + 1..n {
                let corner = v.with(i, Sign::Plus).with(j, Sign::Plus);
                let all_four = [Sign::Plus, Sign::Minus].iter().all(|&si| {
                    [Sign::Plus, Sign::Minus]
                        .iter()
                        .all(|&sj| c2.contains(&corner.with(i, si).with(j, sj)))
                });
                if all_four {
                    c0.insert(corner.with(i, Sign::Zero).with(j, Sign::Zero));
                }
            }
        }
    }
    let mut c1 = fill_one_zero(&c0);
    c1.extend(c1_by_adjacency(c2));
    Ok(Reconstruction { c0, c1 })
}

/// For each vector with zeros, the vectors obtained by replacing exactly one
/// zero with `+` or `-`, keeping only those left with a single zero.
pub fn fill_one_zero(c0: &Covectors) -> Covectors {
    let mut out = Covectors::new();
    for v in c0 {
        let zeros = v.zero_positions();
        if zeros.len() != 2 {
            continue;
        }
        for &i in &zeros {
            for s in [Sign::Plus, Sign::Minus] {
                out.insert(v.with(i, s));
            }
        }
    }
    out
}

/// Vectors with a single zero at `i` whose two completions at `i` are both
/// in `c2`.
pub fn c1_by_adjacency(c2: &Covectors) -> Covectors {
    let mut out = Covectors::new();
    for v in c2 {
        for i in 0..v.len() {
            if v[i] == Sign::Plus && c2.contains(&v.with(i, Sign::Minus)) {
                out.insert(v.with(i, Sign::Zero));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrder {
    /// Iteration order of the input.
    Given,
    /// Lexicographic with `- < 0 < +`.
    Lexicographic,
}

/// The matrix whose rows are the given covectors.
pub fn mat_of<'a>(
    cov: impl IntoIterator<Item = &'a SignVector>,
    order: RowOrder,
) -> Result<SignMatrix> {
    let mut rows: Vec<&SignVector> = cov.into_iter().collect();
    if order == RowOrder::Lexicographic {
        rows.sort();
    }
    let first = rows.first().ok_or(Error::Empty)?;
    let n = first.len();
    let mut entries = Vec::with_capacity(rows.len() * n);
    for (row, v) in rows.iter().enumerate() {
        if v.len() != n {
            return Err(Error::RaggedRow {
                row,
                expected: n,
                found: v.len(),
            });
        }
        entries.extend(v.iter().copied());
    }
    SignMatrix::from_vec(rows.len(), n, entries)
}

/// `A = P L` with the rows of `P` affine points `(x, y, 1)` and the columns
/// of `L` linear functionals `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLineRealization {
    p: RationalMatrix,
    l: RationalMatrix,
}

impl PointLineRealization {
    /// Checks that `p` is `m x 3` with a last column of ones and that `l` is
    /// `3 x n` without a zero column.
    pub fn new(p: RationalMatrix, l: RationalMatrix) -> Result<Self> {
        if p.cols() != 3 {
            return Err(Error::DimensionMismatch {
                expected: (p.rows(), 3),
                found: (p.rows(), p.cols()),
            });
        }
        if l.rows() != 3 {
            return Err(Error::DimensionMismatch {
                expected: (3, l.cols()),
                found: (l.rows(), l.cols()),
            });
        }
        if (0..p.rows()).any(|i| !p.get(i, 2).is_one()) {
            return Err(Error::InvalidRealization("points need third coordinate 1"));
        }
        if (0..l.cols()).any(|j| (0..3).all(|k| l.get(k, j).is_zero())) {
            return Err(Error::InvalidRealization("zero column in L"));
        }
        Ok(PointLineRealization { p, l })
    }

    pub fn from_points_and_lines(
        points: &[(Rational, Rational)],
        lines: &[(Rational, Rational, Rational)],
    ) -> Result<Self> {
        let p = RationalMatrix::from_rows(
            points
                .iter()
                .map(|(x, y)| alloc::vec![x.clone(), y.clone(), Rational::one()])
                .collect(),
        )?;
        let l = RationalMatrix::from_fn(3, lines.len(), |k, j| {
            let (a, b, c) = &lines[j];
            [a, b, c][k].clone()
        })?;
        Self::new(p, l)
    }

    pub fn p(&self) -> &RationalMatrix {
        &self.p
    }

    pub fn l(&self) -> &RationalMatrix {
        &self.l
    }

    pub fn product(&self) -> RationalMatrix {
        self.p.mul(&self.l).expect("3 = 3")
    }
}

/// True iff `sign(P L) = s` exactly and `rank(P L) <= 3`.
pub fn verify_rank3_witness(s: &SignMatrix, r: &PointLineRealization) -> Result<bool> {
    let found = (r.p.rows(), r.l.cols());
    if found != (s.rows(), s.cols()) {
        return Err(Error::DimensionMismatch {
            expected: (s.rows(), s.cols()),
            found,
        });
    }
    let a = r.product();
    Ok(sign_of_rational_matrix(&a) == *s && rational_rank(&a) <= 3)
}

/// A sign matrix together with a realization built from the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementMatrix {
    pub matrix: SignMatrix,
    pub realization: PointLineRealization,
}

fn realization_for(
    arr: &Arrangement,
    cov: &CovectorSet,
    rows: &[&SignVector],
    extra_column: bool,
) -> Result<PointLineRealization> {
    let points: Vec<(Rational, Rational)> = rows
        .iter()
        .map(|v| {
            let p = &cov.samples[*v];
            (p.x.clone(), p.y.clone())
        })
        .collect();
    let mut lines: Vec<(Rational, Rational, Rational)> = (0..arr.len())
        .map(|i| {
            let l = arr.oriented_line(i);
            (l.a, l.b, l.c)
        })
        .collect();
    if extra_column {
        lines.push((Rational::zero(), Rational::zero(), Rational::one()));
    }
    PointLineRealization::from_points_and_lines(&points, &lines)
}

/// Rows: the distinct covectors of all cells of `arr`, lexicographically
/// ordered; columns: the lines, then one all-`+` column.
///
/// The all-zero covector appears only when some point lies on every line.
/// A row `(0, ..., 0, +)` without such a point would force rank above three.
pub fn cell_matrix(arr: &Arrangement) -> Result<ArrangementMatrix> {
    let cov = enumerate_covectors(arr);
    let cells = cov.cells();
    let rows: Vec<&SignVector> = cells.iter().collect();
    let n = arr.len();
    let matrix = SignMatrix::from_fn(rows.len(), n + 1, |i, j| {
        if j == n {
            Sign::Plus
        } else {
            rows[i][j]
        }
    })?;
    let realization = realization_for(arr, &cov, &rows, true)?;
    Ok(ArrangementMatrix {
        matrix,
        realization,
    })
}

/// Rows: the region covectors of a uniform arrangement, lexicographically
/// ordered.
pub fn region_matrix(arr: &Arrangement) -> Result<ArrangementMatrix> {
    if !arr.is_uniform() {
        return Err(Error::NotUniform);
    }
    let cov = enumerate_covectors(arr);
    let rows: Vec<&SignVector> = cov.c2.iter().collect();
    let matrix = mat_of(rows.iter().copied(), RowOrder::Given)?;
    let realization = realization_for(arr, &cov, &rows, false)?;
    Ok(ArrangementMatrix {
        matrix,
        realization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Line;
    use crate::rational::int;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> Covectors {
        items.iter().map(|s| sv(s)).collect()
    }

    fn crossing_pair() -> Arrangement {
        Arrangement::from_lines(alloc::vec![
            Line::new(int(1), int(0), int(0)),
            Line::new(int(0), int(1), int(0)),
        ])
        .unwrap()
    }

    fn generic_three() -> Arrangement {
        Arrangement::from_lines(alloc::vec![
            Line::new(int(1), int(0), int(0)),
            Line::new(int(0), int(1), int(0)),
            Line::new(int(1), int(1), int(-1)),
        ])
        .unwrap()
    }

    #[test]
    fn reorient_examples() {
        let l = set(&["+-", "0+"]);
        assert_eq!(reorient(&l, &[1]).unwrap(), set(&["++", "0-"]));
        assert_eq!(reorient(&l, &[]).unwrap(), l);
        let twice = reorient(&reorient(&l, &[0, 1]).unwrap(), &[0, 1]).unwrap();
        assert_eq!(twice, l);
        assert!(reorient(&l, &[2]).is_err());
    }

    #[test]
    fn find_reorientation_examples() {
        let c2 = enumerate_covectors(&generic_three()).c2;
        assert_eq!(find_reorientation(&c2, &c2), Some(Vec::new()));
        let target = reorient(&c2, &[0, 2]).unwrap();
        let a = find_reorientation(&c2, &target).unwrap();
        assert_eq!(reorient(&c2, &a).unwrap(), target);
        assert_eq!(find_reorientation(&c2, &set(&["+++"])), None);
    }

    #[test]
    fn find_reorientation_returns_least() {
        // Symmetric under flipping everything: both {} and {0, 1} work.
        let l = set(&["++", "--", "00"]);
        assert_eq!(find_reorientation(&l, &l), Some(Vec::new()));
        let l = set(&["+-", "-+"]);
        assert_eq!(find_reorientation(&l, &set(&["++", "--"])), Some(alloc::vec![0]));
    }

    #[test]
    fn find_reorientation_without_full_support() {
        let l = set(&["+0", "0-", "00"]);
        let target = set(&["-0", "0-", "00"]);
        assert_eq!(find_reorientation(&l, &target), Some(alloc::vec![0]));
    }

    #[test]
    fn non_isomorphic_four_line_arrangements() {
        // Four lines, one inner triangle; against four lines through a
        // common region arrangement with different adjacency.
        let a = Arrangement::from_lines(alloc::vec![
            Line::new(int(1), int(0), int(0)),
            Line::new(int(0), int(1), int(0)),
            Line::new(int(1), int(1), int(-1)),
            Line::new(int(1), int(-1), int(-3)),
        ])
        .unwrap();
        let b = Arrangement::from_lines(alloc::vec![
            Line::new(int(1), int(0), int(0)),
            Line::new(int(1), int(1), int(-1)),
            Line::new(int(0), int(1), int(0)),
            Line::new(int(1), int(-1), int(-3)),
        ])
        .unwrap();
        let (ca, cb) = (enumerate_covectors(&a).c2, enumerate_covectors(&b).c2);
        // Exhaustive check over all 16 subsets.
        let exhaustive = (0u32..16).any(|mask| {
            let sub: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            reorient(&ca, &sub).unwrap() == cb
        });
        assert_eq!(find_reorientation(&ca, &cb).is_some(), exhaustive);
    }

    #[test]
    fn vertex_from_four_regions() {
        let c2 = set(&["+++-++", "++--++", "+---++", "+-+-++"]);
        let r = reconstruct_from_c2(&c2, 6).unwrap();
        assert!(r.c0.contains(&sv("+00-++")));
        assert_eq!(r.c0.len(), 1);
    }

    #[test]
    fn crossing_pair_reconstruction() {
        let c2 = set(&["++", "+-", "-+", "--"]);
        let r = reconstruct_from_c2(&c2, 2).unwrap();
        assert_eq!(r.c0, set(&["00"]));
        assert_eq!(r.c1, set(&["0+", "0-", "+0", "-0"]));
        let cov = enumerate_covectors(&crossing_pair());
        assert_eq!((cov.c0, cov.c1), (r.c0, r.c1));
    }

    #[test]
    fn single_line_reconstruction() {
        let r = reconstruct_from_c2(&set(&["+", "-"]), 1).unwrap();
        assert!(r.c0.is_empty());
        assert_eq!(r.c1, set(&["0"]));
    }

    #[test]
    fn reconstruction_rejects_bad_input() {
        assert!(reconstruct_from_c2(&set(&["+0"]), 2).is_err());
        assert!(reconstruct_from_c2(&set(&["++"]), 3).is_err());
    }

    #[test]
    fn mat_of_examples() {
        let m = mat_of(&set(&["+-"]), RowOrder::Lexicographic).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        let c2 = set(&["++", "+-", "-+", "--"]);
        let a = mat_of(&c2, RowOrder::Lexicographic).unwrap();
        assert_eq!(a.to_text(), "--\n-+\n+-\n++\n");
        assert_eq!(a, mat_of(&c2, RowOrder::Lexicographic).unwrap());
        let given = [sv("++"), sv("--")];
        assert_eq!(mat_of(&given, RowOrder::Given).unwrap().to_text(), "++\n--\n");
        assert!(mat_of(&Covectors::new(), RowOrder::Given).is_err());
    }

    #[test]
    fn reorient_commutes_with_mat_of() {
        let c2 = enumerate_covectors(&generic_three()).c2;
        let flipped = reorient(&c2, &[1]).unwrap();
        let a = mat_of(&flipped, RowOrder::Given).unwrap();
        let rows: Vec<SignVector> = c2.iter().map(|v| v.reoriented(&[1])).collect();
        let b = mat_of(&rows, RowOrder::Lexicographic).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cell_matrices() {
        let one = Arrangement::from_lines(alloc::vec![Line::new(int(1), int(0), int(0))]).unwrap();
        let m = cell_matrix(&one).unwrap();
        assert_eq!(m.matrix.to_text(), "-+\n0+\n++\n");
        assert!(verify_rank3_witness(&m.matrix, &m.realization).unwrap());

        let m = cell_matrix(&crossing_pair()).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (9, 3));
        assert!(verify_rank3_witness(&m.matrix, &m.realization).unwrap());

        let m = cell_matrix(&generic_three()).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (3 + 9 + 7, 4));
        assert!(verify_rank3_witness(&m.matrix, &m.realization).unwrap());
    }

    #[test]
    fn zero_row_is_not_rank_three() {
        // With the extra row (0, 0, 0, +) the witness from the arrangement
        // cannot work: the point would lie on all three lines.
        let m = cell_matrix(&generic_three()).unwrap().matrix;
        let mut rows = m.row_vectors();
        rows.push(alloc::vec![Sign::Zero, Sign::Zero, Sign::Zero, Sign::Plus]);
        let with_zero = SignMatrix::from_rows(&rows).unwrap();
        // The first three columns restricted to the regions already need
        // rank three, so any rank-3 matrix maps the zero row to zero.
        let regions = region_matrix(&generic_three()).unwrap().matrix;
        assert_eq!(regions.rows(), 7);
        assert!(!crate::oracle::minrank2_oracle(&regions, false).unwrap());
        assert_eq!(with_zero.rows(), 20);
    }

    #[test]
    fn region_matrices() {
        let m = region_matrix(&crossing_pair()).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (4, 2));
        assert!(m.matrix.is_strict());
        assert!(verify_rank3_witness(&m.matrix, &m.realization).unwrap());

        let m = region_matrix(&generic_three()).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (7, 3));
        assert!(verify_rank3_witness(&m.matrix, &m.realization).unwrap());

        let concurrent = Arrangement::from_lines(alloc::vec![
            Line::new(int(1), int(0), int(0)),
            Line::new(int(0), int(1), int(0)),
            Line::new(int(1), int(1), int(0)),
        ])
        .unwrap();
        assert_eq!(region_matrix(&concurrent), Err(Error::NotUniform));
    }

    #[test]
    fn verify_rejects() {
        let m = region_matrix(&generic_three()).unwrap();
        let mut rows = m.matrix.row_vectors();
        rows[0][0] = -rows[0][0];
        let flipped = SignMatrix::from_rows(&rows).unwrap();
        assert!(!verify_rank3_witness(&flipped, &m.realization).unwrap());

        // P = [(0,0,1),(1,0,1)], L = [(1,0,1),(0,1,-1)]: P L = [[1,-1],[2,-1]].
        let r = PointLineRealization::from_points_and_lines(
            &[(int(0), int(0)), (int(1), int(0))],
            &[(int(1), int(0), int(1)), (int(0), int(1), int(-1))],
        )
        .unwrap();
        let s: SignMatrix = "+-\n++".parse().unwrap();
        assert!(!verify_rank3_witness(&s, &r).unwrap());
        let s: SignMatrix = "+-\n+-".parse().unwrap();
        assert!(verify_rank3_witness(&s, &r).unwrap());
        let s: SignMatrix = "+-".parse().unwrap();
        assert!(verify_rank3_witness(&s, &r).is_err());
    }

    #[test]
    fn realization_invariants() {
        let bad_p = RationalMatrix::from_rows(alloc::vec![alloc::vec![int(0), int(0), int(2)]]).unwrap();
        let l = RationalMatrix::identity(3);
        assert!(PointLineRealization::new(bad_p, l.clone()).is_err());
        let p = RationalMatrix::from_rows(alloc::vec![alloc::vec![int(0), int(0), int(1)]]).unwrap();
        assert!(PointLineRealization::new(p.clone(), l).is_ok());
        assert!(PointLineRealization::new(p, RationalMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rational_rank(&RationalMatrix::zeros(2, 3)), 0);
        assert_eq!(rational_rank(&RationalMatrix::identity(4)), 4);
        let a = RationalMatrix::from_rows(alloc::vec![
            alloc::vec![int(1), int(2)],
            alloc::vec![int(2), int(4)],
        ])
        .unwrap();
        assert_eq!(rational_rank(&a), 1);
    }
}
