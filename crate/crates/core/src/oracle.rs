//! Brute-force and counting oracles.
//!
//! [`minrank2_oracle`] decides `minrank <= 2` by exhausting the combinatorial
//! types of a plane configuration: a realization of rank at most two assigns
//! every nonzero row a direction in the plane (up to sign, so a point of a
//! half-open half-circle) and every column a normal direction. Rows sorted by
//! direction form an ordered partition (ties are blocks), and a column is
//! realizable exactly when its signs are constant on blocks and form a
//! *cut*: one sign before a pivot, the opposite sign after it, and, for
//! generalized patterns, zeros on the block at the pivot. The search runs
//! over every ordered partition and every admissible row reorientation, and
//! shares no code with the chain-based decision procedure.

mod heuristic;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sign::{Sign, SignMatrix, SignVector};

pub use heuristic::heuristic_rank_upper_bound;

pub const DEFAULT_ROW_LIMIT: usize = 7;

/// Disjoint nonempty blocks covering `{0, .., m - 1}`, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let m: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = alloc::vec![false; m];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Empty);
            }
            for &i in block {
                if i >= m || seen[i] {
                    return Err(Error::IndexOutOfRange { index: i, bound: m });
                }
                seen[i] = true;
            }
        }
        Ok(OrderedPartition { blocks })
    }

    /// From a rank vector whose values are exactly `0..p` for some `p`.
    fn from_ranks(ranks: &[usize]) -> Self {
        let p = ranks.iter().max().map_or(0, |r| r + 1);
        let mut blocks = alloc::vec![Vec::new(); p];
        for (i, &r) in ranks.iter().enumerate() {
            blocks[r].push(i);
        }
        OrderedPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block index of every element.
    pub fn ranks(&self) -> Vec<usize> {
        let m = self.blocks.iter().map(Vec::len).sum();
        let mut ranks = alloc::vec![0; m];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                ranks[i] = b;
            }
        }
        ranks
    }
}

/// Every ordered partition of `{0, .., m - 1}` as a rank vector (`ranks[i]`
/// is the block of `i`). There are Fubini-many: 1, 3, 13, 75, 541, 4683,
/// 47293 for `m = 1..=7`.
pub fn ordered_partition_ranks(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut ranks = alloc::vec![0usize; m];
    loop {
        let mut used = alloc::vec![false; m];
        for &r in &ranks {
            used[r] = true;
        }
        let p = used.iter().take_while(|&&u| u).count();
        if used[p..].iter().all(|&u| !u) {
            out.push(ranks.clone());
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            ranks[pos] += 1;
            if ranks[pos] < m {
                break;
            }
            ranks[pos] = 0;
            pos += 1;
        }
    }
}

pub fn ordered_partitions(m: usize) -> Vec<OrderedPartition> {
    ordered_partition_ranks(m)
        .iter()
        .map(|r| OrderedPartition::from_ranks(r))
        .collect()
}

/// Whether `column` (one sign per row) is a cut pattern for the row order
/// given by `ranks` with `blocks` blocks. `flip[i]` negates row `i`.
fn is_cut(column: &[Sign], flip: &[bool], ranks: &[usize], blocks: usize, allow_zero: bool) -> bool {
    let mut block_sign: [Option<Sign>; 16] = [None; 16];
    let mut heap;
    let signs: &mut [Option<Sign>] = if blocks <= 16 {
        &mut block_sign[..blocks]
    } else {
        heap = alloc::vec![None; blocks];
        &mut heap[..]
    };
    for (i, &s) in column.iter().enumerate() {
        let s = if flip[i] { -s } else { s };
        let b = ranks[i];
        match signs[b] {
            None => signs[b] = Some(s),
            Some(t) if t == s => {}
            Some(_) => return false,
        }
    }
    let mut zero_at = None;
    for (b, s) in signs.iter().enumerate() {
        if *s == Some(Sign::Zero) {
            if zero_at.is_some() || !allow_zero {
                return false;
            }
            zero_at = Some(b);
        }
    }
    match zero_at {
        Some(z) => {
            let before = &signs[..z];
            let after = &signs[z + 1..];
            let constant = |side: &[Option<Sign>]| side.windows(2).all(|w| w[0] == w[1]);
            if !constant(before) || !constant(after) {
                return false;
            }
            match (before.first(), after.first()) {
                (Some(a), Some(b)) => a.map(|a| -a) == *b,
                _ => true,
            }
        }
        None => signs.windows(2).filter(|w| w[0] != w[1]).count() <= 1,
    }
}

/// Exhaustive `minrank <= 2` decider with a configurable row limit and a
/// cache of ordered partitions per row count.
#[derive(Debug, Clone)]
pub struct Minrank2Oracle {
    row_limit: usize,
    partitions: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl Default for Minrank2Oracle {
    fn default() -> Self {
        Self::new(DEFAULT_ROW_LIMIT)
    }
}

impl Minrank2Oracle {
    pub fn new(row_limit: usize) -> Self {
        Minrank2Oracle {
            row_limit,
            partitions: BTreeMap::new(),
        }
    }

    pub fn row_limit(&self) -> usize {
        self.row_limit
    }

    /// True iff some subspace of dimension at most two realizes `s`.
    ///
    /// With `allow_zero = false` a realization may not place exact zeros, so
    /// any zero entry makes the answer false.
    pub fn decide(&mut self, s: &SignMatrix, allow_zero: bool) -> Result<bool> {
        if s.rows() > self.row_limit {
            return Err(Error::OracleLimit {
                rows: s.rows(),
                limit: self.row_limit,
            });
        }
        if !allow_zero && !s.is_strict() {
            return Ok(false);
        }
        // All-zero rows take the zero coordinate, all-zero columns the zero
        // combination.
        let rows: Vec<usize> = (0..s.rows())
            .filter(|&i| s.row(i).iter().any(|x| !x.is_zero()))
            .collect();
        let cols: Vec<usize> = (0..s.cols())
            .filter(|&j| (0..s.rows()).any(|i| !s.get(i, j).is_zero()))
            .collect();
        if rows.is_empty() {
            return Ok(true);
        }
        let columns: Vec<Vec<Sign>> = cols
            .iter()
            .map(|&j| rows.iter().map(|&i| s.get(i, j)).collect())
            .collect();
        let m = rows.len();

        // A zero-free column puts every row direction in one open half-plane,
        // so flipping rows to make it positive is the only reorientation
        // needed. Otherwise try every reorientation up to global sign.
        let flips: Vec<Vec<bool>> = match columns.iter().find(|c| c.iter().all(|x| !x.is_zero())) {
            Some(c) => alloc::vec![c.iter().map(|&x| x == Sign::Minus).collect()],
            None => (0..1usize << (m - 1))
                .map(|mask| (0..m).map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1).collect())
                .collect(),
        };

        let table = self
            .partitions
            .entry(m)
            .or_insert_with(|| ordered_partition_ranks(m));
        for flip in &flips {
            for ranks in table.iter() {
                let blocks = ranks.iter().max().map_or(0, |r| r + 1);
                if columns
                    .iter()
                    .all(|c| is_cut(c, flip, ranks, blocks, allow_zero))
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// [`Minrank2Oracle::decide`] with the default row limit.
pub fn minrank2_oracle(s: &SignMatrix, allow_zero: bool) -> Result<bool> {
    Minrank2Oracle::default().decide(s, allow_zero)
}

/// Zero-free sign patterns of vectors in `span{(1, .., 1), y}`.
///
/// Sweeping the threshold of `alpha + beta * y_i` across the distinct values
/// of `y` gives `2p` patterns for `p` distinct values.
pub fn subspace_patterns(y: &[Rational]) -> Result<BTreeSet<SignVector>> {
    if y.is_empty() {
        return Err(Error::Empty);
    }
    let distinct: BTreeSet<&Rational> = y.iter().collect();
    let distinct: Vec<&Rational> = distinct.into_iter().collect();
    let rank: Vec<usize> = y
        .iter()
        .map(|v| distinct.binary_search(&v).expect("value present"))
        .collect();
    let mut patterns = BTreeSet::new();
    for cut in 0..=distinct.len() {
        let up = SignVector::new(
            rank.iter()
                .map(|&r| if r >= cut { Sign::Plus } else { Sign::Minus })
                .collect(),
        )?;
        patterns.insert(up.complement());
        patterns.insert(up);
    }
    Ok(patterns)
}

/// `2 * [C(m-1, 0) + C(m-1, 1) + .. + C(m-1, d-1)]`, the bound on the number
/// of zero-free sign patterns in a `d`-dimensional subspace of `R^m`.
pub fn sauer_shelah_bound(m: usize, d: usize) -> Result<u128> {
    if d < 1 || d > m {
        return Err(Error::InvalidBound { m, d });
    }
    let n = (m - 1) as u128;
    let mut binom: u128 = 1;
    let mut sum: u128 = 0;
    for i in 0..d as u128 {
        sum = sum.checked_add(binom).ok_or(Error::Overflow)?;
        if i < n {
            binom = binom.checked_mul(n - i).ok_or(Error::Overflow)? / (i + 1);
        } else {
            binom = 0;
        }
    }
    sum.checked_mul(2).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn sm(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn fubini_numbers() {
        let counts: Vec<usize> = (1..=6).map(|m| ordered_partition_ranks(m).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75, 541, 4683]);
    }

    #[test]
    fn partitions_are_valid() {
        for p in ordered_partitions(4) {
            let again = OrderedPartition::new(p.blocks().to_vec()).unwrap();
            assert_eq!(OrderedPartition::from_ranks(&again.ranks()), p);
        }
        assert!(OrderedPartition::new(vec![vec![0], vec![]]).is_err());
        assert!(OrderedPartition::new(vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn cut_patterns() {
        let f = [false; 4];
        let ranks = [0, 1, 2, 3];
        let cut = |s: &str, z| {
            let v: Vec<Sign> = s.chars().map(|c| Sign::from_char(c).unwrap()).collect();
            is_cut(&v, &f, &ranks, 4, z)
        };
        assert!(cut("++++", false));
        assert!(cut("--++", false));
        assert!(cut("++--", false));
        assert!(!cut("+-+-", false));
        assert!(cut("-0++", true));
        assert!(!cut("-0++", false));
        assert!(!cut("+0++", true));
        assert!(cut("0+++", true));
        assert!(cut("+++0", true));
        assert!(!cut("00++", true));
    }

    #[test]
    fn oracle_examples() {
        assert!(minrank2_oracle(&SignMatrix::filled(3, 3, Sign::Plus).unwrap(), false).unwrap());
        // Minus-sets ∅, {1,2}, {1,2,3}, {3} over three rows.
        assert!(minrank2_oracle(&sm("+--+\n+--+\n+-+-"), false).unwrap());
        // An all-+ column and singleton minus-sets {1},{2},{3},{4}.
        assert!(!minrank2_oracle(&sm("+-+++\n++-++\n+++-+\n++++-"), false).unwrap());
        assert!(minrank2_oracle(&sm("+0\n0+"), true).unwrap());
        assert!(!minrank2_oracle(&sm("+0\n0+"), false).unwrap());
        assert!(!minrank2_oracle(&sm("+00\n0+0\n00+"), true).unwrap());
        assert!(minrank2_oracle(&sm("000\n000"), true).unwrap());
    }

    #[test]
    fn oracle_respects_limit() {
        let s = SignMatrix::filled(8, 2, Sign::Plus).unwrap();
        assert_eq!(
            minrank2_oracle(&s, false),
            Err(Error::OracleLimit { rows: 8, limit: 7 })
        );
        assert!(Minrank2Oracle::new(8).decide(&s, false).unwrap());
    }

    #[test]
    fn all_eight_patterns_of_three_rows_need_rank_three() {
        let s = SignMatrix::from_fn(3, 8, |i, j| if (j >> i) & 1 == 1 { Sign::Minus } else { Sign::Plus })
            .unwrap();
        assert!(!minrank2_oracle(&s, false).unwrap());
        // Any six of them, omitting a complementary pair, fit in a plane.
        let six = SignMatrix::from_fn(3, 6, |i, j| {
            let j = [1, 2, 3, 4, 5, 6][j];
            if (j >> i) & 1 == 1 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .unwrap();
        assert!(minrank2_oracle(&six, false).unwrap());
    }

    #[test]
    fn subspace_pattern_counts() {
        let y = [int(1), int(2), int(3)];
        assert_eq!(subspace_patterns(&y).unwrap().len(), 6);
        let y = [int(5), int(5), int(5)];
        let p = subspace_patterns(&y).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains(&"+++".parse().unwrap()) && p.contains(&"---".parse().unwrap()));
        let y = [int(1), int(1), int(2), int(3)];
        assert_eq!(subspace_patterns(&y).unwrap().len(), 6);
    }

    #[test]
    fn sauer_shelah_values() {
        for m in 1..10 {
            assert_eq!(sauer_shelah_bound(m, 1).unwrap(), 2);
        }
        for m in 2..10 {
            assert_eq!(sauer_shelah_bound(m, 2).unwrap(), 2 * m as u128);
        }
        assert_eq!(sauer_shelah_bound(5, 3).unwrap(), 22);
        // d = m gives all 2^m patterns.
        assert_eq!(sauer_shelah_bound(6, 6).unwrap(), 64);
        assert!(sauer_shelah_bound(3, 4).is_err());
        assert!(sauer_shelah_bound(3, 0).is_err());
    }
}
