//! Deciding `minrank <= 2` for strict sign patterns through the 2-chain
//! property of the family of column minus-sets.
//!
//! After flipping rows so the first column is all `+` and closing the columns
//! under complement, a strict matrix has minimum rank at most two exactly when
//! its minus-sets split into a strictly increasing chain from the empty set
//! to the full row set together with the complements of that chain. A chain
//! yields an explicit realizing plane `span{X, Y}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sign::{Sign, SignMatrix, SignVector};

/// A subset of row indices (0-based).
pub type RowSet = BTreeSet<usize>;

/// Positions carrying `-`.
pub fn t_minus(v: &SignVector) -> RowSet {
    v.iter()
        .enumerate()
        .filter(|(_, &s)| s == Sign::Minus)
        .map(|(i, _)| i)
        .collect()
}

/// A deduplicated family of subsets of `{0, .., ground_size - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground_size: usize,
    members: BTreeSet<RowSet>,
}

impl SetSystem {
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = RowSet>) -> Result<Self> {
        let members: BTreeSet<RowSet> = members.into_iter().collect();
        for set in &members {
            if let Some(&i) = set.iter().find(|&&i| i >= ground_size) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: ground_size,
                });
            }
        }
        Ok(SetSystem {
            ground_size,
            members,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &BTreeSet<RowSet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &RowSet) -> bool {
        self.members.contains(set)
    }

    pub fn ground_set(&self) -> RowSet {
        (0..self.ground_size).collect()
    }

    pub fn complement(&self, set: &RowSet) -> RowSet {
        (0..self.ground_size).filter(|i| !set.contains(i)).collect()
    }

    pub fn is_complement_closed(&self) -> bool {
        self.members
            .iter()
            .all(|s| self.members.contains(&self.complement(s)))
    }
}

/// `{ t_minus(c) : c a column of S }` for a strict `S`.
pub fn build_set_system(s: &SignMatrix) -> Result<SetSystem> {
    if !s.is_strict() {
        return Err(Error::NotStrict);
    }
    SetSystem::new(s.rows(), s.columns().iter().map(t_minus))
}

/// The increasing half `A_1 = {} ⊊ A_2 ⊊ .. ⊊ A_{k+1} = [m]` of a 2-chain
/// decomposition. The other half is the complements of these sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    chain: Vec<RowSet>,
}

impl ChainWitness {
    pub fn chain(&self) -> &[RowSet] {
        &self.chain
    }

    /// Position of `set` in the chain.
    pub fn position(&self, set: &RowSet) -> Option<usize> {
        self.chain.iter().position(|a| a == set)
    }
}

/// Why a family fails the 2-chain property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainFailure {
    MissingEmptySet,
    MissingGroundSet,
    OddSize(usize),
    NotComplementClosed(RowSet),
    /// Several minimum-size extensions of the current chain head; at most one
    /// of them can be placed in either chain.
    AmbiguousMinimum { step: usize, candidates: Vec<RowSet> },
    /// The chain reached the ground set with members left over.
    EarlyGroundSet { length: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainDecision {
    Chain(ChainWitness),
    NoChain(ChainFailure),
}

impl ChainDecision {
    pub fn is_chain(&self) -> bool {
        matches!(self, ChainDecision::Chain(_))
    }
}

/// Decides the 2-chain property greedily.
///
/// The chain starts at the empty set and is extended by the unique
/// minimum-size member containing the current head. The single exception is
/// the first extension: there the two minimum candidates can be `A_2` and the
/// complement of `A_k`, and either choice leads to a valid decomposition (the
/// second is the reversed complementary chain), so a tie of exactly two is
/// broken towards the smaller set in lexicographic order.
pub fn has_two_chain(t: &SetSystem) -> ChainDecision {
    let empty = RowSet::new();
    let ground = t.ground_set();
    if !t.contains(&empty) {
        return ChainDecision::NoChain(ChainFailure::MissingEmptySet);
    }
    if !t.contains(&ground) {
        return ChainDecision::NoChain(ChainFailure::MissingGroundSet);
    }
    if !t.len().is_multiple_of(2) {
        return ChainDecision::NoChain(ChainFailure::OddSize(t.len()));
    }
    if let Some(open) = t
        .members()
        .iter()
        .find(|s| !t.contains(&t.complement(s)))
    {
        return ChainDecision::NoChain(ChainFailure::NotComplementClosed(open.clone()));
    }
    let k = t.len() / 2;

    let mut remaining: BTreeSet<RowSet> = t.members().clone();
    remaining.remove(&empty);
    let mut chain = alloc::vec![empty];
    loop {
        let head = chain.last().expect("chain starts nonempty");
        let candidates: Vec<&RowSet> = remaining.iter().filter(|s| s.is_superset(head)).collect();
        // The ground set stays in `remaining` until it is chosen.
        let min = candidates.iter().map(|s| s.len()).min().expect("ground set remains");
        let minimal: Vec<RowSet> = candidates
            .into_iter()
            .filter(|s| s.len() == min)
            .cloned()
            .collect();
        let first_step = chain.len() == 1;
        if minimal.len() > 1 && !(first_step && minimal.len() == 2) {
            return ChainDecision::NoChain(ChainFailure::AmbiguousMinimum {
                step: chain.len() + 1,
                candidates: minimal,
            });
        }
        let next = minimal.into_iter().next().expect("nonempty");
        remaining.remove(&next);
        let done = next == ground;
        chain.push(next);
        if done {
            break;
        }
    }
    if chain.len() != k + 1 {
        return ChainDecision::NoChain(ChainFailure::EarlyGroundSet {
            length: chain.len(),
            expected: k + 1,
        });
    }
    ChainDecision::Chain(ChainWitness { chain })
}

/// Checks that `chain` together with the complements of its members is a
/// 2-chain decomposition of `t`.
pub fn is_two_chain_decomposition(t: &SetSystem, chain: &[RowSet]) -> bool {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return false;
    };
    if !first.is_empty() || *last != t.ground_set() || chain.len() != t.len() / 2 + 1 {
        return false;
    }
    if !chain
        .windows(2)
        .all(|w| w[0].is_subset(&w[1]) && w[0] != w[1])
    {
        return false;
    }
    let covered: BTreeSet<RowSet> = chain
        .iter()
        .flat_map(|a| [a.clone(), t.complement(a)])
        .collect();
    covered == *t.members()
}

/// A realizing plane `span{X, Y}`: column `j` of the realized matrix is
/// `sign(alpha_j X + beta_j Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Witness {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub column_combos: Vec<(Rational, Rational)>,
}

impl Rank2Witness {
    pub fn column(&self, j: usize) -> Vec<Rational> {
        let (alpha, beta) = &self.column_combos[j];
        self.x
            .iter()
            .zip(&self.y)
            .map(|(x, y)| alpha * x + beta * y)
            .collect()
    }
}

/// Checks `sign(alpha_j X + beta_j Y) = column j` exactly, for every `j`.
/// Works for generalized patterns as well; zeros must then be exact.
pub fn verify_rank2_witness(s: &SignMatrix, w: &Rank2Witness) -> Result<bool> {
    if w.x.len() != s.rows() || w.y.len() != s.rows() || w.column_combos.len() != s.cols() {
        return Err(Error::DimensionMismatch {
            expected: (s.rows(), s.cols()),
            found: (w.x.len(), w.column_combos.len()),
        });
    }
    Ok((0..s.cols()).all(|j| {
        w.column(j)
            .iter()
            .enumerate()
            .all(|(i, v)| Sign::of(v) == s.get(i, j))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank2Decision {
    Realizable(Rank2Witness),
    NotRealizable(ChainFailure),
}

impl Rank2Decision {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Rank2Decision::Realizable(_))
    }

    pub fn witness(&self) -> Option<&Rank2Witness> {
        match self {
            Rank2Decision::Realizable(w) => Some(w),
            Rank2Decision::NotRealizable(_) => None,
        }
    }
}

/// Decides `minrank(S) <= 2` for a strict `S`, with a verified witness on
/// success.
pub fn minrank_le2_strict(s: &SignMatrix) -> Result<Rank2Decision> {
    if !s.is_strict() {
        return Err(Error::NotStrict);
    }
    let m = s.rows();
    if m == 1 {
        let combos = (0..s.cols())
            .map(|j| (Rational::from_integer(s.get(0, j).to_i64().into()), Rational::zero()))
            .collect();
        return Ok(Rank2Decision::Realizable(Rank2Witness {
            x: alloc::vec![Rational::one()],
            y: alloc::vec![Rational::zero()],
            column_combos: combos,
        }));
    }

    // Rows flipped so that column 0 is all `+`.
    let flipped: Vec<bool> = (0..m).map(|i| s.get(i, 0) == Sign::Minus).collect();
    let minus_sets: Vec<RowSet> = (0..s.cols())
        .map(|j| {
            (0..m)
                .filter(|&i| (s.get(i, j) == Sign::Minus) != flipped[i])
                .collect()
        })
        .collect();
    let ground: RowSet = (0..m).collect();
    let complement = |set: &RowSet| -> RowSet { ground.difference(set).copied().collect() };
    let family = SetSystem::new(
        m,
        minus_sets
            .iter()
            .flat_map(|u| [u.clone(), complement(u)]),
    )?;

    let witness = match has_two_chain(&family) {
        ChainDecision::NoChain(reason) => return Ok(Rank2Decision::NotRealizable(reason)),
        ChainDecision::Chain(w) => w,
    };
    let chain = witness.chain();

    let mut y = alloc::vec![Rational::zero(); m];
    for (i, pair) in chain.windows(2).enumerate() {
        let level = Rational::new(BigInt::one(), BigInt::from(i + 2));
        for &r in pair[1].difference(&pair[0]) {
            y[r] = level.clone();
        }
    }
    let column_combos = minus_sets
        .iter()
        .map(|u| {
            // Column with minus-set A_i (1-based i) is sign(X - (i + 1/2) Y).
            let (pos, orient) = match witness.position(u) {
                Some(p) => (p, 1),
                None => (
                    witness
                        .position(&complement(u))
                        .expect("every member or its complement is in the chain"),
                    -1,
                ),
            };
            let threshold = Rational::new(BigInt::from(2 * (pos + 1) + 1), BigInt::from(2));
            let alpha = Rational::from_integer(BigInt::from(orient));
            (alpha.clone(), -alpha * threshold)
        })
        .collect();
    let unflip = |v: &Rational, i: usize| if flipped[i] { -v.clone() } else { v.clone() };
    let w = Rank2Witness {
        x: (0..m).map(|i| unflip(&Rational::one(), i)).collect(),
        y: (0..m).map(|i| unflip(&y[i], i)).collect(),
        column_combos,
    };
    assert!(
        verify_rank2_witness(s, &w)?,
        "chain witness failed exact verification"
    );
    Ok(Rank2Decision::Realizable(w))
}

/// Decides `minrank(S) <= r` for `r` in `{0, 1}`.
///
/// `r = 0`: `S` is all zero. `r = 1`: after dropping zero rows and columns,
/// what is left is zero-free and every row equals the first row or its
/// complement, i.e. `S = u v^T` for sign vectors `u, v`.
pub fn minrank_le_r_small(s: &SignMatrix, r: usize) -> Result<bool> {
    match r {
        0 => Ok(s.is_all_zero()),
        1 => {
            let rows: Vec<usize> = (0..s.rows())
                .filter(|&i| s.row(i).iter().any(|x| !x.is_zero()))
                .collect();
            let cols: Vec<usize> = (0..s.cols())
                .filter(|&j| (0..s.rows()).any(|i| !s.get(i, j).is_zero()))
                .collect();
            let Some(&first) = rows.first() else {
                return Ok(true);
            };
            Ok(rows.iter().all(|&i| {
                let same = cols.iter().all(|&j| s.get(i, j) == s.get(first, j));
                let opposite = cols.iter().all(|&j| s.get(i, j) == -s.get(first, j));
                (same || opposite) && cols.iter().all(|&j| !s.get(i, j).is_zero())
            }))
        }
        other => Err(Error::UnsupportedRank(other)),
    }
}
