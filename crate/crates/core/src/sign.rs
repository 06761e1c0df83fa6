//! Signs, sign vectors and sign pattern matrices.
//!
//! The text format used throughout is one row per line over the alphabet
//! `+`, `-`, `0`, each line newline-terminated, with no separators.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, Mul, Neg};
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Rational, RationalMatrix};

/// One of `-`, `0`, `+`. The derived order is `- < 0 < +`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Minus, Sign::Zero, Sign::Plus];

    pub fn of(value: &Rational) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn of_f64(value: f64) -> Sign {
        if value > 0.0 {
            Sign::Plus
        } else if value < 0.0 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn from_char(ch: char) -> Option<Sign> {
        match ch {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// `-1`, `0` or `1`.
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A nonempty sequence of signs.
///
/// Ordered lexicographically with `- < 0 < +`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Ok(SignVector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "sign vectors are nonempty");
        SignVector(alloc::vec![Sign::Zero; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Sign> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Sign> {
        self.0.iter()
    }

    /// Entrywise negation.
    pub fn complement(&self) -> SignVector {
        SignVector(self.0.iter().map(|&s| -s).collect())
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_zero()).count()
    }

    pub fn is_full_support(&self) -> bool {
        self.zero_count() == 0
    }

    pub fn zero_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].is_zero()).collect()
    }

    /// Copy with entry `index` replaced.
    pub fn with(&self, index: usize, sign: Sign) -> SignVector {
        let mut entries = self.0.clone();
        entries[index] = sign;
        SignVector(entries)
    }

    /// Negate the coordinates listed in `positions`.
    pub fn reoriented(&self, positions: &[usize]) -> SignVector {
        let mut entries = self.0.clone();
        for &p in positions {
            entries[p] = -entries[p];
        }
        SignVector(entries)
    }
}

/// Entrywise negation of a sign vector.
pub fn complement(v: &SignVector) -> SignVector {
    v.complement()
}

impl Index<usize> for SignVector {
    type Output = Sign;

    fn index(&self, index: usize) -> &Sign {
        &self.0[index]
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .enumerate()
            .map(|(column, ch)| {
                Sign::from_char(ch).ok_or(Error::IllegalCharacter {
                    ch,
                    line: 1,
                    column: column + 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SignVector::new(entries)
    }
}

/// A dense `m x n` sign pattern matrix with `m, n >= 1`.
///
/// `strict` is recomputed on every construction and is true iff no entry is
/// zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Sign>,
    strict: bool,
}

impl SignMatrix {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len() / cols.max(1), cols),
            });
        }
        let strict = entries.iter().all(|s| !s.is_zero());
        Ok(SignMatrix {
            rows,
            cols,
            entries,
            strict,
        })
    }

    pub fn from_rows(rows: &[Vec<Sign>]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty)?;
        let cols = first.len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_vec(rows.len(), cols, entries)
    }

    pub fn from_columns(columns: &[SignVector]) -> Result<Self> {
        let first = columns.first().ok_or(Error::Empty)?;
        let rows = first.len();
        for c in columns {
            if c.len() != rows {
                return Err(Error::LengthMismatch(rows, c.len()));
            }
        }
        let entries = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i]))
            .collect();
        Self::from_vec(rows, columns.len(), entries)
    }

    /// Builds a matrix from an `m x n` closure.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Sign) -> Result<Self> {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::from_vec(rows, cols, entries)
    }

    pub fn filled(rows: usize, cols: usize, sign: Sign) -> Result<Self> {
        Self::from_vec(rows, cols, alloc::vec![sign; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn get(&self, row: usize, col: usize) -> Sign {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Sign] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_vector(&self, row: usize) -> SignVector {
        SignVector(self.row(row).to_vec())
    }

    pub fn column(&self, col: usize) -> SignVector {
        SignVector((0..self.rows).map(|i| self.get(i, col)).collect())
    }

    pub fn columns(&self) -> Vec<SignVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Sign>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|s| s.is_zero()).count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> SignMatrix {
        SignMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i)).expect("nonempty")
    }

    /// Complements every row listed in `rows`. Duplicated indices are applied
    /// once, so the operation is an involution for any index set.
    pub fn flip_rows(&self, rows: &[usize]) -> Result<SignMatrix> {
        let mut flip = alloc::vec![false; self.rows];
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    bound: self.rows,
                });
            }
            flip[r] = true;
        }
        SignMatrix::from_fn(self.rows, self.cols, |i, j| {
            let s = self.get(i, j);
            if flip[i] {
                -s
            } else {
                s
            }
        })
    }

    pub fn permute_rows(&self, order: &[usize]) -> Result<SignMatrix> {
        check_permutation(order, self.rows)?;
        SignMatrix::from_fn(self.rows, self.cols, |i, j| self.get(order[i], j))
    }

    pub fn permute_columns(&self, order: &[usize]) -> Result<SignMatrix> {
        check_permutation(order, self.cols)?;
        SignMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, order[j]))
    }

    /// Appends a column at the right edge.
    pub fn with_column(&self, column: &SignVector) -> Result<SignMatrix> {
        if column.len() != self.rows {
            return Err(Error::LengthMismatch(self.rows, column.len()));
        }
        SignMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                column[i]
            }
        })
    }
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::LengthMismatch(n, order.len()));
    }
    let mut seen = alloc::vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        seen[i] = true;
    }
    Ok(())
}

/// Exact entrywise sign of a rational matrix.
pub fn sign_of_rational_matrix(a: &RationalMatrix) -> SignMatrix {
    SignMatrix::from_fn(a.rows(), a.cols(), |i, j| Sign::of(a.get(i, j)))
        .expect("rational matrices are nonempty")
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for s in self.row(i) {
                write!(f, "{}", s.to_char())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::Empty);
        }
        let mut rows = Vec::new();
        for (line_no, line) in body.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let row = line
                .chars()
                .enumerate()
                .map(|(column, ch)| {
                    Sign::from_char(ch).ok_or(Error::IllegalCharacter {
                        ch,
                        line: line_no + 1,
                        column: column + 1,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows[0].is_empty() {
            return Err(Error::Empty);
        }
        SignMatrix::from_rows(&rows)
    }
}

impl SignMatrix {
    /// Serializes to the text format; the inverse of [`str::parse`].
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}
