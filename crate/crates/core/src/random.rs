//! Seeded generators for test inputs: sign matrices, threshold patterns of
//! rank two, line arrangements and distinct rational vectors.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{Arrangement, Line, Orientation};
use crate::rational::{int, ratio, Rational};
use crate::sign::{Sign, SignMatrix};

const COEFF: i64 = 12;

pub fn random_strict_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> SignMatrix {
    let entries = (0..rows * cols)
        .map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus })
        .collect();
    SignMatrix::from_vec(rows, cols, entries).expect("nonzero dimensions")
}

pub fn random_generalized_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> SignMatrix {
    let entries = (0..rows * cols)
        .map(|_| *Sign::ALL.choose(rng).expect("three signs"))
        .collect();
    SignMatrix::from_vec(rows, cols, entries).expect("nonzero dimensions")
}

/// A strict matrix of minimum rank at most two.
///
/// Rows get random values `y_i` in `1..=rows` (ties allowed). Each column is
/// `sign(e (y_i - t))` for a random half-integer threshold `t` and a random
/// sign `e`, and finally a random subset of rows is negated.
pub fn random_threshold_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> SignMatrix {
    let m = rows as i64;
    let y: Vec<i64> = (0..rows).map(|_| rng.gen_range(1..=m)).collect();
    let columns: Vec<(i64, i64)> = (0..cols)
        .map(|_| {
            // threshold t = k + 1/2, stored as 2t.
            let twice_t = 2 * rng.gen_range(0..=m) + 1;
            let e = if rng.gen() { 1 } else { -1 };
            (twice_t, e)
        })
        .collect();
    let flip: Vec<bool> = (0..rows).map(|_| rng.gen()).collect();
    SignMatrix::from_fn(rows, cols, |i, j| {
        let (twice_t, e) = columns[j];
        let v = e * (2 * y[i] - twice_t);
        let s = if v > 0 { Sign::Plus } else { Sign::Minus };
        if flip[i] {
            -s
        } else {
            s
        }
    })
    .expect("nonzero dimensions")
}

fn random_line(rng: &mut impl Rng) -> Line {
    loop {
        let a = rng.gen_range(-COEFF..=COEFF);
        let b = rng.gen_range(-COEFF..=COEFF);
        if a == 0 && b == 0 {
            continue;
        }
        let c = rng.gen_range(-2 * COEFF..=2 * COEFF);
        return Line::new(int(a), int(b), int(c));
    }
}

fn random_orientation(rng: &mut impl Rng) -> Orientation {
    if rng.gen() {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

/// `n` pairwise crossing lines with small integer coefficients and random
/// orientations. Concurrences are allowed and, with small coefficients,
/// fairly common.
pub fn random_arrangement(rng: &mut impl Rng, n: usize) -> Arrangement {
    assert!(n > 0, "an arrangement needs a line");
    let mut lines: Vec<(Line, Orientation)> = Vec::with_capacity(n);
    while lines.len() < n {
        let l = random_line(rng);
        let mut candidate = lines.clone();
        candidate.push((l, random_orientation(rng)));
        if Arrangement::new(candidate.clone()).is_ok() {
            lines = candidate;
        }
    }
    Arrangement::new(lines).expect("checked")
}

/// Like [`random_arrangement`], but no three lines share a point.
pub fn random_uniform_arrangement(rng: &mut impl Rng, n: usize) -> Arrangement {
    assert!(n > 0, "an arrangement needs a line");
    let mut lines: Vec<(Line, Orientation)> = Vec::with_capacity(n);
    while lines.len() < n {
        let mut candidate = lines.clone();
        candidate.push((random_line(rng), random_orientation(rng)));
        if let Ok(arr) = Arrangement::new(candidate.clone()) {
            if arr.is_uniform() {
                lines = candidate;
            }
        }
    }
    Arrangement::new(lines).expect("checked")
}

/// `m` pairwise distinct rationals with denominators up to 16.
pub fn random_distinct_rationals(rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let q = ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=16));
        if seen.insert(q.clone()) {
            out.push(q);
        }
    }
    out
}
