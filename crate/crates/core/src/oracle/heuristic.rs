//! One-sided search for low-rank realizations.
//!
//! The search runs in floating point (squared-hinge descent on a factored
//! `U V^T`), snaps the factors to small-denominator rationals and accepts a
//! candidate only after exact verification. Exact zeros are enforced by
//! solving each column inside the exact null space of the rows of `U` that
//! must vanish. Failing to find a witness proves nothing.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{self, null_space, snap_f64, to_f64, Rational, RationalMatrix};
use crate::sign::{sign_of_rational_matrix, Sign, SignMatrix};

const DESCENT_STEPS: usize = 3000;
const CHECK_EVERY: usize = 50;
const DENOMINATORS: [i64; 6] = [1, 8, 64, 1024, 1 << 16, 1 << 24];

/// Searches for `A` with `sign(A) = s` and `rank(A) <= r`.
///
/// Deterministic for a given `seed`. Every returned matrix has passed the
/// exact sign and rank checks.
pub fn heuristic_rank_upper_bound(
    s: &SignMatrix,
    r: usize,
    seed: u64,
    iters: usize,
) -> Option<RationalMatrix> {
    if r == 0 {
        return s
            .is_all_zero()
            .then(|| RationalMatrix::zeros(s.rows(), s.cols()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // A generic substitution already has rank maxrank(s).
    let entries = s
        .entries()
        .iter()
        .map(|sign| rational::int(sign.to_i64() * rng.gen_range(1..=1000i64)))
        .collect();
    let substitution = RationalMatrix::new(s.rows(), s.cols(), entries).expect("nonempty");
    if let Some(a) = accept(s, r, substitution) {
        return Some(a);
    }

    for _ in 0..iters {
        let mut search = Descent::new(s, r, &mut rng);
        for step in 1..=DESCENT_STEPS {
            search.step();
            if step % CHECK_EVERY == 0 && search.signs_match() {
                if let Some(a) = search.snap() {
                    return Some(a);
                }
            }
        }
        if let Some(a) = search.snap() {
            return Some(a);
        }
    }
    None
}

fn accept(s: &SignMatrix, r: usize, a: RationalMatrix) -> Option<RationalMatrix> {
    (sign_of_rational_matrix(&a) == *s && a.rank() <= r).then_some(a)
}

struct Descent<'a> {
    s: &'a SignMatrix,
    r: usize,
    u: Vec<f64>,
    v: Vec<f64>,
    rate: f64,
}

impl<'a> Descent<'a> {
    fn new(s: &'a SignMatrix, r: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut init = |len: usize| (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let u = init(s.rows() * r);
        let v = init(s.cols() * r);
        let rate = 0.5 / (s.rows() + s.cols()) as f64;
        Descent { s, r, u, v, rate }
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        let r = self.r;
        (0..r).map(|k| self.u[i * r + k] * self.v[j * r + k]).sum()
    }

    /// One gradient step on `sum max(0, 1 - s a)^2 + sum_{s = 0} 4 a^2`.
    fn step(&mut self) {
        let (m, n, r) = (self.s.rows(), self.s.cols(), self.r);
        let mut gu = alloc::vec![0.0; m * r];
        let mut gv = alloc::vec![0.0; n * r];
        for i in 0..m {
            for j in 0..n {
                let a = self.value(i, j);
                let g = match self.s.get(i, j) {
                    Sign::Zero => 8.0 * a,
                    sign => {
                        let t = sign.to_i64() as f64;
                        let slack = 1.0 - t * a;
                        if slack > 0.0 {
                            -2.0 * slack * t
                        } else {
                            0.0
                        }
                    }
                };
                if g != 0.0 {
                    for k in 0..r {
                        gu[i * r + k] += g * self.v[j * r + k];
                        gv[j * r + k] += g * self.u[i * r + k];
                    }
                }
            }
        }
        for (x, g) in self.u.iter_mut().zip(&gu) {
            *x -= self.rate * g;
        }
        for (x, g) in self.v.iter_mut().zip(&gv) {
            *x -= self.rate * g;
        }
    }

    fn signs_match(&self) -> bool {
        (0..self.s.rows()).all(|i| {
            (0..self.s.cols()).all(|j| match self.s.get(i, j) {
                Sign::Zero => true,
                sign => Sign::of_f64(self.value(i, j)) == sign,
            })
        })
    }

    fn snap(&self) -> Option<RationalMatrix> {
        DENOMINATORS.iter().find_map(|&d| self.snap_with(d))
    }

    fn snap_with(&self, denominator: i64) -> Option<RationalMatrix> {
        let (m, n, r) = (self.s.rows(), self.s.cols(), self.r);
        let u = RationalMatrix::from_fn(m, r, |i, k| snap_f64(self.u[i * r + k], denominator))
            .expect("nonempty");
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for j in 0..n {
            let target: Vec<f64> = (0..r).map(|k| self.v[j * r + k]).collect();
            let zeros: Vec<usize> = (0..m).filter(|&i| self.s.get(i, j).is_zero()).collect();
            if zeros.is_empty() {
                columns.push(target.iter().map(|&x| snap_f64(x, denominator)).collect());
                continue;
            }
            let constraint = RationalMatrix::from_fn(zeros.len(), r, |a, k| u.get(zeros[a], k).clone())
                .expect("nonempty");
            let basis = null_space(&constraint);
            if basis.is_empty() {
                if (0..m).all(|i| self.s.get(i, j).is_zero()) {
                    columns.push(alloc::vec![rational::int(0); r]);
                    continue;
                }
                return None;
            }
            let coeffs = least_squares(&basis, &target)?;
            let mut v = alloc::vec![rational::int(0); r];
            for (b, c) in basis.iter().zip(&coeffs) {
                let c = snap_f64(*c, denominator);
                for k in 0..r {
                    v[k] += &b[k] * &c;
                }
            }
            columns.push(v);
        }
        let v = RationalMatrix::from_fn(r, n, |k, j| columns[j][k].clone()).expect("nonempty");
        accept(self.s, self.r, u.mul(&v).ok()?)
    }
}

/// Coefficients `c` minimizing `|sum_b c_b basis_b - target|` in floating
/// point, through the normal equations.
fn least_squares(basis: &[Vec<Rational>], target: &[f64]) -> Option<Vec<f64>> {
    let q = basis.len();
    let b: Vec<Vec<f64>> = basis
        .iter()
        .map(|v| v.iter().map(to_f64).collect())
        .collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let mut a: Vec<Vec<f64>> = (0..q)
        .map(|i| {
            let mut row: Vec<f64> = (0..q).map(|j| dot(&b[i], &b[j])).collect();
            row.push(dot(&b[i], target));
            row
        })
        .collect();
    for col in 0..q {
        let pivot = (col..q).max_by(|&x, &y| {
            abs(a[x][col])
                .partial_cmp(&abs(a[y][col]))
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if abs(a[pivot][col]) < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let f = row[col] / pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    Some((0..q).map(|i| a[i][q] / a[i][i]).collect())
}

fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    fn check(s: &SignMatrix, r: usize, a: &RationalMatrix) {
        assert_eq!(sign_of_rational_matrix(a), *s);
        assert!(a.rank() <= r);
    }

    #[test]
    fn outer_product_rank_one() {
        let s = sm("+-+\n-+-\n-+-\n+-+");
        let a = heuristic_rank_upper_bound(&s, 1, 7, 5).expect("rank one");
        check(&s, 1, &a);
    }

    #[test]
    fn generous_rank_uses_substitution() {
        let s = sm("+-0\n0++\n-+-");
        let a = heuristic_rank_upper_bound(&s, 3, 1, 0).expect("full rank");
        check(&s, 3, &a);
    }

    #[test]
    fn zeros_are_exact() {
        // [[1,0],[0,1]] pattern has minrank 2; rank 2 must keep exact zeros.
        let s = sm("+0+\n0+-\n+++");
        let a = heuristic_rank_upper_bound(&s, 2, 3, 20).expect("rank two");
        check(&s, 2, &a);
    }

    #[test]
    fn impossible_rank_returns_none() {
        let s = sm("+0\n0+");
        assert!(heuristic_rank_upper_bound(&s, 1, 0, 3).is_none());
        assert!(heuristic_rank_upper_bound(&s, 0, 0, 3).is_none());
        assert!(heuristic_rank_upper_bound(&sm("00"), 0, 0, 0).is_some());
    }

    #[test]
    fn deterministic_per_seed() {
        let s = sm("++-\n+-+\n-++\n+++");
        let a = heuristic_rank_upper_bound(&s, 2, 11, 10);
        let b = heuristic_rank_upper_bound(&s, 2, 11, 10);
        assert_eq!(a, b);
    }
}
