//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signrank_core::chain::{minrank_le2_strict, verify_rank2_witness, Rank2Decision};
use signrank_core::genreduce::minrank_le2;
use signrank_core::geometry::enumerate_covectors;
use signrank_core::matroid::{
    cell_matrix, region_matrix, find_reorientation, reconstruct_from_c2,
    reorient, verify_rank3_witness,
};
use signrank_core::maxrank::maxrank;
use signrank_core::oracle::{sauer_shelah_bound, subspace_patterns, Minrank2Oracle};
use signrank_core::random::{
    random_arrangement, random_distinct_rationals, random_generalized_matrix,
    random_threshold_matrix, random_uniform_arrangement,
};
use signrank_core::{Rational, RationalMatrix, Sign, SignMatrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sign_of_index(code: u32) -> Sign {
    match code {
        0 => Sign::Minus,
        1 => Sign::Zero,
        _ => Sign::Plus,
    }
}

fn c1_strict_4x4() -> Outcome {
    let mut oracle = Minrank2Oracle::default();
    let mut yes = 0;
    for mask in 0u32..1 << 16 {
        let s = SignMatrix::from_fn(4, 4, |i, j| {
            if mask >> (4 * i + j) & 1 == 1 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .unwrap();
        let fast = match minrank_le2_strict(&s).map_err(|e| e.to_string())? {
            Rank2Decision::Realizable(w) => {
                if !verify_rank2_witness(&s, &w).unwrap() {
                    return Err(format!("bad witness for\n{s}"));
                }
                true
            }
            Rank2Decision::NotRealizable(_) => false,
        };
        let slow = oracle.decide(&s, false).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("chain says {fast}, oracle says {slow} on\n{s}"));
        }
        yes += fast as usize;
    }
    Ok(format!("65536 matrices agree ({yes} with minrank <= 2)"))
}

fn c2_generalized_3x3() -> Outcome {
    let mut oracle = Minrank2Oracle::default();
    let mut yes = 0;
    for code in 0u32..19683 {
        let s = SignMatrix::from_fn(3, 3, |i, j| sign_of_index(code / 3u32.pow((3 * i + j) as u32) % 3))
            .unwrap();
        let fast = minrank_le2(&s).map_err(|e| e.to_string())?.is_yes();
        let slow = oracle.decide(&s, true).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("reduction says {fast}, oracle says {slow} on\n{s}"));
        }
        yes += fast as usize;
    }
    Ok(format!("19683 matrices agree ({yes} with minrank <= 2)"))
}

fn c3_threshold_positives() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..1000 {
        let (m, n) = (rng.gen_range(1..=10), rng.gen_range(1..=20));
        let s = random_threshold_matrix(&mut rng, m, n);
        match minrank_le2_strict(&s).map_err(|e| e.to_string())? {
            Rank2Decision::Realizable(w) if verify_rank2_witness(&s, &w).unwrap() => {}
            other => return Err(format!("instance {k} rejected: {other:?}\n{s}")),
        }
    }
    Ok("1000 threshold matrices accepted with verified witnesses".into())
}

fn c4_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=7 {
        for _ in 0..50 {
            let arr = random_uniform_arrangement(&mut rng, n);
            let got = enumerate_covectors(&arr).counts();
            let want = (binom(n, 2), n * n, 1 + binom(n + 1, 2));
            if got != want {
                return Err(format!("n = {n}: counts {got:?}, expected {want:?}"));
            }
        }
    }
    Ok("300 uniform arrangements, n = 2..7".into())
}

fn c5_reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=7 {
        for _ in 0..50 {
            let arr = random_uniform_arrangement(&mut rng, n);
            let cov = enumerate_covectors(&arr);
            let r = reconstruct_from_c2(&cov.c2, n).map_err(|e| e.to_string())?;
            if r.c0 != cov.c0 || r.c1 != cov.c1 {
                return Err(format!("n = {n}: reconstruction differs for {arr:?}"));
            }
        }
    }
    Ok("300 uniform arrangements reconstructed exactly".into())
}

fn c6_rank3_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut uniform = 0;
    for k in 0..50 {
        let n = rng.gen_range(1..=6);
        let arr = random_arrangement(&mut rng, n);
        let main = cell_matrix(&arr).map_err(|e| e.to_string())?;
        if !verify_rank3_witness(&main.matrix, &main.realization).map_err(|e| e.to_string())? {
            return Err(format!("main witness {k} failed for {arr:?}"));
        }
        if arr.is_uniform() {
            uniform += 1;
            let main2 = region_matrix(&arr).map_err(|e| e.to_string())?;
            if !verify_rank3_witness(&main2.matrix, &main2.realization)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("main2 witness {k} failed for {arr:?}"));
            }
        }
    }
    Ok(format!("50 arrangements, {uniform} uniform"))
}

fn c7_subspace_patterns() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 2..=12 {
        let bound = sauer_shelah_bound(m, 2).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let y = random_distinct_rationals(&mut rng, m);
            let p = subspace_patterns(&y).map_err(|e| e.to_string())?;
            if p.len() != 2 * m || p.len() as u128 > bound {
                return Err(format!("m = {m}: {} patterns, bound {bound}", p.len()));
            }
        }
    }
    Ok("1100 vectors give exactly 2m patterns".into())
}

fn substitute(rng: &mut ChaCha8Rng, s: &SignMatrix) -> RationalMatrix {
    let data = s
        .entries()
        .iter()
        .map(|sign| {
            let num = rng.gen_range(1..=1000i64) * sign.to_i64();
            Rational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=10i64)))
        })
        .collect();
    RationalMatrix::new(s.rows(), s.cols(), data).unwrap()
}

fn c8_maxrank() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut attained = 0;
    for k in 0..200 {
        let s = random_generalized_matrix(&mut rng, 8, 8);
        let bound = maxrank(&s);
        let mut hit = false;
        for _ in 0..100 {
            let r = substitute(&mut rng, &s).rank();
            if r > bound {
                return Err(format!("matrix {k}: rank {r} above maxrank {bound}"));
            }
            hit |= r == bound;
        }
        attained += hit as usize;
    }
    if attained * 100 < 99 * 200 {
        return Err(format!("maxrank attained for only {attained}/200 matrices"));
    }
    Ok(format!("maxrank attained for {attained}/200 matrices"))
}

fn c9_reorientation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let arr = random_arrangement(&mut rng, n);
        let l = enumerate_covectors(&arr).all();
        let a: Vec<usize> = (0..n).filter(|_| rng.gen()).collect();
        let target = reorient(&l, &a).map_err(|e| e.to_string())?;
        if reorient(&target, &a).map_err(|e| e.to_string())? != l {
            return Err(format!("pair {k}: reorient is not an involution"));
        }
        match find_reorientation(&l, &target) {
            Some(found) if reorient(&l, &found).unwrap() == target => {}
            other => return Err(format!("pair {k}: A = {a:?}, found {other:?}")),
        }
    }
    Ok("200 pairs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 strict 4x4 chain vs oracle", c1_strict_4x4),
        ("2 generalized 3x3 reduction vs oracle", c2_generalized_3x3),
        ("3 threshold positives", c3_threshold_positives),
        ("4 uniform covector counts", c4_counts),
        ("5 reconstruction from regions", c5_reconstruction),
        ("6 rank-3 witnesses", c6_rank3_witnesses),
        ("7 subspace patterns", c7_subspace_patterns),
        ("8 maxrank vs substitutions", c8_maxrank),
        ("9 reorientation algebra", c9_reorientation),
    ];
    let filter: BTreeSet<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
