//! Seeded point sets and weight vectors for verification runs.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Points;
use crate::scalar::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// First `n` terms of `1, 2, 5, 10, 20, 50, 100, ...`.
pub fn one_two_five(n: usize) -> Points {
    let v: Vec<i64> = (0..n)
        .map(|i| [1, 2, 5][i % 3] * 10i64.pow((i / 3) as u32))
        .collect();
    Points::from_integers(&v).expect("distinct positive")
}

/// `n` distinct rationals `a/b` with `1 <= a <= 48`, `1 <= b <= 4`, no two
/// closer in ratio than `n / (n - 1)`, the tightest pair of `(1..n)`.
/// Tighter clusters push eigenvalues of `K_r` near odd `r` below the
/// binary64 zero threshold.
pub fn random_rational_points(n: usize, rng: &mut impl Rng) -> Points {
    let mut pool: Vec<Rational> = (1..=48i64)
        .flat_map(|a| (1..=4i64).map(move |b| Rational::new(BigInt::from(a), BigInt::from(b))))
        .collect();
    pool.sort();
    pool.dedup();
    pool.shuffle(rng);
    let min_ratio = Rational::new(BigInt::from(n.max(2)), BigInt::from(n.max(2) - 1));
    let mut chosen: Vec<Rational> = Vec::with_capacity(n);
    for x in pool {
        let separated = chosen.iter().all(|y| {
            let (lo, hi) = if &x < y { (&x, y) } else { (y, &x) };
            hi / lo >= min_ratio
        });
        if separated {
            chosen.push(x);
            if chosen.len() == n {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), n, "pool too small for {n} separated points");
    Points::from_exact(chosen).expect("distinct positive")
}

/// `(1..n)`, the 1-2-5 series, and five seeded random rational sets.
pub fn standard_point_sets(n: usize, seed: u64) -> Vec<(String, Points)> {
    let mut rng = rng(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut sets = vec![
        ("range".to_string(), Points::range(n)),
        ("one-two-five".to_string(), one_two_five(n)),
    ];
    for i in 0..5 {
        sets.push((format!("random-{i}"), random_rational_points(n, &mut rng)));
    }
    sets
}

/// Nonzero weights `a/b` with `-9 <= a <= 9`, `1 <= b <= 5`.
pub fn random_weights(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    loop {
        let w: Vec<Rational> = (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=5))))
            .collect();
        if w.iter().any(|x| *x != Rational::from_integer(BigInt::from(0))) {
            return w;
        }
    }
}
