//! Hilbert symbols at finite primes against a count of primitive solutions of
//! `a x^2 + b y^2 = z^2` modulo `p^k`.

use std::collections::HashSet;

use e8forms::qform::{hilbert_symbol, Place};

const POOL: [i64; 18] = [-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -11, 13, 14, -15, 21, -30];

/// Squarefree inputs have valuations at most 1, so `k = 3` suffices for odd `p` and `k = 6` for `p = 2`.
fn solvable_mod(a: i64, b: i64, p: i64) -> bool {
    let k = if p == 2 { 6 } else { 3 };
    let m = p.pow(k);
    let unit = |x: i64| x % p != 0;
    let mut squares = HashSet::new();
    let mut unit_squares = HashSet::new();
    for z in 0..m {
        squares.insert(z * z % m);
        if unit(z) {
            unit_squares.insert(z * z % m);
        }
    }
    (0..m).any(|x| {
        (0..m).any(|y| {
            let v = (a * x * x + b * y * y).rem_euclid(m);
            unit_squares.contains(&v) || ((unit(x) || unit(y)) && squares.contains(&v))
        })
    })
}

#[test]
fn symbols_match_solution_counts() {
    for p in [2, 3, 5, 7, 11, 13] {
        for &a in &POOL {
            for &b in &POOL {
                let expected = if solvable_mod(a, b, p) { 1 } else { -1 };
                assert_eq!(hilbert_symbol(a, b, Place::prime(p).unwrap()).unwrap(), expected, "({a}, {b}) at {p}");
            }
        }
    }
}

#[test]
fn real_symbol_is_negative_only_for_two_negatives() {
    for &a in &POOL {
        for &b in &POOL {
            let expected = if a < 0 && b < 0 { -1 } else { 1 };
            assert_eq!(hilbert_symbol(a, b, Place::Infinity).unwrap(), expected);
        }
    }
}
