//! Places of Q, square-free reduction and the Hilbert symbol.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_prime::nt_funcs::{factorize64, is_prime64};
use serde::{Serialize, Serializer};

use super::FormError;

/// A place of Q: a finite prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn prime(p: i64) -> Result<Self, FormError> {
        if p <= 1 || !is_prime64(p as u64) {
            return Err(FormError::BadPlace(p));
        }
        Ok(Place::Prime(p as u64))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Largest absolute value accepted for factorization.
pub const FACTOR_LIMIT: u64 = 1 << 63;

/// Prime divisors of `|n|`, ascending. `n` must be nonzero.
pub fn prime_divisors(n: i64) -> Vec<u64> {
    assert_ne!(n, 0);
    factorize64(n.unsigned_abs()).into_keys().collect()
}

/// Square-free representative of the square class of `n` (sign kept).
pub fn squarefree(n: i128) -> Result<i64, FormError> {
    if n == 0 {
        return Err(FormError::ZeroEntry);
    }
    let abs = n.unsigned_abs();
    if abs >= FACTOR_LIMIT as u128 {
        return Err(FormError::TooLarge(n));
    }
    let core: u64 = factorize64(abs as u64)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    Ok(if n < 0 { -(core as i64) } else { core as i64 })
}

/// Product of two square-free representatives, reduced to square-free form.
pub fn mul_classes(a: i64, b: i64) -> Result<i64, FormError> {
    let g = (a.unsigned_abs()).gcd(&b.unsigned_abs()) as i128;
    let prod = (a as i128 / g) * (b as i128 / g);
    if prod.unsigned_abs() >= FACTOR_LIMIT as u128 {
        return Err(FormError::TooLarge(prod));
    }
    Ok(prod as i64)
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(u / p)` for an odd prime `p` not dividing `u`.
fn legendre(u: i128, p: u64) -> i8 {
    let r = u.rem_euclid(p as i128) as u128;
    debug_assert!(r != 0);
    if pow_mod(r, (p as u128 - 1) / 2, p as u128) == 1 {
        1
    } else {
        -1
    }
}

fn split_valuation(mut n: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Hilbert symbol `(a, b)_v` over Q_v.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i8, FormError> {
    if a == 0 || b == 0 {
        return Err(FormError::ZeroEntry);
    }
    Ok(hilbert_unchecked(a as i128, b as i128, place))
}

pub(crate) fn hilbert_unchecked(a: i128, b: i128, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: i128| ((x - 1) / 2).rem_euclid(2) as u32;
            let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2) as u32;
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(v, p);
            }
            s
        }
    }
}

/// Whether the square-free integer `d` is a square in Q_v.
pub(crate) fn is_local_square(d: i64, place: Place) -> bool {
    match place {
        Place::Infinity => d > 0,
        Place::Prime(2) => d.rem_euclid(8) == 1,
        Place::Prime(p) => d % p as i64 != 0 && legendre(d as i128, p) == 1,
    }
}

/// A 2-torsion Brauer class of Q (or R), recorded by its set of ramified places.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BrauerClass2 {
    pub ramified: BTreeSet<Place>,
}

impl BrauerClass2 {
    pub fn split() -> Self {
        Self::default()
    }

    pub fn is_split(&self) -> bool {
        self.ramified.is_empty()
    }

    /// Sum in Br_2: symmetric difference of ramification sets.
    pub fn add(&self, other: &Self) -> Self {
        Self { ramified: self.ramified.symmetric_difference(&other.ramified).copied().collect() }
    }

    pub fn local_value(&self, place: Place) -> i8 {
        if self.ramified.contains(&place) {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for BrauerClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ramified.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
