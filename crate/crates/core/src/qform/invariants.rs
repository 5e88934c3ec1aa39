//! Classical invariants of a diagonal form and local isotropy from invariants alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::hilbert::{hilbert_unchecked, is_local_square, prime_divisors, BrauerClass2, Place};
use super::{BaseField, FormError, QForm};

/// Witt-class invariants: dimension, signed discriminant, Clifford invariant, signature.
///
/// `disc`, `clifford` and `signature` depend only on the Witt class; `dim` does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittInvariants {
    pub field: BaseField,
    pub dim: usize,
    /// Signed discriminant `(-1)^{n(n-1)/2} det` as a square-free representative.
    pub disc: i64,
    pub clifford: BrauerClass2,
    pub signature: i64,
}

fn sign_pow(n: usize) -> i64 {
    if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Correction turning the Hasse invariant `prod_{i<j} (a_i, a_j)` into the Clifford
/// invariant, keyed on `dim mod 8`. It is its own inverse.
fn clifford_correction(n: usize, det: i64, v: Place) -> i8 {
    let h = |a: i64, b: i64| hilbert_unchecked(a as i128, b as i128, v);
    match n % 8 {
        1 | 2 => 1,
        3 | 4 => h(-1, -det),
        5 | 6 => h(-1, -1),
        _ => h(-1, det),
    }
}

fn pow_sign(s: i8, e: u64) -> i8 {
    if s == -1 && e % 2 == 1 {
        -1
    } else {
        1
    }
}

impl QForm {
    /// Computes dimension, signed discriminant, Clifford invariant and signature.
    pub fn invariants(&self) -> WittInvariants {
        let field = self.field();
        let n = self.dim();
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for &a in self.entries() {
            *counts.entry(a).or_default() += 1;
        }
        let det = counts
            .iter()
            .filter(|(_, &m)| m % 2 == 1)
            .try_fold(1i64, |acc, (&a, _)| field.mul(acc, a))
            .expect("discriminant within the factorization limit");
        let disc = field.mul(det, sign_pow(n)).expect("sign change");

        let places: Vec<Place> = match field {
            BaseField::R => vec![Place::Infinity],
            BaseField::Q => {
                let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
                for &a in counts.keys() {
                    primes.extend(prime_divisors(a));
                }
                primes.into_iter().map(Place::Prime).chain([Place::Infinity]).collect()
            }
        };
        let classes: Vec<(i64, u64)> = counts.into_iter().collect();
        let mut ramified = BTreeSet::new();
        for v in places {
            let mut hasse: i8 = 1;
            for (i, &(a, ma)) in classes.iter().enumerate() {
                // (a, a) = (a, -1)
                hasse *= pow_sign(hilbert_unchecked(a as i128, -1, v), ma * ma.saturating_sub(1) / 2);
                for &(b, mb) in &classes[i + 1..] {
                    hasse *= pow_sign(hilbert_unchecked(a as i128, b as i128, v), ma * mb);
                }
            }
            if hasse * clifford_correction(n, det, v) == -1 {
                ramified.insert(v);
            }
        }
        WittInvariants {
            field,
            dim: n,
            disc,
            clifford: BrauerClass2 { ramified },
            signature: self.signature(),
        }
    }
}

impl WittInvariants {
    /// `det` recovered from the signed discriminant.
    pub fn det(&self) -> i64 {
        self.disc * sign_pow(self.dim)
    }

    /// Hasse invariant `prod_{i<j}(a_i,a_j)_v` of any form with these invariants.
    pub fn hasse_at(&self, v: Place) -> i8 {
        self.clifford.local_value(v) * clifford_correction(self.dim, self.det(), v)
    }

    /// Whether a form with these invariants represents zero over the completion at `v`.
    pub fn is_locally_isotropic(&self, v: Place) -> bool {
        let n = self.dim;
        if let Place::Infinity = v {
            return n >= 2 && (self.signature.unsigned_abs() as usize) < n;
        }
        let det = self.det();
        let h = |a: i64, b: i64| hilbert_unchecked(a as i128, b as i128, v);
        match n {
            0 | 1 => false,
            2 => is_local_square(-det, v),
            3 => h(-1, -det) == self.hasse_at(v),
            4 => !is_local_square(det, v) || self.hasse_at(v) == h(-1, -1),
            _ => true,
        }
    }

    /// Places at which isotropy can fail for `n >= 3`: the real place, 2, primes dividing
    /// the discriminant and the ramified places of the Clifford invariant.
    pub fn critical_places(&self) -> BTreeSet<Place> {
        let mut out: BTreeSet<Place> = BTreeSet::from([Place::Infinity]);
        if self.field == BaseField::Q {
            out.insert(Place::Prime(2));
            out.extend(prime_divisors(self.disc).into_iter().map(Place::Prime));
            out.extend(self.clifford.ramified.iter().copied());
        }
        out
    }

    /// Hasse-Minkowski isotropy test from invariants.
    pub fn is_isotropic(&self) -> Result<bool, FormError> {
        let n = self.dim;
        if n == 0 {
            return Err(FormError::EmptyForm);
        }
        let indefinite = (self.signature.unsigned_abs() as usize) < n;
        Ok(match (self.field, n) {
            (_, 1) => false,
            (BaseField::R, _) => indefinite,
            (BaseField::Q, 2) => self.disc == 1,
            (BaseField::Q, 3 | 4) => self.critical_places().into_iter().all(|v| self.is_locally_isotropic(v)),
            (BaseField::Q, _) => indefinite,
        })
    }

    /// The invariants of the hyperbolic form of the same dimension.
    pub fn is_hyperbolic_profile(&self) -> bool {
        self.dim.is_multiple_of(2) && self.disc == 1 && self.clifford.is_split() && self.signature == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::Quaternion;

    #[test]
    fn hyperbolic_plane_invariants() {
        let i = QForm::q(&[1, -1]).invariants();
        assert_eq!((i.dim, i.disc, i.signature), (2, 1, 0));
        assert!(i.clifford.is_split());
    }

    #[test]
    fn four_squares_carry_hamilton_class() {
        let i = QForm::q(&[1, 1, 1, 1]).invariants();
        assert_eq!((i.signature, i.disc), (4, 1));
        assert_eq!(i.clifford, Quaternion::hamilton().brauer_class(BaseField::Q));
    }

    #[test]
    fn three_pfister_has_trivial_clifford() {
        let i = QForm::pfister(BaseField::Q, &[-1, -1, -1]).unwrap().invariants();
        assert_eq!((i.signature, i.disc), (8, 1));
        assert!(i.clifford.is_split());
    }

    #[test]
    fn clifford_is_witt_invariant_in_every_residue() {
        // Adding hyperbolic planes must not move the Clifford invariant, for every dim mod 8.
        let base = [3i64, -5, 7, 2, -6, 11, 13, -1];
        for n in 1..=8 {
            let q = QForm::q(&base[..n]);
            let c = q.invariants().clifford;
            for m in 1..=4 {
                let bigger = &q + &QForm::hyperbolic(BaseField::Q, m);
                assert_eq!(bigger.invariants().clifford, c, "n={n} m={m}");
                assert_eq!(bigger.invariants().disc, q.invariants().disc);
            }
        }
    }

    #[test]
    fn clifford_ramification_has_even_size_over_q() {
        for entries in [&[1, 2, 3][..], &[-1, -3, 5, 7], &[2, 3, 5, 7, 11], &[-1, -1, -1]] {
            let c = QForm::q(entries).invariants().clifford;
            assert_eq!(c.ramified.len() % 2, 0, "{entries:?}");
        }
    }

    #[test]
    fn empty_form_has_no_isotropy() {
        assert_eq!(QForm::zero(BaseField::Q).invariants().is_isotropic(), Err(FormError::EmptyForm));
    }
}
