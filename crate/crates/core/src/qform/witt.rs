//! Witt decomposition, Witt-class equality and membership in powers of the fundamental ideal.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{FormError, QForm, WittInvariants};

/// Largest `n` for which [`QForm::i_level`] reports `I^n` membership exactly.
pub const I_LEVEL_CAP: u32 = 12;

/// Deepest power of the fundamental ideal containing a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ILevel {
    /// In `I^n` but not `I^{n+1}`, or in `I^cap` when `n` is the cap.
    Exact(u32),
    /// The zero class, which lies in every `I^n`.
    Hyperbolic,
}

impl ILevel {
    pub fn at_least(self, n: u32) -> bool {
        match self {
            ILevel::Exact(k) => k >= n,
            ILevel::Hyperbolic => true,
        }
    }
}

impl PartialOrd for ILevel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ILevel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ILevel::Hyperbolic, ILevel::Hyperbolic) => Ordering::Equal,
            (ILevel::Hyperbolic, _) => Ordering::Greater,
            (_, ILevel::Hyperbolic) => Ordering::Less,
            (ILevel::Exact(a), ILevel::Exact(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ILevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ILevel::Exact(n) => write!(f, "{n}"),
            ILevel::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

impl Serialize for ILevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ILevel::Exact(n) => s.serialize_u32(*n),
            ILevel::Hyperbolic => s.serialize_str("hyperbolic"),
        }
    }
}

/// Result of splitting off hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub kernel: WittInvariants,
}

impl QForm {
    pub fn is_isotropic(&self) -> Result<bool, FormError> {
        self.invariants().is_isotropic()
    }

    /// Strips hyperbolic planes at the level of invariants while the remainder is isotropic.
    pub fn witt_decompose(&self) -> WittDecomposition {
        let mut kernel = self.invariants();
        let mut witt_index = 0;
        while kernel.dim >= 2 && kernel.is_isotropic().expect("nonempty") {
            kernel.dim -= 2;
            witt_index += 1;
        }
        WittDecomposition { witt_index, kernel }
    }

    pub fn witt_index(&self) -> usize {
        self.witt_decompose().witt_index
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.invariants().is_hyperbolic_profile()
    }

    /// Equality in the Witt ring: `self - other` is hyperbolic.
    pub fn witt_equal(&self, other: &QForm) -> Result<bool, FormError> {
        if self.field() != other.field() {
            return Err(FormError::FieldMismatch(self.field(), other.field()));
        }
        Ok((self - other).is_hyperbolic())
    }

    /// Isometry: same dimension and same Witt class (Witt cancellation).
    pub fn isometric(&self, other: &QForm) -> Result<bool, FormError> {
        Ok(self.dim() == other.dim() && self.witt_equal(other)?)
    }

    /// Membership in `I^n`.
    pub fn in_i_n(&self, n: i64) -> Result<bool, FormError> {
        if n < 0 {
            return Err(FormError::NegativeLevel(n));
        }
        Ok(in_i_n_invariants(&self.invariants(), n as u32))
    }

    /// Largest `n <= I_LEVEL_CAP` with the form in `I^n`, or `Hyperbolic` for the zero class.
    pub fn i_level(&self) -> ILevel {
        let inv = self.invariants();
        if inv.is_hyperbolic_profile() {
            return ILevel::Hyperbolic;
        }
        let mut level = 0;
        while level < I_LEVEL_CAP && in_i_n_invariants(&inv, level + 1) {
            level += 1;
        }
        ILevel::Exact(level)
    }

    /// Whether the Arason invariant vanishes; defined on `I^3`.
    pub fn e3_zero(&self) -> Result<bool, FormError> {
        let inv = self.invariants();
        if !in_i_n_invariants(&inv, 3) {
            return Err(FormError::NotInI3);
        }
        Ok(in_i_n_invariants(&inv, 4))
    }

    /// Symbol length of the Arason invariant. Over Q and R it is 0 or 1.
    pub fn e3_symbol_length(&self) -> Result<u32, FormError> {
        Ok(if self.e3_zero()? { 0 } else { 1 })
    }
}

fn in_i_n_invariants(inv: &WittInvariants, n: u32) -> bool {
    if n == 0 {
        return true;
    }
    if !inv.dim.is_multiple_of(2) {
        return false;
    }
    if n >= 2 && inv.disc != 1 {
        return false;
    }
    if n >= 3 && !inv.clifford.is_split() {
        return false;
    }
    n <= 3 || inv.signature.rem_euclid(1i64 << n) == 0
}
