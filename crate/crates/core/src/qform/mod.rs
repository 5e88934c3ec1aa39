//! Diagonal quadratic forms over Q and R and their Witt-ring arithmetic.
//!
//! A form is stored as its list of diagonal entries, each reduced to a square-class
//! representative: a square-free integer over Q, `+1` or `-1` over R. Orthogonal sum,
//! tensor product and negation are available both as fallible methods and as operators
//! on references (`&a + &b`, `&a * &b`, `-&a`, `&a - &b`); the operators panic on a
//! field mismatch.
//!
//! Witt classes over Q and R are decided by dimension parity, signed discriminant,
//! Clifford invariant and signature, and `I^n` membership for `n >= 3` reduces to
//! 2-divisibility of the signature because `I^3` is torsion free over these fields.

mod hilbert;
mod invariants;
mod witt;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Field;
use crate::Rational;

pub use hilbert::{hilbert_symbol, mul_classes, prime_divisors, squarefree, BrauerClass2, Place};
pub use invariants::WittInvariants;
pub use witt::{ILevel, WittDecomposition, I_LEVEL_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("zero symbol entry")]
    ZeroEntry,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(BaseField, BaseField),
    #[error("square class {0} exceeds the factorization limit 2^63")]
    TooLarge(i128),
    #[error("the zero-dimensional form has no isotropy")]
    EmptyForm,
    #[error("negative power of the fundamental ideal: {0}")]
    NegativeLevel(i64),
    #[error("form is not in I^3")]
    NotInI3,
    #[error("invalid place {0}")]
    BadPlace(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseField {
    Q,
    R,
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseField::Q => "Q",
            BaseField::R => "R",
        })
    }
}

impl FromStr for BaseField {
    type Err = FormError;
    fn from_str(s: &str) -> Result<Self, FormError> {
        match s {
            "Q" | "q" => Ok(BaseField::Q),
            "R" | "r" => Ok(BaseField::R),
            other => Err(FormError::Parse(format!("unknown field `{other}` (expected Q or R)"))),
        }
    }
}

impl BaseField {
    /// Square-class representative of a nonzero integer in this field.
    pub fn class_of(self, n: i128) -> Result<i64, FormError> {
        match self {
            _ if n == 0 => Err(FormError::ZeroEntry),
            BaseField::Q => squarefree(n),
            BaseField::R => Ok(if n > 0 { 1 } else { -1 }),
        }
    }

    /// Product of two square-class representatives.
    pub fn mul(self, a: i64, b: i64) -> Result<i64, FormError> {
        match self {
            BaseField::Q => mul_classes(a, b),
            BaseField::R => Ok(a * b),
        }
    }
}

/// A scalar whose nonzero values have a square class in a known base field.
pub trait SquareClassScalar: Field {
    const FIELD: BaseField;
    fn square_class(&self) -> Result<i64, FormError>;
}

impl SquareClassScalar for Rational {
    const FIELD: BaseField = BaseField::Q;
    fn square_class(&self) -> Result<i64, FormError> {
        use num_traits::ToPrimitive;
        let too_large = || FormError::TooLarge(i128::MAX);
        let n = self.numer().to_i128().ok_or_else(too_large)?;
        let d = self.denom().to_i128().ok_or_else(too_large)?;
        mul_classes(squarefree(n)?, squarefree(d)?)
    }
}

impl SquareClassScalar for num_rational::Ratio<i64> {
    const FIELD: BaseField = BaseField::Q;
    fn square_class(&self) -> Result<i64, FormError> {
        mul_classes(squarefree(*self.numer() as i128)?, squarefree(*self.denom() as i128)?)
    }
}

impl SquareClassScalar for f64 {
    const FIELD: BaseField = BaseField::R;
    fn square_class(&self) -> Result<i64, FormError> {
        match self.sign() {
            0 => Err(FormError::ZeroEntry),
            s => Ok(s as i64),
        }
    }
}

impl SquareClassScalar for f32 {
    const FIELD: BaseField = BaseField::R;
    fn square_class(&self) -> Result<i64, FormError> {
        match self.sign() {
            0 => Err(FormError::ZeroEntry),
            s => Ok(s as i64),
        }
    }
}

/// A nondegenerate diagonal quadratic form `<a_1, ..., a_n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QForm {
    field: BaseField,
    entries: Vec<i64>,
}

impl QForm {
    /// Builds a form from arbitrary nonzero integers, reducing each to its square class.
    pub fn new(field: BaseField, entries: impl IntoIterator<Item = i64>) -> Result<Self, FormError> {
        let entries = entries
            .into_iter()
            .map(|a| field.class_of(a as i128))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { field, entries })
    }

    /// Shorthand for a form over Q; panics on zero entries.
    pub fn q(entries: &[i64]) -> Self {
        Self::new(BaseField::Q, entries.iter().copied()).expect("valid entries")
    }

    /// Shorthand for a form over R; panics on zero entries.
    pub fn r(entries: &[i64]) -> Self {
        Self::new(BaseField::R, entries.iter().copied()).expect("valid entries")
    }

    /// Form with diagonal taken from field elements (exact rationals give Q, floats give R).
    pub fn from_diagonal<T: SquareClassScalar>(diag: &[T]) -> Result<Self, FormError> {
        let entries = diag.iter().map(T::square_class).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { field: T::FIELD, entries })
    }

    pub fn zero(field: BaseField) -> Self {
        Self { field, entries: Vec::new() }
    }

    /// `n<1>`.
    pub fn ones(field: BaseField, n: usize) -> Self {
        Self { field, entries: vec![1; n] }
    }

    /// `m` hyperbolic planes.
    pub fn hyperbolic(field: BaseField, m: usize) -> Self {
        Self { field, entries: [1, -1].repeat(m) }
    }

    /// The Pfister form `<<a_1,...,a_n>> = <1,-a_1> (x) ... (x) <1,-a_n>`.
    pub fn pfister(field: BaseField, slots: &[i64]) -> Result<Self, FormError> {
        let mut out = Self::ones(field, 1);
        for &a in slots {
            let a = field.class_of(a as i128)?;
            out = out.try_tensor(&Self { field, entries: vec![1, field.mul(-1, a)?] })?;
        }
        Ok(out)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Count of positive minus count of negative entries.
    pub fn signature(&self) -> i64 {
        self.entries.iter().map(|&a| a.signum()).sum()
    }

    fn check_field(&self, other: &Self) -> Result<(), FormError> {
        if self.field != other.field {
            return Err(FormError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Orthogonal sum.
    pub fn try_orth(&self, other: &Self) -> Result<Self, FormError> {
        self.check_field(other)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { field: self.field, entries })
    }

    /// Tensor product.
    pub fn try_tensor(&self, other: &Self) -> Result<Self, FormError> {
        self.check_field(other)?;
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(self.field.mul(a, b)?);
            }
        }
        Ok(Self { field: self.field, entries })
    }

    /// `<s> q`.
    pub fn try_scale(&self, s: i64) -> Result<Self, FormError> {
        let s = self.field.class_of(s as i128)?;
        let entries = self.entries.iter().map(|&a| self.field.mul(a, s)).collect::<Result<_, _>>()?;
        Ok(Self { field: self.field, entries })
    }

    /// `<s> q`; panics when the square class overflows.
    pub fn scale(&self, s: i64) -> Self {
        self.try_scale(s).expect("scaling stays within the factorization limit")
    }

    /// `k q`, the orthogonal sum of `k` copies.
    pub fn times(&self, k: usize) -> Self {
        Self { field: self.field, entries: self.entries.repeat(k) }
    }

    /// Orthogonal sum of a list of forms over `field`.
    pub fn sum<'a>(field: BaseField, forms: impl IntoIterator<Item = &'a QForm>) -> Result<Self, FormError> {
        forms.into_iter().try_fold(Self::zero(field), |acc, f| acc.try_orth(f))
    }

    /// Parses `"1,-2,3"` or the Pfister shorthand `"<<a,b,c>>"`.
    pub fn parse(field: BaseField, s: &str) -> Result<Self, FormError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("<<").and_then(|r| r.strip_suffix(">>")) {
            return Self::pfister(field, &parse_ints(inner)?);
        }
        let inner = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')).unwrap_or(s);
        if inner.trim().is_empty() {
            return Ok(Self::zero(field));
        }
        Self::new(field, parse_ints(inner)?)
    }
}

/// Parses a comma-separated list of integers.
pub fn parse_ints(s: &str) -> Result<Vec<i64>, FormError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| FormError::Parse(format!("`{}`: {e}", t.trim()))))
        .collect()
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for QForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &QForm {
    type Output = QForm;
    fn add(self, rhs: &QForm) -> QForm {
        self.try_orth(rhs).expect("field mismatch in orthogonal sum")
    }
}

impl Neg for &QForm {
    type Output = QForm;
    fn neg(self) -> QForm {
        QForm { field: self.field, entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl Sub for &QForm {
    type Output = QForm;
    fn sub(self, rhs: &QForm) -> QForm {
        self + &(-rhs)
    }
}

impl Mul for &QForm {
    type Output = QForm;
    fn mul(self, rhs: &QForm) -> QForm {
        self.try_tensor(rhs).expect("tensor product within field and size limits")
    }
}

/// The quaternion algebra `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: i64,
    pub b: i64,
}

/// Norm and pure (trace-zero) norm of a quaternion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionForms {
    pub norm: QForm,
    pub pure: QForm,
}

impl Quaternion {
    pub fn new(a: i64, b: i64) -> Result<Self, FormError> {
        if a == 0 || b == 0 {
            return Err(FormError::ZeroEntry);
        }
        Ok(Self { a, b })
    }

    /// The split algebra `(1, 1)`.
    pub fn split() -> Self {
        Self { a: 1, b: 1 }
    }

    /// Hamilton's quaternions `(-1, -1)`.
    pub fn hamilton() -> Self {
        Self { a: -1, b: -1 }
    }

    /// `norm = <<a,b>> = <1,-a,-b,ab>`, `pure = <-a,-b,ab>`.
    pub fn forms(&self, field: BaseField) -> Result<QuaternionForms, FormError> {
        let pure = QForm::new(field, [-self.a, -self.b])?;
        let ab = field.mul(field.class_of(self.a as i128)?, field.class_of(self.b as i128)?)?;
        let pure = pure.try_orth(&QForm::new(field, [ab])?)?;
        let norm = QForm::ones(field, 1).try_orth(&pure)?;
        Ok(QuaternionForms { norm, pure })
    }

    pub fn norm(&self, field: BaseField) -> QForm {
        self.forms(field).expect("nonzero quaternion symbols").norm
    }

    pub fn pure(&self, field: BaseField) -> QForm {
        self.forms(field).expect("nonzero quaternion symbols").pure
    }

    /// Brauer class over `field`: the places where `(a, b)_v = -1`.
    pub fn brauer_class(&self, field: BaseField) -> BrauerClass2 {
        let places: Vec<Place> = match field {
            BaseField::R => vec![Place::Infinity],
            BaseField::Q => {
                let mut ps: Vec<u64> = prime_divisors(self.a);
                ps.extend(prime_divisors(self.b));
                ps.push(2);
                ps.sort_unstable();
                ps.dedup();
                ps.into_iter().map(Place::Prime).chain([Place::Infinity]).collect()
            }
        };
        let ramified = places
            .into_iter()
            .filter(|&v| hilbert::hilbert_unchecked(self.a as i128, self.b as i128, v) == -1)
            .collect();
        BrauerClass2 { ramified }
    }

    pub fn is_split(&self, field: BaseField) -> bool {
        self.brauer_class(field).is_split()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for Quaternion {
    type Err = FormError;
    fn from_str(s: &str) -> Result<Self, FormError> {
        match parse_ints(s)?.as_slice() {
            &[a, b] => Quaternion::new(a, b),
            _ => Err(FormError::Parse(format!("quaternion symbol `{s}` needs two entries a,b"))),
        }
    }
}

/// Sum of Brauer classes.
pub fn brauer_sum(field: BaseField, qs: &[Quaternion]) -> BrauerClass2 {
    qs.iter().fold(BrauerClass2::split(), |acc, q| acc.add(&q.brauer_class(field)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pfister_expansions() {
        assert_eq!(QForm::pfister(BaseField::Q, &[7]).unwrap(), QForm::q(&[1, -7]));
        assert_eq!(QForm::pfister(BaseField::Q, &[-1, -1]).unwrap(), QForm::q(&[1, 1, 1, 1]));
        assert_eq!(QForm::pfister(BaseField::Q, &[2, 3, 5]).unwrap().dim(), 8);
    }

    #[test]
    fn tensor_with_hyperbolic_plane() {
        let t = &QForm::q(&[1, -1]) * &QForm::q(&[5, 7]);
        assert_eq!(t, QForm::q(&[5, 7, -5, -7]));
        assert!(t.is_hyperbolic());
    }

    #[test]
    fn quaternion_forms_expand() {
        let h = Quaternion::hamilton().forms(BaseField::Q).unwrap();
        assert_eq!(h.norm, QForm::q(&[1, 1, 1, 1]));
        assert_eq!(h.pure, QForm::q(&[1, 1, 1]));
        assert_eq!(Quaternion::new(-1, -3).unwrap().pure(BaseField::Q), QForm::q(&[1, 3, 3]));
        assert_eq!(Quaternion::new(1, 5).unwrap().norm(BaseField::Q).witt_index(), 2);
    }

    #[test]
    fn brauer_classes() {
        let h = Quaternion::hamilton().brauer_class(BaseField::Q);
        assert_eq!(h.ramified.iter().copied().collect::<Vec<_>>(), vec![Place::Prime(2), Place::Infinity]);
        assert!(brauer_sum(BaseField::Q, &[Quaternion::hamilton(), Quaternion::hamilton()]).is_split());
        assert!(Quaternion::new(1, 7).unwrap().is_split(BaseField::Q));
        assert_eq!(Quaternion::hamilton().brauer_class(BaseField::R).ramified.len(), 1);
    }

    #[test]
    fn zero_entries_rejected() {
        assert_eq!(QForm::new(BaseField::Q, [1, 0]), Err(FormError::ZeroEntry));
        assert_eq!(Quaternion::new(0, 1), Err(FormError::ZeroEntry));
    }

    #[test]
    fn field_mismatch_rejected() {
        let e = QForm::q(&[1]).try_orth(&QForm::r(&[1]));
        assert_eq!(e, Err(FormError::FieldMismatch(BaseField::Q, BaseField::R)));
    }

    #[test]
    fn real_entries_reduce_to_signs() {
        assert_eq!(QForm::r(&[5, -3, 2]).entries(), &[1, -1, 1]);
    }

    #[test]
    fn parse_and_display() {
        let f = QForm::parse(BaseField::Q, "1,-2,12").unwrap();
        assert_eq!(f.to_string(), "1,-2,3");
        let p = QForm::parse(BaseField::Q, "<<-1,-1>>").unwrap();
        assert_eq!(p, QForm::q(&[1, 1, 1, 1]));
        assert!(QForm::parse(BaseField::Q, "1,x").is_err());
        assert_eq!("-1,-3".parse::<Quaternion>().unwrap(), Quaternion { a: -1, b: -3 });
    }

    #[test]
    fn rational_diagonal_classes() {
        use crate::scalar::rat;
        let f = QForm::from_diagonal(&[rat(2, 3), rat(-8, 1)]).unwrap();
        assert_eq!(f, QForm::q(&[6, -2]));
        let r = QForm::from_diagonal(&[0.5f64, -3.0]).unwrap();
        assert_eq!(r, QForm::r(&[1, -1]));
    }
}
