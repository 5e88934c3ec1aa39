//! Reduced Killing forms of E8 groups built from four quaternion algebras and a scalar `c`,
//! the Witt invariant `kappa`, the Rost class and the Tits-construction variant.
//!
//! Throughout, `N_i` is the norm form of `Q_i`, `Q'_i` its pure part, and
//! `<<c>> = <1, -c>`. Differences of forms are taken in the Witt ring.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::qform::{brauer_sum, prime_divisors, BaseField, FormError, ILevel, QForm, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KillError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("phi3 entries {phi3:?} are not a prefix of phi5 entries {phi5:?}")]
    NotPrefix { phi3: [i64; 3], phi5: [i64; 5] },
    #[error("the Rost class is nonzero")]
    RostNonzero,
    #[error("real classification needs field R")]
    NotReal,
    #[error("internal invariant failed: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T> = std::result::Result<T, KillError>;

/// Quaternion algebras `Q_1..Q_4` and a scalar `c` over Q or R.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct E8Input {
    pub field: BaseField,
    pub q: [Quaternion; 4],
    pub c: i64,
}

impl E8Input {
    pub fn new(field: BaseField, q: [Quaternion; 4], c: i64) -> Result<Self> {
        for x in &q {
            Quaternion::new(x.a, x.b)?;
        }
        let c = field.class_of(c as i128)?;
        Ok(Self { field, q, c })
    }

    pub fn norms(&self) -> [QForm; 4] {
        self.q.map(|x| x.norm(self.field))
    }

    pub fn pures(&self) -> [QForm; 4] {
        self.q.map(|x| x.pure(self.field))
    }

    /// `<<c>>`.
    pub fn c_pfister(&self) -> QForm {
        QForm::pfister(self.field, &[self.c]).expect("nonzero c")
    }

    /// Input with quaternions reordered as `q[perm[0]], ..., q[perm[3]]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Self { q: perm.map(|i| self.q[i]), ..*self }
    }

    pub fn split_count(&self) -> usize {
        self.q.iter().filter(|x| x.is_split(self.field)).count()
    }
}

const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
const PAIRS: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

fn sum(field: BaseField, forms: impl IntoIterator<Item = QForm>) -> QForm {
    forms.into_iter().fold(QForm::zero(field), |acc, f| &acc + &f)
}

fn product(forms: &[&QForm]) -> QForm {
    forms[1..].iter().fold(forms[0].clone(), |acc, f| &acc * *f)
}

/// `sum Q'_i + sum_{i<j<l} Q'_i Q'_j Q'_l`, of dimension 120.
pub fn pure_core(input: &E8Input) -> QForm {
    let p = input.pures();
    let singles = sum(input.field, p.iter().cloned());
    let triples = sum(input.field, TRIPLES.iter().map(|t| product(&[&p[t[0]], &p[t[1]], &p[t[2]]])));
    &singles + &triples
}

fn twice(field: BaseField) -> QForm {
    QForm::new(field, [2]).expect("2 is nonzero")
}

/// `8<2c> - <2><1,-c>(sum Q'_i + sum Q'_i Q'_j Q'_l)`, a 248-dimensional diagonal form.
pub fn red_killing_form(input: &E8Input) -> QForm {
    let f = input.field;
    let lead = QForm::new(f, [2 * input.c]).expect("nonzero").times(8);
    let tail = &(&twice(f) * &input.c_pfister()) * &pure_core(input);
    &lead - &tail
}

/// `<2>(8<1> - redkill)` evaluated from an arbitrary reduced Killing form.
pub fn kappa_from_redkill(redkill: &QForm) -> QForm {
    let f = redkill.field();
    &twice(f) * &(&QForm::ones(f, 8) - redkill)
}

/// `<<c>>[4 sum N_i - 2 sum N_i N_j + sum N_i N_j N_l]`, of dimension 1024.
pub fn kappa_expanded(input: &E8Input) -> QForm {
    let f = input.field;
    let n = input.norms();
    let ones = sum(f, n.iter().map(|x| x.times(4)));
    let twos = sum(f, PAIRS.iter().map(|p| (&n[p[0]] * &n[p[1]]).times(2)));
    let threes = sum(f, TRIPLES.iter().map(|t| product(&[&n[t[0]], &n[t[1]], &n[t[2]]])));
    &input.c_pfister() * &(&(&ones - &twos) + &threes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kappa {
    pub form: QForm,
    pub i_level: ILevel,
}

/// `kappa`, after checking that the expanded formula and `<2>(8 - redkill)` agree and lie in `I^5`.
pub fn kappa(input: &E8Input) -> Result<Kappa> {
    let form = kappa_expanded(input);
    if !form.witt_equal(&kappa_from_redkill(&red_killing_form(input)))? {
        return Err(KillError::Inconsistent("kappa differs from <2>(8 - redkill)"));
    }
    let i_level = form.i_level();
    if !i_level.at_least(5) {
        return Err(KillError::Inconsistent("kappa outside I^5"));
    }
    Ok(Kappa { form, i_level })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RostClass {
    /// `<<c>> (N_1 + N_2 + N_3 + N_4)`, a form in `I^3`.
    pub representative: QForm,
    pub is_zero: bool,
}

pub fn rost_class(input: &E8Input) -> RostClass {
    let representative = &input.c_pfister() * &sum(input.field, input.norms());
    let is_zero = representative.e3_zero().expect("product of I^1 and I^2 lies in I^3");
    RostClass { representative, is_zero }
}

/// Outcome of an existential search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Found(i64),
    NotWitnessed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DwhReport {
    /// `kappa = 2 <<c>> N_1 N_2 N_4`.
    pub main: bool,
    pub i_level: ILevel,
    pub in_i8: bool,
    /// The same equality for the index triples `123, 124, 134, 234`.
    pub triples: [bool; 4],
    /// `<<c>>(N_1 - N_2)^2 = <<c>>(N_3 - N_4)^2`.
    pub squares_agree: bool,
    /// `<<c>> N_1 N_2 (N_3 - N_4) = 0`.
    pub mixed_vanishes: bool,
    /// `<<c>> N_1 (N_3 - N_4)^2 = 4 <<c>> N_1 (N_1 - N_2)`.
    pub square_reduces: bool,
    /// Some `m` with `<<c>>(N_1 - N_2) = <m><<c>>(N_3 - N_4)`.
    pub scalar: Witness,
}

impl DwhReport {
    /// Parts that must hold; the scalar search is reported separately.
    pub fn passed(&self) -> bool {
        self.main && self.in_i8 && self.triples.iter().all(|&t| t) && self.identities_hold()
    }

    pub fn identities_hold(&self) -> bool {
        self.squares_agree && self.mixed_vanishes && self.square_reduces
    }
}

/// Square classes built from `-1`, `2` and the primes dividing the input.
fn scalar_candidates(input: &E8Input) -> Vec<i64> {
    if input.field == BaseField::R {
        return vec![1, -1];
    }
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    primes.extend(prime_divisors(input.c));
    for x in &input.q {
        primes.extend(prime_divisors(x.a));
        primes.extend(prime_divisors(x.b));
    }
    let mut out = vec![1i64];
    for p in primes {
        let more: Vec<i64> = out.iter().filter_map(|&m| m.checked_mul(p as i64)).collect();
        out.extend(more);
    }
    let neg: Vec<i64> = out.iter().map(|m| -m).collect();
    out.extend(neg);
    out
}

/// Checks the reduction of `kappa` to `2 <<c>> N_1 N_2 N_4` for inputs with zero Rost class.
pub fn dwh_check(input: &E8Input) -> Result<DwhReport> {
    if !rost_class(input).is_zero {
        return Err(KillError::RostNonzero);
    }
    let f = input.field;
    let k = kappa(input)?.form;
    let n = input.norms();
    let cp = input.c_pfister();
    let two = QForm::ones(f, 2);
    let target = |t: [usize; 3]| &(&two * &cp) * &product(&[&n[t[0]], &n[t[1]], &n[t[2]]]);
    let main = k.witt_equal(&target([0, 1, 3]))?;
    let triples = TRIPLES.map(|t| k.witt_equal(&target(t)).expect("same field"));
    let d12 = &n[0] - &n[1];
    let d34 = &n[2] - &n[3];
    let squares_agree = (&cp * &(&d12 * &d12)).witt_equal(&(&cp * &(&d34 * &d34)))?;
    let mixed_vanishes = (&(&cp * &(&n[0] * &n[1])) * &d34).is_hyperbolic();
    let lhs = &(&cp * &n[0]) * &(&d34 * &d34);
    let rhs = (&(&cp * &n[0]) * &d12).times(4);
    let square_reduces = lhs.witt_equal(&rhs)?;
    let (left, right) = (&cp * &d12, &cp * &d34);
    let scalar = scalar_candidates(input)
        .into_iter()
        .find(|&m| left.witt_equal(&right.scale(m)).expect("same field"))
        .map_or(Witness::NotWitnessed, Witness::Found);
    let i_level = k.i_level();
    Ok(DwhReport {
        main,
        in_i8: i_level.at_least(8),
        i_level,
        triples,
        squares_agree,
        mixed_vanishes,
        square_reduces,
        scalar,
    })
}

/// Trace form on the skew elements of the tensor product: `<-1>(sum Q'_i + sum Q'_i Q'_j Q'_l)`.
pub fn d8_adjoint_trace(input: &E8Input) -> QForm {
    pure_core(input).scale(-1)
}

/// Half-spin contribution `<2><c m2> sum Q'_i Q'_j Q'_l + <c m4> sum(<2> N_i + <6>)`.
pub fn d8_half_spin(input: &E8Input, m2: i64, m4: i64) -> Result<QForm> {
    let f = input.field;
    let p = input.pures();
    let triples = sum(f, TRIPLES.iter().map(|t| product(&[&p[t[0]], &p[t[1]], &p[t[2]]])));
    let fives = sum(f, input.norms().iter().map(|x| &(&twice(f) * x) + &QForm::new(f, [6]).expect("nonzero")));
    let a = &twice(f) * &triples.try_scale(input.c)?.try_scale(m2)?;
    Ok(&a + &fives.try_scale(input.c)?.try_scale(m4)?)
}

/// `<2>` times the adjoint trace form plus the half-spin contribution.
pub fn d8_decomposition(input: &E8Input, m2: i64, m4: i64) -> Result<QForm> {
    Ok(&(&twice(input.field) * &d8_adjoint_trace(input)) + &d8_half_spin(input, m2, m4)?)
}

/// Sign pairs `(m2, m4)` for which the decomposition over R at `c = 1` with exactly one
/// Hamilton factor has the split signature 8.
pub fn sign_determination() -> Vec<(i64, i64)> {
    let h = Quaternion::hamilton();
    let s = Quaternion::split();
    let input = E8Input::new(BaseField::R, [h, s, s, s], 1).expect("valid");
    let mut out = Vec::new();
    for m2 in [1, -1] {
        for m4 in [1, -1] {
            if d8_decomposition(&input, m2, m4).expect("small entries").signature() == 8 {
                out.push((m2, m4));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pf4Report {
    pub half_spin: QForm,
    /// `8 q_1 q_2`.
    pub target: QForm,
    pub witt_equal: bool,
}

/// Half-spin form at `Q_3 = Q_1`, `Q_4 = Q_2`, `c = m2 = m4 = 1`, compared with `8 q_1 q_2`.
pub fn example_pf4(field: BaseField, q1: Quaternion, q2: Quaternion) -> Result<Pf4Report> {
    let input = E8Input::new(field, [q1, q2, q1, q2], 1)?;
    let half_spin = d8_half_spin(&input, 1, 1)?;
    let target = (&q1.norm(field) * &q2.norm(field)).times(8);
    Ok(Pf4Report { witt_equal: half_spin.witt_equal(&target)?, half_spin, target })
}

/// Tits-construction data: Pfister slots for `gamma3`, `phi3` and `phi5`, with `phi3 | phi5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TitsInput {
    pub field: BaseField,
    pub gamma3: [i64; 3],
    pub phi3: [i64; 3],
    pub phi5: [i64; 5],
}

impl TitsInput {
    pub fn new(field: BaseField, gamma3: [i64; 3], phi3: [i64; 3], phi5: [i64; 5]) -> Result<Self> {
        if phi5[..3] != phi3 {
            return Err(KillError::NotPrefix { phi3, phi5 });
        }
        for v in gamma3.iter().chain(&phi5) {
            field.class_of(*v as i128)?;
        }
        Ok(Self { field, gamma3, phi3, phi5 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TitsReport {
    pub redkill: QForm,
    pub kappa: QForm,
    pub kappa_i_level: ILevel,
    pub signature: i64,
    /// Arason invariant of `gamma3 - phi3` vanishes.
    pub rost15_zero: bool,
}

/// `<2>[8 - (4 gamma3 + 4 phi3 + <2> gamma3 (phi5 - phi3))]`.
pub fn tits_construction(t: &TitsInput) -> Result<TitsReport> {
    let f = t.field;
    let g3 = QForm::pfister(f, &t.gamma3)?;
    let p3 = QForm::pfister(f, &t.phi3)?;
    let p5 = QForm::pfister(f, &t.phi5)?;
    let inner = &(&g3.times(4) + &p3.times(4)) + &(&(&twice(f) * &g3) * &(&p5 - &p3));
    let redkill = &twice(f) * &(&QForm::ones(f, 8) - &inner);
    let kappa = kappa_from_redkill(&redkill);
    Ok(TitsReport {
        kappa_i_level: kappa.i_level(),
        signature: redkill.signature(),
        rost15_zero: (&g3 - &p3).e3_zero()?,
        redkill,
        kappa,
    })
}

/// Real forms of E8 by the signature of the Killing form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RealClass {
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "e8_minus24")]
    E8Minus24,
    #[serde(rename = "compact")]
    Compact,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl RealClass {
    pub fn from_signature(sig: i64) -> Self {
        match sig {
            8 => RealClass::Split,
            -24 => RealClass::E8Minus24,
            -248 => RealClass::Compact,
            _ => RealClass::NotApplicable,
        }
    }
}

/// Tits index suggested by the isotropy visible in the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexHint {
    Split,
    /// Nodes 1, 6, 7, 8 circled; anisotropic kernel of type D4.
    KernelD4,
    /// Nodes 1, 8 circled; anisotropic kernel of type D6.
    KernelD6,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub real_class: RealClass,
    /// Some `Q_i` splits, giving a `PGL_2` subgroup.
    pub isotropic: bool,
    /// Two `Q_i` split or some triple product splits.
    pub rank_two: bool,
    pub index_hint: IndexHint,
}

/// Over R the real class also supplies isotropy: the split form has real rank 8 and
/// `E8(-24)` has real rank 4.
pub fn classify(input: &E8Input) -> Classification {
    let f = input.field;
    let real_class = match f {
        BaseField::R => RealClass::from_signature(red_killing_form(input).signature()),
        BaseField::Q => RealClass::NotApplicable,
    };
    let real_rank_two = matches!(real_class, RealClass::Split | RealClass::E8Minus24);
    let split_count = input.split_count();
    let isotropic = split_count >= 1 || real_rank_two;
    let rank_two = split_count >= 2
        || real_rank_two
        || TRIPLES.iter().any(|t| brauer_sum(f, &t.map(|i| input.q[i])).is_split());
    let rost = rost_class(input);
    let index_hint = if isotropic && rost.is_zero {
        IndexHint::Split
    } else if rank_two {
        match rost.representative.e3_symbol_length().expect("in I^3") {
            0 => IndexHint::Split,
            1 => IndexHint::KernelD4,
            _ => IndexHint::KernelD6,
        }
    } else {
        IndexHint::Undetermined
    };
    Classification { real_class, isotropic, rank_two, index_hint }
}

/// Real class of an input over R.
pub fn real_class(input: &E8Input) -> Result<RealClass> {
    match input.field {
        BaseField::R => Ok(classify(input).real_class),
        BaseField::Q => Err(KillError::NotReal),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillingReport {
    pub redkill: QForm,
    pub kappa: QForm,
    pub kappa_i_level: ILevel,
    pub rost_zero: bool,
    pub signature: i64,
    pub real_class: RealClass,
    pub index_hint: IndexHint,
}

pub fn killing_report(input: &E8Input) -> Result<KillingReport> {
    let redkill = red_killing_form(input);
    let k = kappa(input)?;
    let class = classify(input);
    Ok(KillingReport {
        signature: redkill.signature(),
        redkill,
        kappa: k.form,
        kappa_i_level: k.i_level,
        rost_zero: rost_class(input).is_zero,
        real_class: class.real_class,
        index_hint: class.index_hint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Quaternion {
        Quaternion::hamilton()
    }

    fn s() -> Quaternion {
        Quaternion::split()
    }

    fn real(q: [Quaternion; 4], c: i64) -> E8Input {
        E8Input::new(BaseField::R, q, c).unwrap()
    }

    #[test]
    fn dimensions() {
        let i = real([h(), s(), h(), s()], -1);
        assert_eq!(red_killing_form(&i).dim(), 248);
        assert_eq!(kappa_expanded(&i).dim(), 1024);
        assert_eq!(pure_core(&i).dim(), 120);
    }

    #[test]
    fn real_signatures() {
        assert_eq!(red_killing_form(&real([h(); 4], -1)).signature(), -248);
        assert_eq!(red_killing_form(&real([h(), s(), s(), s()], -1)).signature(), -24);
        assert_eq!(red_killing_form(&real([h(); 4], 1)).signature(), 8);
        assert_eq!(real_class(&real([h(); 4], -1)), Ok(RealClass::Compact));
    }

    #[test]
    fn kappa_on_real_classes() {
        let k = kappa(&real([h(); 4], -1)).unwrap();
        assert!(k.form.witt_equal(&QForm::ones(BaseField::R, 256)).unwrap());
        assert_eq!(k.i_level, ILevel::Exact(8));
        let k = kappa(&real([h(), s(), s(), s()], -1)).unwrap();
        assert_eq!(k.i_level, ILevel::Exact(5));
        let q = E8Input::new(BaseField::Q, [Quaternion::new(3, 5).unwrap(); 4], 4).unwrap();
        assert_eq!(kappa(&q).unwrap().i_level, ILevel::Hyperbolic);
    }

    #[test]
    fn rost_examples() {
        let a = Quaternion::new(2, 3).unwrap();
        let b = Quaternion::new(-1, 7).unwrap();
        let i = E8Input::new(BaseField::Q, [a, b, a, b], 5).unwrap();
        assert!(rost_class(&i).is_zero);
        assert!(!rost_class(&real([h(), s(), s(), s()], -1)).is_zero);
        assert!(rost_class(&real([h(); 4], 1)).is_zero);
    }

    #[test]
    fn dwh_example() {
        let a = h();
        let b = Quaternion::new(-1, -3).unwrap();
        let i = E8Input::new(BaseField::Q, [a, b, a, b], -1).unwrap();
        let r = dwh_check(&i).unwrap();
        assert!(r.passed(), "{r:?}");
        let n = i.norms();
        let eight = &(&QForm::ones(BaseField::Q, 8) * &i.c_pfister()) * &(&n[0] * &n[1]);
        assert!(kappa(&i).unwrap().form.witt_equal(&eight).unwrap());
        assert_eq!(dwh_check(&real([h(), s(), s(), s()], -1)), Err(KillError::RostNonzero));
    }

    #[test]
    fn d8_pieces() {
        assert_eq!(sign_determination(), vec![(1, 1)]);
        let i = E8Input::new(BaseField::Q, [Quaternion::new(2, 5).unwrap(), h(), Quaternion::new(-3, 7).unwrap(), s()], 3).unwrap();
        let full = d8_decomposition(&i, 1, 1).unwrap();
        assert_eq!(full.dim(), 248);
        assert!(full.witt_equal(&red_killing_form(&i)).unwrap());
        let split = E8Input::new(BaseField::Q, [s(); 4], 1).unwrap();
        assert!(d8_half_spin(&split, 1, 1).unwrap().is_hyperbolic());
    }

    #[test]
    fn pf4_examples() {
        let r = example_pf4(BaseField::Q, h(), h()).unwrap();
        assert!(r.witt_equal);
        assert!(r.target.witt_equal(&QForm::ones(BaseField::Q, 128)).unwrap());
        assert!(example_pf4(BaseField::Q, h(), Quaternion::new(-1, -3).unwrap()).unwrap().witt_equal);
        let r = example_pf4(BaseField::Q, s(), Quaternion::new(2, 3).unwrap()).unwrap();
        assert!(r.witt_equal && r.half_spin.is_hyperbolic());
    }

    #[test]
    fn tits_examples() {
        let t = TitsInput::new(BaseField::Q, [-1; 3], [-1; 3], [-1; 5]).unwrap();
        let r = tits_construction(&t).unwrap();
        let p5 = QForm::pfister(BaseField::Q, &[-1; 5]).unwrap();
        assert!(r.kappa.witt_equal(&p5.times(8)).unwrap());
        assert_eq!(r.kappa_i_level, ILevel::Exact(8));
        assert!(r.rost15_zero);
        let rt = tits_construction(&TitsInput::new(BaseField::R, [-1; 3], [-1; 3], [-1; 5]).unwrap()).unwrap();
        assert_eq!(rt.signature, -248);
        let split = tits_construction(&TitsInput::new(BaseField::Q, [1; 3], [1; 3], [1, 1, 1, 7, 3]).unwrap()).unwrap();
        assert!(split.kappa.is_hyperbolic());
        assert!(matches!(TitsInput::new(BaseField::Q, [1; 3], [2, 1, 1], [1; 5]), Err(KillError::NotPrefix { .. })));
    }

    #[test]
    fn index_hints() {
        assert_eq!(classify(&real([h(); 4], 1)).index_hint, IndexHint::Split);
        let one = classify(&real([h(), s(), s(), s()], -1));
        assert_eq!((one.real_class, one.index_hint), (RealClass::E8Minus24, IndexHint::KernelD4));
        let all = classify(&real([h(); 4], -1));
        assert_eq!((all.real_class, all.index_hint), (RealClass::Compact, IndexHint::Undetermined));
    }
}
