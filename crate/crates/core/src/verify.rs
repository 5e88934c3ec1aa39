//! Named checks grouped into suites, each reporting pass, fail, not witnessed or skipped.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chevalley::{branching_check, cartan_restriction_witt, chevalley_basis, reduced_killing_form, LieAlgebra};
use crate::descent::{conjugation_iso, crux_form, descent_form, kronecker_iso, sl2_report, QuadExtMatrix};
use crate::e8kill::{
    classify, d8_adjoint_trace, d8_half_spin, dwh_check, example_pf4, kappa, red_killing_form, sign_determination,
    tits_construction, E8Input, IndexHint, RealClass, TitsInput, Witness,
};
use crate::jinv::{default_order, hspin_params, low_coefficient_trace, search_equality, FactorCount};
use crate::linalg::Matrix;
use crate::qform::{hilbert_symbol, BaseField, ILevel, Place, QForm, Quaternion};
use crate::rootsys::{
    c4_centralizer, embedding_table, pgl2x3_through_c4_consistent, rost_multiplier, verify_embedding, Embedding,
    RootSystem, SystemLabel,
};
use crate::scalar::{int, rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Roots,
    Chevalley,
    Qform,
    Descent,
    E8kill,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Roots, Suite::Chevalley, Suite::Qform, Suite::Descent, Suite::E8kill, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roots => "roots",
            Suite::Chevalley => "chevalley",
            Suite::Qform => "qform",
            Suite::Descent => "descent",
            Suite::E8kill => "e8kill",
            Suite::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// `all` or a single suite name.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotWitnessed,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotWitnessed => "not_witnessed",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub suite: Suite,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_witnessed: usize,
    pub skipped: usize,
}

pub fn summarize(results: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for r in results {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::NotWitnessed => s.not_witnessed += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

type Outcome = (Status, String);
type Check = (&'static str, fn() -> Outcome);

fn verdict(ok: bool, details: impl Into<String>) -> Outcome {
    (if ok { Status::Pass } else { Status::Fail }, details.into())
}

/// Ids of the checks in a suite, in run order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    checks(suite).into_iter().map(|(id, _)| id).collect()
}

pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    checks(suite)
        .into_par_iter()
        .map(|(id, f)| {
            let (status, details) = catch_unwind(AssertUnwindSafe(f))
                .unwrap_or_else(|_| (Status::Fail, "check panicked".to_string()));
            CheckResult { id, suite, status, details }
        })
        .collect()
}

pub fn run(suites: &[Suite]) -> Vec<CheckResult> {
    suites.iter().flat_map(|&s| run_suite(s)).collect()
}

fn checks(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Roots => vec![
            ("d8_in_e8_pairings", || pairings(Embedding::D8InE8)),
            ("a1c4_in_d8_pairings", || pairings(Embedding::A1C4InD8)),
            ("a1c4_in_e8_pairings", || pairings(Embedding::A1C4InE8)),
            ("pgl2x4_in_e8_pairings", || pairings(Embedding::Pgl2x4InE8)),
            ("a1c4_composition_through_d8", composition),
            ("pgl2x3_through_c4", || verdict(pgl2x3_through_c4_consistent(), "three A1 rows as C4 coroots")),
            ("centralizer_d4", centralizer_d4),
            ("centralizer_orthogonal_set", centralizer_orthogonal),
            ("centralizer_highest_is_e8_highest", centralizer_highest),
            ("rost_mult_c4", || rost(Embedding::A1C4InE8, SystemLabel::C4, 1)),
            ("rost_mult_d8", || rost(Embedding::D8InE8, SystemLabel::D8, 1)),
            ("rost_mult_a1", || rost(Embedding::A1C4InE8, SystemLabel::A1, 4)),
        ],
        Suite::Chevalley => vec![
            ("e8_opposite_root_values", || opposite_values(e8(), 60)),
            ("d8_opposite_root_values", || opposite_values(&chevalley_basis(&RootSystem::new(SystemLabel::D8)).expect("D8"), 28)),
            ("e8_cartan_restriction", e8_cartan),
            ("e8_reduced_killing_form", e8_full_form),
            ("d8_branching", d8_branching),
            ("e8_jacobi_exhaustive", || verdict(e8().jacobi_exhaustive(), "all ordered basis triples")),
        ],
        Suite::Qform => vec![
            ("hilbert_product_formula", hilbert_product),
            ("real_i_levels", real_i_levels),
            ("square_class_simplifications", simplifications),
            ("twelve_dim_index_table", twelve_dim_table),
            ("twelve_dim_length_two_row", || {
                (Status::Skipped, "symbol length 2 does not occur in H^3 of Q or R".into())
            }),
            ("i_n_examples", i_n_examples),
        ],
        Suite::Descent => vec![
            ("kronecker_iso", || {
                let r = kronecker_iso();
                verdict(r.passed(), format!("{} checks, {} failures", r.checked, r.failures.len()))
            }),
            ("conjugation_iso", || {
                let r = conjugation_iso();
                verdict(r.passed(), format!("{} checks, {} failures", r.checked, r.failures.len()))
            }),
            ("sl2_image_matches", || verdict(sl2_report().equals_displayed, "blocks +1 at (1,2), -1 at (3,4)")),
            ("sl2_image_square_zero", || verdict(sl2_report().square_zero, "m^2 = 0")),
            ("sl2_image_skew", || verdict(sl2_report().sigma16_skew, "sigma16(m) + m = 0")),
            ("quadratic_descent_example", quadratic_example),
            ("quadratic_descent_random", quadratic_random),
            ("crux_hyperbolic_random", crux_random),
        ],
        Suite::E8kill => vec![
            ("real_signature_c_plus", || signature_row(1, &[0, 1, 2, 3, 4], 8)),
            ("real_signature_row_0", || signature_row(-1, &[0], 8)),
            ("real_signature_row_1", || signature_row(-1, &[1], -24)),
            ("real_signature_row_2", || signature_row(-1, &[2], 8)),
            ("real_signature_row_3", || signature_row(-1, &[3], -24)),
            ("real_signature_row_4", || signature_row(-1, &[4], -248)),
            ("kappa_real_split", || kappa_real(0, ILevel::Hyperbolic, 0)),
            ("kappa_real_minus24", || kappa_real(1, ILevel::Exact(5), 32)),
            ("kappa_real_compact", || kappa_real(4, ILevel::Exact(8), 256)),
            ("kappa_in_i5_random", kappa_random),
            ("permutation_invariance", permutation_invariance),
            ("rost_zero_reduction", || rost_zero(false)),
            ("rost_zero_scalar", || rost_zero(true)),
            ("half_spin_signs", || verdict(sign_determination() == vec![(1, 1)], format!("{:?}", sign_determination()))),
            ("half_spin_pfister", pf4),
            ("tits_kappa_8phi5", tits_rational),
            ("tits_compact_signature", tits_real),
            ("index_hints", index_hints),
        ],
        Suite::Appendix => vec![
            ("search_s2", || search(2)),
            ("search_s3", || search(3)),
            ("search_s4", || search(4)),
            ("hspin_k1_bound", hspin_bounds),
            ("low_coefficient_trace", trace),
        ],
    }
}

fn e8() -> &'static LieAlgebra {
    static E8: OnceLock<LieAlgebra> = OnceLock::new();
    E8.get_or_init(|| chevalley_basis(&RootSystem::new(SystemLabel::E8)).expect("E8 Chevalley basis"))
}

fn pairings(e: Embedding) -> Outcome {
    let r = verify_embedding(&embedding_table(e));
    verdict(
        r.is_consistent(),
        format!("{}: {} pairs, {} mismatches, {} off lattice", r.name, r.pairs.len(), r.mismatches, r.off_lattice.len()),
    )
}

fn composition() -> Outcome {
    let via = embedding_table(Embedding::A1C4InD8).then(&embedding_table(Embedding::D8InE8));
    let direct = embedding_table(Embedding::A1C4InE8);
    let ok = via.is_ok_and(|m| m.factors.iter().zip(&direct.factors).all(|(a, b)| a.images == b.images));
    verdict(ok, "A1C4 into D8 then D8 into E8 equals A1C4 into E8")
}

fn centralizer_d4() -> Outcome {
    let c = c4_centralizer();
    let s = &c.subsystem;
    let ok = s.roots.len() == 24 && s.type_name() == "D4" && c.rows_simple.iter().all(|&b| b);
    verdict(ok, format!("{} roots of type {}, stored rows simple: {:?}", s.roots.len(), s.type_name(), c.rows_simple))
}

fn centralizer_orthogonal() -> Outcome {
    let c = c4_centralizer();
    verdict(
        c.sigma_orthogonal && c.sigma_sum_is_a1_image,
        format!("orthogonal {}, sum is A1 image {}", c.sigma_orthogonal, c.sigma_sum_is_a1_image),
    )
}

fn centralizer_highest() -> Outcome {
    let c = c4_centralizer();
    verdict(
        c.stored_highest_is_eps_tilde,
        format!(
            "phi1 + 2 phi2 + phi3 + phi4 = {:?}, E8 highest root = {:?}",
            c.highest,
            RootSystem::new(SystemLabel::E8).highest_root()
        ),
    )
}

fn rost(e: Embedding, l: SystemLabel, expected: i64) -> Outcome {
    match rost_multiplier(&embedding_table(e), l) {
        Ok(m) => verdict(m == int(expected), format!("{l} in {}: {m}", e.name())),
        Err(err) => (Status::Fail, err.to_string()),
    }
}

fn opposite_values(lie: &LieAlgebra, expected: i64) -> Outcome {
    let vals = lie.opposite_root_values(&lie.killing_integer());
    let ok = vals.iter().all(|&v| v == expected);
    verdict(ok, format!("{} roots, values {:?}", vals.len(), vals.iter().collect::<std::collections::BTreeSet<_>>()))
}

fn split_input(field: BaseField) -> E8Input {
    E8Input::new(field, [Quaternion::split(); 4], 1).expect("valid")
}

fn e8_cartan() -> Outcome {
    let Ok(form) = cartan_restriction_witt(e8()) else {
        return (Status::Fail, "restriction failed".into());
    };
    let ok = form.witt_equal(&QForm::ones(BaseField::Q, 8)).unwrap_or(false)
        && red_killing_form(&split_input(BaseField::Q)).witt_equal(&form).unwrap_or(false);
    verdict(ok, format!("Cartan part {form}"))
}

fn e8_full_form() -> Outcome {
    let Ok(form) = reduced_killing_form(e8()) else {
        return (Status::Fail, "diagonalization failed".into());
    };
    let ok = form.dim() == 248 && form.witt_equal(&red_killing_form(&split_input(BaseField::Q))).unwrap_or(false);
    verdict(ok, format!("dim {}, signature {}", form.dim(), form.signature()))
}

fn d8_branching() -> Outcome {
    let r = match branching_check(e8(), &embedding_table(Embedding::D8InE8)) {
        Ok(r) => r,
        Err(e) => return (Status::Fail, e.to_string()),
    };
    let split = split_input(BaseField::Q);
    let two = QForm::q(&[2]);
    let half = d8_half_spin(&split, 1, 1).expect("small entries");
    let ok = (r.subalg_dim, r.complement_dim, r.orthogonal_complement_dim) == (120, 128, 128)
        && r.images_are_roots
        && r.subalg_closed
        && r.cross_block_zero
        && r.complement_witt.witt_equal(&half).unwrap_or(false)
        && r.subalg_witt.witt_equal(&(&two * &d8_adjoint_trace(&split))).unwrap_or(false);
    verdict(
        ok,
        format!(
            "dims ({}, {}), complement of dim {}, cross block zero {}",
            r.subalg_dim, r.complement_dim, r.orthogonal_complement_dim, r.cross_block_zero
        ),
    )
}

/// Nonzero non-square integers used for sampled inputs.
const POOL: [i64; 16] = [-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, 11, -13, 15, -15];

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn pick(r: &mut ChaCha8Rng) -> i64 {
    POOL[r.gen_range(0..POOL.len())]
}

fn random_quaternion(r: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(pick(r), pick(r)).expect("nonzero pool")
}

fn random_input(r: &mut ChaCha8Rng) -> E8Input {
    let q = [(); 4].map(|_| random_quaternion(r));
    E8Input::new(BaseField::Q, q, pick(r)).expect("nonzero pool")
}

fn hilbert_product() -> Outcome {
    let places = [2, 3, 5, 7, 11, 13].map(Place::Prime).into_iter().chain([Place::Infinity]);
    let places: Vec<Place> = places.collect();
    let mut bad = Vec::new();
    for &a in &POOL {
        for &b in &POOL {
            let p: i8 = places.iter().map(|&v| hilbert_symbol(a, b, v).expect("nonzero")).product();
            if p != 1 {
                bad.push((a, b));
            }
        }
    }
    verdict(bad.is_empty(), format!("{} pairs, failures {bad:?}", POOL.len() * POOL.len()))
}

fn real_i_levels() -> Outcome {
    let l32 = QForm::ones(BaseField::R, 32).i_level();
    let l256 = QForm::ones(BaseField::R, 256).i_level();
    verdict(l32 == ILevel::Exact(5) && l256 == ILevel::Exact(8), format!("32<1>: {l32}, 256<1>: {l256}"))
}

fn simplifications() -> Outcome {
    let mut ok = QForm::q(&[2]).times(8).witt_equal(&QForm::ones(BaseField::Q, 8)).unwrap_or(false)
        && QForm::q(&[3]).times(4).witt_equal(&QForm::ones(BaseField::Q, 4)).unwrap_or(false);
    for &c in &POOL {
        let a = QForm::pfister(BaseField::Q, &[2 * c]).expect("nonzero").times(2);
        let b = QForm::pfister(BaseField::Q, &[c]).expect("nonzero").times(2);
        ok &= a.witt_equal(&b).unwrap_or(false);
    }
    verdict(ok, "8<2> = 8<1>, 4<3> = 4<1>, 2<<2c>> = 2<<c>>")
}

fn twelve_dim_table() -> Outcome {
    let mut seen = std::collections::BTreeSet::new();
    let mut ok = true;
    let mut r = rng();
    for _ in 0..60 {
        let slots = [pick(&mut r), pick(&mut r), pick(&mut r)];
        let p = QForm::pfister(BaseField::Q, &slots).expect("nonzero");
        let q = &p.scale(pick(&mut r)) + &QForm::hyperbolic(BaseField::Q, 2);
        let (Ok(len), index) = (q.e3_symbol_length(), q.witt_index()) else {
            return (Status::Fail, "form outside I^3".into());
        };
        ok &= matches!((index, len), (2, 1) | (6, 0));
        seen.insert((index, len));
    }
    verdict(ok, format!("observed (index, length) pairs {seen:?}"))
}

fn i_n_examples() -> Outcome {
    let p = |s: &[i64]| QForm::pfister(BaseField::Q, s).expect("nonzero");
    let checks = [
        p(&[-1, -1, -1]).i_level() == ILevel::Exact(3),
        p(&[2, 3, 5]).i_level() == ILevel::Hyperbolic,
        p(&[-1, -1, -1, -1]).i_level() == ILevel::Exact(4),
        QForm::q(&[1, -2]).i_level() == ILevel::Exact(1),
        (&p(&[-1, -1, -1]) - &p(&[-1, -1, -1])).i_level() == ILevel::Hyperbolic,
    ];
    verdict(checks.iter().all(|&b| b), format!("{checks:?}"))
}

fn quadratic_example() -> Outcome {
    let m = Matrix::from_rows(vec![vec![int(0), int(3)], vec![rat(1, 3), int(0)]]);
    match QuadExtMatrix::from_rational(5, &m).and_then(|eta| descent_form(&eta, &crate::descent::antidiagonal(2))) {
        Ok(f) => verdict(f.isometric(&QForm::q(&[6, -30])).unwrap_or(false), format!("{f}")),
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn quadratic_random() -> Outcome {
    let mut r = rng();
    let mut failures = Vec::new();
    for _ in 0..100 {
        let (a, c) = (pick(&mut r), pick(&mut r));
        let m = Matrix::from_rows(vec![vec![int(0), int(c)], vec![rat(1, c), int(0)]]);
        let f = QuadExtMatrix::from_rational(a, &m).and_then(|eta| descent_form(&eta, &crate::descent::antidiagonal(2)));
        let target = &QForm::q(&[2 * c]) * &QForm::q(&[1, -a]);
        if !f.is_ok_and(|f| f.witt_equal(&target).unwrap_or(false)) {
            failures.push((a, c));
        }
    }
    verdict(failures.is_empty(), format!("100 pairs (a, c), failures {failures:?}"))
}

fn crux_random() -> Outcome {
    let mut r = rng();
    let mut failures = Vec::new();
    for _ in 0..50 {
        let (a, b) = (pick(&mut r), pick(&mut r));
        if !crux_form(a, b).is_ok_and(|x| x.witt_index == 4 && x.matches_factorization && x.preserves_planes) {
            failures.push((a, b));
        }
    }
    verdict(failures.is_empty(), format!("50 pairs (a, b), failures {failures:?}"))
}

/// All 16 real patterns with `c` fixed whose number of Hamilton factors lies in `counts`.
fn real_patterns(c: i64, counts: &[usize]) -> Vec<E8Input> {
    (0u32..16)
        .filter(|m| counts.contains(&(m.count_ones() as usize)))
        .map(|m| {
            let q = [0, 1, 2, 3].map(|i| if m >> i & 1 == 1 { Quaternion::hamilton() } else { Quaternion::split() });
            E8Input::new(BaseField::R, q, c).expect("valid")
        })
        .collect()
}

fn signature_row(c: i64, counts: &[usize], expected: i64) -> Outcome {
    let inputs = real_patterns(c, counts);
    let sigs: std::collections::BTreeSet<i64> = inputs.iter().map(|i| red_killing_form(i).signature()).collect();
    verdict(sigs.len() == 1 && sigs.contains(&expected), format!("{} patterns, signatures {sigs:?}", inputs.len()))
}

fn kappa_real(hamiltons: usize, level: ILevel, dim: usize) -> Outcome {
    let input = real_patterns(-1, &[hamiltons])[0];
    match kappa(&input) {
        Ok(k) => {
            let ok = k.i_level == level && k.form.witt_equal(&QForm::ones(BaseField::R, dim)).unwrap_or(false);
            verdict(ok, format!("signature {}, level {}", k.form.signature(), k.i_level))
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn kappa_random() -> Outcome {
    let mut r = rng();
    let mut failures = 0;
    for _ in 0..200 {
        let input = random_input(&mut r);
        if !kappa(&input).is_ok_and(|k| k.i_level.at_least(5)) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("200 rational inputs, {failures} failures"))
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let d = 6 - a - b - c;
                let p = [a, b, c, d];
                if (0..4).all(|i| p.contains(&i)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn permutation_invariance() -> Outcome {
    let mut r = rng();
    let perms = permutations();
    let mut failures = 0;
    for _ in 0..10 {
        let input = random_input(&mut r);
        let base = red_killing_form(&input);
        for p in &perms {
            if !red_killing_form(&input.permuted(*p)).witt_equal(&base).unwrap_or(false) {
                failures += 1;
            }
        }
    }
    verdict(failures == 0, format!("10 inputs x {} permutations, {failures} failures", perms.len()))
}

/// Random inputs with zero Rost class: paired quaternions in all three pairings.
pub fn rost_zero_inputs(n: usize, seed: u64) -> Vec<E8Input> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|k| {
            let (a, b) = (random_quaternion(&mut r), random_quaternion(&mut r));
            let q = match k % 3 {
                0 => [a, b, a, b],
                1 => [a, a, b, b],
                _ => [a, b, b, a],
            };
            E8Input::new(BaseField::Q, q, pick(&mut r)).expect("nonzero pool")
        })
        .collect()
}

fn rost_zero(scalar: bool) -> Outcome {
    let inputs = rost_zero_inputs(100, 0x5eed);
    let reports: Vec<_> = inputs.iter().map(dwh_check).collect();
    if scalar {
        let missing = reports.iter().filter(|r| !matches!(r, Ok(x) if x.scalar != Witness::NotWitnessed)).count();
        let status = if missing == 0 { Status::Pass } else { Status::NotWitnessed };
        return (status, format!("scalar found for {} of 100", 100 - missing));
    }
    let failures = reports.iter().filter(|r| !r.as_ref().is_ok_and(|x| x.passed())).count();
    verdict(failures == 0, format!("100 inputs, {failures} failures"))
}

fn pf4() -> Outcome {
    let h = Quaternion::hamilton();
    let cases = [(h, h), (h, Quaternion::new(-1, -3).expect("nonzero")), (Quaternion::split(), Quaternion::new(2, 3).expect("nonzero"))];
    let ok = cases.iter().all(|&(a, b)| example_pf4(BaseField::Q, a, b).is_ok_and(|r| r.witt_equal));
    verdict(ok, "half-spin form equals 8 q1 q2 on three pairs")
}

fn tits_rational() -> Outcome {
    let t = TitsInput::new(BaseField::Q, [-1; 3], [-1; 3], [-1; 5]).expect("prefix");
    let r = tits_construction(&t).expect("valid");
    let target = QForm::pfister(BaseField::Q, &[-1; 5]).expect("nonzero").times(8);
    let ok = r.kappa.witt_equal(&target).unwrap_or(false) && r.rost15_zero && r.kappa_i_level == ILevel::Exact(8);
    verdict(ok, format!("kappa level {}, rost zero {}", r.kappa_i_level, r.rost15_zero))
}

fn tits_real() -> Outcome {
    let t = TitsInput::new(BaseField::R, [-1; 3], [-1; 3], [-1; 5]).expect("prefix");
    let r = tits_construction(&t).expect("valid");
    verdict(r.signature == -248, format!("signature {}", r.signature))
}

fn index_hints() -> Outcome {
    let h = Quaternion::hamilton();
    let s = Quaternion::split();
    let real = |q, c| classify(&E8Input::new(BaseField::R, q, c).expect("valid"));
    let a = real([h; 4], 1);
    let b = real([h, s, s, s], -1);
    let c = real([h; 4], -1);
    let ok = a.index_hint == IndexHint::Split
        && (b.real_class, b.index_hint) == (RealClass::E8Minus24, IndexHint::KernelD4)
        && (c.real_class, c.index_hint) == (RealClass::Compact, IndexHint::Undetermined);
    verdict(ok, format!("{:?} / {:?} / {:?}", a.index_hint, b.index_hint, c.index_hint))
}

fn search(s: u32) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for fc in FactorCount::ALL {
        let r = fc.factors(s);
        match search_equality(s, r, default_order(s)) {
            Ok(rep) => {
                ok &= rep.all_j1_at_least_s && rep.has_trivial;
                details.push(format!("{fc}: r={r}, solutions {:?}", rep.solutions));
            }
            Err(e) => {
                ok = false;
                details.push(e.to_string());
            }
        }
    }
    verdict(ok, details.join("; "))
}

fn hspin_bounds() -> Outcome {
    let ok = [(8, 8), (16, 16), (32, 32)]
        .iter()
        .all(|&(d, i)| hspin_params(d, i).is_ok_and(|p| p.odd_cofactor && p.k1_is_s_minus_1));
    verdict(ok, "k1 = s - 1 for degree = index = 8, 16, 32")
}

fn trace() -> Outcome {
    let mut ok = true;
    for s in 2..=4 {
        for r in 2..=4 {
            ok &= low_coefficient_trace(s, r).is_ok_and(|(n, good)| n > 0 && good);
        }
    }
    verdict(ok, "agreement through t^3 forces j1 >= 2 and j2 = 0 for s, r in 2..=4")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert!(parse_suites("nope").is_err());
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = Suite::ALL.iter().flat_map(|&s| check_ids(s)).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn light_suites() {
        for s in [Suite::Qform, Suite::Descent, Suite::Appendix] {
            for r in run_suite(s) {
                assert!(matches!(r.status, Status::Pass | Status::Skipped), "{r:?}");
            }
        }
    }
}
