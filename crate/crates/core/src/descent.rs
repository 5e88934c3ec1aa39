//! Matrix algebras with involution, the Kronecker and conjugation isomorphisms between
//! them, and descent of bilinear forms along a quadratic extension `Q(sqrt a)/Q`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{diagonalize_symmetric, Matrix};
use crate::qform::{squarefree, FormError, QForm};
use crate::scalar::{int, rat};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("{0} is a square, so Q(sqrt {0}) is not a field")]
    SquareParameter(i64),
    #[error("cocycle condition eta * iota(eta) = 1 fails")]
    Cocycle,
    #[error("fixed space has dimension {got}, expected {expected}")]
    FixedSpace { expected: usize, got: usize },
    #[error("ambient form must be symmetric, invertible and match eta in size")]
    BadAmbient,
    #[error("restricted form takes irrational values")]
    Irrational,
    #[error("zero parameter")]
    Zero,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Antidiagonal `n x n` matrix of ones.
pub fn antidiagonal(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { int(1) } else { int(0) })
}

fn block<const N: usize>(blocks: [[i64; N]; N], b: &Matrix<Rational>) -> Matrix<Rational> {
    let m = b.rows();
    Matrix::from_fn(N * m, N * m, |i, j| b[(i % m, j % m)].clone() * int(blocks[i / m][j / m]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionKind {
    Orthogonal,
    Symplectic,
}

/// `M_n(Q)` with the involution `x -> u x^t u^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionAlgebra {
    pub u: Matrix<Rational>,
    u_inv: Matrix<Rational>,
    pub kind: InvolutionKind,
}

impl InvolutionAlgebra {
    pub fn new(u: Matrix<Rational>) -> Option<Self> {
        let kind = if u.is_symmetric() {
            InvolutionKind::Orthogonal
        } else if u.is_antisymmetric() {
            InvolutionKind::Symplectic
        } else {
            return None;
        };
        let u_inv = u.inverse()?;
        Some(Self { u, u_inv, kind })
    }

    /// `sigma_{2n}(x) = S x^t S^{-1}` with `S` antidiagonal.
    pub fn sigma(size: usize) -> Self {
        Self::new(antidiagonal(size)).expect("antidiagonal matrix is invertible")
    }

    /// `gamma_{2n}(x) = M^{-1} x^t M` with `M = [[0, S_n], [-S_n, 0]]`.
    pub fn gamma(size: usize) -> Self {
        let m = block([[0, 1], [-1, 0]], &antidiagonal(size / 2));
        Self::new(m.inverse().expect("invertible")).expect("antisymmetric")
    }

    /// Involution on `M_16` given by the 4 x 4 block matrix with `+-S_4` on the antidiagonal.
    pub fn sigma_prime16() -> Self {
        Self::new(block([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], &antidiagonal(4)))
            .expect("symmetric and invertible")
    }

    pub fn size(&self) -> usize {
        self.u.rows()
    }

    pub fn apply(&self, x: &Matrix<Rational>) -> Matrix<Rational> {
        &(&self.u * &x.transpose()) * &self.u_inv
    }

    /// Order two and anti-multiplicative on the given sample.
    pub fn is_involution_on(&self, sample: &[Matrix<Rational>]) -> bool {
        sample.iter().all(|x| self.apply(&self.apply(x)) == *x)
            && sample.iter().all(|x| {
                sample.iter().all(|y| self.apply(&(x * y)) == &self.apply(y) * &self.apply(x))
            })
    }
}

/// Outcome of an exhaustive or sampled verification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// 1-based position of the image of `E_ij (x) E_qr` in `M_16`.
pub fn kron_position(i: usize, j: usize, q: usize, r: usize) -> (usize, usize) {
    (8 * (i - 1) + q, 8 * (j - 1) + r)
}

fn unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    Matrix::unit(n, i - 1, j - 1)
}

fn units(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)))
}

/// Checks the Kronecker map `M_2 (x) M_8 -> M_16`: position formula and involution
/// compatibility on all 256 basis elements, multiplicativity on all pairs with indices <= 2.
pub fn kronecker_iso() -> IsoReport {
    let (g2, g8, s16) = (InvolutionAlgebra::gamma(2), InvolutionAlgebra::gamma(8), InvolutionAlgebra::sigma_prime16());
    let mut rep = IsoReport::default();
    for (i, j) in units(2) {
        for (q, r) in units(8) {
            let img = unit(2, i, j).kron(&unit(8, q, r));
            let (a, b) = kron_position(i, j, q, r);
            rep.record(img == unit(16, a, b), || format!("position of E{i}{j} x E{q}{r}"));
            let lhs = g2.apply(&unit(2, i, j)).kron(&g8.apply(&unit(8, q, r)));
            rep.record(lhs == s16.apply(&img), || format!("involution on E{i}{j} x E{q}{r}"));
        }
    }
    let small: Vec<(usize, usize, usize, usize)> =
        units(2).flat_map(|(i, j)| units(2).map(move |(q, r)| (i, j, q, r))).collect();
    for &x in &small {
        for &y in &small {
            rep.record(kron_pair_multiplicative(x, y), || format!("product {x:?} {y:?}"));
        }
    }
    rep
}

/// `phi(ab) = phi(a) phi(b)` for two matrix units `E_ij (x) E_qr`.
pub fn kron_pair_multiplicative(x: (usize, usize, usize, usize), y: (usize, usize, usize, usize)) -> bool {
    let a = unit(2, x.0, x.1).kron(&unit(8, x.2, x.3));
    let b = unit(2, y.0, y.1).kron(&unit(8, y.2, y.3));
    let prod = (&unit(2, x.0, x.1) * &unit(2, y.0, y.1)).kron(&(&unit(8, x.2, x.3) * &unit(8, y.2, y.3)));
    &a * &b == prod
}

/// The conjugating matrix with blocks `[[1,0,0,0],[0,0,1,0],[0,-1,0,0],[0,0,0,1]]`.
pub fn conjugation_matrix() -> Matrix<Rational> {
    block([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], &Matrix::identity(4))
}

pub struct Conjugation {
    u: Matrix<Rational>,
    u_inv: Matrix<Rational>,
}

impl Conjugation {
    pub fn new() -> Self {
        let u = conjugation_matrix();
        let u_inv = u.inverse().expect("invertible");
        Self { u, u_inv }
    }

    pub fn apply(&self, x: &Matrix<Rational>) -> Matrix<Rational> {
        &(&self.u * x) * &self.u_inv
    }
}

impl Default for Conjugation {
    fn default() -> Self {
        Self::new()
    }
}

/// Checks `sigma_16(U x U^{-1}) = U sigma'_16(x) U^{-1}` on all 256 matrix units and that
/// `U^t U` is diagonal.
pub fn conjugation_iso() -> IsoReport {
    let (s, sp, c) = (InvolutionAlgebra::sigma(16), InvolutionAlgebra::sigma_prime16(), Conjugation::new());
    let mut rep = IsoReport::default();
    for (k, l) in units(16) {
        let x = unit(16, k, l);
        rep.record(s.apply(&c.apply(&x)) == c.apply(&sp.apply(&x)), || format!("E{k},{l}"));
    }
    let u = conjugation_matrix();
    rep.record((&u.transpose() * &u).is_diagonal(), || "U^t U not diagonal".into());
    rep
}

/// Composite `M_2 (x) M_8 -> M_16 -> M_16`.
pub fn composite(x: &Matrix<Rational>, y: &Matrix<Rational>) -> Matrix<Rational> {
    Conjugation::new().apply(&x.kron(y))
}

/// The 16 x 16 matrix with `1_4` in block (1,2) and `-1_4` in block (3,4).
pub fn displayed_sl2_image() -> Matrix<Rational> {
    block([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0]], &Matrix::identity(4))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Report {
    pub equals_displayed: bool,
    pub square_zero: bool,
    /// `sigma_16(m) + m == 0`.
    pub sigma16_skew: bool,
}

/// Image of `E_12 (x) 1_8` under the composite.
pub fn sl2_image() -> Matrix<Rational> {
    composite(&unit(2, 1, 2), &Matrix::identity(8))
}

pub fn sl2_report() -> Sl2Report {
    let m = sl2_image();
    Sl2Report {
        equals_displayed: m == displayed_sl2_image(),
        square_zero: (&m * &m).is_zero(),
        sigma16_skew: InvolutionAlgebra::sigma(16).apply(&m).add(&m).is_zero(),
    }
}

/// An element `x + y sqrt(a)` of `Q(sqrt a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub x: Rational,
    pub y: Rational,
}

impl QuadElem {
    pub fn rational(x: Rational) -> Self {
        Self { x, y: Rational::zero() }
    }

    pub fn conj(&self) -> Self {
        Self { x: self.x.clone(), y: -self.y.clone() }
    }

    fn mul(&self, o: &Self, a: &Rational) -> Self {
        Self {
            x: &self.x * &o.x + a * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }

    fn add(&self, o: &Self) -> Self {
        Self { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

/// Square matrix over `Q(sqrt a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtMatrix {
    a: i64,
    n: usize,
    entries: Vec<QuadElem>,
}

impl QuadExtMatrix {
    pub fn new(a: i64, n: usize, entries: Vec<QuadElem>) -> Result<Self, DescentError> {
        if a == 0 {
            return Err(DescentError::Zero);
        }
        if a > 0 && squarefree(a as i128)? == 1 {
            return Err(DescentError::SquareParameter(a));
        }
        assert_eq!(entries.len(), n * n, "entry count");
        Ok(Self { a, n, entries })
    }

    pub fn from_rational(a: i64, m: &Matrix<Rational>) -> Result<Self, DescentError> {
        let n = m.rows();
        Self::new(a, n, (0..n * n).map(|k| QuadElem::rational(m[(k / n, k % n)].clone())).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadElem {
        &self.entries[i * self.n + j]
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.iter().map(QuadElem::conj).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = int(self.a);
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(QuadElem::rational(Rational::zero()), |acc, l| acc.add(&self.get(i, l).mul(o.get(l, j), &a)))
            })
            .collect();
        Self { a: self.a, n, entries }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                e.y.is_zero() && e.x == if i == j { Rational::one() } else { Rational::zero() }
            })
        })
    }

    /// `eta * iota(eta) = 1`.
    pub fn is_cocycle(&self) -> bool {
        self.mul(&self.conj()).is_identity()
    }
}

/// Restriction of the form `S` to the Q-subspace of `Q(sqrt a)^n` fixed by `x -> eta iota(x)`,
/// diagonalized over Q.
pub fn descent_form(eta: &QuadExtMatrix, s: &Matrix<Rational>) -> Result<QForm, DescentError> {
    let n = eta.n;
    if s.rows() != n || !s.is_symmetric() || s.inverse().is_none() {
        return Err(DescentError::BadAmbient);
    }
    if !eta.is_cocycle() {
        return Err(DescentError::Cocycle);
    }
    let a = int(eta.a);
    // eta = P + R sqrt(a); fixed points x = u + v sqrt(a) solve
    // (P - 1) u - a R v = 0 and R u - (P + 1) v = 0.
    let sys = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let e = eta.get(i % n, j % n);
        let delta = if i % n == j % n { Rational::one() } else { Rational::zero() };
        match (bi, bj) {
            (0, 0) => e.x.clone() - delta,
            (0, _) => -(&a * &e.y),
            (_, 0) => e.y.clone(),
            _ => -(e.x.clone() + delta),
        }
    });
    let basis = sys.nullspace();
    if basis.len() != n {
        return Err(DescentError::FixedSpace { expected: n, got: basis.len() });
    }
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (u, v) = basis[i].split_at(n);
            let (u2, v2) = basis[j].split_at(n);
            if !(s.bilinear(u, v2) + s.bilinear(v, u2)).is_zero() {
                return Err(DescentError::Irrational);
            }
            gram[(i, j)] = s.bilinear(u, u2) + &a * s.bilinear(v, v2);
        }
    }
    Ok(QForm::from_diagonal(&diagonalize_symmetric(&gram))?)
}

/// The 8 x 8 antidiagonal matrix with entries `(-1, 1/b, -b, 1, 1, -1/b, b, -1)`.
pub fn crux_matrix(b: i64) -> Matrix<Rational> {
    let vals = [rat(-1, 1), rat(1, b), rat(-b, 1), rat(1, 1), rat(1, 1), rat(-1, b), rat(b, 1), rat(-1, 1)];
    Matrix::from_fn(8, 8, |i, j| if i + j == 7 { vals[i].clone() } else { Rational::zero() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CruxReport {
    pub form: QForm,
    /// Direct descent of the whole 8 x 8 matrix against `S_8`.
    pub whole_form: QForm,
    pub preserves_planes: bool,
    pub witt_index: usize,
    pub hyperbolic: bool,
    /// Witt-equal to `<2> <-1, b, -b, 1> <1, -a>`.
    pub matches_factorization: bool,
}

pub fn crux_form(a: i64, b: i64) -> Result<CruxReport, DescentError> {
    if b == 0 {
        return Err(DescentError::Zero);
    }
    let eta = crux_matrix(b);
    let preserves_planes =
        (0..8).all(|i| (0..8).all(|j| eta[(i, j)].is_zero() || i + j == 7 || i == j));
    let mut form = QForm::zero(crate::qform::BaseField::Q);
    for i in 0..4 {
        let j = 7 - i;
        let plane = Matrix::from_rows(vec![
            vec![eta[(i, i)].clone(), eta[(i, j)].clone()],
            vec![eta[(j, i)].clone(), eta[(j, j)].clone()],
        ]);
        let part = descent_form(&QuadExtMatrix::from_rational(a, &plane)?, &antidiagonal(2))?;
        form = form.try_orth(&part)?;
    }
    let whole_form = descent_form(&QuadExtMatrix::from_rational(a, &eta)?, &antidiagonal(8))?;
    let expected = &(&QForm::q(&[2]) * &QForm::new(crate::qform::BaseField::Q, [-1, b, -b, 1])?)
        * &QForm::new(crate::qform::BaseField::Q, [1, -a])?;
    Ok(CruxReport {
        witt_index: form.witt_index(),
        hyperbolic: form.is_hyperbolic(),
        matches_factorization: form.witt_equal(&expected)? && whole_form.witt_equal(&expected)?,
        preserves_planes,
        form,
        whole_form,
    })
}
