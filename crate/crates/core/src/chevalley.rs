//! Chevalley bases of simply-laced Lie algebras over Q and their Killing forms.
//!
//! Structure constants come from the bimultiplicative sign function on the root lattice:
//! `eps(a_i, a_j) = -1` when `i == j` or when `i < j` are joined in the Dynkin diagram,
//! and `+1` otherwise. With `E_a` the Frenkel-Kac basis, `X_a = E_a` for positive `a`
//! and `X_a = -E_a` for negative `a`, so that `[X_a, X_{-a}] = h_a` for every root.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{diagonalize_symmetric, Matrix};
use crate::qform::{FormError, QForm};
use crate::rootsys::{CorootMap, RootSystem, SystemLabel};
use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("no Chevalley basis implemented for {0} (simply-laced systems only)")]
    Unsupported(SystemLabel),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("branching needs {0}")]
    WrongMap(String),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Sparse vector in the Chevalley basis: `(basis index, coefficient)`.
pub type Sparse = Vec<(usize, i64)>;

/// Which normalization of the trace form to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormScale {
    Killing,
    ReducedKilling,
}

/// Gram matrix of a bilinear form in a labelled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<T: Field> {
    pub labels: Vec<String>,
    pub matrix: Matrix<T>,
    pub scale: FormScale,
}

/// Split Lie algebra with basis `h_1..h_r` followed by `X_a` for each root in the order of
/// [`RootSystem::roots`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    rs: RootSystem,
    /// `table[i * dim + j]` is `[b_i, b_j]`.
    table: Vec<Sparse>,
}

pub fn chevalley_basis(rs: &RootSystem) -> Result<LieAlgebra, LieError> {
    LieAlgebra::new(rs)
}

impl LieAlgebra {
    pub fn new(rs: &RootSystem) -> Result<Self, LieError> {
        if rs.label() == SystemLabel::C4 {
            return Err(LieError::Unsupported(rs.label()));
        }
        let r = rs.rank();
        let roots = rs.roots();
        let dim = r + roots.len();
        let index: HashMap<&[i64], usize> = roots.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
        let e = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        // sign mask: eps(a_i, a_j) = -1
        let mask: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let joined = rs.pairing2(&e(i), &e(j)) != 0;
                        i64::from(i == j || (i < j && joined))
                    })
                    .collect()
            })
            .collect();
        let eps = |a: &[i64], b: &[i64]| {
            let mut s = 0i64;
            for i in 0..r {
                for j in 0..r {
                    s += mask[i][j] * a[i] * b[j];
                }
            }
            if s.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        };
        let sign = |a: &[i64]| if a.iter().all(|&x| x >= 0) { 1 } else { -1 };

        let mut table = vec![Sparse::new(); dim * dim];
        for i in 0..r {
            for (a, root) in roots.iter().enumerate() {
                let k = rs.pairing2(&e(i), root) / 2;
                if k != 0 {
                    table[i * dim + r + a] = vec![(r + a, k)];
                    table[(r + a) * dim + i] = vec![(r + a, -k)];
                }
            }
        }
        for (a, alpha) in roots.iter().enumerate() {
            for (b, beta) in roots.iter().enumerate() {
                let sum: Vec<i64> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
                let entry = if sum.iter().all(|&x| x == 0) {
                    alpha.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect()
                } else if let Some(&c) = index.get(sum.as_slice()) {
                    vec![(r + c, eps(alpha, beta) * sign(alpha) * sign(beta) * sign(&sum))]
                } else {
                    Sparse::new()
                };
                table[(r + a) * dim + r + b] = entry;
            }
        }
        let lie = LieAlgebra { rs: rs.clone(), table };
        lie.check_generators()?;
        Ok(lie)
    }

    /// Jacobi on all triples whose first two entries are `X_{a_i}` or `X_{-a_i}`.
    fn check_generators(&self) -> Result<(), LieError> {
        let gens: Vec<usize> = (0..self.rank())
            .flat_map(|i| {
                let mut v = vec![0; self.rank()];
                v[i] = 1;
                let pos = self.root_basis_index(&v);
                v[i] = -1;
                let neg = self.root_basis_index(&v);
                [pos, neg]
            })
            .flatten()
            .collect();
        for &x in &gens {
            for &y in &gens {
                for z in 0..self.dim() {
                    if !self.jacobi_holds(x, y, z) {
                        return Err(LieError::Jacobi(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.roots().len()
    }

    pub fn coxeter_number(&self) -> i64 {
        self.rs.coxeter_number() as i64
    }

    /// Equal to the Coxeter number for simply-laced systems.
    pub fn dual_coxeter_number(&self) -> i64 {
        self.coxeter_number()
    }

    pub fn root_basis_index(&self, root: &[i64]) -> Option<usize> {
        self.rs.root_index(root).map(|a| self.rank() + a)
    }

    pub fn label(&self, i: usize) -> String {
        let r = self.rank();
        if i < r {
            format!("h{}", i + 1)
        } else {
            let parts: Vec<String> = self.rs.roots()[i - r].iter().map(ToString::to_string).collect();
            format!("X[{}]", parts.join(","))
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut acc = vec![0i64; self.dim()];
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in self.bracket_basis(i, j) {
                    acc[k] += a * b * c;
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| *c != 0).collect()
    }

    pub fn jacobi_holds(&self, x: usize, y: usize, z: usize) -> bool {
        let b = |p: usize, q: usize, w: usize| self.bracket(self.bracket_basis(p, q), &vec![(w, 1)]);
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (k, c) in b(x, y, z).into_iter().chain(b(y, z, x)).chain(b(z, x, y)) {
            *acc.entry(k).or_default() += c;
        }
        acc.values().all(|&c| c == 0)
    }

    /// Jacobi identity on every basis triple. Parallel over the first entry.
    pub fn jacobi_exhaustive(&self) -> bool {
        let d = self.dim();
        (0..d).into_par_iter().all(|x| (0..d).all(|y| (y..d).all(|z| self.jacobi_holds(x, y, z))))
    }

    /// Antisymmetry of the bracket table.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let mut neg: Sparse = self.bracket_basis(j, i).iter().map(|&(k, c)| (k, -c)).collect();
                neg.sort();
                let mut own = self.bracket_basis(i, j).clone();
                own.sort();
                own == neg
            })
        })
    }

    /// Largest `|N_{a,b}|` over root pairs with `a + b` a root.
    pub fn max_structure_constant(&self) -> i64 {
        let r = self.rank();
        let n = self.rs.roots().len();
        let mut m = 0;
        for a in 0..n {
            for b in 0..n {
                if let [(k, c)] = self.bracket_basis(r + a, r + b).as_slice() {
                    if *k >= r {
                        m = m.max(c.abs());
                    }
                }
            }
        }
        m
    }

    /// `tr(ad b_i ad b_j)` for all basis pairs, as integers.
    pub fn killing_integer(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        (0..d)
            .into_par_iter()
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut tr = 0;
                        for k in 0..d {
                            for &(m, c) in self.bracket_basis(j, k) {
                                for &(kk, c2) in self.bracket_basis(i, m) {
                                    if kk == k {
                                        tr += c * c2;
                                    }
                                }
                            }
                        }
                        tr
                    })
                    .collect()
            })
            .collect()
    }

    /// Gram matrix of the Killing form or of the reduced Killing form
    /// (Killing form divided by twice the dual Coxeter number).
    pub fn killing_matrix<T: Field>(&self, scale: FormScale) -> FormMatrix<T> {
        let k = self.killing_integer();
        let div = match scale {
            FormScale::Killing => T::one(),
            FormScale::ReducedKilling => T::from_int(2 * self.dual_coxeter_number()),
        };
        let d = self.dim();
        FormMatrix {
            labels: (0..d).map(|i| self.label(i)).collect(),
            matrix: Matrix::from_fn(d, d, |i, j| T::from_int(k[i][j]) / div.clone()),
            scale,
        }
    }

    /// Killing-form value `K(X_a, X_{-a})` for each root, in root order.
    pub fn opposite_root_values(&self, k: &[Vec<i64>]) -> Vec<i64> {
        let r = self.rank();
        self.rs
            .roots()
            .iter()
            .enumerate()
            .map(|(a, root)| {
                let neg: Vec<i64> = root.iter().map(|x| -x).collect();
                k[r + a][self.root_basis_index(&neg).expect("negation of a root")]
            })
            .collect()
    }
}

pub fn killing_matrix<T: Field>(lie: &LieAlgebra, scale: FormScale) -> FormMatrix<T> {
    lie.killing_matrix(scale)
}

fn restricted_form(k: &Matrix<Rational>, idx: &[usize]) -> Result<QForm, LieError> {
    let sub = k.submatrix(idx, idx);
    Ok(QForm::from_diagonal(&diagonalize_symmetric(&sub))?)
}

/// The reduced Killing form restricted to the Cartan subalgebra, as a diagonal form over Q.
pub fn cartan_restriction_witt(lie: &LieAlgebra) -> Result<QForm, LieError> {
    let k = lie.killing_matrix::<Rational>(FormScale::ReducedKilling).matrix;
    restricted_form(&k, &(0..lie.rank()).collect::<Vec<_>>())
}

/// The full reduced Killing form, diagonalized over Q.
pub fn reduced_killing_form(lie: &LieAlgebra) -> Result<QForm, LieError> {
    let k = lie.killing_matrix::<Rational>(FormScale::ReducedKilling).matrix;
    restricted_form(&k, &(0..lie.dim()).collect::<Vec<_>>())
}

/// Decomposition of E8 under the D8 subalgebra spanned by the Cartan and the images of the
/// D8 roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingReport {
    pub subalg_dim: usize,
    /// Span of the root vectors outside the D8 image.
    pub complement_dim: usize,
    /// Dimension of the reduced-Killing orthogonal complement of the subalgebra.
    pub orthogonal_complement_dim: usize,
    /// Every D8 root image is a root of E8.
    pub images_are_roots: bool,
    /// The subalgebra is closed under the bracket.
    pub subalg_closed: bool,
    pub cross_block_zero: bool,
    pub subalg_witt: QForm,
    pub complement_witt: QForm,
}

pub fn branching_check(lie: &LieAlgebra, map: &CorootMap) -> Result<BranchingReport, LieError> {
    let [fac] = map.factors.as_slice() else {
        return Err(LieError::WrongMap("a single D8 factor".into()));
    };
    if lie.root_system().label() != SystemLabel::E8
        || map.target.label() != SystemLabel::E8
        || fac.source.label() != SystemLabel::D8
        || fac.images.len() != 8
    {
        return Err(LieError::WrongMap("the D8 into E8 table and the E8 algebra".into()));
    }
    let r = lie.rank();
    let mut in_sub = vec![false; lie.dim()];
    in_sub[..r].iter_mut().for_each(|b| *b = true);
    let mut images_are_roots = true;
    for root in fac.source.roots() {
        let mut img = vec![0i64; 8];
        for (c, v) in root.iter().zip(&fac.images) {
            for k in 0..8 {
                img[k] += c * v[k];
            }
        }
        match lie.root_basis_index(&img) {
            Some(i) => in_sub[i] = true,
            None => images_are_roots = false,
        }
    }
    let sub: Vec<usize> = (0..lie.dim()).filter(|&i| in_sub[i]).collect();
    let comp: Vec<usize> = (0..lie.dim()).filter(|&i| !in_sub[i]).collect();
    let subalg_closed = sub
        .iter()
        .all(|&i| sub.iter().all(|&j| lie.bracket_basis(i, j).iter().all(|&(k, _)| in_sub[k])));

    let k = lie.killing_matrix::<Rational>(FormScale::ReducedKilling).matrix;
    let cross_block_zero = k.submatrix(&sub, &comp).is_zero();
    let all: Vec<usize> = (0..lie.dim()).collect();
    let orthogonal_complement_dim = k.submatrix(&sub, &all).nullspace().len();
    Ok(BranchingReport {
        subalg_dim: sub.len(),
        complement_dim: comp.len(),
        orthogonal_complement_dim,
        images_are_roots,
        subalg_closed,
        cross_block_zero,
        subalg_witt: restricted_form(&k, &sub)?,
        complement_witt: restricted_form(&k, &comp)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::BaseField;
    use crate::rootsys::{embedding_table, Embedding};
    use crate::scalar::rat;

    fn algebra(l: SystemLabel) -> LieAlgebra {
        chevalley_basis(&RootSystem::new(l)).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a1 = algebra(SystemLabel::A1);
        assert_eq!(a1.dim(), 3);
        let (h, neg, pos) = (0, 1, 2);
        assert_eq!(a1.root_system().roots(), &[vec![-1], vec![1]]);
        assert_eq!(a1.bracket_basis(h, pos), &vec![(pos, 2)]);
        assert_eq!(a1.bracket_basis(h, neg), &vec![(neg, -2)]);
        assert_eq!(a1.bracket_basis(pos, neg), &vec![(h, 1)]);
    }

    #[test]
    fn c4_is_rejected() {
        assert_eq!(
            chevalley_basis(&RootSystem::new(SystemLabel::C4)).unwrap_err(),
            LieError::Unsupported(SystemLabel::C4)
        );
    }

    #[test]
    fn d4_jacobi_exhaustive() {
        let d4 = algebra(SystemLabel::D4);
        assert!(d4.is_antisymmetric());
        assert!(d4.jacobi_exhaustive());
        assert_eq!(d4.max_structure_constant(), 1);
    }

    #[test]
    fn dimensions() {
        assert_eq!(algebra(SystemLabel::D8).dim(), 120);
        assert_eq!(algebra(SystemLabel::E8).dim(), 248);
    }

    #[test]
    fn d8_killing_on_root_pairs() {
        let d8 = algebra(SystemLabel::D8);
        let k = d8.killing_integer();
        assert!(d8.opposite_root_values(&k).iter().all(|&v| v == 28));
    }

    #[test]
    fn a1_cartan_restriction() {
        let a1 = algebra(SystemLabel::A1);
        assert_eq!(cartan_restriction_witt(&a1).unwrap(), QForm::q(&[2]));
        let k = a1.killing_matrix::<Rational>(FormScale::ReducedKilling);
        assert_eq!(k.matrix[(0, 0)], rat(2, 1));
        let kf = a1.killing_matrix::<f64>(FormScale::Killing);
        assert_eq!(kf.matrix[(0, 0)], 8.0);
    }

    #[test]
    fn d4_full_form_matches_cartan_part() {
        let d4 = algebra(SystemLabel::D4);
        let full = reduced_killing_form(&d4).unwrap();
        let cartan = cartan_restriction_witt(&d4).unwrap();
        assert_eq!(full.dim(), 28);
        assert!(full.witt_equal(&cartan).unwrap());
        assert!(cartan.witt_equal(&QForm::ones(BaseField::Q, 4)).unwrap());
    }

    #[test]
    fn branching_rejects_other_maps() {
        let d4 = algebra(SystemLabel::D4);
        assert!(branching_check(&d4, &embedding_table(Embedding::D8InE8)).is_err());
    }
}
