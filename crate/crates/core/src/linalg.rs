//! Dense matrices over a [`Field`] with the handful of operations the crate needs:
//! products, Kronecker products, inversion, null spaces and congruence
//! diagonalization of symmetric matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix unit `E_{ij}` (zero-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = T::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_negligible)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..i).all(|j| (self[(i, j)].clone() - self[(j, i)].clone()).is_negligible())
            })
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| (self[(i, j)].clone() + self[(j, i)].clone()).is_negligible())
            })
    }

    /// Whether only diagonal entries are nonzero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_negligible()))
    }

    /// Square-block submatrix on the given index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Kronecker product; entry `(p*i + q, r*j + s)` is `self[i,j] * other[q,s]` for an
    /// `other` of shape `p x r`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, r) = (other.rows, other.cols);
        Self::from_fn(self.rows * p, self.cols * r, |i, j| {
            self[(i / p, j / r)].clone() * other[(i % p, j % r)].clone()
        })
    }

    /// `v^T M w` for a square matrix.
    pub fn bilinear(&self, v: &[T], w: &[T]) -> T {
        let mut acc = T::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_negligible() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                let m = &self[(i, j)];
                if !m.is_negligible() && !wj.is_negligible() {
                    acc = acc + vi.clone() * m.clone() * wj.clone();
                }
            }
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination; `None` for singular input.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_negligible())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_negligible() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = a[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * t;
                    let t = inv[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * t;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{ x : M x = 0 }`, one vector per free column of the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(p) = (row..m).find(|&r| !a[(r, col)].is_negligible()) else {
                continue;
            };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for j in col..n {
                a[(row, j)] = a[(row, j)].clone() / pv.clone();
            }
            let support: Vec<usize> = (col..n).filter(|&j| !a[(row, j)].is_negligible()).collect();
            for r in 0..m {
                if r == row || a[(r, col)].is_negligible() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for &j in &support {
                    let t = a[(row, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); n];
                v[f] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| {
                    if a.is_negligible() || b.is_negligible() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_negligible() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_negligible() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Diagonalizes a symmetric matrix by congruence and returns the diagonal.
///
/// Pivots on the first nonzero diagonal entry; when the remaining diagonal vanishes but
/// an off-diagonal entry `a_ij` does not, `e_i` is replaced by `e_i + e_j`, which puts
/// `2 a_ij` on the diagonal. A fully degenerate tail contributes zeros.
pub fn diagonalize_symmetric<T: Field>(m: &Matrix<T>) -> Vec<T> {
    assert!(m.is_square(), "congruence diagonalization needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&p| !a[(p, p)].is_negligible()) {
            swap_sym(&mut a, k, p);
        } else if let Some((i, j)) =
            (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[(i, j)].is_negligible())
        {
            // e_i <- e_i + e_j
            for c in 0..n {
                let t = a[(j, c)].clone();
                a[(i, c)] = a[(i, c)].clone() + t;
            }
            for r in 0..n {
                let t = a[(r, j)].clone();
                a[(r, i)] = a[(r, i)].clone() + t;
            }
            swap_sym(&mut a, k, i);
        } else {
            diag.extend((k..n).map(|_| T::zero()));
            return diag;
        }
        let pivot = a[(k, k)].clone();
        let support: Vec<(usize, T)> =
            (k + 1..n).filter(|&j| !a[(k, j)].is_negligible()).map(|j| (j, a[(k, j)].clone())).collect();
        for (i, aik) in &support {
            let f = aik.clone() / pivot.clone();
            for (j, akj) in &support {
                let t = f.clone() * akj.clone();
                a[(*i, *j)] = a[(*i, *j)].clone() - t;
            }
        }
        for (i, _) in &support {
            a[(*i, k)] = T::zero();
            a[(k, *i)] = T::zero();
        }
        diag.push(pivot);
    }
    diag
}

fn swap_sym<T: Field>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.rows() {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).iter().all(|x| x.is_negligible()));
        }
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = Matrix::<Rational>::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 0)], int(3));
        assert_eq!(k[(3, 1)], int(3));
        assert_eq!(k[(3, 0)], int(0));
    }

    #[test]
    fn hyperbolic_plane_diagonalizes_with_opposite_signs() {
        let d = diagonalize_symmetric(&q(&[&[0, 1], &[1, 0]]));
        assert_eq!(d, vec![int(2), rat(-1, 2)]);
    }

    #[test]
    fn diagonalization_preserves_determinant_class() {
        let m = q(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let d = diagonalize_symmetric(&m);
        let prod = d.iter().fold(int(1), |a, b| a * b.clone());
        assert_eq!(prod, int(4));
        let f = diagonalize_symmetric(&m.map(|x| {
            use num_traits::ToPrimitive;
            x.to_f64().unwrap()
        }));
        assert!(f.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn branched_pivot_row() {
        // D4 Cartan matrix: the pivot on the central node touches three rows at once
        let m = q(&[&[2, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 2, 0], &[0, -1, 0, 2]]);
        assert_eq!(diagonalize_symmetric(&m), vec![int(2), rat(3, 2), rat(4, 3), int(1)]);
    }

    fn laplace_det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * laplace_det(&minor)
            })
            .sum()
    }

    proptest::proptest! {
        #[test]
        fn diagonal_product_is_determinant(n in 1usize..6, seed in proptest::collection::vec(-4i64..5, 36)) {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| seed[i.min(j) * 6 + i.max(j)]).collect())
                .collect();
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
            let d = diagonalize_symmetric(&m);
            let prod = d.iter().fold(int(1), |a, b| a * b.clone());
            proptest::prop_assert_eq!(prod, int(laplace_det(&rows)));
        }
    }

    #[test]
    fn degenerate_tail_gives_zeros() {
        let d = diagonalize_symmetric(&q(&[&[1, 0], &[0, 0]]));
        assert_eq!(d, vec![int(1), int(0)]);
    }
}
