use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e8forms::descent::{composite, kron_pair_multiplicative, InvolutionAlgebra};
use e8forms::linalg::Matrix;
use e8forms::Rational;

fn unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    Matrix::unit(n, i, j)
}

#[test]
fn composite_is_multiplicative_on_random_unit_pairs() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let mut pick = |n: usize| (r.gen_range(0..n), r.gen_range(0..n));
        let ((i1, j1), (q1, r1), (i2, j2), (q2, r2)) = (pick(2), pick(8), pick(2), pick(8));
        let (x1, y1, x2, y2) = (unit(2, i1, j1), unit(8, q1, r1), unit(2, i2, j2), unit(8, q2, r2));
        let lhs = &composite(&x1, &y1) * &composite(&x2, &y2);
        assert_eq!(lhs, composite(&(&x1 * &x2), &(&y1 * &y2)));
    }
}

#[test]
fn kronecker_units_multiply_blockwise() {
    for i in 1..=2 {
        for j in 1..=2 {
            for q in 1..=8 {
                for s in 1..=8 {
                    assert!(kron_pair_multiplicative((i, j, q, s), (j, i, s, q)));
                    assert!(kron_pair_multiplicative((i, j, q, s), (1, 2, 3, 4)));
                }
            }
        }
    }
}

#[test]
fn composite_intertwines_the_involutions() {
    let (g2, g8, s16) = (InvolutionAlgebra::gamma(2), InvolutionAlgebra::gamma(8), InvolutionAlgebra::sigma(16));
    for i in 0..2 {
        for j in 0..2 {
            for q in 0..8 {
                for s in 0..8 {
                    let (x, y) = (unit(2, i, j), unit(8, q, s));
                    assert_eq!(s16.apply(&composite(&x, &y)), composite(&g2.apply(&x), &g8.apply(&y)));
                }
            }
        }
    }
}
