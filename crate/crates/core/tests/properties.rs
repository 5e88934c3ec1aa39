use proptest::prelude::*;

use e8forms::descent::{antidiagonal, crux_form, descent_form, QuadExtMatrix};
use e8forms::e8kill::{kappa, kappa_expanded, kappa_from_redkill, red_killing_form, E8Input};
use e8forms::jinv::{cyclo_quotient, IntSeries};
use e8forms::linalg::Matrix;
use e8forms::qform::{BaseField, QForm, Quaternion};
use e8forms::scalar::{int, rat};

#[path = "support/witt_search.rs"]
mod witt_search;

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (-bound..=bound).prop_filter("nonzero", |x| *x != 0)
}

fn nonsquare(bound: i64) -> impl Strategy<Value = i64> {
    nonzero(bound).prop_filter("nonsquare", |&x| x < 0 || (x as f64).sqrt().fract() != 0.0)
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (nonzero(40), nonzero(40)).prop_map(|(a, b)| Quaternion::new(a, b).unwrap())
}

fn e8_input() -> impl Strategy<Value = E8Input> {
    ([quaternion(), quaternion(), quaternion(), quaternion()], nonzero(40))
        .prop_map(|(q, c)| E8Input::new(BaseField::Q, q, c).unwrap())
}

fn form(max_dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(nonzero(30), 1..=max_dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quadratic_descent(a in nonsquare(60), c in nonzero(60)) {
        let eta = Matrix::from_rows(vec![vec![int(0), int(c)], vec![rat(1, c), int(0)]]);
        let f = descent_form(&QuadExtMatrix::from_rational(a, &eta).unwrap(), &antidiagonal(2)).unwrap();
        prop_assert!(f.witt_equal(&(&QForm::q(&[2 * c]) * &QForm::q(&[1, -a]))).unwrap());
    }

    #[test]
    fn crux_is_hyperbolic(a in nonsquare(60), b in nonzero(60)) {
        let r = crux_form(a, b).unwrap();
        prop_assert_eq!(r.witt_index, 4);
        prop_assert!(r.whole_form.witt_equal(&r.form).unwrap());
    }

    #[test]
    fn cyclo_quotient_times_denominator(d in 1usize..6, j in 0u32..5) {
        let order = d * (1 << j) + 8;
        let lhs = &cyclo_quotient(d, j, order).unwrap() * &IntSeries::one_minus_t_pow(d, order);
        prop_assert_eq!(lhs, IntSeries::one_minus_t_pow(d << j, order));
    }

    #[test]
    fn witt_index_matches_vector_search(entries in form(4)) {
        prop_assert_eq!(QForm::q(&entries).witt_index(), witt_search::brute_witt_index(&entries));
    }

    #[test]
    fn witt_ring_laws(x in form(4), y in form(4), z in form(3)) {
        let (x, y, z) = (QForm::q(&x), QForm::q(&y), QForm::q(&z));
        prop_assert!((&(&x + &y) - &y).witt_equal(&x).unwrap());
        prop_assert!((&x * &(&y + &z)).witt_equal(&(&(&x * &y) + &(&x * &z))).unwrap());
        prop_assert!((&x * &y).witt_equal(&(&y * &x)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_lies_in_i5(input in e8_input()) {
        let k = kappa(&input).unwrap();
        prop_assert!(k.i_level.at_least(5));
        prop_assert!(kappa_expanded(&input).witt_equal(&kappa_from_redkill(&red_killing_form(&input))).unwrap());
    }

    #[test]
    fn redkill_is_symmetric_in_the_quaternions(input in e8_input(), perm in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        let p = [perm[0], perm[1], perm[2], perm[3]];
        prop_assert!(red_killing_form(&input.permuted(p)).witt_equal(&red_killing_form(&input)).unwrap());
    }

    #[test]
    fn redkill_dimension_and_real_signature(input in e8_input()) {
        let f = red_killing_form(&input);
        prop_assert_eq!(f.dim(), 248);
        prop_assert!([8, -24, -248].contains(&QForm::r(f.entries()).signature()));
    }
}
