use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use slicecalc::bredon::{verify_closed_form, Verdict};
use slicecalc::linalg::{smith, IntMatrix};
use slicecalc::mackey::GroupContext;
use slicecalc::reps::{v_floor, v_recursive, RealRep};

fn group() -> impl Strategy<Value = GroupContext> {
    (prop_oneof![Just(3u64), Just(5)], 1u32..=3).prop_map(|(p, n)| GroupContext::new(p, n).unwrap())
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r))
        .prop_map(|rows| IntMatrix::from_rows(&rows))
}

proptest! {
    #[test]
    fn smith_form_is_a_factorisation(a in matrix()) {
        let s = smith(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d_matrix());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for w in s.diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.diag.iter().all(|d| *d > BigInt::from(0)));
    }

    #[test]
    fn recursive_and_floor_forms_agree(c in group(), j in 0u64..200) {
        prop_assert_eq!(v_recursive(j, c), v_floor(j, c));
    }

    #[test]
    fn rep_text_round_trips(c in group(), triv in 0u64..5, mult in proptest::collection::vec(0u64..6, 3)) {
        let v = RealRep::from_parts(c, triv, mult[..c.n as usize].to_vec()).unwrap();
        prop_assert_eq!(RealRep::parse(&v.to_string(), c).unwrap(), v);
    }

    #[test]
    fn normalisation_agrees_with_direct_homology(
        c in group(),
        triv in 0u64..3,
        mult in proptest::collection::vec(0u64..3, 3),
        k in 1u32..=3,
    ) {
        let v = RealRep::from_parts(c, triv, mult[..c.n as usize].to_vec()).unwrap();
        prop_assume!(v.dim() <= 10 && k <= c.n);
        let cases = verify_closed_form(&v, k).unwrap();
        prop_assert!(cases.iter().all(|x| x.verdict != Verdict::Mismatch), "{:?}", cases.iter().find(|x| x.verdict == Verdict::Mismatch).map(ToString::to_string));
    }
}
