use proptest::prelude::*;

use trigonal::dist::{fiber_law, mean_total_base, sum_law};
use trigonal::family::{judge, point_count, DiscDegree, Ensemble, ModelSpace, Verdict};
use trigonal::local::{chart_c_constants, DEFAULT_PRECISION_CAP};
use trigonal::scalar::rational;
use trigonal::sn::{all_permutations, centralizer_size, count_conjugators};
use trigonal::{PrimeField, Rational};

fn model_digits(q: u64, len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..q, len)
}

fn case(space: ModelSpace) -> impl Strategy<Value = (u64, usize, Vec<u64>)> {
    (prop::sample::select(vec![5u64, 7]), 1usize..=2).prop_flat_map(move |(q, m)| {
        model_digits(q, space.coefficient_count(m)).prop_map(move |d| (q, m, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn accepted_curves_obey_weil((q, m, digits) in case(ModelSpace::Depressed)) {
        let field = PrimeField::new(q).unwrap();
        let model = ModelSpace::Depressed.build(field, m, &digits).unwrap();
        if let Verdict::Accepted(s) = judge(&model, Ensemble::All, DEFAULT_PRECISION_CAP).unwrap() {
            prop_assert!(s.satisfies_weil(q));
            prop_assert_eq!(s.types.len() as u64, q + 1);
            if let DiscDegree::Exact(d) = s.disc_degree {
                prop_assert_eq!(d % 2, 0);
            }
        }
    }

    #[test]
    fn binary_forms_obey_weil((q, m, digits) in case(ModelSpace::BinaryCubic)) {
        let field = PrimeField::new(q).unwrap();
        if let Some(model) = ModelSpace::BinaryCubic.build(field, m, &digits) {
            if let Verdict::Accepted(s) = judge(&model, Ensemble::SquarefreeDisc, DEFAULT_PRECISION_CAP).unwrap() {
                prop_assert!(s.satisfies_weil(q));
                prop_assert!(s.genus.is_some());
            }
        }
    }

    #[test]
    fn rescaling_keeps_point_counts((q, m, digits) in case(ModelSpace::Depressed), u in 1i64..5) {
        let field = PrimeField::new(q).unwrap();
        let model = ModelSpace::Depressed.build(field, m, &digits).unwrap();
        prop_assume!(matches!(judge(&model, Ensemble::All, DEFAULT_PRECISION_CAP).unwrap(), Verdict::Accepted(_)));
        let a = point_count(&model, DEFAULT_PRECISION_CAP).unwrap();
        let b = point_count(&model.rescale(u).unwrap(), DEFAULT_PRECISION_CAP).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sum_law_mean_is_additive(q in prop::sample::select(vec![5u64, 7, 11, 13, 25, 49]), base in 1usize..6) {
        let law = sum_law::<Rational>(q, base).unwrap();
        prop_assert_eq!(law.mean(), mean_total_base::<Rational>(q, base as u64));
        prop_assert_eq!(law.max_outcome(), 3 * base);
        let per: Rational = fiber_law::<Rational>(q).unwrap().mean();
        prop_assert_eq!(per * rational(base as i64, 1), law.mean());
    }

    #[test]
    fn chart_total_mass(q in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 25, 49, 121])) {
        let rows = chart_c_constants::<Rational>(q).unwrap();
        let total: Rational = rows.iter().map(|r| r.c.clone()).sum();
        let qi = q as i64;
        prop_assert_eq!(total, rational(qi * qi + qi + 1, qi * qi));
    }

    #[test]
    fn conjugators_fill_the_centralizer(idx in 0usize..720, q in prop::sample::select(vec![7u64, 11, 13, 49])) {
        let y = &all_permutations(6)[idx];
        prop_assert_eq!(count_conjugators(y, q), centralizer_size(&y.cycle_type()));
    }
}
