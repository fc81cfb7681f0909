use num_bigint::BigInt;
use proptest::prelude::*;

use kstirling_core::closed_forms::{
    evaluate_sum_formula, mk_sum_parks_wills, mk_sum_parks_wills_extended, mk_sum_stirling,
    parks_wills_prefix, sum_formula, termwise_identity,
};
use kstirling_core::kbonacci::{mk_sum_oracle, prefix_sum_oracle};
use kstirling_core::pyramid::{build_pyramid, canonical_denominator, row_numerators};
use kstirling_core::stirling::shifted_falling_poly;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluators_agree(k in 1u32..=30, m in 1u32..=30) {
        let oracle = mk_sum_oracle(k, m).unwrap();
        prop_assert_eq!(&mk_sum_parks_wills(k, m).unwrap(), &oracle);
        prop_assert_eq!(&mk_sum_parks_wills_extended(k, m).unwrap(), &oracle);
        prop_assert_eq!(&mk_sum_stirling(k, m).unwrap(), &oracle);
        prop_assert_eq!(&evaluate_sum_formula(&sum_formula(m).unwrap(), k).unwrap(), &oracle);
    }

    #[test]
    fn binomial_prefix_at_any_length(k in 1u32..=20, n in 0u64..=300) {
        prop_assert_eq!(parks_wills_prefix(n, k).unwrap(), prefix_sum_oracle(k, n + 1).unwrap());
    }

    #[test]
    fn block_identity(m in 1u32..=25, k in 1u32..=25, i_frac in 0.0f64..1.0) {
        let i = 1 + ((m as f64) * i_frac) as u32;
        let i = i.min(m);
        let t = termwise_identity(m, i, k).unwrap();
        prop_assert!(t.equal, "m={} i={} k={}: {} vs {}", m, i, k, t.lhs, t.rhs);
    }

    #[test]
    fn shifted_falling_is_a_product(i in 1usize..=12, c in 1u64..=12, k in 1i64..=20) {
        let direct: BigInt = (1..i as i64).map(|t| BigInt::from(c as i64 * k - t)).product();
        prop_assert_eq!(
            shifted_falling_poly(i, c).eval_int(k),
            kstirling_core::numeric::rational_from_int(direct)
        );
    }

    #[test]
    fn rows_divide_into_canonical_denominator(m in 1u32..=20) {
        let p = build_pyramid(m).unwrap();
        for r in 1..=m {
            let nr = row_numerators(m, r).unwrap();
            prop_assert_eq!(&nr.denominator, &canonical_denominator(r).unwrap());
            for (n, q) in nr.numerators.iter().zip(p.row(r).unwrap()) {
                prop_assert_eq!(
                    kstirling_core::Rational::new(n.clone(), nr.denominator.clone()),
                    q.clone()
                );
            }
        }
    }
}
