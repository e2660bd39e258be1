mod common;

use common::prime;
use padic_gkz::arith::{int, rat, Rational};
use padic_gkz::weight::weight;
use num_traits::Zero;

#[test]
fn term_valuations_match_weight_formula() {
    common::term_valuations_match_weight_formula();
}

#[test]
fn lemma_2_3_round_trip() {
    common::lemma_2_3_round_trip();
}

#[test]
fn weight_is_independent_of_exponent_and_shift_invariant() {
    common::weight_is_independent_of_exponent_and_shift_invariant();
}

#[test]
fn prefix_inequalities_random_decompositions() {
    common::prefix_inequalities_random_decompositions();
}

#[test]
fn sum_minus_one_vectors_have_weight_at_least_p_minus_one() {
    common::sum_minus_one_vectors_have_weight_at_least_p_minus_one();
}

#[test]
fn domination_ordered_and_counting_forms_agree() {
    common::domination_ordered_and_counting_forms_agree();
}

#[test]
fn nonconfluent_polytope_weight_is_the_linear_form() {
    common::nonconfluent_polytope_weight_is_the_linear_form();
}

#[test]
fn shifted_sums_stay_in_the_relative_interior() {
    common::shifted_sums_stay_in_the_relative_interior();
}

#[test]
fn colliding_vectors_split_without_losing_weight() {
    common::colliding_vectors_split_without_losing_weight();
}

#[test]
fn proptest_weight_bounds() {
    use proptest::prelude::*;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let seed = [7u8; 32];
    println!("proptest weight bounds: ChaCha seed {:?}", &seed[..4]);
    let mut runner = TestRunner::new_with_rng(Config::with_cases(300), TestRng::from_seed(RngAlgorithm::ChaCha, &seed));
    let strategy = (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..=3, prop::collection::vec(0u64..=1_000_000, 1..5));
    runner
        .run(&strategy, |(p, a, raw)| {
            let m = p.pow(a) - 1;
            let r: Vec<Rational> = raw.iter().map(|x| rat(-((x % (m + 1)) as i64), m as i64)).collect();
            let w = weight(&r, prime(p)).unwrap().w;
            // each coordinate contributes between 0 and p - 1
            prop_assert!(w >= Rational::zero());
            prop_assert!(w <= int((p - 1) as i64) * int(r.len() as i64));
            Ok(())
        })
        .unwrap();
}
